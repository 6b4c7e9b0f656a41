#include "qsphere/bruhat.hpp"

#include <algorithm>

namespace qsphere {

Matrix w_lift(const FieldRef& f, const Permutation& w) {
  Matrix m = Matrix::identity(f, w.n());
  const FieldElement zero(f.get(), 0u), one(f.get(), 1u);
  for (const u32 l : rho(w).letters) m = m * x_block(f, w.n(), l, zero, one);
  return m;
}

BruhatForm bruhat_normal_form(const Matrix& x) {
  const auto* f = x.field();
  const u32 n = x.n();
  if (!x.det().is_one()) throw ParamError("normal form needs determinant one");

  // Pass 1: read off w.  Sweep columns left to right; the pivot of column j
  // is the lowest not-yet-claimed row with a nonzero entry, after clearing
  // the column above the pivot (row operations from the b side keep later
  // sweeps honest: claimed rows would otherwise pollute unclaimed ones).
  Matrix z = x;
  std::vector<u32> wimg(n, 0);
  std::vector<bool> claimed(n, false);
  for (u32 j = 0; j < n; ++j) {
    u32 piv = n;
    for (u32 i = n; i-- > 0;)
      if (!claimed[i] && z.code(i, j) != 0) {
        piv = i;
        break;
      }
    if (piv == n) throw CheckError("pivot sweep found an empty column");
    claimed[piv] = true;
    wimg[j] = piv + 1;
    const u32 pin = f->inv(z.code(piv, j));
    for (u32 i = 0; i < piv; ++i) {
      if (claimed[i] || z.code(i, j) == 0) continue;
      const u32 c = f->mul(z.code(i, j), pin);
      for (u32 k = 0; k < n; ++k)
        z.set_code(i, k, f->sub(z.code(i, k), f->mul(c, z.code(piv, k))));
    }
  }
  const Permutation w{wimg};

  // Pass 2: extract u by column elimination on a fresh copy.  For column j,
  // kill the entries at pivot rows w(k) > w(j) (k < j), taking the killers
  // bottom-up so finished rows stay clean; each kill is a right
  // multiplication by an elementary inverse, so u is the reversed product
  // of the elementary matrices.
  z = x;
  Matrix u(f, n);
  for (u32 i = 0; i < n; ++i) u.set_code(i, i, 1);
  std::vector<std::pair<std::pair<u32, u32>, u32>> ops;  // ((k,j), mu)
  for (u32 j = 0; j < n; ++j) {
    // Killers: k < j with w(k) > w(j), processed in decreasing w(k).
    std::vector<u32> killers;
    for (u32 k = 0; k < j; ++k)
      if (w(k + 1) > w(j + 1)) killers.push_back(k);
    std::sort(killers.begin(), killers.end(),
              [&w](u32 a, u32 b) { return w(a + 1) > w(b + 1); });
    for (const u32 k : killers) {
      const u32 row = w(k + 1) - 1;
      if (z.code(row, j) == 0) continue;
      const u32 mu = f->div(z.code(row, j), z.code(row, k));
      for (u32 i = 0; i < n; ++i)
        z.set_code(i, j, f->sub(z.code(i, j), f->mul(mu, z.code(i, k))));
      ops.push_back({{k, j}, mu});
    }
  }
  // u = product of (I + mu E_{kj}) over ops reversed; all factors commute
  // into a single matrix with those entries only when supports are disjoint,
  // so multiply honestly.
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    Matrix e = Matrix(f, n);
    for (u32 i = 0; i < n; ++i) e.set_code(i, i, 1);
    e.set_code(it->first.first, it->first.second, it->second);
    u = u * e;
  }

  // b comes from z = b * wlift.
  const Matrix lift = w_lift(make_field(f->s, f->m), w);
  const Matrix b = z * lift.inverse();
  if (!is_upper_triangular(b)) throw CheckError("normal form b is not upper triangular");
  if (!is_unipotent_upper(u) || !in_lower_cell_support(u, w))
    throw CheckError("normal form u escapes its support");
  if (b * lift * u != x) throw CheckError("normal form roundtrip failed");
  return {b, w, u};
}

Permutation pi_b(const Matrix& x) { return bruhat_normal_form(x).w; }

bool in_lower_cell_support(const Matrix& u, const Permutation& w) {
  for (u32 i = 0; i < u.n(); ++i)
    for (u32 j = i + 1; j < u.n(); ++j)
      if (u.code(i, j) != 0 && w(i + 1) <= w(j + 1)) return false;
  return true;
}

BruhatForm refined_product_check(const BruhatForm& x, const BruhatForm& y) {
  // y must live in the cell of a simple transposition s_i.
  u32 i = 0;
  for (u32 t = 1; t < y.w.n(); ++t)
    if (y.w == Permutation::transposition(y.w.n(), t)) i = t;
  if (i == 0) throw ParamError("second factor is not in a one-letter cell");
  const Permutation wsi = x.w * Permutation::transposition(x.w.n(), i);
  if (wsi.length() != x.w.length() + 1)
    throw ParamError("length must grow by one across the product");

  const FieldRef f = make_field(x.b.field()->s, x.b.field()->m);
  const Matrix xm = x.b * w_lift(f, x.w) * x.u;
  const Matrix ym = y.b * w_lift(f, y.w) * y.u;
  BruhatForm out = bruhat_normal_form(xm * ym);
  if (out.w != wsi) throw CheckError("product left the expected cell");
  if (out.u.code(i - 1, i) != y.u.code(i - 1, i))
    throw CheckError("carried entry law failed");
  return out;
}

}  // namespace qsphere
