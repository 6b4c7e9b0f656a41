#include "qsphere/ubraid.hpp"

#include <algorithm>

namespace qsphere {
namespace {

FieldRef field_ref(const FieldParams* f) { return make_field(f->s, f->m); }

// Generator matrices x_1..x_{n-1} for one (n, scalars) configuration.
std::vector<Matrix> generator_list(u32 n, const SunScalars& sc) {
  const FieldRef f = field_ref(sc.zeta.field());
  std::vector<Matrix> xs;
  xs.reserve(n >= 1 ? n - 1 : 0);
  for (u32 i = 1; i < n; ++i) xs.push_back(make_xi(f, n, i, sc.zeta, sc.eta));
  return xs;
}

}  // namespace

SunScalars find_sun_scalars(const FieldRef& f) {
  return {find_zeta(f), find_eta(f)};
}

Matrix psi_word(const BraidWord& word, const SunScalars& sc) {
  const FieldRef f = field_ref(sc.zeta.field());
  Matrix m = Matrix::identity(f, word.n);
  for (u32 letter : word.letters) {
    if (letter < 1 || letter >= word.n) throw ParamError("braid letter out of range");
    m = m * make_xi(f, word.n, letter, sc.zeta, sc.eta);
  }
  return m;
}

UnitaryPermBraid psi_rho(const Permutation& w, const SunScalars& sc) {
  const BraidWord word = rho(w);
  return {w, psi_word(word, sc), w.length()};
}

FieldElement weighted_row_sum(const Matrix& x, u32 i, const FieldElement& eta) {
  if (i < 1 || i > x.n()) throw ParamError("row index out of range");
  FieldElement acc(x.field(), 0);
  for (u32 j = 1; j <= x.n(); ++j)
    acc = acc + eta.pow(static_cast<i64>(j) - static_cast<i64>(i)) * x.at(i - 1, j - 1);
  return acc;
}

FieldElement weighted_col_sum(const Matrix& x, u32 j, const FieldElement& eta) {
  if (j < 1 || j > x.n()) throw ParamError("column index out of range");
  const FieldElement minus_one(x.field(), x.field()->neg(1));
  FieldElement acc(x.field(), 0);
  for (u32 i = 1; i <= x.n(); ++i) {
    const i64 d = static_cast<i64>(j) - static_cast<i64>(i);
    FieldElement term = eta.pow(d) * x.at(i - 1, j - 1);
    if (((d % 2) + 2) % 2 == 1) term = term * minus_one;
    acc = acc + term;
  }
  return acc;
}

SunTable::SunTable(u32 n, const SunScalars& sc) : n_(n), sc_(sc) {
  if (n < 1) throw ParamError("empty braid degree");
  const std::vector<Matrix> xs = generator_list(n, sc);

  // Every permutation with a descent at i is (shorter permutation) * s_i, so
  // filling the table in length order costs one multiplication per entry.
  std::vector<Permutation> perms = all_permutations(n);
  std::stable_sort(perms.begin(), perms.end(),
                   [](const Permutation& a, const Permutation& b) {
                     return a.length() < b.length();
                   });
  elems_.reserve(perms.size());
  for (const Permutation& w : perms) {
    Matrix m = Matrix::identity(field_ref(field()), n);
    u32 descent = 0;
    for (u32 i = 1; i < n; ++i)
      if (w(i) > w(i + 1)) { descent = i; break; }
    if (descent != 0) {
      const Permutation prev = w * Permutation::transposition(n, descent);
      m = elems_[by_perm_.at(prev.images())].mat * xs[descent - 1];
    }
    const u32 index = static_cast<u32>(elems_.size());
    if (!by_mat_.emplace(m.codes(), index).second)
      throw CheckError("two permutations share one braid matrix");
    by_perm_.emplace(w.images(), index);
    elems_.emplace_back(w, std::move(m), w.length());
  }
}

const UnitaryPermBraid& SunTable::at(const Permutation& w) const {
  const auto it = by_perm_.find(w.images());
  if (it == by_perm_.end()) throw ParamError("permutation outside the braid table");
  return elems_[it->second];
}

std::optional<Permutation> SunTable::membership(const Matrix& m) const {
  if (m.field() != field() || m.n() != n_) return std::nullopt;
  const auto it = by_mat_.find(m.codes());
  if (it == by_mat_.end()) return std::nullopt;
  return elems_[it->second].perm;
}

SunTable enumerate_sun(u32 n, const SunScalars& sc) { return {n, sc}; }

TheoremReport check_faithful_on_torus(u32 n, const SunScalars& sc) {
  const SunTable table(n, sc);
  TheoremReport report;
  report.theorem = "faithful_on_torus";
  report.parameters = "n=" + std::to_string(n) +
                      ", q^2=" + std::to_string(sc.zeta.field()->size);
  for (const UnitaryPermBraid& x : table.all()) {
    const Matrix inv = x.mat.inverse();
    for (const UnitaryPermBraid& y : table.all()) {
      ++report.cases_checked;
      if (is_monomial(inv * y.mat) && !(x.perm == y.perm))
        report.failures.push_back("monomial quotient links " + x.perm.to_text() +
                                  " with " + y.perm.to_text());
    }
  }
  return report;
}

std::pair<int, UnitaryPermBraid> step_epsilon(const SunTable& table,
                                              const UnitaryPermBraid& x, u32 i) {
  const u32 n = table.n();
  if (i < 1 || i >= n) throw ParamError("generator index out of range");
  const FieldRef f = field_ref(table.field());
  const Matrix xi = make_xi(f, n, i, table.scalars().zeta, table.scalars().eta);
  const Permutation adjacent = x.perm * Permutation::transposition(n, i);

  if (table.field()->s == 2) {
    // x_i is an involution, so the two signs coincide and the step always
    // stays inside the braid set.
    const auto w = table.membership(x.mat * xi);
    if (!w) throw CheckError("involutive step left the braid set");
    const UnitaryPermBraid& next = table.at(*w);
    if (!(next.perm == adjacent)) throw CheckError("step successor is not adjacent");
    return {+1, next};
  }

  const auto up = table.membership(x.mat * xi);
  const auto down = table.membership(x.mat * xi.inverse());
  if (static_cast<bool>(up) == static_cast<bool>(down))
    throw CheckError("one-epsilon step law failed");
  const int epsilon = up ? +1 : -1;
  const UnitaryPermBraid& next = table.at(up ? *up : *down);
  if (!(next.perm == adjacent)) throw CheckError("step successor is not adjacent");
  if (static_cast<i64>(next.len) != static_cast<i64>(x.len) + epsilon)
    throw CheckError("step length shift violated");
  return {epsilon, next};
}

bool centre_twisted_uniqueness(const SunTable& table, const UnitaryPermBraid& x,
                               u32 i) {
  const FieldParams* f = table.field();
  if (f->s == 2) throw ParamError("centre-twisted step law needs odd characteristic");
  const FieldRef fr = field_ref(f);
  const int epsilon = step_epsilon(table, x, i).first;
  const Matrix xi = make_xi(fr, table.n(), i, table.scalars().zeta, table.scalars().eta);
  const Matrix other = epsilon > 0 ? x.mat * xi.inverse() : x.mat * xi;

  // Candidates x * x_i^{-epsilon} * z over the whole centre: membership must
  // fail, and the weighted row sum must expose the central scalar.
  const u64 q = f->q();
  const FieldElement mu = find_unity_root(fr, q + 1);
  for (u64 t = 0; t <= q; ++t) {
    const FieldElement lambda = mu.pow(static_cast<i64>(t));
    const Matrix candidate = other.scaled(lambda);
    if (table.membership(candidate)) return false;
    if (weighted_row_sum(candidate, 1, table.scalars().eta) != lambda) return false;
  }
  return true;
}

NormalFormProfile normal_form_profile(const UnitaryPermBraid& x,
                                      const SunScalars& sc) {
  const FieldParams* f = x.mat.field();
  const u32 n = x.mat.n();
  const FieldElement zero(f, 0), one(f, 1);
  const FieldElement eta_inv = sc.eta.pow(-1);
  const BruhatForm nf = bruhat_normal_form(x.mat);
  if (!(nf.w == x.perm)) throw CheckError("normal form permutation mismatch");

  NormalFormProfile profile;
  const std::vector<u32> finishing = finishing_set(x.perm);
  for (u32 i = 1; i < n; ++i) {
    const FieldElement entry = nf.u.at(i - 1, i);
    FieldElement expected = zero;
    if (std::find(finishing.begin(), finishing.end(), i) != finishing.end())
      expected = ((i % 2 == 1 ? sc.zeta.pow(-1) : sc.zeta) - one) * eta_inv;
    if (entry != expected)
      throw CheckError("superdiagonal entry disagrees with its closed form");
    profile.u_super.push_back(entry);
  }

  const auto segments = sn_normal_form(x.perm);
  u32 l = 0;
  for (u32 i = static_cast<u32>(segments.size()); i >= 1; --i)
    if (!segments[i - 1].empty()) { l = i; break; }
  if (l == 0) {
    if (!(x.mat == Matrix::identity(field_ref(f), n)))
      throw CheckError("empty normal form with nontrivial matrix");
    return profile;
  }
  const u32 k = segments[l - 1].back();
  const u32 size = l + 1;

  // Outside the leading block the matrix must agree with the identity.
  for (u32 i = 1; i <= n; ++i)
    for (u32 j = 1; j <= n; ++j) {
      if (i <= size && j <= size) continue;
      if (x.mat.at(i - 1, j - 1) != (i == j ? one : zero))
        throw CheckError("matrix does not split along the predicted block");
    }

  // Bottom block row: zeros to the left of column k, a power of eta at k,
  // then an alternating tail run governed by zeta or its inverse.
  const FieldElement zs = (l % 2 == 1) ? sc.zeta : sc.zeta.pow(-1);
  for (u32 j = 1; j <= size; ++j) {
    const FieldElement entry = x.mat.at(size - 1, j - 1);
    FieldElement expected = zero;
    if (j == k) {
      const FieldElement lead = (k % 2 == l % 2) ? zs : one;
      expected = lead * sc.eta.pow(static_cast<i64>(l - k) + 1);
    } else if (j > k) {
      const u32 t = size - j;
      expected = (one - zs) * sc.eta.pow(t);
      if (t % 2 == 1) expected = -expected;
    }
    if (entry != expected)
      throw CheckError("bottom block row disagrees with its closed form");
    profile.bottom_row.push_back(entry);
  }

  // No block row may vanish on all of the first k columns.
  for (u32 i = 1; i <= size; ++i) {
    bool seen = false;
    for (u32 j = 1; j <= k && !seen; ++j) seen = !x.mat.at(i - 1, j - 1).is_zero();
    if (!seen) throw CheckError("a block row has too long a zero prefix");
  }

  profile.block_size = size;
  profile.segment_tail = k;
  return profile;
}

}  // namespace qsphere
