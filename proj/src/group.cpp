#include "qsphere/group.hpp"

#include <numeric>
#include <utility>

#include "qsphere/numth.hpp"

namespace qsphere {

namespace {

const FieldParams* common_field(const Vec& v) {
  if (v.empty()) throw ParamError("empty vector");
  const FieldParams* f = v[0].field();
  for (const auto& x : v)
    if (x.field() != f) throw ParamError("vector mixes fields");
  if (f == nullptr) throw ParamError("vector without a field");
  return f;
}

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field() || a.n() != b.n()) throw ParamError("matrix shape/field mismatch");
}

}  // namespace

Matrix Matrix::identity(const FieldRef& f, u32 n) {
  Matrix m(f, n);
  for (u32 i = 0; i < n; ++i) m.set_code(i, i, 1);
  return m;
}

Matrix Matrix::scalar_matrix(const FieldRef& f, u32 n, FieldElement c) {
  Matrix m(f, n);
  for (u32 i = 0; i < n; ++i) m.set_code(i, i, c.code());
  return m;
}

Matrix Matrix::diagonal(const FieldRef& f, const std::vector<FieldElement>& d) {
  Matrix m(f, static_cast<u32>(d.size()));
  for (u32 i = 0; i < m.n(); ++i) m.set_code(i, i, d[i].code());
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require_same_shape(*this, o);
  Matrix r(f_, n_);
  for (u32 i = 0; i < n_; ++i)
    for (u32 k = 0; k < n_; ++k) {
      const u32 a = code(i, k);
      if (a == 0) continue;
      for (u32 j = 0; j < n_; ++j) {
        const u32 b = o.code(k, j);
        if (b == 0) continue;
        r.set_code(i, j, f_->add(r.code(i, j), f_->mul(a, b)));
      }
    }
  return r;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != n_) throw ParamError("vector length mismatch");
  if (!v.empty() && common_field(v) != f_) throw ParamError("vector field mismatch");
  Vec r(n_, FieldElement(f_, 0));
  for (u32 i = 0; i < n_; ++i) {
    u32 acc = 0;
    for (u32 j = 0; j < n_; ++j) acc = f_->add(acc, f_->mul(code(i, j), v[j].code()));
    r[i] = FieldElement(f_, acc);
  }
  return r;
}

Matrix Matrix::inverse() const {
  Matrix a(*this);
  Matrix r = Matrix(f_, n_);
  for (u32 i = 0; i < n_; ++i) r.set_code(i, i, 1);
  for (u32 col = 0; col < n_; ++col) {
    u32 piv = col;
    while (piv < n_ && a.code(piv, col) == 0) ++piv;
    if (piv == n_) throw CheckError("singular matrix");
    if (piv != col)
      for (u32 j = 0; j < n_; ++j) {
        std::swap(a.e_[static_cast<size_t>(piv) * n_ + j], a.e_[static_cast<size_t>(col) * n_ + j]);
        std::swap(r.e_[static_cast<size_t>(piv) * n_ + j], r.e_[static_cast<size_t>(col) * n_ + j]);
      }
    const u32 d = f_->inv(a.code(col, col));
    for (u32 j = 0; j < n_; ++j) {
      a.set_code(col, j, f_->mul(a.code(col, j), d));
      r.set_code(col, j, f_->mul(r.code(col, j), d));
    }
    for (u32 i = 0; i < n_; ++i) {
      if (i == col) continue;
      const u32 c = a.code(i, col);
      if (c == 0) continue;
      for (u32 j = 0; j < n_; ++j) {
        a.set_code(i, j, f_->sub(a.code(i, j), f_->mul(c, a.code(col, j))));
        r.set_code(i, j, f_->sub(r.code(i, j), f_->mul(c, r.code(col, j))));
      }
    }
  }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(f_, n_);
  for (u32 i = 0; i < n_; ++i)
    for (u32 j = 0; j < n_; ++j) r.set_code(j, i, code(i, j));
  return r;
}

Matrix Matrix::conj() const {
  Matrix r(f_, n_);
  for (u32 i = 0; i < n_; ++i)
    for (u32 j = 0; j < n_; ++j) r.set_code(i, j, f_->conj(code(i, j)));
  return r;
}

Matrix Matrix::frob(u64 power) const {
  Matrix r(f_, n_);
  for (u32 i = 0; i < n_; ++i)
    for (u32 j = 0; j < n_; ++j) r.set_code(i, j, f_->frob(code(i, j), power));
  return r;
}

Matrix Matrix::pow(i64 k) const {
  Matrix base = k < 0 ? inverse() : *this;
  u64 e = k < 0 ? static_cast<u64>(-k) : static_cast<u64>(k);
  Matrix acc(f_, n_);
  for (u32 i = 0; i < n_; ++i) acc.set_code(i, i, 1);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Matrix Matrix::scaled(FieldElement c) const {
  Matrix r(f_, n_);
  for (u32 i = 0; i < n_; ++i)
    for (u32 j = 0; j < n_; ++j) r.set_code(i, j, f_->mul(code(i, j), c.code()));
  return r;
}

FieldElement Matrix::det() const {
  Matrix a(*this);
  u32 d = 1;
  for (u32 col = 0; col < n_; ++col) {
    u32 piv = col;
    while (piv < n_ && a.code(piv, col) == 0) ++piv;
    if (piv == n_) return {f_, 0};
    if (piv != col) {
      for (u32 j = 0; j < n_; ++j)
        std::swap(a.e_[static_cast<size_t>(piv) * n_ + j], a.e_[static_cast<size_t>(col) * n_ + j]);
      d = f_->neg(d);
    }
    d = f_->mul(d, a.code(col, col));
    const u32 inv = f_->inv(a.code(col, col));
    for (u32 i = col + 1; i < n_; ++i) {
      const u32 c = f_->mul(a.code(i, col), inv);
      if (c == 0) continue;
      for (u32 j = col; j < n_; ++j)
        a.set_code(i, j, f_->sub(a.code(i, j), f_->mul(c, a.code(col, j))));
    }
  }
  return {f_, d};
}

u64 Matrix::order() const {
  if (det().is_zero()) throw CheckError("order of a singular matrix");
  Matrix id(f_, n_);
  for (u32 i = 0; i < n_; ++i) id.set_code(i, i, 1);
  Matrix cur(*this);
  for (u64 k = 1; k <= 100000000ull; ++k) {
    if (cur == id) return k;
    cur = cur * *this;
  }
  throw CheckError("order exceeds iteration budget");
}

std::string Matrix::to_text() const {
  std::string out = "[";
  for (u32 i = 0; i < n_; ++i) {
    out += i ? ",[" : "[";
    for (u32 j = 0; j < n_; ++j) {
      if (j) out += ",";
      out += to_literal(at(i, j));
    }
    out += "]";
  }
  return out + "]";
}

bool is_unitary(const Matrix& x) {
  const auto* f = x.field();
  // Row i of x times conjugated row j must be delta_{ij}.
  for (u32 i = 0; i < x.n(); ++i)
    for (u32 j = 0; j < x.n(); ++j) {
      u32 acc = 0;
      for (u32 k = 0; k < x.n(); ++k) acc = f->add(acc, f->mul(x.code(i, k), f->conj(x.code(j, k))));
      if (acc != (i == j ? 1u : 0u)) return false;
    }
  return true;
}

bool is_special_unitary(const Matrix& x) { return is_unitary(x) && x.det().is_one(); }

bool is_monomial(const Matrix& x) {
  for (u32 i = 0; i < x.n(); ++i) {
    u32 cnt = 0;
    for (u32 j = 0; j < x.n(); ++j) cnt += x.code(i, j) != 0;
    if (cnt != 1) return false;
  }
  for (u32 j = 0; j < x.n(); ++j) {
    u32 cnt = 0;
    for (u32 i = 0; i < x.n(); ++i) cnt += x.code(i, j) != 0;
    if (cnt != 1) return false;
  }
  return true;
}

bool is_diagonal(const Matrix& x) {
  for (u32 i = 0; i < x.n(); ++i)
    for (u32 j = 0; j < x.n(); ++j)
      if (i != j && x.code(i, j) != 0) return false;
  return true;
}

bool is_upper_triangular(const Matrix& x) {
  for (u32 i = 0; i < x.n(); ++i)
    for (u32 j = 0; j < i; ++j)
      if (x.code(i, j) != 0) return false;
  return true;
}

bool is_unipotent_upper(const Matrix& x) {
  if (!is_upper_triangular(x)) return false;
  for (u32 i = 0; i < x.n(); ++i)
    if (x.code(i, i) != 1) return false;
  return true;
}

bool is_permutation_matrix(const Matrix& x) {
  if (!is_monomial(x)) return false;
  for (u32 i = 0; i < x.n(); ++i)
    for (u32 j = 0; j < x.n(); ++j)
      if (x.code(i, j) != 0 && x.code(i, j) != 1) return false;
  return true;
}

FieldElement herm(const Vec& u, const Vec& v) {
  const FieldParams* f = common_field(u);
  if (common_field(v) != f) throw ParamError("form arguments in different fields");
  if (u.size() != v.size()) throw ParamError("form arguments of different lengths");
  u32 acc = 0;
  for (size_t i = 0; i < u.size(); ++i)
    acc = f->add(acc, f->mul(u[i].code(), f->conj(v[i].code())));
  return {f, acc};
}

Vec basis_vector(const FieldRef& f, u32 n, u32 i) {
  if (i < 1 || i > n) throw ParamError("basis index out of range");
  Vec v(n, FieldElement(f.get(), 0));
  v[i - 1] = FieldElement(f.get(), 1);
  return v;
}

Vec scaled_vec(const Vec& v, FieldElement c) {
  Vec r(v);
  for (auto& x : r) x = x * c;
  return r;
}

Matrix transvection(const Vec& v, FieldElement mu) {
  const FieldParams* f = common_field(v);
  bool zero = true;
  for (const auto& x : v) zero &= x.is_zero();
  if (zero) throw ParamError("transvection needs a nonzero vector");
  if (!herm(v, v).is_zero()) throw ParamError("transvection needs an isotropic vector");
  if (!mu.trace().is_zero()) throw ParamError("transvection scalar must have trace zero");
  const u32 n = static_cast<u32>(v.size());
  Matrix x(f, n);
  for (u32 i = 0; i < n; ++i) {
    for (u32 j = 0; j < n; ++j) {
      u32 c = f->mul(mu.code(), f->mul(v[i].code(), f->conj(v[j].code())));
      if (i == j) c = f->add(c, 1);
      x.set_code(i, j, c);
    }
  }
  return x;
}

Matrix quasi_reflection(const Vec& v, FieldElement mu) {
  const FieldParams* f = common_field(v);
  const FieldElement nv = herm(v, v);
  if (nv.is_zero()) throw ParamError("quasi-reflection needs an anisotropic vector");
  if (f->norm(mu.code()) != 1) throw ParamError("quasi-reflection scalar must have norm one");
  const u32 n = static_cast<u32>(v.size());
  const u32 scale = f->div(f->sub(mu.code(), 1), nv.code());
  Matrix y(f, n);
  for (u32 i = 0; i < n; ++i) {
    for (u32 j = 0; j < n; ++j) {
      u32 c = f->mul(scale, f->mul(v[i].code(), f->conj(v[j].code())));
      if (i == j) c = f->add(c, 1);
      y.set_code(i, j, c);
    }
  }
  return y;
}

Matrix x_block(const FieldRef& f, u32 n, u32 i, FieldElement alpha, FieldElement beta) {
  if (i < 1 || i >= n) throw ParamError("block index out of range");
  if (!(alpha.norm() + beta.norm()).is_one())
    throw ParamError("block scalars violate the unit-circle condition");
  Matrix x = Matrix::identity(f, n);
  x.set(i - 1, i - 1, alpha);
  x.set(i - 1, i, beta);
  x.set(i, i - 1, -beta.conj());
  x.set(i, i, alpha.conj());
  return x;
}

Matrix make_xi(const FieldRef& f, u32 n, u32 i, FieldElement zeta, FieldElement eta) {
  if (zeta.is_zero() || eta.is_zero()) throw ParamError("zero braid scalar");
  const FieldElement one(f.get(), 1);
  const FieldElement z = (i % 2 == 1) ? zeta : FieldElement(f.get(), f->inv(zeta.code()));
  return x_block(f, n, i, one + z, -(z / eta));
}

AmbientGroup::AmbientGroup(GroupKind kind, const FieldRef& f, u32 n)
    : kind_(kind), f_(f), n_(n), phi_frob_exp_(0), phi_order_(1) {
  if (kind == GroupKind::PhiExtended)
    throw ParamError("PhiExtended ambient needs the automorphism constructor");
  if (n == 0) throw ParamError("empty ambient dimension");
  entry_bits_ = 0;
  for (u64 v = f->size - 1; v > 0; v >>= 1) ++entry_bits_;
  enc_bits_ = n * n * entry_bits_;
}

AmbientGroup::AmbientGroup(const FieldRef& f, u32 n, u32 phi_frob_exp, u32 phi_order)
    : kind_(GroupKind::PhiExtended), f_(f), n_(n), phi_frob_exp_(phi_frob_exp), phi_order_(phi_order) {
  if (n == 0) throw ParamError("empty ambient dimension");
  const u32 e = phi_frob_exp % f->m;
  const u32 actual = f->m / std::gcd(e, f->m);
  if (actual != phi_order) throw CheckError("declared automorphism order is wrong");
  entry_bits_ = 0;
  for (u64 v = f->size - 1; v > 0; v >>= 1) ++entry_bits_;
  u32 phi_bits = 0;
  for (u32 v = phi_order - 1; v > 0; v >>= 1) ++phi_bits;
  enc_bits_ = n * n * entry_bits_ + phi_bits;
}

Matrix AmbientGroup::apply_phi(const Matrix& m, u32 k) const {
  k %= phi_order_;
  if (k == 0) return m;
  // Phi^k is the power map a -> a^{s^{phi_frob_exp_ * k}}.
  const u64 M = f_->size - 1;
  u64 power = 1;
  const u64 base = pow_u64_checked(f_->s, phi_frob_exp_) % M;
  for (u32 t = 0; t < k; ++t) power = (power * base) % M;
  return m.frob(power);
}

GroupElement AmbientGroup::canon(const Matrix& m, u32 phi) const {
  if (m.field() != f_.get() || m.n() != n_) throw ParamError("matrix outside this ambient group");
  if (kind_ == GroupKind::Plain) {
    if (phi != 0) throw ParamError("automorphism part in a plain ambient");
    return {m, 0};
  }
  if (phi >= phi_order_) throw ParamError("automorphism exponent out of range");
  u32 lead = 0;
  for (const u32 c : m.codes())
    if (c != 0) {
      lead = c;
      break;
    }
  if (lead == 0) throw ParamError("zero matrix has no projective class");
  if (lead == 1) return {m, phi};
  return {m.scaled(FieldElement(f_.get(), f_->inv(lead))), phi};
}

GroupElement AmbientGroup::identity() const { return {Matrix::identity(f_, n_), 0}; }

GroupElement AmbientGroup::mul(const GroupElement& a, const GroupElement& b) const {
  if (kind_ == GroupKind::Plain) return {a.m * b.m, 0};
  if (kind_ == GroupKind::Projective) return canon(a.m * b.m, 0);
  return canon(a.m * apply_phi(b.m, a.phi), (a.phi + b.phi) % phi_order_);
}

GroupElement AmbientGroup::inv(const GroupElement& a) const {
  if (kind_ == GroupKind::Plain) return {a.m.inverse(), 0};
  if (kind_ == GroupKind::Projective) return canon(a.m.inverse(), 0);
  const u32 k = (phi_order_ - a.phi) % phi_order_;
  return canon(apply_phi(a.m.inverse(), k), k);
}

GroupElement AmbientGroup::conj(const GroupElement& g, const GroupElement& x) const {
  return mul(mul(g, x), inv(g));
}

GroupElement AmbientGroup::pow(const GroupElement& a, i64 k) const {
  GroupElement base = k < 0 ? inv(a) : a;
  u64 e = k < 0 ? static_cast<u64>(-k) : static_cast<u64>(k);
  GroupElement acc = identity();
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

u64 AmbientGroup::element_order(const GroupElement& a) const {
  const GroupElement id = identity();
  GroupElement cur = a;
  for (u64 k = 1; k <= 100000000ull; ++k) {
    if (cur == id) return k;
    cur = mul(cur, a);
  }
  throw CheckError("order exceeds iteration budget");
}

Enc AmbientGroup::enc(const GroupElement& a) const {
  if (enc_bits_ > 256) throw CheckError("element does not fit the 256-bit encoding");
  Enc e;
  u32 pos = 0;
  auto append = [&e, &pos](u64 val, u32 width) {
    const u32 word = pos / 64, off = pos % 64;
    e.w[word] |= val << off;
    if (off + width > 64) e.w[word + 1] |= val >> (64 - off);
    pos += width;
  };
  for (const u32 c : a.m.codes()) append(c, entry_bits_);
  if (phi_order_ > 1) {
    u32 phi_bits = 0;
    for (u32 v = phi_order_ - 1; v > 0; v >>= 1) ++phi_bits;
    append(a.phi, phi_bits);
  }
  return e;
}

GroupElement ext_mul(const AmbientGroup& g, const GroupElement& a, const GroupElement& b) {
  return g.mul(a, b);
}

GroupElement ext_conj(const AmbientGroup& g, const GroupElement& x, const GroupElement& y) {
  return g.conj(x, y);
}

GroupElement proj_canon(const AmbientGroup& g, const Matrix& m) { return g.canon(m); }

}  // namespace qsphere
