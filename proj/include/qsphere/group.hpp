#pragma once

// Dense matrices over F_{q^2} with the standard hermitian form
// f(u, v) = sum_i u_i * conj(v_i) (linear in the first argument), the
// subgroup-membership predicates, transvections X_{v,mu}, quasi-reflections
// Y_{v,mu}, the two-by-two blocks x_i(alpha, beta), and group-element
// plumbing for plain, projective, and Frobenius-extended ambient groups.
//
// All instances are desk-scale (n <= 8), so matrices are dense row-major
// code vectors and every operation is exact table arithmetic.

#include <string>
#include <vector>

#include "qsphere/field.hpp"

namespace qsphere {

using Vec = std::vector<FieldElement>;

class Matrix {
 public:
  Matrix() : f_(nullptr), n_(0) {}
  Matrix(const FieldRef& f, u32 n) : f_(f.get()), n_(n), e_(static_cast<size_t>(n) * n, 0) {}
  Matrix(const FieldParams* f, u32 n) : f_(f), n_(n), e_(static_cast<size_t>(n) * n, 0) {}

  static Matrix identity(const FieldRef& f, u32 n);
  static Matrix scalar_matrix(const FieldRef& f, u32 n, FieldElement c);
  static Matrix diagonal(const FieldRef& f, const std::vector<FieldElement>& d);

  const FieldParams* field() const { return f_; }
  u32 n() const { return n_; }

  u32 code(u32 i, u32 j) const { return e_[static_cast<size_t>(i) * n_ + j]; }
  void set_code(u32 i, u32 j, u32 c) { e_[static_cast<size_t>(i) * n_ + j] = c; }
  FieldElement at(u32 i, u32 j) const { return {f_, code(i, j)}; }
  void set(u32 i, u32 j, FieldElement v) { set_code(i, j, v.code()); }
  const std::vector<u32>& codes() const { return e_; }

  Matrix operator*(const Matrix& o) const;
  Vec apply(const Vec& v) const;  // column-vector action
  Matrix inverse() const;         // CheckError when singular
  Matrix transpose() const;
  Matrix conj() const;            // entrywise a -> a^q
  Matrix conj_transpose() const { return conj().transpose(); }
  Matrix frob(u64 power) const;   // entrywise a -> a^{power}
  Matrix pow(i64 k) const;
  Matrix scaled(FieldElement c) const;
  FieldElement det() const;       // Gaussian elimination, exact
  u64 order() const;              // multiplicative order; CheckError if singular

  bool operator==(const Matrix& o) const { return f_ == o.f_ && n_ == o.n_ && e_ == o.e_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  std::string to_text() const;  // one-line [[...],[...]] of field literals

 private:
  const FieldParams* f_;
  u32 n_;
  std::vector<u32> e_;  // row-major codes
};

// Membership predicates (exact, no tolerance).
bool is_unitary(const Matrix& x);          // x * conj(x)^T = I
bool is_special_unitary(const Matrix& x);  // unitary and det = 1
bool is_monomial(const Matrix& x);         // one nonzero entry per row and column
bool is_diagonal(const Matrix& x);
bool is_upper_triangular(const Matrix& x);
bool is_unipotent_upper(const Matrix& x);  // upper triangular, diagonal all 1
bool is_permutation_matrix(const Matrix& x);

// Standard hermitian form, linear in u, conjugate-linear in v.
FieldElement herm(const Vec& u, const Vec& v);
Vec basis_vector(const FieldRef& f, u32 n, u32 i);  // e_i, 1-indexed
Vec scaled_vec(const Vec& v, FieldElement c);

// Transvection X_{v,mu}: u -> u + mu * f(u,v) * v.
// Requires v isotropic (f(v,v) = 0, v != 0) and trace(mu) = 0;
// mu = 0 is allowed and yields the identity.
Matrix transvection(const Vec& v, FieldElement mu);

// Quasi-reflection Y_{v,mu}: u -> u + (mu - 1) * (f(u,v)/f(v,v)) * v.
// Requires v anisotropic (f(v,v) != 0) and norm(mu) = 1.
Matrix quasi_reflection(const Vec& v, FieldElement mu);

// Identity with the block [[alpha, beta], [-conj(beta), conj(alpha)]] at
// rows/columns (i, i+1), 1 <= i <= n-1.  Requires the unit-circle condition
// alpha*conj(alpha) + beta*conj(beta) = 1.
Matrix x_block(const FieldRef& f, u32 n, u32 i, FieldElement alpha, FieldElement beta);

// The braid generator: x_i(1+zeta, -zeta*eta^{-1}) for odd i and
// x_i(1+zeta^{-1}, -zeta^{-1}*eta^{-1}) for even i.
Matrix make_xi(const FieldRef& f, u32 n, u32 i, FieldElement zeta, FieldElement eta);

// 256-bit packed encoding of a group element, used as a hash/set key.
struct Enc {
  u64 w[4] = {0, 0, 0, 0};
  bool operator==(const Enc& o) const {
    return w[0] == o.w[0] && w[1] == o.w[1] && w[2] == o.w[2] && w[3] == o.w[3];
  }
  bool operator!=(const Enc& o) const { return !(*this == o); }
  bool operator<(const Enc& o) const {
    for (int i = 3; i >= 0; --i)
      if (w[i] != o.w[i]) return w[i] < o.w[i];
    return false;
  }
};

struct EncHash {
  size_t operator()(const Enc& e) const {
    u64 x = 0x6a09e667f3bcc909ull;
    for (u64 word : e.w) {
      x = (x ^ word) * 0x9e3779b97f4a7c15ull;
      x ^= x >> 29;
    }
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 32;
    return static_cast<size_t>(x);
  }
};

enum class GroupKind {
  Plain,        // matrices compared entrywise
  Projective,   // matrices modulo scalars, canonical first nonzero entry = 1
  PhiExtended,  // projective matrices extended by a field automorphism Phi
};

// A group element: matrix part plus a Phi exponent (always 0 outside
// PhiExtended ambients).  Equality and products are mediated by the ambient.
struct GroupElement {
  Matrix m;
  u32 phi = 0;
  bool operator==(const GroupElement& o) const { return phi == o.phi && m == o.m; }
  bool operator!=(const GroupElement& o) const { return !(*this == o); }
};

// Descriptor fixing how elements are canonicalized, multiplied, and packed.
// For PhiExtended, Phi acts entrywise as a -> a^{s^{frob_exp}} and has the
// given order (the pair is validated at construction).
class AmbientGroup {
 public:
  AmbientGroup(GroupKind kind, const FieldRef& f, u32 n);
  AmbientGroup(const FieldRef& f, u32 n, u32 phi_frob_exp, u32 phi_order);

  GroupKind kind() const { return kind_; }
  const FieldRef& field() const { return f_; }
  u32 n() const { return n_; }
  u32 phi_order() const { return phi_order_; }
  u32 enc_bits() const { return enc_bits_; }

  Matrix apply_phi(const Matrix& m, u32 k) const;  // entrywise Phi^k

  GroupElement canon(const Matrix& m, u32 phi = 0) const;
  GroupElement identity() const;
  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement inv(const GroupElement& a) const;
  GroupElement conj(const GroupElement& g, const GroupElement& x) const;  // g x g^{-1}
  GroupElement pow(const GroupElement& a, i64 k) const;
  u64 element_order(const GroupElement& a) const;

  Enc enc(const GroupElement& a) const;  // CheckError when > 256 bits needed

 private:
  GroupKind kind_;
  FieldRef f_;
  u32 n_;
  u32 phi_frob_exp_;  // Phi = frob(s^{phi_frob_exp_}); 0 outside PhiExtended
  u32 phi_order_;     // 1 outside PhiExtended
  u32 entry_bits_;
  u32 enc_bits_;
};

// Free-function aliases for the extension arithmetic.
GroupElement ext_mul(const AmbientGroup& g, const GroupElement& a, const GroupElement& b);
GroupElement ext_conj(const AmbientGroup& g, const GroupElement& x, const GroupElement& y);
GroupElement proj_canon(const AmbientGroup& g, const Matrix& m);

}  // namespace qsphere
