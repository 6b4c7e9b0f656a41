#pragma once

// Finite fields F_{s^m} in polynomial representation, sized for desk-scale
// experiments (s^m <= 2^32, tables precomputed).  One FieldParams object
// models the largest field of a tower; subfields are subsets cut out by
// Frobenius powers, never separate objects.
//
// Determinism contract (everything downstream depends on it):
//   * modulus: first monic irreducible of degree m in lexicographic order on
//     the coefficient tuple (c_0, c_1, ..., c_{m-1}), constant term first;
//   * element codes: code = sum_i c_i s^i (c_0 least significant digit);
//     "least element" always means least code;
//   * generator: least code of full multiplicative order s^m - 1;
//   * roots of unity of order k: u_0 = g^{(s^m-1)/k}, then the least-code
//     generator of <u_0>.

#include <memory>
#include <vector>

#include "qsphere/common.hpp"

namespace qsphere {

class FieldParams;
using FieldRef = std::shared_ptr<const FieldParams>;

class FieldParams {
 public:
  static constexpr u32 kNoZech = 0xffffffffu;

  u32 s;                     // characteristic, prime
  u32 m;                     // degree over the prime field
  u64 size;                  // s^m
  std::vector<u32> modulus;  // monic, modulus[i] = coefficient of x^i, length m+1
  u32 generator;             // code of the fixed multiplicative generator

  // Code-level arithmetic.  Codes are in [0, size); 0 and 1 are the constants.
  u32 add(u32 a, u32 b) const;
  u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }
  u32 neg(u32 a) const;
  u32 mul(u32 a, u32 b) const;
  u32 inv(u32 a) const;
  u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }
  u32 pow(u32 a, i64 e) const;
  u32 frob(u32 a, u64 power) const;  // a^{power}, power a nonnegative exponent
  u32 conj(u32 a) const;             // a^q with q = s^{m/2}; requires even m
  u32 trace(u32 a) const { return add(a, conj(a)); }
  u32 norm(u32 a) const { return mul(a, conj(a)); }
  u64 mul_order(u32 a) const;  // multiplicative order; a != 0
  u32 from_int(i64 v) const;   // image of an ordinary integer (constant digit)

  u64 q() const;  // s^{m/2}, the unitary-tower midpoint; requires even m
  bool in_subfield(u32 a, u64 sub_size) const;  // a^{sub_size} == a

  // Digit <-> code translation (c_0 first).
  std::vector<u32> digits(u32 code) const;
  u32 code_of(const std::vector<u32>& digits) const;

 private:
  friend FieldRef make_field(u32 s, u32 m);
  FieldParams() = default;
  std::vector<u32> exp_;   // exp_[k] = code of g^k, k in [0, size-1)
  std::vector<u32> log_;   // log of nonzero code
  std::vector<u32> zech_;  // zech_[k] = log(1 + g^k), kNoZech when 1 + g^k = 0
};

// Interned: repeated calls with the same (s, m) return the same object.
FieldRef make_field(u32 s, u32 m);

class FieldElement {
 public:
  FieldElement() : f_(nullptr), code_(0) {}
  FieldElement(const FieldParams* f, u32 code) : f_(f), code_(code) {}
  FieldElement(const FieldRef& f, u32 code) : f_(f.get()), code_(code) {}

  const FieldParams* field() const { return f_; }
  u32 code() const { return code_; }
  std::vector<u32> coeffs() const { return f_->digits(code_); }
  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }

  FieldElement operator+(FieldElement o) const { return {f_, f_->add(code_, o.code_)}; }
  FieldElement operator-(FieldElement o) const { return {f_, f_->sub(code_, o.code_)}; }
  FieldElement operator*(FieldElement o) const { return {f_, f_->mul(code_, o.code_)}; }
  FieldElement operator/(FieldElement o) const { return {f_, f_->div(code_, o.code_)}; }
  FieldElement operator-() const { return {f_, f_->neg(code_)}; }
  FieldElement pow(i64 e) const { return {f_, f_->pow(code_, e)}; }
  FieldElement conj() const { return {f_, f_->conj(code_)}; }
  FieldElement trace() const { return {f_, f_->trace(code_)}; }
  FieldElement norm() const { return {f_, f_->norm(code_)}; }
  u64 mul_order() const { return f_->mul_order(code_); }

  bool operator==(FieldElement o) const { return f_ == o.f_ && code_ == o.code_; }
  bool operator!=(FieldElement o) const { return !(*this == o); }

 private:
  const FieldParams* f_;
  u32 code_;
};

// Canonical literal: "[c0,c1,...,c_{m-1}]@F_{s^m}", e.g. "[0,1,0,0]@F_{2^4}".
std::string to_literal(FieldElement a);
FieldElement parse_literal(const FieldRef& f, const std::string& text);

// Distinguished scalars.  All scans follow the determinism contract above.
// zeta: conj(z) = -z, z not in {0, 1, -1}; fails only for q = 2 (the trace
// kernel is then F_2 itself, leaving no admissible element).
FieldElement find_zeta(const FieldRef& f);
// eta: eta * conj(eta) = -1.
FieldElement find_eta(const FieldRef& f);
// Order-k root of unity with k | q+1 (k = p in the typical call).
FieldElement find_unity_root(const FieldRef& f, u64 k);

// Fixed-field scalar for the Frobenius-extension construction.  f must be
// F_{s^{2pl}}; the result alpha lies in F_{s^{2l}} and satisfies
// alpha + conj(alpha) + (n-2) = 0, alpha != 1, alpha*conj(alpha) + (n-1) != 0.
// Method: least trace-equation solution, averaged over the Phi-orbit
// (Phi = s^{2l}-power Frobenius), then shifted by (gamma-1)/(gamma+1) for the
// least admissible norm-one gamma in the fixed field if the average landed on 1.
FieldElement choose_alpha(const FieldRef& f, u32 n, u32 l, u32 p);

struct LambdaChoice {
  FieldElement lambda;   // order r^{ord_r(s^{2l}-1)+1}, lambda^{q+1} = 1
  FieldElement Lambda;   // lambda^{1 - s^{2l}}, order r
  u64 r;                 // least prime r != 2, p with ord_r(s^{pl}+1) > ord_r(s^{2l}-1)
};
// Fails (ParamError) when no such prime exists; that happens exactly at the
// excluded parameter pair (p, q) = (3, 8).
LambdaChoice choose_lambda(const FieldRef& f, u32 l, u32 p);

}  // namespace qsphere
