#pragma once

// Unitary permutation braids: the image of the positive braid monoid inside
// SU_n(q) under x_i = make_xi, the finite section S_n^U indexed by S_n, and
// executable forms of its structure theorems (weighted sums, torus
// faithfulness, the one-epsilon step law, and normal-form profiles).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsphere/bruhat.hpp"

namespace qsphere {

// The scalar pair that pins down the generators x_i inside SU_n(q):
// conj(zeta) = -zeta and eta * conj(eta) = -1.
struct SunScalars {
  FieldElement zeta;
  FieldElement eta;
};

// Deterministic scalars for a given field (least admissible codes).
SunScalars find_sun_scalars(const FieldRef& f);

// One unitary permutation braid: mat is the product of make_xi along any
// reduced word for perm (well defined because the x_i satisfy the braid
// relations), len its Coxeter length.
struct UnitaryPermBraid {
  Permutation perm;
  Matrix mat;
  u32 len;

  UnitaryPermBraid(Permutation w, Matrix m, u32 l)
      : perm(std::move(w)), mat(std::move(m)), len(l) {}
};

// Evaluate the braid homomorphism on a positive word (letters 1..n-1).
Matrix psi_word(const BraidWord& word, const SunScalars& sc);

// The braid attached to a permutation: psi evaluated along its staircase
// normal form.
UnitaryPermBraid psi_rho(const Permutation& w, const SunScalars& sc);

// Weighted sums. For every element of the generated subgroup,
//   sum_j eta^{j-i} x_{ij} = 1   and   sum_i eta^{j-i} (-1)^{j-i} x_{ij} = 1.
FieldElement weighted_row_sum(const Matrix& x, u32 i, const FieldElement& eta);
FieldElement weighted_col_sum(const Matrix& x, u32 j, const FieldElement& eta);

// Structured verdict of an exhaustive theorem check, shaped for JSON output.
// Notes record hypotheses that were accepted without enumeration; they do
// not affect the verdict.
struct TheoremReport {
  std::string theorem;
  std::string parameters;
  u64 cases_checked = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  bool ok() const { return failures.empty(); }
};

// All n! unitary permutation braids over a fixed scalar pair, indexed both
// by permutation and by matrix.
class SunTable {
 public:
  SunTable(u32 n, const SunScalars& sc);

  u32 n() const { return n_; }
  const SunScalars& scalars() const { return sc_; }
  const FieldParams* field() const { return sc_.zeta.field(); }

  const std::vector<UnitaryPermBraid>& all() const { return elems_; }
  const UnitaryPermBraid& at(const Permutation& w) const;

  // The unique permutation whose braid has this matrix, if any.
  std::optional<Permutation> membership(const Matrix& m) const;

 private:
  u32 n_;
  SunScalars sc_;
  std::vector<UnitaryPermBraid> elems_;
  std::map<std::vector<u32>, u32> by_perm_;
  std::map<std::vector<u32>, u32> by_mat_;
};

SunTable enumerate_sun(u32 n, const SunScalars& sc);

// For all pairs x, x' in S_n^U: x^{-1} x' monomial implies x = x'.
TheoremReport check_faithful_on_torus(u32 n, const SunScalars& sc);

// The one-epsilon step law. Odd characteristic: exactly one epsilon in
// {-1,+1} has x * x_i^epsilon in S_n^U, and the successor's length is
// len + epsilon. Characteristic 2: x_i is an involution, both signs agree,
// and the step always lands in S_n^U (epsilon reported as +1).
std::pair<int, UnitaryPermBraid> step_epsilon(const SunTable& table,
                                              const UnitaryPermBraid& x,
                                              u32 i);

// Strengthened step law against central twists: for every scalar z in
// Z(GU_n(q)), x * x_i^{-epsilon} * z stays outside S_n^U (epsilon the valid
// sign for x at i). The weighted row sum of any candidate equals the
// central scalar, which pins z = 1 and defers to the step law.
bool centre_twisted_uniqueness(const SunTable& table, const UnitaryPermBraid& x,
                               u32 i);

// Normal-form profile of a braid: the superdiagonal entries of the Bruhat
// factor u, and the bottom row of the leading block A of the matrix itself
// (the matrix is A + identity outside, A of size block_size). Throws
// CheckError when any entry disagrees with the predicted closed forms.
struct NormalFormProfile {
  std::vector<FieldElement> u_super;     // u_{i,i+1} for i = 1..n-1
  std::vector<FieldElement> bottom_row;  // row block_size of A; empty for id
  u32 block_size = 0;                    // l+1 for last segment s_l..s_k; 0 for id
  u32 segment_tail = 0;                  // the index k above; 0 for id
};

NormalFormProfile normal_form_profile(const UnitaryPermBraid& x,
                                      const SunScalars& sc);

}  // namespace qsphere
