#pragma once

// Refined Bruhat normal form x = b * wlift * u in SL_n over F_{q^2}:
// b upper triangular, wlift the fixed monomial lift of a permutation w,
// u upper unipotent supported on positions (i, j) with i < j and w(i) > w(j).
// The decomposition is unique once the lift is fixed; we pin the lift to the
// product of x_block(i, 0, 1) along the staircase normal-form word.

#include "qsphere/coxeter.hpp"
#include "qsphere/group.hpp"

namespace qsphere {

struct BruhatForm {
  Matrix b;        // upper triangular, det 1
  Permutation w;   // cell label
  Matrix u;        // unipotent upper, support { (i,j) : i < j, w(i) > w(j) }
  BruhatForm(Matrix b_, Permutation w_, Matrix u_)
      : b(std::move(b_)), w(std::move(w_)), u(std::move(u_)) {}
};

// Fixed monomial lift: product of x_block(l, 0, 1) along rho(w).
Matrix w_lift(const FieldRef& f, const Permutation& w);

// Decompose x (det 1 required) into its normal form.  Deterministic:
// the permutation is read off by a left-to-right pivot sweep (lowest
// unclaimed nonzero row per column), u by bottom-up column elimination.
BruhatForm bruhat_normal_form(const Matrix& x);

// Cell label of x: the w of its normal form.
Permutation pi_b(const Matrix& x);

// Multiply a normal form by a one-letter normal form (y in the cell of s_i)
// under the length hypothesis l(w s_i) = l(w) + 1, returning the normal form
// of x*y.  Checks the carried-entry law u_{i,i+1} = (u_y)_{i,i+1}.
BruhatForm refined_product_check(const BruhatForm& x, const BruhatForm& y);

// True when the support of u is inside { (i,j) : i < j, w(i) > w(j) }.
bool in_lower_cell_support(const Matrix& u, const Permutation& w);

}  // namespace qsphere
