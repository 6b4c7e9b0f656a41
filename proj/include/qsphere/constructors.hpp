#pragma once

// The sphere constructions for the unitary family.  SU_n(q) pairs the
// diagonal p-torus with the braid translate set; PSU_n(q) picks, by the
// p-shares of n and q+1, between the central quotient, a deeper root of
// unity checked directly in the projective ambient, and a corner embedding
// of the next-smaller sphere; PGU_n(q) is built upstairs in GU_n(q) and
// pushed through the scalar quotient; the Frobenius-extended group gets the
// degenerate quasi-reflection chain with its own hypothesis verifier.
// All scalar choices delegate to the field module.

#include <string>
#include <vector>

#include "qsphere/chains.hpp"
#include "qsphere/coxeter.hpp"
#include "qsphere/ubraid.hpp"

namespace qsphere {

// A constructed sphere, the ambient its elements are canonicalized in, and
// the report of the checks performed while building (transfer hypotheses for
// quotient constructions, structural certificates for direct ones).
struct SphereInstance {
  AmbientGroup amb;
  QSphere sphere;
  std::string family;      // "SU", "PSU", "PGU"
  std::string case_label;  // "a" / "b" / "c" for PSU, empty otherwise
  TheoremReport transport;
};

// Diagonal torus diag(u^{i-n} x i, u^i x (n-i)) for a root of unity u of
// order p, translate set S_n^U with weight (-1)^length, steps the braid
// generators.  Requires q != 2, p an odd prime, p | q+1, p not dividing n.
SphereInstance sphere_SUn(u32 n, u64 q, u32 p);

// Projective sphere for PSU_n(q), selected by case:
//   (a) p does not divide n: quotient transport of the SU_n sphere by the
//       center of order gcd(n, q+1);
//   (b) p | n and (n)_p < (q+1)_p: same diagonal shape over a root of unity
//       of order p*(n)_p, whose p-th powers are scalar, built directly in
//       the projective ambient;
//   (c) p | n and (n)_p >= (q+1)_p: corner embedding of the SU_{n-1} sphere,
//       one rank lower.
SphereInstance sphere_PSUn(u32 n, u64 q, u32 p, u64 closure_cap = 500000);

// Torus diag(u x i, 1 x (n-i)) upstairs in GU_n(q), transported through the
// scalar quotient with its q+1 central scalars as kernel.
SphereInstance sphere_PGUn(u32 n, u64 q, u32 p, u64 closure_cap = 500000);

// Decomposition of a translate: X[k] = P(perm) * Y_{v_j, lambda}^delta.
struct TranslateTag {
  u32 perm = 0;  // index into DegenerateBundle::perms
  u32 j = 0;     // 1-based vector index
  int delta = 1;
};

// The degenerate chain for PGU_n(q) extended by a field automorphism of
// order p (q = s^{pl}).  Not a sphere: distinct translates produce
// identified simplices, so the data is kept in Degenerate mode together
// with everything needed to re-derive the boundary pairings.
struct DegenerateBundle {
  explicit DegenerateBundle(AmbientGroup a) : amb(std::move(a)) {}

  AmbientGroup amb;  // projective, Phi-extended
  u32 n = 0;
  u32 p = 0;
  u32 l = 0;

  FieldElement alpha;         // fixed-field solution of the trace equation
  FieldElement u;             // order-p root of unity, fixed by Phi
  FieldElement lambda;        // norm-one scalar moved by Phi
  FieldElement lambda_twist;  // lambda^{1 - s^{2l}}, prime order coprime to 2p

  std::vector<Vec> v;              // v_1..v_n, pairwise orthogonal anisotropic
  std::vector<GroupElement> ys;    // Y_{v_j, lambda}, j = 1..n
  std::vector<Permutation> perms;  // all of S_n, indexed by TranslateTag::perm
  std::vector<TranslateTag> tags;  // parallel to data.X

  QSphere data;  // e_1..e_{n-1} and e_n = Phi, steps x_i, X, h; Degenerate
};

// Builds the bundle and certifies its structure: orthogonality of the v_j,
// the rank-n span (hence trivial intersection with the scalars), and
// injectivity of the translate set in the quotient.
DegenerateBundle build_PGUnPhi(u32 n, u32 s, u32 l, u32 p);

// Checks the two non-contractibility hypotheses on the accumulated chain:
// the never-identified witness flags carry coefficient exactly h * sign, and
// the boundary vanishes — both by brute-force accumulation and again
// structurally via the right-step pairing (steps 1..n-1) and the
// quasi-reflection flip pairing (step n).
TheoremReport verify_degenerate_hypotheses(const DegenerateBundle& b);

}  // namespace qsphere
