#pragma once

// Signed simplicial chains on flags of elementary abelian subgroups: index
// tuples and their signatures, the subgroups spanned by partial generator
// sets, the alternating chain C_E and its translated accumulation C_{E,X,h},
// boundary with an augmentation level, the Q-sphere axioms, and transport of
// spheres along group homomorphisms.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qsphere/group.hpp"
#include "qsphere/ubraid.hpp"

namespace qsphere {

// Ordered sequence of r-1 distinct indices from {1..r}; the omitted index is
// determined and enters the signature.
struct Tuple {
  u32 r = 0;
  std::vector<u32> entries;

  Tuple(u32 r, std::vector<u32> entries);
};

// (-1)^{inversions + (r - omitted index)}.
int sgn(const Tuple& t);

// All r! tuples for a given r, in a fixed deterministic order.
std::vector<Tuple> all_tuples(u32 r);

// Finite subgroup carried as its full element list, sorted by encoding; the
// sorted encoding vector is the canonical identity used in simplex keys.
struct Subgroup {
  std::vector<GroupElement> generators;
  std::vector<GroupElement> elements;
  std::vector<Enc> encs;  // parallel to elements, ascending

  u64 size() const { return elements.size(); }
  bool contains(const AmbientGroup& amb, const GroupElement& g) const;
};

// Closure of commuting order-p generators; every generator must enlarge the
// span by a factor of p (dependence is an error, not a silent collapse).
Subgroup abelian_span(const AmbientGroup& amb, u32 p,
                      const std::vector<GroupElement>& gens);

// Span of the e_i omitting the (1-based) indices listed in prefix.
Subgroup sub_E(const AmbientGroup& amb, u32 p,
               const std::vector<GroupElement>& e_gens,
               const std::vector<u32>& prefix);

// BFS closure of an arbitrary generating set; throws past the cap.
std::vector<GroupElement> generated_subgroup(const AmbientGroup& amb,
                                             const std::vector<GroupElement>& gens,
                                             u64 cap);

// True when conjugation by g stabilizes the subgroup (generator test).
bool normalizes(const AmbientGroup& amb, const Subgroup& sg,
                const GroupElement& g);

// Strictly increasing flag of subgroups; the empty flag is the formal
// (-1)-dimensional augmentation simplex.
struct Simplex {
  std::vector<Subgroup> groups;
};

// Value identity of a simplex: the sequence of sorted element encodings.
using SimplexKey = std::vector<std::vector<Enc>>;

SimplexKey simplex_key(const Simplex& s);

Subgroup conj_subgroup(const AmbientGroup& amb, const GroupElement& g,
                       const Subgroup& sg);
Simplex conj_simplex(const AmbientGroup& amb, const GroupElement& g,
                     const Simplex& s);

// Sparse integer chain in one dimension; zero coefficients are never stored,
// and one witness simplex is kept per key so faces and conjugates can be
// rebuilt from the chain alone.
struct Chain {
  int dimension = 0;
  std::map<SimplexKey, mpz_class> coeffs;
  std::map<SimplexKey, Simplex> reps;

  void add(const Simplex& s, const mpz_class& c);
  mpz_class coeff(const SimplexKey& k) const;
  u64 support_size() const { return coeffs.size(); }
};

// The alternating chain over all tuples: sum of sgn(t) times the flag built
// from the tails of t.  Exactly r! simplices, each with coefficient +-1.
Chain chain_CE(const AmbientGroup& amb, u32 p,
               const std::vector<GroupElement>& e_gens);

// Alternating face sum; removing the j-th smallest subgroup carries sign
// (-1)^j.  Dimension-0 simplices bound the formal empty simplex, so the
// rank-1 case is handled uniformly (reduced chains).
Chain boundary(const Chain& c);

Chain conj_chain(const AmbientGroup& amb, const GroupElement& g,
                 const Chain& c);

enum class SphereMode {
  Strict,      // two-sided direction axiom
  Involutive,  // order-2 steps, one-sided axiom
  Degenerate,  // bespoke witnesses; not accepted by the generic verifier
};

// Sphere datum: generators of E, the step elements, the translate set with
// its alternating weight, and which variant of the axioms is claimed.
struct QSphere {
  u32 p = 0;
  std::vector<GroupElement> e;
  std::vector<GroupElement> xs;
  std::vector<GroupElement> X;
  std::vector<int> h;  // parallel to X, nonzero
  SphereMode mode = SphereMode::Strict;

  u32 rank() const { return static_cast<u32>(e.size()); }
};

// Sum over x in X of h(x) times the conjugated chain C_E.
Chain chain_CEXh(const AmbientGroup& amb, const QSphere& s);

// Caches the accumulated chain and its boundary for coefficient queries: the
// coefficient of the conjugated flag of t by x in the chain, and of its
// truncation (top subgroup removed) in the boundary.
class SphereChain {
 public:
  SphereChain(const AmbientGroup& amb, const QSphere& s);

  const Chain& chain() const { return chain_; }
  const Chain& boundary_chain() const { return boundary_; }

  mpz_class coeff_C(const GroupElement& x, const Tuple& t) const;
  mpz_class coeff_D(const GroupElement& x, const Tuple& t) const;

 private:
  const AmbientGroup* amb_;
  std::vector<Tuple> tuples_;
  std::vector<Simplex> base_;  // flag per tuple, parallel to tuples_
  std::map<std::vector<u32>, u32> tuple_index_;
  Chain chain_;
  Chain boundary_;

  const Simplex& base_for(const Tuple& t) const;
};

// Axiom check: (a) distinct translates never differ by an E-normalizer,
// (b) each step centralizes the complementary span, (c) exactly one step
// direction stays in X with h antisymmetric (strict), or (c2) steps are
// involutions and the one-sided variant holds (involutive).
TheoremReport verify_qsphere(const AmbientGroup& amb, const QSphere& s);

struct CycleReport {
  bool is_cycle = false;
  u64 support_size = 0;
};

CycleReport verify_cycle_nonzero(const Chain& c);

// Homomorphism descriptor: element mapper plus the enumerated kernel.
struct GroupMap {
  const AmbientGroup* source = nullptr;
  const AmbientGroup* target = nullptr;
  std::function<GroupElement(const GroupElement&)> apply;
  std::vector<GroupElement> kernel;
};

struct ImageSphere {
  QSphere sphere;
  TheoremReport report;
};

// Transports a sphere along phi after checking the transfer hypotheses:
// the kernel normalizes E and meets it trivially, every normalizer of the
// image span inside the image of <X union kernel> has a normalizing lift
// (enumerated up to closure_cap, else recorded as an accepted hypothesis),
// and in strict mode each translate admits exactly one step direction into
// X times the kernel.  Violations throw; the report records the counts.
ImageSphere image_sphere(const GroupMap& phi, const QSphere& s,
                         u64 closure_cap = 500000);

}  // namespace qsphere
