#include "qsphere/chains.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "qsphere/coxeter.hpp"

namespace qsphere {

namespace {

std::string ordinal(u32 i) {
  std::ostringstream os;
  os << i;
  return os.str();
}

bool commute(const AmbientGroup& amb, const GroupElement& a, const GroupElement& b) {
  return amb.mul(a, b) == amb.mul(b, a);
}

// Strictly increasing sizes and element containment along the flag.
void validate_flag(const Simplex& s) {
  for (size_t k = 0; k + 1 < s.groups.size(); ++k) {
    const auto& lo = s.groups[k].encs;
    const auto& hi = s.groups[k + 1].encs;
    if (lo.size() >= hi.size() || !std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()))
      throw CheckError("simplex flag is not strictly increasing");
  }
}

}  // namespace

Tuple::Tuple(u32 r, std::vector<u32> entries_in) : r(r), entries(std::move(entries_in)) {
  if (r == 0) throw ParamError("tuple rank must be positive");
  if (entries.size() + 1 != r) throw ParamError("tuple must omit exactly one index");
  std::vector<bool> seen(r + 1, false);
  for (u32 v : entries) {
    if (v < 1 || v > r) throw ParamError("tuple entry out of range");
    if (seen[v]) throw ParamError("tuple entry repeated");
    seen[v] = true;
  }
}

int sgn(const Tuple& t) {
  u64 inversions = 0;
  for (size_t a = 0; a < t.entries.size(); ++a)
    for (size_t b = a + 1; b < t.entries.size(); ++b)
      if (t.entries[a] > t.entries[b]) ++inversions;
  u64 total = static_cast<u64>(t.r) * (t.r + 1) / 2;
  u64 present = 0;
  for (u32 v : t.entries) present += v;
  u64 omitted = total - present;
  u64 shift = t.r - omitted;
  return ((inversions + shift) % 2 == 0) ? +1 : -1;
}

std::vector<Tuple> all_tuples(u32 r) {
  if (r == 0) throw ParamError("tuple rank must be positive");
  const std::vector<Permutation> perms = all_permutations(r);
  std::vector<Tuple> out;
  out.reserve(perms.size());
  for (const auto& w : perms) {
    std::vector<u32> head(w.images().begin(), w.images().end() - 1);
    out.emplace_back(r, std::move(head));
  }
  return out;
}

bool Subgroup::contains(const AmbientGroup& amb, const GroupElement& g) const {
  return std::binary_search(encs.begin(), encs.end(), amb.enc(g));
}

Subgroup abelian_span(const AmbientGroup& amb, u32 p,
                      const std::vector<GroupElement>& gens) {
  if (p < 2) throw ParamError("span exponent must be at least 2");
  for (size_t a = 0; a < gens.size(); ++a)
    for (size_t b = a + 1; b < gens.size(); ++b)
      if (!commute(amb, gens[a], gens[b]))
        throw ParamError("span generators do not commute");
  std::vector<GroupElement> elems = {amb.identity()};
  std::unordered_set<Enc, EncHash> seen = {amb.enc(elems[0])};
  for (const auto& g : gens) {
    if (amb.element_order(g) != p) throw ParamError("span generator order differs from the exponent");
    const std::vector<GroupElement> base = elems;
    GroupElement power = g;
    for (u32 t = 1; t < p; ++t) {
      for (const auto& e : base) {
        GroupElement ne = amb.mul(e, power);
        if (!seen.insert(amb.enc(ne)).second)
          throw CheckError("span generators are dependent");
        elems.push_back(ne);
      }
      power = amb.mul(power, g);
    }
  }
  std::vector<std::pair<Enc, GroupElement>> tagged;
  tagged.reserve(elems.size());
  for (auto& e : elems) tagged.emplace_back(amb.enc(e), std::move(e));
  std::sort(tagged.begin(), tagged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Subgroup out;
  out.generators = gens;
  out.elements.reserve(tagged.size());
  out.encs.reserve(tagged.size());
  for (auto& [k, e] : tagged) {
    out.encs.push_back(k);
    out.elements.push_back(std::move(e));
  }
  return out;
}

Subgroup sub_E(const AmbientGroup& amb, u32 p,
               const std::vector<GroupElement>& e_gens,
               const std::vector<u32>& prefix) {
  const u32 r = static_cast<u32>(e_gens.size());
  if (prefix.size() >= r && r > 0) throw ParamError("prefix omits every generator");
  std::vector<bool> omit(r + 1, false);
  for (u32 v : prefix) {
    if (v < 1 || v > r) throw ParamError("prefix index out of range");
    if (omit[v]) throw ParamError("prefix index repeated");
    omit[v] = true;
  }
  std::vector<GroupElement> kept;
  kept.reserve(r - prefix.size());
  for (u32 i = 1; i <= r; ++i)
    if (!omit[i]) kept.push_back(e_gens[i - 1]);
  return abelian_span(amb, p, kept);
}

std::vector<GroupElement> generated_subgroup(const AmbientGroup& amb,
                                             const std::vector<GroupElement>& gens,
                                             u64 cap) {
  std::vector<GroupElement> out = {amb.identity()};
  std::unordered_set<Enc, EncHash> seen = {amb.enc(out[0])};
  for (size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : gens) {
      GroupElement ne = amb.mul(out[head], g);
      if (seen.insert(amb.enc(ne)).second) {
        if (out.size() >= cap) throw CheckError("subgroup closure exceeds the cap");
        out.push_back(std::move(ne));
      }
    }
  }
  return out;
}

bool normalizes(const AmbientGroup& amb, const Subgroup& sg, const GroupElement& g) {
  for (const auto& gen : sg.generators)
    if (!sg.contains(amb, amb.conj(g, gen))) return false;
  return true;
}

SimplexKey simplex_key(const Simplex& s) {
  SimplexKey key;
  key.reserve(s.groups.size());
  for (const auto& g : s.groups) key.push_back(g.encs);
  return key;
}

Subgroup conj_subgroup(const AmbientGroup& amb, const GroupElement& g, const Subgroup& sg) {
  Subgroup out;
  out.generators.reserve(sg.generators.size());
  for (const auto& e : sg.generators) out.generators.push_back(amb.conj(g, e));
  std::vector<std::pair<Enc, GroupElement>> tagged;
  tagged.reserve(sg.elements.size());
  for (const auto& e : sg.elements) {
    GroupElement ne = amb.conj(g, e);
    tagged.emplace_back(amb.enc(ne), std::move(ne));
  }
  std::sort(tagged.begin(), tagged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.elements.reserve(tagged.size());
  out.encs.reserve(tagged.size());
  for (auto& [k, e] : tagged) {
    out.encs.push_back(k);
    out.elements.push_back(std::move(e));
  }
  return out;
}

Simplex conj_simplex(const AmbientGroup& amb, const GroupElement& g, const Simplex& s) {
  Simplex out;
  out.groups.reserve(s.groups.size());
  for (const auto& sg : s.groups) out.groups.push_back(conj_subgroup(amb, g, sg));
  return out;
}

void Chain::add(const Simplex& s, const mpz_class& c) {
  if (static_cast<int>(s.groups.size()) != dimension + 1)
    throw ParamError("simplex dimension differs from the chain dimension");
  validate_flag(s);
  if (c == 0) return;
  SimplexKey key = simplex_key(s);
  auto it = coeffs.find(key);
  if (it == coeffs.end()) {
    coeffs.emplace(key, c);
    reps.emplace(std::move(key), s);
    return;
  }
  it->second += c;
  if (it->second == 0) {
    coeffs.erase(it);
    reps.erase(key);
  }
}

mpz_class Chain::coeff(const SimplexKey& k) const {
  auto it = coeffs.find(k);
  return it == coeffs.end() ? mpz_class(0) : it->second;
}

Chain chain_CE(const AmbientGroup& amb, u32 p,
               const std::vector<GroupElement>& e_gens) {
  const u32 r = static_cast<u32>(e_gens.size());
  if (r == 0) throw ParamError("the flag chain needs at least one generator");
  std::map<std::vector<u32>, Subgroup> cache;
  cache.emplace(std::vector<u32>{}, abelian_span(amb, p, e_gens));
  Chain c;
  c.dimension = static_cast<int>(r) - 1;
  for (const auto& t : all_tuples(r)) {
    Simplex s;
    s.groups.reserve(r);
    for (u32 l = r - 1; l >= 1; --l) {
      std::vector<u32> prefix(t.entries.begin(), t.entries.begin() + l);
      auto it = cache.find(prefix);
      if (it == cache.end())
        it = cache.emplace(prefix, sub_E(amb, p, e_gens, prefix)).first;
      s.groups.push_back(it->second);
    }
    s.groups.push_back(cache.at({}));
    c.add(s, sgn(t));
  }
  return c;
}

Chain boundary(const Chain& c) {
  if (c.dimension < 0) throw ParamError("the augmentation level has no boundary");
  Chain out;
  out.dimension = c.dimension - 1;
  for (const auto& [key, coeff] : c.coeffs) {
    const Simplex& s = c.reps.at(key);
    for (size_t j = 0; j < s.groups.size(); ++j) {
      Simplex face;
      face.groups.reserve(s.groups.size() - 1);
      for (size_t k = 0; k < s.groups.size(); ++k)
        if (k != j) face.groups.push_back(s.groups[k]);
      out.add(face, (j % 2 == 0) ? coeff : -coeff);
    }
  }
  return out;
}

Chain conj_chain(const AmbientGroup& amb, const GroupElement& g, const Chain& c) {
  Chain out;
  out.dimension = c.dimension;
  for (const auto& [key, coeff] : c.coeffs)
    out.add(conj_simplex(amb, g, c.reps.at(key)), coeff);
  return out;
}

Chain chain_CEXh(const AmbientGroup& amb, const QSphere& s) {
  return SphereChain(amb, s).chain();
}

SphereChain::SphereChain(const AmbientGroup& amb, const QSphere& s) : amb_(&amb) {
  const u32 r = s.rank();
  if (r == 0) throw ParamError("sphere rank must be positive");
  if (s.h.size() != s.X.size()) throw ParamError("weight list must parallel the translate set");
  std::map<std::vector<u32>, Subgroup> cache;
  cache.emplace(std::vector<u32>{}, abelian_span(amb, s.p, s.e));
  tuples_ = all_tuples(r);
  base_.reserve(tuples_.size());
  for (u32 idx = 0; idx < tuples_.size(); ++idx) {
    const auto& t = tuples_[idx];
    tuple_index_.emplace(t.entries, idx);
    Simplex flag;
    flag.groups.reserve(r);
    for (u32 l = r - 1; l >= 1; --l) {
      std::vector<u32> prefix(t.entries.begin(), t.entries.begin() + l);
      auto it = cache.find(prefix);
      if (it == cache.end())
        it = cache.emplace(prefix, sub_E(amb, s.p, s.e, prefix)).first;
      flag.groups.push_back(it->second);
    }
    flag.groups.push_back(cache.at({}));
    base_.push_back(std::move(flag));
  }
  chain_.dimension = static_cast<int>(r) - 1;
  for (size_t xi = 0; xi < s.X.size(); ++xi) {
    if (s.h[xi] == 0) throw ParamError("sphere weights must be nonzero");
    for (size_t ti = 0; ti < tuples_.size(); ++ti)
      chain_.add(conj_simplex(amb, s.X[xi], base_[ti]), s.h[xi] * sgn(tuples_[ti]));
  }
  boundary_ = boundary(chain_);
}

const Simplex& SphereChain::base_for(const Tuple& t) const {
  auto it = tuple_index_.find(t.entries);
  if (it == tuple_index_.end()) throw ParamError("tuple rank differs from the sphere rank");
  return base_[it->second];
}

mpz_class SphereChain::coeff_C(const GroupElement& x, const Tuple& t) const {
  return chain_.coeff(simplex_key(conj_simplex(*amb_, x, base_for(t))));
}

mpz_class SphereChain::coeff_D(const GroupElement& x, const Tuple& t) const {
  Simplex truncated = conj_simplex(*amb_, x, base_for(t));
  truncated.groups.pop_back();
  return boundary_.coeff(simplex_key(truncated));
}

TheoremReport verify_qsphere(const AmbientGroup& amb, const QSphere& s) {
  const u32 r = s.rank();
  if (r == 0) throw ParamError("sphere rank must be positive");
  if (s.xs.size() != r) throw ParamError("step list must match the rank");
  if (s.h.size() != s.X.size()) throw ParamError("weight list must parallel the translate set");
  if (s.X.empty()) throw ParamError("translate set is empty");
  if (s.mode == SphereMode::Degenerate)
    throw ParamError("degenerate spheres carry bespoke witnesses, not these axioms");

  TheoremReport rep;
  rep.theorem = "qsphere_axioms";
  {
    std::ostringstream os;
    os << "mode=" << (s.mode == SphereMode::Strict ? "strict" : "involutive")
       << " r=" << r << " |X|=" << s.X.size() << " p=" << s.p;
    rep.parameters = os.str();
  }

  const Subgroup E = abelian_span(amb, s.p, s.e);
  std::unordered_map<Enc, u32, EncHash> x_index;
  for (u32 i = 0; i < s.X.size(); ++i) {
    if (s.h[i] == 0) throw ParamError("sphere weights must be nonzero");
    if (!x_index.emplace(amb.enc(s.X[i]), i).second)
      throw ParamError("translate set has a repeat");
  }

  for (u32 a = 0; a < s.X.size(); ++a) {
    for (u32 b = 0; b < s.X.size(); ++b) {
      if (a == b) continue;
      GroupElement n = amb.mul(amb.inv(s.X[a]), s.X[b]);
      ++rep.cases_checked;
      if (normalizes(amb, E, n))
        rep.failures.push_back("(a) translates " + ordinal(a) + " and " + ordinal(b) +
                               " differ by a normalizer of the span");
    }
  }

  for (u32 i = 0; i < r; ++i) {
    for (u32 j = 0; j < r; ++j) {
      if (i == j) continue;
      ++rep.cases_checked;
      if (!commute(amb, s.xs[i], s.e[j]))
        rep.failures.push_back("(b) step " + ordinal(i + 1) +
                               " does not centralize generator " + ordinal(j + 1));
    }
  }

  if (s.mode == SphereMode::Strict) {
    for (u32 a = 0; a < s.X.size(); ++a) {
      for (u32 i = 0; i < r; ++i) {
        ++rep.cases_checked;
        auto up = x_index.find(amb.enc(amb.mul(s.X[a], s.xs[i])));
        auto dn = x_index.find(amb.enc(amb.mul(s.X[a], amb.inv(s.xs[i]))));
        const int hits = (up != x_index.end() ? 1 : 0) + (dn != x_index.end() ? 1 : 0);
        if (hits != 1) {
          rep.failures.push_back("(c) translate " + ordinal(a) + ", step " + ordinal(i + 1) +
                                 ": " + ordinal(hits) + " admissible directions");
          continue;
        }
        const u32 partner = (up != x_index.end()) ? up->second : dn->second;
        if (s.h[a] + s.h[partner] != 0)
          rep.failures.push_back("(c) weights fail antisymmetry at translate " + ordinal(a) +
                                 ", step " + ordinal(i + 1));
      }
    }
  } else {
    for (u32 i = 0; i < r; ++i) {
      ++rep.cases_checked;
      if (amb.element_order(s.xs[i]) != 2)
        rep.failures.push_back("(c2) step " + ordinal(i + 1) + " is not an involution");
    }
    for (u32 a = 0; a < s.X.size(); ++a) {
      for (u32 i = 0; i < r; ++i) {
        ++rep.cases_checked;
        auto nxt = x_index.find(amb.enc(amb.mul(s.X[a], s.xs[i])));
        if (nxt == x_index.end()) {
          rep.failures.push_back("(c2) translate " + ordinal(a) + ", step " + ordinal(i + 1) +
                                 " leaves the translate set");
          continue;
        }
        if (s.h[a] + s.h[nxt->second] != 0)
          rep.failures.push_back("(c2) weights fail antisymmetry at translate " + ordinal(a) +
                                 ", step " + ordinal(i + 1));
      }
    }
  }
  return rep;
}

CycleReport verify_cycle_nonzero(const Chain& c) {
  CycleReport out;
  out.support_size = c.support_size();
  if (c.coeffs.empty() || c.dimension < 0) {
    out.is_cycle = true;
    return out;
  }
  out.is_cycle = boundary(c).coeffs.empty();
  return out;
}

ImageSphere image_sphere(const GroupMap& phi, const QSphere& s, u64 closure_cap) {
  if (phi.source == nullptr || phi.target == nullptr || !phi.apply)
    throw ParamError("map descriptor is incomplete");
  if (s.mode == SphereMode::Degenerate)
    throw ParamError("degenerate spheres carry bespoke witnesses, not this transport");
  const AmbientGroup& src = *phi.source;
  const AmbientGroup& tgt = *phi.target;
  const u32 r = s.rank();
  if (r == 0 || s.xs.size() != r || s.h.size() != s.X.size() || s.X.empty())
    throw ParamError("sphere fields are malformed");

  TheoremReport rep;
  rep.theorem = "sphere_transport_hypotheses";
  {
    std::ostringstream os;
    os << "mode=" << (s.mode == SphereMode::Strict ? "strict" : "involutive")
       << " r=" << r << " |X|=" << s.X.size() << " |K|=" << phi.kernel.size();
    rep.parameters = os.str();
  }

  // The kernel list must be the full subgroup and map to the identity.
  const GroupElement src_id = src.identity();
  const GroupElement tgt_id = tgt.identity();
  std::unordered_set<Enc, EncHash> kernel_encs;
  bool has_identity = false;
  for (const auto& k : phi.kernel) {
    kernel_encs.insert(src.enc(k));
    has_identity = has_identity || k == src_id;
    if (phi.apply(k) != tgt_id) throw ParamError("kernel element maps nontrivially");
  }
  if (!has_identity) throw ParamError("kernel list must contain the identity");
  for (const auto& k : phi.kernel)
    for (const auto& k2 : phi.kernel)
      if (!kernel_encs.count(src.enc(src.mul(k, src.inv(k2)))))
        throw ParamError("kernel list is not closed");

  const Subgroup E = abelian_span(src, s.p, s.e);
  for (const auto& k : phi.kernel) {
    ++rep.cases_checked;
    if (!normalizes(src, E, k)) throw CheckError("kernel does not normalize the span");
    if (!(k == src_id) && E.contains(src, k))
      throw CheckError("kernel meets the span nontrivially");
  }

  QSphere out;
  out.p = s.p;
  out.mode = s.mode;
  out.e.reserve(r);
  for (const auto& e : s.e) out.e.push_back(phi.apply(e));
  out.xs.reserve(r);
  for (const auto& x : s.xs) out.xs.push_back(phi.apply(x));
  out.X.reserve(s.X.size());
  std::unordered_set<Enc, EncHash> image_encs;
  for (const auto& x : s.X) {
    GroupElement y = phi.apply(x);
    if (!image_encs.insert(tgt.enc(y)).second)
      throw CheckError("map identifies two translates");
    out.X.push_back(std::move(y));
  }
  out.h = s.h;

  // Injectivity on the span and its image, via the span sizes.
  const Subgroup imageE = abelian_span(tgt, s.p, out.e);
  rep.cases_checked += imageE.size();

  // Surjectivity of span normalizers onto image-span normalizers, checked
  // over the closure of the translates and the kernel when it fits the cap.
  std::vector<GroupElement> seeds = s.X;
  seeds.insert(seeds.end(), phi.kernel.begin(), phi.kernel.end());
  bool enumerated = true;
  std::vector<GroupElement> closure;
  try {
    closure = generated_subgroup(src, seeds, closure_cap);
  } catch (const CheckError&) {
    enumerated = false;
  }
  if (enumerated) {
    std::unordered_map<Enc, bool, EncHash> has_lift;
    for (const auto& g : closure) {
      GroupElement m = phi.apply(g);
      if (!normalizes(tgt, imageE, m)) continue;
      has_lift[tgt.enc(m)] |= normalizes(src, E, g);
    }
    rep.cases_checked += closure.size();
    for (const auto& [mkey, ok] : has_lift)
      if (!ok) throw CheckError("an image-span normalizer has no normalizing lift");
  } else {
    std::ostringstream os;
    os << "span-normalizer surjectivity not enumerated: the closure of the "
          "translates and the kernel exceeds "
       << closure_cap << " elements; accepted as a hypothesis";
    rep.notes.push_back(os.str());
  }

  if (s.mode == SphereMode::Strict) {
    std::unordered_set<Enc, EncHash> xk_encs;
    for (const auto& x : s.X)
      for (const auto& k : phi.kernel) xk_encs.insert(src.enc(src.mul(x, k)));
    for (const auto& x : s.X) {
      for (u32 i = 0; i < r; ++i) {
        ++rep.cases_checked;
        const int hits =
            (xk_encs.count(src.enc(src.mul(x, s.xs[i]))) ? 1 : 0) +
            (xk_encs.count(src.enc(src.mul(x, src.inv(s.xs[i])))) ? 1 : 0);
        if (hits != 1)
          throw CheckError("direction uniqueness fails across the kernel cosets");
      }
    }
  } else {
    rep.notes.push_back("involutive variant: direction uniqueness transfers with no extra check");
  }

  return {std::move(out), std::move(rep)};
}

}  // namespace qsphere
