#include "qsphere/constructors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "qsphere/numth.hpp"

namespace qsphere {

namespace {

struct PrimePower {
  u32 s = 0;
  u32 e = 0;
};

PrimePower prime_power(u64 q) {
  const auto fac = factor_u64(q);
  if (fac.size() != 1) throw ParamError("the field size must be a prime power");
  if (fac.begin()->first > 0xffffffffull) throw ParamError("the field size is too large");
  return {static_cast<u32>(fac.begin()->first), fac.begin()->second};
}

void require_odd_prime(u32 p) {
  if (p % 2 == 0 || !is_prime_u64(p))
    throw ParamError("the torus exponent must be an odd prime");
}

void require_common(u32 n, u64 q, u32 p) {
  if (n < 2) throw ParamError("the matrix size must be at least 2");
  if (q == 2) throw ParamError("the field size q = 2 is excluded");
  require_odd_prime(p);
  if ((q + 1) % p != 0) throw ParamError("the torus exponent must divide q + 1");
}

// diag(u^{i-n} x i, u^i x (n-i)); determinant-free shape shared by the SU
// torus and its deeper-root variant.
Matrix su_torus_matrix(const FieldRef& f, u32 n, FieldElement u, u32 i) {
  std::vector<FieldElement> d;
  d.reserve(n);
  for (u32 k = 0; k < n; ++k)
    d.push_back(u.pow(k < i ? static_cast<i64>(i) - static_cast<i64>(n)
                            : static_cast<i64>(i)));
  return Matrix::diagonal(f, d);
}

// P e_j = e_{w(j)}.
Matrix perm_matrix(const FieldRef& f, const Permutation& w) {
  Matrix m(f, w.n());
  for (u32 j = 1; j <= w.n(); ++j) m.set_code(w(j) - 1, j - 1, 1);
  return m;
}

// The braid generators as steps and the braid set as weighted translates.
void fill_braids(const AmbientGroup& amb, const SunTable& table, QSphere* s) {
  const FieldRef& f = amb.field();
  const u32 n = table.n();
  for (u32 i = 1; i + 1 <= n; ++i)
    s->xs.push_back(
        amb.canon(make_xi(f, n, i, table.scalars().zeta, table.scalars().eta)));
  for (const UnitaryPermBraid& x : table.all()) {
    s->X.push_back(amb.canon(x.mat));
    s->h.push_back(x.len % 2 == 0 ? 1 : -1);
  }
}

std::string instance_label(const char* family, u32 n, u64 q, u32 p) {
  std::ostringstream os;
  os << "family=" << family << " n=" << n << " q=" << q << " p=" << p;
  return os.str();
}

void require_distinct_translates(const AmbientGroup& amb, const QSphere& s) {
  std::vector<Enc> encs;
  encs.reserve(s.X.size());
  for (const GroupElement& x : s.X) encs.push_back(amb.enc(x));
  std::sort(encs.begin(), encs.end());
  if (std::adjacent_find(encs.begin(), encs.end()) != encs.end())
    throw CheckError("two translates coincide in the quotient");
}

}  // namespace

SphereInstance sphere_SUn(u32 n, u64 q, u32 p) {
  require_common(n, q, p);
  if (n % p == 0) throw ParamError("the torus exponent must not divide the matrix size");
  const PrimePower pp = prime_power(q);
  FieldRef f = make_field(pp.s, 2 * pp.e);
  AmbientGroup amb(GroupKind::Plain, f, n);

  TheoremReport rep;
  rep.theorem = "braid_translate_sphere";
  rep.parameters = instance_label("SU", n, q, p);

  const FieldElement u = find_unity_root(f, p);
  QSphere s;
  s.p = p;
  s.mode = pp.s == 2 ? SphereMode::Involutive : SphereMode::Strict;
  for (u32 i = 1; i + 1 <= n; ++i) {
    Matrix ei = su_torus_matrix(f, n, u, i);
    if (!is_special_unitary(ei))
      throw CheckError("a torus generator is not special unitary");
    GroupElement g = amb.canon(ei);
    if (amb.element_order(g) != p)
      throw CheckError("a torus generator does not have the advertised order");
    s.e.push_back(g);
    rep.cases_checked += 2;
  }
  fill_braids(amb, enumerate_sun(n, find_sun_scalars(f)), &s);
  abelian_span(amb, p, s.e);  // rank certificate: throws on dependence
  ++rep.cases_checked;
  return SphereInstance{amb, std::move(s), "SU", "", std::move(rep)};
}

SphereInstance sphere_PSUn(u32 n, u64 q, u32 p, u64 closure_cap) {
  require_common(n, q, p);
  const PrimePower pp = prime_power(q);
  FieldRef f = make_field(pp.s, 2 * pp.e);

  if (n % p != 0) {
    // (a): the center is a p'-group; transport the SU sphere through it.
    SphereInstance su = sphere_SUn(n, q, p);
    AmbientGroup tgt(GroupKind::Projective, f, n);
    GroupMap quot;
    quot.source = &su.amb;
    quot.target = &tgt;
    quot.apply = [&tgt](const GroupElement& g) { return tgt.canon(g.m); };
    quot.kernel.push_back(su.amb.identity());
    const u64 d = std::gcd<u64>(n, q + 1);
    if (d > 1) {
      const FieldElement z = find_unity_root(f, d);
      for (u64 k = 1; k < d; ++k)
        quot.kernel.push_back(
            su.amb.canon(Matrix::scalar_matrix(f, n, z.pow(static_cast<i64>(k)))));
    }
    ImageSphere img = image_sphere(quot, su.sphere, closure_cap);
    return SphereInstance{tgt, std::move(img.sphere), "PSU", "a", std::move(img.report)};
  }

  const u64 np = p_part(n, p);
  const u64 qp = p_part(q + 1, p);
  if (np < qp) {
    // (b): a root of unity of order p*(n)_p has scalar p-th powers, so the
    // same diagonal shape has order p in the quotient; built directly there.
    AmbientGroup amb(GroupKind::Projective, f, n);
    TheoremReport rep;
    rep.theorem = "projective_torus_sphere";
    rep.parameters = instance_label("PSU", n, q, p);

    const FieldElement u = find_unity_root(f, p * np);
    const FieldElement z = u.pow(static_cast<i64>(p));
    if (z.mul_order() != np)
      throw CheckError("the deeper root does not project to the scalar order");
    QSphere s;
    s.p = p;
    s.mode = pp.s == 2 ? SphereMode::Involutive : SphereMode::Strict;
    for (u32 i = 1; i + 1 <= n; ++i) {
      Matrix ei = su_torus_matrix(f, n, u, i);
      if (!is_special_unitary(ei))
        throw CheckError("a torus generator is not special unitary");
      if (ei.pow(p) != Matrix::scalar_matrix(f, n, z.pow(static_cast<i64>(i))))
        throw CheckError("a torus generator power is not the expected scalar");
      GroupElement g = amb.canon(ei);
      if (amb.element_order(g) != p)
        throw CheckError("a torus generator does not have the advertised order");
      s.e.push_back(g);
      rep.cases_checked += 3;
    }
    fill_braids(amb, enumerate_sun(n, find_sun_scalars(f)), &s);
    require_distinct_translates(amb, s);
    ++rep.cases_checked;
    abelian_span(amb, p, s.e);
    ++rep.cases_checked;
    return SphereInstance{amb, std::move(s), "PSU", "b", std::move(rep)};
  }

  // (c): the quotient rank drops; embed the SU_{n-1} sphere in the corner.
  SphereInstance su = sphere_SUn(n - 1, q, p);
  AmbientGroup tgt(GroupKind::Projective, f, n);
  GroupMap corner;
  corner.source = &su.amb;
  corner.target = &tgt;
  corner.apply = [&tgt, &f, n](const GroupElement& g) {
    Matrix m(f, n);
    for (u32 i = 0; i + 1 < n; ++i)
      for (u32 j = 0; j + 1 < n; ++j) m.set_code(i, j, g.m.code(i, j));
    m.set_code(n - 1, n - 1, 1);
    return tgt.canon(m);
  };
  corner.kernel.push_back(su.amb.identity());
  ImageSphere img = image_sphere(corner, su.sphere, closure_cap);
  return SphereInstance{tgt, std::move(img.sphere), "PSU", "c", std::move(img.report)};
}

SphereInstance sphere_PGUn(u32 n, u64 q, u32 p, u64 closure_cap) {
  require_common(n, q, p);
  const PrimePower pp = prime_power(q);
  FieldRef f = make_field(pp.s, 2 * pp.e);
  AmbientGroup src(GroupKind::Plain, f, n);
  AmbientGroup tgt(GroupKind::Projective, f, n);

  const FieldElement u = find_unity_root(f, p);
  QSphere s;
  s.p = p;
  s.mode = pp.s == 2 ? SphereMode::Involutive : SphereMode::Strict;
  const FieldElement one(f, 1);
  for (u32 i = 1; i + 1 <= n; ++i) {
    std::vector<FieldElement> d(n, one);
    for (u32 k = 0; k < i; ++k) d[k] = u;
    Matrix ei = Matrix::diagonal(f, d);
    if (!is_unitary(ei)) throw CheckError("a torus generator is not unitary");
    GroupElement g = src.canon(ei);
    if (src.element_order(g) != p)
      throw CheckError("a torus generator does not have the advertised order");
    s.e.push_back(g);
  }
  fill_braids(src, enumerate_sun(n, find_sun_scalars(f)), &s);
  abelian_span(src, p, s.e);

  GroupMap quot;
  quot.source = &src;
  quot.target = &tgt;
  quot.apply = [&tgt](const GroupElement& g) { return tgt.canon(g.m); };
  const FieldElement z = find_unity_root(f, q + 1);
  for (u64 k = 0; k <= q; ++k)
    quot.kernel.push_back(
        src.canon(Matrix::scalar_matrix(f, n, z.pow(static_cast<i64>(k)))));
  ImageSphere img = image_sphere(quot, s, closure_cap);
  return SphereInstance{tgt, std::move(img.sphere), "PGU", "", std::move(img.report)};
}

DegenerateBundle build_PGUnPhi(u32 n, u32 s, u32 l, u32 p) {
  if (n < 2) throw ParamError("the matrix size must be at least 2");
  if (!is_prime_u64(s)) throw ParamError("the characteristic must be prime");
  if (l < 1) throw ParamError("the tower exponent must be positive");
  require_odd_prime(p);
  if (s == 2 && l == 1 && p == 3)
    throw ParamError("the parameter pair (p, q) = (3, 8) is excluded");
  const u64 q = pow_u64_checked(s, p * l);
  if ((q + 1) % p != 0) throw ParamError("the torus exponent must divide q + 1");

  FieldRef f = make_field(s, 2 * p * l);
  AmbientGroup amb(f, n, 2 * l, p);

  DegenerateBundle b{amb};
  b.n = n;
  b.p = p;
  b.l = l;
  b.alpha = choose_alpha(f, n, l, p);
  b.u = find_unity_root(f, p);
  const LambdaChoice lc = choose_lambda(f, l, p);
  b.lambda = lc.lambda;
  b.lambda_twist = lc.Lambda;

  const u64 fixed_size = pow_u64_checked(s, 2 * l);
  if (!f->in_subfield(b.u.code(), fixed_size))
    throw CheckError("the torus root does not lie in the fixed field");

  const FieldElement one(f, 1);
  for (u32 j = 1; j <= n; ++j) {
    Vec vj(n, one);
    vj[j - 1] = b.alpha;
    b.v.push_back(std::move(vj));
  }
  for (u32 i = 1; i <= n; ++i)
    for (u32 j = 1; j <= n; ++j) {
      const FieldElement form = herm(b.v[i - 1], b.v[j - 1]);
      if (i == j && form.is_zero()) throw CheckError("a torus vector is isotropic");
      if (i != j && !form.is_zero())
        throw CheckError("the torus vectors are not orthogonal");
    }

  for (u32 j = 1; j <= n; ++j)
    b.ys.push_back(amb.canon(quasi_reflection(b.v[j - 1], b.lambda)));

  QSphere data;
  data.p = p;
  data.mode = SphereMode::Degenerate;
  for (u32 i = 1; i + 1 <= n; ++i) {
    Matrix m = Matrix::identity(f, n);
    for (u32 k = i + 1; k <= n; ++k) m = m * quasi_reflection(b.v[k - 1], b.u);
    data.e.push_back(amb.canon(m));
  }
  data.e.push_back(amb.canon(Matrix::identity(f, n), 1));

  for (u32 i = 1; i + 1 <= n; ++i)
    data.xs.push_back(amb.canon(perm_matrix(f, Permutation::transposition(n, i))));

  std::vector<Matrix> y_plus, y_minus;
  for (u32 j = 1; j <= n; ++j) {
    y_plus.push_back(quasi_reflection(b.v[j - 1], b.lambda));
    y_minus.push_back(quasi_reflection(b.v[j - 1], b.lambda.pow(-1)));
  }
  b.perms = all_permutations(n);
  const std::vector<int> deltas = n >= 3 ? std::vector<int>{1, -1} : std::vector<int>{1};
  for (u32 wi = 0; wi < b.perms.size(); ++wi) {
    const Matrix pm = perm_matrix(f, b.perms[wi]);
    for (u32 j = 1; j <= n; ++j)
      for (int delta : deltas) {
        data.X.push_back(amb.canon(pm * (delta == 1 ? y_plus[j - 1] : y_minus[j - 1])));
        const u32 flip = n == 2 ? j : b.perms[wi].length() + (delta == 1 ? 1 : 0);
        data.h.push_back(flip % 2 == 0 ? 1 : -1);
        b.tags.push_back({wi, j, delta});
      }
  }
  require_distinct_translates(amb, data);
  abelian_span(amb, p, data.e);  // rank n: the span misses the scalars

  b.data = std::move(data);
  return b;
}

namespace {

std::string tuple_text(const Tuple& t) {
  std::ostringstream os;
  os << '[';
  for (u32 i = 0; i < t.entries.size(); ++i) os << (i ? "," : "") << t.entries[i];
  os << ']';
  return os.str();
}

}  // namespace

TheoremReport verify_degenerate_hypotheses(const DegenerateBundle& b) {
  const AmbientGroup& amb = b.amb;
  const QSphere& s = b.data;
  const u32 n = b.n;
  if (s.mode != SphereMode::Degenerate || s.rank() != n || s.X.size() != s.h.size() ||
      s.X.size() != b.tags.size() || b.ys.size() != n)
    throw ParamError("the bundle arrays are inconsistent");

  TheoremReport rep;
  rep.theorem = "degenerate_chain_hypotheses";
  {
    std::ostringstream os;
    os << "n=" << n << " s=" << amb.field()->s << " l=" << b.l << " p=" << b.p
       << " |X|=" << s.X.size();
    rep.parameters = os.str();
  }

  const auto commute = [&](const GroupElement& a, const GroupElement& c) {
    return amb.mul(a, c) == amb.mul(c, a);
  };

  try {
    abelian_span(amb, s.p, s.e);
    ++rep.cases_checked;
  } catch (const std::exception& e) {
    rep.failures.push_back(std::string("the torus span is degenerate: ") + e.what());
  }

  for (u32 i = 1; i + 1 <= n; ++i)
    for (u32 j = 1; j <= n; ++j) {
      if (i == j) continue;
      ++rep.cases_checked;
      if (!commute(s.xs[i - 1], s.e[j - 1]))
        rep.failures.push_back("step " + std::to_string(i) +
                               " does not centralize torus generator " + std::to_string(j));
    }

  for (u32 j = 1; j <= n; ++j)
    for (u32 i = 1; i + 1 <= n; ++i) {
      ++rep.cases_checked;
      if (!commute(b.ys[j - 1], s.e[i - 1]))
        rep.failures.push_back("reflection " + std::to_string(j) +
                               " does not centralize torus generator " + std::to_string(i));
    }

  for (u32 i = 1; i + 1 <= n; ++i)
    for (u32 j = 1; j <= n; ++j) {
      const u32 jj = j == i ? i + 1 : (j == i + 1 ? i : j);
      ++rep.cases_checked;
      if (amb.conj(s.xs[i - 1], b.ys[j - 1]) != b.ys[jj - 1])
        rep.failures.push_back("step " + std::to_string(i) +
                               " does not permute reflection " + std::to_string(j));
    }

  std::map<Enc, u32> index;
  for (u32 k = 0; k < s.X.size(); ++k) {
    ++rep.cases_checked;
    if (!index.emplace(amb.enc(s.X[k]), k).second)
      rep.failures.push_back("translate " + std::to_string(k) +
                             " coincides with an earlier one in the quotient");
  }

  const SphereChain chain(amb, s);

  // The scalar obstruction: over the full orthogonal basis the unity
  // quasi-reflections multiply to the scalar u itself, so in the scalar
  // quotient the inverse of the first torus generator appears as a
  // quasi-reflection and every permutation step normalizes the torus span.
  {
    Matrix prod = Matrix::identity(amb.field(), n);
    for (u32 j = 1; j <= n; ++j) prod = prod * quasi_reflection(b.v[j - 1], b.u);
    ++rep.cases_checked;
    if (prod != Matrix::scalar_matrix(amb.field(), n, b.u))
      rep.failures.push_back(
          "the unity quasi-reflections over the full basis do not multiply to the scalar");
    else
      rep.notes.push_back(
          "the unity quasi-reflections over the full basis multiply to the scalar u, so "
          "every permutation step normalizes the torus span in the scalar quotient");
  }

  // The flags meant to escape identification: their accumulated coefficient
  // should be the weight times the tuple sign.  In fact each of these flags
  // is fixed by right multiplication with some permutation step (a
  // consequence of the scalar obstruction above), the translates glue in
  // pairs of opposite weight, and the accumulation collapses to zero.
  std::vector<Tuple> witnesses;
  for (u32 i = 0; i + 2 <= n; ++i) {
    std::vector<u32> ent;
    for (u32 k = 1; k <= i; ++k) ent.push_back(k);
    ent.push_back(n);
    for (u32 k = i + 1; k + 2 <= n; ++k) ent.push_back(k);
    witnesses.emplace_back(n, std::move(ent));
  }
  {
    std::vector<u32> ent;
    for (u32 k = 1; k + 1 <= n; ++k) ent.push_back(k);
    witnesses.emplace_back(n, std::move(ent));
  }
  for (const Tuple& t : witnesses) {
    const int sg = sgn(t);
    ++rep.cases_checked;
    std::set<mpz_class> off;
    for (u32 k = 0; k < s.X.size(); ++k)
      if (mpz_class c = chain.coeff_C(s.X[k], t); c != s.h[k] * sg) off.insert(c);
    if (!off.empty()) {
      std::ostringstream os;
      os << "witness tuple " << tuple_text(t) << " accumulates to";
      for (const mpz_class& c : off) os << ' ' << c;
      os << " instead of carrying its own sign";
      rep.failures.push_back(os.str());
    }
  }

  ++rep.cases_checked;
  if (!chain.boundary_chain().coeffs.empty())
    rep.failures.push_back(
        "the boundary carries " + std::to_string(chain.boundary_chain().support_size()) +
        " nonzero coefficients");

  // Structural re-derivation of the vanishing: a right step stays in the
  // translate set with opposite weight ...
  for (u32 k = 0; k < s.X.size(); ++k)
    for (u32 i = 1; i + 1 <= n; ++i) {
      ++rep.cases_checked;
      const auto it = index.find(amb.enc(amb.mul(s.X[k], s.xs[i - 1])));
      if (it == index.end()) {
        rep.failures.push_back("right step " + std::to_string(i) +
                               " leaves the translate set at " + std::to_string(k));
        continue;
      }
      if (s.h[it->second] + s.h[k] != 0)
        rep.failures.push_back("right step " + std::to_string(i) +
                               " does not flip the weight at " + std::to_string(k));
    }

  // ... and the reflection flip pairs the remaining direction: an involution
  // on the translate set, weight-reversing, whose difference centralizes the
  // matrix torus (so paired translates conjugate truncated flags equally).
  for (u32 k = 0; k < s.X.size(); ++k) {
    const TranslateTag& tg = b.tags[k];
    GroupElement partner = s.X[k];
    if (n >= 3) {
      partner = amb.mul(partner, amb.pow(b.ys[tg.j - 1], -2 * tg.delta));
    } else {
      partner = amb.mul(partner, amb.mul(amb.inv(b.ys[tg.j - 1]), b.ys[2 - tg.j]));
    }
    ++rep.cases_checked;
    const auto it = index.find(amb.enc(partner));
    if (it == index.end()) {
      rep.failures.push_back("the reflection flip leaves the translate set at " +
                             std::to_string(k));
      continue;
    }
    const u32 k2 = it->second;
    if (k2 == k)
      rep.failures.push_back("the reflection flip fixes translate " + std::to_string(k));
    if (s.h[k2] + s.h[k] != 0)
      rep.failures.push_back("the reflection flip does not flip the weight at " +
                             std::to_string(k));
    const GroupElement diff = amb.mul(amb.inv(s.X[k]), s.X[k2]);
    for (u32 i = 1; i + 1 <= n; ++i) {
      ++rep.cases_checked;
      if (!commute(diff, s.e[i - 1]))
        rep.failures.push_back("the reflection flip difference moves torus generator " +
                               std::to_string(i) + " at translate " + std::to_string(k));
    }
  }

  return rep;
}

}  // namespace qsphere
