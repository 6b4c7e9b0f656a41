#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "qsphere/group.hpp"

using namespace qsphere;

namespace {

// Deterministic sampling; tests never touch global RNG state.
struct Lcg {
  u64 state;
  explicit Lcg(u64 seed) : state(seed) {}
  u64 next() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  }
  u32 code(const FieldRef& f) { return static_cast<u32>(next() % f->size); }
};

Matrix random_matrix(const FieldRef& f, u32 n, Lcg& rng) {
  Matrix m(f, n);
  for (u32 i = 0; i < n; ++i)
    for (u32 j = 0; j < n; ++j) m.set_code(i, j, rng.code(f));
  return m;
}

Matrix random_invertible(const FieldRef& f, u32 n, Lcg& rng) {
  for (;;) {
    Matrix m = random_matrix(f, n, rng);
    if (!m.det().is_zero()) return m;
  }
}

// Cofactor-expansion determinant, the oracle for the elimination version.
FieldElement det_cofactor(const Matrix& a) {
  const auto* f = a.field();
  const u32 n = a.n();
  if (n == 1) return a.at(0, 0);
  u32 acc = 0;
  for (u32 j = 0; j < n; ++j) {
    Matrix sub(f, n - 1);
    for (u32 r = 1; r < n; ++r)
      for (u32 c = 0, cc = 0; c < n; ++c)
        if (c != j) sub.set_code(r - 1, cc++, a.code(r, c));
    u32 term = f->mul(a.code(0, j), det_cofactor(sub).code());
    if (j % 2 == 1) term = f->neg(term);
    acc = f->add(acc, term);
  }
  return {f, acc};
}

Vec vec_of_codes(const FieldRef& f, std::initializer_list<u32> codes) {
  Vec v;
  for (u32 c : codes) v.emplace_back(f.get(), c);
  return v;
}

// All nonzero isotropic vectors in F^3 in code-scan order, up to a cap.
std::vector<Vec> isotropic_sample(const FieldRef& f, size_t cap) {
  std::vector<Vec> out;
  for (u64 a = 0; a < f->size && out.size() < cap; ++a)
    for (u64 b = 0; b < f->size && out.size() < cap; ++b)
      for (u64 c = 0; c < f->size && out.size() < cap; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const u32 nrm = f->add(f->norm(static_cast<u32>(a)),
                               f->add(f->norm(static_cast<u32>(b)), f->norm(static_cast<u32>(c))));
        if (nrm == 0)
          out.push_back(vec_of_codes(f, {static_cast<u32>(a), static_cast<u32>(b), static_cast<u32>(c)}));
      }
  return out;
}

std::vector<FieldElement> trace_zero_nonzero(const FieldRef& f) {
  std::vector<FieldElement> out;
  for (u64 c = 1; c < f->size; ++c)
    if (f->trace(static_cast<u32>(c)) == 0) out.emplace_back(f.get(), static_cast<u32>(c));
  return out;
}

std::vector<FieldElement> norm_one_circle(const FieldRef& f) {
  std::vector<FieldElement> out;
  for (u64 c = 1; c < f->size; ++c)
    if (f->norm(static_cast<u32>(c)) == 1) out.emplace_back(f.get(), static_cast<u32>(c));
  return out;
}

std::vector<Matrix> enumerate_su2(const FieldRef& f) {
  std::vector<Matrix> out;
  for (u64 a = 0; a < f->size; ++a)
    for (u64 b = 0; b < f->size; ++b)
      for (u64 c = 0; c < f->size; ++c)
        for (u64 d = 0; d < f->size; ++d) {
          Matrix m(f, 2);
          m.set_code(0, 0, static_cast<u32>(a));
          m.set_code(0, 1, static_cast<u32>(b));
          m.set_code(1, 0, static_cast<u32>(c));
          m.set_code(1, 1, static_cast<u32>(d));
          if (is_special_unitary(m)) out.push_back(m);
        }
  return out;
}

}  // namespace

TEST_CASE("matrix arithmetic: associativity, identity, vector action") {
  auto F = make_field(2, 4);
  Lcg rng(11);
  const Matrix id = Matrix::identity(F, 3);
  for (int t = 0; t < 25; ++t) {
    Matrix a = random_matrix(F, 3, rng);
    Matrix b = random_matrix(F, 3, rng);
    Matrix c = random_matrix(F, 3, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * id == a);
    CHECK(id * a == a);
    Vec v = {FieldElement(F, rng.code(F)), FieldElement(F, rng.code(F)), FieldElement(F, rng.code(F))};
    CHECK((a * b).apply(v) == a.apply(b.apply(v)));
  }
}

TEST_CASE("determinant: elimination matches cofactor expansion") {
  for (auto F : {make_field(2, 4), make_field(3, 4)}) {
    Lcg rng(7);
    for (int t = 0; t < 40; ++t) {
      Matrix a = random_matrix(F, 3, rng);
      Matrix b = random_matrix(F, 3, rng);
      CHECK(a.det() == det_cofactor(a));
      CHECK((a * b).det() == a.det() * b.det());
    }
    CHECK(Matrix::identity(F, 4).det().is_one());
  }
}

TEST_CASE("inverse: roundtrip and the 2x2 adjugate formula") {
  auto F = make_field(3, 4);
  Lcg rng(23);
  const Matrix id2 = Matrix::identity(F, 2);
  for (int t = 0; t < 30; ++t) {
    Matrix a = random_invertible(F, 2, rng);
    Matrix inv = a.inverse();
    CHECK(a * inv == id2);
    CHECK(inv * a == id2);
    const FieldElement d = a.det();
    Matrix adj(F, 2);
    adj.set(0, 0, a.at(1, 1) / d);
    adj.set(0, 1, -a.at(0, 1) / d);
    adj.set(1, 0, -a.at(1, 0) / d);
    adj.set(1, 1, a.at(0, 0) / d);
    CHECK(inv == adj);
    Matrix big = random_invertible(F, 4, rng);
    CHECK(big * big.inverse() == Matrix::identity(F, 4));
  }
  Matrix zero(F, 3);
  CHECK_THROWS_AS(zero.inverse(), CheckError);
}

TEST_CASE("predicates: identity, braid generator, monomial block") {
  auto F = make_field(2, 4);
  const Matrix id = Matrix::identity(F, 3);
  CHECK(is_special_unitary(id));
  CHECK(is_monomial(id));
  CHECK(is_diagonal(id));
  CHECK(is_upper_triangular(id));
  CHECK(is_unipotent_upper(id));
  CHECK(is_permutation_matrix(id));

  const auto zeta = find_zeta(F);
  const auto eta = find_eta(F);
  const Matrix x1 = make_xi(F, 3, 1, zeta, eta);
  CHECK(is_special_unitary(x1));
  CHECK_FALSE(is_monomial(x1));
  CHECK_FALSE(is_diagonal(x1));

  const FieldElement zero(F, 0u), one(F, 1u);
  const Matrix perm = x_block(F, 3, 1, zero, one);
  CHECK(is_special_unitary(perm));
  CHECK(is_monomial(perm));

  Matrix upper = Matrix::identity(F, 3);
  upper.set_code(0, 2, 5);
  CHECK(is_upper_triangular(upper));
  CHECK(is_unipotent_upper(upper));
  upper.set_code(0, 0, 3);
  CHECK(is_upper_triangular(upper));
  CHECK_FALSE(is_unipotent_upper(upper));
  upper.set_code(2, 0, 1);
  CHECK_FALSE(is_upper_triangular(upper));
}

TEST_CASE("hermitian form: conjugate symmetry and sesquilinearity") {
  auto F = make_field(3, 4);
  Lcg rng(31);
  for (int t = 0; t < 50; ++t) {
    Vec u = {FieldElement(F, rng.code(F)), FieldElement(F, rng.code(F)), FieldElement(F, rng.code(F))};
    Vec v = {FieldElement(F, rng.code(F)), FieldElement(F, rng.code(F)), FieldElement(F, rng.code(F))};
    CHECK(herm(u, v) == herm(v, u).conj());
    const FieldElement a(F, rng.code(F));
    CHECK(herm(scaled_vec(u, a), v) == a * herm(u, v));
    CHECK(herm(u, scaled_vec(v, a)) == a.conj() * herm(u, v));
  }
  CHECK(herm(basis_vector(F, 3, 1), basis_vector(F, 3, 1)).is_one());
  CHECK(herm(basis_vector(F, 3, 1), basis_vector(F, 3, 2)).is_zero());
}

TEST_CASE("transvections: scaling, composition, commutation, braid criterion") {
  auto F = make_field(2, 4);
  const auto vs = isotropic_sample(F, 30);
  const auto mus = trace_zero_nonzero(F);
  REQUIRE(mus.size() == 3);  // trace kernel F_4, minus zero

  for (const auto& v : vs)
    for (const auto& mu : mus) {
      const Matrix x = transvection(v, mu);
      CHECK(is_special_unitary(x));
      // Scaling the vector rescales the parameter by its norm.
      const FieldElement gamma(F, 7u);
      CHECK(transvection(scaled_vec(v, gamma), mu) == transvection(v, gamma.norm() * mu));
      // Parameters add under composition.
      for (const auto& mu2 : mus)
        CHECK(x * transvection(v, mu2) == transvection(v, mu + mu2));
      // The defining vector is fixed (it pairs to zero with itself).
      CHECK(x.apply(v) == v);
    }

  const FieldElement mu = mus[0], mu2 = mus[1];
  for (const auto& v : vs)
    for (const auto& w : vs) {
      const Matrix xv = transvection(v, mu);
      const Matrix xw = transvection(w, mu2);
      const bool commute = xv * xw == xw * xv;
      CHECK(commute == herm(v, w).is_zero());
      const bool braid = xv * xw * xv == xw * xv * xw;
      if (herm(v, w).is_zero()) {
        // Commuting pair: the braid identity degenerates to plain equality.
        CHECK(braid == (xv == xw));
        CHECK(xv.apply(w) == w);
      } else {
        const FieldElement crit =
            FieldElement(F, 1u) + mu * mu2 * herm(v, w) * herm(w, v);
        CHECK(braid == crit.is_zero());
      }
    }
}

TEST_CASE("transvections: conjugation moves the vector") {
  auto F = make_field(2, 4);
  const auto zeta = find_zeta(F);
  const auto eta = find_eta(F);
  const Matrix x1 = make_xi(F, 3, 1, zeta, eta);
  const Matrix x2 = make_xi(F, 3, 2, zeta, eta);
  const auto vs = isotropic_sample(F, 12);
  const auto mus = trace_zero_nonzero(F);
  for (const Matrix& g : {x1, x2, x1 * x2}) {
    for (const auto& v : vs)
      for (const auto& mu : mus)
        CHECK(g * transvection(v, mu) * g.inverse() == transvection(g.apply(v), mu));
  }
}

TEST_CASE("transvections: error contract") {
  auto F = make_field(2, 4);
  const Vec aniso = vec_of_codes(F, {1, 0, 0});
  const auto mus = trace_zero_nonzero(F);
  CHECK_THROWS_AS(transvection(aniso, mus[0]), ParamError);
  const Vec iso = isotropic_sample(F, 1).at(0);
  FieldElement bad(F, 1u);  // trace(1) = 2 = 0 in char 2, so pick one with trace != 0
  for (u64 c = 1; c < F->size; ++c)
    if (F->trace(static_cast<u32>(c)) != 0) {
      bad = FieldElement(F, static_cast<u32>(c));
      break;
    }
  CHECK_THROWS_AS(transvection(iso, bad), ParamError);
  CHECK_THROWS_AS(transvection(Vec(3, FieldElement(F, 0u)), mus[0]), ParamError);
  // mu = 0 is the identity, not an error.
  CHECK(transvection(iso, FieldElement(F, 0u)) == Matrix::identity(F, 3));
}

TEST_CASE("quasi-reflections: scaling, composition, eigenvalues") {
  for (auto F : {make_field(2, 4), make_field(3, 2)}) {
    const auto circle = norm_one_circle(F);
    CHECK(circle.size() == F->q() + 1);
    // Anisotropic vectors in dimension 2, code-scan order.
    std::vector<Vec> vs;
    for (u64 a = 0; a < F->size && vs.size() < 14; ++a)
      for (u64 b = 0; b < F->size && vs.size() < 14; ++b) {
        if (a == 0 && b == 0) continue;
        Vec v = vec_of_codes(F, {static_cast<u32>(a), static_cast<u32>(b)});
        if (!herm(v, v).is_zero()) vs.push_back(v);
      }
    for (const auto& v : vs)
      for (const auto& mu : circle) {
        const Matrix y = quasi_reflection(v, mu);
        CHECK(is_unitary(y));
        CHECK(y.det() == mu);  // eigenvalue mu on v, 1 on the complement
        CHECK(y.apply(v) == scaled_vec(v, mu));
        const FieldElement gamma(F, F->generator);
        CHECK(quasi_reflection(scaled_vec(v, gamma), mu) == y);
        for (const auto& mu2 : circle)
          CHECK(y * quasi_reflection(v, mu2) == quasi_reflection(v, mu * mu2));
      }
    // Commutation iff orthogonal or proportional.
    const FieldElement mu = circle[1], mu2 = circle[circle.size() - 1];
    for (const auto& v : vs)
      for (const auto& w : vs) {
        const Matrix yv = quasi_reflection(v, mu);
        const Matrix yw = quasi_reflection(w, mu2);
        bool proportional = false;
        for (u64 g = 1; g < F->size; ++g)
          proportional |= scaled_vec(v, FieldElement(F, static_cast<u32>(g))) == w;
        const bool commute = yv * yw == yw * yv;
        CHECK(commute == (herm(v, w).is_zero() || proportional));
        if (herm(v, w).is_zero()) CHECK(yv.apply(w) == w);
      }
  }
}

TEST_CASE("quasi-reflections: conjugation and error contract") {
  auto F = make_field(2, 4);
  const auto circle = norm_one_circle(F);
  const Vec v = vec_of_codes(F, {1, 2, 0});
  REQUIRE(!herm(v, v).is_zero());
  // First anisotropic vector of the form (0, 1, c), scan order.
  Vec w = vec_of_codes(F, {0, 1, 0});
  for (u32 c = 0;; ++c) {
    w[2] = FieldElement(F, c);
    if (!herm(w, w).is_zero()) break;
  }
  const auto zeta = find_zeta(F);
  const auto eta = find_eta(F);
  for (const Matrix& g : {make_xi(F, 3, 1, zeta, eta), make_xi(F, 3, 2, zeta, eta),
                          quasi_reflection(w, circle[2])}) {
    for (const auto& mu : circle)
      CHECK(g * quasi_reflection(v, mu) * g.inverse() == quasi_reflection(g.apply(v), mu));
  }
  const Vec iso = isotropic_sample(F, 1).at(0);
  CHECK_THROWS_AS(quasi_reflection(iso, circle[1]), ParamError);
  FieldElement off_circle(F, 0u);
  for (u64 c = 1; c < F->size; ++c)
    if (F->norm(static_cast<u32>(c)) != 1) {
      off_circle = FieldElement(F, static_cast<u32>(c));
      break;
    }
  CHECK_THROWS_AS(quasi_reflection(v, off_circle), ParamError);
}

TEST_CASE("braid generators: explicit triple product, relations, order") {
  auto F = make_field(2, 4);
  const auto zeta = find_zeta(F);
  const auto eta = find_eta(F);
  const FieldElement one(F, 1u);
  const FieldElement zi(F, F->inv(zeta.code()));
  const FieldElement ei(F, F->inv(eta.code()));

  const Matrix x1 = make_xi(F, 3, 1, zeta, eta);
  const Matrix x2 = make_xi(F, 3, 2, zeta, eta);
  CHECK(x1 * x2 * x1 == x2 * x1 * x2);

  Matrix expect(F, 3);
  expect.set(0, 0, one + zeta);
  expect.set(0, 1, -(ei * (one + zeta)));
  expect.set(0, 2, ei * ei);
  expect.set(1, 0, eta * (one + zeta));
  expect.set(1, 1, -zeta - one + zi);
  expect.set(1, 2, ei * (one - zi));
  expect.set(2, 0, eta * eta);
  expect.set(2, 1, -(eta * (one - zi)));
  expect.set(2, 2, one - zi);
  CHECK(x1 * x2 * x1 == expect);

  // Far-apart generators commute (n = 4, indices 1 and 3).
  const Matrix y1 = make_xi(F, 4, 1, zeta, eta);
  const Matrix y3 = make_xi(F, 4, 3, zeta, eta);
  CHECK(y1 * y3 == y3 * y1);

  // Generator order equals the characteristic.
  CHECK(x1.order() == 2);
  CHECK(x2.order() == 2);
  auto F81 = make_field(3, 4);
  const auto z81 = find_zeta(F81);
  const auto e81 = find_eta(F81);
  CHECK(make_xi(F81, 3, 1, z81, e81).order() == 3);
  CHECK(make_xi(F81, 3, 2, z81, e81).order() == 3);

  // The generator is the transvection at v_i = e_i + eta*e_{i+1}.
  Vec v1 = vec_of_codes(F, {1, eta.code(), 0});
  Vec v2 = vec_of_codes(F, {0, 1, eta.code()});
  CHECK(x1 == transvection(v1, zeta));
  CHECK(x2 == transvection(v2, zi));

  // Unit-circle violation rejected.
  CHECK_THROWS_AS(x_block(F, 3, 1, one, one), ParamError);
  CHECK_THROWS_AS(x_block(F, 3, 0, one, FieldElement(F, 0u)), ParamError);
  CHECK_THROWS_AS(x_block(F, 3, 3, one, FieldElement(F, 0u)), ParamError);
}

TEST_CASE("special unitary group closure, exhaustive for SU_2(4)") {
  auto F = make_field(2, 4);
  const auto su2 = enumerate_su2(F);
  CHECK(su2.size() == 60);  // q(q-1)(q+1) at q = 4
  for (const auto& a : su2) CHECK(is_special_unitary(a.inverse()));
  for (size_t i = 0; i < su2.size(); i += 7)
    for (size_t j = 0; j < su2.size(); ++j)
      CHECK(is_special_unitary(su2[i] * su2[j]));
}

TEST_CASE("projective classes: scalar invariance and class count") {
  auto F = make_field(3, 2);
  const auto su2 = enumerate_su2(F);
  CHECK(su2.size() == 24);  // q(q-1)(q+1) at q = 3

  AmbientGroup psu(GroupKind::Projective, F, 2);
  std::set<Enc> classes;
  for (const auto& m : su2) {
    const GroupElement g = psu.canon(m);
    u32 lead = 0;
    for (u32 c : g.m.codes())
      if (c != 0) {
        lead = c;
        break;
      }
    CHECK(lead == 1);
    classes.insert(psu.enc(g));
  }
  CHECK(classes.size() == 12);  // center {I, -I} identified

  // Scalar multiples collapse to one class.
  Lcg rng(3);
  for (int t = 0; t < 20; ++t) {
    Matrix m = random_invertible(F, 2, rng);
    for (u64 z = 1; z < F->size; ++z) {
      const Matrix zm = m.scaled(FieldElement(F, static_cast<u32>(z)));
      CHECK(psu.canon(zm) == psu.canon(m));
    }
  }
  CHECK_THROWS_AS(psu.canon(Matrix(F, 2)), ParamError);

  // Group laws pass through canonicalization.
  for (int t = 0; t < 20; ++t) {
    const GroupElement a = psu.canon(random_invertible(F, 2, rng));
    const GroupElement b = psu.canon(random_invertible(F, 2, rng));
    CHECK(psu.mul(a, psu.inv(a)) == psu.identity());
    CHECK(psu.inv(psu.inv(a)) == a);
    CHECK(psu.mul(psu.mul(a, b), psu.inv(b)) == a);
  }
}

TEST_CASE("Phi-extended arithmetic: twisted product, associativity, inverses") {
  auto F = make_field(5, 6);  // F_{5^6}, the q = 125 tower
  AmbientGroup g(F, 2, 2, 3);  // Phi: a -> a^{25}, order 3
  CHECK(g.phi_order() == 3);

  Lcg rng(97);
  auto rand_elt = [&]() { return g.canon(random_invertible(F, 2, rng), static_cast<u32>(rng.next() % 3)); };

  // (A,1)(B,0) = (A Phi(B), 1).
  for (int t = 0; t < 10; ++t) {
    const Matrix a = random_invertible(F, 2, rng);
    const Matrix b = random_invertible(F, 2, rng);
    const GroupElement lhs = g.mul(g.canon(a, 1), g.canon(b, 0));
    CHECK(lhs == g.canon(a * g.apply_phi(b, 1), 1));
  }

  for (int t = 0; t < 20; ++t) {
    const GroupElement a = rand_elt(), b = rand_elt(), c = rand_elt();
    CHECK(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
    CHECK(g.mul(a, g.inv(a)) == g.identity());
    CHECK(g.mul(g.inv(a), a) == g.identity());
  }

  // Phi itself, as the element (I, 1), has order 3.
  const GroupElement phi = g.canon(Matrix::identity(F, 2), 1);
  CHECK(g.element_order(phi) == 3);
  CHECK(g.pow(phi, 3) == g.identity());

  // Phi acts entrywise as the 25th power map.
  Matrix m = random_invertible(F, 2, rng);
  const Matrix pm = g.apply_phi(m, 1);
  for (u32 i = 0; i < 2; ++i)
    for (u32 j = 0; j < 2; ++j) CHECK(pm.code(i, j) == F->pow(m.code(i, j), 25));

  // Declared order must match the power map.
  CHECK_THROWS_AS(AmbientGroup(F, 2, 3, 3), CheckError);
  AmbientGroup plain(GroupKind::Plain, F, 2);
  CHECK_THROWS_AS(plain.canon(Matrix::identity(F, 2), 1), ParamError);
  CHECK_THROWS_AS(AmbientGroup(GroupKind::PhiExtended, F, 2), ParamError);
}

TEST_CASE("encodings: injective where used, guarded where not") {
  auto F = make_field(2, 4);
  AmbientGroup su(GroupKind::Plain, F, 2);
  const auto su2 = enumerate_su2(F);
  std::set<Enc> encs;
  for (const auto& m : su2) encs.insert(su.enc(su.canon(m)));
  CHECK(encs.size() == su2.size());

  auto F56 = make_field(5, 6);
  AmbientGroup g(F56, 2, 2, 3);
  CHECK(g.enc_bits() == 4 * 14 + 2);
  const Matrix id = Matrix::identity(F56, 2);
  CHECK(g.enc(g.canon(id, 0)) != g.enc(g.canon(id, 1)));

  // 5x5 matrices over F_81 need 175 bits and still pack; 6x6 over F_361
  // needs 324 bits and the encoder refuses.
  auto F81 = make_field(3, 4);
  AmbientGroup big(GroupKind::Plain, F81, 5);
  CHECK(big.enc_bits() == 175);
  CHECK(big.enc(big.canon(Matrix::identity(F81, 5))) !=
        big.enc(big.canon(Matrix::scalar_matrix(F81, 5, FieldElement(F81, 2)))));
  auto F361 = make_field(19, 2);
  AmbientGroup huge(GroupKind::Plain, F361, 6);
  CHECK(huge.enc_bits() == 324);
  CHECK_THROWS_WITH_AS(huge.enc(huge.canon(Matrix::identity(F361, 6))),
                       "element does not fit the 256-bit encoding", CheckError);

  // The free-function aliases agree with the methods.
  AmbientGroup psu(GroupKind::Projective, F, 2);
  const GroupElement a = psu.canon(su2[5]);
  const GroupElement b = psu.canon(su2[9]);
  CHECK(ext_mul(psu, a, b) == psu.mul(a, b));
  CHECK(ext_conj(psu, a, b) == psu.mul(psu.mul(a, b), psu.inv(a)));
  CHECK(proj_canon(psu, su2[5].scaled(FieldElement(F, 9u))) == a);
}
