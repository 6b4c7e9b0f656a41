#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsphere/field.hpp"
#include "qsphere/numth.hpp"

using namespace qsphere;

namespace {

// Independent digitwise adder (no Zech logarithms).
u32 oracle_add(const FieldRef& f, u32 a, u32 b) {
  auto da = f->digits(a), db = f->digits(b);
  std::vector<u32> dc(f->m);
  for (u32 i = 0; i < f->m; ++i) dc[i] = (da[i] + db[i]) % f->s;
  return f->code_of(dc);
}

// Independent naive polynomial long division oracle: does g divide h over F_s?
// Coefficients little-endian, g monic.
bool oracle_divides(std::vector<u32> h, const std::vector<u32>& g, u32 s) {
  auto deg = [](const std::vector<u32>& p) {
    for (size_t i = p.size(); i-- > 0;)
      if (p[i] != 0) return static_cast<int>(i);
    return -1;
  };
  int dh = deg(h), dg = deg(g);
  while (dh >= dg) {
    u32 c = h[dh];
    for (int i = 0; i <= dg; ++i)
      h[dh - dg + i] = (h[dh - dg + i] + c * (s - g[i] % s)) % s;
    dh = deg(h);
  }
  return dh < 0;
}

// Brute irreducibility: no monic divisor of degree 1..m-1.
bool oracle_irreducible(const std::vector<u32>& f, u32 s) {
  u32 m = static_cast<u32>(f.size() - 1);
  for (u32 d = 1; d < m; ++d) {
    u64 count = 1;
    for (u32 i = 0; i < d; ++i) count *= s;
    for (u64 idx = 0; idx < count; ++idx) {
      std::vector<u32> g(d + 1, 0);
      u64 v = idx;
      for (u32 i = 0; i < d; ++i) { g[i] = static_cast<u32>(v % s); v /= s; }
      g[d] = 1;
      if (oracle_divides(f, g, s)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("F_16 modulus is the first irreducible in constant-first lex order") {
  auto F = make_field(2, 4);
  // Independent scan with brute-force irreducibility.
  std::vector<u32> expected;
  for (u64 idx = 0; idx < 16; ++idx) {
    std::vector<u32> cand(5, 0);
    u64 v = idx;
    for (u32 i = 0; i < 4; ++i) { cand[4 - 1 - i] = static_cast<u32>(v % 2); v /= 2; }
    cand[4] = 1;
    if (oracle_irreducible(cand, 2)) { expected = cand; break; }
  }
  CHECK(F->modulus == expected);
  // Frozen: x^4 + x^3 + 1.
  CHECK(F->modulus == std::vector<u32>{1, 0, 0, 1, 1});
}

TEST_CASE("F_16 generator has order 15") {
  auto F = make_field(2, 4);
  FieldElement g{F, F->generator};
  CHECK(g.mul_order() == 15);
  CHECK(g.pow(3).code() != 1);
  CHECK(g.pow(5).code() != 1);
  CHECK(g.pow(15).code() == 1);
  // Least full-order code: oracle rescan by brute order computation.
  for (u32 c = 2; c < F->generator; ++c) {
    u32 acc = c;
    u32 ord = 1;
    while (acc != 1) { acc = F->mul(acc, c); ++ord; }
    CHECK(ord < 15);
  }
}

TEST_CASE("prime field convention: F_3 has modulus x and generator 2") {
  auto F = make_field(3, 1);
  CHECK(F->modulus == std::vector<u32>{0, 1});
  CHECK(F->generator == 2);
  CHECK(F->size == 3);
  CHECK(F->add(2, 2) == 1);
  CHECK(F->mul(2, 2) == 1);
}

TEST_CASE("F_81 and F_{5^6} construct with verified generator orders") {
  auto F81 = make_field(3, 4);
  CHECK(F81->size == 81);
  CHECK(oracle_irreducible({F81->modulus.begin(), F81->modulus.end()}, 3));
  FieldElement g{F81, F81->generator};
  CHECK(g.mul_order() == 80);

  auto F56 = make_field(5, 6);
  CHECK(F56->size == 15625);
  // 15624 = 2^3 * 3^2 * 7 * 31 (multiplied back to guard the frozen factors).
  CHECK(8u * 9u * 7u * 31u == 15624u);
  FieldElement h{F56, F56->generator};
  for (u64 p : {2, 3, 7, 31}) CHECK(h.pow(static_cast<i64>(15624 / p)).code() != 1);
  CHECK(h.mul_order() == 15624);
}

TEST_CASE("field arithmetic laws, exhaustive over F_16") {
  auto F = make_field(2, 4);
  for (u32 a = 0; a < 16; ++a) {
    for (u32 b = 0; b < 16; ++b) {
      CHECK(F->add(a, b) == oracle_add(F, a, b));
      CHECK(F->add(a, b) == F->add(b, a));
      CHECK(F->mul(a, b) == F->mul(b, a));
      for (u32 c = 0; c < 16; ++c) {
        CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
        CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
        CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      }
      if (b != 0) CHECK(F->mul(F->div(a, b), b) == a);
    }
    CHECK(F->add(a, F->neg(a)) == 0);
  }
}

TEST_CASE("Zech addition matches digitwise addition on odd characteristic") {
  auto F81 = make_field(3, 4);
  for (u32 a = 0; a < 81; ++a)
    for (u32 b = 0; b < 81; ++b)
      CHECK(F81->add(a, b) == oracle_add(F81, a, b));
  auto F56 = make_field(5, 6);
  for (u32 a = 0; a < 15625; a += 97)
    for (u32 b = 0; b < 15625; b += 89)
      CHECK(F56->add(a, b) == oracle_add(F56, a, b));
}

TEST_CASE("conjugation is the q-power map and an involutive automorphism") {
  auto F = make_field(2, 4);
  CHECK(F->q() == 4);
  for (u32 a = 0; a < 16; ++a) {
    u32 a4 = F->mul(F->mul(a, a), F->mul(a, a));  // a^4 by squaring
    CHECK(F->conj(a) == a4);
    CHECK(F->conj(F->conj(a)) == a);
    CHECK(F->in_subfield(F->trace(a), 4));
    CHECK(F->in_subfield(F->norm(a), 4));
    for (u32 b = 0; b < 16; ++b) {
      CHECK(F->conj(F->mul(a, b)) == F->mul(F->conj(a), F->conj(b)));
      CHECK(F->conj(F->add(a, b)) == F->add(F->conj(a), F->conj(b)));
    }
  }
  auto F81 = make_field(3, 4);
  CHECK(F81->q() == 9);
  for (u32 a = 0; a < 81; ++a) {
    CHECK(F81->conj(a) == F81->frob(a, 9));
    CHECK(F81->conj(F81->conj(a)) == a);
  }
}

TEST_CASE("zeta: conj(zeta) = -zeta, zeta outside {0,1,-1}") {
  auto F = make_field(2, 4);
  auto zeta = find_zeta(F);
  CHECK(zeta.pow(3).code() == 1);  // lands in F_4 in characteristic 2
  CHECK(zeta.code() != 1);
  CHECK(zeta.conj() == -zeta);
  // First-in-scan-order oracle.
  for (u32 c = 2; c < zeta.code(); ++c) {
    if (c == F->neg(1)) continue;
    CHECK(F->conj(c) != F->neg(c));
  }
  auto F81 = make_field(3, 4);
  auto z81 = find_zeta(F81);
  CHECK(z81.conj() == -z81);
  CHECK(z81.code() != 0);
  CHECK(z81.code() != 1);
  CHECK(z81.code() != F81->neg(1));

  // q = 2: the trace kernel is F_2 = {0, 1}, leaving no admissible element.
  CHECK_THROWS_AS(find_zeta(make_field(2, 2)), ParamError);
  // q = 3 (odd): any nonzero trace-kernel element lies outside F_3, so one exists.
  auto z9 = find_zeta(make_field(3, 2));
  CHECK(z9.conj() == -z9);
  CHECK(z9.mul_order() == 4);
}

TEST_CASE("eta: eta * conj(eta) = -1") {
  auto F = make_field(2, 4);
  auto eta = find_eta(F);
  CHECK((eta * eta.pow(4)).code() == 1);  // eta^5 = 1 = -1 in characteristic 2
  CHECK(eta.norm().code() == F->neg(1));
  auto F81 = make_field(3, 4);
  auto eta81 = find_eta(F81);
  CHECK(eta81.norm().code() == F81->neg(1));
  for (u32 c = 1; c < eta81.code(); ++c) CHECK(F81->norm(c) != F81->neg(1));
}

TEST_CASE("unity roots: order-k subgroup of the norm-one circle") {
  auto F = make_field(2, 4);
  auto u = find_unity_root(F, 5);
  CHECK(u.pow(5).code() == 1);
  CHECK(u.code() != 1);
  CHECK(u.mul_order() == 5);
  CHECK_THROWS_AS(find_unity_root(F, 3), ParamError);  // 3 does not divide q+1 = 5

  auto F81 = make_field(3, 4);
  auto u81 = find_unity_root(F81, 5);
  CHECK(u81.mul_order() == 5);
  CHECK(u81.pow(10).code() == 1);  // q+1 = 10
  auto u10 = find_unity_root(F81, 10);
  CHECK(u10.mul_order() == 10);
  // Least-code generator of the same cyclic subgroup.
  for (u64 j = 1; j < 5; ++j) CHECK(u81.code() <= F81->pow(u81.code(), static_cast<i64>(j)));
}

TEST_CASE("alpha for the Frobenius extension: trace equation in the fixed field") {
  auto F = make_field(5, 6);
  for (u32 n : {2u, 3u}) {
    auto alpha = choose_alpha(F, n, 1, 3);
    CHECK(F->add(F->trace(alpha.code()), F->from_int(static_cast<i64>(n) - 2)) == 0);
    CHECK(alpha.code() != 1);
    CHECK(F->add(F->norm(alpha.code()), F->from_int(static_cast<i64>(n) - 1)) != 0);
    CHECK(F->in_subfield(alpha.code(), 25));
    CHECK(choose_alpha(F, n, 1, 3) == alpha);  // deterministic
  }
}

TEST_CASE("lambda for the Frobenius extension: r = 7 at (s,l,p) = (5,1,3)") {
  auto F = make_field(5, 6);
  auto lc = choose_lambda(F, 1, 3);
  // Independent arithmetic: q+1 = 126 = 2*3^2*7, s^2-1 = 24 = 2^3*3.  The
  // least prime unequal to 2 and p=3 with a strictly larger share in 126 is 7,
  // and ord_7(24) = 0, so lambda has order 7^1.
  CHECK(2 * 3 * 3 * 7 == 126);
  CHECK(2 * 2 * 2 * 3 == 24);
  CHECK(lc.r == 7);
  CHECK(lc.lambda.mul_order() == 7);
  CHECK(lc.lambda.pow(126).code() == 1);
  CHECK(lc.Lambda == lc.lambda.pow(1 - 25));
  CHECK(lc.Lambda.mul_order() == 7);

  // Excluded pair (p, q) = (3, 8): no admissible prime r exists.
  auto F64 = make_field(2, 6);
  CHECK_THROWS_AS(choose_lambda(F64, 1, 3), ParamError);
}

TEST_CASE("literals round-trip") {
  auto F = make_field(2, 4);
  for (u32 c = 0; c < 16; ++c) {
    FieldElement a{F, c};
    CHECK(parse_literal(F, to_literal(a)) == a);
  }
  FieldElement x{F, 2};
  CHECK(to_literal(x) == "[0,1,0,0]@F_{2^4}");
  CHECK_THROWS_AS(parse_literal(F, "[0,1]@F_{2^4}"), ParamError);
  CHECK_THROWS_AS(parse_literal(F, "[0,1,0,0]@F_{2^5}"), ParamError);
  CHECK_THROWS_AS(parse_literal(F, "0,1,0,0"), ParamError);
  auto F56 = make_field(5, 6);
  FieldElement y{F56, 12345};
  CHECK(parse_literal(F56, to_literal(y)) == y);
}

TEST_CASE("field registry interns parameters") {
  CHECK(make_field(2, 4).get() == make_field(2, 4).get());
  CHECK(make_field(2, 4).get() != make_field(3, 4).get());
  CHECK_THROWS_AS(make_field(4, 2), ParamError);   // 4 not prime
  CHECK_THROWS_AS(make_field(2, 60), ParamError);  // table budget
}

TEST_CASE("number theory helpers") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(31));
  CHECK(!is_prime_u64(1));
  CHECK(!is_prime_u64(91));
  auto f = factor_u64(15624);
  CHECK(f == std::map<u64, u32>{{2, 3}, {3, 2}, {7, 1}, {31, 1}});
  CHECK(p_part(200, 5) == 25);
  CHECK(p_part(7, 5) == 1);
}
