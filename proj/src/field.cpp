#include "qsphere/field.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qsphere/numth.hpp"

namespace qsphere {

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::map<u64, u32> factor_u64(u64 n) {
  std::map<u64, u32> out;
  for (u64 d = 2; d * d <= n; ++d)
    while (n % d == 0) { ++out[d]; n /= d; }
  if (n > 1) ++out[n];
  return out;
}

u64 p_part(u64 n, u64 p) {
  u64 part = 1;
  while (n % p == 0) { part *= p; n /= p; }
  return part;
}

u64 pow_u64_checked(u64 base, u32 exp) {
  u64 r = 1;
  for (u32 i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / 2 / base)
      throw ParamError("pow_u64_checked: overflow");
    r *= base;
  }
  return r;
}

namespace {

// --- dense polynomial helpers over F_s (construction time only) ------------

using Poly = std::vector<u32>;  // p[i] = coefficient of x^i; no trailing zeros

u32 inv_mod(u32 a, u32 s) {
  // s prime, a != 0
  i64 t = 0, nt = 1, r = s, nr = a % s;
  while (nr != 0) {
    i64 q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  return static_cast<u32>(((t % s) + s) % s);
}

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, u32 s) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = static_cast<u32>((prod[i + j] + static_cast<u64>(a[i]) * b[j]) % s);
  // mod is monic of degree m
  const size_t m = mod.size() - 1;
  for (size_t d = prod.size(); d-- > m;) {
    u32 c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (size_t i = 0; i < m; ++i)
      prod[d - m + i] = static_cast<u32>((prod[d - m + i] + static_cast<u64>(c) * (s - mod[i] % s)) % s);
  }
  prod.resize(std::min(prod.size(), m));
  poly_trim(prod);
  return prod;
}

Poly poly_pow_mod(Poly base, u64 e, const Poly& mod, u32 s) {
  Poly r = {1};
  while (e) {
    if (e & 1) r = poly_mul_mod(r, base, mod, s);
    base = poly_mul_mod(base, base, mod, s);
    e >>= 1;
  }
  return r;
}

Poly poly_sub(Poly a, const Poly& b, u32 s) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + s - b[i]) % s;
  poly_trim(a);
  return a;
}

Poly poly_rem(Poly a, const Poly& b, u32 s) {
  const size_t db = b.size() - 1;
  const u32 lead_inv = inv_mod(b.back(), s);
  while (a.size() > db) {
    u32 c = static_cast<u32>((static_cast<u64>(a.back()) * lead_inv) % s);
    size_t shift = a.size() - 1 - db;
    if (c != 0)
      for (size_t i = 0; i < b.size(); ++i)
        a[shift + i] = static_cast<u32>((a[shift + i] + static_cast<u64>(c) * (s - b[i] % s)) % s);
    poly_trim(a);
    if (a.size() <= db) break;
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, u32 s) {
  while (!b.empty()) {
    Poly r = poly_rem(a, b, s);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's criterion: f (monic, degree m) is irreducible over F_s iff
// x^{s^m} = x (mod f) and gcd(x^{s^{m/t}} - x, f) = 1 for every prime t | m.
bool poly_irreducible(const Poly& f, u32 s) {
  const u32 m = static_cast<u32>(f.size() - 1);
  const Poly x = {0, 1};
  const Poly xr = poly_rem(x, f, s);  // x itself, reduced (matters for m = 1)
  Poly xq = poly_pow_mod(x, pow_u64_checked(s, m), f, s);
  if (poly_sub(xq, xr, s) != Poly{}) return false;
  for (auto& [t, mult] : factor_u64(m)) {
    (void)mult;
    Poly xt = poly_pow_mod(x, pow_u64_checked(s, m / static_cast<u32>(t)), f, s);
    Poly g = poly_gcd(f, poly_sub(xt, x, s), s);
    if (g.size() != 1) return false;
  }
  return true;
}

// Table budget: exp/log/zech are full-size arrays.
constexpr u64 kMaxFieldSize = u64(1) << 24;

}  // namespace

// --- FieldParams ------------------------------------------------------------

u32 FieldParams::add(u32 a, u32 b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  const u64 M = size - 1;
  u64 la = log_[a], lb = log_[b];
  u32 z = zech_[(lb + M - la) % M];
  if (z == kNoZech) return 0;
  return exp_[(la + z) % M];
}

u32 FieldParams::neg(u32 a) const {
  if (a == 0 || s == 2) return a;
  const u64 M = size - 1;
  return exp_[(log_[a] + M / 2) % M];
}

u32 FieldParams::mul(u32 a, u32 b) const {
  if (a == 0 || b == 0) return 0;
  const u64 M = size - 1;
  return exp_[(static_cast<u64>(log_[a]) + log_[b]) % M];
}

u32 FieldParams::inv(u32 a) const {
  if (a == 0) throw ParamError("field inverse of zero");
  const u64 M = size - 1;
  return exp_[(M - log_[a]) % M];
}

u32 FieldParams::pow(u32 a, i64 e) const {
  const u64 M = size - 1;
  if (a == 0) {
    if (e > 0) return 0;
    if (e == 0) return 1;
    throw ParamError("field power: zero to a negative exponent");
  }
  i64 r = static_cast<i64>((static_cast<u64>(log_[a]) * static_cast<u64>(((e % static_cast<i64>(M)) + static_cast<i64>(M)) % static_cast<i64>(M))) % M);
  return exp_[static_cast<u64>(r)];
}

u32 FieldParams::frob(u32 a, u64 power) const {
  if (a == 0) return 0;
  const u64 M = size - 1;
  return exp_[(static_cast<u64>(log_[a]) * (power % M)) % M];
}

u32 FieldParams::conj(u32 a) const {
  if (m % 2 != 0) throw ParamError("conjugation needs an even-degree field");
  return frob(a, q());
}

u64 FieldParams::mul_order(u32 a) const {
  if (a == 0) throw ParamError("multiplicative order of zero");
  const u64 M = size - 1;
  return M / std::gcd(static_cast<u64>(log_[a]), M);
}

u32 FieldParams::from_int(i64 v) const {
  i64 r = v % static_cast<i64>(s);
  if (r < 0) r += s;
  return static_cast<u32>(r);
}

u64 FieldParams::q() const {
  if (m % 2 != 0) throw ParamError("field has no unitary midpoint (odd degree)");
  return pow_u64_checked(s, m / 2);
}

bool FieldParams::in_subfield(u32 a, u64 sub_size) const {
  if (a == 0) return true;
  const u64 M = size - 1;
  return (static_cast<u64>(log_[a]) * ((sub_size - 1) % M)) % M == 0;
}

std::vector<u32> FieldParams::digits(u32 code) const {
  std::vector<u32> d(m);
  for (u32 i = 0; i < m; ++i) { d[i] = code % s; code /= s; }
  return d;
}

u32 FieldParams::code_of(const std::vector<u32>& digits) const {
  if (digits.size() > m) throw ParamError("too many digits for field");
  u64 c = 0;
  for (size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= s) throw ParamError("digit out of range");
    c = c * s + digits[i];
  }
  return static_cast<u32>(c);
}

// --- make_field -------------------------------------------------------------

FieldRef make_field(u32 s, u32 m) {
  static std::map<std::pair<u32, u32>, FieldRef> registry;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find({s, m});
  if (it != registry.end()) return it->second;

  if (!is_prime_u64(s)) throw ParamError("field characteristic must be prime");
  if (m < 1) throw ParamError("field degree must be >= 1");
  u64 size = pow_u64_checked(s, m);
  if (size > kMaxFieldSize) throw ParamError("field size exceeds table budget");

  auto F = std::shared_ptr<FieldParams>(new FieldParams());
  F->s = s;
  F->m = m;
  F->size = size;

  // Modulus: first irreducible in constant-term-first lexicographic order.
  {
    // Lexicographic on (c_0,...,c_{m-1}) means c_0 is the most significant
    // scan digit.
    bool found = false;
    for (u64 idx = 0; idx < size && !found; ++idx) {
      Poly cand(m + 1, 0);
      u64 v = idx;
      for (u32 i = 0; i < m; ++i) {
        cand[m - 1 - i] = static_cast<u32>(v % s);
        v /= s;
      }
      cand[m] = 1;
      if (poly_irreducible(cand, s)) {
        F->modulus.assign(cand.begin(), cand.end());
        found = true;
      }
    }
    if (!found) throw CheckError("no irreducible modulus found");  // impossible
  }

  // Generator: least code of full order, tested with construction-time
  // polynomial arithmetic (tables do not exist yet).
  {
    Poly mod(F->modulus.begin(), F->modulus.end());
    const u64 M = size - 1;
    auto code_to_poly = [&](u32 code) {
      Poly p(m);
      for (u32 i = 0; i < m; ++i) { p[i] = code % s; code /= s; }
      poly_trim(p);
      return p;
    };
    auto fac = factor_u64(M);
    bool found = false;
    for (u32 c = 2; c < size && !found; ++c) {
      Poly p = code_to_poly(c);
      bool full = true;
      for (auto& [pr, mult] : fac) {
        (void)mult;
        if (poly_pow_mod(p, M / pr, mod, s) == Poly{1}) { full = false; break; }
      }
      if (full) { F->generator = c; found = true; }
    }
    if (!found) throw CheckError("no generator found");  // impossible
  }

  // exp / log / zech tables.
  {
    const u64 M = size - 1;
    Poly mod(F->modulus.begin(), F->modulus.end());
    auto poly_to_code = [&](const Poly& p) {
      u64 c = 0;
      for (size_t i = p.size(); i-- > 0;) c = c * s + p[i];
      return static_cast<u32>(c);
    };
    const auto gen_digits = F->digits(F->generator);
    Poly g(gen_digits.begin(), gen_digits.end());
    poly_trim(g);
    F->exp_.resize(M);
    F->log_.assign(size, 0);
    Poly cur = {1};
    for (u64 k = 0; k < M; ++k) {
      u32 code = poly_to_code(cur);
      F->exp_[k] = code;
      F->log_[code] = static_cast<u32>(k);
      cur = poly_mul_mod(cur, g, mod, s);
    }
    if (cur != Poly{1}) throw CheckError("generator order defect");
    F->zech_.assign(M, FieldParams::kNoZech);
    // 1 + g^k digitwise, then log.
    for (u64 k = 0; k < M; ++k) {
      u32 code = F->exp_[k];
      u32 low = code % s;
      u32 sum_code = code - low + (low + 1) % s;
      if (sum_code != 0) F->zech_[k] = F->log_[sum_code];
    }
  }

  FieldRef ref = F;
  registry[{s, m}] = ref;
  return ref;
}

// --- literals ---------------------------------------------------------------

std::string to_literal(FieldElement a) {
  const FieldParams* f = a.field();
  std::ostringstream os;
  os << '[';
  auto d = a.coeffs();
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) os << ',';
    os << d[i];
  }
  os << "]@F_{" << f->s << '^' << f->m << '}';
  return os.str();
}

FieldElement parse_literal(const FieldRef& f, const std::string& text) {
  auto fail = [&]() -> FieldElement { throw ParamError("bad field literal: " + text); };
  size_t at = text.find('@');
  if (at == std::string::npos || text.empty() || text[0] != '[') return fail();
  if (text[at - 1] != ']') return fail();
  std::vector<u32> digits;
  {
    std::string body = text.substr(1, at - 2);
    if (!body.empty()) {
      std::istringstream is(body);
      std::string tok;
      while (std::getline(is, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) return fail();
        digits.push_back(static_cast<u32>(std::stoul(tok)));
      }
    }
  }
  std::ostringstream suffix;
  suffix << "F_{" << f->s << '^' << f->m << '}';
  if (text.substr(at + 1) != suffix.str()) return fail();
  if (digits.size() != f->m) return fail();
  return {f, f->code_of(digits)};
}

// --- distinguished scalars ----------------------------------------------------

FieldElement find_zeta(const FieldRef& f) {
  const u32 one = 1, mone = f->neg(1);
  for (u64 c = 2; c < f->size; ++c) {
    u32 z = static_cast<u32>(c);
    if (z == one || z == mone) continue;
    if (f->conj(z) == f->neg(z)) return {f, z};
  }
  throw ParamError("no admissible zeta (q <= 3)");
}

FieldElement find_eta(const FieldRef& f) {
  const u32 mone = f->neg(1);
  for (u64 c = 1; c < f->size; ++c) {
    u32 e = static_cast<u32>(c);
    if (f->norm(e) == mone) return {f, e};
  }
  throw ParamError("no admissible eta");
}

namespace {

// Least-code generator of the unique cyclic subgroup of order k of F*.
FieldElement unity_root_of_order(const FieldRef& f, u64 k) {
  const u64 M = f->size - 1;
  if (k == 0 || M % k != 0) throw ParamError("no multiplicative subgroup of that order");
  if (k == 1) return {f, 1};
  u32 u0 = f->pow(f->generator, static_cast<i64>(M / k));
  u32 best = 0;
  for (u64 j = 1; j < k; ++j) {
    if (std::gcd(j, k) != 1) continue;
    u32 cand = f->pow(u0, static_cast<i64>(j));
    if (best == 0 || cand < best) best = cand;
  }
  return {f, best};
}

}  // namespace

FieldElement find_unity_root(const FieldRef& f, u64 k) {
  u64 qq = f->q();
  if (k == 0 || (qq + 1) % k != 0)
    throw ParamError("unity root order must divide q+1");
  FieldElement u = unity_root_of_order(f, k);
  if (u.pow(static_cast<i64>(qq + 1)).code() != 1)
    throw CheckError("unity root escaped the norm-one circle");
  return u;
}

FieldElement choose_alpha(const FieldRef& f, u32 n, u32 l, u32 p) {
  if (p < 3 || !is_prime_u64(p) || p % 2 == 0) throw ParamError("p must be an odd prime");
  if (l < 1 || f->m != 2 * p * l) throw ParamError("field degree must be 2*p*l");
  if (n < 2) throw ParamError("n must be >= 2");
  const u64 fix = pow_u64_checked(f->s, 2 * l);  // |F_{s^{2l}}|, the Phi-fixed field
  const u32 target = f->from_int(2 - static_cast<i64>(n));

  u32 tilde = FieldParams::kNoZech;
  for (u64 c = 0; c < f->size; ++c) {
    if (f->trace(static_cast<u32>(c)) == target) { tilde = static_cast<u32>(c); break; }
  }
  if (tilde == FieldParams::kNoZech) throw CheckError("trace equation unsolvable");

  // Average the solution over the Phi-orbit; Phi commutes with conj and fixes
  // the prime field, so the average still solves the trace equation and lands
  // in the fixed field.
  u32 acc = 0, cur = tilde;
  for (u32 i = 0; i < p; ++i) {
    acc = f->add(acc, cur);
    cur = f->frob(cur, fix);
  }
  u32 alpha = f->div(acc, f->from_int(p));

  if (alpha == 1) {
    const u64 qq = f->q();
    u32 beta = 0;
    bool found = false;
    for (u64 c = 2; c < f->size && !found; ++c) {
      u32 g = static_cast<u32>(c);
      if (g == f->neg(1)) continue;
      if (!f->in_subfield(g, fix)) continue;
      if (f->pow(g, static_cast<i64>(qq + 1)) != 1) continue;
      beta = f->div(f->sub(g, 1), f->add(g, 1));
      found = true;
    }
    if (!found) throw CheckError("no norm-one shift available for alpha");
    alpha = f->add(alpha, beta);
  }

  if (f->add(f->trace(alpha), f->from_int(static_cast<i64>(n) - 2)) != 0)
    throw CheckError("alpha: trace condition failed");
  if (alpha == 1) throw CheckError("alpha: landed on 1");
  if (f->add(f->norm(alpha), f->from_int(static_cast<i64>(n) - 1)) == 0)
    throw CheckError("alpha: norm condition failed");
  if (!f->in_subfield(alpha, fix)) throw CheckError("alpha: outside the fixed field");
  return {f, alpha};
}

LambdaChoice choose_lambda(const FieldRef& f, u32 l, u32 p) {
  if (p < 3 || !is_prime_u64(p)) throw ParamError("p must be an odd prime");
  if (l < 1 || f->m != 2 * p * l) throw ParamError("field degree must be 2*p*l");
  const mpz_class S(f->s);
  mpz_class A, B;
  mpz_pow_ui(A.get_mpz_t(), S.get_mpz_t(), p * l);
  A += 1;                                             // s^{pl} + 1 = q + 1
  mpz_pow_ui(B.get_mpz_t(), S.get_mpz_t(), 2 * l);
  B -= 1;                                             // s^{2l} - 1

  auto mult_of = [](mpz_class v, const mpz_class& r) {
    u32 k = 0;
    while (mpz_divisible_p(v.get_mpz_t(), r.get_mpz_t())) { v /= r; ++k; }
    return k;
  };

  // Prime divisors of A, ascending.
  std::vector<u64> primes;
  {
    mpz_class rest = A;
    for (mpz_class d = 2; d * d <= rest; ++d) {
      if (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t())) {
        primes.push_back(mpz_get_ui(d.get_mpz_t()));
        while (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t())) rest /= d;
      }
    }
    if (rest > 1) primes.push_back(mpz_get_ui(rest.get_mpz_t()));
  }

  u64 r = 0;
  u32 bmult = 0;
  for (u64 cand : primes) {
    if (cand == 2 || cand == p) continue;
    mpz_class rc(static_cast<unsigned long>(cand));
    u32 am = mult_of(A, rc), bm = mult_of(B, rc);
    if (am > bm) { r = cand; bmult = bm; break; }
  }
  if (r == 0)
    throw ParamError("no admissible prime r: excluded parameter pair (p,q)=(3,8)");

  u64 lam_order = 1;
  for (u32 i = 0; i <= bmult; ++i) lam_order *= r;
  FieldElement lambda = unity_root_of_order(f, lam_order);
  const u64 qq = f->q();
  if (lambda.pow(static_cast<i64>(qq + 1)).code() != 1)
    throw CheckError("lambda is not on the norm-one circle");
  const i64 fix = static_cast<i64>(pow_u64_checked(f->s, 2 * l));
  FieldElement Lambda = lambda.pow(1 - fix);
  if (Lambda.mul_order() != r) throw CheckError("Lambda has the wrong order");
  return {lambda, Lambda, r};
}

}  // namespace qsphere
