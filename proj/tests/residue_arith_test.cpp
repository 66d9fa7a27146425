#include <doctest.h>

#include <random>
#include <set>

#include "adelic/residue_arith.hpp"

using namespace adelic;

namespace {

bool has_root_brute(const std::vector<i64>& coeffs, u64 p) {
  for (u64 x = 0; x < p; ++x) {
    __int128 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc * x + *it) % static_cast<__int128>(p);
    if (acc == 0) return true;
  }
  return false;
}

PolyFp product_of(const std::vector<PolyFactor>& factors, u64 p) {
  PolyFp acc{p, {1}};
  for (const auto& pf : factors)
    for (int i = 0; i < pf.multiplicity; ++i) acc = poly_mul(acc, pf.factor);
  return acc;
}

}  // namespace

TEST_CASE("ZModN arithmetic") {
  ZModN a(-3, 8), b(7, 8);
  CHECK(a.value() == 5);
  CHECK((a + b).value() == 4);
  CHECK((a - b).value() == 6);
  CHECK((a * b).value() == 3);
  CHECK((a * a.inverse()).value() == 1);
  CHECK(ZModN(2, 8).is_unit() == false);
  CHECK_THROWS_AS(ZModN(2, 8).inverse(), Error);
  CHECK(ZModN(3, 7).pow(6).value() == 1);
}

TEST_CASE("fq_context accepts irreducible moduli and rejects the rest") {
  // x^3 + x + 1 has no root mod 7, so it is irreducible
  CHECK_FALSE(has_root_brute({1, 1, 0, 1}, 7));
  auto f343 = FqContext::create(7, PolyFp{7, {1, 1, 0, 1}});
  CHECK(f343->order() == 343);
  CHECK(f343->degree() == 3);

  auto f11 = FqContext::create(11, PolyFp{11, {0, 1}});
  CHECK(f11->order() == 11);

  // 2^2 - 4*5 = -16 = 6 mod 11; the squares mod 11 are {0,1,3,4,5,9}
  std::set<u64> squares;
  for (u64 x = 0; x < 11; ++x) squares.insert(x * x % 11);
  CHECK(squares.count(6) == 0);
  auto f121 = FqContext::create(11, PolyFp{11, {5, 2, 1}});
  CHECK(f121->order() == 121);

  CHECK_THROWS_AS(FqContext::create(9, PolyFp{9, {0, 1}}), Error);
  try {
    FqContext::create(11, PolyFp{11, {1, 1, 0, 1}});  // root 2
    FAIL("expected ReducibleModulus");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ReducibleModulus);
  }
  try {
    FqContext::create(5, PolyFp{5, {2, 0, 0, 0, 1}});
    FAIL("expected DegreeTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeTooLarge);
  }
}

TEST_CASE("F_q field axioms on every nonzero element") {
  for (auto [p, mod] : std::vector<std::pair<u64, PolyFp>>{
           {7, PolyFp{7, {1, 1, 0, 1}}}, {11, PolyFp{11, {5, 2, 1}}}, {3, PolyFp{3, {1, 0, 1}}}, {13, PolyFp{13, {0, 1}}}}) {
    auto ctx = FqContext::create(p, mod);
    const u64 q = ctx->order();
    for (u64 i = 1; i < q; ++i) {
      FqElement x = ctx->element(i);
      CHECK(x.index() == i);
      CHECK((x * x.inverse()).is_one());
      CHECK(x.pow(q - 1).is_one());
      CHECK(x.pow(q) == x);
    }
  }
}

TEST_CASE("F_q distributivity on random triples") {
  auto ctx = FqContext::create(7, PolyFp{7, {1, 1, 0, 1}});
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<u64> pick(0, ctx->order() - 1);
  for (int i = 0; i < 2000; ++i) {
    auto a = ctx->element(pick(rng)), b = ctx->element(pick(rng)), c = ctx->element(pick(rng));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("factor_poly_mod_p examples") {
  const std::vector<i64> f = {1, 1, 0, 1};

  auto at7 = factor_poly_mod_p(f, 7);
  REQUIRE(at7.size() == 1);
  CHECK(at7[0].factor == PolyFp{7, {1, 1, 0, 1}});
  CHECK(at7[0].multiplicity == 1);

  // 2^3 + 2 + 1 = 11; dividing out x - 2 leaves x^2 + 2x + 5
  auto at11 = factor_poly_mod_p(f, 11);
  REQUIRE(at11.size() == 2);
  CHECK(at11[0].factor == PolyFp{11, {9, 1}});
  CHECK(at11[1].factor == PolyFp{11, {5, 2, 1}});

  // disc(f) = -31, so f has a repeated factor mod 31; gcd(f, f') found exhaustively
  PolyFp f31 = PolyFp::from_integers(f, 31);
  PolyFp g = poly_gcd(f31, poly_derivative(f31));
  CHECK(g.degree() == 1);
  auto at31 = factor_poly_mod_p(f, 31);
  int repeated = 0;
  for (const auto& pf : at31)
    if (pf.multiplicity == 2) {
      ++repeated;
      CHECK(pf.factor == g);
    }
  CHECK(repeated == 1);
}

TEST_CASE("factor_poly_mod_p re-multiplies to the input (1000 random cubics)") {
  std::mt19937_64 rng(2024);
  std::vector<u64> primes;
  for (u64 p = 2; p < 100; ++p)
    if (is_prime(p)) primes.push_back(p);
  std::uniform_int_distribution<size_t> pick_p(0, primes.size() - 1);
  std::uniform_int_distribution<i64> coef(-1000, 1000);
  for (int trial = 0; trial < 1000; ++trial) {
    u64 p = primes[pick_p(rng)];
    std::vector<i64> f = {coef(rng), coef(rng), coef(rng), 1};
    auto factors = factor_poly_mod_p(f, p);
    CHECK(product_of(factors, p) == PolyFp::from_integers(f, p));
    for (size_t i = 0; i < factors.size(); ++i) {
      const auto& fac = factors[i].factor;
      CHECK(fac.is_monic());
      if (fac.degree() >= 2) {
        std::vector<i64> as_int(fac.c.begin(), fac.c.end());
        CHECK_FALSE(has_root_brute(as_int, p));
      }
      if (i > 0) {
        const auto& prev = factors[i - 1].factor;
        CHECK((prev.degree() < fac.degree() || (prev.degree() == fac.degree() && prev.c < fac.c)));
      }
    }
  }
}

TEST_CASE("legendre") {
  CHECK(legendre(20, 31) == 1);
  CHECK(legendre(3, 31) == -1);
  CHECK(legendre(0, 31) == 0);
  CHECK(legendre(-28, 31) == legendre(3, 31));
  CHECK_THROWS_AS(legendre(3, 2), Error);
}

TEST_CASE("legendre agrees with the exhaustive squares table for all odd primes below 50") {
  for (u64 ell = 3; ell < 50; ++ell) {
    if (!is_prime(ell)) continue;
    std::set<u64> squares;
    for (u64 x = 1; x < ell; ++x) squares.insert(x * x % ell);
    for (i64 a = -60; a < 60; ++a) {
      u64 r = mod_floor(a, ell);
      int expected = r == 0 ? 0 : (squares.count(r) ? 1 : -1);
      CHECK(legendre(a, ell) == expected);
    }
  }
}

TEST_CASE("fq_roots") {
  auto f7 = FqContext::prime_field(7);
  std::vector<FqElement> x2m1 = {f7->from_int(-1), f7->zero(), f7->one()};
  auto r = fq_roots(x2m1);
  REQUIRE(r.size() == 2);
  CHECK(r[0].index() == 1);
  CHECK(r[1].index() == 6);

  auto f3 = FqContext::prime_field(3);
  // x^2 + t x + n with (t, n) = (0, 2): exhaustive evaluation gives 1 and 2
  std::vector<FqElement> poly = {f3->from_int(2), f3->zero(), f3->one()};
  auto r3 = fq_roots(poly);
  REQUIRE(r3.size() == 2);
  CHECK(r3[0].index() == 1);
  CHECK(r3[1].index() == 2);

  std::vector<FqElement> x2p1 = {f3->one(), f3->zero(), f3->one()};
  CHECK(fq_roots(x2p1).empty());

  // (x - 3)^2 (x - 5) over F_7 has root multiset {3, 3, 5}
  std::vector<FqElement> cubic = {f7->from_int(-45), f7->from_int(39), f7->from_int(-11), f7->one()};
  auto rc = fq_roots(cubic);
  REQUIRE(rc.size() == 3);
  CHECK(rc[0].index() == 3);
  CHECK(rc[1].index() == 3);
  CHECK(rc[2].index() == 5);

  // x^2 - a over F_121 where a is the generator class squared
  auto f121 = FqContext::create(11, PolyFp{11, {5, 2, 1}});
  auto gen = f121->generator();
  std::vector<FqElement> sq = {-(gen * gen), f121->zero(), f121->one()};
  auto rs = fq_roots(sq);
  REQUIRE(rs.size() == 2);
  CHECK(((rs[0] == gen && rs[1] == -gen) || (rs[1] == gen && rs[0] == -gen)));
}
