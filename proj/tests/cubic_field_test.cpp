#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "adelic/cubic_field.hpp"

using namespace adelic;

namespace {

const std::vector<i64> kExamplePoly = {1, 1, 0, 1};

CubicField example_field() { return CubicField::create(kExamplePoly); }

/// The discriminant of y^2 + 2xy + a y = x^3 - x^2, expanded by hand.
OrderElement example_delta(const CubicField& K) { return K.element(64, 91, 27); }

OrderElement random_element(const CubicField& K, std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  return K.element(d(rng), d(rng), d(rng));
}

/// v_P(x) for a degree-1 unramified prime by brute force: lift the root of f
/// one p-adic digit at a time by exhaustive search, and test x(r_k) = 0 mod p^k.
int brute_valuation_degree_one(const CubicField& K, const OrderElement& x, const PrimeIdeal& P, int max_k) {
  const auto fc = K.cubic().coefficients();
  mpz_class p = static_cast<unsigned long>(P.p);
  mpz_class root = static_cast<unsigned long>((P.p - P.generator.c[0]) % P.p);
  mpz_class pk = p;
  int v = 0;
  for (int k = 1; k <= max_k; ++k) {
    if (k > 1) {
      mpz_class next_pk = pk * p;
      bool found = false;
      for (unsigned long d = 0; d < P.p && !found; ++d) {
        mpz_class cand = root + pk * d;
        mpz_class val = ((cand + fc[2]) * cand + fc[1]) * cand + fc[0];
        if (val % next_pk == 0) {
          root = cand;
          found = true;
        }
      }
      REQUIRE(found);
      pk = next_pk;
    }
    mpz_class xv = x[0] + x[1] * root + x[2] * root * root;
    if (xv % pk != 0) return v;
    v = k;
  }
  return v;
}

}  // namespace

TEST_CASE("order element arithmetic reduces with alpha^3 = -alpha - 1") {
  const auto K = example_field();
  auto a = K.alpha();
  CHECK(a * a * a == K.element(-1, -1, 0));
  // alpha (alpha^2 + 1) = -1
  CHECK(a * (a * a + K.one()) == K.element(-1));
  // alpha + 1 = -alpha^3
  CHECK(a + K.one() == -(a.pow(3)));
  CHECK(example_delta(K).str() == "27a^2 + 91a + 64");
}

TEST_CASE("field_preflight on x^3 + x + 1") {
  auto profile = field_preflight(kExamplePoly);
  CHECK(profile.discriminant == -31);
  CHECK(profile.non_galois);
  CHECK(profile.minkowski_bound < 2);
  CHECK(profile.minkowski_bound > mpq_class(157, 100));
  CHECK(profile.class_number_one);
  CHECK(profile.narrow_class_trivial);
  REQUIRE(profile.unit_witness.has_value());
  const auto K = example_field();
  CHECK(*profile.unit_witness == K.alpha());
  CHECK(K.is_unit(*profile.unit_witness + K.one()));
  CHECK(K.real_sign(*profile.unit_witness + K.one()) == 1);
}

TEST_CASE("field_preflight scope handling") {
  // disc(x^3 - 3x - 1) = 108 - 27 = 81, a perfect square
  auto cyclic = field_preflight(std::vector<i64>{-1, -3, 0, 1});
  CHECK(cyclic.discriminant == 81);
  CHECK_FALSE(cyclic.non_galois);
  CHECK_FALSE(cyclic.unit_witness.has_value());

  auto expect_kind = [](std::vector<i64> poly, ErrorKind kind) {
    try {
      field_preflight(poly);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == kind);
    }
  };
  expect_kind({0, -1, 0, 1}, ErrorKind::Reducible);          // x^3 - x
  expect_kind({-6, 11, -6, 1}, ErrorKind::Reducible);        // (x-1)(x-2)(x-3)
  expect_kind({4, 2, 0, 1}, ErrorKind::NonSquarefreeDiscriminant);  // disc -464 = -16*29
  expect_kind({1, -4, 0, 1}, ErrorKind::WrongSignature);     // disc 229 > 0
  CHECK_THROWS_AS(field_preflight(std::vector<i64>{1, 1, 2}), Error);
}

TEST_CASE("minkowski bound is a rational upper bound") {
  mpq_class m = minkowski_bound_upper(-31);
  double exact = 6.0 / 27.0 * 4.0 / M_PI * std::sqrt(31.0);
  CHECK(m.get_d() >= exact);
  CHECK(m.get_d() - exact < 1e-6);
}

TEST_CASE("real root interval is narrow and brackets the root") {
  const auto K = example_field();
  auto [lo, hi] = K.real_root_interval();
  CHECK(hi - lo < mpq_class(mpz_class(1), mpz_class(1) << 64));
  CHECK(lo.get_d() == doctest::Approx(-0.6823278038280193));
}

TEST_CASE("split_prime reproduces the labelled primes") {
  const auto K = example_field();
  auto p131 = K.split_prime(131);
  REQUIRE(p131.size() == 3);
  for (auto& P : p131) CHECK(P.residue_degree == 1);
  CHECK(p131[0].label() == "P_131");
  CHECK(p131[2].label() == "R_131");

  auto p2207 = K.split_prime(2207);
  REQUIRE(p2207.size() == 2);
  CHECK(p2207[0].label() == "P_2207");
  CHECK(p2207[0].residue_degree == 2);
  CHECK(p2207[1].residue_degree == 1);

  auto p7 = K.split_prime(7);
  REQUIRE(p7.size() == 1);
  CHECK(p7[0].norm() == 343);
  CHECK(K.prime_by_label("(7)") == p7[0]);

  auto q11 = K.prime_by_label("Q_11");
  CHECK(q11.residue_degree == 1);
  CHECK(q11.generator == PolyFp{11, {9, 1}});
  CHECK(K.unique_degree_one_prime(11) == q11);
  CHECK(K.unique_degree_one_prime(23) == K.prime_by_label("Q_23"));
  CHECK(K.unique_degree_one_prime(29) == K.prime_by_label("Q_29"));
  try {
    K.unique_degree_one_prime(131);
    FAIL("expected DuplicateDegreeOnePrime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateDegreeOnePrime);
  }
  CHECK_THROWS_AS(K.prime_by_label("R_11"), Error);
  CHECK_THROWS_AS(K.prime_by_label("(11)"), Error);

  auto p31 = K.split_prime(31);
  int ramified = 0;
  for (auto& P : p31) ramified += P.ramified();
  CHECK(ramified == 1);
  CHECK(K.ramified_primes() == std::vector<u64>{31});
}

TEST_CASE("split_prime: sum of e*f is 3 and norms multiply to p^3 for p < 500") {
  for (auto poly : {kExamplePoly, std::vector<i64>{1, 2, 0, 1}, std::vector<i64>{1, -1, 0, 1}}) {
    const auto K = CubicField::create(poly);
    for (u64 p = 2; p < 500; ++p) {
      if (!is_prime(p)) continue;
      auto primes = K.split_prime(p);
      int sum = 0;
      mpz_class prod = 1;
      for (auto& P : primes) {
        sum += P.ramification * P.residue_degree;
        for (int i = 0; i < P.ramification; ++i) prod *= static_cast<unsigned long>(P.norm());
      }
      CHECK(sum == 3);
      CHECK(prod == mpz_class(static_cast<unsigned long>(p)) * p * p);
    }
  }
}

TEST_CASE("reduce_mod_prime") {
  const auto K = example_field();
  auto q11 = K.prime_by_label("Q_11");
  CHECK(K.reduce_mod_prime(K.alpha(), q11).index() == 2);
  CHECK(K.reduce_mod_prime(K.one(), q11).is_one());
  auto p7 = K.prime_by_label("(7)");
  CHECK(K.reduce_mod_prime(K.alpha(), p7) == p7.residue_field->generator());
  CHECK(K.reduce_mod_prime(K.one(), p7).is_one());

  auto p31 = K.split_prime(31);
  for (auto& P : p31) {
    if (!P.ramified()) continue;
    try {
      K.reduce_mod_prime(K.alpha(), P);
      FAIL("expected RamifiedUnsupported");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::RamifiedUnsupported);
    }
  }
}

TEST_CASE("reduce_mod_prime is a ring homomorphism at 50 random primes") {
  const auto K = example_field();
  std::mt19937_64 rng(7);
  std::vector<u64> primes;
  for (u64 p = 2; primes.size() < 120; ++p)
    if (is_prime(p) && !K.is_ramified(p)) primes.push_back(p);
  std::shuffle(primes.begin(), primes.end(), rng);
  primes.resize(50);
  for (u64 p : primes) {
    for (auto& P : K.split_prime(p)) {
      for (int i = 0; i < 10; ++i) {
        auto x = random_element(K, rng, 1000), y = random_element(K, rng, 1000);
        auto rx = K.reduce_mod_prime(x, P), ry = K.reduce_mod_prime(y, P);
        CHECK(K.reduce_mod_prime(x + y, P) == rx + ry);
        CHECK(K.reduce_mod_prime(x * y, P) == rx * ry);
      }
    }
  }
}

TEST_CASE("norms and units") {
  const auto K = example_field();
  // (Delta) is a product of two degree-1 primes, so |N(Delta)| = 131 * 2207
  CHECK(abs(K.norm(example_delta(K))) == mpz_class(131) * 2207);
  // independent check: product of Delta over the three complex roots of f
  {
    std::complex<double> roots[3];
    const std::complex<double> real(-0.6823278038280193, 0);
    const std::complex<double> disc = std::sqrt(std::complex<double>(real.real() * real.real() - 4 * (1 + real.real() * real.real()) + 0.0, 0));
    // f = (x - r)(x^2 + r x + (1 + r^2))
    roots[0] = real;
    roots[1] = (-real + disc) / 2.0;
    roots[2] = (-real - disc) / 2.0;
    std::complex<double> prod = 1;
    for (auto r : roots) prod *= 64.0 + 91.0 * r + 27.0 * r * r;
    CHECK(prod.real() == doctest::Approx(289117.0));
    CHECK(std::abs(prod.imag()) < 1e-6);
  }
  CHECK(K.is_unit(K.alpha()));
  CHECK(K.is_unit(K.alpha() + K.one()));
  CHECK_FALSE(K.is_unit(K.element(2)));
  CHECK(K.norm(K.element(2)) == 8);
  // N(a - alpha) = f(a)
  CHECK(K.norm(K.element(1, -1, 0)) == 3);
}

TEST_CASE("real_sign") {
  const auto K = example_field();
  CHECK(K.real_sign(example_delta(K)) == 1);
  CHECK(K.real_sign(K.element(-1)) == -1);
  CHECK(K.real_sign(K.alpha() + K.one()) == 1);
  CHECK(K.real_sign(K.alpha()) == -1);
  CHECK(K.real_sign(K.element(0)) == 0);
  // alpha^3 + alpha + 1 = 0 exactly, and a value extremely close to zero
  auto a = K.alpha();
  CHECK(K.real_sign(a.pow(3) + a + K.one()) == 0);
  auto tiny = a.pow(40);  // |alpha|^40 ~ 2e-7
  CHECK(K.real_sign(tiny) == 1);
  CHECK(K.real_sign(a.pow(41)) == -1);
}

TEST_CASE("real_sign is multiplicative and matches floating point away from zero") {
  const auto K = example_field();
  const double root = -0.6823278038280193;
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    auto x = random_element(K, rng, 50), y = random_element(K, rng, 50);
    if (x.is_zero() || y.is_zero()) continue;
    CHECK(K.real_sign(x) * K.real_sign(y) == K.real_sign(x * y));
    double xv = x[0].get_d() + x[1].get_d() * root + x[2].get_d() * root * root;
    if (std::abs(xv) > 1e-6) CHECK(K.real_sign(x) == (xv > 0 ? 1 : -1));
  }
}

TEST_CASE("element_valuation") {
  const auto K = example_field();
  auto delta = example_delta(K);
  auto p131 = K.split_prime(131);
  CHECK(K.element_valuation(delta, K.prime_by_label("P_131")) == 1);
  CHECK(K.element_valuation(delta, K.prime_by_label("Q_131")) == 0);
  CHECK(K.element_valuation(delta, K.prime_by_label("R_131")) == 0);
  CHECK(K.element_valuation(delta, K.prime_by_label("Q_2207")) == 1);
  CHECK(K.element_valuation(delta, K.prime_by_label("P_2207")) == 0);
  for (auto& P : p131) CHECK(K.element_valuation(K.alpha(), P) == 0);
  CHECK(K.element_valuation(K.element(48), K.prime_by_label("(2)")) == 4);
  CHECK(K.element_valuation(K.element(7 * 7 * 7), K.prime_by_label("(7)")) == 3);
  // 2207-adic valuation of a high power, forcing precision doubling
  CHECK(K.element_valuation(delta.pow(9), K.prime_by_label("Q_2207")) == 9);
  CHECK_THROWS_AS(K.element_valuation(K.element(0), p131[0]), Error);
}

TEST_CASE("element_valuation agrees with a brute-force Hensel oracle at degree-1 primes") {
  const auto K = example_field();
  std::mt19937_64 rng(5);
  const std::vector<u64> primes = {3, 11, 23, 29, 47, 53};
  for (u64 p : primes) {
    for (auto& P : K.split_prime(p)) {
      if (P.residue_degree != 1 || P.ramified()) continue;
      // multiply by a power of an element in P to force positive valuations
      auto pi = K.element(-static_cast<long>((p - P.generator.c[0]) % p), 1, 0);  // alpha - r
      for (int i = 0; i < 30; ++i) {
        auto x = random_element(K, rng, 30);
        if (x.is_zero()) continue;
        int k = static_cast<int>(rng() % 4);
        auto y = x * pi.pow(k);
        CHECK(K.element_valuation(y, P) == brute_valuation_degree_one(K, y, P, 12));
      }
    }
  }
}

TEST_CASE("element_valuation is additive on random pairs") {
  const auto K = example_field();
  std::mt19937_64 rng(17);
  std::vector<PrimeIdeal> places;
  for (u64 p : {2, 3, 5, 7, 11, 13, 131}) {
    auto ps = K.split_prime(p);
    places.insert(places.end(), ps.begin(), ps.end());
  }
  for (int i = 0; i < 200; ++i) {
    auto x = random_element(K, rng, 200), y = random_element(K, rng, 200);
    if (x.is_zero() || y.is_zero()) continue;
    for (auto& P : places)
      CHECK(K.element_valuation(x * y, P) == K.element_valuation(x, P) + K.element_valuation(y, P));
  }
}

TEST_CASE("ideal_factorization") {
  const auto K = example_field();
  auto fac = K.ideal_factorization(example_delta(K));
  REQUIRE(fac.size() == 2);
  CHECK(fac[0].prime.label() == "P_131");
  CHECK(fac[0].exponent == 1);
  CHECK(fac[1].prime.label() == "Q_2207");
  CHECK(fac[1].exponent == 1);

  CHECK(K.ideal_factorization(K.alpha()).empty());

  auto c4 = K.alpha() * -48;
  CHECK(abs(K.norm(c4)) == mpz_class(48) * 48 * 48);
  for (auto& f : K.ideal_factorization(c4)) CHECK((f.prime.p == 2 || f.prime.p == 3));

  try {
    K.ideal_factorization(K.element(31));
    FAIL("expected RamifiedUnsupported");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RamifiedUnsupported);
  }
  CHECK_THROWS_AS(K.ideal_factorization(K.element(0)), Error);
}

TEST_CASE("ideal_factorization: exponents weighted by residue degree give v_p(N)") {
  const auto K = example_field();
  std::mt19937_64 rng(23);
  int tested = 0;
  while (tested < 200) {
    auto x = random_element(K, rng, 40);
    if (x.is_zero()) continue;
    mpz_class n = K.norm(x);
    if (mpz_divisible_ui_p(n.get_mpz_t(), 31)) continue;
    auto fac = K.ideal_factorization(x);
    for (auto [p, e] : factor_integer(n)) {
      int weighted = 0;
      for (auto& f : fac)
        if (f.prime.p == p) weighted += f.exponent * f.prime.residue_degree;
      CHECK(weighted == e);
    }
    ++tested;
  }
}
