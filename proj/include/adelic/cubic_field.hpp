#pragma once

// The number field K = Q[x]/(f) for a monic integer cubic f with squarefree
// discriminant and a single real root. Under those assumptions Z[alpha] is
// the maximal order, so primes split exactly as f factors mod p.

#include <gmpxx.h>

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adelic/residue_arith.hpp"

namespace adelic {

/// Monic cubic x^3 + a2 x^2 + a1 x + a0.
struct MonicCubic {
  i64 a0 = 0;
  i64 a1 = 0;
  i64 a2 = 0;

  /// Coefficients low degree first: {a0, a1, a2, 1}.
  std::array<i64, 4> coefficients() const { return {a0, a1, a2, 1}; }
  static MonicCubic from_coefficients(std::span<const i64> coeffs);

  friend bool operator==(const MonicCubic&, const MonicCubic&) = default;
};

mpz_class cubic_discriminant(const MonicCubic& f);

/// c0 + c1*alpha + c2*alpha^2 in Z[alpha]. Carries the defining cubic so the
/// ring operations can reduce with alpha^3 = -a2 alpha^2 - a1 alpha - a0.
class OrderElement {
 public:
  OrderElement() = default;
  OrderElement(const MonicCubic& f, mpz_class c0, mpz_class c1 = 0, mpz_class c2 = 0)
      : f_(f), c_{std::move(c0), std::move(c1), std::move(c2)} {}

  const MonicCubic& cubic() const { return f_; }
  const std::array<mpz_class, 3>& coords() const { return c_; }
  const mpz_class& operator[](int i) const { return c_[i]; }
  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }

  OrderElement operator+(const OrderElement& o) const;
  OrderElement operator-(const OrderElement& o) const;
  OrderElement operator-() const;
  OrderElement operator*(const OrderElement& o) const;
  OrderElement operator*(long k) const;
  OrderElement pow(unsigned e) const;

  std::string str() const;

  friend bool operator==(const OrderElement& a, const OrderElement& b) {
    return a.f_ == b.f_ && a.c_ == b.c_;
  }

 private:
  MonicCubic f_;
  std::array<mpz_class, 3> c_{};
};

/// A prime of Z[alpha] presented as (p, g(alpha)) with g an irreducible factor
/// of f mod p.
struct PrimeIdeal {
  u64 p = 0;
  PolyFp generator;
  int residue_degree = 1;
  int ramification = 1;
  /// Position among the primes above p in label order (0 -> P, 1 -> Q, 2 -> R).
  int index = 0;
  std::shared_ptr<const FqContext> residue_field;

  u64 norm() const { return residue_field->order(); }
  bool ramified() const { return ramification > 1; }
  /// "P_131", "Q_2207", ...
  std::string label() const;
  /// Label with residue degree annotated, e.g. "Q_11 [f=1]".
  std::string annotated_label() const;

  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
    return a.p == b.p && a.generator == b.generator;
  }
};

struct IdealFactor {
  PrimeIdeal prime;
  int exponent = 0;
};

class CubicField {
 public:
  /// Throws Reducible, NonSquarefreeDiscriminant or WrongSignature.
  static CubicField create(std::span<const i64> coeffs);
  static CubicField create(const MonicCubic& f);

  const MonicCubic& cubic() const { return f_; }
  const mpz_class& discriminant() const { return disc_; }
  /// Rational interval of width < 2^-64 around the real root.
  const std::pair<mpq_class, mpq_class>& real_root_interval() const { return root_; }

  OrderElement element(long c0, long c1 = 0, long c2 = 0) const;
  OrderElement element(const std::array<mpz_class, 3>& c) const;
  OrderElement alpha() const { return element(0, 1, 0); }
  OrderElement one() const { return element(1); }

  bool is_ramified(u64 p) const;
  std::vector<u64> ramified_primes() const;

  mpz_class norm(const OrderElement& x) const;
  bool is_unit(const OrderElement& x) const;
  /// Sign under the real embedding; 0 only for the zero element.
  int real_sign(const OrderElement& x) const;

  /// Primes above p in label order: descending residue degree, then
  /// lexicographic on the generator's symmetric-residue coefficients.
  std::vector<PrimeIdeal> split_prime(u64 p) const;
  /// Resolves "P_131", "Q_11", "(7)" (inert shorthand) to a prime.
  PrimeIdeal prime_by_label(const std::string& label) const;
  /// The degree-1 prime above p; throws DuplicateDegreeOnePrime when there
  /// is more than one and UnknownPlace when there is none.
  PrimeIdeal unique_degree_one_prime(u64 p) const;

  /// Residue map Z[alpha] -> F_p[x]/(g), alpha -> x. Throws RamifiedUnsupported.
  FqElement reduce_mod_prime(const OrderElement& x, const PrimeIdeal& P) const;
  /// v_P(x) via a Hensel-lifted embedding into the unramified completion.
  int element_valuation(const OrderElement& x, const PrimeIdeal& P) const;
  /// Prime factorization of the principal ideal (x), ordered by p then label.
  std::vector<IdealFactor> ideal_factorization(const OrderElement& x) const;

 private:
  CubicField(MonicCubic f, mpz_class disc, std::pair<mpq_class, mpq_class> root)
      : f_(f), disc_(std::move(disc)), root_(std::move(root)) {}

  MonicCubic f_;
  mpz_class disc_;
  std::pair<mpq_class, mpq_class> root_;
};

/// Facts about K needed before any curve work.
struct FieldProfile {
  MonicCubic cubic;
  mpz_class discriminant;
  /// false exactly when the discriminant is a perfect square (cyclic cubic).
  bool non_galois = false;
  /// Only meaningful when non_galois holds.
  mpq_class minkowski_bound;
  bool class_number_one = false;
  bool narrow_class_trivial = false;
  /// Some u with u and u + 1 units and u + 1 totally positive.
  std::optional<OrderElement> unit_witness;
  int witness_box = 3;
};

/// Throws Reducible for a reducible cubic. A perfect-square discriminant
/// returns a profile with non_galois = false without further checks; otherwise
/// NonSquarefreeDiscriminant and WrongSignature are enforced.
FieldProfile field_preflight(std::span<const i64> coeffs, int witness_box = 3);

/// Upper bound for (3!/3^3)(4/pi) sqrt|d| as an exact rational.
mpq_class minkowski_bound_upper(const mpz_class& disc);

/// p-adic valuation of a nonzero integer.
int mpz_valuation(mpz_class n, u64 p);
/// Prime factorization of |n| by trial division, ascending primes.
std::vector<std::pair<u64, int>> factor_integer(const mpz_class& n);

}  // namespace adelic
