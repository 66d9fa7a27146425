#pragma once

// Exact arithmetic in Z/nZ, prime fields and their extensions of degree at
// most three, plus factorization of low-degree polynomials over F_p.

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adelic/error.hpp"

namespace adelic {

using i64 = std::int64_t;
using u64 = std::uint64_t;

bool is_prime(u64 n);

/// Least nonnegative residue of a modulo n.
u64 mod_floor(i64 a, u64 n);
u64 mul_mod(u64 a, u64 b, u64 n);
u64 pow_mod(u64 base, u64 exp, u64 n);
/// Throws NotInvertible when gcd(a, n) != 1.
u64 inverse_mod(u64 a, u64 n);

class ZModN {
 public:
  ZModN(i64 value, u64 modulus);

  u64 value() const { return value_; }
  u64 modulus() const { return modulus_; }

  ZModN operator+(const ZModN& o) const;
  ZModN operator-(const ZModN& o) const;
  ZModN operator*(const ZModN& o) const;
  ZModN operator-() const;
  ZModN pow(u64 e) const;
  ZModN inverse() const;
  bool is_unit() const;

  friend bool operator==(const ZModN&, const ZModN&) = default;

 private:
  ZModN(u64 value, u64 modulus, int) : value_(value), modulus_(modulus) {}
  u64 value_;
  u64 modulus_;
};

/// Polynomial over F_p, coefficients low degree first, no trailing zeros.
/// The zero polynomial has an empty coefficient list.
struct PolyFp {
  u64 p = 2;
  std::vector<u64> c;

  static PolyFp from_integers(std::span<const i64> coeffs, u64 p);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  u64 eval(u64 x) const;
  void trim();
  std::string str(char var = 'x') const;

  friend bool operator==(const PolyFp&, const PolyFp&) = default;
};

PolyFp poly_add(const PolyFp& a, const PolyFp& b);
PolyFp poly_sub(const PolyFp& a, const PolyFp& b);
PolyFp poly_mul(const PolyFp& a, const PolyFp& b);
/// Quotient and remainder; b must be nonzero.
std::pair<PolyFp, PolyFp> poly_divmod(const PolyFp& a, const PolyFp& b);
PolyFp poly_derivative(const PolyFp& a);
/// Monic gcd (zero if both inputs are zero).
PolyFp poly_gcd(PolyFp a, PolyFp b);

struct PolyFactor {
  PolyFp factor;
  int multiplicity = 1;
  friend bool operator==(const PolyFactor&, const PolyFactor&) = default;
};

/// Factors a monic integer polynomial of degree <= 3 modulo the prime p.
/// Exhaustive root search strips linear factors; a rootless remainder of
/// degree 2 or 3 is irreducible. Output ordered by ascending degree, then
/// lexicographically on the low-degree-first coefficient lists.
std::vector<PolyFactor> factor_poly_mod_p(std::span<const i64> monic_coeffs, u64 p);

/// Legendre symbol via Euler's criterion. Throws EvenModulus for ell == 2.
int legendre(i64 a, u64 ell);

class FqElement;

/// F_q = F_p[x]/(g) with g monic irreducible of degree 1..3.
class FqContext {
 public:
  static std::shared_ptr<const FqContext> create(u64 p, const PolyFp& modulus);
  static std::shared_ptr<const FqContext> prime_field(u64 p);

  u64 characteristic() const { return p_; }
  int degree() const { return f_; }
  u64 order() const { return q_; }
  const PolyFp& modulus() const { return modulus_; }

  FqElement zero() const;
  FqElement one() const;
  /// The class of x, i.e. the image of the defining generator.
  FqElement generator() const;
  FqElement from_int(i64 v) const;
  /// Reduces an arbitrary polynomial over F_p modulo g.
  FqElement from_poly(const PolyFp& poly) const;
  /// Bijection [0, q) -> F_q through base-p digits of the coefficients.
  FqElement element(u64 index) const;

 private:
  FqContext(u64 p, PolyFp modulus);
  friend class FqElement;

  u64 p_;
  int f_;
  u64 q_;
  PolyFp modulus_;
};

/// Element of an FqContext. Holds a non-owning pointer to its context, so the
/// shared_ptr returned by FqContext::create must outlive it.
class FqElement {
 public:
  FqElement() = default;

  const FqContext& context() const { return *ctx_; }
  const std::array<u64, 3>& coeffs() const { return c_; }
  u64 index() const;
  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }
  bool is_one() const { return c_[0] == 1 && c_[1] == 0 && c_[2] == 0; }

  FqElement operator+(const FqElement& o) const;
  FqElement operator-(const FqElement& o) const;
  FqElement operator-() const;
  FqElement operator*(const FqElement& o) const;
  FqElement pow(u64 e) const;
  /// Throws NotInvertible on zero.
  FqElement inverse() const;

  std::string str() const;

  friend bool operator==(const FqElement& a, const FqElement& b) { return a.c_ == b.c_; }

 private:
  friend class FqContext;
  FqElement(const FqContext* ctx, std::array<u64, 3> c) : ctx_(ctx), c_(c) {}

  const FqContext* ctx_ = nullptr;
  std::array<u64, 3> c_{};
};

/// Evaluates a polynomial given by its low-degree-first coefficients.
FqElement fq_eval(std::span<const FqElement> poly, const FqElement& x);

/// Root multiset (with multiplicity, ascending by element index) of a nonzero
/// polynomial of degree <= 3 over F_q, found by exhaustive evaluation.
std::vector<FqElement> fq_roots(std::span<const FqElement> poly);

}  // namespace adelic
