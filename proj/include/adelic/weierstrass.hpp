#pragma once

// Weierstrass models y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Z[alpha].

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "adelic/cubic_field.hpp"

namespace adelic {

inline constexpr u64 kDefaultMaxQ = 10000;

struct Invariants {
  OrderElement b2, b4, b6, b8, c4, c6, delta;
};

/// The standard invariants. Does not check that delta is nonzero.
Invariants compute_invariants(const std::array<OrderElement, 5>& a);

class WeierstrassModel {
 public:
  /// Coefficients in the order a1, a2, a3, a4, a6. Throws SingularModel if
  /// the discriminant vanishes.
  static WeierstrassModel create(const CubicField& K, std::array<OrderElement, 5> a);
  /// Convenience: integer coordinates over the alpha basis for each coefficient.
  static WeierstrassModel create(const CubicField& K, const std::array<std::array<long, 3>, 5>& coords);

  const CubicField& field() const { return K_; }
  const std::array<OrderElement, 5>& coefficients() const { return a_; }
  const Invariants& invariants() const { return inv_; }
  const OrderElement& discriminant() const { return inv_.delta; }
  const OrderElement& c4() const { return inv_.c4; }
  /// j = c4^3 / delta, kept as the formal pair.
  OrderElement j_numerator() const { return inv_.c4.pow(3); }

 private:
  WeierstrassModel(CubicField K, std::array<OrderElement, 5> a, Invariants inv)
      : K_(std::move(K)), a_(std::move(a)), inv_(std::move(inv)) {}

  CubicField K_;
  std::array<OrderElement, 5> a_;
  Invariants inv_;
};

enum class ReductionKind { Good, Multiplicative, Additive };
const char* to_string(ReductionKind k);

struct ReducedCurve {
  std::shared_ptr<const FqContext> field;
  /// a1, a2, a3, a4, a6 reduced.
  std::array<FqElement, 5> a;
  FqElement delta;
  FqElement c4;
  ReductionKind kind = ReductionKind::Good;
};

/// Throws RamifiedUnsupported at ramified primes.
ReducedCurve reduce_curve(const WeierstrassModel& E, const PrimeIdeal& P);

struct BadPlace {
  PrimeIdeal place;
  int v_delta = 0;
  /// Empty when c4 = 0.
  std::optional<int> v_c4;
  /// 3 v(c4) - v(delta); empty when c4 = 0.
  std::optional<int> v_j;
  ReductionKind kind = ReductionKind::Additive;
};

struct SemistabilityReport {
  bool semistable = false;
  std::vector<BadPlace> bad_places;
};

/// Bad places are the support of (delta). Throws MinimalityUnknown when some
/// v(delta) >= 12 and RamifiedUnsupported if a ramified prime divides N(delta).
SemistabilityReport is_semistable(const WeierstrassModel& E);

/// #E(F_q) by enumerating every (x, y). Throws BadReduction for singular
/// curves and FieldTooLarge when q > max_q.
u64 count_points(const ReducedCurve& C, u64 max_q = kDefaultMaxQ);

struct FrobeniusDatum {
  PrimeIdeal place;
  u64 norm = 0;
  u64 count = 0;
  i64 trace = 0;
};

/// Throws BadReduction, RamifiedUnsupported, FieldTooLarge, or HasseViolation.
FrobeniusDatum frobenius_datum(const WeierstrassModel& E, const PrimeIdeal& P, u64 max_q = kDefaultMaxQ);

}  // namespace adelic
