#include "adelic/weierstrass.hpp"

#include <cmath>

#include "adelic/error.hpp"

namespace adelic {

Invariants compute_invariants(const std::array<OrderElement, 5>& a) {
  const auto& [a1, a2, a3, a4, a6] = a;
  Invariants r;
  r.b2 = a1 * a1 + a2 * 4;
  r.b4 = a4 * 2 + a1 * a3;
  r.b6 = a3 * a3 + a6 * 4;
  r.b8 = a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  r.c4 = r.b2 * r.b2 - r.b4 * 24;
  r.c6 = -(r.b2.pow(3)) + r.b2 * r.b4 * 36 - r.b6 * 216;
  r.delta = -(r.b2 * r.b2 * r.b8) - r.b4.pow(3) * 8 - r.b6 * r.b6 * 27 + r.b2 * r.b4 * r.b6 * 9;
  return r;
}

WeierstrassModel WeierstrassModel::create(const CubicField& K, std::array<OrderElement, 5> a) {
  for (const auto& x : a)
    if (!(x.cubic() == K.cubic())) throw std::invalid_argument("coefficient from a different field");
  Invariants inv = compute_invariants(a);
  if (!(inv.c4.pow(3) - inv.c6 * inv.c6 == inv.delta * 1728))
    throw std::logic_error("c4^3 - c6^2 != 1728 delta");
  if (inv.delta.is_zero()) throw Error(ErrorKind::SingularModel, "discriminant is zero");
  return WeierstrassModel(K, std::move(a), std::move(inv));
}

WeierstrassModel WeierstrassModel::create(const CubicField& K, const std::array<std::array<long, 3>, 5>& coords) {
  std::array<OrderElement, 5> a;
  for (int i = 0; i < 5; ++i) a[i] = K.element(coords[i][0], coords[i][1], coords[i][2]);
  return create(K, std::move(a));
}

const char* to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::Good: return "good";
    case ReductionKind::Multiplicative: return "multiplicative";
    case ReductionKind::Additive: return "additive";
  }
  return "?";
}

ReducedCurve reduce_curve(const WeierstrassModel& E, const PrimeIdeal& P) {
  const CubicField& K = E.field();
  ReducedCurve C;
  C.field = P.residue_field;
  for (int i = 0; i < 5; ++i) C.a[i] = K.reduce_mod_prime(E.coefficients()[i], P);
  C.delta = K.reduce_mod_prime(E.discriminant(), P);
  C.c4 = K.reduce_mod_prime(E.c4(), P);
  if (!C.delta.is_zero())
    C.kind = ReductionKind::Good;
  else
    C.kind = C.c4.is_zero() ? ReductionKind::Additive : ReductionKind::Multiplicative;
  return C;
}

SemistabilityReport is_semistable(const WeierstrassModel& E) {
  const CubicField& K = E.field();
  SemistabilityReport report;
  report.semistable = true;
  for (const auto& [P, v] : K.ideal_factorization(E.discriminant())) {
    if (v >= 12)
      throw Error(ErrorKind::MinimalityUnknown,
                  "v(delta) = " + std::to_string(v) + " at " + P.label() + ", cannot certify a minimal model");
    BadPlace bad;
    bad.place = P;
    bad.v_delta = v;
    if (!E.c4().is_zero()) {
      bad.v_c4 = K.element_valuation(E.c4(), P);
      bad.v_j = 3 * *bad.v_c4 - v;
    }
    bad.kind = reduce_curve(E, P).kind;
    if (bad.kind != ReductionKind::Multiplicative) report.semistable = false;
    report.bad_places.push_back(std::move(bad));
  }
  return report;
}

u64 count_points(const ReducedCurve& C, u64 max_q) {
  if (C.kind != ReductionKind::Good) throw Error(ErrorKind::BadReduction, "curve has bad reduction");
  const FqContext& F = *C.field;
  const u64 q = F.order();
  if (q > max_q)
    throw Error(ErrorKind::FieldTooLarge, "residue field of order " + std::to_string(q) + " exceeds max_q " +
                                              std::to_string(max_q));
  const auto& [a1, a2, a3, a4, a6] = C.a;
  std::vector<FqElement> elems;
  elems.reserve(q);
  for (u64 i = 0; i < q; ++i) elems.push_back(F.element(i));

  u64 count = 1;  // point at infinity
  for (const auto& x : elems) {
    FqElement lin = a1 * x + a3;
    FqElement rhs = ((x + a2) * x + a4) * x + a6;
    for (const auto& y : elems)
      if ((y + lin) * y == rhs) ++count;
  }
  return count;
}

FrobeniusDatum frobenius_datum(const WeierstrassModel& E, const PrimeIdeal& P, u64 max_q) {
  ReducedCurve C = reduce_curve(E, P);
  FrobeniusDatum d;
  d.place = P;
  d.norm = P.norm();
  d.count = count_points(C, max_q);
  d.trace = static_cast<i64>(d.norm) + 1 - static_cast<i64>(d.count);
  // |t| <= 2 sqrt(N)  <=>  t^2 <= 4N
  if (static_cast<__int128>(d.trace) * d.trace > static_cast<__int128>(4) * d.norm)
    throw Error(ErrorKind::HasseViolation, "trace " + std::to_string(d.trace) + " at " + P.label());
  return d;
}

}  // namespace adelic
