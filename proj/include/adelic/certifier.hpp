#pragma once

// Surjectivity certificates for the adelic representation of a semistable
// curve over a non-Galois cubic field with trivial narrow class group.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adelic/cubic_field.hpp"
#include "adelic/gl2_groups.hpp"
#include "adelic/weierstrass.hpp"

namespace adelic {

enum class Status { Certified, Refuted, Inconclusive };
const char* to_string(Status s);

struct EvidenceStep {
  std::string claim;
  /// Short tag naming the argument used, e.g. "mixed_parity".
  std::string clause;
  std::map<std::string, std::string> witness;
};

struct Verdict {
  Status status = Status::Inconclusive;
  std::vector<EvidenceStep> steps;
  /// Why the verdict is not Certified: the first failing hypothesis.
  std::string reason;

  bool certified() const { return status == Status::Certified; }
};

struct CandidateReport {
  std::vector<FrobeniusDatum> samples;
  mpz_class count_gcd;
  /// Primes that may still be exceptional mod l, with the reason each was kept.
  std::map<u64, std::string> candidates;
  /// For l = 2, 3, 5: whether some bad place has l not dividing v(j).
  std::map<u64, bool> vj_hypothesis;

  std::vector<u64> candidate_list() const;
};

struct CurveSummary {
  std::array<OrderElement, 5> coefficients;
  OrderElement delta, c4, j_numerator;
  std::vector<IdealFactor> delta_factorization;
  std::vector<IdealFactor> j_numerator_factorization;
  SemistabilityReport semistability;
};

struct Certificate {
  FieldProfile profile;
  std::optional<CurveSummary> curve;
  Verdict condition_ii;
  Verdict condition_iii;
  std::optional<CandidateReport> exceptional;
  /// Keys "2", "3", each extra candidate, and "others".
  std::map<std::string, Verdict> per_prime;
  Verdict final;
};

struct CertifyOptions {
  /// Number of default sample places (good degree-1 places of small primes).
  std::size_t sample_budget = 8;
  /// When nonempty, replaces the default sample used to bound exceptional primes.
  std::vector<std::string> sample_places;
  /// Extra places whose Frobenius data feed the per-prime checks.
  std::vector<std::string> places;
  u64 max_q = kDefaultMaxQ;
  /// Rational primes the parity test for condition (iii) must ignore.
  std::vector<u64> parity_skip;
};

Verdict check_condition_ii(const FieldProfile& profile);

/// Mixed-parity test. Throws RamifiedUnsupported if a ramified prime divides
/// N(delta).
Verdict check_condition_iii(const CubicField& K, const OrderElement& delta, const std::vector<u64>& skip = {});

/// Throws NotSemistable, MissingFieldHypotheses or NoSamplePlaces.
CandidateReport bound_exceptional_primes(const WeierstrassModel& E, const FieldProfile& profile,
                                         const SemistabilityReport& semistability,
                                         const std::vector<FrobeniusDatum>& samples);

/// Scans for s1, s2 and t among the data, ignoring places above l. Throws
/// PrimeTooSmall for l < 5.
Verdict frobdisc_check(u64 ell, const std::vector<FrobeniusDatum>& data);

/// Throws MissingPrerequisite unless H(3) = GL2(F_3) has been established.
Verdict lift_3adic(const std::vector<FrobeniusDatum>& data, bool h3_full);

/// Throws MissingPrerequisite unless H(2) = GL2(F_2) and the (sgn, det)
/// surjectivity have been established.
Verdict lift_2adic(const WeierstrassModel& E, bool h2_full, bool sign_det_full);

/// Good degree-1 places of the smallest unramified primes, at most budget of them.
std::vector<PrimeIdeal> default_sample_places(const WeierstrassModel& E, std::size_t budget);

Certificate certify(std::span<const i64> field, const std::array<std::array<long, 3>, 5>& curve,
                    const CertifyOptions& opts = {});

/// Recomputes every witness in a certificate from scratch (point counts,
/// Legendre symbols, spans, valuations). Returns the discrepancies found.
std::vector<std::string> reverify(const Certificate& cert, u64 max_q = kDefaultMaxQ);

/// Canonical JSON: sorted keys, integers as decimal strings, schema "adelic-cert/1".
std::string certificate_json(const Certificate& cert);
/// Human-readable report.
std::string certificate_text(const Certificate& cert);

}  // namespace adelic
