#include "adelic/certifier.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

#include "adelic/error.hpp"

namespace adelic {

namespace {

using Witness = std::map<std::string, std::string>;

EvidenceStep step(std::string claim, std::string clause, Witness w = {}) {
  return EvidenceStep{std::move(claim), std::move(clause), std::move(w)};
}

Verdict inconclusive(std::string reason, std::vector<EvidenceStep> steps = {}) {
  Verdict v;
  v.status = Status::Inconclusive;
  v.reason = std::move(reason);
  v.steps = std::move(steps);
  return v;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& s : parts) out += (out.empty() ? "" : ",") + s;
  return out;
}

std::string str(i64 v) { return std::to_string(v); }
std::string str(u64 v) { return std::to_string(v); }
std::string str(int v) { return std::to_string(v); }

Witness datum_witness(const FrobeniusDatum& d) {
  return {{"place", d.place.label()}, {"norm", str(d.norm)}, {"count", str(d.count)}, {"trace", str(d.trace)}};
}

std::vector<u64> prime_factors(const mpz_class& n) {
  std::vector<u64> out;
  for (auto [p, e] : factor_integer(n)) out.push_back(p);
  return out;
}

/// Roots mod 9 of x^2 - t x + N lifted from distinct roots mod 3; empty when
/// the roots mod 3 are missing or repeated.
std::vector<u64> distinct_roots_mod9(i64 trace, u64 norm) {
  const i64 t = static_cast<i64>(mod_floor(trace, 9)), n = static_cast<i64>(norm % 9);
  auto f = [&](i64 x, i64 m) { return ((x * x - t * x + n) % m + m) % m; };
  std::vector<u64> roots3;
  for (i64 r = 0; r < 3; ++r)
    if (f(r, 3) == 0) roots3.push_back(r);
  if (roots3.size() != 2) return {};
  std::vector<u64> out;
  for (u64 r : roots3)
    for (i64 a = static_cast<i64>(r); a < 9; a += 3)
      if (f(a, 9) == 0) {
        out.push_back(static_cast<u64>(a));
        break;
      }
  if (out.size() != 2) return {};
  std::sort(out.begin(), out.end());
  return out;
}

struct UnipotentPower {
  u64 e = 1;
  u64 c1 = 0, c2 = 0;
};

/// For roots a, b mod 9 that are units: e = lcm of their orders mod 3 and
/// diag(a, b)^e = I + 3 diag(c1, c2) mod 9.
UnipotentPower unipotent_power(u64 a, u64 b) {
  auto order3 = [](u64 x) -> u64 { return x % 3 == 1 ? 1 : 2; };
  UnipotentPower r;
  r.e = std::lcm(order3(a), order3(b));
  r.c1 = (pow_mod(a, r.e, 9) + 8) % 9 / 3;
  r.c2 = (pow_mod(b, r.e, 9) + 8) % 9 / 3;
  return r;
}

/// The clause of the closing lift step, plus its certificate text.
EvidenceStep lift_step(const LiftEvidence& ev) {
  LiftStep s = lift_predicate(ev);
  return step(s.statement, std::string("lift_") + to_string(s.clause), {{"ell", str(s.ell)}});
}

EvidenceStep det_step() {
  return step("det is the cyclotomic character and K meets Q^cyc only in Q, so det(H) = Z^*", "det_cyclotomic");
}

std::optional<Verdict> failed_prerequisite(const Verdict& v, const std::string& what) {
  if (v.certified()) return std::nullopt;
  return inconclusive(what + ": " + v.reason);
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::Certified: return "certified";
    case Status::Refuted: return "refuted";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<u64> CandidateReport::candidate_list() const {
  std::vector<u64> out;
  for (const auto& [l, why] : candidates) out.push_back(l);
  return out;
}

Verdict check_condition_ii(const FieldProfile& profile) {
  Verdict v;
  Witness w{{"discriminant", profile.discriminant.get_str()}, {"discriminant_square", profile.non_galois ? "no" : "yes"}};
  if (profile.non_galois) {
    v.status = Status::Certified;
    v.steps.push_back(step("K is a non-Galois cubic, so its only subfields are Q and K; K inside Q^cyc would make "
                           "K abelian, hence K meets Q^cyc only in Q",
                           "non_galois_cubic", std::move(w)));
  } else {
    v.status = Status::Refuted;
    v.reason = "abelian cubic lies in Q^cyc";
    v.steps.push_back(step("the discriminant is a square, so K is a cyclic cubic and lies in Q^cyc",
                           "non_galois_cubic", std::move(w)));
  }
  return v;
}

Verdict check_condition_iii(const CubicField& K, const OrderElement& delta, const std::vector<u64>& skip) {
  if (delta.is_zero()) throw Error(ErrorKind::ZeroElement, "delta is zero");
  const auto primes = prime_factors(K.norm(delta));
  for (u64 p : primes)
    if (K.is_ramified(p))
      throw Error(ErrorKind::RamifiedUnsupported, fmt::format("ramified prime {} divides N(delta)", p));
  for (u64 p : primes) {
    if (std::find(skip.begin(), skip.end(), p) != skip.end()) continue;
    std::vector<std::string> labels, vals;
    int odd = 0;
    const auto above = K.split_prime(p);
    for (const auto& P : above) {
      int v = K.element_valuation(delta, P);
      labels.push_back(P.label());
      vals.push_back(str(v));
      odd += v % 2 != 0;
    }
    if (odd == 0 || odd == static_cast<int>(above.size())) continue;
    Verdict v;
    v.status = Status::Certified;
    v.steps.push_back(step(fmt::format("the valuations of delta at the primes over {} have mixed parity, so delta d is a "
                                       "square in K for no squarefree integer d, and sqrt(delta) is not in K^cyc",
                                       p),
                           "mixed_parity", {{"p", str(p)}, {"places", join(labels)}, {"valuations", join(vals)}}));
    return v;
  }
  return inconclusive("every unramified prime has a constant parity vector on delta");
}

CandidateReport bound_exceptional_primes(const WeierstrassModel& E, const FieldProfile& profile,
                                         const SemistabilityReport& semistability,
                                         const std::vector<FrobeniusDatum>& samples) {
  if (!semistability.semistable) throw Error(ErrorKind::NotSemistable, "the curve is not semistable");
  if (!profile.non_galois || !profile.narrow_class_trivial || !profile.unit_witness)
    throw Error(ErrorKind::MissingFieldHypotheses,
                "needs K non-Galois, a trivial narrow class group, and units u, u + 1 with u + 1 totally positive");
  if (samples.empty()) throw Error(ErrorKind::NoSamplePlaces, "no sample places");
  const CubicField& K = E.field();

  CandidateReport r;
  r.samples = samples;
  r.count_gcd = 0;
  for (const auto& d : samples) r.count_gcd = gcd(r.count_gcd, mpz_class(static_cast<unsigned long>(d.count)));

  for (u64 l : {2, 3, 5}) {
    bool ok = false;
    for (const auto& b : semistability.bad_places)
      if (b.v_j && *b.v_j % static_cast<int>(l) != 0) ok = true;
    r.vj_hypothesis[l] = ok;
  }
  for (u64 l : K.ramified_primes()) r.candidates[l] = "ramified in K";
  for (u64 l : {2, 3, 5})
    if (!r.vj_hypothesis[l] && !r.candidates.count(l)) r.candidates[l] = fmt::format("{} divides v(j) at every bad place", l);
  for (u64 l : prime_factors(r.count_gcd))
    if (!r.candidates.count(l)) r.candidates[l] = fmt::format("divides every sample count (gcd {})", r.count_gcd.get_str());
  return r;
}

Verdict frobdisc_check(u64 ell, const std::vector<FrobeniusDatum>& data) {
  if (ell < 5) throw Error(ErrorKind::PrimeTooSmall, fmt::format("the discriminant test needs l >= 5, got {}", ell));
  std::optional<EvidenceStep> s1, s2, t;
  for (const auto& d : data) {
    if (d.place.p == ell) continue;
    const u64 tr = mod_floor(d.trace, ell), det = d.norm % ell;
    const u64 disc = (tr * tr % ell + 4 * (ell - det)) % ell;
    const int leg = legendre(static_cast<i64>(disc), ell);
    Witness w = datum_witness(d);
    w["ell"] = str(ell);
    w["disc_mod_ell"] = str(disc);
    w["legendre"] = str(leg);
    if (!s1 && leg == 1 && tr != 0) {
      w["role"] = "s1";
      s1 = step(fmt::format("Frobenius at {} has square discriminant and nonzero trace mod {}", d.place.label(), ell),
                "frobenius_witness", w);
    }
    if (!s2 && leg == -1 && tr != 0) {
      w["role"] = "s2";
      s2 = step(fmt::format("Frobenius at {} has non-square discriminant and nonzero trace mod {}", d.place.label(), ell),
                "frobenius_witness", w);
    }
    const u64 u = tr * tr % ell * inverse_mod(det, ell) % ell;
    const u64 poly = (u * u + 3 * (ell - u) + 1) % ell;
    if (!t && u != 0 && u != 1 && u != 2 && u != 4 && poly != 0) {
      w["role"] = "t";
      w["u"] = str(u);
      t = step(fmt::format("Frobenius at {} has u = tr^2/det = {} mod {}, not 0, 1, 2, 4 and not a root of u^2 - 3u + 1",
                           d.place.label(), u, ell),
               "frobenius_witness", w);
    }
  }
  std::vector<std::string> missing;
  if (!s1) missing.push_back("s1");
  if (!s2) missing.push_back("s2");
  if (!t) missing.push_back("t");
  if (!missing.empty())
    return inconclusive(fmt::format("no place supplies {} at l = {}; add more places", join(missing), ell));
  Verdict v;
  v.status = Status::Certified;
  v.steps = {*s1, *s2, *t};
  v.steps.push_back(step(fmt::format("H({}) contains SL2(F_{})", ell, ell), "frobenius_discriminants", {{"ell", str(ell)}}));
  return v;
}

Verdict lift_3adic(const std::vector<FrobeniusDatum>& data, bool h3_full) {
  if (!h3_full) throw Error(ErrorKind::MissingPrerequisite, "H(3) = GL2(F_3) has not been established");
  std::vector<std::string> tried;
  for (const auto& d : data) {
    if (d.place.p == 3) continue;
    auto roots = distinct_roots_mod9(d.trace, d.norm);
    if (roots.empty()) {
      tried.push_back(d.place.label() + " (no distinct roots mod 3)");
      continue;
    }
    auto up = unipotent_power(roots[0], roots[1]);
    Mat2 C(static_cast<i64>(up.c1), 0, 0, static_cast<i64>(up.c2), 3);
    auto span = conj_module_span(C, 3);
    if (!span.full()) {
      tried.push_back(fmt::format("{} (span dimension {})", d.place.label(), span.dimension));
      continue;
    }
    Witness w = datum_witness(d);
    w["roots_mod_9"] = fmt::format("{},{}", roots[0], roots[1]);
    Verdict v;
    v.status = Status::Certified;
    v.steps.push_back(step(fmt::format("x^2 - ({})x + {} has distinct roots {} and {} mod 9, so Frobenius at {} is "
                                       "diagonalizable over Z_3",
                                       d.trace, d.norm, roots[0], roots[1], d.place.label()),
                           "charpoly_roots_mod_9", w));
    v.steps.push_back(step(fmt::format("with e = {}, Frobenius to the power e is I + 3 diag({}, {}) mod 9", up.e, up.c1, up.c2),
                           "unipotent_power",
                           {{"place", d.place.label()}, {"e", str(up.e)}, {"c", fmt::format("{},0,0,{}", up.c1, up.c2)}}));
    v.steps.push_back(step("diag(c1, c2) generates (I+3M)/(I+9M) as a GL2(F_3)-module; with H(3) = GL2(F_3) this gives "
                           "H(9) = GL2(Z/9)",
                           "conjugation_span",
                           {{"ell", "3"}, {"c", fmt::format("{},0,0,{}", up.c1, up.c2)}, {"span_dimension", str(span.dimension)}}));
    LiftEvidence ev;
    ev.ell = 3;
    ev.clause = LiftClause::OddSquare;
    ev.surjective_mod_ell = true;
    ev.surjective_mod_ell_squared = true;
    v.steps.push_back(lift_step(ev));
    return v;
  }
  return inconclusive(tried.empty() ? "no Frobenius data away from 3"
                                    : "no Frobenius datum gives a full conjugation span: " + join(tried));
}

Verdict lift_2adic(const WeierstrassModel& E, bool h2_full, bool sign_det_full) {
  if (!h2_full) throw Error(ErrorKind::MissingPrerequisite, "H(2) = GL2(F_2) has not been established");
  if (!sign_det_full) throw Error(ErrorKind::MissingPrerequisite, "(sgn, det)(H) = {+-1} x Z^* has not been established");
  const int sign = E.field().real_sign(E.discriminant());
  Witness sw{{"delta_sign", sign > 0 ? "+1" : "-1"}};
  if (sign <= 0)
    return inconclusive("complex-conjugation trick unavailable: delta is negative in the real embedding",
                        {step("delta is negative in the real embedding", "real_sign", sw)});
  Verdict v;
  v.status = Status::Certified;
  v.steps.push_back(step("delta is positive in the real embedding, so complex conjugation fixes sqrt(delta) and its "
                         "image pi lies in ker(sgn)",
                         "real_sign", sw));
  v.steps.push_back(step("pi has trace 0 and determinant -1, so pi = I mod 2 and pi = I + 2A with A conjugate to "
                         "diag(0, 1)",
                         "complex_conjugation"));
  auto span = conj_module_span(Mat2(0, 0, 0, 1, 2), 2);
  v.steps.push_back(step("diag(0, 1) generates (I+2M)/(I+4M) as a GL2(F_2)-module; with H(2) = GL2(F_2) this gives "
                         "H(4) = GL2(Z/4)",
                         "conjugation_span", {{"ell", "2"}, {"c", "0,0,0,1"}, {"span_dimension", str(span.dimension)}}));
  if (!span.full()) return inconclusive("diag(0, 1) does not span (I+2M)/(I+4M)", v.steps);
  LiftEvidence ev;
  ev.ell = 2;
  ev.clause = LiftClause::TwoAdicMod4SignDet;
  ev.surjective_mod_ell = true;
  ev.surjective_mod_4 = true;
  ev.sign_det_surjective = true;
  v.steps.push_back(lift_step(ev));
  return v;
}

std::vector<PrimeIdeal> default_sample_places(const WeierstrassModel& E, std::size_t budget) {
  const CubicField& K = E.field();
  std::vector<PrimeIdeal> out;
  for (u64 p = 2; out.size() < budget && p < 100000; ++p) {
    if (!is_prime(p) || K.is_ramified(p)) continue;
    for (const auto& P : K.split_prime(p)) {
      if (P.residue_degree != 1 || reduce_curve(E, P).kind != ReductionKind::Good) continue;
      out.push_back(P);
      if (out.size() == budget) break;
    }
  }
  return out;
}

Certificate certify(std::span<const i64> field, const std::array<std::array<long, 3>, 5>& curve,
                    const CertifyOptions& opts) {
  Certificate cert;
  cert.profile = field_preflight(field);
  cert.condition_ii = check_condition_ii(cert.profile);
  if (cert.condition_ii.status == Status::Refuted) {
    cert.final.status = Status::Refuted;
    cert.final.reason = "condition (ii) fails: " + cert.condition_ii.reason;
    return cert;
  }

  const CubicField K = CubicField::create(field);
  const WeierstrassModel E = WeierstrassModel::create(K, curve);

  CurveSummary summary;
  summary.coefficients = E.coefficients();
  summary.delta = E.discriminant();
  summary.c4 = E.c4();
  summary.j_numerator = E.j_numerator();
  auto stage_error = [&](const std::string& stage, const Error& e) {
    cert.final = inconclusive(stage + ": " + e.what());
  };
  try {
    summary.delta_factorization = K.ideal_factorization(summary.delta);
    if (!summary.c4.is_zero()) summary.j_numerator_factorization = K.ideal_factorization(summary.j_numerator);
    summary.semistability = is_semistable(E);
  } catch (const Error& e) {
    cert.curve = summary;
    stage_error("semistability", e);
    return cert;
  }
  cert.curve = summary;

  try {
    cert.condition_iii = check_condition_iii(K, summary.delta, opts.parity_skip);
  } catch (const Error& e) {
    cert.condition_iii = inconclusive(e.what());
  }

  // Frobenius data: the bound's sample plus any extra places, ordered by (p, label)
  std::vector<PrimeIdeal> sample;
  std::vector<FrobeniusDatum> sample_data, data;
  try {
    if (opts.sample_places.empty())
      sample = default_sample_places(E, opts.sample_budget);
    else
      for (const auto& label : opts.sample_places) sample.push_back(K.prime_by_label(label));
    std::vector<PrimeIdeal> all = sample;
    for (const auto& label : opts.places) all.push_back(K.prime_by_label(label));
    std::sort(all.begin(), all.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
      return a.p != b.p ? a.p < b.p : a.index < b.index;
    });
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (const auto& P : all) {
      auto d = frobenius_datum(E, P, opts.max_q);
      data.push_back(d);
      if (std::find(sample.begin(), sample.end(), P) != sample.end()) sample_data.push_back(d);
    }
    cert.exceptional = bound_exceptional_primes(E, cert.profile, summary.semistability, sample_data);
  } catch (const Error& e) {
    stage_error("exceptional-prime bound", e);
    return cert;
  }

  const auto& report = *cert.exceptional;
  const bool ii = cert.condition_ii.certified();
  const bool iii = cert.condition_iii.certified();
  auto guard = [&](auto&& fn) -> Verdict {
    try {
      return fn();
    } catch (const Error& e) {
      return inconclusive(e.what());
    }
  };
  std::vector<std::string> cand_labels;
  for (u64 l : report.candidate_list()) cand_labels.push_back(str(l));
  const Witness bound_witness{{"count_gcd", report.count_gcd.get_str()},
                              {"samples", str(static_cast<u64>(report.samples.size()))},
                              {"candidates", join(cand_labels)}};

  for (u64 l : report.candidate_list()) {
    if (l < 5) continue;
    cert.per_prime[str(l)] = guard([&] {
      if (auto f = failed_prerequisite(cert.condition_ii, "needs condition (ii)")) return *f;
      Verdict v = frobdisc_check(l, data);
      if (!v.certified()) return v;
      v.steps.push_back(det_step());
      LiftEvidence ev;
      ev.ell = l;
      ev.clause = LiftClause::LargeDet;
      ev.surjective_mod_ell = true;
      ev.det_surjective = true;
      v.steps.push_back(lift_step(ev));
      return v;
    });
  }

  auto mod_ell_step = [&](u64 l) {
    return step(fmt::format("H({}) = GL2(F_{}): otherwise {} would divide every sample count", l, l, l), "borel_bound",
                bound_witness);
  };
  cert.per_prime["3"] = guard([&] {
    if (report.candidates.count(3)) return inconclusive("H(3) = GL2(F_3) not established: " + report.candidates.at(3));
    Verdict v = lift_3adic(data, true);
    v.steps.insert(v.steps.begin(), mod_ell_step(3));
    return v;
  });
  cert.per_prime["2"] = guard([&] {
    if (report.candidates.count(2)) return inconclusive("H(2) = GL2(F_2) not established: " + report.candidates.at(2));
    if (!ii || !iii)
      return inconclusive("(sgn, det) surjectivity needs conditions (ii) and (iii)");
    Verdict v = lift_2adic(E, true, true);
    v.steps.insert(v.steps.begin(), mod_ell_step(2));
    return v;
  });
  cert.per_prime["others"] = guard([&] {
    if (auto f = failed_prerequisite(cert.condition_ii, "needs condition (ii)")) return *f;
    Verdict v;
    v.status = Status::Certified;
    v.steps.push_back(step(fmt::format("for every prime l >= 5 outside {{{}}}, H(l) = GL2(F_l): otherwise l would divide "
                                       "every sample count",
                                       join(cand_labels)),
                           "borel_bound", bound_witness));
    v.steps.push_back(det_step());
    v.steps.push_back(step("surjectivity mod l with det(H) = Z_l^* lifts to H_l = GL2(Z_l) for l >= 5", "lift_large_det"));
    return v;
  });

  // assembly
  std::vector<std::pair<std::string, const Verdict*>> parts{{"condition (ii)", &cert.condition_ii},
                                                            {"condition (iii)", &cert.condition_iii}};
  for (const auto& [key, v] : cert.per_prime) parts.emplace_back(key == "others" ? "other primes" : "l = " + key, &v);
  for (const auto& [name, v] : parts)
    if (!v->certified()) {
      cert.final = inconclusive(name + ": " + v->reason);
      return cert;
    }
  cert.final.status = Status::Certified;
  cert.final.steps.push_back(step("(sgn, det)(H) = {+-1} x Z^* by conditions (ii) and (iii), and H_l = GL2(Z_l) for "
                                  "every prime l, so H = GL2(Z^)",
                                  "adelic_assembly"));
  return cert;
}

std::vector<std::string> reverify(const Certificate& cert, u64 max_q) {
  std::vector<std::string> issues;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) issues.push_back(what);
  };
  auto fresh = field_preflight(std::vector<i64>{cert.profile.cubic.a0, cert.profile.cubic.a1, cert.profile.cubic.a2, 1});
  expect(fresh.discriminant == cert.profile.discriminant, "field discriminant differs");
  expect(fresh.non_galois == cert.profile.non_galois, "non-Galois flag differs");
  if (!cert.curve) return issues;

  const CubicField K = CubicField::create(cert.profile.cubic);
  const WeierstrassModel E = WeierstrassModel::create(K, cert.curve->coefficients);
  expect(E.discriminant() == cert.curve->delta, "delta differs");

  auto check_step = [&](const EvidenceStep& s) {
    const auto& w = s.witness;
    auto get = [&](const char* key) {
      auto it = w.find(key);
      if (it == w.end()) throw std::runtime_error(fmt::format("step {} lacks witness field {}", s.clause, key));
      return it->second;
    };
    if (s.clause == "non_galois_cubic") {
      expect(cubic_discriminant(cert.profile.cubic).get_str() == get("discriminant"), "discriminant witness differs");
    } else if (s.clause == "mixed_parity") {
      std::vector<std::string> vals;
      for (const auto& P : K.split_prime(std::stoull(get("p")))) vals.push_back(str(K.element_valuation(E.discriminant(), P)));
      expect(join(vals) == get("valuations"), "valuation vector at " + get("p") + " differs");
    } else if (s.clause == "frobenius_witness" || s.clause == "charpoly_roots_mod_9") {
      auto d = frobenius_datum(E, K.prime_by_label(get("place")), max_q);
      expect(str(d.norm) == get("norm") && str(d.count) == get("count") && str(d.trace) == get("trace"),
             "point count at " + get("place") + " differs");
      if (s.clause == "charpoly_roots_mod_9") {
        auto roots = distinct_roots_mod9(d.trace, d.norm);
        expect(roots.size() == 2 && fmt::format("{},{}", roots[0], roots[1]) == get("roots_mod_9"),
               "roots mod 9 at " + get("place") + " differ");
        return;
      }
      const u64 ell = std::stoull(get("ell"));
      const u64 tr = mod_floor(d.trace, ell), det = d.norm % ell;
      const i64 disc = static_cast<i64>(tr * tr) - 4 * static_cast<i64>(det);
      const int leg = legendre(disc, ell);
      expect(str(leg) == get("legendre"), "Legendre symbol at " + get("place") + " differs");
      const std::string role = get("role");
      if (role == "s1") expect(leg == 1 && tr != 0, "s1 conditions fail at " + get("place"));
      if (role == "s2") expect(leg == -1 && tr != 0, "s2 conditions fail at " + get("place"));
      if (role == "t") {
        u64 u = tr * tr % ell * inverse_mod(det, ell) % ell;
        expect(str(u) == get("u"), "u at " + get("place") + " differs");
        expect(u != 0 && u != 1 && u != 2 && u != 4 && (u * u + 3 * (ell - u) + 1) % ell != 0,
               "t conditions fail at " + get("place"));
      }
    } else if (s.clause == "unipotent_power") {
      auto d = frobenius_datum(E, K.prime_by_label(get("place")), max_q);
      auto roots = distinct_roots_mod9(d.trace, d.norm);
      if (roots.size() != 2) {
        issues.push_back("no distinct roots mod 9 at " + get("place"));
        return;
      }
      auto up = unipotent_power(roots[0], roots[1]);
      expect(str(up.e) == get("e") && fmt::format("{},0,0,{}", up.c1, up.c2) == get("c"),
             "unipotent power at " + get("place") + " differs");
    } else if (s.clause == "conjugation_span") {
      const u64 ell = std::stoull(get("ell"));
      std::vector<i64> c;
      std::string cs = get("c");
      for (size_t pos = 0; pos <= cs.size();) {
        size_t next = cs.find(',', pos);
        if (next == std::string::npos) next = cs.size();
        c.push_back(std::stoll(cs.substr(pos, next - pos)));
        pos = next + 1;
      }
      auto span = conj_module_span(Mat2(c.at(0), c.at(1), c.at(2), c.at(3), ell), ell);
      expect(str(span.dimension) == get("span_dimension"), "conjugation span differs");
    } else if (s.clause == "real_sign") {
      expect((K.real_sign(E.discriminant()) > 0 ? "+1" : "-1") == get("delta_sign"), "sign of delta differs");
    } else if (s.clause == "borel_bound") {
      expect(cert.exceptional && cert.exceptional->count_gcd.get_str() == get("count_gcd"), "sample gcd differs");
    }
  };
  auto check_verdict = [&](const Verdict& v) {
    for (const auto& s : v.steps) check_step(s);
  };

  check_verdict(cert.condition_ii);
  check_verdict(cert.condition_iii);
  if (cert.exceptional) {
    mpz_class g = 0;
    for (const auto& d : cert.exceptional->samples) {
      auto fresh_d = frobenius_datum(E, K.prime_by_label(d.place.label()), max_q);
      expect(fresh_d.count == d.count && fresh_d.trace == d.trace, "sample count at " + d.place.label() + " differs");
      g = gcd(g, mpz_class(static_cast<unsigned long>(fresh_d.count)));
    }
    expect(g == cert.exceptional->count_gcd, "sample gcd differs");
  }
  for (const auto& [key, v] : cert.per_prime) check_verdict(v);
  check_verdict(cert.final);
  return issues;
}

}  // namespace adelic
