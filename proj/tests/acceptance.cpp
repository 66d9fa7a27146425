// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all pass.

#include <fmt/format.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "adelic/certifier.hpp"
#include "adelic/cli.hpp"
#include "adelic/group_facts.hpp"

using namespace adelic;

namespace {

const std::vector<i64> kField{1, 1, 0, 1};
const std::array<std::array<long, 3>, 5> kCurve{{{2, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 0}, {0, 0, 0}}};

const char* kConfig = R"(field = [1, 1, 0, 1]
a1 = [2, 0, 0]
a2 = [-1, 0, 0]
a3 = [0, 1, 0]
a4 = [0, 0, 0]
a6 = [0, 0, 0]
sample_places = [Q_11, Q_23]
places = [(7), Q_11, Q_23, Q_29]
)";

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string config_path() {
  auto path = std::filesystem::temp_directory_path() / "adelic_acceptance.conf";
  std::ofstream(path) << kConfig;
  return path.string();
}

std::string place_of(const Verdict& v, const std::string& role) {
  for (const auto& s : v.steps)
    if (s.witness.count("role") && s.witness.at("role") == role) return s.witness.at("place");
  return "none";
}

std::string witness(const Verdict& v, const std::string& role, const std::string& key) {
  for (const auto& s : v.steps)
    if (s.witness.count("role") && s.witness.at("role") == role && s.witness.count(key)) return s.witness.at(key);
  return "none";
}

Outcome frobenius_table() {
  Outcome o;
  std::ostringstream out, err;
  int code = run_cli({"frobenius-table", "--config", config_path()}, out, err);
  o.require(code == kExitOk, fmt::format("exit {}", code));
  std::istringstream lines(out.str());
  std::string header, label, f;
  std::getline(lines, header);
  std::vector<std::array<long, 3>> rows;
  for (std::string line; std::getline(lines, line);) {
    std::istringstream ls(line);
    std::array<long, 3> r{};
    ls >> label >> f >> r[0] >> r[1] >> r[2];
    rows.push_back(r);
  }
  const std::vector<std::array<long, 3>> expected{{343, 324, 20}, {11, 16, -4}, {23, 15, 9}, {29, 24, 6}};
  o.require(rows == expected, "rows differ:\n" + out.str());
  if (o.pass) o.detail = "(7) 343/324/20, Q_11 11/16/-4, Q_23 23/15/9, Q_29 29/24/6";
  return o;
}

Outcome discriminant_arithmetic() {
  Outcome o;
  auto K = CubicField::create(kField);
  auto E = WeierstrassModel::create(K, kCurve);
  auto fac = K.ideal_factorization(E.discriminant());
  o.require(fac.size() == 2, fmt::format("{} prime factors", fac.size()));
  if (fac.size() == 2) {
    o.require(fac[0].prime.label() == "P_131" && fac[0].exponent == 1, "first factor is not P_131^1");
    o.require(fac[1].prime.label() == "Q_2207" && fac[1].exponent == 1, "second factor is not Q_2207^1");
  }
  auto above2207 = K.split_prime(2207);
  int partner_f = 0;
  for (const auto& P : above2207)
    if (P.label() != "Q_2207") partner_f = P.residue_degree;
  o.require(above2207.size() == 2 && partner_f == 2, "partner of Q_2207 is not of degree 2");
  auto above131 = K.split_prime(131);
  o.require(above131.size() == 3, "131 does not split completely");
  for (const auto& P : above131) o.require(P.residue_degree == 1, P.label() + " has degree > 1");
  auto semi = is_semistable(E);
  o.require(semi.bad_places.size() == 2, "expected two bad places");
  for (const auto& b : semi.bad_places) o.require(b.v_j && *b.v_j == -1, "v(j) != -1 at " + b.place.label());
  if (o.pass) o.detail = "(delta) = P_131 Q_2207, f(P_2207) = 2, 131 = P Q R, v(j) = -1 twice";
  return o;
}

Outcome field_preflight_check() {
  Outcome o;
  auto p = field_preflight(kField);
  auto K = CubicField::create(kField);
  o.require(p.discriminant == -31, "disc " + p.discriminant.get_str());
  o.require(p.non_galois, "not non-Galois");
  o.require(p.minkowski_bound < 2, "Minkowski bound " + p.minkowski_bound.get_str());
  o.require(p.class_number_one && p.narrow_class_trivial, "class group not shown trivial");
  o.require(p.unit_witness && *p.unit_witness == K.alpha(), "unit witness is not alpha");
  o.require(K.is_unit(K.alpha()) && K.is_unit(K.alpha() + K.one()), "alpha or alpha + 1 not a unit");
  o.require(K.real_sign(K.alpha() + K.one()) > 0, "alpha + 1 not totally positive");
  if (o.pass) o.detail = fmt::format("disc -31, non-Galois, Minkowski bound {:.4f} < 2, u = alpha", p.minkowski_bound.get_d());
  return o;
}

Outcome exceptional_bound() {
  Outcome o;
  auto K = CubicField::create(kField);
  auto E = WeierstrassModel::create(K, kCurve);
  auto r = bound_exceptional_primes(E, field_preflight(kField), is_semistable(E),
                                    {frobenius_datum(E, K.prime_by_label("Q_11")),
                                     frobenius_datum(E, K.prime_by_label("Q_23"))});
  o.require(r.count_gcd == 1, "gcd " + r.count_gcd.get_str());
  o.require(r.candidate_list() == std::vector<u64>{31}, "candidates differ from {31}");
  o.require(r.candidates.count(31) && r.candidates.at(31) == "ramified in K", "31 not kept as ramified");
  if (o.pass) o.detail = "counts 16, 15, gcd 1, candidates {31} (ramified)";
  return o;
}

Outcome frobdisc_31() {
  Outcome o;
  auto K = CubicField::create(kField);
  auto E = WeierstrassModel::create(K, kCurve);
  auto d7 = frobenius_datum(E, K.prime_by_label("(7)")), d11 = frobenius_datum(E, K.prime_by_label("Q_11"));
  auto v = frobdisc_check(31, {d7, d11});
  o.require(v.certified(), "not certified: " + v.reason);
  o.require(place_of(v, "s1") == "P_7" && legendre(20, 31) == 1 && witness(v, "s1", "disc_mod_ell") == "20",
            "s1 is not Frobenius at (7) with square discriminant 20");
  o.require(place_of(v, "s2") == "Q_11" && legendre(3, 31) == -1 && witness(v, "s2", "disc_mod_ell") == "3",
            "s2 is not Frobenius at Q_11 with non-square discriminant 3");
  const u64 u7 = 400 % 31 * inverse_mod(343 % 31, 31) % 31;
  o.require(place_of(v, "t") == "P_7" && witness(v, "t", "u") == "10",
            fmt::format("t is not Frobenius at (7) with u = 10: at (7) u = t^2/N = {} mod 31 and u^2 - 3u + 1 = {} "
                        "mod 31, so (7) cannot serve as t; the scan took t at {} with u = {}",
                        u7, (u7 * u7 + 3 * (31 - u7) + 1) % 31, place_of(v, "t"), witness(v, "t", "u")));
  return o;
}

Outcome lift_three() {
  Outcome o;
  auto K = CubicField::create(kField);
  auto E = WeierstrassModel::create(K, kCurve);
  auto d29 = frobenius_datum(E, K.prime_by_label("Q_29"));
  o.require(d29.trace == 6 && d29.norm == 29, "Q_29 datum is not (6, 29)");
  auto v = lift_3adic({d29}, true);
  o.require(v.certified(), "not certified: " + v.reason);
  if (v.certified()) {
    o.require(v.steps[0].witness.at("roots_mod_9") == "7,8", "roots mod 9 are not {7, 8}");
    o.require(v.steps[2].witness.at("span_dimension") == "4", "span not full");
  }
  if (o.pass) o.detail = "roots {7, 8} mod 9, C = diag(1, 0), span dimension 4";
  return o;
}

Outcome lift_two() {
  Outcome o;
  auto K = CubicField::create(kField);
  auto E = WeierstrassModel::create(K, kCurve);
  o.require(K.real_sign(E.discriminant()) == 1, "delta is not positive");
  o.require(conj_module_span(Mat2(0, 0, 0, 1, 2), 2).dimension == 4, "span of diag(0, 1) is not 4-dimensional");
  auto v = lift_2adic(E, true, true);
  o.require(v.certified(), "not certified: " + v.reason);
  o.require(!v.steps.empty() && v.steps.back().clause == "lift_two_adic_mod4_sign_det", "wrong closing clause");
  if (o.pass) o.detail = "sign(delta) = +1, span dimension 4, lift from GL2(Z/4) with (sgn, det) full";
  return o;
}

Outcome end_to_end() {
  Outcome o;
  std::ostringstream out, err;
  int code = run_cli({"certify", "--config", config_path()}, out, err);
  o.require(code == kExitOk, fmt::format("exit {}: {}", code, err.str()));
  o.require(out.str().find("\nfinal: certified") != std::string::npos, "final verdict is not certified");
  if (o.pass) o.detail = "exit 0, final certified";
  return o;
}

Outcome group_facts() {
  Outcome o;
  GroupFactsOptions opts;
  opts.samples = 200;
  auto report = verify_group_facts(opts);
  for (const auto& c : report.checks) o.require(c.passed, c.name + " failed: " + c.witness);
  for (const auto& c : report.checks)
    if (c.name == "index2_count_mod8") o.require(c.samples == 7, "index-2 subgroup count is not 7");
  if (o.pass) o.detail = fmt::format("{} checks, 200 random samples each where sampled", report.checks.size());
  return o;
}

Outcome properties() {
  Outcome o;
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<long> d(-50, 50);
  auto K = CubicField::create(kField);
  auto E = WeierstrassModel::create(K, kCurve);
  auto random_element = [&] { return K.element(d(rng), d(rng), d(rng)); };

  // residue maps are ring homomorphisms
  int hom_fail = 0;
  std::vector<PrimeIdeal> primes;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 37, 41})
    for (const auto& P : K.split_prime(p)) primes.push_back(P);
  for (int i = 0; i < 300; ++i) {
    auto x = random_element(), y = random_element();
    const auto& P = primes[i % primes.size()];
    hom_fail += !(K.reduce_mod_prime(x * y, P) == K.reduce_mod_prime(x, P) * K.reduce_mod_prime(y, P));
    hom_fail += !(K.reduce_mod_prime(x + y, P) == K.reduce_mod_prime(x, P) + K.reduce_mod_prime(y, P));
    const u64 n = 2 + rng() % 1000;
    const i64 a = d(rng), b = d(rng);
    hom_fail += (ZModN(a, n) * ZModN(b, n)).value() != mod_floor(a * b, n);
  }
  o.require(hom_fail == 0, fmt::format("{} homomorphism failures", hom_fail));

  // valuations are additive
  int val_fail = 0;
  for (int i = 0; i < 200; ++i) {
    auto x = random_element(), y = random_element();
    if (x.is_zero() || y.is_zero()) continue;
    const auto& P = primes[i % primes.size()];
    val_fail += K.element_valuation(x * y, P) != K.element_valuation(x, P) + K.element_valuation(y, P);
  }
  o.require(val_fail == 0, fmt::format("{} valuation failures", val_fail));

  // c4^3 - c6^2 = 1728 delta
  int inv_fail = 0;
  for (int i = 0; i < 200; ++i) {
    std::array<OrderElement, 5> a{random_element(), random_element(), random_element(), random_element(),
                                  random_element()};
    auto inv = compute_invariants(a);
    inv_fail += !(inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6 == inv.delta * 1728);
  }
  o.require(inv_fail == 0, fmt::format("{} invariant identity failures", inv_fail));

  // Hasse bound at every good unramified place of norm below 400
  int hasse = 0;
  for (u64 p = 2; p < 400; ++p) {
    if (!is_prime(p) || K.is_ramified(p)) continue;
    for (const auto& P : K.split_prime(p)) {
      if (P.norm() >= 400 || reduce_curve(E, P).kind != ReductionKind::Good) continue;
      auto fd = frobenius_datum(E, P);
      hasse += fd.trace * fd.trace > 4 * static_cast<i64>(fd.norm);
    }
  }
  o.require(hasse == 0, fmt::format("{} Hasse violations", hasse));

  // the certificate re-verifies and the JSON is stable
  CertifyOptions opts;
  opts.sample_places = {"Q_11", "Q_23"};
  opts.places = {"(7)", "Q_11", "Q_23", "Q_29"};
  auto cert = certify(kField, kCurve, opts);
  auto issues = reverify(cert);
  o.require(issues.empty(), "re-verification: " + (issues.empty() ? "" : issues[0]));
  o.require(certificate_json(cert) == certificate_json(certify(kField, kCurve, opts)), "JSON not byte-stable");

  // ablation: removing places or parity witnesses never yields a certificate
  const std::vector<std::string> places{"(7)", "Q_11", "Q_23", "Q_29"};
  std::vector<bool> ok(16);
  for (unsigned mask = 0; mask < 16; ++mask) {
    CertifyOptions ab;
    ab.sample_places = opts.sample_places;
    for (unsigned i = 0; i < 4; ++i)
      if (mask >> i & 1) ab.places.push_back(places[i]);
    ok[mask] = certify(kField, kCurve, ab).final.certified();
  }
  int mono = 0;
  for (unsigned a = 0; a < 16; ++a)
    for (unsigned b = 0; b < 16; ++b) mono += (a & b) == a && ok[a] && !ok[b];
  CertifyOptions skip = opts;
  skip.parity_skip = {131, 2207};
  mono += certify(kField, kCurve, skip).final.certified();
  o.require(mono == 0 && ok[15], fmt::format("{} monotonicity violations", mono));
  if (o.pass) o.detail = "homomorphisms, valuations, invariants, Hasse, re-verification, ablation";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Frobenius table", 5, frobenius_table},
      {2, "discriminant arithmetic", 1, discriminant_arithmetic},
      {3, "field preflight", 0, field_preflight_check},
      {4, "exceptional-prime bound", 0, exceptional_bound},
      {5, "l = 31 discriminant test", 0, frobdisc_31},
      {6, "l = 3 lift", 0, lift_three},
      {7, "l = 2 lift", 0, lift_two},
      {8, "end-to-end certificate", 30, end_to_end},
      {9, "group-facts suite", 60, group_facts},
      {10, "property suites", 0, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0) o.require(secs < c.limit_s, fmt::format("took {:.2f} s, limit {} s", secs, c.limit_s));
    failed += !o.pass;
    std::cout << fmt::format("{} criterion {:>2} {:<26} {:>7.2f} s  {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                             o.detail);
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
