#include <fmt/format.h>

#include <json.hpp>

#include "adelic/certifier.hpp"

namespace adelic {

namespace {

using nlohmann::json;

json element_json(const OrderElement& x) { return json::array({x[0].get_str(), x[1].get_str(), x[2].get_str()}); }

json factorization_json(const std::vector<IdealFactor>& fs) {
  json out = json::array();
  for (const auto& f : fs)
    out.push_back({{"place", f.prime.label()},
                   {"residue_degree", std::to_string(f.prime.residue_degree)},
                   {"exponent", std::to_string(f.exponent)}});
  return out;
}

json verdict_json(const Verdict& v) {
  json steps = json::array();
  for (const auto& s : v.steps) {
    json w = json::object();
    for (const auto& [k, val] : s.witness) w[k] = val;
    steps.push_back({{"claim", s.claim}, {"clause", s.clause}, {"witness", w}});
  }
  return {{"status", to_string(v.status)}, {"reason", v.reason}, {"steps", steps}};
}

json datum_json(const FrobeniusDatum& d) {
  return {{"place", d.place.label()},
          {"norm", std::to_string(d.norm)},
          {"count", std::to_string(d.count)},
          {"trace", std::to_string(d.trace)}};
}

void text_verdict(std::string& out, const std::string& name, const Verdict& v) {
  out += fmt::format("{}: {}\n", name, to_string(v.status));
  if (!v.reason.empty()) out += fmt::format("  reason: {}\n", v.reason);
  for (const auto& s : v.steps) {
    out += fmt::format("  - {}\n", s.claim);
    std::string w;
    for (const auto& [k, val] : s.witness) w += fmt::format("{}{}={}", w.empty() ? "" : ", ", k, val);
    out += fmt::format("    [{}]{}{}\n", s.clause, w.empty() ? "" : " ", w);
  }
}

}  // namespace

std::string certificate_json(const Certificate& cert) {
  const auto& p = cert.profile;
  json field = {{"polynomial", json::array({std::to_string(p.cubic.a0), std::to_string(p.cubic.a1),
                                            std::to_string(p.cubic.a2), "1"})},
                {"discriminant", p.discriminant.get_str()},
                {"non_galois", p.non_galois}};
  if (p.non_galois) {
    field["minkowski_bound"] = p.minkowski_bound.get_str();
    field["class_number_one"] = p.class_number_one;
    field["narrow_class_trivial"] = p.narrow_class_trivial;
    field["unit_witness"] = p.unit_witness ? element_json(*p.unit_witness) : json(nullptr);
  }

  json root = {{"schema", "adelic-cert/1"},
               {"field", field},
               {"condition_ii", verdict_json(cert.condition_ii)},
               {"condition_iii", verdict_json(cert.condition_iii)},
               {"final", verdict_json(cert.final)}};

  if (cert.curve) {
    const auto& c = *cert.curve;
    static const char* names[5] = {"a1", "a2", "a3", "a4", "a6"};
    json coeffs = json::object();
    for (int i = 0; i < 5; ++i) coeffs[names[i]] = element_json(c.coefficients[i]);
    json bad = json::array();
    for (const auto& b : c.semistability.bad_places)
      bad.push_back({{"place", b.place.label()},
                     {"v_delta", std::to_string(b.v_delta)},
                     {"v_c4", b.v_c4 ? json(std::to_string(*b.v_c4)) : json(nullptr)},
                     {"v_j", b.v_j ? json(std::to_string(*b.v_j)) : json(nullptr)},
                     {"reduction", to_string(b.kind)}});
    root["curve"] = {{"coefficients", coeffs},
                     {"delta", element_json(c.delta)},
                     {"c4", element_json(c.c4)},
                     {"j_numerator", element_json(c.j_numerator)},
                     {"delta_factorization", factorization_json(c.delta_factorization)},
                     {"j_numerator_factorization", factorization_json(c.j_numerator_factorization)},
                     {"semistable", c.semistability.semistable},
                     {"bad_places", bad}};
  }
  if (cert.exceptional) {
    const auto& r = *cert.exceptional;
    json samples = json::array();
    for (const auto& d : r.samples) samples.push_back(datum_json(d));
    json cands = json::object(), vj = json::object();
    for (const auto& [l, why] : r.candidates) cands[std::to_string(l)] = why;
    for (const auto& [l, ok] : r.vj_hypothesis) vj[std::to_string(l)] = ok;
    root["exceptional_primes"] = {
        {"samples", samples}, {"count_gcd", r.count_gcd.get_str()}, {"candidates", cands}, {"vj_hypothesis", vj}};
  }
  json per = json::object();
  for (const auto& [k, v] : cert.per_prime) per[k] = verdict_json(v);
  root["per_prime"] = per;
  return root.dump(2) + "\n";
}

std::string certificate_text(const Certificate& cert) {
  const auto& p = cert.profile;
  std::string out = fmt::format("field x^3 + ({})x^2 + ({})x + ({}), discriminant {}\n", p.cubic.a2, p.cubic.a1,
                                p.cubic.a0, p.discriminant.get_str());
  if (cert.curve) {
    const auto& c = *cert.curve;
    out += fmt::format("curve [{}, {}, {}, {}, {}]\n", c.coefficients[0].str(), c.coefficients[1].str(),
                       c.coefficients[2].str(), c.coefficients[3].str(), c.coefficients[4].str());
    out += fmt::format("delta = {}\n", c.delta.str());
    std::string fac;
    for (const auto& f : c.delta_factorization)
      fac += fmt::format("{}{}^{}", fac.empty() ? "" : " ", f.prime.annotated_label(), f.exponent);
    out += fmt::format("(delta) = {}\n", fac.empty() ? "(1)" : fac);
    out += fmt::format("semistable: {}\n", c.semistability.semistable ? "yes" : "no");
  }
  out += "\n";
  text_verdict(out, "condition (ii)", cert.condition_ii);
  text_verdict(out, "condition (iii)", cert.condition_iii);
  if (cert.exceptional) {
    const auto& r = *cert.exceptional;
    out += fmt::format("exceptional-prime bound: {} samples, gcd of counts {}\n", r.samples.size(), r.count_gcd.get_str());
    for (const auto& d : r.samples)
      out += fmt::format("  {:<10} N = {:>5}  #E = {:>5}  t = {:>4}\n", d.place.label(), d.norm, d.count, d.trace);
    for (const auto& [l, why] : r.candidates) out += fmt::format("  candidate {}: {}\n", l, why);
  }
  for (const auto& [k, v] : cert.per_prime) text_verdict(out, k == "others" ? "other primes" : "l = " + k, v);
  out += "\n";
  text_verdict(out, "final", cert.final);
  return out;
}

}  // namespace adelic
