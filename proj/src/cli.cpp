#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <ostream>

#include "adelic/certifier.hpp"
#include "adelic/cli.hpp"
#include "adelic/error.hpp"

namespace adelic {

namespace {

constexpr const char* kDescription =
    "Certify surjectivity of the adelic Galois representation of an elliptic curve over a "
    "non-Galois cubic field.\n"
    "Field elements are triples (c0, c1, c2) meaning c0 + c1 a + c2 a^2, where a is a root of the "
    "defining cubic; the cubic is listed low degree first.";

struct Flags {
  std::string config;
  std::optional<u64> seed;
  std::optional<std::string> places;
  std::string json;
  std::optional<u64> max_q;
  u64 ell = 31;
};

bool is_usage_error(ErrorKind k) {
  return k == ErrorKind::Config || k == ErrorKind::UnknownPlace || k == ErrorKind::DuplicateDegreeOnePrime;
}

std::vector<std::string> split_places(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch != ',') {
      if (ch != ' ') cur += ch;
      continue;
    }
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::Config, fmt::format("cannot write '{}'", path));
  f << content;
}

int cmd_preflight(const JobConfig& c, std::ostream& out) {
  auto p = field_preflight(c.field);
  out << fmt::format("polynomial: {}\n", fmt::join(c.field, " "));
  out << fmt::format("discriminant: {}\n", p.discriminant.get_str());
  out << fmt::format("non-Galois: {}\n", p.non_galois ? "yes" : "no");
  if (!p.non_galois) {
    out << "cyclic cubic: the field is abelian over Q\n";
    return kExitOk;
  }
  out << fmt::format("Minkowski bound: < {:.6f}\n", p.minkowski_bound.get_d());
  out << fmt::format("class number: {}\n", p.class_number_one ? "1" : "unknown");
  out << fmt::format("narrow class group: {}\n", p.narrow_class_trivial ? "trivial" : "unknown");
  if (p.unit_witness)
    out << fmt::format("unit witness: u = {} (u, u+1 units, u+1 totally positive)\n", p.unit_witness->str());
  else
    out << "unit witness: none found\n";
  return kExitOk;
}

int cmd_invariants(const JobConfig& c, std::ostream& out) {
  const auto K = CubicField::create(c.field);
  const auto E = WeierstrassModel::create(K, c.curve);
  const auto& inv = E.invariants();
  out << fmt::format("b2 = {}\nb4 = {}\nb6 = {}\nb8 = {}\n", inv.b2.str(), inv.b4.str(), inv.b6.str(), inv.b8.str());
  out << fmt::format("c4 = {}\nc6 = {}\ndelta = {}\n", inv.c4.str(), inv.c6.str(), inv.delta.str());
  out << fmt::format("N(delta) = {}\n", K.norm(inv.delta).get_str());
  std::string fac;
  for (const auto& f : K.ideal_factorization(inv.delta))
    fac += fmt::format("{}{}^{}", fac.empty() ? "" : " ", f.prime.annotated_label(), f.exponent);
  out << fmt::format("(delta) = {}\n", fac.empty() ? "(1)" : fac);
  try {
    auto semi = is_semistable(E);
    out << fmt::format("semistable: {}\n", semi.semistable ? "yes" : "no");
    for (const auto& b : semi.bad_places)
      out << fmt::format("  {}: v(delta) = {}, v(j) = {}, {}\n", b.place.annotated_label(), b.v_delta,
                         b.v_j ? std::to_string(*b.v_j) : "-", to_string(b.kind));
  } catch (const Error& e) {
    out << fmt::format("semistable: unknown ({})\n", e.what());
  }
  return kExitOk;
}

int cmd_frobenius_table(const JobConfig& c, const Flags& flags, std::ostream& out) {
  const auto K = CubicField::create(c.field);
  const auto E = WeierstrassModel::create(K, c.curve);
  const auto labels = flags.places ? split_places(*flags.places) : c.places;
  const u64 max_q = flags.max_q.value_or(c.max_q);
  const u64 ell = flags.ell;
  out << fmt::format("{:<14} {:>6} {:>6} {:>5}  {}\n", "place", "N_v", "#E", "t_v", fmt::format("t^2-4N mod {}", ell));
  for (const auto& label : labels) {
    auto d = frobenius_datum(E, K.prime_by_label(label), max_q);
    const i64 disc = d.trace * d.trace - 4 * static_cast<i64>(d.norm);
    out << fmt::format("{:<14} {:>6} {:>6} {:>5}  {}\n", d.place.annotated_label(), d.norm, d.count, d.trace,
                       mod_floor(disc, ell));
  }
  return kExitOk;
}

int cmd_certify(const JobConfig& c, const Flags& flags, std::ostream& out) {
  CertifyOptions opts;
  opts.sample_budget = c.sample_budget;
  opts.sample_places = c.sample_places;
  opts.places = flags.places ? split_places(*flags.places) : c.places;
  opts.max_q = flags.max_q.value_or(c.max_q);
  const auto cert = certify(c.field, c.curve, opts);
  const std::string text = certificate_text(cert);
  const std::string json_path = flags.json.empty() ? c.json_out : flags.json;
  if (!json_path.empty()) write_file(json_path, certificate_json(cert));
  if (!c.text_out.empty()) write_file(c.text_out, text);
  out << text;
  switch (cert.final.status) {
    case Status::Certified: return kExitOk;
    case Status::Refuted: return kExitRefuted;
    case Status::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

}  // namespace

int cmd_group_facts(const GroupFactsOptions& opts, std::ostream& out, std::ostream& err) {
  auto report = verify_group_facts(opts);
  out << format_report(report);
  if (report.all_passed()) return kExitOk;
  for (const auto& c : report.checks)
    if (!c.passed) err << fmt::format("counterexample for {}: {}\n", c.name, c.witness);
  return kExitGroupFacts;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app(kDescription, "adelic-cert");
  app.fallthrough();
  app.require_subcommand(1, 1);
  Flags flags;
  app.add_option("--config", flags.config, "job config file (key = value lines)");
  app.add_option("--seed", flags.seed, "random seed for group-facts");
  app.add_option("--places", flags.places, "comma-separated place labels, e.g. \"(7),Q_11\"");
  app.add_option("--json", flags.json, "write the certificate JSON here");
  app.add_option("--max-q", flags.max_q, "largest residue field to count points over");
  app.add_option("--ell", flags.ell, "modulus for the t^2-4N column of frobenius-table")->check(CLI::PositiveNumber);
  auto* preflight = app.add_subcommand("preflight", "field facts: discriminant, Galois test, class group, units");
  auto* invariants = app.add_subcommand("invariants", "curve invariants, discriminant factorization, semistability");
  auto* table = app.add_subcommand("frobenius-table", "point counts and Frobenius traces at the given places");
  auto* cert = app.add_subcommand("certify", "build a surjectivity certificate");
  auto* facts = app.add_subcommand("group-facts", "brute-force checks of the GL2 group-theory lemmas");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (facts->parsed()) {
      GroupFactsOptions opts;
      opts.seed = flags.seed.value_or(flags.config.empty() ? 0 : load_config(flags.config).seed);
      return cmd_group_facts(opts, out, err);
    }
    if (flags.config.empty()) {
      err << "--config is required\n";
      return kExitUsage;
    }
    const JobConfig config = load_config(flags.config);
    if (preflight->parsed()) return cmd_preflight(config, out);
    if (invariants->parsed()) return cmd_invariants(config, out);
    if (table->parsed()) return cmd_frobenius_table(config, flags, out);
    if (cert->parsed()) return cmd_certify(config, flags, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    if (e.kind() == ErrorKind::BadReduction) return kExitBadReduction;
    if (is_usage_error(e.kind())) return kExitUsage;
    // everything else is an input outside the supported scope
    return kExitScope;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitScope;
  }
  return kExitUsage;
}

}  // namespace adelic
