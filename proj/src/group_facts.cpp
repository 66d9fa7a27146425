#include "adelic/group_facts.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "adelic/error.hpp"

namespace adelic {

namespace {

using Keys = std::vector<u64>;

/// All characters (Z/nZ)^* -> {+-1}, the trivial one first.
std::vector<QuadraticCharacter> unit_characters(u64 n) {
  const auto gens = unit_generators(n);
  std::vector<QuadraticCharacter> out;
  std::set<std::vector<int>> seen;
  for (u64 mask = 0; mask < (u64{1} << gens.size()); ++mask) {
    std::vector<std::pair<u64, int>> values;
    for (size_t i = 0; i < gens.size(); ++i) values.emplace_back(gens[i], mask >> i & 1 ? -1 : 1);
    try {
      auto chi = gens.empty() ? QuadraticCharacter::trivial(n) : QuadraticCharacter::from_generator_values(n, values);
      std::vector<int> table;
      for (u64 u = 1; u < n; ++u)
        if (std::gcd(u, n) == 1) table.push_back(chi(u));
      if (seen.insert(table).second) out.push_back(chi);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InconsistentCharacter) throw;
    }
  }
  return out;
}

Keys filter(const Keys& group, u64 n, const std::function<bool(const Mat2&)>& keep) {
  Keys out;
  for (u64 k : group)
    if (keep(Mat2::from_key(k, n))) out.push_back(k);
  return out;
}

/// Kernels of the nontrivial characters g -> s(g)^a psi(det g).
std::vector<Keys> index2_kernels(const Keys& group, u64 n, const SignMap& s) {
  std::vector<Keys> out;
  for (int a = 0; a < 2; ++a)
    for (const auto& psi : unit_characters(n)) {
      if (a == 0 && psi.is_trivial()) continue;
      out.push_back(filter(group, n, [&](const Mat2& g) { return (a ? s(g) : 1) * psi(g.det()) == 1; }));
    }
  return out;
}

FactCheck make_check(std::string name, std::string claim) {
  FactCheck c;
  c.name = std::move(name);
  c.claim = std::move(claim);
  return c;
}

Keys reduce_keys(const Keys& keys, u64 n, u64 m) {
  Keys out;
  out.reserve(keys.size());
  for (u64 k : keys) out.push_back(Mat2::from_key(k, n).reduce(m).key());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string describe(const std::vector<Mat2>& gens) {
  std::string s;
  for (const auto& g : gens) s += (s.empty() ? "" : "; ") + g.str();
  return s;
}

Mat2 pick(const Keys& keys, u64 n, std::mt19937_64& rng) {
  return Mat2::from_key(keys[std::uniform_int_distribution<size_t>(0, keys.size() - 1)(rng)], n);
}

/// I + l A with A uniform mod n / l.
Mat2 random_congruence(u64 l, u64 n, std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> d(0, static_cast<i64>(n / l) - 1);
  const i64 L = static_cast<i64>(l);
  return Mat2(1 + L * d(rng), L * d(rng), L * d(rng), 1 + L * d(rng), n);
}

FactCheck check_commutator_mod8(const GroupFactsOptions& opts) {
  FactCheck c = make_check("commutator_mod8", "[GL2(Z/8), GL2(Z/8)] = ker(sgn, det)");
  const auto G = SubgroupZn::full(8);
  const Keys kernel = filter(G.elements(), 8, [&](const Mat2& g) { return opts.sign(g) == 1 && g.det() == 1; });
  const auto D = commutator_subgroup(G);
  c.samples = c.relevant = 1;
  c.passed = D.elements() == kernel;
  if (!c.passed) c.witness = fmt::format("commutator order {} vs kernel order {}", D.order(), kernel.size());
  return c;
}

FactCheck check_index2_mod8(const GroupFactsOptions& opts, std::mt19937_64& rng) {
  FactCheck c = make_check("index2_mod8", "a subgroup of GL2(Z/8) surjecting onto GL2(Z/4) has index at most 2");
  const auto G = SubgroupZn::full(8);
  const auto kernels = index2_kernels(G.elements(), 8, [](const Mat2& g) { return sgn(g); });
  c.passed = true;
  for (int i = 0; i < opts.samples; ++i) {
    std::vector<Mat2> gens;
    int k = 1 + i % 3;
    const Keys& pool = i % 2 ? kernels[rng() % kernels.size()] : G.elements();
    for (int j = 0; j < k; ++j) gens.push_back(pick(pool, 8, rng));
    SubgroupZn H(8, gens);
    ++c.samples;
    if (!H.reduce(4).is_full()) continue;
    ++c.relevant;
    if (G.order() > 2 * H.order()) {
      c.passed = false;
      c.witness = describe(gens);
      break;
    }
  }
  return c;
}

FactCheck check_lift_odd(const GroupFactsOptions& opts, std::mt19937_64& rng) {
  FactCheck c = make_check("lift_mod27", "U <= I + 3 M2(Z/27) surjecting onto (I + 3M)/(I + 9M) is all of I + 3 M2(Z/27)");
  c.passed = true;
  for (int i = 0; i < opts.samples; ++i) {
    std::vector<Mat2> gens;
    for (int j = 0; j < 4 + i % 3; ++j) gens.push_back(random_congruence(3, 27, rng));
    SubgroupZn U(27, gens);
    ++c.samples;
    if (U.reduce(9).order() != 81) continue;
    ++c.relevant;
    if (U.order() != 6561) {
      c.passed = false;
      c.witness = describe(gens);
      break;
    }
  }
  return c;
}

FactCheck check_mod24(const GroupFactsOptions& opts, std::mt19937_64& rng) {
  FactCheck c = make_check("fiber_mod24", opts.require_sign_det
                  ? "H <= GL2(Z/24) is everything iff it is full mod 8, full mod 3, and (sgn, det)(H) is full"
                  : "H <= GL2(Z/24) is everything iff it is full mod 8 and full mod 3");
  const auto G = SubgroupZn::full(24);
  const u64 full = G.order();
  const auto kernels = index2_kernels(G.elements(), 24, [](const Mat2& g) { return sgn(g); });

  auto predicate = [&](const Keys& h) {
    if (reduce_keys(h, 24, 8).size() != gl2_order(8) || reduce_keys(h, 24, 3).size() != gl2_order(3)) return false;
    if (!opts.require_sign_det) return true;
    std::set<std::pair<int, u64>> image;
    for (u64 k : h) {
      Mat2 g = Mat2::from_key(k, 24);
      image.emplace(opts.sign(g), g.det());
    }
    return image.size() == 2 * euler_phi(24);
  };

  c.passed = true;
  auto examine = [&](const Keys& h, const std::string& what) {
    ++c.samples;
    bool p = predicate(h);
    c.relevant += p;
    if (p != (h.size() == full) && c.passed) {
      c.passed = false;
      c.witness = fmt::format("{} (order {})", what, h.size());
    }
  };
  // every index-2 subgroup, which includes the fiber products over order-2 quotients
  for (size_t i = 0; i < kernels.size(); ++i) examine(kernels[i], fmt::format("index-2 kernel #{}", i));
  for (int i = 0; i < opts.samples; ++i) {
    std::vector<Mat2> gens;
    int k = 2 + i % 4;
    const Keys& pool = i % 2 ? kernels[rng() % kernels.size()] : G.elements();
    for (int j = 0; j < k; ++j) gens.push_back(pick(pool, 24, rng));
    SubgroupZn H(24, gens);
    examine(H.elements(), describe(gens));
  }
  return c;
}

FactCheck check_index2_count_mod8(const GroupFactsOptions& opts) {
  FactCheck c = make_check("index2_count_mod8", "GL2(Z/8) has 7 index-2 subgroups; the proper mod-4 images are ker(sgn), SL2(Z/4), ker(sgn det)");
  const auto G = SubgroupZn::full(8);
  const u64 count = count_index2_subgroups(G);
  const auto kernels = index2_kernels(G.elements(), 8, opts.sign);
  std::set<Keys> distinct;
  bool all_index2 = true;
  for (const auto& k : kernels) {
    distinct.insert(k);
    all_index2 = all_index2 && 2 * k.size() == G.order();
  }
  const auto G4 = SubgroupZn::full(4);
  std::set<Keys> images;
  for (const auto& k : kernels) {
    Keys img = reduce_keys(k, 8, 4);
    if (img.size() != G4.order()) images.insert(img);
  }
  std::set<Keys> expected{
      filter(G4.elements(), 4, [&](const Mat2& g) { return opts.sign(g) == 1; }),
      filter(G4.elements(), 4, [&](const Mat2& g) { return g.det() == 1; }),
      filter(G4.elements(), 4, [&](const Mat2& g) { return opts.sign(g) * (g.det() == 1 ? 1 : -1) == 1; }),
  };
  c.samples = c.relevant = kernels.size();
  c.passed = count == 7 && distinct.size() == 7 && all_index2 && images == expected;
  if (!c.passed)
    c.witness = fmt::format("count {}, distinct kernels {}, proper mod-4 images {}", count, distinct.size(), images.size());
  return c;
}

FactCheck check_lift_two(const GroupFactsOptions& opts, std::mt19937_64& rng) {
  FactCheck c = make_check("lift_mod16", "U <= I + 2 M2(Z/16) with U n V4 onto V4/V8 and U onto V2/V8 is all of I + 2 M2(Z/16)");
  c.passed = true;
  for (int i = 0; i < opts.samples; ++i) {
    std::vector<Mat2> gens;
    for (int j = 0; j < 4 + i % 3; ++j) gens.push_back(random_congruence(2, 16, rng));
    SubgroupZn U(16, gens);
    ++c.samples;
    if (U.reduce(8).order() != 256) continue;
    Keys deep = filter(U.elements(), 16, [](const Mat2& g) { return g.reduce(4).is_identity(); });
    if (reduce_keys(deep, 16, 8).size() != 16) continue;
    ++c.relevant;
    if (U.order() != 4096) {
      c.passed = false;
      c.witness = describe(gens);
      break;
    }
  }
  return c;
}

}  // namespace

bool GroupFactsReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const FactCheck& c) { return c.passed; });
}

GroupFactsReport verify_group_facts(const GroupFactsOptions& opts) {
  GroupFactsReport report;
  report.seed = opts.seed;
  std::mt19937_64 rng(opts.seed);
  report.checks.push_back(check_commutator_mod8(opts));
  report.checks.push_back(check_index2_mod8(opts, rng));
  report.checks.push_back(check_lift_odd(opts, rng));
  report.checks.push_back(check_mod24(opts, rng));
  report.checks.push_back(check_index2_count_mod8(opts));
  report.checks.push_back(check_lift_two(opts, rng));
  return report;
}

SubgroupZn goursat_fiber_product() {
  auto eps = QuadraticCharacter::from_generator_values(3, {{2, -1}}).pullback(24);
  return serre_subgroup(eps);
}

std::string format_report(const GroupFactsReport& report) {
  std::string out = fmt::format("group facts, seed {}\n", report.seed);
  for (const auto& c : report.checks) {
    out += fmt::format("  [{}] {:<18} samples {:>4}, hypothesis met {:>4}  {}\n", c.passed ? "pass" : "FAIL", c.name,
                       c.samples, c.relevant, c.claim);
    if (!c.passed) out += fmt::format("         counterexample: {}\n", c.witness);
  }
  out += report.all_passed() ? "all checks passed\n" : "some checks FAILED\n";
  return out;
}

}  // namespace adelic
