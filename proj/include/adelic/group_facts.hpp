#pragma once

// Brute-force checks of the finite group facts the certifier leans on.

#include <functional>
#include <string>
#include <vector>

#include "adelic/gl2_groups.hpp"

namespace adelic {

struct FactCheck {
  std::string name;
  std::string claim;
  bool passed = false;
  /// Subgroups examined, and how many of them met the hypothesis.
  u64 samples = 0;
  u64 relevant = 0;
  /// Generators of a counterexample when the check fails.
  std::string witness;
};

struct GroupFactsReport {
  u64 seed = 0;
  std::vector<FactCheck> checks;
  bool all_passed() const;
};

using SignMap = std::function<int(const Mat2&)>;

struct GroupFactsOptions {
  u64 seed = 0;
  int samples = 200;
  /// Replaceable to confirm the checks notice a wrong sign character.
  SignMap sign = [](const Mat2& m) { return sgn(m); };
  /// Dropping this makes the mod-24 check accept fiber products, which it
  /// must then report as counterexamples.
  bool require_sign_det = true;
};

GroupFactsReport verify_group_facts(const GroupFactsOptions& opts = {});

/// { g in GL2(Z/24) : sgn(g) = (det g / 3) }: full mod 8 and mod 3 but proper.
SubgroupZn goursat_fiber_product();

std::string format_report(const GroupFactsReport& report);

}  // namespace adelic
