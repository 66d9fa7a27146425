#pragma once

// Job configuration and the adelic-cert command-line frontend.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "adelic/group_facts.hpp"
#include "adelic/residue_arith.hpp"

namespace adelic {

/// One flat "key = value" file. Lists go in brackets; # starts a comment.
///
///   field = [1, 1, 0, 1]        # x^3 + x + 1, low degree first
///   a3 = [0, 1, 0]              # c0 + c1 a + c2 a^2
///   places = [(7), Q_11]
struct JobConfig {
  std::vector<i64> field;
  /// a1, a2, a3, a4, a6 over the basis 1, a, a^2.
  std::array<std::array<long, 3>, 5> curve{};
  std::size_t sample_budget = 8;
  std::vector<std::string> sample_places;
  std::vector<std::string> places;
  u64 max_q = 10000;
  u64 seed = 0;
  std::string json_out;
  std::string text_out;

  friend bool operator==(const JobConfig&, const JobConfig&) = default;
};

/// Throws Error(Config) on unknown or repeated keys, malformed values, or a
/// missing field/a1..a6.
JobConfig parse_config(const std::string& text);
JobConfig load_config(const std::string& path);
std::string emit_config(const JobConfig& config);

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitScope = 2;
inline constexpr int kExitBadReduction = 3;
inline constexpr int kExitGroupFacts = 4;
inline constexpr int kExitInconclusive = 10;
inline constexpr int kExitRefuted = 11;
inline constexpr int kExitUsage = 64;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The group-facts subcommand with its options exposed, so tests can swap in
/// a broken sign map.
int cmd_group_facts(const GroupFactsOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace adelic
