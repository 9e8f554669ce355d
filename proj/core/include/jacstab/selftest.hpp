#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jacstab/pushforward.hpp"

namespace jacstab {

enum class SelftestDepth { Small, Full };

SelftestDepth parse_selftest_depth(std::string_view text);
std::string_view to_string(SelftestDepth depth);

struct SelftestOptions {
  SelftestDepth depth = SelftestDepth::Small;
  std::uint64_t seed = 0;
  /// Rules used by the derivation suites; corrupting one must make them fail.
  RuleTable rules = RuleTable::standard();
};

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::optional<std::string> first_counterexample;

  bool pass() const { return failures == 0; }
};

struct SelftestReport {
  SelftestDepth depth = SelftestDepth::Small;
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;

  bool pass() const;
};

/// Every tau in [-bound, bound]^n with the given sum, in lexicographic order.
std::vector<std::vector<std::int64_t>> tau_grid(int n, std::int64_t bound, std::int64_t sum);

/// Pairs (g, n) with 0 <= g <= max_g, 1 <= n <= max_n and 2g-2+n > 0.
std::vector<std::pair<int, int>> moduli_grid(int max_g, int max_n);

/// Cross-formula grid, series oracle and corpus checks. Deterministic for a fixed seed.
SelftestReport run_selftest(const SelftestOptions& opts);

}  // namespace jacstab
