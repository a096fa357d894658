#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dirac1c {

inline constexpr const char* kVersion = "0.1.0";

struct CheckRecord {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<double> order;
  std::optional<double> coverage;
};

/// Per-run check results plus the environment stamp. Deterministic for a
/// fixed seed: serialization yields byte-identical output on repeat runs.
struct Report {
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;

  bool all_pass() const;
  /// Record a "value must stay below tolerance" check.
  CheckRecord& add_max(const std::string& name, double value, double tolerance);
  /// Record a "measured order must land inside [lo, hi]" check.
  CheckRecord& add_order(const std::string& name, double order, double lo, double hi);
};

std::string report_to_json(const Report& report);
std::string report_to_csv(const Report& report);
void save_report(const std::string& dir, const std::string& stem,
                 const Report& report, const std::string& format);

}  // namespace dirac1c
