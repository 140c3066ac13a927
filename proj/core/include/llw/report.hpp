#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "llw/workspace.hpp"

namespace llw {

struct SuiteResult {
  std::string name;
  bool passed = true;
  bool refused = false;
  std::string detail;
  double seconds = 0;
};

struct Report {
  std::vector<SuiteResult> suites;
  bool all_passed() const;
};

struct ReportOptions {
  std::size_t degree = 2;
  /// Largest family in the axiom suites.
  std::size_t bound = 4;
  std::uint64_t seed = 1;
  std::size_t samples = 2000;
};

/// Axioms of every shipped semiring, plus per-object checks when a
/// workspace is given. Suites run concurrently; order is deterministic.
Report run_report(const Workspace* ws, const ReportOptions& opt);

std::string to_text(const Report& r);
std::string to_json(const Report& r);

}  // namespace llw
