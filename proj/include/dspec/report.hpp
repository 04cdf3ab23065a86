#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dspec/spectral.hpp"

namespace dspec {

enum class SearchMode { Structured, Exhaustive, LargeS };

inline const char* to_string(SearchMode m) {
  switch (m) {
    case SearchMode::Structured: return "structured";
    case SearchMode::Exhaustive: return "exhaustive";
    case SearchMode::LargeS: return "large-s";
  }
  return "?";
}

struct SearchSpace {
  SearchMode mode = SearchMode::Structured;
  int n = 0;
  int s = 0;
  long long m = 0;
  int complement_edges = 0;  // e = n - 1 - s
  std::string constraints;   // human-readable echo of the search constraints
  double candidate_estimate = 0.0;
};

enum class Verdict { UniqueBalancedPaths, Violation };

inline const char* to_string(Verdict v) {
  return v == Verdict::UniqueBalancedPaths ? "unique-balanced-paths" : "violation";
}

/// One minimizing shape class: a configuration string in structured mode, the
/// component signature of h0 otherwise. `labelings` counts labeled copies found.
struct MinimizerEntry {
  std::string signature;
  std::uint64_t labelings = 0;
  double rho = 0.0;
  std::string example_h0;  // graph6 of one labeled h0 (empty in structured mode)
};

/// Named side check run during a verification; `violations` must be 0.
struct CheckTally {
  std::string name;
  std::uint64_t examined = 0;
  std::uint64_t violations = 0;
  std::string detail;
};

struct VerificationReport {
  SearchSpace space;
  std::uint64_t examined = 0;
  std::uint64_t skipped = 0;  // candidates whose complement is disconnected
  std::vector<MinimizerEntry> minimizers;
  std::string expected_signature;
  std::uint64_t expected_labelings = 0;
  double rho_min = 0.0;
  std::optional<double> runner_up_rho;
  std::string runner_up_signature;
  double gap = 0.0;                     // runner_up_rho - rho_min
  double runner_up_certificate = 0.0;   // Psi_runner_up(rho_min + 1) - 1 (> 0 certifies the gap)
  std::uint64_t ties_resolved_by_certificate = 0;
  Verdict verdict = Verdict::Violation;
  std::string witness;
  std::vector<CheckTally> checks;
  double wall_time_seconds = 0.0;

  const CheckTally* check(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Audit row for one evaluated candidate. Sinks may be called from worker threads
/// but never concurrently.
using AuditSink = std::function<void(std::string_view config, double rho, Method method, double residual)>;

struct VerifyOptions {
  double tol = kDefaultTolerance;  // eigensolver / secular tolerance
  double tie = 1e-9;               // rho window treated as a tie before certificates
  double cap = 1e8;                // maximum candidates for labeled enumeration
  int threads = 0;                 // 0 = hardware concurrency
  int walk_depth = 20;             // large-s only; raised to 2n when smaller
  AuditSink audit;
};

}  // namespace dspec
