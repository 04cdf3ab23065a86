#pragma once

// JSON views of reports. Needs nlohmann/json (json.hpp) on the include path.

#include <json.hpp>

#include "dspec/enumerate.hpp"
#include "dspec/report.hpp"
#include "dspec/walks.hpp"

namespace dspec {

inline nlohmann::ordered_json to_json(const SearchSpace& s) {
  return {{"mode", to_string(s.mode)},
          {"n", s.n},
          {"s", s.s},
          {"m", s.m},
          {"complement_edges", s.complement_edges},
          {"constraints", s.constraints},
          {"candidate_estimate", s.candidate_estimate}};
}

inline nlohmann::ordered_json to_json(const CheckTally& c) {
  return {{"name", c.name}, {"examined", c.examined}, {"violations", c.violations}, {"detail", c.detail}};
}

/// Report body. Wall time is left out on purpose; callers put it in the header.
inline nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json mins = nlohmann::ordered_json::array();
  for (const auto& m : r.minimizers)
    mins.push_back({{"signature", m.signature}, {"labelings", m.labelings}, {"rho", m.rho}, {"example_h0", m.example_h0}});
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  nlohmann::ordered_json j;
  j["space"] = to_json(r.space);
  j["examined"] = r.examined;
  j["skipped_disconnected"] = r.skipped;
  j["minimizers"] = mins;
  j["expected_signature"] = r.expected_signature;
  j["expected_labelings"] = r.expected_labelings;
  j["rho_min"] = r.rho_min;
  j["runner_up_rho"] = r.runner_up_rho ? nlohmann::ordered_json(*r.runner_up_rho) : nlohmann::ordered_json();
  j["runner_up_signature"] = r.runner_up_signature;
  j["gap"] = r.gap;
  j["runner_up_certificate"] = r.runner_up_certificate;
  j["ties_resolved_by_certificate"] = r.ties_resolved_by_certificate;
  j["verdict"] = to_string(r.verdict);
  j["witness"] = r.witness;
  j["checks"] = checks;
  return j;
}

inline nlohmann::ordered_json to_json(const EdgeSwitchReport& r) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"config", row.config},
                    {"rho_secular", row.rho_secular},
                    {"rho_eigen", row.rho_eigen},
                    {"delta", row.delta}});
  return {{"rows", rows},
          {"ordered", r.ordered},
          {"gap_cyclic_best", r.gap_cyclic_best},
          {"gap_merged_cyclic", r.gap_merged_cyclic},
          {"max_delta", r.max_delta}};
}

/// Walk counts as decimal strings (they may exceed 64 bits).
inline nlohmann::ordered_json to_json(const WalkProfile& p) {
  nlohmann::ordered_json counts = nlohmann::ordered_json::array();
  for (WalkCount w : p.counts) counts.push_back(to_string(w));
  return {{"graph", p.graph_id}, {"depth", p.depth}, {"counts", counts}};
}

inline nlohmann::ordered_json to_json(const NeumannResult& r) {
  return {{"partial_sum", r.partial_sum},
          {"tail_bound", r.tail_valid ? nlohmann::ordered_json(r.tail_bound) : nlohmann::ordered_json()},
          {"tail_valid", r.tail_valid},
          {"lower", r.lower},
          {"upper", r.tail_valid ? nlohmann::ordered_json(r.upper) : nlohmann::ordered_json()},
          {"depth", r.depth}};
}

inline nlohmann::ordered_json to_json(const DominanceReport& r) {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(r.verdict);
  j["first_strict_k"] = r.first_strict_k;
  j["failing_k"] = r.failing_k;
  j["witness"] = r.witness ? nlohmann::ordered_json(*r.witness) : nlohmann::ordered_json();
  j["h0"] = to_json(r.h0_profile);
  j["extremal"] = to_json(r.extremal_profile);
  return j;
}

}  // namespace dspec
