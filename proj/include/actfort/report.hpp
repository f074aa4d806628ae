#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "actfort/ecosystem.hpp"
#include "actfort/graph.hpp"
#include "actfort/strategy.hpp"

namespace actfort {

/// Percentages are rounded half-up to two decimals; denominators are the
/// accounts (or declared paths) of the group.
struct GroupStats {
  int accounts = 0;
  int paths = 0;
  double sms_only_sign_in = 0.0;
  double sms_only_reset = 0.0;
  double sms_only_total = 0.0;
  std::map<std::string, double> factor_usage;   // kind -> % of accounts
  double general_pct = 0.0;
  double info_pct = 0.0;
  double unique_pct = 0.0;
  std::map<std::string, double> info_exposure;  // kind -> % of accounts
  std::map<std::string, int> depth_counts;      // class -> count
  std::map<std::string, double> depth_pct;      // class -> % of accounts
};

struct StatsReport {
  GroupStats web;
  GroupStats mobile;
  GroupStats overall;
};

/// Measurement-style statistics over the ecosystem, grouped per platform.
/// sms-only means the path's factors are a subset of
/// {phone-number, sms-code}. Throws EmptyEcosystem when there is nothing to
/// aggregate.
StatsReport compute_stats(const Ecosystem& ecosystem);

double round_percent(double value);

nlohmann::ordered_json stats_to_json(const StatsReport& report);

/// Deterministic DOT rendering: fringe/internal node attribution, solid
/// strong edges, dashed weak edges, couple groups annotated as comments.
std::string export_dot(const DependencyGraph& graph);

nlohmann::ordered_json closure_to_json(const ClosureResult& closure);

/// Single report document: graph, stats, optional closure. schema_version "1".
nlohmann::ordered_json export_json(
    const DependencyGraph& graph, const StatsReport& stats,
    const std::optional<ClosureResult>& closure = std::nullopt);

/// Reads the graph section of a report document back into a graph.
DependencyGraph tdg_from_json(const nlohmann::json& doc);

}  // namespace actfort
