#include "actfort/report.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "actfort/errors.hpp"

namespace actfort {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

bool sms_only(const AuthPath& path) {
  static const FactorSet allowed{FactorKind{FactorTag::PhoneNumber, {}},
                                 FactorKind{FactorTag::SmsCode, {}}};
  return std::includes(allowed.begin(), allowed.end(), path.factors.begin(),
                       path.factors.end());
}

GroupStats group_stats(const std::vector<const Account*>& members,
                       const std::map<std::string, DepthResult>& depths) {
  GroupStats g;
  g.accounts = static_cast<int>(members.size());

  int sms_sign_in = 0, sms_reset = 0, sms_total = 0;
  int general = 0, info = 0, unique = 0;
  std::map<std::string, int> factor_accounts;
  std::map<std::string, int> exposure_accounts;
  std::map<std::string, int> depth_counts{
      {"direct", 0}, {"one-layer", 0}, {"two-layer-full", 0},
      {"two-layer-mixed", 0}, {"unreachable", 0}};

  for (const Account* account : members) {
    bool any_sign_in = false, any_reset = false, any_total = false;
    std::set<std::string> used_kinds;
    for (const auto& path : account->auth_paths) {
      ++g.paths;
      switch (classify_auth_path(path)) {
        case PathClass::General: ++general; break;
        case PathClass::Info: ++info; break;
        case PathClass::Unique: ++unique; break;
      }
      if (sms_only(path)) {
        any_total = true;
        if (path.purpose == PathPurpose::SignIn) any_sign_in = true;
        if (path.purpose == PathPurpose::PasswordReset) any_reset = true;
      }
      for (const auto& factor : path.factors) used_kinds.insert(to_string(factor));
    }
    if (any_sign_in) ++sms_sign_in;
    if (any_reset) ++sms_reset;
    if (any_total) ++sms_total;
    for (const auto& kind : used_kinds) ++factor_accounts[kind];

    std::set<std::string> exposed_kinds;
    for (const auto& d : account->exposes) exposed_kinds.insert(to_string(d.kind));
    for (const auto& kind : exposed_kinds) ++exposure_accounts[kind];

    ++depth_counts[std::string(depth_class_name(depths.at(account->id).cls))];
  }

  auto pct = [](int n, int d) {
    return d == 0 ? 0.0 : round_percent(100.0 * n / d);
  };
  g.sms_only_sign_in = pct(sms_sign_in, g.accounts);
  g.sms_only_reset = pct(sms_reset, g.accounts);
  g.sms_only_total = pct(sms_total, g.accounts);
  g.general_pct = pct(general, g.paths);
  g.info_pct = pct(info, g.paths);
  g.unique_pct = pct(unique, g.paths);
  for (const auto& [kind, n] : factor_accounts) {
    g.factor_usage[kind] = pct(n, g.accounts);
  }
  for (const auto& [kind, n] : exposure_accounts) {
    g.info_exposure[kind] = pct(n, g.accounts);
  }
  g.depth_counts = depth_counts;
  for (const auto& [cls, n] : depth_counts) {
    g.depth_pct[cls] = pct(n, g.accounts);
  }
  return g;
}

ordered_json group_to_json(const GroupStats& g) {
  ordered_json out;
  out["accounts"] = g.accounts;
  out["paths"] = g.paths;
  out["sms_only"] = {{"sign-in", g.sms_only_sign_in},
                     {"password-reset", g.sms_only_reset},
                     {"total", g.sms_only_total}};
  out["factor_usage"] = g.factor_usage;
  out["path_classes"] = {{"general", g.general_pct},
                         {"info", g.info_pct},
                         {"unique", g.unique_pct}};
  out["info_exposure"] = g.info_exposure;
  ordered_json depth;
  for (const auto& [cls, n] : g.depth_counts) {
    depth[cls] = {{"count", n}, {"pct", g.depth_pct.at(cls)}};
  }
  out["depth_classes"] = std::move(depth);
  return out;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

double round_percent(double value) {
  return std::floor(value * 100.0 + 0.5) / 100.0;
}

StatsReport compute_stats(const Ecosystem& ecosystem) {
  if (ecosystem.accounts().empty()) {
    throw Error(Errc::EmptyEcosystem, "no accounts to aggregate");
  }
  std::map<std::string, DepthResult> depths;
  for (const auto& account : ecosystem.accounts()) {
    depths.emplace(account.id, classify_depth(ecosystem, account.id));
  }

  std::vector<const Account*> web, mobile, all;
  for (const auto& account : ecosystem.accounts()) {
    all.push_back(&account);
    (account.platform == Platform::Web ? web : mobile).push_back(&account);
  }
  StatsReport report;
  report.web = group_stats(web, depths);
  report.mobile = group_stats(mobile, depths);
  report.overall = group_stats(all, depths);
  return report;
}

nlohmann::ordered_json stats_to_json(const StatsReport& report) {
  ordered_json out;
  out["accounts"] = report.overall.accounts;
  out["groups"] = {{"web", group_to_json(report.web)},
                   {"mobile", group_to_json(report.mobile)},
                   {"overall", group_to_json(report.overall)}};
  return out;
}

std::string export_dot(const DependencyGraph& graph) {
  if (graph.node_ids.empty()) return "digraph tdg { }\n";
  std::set<std::string> fringe(graph.fringe.begin(), graph.fringe.end());
  std::string out = "digraph tdg {\n";
  for (const auto& id : graph.node_ids) {
    out += "  " + dot_quote(id) +
           (fringe.contains(id) ? " [class=fringe];\n" : " [class=internal];\n");
  }
  for (const auto& edge : graph.strong_edges) {
    out += "  " + dot_quote(edge.parent) + " -> " + dot_quote(edge.child) +
           " [style=solid, label=" + dot_quote(edge.path_id) + "];\n";
  }
  for (const auto& group : graph.couple_file) {
    out += "  // couple {";
    for (std::size_t i = 0; i < group.members.size(); ++i) {
      if (i > 0) out += ", ";
      out += group.members[i];
    }
    out += "} -> " + group.child + " via " + group.path_id + "\n";
  }
  for (const auto& edge : graph.weak_edges) {
    out += "  " + dot_quote(edge.from) + " -> " + dot_quote(edge.to) +
           " [style=dashed];\n";
  }
  out += "}\n";
  return out;
}

nlohmann::ordered_json closure_to_json(const ClosureResult& closure) {
  ordered_json out;
  out["victims"] = ordered_json::array();
  for (const auto& victim : closure.victims) {
    ordered_json v;
    v["account"] = victim.account_id;
    v["round"] = victim.round;
    if (victim.path_id.empty()) {
      v["path"] = nullptr;
    } else {
      v["path"] = victim.path_id;
    }
    out["victims"].push_back(std::move(v));
  }
  out["rounds"] = closure.rounds;
  out["possessed"] = ordered_json::array();
  for (const auto& kind : closure.final_knowledge.possessed) {
    out["possessed"].push_back(to_string(kind));
  }
  out["partials"] = ordered_json::array();
  for (const auto& [key, mask] : closure.final_knowledge.partials) {
    out["partials"].push_back(
        {{"kind", to_string(key.first)}, {"pattern", mask.pattern()}});
  }
  return out;
}

nlohmann::ordered_json export_json(const DependencyGraph& graph,
                                   const StatsReport& stats,
                                   const std::optional<ClosureResult>& closure) {
  ordered_json doc;
  doc["schema_version"] = "1";

  ordered_json g;
  std::set<std::string> fringe(graph.fringe.begin(), graph.fringe.end());
  g["nodes"] = ordered_json::array();
  for (const auto& id : graph.node_ids) {
    g["nodes"].push_back({{"id", id}, {"fringe", fringe.contains(id)}});
  }
  g["factor_edges"] = ordered_json::array();
  for (const auto& edge : graph.factor_edges) {
    g["factor_edges"].push_back({{"from", edge.from},
                                 {"to", edge.to},
                                 {"path", edge.path_id},
                                 {"kind", to_string(edge.kind)}});
  }
  g["strong_edges"] = ordered_json::array();
  for (const auto& edge : graph.strong_edges) {
    g["strong_edges"].push_back({{"parent", edge.parent},
                                 {"child", edge.child},
                                 {"path", edge.path_id},
                                 {"ap_only", edge.ap_only}});
  }
  g["weak_edges"] = ordered_json::array();
  for (const auto& edge : graph.weak_edges) {
    g["weak_edges"].push_back({{"from", edge.from}, {"to", edge.to}});
  }
  g["couple_file"] = ordered_json::array();
  for (const auto& group : graph.couple_file) {
    g["couple_file"].push_back(
        {{"members", group.members}, {"child", group.child}, {"path", group.path_id}});
  }
  ordered_json profile;
  profile["capabilities"] = ordered_json::array();
  for (const auto& kind : graph.profile.capabilities) {
    profile["capabilities"].push_back(to_string(kind));
  }
  profile["prior_knowledge"] = ordered_json::array();
  for (const auto& d : graph.profile.prior_knowledge) {
    ordered_json item;
    item["kind"] = to_string(d.kind);
    if (d.mask) item["mask"] = d.mask->pattern();
    profile["prior_knowledge"].push_back(std::move(item));
  }
  g["attacker_profile"] = std::move(profile);
  g["max_group_size"] = graph.max_group_size;
  doc["graph"] = std::move(g);

  doc["stats"] = stats_to_json(stats);
  doc["closure"] = closure ? closure_to_json(*closure) : ordered_json(nullptr);
  return doc;
}

DependencyGraph tdg_from_json(const nlohmann::json& doc) {
  const json& g = doc.contains("graph") ? doc.at("graph") : doc;
  DependencyGraph graph;
  for (const auto& node : g.at("nodes")) {
    graph.node_ids.push_back(node.at("id").get<std::string>());
    if (node.value("fringe", false)) {
      graph.fringe.push_back(node.at("id").get<std::string>());
    }
  }
  for (const auto& edge : g.at("factor_edges")) {
    graph.factor_edges.push_back(
        {edge.at("from").get<std::string>(), edge.at("to").get<std::string>(),
         edge.at("path").get<std::string>(),
         parse_factor_kind(edge.at("kind").get<std::string>())});
  }
  for (const auto& edge : g.at("strong_edges")) {
    graph.strong_edges.push_back(
        {edge.at("parent").get<std::string>(), edge.at("child").get<std::string>(),
         edge.at("path").get<std::string>(), edge.at("ap_only").get<bool>()});
  }
  for (const auto& edge : g.at("weak_edges")) {
    graph.weak_edges.push_back(
        {edge.at("from").get<std::string>(), edge.at("to").get<std::string>()});
  }
  for (const auto& group : g.at("couple_file")) {
    CoupleGroup parsed;
    for (const auto& member : group.at("members")) {
      parsed.members.push_back(member.get<std::string>());
    }
    parsed.child = group.at("child").get<std::string>();
    parsed.path_id = group.at("path").get<std::string>();
    graph.couple_file.push_back(std::move(parsed));
  }
  if (g.contains("attacker_profile")) {
    const json& p = g.at("attacker_profile");
    for (const auto& kind : p.at("capabilities")) {
      graph.profile.capabilities.insert(parse_factor_kind(kind.get<std::string>()));
    }
    for (const auto& d : p.at("prior_knowledge")) {
      Disclosure parsed;
      parsed.kind = parse_factor_kind(d.at("kind").get<std::string>());
      if (d.contains("mask") && !d.at("mask").is_null()) {
        Mask mask = Mask::parse_pattern(d.at("mask").get<std::string>());
        if (!mask_is_complete(mask)) parsed.mask = std::move(mask);
      }
      graph.profile.prior_knowledge.push_back(std::move(parsed));
    }
  }
  graph.max_group_size = g.value("max_group_size", 2);
  return graph;
}

}  // namespace actfort
