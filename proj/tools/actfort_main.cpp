#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "actfort/ecosystem.hpp"
#include "actfort/errors.hpp"
#include "actfort/graph.hpp"
#include "actfort/report.hpp"
#include "actfort/strategy.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitNoChain = 3;

bool use_color() {
  return std::getenv("NO_COLOR") == nullptr && isatty(fileno(stderr));
}

void print_error(const std::string& message) {
  if (use_color()) {
    std::cerr << "\033[31merror:\033[0m " << message << "\n";
  } else {
    std::cerr << "error: " << message << "\n";
  }
}

actfort::Ecosystem load(const std::string& path, bool no_sms) {
  actfort::Ecosystem ecosystem = actfort::Ecosystem::load_file(path);
  if (!no_sms) return ecosystem;
  actfort::AttackerProfile profile = ecosystem.profile();
  profile.capabilities.erase({actfort::FactorTag::PhoneNumber, {}});
  profile.capabilities.erase({actfort::FactorTag::SmsCode, {}});
  return ecosystem.with_profile(std::move(profile));
}

void emit(const nlohmann::ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"actfort - account-takeover dependency analysis"};
  app.require_subcommand(1);

  std::string input;
  bool no_sms = false;
  std::string format = "dot";
  int max_group_size = 2;
  std::vector<std::string> seed;
  std::string target;
  int max_depth = 0;
  bool find_all = false;
  int budget = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", input, "ecosystem document (JSON)")->required();
    cmd->add_flag("--no-sms", no_sms,
                  "strip phone-number and sms-code from attacker capabilities");
  };

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "check a document and print diagnostics");
  add_common(validate_cmd);

  CLI::App* graph_cmd =
      app.add_subcommand("graph", "build and export the dependency graph");
  add_common(graph_cmd);
  graph_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"dot", "json"}));
  graph_cmd->add_option("--max-group-size", max_group_size, "couple group size cap")
      ->check(CLI::Range(2, 16));

  CLI::App* closure_cmd =
      app.add_subcommand("closure", "potential victims from a compromised seed");
  add_common(closure_cmd);
  closure_cmd->add_option("--seed", seed, "already-compromised account id");

  CLI::App* chain_cmd =
      app.add_subcommand("chain", "attack chain reaching a target account");
  add_common(chain_cmd);
  chain_cmd->add_option("--target", target, "target account id")->required();
  chain_cmd->add_option("--max-depth", max_depth,
                        "chain length cap (default: number of accounts)")
      ->check(CLI::PositiveNumber);
  chain_cmd->add_flag("--all", find_all, "list every simple chain");

  CLI::App* stats_cmd =
      app.add_subcommand("stats", "measurement statistics for the ecosystem");
  add_common(stats_cmd);

  CLI::App* harden_cmd =
      app.add_subcommand("harden", "recommend disclosure cuts for a target");
  add_common(harden_cmd);
  harden_cmd->add_option("--target", target, "target account id")->required();
  harden_cmd->add_option("--budget", budget, "maximum number of cuts")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    actfort::Ecosystem ecosystem = load(input, no_sms);

    if (validate_cmd->parsed()) {
      for (const auto& d : actfort::validate(ecosystem)) {
        std::cout << d.account_id << ": " << d.code << ": " << d.message << "\n";
      }
      return kExitOk;
    }

    if (graph_cmd->parsed()) {
      actfort::DependencyGraph graph = actfort::build_tdg(ecosystem, max_group_size);
      if (format == "dot") {
        std::cout << actfort::export_dot(graph);
      } else {
        actfort::StatsReport stats;
        if (!ecosystem.accounts().empty()) stats = actfort::compute_stats(ecosystem);
        emit(actfort::export_json(graph, stats));
      }
      return kExitOk;
    }

    if (closure_cmd->parsed()) {
      actfort::ClosureResult closure = actfort::victim_closure(ecosystem, seed);
      nlohmann::ordered_json doc;
      doc["schema_version"] = "1";
      std::sort(seed.begin(), seed.end());
      seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
      doc["seed"] = seed;
      doc.update(actfort::closure_to_json(closure));
      emit(doc);
      return kExitOk;
    }

    if (chain_cmd->parsed()) {
      auto chains = actfort::attack_chain(ecosystem, target, max_depth, find_all);
      for (const auto& chain : chains) {
        const auto sequence = chain.account_sequence();
        for (std::size_t i = 0; i < sequence.size(); ++i) {
          if (i > 0) std::cout << " -> ";
          std::cout << sequence[i];
        }
        std::cout << "\n";
      }
      return kExitOk;
    }

    if (stats_cmd->parsed()) {
      nlohmann::ordered_json doc;
      doc["schema_version"] = "1";
      doc.update(actfort::stats_to_json(actfort::compute_stats(ecosystem)));
      emit(doc);
      return kExitOk;
    }

    if (harden_cmd->parsed()) {
      actfort::DepthResult before = actfort::classify_depth(ecosystem, target);
      auto cuts = actfort::harden(ecosystem, target, budget);
      nlohmann::ordered_json doc;
      doc["schema_version"] = "1";
      doc["target"] = target;
      doc["budget"] = budget;
      doc["class_before"] = std::string(actfort::depth_class_name(before.cls));
      doc["cuts"] = nlohmann::ordered_json::array();
      for (const auto& cut : cuts) {
        doc["cuts"].push_back(
            {{"account", cut.account_id},
             {"kind", actfort::to_string(cut.kind)},
             {"before", std::string(actfort::depth_class_name(cut.before))},
             {"after", std::string(actfort::depth_class_name(cut.after))}});
      }
      doc["class_after"] = std::string(actfort::depth_class_name(
          cuts.empty() ? before.cls : cuts.back().after));
      emit(doc);
      return kExitOk;
    }
  } catch (const actfort::Error& e) {
    print_error(e.what());
    return e.code() == actfort::Errc::NoChainFound ? kExitNoChain : kExitInput;
  } catch (const std::exception& e) {
    print_error(e.what());
    return kExitInput;
  }
  return kExitUsage;
}
