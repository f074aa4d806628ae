#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "actfort/ecosystem.hpp"
#include "actfort/factors.hpp"

namespace actfort {

/// Accumulating attacker knowledge: possessed factor kinds, partial views of
/// masked values keyed by (kind, length), and the compromise trail.
struct KnowledgeBase {
  FactorSet possessed;
  std::map<std::pair<FactorKind, int>, Mask> partials;
  std::vector<std::string> compromised;              // insertion order
  std::map<std::string, std::string> provenance;     // kind or account -> step

  static KnowledgeBase initial(const AttackerProfile& profile);

  bool is_compromised(const std::string& account_id) const;

  /// Records the account as compromised and absorbs everything it yields:
  /// its linked-account kind, unmasked disclosures, and partial views (a kind
  /// moves to possessed exactly when its merged mask completes).
  void absorb_account(const Account& account, const std::string& step);
};

struct Victim {
  std::string account_id;
  int round = 0;
  std::string path_id;  // empty for seed entries

  auto operator<=>(const Victim&) const = default;
};

struct ClosureResult {
  std::vector<Victim> victims;  // round-major, account-id order within a round
  int rounds = 0;
  KnowledgeBase final_knowledge;
};

/// Least fixpoint of "compromise every account with a satisfied path, absorb
/// its disclosures, repeat". Seed accounts enter at round 0.
ClosureResult victim_closure(const Ecosystem& ecosystem,
                             const std::vector<std::string>& seed = {});

struct ChainStep {
  std::string account_id;
  std::string path_id;
  FactorSet factors_consumed;
  FactorSet factors_gained;
};

struct AttackChain {
  std::vector<ChainStep> steps;  // forward order; last step is the target
  std::string target;

  std::vector<std::string> account_sequence() const;
};

/// Backward search from the target over full-capacity parents and merged
/// couple groups, stopping at accounts the profile alone can enter. Returns
/// the shortest chain first (ties broken lexicographically by account
/// sequence); find_all returns every simple chain within max_depth.
/// max_depth <= 0 means the number of accounts. Throws NoChainFound when the
/// target is robust under this profile.
std::vector<AttackChain> attack_chain(const Ecosystem& ecosystem,
                                      const std::string& target,
                                      int max_depth = 0, bool find_all = false);

enum class DepthClass : std::uint8_t {
  Direct,
  OneLayer,
  TwoLayerFull,
  TwoLayerMixed,
  Unreachable,
};

std::string_view depth_class_name(DepthClass cls);

/// Minimal compromise-depth class plus, when reachable, the closure round
/// that first compromises the account (chains deeper than two middle layers
/// collapse into Unreachable but keep their round count).
struct DepthResult {
  DepthClass cls = DepthClass::Unreachable;
  std::optional<int> rounds;
};

DepthResult classify_depth(const Ecosystem& ecosystem, const std::string& account_id);

struct HardeningCut {
  std::string account_id;
  FactorKind kind;
  DepthClass before = DepthClass::Unreachable;
  DepthClass after = DepthClass::Unreachable;
};

/// Greedy what-if analysis: up to `budget` disclosure removals that maximally
/// increase the target's depth class, preferring cuts that render it
/// unreachable. The ecosystem is never mutated.
std::vector<HardeningCut> harden(const Ecosystem& ecosystem,
                                 const std::string& target, int budget = 1);

}  // namespace actfort
