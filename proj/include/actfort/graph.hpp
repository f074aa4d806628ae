#pragma once

#include <string>
#include <vector>

#include "actfort/ecosystem.hpp"
#include "actfort/factors.hpp"

namespace actfort {

/// Directed link from information exposed by one account to an equal-kind
/// credential factor required by a path of another account.
struct FactorEdge {
  std::string from;
  std::string to;
  std::string path_id;
  FactorKind kind;

  auto operator<=>(const FactorEdge&) const = default;
};

/// Parent alone (with the attacker profile) satisfies the named path of the
/// child. ap_only marks paths the profile satisfies with no parent at all.
struct StrongEdge {
  std::string parent;
  std::string child;
  std::string path_id;
  bool ap_only = false;

  auto operator<=>(const StrongEdge&) const = default;
};

/// Minimal set of accounts that jointly (with the attacker profile) satisfy
/// the named path of the child while no proper subset does.
struct CoupleGroup {
  std::vector<std::string> members;  // sorted, size >= 2
  std::string child;
  std::string path_id;

  auto operator<=>(const CoupleGroup&) const = default;
};

struct WeakEdge {
  std::string from;
  std::string to;

  auto operator<=>(const WeakEdge&) const = default;
};

struct DependencyGraph {
  std::vector<std::string> node_ids;       // sorted
  std::vector<std::string> fringe;         // nodes with a profile-only path
  std::vector<FactorEdge> factor_edges;
  std::vector<StrongEdge> strong_edges;
  std::vector<WeakEdge> weak_edges;        // one per distinct (member, child)
  std::vector<CoupleGroup> couple_file;
  AttackerProfile profile;
  int max_group_size = 2;
};

/// Coverage kernel: every factor kind obtainable from the profile plus the
/// given provider accounts. Unmasked disclosures count directly; partial
/// views of one value (same kind and length) are merged across providers and
/// prior knowledge, and count once complete. Each provider also yields its
/// own linked-account kind.
FactorSet effective_disclosures(const Ecosystem& ecosystem,
                                const std::vector<std::string>& providers,
                                const AttackerProfile& profile);

bool path_satisfied(const AuthPath& path, const FactorSet& known);

/// Factor kinds an account can contribute to others: kinds complete from its
/// own disclosures, kinds that complete only with its help, and its own
/// linked-account kind.
FactorSet contributed_kinds(const Ecosystem& ecosystem, const Account& account,
                            const AttackerProfile& profile);

std::vector<FactorEdge> build_factor_edges(const Ecosystem& ecosystem);

std::vector<StrongEdge> full_capacity_parents(const Ecosystem& ecosystem,
                                              const std::string& child);

std::vector<CoupleGroup> couple_groups(const Ecosystem& ecosystem,
                                       const std::string& child,
                                       int max_group_size);

DependencyGraph build_tdg(const Ecosystem& ecosystem, int max_group_size = 2);

}  // namespace actfort
