#include "actfort/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "actfort/errors.hpp"

namespace actfort {

namespace {

using PartialKey = std::pair<FactorKind, int>;  // kind + value length

void absorb_disclosure(const Disclosure& d, FactorSet& known,
                       std::map<PartialKey, Mask>& partials) {
  if (!d.mask) {
    known.insert(d.kind);
    return;
  }
  PartialKey key{d.kind, d.mask->total_length()};
  auto it = partials.find(key);
  if (it == partials.end()) {
    partials.emplace(key, *d.mask);
  } else {
    it->second = mask_merge(it->second, *d.mask);
  }
}

void settle_partials(const std::map<PartialKey, Mask>& partials, FactorSet& known) {
  for (const auto& [key, mask] : partials) {
    if (mask_is_complete(mask)) known.insert(key.first);
  }
}

}  // namespace

FactorSet effective_disclosures(const Ecosystem& ecosystem,
                                const std::vector<std::string>& providers,
                                const AttackerProfile& profile) {
  FactorSet known = profile.capabilities;
  std::map<PartialKey, Mask> partials;
  for (const auto& d : profile.prior_knowledge) {
    absorb_disclosure(d, known, partials);
  }
  std::set<std::string> unique(providers.begin(), providers.end());
  for (const auto& id : unique) {
    const Account& account = ecosystem.account(id);
    known.insert(linked_account(account.id));
    for (const auto& d : account.exposes) {
      absorb_disclosure(d, known, partials);
    }
  }
  settle_partials(partials, known);
  return known;
}

bool path_satisfied(const AuthPath& path, const FactorSet& known) {
  return std::includes(known.begin(), known.end(), path.factors.begin(),
                       path.factors.end());
}

FactorSet contributed_kinds(const Ecosystem& ecosystem, const Account& account,
                            const AttackerProfile& profile) {
  FactorSet out;
  out.insert(linked_account(account.id));

  // Kinds complete from the account's own disclosures alone.
  std::map<PartialKey, Mask> own;
  for (const auto& d : account.exposes) {
    absorb_disclosure(d, out, own);
  }
  settle_partials(own, out);

  // Kinds that complete only with the account's help (e.g. a partial view
  // joining masked prior knowledge).
  FactorSet baseline = effective_disclosures(ecosystem, {}, profile);
  FactorSet with = effective_disclosures(ecosystem, {account.id}, profile);
  for (const auto& kind : with) {
    if (!baseline.contains(kind)) out.insert(kind);
  }
  return out;
}

std::vector<FactorEdge> build_factor_edges(const Ecosystem& ecosystem) {
  std::set<FactorEdge> edges;
  for (const auto& provider : ecosystem.accounts()) {
    FactorSet offered = contributed_kinds(ecosystem, provider, ecosystem.profile());
    for (const auto& consumer : ecosystem.accounts()) {
      if (consumer.id == provider.id) continue;
      for (const auto& path : ecosystem.effective_paths(consumer)) {
        for (const auto& factor : path.factors) {
          if (offered.contains(factor)) {
            edges.insert({provider.id, consumer.id, path.id, factor});
          }
        }
      }
    }
  }
  return {edges.begin(), edges.end()};
}

std::vector<StrongEdge> full_capacity_parents(const Ecosystem& ecosystem,
                                              const std::string& child) {
  const Account& target = ecosystem.account(child);
  FactorSet baseline = effective_disclosures(ecosystem, {}, ecosystem.profile());
  std::vector<StrongEdge> edges;
  for (const auto& parent : ecosystem.accounts()) {
    if (parent.id == child) continue;
    FactorSet known =
        effective_disclosures(ecosystem, {parent.id}, ecosystem.profile());
    for (const auto& path : ecosystem.effective_paths(target)) {
      if (path_satisfied(path, known)) {
        edges.push_back(
            {parent.id, child, path.id, path_satisfied(path, baseline)});
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<CoupleGroup> couple_groups(const Ecosystem& ecosystem,
                                       const std::string& child,
                                       int max_group_size) {
  const Account& target = ecosystem.account(child);
  const AttackerProfile& profile = ecosystem.profile();
  FactorSet baseline = effective_disclosures(ecosystem, {}, profile);

  std::set<CoupleGroup> groups;
  for (const auto& path : ecosystem.effective_paths(target)) {
    if (path_satisfied(path, baseline)) continue;  // profile alone suffices

    FactorSet needed;
    for (const auto& factor : path.factors) {
      if (!baseline.contains(factor)) needed.insert(factor);
    }

    // Accounts that can touch a needed factor, whether completely or as a
    // partial view.
    std::vector<std::string> candidates;
    for (const auto& account : ecosystem.accounts()) {
      if (account.id == child) continue;
      bool relevant = needed.contains(linked_account(account.id));
      for (const auto& d : account.exposes) {
        if (needed.contains(d.kind)) relevant = true;
      }
      if (relevant) candidates.push_back(account.id);
    }

    const int n = static_cast<int>(candidates.size());
    const int cap = std::min(max_group_size, n);
    std::vector<int> pick;
    auto satisfied = [&](const std::vector<std::string>& members) {
      return path_satisfied(path,
                            effective_disclosures(ecosystem, members, profile));
    };
    auto enumerate = [&](auto&& self, int next, int size) -> void {
      if (static_cast<int>(pick.size()) == size) {
        std::vector<std::string> members;
        members.reserve(pick.size());
        for (int idx : pick) members.push_back(candidates[idx]);
        if (!satisfied(members)) return;
        // Minimal iff no immediate subset satisfies; smaller subsets follow
        // by monotonicity.
        for (std::size_t skip = 0; skip < members.size(); ++skip) {
          std::vector<std::string> sub;
          for (std::size_t k = 0; k < members.size(); ++k) {
            if (k != skip) sub.push_back(members[k]);
          }
          if (satisfied(sub)) return;
        }
        groups.insert({std::move(members), child, path.id});
        return;
      }
      for (int i = next; i < n; ++i) {
        pick.push_back(i);
        self(self, i + 1, size);
        pick.pop_back();
      }
    };
    for (int size = 2; size <= cap; ++size) {
      enumerate(enumerate, 0, size);
    }
  }
  return {groups.begin(), groups.end()};
}

DependencyGraph build_tdg(const Ecosystem& ecosystem, int max_group_size) {
  DependencyGraph graph;
  graph.profile = ecosystem.profile();
  graph.max_group_size = max_group_size;
  FactorSet baseline = effective_disclosures(ecosystem, {}, ecosystem.profile());
  for (const auto& account : ecosystem.accounts()) {
    graph.node_ids.push_back(account.id);
    for (const auto& path : ecosystem.effective_paths(account)) {
      if (path_satisfied(path, baseline)) {
        graph.fringe.push_back(account.id);
        break;
      }
    }
  }
  graph.factor_edges = build_factor_edges(ecosystem);

  std::set<WeakEdge> weak;
  for (const auto& account : ecosystem.accounts()) {
    auto strong = full_capacity_parents(ecosystem, account.id);
    graph.strong_edges.insert(graph.strong_edges.end(), strong.begin(), strong.end());
    auto couples = couple_groups(ecosystem, account.id, max_group_size);
    for (const auto& group : couples) {
      for (const auto& member : group.members) {
        weak.insert({member, account.id});
      }
    }
    graph.couple_file.insert(graph.couple_file.end(), couples.begin(), couples.end());
  }
  graph.weak_edges.assign(weak.begin(), weak.end());
  std::sort(graph.strong_edges.begin(), graph.strong_edges.end());
  std::sort(graph.couple_file.begin(), graph.couple_file.end(),
            [](const CoupleGroup& a, const CoupleGroup& b) {
              return std::tie(a.child, a.members, a.path_id) <
                     std::tie(b.child, b.members, b.path_id);
            });
  return graph;
}

}  // namespace actfort
