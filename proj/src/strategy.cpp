#include "actfort/strategy.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

#include "actfort/errors.hpp"
#include "actfort/graph.hpp"

namespace actfort {

namespace {

void absorb_disclosure(KnowledgeBase& kb, const Disclosure& d, const std::string& step) {
  if (!d.mask) {
    if (kb.possessed.insert(d.kind).second) {
      kb.provenance.emplace(to_string(d.kind), step);
    }
    return;
  }
  auto key = std::make_pair(d.kind, d.mask->total_length());
  auto it = kb.partials.find(key);
  if (it == kb.partials.end()) {
    it = kb.partials.emplace(key, *d.mask).first;
  } else {
    it->second = mask_merge(it->second, *d.mask);
  }
  if (mask_is_complete(it->second)) {
    kb.partials.erase(it);
    if (kb.possessed.insert(d.kind).second) {
      kb.provenance.emplace(to_string(d.kind), step);
    }
  }
}

}  // namespace

KnowledgeBase KnowledgeBase::initial(const AttackerProfile& profile) {
  KnowledgeBase kb;
  for (const auto& kind : profile.capabilities) {
    kb.possessed.insert(kind);
    kb.provenance.emplace(to_string(kind), "attacker-profile");
  }
  for (const auto& d : profile.prior_knowledge) {
    absorb_disclosure(kb, d, "prior-knowledge");
  }
  return kb;
}

bool KnowledgeBase::is_compromised(const std::string& account_id) const {
  return std::find(compromised.begin(), compromised.end(), account_id) !=
         compromised.end();
}

void KnowledgeBase::absorb_account(const Account& account, const std::string& step) {
  compromised.push_back(account.id);
  provenance.emplace(account.id, step);
  if (possessed.insert(linked_account(account.id)).second) {
    provenance.emplace(to_string(linked_account(account.id)), step);
  }
  for (const auto& d : account.exposes) {
    absorb_disclosure(*this, d, step);
  }
}

ClosureResult victim_closure(const Ecosystem& ecosystem,
                             const std::vector<std::string>& seed) {
  std::set<std::string> seed_ids;
  for (const auto& id : seed) {
    ecosystem.account(id);  // throws UnknownAccount
    seed_ids.insert(id);
  }

  ClosureResult result;
  KnowledgeBase kb = KnowledgeBase::initial(ecosystem.profile());
  for (const auto& id : seed_ids) {
    kb.absorb_account(ecosystem.account(id), "seed");
    result.victims.push_back({id, 0, ""});
  }

  for (int round = 1;; ++round) {
    // Candidates are judged against the knowledge at round start.
    std::vector<Victim> wave;
    for (const auto& account : ecosystem.accounts()) {
      if (kb.is_compromised(account.id)) continue;
      for (const auto& path : ecosystem.effective_paths(account)) {
        if (path_satisfied(path, kb.possessed)) {
          wave.push_back({account.id, round, path.id});
          break;
        }
      }
    }
    if (wave.empty()) break;
    for (const auto& victim : wave) {
      kb.absorb_account(ecosystem.account(victim.account_id),
                        "round " + std::to_string(round));
      result.victims.push_back(victim);
    }
    result.rounds = round;
  }
  result.final_knowledge = std::move(kb);
  return result;
}

std::vector<std::string> AttackChain::account_sequence() const {
  std::vector<std::string> out;
  out.reserve(steps.size());
  for (const auto& step : steps) out.push_back(step.account_id);
  return out;
}

namespace {

// Forward-ordered (account id, path id) steps of a candidate chain.
using PlanStep = std::pair<std::string, std::string>;
using Plan = std::vector<PlanStep>;

bool plan_contains(const Plan& plan, const std::string& id) {
  return std::any_of(plan.begin(), plan.end(),
                     [&id](const PlanStep& s) { return s.first == id; });
}

std::vector<std::string> plan_accounts(const Plan& plan) {
  std::vector<std::string> out;
  out.reserve(plan.size());
  for (const auto& step : plan) out.push_back(step.first);
  return out;
}

class ChainSearch {
 public:
  // Search width per frame. The narrow beam keeps the alternatives
  // cross-product bounded on dense graphs; callers fall back to the
  // exhaustive width when the beam finds nothing despite reachability.
  struct Limits {
    std::size_t beam = 128;
    std::size_t visited_cap = 20000;
  };
  static Limits exhaustive() {
    return {std::numeric_limits<std::size_t>::max(), 2000000};
  }

  ChainSearch(const Ecosystem& ecosystem, const AttackerProfile& profile,
              Limits limits)
      : ecosystem_(ecosystem), profile_(profile), limits_(limits) {
    baseline_ = effective_disclosures(ecosystem, {}, profile);
    for (const auto& account : ecosystem.accounts()) {
      paths_.emplace(account.id, ecosystem.effective_paths(account));
      contributed_.emplace(account.id,
                           contributed_kinds(ecosystem, account, profile));
    }
  }

  std::vector<Plan> resolve(const std::string& id, int budget) {
    if (budget < 1) return {};
    auto key = std::make_pair(id, budget);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Plan> plans = compute(id, budget);
    memo_.emplace(std::move(key), plans);
    return plans;
  }

 private:
  const Ecosystem& ecosystem_;
  const AttackerProfile& profile_;
  Limits limits_;
  FactorSet baseline_;
  std::map<std::string, std::vector<AuthPath>> paths_;
  std::map<std::string, FactorSet> contributed_;
  std::map<std::pair<std::string, int>, std::vector<Plan>> memo_;

  void trim(std::vector<Plan>& plans) const {
    std::sort(plans.begin(), plans.end(), [](const Plan& a, const Plan& b) {
      return std::make_tuple(a.size(), plan_accounts(a), a) <
             std::make_tuple(b.size(), plan_accounts(b), b);
    });
    plans.erase(std::unique(plans.begin(), plans.end()), plans.end());
    if (plans.size() > limits_.beam) plans.resize(limits_.beam);
  }

  // First path the attacker profile alone satisfies; search stops there.
  const AuthPath* entry_path(const std::string& id) const {
    for (const auto& path : paths_.at(id)) {
      if (path_satisfied(path, baseline_)) return &path;
    }
    return nullptr;
  }

  bool offers_fragment(const Account& account, const FactorKind& kind) const {
    return std::any_of(account.exposes.begin(), account.exposes.end(),
                       [&kind](const Disclosure& d) {
                         return d.mask.has_value() && d.kind == kind;
                       });
  }

  // How far the providers get toward possessing `kind`: a large constant once
  // complete, otherwise the revealed-index count of the merged partial views.
  int kind_progress(const std::vector<std::string>& providers,
                    const FactorKind& kind) const {
    if (effective_disclosures(ecosystem_, providers, profile_).contains(kind)) {
      return 1 << 20;
    }
    std::map<int, Mask> pool;
    auto add = [&pool, &kind](const Disclosure& d) {
      if (!d.mask || d.kind != kind) return;
      auto it = pool.find(d.mask->total_length());
      if (it == pool.end()) {
        pool.emplace(d.mask->total_length(), *d.mask);
      } else {
        it->second = mask_merge(it->second, *d.mask);
      }
    };
    for (const auto& d : profile_.prior_knowledge) add(d);
    for (const auto& id : providers) {
      for (const auto& d : ecosystem_.account(id).exposes) add(d);
    }
    int bits = 0;
    for (const auto& [length, mask] : pool) bits += mask.revealed_count();
    return bits;
  }

  // All minimal provider sets of at most max_size members (excluding
  // `excluded`) whose joint coverage satisfies the path. Grows need-directed:
  // each added member must strictly advance the first still-missing factor,
  // an order every minimal set admits.
  std::vector<std::vector<std::string>> minimal_sets(
      const AuthPath& path, const std::set<std::string>& excluded,
      int max_size) const {
    FactorSet needed;
    for (const auto& factor : path.factors) {
      if (!baseline_.contains(factor)) needed.insert(factor);
    }
    std::vector<std::string> candidates;
    for (const auto& account : ecosystem_.accounts()) {
      if (excluded.contains(account.id)) continue;
      bool relevant = false;
      for (const auto& factor : needed) {
        if (contributed_.at(account.id).contains(factor) ||
            offers_fragment(account, factor)) {
          relevant = true;
          break;
        }
      }
      if (relevant) candidates.push_back(account.id);
    }

    std::map<std::vector<std::string>, FactorSet> coverage;
    auto known_of = [&](const std::vector<std::string>& members) -> const FactorSet& {
      auto it = coverage.find(members);
      if (it == coverage.end()) {
        it = coverage
                 .emplace(members,
                          effective_disclosures(ecosystem_, members, profile_))
                 .first;
      }
      return it->second;
    };

    std::set<std::vector<std::string>> found;
    std::set<std::vector<std::string>> visited;
    auto grow = [&](auto&& self, const std::vector<std::string>& members) -> void {
      if (visited.size() > limits_.visited_cap) return;
      if (!visited.insert(members).second) return;
      const FactorSet& known = known_of(members);
      if (path_satisfied(path, known)) {
        for (std::size_t skip = 0; skip < members.size(); ++skip) {
          std::vector<std::string> sub;
          for (std::size_t k = 0; k < members.size(); ++k) {
            if (k != skip) sub.push_back(members[k]);
          }
          if (path_satisfied(path, known_of(sub))) return;  // not minimal
        }
        found.insert(members);
        return;
      }
      if (static_cast<int>(members.size()) >= max_size) return;
      const FactorKind* missing = nullptr;
      for (const auto& factor : path.factors) {
        if (!known.contains(factor)) {
          missing = &factor;
          break;
        }
      }
      const int before = kind_progress(members, *missing);
      for (const auto& id : candidates) {
        if (std::find(members.begin(), members.end(), id) != members.end()) continue;
        const Account& account = ecosystem_.account(id);
        if (!contributed_.at(id).contains(*missing) &&
            !offers_fragment(account, *missing)) {
          continue;
        }
        std::vector<std::string> next = members;
        next.insert(std::lower_bound(next.begin(), next.end(), id), id);
        if (kind_progress(next, *missing) <= before) continue;
        self(self, next);
      }
    };
    grow(grow, {});
    return {found.begin(), found.end()};
  }

  // Plans resolving `id` within `budget` steps, standalone. Cached plans may
  // pass through any account; cycles cannot form because a frame discards
  // sub-plans that already contain its own account, so a plan through X is
  // dropped when it bubbles up to X's frame.
  std::vector<Plan> compute(const std::string& id, int budget) {
    std::vector<Plan> plans;
    if (const AuthPath* entry = entry_path(id)) {
      plans.push_back({{id, entry->id}});
      return plans;
    }
    if (budget < 2) return plans;

    for (const auto& path : paths_.at(id)) {
      // A set of k providers yields plans of at least k + 1 steps.
      for (const auto& providers : minimal_sets(path, {id}, budget - 1)) {
        std::vector<Plan> combos{{}};
        for (const auto& member : providers) {
          std::vector<Plan> next;
          for (const auto& combo : combos) {
            if (plan_contains(combo, member)) {
              next.push_back(combo);
              continue;
            }
            for (const auto& sub : resolve(member, budget - 1)) {
              if (plan_contains(sub, id)) continue;
              Plan merged = combo;
              for (const auto& step : sub) {
                if (!plan_contains(merged, step.first)) merged.push_back(step);
              }
              if (static_cast<int>(merged.size()) <= budget - 1) {
                next.push_back(std::move(merged));
              }
            }
          }
          trim(next);
          combos = std::move(next);
        }
        for (auto& combo : combos) {
          combo.push_back({id, path.id});
          plans.push_back(std::move(combo));
        }
      }
    }

    trim(plans);
    return plans;
  }
};

}  // namespace

std::vector<AttackChain> attack_chain(const Ecosystem& ecosystem,
                                      const std::string& target, int max_depth,
                                      bool find_all) {
  ecosystem.account(target);  // throws UnknownAccount
  const int cap = max_depth <= 0 ? static_cast<int>(ecosystem.accounts().size())
                                 : max_depth;

  // Fast sound negative: a chain exists only if the closure reaches the target.
  ClosureResult closure = victim_closure(ecosystem);
  int target_round = 0;
  for (const auto& victim : closure.victims) {
    if (victim.account_id == target) target_round = std::max(victim.round, 1);
  }
  if (target_round == 0) {
    throw Error(Errc::NoChainFound,
                "no chain to \"" + target + "\" under attacker profile");
  }

  // No chain can be shorter than the closure round that first reaches the
  // target, so deepening starts there.
  std::vector<Plan> plans;
  if (find_all) {
    ChainSearch search(ecosystem, ecosystem.profile(), ChainSearch::exhaustive());
    plans = search.resolve(target, cap);
  } else {
    ChainSearch search(ecosystem, ecosystem.profile(), ChainSearch::Limits{});
    for (int budget = target_round; budget <= cap && plans.empty(); ++budget) {
      plans = search.resolve(target, budget);
    }
    if (plans.empty() && target_round <= cap) {
      // The beam can starve on adversarial topologies; reachability is
      // already established, so retry at full width.
      ChainSearch full(ecosystem, ecosystem.profile(), ChainSearch::exhaustive());
      for (int budget = target_round; budget <= cap && plans.empty(); ++budget) {
        plans = full.resolve(target, budget);
      }
    }
  }
  if (plans.empty()) {
    throw Error(Errc::NoChainFound,
                "no chain to \"" + target + "\" within depth " +
                    std::to_string(cap));
  }

  // Shortest first, then lexicographic by account sequence.
  std::sort(plans.begin(), plans.end(), [](const Plan& a, const Plan& b) {
    return std::make_tuple(a.size(), plan_accounts(a)) <
           std::make_tuple(b.size(), plan_accounts(b));
  });
  std::vector<std::vector<std::string>> seen;
  std::vector<AttackChain> chains;
  for (const auto& plan : plans) {
    auto sequence = plan_accounts(plan);
    if (std::find(seen.begin(), seen.end(), sequence) != seen.end()) continue;

    // Forward replay; every emitted chain must satisfy each step in turn.
    KnowledgeBase kb = KnowledgeBase::initial(ecosystem.profile());
    AttackChain chain;
    chain.target = target;
    bool valid = true;
    for (const auto& [account_id, path_id] : plan) {
      const Account& account = ecosystem.account(account_id);
      const auto paths = ecosystem.effective_paths(account);
      const AuthPath* path = nullptr;
      for (const auto& p : paths) {
        if (p.id == path_id) {
          path = &p;
          break;
        }
      }
      if (path == nullptr || !path_satisfied(*path, kb.possessed)) {
        valid = false;
        break;
      }
      FactorSet before = kb.possessed;
      kb.absorb_account(account, account_id);
      FactorSet gained;
      std::set_difference(kb.possessed.begin(), kb.possessed.end(),
                          before.begin(), before.end(),
                          std::inserter(gained, gained.begin()));
      chain.steps.push_back({account_id, path_id, path->factors, std::move(gained)});
    }
    if (!valid) continue;
    seen.push_back(std::move(sequence));
    chains.push_back(std::move(chain));
    if (!find_all) break;
  }
  if (chains.empty()) {
    throw Error(Errc::NoChainFound,
                "no chain to \"" + target + "\" within depth " +
                    std::to_string(cap));
  }
  return chains;
}

std::string_view depth_class_name(DepthClass cls) {
  switch (cls) {
    case DepthClass::Direct: return "direct";
    case DepthClass::OneLayer: return "one-layer";
    case DepthClass::TwoLayerFull: return "two-layer-full";
    case DepthClass::TwoLayerMixed: return "two-layer-mixed";
    case DepthClass::Unreachable: return "unreachable";
  }
  return "";
}

namespace {

DepthResult classify_with(const Ecosystem& ecosystem, const std::string& account_id,
                          const ClosureResult& closure) {
  std::optional<int> round;
  std::set<std::string> direct_ids;
  for (const auto& victim : closure.victims) {
    if (victim.account_id == account_id) round = victim.round;
    if (victim.round == 1) direct_ids.insert(victim.account_id);
  }
  if (!round) return {DepthClass::Unreachable, std::nullopt};
  if (*round == 1) return {DepthClass::Direct, 1};

  const AttackerProfile& profile = ecosystem.profile();
  const Account& target = ecosystem.account(account_id);
  auto satisfiable_from = [&](const Account& child, const std::string& provider) {
    FactorSet known = effective_disclosures(ecosystem, {provider}, profile);
    for (const auto& path : ecosystem.effective_paths(child)) {
      if (path_satisfied(path, known)) return true;
    }
    return false;
  };

  // One middle account that the profile can enter directly.
  for (const auto& id : direct_ids) {
    if (id != account_id && satisfiable_from(target, id)) {
      return {DepthClass::OneLayer, *round};
    }
  }

  // Two middle layers of full-capacity parents.
  for (const auto& middle : ecosystem.accounts()) {
    if (middle.id == account_id || !satisfiable_from(target, middle.id)) continue;
    for (const auto& entry : direct_ids) {
      if (entry == middle.id || entry == account_id) continue;
      if (satisfiable_from(middle, entry)) {
        return {DepthClass::TwoLayerFull, *round};
      }
    }
  }

  // Two middle layers that pool knowledge through couple groups.
  if (*round <= 3) return {DepthClass::TwoLayerMixed, *round};

  // Deeper chains exist but fall outside the two-layer taxonomy.
  return {DepthClass::Unreachable, *round};
}

}  // namespace

DepthResult classify_depth(const Ecosystem& ecosystem, const std::string& account_id) {
  ecosystem.account(account_id);  // throws UnknownAccount
  return classify_with(ecosystem, account_id, victim_closure(ecosystem));
}

namespace {

struct WorldState {
  DepthResult depth;
  int suppliers = 0;

  // Harder worlds score higher: unreachable best, then later compromise,
  // then less redundant supply. Scoring only on the target keeps every cut
  // relevant to it.
  std::tuple<int, int, int> score() const {
    int rank = depth.rounds ? static_cast<int>(depth.cls)
                            : std::numeric_limits<int>::max();
    int rounds = depth.rounds ? *depth.rounds : std::numeric_limits<int>::max();
    return {rank, rounds, -suppliers};
  }
};

WorldState evaluate(const Ecosystem& ecosystem, const std::string& target) {
  ClosureResult closure = victim_closure(ecosystem);
  WorldState state{classify_with(ecosystem, target, closure), 0};

  // Redundant supply: reachable accounts that can feed a factor the target's
  // live paths need beyond the profile. Cutting one of several equivalent
  // providers does not move the depth class yet still hardens the target.
  // Paths no attacker can ever complete are dead; their factors do not count.
  std::set<std::string> reachable;
  for (const auto& victim : closure.victims) reachable.insert(victim.account_id);
  const FactorSet& maximal = closure.final_knowledge.possessed;
  FactorSet baseline = effective_disclosures(ecosystem, {}, ecosystem.profile());
  const Account& target_account = ecosystem.account(target);
  for (const auto& path : ecosystem.effective_paths(target_account)) {
    bool live = std::all_of(
        path.factors.begin(), path.factors.end(),
        [&maximal](const FactorKind& f) { return maximal.contains(f); });
    if (!live) continue;
    for (const auto& factor : path.factors) {
      if (baseline.contains(factor)) continue;
      for (const auto& account : ecosystem.accounts()) {
        if (account.id == target || !reachable.contains(account.id)) continue;
        bool supplies =
            contributed_kinds(ecosystem, account, ecosystem.profile())
                .contains(factor);
        for (const auto& d : account.exposes) {
          if (d.mask && d.kind == factor) supplies = true;
        }
        if (supplies) ++state.suppliers;
      }
    }
  }
  return state;
}

}  // namespace

std::vector<HardeningCut> harden(const Ecosystem& ecosystem,
                                 const std::string& target, int budget) {
  ecosystem.account(target);  // throws UnknownAccount
  std::vector<HardeningCut> cuts;
  Ecosystem world = ecosystem;
  WorldState current = evaluate(world, target);
  if (!current.depth.rounds) return cuts;  // already unreachable

  for (int step = 0; step < budget && current.depth.rounds; ++step) {
    std::optional<HardeningCut> best_cut;
    Ecosystem best_world;
    WorldState best_state = current;
    for (const auto& account : world.accounts()) {
      FactorSet kinds;
      for (const auto& d : account.exposes) kinds.insert(d.kind);
      for (const auto& kind : kinds) {
        Ecosystem candidate = world.without_disclosure(account.id, kind);
        WorldState state = evaluate(candidate, target);
        if (state.score() > best_state.score()) {
          best_state = state;
          best_world = std::move(candidate);
          best_cut = HardeningCut{account.id, kind, current.depth.cls,
                                  state.depth.cls};
        }
      }
    }
    if (!best_cut) break;  // no cut makes the target any harder
    cuts.push_back(*best_cut);
    world = std::move(best_world);
    current = best_state;
  }
  return cuts;
}

}  // namespace actfort
