#pragma once

#include <random>
#include <string>
#include <vector>

#include "actfort/ecosystem.hpp"

namespace testgen {

struct GenOptions {
  int min_accounts = 1;
  int max_accounts = 8;
  int max_paths = 3;
  int max_factors = 4;
  bool with_masks = true;
  bool with_links = true;
  bool with_priors = true;
  bool vary_profile = true;
};

// Ten-kind factor vocabulary for randomized corpora.
inline const std::vector<actfort::FactorTag>& vocabulary() {
  static const std::vector<actfort::FactorTag> kinds{
      actfort::FactorTag::PhoneNumber,    actfort::FactorTag::SmsCode,
      actfort::FactorTag::EmailAddress,   actfort::FactorTag::EmailCode,
      actfort::FactorTag::Password,       actfort::FactorTag::CitizenId,
      actfort::FactorTag::BankcardNumber, actfort::FactorTag::RealName,
      actfort::FactorTag::Address,        actfort::FactorTag::UserId,
  };
  return kinds;
}

inline actfort::Mask random_mask(std::mt19937& rng) {
  std::uniform_int_distribution<int> len_pick(0, 1);
  const int length = len_pick(rng) == 0 ? 6 : 8;
  std::string pattern;
  std::bernoulli_distribution revealed(0.55);
  for (int i = 0; i < length; ++i) pattern += revealed(rng) ? 'X' : '#';
  return actfort::Mask::parse_pattern(pattern);
}

inline actfort::Ecosystem random_ecosystem(std::mt19937& rng,
                                           const GenOptions& opt = {}) {
  std::uniform_int_distribution<int> account_count(opt.min_accounts, opt.max_accounts);
  const int n = account_count(rng);
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("acct" + std::to_string(i));

  std::uniform_int_distribution<int> path_count(1, opt.max_paths);
  std::uniform_int_distribution<int> factor_count(1, opt.max_factors);
  std::uniform_int_distribution<int> kind_pick(0, static_cast<int>(vocabulary().size()) - 1);
  std::uniform_int_distribution<int> purpose_pick(0, 2);
  std::uniform_int_distribution<int> exposure_count(0, 4);
  std::uniform_int_distribution<int> id_pick(0, n - 1);
  std::bernoulli_distribution masked(0.3);
  std::bernoulli_distribution linked_factor(0.1);
  std::bernoulli_distribution add_link(0.15);
  std::bernoulli_distribution mobile(0.4);

  std::vector<actfort::Account> accounts;
  for (int i = 0; i < n; ++i) {
    actfort::Account account;
    account.id = ids[static_cast<std::size_t>(i)];
    account.name = account.id;
    account.domain = "generated";
    account.platform = mobile(rng) ? actfort::Platform::Mobile : actfort::Platform::Web;

    const int paths = path_count(rng);
    for (int k = 0; k < paths; ++k) {
      actfort::AuthPath path;
      path.id = "p" + std::to_string(k + 1);
      path.purpose = static_cast<actfort::PathPurpose>(purpose_pick(rng));
      const int factors = factor_count(rng);
      for (int f = 0; f < factors; ++f) {
        if (opt.with_links && n > 1 && linked_factor(rng)) {
          path.factors.insert(actfort::linked_account(ids[static_cast<std::size_t>(id_pick(rng))]));
        } else {
          path.factors.insert({vocabulary()[static_cast<std::size_t>(kind_pick(rng))], {}});
        }
      }
      account.auth_paths.push_back(std::move(path));
    }

    const int exposures = exposure_count(rng);
    for (int e = 0; e < exposures; ++e) {
      actfort::Disclosure d;
      d.kind = {vocabulary()[static_cast<std::size_t>(kind_pick(rng))], {}};
      if (opt.with_masks && masked(rng)) {
        actfort::Mask mask = random_mask(rng);
        if (!actfort::mask_is_complete(mask)) d.mask = std::move(mask);
      }
      account.exposes.push_back(std::move(d));
    }
    std::sort(account.exposes.begin(), account.exposes.end());
    account.exposes.erase(
        std::unique(account.exposes.begin(), account.exposes.end(),
                    [](const actfort::Disclosure& a, const actfort::Disclosure& b) {
                      return a.kind == b.kind && a.mask == b.mask;
                    }),
        account.exposes.end());

    if (opt.with_links && n > 1 && add_link(rng)) {
      std::string other = ids[static_cast<std::size_t>(id_pick(rng))];
      if (other != account.id) account.linked_to.push_back(other);
    }
    accounts.push_back(std::move(account));
  }

  actfort::AttackerProfile profile = actfort::default_profile();
  if (opt.vary_profile) {
    std::bernoulli_distribution reshape(0.3);
    if (reshape(rng)) {
      profile.capabilities.clear();
      std::uniform_int_distribution<int> cap_count(0, 3);
      const int caps = cap_count(rng);
      for (int c = 0; c < caps; ++c) {
        profile.capabilities.insert({vocabulary()[static_cast<std::size_t>(kind_pick(rng))], {}});
      }
    }
  }
  if (opt.with_priors) {
    std::bernoulli_distribution with_prior(0.3);
    if (with_prior(rng)) {
      std::uniform_int_distribution<int> prior_count(1, 2);
      const int priors = prior_count(rng);
      for (int p = 0; p < priors; ++p) {
        actfort::Disclosure d;
        d.kind = {vocabulary()[static_cast<std::size_t>(kind_pick(rng))], {}};
        if (opt.with_masks && masked(rng)) {
          actfort::Mask mask = random_mask(rng);
          if (!actfort::mask_is_complete(mask)) d.mask = std::move(mask);
        }
        profile.prior_knowledge.push_back(std::move(d));
      }
      std::sort(profile.prior_knowledge.begin(), profile.prior_knowledge.end());
      profile.prior_knowledge.erase(
          std::unique(profile.prior_knowledge.begin(), profile.prior_knowledge.end()),
          profile.prior_knowledge.end());
    }
  }
  return actfort::Ecosystem(std::move(accounts), std::move(profile));
}

}  // namespace testgen
