#include "actfort/factors.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "actfort/errors.hpp"

namespace actfort {

namespace {

constexpr std::array<std::pair<FactorTag, std::string_view>, 17> kVocabulary{{
    {FactorTag::PhoneNumber, "phone-number"},
    {FactorTag::SmsCode, "sms-code"},
    {FactorTag::EmailAddress, "email-address"},
    {FactorTag::EmailCode, "email-code"},
    {FactorTag::Password, "password"},
    {FactorTag::CitizenId, "citizen-id"},
    {FactorTag::BankcardNumber, "bankcard-number"},
    {FactorTag::RealName, "real-name"},
    {FactorTag::Address, "address"},
    {FactorTag::UserId, "user-id"},
    {FactorTag::AcquaintanceName, "acquaintance-name"},
    {FactorTag::DeviceType, "device-type"},
    {FactorTag::SecurityQuestion, "security-question"},
    {FactorTag::Biometric, "biometric"},
    {FactorTag::PaymentPassword, "payment-password"},
    {FactorTag::CustomService, "custom-service"},
    {FactorTag::LinkedAccount, "linked-account"},
}};

constexpr std::array<std::pair<InfoCategory, std::string_view>, 5> kCategories{{
    {InfoCategory::Identity, "identity"},
    {InfoCategory::Account, "account"},
    {InfoCategory::SocialRelationship, "social-relationship"},
    {InfoCategory::Property, "property"},
    {InfoCategory::HistoricalRecords, "historical-records"},
}};

}  // namespace

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::UnknownFactorKind: return "unknown-factor-kind";
    case Errc::MissingQualifier: return "missing-qualifier";
    case Errc::InvalidMask: return "invalid-mask";
    case Errc::LengthMismatch: return "length-mismatch";
    case Errc::SchemaError: return "schema-error";
    case Errc::DanglingReference: return "dangling-reference";
    case Errc::DuplicateAccountId: return "duplicate-account-id";
    case Errc::UnknownAccount: return "unknown-account";
    case Errc::NoChainFound: return "no-chain-found";
    case Errc::EmptyEcosystem: return "empty-ecosystem";
  }
  return "error";
}

std::string_view tag_name(FactorTag tag) {
  for (const auto& [t, name] : kVocabulary) {
    if (t == tag) return name;
  }
  return "";
}

FactorKind linked_account(std::string provider) {
  return FactorKind{FactorTag::LinkedAccount, std::move(provider)};
}

FactorKind parse_factor_kind(std::string_view text) {
  std::string_view kind = text;
  std::string_view qualifier;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    kind = text.substr(0, colon);
    qualifier = text.substr(colon + 1);
  }
  for (const auto& [tag, name] : kVocabulary) {
    if (name != kind) continue;
    if (tag == FactorTag::LinkedAccount) {
      if (qualifier.empty()) {
        throw Error(Errc::MissingQualifier,
                    "linked-account requires a provider qualifier, got \"" +
                        std::string(text) + "\"");
      }
      return FactorKind{tag, std::string(qualifier)};
    }
    if (!qualifier.empty()) {
      throw Error(Errc::UnknownFactorKind,
                  "factor kind \"" + std::string(kind) +
                      "\" does not take a qualifier");
    }
    return FactorKind{tag, {}};
  }
  throw Error(Errc::UnknownFactorKind,
              "unknown factor kind \"" + std::string(text) + "\"");
}

std::string to_string(const FactorKind& kind) {
  std::string out{tag_name(kind.tag)};
  if (kind.tag == FactorTag::LinkedAccount) {
    out += ':';
    out += kind.qualifier;
  }
  return out;
}

Mask::Mask(int total_length, std::vector<Interval> revealed)
    : total_length_(total_length) {
  if (total_length <= 0) {
    throw Error(Errc::InvalidMask, "mask length must be positive");
  }
  std::sort(revealed.begin(), revealed.end());
  for (const auto& iv : revealed) {
    if (iv.begin < 0 || iv.end > total_length || iv.begin >= iv.end) {
      throw Error(Errc::InvalidMask, "mask interval out of bounds");
    }
  }
  // Canonical form: merge touching intervals, reject overlap.
  for (const auto& iv : revealed) {
    if (!revealed_.empty() && iv.begin < revealed_.back().end) {
      throw Error(Errc::InvalidMask, "mask intervals overlap");
    }
    if (!revealed_.empty() && iv.begin == revealed_.back().end) {
      revealed_.back().end = iv.end;
    } else {
      revealed_.push_back(iv);
    }
  }
}

Mask Mask::parse_pattern(std::string_view pattern) {
  if (pattern.empty()) {
    throw Error(Errc::InvalidMask, "empty mask pattern");
  }
  std::vector<Interval> revealed;
  for (int i = 0; i < static_cast<int>(pattern.size()); ++i) {
    const char c = pattern[i];
    if (c != 'X' && c != '#') {
      throw Error(Errc::InvalidMask,
                  "mask pattern may contain only 'X' and '#', got \"" +
                      std::string(pattern) + "\"");
    }
    if (c == 'X') {
      if (!revealed.empty() && revealed.back().end == i) {
        revealed.back().end = i + 1;
      } else {
        revealed.push_back({i, i + 1});
      }
    }
  }
  return Mask(static_cast<int>(pattern.size()), std::move(revealed));
}

int Mask::revealed_count() const {
  int n = 0;
  for (const auto& iv : revealed_) n += iv.end - iv.begin;
  return n;
}

std::string Mask::pattern() const {
  std::string out(static_cast<std::size_t>(total_length_), '#');
  for (const auto& iv : revealed_) {
    for (int i = iv.begin; i < iv.end; ++i) out[static_cast<std::size_t>(i)] = 'X';
  }
  return out;
}

Mask mask_merge(const Mask& a, const Mask& b) {
  if (a.total_length() != b.total_length()) {
    throw Error(Errc::LengthMismatch,
                "cannot merge masks of length " +
                    std::to_string(a.total_length()) + " and " +
                    std::to_string(b.total_length()));
  }
  std::vector<Mask::Interval> merged;
  auto add = [&merged](Mask::Interval iv) {
    if (!merged.empty() && iv.begin <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, iv.end);
    } else {
      merged.push_back(iv);
    }
  };
  auto ai = a.revealed().begin();
  auto bi = b.revealed().begin();
  while (ai != a.revealed().end() || bi != b.revealed().end()) {
    if (bi == b.revealed().end() ||
        (ai != a.revealed().end() && *ai <= *bi)) {
      add(*ai++);
    } else {
      add(*bi++);
    }
  }
  return Mask(a.total_length(), std::move(merged));
}

bool mask_is_complete(const Mask& m) {
  return m.revealed().size() == 1 && m.revealed().front().begin == 0 &&
         m.revealed().front().end == m.total_length();
}

std::string_view category_name(InfoCategory category) {
  for (const auto& [c, name] : kCategories) {
    if (c == category) return name;
  }
  return "";
}

InfoCategory parse_category(std::string_view text) {
  for (const auto& [c, name] : kCategories) {
    if (name == text) return c;
  }
  throw Error(Errc::SchemaError,
              "unknown info category \"" + std::string(text) + "\"");
}

InfoCategory categorize_info(const Disclosure& d) {
  if (d.category) return *d.category;
  switch (d.kind.tag) {
    case FactorTag::RealName:
    case FactorTag::CitizenId:
    case FactorTag::Address:
      return InfoCategory::Identity;
    case FactorTag::EmailAddress:
    case FactorTag::UserId:
    case FactorTag::LinkedAccount:
    case FactorTag::PhoneNumber:
      return InfoCategory::Account;
    case FactorTag::AcquaintanceName:
      return InfoCategory::SocialRelationship;
    case FactorTag::BankcardNumber:
      return InfoCategory::Property;
    default:
      return InfoCategory::HistoricalRecords;
  }
}

}  // namespace actfort
