#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace actfort {

/// Closed vocabulary of credential factors and personal-information kinds.
enum class FactorTag : std::uint8_t {
  PhoneNumber,
  SmsCode,
  EmailAddress,
  EmailCode,
  Password,
  CitizenId,
  BankcardNumber,
  RealName,
  Address,
  UserId,
  AcquaintanceName,
  DeviceType,
  SecurityQuestion,
  Biometric,
  PaymentPassword,
  CustomService,
  LinkedAccount,
};

std::string_view tag_name(FactorTag tag);

/// A factor kind. Linked-account kinds carry the provider account id as
/// qualifier; every other kind has an empty qualifier.
struct FactorKind {
  FactorTag tag = FactorTag::Password;
  std::string qualifier;

  auto operator<=>(const FactorKind&) const = default;
};

FactorKind linked_account(std::string provider);

/// Parses `kind(:qualifier)?`. Throws UnknownFactorKind for text outside the
/// vocabulary and MissingQualifier for a bare "linked-account".
FactorKind parse_factor_kind(std::string_view text);
std::string to_string(const FactorKind& kind);

using FactorSet = std::set<FactorKind>;

/// Revealed positions of a partially disclosed value, kept as sorted,
/// disjoint, non-adjacent half-open index intervals.
class Mask {
 public:
  struct Interval {
    int begin = 0;
    int end = 0;
    auto operator<=>(const Interval&) const = default;
  };

  Mask(int total_length, std::vector<Interval> revealed);

  /// Parses `^[X#]+$` where 'X' marks a revealed index.
  static Mask parse_pattern(std::string_view pattern);

  int total_length() const { return total_length_; }
  const std::vector<Interval>& revealed() const { return revealed_; }
  int revealed_count() const;
  std::string pattern() const;

  auto operator<=>(const Mask&) const = default;

 private:
  int total_length_ = 0;
  std::vector<Interval> revealed_;
};

/// Union of two views of the same value. Throws LengthMismatch when the
/// lengths differ (the disclosures cannot describe one value).
Mask mask_merge(const Mask& a, const Mask& b);

/// True iff the revealed intervals cover [0, total_length).
bool mask_is_complete(const Mask& m);

/// Five-way partition of exposed personal information.
enum class InfoCategory : std::uint8_t {
  Identity,
  Account,
  SocialRelationship,
  Property,
  HistoricalRecords,
};

std::string_view category_name(InfoCategory category);
InfoCategory parse_category(std::string_view text);

/// One item of personal information an account exposes. An absent mask means
/// the value is fully revealed; a declared category overrides the kind
/// default.
struct Disclosure {
  FactorKind kind;
  std::optional<Mask> mask;
  std::optional<InfoCategory> category;

  auto operator<=>(const Disclosure&) const = default;
};

/// Declared category when present, otherwise the default for the kind.
InfoCategory categorize_info(const Disclosure& d);

}  // namespace actfort
