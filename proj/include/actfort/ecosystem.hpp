#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "actfort/factors.hpp"

namespace actfort {

enum class PathPurpose : std::uint8_t { SignIn, PasswordReset, Payment };
enum class Platform : std::uint8_t { Web, Mobile };
enum class PathClass : std::uint8_t { General, Info, Unique };

std::string_view purpose_name(PathPurpose purpose);
std::string_view platform_name(Platform platform);
std::string_view path_class_name(PathClass cls);

/// One accepted combination of credential factors.
struct AuthPath {
  std::string id;
  PathPurpose purpose = PathPurpose::SignIn;
  FactorSet factors;
};

struct Account {
  std::string id;
  std::string name;
  std::string domain;
  Platform platform = Platform::Web;
  std::vector<AuthPath> auth_paths;       // declared order preserved
  std::vector<Disclosure> exposes;        // sorted, unique
  std::vector<std::string> linked_to;     // sorted, unique
};

/// Factor kinds the attacker can always supply plus disclosures known before
/// any compromise.
struct AttackerProfile {
  FactorSet capabilities;
  std::vector<Disclosure> prior_knowledge;
};

AttackerProfile default_profile();

/// One victim's account set plus the attacker profile, immutable after
/// construction. Accounts are kept sorted by id; all cross-references are
/// resolved at construction time.
class Ecosystem {
 public:
  Ecosystem() = default;
  Ecosystem(std::vector<Account> accounts, AttackerProfile profile);

  static Ecosystem load(std::string_view text);
  static Ecosystem load_file(const std::string& path);
  static Ecosystem from_json(const nlohmann::json& doc);

  nlohmann::ordered_json to_json() const;
  std::string dump(int indent = 2) const;

  const std::vector<Account>& accounts() const { return accounts_; }
  const AttackerProfile& profile() const { return profile_; }

  bool has_account(std::string_view id) const;
  const Account& account(std::string_view id) const;  // throws UnknownAccount

  /// Declared paths plus one zero-extra-factor sign-in path per account that
  /// lists this one in its linked_to set.
  std::vector<AuthPath> effective_paths(const Account& account) const;

  Ecosystem with_profile(AttackerProfile profile) const;

  /// What-if copy with every disclosure of `kind` removed from `account_id`.
  Ecosystem without_disclosure(const std::string& account_id,
                               const FactorKind& kind) const;

 private:
  std::vector<Account> accounts_;
  AttackerProfile profile_;
  std::map<std::string, std::size_t, std::less<>> index_;

  void reindex();
  void check_references() const;
};

/// general: only basic factors; unique: contains a biometric, payment-password
/// or custom-service factor; info: everything else. Precedence
/// unique > info > general.
PathClass classify_auth_path(const AuthPath& path);

struct Diagnostic {
  std::string account_id;
  std::string code;
  std::string message;

  auto operator<=>(const Diagnostic&) const = default;
};

/// Pure warning pass: SMS-dependent accounts, exposed identity credentials,
/// web/mobile asymmetry. Ordered by account id then code.
std::vector<Diagnostic> validate(const Ecosystem& ecosystem);

}  // namespace actfort
