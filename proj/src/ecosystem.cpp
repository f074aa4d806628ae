#include "actfort/ecosystem.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "actfort/errors.hpp"

namespace actfort {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(Errc::SchemaError, where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing key \"") + key + "\"");
  return *it;
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) schema_error(where, "expected a string");
  return v.get<std::string>();
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      schema_error(where, "unknown key \"" + it.key() + "\"");
    }
  }
}

PathPurpose parse_purpose(const std::string& text, const std::string& where) {
  if (text == "sign-in") return PathPurpose::SignIn;
  if (text == "password-reset") return PathPurpose::PasswordReset;
  if (text == "payment") return PathPurpose::Payment;
  schema_error(where, "unknown purpose \"" + text + "\"");
}

Platform parse_platform(const std::string& text, const std::string& where) {
  if (text == "web") return Platform::Web;
  if (text == "mobile") return Platform::Mobile;
  schema_error(where, "unknown platform \"" + text + "\"");
}

FactorKind parse_kind_at(const std::string& text, const std::string& where) {
  try {
    return parse_factor_kind(text);
  } catch (const Error& e) {
    throw Error(e.code(), where + ": " + e.what());
  }
}

Disclosure parse_disclosure(const json& v, const std::string& where,
                            bool allow_category) {
  if (!v.is_object()) schema_error(where, "expected an object");
  if (allow_category) {
    check_keys(v, {"kind", "mask", "category"}, where);
  } else {
    check_keys(v, {"kind", "mask"}, where);
  }
  Disclosure d;
  d.kind = parse_kind_at(get_string(require(v, "kind", where), where + ".kind"),
                         where + ".kind");
  if (auto it = v.find("mask"); it != v.end() && !it->is_null()) {
    try {
      Mask m = Mask::parse_pattern(get_string(*it, where + ".mask"));
      // A fully revealed value carries no mask.
      if (!mask_is_complete(m)) d.mask = std::move(m);
    } catch (const Error& e) {
      throw Error(e.code(), where + ".mask: " + e.what());
    }
  }
  if (auto it = v.find("category"); it != v.end() && !it->is_null()) {
    d.category = parse_category(get_string(*it, where + ".category"));
  }
  return d;
}

AuthPath parse_auth_path(const json& v, std::size_t index, const std::string& where) {
  if (!v.is_object()) schema_error(where, "expected an object");
  check_keys(v, {"id", "purpose", "factors"}, where);
  AuthPath path;
  if (auto it = v.find("id"); it != v.end()) {
    path.id = get_string(*it, where + ".id");
    if (path.id.empty()) schema_error(where + ".id", "path id must be non-empty");
  } else {
    path.id = "p" + std::to_string(index + 1);
  }
  if (auto it = v.find("purpose"); it != v.end()) {
    path.purpose = parse_purpose(get_string(*it, where + ".purpose"), where + ".purpose");
  }
  const json& factors = require(v, "factors", where);
  if (!factors.is_array() || factors.empty()) {
    schema_error(where + ".factors", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::string fw = where + ".factors[" + std::to_string(i) + "]";
    FactorKind kind = parse_kind_at(get_string(factors[i], fw), fw);
    if (!path.factors.insert(kind).second) {
      schema_error(fw, "duplicate factor \"" + to_string(kind) + "\"");
    }
  }
  return path;
}

Account parse_account(const json& v, std::size_t index) {
  const std::string where = "accounts[" + std::to_string(index) + "]";
  if (!v.is_object()) schema_error(where, "expected an object");
  check_keys(v, {"id", "name", "domain", "platform", "auth_paths", "exposes", "linked_to"},
             where);
  Account account;
  account.id = get_string(require(v, "id", where), where + ".id");
  if (account.id.empty()) schema_error(where + ".id", "account id must be non-empty");
  account.name = account.id;
  if (auto it = v.find("name"); it != v.end()) {
    account.name = get_string(*it, where + ".name");
  }
  if (auto it = v.find("domain"); it != v.end()) {
    account.domain = get_string(*it, where + ".domain");
  }
  if (auto it = v.find("platform"); it != v.end()) {
    account.platform = parse_platform(get_string(*it, where + ".platform"),
                                      where + ".platform");
  }
  const json& paths = require(v, "auth_paths", where);
  if (!paths.is_array() || paths.empty()) {
    schema_error(where + ".auth_paths", "expected a non-empty array");
  }
  std::set<std::string> path_ids;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    AuthPath path = parse_auth_path(paths[i], i,
                                    where + ".auth_paths[" + std::to_string(i) + "]");
    if (!path_ids.insert(path.id).second) {
      schema_error(where + ".auth_paths", "duplicate path id \"" + path.id + "\"");
    }
    account.auth_paths.push_back(std::move(path));
  }
  if (auto it = v.find("exposes"); it != v.end()) {
    if (!it->is_array()) schema_error(where + ".exposes", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      account.exposes.push_back(parse_disclosure(
          (*it)[i], where + ".exposes[" + std::to_string(i) + "]", true));
    }
    // Set semantics keyed by (kind, mask); first declaration wins.
    std::stable_sort(account.exposes.begin(), account.exposes.end(),
                     [](const Disclosure& a, const Disclosure& b) {
                       return std::tie(a.kind, a.mask) < std::tie(b.kind, b.mask);
                     });
    account.exposes.erase(
        std::unique(account.exposes.begin(), account.exposes.end(),
                    [](const Disclosure& a, const Disclosure& b) {
                      return a.kind == b.kind && a.mask == b.mask;
                    }),
        account.exposes.end());
  }
  if (auto it = v.find("linked_to"); it != v.end()) {
    if (!it->is_array()) schema_error(where + ".linked_to", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      account.linked_to.push_back(
          get_string((*it)[i], where + ".linked_to[" + std::to_string(i) + "]"));
    }
    std::sort(account.linked_to.begin(), account.linked_to.end());
    account.linked_to.erase(
        std::unique(account.linked_to.begin(), account.linked_to.end()),
        account.linked_to.end());
  }
  return account;
}

ordered_json disclosure_to_json(const Disclosure& d) {
  ordered_json out;
  out["kind"] = to_string(d.kind);
  if (d.mask) out["mask"] = d.mask->pattern();
  if (d.category) out["category"] = std::string(category_name(*d.category));
  return out;
}

}  // namespace

std::string_view purpose_name(PathPurpose purpose) {
  switch (purpose) {
    case PathPurpose::SignIn: return "sign-in";
    case PathPurpose::PasswordReset: return "password-reset";
    case PathPurpose::Payment: return "payment";
  }
  return "";
}

std::string_view platform_name(Platform platform) {
  return platform == Platform::Web ? "web" : "mobile";
}

std::string_view path_class_name(PathClass cls) {
  switch (cls) {
    case PathClass::General: return "general";
    case PathClass::Info: return "info";
    case PathClass::Unique: return "unique";
  }
  return "";
}

AttackerProfile default_profile() {
  AttackerProfile profile;
  profile.capabilities.insert(FactorKind{FactorTag::PhoneNumber, {}});
  profile.capabilities.insert(FactorKind{FactorTag::SmsCode, {}});
  return profile;
}

Ecosystem::Ecosystem(std::vector<Account> accounts, AttackerProfile profile)
    : accounts_(std::move(accounts)), profile_(std::move(profile)) {
  std::sort(accounts_.begin(), accounts_.end(),
            [](const Account& a, const Account& b) { return a.id < b.id; });
  reindex();
  check_references();
}

void Ecosystem::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < accounts_.size(); ++i) {
    if (!index_.emplace(accounts_[i].id, i).second) {
      throw Error(Errc::DuplicateAccountId,
                  "duplicate account id \"" + accounts_[i].id + "\"");
    }
  }
}

void Ecosystem::check_references() const {
  auto check_kind = [this](const FactorKind& kind, const std::string& where) {
    if (kind.tag == FactorTag::LinkedAccount && !has_account(kind.qualifier)) {
      throw Error(Errc::DanglingReference,
                  where + ": linked-account qualifier \"" + kind.qualifier +
                      "\" names no account");
    }
  };
  for (const auto& account : accounts_) {
    for (const auto& target : account.linked_to) {
      if (target == account.id) {
        throw Error(Errc::SchemaError,
                    "account \"" + account.id + "\" links to itself");
      }
      if (!has_account(target)) {
        throw Error(Errc::DanglingReference,
                    "account \"" + account.id + "\" links to unknown account \"" +
                        target + "\"");
      }
    }
    for (const auto& path : account.auth_paths) {
      for (const auto& factor : path.factors) {
        check_kind(factor, "account \"" + account.id + "\" path \"" + path.id + "\"");
      }
    }
    for (const auto& d : account.exposes) {
      check_kind(d.kind, "account \"" + account.id + "\" exposes");
    }
  }
  for (const auto& kind : profile_.capabilities) {
    check_kind(kind, "attacker_profile.capabilities");
  }
  for (const auto& d : profile_.prior_knowledge) {
    check_kind(d.kind, "attacker_profile.prior_knowledge");
  }
}

Ecosystem Ecosystem::load(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::SchemaError, std::string("document: ") + e.what());
  }
  return from_json(doc);
}

Ecosystem Ecosystem::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::SchemaError, "cannot open \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load(buffer.str());
}

Ecosystem Ecosystem::from_json(const json& doc) {
  if (!doc.is_object()) schema_error("document", "expected an object");
  check_keys(doc, {"accounts", "attacker_profile"}, "document");
  const json& accounts_json = require(doc, "accounts", "document");
  if (!accounts_json.is_array()) schema_error("accounts", "expected an array");

  std::vector<Account> accounts;
  accounts.reserve(accounts_json.size());
  for (std::size_t i = 0; i < accounts_json.size(); ++i) {
    accounts.push_back(parse_account(accounts_json[i], i));
  }

  AttackerProfile profile = default_profile();
  if (auto it = doc.find("attacker_profile"); it != doc.end() && !it->is_null()) {
    const json& p = *it;
    if (!p.is_object()) schema_error("attacker_profile", "expected an object");
    check_keys(p, {"capabilities", "prior_knowledge"}, "attacker_profile");
    if (auto caps = p.find("capabilities"); caps != p.end()) {
      if (!caps->is_array()) {
        schema_error("attacker_profile.capabilities", "expected an array");
      }
      profile.capabilities.clear();
      for (std::size_t i = 0; i < caps->size(); ++i) {
        const std::string where =
            "attacker_profile.capabilities[" + std::to_string(i) + "]";
        profile.capabilities.insert(
            parse_kind_at(get_string((*caps)[i], where), where));
      }
    }
    if (auto prior = p.find("prior_knowledge"); prior != p.end()) {
      if (!prior->is_array()) {
        schema_error("attacker_profile.prior_knowledge", "expected an array");
      }
      for (std::size_t i = 0; i < prior->size(); ++i) {
        profile.prior_knowledge.push_back(parse_disclosure(
            (*prior)[i], "attacker_profile.prior_knowledge[" + std::to_string(i) + "]",
            false));
      }
      std::sort(profile.prior_knowledge.begin(), profile.prior_knowledge.end());
      profile.prior_knowledge.erase(
          std::unique(profile.prior_knowledge.begin(), profile.prior_knowledge.end()),
          profile.prior_knowledge.end());
    }
  }
  return Ecosystem(std::move(accounts), std::move(profile));
}

nlohmann::ordered_json Ecosystem::to_json() const {
  ordered_json doc;
  doc["accounts"] = ordered_json::array();
  for (const auto& account : accounts_) {
    ordered_json a;
    a["id"] = account.id;
    a["name"] = account.name;
    a["domain"] = account.domain;
    a["platform"] = std::string(platform_name(account.platform));
    a["auth_paths"] = ordered_json::array();
    for (const auto& path : account.auth_paths) {
      ordered_json p;
      p["id"] = path.id;
      p["purpose"] = std::string(purpose_name(path.purpose));
      p["factors"] = ordered_json::array();
      for (const auto& factor : path.factors) p["factors"].push_back(to_string(factor));
      a["auth_paths"].push_back(std::move(p));
    }
    a["exposes"] = ordered_json::array();
    for (const auto& d : account.exposes) a["exposes"].push_back(disclosure_to_json(d));
    a["linked_to"] = account.linked_to;
    doc["accounts"].push_back(std::move(a));
  }
  ordered_json profile;
  profile["capabilities"] = ordered_json::array();
  for (const auto& kind : profile_.capabilities) {
    profile["capabilities"].push_back(to_string(kind));
  }
  profile["prior_knowledge"] = ordered_json::array();
  for (const auto& d : profile_.prior_knowledge) {
    ordered_json item;
    item["kind"] = to_string(d.kind);
    if (d.mask) item["mask"] = d.mask->pattern();
    profile["prior_knowledge"].push_back(std::move(item));
  }
  doc["attacker_profile"] = std::move(profile);
  return doc;
}

std::string Ecosystem::dump(int indent) const { return to_json().dump(indent); }

bool Ecosystem::has_account(std::string_view id) const {
  return index_.find(id) != index_.end();
}

const Account& Ecosystem::account(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error(Errc::UnknownAccount, "unknown account \"" + std::string(id) + "\"");
  }
  return accounts_[it->second];
}

std::vector<AuthPath> Ecosystem::effective_paths(const Account& account) const {
  std::vector<AuthPath> paths = account.auth_paths;
  for (const auto& provider : accounts_) {
    if (provider.id == account.id) continue;
    if (!std::binary_search(provider.linked_to.begin(), provider.linked_to.end(),
                            account.id)) {
      continue;
    }
    FactorSet factors{linked_account(provider.id)};
    bool declared = std::any_of(
        account.auth_paths.begin(), account.auth_paths.end(),
        [&factors](const AuthPath& p) { return p.factors == factors; });
    if (declared) continue;
    paths.push_back(AuthPath{"linked:" + provider.id, PathPurpose::SignIn,
                             std::move(factors)});
  }
  return paths;
}

Ecosystem Ecosystem::with_profile(AttackerProfile profile) const {
  return Ecosystem(accounts_, std::move(profile));
}

Ecosystem Ecosystem::without_disclosure(const std::string& account_id,
                                        const FactorKind& kind) const {
  std::vector<Account> accounts = accounts_;
  bool found = false;
  for (auto& account : accounts) {
    if (account.id != account_id) continue;
    found = true;
    std::erase_if(account.exposes,
                  [&kind](const Disclosure& d) { return d.kind == kind; });
  }
  if (!found) {
    throw Error(Errc::UnknownAccount, "unknown account \"" + account_id + "\"");
  }
  return Ecosystem(std::move(accounts), profile_);
}

PathClass classify_auth_path(const AuthPath& path) {
  static const std::set<FactorTag> general_tags{
      FactorTag::PhoneNumber, FactorTag::SmsCode,  FactorTag::EmailAddress,
      FactorTag::EmailCode,   FactorTag::Password, FactorTag::UserId,
  };
  bool all_general = true;
  for (const auto& factor : path.factors) {
    switch (factor.tag) {
      case FactorTag::Biometric:
      case FactorTag::PaymentPassword:
      case FactorTag::CustomService:
        return PathClass::Unique;
      default:
        if (!general_tags.contains(factor.tag)) all_general = false;
    }
  }
  return all_general ? PathClass::General : PathClass::Info;
}

std::vector<Diagnostic> validate(const Ecosystem& ecosystem) {
  std::vector<Diagnostic> out;
  const FactorKind sms{FactorTag::SmsCode, {}};

  for (const auto& account : ecosystem.accounts()) {
    bool sms_free = std::any_of(
        account.auth_paths.begin(), account.auth_paths.end(),
        [&sms](const AuthPath& p) { return !p.factors.contains(sms); });
    if (!sms_free) {
      out.push_back({account.id, "no-sms-free-path",
                     "every authentication path of \"" + account.id +
                         "\" requires sms-code"});
    }

    // Within-account merge: several partial views of one value may complete.
    std::map<std::pair<FactorKind, int>, Mask> partials;
    std::set<FactorKind> complete;
    for (const auto& d : account.exposes) {
      if (!d.mask) {
        complete.insert(d.kind);
        continue;
      }
      auto key = std::make_pair(d.kind, d.mask->total_length());
      auto it = partials.find(key);
      if (it == partials.end()) {
        partials.emplace(key, *d.mask);
      } else {
        it->second = mask_merge(it->second, *d.mask);
      }
    }
    for (const auto& [key, mask] : partials) {
      if (mask_is_complete(mask)) complete.insert(key.first);
    }
    for (FactorTag tag : {FactorTag::CitizenId, FactorTag::BankcardNumber}) {
      if (complete.contains(FactorKind{tag, {}})) {
        out.push_back({account.id, "exposes-identity-credential",
                       "\"" + account.id + "\" exposes identity credential usable "
                       "elsewhere (" + std::string(tag_name(tag)) + ")"});
      }
    }
  }

  // Web/mobile pairs sharing a display name with differing path factor sets.
  const auto& accounts = ecosystem.accounts();
  for (std::size_t i = 0; i < accounts.size(); ++i) {
    for (std::size_t j = i + 1; j < accounts.size(); ++j) {
      const Account& a = accounts[i];
      const Account& b = accounts[j];
      if (a.name != b.name || a.platform == b.platform) continue;
      auto factor_sets = [](const Account& account) {
        std::set<FactorSet> sets;
        for (const auto& p : account.auth_paths) sets.insert(p.factors);
        return sets;
      };
      if (factor_sets(a) != factor_sets(b)) {
        out.push_back({a.id, "platform-asymmetry",
                       "\"" + a.id + "\" and \"" + b.id +
                           "\" share display name \"" + a.name +
                           "\" but require different factors"});
      }
    }
  }

  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace actfort
