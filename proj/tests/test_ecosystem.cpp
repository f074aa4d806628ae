#include <doctest.h>

#include <string>

#include "actfort/ecosystem.hpp"
#include "actfort/errors.hpp"
#include "helpers.hpp"

using namespace actfort;

namespace {

Errc code_of(const std::string& text) {
  try {
    Ecosystem::load(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected load to fail");
  return Errc::SchemaError;
}

const char* kMinimal = R"({
  "accounts": [
    {"id": "solo", "auth_paths": [{"id": "p1", "purpose": "sign-in", "factors": ["password"]}]}
  ]
})";

}  // namespace

TEST_CASE("loads the two-account mail/payment fixture") {
  Ecosystem eco = testutil::load_fixture("case2.json");
  REQUIRE(eco.accounts().size() == 2);
  CHECK(eco.accounts()[0].id == "gmail");  // canonical account order
  CHECK(eco.accounts()[1].id == "paypal");

  const Account& gmail = eco.account("gmail");
  REQUIRE(gmail.auth_paths.size() == 2);
  CHECK(gmail.auth_paths[0].id == "reset-sms");  // declared order kept
  CHECK(gmail.auth_paths[0].purpose == PathPurpose::PasswordReset);
  CHECK(gmail.auth_paths[0].factors ==
        FactorSet{{FactorTag::PhoneNumber, {}}, {FactorTag::SmsCode, {}}});
  CHECK(gmail.exposes.size() == 3);
  CHECK(eco.profile().capabilities ==
        FactorSet{{FactorTag::PhoneNumber, {}}, {FactorTag::SmsCode, {}}});
}

TEST_CASE("empty account list is a valid ecosystem") {
  Ecosystem eco = Ecosystem::load(R"({"accounts": []})");
  CHECK(eco.accounts().empty());
  // Profile defaults to the SMS-interception attacker.
  CHECK(eco.profile().capabilities.contains({FactorTag::SmsCode, {}}));
}

TEST_CASE("explicit empty capability list stays empty") {
  Ecosystem eco = Ecosystem::load(
      R"({"accounts": [], "attacker_profile": {"capabilities": []}})");
  CHECK(eco.profile().capabilities.empty());
}

TEST_CASE("schema violations carry a document locator") {
  CHECK(code_of(R"({)") == Errc::SchemaError);
  CHECK(code_of(R"({"nope": 1})") == Errc::SchemaError);
  CHECK(code_of(R"({"accounts": [{}]})") == Errc::SchemaError);
  CHECK(code_of(R"({"accounts": [{"id": "a", "auth_paths": []}]})") ==
        Errc::SchemaError);
  CHECK(code_of(
            R"({"accounts": [{"id": "a", "auth_paths": [{"factors": []}]}]})") ==
        Errc::SchemaError);
  CHECK(code_of(
            R"({"accounts": [{"id": "a", "platform": "tablet",
                "auth_paths": [{"factors": ["password"]}]}]})") ==
        Errc::SchemaError);
  CHECK(code_of(
            R"({"accounts": [{"id": "a",
                "auth_paths": [{"purpose": "renew", "factors": ["password"]}]}]})") ==
        Errc::SchemaError);
  CHECK(code_of(
            R"({"accounts": [{"id": "a",
                "auth_paths": [{"factors": ["password", "password"]}]}]})") ==
        Errc::SchemaError);
  CHECK(code_of(
            R"({"accounts": [{"id": "a", "linked_to": ["a"],
                "auth_paths": [{"factors": ["password"]}]}]})") ==
        Errc::SchemaError);

  try {
    Ecosystem::load(R"({"accounts": [{"id": "a", "auth_paths": [
        {"factors": ["password"]}, {"factors": ["sms-code"]},
        {"id": "p1", "factors": ["biometric"]}]}]})");
    FAIL("expected duplicate path id");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SchemaError);
    CHECK(std::string(e.what()).find("p1") != std::string::npos);
  }

  try {
    Ecosystem::load(R"({"accounts": [{"id": "a",
        "auth_paths": [{"factors": ["password"]}],
        "exposes": [{"kind": "citizen-id", "mask": "XZ"}]}]})");
    FAIL("expected mask error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("exposes[0].mask") != std::string::npos);
  }
}

TEST_CASE("unresolved references are rejected") {
  CHECK(code_of(
            R"({"accounts": [{"id": "a",
                "auth_paths": [{"factors": ["linked-account:ghost"]}]}]})") ==
        Errc::DanglingReference);
  CHECK(code_of(
            R"({"accounts": [{"id": "a", "linked_to": ["ghost"],
                "auth_paths": [{"factors": ["password"]}]}]})") ==
        Errc::DanglingReference);
  CHECK(code_of(
            R"({"accounts": [{"id": "a",
                "auth_paths": [{"factors": ["password"]}],
                "exposes": [{"kind": "linked-account:ghost"}]}]})") ==
        Errc::DanglingReference);
  CHECK(code_of(
            R"({"accounts": [],
                "attacker_profile": {"capabilities": ["linked-account:ghost"]}})") ==
        Errc::DanglingReference);
}

TEST_CASE("duplicate account ids are rejected") {
  CHECK(code_of(
            R"({"accounts": [
                {"id": "a", "auth_paths": [{"factors": ["password"]}]},
                {"id": "a", "auth_paths": [{"factors": ["sms-code"]}]}]})") ==
        Errc::DuplicateAccountId);
}

TEST_CASE("complete masks normalize away and exposures deduplicate") {
  Ecosystem eco = Ecosystem::load(R"({"accounts": [{"id": "a",
      "auth_paths": [{"factors": ["password"]}],
      "exposes": [
        {"kind": "citizen-id", "mask": "XXXX"},
        {"kind": "citizen-id"},
        {"kind": "bankcard-number", "mask": "XX##"},
        {"kind": "bankcard-number", "mask": "XX##"}
      ]}]})");
  const Account& a = eco.account("a");
  REQUIRE(a.exposes.size() == 2);
  CHECK(a.exposes[0].kind.tag == FactorTag::CitizenId);
  CHECK_FALSE(a.exposes[0].mask.has_value());  // "XXXX" is fully revealed
  CHECK(a.exposes[1].kind.tag == FactorTag::BankcardNumber);
  REQUIRE(a.exposes[1].mask.has_value());
  CHECK(a.exposes[1].mask->pattern() == "XX##");
}

TEST_CASE("load, re-serialize, reload is identity") {
  for (const char* name : {"case1.json", "case2.json", "case3.json",
                           "sample.json", "services.json", "asym.json"}) {
    Ecosystem first = testutil::load_fixture(name);
    Ecosystem second = Ecosystem::load(first.dump());
    CHECK(first.to_json() == second.to_json());
  }
}

TEST_CASE("unknown account lookups fail by id") {
  Ecosystem eco = Ecosystem::load(kMinimal);
  CHECK_THROWS_AS(eco.account("ghost"), Error);
  try {
    eco.account("ghost");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownAccount);
    CHECK(std::string(e.what()).find("ghost") != std::string::npos);
  }
}

TEST_CASE("linked accounts become zero-extra-factor paths") {
  Ecosystem eco = Ecosystem::load(R"({"accounts": [
      {"id": "provider", "linked_to": ["child"],
       "auth_paths": [{"id": "sms", "factors": ["phone-number", "sms-code"]}]},
      {"id": "child",
       "auth_paths": [{"id": "pw", "factors": ["password"]}]}]})");
  auto paths = eco.effective_paths(eco.account("child"));
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].id == "pw");
  CHECK(paths[1].id == "linked:provider");
  CHECK(paths[1].factors == FactorSet{linked_account("provider")});

  // A declared path with the same factor set suppresses the synthetic one.
  Ecosystem declared = Ecosystem::load(R"({"accounts": [
      {"id": "provider", "linked_to": ["child"],
       "auth_paths": [{"id": "sms", "factors": ["phone-number", "sms-code"]}]},
      {"id": "child",
       "auth_paths": [{"id": "sso", "factors": ["linked-account:provider"]}]}]})");
  auto declared_paths = declared.effective_paths(declared.account("child"));
  CHECK(declared_paths.size() == 1);
  CHECK(declared_paths[0].id == "sso");
}

TEST_CASE("auth path classes partition by strongest factor") {
  auto classify = [](FactorSet factors) {
    return classify_auth_path({"p", PathPurpose::SignIn, std::move(factors)});
  };
  CHECK(classify({{FactorTag::PhoneNumber, {}}, {FactorTag::SmsCode, {}}}) ==
        PathClass::General);
  CHECK(classify({{FactorTag::EmailAddress, {}}, {FactorTag::Password, {}}}) ==
        PathClass::General);
  CHECK(classify({{FactorTag::SmsCode, {}}, {FactorTag::CitizenId, {}}}) ==
        PathClass::Info);
  CHECK(classify({{FactorTag::Biometric, {}}}) == PathClass::Unique);
  CHECK(classify({{FactorTag::PaymentPassword, {}}}) == PathClass::Unique);
  CHECK(classify({{FactorTag::CustomService, {}}, {FactorTag::CitizenId, {}}}) ==
        PathClass::Unique);  // unique beats info
  CHECK(classify({{FactorTag::Biometric, {}}, {FactorTag::SmsCode, {}}}) ==
        PathClass::Unique);  // unique beats general
  CHECK(classify({linked_account("x")}) == PathClass::Info);
}

TEST_CASE("validation flags exposed identity credentials") {
  Ecosystem eco = testutil::load_fixture("case3.json");
  auto diagnostics = validate(eco);
  bool found = false;
  for (const auto& d : diagnostics) {
    if (d.account_id == "ctrip" && d.code == "exposes-identity-credential") {
      found = true;
      CHECK(d.message.find("citizen-id") != std::string::npos);
    }
  }
  CHECK(found);
}

TEST_CASE("validation flags web/mobile asymmetry and SMS dependence") {
  Ecosystem eco = testutil::load_fixture("asym.json");
  auto diagnostics = validate(eco);
  REQUIRE(diagnostics.size() == 3);
  // Ordered by account id then code.
  CHECK(diagnostics[0].account_id == "gome-mobile");
  CHECK(diagnostics[0].code == "no-sms-free-path");
  CHECK(diagnostics[1].account_id == "gome-mobile");
  CHECK(diagnostics[1].code == "platform-asymmetry");
  CHECK(diagnostics[2].account_id == "gome-web");
  CHECK(diagnostics[2].code == "no-sms-free-path");

  CHECK(validate(eco) == diagnostics);  // pure
}

TEST_CASE("no asymmetry when factor sets match across platforms") {
  Ecosystem eco = Ecosystem::load(R"({"accounts": [
      {"id": "shop-web", "name": "Shop", "platform": "web",
       "auth_paths": [{"factors": ["phone-number", "sms-code"]}]},
      {"id": "shop-app", "name": "Shop", "platform": "mobile",
       "auth_paths": [{"factors": ["phone-number", "sms-code"]}]}]})");
  for (const auto& d : validate(eco)) {
    CHECK(d.code != "platform-asymmetry");
  }
}

TEST_CASE("quiet account yields no diagnostics") {
  Ecosystem eco = Ecosystem::load(kMinimal);
  CHECK(validate(eco).empty());
}
