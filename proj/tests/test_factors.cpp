#include <doctest.h>

#include <random>
#include <vector>

#include "actfort/errors.hpp"
#include "actfort/factors.hpp"

using namespace actfort;

namespace {

// Per-index reference for mask coverage.
std::vector<bool> index_bits(const Mask& m) {
  std::vector<bool> bits(static_cast<std::size_t>(m.total_length()), false);
  for (const auto& iv : m.revealed()) {
    for (int i = iv.begin; i < iv.end; ++i) bits[static_cast<std::size_t>(i)] = true;
  }
  return bits;
}

Mask random_mask(std::mt19937& rng, int length) {
  std::string pattern;
  std::bernoulli_distribution revealed(0.5);
  for (int i = 0; i < length; ++i) pattern += revealed(rng) ? 'X' : '#';
  return Mask::parse_pattern(pattern);
}

}  // namespace

TEST_CASE("factor kind parsing covers the vocabulary") {
  CHECK(parse_factor_kind("sms-code") == FactorKind{FactorTag::SmsCode, {}});
  CHECK(parse_factor_kind("linked-account:gmail") ==
        FactorKind{FactorTag::LinkedAccount, "gmail"});
  CHECK_THROWS_AS(parse_factor_kind("fingerprint-magic"), Error);
  CHECK_THROWS_AS(parse_factor_kind("linked-account"), Error);
  CHECK_THROWS_AS(parse_factor_kind("sms-code:extra"), Error);
  CHECK_THROWS_AS(parse_factor_kind(""), Error);

  try {
    parse_factor_kind("linked-account");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingQualifier);
  }
  try {
    parse_factor_kind("totp");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownFactorKind);
  }
}

TEST_CASE("factor kind render/parse round-trip") {
  const char* vocabulary[] = {
      "phone-number", "sms-code", "email-address", "email-code", "password",
      "citizen-id", "bankcard-number", "real-name", "address", "user-id",
      "acquaintance-name", "device-type", "security-question", "biometric",
      "payment-password", "custom-service", "linked-account:expedia"};
  for (const char* text : vocabulary) {
    CHECK(to_string(parse_factor_kind(text)) == text);
  }
}

TEST_CASE("mask pattern parsing and rendering") {
  Mask m = Mask::parse_pattern("XX##XX");
  CHECK(m.total_length() == 6);
  CHECK(m.revealed() == std::vector<Mask::Interval>{{0, 2}, {4, 6}});
  CHECK(m.pattern() == "XX##XX");
  CHECK(m.revealed_count() == 4);

  CHECK_THROWS_AS(Mask::parse_pattern(""), Error);
  CHECK_THROWS_AS(Mask::parse_pattern("XXA#"), Error);

  // Adjacent intervals collapse to canonical form.
  Mask adjacent(18, {{0, 6}, {6, 18}});
  CHECK(adjacent.revealed() == std::vector<Mask::Interval>{{0, 18}});
  CHECK_THROWS_AS(Mask(8, {{0, 4}, {3, 6}}), Error);  // overlap
  CHECK_THROWS_AS(Mask(8, {{0, 9}}), Error);          // out of bounds
  CHECK_THROWS_AS(Mask(0, {}), Error);                // empty value
}

TEST_CASE("mask merge joins disjoint halves to completion") {
  Mask a(8, {{0, 4}});
  Mask b(8, {{4, 8}});
  Mask merged = mask_merge(a, b);
  CHECK(merged.total_length() == 8);
  CHECK(mask_is_complete(merged));
}

TEST_CASE("mask merge unions overlapping views") {
  Mask a(12, {{0, 6}});
  Mask b(12, {{4, 10}});
  Mask merged = mask_merge(a, b);
  CHECK(merged.revealed() == std::vector<Mask::Interval>{{0, 10}});

  // Cross-check against the per-index union.
  auto bits_a = index_bits(a);
  auto bits_b = index_bits(b);
  auto bits = index_bits(merged);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    CHECK(bits[i] == (bits_a[i] || bits_b[i]));
  }
}

TEST_CASE("mask merge rejects differing lengths") {
  Mask a(8, {{0, 4}});
  Mask b(10, {{0, 4}});
  CHECK_THROWS_AS(mask_merge(a, b), Error);
  try {
    mask_merge(a, b);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::LengthMismatch);
  }
}

TEST_CASE("mask completeness") {
  CHECK(mask_is_complete(Mask(4, {{0, 4}})));
  CHECK_FALSE(mask_is_complete(Mask(4, {{0, 3}})));
  CHECK(mask_is_complete(Mask(18, {{0, 6}, {6, 18}})));
  CHECK_FALSE(mask_is_complete(Mask(4, {})));
}

TEST_CASE("mask merge algebra over random interval sets") {
  std::mt19937 rng(20260808);
  for (int iter = 0; iter < 600; ++iter) {
    const int length = 4 + static_cast<int>(rng() % 10);
    Mask a = random_mask(rng, length);
    Mask b = random_mask(rng, length);
    Mask c = random_mask(rng, length);

    CHECK(mask_merge(a, b) == mask_merge(b, a));
    CHECK(mask_merge(mask_merge(a, b), c) == mask_merge(a, mask_merge(b, c)));
    CHECK(mask_merge(a, a) == a);

    Mask merged = mask_merge(a, b);
    CHECK(merged.revealed_count() >= a.revealed_count());
    CHECK(merged.revealed_count() >= b.revealed_count());

    // Completeness agrees with the boolean-array union.
    auto bits_a = index_bits(a);
    auto bits_b = index_bits(b);
    bool all = true;
    for (int i = 0; i < length; ++i) {
      all = all && (bits_a[static_cast<std::size_t>(i)] ||
                    bits_b[static_cast<std::size_t>(i)]);
    }
    CHECK(mask_is_complete(merged) == all);
  }
}

TEST_CASE("info category defaults by kind") {
  auto category_of = [](const char* kind) {
    return categorize_info({parse_factor_kind(kind), {}, {}});
  };
  CHECK(category_of("citizen-id") == InfoCategory::Identity);
  CHECK(category_of("real-name") == InfoCategory::Identity);
  CHECK(category_of("address") == InfoCategory::Identity);
  CHECK(category_of("bankcard-number") == InfoCategory::Property);
  CHECK(category_of("acquaintance-name") == InfoCategory::SocialRelationship);
  CHECK(category_of("email-address") == InfoCategory::Account);
  CHECK(category_of("user-id") == InfoCategory::Account);
  CHECK(category_of("linked-account:x") == InfoCategory::Account);
  CHECK(category_of("phone-number") == InfoCategory::Account);
  CHECK(category_of("device-type") == InfoCategory::HistoricalRecords);
  CHECK(category_of("sms-code") == InfoCategory::HistoricalRecords);

  // A declared category always wins over the default.
  Disclosure declared{parse_factor_kind("citizen-id"), {},
                      InfoCategory::HistoricalRecords};
  CHECK(categorize_info(declared) == InfoCategory::HistoricalRecords);
}

TEST_CASE("info category names parse back") {
  for (InfoCategory c : {InfoCategory::Identity, InfoCategory::Account,
                         InfoCategory::SocialRelationship, InfoCategory::Property,
                         InfoCategory::HistoricalRecords}) {
    CHECK(parse_category(category_name(c)) == c);
  }
  CHECK_THROWS_AS(parse_category("secrets"), Error);
}
