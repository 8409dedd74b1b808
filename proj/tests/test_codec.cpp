#include <doctest.h>

#include "ibac/codec.hpp"
#include "ibac/error.hpp"
#include "support.hpp"

using namespace ibac;
using testsupport::Names;

namespace {

const LabelSet kUser{"Secret", "Protected", "Public", "MI5", "MI6"};

}  // namespace

TEST_CASE("staff user and objects encode to the worked-example values") {
  const auto s = testsupport::mi_schema();
  const auto user_e = encode(s, Scheme::expsum, kUser);
  CHECK(user_e.value == 1011);
  CHECK(user_e.value == testsupport::expsum_value({1, 2, 3, 5, 6}, 3));
  CHECK(encode(s, Scheme::expsum, {"Secret", "MI5"}).value == 246);
  CHECK(encode(s, Scheme::expsum, {"Secret", "GCHQ", "MI6"}).value == 813);

  CHECK(encode(s, Scheme::primeprod, kUser).value == 124355);
  CHECK(encode(s, Scheme::primeprod, kUser).value == 5 * 7 * 11 * 17 * 19);
  CHECK(encode(s, Scheme::primeprod, {"Secret", "MI5"}).value == 85);
  CHECK(encode(s, Scheme::bitvec, kUser).value == 0b1101110);
}

TEST_CASE("decode of 246 and 1011 strips the largest power each time") {
  const auto s = testsupport::mi_schema();
  DecodeStats stats;
  CHECK(deconstruct(246, 3, &stats) == std::vector<unsigned>{5, 1});
  CHECK(stats.iterations == 2);
  CHECK(deconstruct(1011, 3) == std::vector<unsigned>{6, 5, 3, 2, 1});
  CHECK(deconstruct(1011, 3) == testsupport::digit_indices(1011, 3));
  CHECK(decode(s, encode(s, Scheme::expsum, {"Secret", "MI5"})) == LabelSet{"Secret", "MI5"});
  CHECK(deconstruct(0, 3).empty());
}

TEST_CASE("deconstruct agrees with base-b digit reading for distinct indices") {
  testsupport::Rng rng(11);
  for (unsigned base : {2u, 3u, 5u, 7u, 10u}) {
    for (int i = 0; i < 300; ++i) {
      std::vector<unsigned> ks;
      for (unsigned k = 0; k < 40; ++k) {
        if (rng.coin(0.3)) ks.push_back(k);
      }
      const auto value = testsupport::expsum_value(ks, base);
      std::vector<unsigned> expected(ks.rbegin(), ks.rend());
      CHECK(deconstruct(value, base) == expected);
      CHECK(testsupport::digit_indices(value, base) == expected);
    }
  }
}

TEST_CASE("sparse tokens decode in one iteration per present label") {
  PolicySchema s;
  s.id = "wide";
  s.levels = {"L"};
  for (int i = 1; i < 64; ++i) s.compartments.push_back("c" + std::to_string(i));
  auto_assign(s);
  const auto t = encode(s, Scheme::expsum, {"L", "c40", "c63"});
  DecodeStats stats;
  CHECK(deconstruct(t.value, 3, &stats).size() == 3);
  CHECK(stats.iterations == 3);
}

TEST_CASE("encode and decode round-trip every subset of small schemas") {
  testsupport::Rng rng(3);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (unsigned base : {2u, 3u, 4u}) {
      const auto s = testsupport::flat_schema(n, base, rng);
      REQUIRE(validate_schema(s).ok());
      const auto u = s.universe();
      const std::uint64_t total = 1ull << n;
      const std::uint64_t step = n <= 10 ? 1 : 7;
      for (std::uint64_t mask = 0; mask < total; mask += step) {
        const LabelSet labels(testsupport::subset_from_mask(u, mask));
        for (auto scheme : {Scheme::bitvec, Scheme::expsum, Scheme::primeprod}) {
          const auto t = encode(s, scheme, labels);
          REQUIRE(decode(s, t) == labels);
          REQUIRE(parse_token(format_token(s, t), s.id) == t);
        }
      }
    }
  }
}

TEST_CASE("token values are independent oracles' sums and products") {
  testsupport::Rng rng(5);
  for (int round = 0; round < 200; ++round) {
    const auto s = testsupport::flat_schema(1 + rng.below(30), 2 + static_cast<unsigned>(rng.below(6)), rng);
    const auto labels = testsupport::random_subset(s.universe(), rng);
    std::vector<unsigned> ks;
    BigInt product = 1, bits = 0;
    for (const auto& n : labels) {
      ks.push_back(s.assignments.exponents.at(n));
      product *= s.assignments.primes.at(n);
      bits += BigInt(1) << s.assignments.bit_positions.at(n);
    }
    CHECK(encode(s, Scheme::expsum, LabelSet(labels)).value == testsupport::expsum_value(ks, s.base));
    CHECK(encode(s, Scheme::primeprod, LabelSet(labels)).value == product);
    CHECK(encode(s, Scheme::bitvec, LabelSet(labels)).value == bits);
    // every prime factor occurs once
    const auto f = testsupport::factor(product);
    CHECK(std::set<std::uint64_t>(f.begin(), f.end()).size() == f.size());
  }
}

TEST_CASE("distinct label sets never share a token (orthogonality)") {
  testsupport::Rng rng(17);
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto s = testsupport::flat_schema(n, 3, rng);
    const auto u = s.universe();
    for (auto scheme : {Scheme::bitvec, Scheme::expsum, Scheme::primeprod}) {
      std::set<BigInt> seen;
      for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        seen.insert(encode(s, scheme, LabelSet(testsupport::subset_from_mask(u, mask))).value);
      }
      CHECK(seen.size() == (1ull << n));
    }
  }
}

TEST_CASE("empty label set encodes to the identity") {
  const auto s = testsupport::mi_schema();
  CHECK(empty_token(s, Scheme::expsum).value == 0);
  CHECK(empty_token(s, Scheme::bitvec).value == 0);
  CHECK(empty_token(s, Scheme::primeprod).value == 1);
  CHECK(decode(s, empty_token(s, Scheme::primeprod)).empty());
}

TEST_CASE("malformed tokens are rejected on decode") {
  const auto s = testsupport::mi_schema();
  CHECK_THROWS_AS(decode(s, {Scheme::expsum, 2 * 243, 3, "mi"}), Error);      // repeated index
  CHECK_THROWS_AS(decode(s, {Scheme::expsum, 2187, 3, "mi"}), Error);         // 3^7 is outside the schema
  CHECK_THROWS_AS(decode(s, {Scheme::expsum, 246, 2, "mi"}), Error);          // wrong base
  CHECK_THROWS_AS(decode(s, {Scheme::primeprod, 25, 0, "mi"}), Error);        // 5 * 5
  CHECK_THROWS_AS(decode(s, {Scheme::primeprod, 2 * 5, 0, "mi"}), Error);     // 2 is not a schema prime
  CHECK_THROWS_AS(decode(s, {Scheme::primeprod, 0, 0, "mi"}), Error);
  CHECK_THROWS_AS(decode(s, {Scheme::bitvec, 1 << 7, 0, "mi"}), Error);
  CHECK_THROWS_AS(decode(s, {Scheme::primeprod, 85, 0, "other"}), Error);     // foreign schema
  CHECK_THROWS_AS(encode(s, Scheme::primeprod, {"Bogus"}), Error);
}

TEST_CASE("token text format") {
  CHECK(format_token({Scheme::primeprod, 124355, 0, ""}) == "p:124355");
  CHECK(format_token({Scheme::expsum, 1011, 3, ""}) == "e3:1011");
  CHECK(format_token({Scheme::bitvec, 0b110110, 0, ""}, 7) == "b:0b0110110");
  CHECK(parse_token("e3:1011") == Token{Scheme::expsum, 1011, 3, ""});
  CHECK(parse_token("b:0b0110110").value == 54);
  CHECK(parse_token("p:85", "mi").schema_id == "mi");
  for (const char* bad : {"", "p:", "p:-3", "x:12", "e:12", "e1:12", "b:12", "b:0b102", "p:12a"}) {
    CHECK_THROWS_AS(parse_token(bad), Error);
  }
}

TEST_CASE("token maintenance by arithmetic") {
  const auto s = testsupport::mi_schema();
  const auto user_e = encode(s, Scheme::expsum, kUser);
  const auto user_p = encode(s, Scheme::primeprod, kUser);

  const auto removed_e = remove_label(s, user_e, "MI5");
  CHECK(removed_e.value == 1011 - 243);
  CHECK(removed_e.value == 768);
  const auto removed_p = remove_label(s, user_p, "MI5");
  CHECK(removed_p.value == 124355 / 17);
  CHECK(removed_p.value == 7315);
  CHECK(add_label(s, removed_e, "MI5") == user_e);
  CHECK(add_label(s, removed_p, "MI5") == user_p);

  CHECK_THROWS_AS(add_label(s, user_e, "MI5"), Error);
  CHECK_THROWS_AS(remove_label(s, removed_p, "MI5"), Error);
  CHECK_THROWS_AS(add_label(s, user_p, "Bogus"), Error);

  const auto b = encode(s, Scheme::bitvec, kUser);
  CHECK(decode(s, remove_label(s, b, "MI6")) == LabelSet{"Secret", "Protected", "Public", "MI5"});
}

TEST_CASE("add and remove agree with re-encoding on random sets") {
  testsupport::Rng rng(23);
  for (int round = 0; round < 300; ++round) {
    const auto s = testsupport::flat_schema(1 + rng.below(20), 2 + static_cast<unsigned>(rng.below(4)), rng);
    const auto u = s.universe();
    auto labels = testsupport::random_subset(u, rng);
    const auto& pick = u[rng.below(u.size())];
    for (auto scheme : {Scheme::bitvec, Scheme::expsum, Scheme::primeprod}) {
      auto with = labels, without = labels;
      with.insert(pick);
      without.erase(pick);
      const auto t_with = encode(s, scheme, LabelSet(with));
      const auto t_without = encode(s, scheme, LabelSet(without));
      CHECK(remove_label(s, t_with, pick) == t_without);
      CHECK(add_label(s, t_without, pick) == t_with);
    }
  }
}

TEST_CASE("shared-key obfuscation") {
  const auto s = testsupport::mi_schema();
  const auto user_p = encode(s, Scheme::primeprod, kUser);

  const auto sub = obfuscate(s, user_p, Obfuscation::subtract_prime, 31);
  CHECK(sub.value == 124324);
  CHECK(deobfuscate(s, sub, 31) == user_p);
  CHECK_THROWS_AS(deobfuscate(s, sub, 37), Error);  // wrong key leaves a non-token

  const auto div = obfuscate(s, user_p, Obfuscation::divide_prime, 31);
  CHECK(div.value == 124355 * 31);
  CHECK(deobfuscate(s, div, 31) == user_p);

  const auto user_e = encode(s, Scheme::expsum, kUser);
  const auto hidden = obfuscate(s, user_e, Obfuscation::hidden_base, 5);
  CHECK(hidden.value == testsupport::expsum_value({1, 2, 3, 5, 6}, 5));
  CHECK(deobfuscate(s, hidden, 5) == user_e);

  CHECK_THROWS_AS(obfuscate(s, user_p, Obfuscation::subtract_prime, 17), Error);  // schema prime
  CHECK_THROWS_AS(obfuscate(s, user_p, Obfuscation::subtract_prime, 33), Error);  // not prime
  CHECK_THROWS_AS(obfuscate(s, user_e, Obfuscation::hidden_base, 3), Error);      // equals the base
  CHECK_THROWS_AS(obfuscate(s, user_p, Obfuscation::hidden_base, 5), Error);      // expsum only
  try {
    obfuscate(s, user_p, Obfuscation::subtract_prime, 17);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::key_collision);
  }
}

TEST_CASE("obfuscation round-trips on random tokens") {
  testsupport::Rng rng(29);
  const auto s = testsupport::mi_schema();
  const std::vector<std::uint64_t> keys{2, 23, 29, 31, 101, 7919};
  for (int i = 0; i < 200; ++i) {
    const LabelSet labels(testsupport::random_subset(s.universe(), rng));
    const auto key = keys[rng.below(keys.size())];
    for (auto scheme : {Scheme::expsum, Scheme::primeprod, Scheme::bitvec}) {
      const auto t = encode(s, scheme, labels);
      for (auto tr : {Obfuscation::subtract_prime, Obfuscation::divide_prime}) {
        CHECK(deobfuscate(s, obfuscate(s, t, tr, key), key) == t);
      }
    }
    const auto e = encode(s, Scheme::expsum, labels);
    const std::uint64_t hidden_key = 4 + rng.below(9);
    CHECK(deobfuscate(s, obfuscate(s, e, Obfuscation::hidden_base, hidden_key), hidden_key) == e);
  }
}

TEST_CASE("storage widths for three labels") {
  const auto rows = storage_report(testsupport::abc_schema());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].scheme == Scheme::bitvec);
  CHECK(rows[0].full_value == 7);
  CHECK(rows[0].bits == 3);
  CHECK(rows[1].scheme == Scheme::expsum);
  CHECK(rows[1].full_value == 13);
  CHECK(rows[1].bits == 4);
  CHECK(rows[2].scheme == Scheme::primeprod);
  CHECK(rows[2].full_value == 105);
  CHECK(rows[2].bits == 7);
}

TEST_CASE("floor_power and binary helpers") {
  CHECK(floor_power(246, 3).exponent == 5);
  CHECK(floor_power(243, 3).exponent == 5);
  CHECK(floor_power(242, 3).exponent == 4);
  CHECK(floor_power(1, 7).exponent == 0);
  CHECK(bit_length(0) == 0);
  CHECK(bit_length(105) == 7);
  CHECK(to_binary(13) == "1101");
  CHECK(to_binary(5, 6) == "000101");
  CHECK(parse_binary("1101001") == 105);
  testsupport::Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    const unsigned base = 2 + static_cast<unsigned>(rng.below(9));
    BigInt x = 1 + rng.below(1'000'000'000);
    x *= 1 + rng.below(1'000'000);
    const auto f = floor_power(x, base);
    CHECK(f.power <= x);
    CHECK(f.power * base > x);
    CHECK(f.power == ipow(base, f.exponent));
    CHECK(f.exponent + 1 == testsupport::digits(x, base).size());
  }
}
