#include <doctest.h>

#include <filesystem>

#include "ibac/codec.hpp"
#include "ibac/dominance.hpp"
#include "ibac/error.hpp"
#include "ibac/process.hpp"
#include "support.hpp"

using namespace ibac;

namespace {

TupleRegistry printer_registry() {
  return TupleRegistry{}.with({"user1", "printer", {"TopSecret"}, ""});
}

TupleRegistry briefing_registry() {
  return TupleRegistry{}
      .with({"H", "room", {"TopSecret"}, "room"})
      .with({"L", "room", {"TopSecret"}, "room"});
}

}  // namespace

TEST_CASE("printing a public document through a registered top secret printer") {
  const auto s = testsupport::mi_schema();
  const auto allow = check_write_via_process(s, printer_registry(), "user1", {"TopSecret"}, "printer", {"Public"});
  CHECK(allow.allowed());
  CHECK(allow.tuple_registered);

  const auto deny = check_write_via_process(s, printer_registry(), "user2", {"TopSecret"}, "printer", {"Public"});
  CHECK_FALSE(deny.allowed());
  CHECK_FALSE(deny.tuple_registered);
  CHECK(deny.subject_dominates);
}

TEST_CASE("printer tuple clearance must also dominate") {
  const auto s = testsupport::mi_schema();
  const auto reg = TupleRegistry{}.with({"user1", "printer", {"Secret"}, ""});
  const auto r = check_write_via_process(s, reg, "user1", {"TopSecret"}, "printer", {"TopSecret"});
  CHECK_FALSE(r.allowed());
  CHECK(r.subject_dominates);
  CHECK_FALSE(r.tuple_dominates);
  CHECK_FALSE(check_write_via_process(s, printer_registry(), "user1", {"Secret"}, "printer", {"TopSecret"}).allowed());
  CHECK_THROWS_AS(check_write_via_process(s, reg, "user1", {"Secret"}, "plotter", {"Public"}), Error);
}

TEST_CASE("briefing room disclosure") {
  const auto s = testsupport::mi_schema();
  const LabelSet plan{"TopSecret"};

  // classical dominance alone denies the low-ranking officer
  CHECK_FALSE(test_prime_modulo(s, encode(s, Scheme::primeprod, expand_subject(s, {"Secret"}).included),
                                encode(s, Scheme::primeprod, plan))
                  .holds);

  const auto inside = check_disclosure_in_context(s, briefing_registry(), "H", {"TopSecret"}, "L", "room", plan);
  CHECK(inside.allowed());

  const auto outside_reg = TupleRegistry{}.with({"H", "room", {"TopSecret"}, "room"});
  const auto outside = check_disclosure_in_context(s, outside_reg, "H", {"TopSecret"}, "L", "room", plan);
  CHECK_FALSE(outside.allowed());
  CHECK_FALSE(outside.viewer_registered);

  const auto low_discloser = check_disclosure_in_context(s, briefing_registry(), "L", {"Secret"}, "H", "room", plan);
  CHECK_FALSE(low_discloser.allowed());
  CHECK_THROWS_AS(check_disclosure_in_context(s, briefing_registry(), "H", {"TopSecret"}, "L", "hall", plan), Error);
}

TEST_CASE("strict viewer mode also checks the viewer's tuple") {
  const auto s = testsupport::mi_schema();
  const auto reg = TupleRegistry{}
                       .with({"H", "room", {"TopSecret"}, "room"})
                       .with({"L", "room", {"Secret"}, "room"});
  CHECK(check_disclosure_in_context(s, reg, "H", {"TopSecret"}, "L", "room", {"TopSecret"}).allowed());
  CHECK_FALSE(check_disclosure_in_context(s, reg, "H", {"TopSecret"}, "L", "room", {"TopSecret"}, {true}).allowed());
  CHECK(check_disclosure_in_context(s, reg, "H", {"TopSecret"}, "L", "room", {"Secret"}, {true}).allowed());
}

TEST_CASE("with the tuple at the subject's clearance the decision is classical dominance") {
  testsupport::Rng rng(71);
  const auto s = testsupport::mi_schema();
  const auto u = s.universe();
  for (int i = 0; i < 500; ++i) {
    const LabelSet clearance(testsupport::random_subset(u, rng));
    LabelSet object;
    object.insert(s.levels[rng.below(s.levels.size())]);
    for (const auto& c : s.compartments) {
      if (rng.coin(0.3)) object.insert(c);
    }
    const auto reg = TupleRegistry{}.with({"u", "p", clearance, ""});
    const auto r = check_write_via_process(s, reg, "u", clearance, "p", object);
    const auto included = expand_subject(s, clearance).included;
    CHECK(r.allowed() == testsupport::subset_of(object.names(), included.names()));
  }
}

TEST_CASE("raising a tuple clearance never turns an allow into a deny") {
  testsupport::Rng rng(73);
  const auto s = testsupport::mi_schema();
  const auto u = s.universe();
  for (int i = 0; i < 300; ++i) {
    const LabelSet clearance(testsupport::random_subset(u, rng));
    LabelSet tuple(testsupport::random_subset(u, rng));
    const LabelSet object{s.levels[rng.below(s.levels.size())]};
    const auto before = check_write_via_process(s, TupleRegistry{}.with({"u", "p", tuple, ""}), "u", clearance, "p", object);
    tuple.insert(u[rng.below(u.size())]);
    const auto after = check_write_via_process(s, TupleRegistry{}.with({"u", "p", tuple, ""}), "u", clearance, "p", object);
    if (before.allowed()) CHECK(after.allowed());
  }
}

TEST_CASE("tuple checks commute") {
  // order of registration does not change any decision
  const auto s = testsupport::mi_schema();
  const auto a = TupleRegistry{}.with({"x", "p", {"Secret"}, ""}).with({"y", "p", {"Public"}, ""});
  const auto b = TupleRegistry{}.with({"y", "p", {"Public"}, ""}).with({"x", "p", {"Secret"}, ""});
  for (const char* who : {"x", "y", "z"}) {
    for (const auto& level : s.levels) {
      const auto ra = check_write_via_process(s, a, who, {"TopSecret"}, "p", {level});
      const auto rb = check_write_via_process(s, b, who, {"TopSecret"}, "p", {level});
      CHECK(ra.allowed() == rb.allowed());
      CHECK(ra.reason == rb.reason);
    }
  }
}

TEST_CASE("registry keeps one tuple per subject inside a context") {
  auto reg = briefing_registry();
  CHECK(reg.bijective_in("room"));
  CHECK_THROWS_AS(reg.with({"H", "room", {"Secret"}, "room"}), Error);
  CHECK_THROWS_AS(reg.with({"H", "room2", {"Secret"}, "room"}), Error);
  CHECK_NOTHROW(reg.with({"H", "printer", {"Secret"}, ""}));
  CHECK(reg.without("H", "room").tuples().size() == 1);
  try {
    reg.with({"H", "other", {"Secret"}, "room"});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::bijection_violation);
  }
}

TEST_CASE("registry JSON round-trip and atomic save") {
  const auto reg = briefing_registry().with({"user1", "printer", {"Secret", "MI6"}, ""});
  const auto again = parse_registry(registry_to_json(reg));
  CHECK(again.tuples() == reg.tuples());

  const auto dir = std::filesystem::temp_directory_path() / "ibac-registry-test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "tuples.json";
  save_registry(reg, path);
  CHECK(load_registry(path).tuples() == reg.tuples());
  CHECK_FALSE(std::filesystem::exists(dir / "tuples.json.tmp"));
  std::filesystem::remove_all(dir);

  CHECK_THROWS_AS(parse_registry(R"({"tuples":[{"subject":"a"}]})"), Error);
}
