#include "roboline/scenario.hpp"

#include <doctest.h>

#include <string>

using namespace roboline;

namespace {

const char* kMinimal =
    "good_count = 2\n"
    "byz_count = 0\n"
    "good = [\"0\", \"4\"]\n"
    "robogram = \"midpoint\"\n"
    "demon = \"fsync\"\n";

Scenario parse_ok(const std::string& text) {
  ScenarioParseResult result = parse_scenario(text);
  for (const auto& e : result.errors) {
    CAPTURE(e.line);
    CAPTURE(e.field);
    CAPTURE(e.message);
    CHECK(false);
  }
  REQUIRE(result.ok());
  return *result.scenario;
}

}  // namespace

TEST_CASE("minimal scenario parses and fills defaults") {
  Scenario s = parse_ok(kMinimal);
  CHECK(s.space.good_count == 2);
  CHECK(s.space.byz_count == 0);
  CHECK(s.good == GoodPositions{Rational(0), Rational(4)});
  CHECK(s.byz.empty());
  CHECK(s.robogram == "midpoint");
  CHECK(s.demon.name == "fsync");
  CHECK(s.demon.params.empty());
  CHECK(s.query.epsilon == Rational(1, 100));
  CHECK(s.query.horizon == 10000);
  CHECK(s.query.hold_window == 100);
  CHECK(s.seed == 0);
}

TEST_CASE("comments, blank lines, and spacing are tolerated") {
  Scenario s = parse_ok(
      "# a convergence question\n"
      "\n"
      "  good_count = 2\n"
      "byz_count=0\n"
      "\tgood = [ \"0\" ,  \"4\" ]\n"
      "# which rule?\n"
      "robogram = \"midpoint\"\n"
      "demon = \"fsync\"\n"
      "\n");
  CHECK(s == parse_ok(kMinimal));
}

TEST_CASE("whole-line comments only: trailing text is an error") {
  ScenarioParseResult result = parse_scenario(
      "good_count = 3 # robots\n"
      "byz_count = 0\n"
      "good = [\"0\", \"1\", \"2\"]\n"
      "robogram = \"median\"\n"
      "demon = \"fsync\"\n");
  REQUIRE_FALSE(result.ok());
  REQUIRE(result.errors.size() == 1);
  CHECK(result.errors[0].line == 1);
  CHECK(result.errors[0].field == "good_count");
}

TEST_CASE("every error is reported, with its line number") {
  ScenarioParseResult result = parse_scenario(
      "# adversarial scenario\n"
      "good_count = 2\n"
      "byz_count = 2\n"
      "good = [\"0\", \"nope\"]\n"
      "robogram = \"average\"\n"
      "demon = \"pull:delta=100,mode=chase\"\n"
      "horizon = -5\n");
  REQUIRE_FALSE(result.ok());
  REQUIRE(result.errors.size() == 3);
  CHECK(result.errors[0].line == 4);
  CHECK(result.errors[0].field == "good");
  CHECK(result.errors[0].message == "bad rational \"nope\"");
  CHECK(result.errors[1].line == 5);
  CHECK(result.errors[1].field == "robogram");
  CHECK(result.errors[1].message == "unknown robogram \"average\"");
  CHECK(result.errors[2].line == 7);
  CHECK(result.errors[2].field == "horizon");
  CHECK(result.errors[2].message == "must be an integer >= 1");
}

TEST_CASE("missing required keys are reported as whole-file errors") {
  ScenarioParseResult result = parse_scenario("seed = 7\n");
  REQUIRE_FALSE(result.ok());
  REQUIRE(result.errors.size() == 5);
  for (const auto& e : result.errors) {
    CHECK(e.line == 0);
    CHECK(e.message == "missing required key");
  }
  CHECK(result.errors[0].field == "good_count");
}

TEST_CASE("duplicate and unknown keys") {
  ScenarioParseResult dup = parse_scenario(std::string(kMinimal) + "good_count = 3\n");
  REQUIRE_FALSE(dup.ok());
  REQUIRE(dup.errors.size() == 1);
  CHECK(dup.errors[0].line == 6);
  CHECK(dup.errors[0].field == "good_count");
  CHECK(dup.errors[0].message == "duplicate key");

  ScenarioParseResult unknown = parse_scenario(std::string(kMinimal) + "speed = 3\n");
  REQUIRE_FALSE(unknown.ok());
  REQUIRE(unknown.errors.size() == 1);
  CHECK(unknown.errors[0].field == "speed");
  CHECK(unknown.errors[0].message == "unknown key");

  ScenarioParseResult noeq = parse_scenario(std::string(kMinimal) + "horizon 50\n");
  REQUIRE_FALSE(noeq.ok());
  REQUIRE(noeq.errors.size() == 1);
  CHECK(noeq.errors[0].line == 6);
  CHECK(noeq.errors[0].message == "expected `key = value`");
}

TEST_CASE("placement arrays must match the declared counts") {
  ScenarioParseResult result = parse_scenario(
      "good_count = 2\n"
      "byz_count = 0\n"
      "good = [\"0\", \"4\", \"8\"]\n"
      "robogram = \"midpoint\"\n"
      "demon = \"fsync\"\n");
  REQUIRE_FALSE(result.ok());
  REQUIRE(result.errors.size() == 1);
  CHECK(result.errors[0].field == "good");
  CHECK(result.errors[0].message == "expected 2 locations, got 3");

  ScenarioParseResult unquoted = parse_scenario(
      "good_count = 2\n"
      "byz_count = 0\n"
      "good = [0, 4]\n"
      "robogram = \"midpoint\"\n"
      "demon = \"fsync\"\n");
  REQUIRE_FALSE(unquoted.ok());
  CHECK(unquoted.errors[0].message == "expected an array of quoted rationals");
}

TEST_CASE("pinned demons require byzantine placements; lengths must match") {
  ScenarioParseResult missing = parse_scenario(
      "good_count = 2\n"
      "byz_count = 1\n"
      "good = [\"0\", \"4\"]\n"
      "robogram = \"median\"\n"
      "demon = \"fsync\"\n");
  REQUIRE_FALSE(missing.ok());
  REQUIRE(missing.errors.size() == 1);
  CHECK(missing.errors[0].line == 0);
  CHECK(missing.errors[0].field == "byz");
  CHECK(missing.errors[0].message == "demon \"fsync\" needs pinned byzantine placements");

  ScenarioParseResult short_byz = parse_scenario(
      "good_count = 2\n"
      "byz_count = 2\n"
      "good = [\"0\", \"4\"]\n"
      "byz = [\"7\"]\n"
      "robogram = \"median\"\n"
      "demon = \"roundrobin:k=2\"\n");
  REQUIRE_FALSE(short_byz.ok());
  REQUIRE(short_byz.errors.size() == 1);
  CHECK(short_byz.errors[0].line == 4);
  CHECK(short_byz.errors[0].field == "byz");
  CHECK(short_byz.errors[0].message == "expected 2 locations, got 1");

  // Adversary demons place byzantine robots themselves: no byz key needed.
  Scenario adversary = parse_ok(
      "good_count = 2\n"
      "byz_count = 2\n"
      "good = [\"0\", \"4\"]\n"
      "robogram = \"midpoint\"\n"
      "demon = \"pull:delta=1,mode=alt\"\n");
  CHECK(adversary.byz.empty());
  CHECK(adversary.demon.params.at("delta") == "1");
  CHECK(adversary.demon.params.at("mode") == "alt");
}

TEST_CASE("demon spec grammar") {
  auto demon_error = [](const std::string& spec) {
    ScenarioParseResult result = parse_scenario(
        "good_count = 1\n"
        "byz_count = 0\n"
        "good = [\"0\"]\n"
        "robogram = \"midpoint\"\n"
        "demon = \"" +
        spec + "\"\n");
    REQUIRE_FALSE(result.ok());
    REQUIRE(result.errors.size() == 1);
    CHECK(result.errors[0].field == "demon");
    return result.errors[0].message;
  };

  CHECK(demon_error("ssync") == "unknown demon \"ssync\"");
  CHECK(demon_error("roundrobin:k=0") == "demon parameter k must be an integer >= 1");
  CHECK(demon_error("roundrobin:k=two") == "demon parameter k must be an integer >= 1");
  CHECK(demon_error("pull:delta=0") == "demon parameter delta must be positive");
  CHECK(demon_error("pull:delta=-3") == "demon parameter delta must be positive");
  CHECK(demon_error("pull:mode=sideways") == "demon parameter mode must be alt or chase");
  CHECK(demon_error("fsync:k=2") == "demon \"fsync\" does not take parameter \"k\"");
  CHECK(demon_error("split:mode=alt") == "demon \"split\" does not take parameter \"mode\"");
  CHECK(demon_error("pull:delta=1,delta=2") == "duplicate demon parameter \"delta\"");
  CHECK(demon_error("pull:delta") == "demon parameter needs key=value: \"delta\"");
  CHECK(demon_error("fsync:scale=0") == "demon parameter scale must be nonzero");
  CHECK(demon_error("fsync:scale=1/0") == "demon parameter scale is not a rational");

  // Every demon accepts a scale; parameter values are canonicalized.
  Scenario s = parse_ok(
      "good_count = 1\n"
      "byz_count = 0\n"
      "good = [\"0\"]\n"
      "robogram = \"midpoint\"\n"
      "demon = \"pull:scale=2, delta=2/4, mode=chase\"\n");
  CHECK(s.demon.params.at("delta") == "1/2");
  CHECK(s.demon.canonical() == "pull:delta=1/2,mode=chase,scale=2");
}

TEST_CASE("the documented demon names all parse") {
  for (const char* spec : {"fsync", "roundrobin:k=2", "pull:delta=100,mode=chase",
                           "split:delta=100,k=2", "fsync:scale=-3"}) {
    std::string byz_line = std::string(spec).rfind("fsync", 0) == 0 ||
                                   std::string(spec).rfind("roundrobin", 0) == 0
                               ? "byz = [\"9\"]\n"
                               : "";
    ScenarioParseResult result = parse_scenario(
        "good_count = 2\n"
        "byz_count = 1\n"
        "good = [\"0\", \"4\"]\n" +
        byz_line +
        "robogram = \"median\"\n"
        "demon = \"" +
        std::string(spec) + "\"\n");
    CAPTURE(spec);
    CHECK(result.ok());
  }
}

TEST_CASE("serialization round-trips through the parser") {
  Scenario s = parse_ok(
      "# shuffled on purpose\n"
      "seed = 42\n"
      "demon = \"split:k=2,delta=100\"\n"
      "epsilon = \"1/10\"\n"
      "robogram = \"median\"\n"
      "hold_window = 50\n"
      "good = [\"-1/2\", \"4\"]\n"
      "horizon = 300\n"
      "byz_count = 1\n"
      "good_count = 2\n");
  std::string text = serialize_scenario(s);
  ScenarioParseResult reparsed = parse_scenario(text);
  REQUIRE(reparsed.ok());
  CHECK(*reparsed.scenario == s);
  CHECK(serialize_scenario(*reparsed.scenario) == text);
  // Canonical form sorts demon parameters.
  CHECK(text.find("demon = \"split:delta=100,k=2\"") != std::string::npos);
}

TEST_CASE("build_demon constructs what the demon spec names") {
  Scenario fsync = parse_ok(
      "good_count = 2\n"
      "byz_count = 1\n"
      "good = [\"0\", \"4\"]\n"
      "byz = [\"100\"]\n"
      "robogram = \"median\"\n"
      "demon = \"fsync\"\n");
  auto d1 = build_demon(fsync);
  CHECK(d1->fully_synchronous());
  CHECK(d1->structurally_fair());

  Scenario rr = parse_ok(
      "good_count = 2\n"
      "byz_count = 0\n"
      "good = [\"0\", \"4\"]\n"
      "robogram = \"median\"\n"
      "demon = \"roundrobin:k=3\"\n");
  auto d2 = build_demon(rr);
  CHECK_FALSE(d2->fully_synchronous());
  CHECK(d2->k_bound() == std::uint64_t{3});
  CHECK(d2->activation_gap_bound() == std::uint64_t{3});

  Scenario pull = parse_ok(
      "good_count = 2\n"
      "byz_count = 2\n"
      "good = [\"0\", \"4\"]\n"
      "robogram = \"midpoint\"\n"
      "demon = \"pull\"\n");
  auto d3 = build_demon(pull);
  CHECK(d3->describe() == "pull:delta=100,mode=alt,scale=1");

  // Parsing accepts any population; the adversary regime check fires when
  // the demon is actually built.
  Scenario bad_split = parse_ok(
      "good_count = 3\n"
      "byz_count = 1\n"
      "good = [\"0\", \"4\", \"8\"]\n"
      "robogram = \"median\"\n"
      "demon = \"split\"\n");
  CHECK_THROWS_AS(build_demon(bad_split), std::invalid_argument);
}

TEST_CASE("resolve_robogram returns the named rule") {
  Scenario s = parse_ok(kMinimal);
  Robogram r = resolve_robogram(s);
  CHECK(r.name == "midpoint");
  CHECK(r.translation_equivariant);
}
