#include <gtest/gtest.h>

#include "cli_corpus.hpp"
#include "support.hpp"

using namespace kelley;
using kelley::cli::Json;
using kelley::testing::run_cli;

namespace {

const std::string kFixtures = KELLEY_FIXTURE_DIR;

}  // namespace

TEST(ParseInstance, Examples) {
  cli::Instance inst = cli::parse_instance(R"({"ground":["a","b"],"sets":[["a"],["b"]]})");
  ASSERT_TRUE(inst.sets.has_value());
  EXPECT_EQ(inst.sets->size(), 2u);

  try {
    cli::parse_instance(R"({"ground":["a"],"sets":[["z"]]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SchemaError);
    EXPECT_NE(std::string(e.what()).find("\"z\""), std::string::npos);
  }
  try {
    cli::parse_instance(R"({"ground":["a"],"measure":{"a":"1/0"}})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SchemaError);
  }
  try {
    cli::parse_instance("{not json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
}

TEST(ParseInstance, Sections) {
  cli::Instance inst = cli::parse_instance(R"({
    "ground": ["x", "y", "z"],
    "measure": {"y": "2/4"},
    "ideal": {"generators": [["x"], ["z"]]},
    "functional": {"vertices": [{"x": 1}, {"y": "1/3"}]},
    "families": [[["x"]], [["y"], ["z"]]],
    "order": {"backing": "ideal", "f": {"x": 0, "y": 1, "z": "-1/2"}},
    "function": {"x": 1, "y": 2, "z": 3}})");
  EXPECT_EQ((*inst.measure)[1], Rational(1, 2));
  EXPECT_EQ((*inst.measure)[0], 0);
  EXPECT_EQ(inst.ideal->principal->generator(), inst.ground->subset({"x", "z"}));
  EXPECT_EQ(inst.functional->size(), 2u);
  EXPECT_EQ(inst.families->size(), 2u);
  EXPECT_EQ(inst.order->backing, "ideal");
  EXPECT_FALSE(inst.order->g.has_value());
  EXPECT_EQ((*inst.order->f)[2], Rational(-1, 2));

  EXPECT_THROW(cli::parse_instance(R"({"ground":["x"],"function":{}})"), Error);
  EXPECT_THROW(cli::parse_instance(R"({"sets":[["x"]]})"), Error);
  EXPECT_THROW(cli::parse_instance(R"({"ground":["x"],"ideal":{}})"), Error);
  EXPECT_THROW(cli::parse_instance(R"({"ground":["x"],"measure":{"x":0.5}})"), Error);
  EXPECT_THROW(cli::parse_instance(R"({"ground":["x"],"order":{"backing":"oracle"}})"), Error);
}

TEST(ParseInstance, WitnessIndicesReferToInputPositions) {
  std::istringstream in(R"({"ground":["1","2"],"sets":[["1"],["1"],["2"]]})");
  std::ostringstream out, err;
  const char* argv[] = {"kelley", "intersection", "-"};
  ASSERT_EQ(cli::run(3, argv, in, out, err), 0);
  Json r = Json::parse(out.str());
  EXPECT_EQ(r["witness_sequence"], (Json{{"0", 1}, {"2", 1}}));
  EXPECT_EQ(r["value"], "1/2");
}

TEST(Cli, FixtureCorpus) {
  auto outcomes = kelley::testing::run_corpus(kFixtures);
  EXPECT_GE(outcomes.size(), 40u);
  for (const auto& o : outcomes) EXPECT_TRUE(o.ok) << o.name << ": " << o.problem;
}

TEST(Cli, EveryCommandHasASuccessfulFixture) {
  std::ifstream file(kFixtures + "/manifest.json");
  Json manifest = Json::parse(file);
  for (const auto& name : cli::command_names()) {
    bool found = std::any_of(manifest.begin(), manifest.end(), [&](const Json& e) { return e["command"] == name && e["exit"] == 0; });
    EXPECT_TRUE(found) << name;
  }
}

TEST(Cli, HelpAndMissingCommand) {
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"intersection", kFixtures + "/triangle.json", "--grid", "0"}).code, 1);
}

TEST(Cli, RationalsRoundTrip) {
  kelley::testing::Rng rng(601);
  for (int trial = 0; trial < 30; ++trial) {
    GroundSet g = GroundSet::numbered(kelley::testing::uniform_int(rng, 2, 5));
    SetSystem s = kelley::testing::random_system(rng, g, kelley::testing::uniform_int(rng, 1, 6));
    Json doc;
    doc["ground"] = Json::array();
    for (std::size_t i = 0; i < g.size(); ++i) doc["ground"].push_back(g.label(i));
    doc["sets"] = Json::array();
    for (Subset b : s.family()) doc["sets"].push_back(cli::detail::set_json(g, b));

    std::istringstream in(doc.dump());
    std::ostringstream out, err;
    const char* argv[] = {"kelley", "intersection", "-"};
    ASSERT_EQ(cli::run(3, argv, in, out, err), 0);
    Json r = Json::parse(out.str());
    IntersectionReport direct = intersection_number(s);
    EXPECT_EQ(parse_rational(r["value"].get<std::string>()), direct.value);
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_EQ(parse_rational(r["measure"][g.label(i)].get<std::string>()), direct.optimal_measure[i]);
    }
    std::string bad;
    EXPECT_TRUE(kelley::testing::rationals_canonical(r, bad)) << bad;
  }
}
