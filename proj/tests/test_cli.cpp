#include <gtest/gtest.h>

#include <algorithm>

#include "runner.hpp"

using namespace zetafock;
using namespace zetafock::cli;

namespace {

nlohmann::json base() { return {{"setup", {{"p", 2}, {"dims", {0, 1}}}}, {"suites", {"delta"}}}; }

std::string error_of(const nlohmann::json& j) {
  try {
    RunConfig c = config_from_json(j);
    validate(c);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, Defaults) {
  RunConfig c = config_from_json(base());
  validate(c);
  EXPECT_EQ(c.setup.p, 2);
  EXPECT_EQ(c.r_max, 2);
  EXPECT_EQ(c.degree_max, Rational(2));
  EXPECT_EQ(c.suites, std::vector<std::string>{"delta"});
}

TEST(Config, AllExpandsToSortedSuites) {
  nlohmann::json j = base();
  j["suites"] = {"rep", "all", "abstract"};
  RunConfig c = config_from_json(j);
  validate(c);
  std::vector<std::string> expected = suite_names();
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(c.suites, expected);
}

TEST(Config, ErrorsNameTheField) {
  nlohmann::json j = base();
  j["colour"] = 1;
  EXPECT_NE(error_of(j).find("colour"), std::string::npos);

  j = base();
  j["suites"] = {"nonsense"};
  EXPECT_NE(error_of(j).find("nonsense"), std::string::npos);

  j = base();
  j["degree_max"] = "1/3";
  EXPECT_NE(error_of(j).find("degree_max"), std::string::npos);

  j = base();
  j["m_max"] = 0;
  EXPECT_NE(error_of(j).find("m_max"), std::string::npos);

  j = base();
  j["setup"] = {{"p", 3}, {"dims", {1, 1, 2}}};
  EXPECT_NE(error_of(j).find("setup"), std::string::npos);

  EXPECT_NE(error_of({{"suites", {"rep"}}}).find("setup"), std::string::npos);
}

TEST(Config, MalformedFileReportsPosition) {
  try {
    load_config(ZETAFOCK_TEST_DATA "/malformed.json");
    FAIL() << "expected a ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("malformed.json:4:"), std::string::npos) << e.what();
  }
}

TEST(Config, SetupFromCommandLine) {
  EXPECT_EQ(parse_setup(3, "0,1,1").dims, (std::vector<int>{0, 1, 1}));
  EXPECT_THROW(parse_setup(3, "1,1,2"), ConfigError);
  EXPECT_THROW(parse_setup(2, "0,x"), ConfigError);
}

TEST(Run, DeterministicAcrossThreadCounts) {
  RunConfig c = load_config(ZETAFOCK_TEST_DATA "/rep_p2.json");
  validate(c);
  c.jobs = 1;
  const std::string one = run(c).to_json(false).dump();
  c.jobs = 4;
  EXPECT_EQ(run(c).to_json(false).dump(), one);
  EXPECT_NE(one.find("\"1/16\""), std::string::npos);
}

TEST(Tables, KnownValues) {
  const Table z = zeta_table(4);
  ASSERT_EQ(z.rows.size(), 5u);
  const std::string zs = z.to_json().dump();
  for (const char* v : {"-1/12", "1/120", "-1/252", "1/240", "-1/132"}) EXPECT_NE(zs.find(v), std::string::npos) << v;
  const std::string corr = corrections_table(fock::TwistSetup::make(2, {0, 1}), 1).to_json().dump();
  for (const char* v : {"1/16", "1/128", "7/1920"}) EXPECT_NE(corr.find(v), std::string::npos) << v;
  EXPECT_NE(central_table(1, 1, 3).to_json().dump().find("9/4"), std::string::npos);
}
