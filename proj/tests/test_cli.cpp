#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "secadv/cli.hpp"

using namespace secadv;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "secadv");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST(ParseDistanceList, RangesAndLists) {
  const auto r = cli::parse_distance_list("0:0.1:11");
  ASSERT_EQ(r.size(), 11u);
  EXPECT_EQ(r.front(), 0.0);
  EXPECT_EQ(r.back(), 0.1);
  EXPECT_NEAR(r[5], 0.05, 1e-15);
  EXPECT_EQ(cli::parse_distance_list("0.01,0.02,0.5"), (std::vector<double>{0.01, 0.02, 0.5}));
  EXPECT_EQ(cli::parse_distance_list("0.3:0.3:1"), std::vector<double>{0.3});
  EXPECT_THROW(cli::parse_distance_list("0:1"), std::invalid_argument);
  EXPECT_THROW(cli::parse_distance_list("0:1:2.5"), std::invalid_argument);
  EXPECT_THROW(cli::parse_distance_list("a,b"), std::invalid_argument);
}

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(cli::format_number(0.1), "0.1");
  EXPECT_EQ(cli::format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(cli::format_number(0.0), "0");
}

TEST(CmdPhiCurve, CsvShapeAndDeterminism) {
  const std::vector<std::string> args{"phi-curve", "--dim", "2", "--epsilon", "0.1", "--distances", "0:0.1:11",
                                      "--samples", "100000", "--seed", "7"};
  const auto a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  const auto rows = lines(a.out);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0], "d,mean,std_error,samples,mode");
  EXPECT_EQ(rows[1].substr(0, 4), "0,0,");
  EXPECT_EQ(run(args).out, a.out);
}

TEST(CmdPhiCurve, RejectsBadEpsilon) {
  const auto r = run({"phi-curve", "--epsilon", "1.5", "--distances", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("(0,1)"), std::string::npos) << r.err;
}

TEST(CmdPhiCurve, UsageErrors) {
  EXPECT_EQ(run({"phi-curve", "--distances", "0.05,0.01"}).code, 2);
  EXPECT_EQ(run({"phi-curve"}).code, 2);
  EXPECT_EQ(run({"phi-curve", "--distances", "0", "--bogus", "1"}).code, 2);
  EXPECT_EQ(run({"phi-curve", "--distances", "0", "--mode", "other"}).code, 2);
  EXPECT_EQ(run({"phi-curve", "--distances", "0", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CmdPhiCurve, JsonSchema) {
  const auto r = run({"phi-curve", "--dim", "3", "--distances", "0,0.05", "--samples", "2000", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_TRUE(doc.is_object());
  EXPECT_EQ(doc.size(), 3u);
  for (const char* key : {"config", "results", "verdicts"}) EXPECT_TRUE(doc.contains(key)) << key;
  for (const char* key : {"command", "dim", "epsilon", "samples", "mode", "z_threshold", "seed", "format", "out",
                          "distances"})
    EXPECT_TRUE(doc["config"].contains(key)) << key;
  EXPECT_EQ(doc["config"]["mode"], "angle-product");
  EXPECT_EQ(doc["results"].size(), 2u);
}

TEST(CmdPhiCurve, WritesOutputFile) {
  const fs::path path = fs::temp_directory_path() / "secadv_cli_phi.csv";
  const auto r = run({"phi-curve", "--dim", "2", "--distances", "0.02", "--samples", "1000", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(lines(slurp(path)).size(), 2u);
  fs::remove(path);
  EXPECT_EQ(run({"phi-curve", "--distances", "0", "--out", "/nonexistent/dir/x.csv"}).code, 1);
}

TEST(CmdIsotropy, Examples) {
  const auto haar = run({"isotropy", "--dim", "2", "--mode", "haar", "--distance", "0.05", "--pairs", "8", "--samples",
                         "100000", "--format", "json"});
  ASSERT_EQ(haar.code, 0) << haar.err;
  const auto doc = nlohmann::json::parse(haar.out);
  EXPECT_EQ(doc["verdicts"]["verdict"], "consistent");
  EXPECT_EQ(doc["results"].size(), 8u);

  EXPECT_EQ(run({"isotropy", "--pairs", "1"}).code, 2);

  const auto zero = run({"isotropy", "--distance", "0", "--pairs", "3", "--samples", "1000"});
  ASSERT_EQ(zero.code, 0);
  const auto rows = lines(zero.out);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_NE(rows[i].find(",0,0,0,1000,angle-product,0,consistent"), std::string::npos) << rows[i];
  }
}

TEST(CmdIsotropy, InconsistentVerdictStillExitsZero) {
  const auto r = run({"isotropy", "--dim", "3", "--distance", "0.05", "--pairs", "4", "--samples", "100000",
                      "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["verdicts"]["verdict"], "inconsistent");
}

TEST(CmdLemma1, Examples) {
  EXPECT_EQ(run({"lemma1", "--triples", "0"}).code, 2);

  const auto r = run({"lemma1", "--dim", "2", "--triples", "10", "--samples", "100000", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  const auto& v = doc["verdicts"];
  EXPECT_EQ(v["agree"].get<int>() + v["disagree"].get<int>() + v["indeterminate"].get<int>(), 10);
  EXPECT_EQ(v["disagree"], 0);
  for (const auto& row : doc["results"]) {
    EXPECT_LE(row["d_xy"].get<double>(), 0.1 + 1e-12);
    EXPECT_LE(row["d_xz"].get<double>(), 0.1 + 1e-12);
  }

  const auto csv = run({"lemma1", "--dim", "2", "--triples", "3", "--samples", "1000"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(lines(csv.out).size(), 4u);
  EXPECT_NE(csv.err.find("lemma1: agree="), std::string::npos);
}

TEST(CmdScenario, NoiselessLegitimateChannel) {
  const auto r = run({"scenario", "--sigma-b", "0", "--trials", "200", "--thetas-per-trial", "10", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["results"]["advantage"]["p_xy"], 0.0);
  EXPECT_EQ(doc["results"]["advantage"]["h_x_given_y"], 0.0);
}

TEST(CmdScenario, JsonSchemaWithInequalityTable) {
  const auto r = run({"scenario", "--trials", "300", "--thetas-per-trial", "20", "--check-inequality-I",
                      "--inequality-trials", "50", "--posterior-samples", "2000", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  for (const char* key : {"command", "dim", "epsilon", "sigma_b", "sigma_e", "trials", "thetas_per_trial", "mode",
                          "z_threshold", "check_inequality_I", "posterior_samples", "inequality_trials",
                          "min_ess_fraction", "seed", "format", "out"})
    EXPECT_TRUE(doc["config"].contains(key)) << key;
  for (const char* key : {"mean_sq_dist_xy", "mean_sq_dist_xz", "joint", "advantage", "inequality_I"})
    EXPECT_TRUE(doc["results"].contains(key)) << key;
  EXPECT_EQ(doc["results"]["joint"].size(), 8u);
  EXPECT_EQ(doc["results"]["inequality_I"]["strategies"].size(), 4u);
  for (const char* key : {"ordering_verdict", "chain_verdict", "inequality_I_argmin", "inequality_I_holds"})
    EXPECT_TRUE(doc["verdicts"].contains(key)) << key;
}

TEST(CmdScenario, EssGuardIsOperationalFailure) {
  const auto r = run({"scenario", "--trials", "10", "--thetas-per-trial", "2", "--sigma-e", "0.0001",
                      "--check-inequality-I", "--inequality-trials", "2", "--posterior-samples", "500"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("posterior samples"), std::string::npos) << r.err;
}

TEST(CmdScenario, CsvHasHeader) {
  const auto r = run({"scenario", "--trials", "50", "--thetas-per-trial", "5"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out)[0], "metric,value");
  EXPECT_EQ(run({"scenario", "--sigma-b", "-1"}).code, 2);
  EXPECT_EQ(run({"scenario", "--trials", "0"}).code, 2);
}

TEST(CmdOracle2d, Values) {
  const auto r = run({"oracle-2d", "--epsilon", "0.1", "--distances", "0,0.2", "--grid", "4096"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out), (std::vector<std::string>{"d,phi", "0,0", "0.2,0"}));
}

TEST(Cli, OutputIndependentOfWorkerCount) {
  const std::vector<std::vector<std::string>> commands{
      {"phi-curve", "--dim", "3", "--distances", "0:0.1:4", "--samples", "20000"},
      {"isotropy", "--dim", "3", "--pairs", "3", "--samples", "20000", "--mode", "haar"},
      {"lemma1", "--dim", "2", "--triples", "4", "--samples", "20000"},
      {"scenario", "--trials", "9000", "--thetas-per-trial", "3", "--format", "json"},
      {"oracle-2d", "--distances", "0:0.2:5", "--grid", "10000"},
  };
  for (auto args : commands) {
    auto one = args, many = args;
    one.insert(one.end(), {"--workers", "1"});
    many.insert(many.end(), {"--workers", "4"});
    const auto a = run(one), b = run(many);
    ASSERT_EQ(a.code, 0) << args[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << args[0];
  }
}
