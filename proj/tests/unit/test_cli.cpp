#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "helpers.hpp"

using namespace opineq;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

json strip_run_specific(json doc) {
  doc.erase("manifest");
  return doc;
}

}  // namespace

TEST(Cli, VerifyPassingCheck) {
  const CliRun r = run({"verify", "thm-MO", "--p", "2", "--trials", "200", "--seed", "7"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_TRUE(doc.at("passed").get<bool>());
  EXPECT_EQ(doc.at("reports")[0].at("theorem"), "minkowski-sandwich");
  EXPECT_EQ(doc.at("manifest").at("config").at("trials"), 200);
  EXPECT_NE(r.err.find("PASS minkowski-sandwich"), std::string::npos);
}

TEST(Cli, VerifyCounterexampleReportsGoldenEntry) {
  const CliRun r = run({"verify", "counterexample-sqrt-geo"});
  EXPECT_EQ(r.code, 0);
  const json rep = json::parse(r.out).at("reports")[0];
  EXPECT_NEAR(rep.at("details").at("lhs").at("re")[0][0].get<double>(), 1.7915, 5e-4);
}

TEST(Cli, UnknownIdExitsTwoWithListing) {
  const CliRun r = run({"verify", "no-such-thm"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("mean-monotonicity"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, BadFlagsExitTwo) {
  EXPECT_EQ(run({"verify", "path-sandwich", "--trials", "zero"}).code, 2);
  EXPECT_EQ(run({"verify", "path-sandwich", "--window", "3:1"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, FailingCheckExitsOne) {
  EXPECT_EQ(run({"verify", "counterexample-minkowski"}).code, 1);
}

TEST(Cli, Constants) {
  const CliRun r = run({"constants", "--h", "4", "--p", "2"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j.at("K").get<double>(), 1.5625, 1e-12);
  EXPECT_NEAR(j.at("S(h)").get<double>(), 3.0 * std::pow(4.0, 1.0 / 3.0) / (std::exp(1.0) * std::log(4.0)), 1e-12);
}

TEST(Cli, EvalF2OnCounterexampleMidpoints) {
  const CliRun r = run({"eval", "--spec", test::fixture("sqrt_geo_spec.json"), "--form", "F2",
                     test::fixture("sqrt_geo_A_mid.json"), test::fixture("sqrt_geo_B_mid.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const HermitianMatrix v = hermitian_from_json(json::parse(r.out).at("value"));
  EXPECT_NEAR(v(0, 0).real(), 1.7915, 5e-4);
  EXPECT_NEAR(v(0, 1).real(), -0.3082, 5e-4);
  EXPECT_NEAR(v(1, 1).real(), 2.1739, 5e-4);
}

TEST(Cli, EvalDeterminantWithIdentity) {
  const CliRun r = run({"eval", "--spec", test::fixture("det_identity_spec.json"), "--form", "det",
                     test::fixture("sqrt_geo_A1.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const HermitianMatrix v = hermitian_from_json(json::parse(r.out).at("value"));
  EXPECT_LT(test::max_abs_diff(v, read_hermitian_file(test::fixture("sqrt_geo_A1.json"))), 1e-12);
}

TEST(Cli, EvalDomainErrorExitsOne) {
  const std::string spec = temp_path("opineq_log_spec.json");
  write_json_file(spec, {{"f", "log"}, {"h", "log"}});
  const CliRun r = run({"eval", "--spec", spec, "--form", "F3", test::fixture("sqrt_geo_A2.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("eigenvalue"), std::string::npos);
  std::filesystem::remove(spec);
}

TEST(Cli, ScanCarlenLiebPhaseStructure) {
  const CliRun r = run({"scan", "carlen-lieb-direction", "--grid", "p=0.5,1,1.5,2,2.5,3"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream csv(r.out);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "p,trials,violations,errors,worst_margin,expect_violation,passed");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string p, trials, violations;
    std::getline(fields, p, ',');
    std::getline(fields, trials, ',');
    std::getline(fields, violations, ',');
    if (std::stod(p) > 2)
      EXPECT_GE(std::stoi(violations), 1) << line;
    else
      EXPECT_EQ(std::stoi(violations), 0) << line;
  }
  EXPECT_EQ(rows, 6);
}

TEST(Cli, ScanOverWeights) {
  const CliRun r = run({"scan", "path-sandwich", "--grid", "t=0.1,0.5,0.9", "--trials", "50"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
  EXPECT_EQ(r.out.find(",false\n"), std::string::npos);
}

TEST(Cli, ScanRejectsEmptyGrid) {
  EXPECT_EQ(run({"scan", "path-sandwich", "--grid", "p="}).code, 2);
  EXPECT_EQ(run({"scan", "path-sandwich", "--grid", "q=1"}).code, 2);
}

// A single-point scan agrees with verify.
TEST(Cli, SinglePointScanMatchesVerify) {
  const CliRun s = run({"scan", "reverse-jensen", "--grid", "p=1.5", "--trials", "40"});
  const CliRun v = run({"verify", "reverse-jensen", "--p", "1.5", "--trials", "40"});
  const json rep = json::parse(v.out).at("reports")[0];
  std::istringstream csv(s.out);
  std::string header, row;
  std::getline(csv, header);
  std::getline(csv, row);
  EXPECT_EQ(row, "1.5," + std::to_string(rep.at("trials").get<int>()) + ",0,0," + [&] {
    std::ostringstream os;
    os.precision(17);
    os << rep.at("worst_margin").get<double>();
    return os.str();
  }() + ",false,true");
}

TEST(Cli, ManifestReplayReproducesReport) {
  const std::string out = temp_path("opineq_cli_report.json");
  const CliRun first = run({"verify", "F2-log-convex", "--trials", "20", "--seed", "11", "--out", out});
  ASSERT_EQ(first.code, 0) << first.err;
  const json report = read_json_file(out);
  const json manifest = read_json_file(out + ".manifest.json");
  EXPECT_EQ(manifest.at("outputs")[0], out);
  EXPECT_EQ(manifest.at("version"), "0.1.0");
  std::filesystem::remove(out);
  const CliRun again = run({"replay", out + ".manifest.json"});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(read_json_file(out).dump(), report.dump());
  std::filesystem::remove(out);
  std::filesystem::remove(out + ".manifest.json");
}

TEST(Cli, StdoutIsDeterministicApartFromManifest) {
  const CliRun a = run({"verify", "mean-transformer", "--trials", "30", "--threads", "1"});
  const CliRun b = run({"verify", "mean-transformer", "--trials", "30", "--threads", "3"});
  json ja = strip_run_specific(json::parse(a.out)), jb = strip_run_specific(json::parse(b.out));
  for (json* j : {&ja, &jb})
    for (auto& rep : j->at("reports")) {
      rep["config"].erase("threads");
      for (auto& c : rep["cases"]) c.erase("config");
    }
  EXPECT_EQ(ja.dump(), jb.dump());
}

TEST(Cli, ListAndHelp) {
  EXPECT_EQ(run({"--help"}).code, 0);
  const CliRun l = run({"verify", "--list"});
  EXPECT_EQ(l.code, 0);
  EXPECT_NE(l.out.find("carlen-lieb-direction"), std::string::npos);
  EXPECT_EQ(run({"constants", "--help"}).code, 0);
}
