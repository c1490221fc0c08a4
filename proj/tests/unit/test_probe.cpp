#include <gtest/gtest.h>

#include "helpers.hpp"
#include "opineq/checks.hpp"
#include "opineq/means.hpp"

using namespace opineq;

namespace {

// A <= A + P always holds; A <= B for independent A, B usually does not.
Probe ordered_pair_probe(bool add_psd) {
  Probe p;
  p.id = add_psd ? "A <= A+P" : "A <= B";
  p.generate = [add_psd](Rng& rng, const ProbeConfig& c, int) {
    json inst = {{"inputs", json::object()}, {"params", json::object()}};
    const Index n = sample_dim(rng, c.dim_min, c.dim_max);
    const HermitianMatrix A = sample_pd(rng, n, c.window);
    inst["inputs"]["A"] = matrix_to_json(A);
    inst["inputs"]["B"] = matrix_to_json(add_psd ? A + sample_psd(rng, n) : sample_pd(rng, n, c.window));
    return inst;
  };
  p.evaluate = [](const json& inst) {
    Outcome out;
    out.terms.push_back(loewner_term("A <= B", input_matrix(inst, "A"), input_matrix(inst, "B")));
    return out;
  };
  return p;
}

Probe geometric_convexity_probe() {
  return joint_convexity_probe("geo concave", ConvexityMode::concave, same_dim_slots(2),
                               MatrixFunctional([](const json&, const std::vector<HermitianMatrix>& x) {
                                 return weighted_geometric(x[0], x[1]);
                               }));
}

}  // namespace

TEST(Probe, SameSeedSameReport) {
  ProbeConfig c;
  c.trials = 60;
  const json a = run_probe(geometric_convexity_probe(), c).to_json(false);
  const json b = run_probe(geometric_convexity_probe(), c).to_json(false);
  EXPECT_EQ(a.dump(), b.dump());
  c.seed = 8;
  EXPECT_NE(run_probe(geometric_convexity_probe(), c).to_json(false).dump(), a.dump());
}

TEST(Probe, ThreadCountDoesNotChangeReport) {
  ProbeConfig c;
  c.trials = 150;
  const json serial = run_probe(ordered_pair_probe(false), c).to_json(false);
  c.threads = 4;
  json threaded = run_probe(ordered_pair_probe(false), c).to_json(false);
  threaded["config"].erase("threads");
  EXPECT_EQ(serial.dump(), threaded.dump());
}

TEST(Probe, TrueStatementHasNoViolations) {
  ProbeConfig c;
  const InequalityReport r = run_probe(ordered_pair_probe(true), c);
  EXPECT_EQ(r.trials, c.trials);
  EXPECT_EQ(r.violations, 0);
  EXPECT_EQ(r.errors, 0);
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.witness.has_value());
}

// The stored witness, evaluated again from its JSON, reproduces its margin.
TEST(Probe, WitnessIsSound) {
  ProbeConfig c;
  const Probe p = ordered_pair_probe(false);
  const InequalityReport r = run_probe(p, c);
  ASSERT_GT(r.violations, 0);
  EXPECT_FALSE(r.passed());
  ASSERT_TRUE(r.witness.has_value());
  const Outcome again = reevaluate(p, r.witness->at("instance"));
  EXPECT_NEAR(again.score(), r.witness->at("margin").get<double>(), 1e-12);
  EXPECT_NEAR(again.score(), r.worst_margin, 1e-12);
  EXPECT_LT(again.score(), -c.tol);
}

TEST(Probe, ExpectedViolationInvertsVerdict) {
  ProbeConfig c;
  Probe p = ordered_pair_probe(false);
  p.expect_violation = true;
  EXPECT_TRUE(run_probe(p, c).passed());
  Probe q = ordered_pair_probe(true);
  q.expect_violation = true;
  EXPECT_FALSE(run_probe(q, c).passed());
}

TEST(Probe, ErrorsAreCountedNotFatal) {
  Probe p = ordered_pair_probe(true);
  p.evaluate = [](const json& inst) -> Outcome {
    logm(input_matrix(inst, "A") * -1.0);
    return {};
  };
  ProbeConfig c;
  c.trials = 5;
  const InequalityReport r = run_probe(p, c);
  EXPECT_EQ(r.errors, 5);
  EXPECT_FALSE(r.passed());
  ASSERT_TRUE(r.first_error.has_value());
}

TEST(Probe, SearchFindsWitnessOfFalseStatement) {
  ProbeConfig c;
  c.dim_min = c.dim_max = 2;
  const InequalityReport r = search_violations(ordered_pair_probe(false), c);
  EXPECT_GE(r.violations, 1);
  EXPECT_LE(r.trials, 1000);
  const Outcome again = reevaluate(ordered_pair_probe(false), r.witness->at("instance"));
  EXPECT_LT(again.score(), -c.tol);
}

TEST(Probe, CombineSumsParts) {
  ProbeConfig c;
  c.trials = 20;
  const InequalityReport a = run_probe(ordered_pair_probe(true), c);
  const InequalityReport b = run_probe(ordered_pair_probe(false), c);
  const InequalityReport both = combine("both", {a, b}, c);
  EXPECT_EQ(both.trials, 40);
  EXPECT_EQ(both.violations, a.violations + b.violations);
  EXPECT_DOUBLE_EQ(both.worst_margin, std::min(a.worst_margin, b.worst_margin));
  EXPECT_EQ(both.cases.size(), 2u);
  EXPECT_FALSE(both.passed());
}

TEST(Probe, ConfigValidation) {
  ProbeConfig c;
  EXPECT_NO_THROW(c.validate());
  c.trials = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.window = {2.0, 1.0};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.lambda_grid = {1.5};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.dim_min = 4;
  c.dim_max = 2;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  const ProbeConfig back = ProbeConfig::from_json(ProbeConfig{}.to_json());
  EXPECT_EQ(back.to_json(), ProbeConfig{}.to_json());
}

TEST(Probe, TrialStreamsAreIndependentOfOrder) {
  Rng a = trial_rng(7, 3), b = trial_rng(7, 3), c = trial_rng(7, 4);
  EXPECT_EQ(a(), b());
  EXPECT_NE(trial_rng(7, 3)(), c());
}

TEST(Terms, Normalization) {
  const Term s = scalar_term("x", 2.0, 1.0);
  EXPECT_DOUBLE_EQ(s.margin, -1.0);
  EXPECT_DOUBLE_EQ(s.normalized(), -1.0 / 3.0);
  const Term e = equality_term("eq", 1e-9, 0.0, 1e-8);
  EXPECT_GT(e.normalized(), 0.0);
  EXPECT_LT(equality_term("eq", 1e-7, 0.0, 1e-8).normalized(), 0.0);
}

TEST(Sampling, WindowAndCorrelation) {
  Rng rng = test::rng_for(900);
  for (int k = 0; k < 50; ++k) {
    const HermitianMatrix A = sample_pd(rng, 4, {0.5, 2.0});
    EXPECT_GE(lambda_min(A), 0.5 - 1e-12);
    EXPECT_LE(lambda_max(A), 2.0 + 1e-12);
  }
  const ComplexMatrix C = sample_correlation(rng, 4);
  for (Index i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(C(i, i) - 1.0), 0.0, 1e-14);
  const ComplexMatrix U = sample_unitary(rng, 5);
  EXPECT_LT((U.adjoint() * U - ComplexMatrix::Identity(5, 5)).norm(), 1e-12);
}
