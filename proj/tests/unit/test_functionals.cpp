#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "opineq/functionals.hpp"

using namespace opineq;
using opineq::test::max_abs_diff;
using opineq::test::rng_for;

TEST(Functionals, F2ReducesToScalarsOnCommutingInputs) {
  FunctionalSpec s;
  s.f = scalar::power(-1);
  s.g = scalar::power(2);
  s.h = scalar::log();
  s.sigma = OperatorMean::geometric(0.3);
  const HermitianMatrix A = HermitianMatrix::diagonal({0.5, 2.0});
  const HermitianMatrix B = HermitianMatrix::diagonal({3.0, 1.5});
  const HermitianMatrix v = F2(s, A, B);
  const double a[] = {0.5, 2.0}, b[] = {3.0, 1.5};
  for (Index i = 0; i < 2; ++i) {
    const double want = std::log(std::pow(1 / a[i], 0.7) * std::pow(b[i] * b[i], 0.3));
    EXPECT_NEAR(v(i, i).real(), want, 1e-13);
  }
  EXPECT_NEAR(trace_F2(s, A, B), v.trace(), 1e-13);
}

TEST(Functionals, F1IsTheSandwich) {
  Rng rng = rng_for(700);
  const HermitianMatrix A = test::random_pd(rng, 3), B = test::random_pd(rng, 3);
  FunctionalSpec s;
  const HermitianMatrix r = sqrtm(A);
  EXPECT_LT(max_abs_diff(F1(s, A, B), HermitianMatrix(r.matrix() * B.matrix() * r.matrix())), 1e-12);
  // With K the inner factor becomes K* B K.
  s.K = sample_gaussian(rng, 3, 3);
  const ComplexMatrix inner = s.K->adjoint() * B.matrix() * *s.K;
  EXPECT_LT(max_abs_diff(F1(s, A, B), HermitianMatrix(r.matrix() * inner * r.matrix())), 1e-12);
}

TEST(Functionals, F3AppliesTheMapFirst) {
  Rng rng = rng_for(701);
  const HermitianMatrix A = test::random_pd(rng, 4);
  FunctionalSpec s;
  s.f = scalar::power(2);
  s.h = scalar::sqrt();
  s.phi = PositiveLinearMap::averaging(2);
  EXPECT_LT(max_abs_diff(F3(s, A), sqrtm(s.phi(powm(A, 2.0)))), 1e-13);
}

TEST(Functionals, DomainErrorsSurface) {
  FunctionalSpec s;
  s.f = scalar::log();
  s.h = scalar::log();  // log of a matrix with negative eigenvalues
  const HermitianMatrix A = HermitianMatrix::diagonal({0.5, 2.0});
  EXPECT_THROW(F3(s, A), DomainError);
}

TEST(Determinant, IdentityMapGivesBack) {
  Rng rng = rng_for(702);
  const HermitianMatrix A = test::random_pd(rng, 4);
  EXPECT_LT(max_abs_diff(op_determinant(PositiveLinearMap::identity(), A), A), 1e-12);
}

TEST(Determinant, NormalizedTraceGivesGeometricMeanOfEigenvalues) {
  Rng rng = rng_for(703);
  const HermitianMatrix A = test::random_pd(rng, 5);
  const RealVector ev = eigenvalues(A);
  double log_sum = 0;
  for (Index i = 0; i < ev.size(); ++i) log_sum += std::log(ev(i));
  const HermitianMatrix D = op_determinant(PositiveLinearMap::trace_functional(true), A);
  EXPECT_NEAR(D(0, 0).real(), std::exp(log_sum / 5), 1e-12);
}

TEST(Determinant, RequiresUnitalMap) {
  const HermitianMatrix A = HermitianMatrix::identity(2);
  EXPECT_THROW(op_determinant(PositiveLinearMap::congruence(ComplexMatrix::Identity(2, 2) * 2.0), A),
               std::invalid_argument);
}

TEST(TraceForms, MinkowskiPowerWithIdentity) {
  Rng rng = rng_for(704);
  const HermitianMatrix A = test::random_pd(rng, 3);
  EXPECT_NEAR(trace_minkowski_power(PositiveLinearMap::identity(), A, 2.5), A.trace(), 1e-12);
  EXPECT_LT(max_abs_diff(power_mean_map(PositiveLinearMap::identity(), A, -0.5), A), 1e-12);
}

TEST(TraceForms, LiebTraceOnCommutingInputs) {
  const HermitianMatrix A = HermitianMatrix::diagonal({0.5, 2.0});
  const HermitianMatrix B = HermitianMatrix::diagonal({4.0, 1.5});
  const PositiveLinearMap id = PositiveLinearMap::identity();
  const ComplexMatrix I = ComplexMatrix::Identity(2, 2);
  const double p = 0.3;
  const double concave = std::pow(0.5, p) * std::pow(4.0, 1 - p) + std::pow(2.0, p) * std::pow(1.5, 1 - p);
  EXPECT_NEAR(lieb_trace(id, id, scalar::id(), scalar::id(), I, p, A, B), concave, 1e-13);
  const double q = -0.4;
  const double convex = std::pow(0.5, q) * std::pow(4.0, -1 - q) + std::pow(2.0, q) * std::pow(1.5, -1 - q);
  EXPECT_NEAR(lieb_trace(id, id, scalar::id(), scalar::id(), I, q, A, B, LiebForm::convex), convex, 1e-13);
}

TEST(Functionals, SpecJsonRoundTrip) {
  const json j = {{"f", "power:-0.5"}, {"g", "log"}, {"h", "sqrt"}, {"sigma", "path:0.5:0.25"}, {"phi", "avg:2"}};
  const FunctionalSpec s = FunctionalSpec::from_json(j);
  EXPECT_EQ(s.sigma, OperatorMean::path(0.5, 0.25));
  EXPECT_EQ(s.phi.blocks(), 2);
  const FunctionalSpec back = FunctionalSpec::from_json(s.to_json());
  EXPECT_EQ(back.f.name, s.f.name);
  EXPECT_EQ(back.sigma, s.sigma);
  EXPECT_THROW(FunctionalSpec::from_json(json::array()), std::invalid_argument);
}
