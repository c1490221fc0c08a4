#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "helpers.hpp"
#include "opineq/matcore.hpp"

using namespace opineq;
using opineq::test::rng_for;

// Eigen's own solver is the oracle for the Jacobi sweeps.
TEST(Eigh, MatchesEigenOnRandomHermitian) {
  for (int k = 0; k < 500; ++k) {
    Rng rng = rng_for(static_cast<std::uint64_t>(k));
    const Index n = sample_dim(rng, 1, 8);
    const HermitianMatrix A = test::random_hermitian(rng, n);
    const SpectralDecomposition eig = eigh(A);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> oracle(A.matrix());
    const double scale = 1.0 + A.matrix().norm();
    for (Index i = 0; i < n; ++i) EXPECT_NEAR(eig.eigenvalues(i), oracle.eigenvalues()(i), 1e-12 * scale) << "k=" << k;
    EXPECT_LT((eig.reconstruct() - A.matrix()).norm(), 1e-12 * scale);
    const ComplexMatrix U = eig.eigenvectors;
    EXPECT_LT((U.adjoint() * U - ComplexMatrix::Identity(n, n)).norm(), 1e-12);
  }
}

TEST(Eigh, AscendingOrderAndRepeatedEigenvalues) {
  const HermitianMatrix A = HermitianMatrix::diagonal({3.0, 1.0, 3.0, -2.0});
  const RealVector ev = eigenvalues(A);
  EXPECT_DOUBLE_EQ(ev(0), -2.0);
  EXPECT_DOUBLE_EQ(ev(1), 1.0);
  EXPECT_DOUBLE_EQ(ev(2), 3.0);
  EXPECT_DOUBLE_EQ(ev(3), 3.0);
}

TEST(Eigh, LongDoubleInstantiation) {
  Rng rng = rng_for(9000);
  const HermitianMatrix A = test::random_hermitian(rng, 5);
  const BasicHermitianMatrix<long double> Al(A.matrix().cast<std::complex<long double>>());
  const auto eig = eigh(Al);
  const RealVector ev = eigenvalues(A);
  for (Index i = 0; i < 5; ++i) EXPECT_NEAR(static_cast<double>(eig.eigenvalues(i)), ev(i), 1e-12);
  const auto back = eig.reconstruct();
  EXPECT_LT(static_cast<double>((back - Al.matrix()).norm()), 1e-16L * 100);
}

TEST(Eigh, OneByOne) {
  const HermitianMatrix A = HermitianMatrix::diagonal({-4.5});
  EXPECT_DOUBLE_EQ(eigenvalues(A)(0), -4.5);
}

TEST(Hermitian, SymmetrizesAndZeroesImaginaryDiagonal) {
  ComplexMatrix m(2, 2);
  m << std::complex<double>(1, 0.3), std::complex<double>(2, 1), std::complex<double>(0, 0), 4;
  const HermitianMatrix H(m);
  EXPECT_DOUBLE_EQ(H(0, 0).imag(), 0.0);
  EXPECT_EQ(H(0, 1), std::conj(H(1, 0)));
  EXPECT_THROW(HermitianMatrix(ComplexMatrix(2, 3)), DimensionMismatch);
}

TEST(FunctionalCalculus, PowersAgreeWithProducts) {
  Rng rng = rng_for(1);
  const HermitianMatrix A = test::random_pd(rng, 4);
  const ComplexMatrix A2 = A.matrix() * A.matrix();
  EXPECT_LT((powm(A, 2.0).matrix() - A2).norm(), 1e-12);
  const HermitianMatrix r = sqrtm(A);
  EXPECT_LT((r.matrix() * r.matrix() - A.matrix()).norm(), 1e-12);
  EXPECT_LT((powm(A, -1.0).matrix() * A.matrix() - ComplexMatrix::Identity(4, 4)).norm(), 1e-12);
  EXPECT_LT(test::max_abs_diff(expm(logm(A)), A), 1e-12);
  EXPECT_LT(test::max_abs_diff(inverse(A), powm(A, -1.0)), 1e-12);
}

TEST(FunctionalCalculus, DomainViolationNamesTheEigenvalue) {
  const HermitianMatrix A = HermitianMatrix::diagonal({1.0, -0.25});
  try {
    logm(A);
    FAIL() << "expected a domain error";
  } catch (const DomainError& e) {
    EXPECT_DOUBLE_EQ(e.eigenvalue(), -0.25);
  }
  EXPECT_THROW(powm(A, 0.5), DomainError);
}

TEST(Loewner, OrderOnDiagonalsAndTolerance) {
  const HermitianMatrix A = HermitianMatrix::diagonal({1.0, 2.0});
  const HermitianMatrix B = HermitianMatrix::diagonal({1.0, 3.0});
  EXPECT_TRUE(loewner_leq(A, B).holds);
  EXPECT_FALSE(loewner_leq(B, A).holds);
  EXPECT_DOUBLE_EQ(loewner_leq(B, A).margin, -1.0);
  const HermitianMatrix C = HermitianMatrix::diagonal({1.0 + 1e-12, 2.0});
  EXPECT_TRUE(loewner_leq(C, A).holds);
  EXPECT_FALSE(loewner_leq(C, A, 1e-14).holds);
}

// A <= B implies X*AX <= X*BX.
TEST(Loewner, PreservedByCongruence) {
  for (int k = 0; k < 100; ++k) {
    Rng rng = rng_for(static_cast<std::uint64_t>(100 + k));
    const Index n = sample_dim(rng, 2, 5);
    const HermitianMatrix A = test::random_pd(rng, n);
    const HermitianMatrix B = A + sample_psd(rng, n);
    const ComplexMatrix X = sample_gaussian(rng, n, n);
    EXPECT_TRUE(loewner_leq(congruence(X, A), congruence(X, B)).holds);
  }
}

TEST(Eigh, SweepCapRaises) {
  Rng rng = rng_for(77);
  const HermitianMatrix A = test::random_hermitian(rng, 6);
  EigenSolverSettings tight;
  tight.relative_tolerance = 0.0;
  tight.max_sweeps = 1;
  EXPECT_THROW(eigh(A, tight), ConvergenceError);
}
