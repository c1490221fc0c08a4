#ifndef OPINEQ_MATCORE_HPP
#define OPINEQ_MATCORE_HPP

// Dense Hermitian linear algebra: a cyclic complex Jacobi eigensolver, the
// continuous functional calculus built on it, and Loewner-order comparison.
// Everything is templated on the real scalar type; HermitianMatrix is the
// double-precision instance used by the rest of the library.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "opineq/scalar_function.hpp"

namespace opineq {

using Eigen::Index;

template <typename Real>
using ComplexMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RealVectorT = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = ComplexMatrixT<double>;
using RealVector = RealVectorT<double>;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a scalar function is applied to a spectrum it is not defined on.
class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& function, double eigenvalue)
      : std::domain_error(describe(function, eigenvalue)), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  static std::string describe(const std::string& function, double eigenvalue) {
    std::ostringstream os;
    os.precision(17);
    os << "eigenvalue " << eigenvalue << " lies outside the domain of " << function;
    return os.str();
  }
  double eigenvalue_;
};

class NotPositiveDefinite : public std::domain_error {
 public:
  explicit NotPositiveDefinite(double lambda_min)
      : std::domain_error("matrix is not positive definite (lambda_min = " +
                          std::to_string(lambda_min) + ")"),
        lambda_min_(lambda_min) {}
  double lambda_min() const noexcept { return lambda_min_; }

 private:
  double lambda_min_;
};

class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The Jacobi sweep cap was reached before the off-diagonal mass fell below
/// the requested threshold.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(double residual)
      : std::runtime_error("Jacobi eigensolver did not converge (off-diagonal residual " +
                           std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

template <typename Real>
class BasicHermitianMatrix {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Matrix = ComplexMatrixT<Real>;

  /// Symmetrizes the input as (M + M*)/2.
  explicit BasicHermitianMatrix(const Matrix& m) : data_(symmetrize(m)) {}

  static BasicHermitianMatrix identity(Index n) { return BasicHermitianMatrix(Matrix::Identity(n, n)); }
  static BasicHermitianMatrix zero(Index n) { return BasicHermitianMatrix(Matrix::Zero(n, n)); }

  static BasicHermitianMatrix diagonal(const RealVectorT<Real>& d) {
    return BasicHermitianMatrix(d.template cast<Scalar>().asDiagonal().toDenseMatrix());
  }
  static BasicHermitianMatrix diagonal(std::initializer_list<Real> d) {
    RealVectorT<Real> v(static_cast<Index>(d.size()));
    Index i = 0;
    for (Real x : d) v(i++) = x;
    return diagonal(v);
  }
  static BasicHermitianMatrix from_real(const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& m) {
    return BasicHermitianMatrix(m.template cast<Scalar>());
  }

  Index dim() const { return data_.rows(); }
  const Matrix& matrix() const { return data_; }
  Scalar operator()(Index i, Index j) const { return data_(i, j); }
  Real trace() const { return data_.trace().real(); }

  BasicHermitianMatrix operator-() const { return BasicHermitianMatrix(-data_, Trusted{}); }
  BasicHermitianMatrix& operator+=(const BasicHermitianMatrix& o) {
    require_same_dim(o);
    data_ += o.data_;
    return *this;
  }
  BasicHermitianMatrix& operator-=(const BasicHermitianMatrix& o) {
    require_same_dim(o);
    data_ -= o.data_;
    return *this;
  }
  BasicHermitianMatrix& operator*=(Real s) {
    data_ *= s;
    return *this;
  }
  BasicHermitianMatrix& operator/=(Real s) {
    data_ /= s;
    return *this;
  }

  friend BasicHermitianMatrix operator+(BasicHermitianMatrix a, const BasicHermitianMatrix& b) { return a += b; }
  friend BasicHermitianMatrix operator-(BasicHermitianMatrix a, const BasicHermitianMatrix& b) { return a -= b; }
  friend BasicHermitianMatrix operator*(BasicHermitianMatrix a, Real s) { return a *= s; }
  friend BasicHermitianMatrix operator*(Real s, BasicHermitianMatrix a) { return a *= s; }
  friend BasicHermitianMatrix operator/(BasicHermitianMatrix a, Real s) { return a /= s; }

 private:
  struct Trusted {};
  BasicHermitianMatrix(Matrix m, Trusted) : data_(std::move(m)) {}

  static Matrix symmetrize(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("Hermitian matrix must be square");
    if (m.rows() < 1) throw DimensionMismatch("Hermitian matrix must have dim >= 1");
    Matrix h = (m + m.adjoint()) / Real(2);
    for (Index i = 0; i < h.rows(); ++i) h(i, i) = Scalar(h(i, i).real(), Real(0));
    return h;
  }

  void require_same_dim(const BasicHermitianMatrix& o) const {
    if (o.dim() != dim()) throw DimensionMismatch("Hermitian operands have different dimensions");
  }

  Matrix data_;
};

using HermitianMatrix = BasicHermitianMatrix<double>;

template <typename Real>
struct BasicSpectralDecomposition {
  RealVectorT<Real> eigenvalues;     // ascending
  ComplexMatrixT<Real> eigenvectors;  // unitary, columns

  /// U diag(g(lambda)) U* for an arbitrary real callable g.
  template <typename F>
  ComplexMatrixT<Real> reconstruct(F&& g) const {
    RealVectorT<Real> mapped(eigenvalues.size());
    for (Index i = 0; i < eigenvalues.size(); ++i) mapped(i) = static_cast<Real>(g(eigenvalues(i)));
    return eigenvectors * mapped.template cast<std::complex<Real>>().asDiagonal() * eigenvectors.adjoint();
  }
  ComplexMatrixT<Real> reconstruct() const {
    return reconstruct([](Real x) { return x; });
  }
  Real min() const { return eigenvalues(0); }
  Real max() const { return eigenvalues(eigenvalues.size() - 1); }
};

using SpectralDecomposition = BasicSpectralDecomposition<double>;

struct EigenSolverSettings {
  double relative_tolerance = 1e-13;
  int max_sweeps = 64;
};

/// Per-thread solver settings picked up by eigh() when none are passed.
inline EigenSolverSettings& eigen_solver_settings() {
  thread_local EigenSolverSettings settings;
  return settings;
}

/// Overrides the calling thread's solver settings for its lifetime.
class ScopedEigenSolverSettings {
 public:
  explicit ScopedEigenSolverSettings(EigenSolverSettings s) : saved_(eigen_solver_settings()) {
    eigen_solver_settings() = s;
  }
  ~ScopedEigenSolverSettings() { eigen_solver_settings() = saved_; }
  ScopedEigenSolverSettings(const ScopedEigenSolverSettings&) = delete;
  ScopedEigenSolverSettings& operator=(const ScopedEigenSolverSettings&) = delete;

 private:
  EigenSolverSettings saved_;
};

namespace detail {

template <typename Real>
Real off_diagonal_norm(const ComplexMatrixT<Real>& a) {
  Real sum = 0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace detail

/// Cyclic complex Jacobi. Each rotation first removes the phase of a(p,q)
/// with a diagonal unitary and then applies a real Givens rotation.
template <typename Real>
BasicSpectralDecomposition<Real> eigh(const BasicHermitianMatrix<Real>& A, const EigenSolverSettings& settings) {
  using C = std::complex<Real>;
  const Index n = A.dim();
  ComplexMatrixT<Real> a = A.matrix();
  ComplexMatrixT<Real> v = ComplexMatrixT<Real>::Identity(n, n);

  const Real threshold = static_cast<Real>(settings.relative_tolerance) * a.norm();
  Real off = detail::off_diagonal_norm(a);
  int sweep = 0;
  while (off > threshold) {
    if (sweep++ >= settings.max_sweeps) throw ConvergenceError(static_cast<double>(off));
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const C apq = a(p, q);
        const Real mag = std::abs(apq);
        if (mag == Real(0)) continue;
        const C phase_conj = std::conj(apq / mag);
        const Real theta = (a(q, q).real() - a(p, p).real()) / (2 * mag);
        Real t;
        if (std::abs(theta) > Real(1e150)) {
          t = Real(1) / (2 * theta);
        } else {
          t = (theta >= 0 ? Real(1) : Real(-1)) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        }
        const Real c = Real(1) / std::sqrt(t * t + 1);
        const Real s = t * c;
        // J = [[c, s], [-s conj(phase), c conj(phase)]] on (p, q).
        const C jqp = -s * phase_conj;
        const C jqq = c * phase_conj;
        for (Index k = 0; k < n; ++k) {
          const C akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c + akq * jqp;
          a(k, q) = akp * s + akq * jqq;
          const C vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c + vkq * jqp;
          v(k, q) = vkp * s + vkq * jqq;
        }
        for (Index k = 0; k < n; ++k) {
          const C apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = s * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = a(q, p) = C(0);
        a(p, p) = C(a(p, p).real(), 0);
        a(q, q) = C(a(q, q).real(), 0);
      }
    }
    off = detail::off_diagonal_norm(a);
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return a(i, i).real() < a(j, j).real(); });
  BasicSpectralDecomposition<Real> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

template <typename Real>
BasicSpectralDecomposition<Real> eigh(const BasicHermitianMatrix<Real>& A) {
  return eigh(A, eigen_solver_settings());
}

template <typename Real>
RealVectorT<Real> eigenvalues(const BasicHermitianMatrix<Real>& A) {
  return eigh(A).eigenvalues;
}

/// f(A) for any real callable; no domain checking. ScalarFunction arguments
/// go to the checked overloads below.
template <typename Real, typename F>
  requires(!std::is_same_v<std::remove_cvref_t<F>, ScalarFunction>)
BasicHermitianMatrix<Real> apply_function(const BasicHermitianMatrix<Real>& A, F&& f) {
  return BasicHermitianMatrix<Real>(eigh(A).reconstruct(std::forward<F>(f)));
}

/// f(A) with the spectrum checked against f's declared domain.
inline HermitianMatrix apply_function(const SpectralDecomposition& eig, const ScalarFunction& f) {
  for (Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (!f.domain.contains(eig.eigenvalues(i))) throw DomainError(f.name, eig.eigenvalues(i));
  return HermitianMatrix(eig.reconstruct([&](double x) { return f(x); }));
}

inline HermitianMatrix apply_function(const HermitianMatrix& A, const ScalarFunction& f) {
  return apply_function(eigh(A), f);
}

template <typename Real>
Real operator_norm(const BasicHermitianMatrix<Real>& A) {
  const auto ev = eigenvalues(A);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

template <typename Real>
Real lambda_min(const BasicHermitianMatrix<Real>& A) {
  return eigenvalues(A)(0);
}

template <typename Real>
Real lambda_max(const BasicHermitianMatrix<Real>& A) {
  const auto ev = eigenvalues(A);
  return ev(ev.size() - 1);
}

/// lambda_min > dim * 1e-12 * (1 + ||A||_op).
template <typename Real>
bool is_positive_definite(const BasicSpectralDecomposition<Real>& eig) {
  const Index n = eig.eigenvalues.size();
  const Real norm = std::max(std::abs(eig.min()), std::abs(eig.max()));
  return eig.min() > Real(n) * Real(1e-12) * (1 + norm);
}

template <typename Real>
bool is_positive_definite(const BasicHermitianMatrix<Real>& A) {
  return is_positive_definite(eigh(A));
}

template <typename Real>
void require_positive_definite(const BasicHermitianMatrix<Real>& A) {
  const auto eig = eigh(A);
  if (!is_positive_definite(eig)) throw NotPositiveDefinite(static_cast<double>(eig.min()));
}

struct SpectralBounds {
  double m;
  double M;
  double condition_number() const { return M / m; }
};

inline SpectralBounds spectral_bounds(const HermitianMatrix& A) {
  const auto eig = eigh(A);
  if (!is_positive_definite(eig)) throw NotPositiveDefinite(eig.min());
  return {eig.min(), eig.max()};
}

/// Inverse via reciprocal eigenvalues.
template <typename Real>
BasicHermitianMatrix<Real> inverse(const BasicHermitianMatrix<Real>& A) {
  const auto eig = eigh(A);
  const Real norm = std::max(std::abs(eig.min()), std::abs(eig.max()));
  const Real floor = Real(A.dim()) * Real(1e-12) * norm;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (!(std::abs(eig.eigenvalues(i)) > floor)) throw SingularMatrix("matrix is singular to working precision");
  return BasicHermitianMatrix<Real>(eig.reconstruct([](Real x) { return Real(1) / x; }));
}

/// A^p. Non-negative integer p uses repeated products and accepts any
/// Hermitian A; every other p requires lambda_min(A) > 0.
inline HermitianMatrix powm(const HermitianMatrix& A, double p) {
  if (p >= 0 && p == std::floor(p) && p <= 64) {
    auto k = static_cast<unsigned>(p);
    ComplexMatrix result = ComplexMatrix::Identity(A.dim(), A.dim());
    ComplexMatrix base = A.matrix();
    while (k) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return HermitianMatrix(result);
  }
  return apply_function(A, scalar::power(p));
}

inline HermitianMatrix sqrtm(const HermitianMatrix& A) { return apply_function(A, scalar::sqrt()); }
inline HermitianMatrix logm(const HermitianMatrix& A) { return apply_function(A, scalar::log()); }
inline HermitianMatrix expm(const HermitianMatrix& A) { return apply_function(A, scalar::exp()); }

/// X* A X for a general complex X.
template <typename Real>
BasicHermitianMatrix<Real> congruence(const ComplexMatrixT<Real>& X, const BasicHermitianMatrix<Real>& A) {
  if (X.rows() != A.dim()) throw DimensionMismatch("congruence: X rows must equal dim(A)");
  return BasicHermitianMatrix<Real>(X.adjoint() * A.matrix() * X);
}

/// B^{1/2} A B^{1/2} style sandwich for Hermitian B.
template <typename Real>
BasicHermitianMatrix<Real> sandwich(const BasicHermitianMatrix<Real>& outer, const BasicHermitianMatrix<Real>& inner) {
  if (outer.dim() != inner.dim()) throw DimensionMismatch("sandwich: dimension mismatch");
  return BasicHermitianMatrix<Real>(outer.matrix() * inner.matrix() * outer.matrix());
}

struct LoewnerVerdict {
  bool holds;
  double margin;  // lambda_min(B - A)
  double scale;   // ||B - A||_op
  explicit operator bool() const { return holds; }
};

/// A <= B iff lambda_min(B - A) >= -tol * (1 + ||B - A||_op).
template <typename Real>
LoewnerVerdict loewner_leq(const BasicHermitianMatrix<Real>& A, const BasicHermitianMatrix<Real>& B, double tol = 1e-9) {
  if (A.dim() != B.dim()) throw DimensionMismatch("loewner_leq: dimension mismatch");
  const auto ev = eigenvalues(B - A);
  const double lo = static_cast<double>(ev(0));
  const double scale = std::max(std::abs(lo), std::abs(static_cast<double>(ev(ev.size() - 1))));
  return {lo >= -tol * (1 + scale), lo, scale};
}

}  // namespace opineq

#endif  // OPINEQ_MATCORE_HPP
