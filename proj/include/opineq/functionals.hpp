#ifndef OPINEQ_FUNCTIONALS_HPP
#define OPINEQ_FUNCTIONALS_HPP

// Composite operator and trace functionals built from scalar functions,
// positive maps and operator means.

#include <optional>
#include <string>

#include "opineq/io.hpp"
#include "opineq/maps.hpp"
#include "opineq/matcore.hpp"
#include "opineq/means.hpp"
#include "opineq/scalar_function.hpp"

namespace opineq {

struct FunctionalSpec {
  ScalarFunction f = scalar::id();
  ScalarFunction g = scalar::id();
  ScalarFunction h = scalar::id();
  PositiveLinearMap phi = PositiveLinearMap::identity();
  PositiveLinearMap psi = PositiveLinearMap::identity();
  OperatorMean sigma = OperatorMean::geometric();
  std::optional<ComplexMatrix> K;

  /// Accepts {"f","g","h","phi","psi","sigma","K"}; every key is optional.
  /// "K" is a matrix literal or a path to a matrix file.
  static FunctionalSpec from_json(const json& j);
  json to_json() const;
};

/// h[ Phi(f(A))^{1/2} Psi(g(B)) Phi(f(A))^{1/2} ]; when K is set, Psi(g(B)) is replaced by K* Psi(g(B)) K.
HermitianMatrix F1(const FunctionalSpec& spec, const HermitianMatrix& A, const HermitianMatrix& B);
/// h[ Phi(f(A)) sigma Psi(g(B)) ].
HermitianMatrix F2(const FunctionalSpec& spec, const HermitianMatrix& A, const HermitianMatrix& B);
/// h[ Phi(f(A)) ].
HermitianMatrix F3(const FunctionalSpec& spec, const HermitianMatrix& A);
double trace_F2(const FunctionalSpec& spec, const HermitianMatrix& A, const HermitianMatrix& B);

/// Real part of tr(M); aborts above 1e-10(1+|Re|) imaginary residue and
/// warns on stderr above 1e-13(1+|Re|).
double real_trace(const ComplexMatrix& m);

enum class LiebForm {
  concave,  // Tr Phi(f1(A))^p K* Psi(f2(B))^{1-p} K, p in [0,1]
  convex,   // Tr Phi(f1(A))^p K* Psi(f2(B))^{-1-p} K, p in [-1,0]
};

double lieb_trace(const PositiveLinearMap& phi, const PositiveLinearMap& psi, const ScalarFunction& f1,
                  const ScalarFunction& f2, const ComplexMatrix& K, double p, const HermitianMatrix& A,
                  const HermitianMatrix& B, LiebForm form = LiebForm::concave);

/// Tr[ Phi(A^p)^{1/p} ] for unital Phi, p != 0.
double trace_minkowski_power(const PositiveLinearMap& phi, const HermitianMatrix& A, double p);

/// Phi(A^p)^{1/p}.
HermitianMatrix power_mean_map(const PositiveLinearMap& phi, const HermitianMatrix& A, double p);

/// Delta_Phi(A) = exp Phi(log A); Phi must be unital.
HermitianMatrix op_determinant(const PositiveLinearMap& phi, const HermitianMatrix& A);

}  // namespace opineq

#endif  // OPINEQ_FUNCTIONALS_HPP
