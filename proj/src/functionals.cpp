#include "opineq/functionals.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace opineq {
namespace {

ScalarFunction scalar_field(const json& j, const char* key, const ScalarFunction& fallback) {
  if (!j.contains(key)) return fallback;
  return scalar::parse(j.at(key).get<std::string>());
}

PositiveLinearMap map_field(const json& j, const char* key) {
  if (!j.contains(key)) return PositiveLinearMap::identity();
  return PositiveLinearMap::from_json(j.at(key));
}

HermitianMatrix with_K(const FunctionalSpec& spec, const HermitianMatrix& X) {
  return spec.K ? congruence(*spec.K, X) : X;
}

}  // namespace

FunctionalSpec FunctionalSpec::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("functional spec must be a JSON object");
  FunctionalSpec s;
  s.f = scalar_field(j, "f", s.f);
  s.g = scalar_field(j, "g", s.g);
  s.h = scalar_field(j, "h", s.h);
  s.phi = map_field(j, "phi");
  s.psi = map_field(j, "psi");
  if (j.contains("sigma")) s.sigma = OperatorMean::parse(j.at("sigma").get<std::string>());
  if (j.contains("K")) {
    const json& k = j.at("K");
    s.K = k.is_string() ? read_matrix_file(k.get<std::string>()) : complex_matrix_from_json(k);
  }
  return s;
}

json FunctionalSpec::to_json() const {
  json j = {{"f", f.name}, {"g", g.name}, {"h", h.name}, {"sigma", sigma.id()}};
  j["phi"] = phi.to_json();
  j["psi"] = psi.to_json();
  if (K) j["K"] = matrix_to_json(*K);
  return j;
}

HermitianMatrix F1(const FunctionalSpec& spec, const HermitianMatrix& A, const HermitianMatrix& B) {
  const HermitianMatrix left = spec.phi(apply_function(A, spec.f));
  const HermitianMatrix right = with_K(spec, spec.psi(apply_function(B, spec.g)));
  if (left.dim() != right.dim()) throw DimensionMismatch("F1: Phi and Psi land in different dimensions");
  const HermitianMatrix root = apply_function(left, scalar::sqrt());
  return apply_function(sandwich(root, right), spec.h);
}

HermitianMatrix F2(const FunctionalSpec& spec, const HermitianMatrix& A, const HermitianMatrix& B) {
  const HermitianMatrix left = spec.phi(apply_function(A, spec.f));
  const HermitianMatrix right = with_K(spec, spec.psi(apply_function(B, spec.g)));
  if (left.dim() != right.dim()) throw DimensionMismatch("F2: Phi and Psi land in different dimensions");
  return apply_function(spec.sigma(left, right), spec.h);
}

HermitianMatrix F3(const FunctionalSpec& spec, const HermitianMatrix& A) {
  return apply_function(spec.phi(apply_function(A, spec.f)), spec.h);
}

double trace_F2(const FunctionalSpec& spec, const HermitianMatrix& A, const HermitianMatrix& B) {
  return F2(spec, A, B).trace();
}

double real_trace(const ComplexMatrix& m) {
  const std::complex<double> tr = m.trace();
  const double scale = 1.0 + std::abs(tr.real());
  if (std::abs(tr.imag()) > 1e-10 * scale) {
    std::ostringstream os;
    os.precision(17);
    os << "trace has imaginary residue " << tr.imag() << " (real part " << tr.real() << ")";
    throw std::runtime_error(os.str());
  }
  if (std::abs(tr.imag()) > 1e-13 * scale)
    std::cerr << "warning: discarding imaginary trace residue " << tr.imag() << '\n';
  return tr.real();
}

double lieb_trace(const PositiveLinearMap& phi, const PositiveLinearMap& psi, const ScalarFunction& f1,
                  const ScalarFunction& f2, const ComplexMatrix& K, double p, const HermitianMatrix& A,
                  const HermitianMatrix& B, LiebForm form) {
  double q = 0;
  if (form == LiebForm::concave) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("lieb_trace: concave form needs p in [0,1]");
    q = 1.0 - p;
  } else {
    if (!(p >= -1.0 && p <= 0.0)) throw std::invalid_argument("lieb_trace: convex form needs p in [-1,0]");
    q = -1.0 - p;
  }
  const HermitianMatrix X = powm(phi(apply_function(A, f1)), p);
  const HermitianMatrix Y = powm(psi(apply_function(B, f2)), q);
  if (X.dim() != K.rows() || Y.dim() != K.rows() || K.rows() != K.cols())
    throw DimensionMismatch("lieb_trace: K must be square with the dimension of Phi's and Psi's outputs");
  return real_trace(X.matrix() * K.adjoint() * Y.matrix() * K);
}

HermitianMatrix power_mean_map(const PositiveLinearMap& phi, const HermitianMatrix& A, double p) {
  if (p == 0.0) throw std::invalid_argument("power mean needs p != 0");
  return powm(phi(powm(A, p)), 1.0 / p);
}

double trace_minkowski_power(const PositiveLinearMap& phi, const HermitianMatrix& A, double p) {
  phi.require_unital();
  require_positive_definite(A);
  return power_mean_map(phi, A, p).trace();
}

HermitianMatrix op_determinant(const PositiveLinearMap& phi, const HermitianMatrix& A) {
  phi.require_unital();
  return expm(phi(logm(A)));
}

}  // namespace opineq
