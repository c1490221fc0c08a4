#include "opineq/means.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace opineq {
namespace {

void require_weight(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("mean weight t must lie in [0,1], got " + scalar::format_number(t));
}

void require_exponent(double r) {
  if (!(r >= -1.0 && r <= 1.0)) throw std::invalid_argument("path exponent r must lie in [-1,1], got " + scalar::format_number(r));
}

// Eigendecomposition of A is shared between A^{1/2} and A^{-1/2}.
struct Congruent {
  ComplexMatrix half;
  ComplexMatrix inv_half;
};

Congruent split(const HermitianMatrix& A) {
  const auto eig = eigh(A);
  if (!is_positive_definite(eig)) throw NotPositiveDefinite(eig.min());
  return {eig.reconstruct([](double x) { return std::sqrt(x); }),
          eig.reconstruct([](double x) { return 1.0 / std::sqrt(x); })};
}

template <typename F>
HermitianMatrix kubo_ando(const HermitianMatrix& A, const HermitianMatrix& B, F&& f) {
  require_positive_definite(B);
  const Congruent c = split(A);
  const HermitianMatrix inner(c.inv_half * B.matrix() * c.inv_half);
  const HermitianMatrix mapped = apply_function(inner, std::forward<F>(f));
  return HermitianMatrix(c.half * mapped.matrix() * c.half);
}

double parse_number(const std::string& s, const std::string& id) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument("bad number '" + s + "' in mean id '" + id + "'");
  return v;
}

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  return parts;
}

}  // namespace

OperatorMean OperatorMean::arithmetic(double t) {
  require_weight(t);
  return OperatorMean(MeanFamily::arithmetic, 1.0, t);
}

OperatorMean OperatorMean::geometric(double t) {
  require_weight(t);
  return OperatorMean(MeanFamily::geometric, 0.0, t);
}

OperatorMean OperatorMean::harmonic(double t) {
  require_weight(t);
  return OperatorMean(MeanFamily::harmonic, -1.0, t);
}

OperatorMean OperatorMean::path(double r, double t) {
  require_exponent(r);
  require_weight(t);
  return OperatorMean(MeanFamily::path, r, t);
}

OperatorMean OperatorMean::custom(const ScalarFunction& f) {
  const double at_one = f(1.0);
  if (!(std::abs(at_one - 1.0) <= 1e-12))
    throw std::invalid_argument("representing function " + f.name + " must satisfy f(1) = 1, got " +
                                scalar::format_number(at_one));
  for (int k = -24; k <= 24; ++k) {
    const double x = std::pow(10.0, k / 4.0);
    const double y = f(x);
    if (!(y > 0.0))
      throw std::invalid_argument("representing function " + f.name + " is not positive at x = " +
                                  scalar::format_number(x));
  }
  OperatorMean m(MeanFamily::custom, 0.0, 0.5);
  m.custom_f_ = f;
  return m;
}

OperatorMean OperatorMean::parse(const std::string& id) {
  const auto parts = split_colon(id);
  if (parts.empty()) throw std::invalid_argument("empty mean id");
  const std::string& head = parts[0];
  auto weight_at = [&](std::size_t i) { return parts.size() > i ? parse_number(parts[i], id) : 0.5; };
  if (head == "arith" && parts.size() <= 2) return arithmetic(weight_at(1));
  if (head == "geo" && parts.size() <= 2) return geometric(weight_at(1));
  if (head == "harm" && parts.size() <= 2) return harmonic(weight_at(1));
  if (head == "path" && (parts.size() == 2 || parts.size() == 3)) return path(parse_number(parts[1], id), weight_at(2));
  throw std::invalid_argument("unknown mean id '" + id + "' (expected arith:t, geo:t, harm:t, path:r:t)");
}

std::string OperatorMean::id() const {
  const std::string t = scalar::format_number(t_);
  switch (family_) {
    case MeanFamily::arithmetic: return "arith:" + t;
    case MeanFamily::geometric: return "geo:" + t;
    case MeanFamily::harmonic: return "harm:" + t;
    case MeanFamily::path: return "path:" + scalar::format_number(r_) + ":" + t;
    case MeanFamily::custom: return "custom:" + custom_f_.name;
  }
  return "";
}

ScalarFunction OperatorMean::representing_function() const {
  const double t = t_, r = r_;
  switch (family_) {
    case MeanFamily::arithmetic:
      return scalar::custom(id(), [t](double x) { return (1 - t) + t * x; }, Interval::positive());
    case MeanFamily::geometric:
      return scalar::custom(id(), [t](double x) { return std::pow(x, t); }, Interval::positive());
    case MeanFamily::harmonic:
      return scalar::custom(id(), [t](double x) { return 1.0 / ((1 - t) + t / x); }, Interval::positive());
    case MeanFamily::path:
      if (std::abs(r) < kPathGeometricCutoff)
        return scalar::custom(id(), [t](double x) { return std::pow(x, t); }, Interval::positive());
      return scalar::custom(id(), [t, r](double x) { return std::pow((1 - t) + t * std::pow(x, r), 1.0 / r); },
                            Interval::positive());
    case MeanFamily::custom:
      return custom_f_;
  }
  return custom_f_;
}

OperatorMean OperatorMean::adjoint() const {
  switch (family_) {
    case MeanFamily::arithmetic: return harmonic(t_);
    case MeanFamily::harmonic: return arithmetic(t_);
    case MeanFamily::geometric: return geometric(t_);
    case MeanFamily::path: return path(-r_, t_);
    case MeanFamily::custom: {
      // Undo a previous adjoint instead of nesting, so the involution is exact.
      if (adjoint_of_) return *adjoint_of_;
      const auto f = custom_f_.fn;
      OperatorMean m(MeanFamily::custom, 0.0, 0.5);
      m.custom_f_ = scalar::custom("adjoint(" + custom_f_.name + ")", [f](double x) { return 1.0 / f(1.0 / x); },
                                   Interval::positive());
      m.adjoint_of_ = std::make_shared<const OperatorMean>(*this);
      return m;
    }
  }
  return *this;
}

HermitianMatrix OperatorMean::operator()(const HermitianMatrix& A, const HermitianMatrix& B) const {
  if (A.dim() != B.dim()) throw DimensionMismatch("mean: operands have different dimensions");
  switch (family_) {
    case MeanFamily::arithmetic: return weighted_arithmetic(A, B, t_);
    case MeanFamily::geometric: return weighted_geometric(A, B, t_);
    case MeanFamily::harmonic: return weighted_harmonic(A, B, t_);
    case MeanFamily::path: return interpolational_path(A, B, {r_, t_});
    case MeanFamily::custom: return kubo_ando(A, B, [this](double x) { return custom_f_(x); });
  }
  return A;
}

bool OperatorMean::operator==(const OperatorMean& o) const {
  if (family_ != o.family_) return false;
  if (family_ == MeanFamily::custom) return custom_f_.name == o.custom_f_.name;
  return r_ == o.r_ && t_ == o.t_;
}

HermitianMatrix mean(const OperatorMean& sigma, const HermitianMatrix& A, const HermitianMatrix& B) {
  return sigma(A, B);
}

HermitianMatrix weighted_arithmetic(const HermitianMatrix& A, const HermitianMatrix& B, double t) {
  require_weight(t);
  require_positive_definite(A);
  require_positive_definite(B);
  return (1 - t) * A + t * B;
}

HermitianMatrix weighted_harmonic(const HermitianMatrix& A, const HermitianMatrix& B, double t) {
  require_weight(t);
  require_positive_definite(A);
  require_positive_definite(B);
  return inverse((1 - t) * inverse(A) + t * inverse(B));
}

HermitianMatrix weighted_geometric(const HermitianMatrix& A, const HermitianMatrix& B, double t) {
  require_weight(t);
  return kubo_ando(A, B, [t](double x) { return std::pow(x, t); });
}

HermitianMatrix interpolational_path(const HermitianMatrix& A, const HermitianMatrix& B, PathParams params) {
  require_exponent(params.r);
  require_weight(params.t);
  const double r = params.r, t = params.t;
  if (r == 1.0) return weighted_arithmetic(A, B, t);
  if (r == -1.0) return weighted_harmonic(A, B, t);
  if (std::abs(r) < kPathGeometricCutoff) return weighted_geometric(A, B, t);
  return kubo_ando(A, B, [r, t](double x) { return std::pow((1 - t) + t * std::pow(x, r), 1.0 / r); });
}

OperatorMean adjoint_mean(const OperatorMean& sigma) { return sigma.adjoint(); }

}  // namespace opineq
