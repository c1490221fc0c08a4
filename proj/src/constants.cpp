#include "opineq/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opineq {
namespace {

constexpr double kSingular = 1e-8;

// log|e^x - e^y|.
double log_abs_exp_diff(double x, double y) {
  return std::max(x, y) + std::log(-std::expm1(-std::abs(x - y)));
}

// K as a function of L = log h > 0.
double kantorovich_from_log(double L, double p) {
  if (std::abs(p) < kSingular || std::abs(p - 1.0) < kSingular) return 1.0;
  if (std::expm1(L) < kSingular) return 1.0;
  const double log_a = log_abs_exp_diff(p * L, L);    // |h^p - h|
  const double log_b = log_abs_exp_diff(p * L, 0.0);  // |h^p - 1|
  const double log_pm1 = std::log(std::abs(p - 1.0));
  const double log_hm1 = std::log(std::expm1(L));
  const double log_k = log_a - log_pm1 - log_hm1 + p * (log_pm1 - std::log(std::abs(p)) + log_b - log_a);
  return std::exp(log_k);
}

}  // namespace

ConditionNumber::ConditionNumber(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("condition number must be positive and finite");
  h_ = h < 1.0 ? 1.0 / h : h;
}

double kantorovich(double h, double p) {
  if (!(h > 0.0)) throw std::invalid_argument("kantorovich: h must be positive");
  if (std::abs(h - 1.0) < kSingular) return 1.0;
  return kantorovich_from_log(std::abs(std::log(h)), p);
}

double specht(double h) {
  if (!(h > 0.0)) throw std::invalid_argument("specht: h must be positive");
  const double d = h - 1.0;
  if (std::abs(d) < kSingular) return 1.0 + d * d / 8.0;
  const double L = std::log(h);
  return std::exp(std::log(std::abs(d)) + L / d - 1.0 - std::log(std::abs(L)));
}

double kantorovich_specht_limit(double h, double p, double r) {
  if (r == 0.0) throw std::invalid_argument("kantorovich_specht_limit: r must be nonzero");
  if (!(h > 0.0)) throw std::invalid_argument("kantorovich_specht_limit: h must be positive");
  // log(h^r) taken directly so h^r is never rounded near 1.
  const double L = std::abs(r * std::log(h));
  const double q = p / r;
  if (L == 0.0) return 1.0;
  if (std::expm1(L) < kSingular) return 1.0;
  return kantorovich_from_log(L, q);
}

}  // namespace opineq
