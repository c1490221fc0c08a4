#ifndef OPINEQ_CONSTANTS_HPP
#define OPINEQ_CONSTANTS_HPP

// Generalized Kantorovich constant K(h,p) and Specht ratio S(h).

#include "opineq/matcore.hpp"

namespace opineq {

/// h = M/m folded onto [1, inf) via h -> 1/h; K and S are invariant under it.
class ConditionNumber {
 public:
  explicit ConditionNumber(double h);
  static ConditionNumber of(const SpectralBounds& b) { return ConditionNumber(b.M / b.m); }
  static ConditionNumber of(double m, double M) { return ConditionNumber(M / m); }
  double value() const { return h_; }
  operator double() const { return h_; }

 private:
  double h_;
};

/// K(h,p) = (h^p-h)/((p-1)(h-1)) * ((p-1)/p * (h^p-1)/(h^p-h))^p, evaluated in log form.
/// Returns exactly 1 when |p|, |p-1| or |h-1| is below 1e-8.
double kantorovich(double h, double p);

/// S(h) = (h-1) h^{1/(h-1)} / (e log h), with S ~ 1 + (h-1)^2/8 for |h-1| < 1e-8.
double specht(double h);

/// K(h^r, p/r), which tends to S(h^p) as r -> 0. r = 0 is rejected.
double kantorovich_specht_limit(double h, double p, double r);

}  // namespace opineq

#endif  // OPINEQ_CONSTANTS_HPP
