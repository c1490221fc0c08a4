#ifndef OPINEQ_SCALAR_FUNCTION_HPP
#define OPINEQ_SCALAR_FUNCTION_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace opineq {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = true;
  bool hi_open = true;

  bool contains(double x) const {
    if (std::isnan(x)) return false;
    const bool above = lo_open ? x > lo : x >= lo;
    const bool below = hi_open ? x < hi : x <= hi;
    return above && below;
  }

  static Interval real_line() { return {}; }
  static Interval positive() { return {0.0, std::numeric_limits<double>::infinity(), true, true}; }
  static Interval nonnegative() { return {0.0, std::numeric_limits<double>::infinity(), false, true}; }
  static Interval greater_than(double a) { return {a, std::numeric_limits<double>::infinity(), true, true}; }
};

/// A named real function with the domain it may be applied on.
struct ScalarFunction {
  std::string name;
  std::function<double(double)> fn;
  Interval domain;

  double operator()(double x) const { return fn(x); }
};

namespace scalar {

inline std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline ScalarFunction power(double p) {
  return {"power:" + format_number(p), [p](double x) { return std::pow(x, p); }, Interval::positive()};
}
inline ScalarFunction sqrt() {
  return {"sqrt", [](double x) { return std::sqrt(x); }, Interval::nonnegative()};
}
inline ScalarFunction log() {
  return {"log", [](double x) { return std::log(x); }, Interval::positive()};
}
inline ScalarFunction exp() {
  return {"exp", [](double x) { return std::exp(x); }, Interval::real_line()};
}
/// t -> 1/log t on (1, inf).
inline ScalarFunction inv_log() {
  return {"inv_log", [](double x) { return 1.0 / std::log(x); }, Interval::greater_than(1.0)};
}
inline ScalarFunction id() {
  return {"id", [](double x) { return x; }, Interval::real_line()};
}

inline ScalarFunction custom(std::string name, std::function<double(double)> fn, Interval domain) {
  return {std::move(name), std::move(fn), domain};
}

/// Parses "power:p", "log", "exp", "inv_log", "id", "sqrt".
inline ScalarFunction parse(const std::string& id) {
  if (id == "log") return log();
  if (id == "exp") return exp();
  if (id == "inv_log") return inv_log();
  if (id == "id") return scalar::id();
  if (id == "sqrt") return sqrt();
  if (id.rfind("power:", 0) == 0) {
    const std::string arg = id.substr(6);
    std::size_t used = 0;
    double p = 0;
    try {
      p = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size() || !std::isfinite(p))
      throw std::invalid_argument("bad exponent in scalar function id '" + id + "'");
    return power(p);
  }
  throw std::invalid_argument("unknown scalar function '" + id +
                              "' (expected power:p, log, exp, inv_log, id, sqrt)");
}

}  // namespace scalar
}  // namespace opineq

#endif  // OPINEQ_SCALAR_FUNCTION_HPP
