#ifndef OPINEQ_MEANS_HPP
#define OPINEQ_MEANS_HPP

// Kubo-Ando operator means A sigma B = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2},
// their weighted forms and the interpolational paths m_{r,t}.

#include <memory>
#include <string>

#include "opineq/matcore.hpp"
#include "opineq/scalar_function.hpp"

namespace opineq {

/// Below this |r| the path m_{r,t} is evaluated as the geometric path.
inline constexpr double kPathGeometricCutoff = 1e-4;

struct PathParams {
  double r = 0.0;
  double t = 0.5;
};

enum class MeanFamily { arithmetic, geometric, harmonic, path, custom };

class OperatorMean {
 public:
  static OperatorMean arithmetic(double t = 0.5);
  static OperatorMean geometric(double t = 0.5);
  static OperatorMean harmonic(double t = 0.5);
  static OperatorMean path(double r, double t = 0.5);
  /// User mean from a representing function. Checks f(1) = 1 and f > 0 on
  /// a log-spaced grid; operator monotonicity is the caller's promise.
  static OperatorMean custom(const ScalarFunction& f);

  /// "arith:t", "geo:t", "harm:t", "path:r:t"; bare "arith", "geo", "harm" mean t = 1/2.
  static OperatorMean parse(const std::string& id);

  MeanFamily family() const { return family_; }
  double weight() const { return t_; }
  double r() const { return r_; }
  std::string id() const;

  ScalarFunction representing_function() const;
  OperatorMean adjoint() const;

  HermitianMatrix operator()(const HermitianMatrix& A, const HermitianMatrix& B) const;

  bool operator==(const OperatorMean& o) const;

 private:
  OperatorMean(MeanFamily family, double r, double t) : family_(family), r_(r), t_(t) {}

  MeanFamily family_;
  double r_ = 0.0;
  double t_ = 0.5;
  ScalarFunction custom_f_;
  std::shared_ptr<const OperatorMean> adjoint_of_;  // set on adjoints of custom means
};

HermitianMatrix mean(const OperatorMean& sigma, const HermitianMatrix& A, const HermitianMatrix& B);

/// (1-t)A + tB.
HermitianMatrix weighted_arithmetic(const HermitianMatrix& A, const HermitianMatrix& B, double t = 0.5);
/// ((1-t)A^{-1} + tB^{-1})^{-1}.
HermitianMatrix weighted_harmonic(const HermitianMatrix& A, const HermitianMatrix& B, double t = 0.5);
/// A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}.
HermitianMatrix weighted_geometric(const HermitianMatrix& A, const HermitianMatrix& B, double t = 0.5);
HermitianMatrix interpolational_path(const HermitianMatrix& A, const HermitianMatrix& B, PathParams params);

OperatorMean adjoint_mean(const OperatorMean& sigma);

}  // namespace opineq

#endif  // OPINEQ_MEANS_HPP
