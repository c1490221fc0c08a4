#ifndef OPINEQ_CHECKS_HPP
#define OPINEQ_CHECKS_HPP

// Inequality checks: joint convexity probes, reverse Jensen and Minkowski
// sandwiches, determinant bounds, trace theorems and the two fixed
// counterexamples.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opineq/maps.hpp"
#include "opineq/means.hpp"
#include "opineq/probe.hpp"

namespace opineq {

/// Optional overrides shared by all checks (CLI --p, --t, --map, --mean).
struct CheckParams {
  std::optional<double> p;
  std::optional<double> t;
  std::optional<std::string> map;
  std::optional<std::string> mean;
  json to_json() const;
  static CheckParams from_json(const json& j);
};

enum class ConvexityMode { convex, concave, log_convex, log_concave };

/// Draws the per-trial parameters of a k-slot functional and returns the input dimension of each slot.
using SlotPrepare = std::function<std::vector<Index>(Rng&, const ProbeConfig&, json& params)>;
using MatrixFunctional = std::function<HermitianMatrix(const json& params, const std::vector<HermitianMatrix>& args)>;
using ScalarFunctional = std::function<double(const json& params, const std::vector<HermitianMatrix>& args)>;

/// Two endpoints per slot; convex/concave modes test every lambda of the grid,
/// log modes the midpoint against the geometric mean of the endpoint values.
Probe joint_convexity_probe(std::string id, ConvexityMode mode, SlotPrepare prepare, MatrixFunctional F);
/// Scalar version. The log-convex mode also records the harmonic-mean margin.
Probe joint_convexity_probe(std::string id, ConvexityMode mode, SlotPrepare prepare, ScalarFunctional F);

/// Two slots of the same random dimension from the config.
SlotPrepare same_dim_slots(int slots = 2);

InequalityReport check_joint_convexity(std::string id, ConvexityMode mode, SlotPrepare prepare, MatrixFunctional F,
                                       const ProbeConfig& config);
InequalityReport check_joint_convexity(std::string id, ConvexityMode mode, SlotPrepare prepare, ScalarFunctional F,
                                       const ProbeConfig& config);

/// Draws a map of the given kind with the given output dimension. Kinds:
/// "id", "avg:n", "pinch", "schur" (random correlation), "congr" (random
/// rectangular K), "ucongr" (random isometry), or any id PositiveLinearMap::parse accepts.
PositiveLinearMap sample_map(const std::string& kind, Rng& rng, Index output_dim);

/// "arith", "geo", "harm" take the weight t, "path" also r; anything else goes to OperatorMean::parse.
OperatorMean mean_by_kind(const std::string& kind, double t, double r = 0.5);

/// Phi(A sigma B) <= Phi(A) sigma Phi(B).
InequalityReport check_mean_monotonicity(const std::string& map_kind, const std::string& mean_kind,
                                         const ProbeConfig& config, std::optional<double> t = std::nullopt);

/// Two-sided reverse Jensen bound in the regime of p; h from the spectral window.
InequalityReport check_reverse_jensen(const std::string& map_kind, double p, const ProbeConfig& config);

/// Minkowski sandwich with the regime-correct power of K(h,p).
InequalityReport check_minkowski_sandwich(const std::string& map_kind, double p, const ProbeConfig& config);

/// Determinant bounds with Specht ratios; without p the additive form, with p >= 1 the power form.
InequalityReport check_determinant_bounds(const std::string& map_kind, const ProbeConfig& config,
                                          std::optional<double> p = std::nullopt);

struct CounterexampleResult {
  HermitianMatrix lhs;
  HermitianMatrix rhs;
  LoewnerVerdict verdict;
};

/// LHS = F(A1 avg A2, B1 avg B2) and RHS = avg of F(Ai, Bi) for F(A,B) = h(f(A) sigma g(B)).
CounterexampleResult sqrt_geo_counterexample(const OperatorMean& sigma = OperatorMean::geometric());
/// (A1^p + A2^p)^{1/p} + (B1^p + B2^p)^{1/p} - ((A1+B1)^p + (A2+B2)^p)^{1/p}.
HermitianMatrix minkowski_counterexample_difference(double p = 2.0);

InequalityReport reproduce_counterexample_sqrt_geo();
InequalityReport reproduce_counterexample_minkowski();

/// Reference inputs of the two counterexamples.
std::vector<HermitianMatrix> sqrt_geo_inputs();
std::vector<HermitianMatrix> minkowski_inputs();

}  // namespace opineq

#endif  // OPINEQ_CHECKS_HPP
