#ifndef OPINEQ_PROBE_HPP
#define OPINEQ_PROBE_HPP

// Randomized inequality checking: seeded sampling, per-trial evaluation,
// reports with witnesses, and local violation search.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "opineq/io.hpp"
#include "opineq/matcore.hpp"

namespace opineq {

struct SpectralWindow {
  double m = 0.5;
  double M = 2.0;
  double h() const { return M / m; }
};

struct ProbeConfig {
  int dim_min = 2;
  int dim_max = 5;
  int trials = 200;
  std::vector<double> lambda_grid{0.5};
  double tol = 1e-9;
  std::uint64_t seed = 7;
  SpectralWindow window;
  /// Worker threads for trial evaluation; reports do not depend on it.
  int threads = 1;

  /// Throws std::invalid_argument on trials < 1, 0 >= m, m > M, grid outside [0,1], bad dims.
  void validate() const;
  json to_json() const;
  static ProbeConfig from_json(const json& j);
};

using Rng = std::mt19937_64;

/// Generator for trial `stream` of a run seeded with `seed`; a SplitMix64 mix
/// of both, so trials are independent of evaluation order.
Rng trial_rng(std::uint64_t seed, std::uint64_t stream);

int sample_dim(Rng& rng, int lo, int hi);
double sample_uniform(Rng& rng, double lo, double hi);
/// Haar unitary from the QR factorization of a complex Gaussian matrix.
ComplexMatrix sample_unitary(Rng& rng, Index n);
/// U diag(uniform[m, M]) U*; exactly m I when m == M.
HermitianMatrix sample_pd(Rng& rng, Index n, const SpectralWindow& window);
/// G G* / n for complex Gaussian G of rank <= `rank` (full rank when 0).
HermitianMatrix sample_psd(Rng& rng, Index n, Index rank = 0);
/// Complex Gaussian matrix with condition number at most 1e3.
ComplexMatrix sample_invertible(Rng& rng, Index n);
ComplexMatrix sample_gaussian(Rng& rng, Index rows, Index cols);
/// Positive semidefinite with unit diagonal (a Gram matrix of random unit vectors).
ComplexMatrix sample_correlation(Rng& rng, Index n);

/// One side of an inequality. The trial fails the term when margin < -tol (1 + scale).
struct Term {
  std::string name;
  double margin;
  double scale;
  double normalized() const { return margin / (1.0 + scale); }
};

/// lower <= upper in the Loewner order: margin lambda_min(upper - lower), scale ||upper - lower||_op.
Term loewner_term(std::string name, const HermitianMatrix& lower, const HermitianMatrix& upper);
/// lower <= upper for reals: margin upper - lower, scale max(|lower|, |upper|).
Term scalar_term(std::string name, double lower, double upper);
/// |err| <= within * (1 + reference), as a term with normalized margin within - err/(1 + reference).
Term equality_term(std::string name, double err, double reference, double within);

struct Outcome {
  std::vector<Term> terms;
  json details;  // optional extra data recorded for the worst trial

  /// Smallest normalized margin over the terms.
  double score() const;
  const Term& worst() const;
  json to_json() const;
};

/// A trial instance is {"inputs": {...matrices...}, "params": {...}}.
struct Probe {
  std::string id;
  std::function<json(Rng&, const ProbeConfig&, int trial)> generate;
  std::function<Outcome(const json& instance)> evaluate;
  /// Runs with this many trials regardless of the config (grid checks).
  std::optional<int> fixed_trials;
  bool expect_violation = false;
  /// Stop at the first violation (expected-violation runs).
  bool stop_at_first_violation = false;
};

struct InequalityReport {
  std::string theorem;
  int trials = 0;
  int violations = 0;
  int errors = 0;
  int marginal_count = 0;
  double worst_margin = 0.0;  // smallest normalized margin seen
  std::optional<json> witness;
  std::optional<json> first_error;
  std::uint64_t seed = 0;
  json config;
  bool expect_violation = false;
  json cases = json::array();  // per-probe summaries when several probes are combined
  json details = json::object();
  /// Extra pass requirements that did not hold (golden values, runtime limits).
  std::vector<std::string> failed_requirements;
  double elapsed_seconds = 0.0;

  bool passed() const;
  json to_json(bool include_elapsed = true) const;
};

/// Runs every trial of `probe`. Trials whose normalized margin falls in
/// [-10 tol, -0.1 tol] are re-evaluated with a 1e-15 eigensolver tolerance.
InequalityReport run_probe(const Probe& probe, const ProbeConfig& config);

/// Sums counts, keeps the worst witness, and lists each part under "cases".
InequalityReport combine(const std::string& theorem, const std::vector<InequalityReport>& parts,
                         const ProbeConfig& config, bool expect_violation = false);

/// Evaluates a stored witness instance again; used for soundness checks.
Outcome reevaluate(const Probe& probe, const json& instance);

struct SearchOptions {
  int max_trials = 1000;
  /// Hill-climbing steps per restart after the random phase finds nothing.
  int refine_steps = 4000;
  int restarts = 4;
  /// Climbing stops once the normalized margin drops below this.
  double target = -1e-7;
};

/// Random trials until the first violation; otherwise hill-climbs from the
/// best instances by perturbing square-root factors of the input matrices.
InequalityReport search_violations(const Probe& probe, const ProbeConfig& config, const SearchOptions& options = {});

// Instance helpers.
HermitianMatrix input_matrix(const json& instance, const std::string& name);
double param(const json& instance, const std::string& name);

}  // namespace opineq

#endif  // OPINEQ_PROBE_HPP
