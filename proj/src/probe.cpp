#include "opineq/probe.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

namespace opineq {
namespace {

constexpr double kTightTolerance = 1e-15;
constexpr int kBlock = 64;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct TrialResult {
  bool error = false;
  std::string message;
  bool marginal = false;
  bool tightened = false;
  double score = 0.0;
  Outcome outcome;
  json instance;
};

TrialResult run_trial(const Probe& probe, const ProbeConfig& config, int index) {
  TrialResult r;
  try {
    Rng rng = trial_rng(config.seed, static_cast<std::uint64_t>(index));
    r.instance = probe.generate(rng, config, index);
    r.outcome = probe.evaluate(r.instance);
    r.score = r.outcome.score();
    if (r.score >= -10.0 * config.tol && r.score <= -0.1 * config.tol) {
      r.marginal = true;
      try {
        ScopedEigenSolverSettings tight({kTightTolerance, 64});
        r.outcome = probe.evaluate(r.instance);
        r.score = r.outcome.score();
        r.tightened = true;
      } catch (const ConvergenceError&) {
        // keep the default-tolerance verdict
      }
    }
  } catch (const std::exception& e) {
    r.error = true;
    r.message = e.what();
  }
  return r;
}

std::vector<TrialResult> run_block(const Probe& probe, const ProbeConfig& config, int begin, int end) {
  std::vector<TrialResult> out(static_cast<std::size_t>(end - begin));
  const int workers = std::max(1, std::min(config.threads, end - begin));
  if (workers == 1) {
    for (int i = begin; i < end; ++i) out[static_cast<std::size_t>(i - begin)] = run_trial(probe, config, i);
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = begin + w; i < end; i += workers) out[static_cast<std::size_t>(i - begin)] = run_trial(probe, config, i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

json witness_json(int trial, const TrialResult& r) {
  json w = {{"trial", trial}, {"instance", r.instance}, {"margin", r.score}, {"outcome", r.outcome.to_json()}};
  if (r.tightened) w["eigen_tolerance"] = kTightTolerance;
  return w;
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Folds one trial into the report; returns true when it is a violation.
bool absorb(InequalityReport& report, int index, const TrialResult& r, double tol, json& worst_outcome) {
  ++report.trials;
  if (r.error) {
    ++report.errors;
    if (!report.first_error) report.first_error = json{{"trial", index}, {"message", r.message}, {"instance", r.instance}};
    return false;
  }
  if (r.marginal) ++report.marginal_count;
  const bool violated = r.score < -tol;
  const bool first_success = report.trials - report.errors == 1;
  if (first_success || r.score < report.worst_margin) {
    report.worst_margin = r.score;
    worst_outcome = r.outcome.to_json();
    if (violated) report.witness = witness_json(index, r);
  }
  if (violated) ++report.violations;
  return violated;
}

}  // namespace

void ProbeConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (dim_min < 1 || dim_max < dim_min) throw std::invalid_argument("dimension range must satisfy 1 <= min <= max");
  if (!(window.m > 0.0) || !(window.M >= window.m) || !std::isfinite(window.M))
    throw std::invalid_argument("spectral window must satisfy 0 < m <= M");
  if (lambda_grid.empty()) throw std::invalid_argument("lambda grid must not be empty");
  for (double l : lambda_grid)
    if (!(l >= 0.0 && l <= 1.0)) throw std::invalid_argument("lambda grid values must lie in [0,1]");
  if (!(tol >= 0.0)) throw std::invalid_argument("tol must be non-negative");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

json ProbeConfig::to_json() const {
  return {{"dim", {dim_min, dim_max}}, {"trials", trials}, {"lambda_grid", lambda_grid}, {"tol", tol},
          {"seed", seed}, {"window", {window.m, window.M}}};
}

ProbeConfig ProbeConfig::from_json(const json& j) {
  ProbeConfig c;
  if (j.contains("dim")) {
    c.dim_min = j.at("dim").at(0).get<int>();
    c.dim_max = j.at("dim").at(1).get<int>();
  }
  if (j.contains("trials")) c.trials = j.at("trials").get<int>();
  if (j.contains("lambda_grid")) c.lambda_grid = j.at("lambda_grid").get<std::vector<double>>();
  if (j.contains("tol")) c.tol = j.at("tol").get<double>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("window")) {
    c.window.m = j.at("window").at(0).get<double>();
    c.window.M = j.at("window").at(1).get<double>();
  }
  c.validate();
  return c;
}

Rng trial_rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state = a ^ (stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL);
  const std::uint64_t b = splitmix64(state);
  const std::uint64_t c = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32), static_cast<std::uint32_t>(c),
                    static_cast<std::uint32_t>(c >> 32)};
  return Rng(seq);
}

int sample_dim(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double sample_uniform(Rng& rng, double lo, double hi) {
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

ComplexMatrix sample_gaussian(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = {re, im};
    }
  return g;
}

ComplexMatrix sample_unitary(Rng& rng, Index n) {
  const ComplexMatrix g = sample_gaussian(rng, n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

HermitianMatrix sample_pd(Rng& rng, Index n, const SpectralWindow& window) {
  if (window.m == window.M) return HermitianMatrix::identity(n) * window.m;
  const ComplexMatrix u = sample_unitary(rng, n);
  RealVector d(n);
  for (Index i = 0; i < n; ++i) d(i) = sample_uniform(rng, window.m, window.M);
  return HermitianMatrix(u * d.cast<std::complex<double>>().asDiagonal() * u.adjoint());
}

HermitianMatrix sample_psd(Rng& rng, Index n, Index rank) {
  const Index k = rank > 0 ? std::min(rank, n) : n;
  const ComplexMatrix g = sample_gaussian(rng, n, k);
  return HermitianMatrix(g * g.adjoint() / static_cast<double>(n));
}

ComplexMatrix sample_invertible(Rng& rng, Index n) {
  for (;;) {
    const ComplexMatrix g = sample_gaussian(rng, n, n);
    Eigen::JacobiSVD<ComplexMatrix> svd(g);
    const auto& s = svd.singularValues();
    if (s(n - 1) > 0.0 && s(0) / s(n - 1) <= 1e3) return g;
  }
}

ComplexMatrix sample_correlation(Rng& rng, Index n) {
  ComplexMatrix v = sample_gaussian(rng, n, n);
  for (Index i = 0; i < n; ++i) v.row(i) /= v.row(i).norm();
  ComplexMatrix c = v * v.adjoint();
  for (Index i = 0; i < n; ++i) c(i, i) = 1.0;
  return c;
}

Term loewner_term(std::string name, const HermitianMatrix& lower, const HermitianMatrix& upper) {
  const LoewnerVerdict v = loewner_leq(lower, upper);
  return {std::move(name), v.margin, v.scale};
}

Term scalar_term(std::string name, double lower, double upper) {
  return {std::move(name), upper - lower, std::max(std::abs(lower), std::abs(upper))};
}

Term equality_term(std::string name, double err, double reference, double within) {
  return {std::move(name), within - std::abs(err) / (1.0 + std::abs(reference)), 0.0};
}

double Outcome::score() const { return worst().normalized(); }

const Term& Outcome::worst() const {
  if (terms.empty()) throw std::logic_error("outcome without terms");
  return *std::min_element(terms.begin(), terms.end(),
                           [](const Term& a, const Term& b) { return a.normalized() < b.normalized(); });
}

json Outcome::to_json() const {
  json t = json::array();
  for (const auto& term : terms)
    t.push_back({{"name", term.name}, {"margin", term.margin}, {"scale", term.scale}, {"normalized", term.normalized()}});
  json j = {{"terms", t}};
  if (!details.is_null()) j["details"] = details;
  return j;
}

bool InequalityReport::passed() const {
  if (!failed_requirements.empty()) return false;
  if (expect_violation) return violations > 0;
  return violations == 0 && errors == 0;
}

json InequalityReport::to_json(bool include_elapsed) const {
  json j = {{"theorem", theorem},
            {"trials", trials},
            {"violations", violations},
            {"worst_margin", worst_margin},
            {"seed", seed},
            {"config", config},
            {"marginal_count", marginal_count},
            {"errors", errors},
            {"expect_violation", expect_violation},
            {"passed", passed()}};
  if (witness) j["witness"] = *witness;
  if (first_error) j["first_error"] = *first_error;
  if (!cases.empty()) j["cases"] = cases;
  if (!details.empty()) j["details"] = details;
  if (!failed_requirements.empty()) j["failed_requirements"] = failed_requirements;
  if (include_elapsed) j["elapsed_seconds"] = elapsed_seconds;
  return j;
}

InequalityReport run_probe(const Probe& probe, const ProbeConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  InequalityReport report;
  report.theorem = probe.id;
  report.seed = config.seed;
  report.expect_violation = probe.expect_violation;
  const int total = probe.fixed_trials.value_or(config.trials);
  json config_json = config.to_json();
  config_json["trials"] = total;
  report.config = config_json;

  json worst_outcome;
  bool stop = false;
  for (int begin = 0; begin < total && !stop; begin += kBlock) {
    const int end = std::min(total, begin + kBlock);
    const auto block = run_block(probe, config, begin, end);
    for (int i = begin; i < end; ++i) {
      const bool violated = absorb(report, i, block[static_cast<std::size_t>(i - begin)], config.tol, worst_outcome);
      if (violated && probe.stop_at_first_violation) {
        stop = true;
        break;
      }
    }
  }
  if (!worst_outcome.is_null()) report.details["worst_trial"] = worst_outcome;
  report.elapsed_seconds = elapsed_since(start);
  return report;
}

InequalityReport combine(const std::string& theorem, const std::vector<InequalityReport>& parts,
                         const ProbeConfig& config, bool expect_violation) {
  InequalityReport out;
  out.theorem = theorem;
  out.seed = config.seed;
  out.config = config.to_json();
  out.expect_violation = expect_violation;
  bool first = true;
  for (const auto& p : parts) {
    out.trials += p.trials;
    out.violations += p.violations;
    out.errors += p.errors;
    out.marginal_count += p.marginal_count;
    out.elapsed_seconds += p.elapsed_seconds;
    if (p.trials > p.errors && (first || p.worst_margin < out.worst_margin)) {
      out.worst_margin = p.worst_margin;
      first = false;
      if (p.witness) {
        out.witness = *p.witness;
        (*out.witness)["case"] = p.theorem;
      }
    }
    if (!out.first_error && p.first_error) {
      out.first_error = *p.first_error;
      (*out.first_error)["case"] = p.theorem;
    }
    for (const auto& f : p.failed_requirements) out.failed_requirements.push_back(p.theorem + ": " + f);
    json c = {{"case", p.theorem},         {"trials", p.trials}, {"violations", p.violations},
              {"worst_margin", p.worst_margin}, {"errors", p.errors}, {"passed", p.passed()}};
    if (!p.details.empty()) c["details"] = p.details;
    if (p.expect_violation != expect_violation) c["expect_violation"] = p.expect_violation;
    out.cases.push_back(std::move(c));
  }
  // A part whose own pass rule differs from the combined one must pass on its own terms.
  for (const auto& p : parts)
    if (p.expect_violation != expect_violation && !p.passed()) out.failed_requirements.push_back(p.theorem + ": part failed");
  return out;
}

Outcome reevaluate(const Probe& probe, const json& witness) {
  const json& instance = witness.contains("instance") ? witness.at("instance") : witness;
  if (witness.contains("eigen_tolerance")) {
    ScopedEigenSolverSettings tight({witness.at("eigen_tolerance").get<double>(), 64});
    return probe.evaluate(instance);
  }
  return probe.evaluate(instance);
}

InequalityReport search_violations(const Probe& probe, const ProbeConfig& config, const SearchOptions& options) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  InequalityReport report;
  report.theorem = probe.id;
  report.seed = config.seed;
  report.expect_violation = probe.expect_violation;
  json config_json = config.to_json();
  config_json["trials"] = options.max_trials;
  report.config = config_json;

  // Random phase, remembering the best few instances as climbing starts.
  std::vector<std::pair<double, json>> best;
  json worst_outcome;
  bool found = false;
  for (int begin = 0; begin < options.max_trials && !found; begin += kBlock) {
    const int end = std::min(options.max_trials, begin + kBlock);
    const auto block = run_block(probe, config, begin, end);
    for (int i = begin; i < end; ++i) {
      const TrialResult& r = block[static_cast<std::size_t>(i - begin)];
      if (absorb(report, i, r, config.tol, worst_outcome)) {
        found = true;
        break;
      }
      if (!r.error) best.emplace_back(r.score, r.instance);
    }
  }
  std::stable_sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  int steps_used = 0;
  json climb = json::array();
  for (int restart = 0; !found && restart < options.restarts && restart < static_cast<int>(best.size()); ++restart) {
    json current = best[static_cast<std::size_t>(restart)].second;
    double current_score = best[static_cast<std::size_t>(restart)].first;
    const double start_score = current_score;
    Rng rng = trial_rng(config.seed ^ 0x5ea4c4c11bULL, static_cast<std::uint64_t>(restart));
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<std::string> names;
    std::map<std::string, ComplexMatrix> roots;
    for (auto it = current.at("inputs").begin(); it != current.at("inputs").end(); ++it) {
      if (!it.value().is_object() || !it.value().contains("re")) continue;
      names.push_back(it.key());
      const HermitianMatrix m = hermitian_from_json(it.value());
      roots[it.key()] = eigh(m).reconstruct([](double x) { return std::sqrt(std::max(x, 0.0)); });
    }
    if (names.empty()) break;

    double step = 0.05;
    int step_index = 0;
    for (; step_index < options.refine_steps && current_score >= options.target; ++step_index) {
      const std::string& name = names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)];
      ComplexMatrix L = roots[name];
      const Index n = L.rows();
      const Index i = std::uniform_int_distribution<Index>(0, n - 1)(rng);
      const Index j = std::uniform_int_distribution<Index>(0, n - 1)(rng);
      const double re = normal(rng), im = normal(rng);
      L(i, j) += step * std::complex<double>(re, im);
      json candidate = current;
      candidate["inputs"][name] = matrix_to_json(HermitianMatrix(L * L.adjoint()));
      double score = 0;
      bool ok = true;
      try {
        score = probe.evaluate(candidate).score();
      } catch (const std::exception&) {
        ok = false;
      }
      if (ok && score < current_score) {
        current = std::move(candidate);
        current_score = score;
        roots[name] = L;
        step *= 1.2;
      } else {
        step = std::max(step * 0.97, 1e-4);
      }
    }
    steps_used += step_index;
    climb.push_back({{"restart", restart}, {"start_margin", start_score}, {"end_margin", current_score}, {"steps", step_index}});

    if (current_score < -config.tol) {
      TrialResult r;
      r.instance = current;
      r.outcome = probe.evaluate(current);
      r.score = r.outcome.score();
      if (r.score < -config.tol) {
        found = true;
        ++report.violations;
        if (r.score < report.worst_margin) {
          report.worst_margin = r.score;
          worst_outcome = r.outcome.to_json();
        }
        report.witness = witness_json(-1, r);
        (*report.witness)["refined_from_restart"] = restart;
      }
    }
  }
  if (!climb.empty()) report.details["refinement"] = {{"steps", steps_used}, {"restarts", climb}};
  if (!worst_outcome.is_null()) report.details["worst_trial"] = worst_outcome;
  report.elapsed_seconds = elapsed_since(start);
  return report;
}

HermitianMatrix input_matrix(const json& instance, const std::string& name) {
  return hermitian_from_json(instance.at("inputs").at(name));
}

double param(const json& instance, const std::string& name) { return instance.at("params").at(name).get<double>(); }

}  // namespace opineq
