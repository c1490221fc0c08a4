#include "opineq/checks.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "opineq/constants.hpp"
#include "opineq/functionals.hpp"

namespace opineq {
namespace {

std::string slot_name(std::size_t slot, int end) { return std::string(1, static_cast<char>('A' + slot)) + std::to_string(end); }

json empty_instance() { return {{"inputs", json::object()}, {"params", json::object()}}; }

std::vector<double> lambdas(const json& params) {
  if (!params.contains("lambda")) return {0.5};
  return params.at("lambda").get<std::vector<double>>();
}

// Shared generator for both functional kinds.
std::function<json(Rng&, const ProbeConfig&, int)> joint_generator(SlotPrepare prepare) {
  return [prepare](Rng& rng, const ProbeConfig& c, int) {
    json inst = empty_instance();
    json& params = inst["params"];
    const std::vector<Index> dims = prepare(rng, c, params);
    for (std::size_t s = 0; s < dims.size(); ++s)
      for (int e = 1; e <= 2; ++e) inst["inputs"][slot_name(s, e)] = matrix_to_json(sample_pd(rng, dims[s], c.window));
    params["slots"] = dims.size();
    params["lambda"] = c.lambda_grid;
    return inst;
  };
}

struct Endpoints {
  std::vector<HermitianMatrix> first, second;
};

Endpoints read_endpoints(const json& inst) {
  const int k = inst.at("params").at("slots").get<int>();
  Endpoints ep;
  for (int s = 0; s < k; ++s) {
    ep.first.push_back(input_matrix(inst, slot_name(static_cast<std::size_t>(s), 1)));
    ep.second.push_back(input_matrix(inst, slot_name(static_cast<std::size_t>(s), 2)));
  }
  return ep;
}

std::vector<HermitianMatrix> mix(const Endpoints& ep, double lambda) {
  std::vector<HermitianMatrix> out;
  for (std::size_t s = 0; s < ep.first.size(); ++s) out.push_back(ep.first[s] * (1.0 - lambda) + ep.second[s] * lambda);
  return out;
}

std::string lambda_label(const char* what, double lambda) { return std::string(what) + "@" + scalar::format_number(lambda); }

Probe scalar_probe(std::string id, ConvexityMode mode, SlotPrepare prepare, ScalarFunctional F, bool harmonic) {
  Probe probe;
  probe.id = std::move(id);
  probe.generate = joint_generator(std::move(prepare));
  probe.evaluate = [mode, F, harmonic](const json& inst) {
    const json& params = inst.at("params");
    const Endpoints ep = read_endpoints(inst);
    const double f1 = F(params, ep.first);
    const double f2 = F(params, ep.second);
    Outcome out;
    if (mode == ConvexityMode::log_convex || mode == ConvexityMode::log_concave) {
      const double fm = F(params, mix(ep, 0.5));
      const double geo = std::sqrt(f1 * f2);
      const double harm = 2.0 * f1 * f2 / (f1 + f2);
      const double bound = harmonic ? harm : geo;
      if (mode == ConvexityMode::log_convex)
        out.terms.push_back(scalar_term(harmonic ? "log-convex (harmonic)" : "log-convex", fm, bound));
      else
        out.terms.push_back(scalar_term("log-concave", bound, fm));
      out.details = {{"midpoint", fm}, {"geometric_bound", geo}, {"harmonic_bound", harm}, {"harmonic_margin", harm - fm}};
      return out;
    }
    for (double l : lambdas(params)) {
      const double fm = F(params, mix(ep, l));
      const double chord = (1.0 - l) * f1 + l * f2;
      if (mode == ConvexityMode::convex)
        out.terms.push_back(scalar_term(lambda_label("convex", l), fm, chord));
      else
        out.terms.push_back(scalar_term(lambda_label("concave", l), chord, fm));
    }
    return out;
  };
  return probe;
}

double spectral_h(const json& params) { return params.at("M").get<double>() / params.at("m").get<double>(); }

void store_window(json& params, const SpectralWindow& w) {
  params["m"] = w.m;
  params["M"] = w.M;
}

const char* regime_note(double p) {
  if (p > 0 && p <= 1) return "0<p<=1";
  if ((p >= -1 && p < 0) || (p > 1 && p <= 2)) return "-1<=p<0 or 1<p<=2";
  return "p<-1 or p>2";
}

// Fixed-instance probe with one trial.
Probe fixed_probe(std::string id, json instance, std::function<Outcome(const json&)> evaluate) {
  Probe probe;
  probe.id = std::move(id);
  probe.generate = [instance](Rng&, const ProbeConfig&, int) { return instance; };
  probe.evaluate = std::move(evaluate);
  probe.fixed_trials = 1;
  return probe;
}

std::string describe_mismatch(const std::string& what, double got, double want, double within) {
  std::ostringstream os;
  os.precision(10);
  os << what << ": computed " << got << ", expected " << want << " within " << within;
  return os.str();
}

void golden_matrix(InequalityReport& report, const std::string& label, const HermitianMatrix& got,
                   const std::vector<std::vector<double>>& want, double within) {
  json entries = json::array();
  for (std::size_t i = 0; i < want.size(); ++i)
    for (std::size_t j = 0; j < want[i].size(); ++j) {
      const double value = got(static_cast<Index>(i), static_cast<Index>(j)).real();
      const bool ok = std::abs(value - want[i][j]) <= within;
      entries.push_back({{"i", i}, {"j", j}, {"computed", value}, {"expected", want[i][j]}, {"ok", ok}});
      if (!ok)
        report.failed_requirements.push_back(describe_mismatch(
            label + "(" + std::to_string(i) + "," + std::to_string(j) + ")", value, want[i][j], within));
    }
  report.details[label + "_golden"] = {{"within", within}, {"entries", entries}};
}

HermitianMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const Index n = static_cast<Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return HermitianMatrix::from_real(m);
}

}  // namespace

json CheckParams::to_json() const {
  json j = json::object();
  if (p) j["p"] = *p;
  if (t) j["t"] = *t;
  if (map) j["map"] = *map;
  if (mean) j["mean"] = *mean;
  return j;
}

CheckParams CheckParams::from_json(const json& j) {
  CheckParams c;
  if (j.contains("p")) c.p = j.at("p").get<double>();
  if (j.contains("t")) c.t = j.at("t").get<double>();
  if (j.contains("map")) c.map = j.at("map").get<std::string>();
  if (j.contains("mean")) c.mean = j.at("mean").get<std::string>();
  return c;
}

SlotPrepare same_dim_slots(int slots) {
  return [slots](Rng& rng, const ProbeConfig& c, json&) {
    const Index n = sample_dim(rng, c.dim_min, c.dim_max);
    return std::vector<Index>(static_cast<std::size_t>(slots), n);
  };
}

Probe joint_convexity_probe(std::string id, ConvexityMode mode, SlotPrepare prepare, MatrixFunctional F) {
  Probe probe;
  probe.id = std::move(id);
  probe.generate = joint_generator(std::move(prepare));
  probe.evaluate = [mode, F](const json& inst) {
    const json& params = inst.at("params");
    const Endpoints ep = read_endpoints(inst);
    const HermitianMatrix f1 = F(params, ep.first);
    const HermitianMatrix f2 = F(params, ep.second);
    Outcome out;
    if (mode == ConvexityMode::log_convex || mode == ConvexityMode::log_concave) {
      const HermitianMatrix fm = F(params, mix(ep, 0.5));
      const HermitianMatrix geo = weighted_geometric(f1, f2, 0.5);
      if (mode == ConvexityMode::log_convex)
        out.terms.push_back(loewner_term("log-convex", fm, geo));
      else
        out.terms.push_back(loewner_term("log-concave", geo, fm));
      return out;
    }
    for (double l : lambdas(params)) {
      const HermitianMatrix fm = F(params, mix(ep, l));
      const HermitianMatrix chord = f1 * (1.0 - l) + f2 * l;
      if (mode == ConvexityMode::convex)
        out.terms.push_back(loewner_term(lambda_label("convex", l), fm, chord));
      else
        out.terms.push_back(loewner_term(lambda_label("concave", l), chord, fm));
    }
    return out;
  };
  return probe;
}

Probe joint_convexity_probe(std::string id, ConvexityMode mode, SlotPrepare prepare, ScalarFunctional F) {
  return scalar_probe(std::move(id), mode, std::move(prepare), std::move(F), false);
}

InequalityReport check_joint_convexity(std::string id, ConvexityMode mode, SlotPrepare prepare, MatrixFunctional F,
                                       const ProbeConfig& config) {
  return run_probe(joint_convexity_probe(std::move(id), mode, std::move(prepare), std::move(F)), config);
}

InequalityReport check_joint_convexity(std::string id, ConvexityMode mode, SlotPrepare prepare, ScalarFunctional F,
                                       const ProbeConfig& config) {
  const bool log_convex = mode == ConvexityMode::log_convex;
  InequalityReport report = run_probe(scalar_probe(id, mode, prepare, F, false), config);
  if (log_convex) {
    // The stronger harmonic-mean form is recorded alongside, without affecting the verdict.
    const InequalityReport harm = run_probe(scalar_probe(id + "/harmonic", mode, prepare, F, true), config);
    report.details["harmonic_form"] = {{"violations", harm.violations},
                                       {"errors", harm.errors},
                                       {"worst_margin", harm.worst_margin},
                                       {"trials", harm.trials}};
  }
  return report;
}

PositiveLinearMap sample_map(const std::string& kind, Rng& rng, Index output_dim) {
  if (kind == "schur") return PositiveLinearMap::schur(sample_correlation(rng, output_dim));
  if (kind == "congr") {
    // Rectangular and not unital; scaled so outputs stay of order one.
    const ComplexMatrix K = sample_gaussian(rng, output_dim + 1, output_dim) / std::sqrt(static_cast<double>(output_dim + 1));
    return PositiveLinearMap::congruence(K);
  }
  if (kind == "ucongr") {
    const ComplexMatrix U = sample_unitary(rng, output_dim + 1);
    return PositiveLinearMap::unital_congruence(U.leftCols(output_dim));
  }
  return PositiveLinearMap::parse(kind);
}

// Mean monotonicity under positive maps.

OperatorMean mean_by_kind(const std::string& kind, double t, double r) {
  if (kind == "arith") return OperatorMean::arithmetic(t);
  if (kind == "geo") return OperatorMean::geometric(t);
  if (kind == "harm") return OperatorMean::harmonic(t);
  if (kind == "path") return OperatorMean::path(r, t);
  return OperatorMean::parse(kind);
}

InequalityReport check_mean_monotonicity(const std::string& map_kind, const std::string& mean_kind,
                                         const ProbeConfig& config, std::optional<double> t) {
  Probe probe;
  probe.id = "mean-positive-map[" + map_kind + "," + mean_kind + "]";
  probe.generate = [map_kind, mean_kind, t](Rng& rng, const ProbeConfig& c, int) {
    json inst = empty_instance();
    const Index n = sample_dim(rng, c.dim_min, c.dim_max);
    const PositiveLinearMap phi = sample_map(map_kind, rng, n);
    const Index in = phi.input_dim_for_output(n);
    inst["params"]["phi"] = phi.to_json();
    inst["params"]["t"] = t ? *t : sample_uniform(rng, 0.0, 1.0);
    inst["params"]["r"] = sample_uniform(rng, -1.0, 1.0);
    inst["inputs"]["A"] = matrix_to_json(sample_pd(rng, in, c.window));
    inst["inputs"]["B"] = matrix_to_json(sample_pd(rng, in, c.window));
    return inst;
  };
  probe.evaluate = [mean_kind](const json& inst) {
    const PositiveLinearMap phi = PositiveLinearMap::from_json(inst.at("params").at("phi"));
    const OperatorMean sigma = mean_by_kind(mean_kind, param(inst, "t"), param(inst, "r"));
    const HermitianMatrix A = input_matrix(inst, "A");
    const HermitianMatrix B = input_matrix(inst, "B");
    Outcome out;
    out.terms.push_back(loewner_term("Phi(A s B) <= Phi(A) s Phi(B)", phi(sigma(A, B)), sigma(phi(A), phi(B))));
    return out;
  };
  return run_probe(probe, config);
}

// Reverse Jensen.

InequalityReport check_reverse_jensen(const std::string& map_kind, double p, const ProbeConfig& config) {
  if (p == 0.0) throw std::invalid_argument("reverse Jensen needs p != 0");
  Probe probe;
  probe.id = "reverse-jensen[" + map_kind + ",p=" + scalar::format_number(p) + "]";
  probe.generate = [map_kind, p](Rng& rng, const ProbeConfig& c, int) {
    json inst = empty_instance();
    const Index n = sample_dim(rng, c.dim_min, c.dim_max);
    const PositiveLinearMap phi = sample_map(map_kind, rng, n);
    phi.require_unital();
    inst["params"]["phi"] = phi.to_json();
    inst["params"]["p"] = p;
    store_window(inst["params"], c.window);
    inst["inputs"]["A"] = matrix_to_json(sample_pd(rng, phi.input_dim_for_output(n), c.window));
    return inst;
  };
  probe.evaluate = [](const json& inst) {
    const PositiveLinearMap phi = PositiveLinearMap::from_json(inst.at("params").at("phi"));
    const double p = param(inst, "p");
    const double K = kantorovich(spectral_h(inst.at("params")), p);
    const HermitianMatrix A = input_matrix(inst, "A");
    const HermitianMatrix mid = phi(powm(A, p));
    const HermitianMatrix jensen = powm(phi(A), p);
    Outcome out;
    if (p > 0 && p <= 1) {
      out.terms.push_back(loewner_term("K Phi(A)^p <= Phi(A^p)", jensen * K, mid));
      out.terms.push_back(loewner_term("Phi(A^p) <= Phi(A)^p", mid, jensen));
    } else if ((p >= -1 && p < 0) || (p > 1 && p <= 2)) {
      out.terms.push_back(loewner_term("Phi(A)^p <= Phi(A^p)", jensen, mid));
      out.terms.push_back(loewner_term("Phi(A^p) <= K Phi(A)^p", mid, jensen * K));
    } else {
      out.terms.push_back(loewner_term("K^-1 Phi(A)^p <= Phi(A^p)", jensen / K, mid));
      out.terms.push_back(loewner_term("Phi(A^p) <= K Phi(A)^p", mid, jensen * K));
    }
    out.details = {{"K", K}, {"regime", regime_note(p)}};
    return out;
  };
  return run_probe(probe, config);
}

// Minkowski sandwich.

InequalityReport check_minkowski_sandwich(const std::string& map_kind, double p, const ProbeConfig& config) {
  if (p == 0.0) throw std::invalid_argument("Minkowski sandwich needs p != 0");
  Probe probe;
  probe.id = "minkowski-sandwich[" + map_kind + ",p=" + scalar::format_number(p) + "]";
  probe.generate = [map_kind, p](Rng& rng, const ProbeConfig& c, int) {
    json inst = empty_instance();
    const Index n = sample_dim(rng, c.dim_min, c.dim_max);
    const PositiveLinearMap phi = sample_map(map_kind, rng, n);
    phi.require_unital();
    const Index in = phi.input_dim_for_output(n);
    inst["params"]["phi"] = phi.to_json();
    inst["params"]["p"] = p;
    store_window(inst["params"], c.window);
    inst["inputs"]["A"] = matrix_to_json(sample_pd(rng, in, c.window));
    inst["inputs"]["B"] = matrix_to_json(sample_pd(rng, in, c.window));
    return inst;
  };
  probe.evaluate = [](const json& inst) {
    const PositiveLinearMap phi = PositiveLinearMap::from_json(inst.at("params").at("phi"));
    const double p = param(inst, "p");
    const double K = kantorovich(spectral_h(inst.at("params")), p);
    const HermitianMatrix A = input_matrix(inst, "A");
    const HermitianMatrix B = input_matrix(inst, "B");
    const HermitianMatrix S = power_mean_map(phi, A, p) + power_mean_map(phi, B, p);
    const HermitianMatrix T = power_mean_map(phi, A + B, p);
    double lo = 0, hi = 0;
    std::string form;
    if (p >= 1) {
      lo = std::pow(K, -1.0 / p), hi = std::pow(K, 1.0 / p), form = "MO1";
    } else if (p <= -1 || p >= 0.5) {
      lo = std::pow(K, 1.0 / p), hi = std::pow(K, -1.0 / p), form = "MO2";
    } else {
      lo = std::pow(K, 2.0 / p), hi = std::pow(K, -2.0 / p), form = "MO3";
    }
    Outcome out;
    out.terms.push_back(loewner_term(form + " lower", S * lo, T));
    out.terms.push_back(loewner_term(form + " upper", T, S * hi));
    out.details = {{"K", K}, {"form", form}, {"lower_factor", lo}, {"upper_factor", hi}};
    return out;
  };
  return run_probe(probe, config);
}

// Determinant bounds.

InequalityReport check_determinant_bounds(const std::string& map_kind, const ProbeConfig& config, std::optional<double> p) {
  if (p && *p < 1.0) throw std::invalid_argument("the power form of the determinant bound needs p >= 1");
  Probe probe;
  probe.id = std::string(p ? "det-MOVD[" : "det-OVD[") + map_kind + (p ? ",p=" + scalar::format_number(*p) : "") + "]";
  probe.generate = [map_kind, p](Rng& rng, const ProbeConfig& c, int) {
    json inst = empty_instance();
    const Index n = sample_dim(rng, c.dim_min, c.dim_max);
    const PositiveLinearMap phi = sample_map(map_kind, rng, n);
    phi.require_unital();
    const Index in = phi.input_dim_for_output(n);
    inst["params"]["phi"] = phi.to_json();
    if (p) inst["params"]["p"] = *p;
    store_window(inst["params"], c.window);
    inst["inputs"]["A"] = matrix_to_json(sample_pd(rng, in, c.window));
    inst["inputs"]["B"] = matrix_to_json(sample_pd(rng, in, c.window));
    return inst;
  };
  probe.evaluate = [](const json& inst) {
    const json& params = inst.at("params");
    const PositiveLinearMap phi = PositiveLinearMap::from_json(params.at("phi"));
    const double h = spectral_h(params);
    const HermitianMatrix A = input_matrix(inst, "A");
    const HermitianMatrix B = input_matrix(inst, "B");
    const HermitianMatrix dA = op_determinant(phi, A);
    const HermitianMatrix dB = op_determinant(phi, B);
    const HermitianMatrix dAB = op_determinant(phi, A + B);
    Outcome out;
    if (!params.contains("p")) {
      const double s2 = std::pow(specht(h), 2.0);
      out.terms.push_back(loewner_term("S(h)^-2 [D(A)+D(B)] <= D(A+B)", (dA + dB) / s2, dAB));
      out.terms.push_back(loewner_term("D(A+B) <= S(h)^2 [D(A)+D(B)]", dAB, (dA + dB) * s2));
      out.details = {{"S(h)", std::sqrt(s2)}};
      return out;
    }
    const double p = params.at("p").get<double>();
    const double q = 1.0 / p;
    const double c = std::pow(2.0, 1.0 - q);
    const double s3 = std::pow(specht(std::pow(h, q)), 3.0);
    const double K = kantorovich(h, q);
    const HermitianMatrix sum = powm(dA, q) + powm(dB, q);
    const HermitianMatrix whole = powm(dAB, q);
    out.terms.push_back(loewner_term("lower", whole * (c * K / s3), sum));
    out.terms.push_back(loewner_term("upper", sum, whole * (c * s3)));
    out.details = {{"S(h^(1/p))^3", s3}, {"K(h,1/p)", K}};
    return out;
  };
  return run_probe(probe, config);
}

// Counterexamples.

std::vector<HermitianMatrix> sqrt_geo_inputs() {
  return {real_matrix({{2, 1}, {1, 2}}), real_matrix({{1, 0}, {0, 2}}), real_matrix({{4, -2}, {-2, 3}}),
          real_matrix({{1, -1}, {-1, 3}})};
}

std::vector<HermitianMatrix> minkowski_inputs() {
  return {real_matrix({{3, -1, 0}, {-1, 1, 0}, {0, 0, 1}}), real_matrix({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}}),
          real_matrix({{1, 0, 0}, {0, 1, -1}, {0, -1, 1}}), real_matrix({{1, 0, 0}, {0, 1, 1}, {0, 1, 2}})};
}

namespace {

HermitianMatrix sqrt_geo_F(const OperatorMean& sigma, const HermitianMatrix& A, const HermitianMatrix& B) {
  return sqrtm(sigma(powm(A, 2.0), powm(B, 2.0)));
}

HermitianMatrix minkowski_difference(const std::vector<HermitianMatrix>& in, double p) {
  const auto pm = [p](const HermitianMatrix& X, const HermitianMatrix& Y) {
    return powm(powm(X, p) + powm(Y, p), 1.0 / p);
  };
  return pm(in[0], in[1]) + pm(in[2], in[3]) - pm(in[0] + in[2], in[1] + in[3]);
}

json instance_of(const std::vector<HermitianMatrix>& in) {
  json inst = empty_instance();
  const char* names[] = {"A1", "A2", "B1", "B2"};
  for (std::size_t i = 0; i < in.size(); ++i) inst["inputs"][names[i]] = matrix_to_json(in[i]);
  return inst;
}

std::vector<HermitianMatrix> quadruple(const json& inst) {
  return {input_matrix(inst, "A1"), input_matrix(inst, "A2"), input_matrix(inst, "B1"), input_matrix(inst, "B2")};
}

}  // namespace

CounterexampleResult sqrt_geo_counterexample(const OperatorMean& sigma) {
  const auto in = sqrt_geo_inputs();
  const HermitianMatrix lhs = sqrt_geo_F(sigma, (in[0] + in[1]) / 2.0, (in[2] + in[3]) / 2.0);
  const HermitianMatrix rhs = (sqrt_geo_F(sigma, in[0], in[2]) + sqrt_geo_F(sigma, in[1], in[3])) / 2.0;
  return {lhs, rhs, loewner_leq(lhs, rhs)};
}

HermitianMatrix minkowski_counterexample_difference(double p) { return minkowski_difference(minkowski_inputs(), p); }

InequalityReport reproduce_counterexample_sqrt_geo() {
  Probe probe = fixed_probe("counterexample-sqrt-geo", instance_of(sqrt_geo_inputs()), [](const json& inst) {
    const auto in = quadruple(inst);
    const OperatorMean geo = OperatorMean::geometric();
    const HermitianMatrix lhs = sqrt_geo_F(geo, (in[0] + in[1]) / 2.0, (in[2] + in[3]) / 2.0);
    const HermitianMatrix rhs = (sqrt_geo_F(geo, in[0], in[2]) + sqrt_geo_F(geo, in[1], in[3])) / 2.0;
    Outcome out;
    out.terms.push_back(loewner_term("F(midpoint) <= average of F", lhs, rhs));
    return out;
  });
  probe.expect_violation = true;
  ProbeConfig config;
  InequalityReport report = run_probe(probe, config);

  const CounterexampleResult r = sqrt_geo_counterexample();
  report.details["lhs"] = matrix_to_json(r.lhs);
  report.details["rhs"] = matrix_to_json(r.rhs);
  report.details["loewner_leq"] = r.verdict.holds;
  report.details["margin"] = r.verdict.margin;
  golden_matrix(report, "lhs", r.lhs, {{1.7915, -0.3082}, {-0.3082, 2.1739}}, 5e-4);
  golden_matrix(report, "rhs", r.rhs, {{1.6622, -0.3026}, {-0.3026, 2.1916}}, 5e-4);
  if (r.verdict.holds) report.failed_requirements.push_back("Loewner comparison of LHS and RHS returned true");
  return report;
}

InequalityReport reproduce_counterexample_minkowski() {
  Probe probe = fixed_probe("counterexample-minkowski", instance_of(minkowski_inputs()), [](const json& inst) {
    const HermitianMatrix D = minkowski_difference(quadruple(inst), 2.0);
    Outcome out;
    out.terms.push_back(loewner_term("difference >= 0", HermitianMatrix::zero(D.dim()), D));
    return out;
  });
  probe.expect_violation = true;
  ProbeConfig config;
  InequalityReport report = run_probe(probe, config);

  const HermitianMatrix D = minkowski_counterexample_difference(2.0);
  report.details["difference"] = matrix_to_json(D);
  golden_matrix(report, "difference", D,
                {{0.180869, -0.119435, -0.238421}, {-0.119435, 0.501802, 0.0713442}, {-0.238421, 0.0713442, 0.188193}},
                5e-6);
  const RealVector ev = eigenvalues(D);
  const std::vector<double> printed{-0.0562778, 0.32367, 0.603875};
  json eig = json::array();
  for (std::size_t i = 0; i < printed.size(); ++i) {
    const double got = ev(static_cast<Index>(i));
    const bool ok = std::abs(got - printed[i]) <= 1e-5;
    eig.push_back({{"computed", got}, {"expected", printed[i]}, {"ok", ok}});
    if (!ok) report.failed_requirements.push_back(describe_mismatch("eigenvalue " + std::to_string(i), got, printed[i], 1e-5));
  }
  report.details["eigenvalues_golden"] = {{"within", 1e-5}, {"entries", eig}};
  if (!(ev(0) < 0)) report.failed_requirements.push_back("smallest eigenvalue of the difference is not negative");
  return report;
}

}  // namespace opineq
