#include "opineq/registry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "opineq/constants.hpp"
#include "opineq/functionals.hpp"

namespace opineq {
namespace {

using Gen = std::function<json(Rng&, const ProbeConfig&, int)>;
using Eval = std::function<Outcome(const json&)>;

Probe make_probe(std::string id, Gen generate, Eval evaluate) {
  Probe p;
  p.id = std::move(id);
  p.generate = std::move(generate);
  p.evaluate = std::move(evaluate);
  return p;
}

json empty_instance() { return {{"inputs", json::object()}, {"params", json::object()}}; }

std::string label(const std::string& base, const std::string& detail) { return base + "[" + detail + "]"; }
std::string num(double x) { return scalar::format_number(x); }

std::vector<double> p_grid(const CheckParams& cp, std::vector<double> grid) {
  if (cp.p) return {*cp.p};
  return grid;
}

std::vector<std::string> map_list(const CheckParams& cp, std::vector<std::string> maps) {
  if (cp.map) return {*cp.map};
  return maps;
}

std::vector<std::string> mean_kinds(const CheckParams& cp) {
  if (cp.mean) return {*cp.mean};
  return {"arith", "geo", "harm", "path"};
}

Index draw_dim(Rng& rng, const ProbeConfig& c) { return sample_dim(rng, c.dim_min, c.dim_max); }

// Dimension range clipped to `cap` (tensor products grow as n^k).
Index draw_dim_capped(Rng& rng, const ProbeConfig& c, int cap) {
  const int hi = std::min(c.dim_max, cap);
  const int lo = std::min(c.dim_min, hi);
  return sample_dim(rng, lo, hi);
}

void put(json& inst, const std::string& name, const HermitianMatrix& A) { inst["inputs"][name] = matrix_to_json(A); }

void draw_mean_params(json& params, Rng& rng, const CheckParams& cp) {
  params["t"] = cp.t ? *cp.t : sample_uniform(rng, 0.0, 1.0);
  params["r"] = sample_uniform(rng, -1.0, 1.0);
}

OperatorMean mean_of(const std::string& kind, const json& inst) {
  return mean_by_kind(kind, param(inst, "t"), param(inst, "r"));
}

double window_h(const json& inst) { return param(inst, "M") / param(inst, "m"); }

void store_window(json& params, const SpectralWindow& w) {
  params["m"] = w.m;
  params["M"] = w.M;
}

ScalarFunction x_over_1px() {
  return scalar::custom("t/(1+t)", [](double x) { return x / (1.0 + x); }, Interval::nonnegative());
}

ScalarFunction log1p_fn() {
  return scalar::custom("log(1+t)", [](double x) { return std::log1p(x); }, Interval::nonnegative());
}

// Largest factor by which a spectrum in the window (or its inverse) leaves 1.
double window_radius(const json& params) {
  return std::max({params.at("M").get<double>(), 1.0 / params.at("m").get<double>(), 1.0});
}

HermitianMatrix power_sum_root(const std::vector<HermitianMatrix>& xs, double p) {
  HermitianMatrix sum = HermitianMatrix::zero(xs.front().dim());
  for (const auto& x : xs) sum = sum + powm(x, p);
  return powm(sum, 1.0 / p);
}

MultilinearMap multilinear_by_kind(const std::string& kind, int k, Index n) {
  if (kind == "tensor") return MultilinearMap::tensor(k);
  if (kind == "pinched-tensor") return MultilinearMap::pinched_tensor(k);
  if (kind == "hadamard") return MultilinearMap::hadamard(k, n);
  throw std::invalid_argument("unknown multilinear map '" + kind + "'");
}

int tensor_cap(int k) { return k == 2 ? 4 : 3; }

// ---------------------------------------------------------------- means

InequalityReport mean_monotonicity(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (const std::string& kind : mean_kinds(cp)) {
    parts.push_back(run_probe(
        make_probe(
            label("mean-monotonicity", kind),
            [cp](Rng& rng, const ProbeConfig& c, int) {
              json inst = empty_instance();
              const Index n = draw_dim(rng, c);
              draw_mean_params(inst["params"], rng, cp);
              put(inst, "A", sample_pd(rng, n, c.window));
              put(inst, "B", sample_pd(rng, n, c.window));
              put(inst, "P", sample_psd(rng, n, sample_dim(rng, 1, static_cast<int>(n))));
              put(inst, "Q", sample_psd(rng, n, sample_dim(rng, 1, static_cast<int>(n))));
              return inst;
            },
            [kind](const json& inst) {
              const OperatorMean s = mean_of(kind, inst);
              const HermitianMatrix A = input_matrix(inst, "A"), B = input_matrix(inst, "B");
              const HermitianMatrix C = A + input_matrix(inst, "P"), D = B + input_matrix(inst, "Q");
              Outcome out;
              out.terms.push_back(loewner_term("A s B <= (A+P) s (B+Q)", s(A, B), s(C, D)));
              return out;
            }),
        config));
  }
  return combine("mean-monotonicity", parts, config);
}

InequalityReport mean_transformer(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (const std::string& kind : mean_kinds(cp)) {
    parts.push_back(run_probe(
        make_probe(
            label("mean-transformer", kind),
            [cp](Rng& rng, const ProbeConfig& c, int) {
              json inst = empty_instance();
              const Index n = draw_dim(rng, c);
              draw_mean_params(inst["params"], rng, cp);
              put(inst, "A", sample_pd(rng, n, c.window));
              put(inst, "B", sample_pd(rng, n, c.window));
              inst["params"]["X"] = matrix_to_json(sample_invertible(rng, n));
              return inst;
            },
            [kind](const json& inst) {
              const OperatorMean s = mean_of(kind, inst);
              const HermitianMatrix A = input_matrix(inst, "A"), B = input_matrix(inst, "B");
              const ComplexMatrix X = complex_matrix_from_json(inst.at("params").at("X"));
              const HermitianMatrix lhs = congruence(X, s(A, B));
              const HermitianMatrix rhs = s(congruence(X, A), congruence(X, B));
              Outcome out;
              const double scale = operator_norm(rhs);
              out.terms.push_back(equality_term("X*(A s B)X = (X*AX) s (X*BX)", operator_norm(lhs - rhs) / scale, 0.0, 1e-8));
              return out;
            }),
        config));
  }
  return combine("mean-transformer", parts, config);
}

InequalityReport mean_positive_map(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (const std::string& map : map_list(cp, {"avg:2", "pinch", "schur", "congr"}))
    for (const std::string& kind : mean_kinds(cp)) parts.push_back(check_mean_monotonicity(map, kind, config, cp.t));
  return combine("mean-positive-map", parts, config);
}

InequalityReport mean_harmonic_interchange(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (const std::string& kind : mean_kinds(cp)) {
    parts.push_back(run_probe(
        make_probe(
            label("mean-harmonic-interchange", kind),
            [cp](Rng& rng, const ProbeConfig& c, int) {
              json inst = empty_instance();
              const Index n = draw_dim(rng, c);
              draw_mean_params(inst["params"], rng, cp);
              for (const char* name : {"X", "Y", "Z", "W"}) put(inst, name, sample_pd(rng, n, c.window));
              return inst;
            },
            [kind](const json& inst) {
              const OperatorMean s = mean_of(kind, inst);
              const HermitianMatrix X = input_matrix(inst, "X"), Y = input_matrix(inst, "Y");
              const HermitianMatrix Z = input_matrix(inst, "Z"), W = input_matrix(inst, "W");
              const auto harm = [](const HermitianMatrix& a, const HermitianMatrix& b) { return weighted_harmonic(a, b); };
              Outcome out;
              out.terms.push_back(loewner_term("[X!Y] s [Z!W] <= [X s Z]![Y s W]", s(harm(X, Y), harm(Z, W)),
                                               harm(s(X, Z), s(Y, W))));
              return out;
            }),
        config));
  }
  return combine("mean-harmonic-interchange", parts, config);
}

const std::vector<double> kPathR{-1.0, -0.5, -1e-5, 1e-5, 0.5, 1.0};

std::vector<double> t_grid(const CheckParams& cp) {
  if (cp.t) return {*cp.t};
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

Gen pair_generator() {
  return [](Rng& rng, const ProbeConfig& c, int) {
    json inst = empty_instance();
    const Index n = draw_dim(rng, c);
    put(inst, "A", sample_pd(rng, n, c.window));
    put(inst, "B", sample_pd(rng, n, c.window));
    return inst;
  };
}

InequalityReport path_sandwich(const ProbeConfig& config, const CheckParams& cp) {
  const std::vector<double> ts = t_grid(cp);
  return run_probe(make_probe("path-sandwich", pair_generator(),
                              [ts](const json& inst) {
                                const HermitianMatrix A = input_matrix(inst, "A"), B = input_matrix(inst, "B");
                                Outcome out;
                                for (double t : ts) {
                                  const HermitianMatrix lo = weighted_harmonic(A, B, t);
                                  const HermitianMatrix hi = weighted_arithmetic(A, B, t);
                                  for (double r : kPathR) {
                                    const HermitianMatrix m = interpolational_path(A, B, {r, t});
                                    const std::string at = "r=" + num(r) + ",t=" + num(t);
                                    out.terms.push_back(loewner_term("harmonic <= path " + at, lo, m));
                                    out.terms.push_back(loewner_term("path <= arithmetic " + at, m, hi));
                                  }
                                }
                                return out;
                              }),
                   config);
}

InequalityReport path_monotonicity(const ProbeConfig& config, const CheckParams& cp) {
  const std::vector<double> ts = t_grid(cp);
  return run_probe(make_probe("path-monotonicity", pair_generator(),
                              [ts](const json& inst) {
                                const HermitianMatrix A = input_matrix(inst, "A"), B = input_matrix(inst, "B");
                                Outcome out;
                                for (double t : ts) {
                                  HermitianMatrix prev = interpolational_path(A, B, {kPathR.front(), t});
                                  for (std::size_t i = 1; i < kPathR.size(); ++i) {
                                    HermitianMatrix next = interpolational_path(A, B, {kPathR[i], t});
                                    out.terms.push_back(loewner_term(
                                        "m_{" + num(kPathR[i - 1]) + "," + num(t) + "} <= m_{" + num(kPathR[i]) + "," + num(t) + "}",
                                        prev, next));
                                    prev = std::move(next);
                                  }
                                }
                                return out;
                              }),
                   config);
}

// ------------------------------------------------------ log-convexity lemmas

Gen weighted_pair_generator(const CheckParams& cp) {
  return [cp](Rng& rng, const ProbeConfig& c, int) {
    json inst = empty_instance();
    const Index n = draw_dim(rng, c);
    inst["params"]["t"] = cp.t ? *cp.t : sample_uniform(rng, 0.0, 1.0);
    put(inst, "A", sample_pd(rng, n, c.window));
    put(inst, "B", sample_pd(rng, n, c.window));
    return inst;
  };
}

InequalityReport log_convex_decreasing(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (double p : p_grid(cp, {0.3, 0.7, 1.0})) {
    parts.push_back(run_probe(
        make_probe(label("log-convex-decreasing", "p=" + num(p)), weighted_pair_generator(cp),
                   [p](const json& inst) {
                     const double t = param(inst, "t");
                     const HermitianMatrix A = input_matrix(inst, "A"), B = input_matrix(inst, "B");
                     Outcome out;
                     out.terms.push_back(loewner_term("f(A v_t B) <= f(A) #_t f(B)", powm(weighted_arithmetic(A, B, t), -p),
                                                      weighted_geometric(powm(A, -p), powm(B, -p), t)));
                     return out;
                   }),
        config));
  }
  return combine("log-convex-decreasing", parts, config);
}

InequalityReport log_convex_paths(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  const std::vector<double> ts = cp.t ? std::vector<double>{*cp.t} : std::vector<double>{0.25, 0.5, 0.75};
  for (double r : {-1.0, -0.5, 0.0, 0.5}) {
    parts.push_back(run_probe(
        make_probe(label("log-convex-paths", "r=" + num(r)), pair_generator(),
                   [r, ts](const json& inst) {
                     const HermitianMatrix A = input_matrix(inst, "A"), B = input_matrix(inst, "B");
                     const HermitianMatrix fA = powm(A, -0.5), fB = powm(B, -0.5);
                     Outcome out;
                     for (double t : ts) {
                       const HermitianMatrix lhs = powm(weighted_arithmetic(A, B, t), -0.5);
                       out.terms.push_back(loewner_term("f(A v_t B) <= f(A) m_{r,t} f(B) t=" + num(t), lhs,
                                                        interpolational_path(fA, fB, {r, t})));
                       out.terms.push_back(
                           loewner_term("f(A v_t B) <= f(A) #_t f(B) t=" + num(t), lhs, weighted_geometric(fA, fB, t)));
                     }
                     return out;
                   }),
        config));
  }
  return combine("log-convex-paths", parts, config);
}

InequalityReport log_concave_monotone(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (double p : p_grid(cp, {0.3, 0.7, 1.0})) {
    parts.push_back(run_probe(
        make_probe(label("log-concave-monotone", "p=" + num(p)), weighted_pair_generator(cp),
                   [p](const json& inst) {
                     const double t = param(inst, "t");
                     const HermitianMatrix A = input_matrix(inst, "A"), B = input_matrix(inst, "B");
                     Outcome out;
                     out.terms.push_back(loewner_term("f(A) #_t f(B) <= f(A v_t B)",
                                                      weighted_geometric(powm(A, p), powm(B, p), t),
                                                      powm(weighted_arithmetic(A, B, t), p)));
                     return out;
                   }),
        config));
  }
  return combine("log-concave-monotone", parts, config);
}

InequalityReport harmonic_monotone(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (const ScalarFunction& h : {scalar::sqrt(), log1p_fn(), x_over_1px()}) {
    parts.push_back(run_probe(
        make_probe(label("harmonic-monotone", h.name), weighted_pair_generator(cp),
                   [h](const json& inst) {
                     const double t = param(inst, "t");
                     const HermitianMatrix A = input_matrix(inst, "A"), B = input_matrix(inst, "B");
                     Outcome out;
                     out.terms.push_back(loewner_term("h(A !_t B) <= h(A) !_t h(B)",
                                                      apply_function(weighted_harmonic(A, B, t), h),
                                                      weighted_harmonic(apply_function(A, h), apply_function(B, h), t)));
                     return out;
                   }),
        config));
  }
  return combine("harmonic-monotone", parts, config);
}

// ------------------------------------------------- operator F1, F2, F3 forms

struct SpecCombo {
  ScalarFunction f, g, h;
  std::string sigma;
  std::string phi, psi;
};

std::string combo_label(const SpecCombo& c) {
  return "f=" + c.f.name + ",g=" + c.g.name + ",h=" + c.h.name + ",sigma=" + c.sigma + ",Phi=" + c.phi + ",Psi=" + c.psi;
}

FunctionalSpec spec_from(const SpecCombo& combo, const json& params) {
  FunctionalSpec s;
  s.f = combo.f;
  s.g = combo.g;
  s.h = combo.h;
  s.sigma = OperatorMean::parse(combo.sigma);
  s.phi = PositiveLinearMap::from_json(params.at("phi"));
  s.psi = PositiveLinearMap::from_json(params.at("psi"));
  return s;
}

// Draws Phi and Psi onto a common output dimension; returns the slot dims.
SlotPrepare two_map_prepare(const SpecCombo& combo) {
  return [combo](Rng& rng, const ProbeConfig& c, json& params) {
    const Index n = draw_dim(rng, c);
    const PositiveLinearMap phi = sample_map(combo.phi, rng, n);
    const PositiveLinearMap psi = sample_map(combo.psi, rng, n);
    params["phi"] = phi.to_json();
    params["psi"] = psi.to_json();
    return std::vector<Index>{phi.input_dim_for_output(n), psi.input_dim_for_output(n)};
  };
}

InequalityReport F2_log(const ProbeConfig& config, bool convex_side) {
  std::vector<SpecCombo> combos;
  if (convex_side) {
    combos = {{scalar::power(-1), scalar::power(-1), scalar::sqrt(), "geo:0.5", "avg:2", "avg:2"},
              {scalar::power(-0.5), scalar::power(-1), scalar::power(0.3), "arith:0.5", "pinch", "schur"},
              {scalar::power(-0.7), scalar::power(-0.3), x_over_1px(), "harm:0.5", "congr", "id"}};
  } else {
    combos = {{scalar::power(0.5), scalar::power(0.5), scalar::sqrt(), "geo:0.5", "avg:2", "avg:2"},
              {scalar::power(0.3), scalar::id(), scalar::power(0.7), "arith:0.5", "pinch", "schur"},
              {log1p_fn(), scalar::power(0.8), x_over_1px(), "harm:0.5", "congr", "id"}};
  }
  const std::string id = convex_side ? "F2-log-convex" : "F2-log-concave";
  std::vector<InequalityReport> parts;
  for (const SpecCombo& combo : combos) {
    parts.push_back(check_joint_convexity(
        label(id, combo_label(combo)), convex_side ? ConvexityMode::log_convex : ConvexityMode::log_concave,
        two_map_prepare(combo),
        MatrixFunctional([combo](const json& params, const std::vector<HermitianMatrix>& x) {
          return F2(spec_from(combo, params), x[0], x[1]);
        }),
        config));
  }
  return combine(id, parts, config);
}

InequalityReport F3_log_convex(const ProbeConfig& config, const CheckParams&) {
  const std::vector<SpecCombo> combos = {
      {scalar::power(-0.5), scalar::id(), scalar::sqrt(), "geo:0.5", "avg:2", "id"},
      {scalar::power(-1), scalar::id(), x_over_1px(), "geo:0.5", "congr", "id"},
      {scalar::power(-0.8), scalar::id(), scalar::power(0.4), "geo:0.5", "schur", "id"}};
  std::vector<InequalityReport> parts;
  for (const SpecCombo& combo : combos) {
    parts.push_back(check_joint_convexity(
        label("F3-log-convex", "f=" + combo.f.name + ",h=" + combo.h.name + ",Phi=" + combo.phi), ConvexityMode::log_convex,
        [combo](Rng& rng, const ProbeConfig& c, json& params) {
          const Index n = draw_dim(rng, c);
          const PositiveLinearMap phi = sample_map(combo.phi, rng, n);
          params["phi"] = phi.to_json();
          return std::vector<Index>{phi.input_dim_for_output(n)};
        },
        MatrixFunctional([combo](const json& params, const std::vector<HermitianMatrix>& x) {
          FunctionalSpec s;
          s.f = combo.f;
          s.h = combo.h;
          s.phi = PositiveLinearMap::from_json(params.at("phi"));
          return F3(s, x[0]);
        }),
        config));
  }
  return combine("F3-log-convex", parts, config);
}

InequalityReport F1_log_convex_second(const ProbeConfig& config, const CheckParams&) {
  const std::vector<SpecCombo> combos = {
      {scalar::power(2), scalar::power(-0.5), scalar::sqrt(), "geo:0.5", "pinch", "avg:2"},
      {scalar::exp(), scalar::power(-1), x_over_1px(), "geo:0.5", "congr", "id"}};
  std::vector<InequalityReport> parts;
  for (const SpecCombo& combo : combos) {
    parts.push_back(check_joint_convexity(
        label("F1-log-convex-second", combo_label(combo)), ConvexityMode::log_convex,
        [combo](Rng& rng, const ProbeConfig& c, json& params) {
          const Index n = draw_dim(rng, c);
          const PositiveLinearMap phi = sample_map(combo.phi, rng, n);
          const PositiveLinearMap psi = sample_map(combo.psi, rng, n);
          params["phi"] = phi.to_json();
          params["psi"] = psi.to_json();
          params["A"] = matrix_to_json(sample_pd(rng, phi.input_dim_for_output(n), c.window));
          return std::vector<Index>{psi.input_dim_for_output(n)};
        },
        MatrixFunctional([combo](const json& params, const std::vector<HermitianMatrix>& x) {
          return F1(spec_from(combo, params), hermitian_from_json(params.at("A")), x[0]);
        }),
        config));
  }
  return combine("F1-log-convex-second", parts, config);
}

// ------------------------------------------------------------ trace forms

struct TraceCase {
  std::string name;
  ConvexityMode mode;
  bool decreasing_f;  // f, g = t^{-p}, t^{-q} (log-convex) instead of t^p, t^q (log-concave)
  std::string h;
};

ScalarFunction trace_case_h(const std::string& h, const json& params) {
  if (h == "cap") {
    const double C = params.at("C_cap").get<double>();
    return scalar::custom("C-x^2", [C](double x) { return C - x * x; }, Interval{0.0, std::sqrt(C), true, true});
  }
  if (h == "ratio") {
    const double C = params.at("C_ratio").get<double>();
    return scalar::custom("y/(Cy-1)", [C](double y) { return y / (C * y - 1.0); }, Interval::greater_than(1.0 / C));
  }
  return scalar::parse(h);
}

InequalityReport trace_F2_cases(const ProbeConfig& config, const CheckParams& cp) {
  const std::vector<TraceCase> cases = {
      {"log-convex f, h=x^0.5, log-convex", ConvexityMode::log_convex, true, "power:0.5"},
      {"log-convex f, h=x^2, convex", ConvexityMode::convex, true, "power:2"},
      {"log-convex f, h=exp, convex", ConvexityMode::convex, true, "exp"},
      {"log-convex f, h=C-x^2, concave", ConvexityMode::concave, true, "cap"},
      {"log-concave f, h=x^0.5, concave", ConvexityMode::concave, false, "power:0.5"},
      {"log-concave f, h=log, concave", ConvexityMode::concave, false, "log"},
      {"log-concave f, h=x^-1, convex", ConvexityMode::convex, false, "power:-1"},
      {"log-concave f, h=y/(Cy-1), log-convex", ConvexityMode::log_convex, false, "ratio"}};
  std::vector<InequalityReport> parts;
  json harmonic = json::object();
  for (const TraceCase& tc : cases) {
    SlotPrepare prepare = [cp](Rng& rng, const ProbeConfig& c, json& params) {
      const Index n = draw_dim(rng, c);
      params["p"] = sample_uniform(rng, 0.1, 1.0);
      params["q"] = sample_uniform(rng, 0.1, 1.0);
      static const char* kinds[] = {"arith", "geo", "harm"};
      const std::string kind = cp.mean ? *cp.mean : kinds[sample_dim(rng, 0, 2)];
      params["sigma"] = mean_by_kind(kind, cp.t ? *cp.t : sample_uniform(rng, 0.0, 1.0)).id();
      store_window(params, c.window);
      const double R = window_radius(params);
      params["C_cap"] = R * R + 1.0;
      params["C_ratio"] = 2.0 * R;
      return std::vector<Index>{2 * n, n};
    };
    ScalarFunctional F = [tc](const json& params, const std::vector<HermitianMatrix>& x) {
      const double sign = tc.decreasing_f ? -1.0 : 1.0;
      FunctionalSpec s;
      s.f = scalar::power(sign * params.at("p").get<double>());
      s.g = scalar::power(sign * params.at("q").get<double>());
      s.h = trace_case_h(tc.h, params);
      s.sigma = OperatorMean::parse(params.at("sigma").get<std::string>());
      s.phi = PositiveLinearMap::averaging(2);
      s.psi = PositiveLinearMap::pinching();
      return trace_F2(s, x[0], x[1]);
    };
    InequalityReport r = check_joint_convexity(label("trace-F2-cases", tc.name), tc.mode, prepare, F, config);
    if (r.details.contains("harmonic_form")) harmonic[tc.name] = r.details["harmonic_form"];
    parts.push_back(std::move(r));
  }
  InequalityReport report = combine("trace-F2-cases", parts, config);
  report.details["harmonic_form"] = harmonic;
  return report;
}

InequalityReport trace_power_mean_convex(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (const std::string& map : map_list(cp, {"avg:2", "pinch"}))
    for (double p : p_grid(cp, {-1.0, -0.5, 0.5, 1.0})) {
      parts.push_back(check_joint_convexity(
          label("trace-power-mean-convex", map + ",p=" + num(p)), ConvexityMode::convex,
          [map](Rng& rng, const ProbeConfig& c, json& params) {
            const Index n = draw_dim(rng, c);
            const PositiveLinearMap phi = sample_map(map, rng, n);
            params["phi"] = phi.to_json();
            return std::vector<Index>{phi.input_dim_for_output(n)};
          },
          ScalarFunctional([p](const json& params, const std::vector<HermitianMatrix>& x) {
            const PositiveLinearMap phi = PositiveLinearMap::from_json(params.at("phi"));
            return powm(phi(powm(x[0], p)), -1.0 / p).trace();
          }),
          config));
    }
  return combine("trace-power-mean-convex", parts, config);
}

struct LiebCombo {
  std::string phi, psi;
  ScalarFunction f1, f2;
  bool random_K;
};

InequalityReport lieb_suite(const std::string& id, const std::vector<LiebCombo>& combos, LiebForm form,
                            const std::vector<double>& fixed_p, const ProbeConfig& config) {
  std::vector<InequalityReport> parts;
  for (const LiebCombo& combo : combos) {
    const std::vector<std::optional<double>> ps =
        fixed_p.empty() ? std::vector<std::optional<double>>{std::nullopt}
                        : std::vector<std::optional<double>>(fixed_p.begin(), fixed_p.end());
    for (const std::optional<double>& fp : ps) {
      const std::string name = "Phi=" + combo.phi + ",Psi=" + combo.psi + ",f1=" + combo.f1.name + ",f2=" + combo.f2.name +
                               (combo.random_K ? ",K random" : ",K=I") + (fp ? ",p=" + num(*fp) : ",p random");
      parts.push_back(check_joint_convexity(
          label(id, name), form == LiebForm::concave ? ConvexityMode::concave : ConvexityMode::convex,
          [combo, fp, form](Rng& rng, const ProbeConfig& c, json& params) {
            const Index n = draw_dim(rng, c);
            const PositiveLinearMap phi = sample_map(combo.phi, rng, n);
            const PositiveLinearMap psi = sample_map(combo.psi, rng, n);
            params["phi"] = phi.to_json();
            params["psi"] = psi.to_json();
            params["p"] = fp ? *fp : (form == LiebForm::concave ? sample_uniform(rng, 0.0, 1.0) : sample_uniform(rng, -1.0, 0.0));
            const ComplexMatrix K = combo.random_K ? ComplexMatrix(sample_gaussian(rng, n, n)) : ComplexMatrix::Identity(n, n);
            params["K"] = matrix_to_json(K);
            return std::vector<Index>{phi.input_dim_for_output(n), psi.input_dim_for_output(n)};
          },
          ScalarFunctional([combo, form](const json& params, const std::vector<HermitianMatrix>& x) {
            return lieb_trace(PositiveLinearMap::from_json(params.at("phi")), PositiveLinearMap::from_json(params.at("psi")),
                              combo.f1, combo.f2, complex_matrix_from_json(params.at("K")), params.at("p").get<double>(), x[0],
                              x[1], form);
          }),
          config));
    }
  }
  return combine(id, parts, config);
}

const std::vector<LiebCombo>& lieb_map_combos() {
  static const std::vector<LiebCombo> combos = {{"avg:2", "schur", scalar::sqrt(), log1p_fn(), true},
                                                {"pinch", "id", x_over_1px(), scalar::power(0.7), true},
                                                {"ucongr", "avg:2", scalar::id(), scalar::power(0.4), true}};
  return combos;
}

InequalityReport lieb_map_concave(const ProbeConfig& config, const CheckParams& cp) {
  return lieb_suite("lieb-map-concave", lieb_map_combos(), LiebForm::concave,
                    cp.p ? std::vector<double>{*cp.p} : std::vector<double>{}, config);
}

InequalityReport lieb_map_convex(const ProbeConfig& config, const CheckParams& cp) {
  return lieb_suite("lieb-map-convex", lieb_map_combos(), LiebForm::convex,
                    cp.p ? std::vector<double>{*cp.p} : std::vector<double>{}, config);
}

InequalityReport lieb_concavity(const ProbeConfig& config, const CheckParams& cp) {
  const std::vector<LiebCombo> combos = {{"id", "id", scalar::id(), scalar::id(), false},
                                         {"id", "id", scalar::id(), scalar::id(), true}};
  return lieb_suite("lieb-concavity", combos, LiebForm::concave, p_grid(cp, {0.25, 0.5, 0.75}), config);
}

// ------------------------------------------------------------- multilinear

SlotPrepare multilinear_prepare(int k) {
  return [k](Rng& rng, const ProbeConfig& c, json& params) {
    const Index n = draw_dim_capped(rng, c, tensor_cap(k));
    for (int i = 0; i < k; ++i) params["p" + std::to_string(i)] = sample_uniform(rng, 0.1, 1.0);
    return std::vector<Index>(static_cast<std::size_t>(k), n);
  };
}

HermitianMatrix multilinear_value(const std::string& kind, const json& params, const std::vector<HermitianMatrix>& x) {
  const int k = static_cast<int>(x.size());
  std::vector<HermitianMatrix> fx;
  for (int i = 0; i < k; ++i) fx.push_back(powm(x[static_cast<std::size_t>(i)], -params.at("p" + std::to_string(i)).get<double>()));
  return multi_apply(multilinear_by_kind(kind, k, x.front().dim()), fx);
}

InequalityReport multilinear_suite(const std::string& id, const ProbeConfig& config, const CheckParams& cp, int part) {
  std::vector<InequalityReport> parts;
  for (int k : {2, 3})
    for (const std::string& kind : map_list(cp, {"tensor", "pinched-tensor", "hadamard"})) {
      const std::string at = kind + ",k=" + std::to_string(k);
      if (part == 0) {
        parts.push_back(check_joint_convexity(label(id, at), ConvexityMode::log_convex, multilinear_prepare(k),
                                              MatrixFunctional([kind](const json& params, const std::vector<HermitianMatrix>& x) {
                                                return multilinear_value(kind, params, x);
                                              }),
                                              config));
      } else if (part == 1) {
        parts.push_back(check_joint_convexity(label(id, at), ConvexityMode::log_concave, multilinear_prepare(k),
                                              MatrixFunctional([kind](const json& params, const std::vector<HermitianMatrix>& x) {
                                                return inverse(multilinear_value(kind, params, x));
                                              }),
                                              config));
      } else {
        for (const ScalarFunction& h : {scalar::exp(), scalar::power(2)}) {
          parts.push_back(check_joint_convexity(
              label(id, at + ",h=" + h.name), ConvexityMode::convex, multilinear_prepare(k),
              ScalarFunctional([kind, h](const json& params, const std::vector<HermitianMatrix>& x) {
                return apply_function(multilinear_value(kind, params, x), h).trace();
              }),
              config));
        }
      }
    }
  return combine(id, parts, config);
}

InequalityReport multilinear_mean(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (int k : {2, 3})
    for (const std::string& kind : map_list(cp, {"tensor", "pinched-tensor"})) {
      parts.push_back(run_probe(
          make_probe(label("multilinear-mean", kind + ",k=" + std::to_string(k)),
                     [k](Rng& rng, const ProbeConfig& c, int) {
                       json inst = empty_instance();
                       const Index n = draw_dim_capped(rng, c, tensor_cap(k));
                       for (int i = 0; i < k; ++i) {
                         put(inst, "A" + std::to_string(i), sample_pd(rng, n, c.window));
                         put(inst, "B" + std::to_string(i), sample_pd(rng, n, c.window));
                       }
                       inst["params"]["k"] = k;
                       return inst;
                     },
                     [kind](const json& inst) {
                       const int k = inst.at("params").at("k").get<int>();
                       std::vector<HermitianMatrix> a, b, ab;
                       for (int i = 0; i < k; ++i) {
                         a.push_back(input_matrix(inst, "A" + std::to_string(i)));
                         b.push_back(input_matrix(inst, "B" + std::to_string(i)));
                         ab.push_back(weighted_geometric(a.back(), b.back()));
                       }
                       const MultilinearMap phi = multilinear_by_kind(kind, k, a.front().dim());
                       Outcome out;
                       out.terms.push_back(loewner_term("Phi(A#B) <= Phi(A) # Phi(B)", phi(ab), weighted_geometric(phi(a), phi(b))));
                       return out;
                     }),
          config));
    }
  return combine("multilinear-mean", parts, config);
}

// --------------------------------------------------------------- constants

const std::vector<double> kGridH{1.5, 2.0, 5.0, 20.0};
const std::vector<double> kGridP{-2.0, -1.0, -0.3, 0.2, 0.5, 0.8, 1.5, 3.0};

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(a); }

InequalityReport kantorovich_identities(const ProbeConfig& config, const CheckParams&) {
  Probe probe = make_probe(
      "kantorovich-identities",
      [](Rng&, const ProbeConfig&, int trial) {
        json inst = empty_instance();
        const auto i = static_cast<std::size_t>(trial);
        inst["params"]["h"] = kGridH[i / kGridP.size()];
        inst["params"]["p"] = kGridP[i % kGridP.size()];
        return inst;
      },
      [](const json& inst) {
        const double h = param(inst, "h"), p = param(inst, "p");
        const double K = kantorovich(h, p);
        Outcome out;
        out.terms.push_back(equality_term("K(h,p) = K(1/h,p)", rel_err(K, kantorovich(1.0 / h, p)), 0.0, 1e-12));
        out.terms.push_back(equality_term("K(h,p) = K(h,1-p)", rel_err(K, kantorovich(h, 1.0 - p)), 0.0, 1e-12));
        out.terms.push_back(equality_term("K(h,0) = 1", std::abs(kantorovich(h, 0.0) - 1.0), 0.0, 1e-10));
        out.terms.push_back(equality_term("K(h,1) = 1", std::abs(kantorovich(h, 1.0) - 1.0), 0.0, 1e-10));
        out.terms.push_back(equality_term("K(1,p) = 1", std::abs(kantorovich(1.0, p) - 1.0), 0.0, 1e-10));
        for (double r : {0.3, 0.7, 2.0}) {
          const double lhs = std::pow(kantorovich(std::pow(h, r), p / r), 1.0 / p);
          const double rhs = std::pow(kantorovich(std::pow(h, p), r / p), -1.0 / r);
          out.terms.push_back(equality_term("K(h^r,p/r)^(1/p) = K(h^p,r/p)^(-1/r) r=" + num(r), rel_err(lhs, rhs), 0.0, 1e-10));
        }
        if (p > 0 && p < 1)
          out.terms.push_back(scalar_term("K(h,p) <= 1", K, 1.0));
        else
          out.terms.push_back(scalar_term("K(h,p) >= 1", 1.0, K));
        out.details = {{"K", K}};
        return out;
      });
  probe.fixed_trials = static_cast<int>(kGridH.size() * kGridP.size());
  return run_probe(probe, config);
}

InequalityReport kantorovich_specht_limit_check(const ProbeConfig& config, const CheckParams&) {
  static const std::vector<double> hs{1.5, 2.0, 5.0}, ps{0.5, 1.0, 2.0};
  Probe probe = make_probe(
      "kantorovich-specht-limit",
      [](Rng&, const ProbeConfig&, int trial) {
        json inst = empty_instance();
        inst["params"]["h"] = hs[static_cast<std::size_t>(trial) / ps.size()];
        inst["params"]["p"] = ps[static_cast<std::size_t>(trial) % ps.size()];
        inst["params"]["r"] = 1e-5;
        return inst;
      },
      [](const json& inst) {
        const double h = param(inst, "h"), p = param(inst, "p"), r = param(inst, "r");
        const double lim = kantorovich_specht_limit(h, p, r);
        const double S = specht(std::pow(h, p));
        Outcome out;
        out.terms.push_back(equality_term("K(h^r,p/r) -> S(h^p)", std::abs(lim - S), 0.0, 1e-4));
        out.details = {{"K(h^r,p/r)", lim}, {"S(h^p)", S}};
        return out;
      });
  probe.fixed_trials = static_cast<int>(hs.size() * ps.size());
  return run_probe(probe, config);
}

// ----------------------------------------------------- reverse Jensen etc.

InequalityReport reverse_jensen_suite(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (const std::string& map : map_list(cp, {"avg:2", "pinch", "schur"}))
    for (double p : p_grid(cp, {-2.0, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0, 3.0})) parts.push_back(check_reverse_jensen(map, p, config));
  return combine("reverse-jensen", parts, config);
}

InequalityReport minkowski_sandwich_suite(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (const std::string& map : map_list(cp, {"avg:2", "pinch"}))
    for (double p : p_grid(cp, {-2.0, -1.0, -0.5, 0.25, 0.5, 0.75, 1.0, 2.0, 3.0}))
      parts.push_back(check_minkowski_sandwich(map, p, config));
  return combine("minkowski-sandwich", parts, config);
}

// Instances with n pairs (A_i, B_i) drawn from the window.
Gen pairs_generator(int n_pairs, double p) {
  return [n_pairs, p](Rng& rng, const ProbeConfig& c, int) {
    json inst = empty_instance();
    const Index n = draw_dim(rng, c);
    for (int i = 0; i < n_pairs; ++i) {
      put(inst, "A" + std::to_string(i), sample_pd(rng, n, c.window));
      put(inst, "B" + std::to_string(i), sample_pd(rng, n, c.window));
    }
    inst["params"]["pairs"] = n_pairs;
    inst["params"]["p"] = p;
    store_window(inst["params"], c.window);
    return inst;
  };
}

struct Pairs {
  std::vector<HermitianMatrix> a, b, ab;
};

Pairs read_pairs(const json& inst) {
  Pairs out;
  const int n = inst.at("params").at("pairs").get<int>();
  for (int i = 0; i < n; ++i) {
    out.a.push_back(input_matrix(inst, "A" + std::to_string(i)));
    out.b.push_back(input_matrix(inst, "B" + std::to_string(i)));
    out.ab.push_back(out.a.back() + out.b.back());
  }
  return out;
}

InequalityReport minkowski_sum_sandwich(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (int pairs : {2, 3})
    for (double p : p_grid(cp, {1.0, 1.5, 2.0, 3.0})) {
      if (p < 1) throw std::invalid_argument("the operator-sum sandwich needs p >= 1");
      parts.push_back(run_probe(
          make_probe(label("minkowski-sum-sandwich", "n=" + std::to_string(pairs) + ",p=" + num(p)), pairs_generator(pairs, p),
                     [](const json& inst) {
                       const double p = param(inst, "p");
                       const double K = kantorovich(window_h(inst), p);
                       const Pairs x = read_pairs(inst);
                       const HermitianMatrix S = power_sum_root(x.a, p) + power_sum_root(x.b, p);
                       const HermitianMatrix T = power_sum_root(x.ab, p);
                       Outcome out;
                       out.terms.push_back(loewner_term("K^(-1/p) S <= T", S * std::pow(K, -1.0 / p), T));
                       out.terms.push_back(loewner_term("T <= K^(1/p) S", T, S * std::pow(K, 1.0 / p)));
                       return out;
                     }),
          config));
    }
  return combine("minkowski-sum-sandwich", parts, config);
}

InequalityReport deformed_minkowski_trace(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (const std::string& map : map_list(cp, {"avg:2", "pinch"}))
    for (double p : p_grid(cp, {-1.0, -0.5, 0.5, 1.0})) {
      parts.push_back(run_probe(
          make_probe(label("deformed-minkowski-trace", map + ",p=" + num(p)),
                     [map, p](Rng& rng, const ProbeConfig& c, int) {
                       json inst = empty_instance();
                       const Index n = draw_dim(rng, c);
                       const PositiveLinearMap phi = sample_map(map, rng, n);
                       inst["params"]["phi"] = phi.to_json();
                       inst["params"]["p"] = p;
                       put(inst, "A", sample_pd(rng, phi.input_dim_for_output(n), c.window));
                       put(inst, "B", sample_pd(rng, phi.input_dim_for_output(n), c.window));
                       return inst;
                     },
                     [](const json& inst) {
                       const PositiveLinearMap phi = PositiveLinearMap::from_json(inst.at("params").at("phi"));
                       const double p = param(inst, "p");
                       const auto G = [&](const HermitianMatrix& X) { return powm(phi(powm(X, p)), -1.0 / p).trace(); };
                       const HermitianMatrix A = input_matrix(inst, "A"), B = input_matrix(inst, "B");
                       Outcome out;
                       out.terms.push_back(scalar_term("G(A+B) <= G(A) + G(B)", G(A + B), G(A) + G(B)));
                       return out;
                     }),
          config));
    }
  return combine("deformed-minkowski-trace", parts, config);
}

// ------------------------------------------------------------- determinant

InequalityReport det_properties(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (const std::string& map : map_list(cp, {"avg:2", "pinch", "schur"})) {
    parts.push_back(run_probe(
        make_probe(label("det-properties", map),
                   [map](Rng& rng, const ProbeConfig& c, int) {
                     json inst = empty_instance();
                     const Index n = draw_dim(rng, c);
                     const PositiveLinearMap phi = sample_map(map, rng, n);
                     inst["params"]["phi"] = phi.to_json();
                     put(inst, "A", sample_pd(rng, phi.input_dim_for_output(n), c.window));
                     return inst;
                   },
                   [](const json& inst) {
                     const PositiveLinearMap phi = PositiveLinearMap::from_json(inst.at("params").at("phi"));
                     const HermitianMatrix A = input_matrix(inst, "A");
                     const HermitianMatrix D = op_determinant(phi, A);
                     Outcome out;
                     for (double t : {-1.0, 0.5, 2.0, std::numbers::pi}) {
                       const HermitianMatrix want = powm(D, t);
                       out.terms.push_back(equality_term("D(A^t) = D(A)^t t=" + num(t),
                                                         operator_norm(op_determinant(phi, powm(A, t)) - want),
                                                         operator_norm(want), 1e-9));
                     }
                     for (double t : {0.1, 3.0}) {
                       const HermitianMatrix want = D * t;
                       out.terms.push_back(equality_term("D(tA) = t D(A) t=" + num(t),
                                                         operator_norm(op_determinant(phi, A * t) - want),
                                                         operator_norm(want), 1e-10));
                     }
                     out.terms.push_back(scalar_term("||A^-1||^-1 <= D(A)", lambda_min(A), lambda_min(D)));
                     out.terms.push_back(scalar_term("D(A) <= ||A||", lambda_max(D), operator_norm(A)));
                     return out;
                   }),
        config));
  }
  return combine("det-properties", parts, config);
}

InequalityReport det_additive(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (const std::string& map : map_list(cp, {"avg:2", "pinch", "schur"})) parts.push_back(check_determinant_bounds(map, config));
  return combine("det-additive", parts, config);
}

InequalityReport det_minkowski(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (const std::string& map : map_list(cp, {"avg:2", "pinch", "schur"}))
    for (double p : p_grid(cp, {1.0, 2.0, 3.0})) parts.push_back(check_determinant_bounds(map, config, p));
  return combine("det-minkowski", parts, config);
}

// --------------------------------------------------------- trace Minkowski

// Lower and upper factors of the trace sandwich for exponent p.
std::pair<double, double> trace_factors(double K, double p) {
  if (p >= 1) return {std::pow(K, -1.0 / p), std::pow(K, 1.0 / p)};
  return {std::pow(K, 1.0 / p), std::pow(K, -1.0 / p)};
}

InequalityReport trace_minkowski_sandwich(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (const std::string& map : map_list(cp, {"avg:2", "pinch"}))
    for (double p : p_grid(cp, {-1.0, -0.5, 0.5, 1.0, 2.0, 3.0})) {
      parts.push_back(run_probe(
          make_probe(label("trace-minkowski-sandwich", map + ",p=" + num(p)),
                     [map, p](Rng& rng, const ProbeConfig& c, int) {
                       json inst = empty_instance();
                       const Index n = draw_dim(rng, c);
                       const PositiveLinearMap phi = sample_map(map, rng, n);
                       inst["params"]["phi"] = phi.to_json();
                       inst["params"]["p"] = p;
                       store_window(inst["params"], c.window);
                       put(inst, "A", sample_pd(rng, phi.input_dim_for_output(n), c.window));
                       put(inst, "B", sample_pd(rng, phi.input_dim_for_output(n), c.window));
                       return inst;
                     },
                     [](const json& inst) {
                       const PositiveLinearMap phi = PositiveLinearMap::from_json(inst.at("params").at("phi"));
                       const double p = param(inst, "p");
                       const auto [lo, hi] = trace_factors(kantorovich(window_h(inst), p), p);
                       const HermitianMatrix A = input_matrix(inst, "A"), B = input_matrix(inst, "B");
                       const double S = trace_minkowski_power(phi, A, p) + trace_minkowski_power(phi, B, p);
                       const double T = trace_minkowski_power(phi, A + B, p);
                       Outcome out;
                       out.terms.push_back(scalar_term("lower", lo * S, T));
                       out.terms.push_back(scalar_term("upper", T, hi * S));
                       return out;
                     }),
          config));
    }
  return combine("trace-minkowski-sandwich", parts, config);
}

InequalityReport trace_minkowski_sum_sandwich(const ProbeConfig& config, const CheckParams& cp) {
  std::vector<InequalityReport> parts;
  for (int pairs : {2, 3})
    for (double p : p_grid(cp, {-1.0, -0.5, 0.5, 1.0, 2.0, 3.0})) {
      parts.push_back(run_probe(
          make_probe(label("trace-minkowski-sum-sandwich", "n=" + std::to_string(pairs) + ",p=" + num(p)),
                     pairs_generator(pairs, p),
                     [](const json& inst) {
                       const double p = param(inst, "p");
                       const auto [lo, hi] = trace_factors(kantorovich(window_h(inst), p), p);
                       const Pairs x = read_pairs(inst);
                       const double S = power_sum_root(x.a, p).trace() + power_sum_root(x.b, p).trace();
                       const double T = power_sum_root(x.ab, p).trace();
                       Outcome out;
                       out.terms.push_back(scalar_term("lower", lo * S, T));
                       out.terms.push_back(scalar_term("upper", T, hi * S));
                       return out;
                     }),
          config));
    }
  return combine("trace-minkowski-sum-sandwich", parts, config);
}

InequalityReport carlen_lieb_additive(const ProbeConfig& config, const CheckParams& cp, bool super) {
  const std::string id = super ? "carlen-lieb-superadditive" : "carlen-lieb-subadditive";
  std::vector<InequalityReport> parts;
  for (int pairs : {2, 3})
    for (double p : p_grid(cp, super ? std::vector<double>{0.3, 0.7, 1.0} : std::vector<double>{1.5, 2.0})) {
      parts.push_back(run_probe(make_probe(label(id, "n=" + std::to_string(pairs) + ",p=" + num(p)), pairs_generator(pairs, p),
                                           [super](const json& inst) {
                                             const double p = param(inst, "p");
                                             const Pairs x = read_pairs(inst);
                                             const double S = power_sum_root(x.a, p).trace() + power_sum_root(x.b, p).trace();
                                             const double T = power_sum_root(x.ab, p).trace();
                                             Outcome out;
                                             if (super)
                                               out.terms.push_back(scalar_term("sum of parts <= whole", S, T));
                                             else
                                               out.terms.push_back(scalar_term("whole <= sum of parts", T, S));
                                             return out;
                                           }),
                                config));
    }
  return combine(id, parts, config);
}

// ----------------------------------------------------- expected violations

Probe carlen_lieb_probe(double p, ConvexityMode mode) {
  Probe probe = joint_convexity_probe(
      label(mode == ConvexityMode::convex ? "carlen-lieb-convexity" : "carlen-lieb-concavity", "p=" + num(p)), mode,
      same_dim_slots(2),
      ScalarFunctional([p](const json&, const std::vector<HermitianMatrix>& x) { return power_sum_root(x, p).trace(); }));
  return probe;
}

InequalityReport expect_found(Probe probe, const ProbeConfig& config, const SearchOptions& options = {}) {
  probe.expect_violation = true;
  probe.stop_at_first_violation = true;
  return search_violations(probe, config, options);
}

ProbeConfig with_dim(const ProbeConfig& c, int n) {
  ProbeConfig out = c;
  out.dim_min = out.dim_max = n;
  return out;
}

InequalityReport search_sqrt_geo(const ProbeConfig& config, const CheckParams&) {
  Probe probe = joint_convexity_probe(
      "search-sqrt-geo", ConvexityMode::convex, same_dim_slots(2),
      MatrixFunctional([](const json&, const std::vector<HermitianMatrix>& x) {
        return sqrtm(weighted_geometric(powm(x[0], 2.0), powm(x[1], 2.0)));
      }));
  return expect_found(probe, with_dim(config, 2));
}

InequalityReport search_operator_minkowski(const ProbeConfig& config, const CheckParams& cp) {
  const double p = cp.p ? *cp.p : 2.0;
  Probe probe = make_probe(label("search-operator-minkowski", "p=" + num(p)), pairs_generator(2, p), [](const json& inst) {
    const double p = param(inst, "p");
    const Pairs x = read_pairs(inst);
    Outcome out;
    out.terms.push_back(loewner_term("whole <= sum of parts", power_sum_root(x.ab, p),
                                     power_sum_root(x.a, p) + power_sum_root(x.b, p)));
    return out;
  });
  return expect_found(probe, with_dim(config, 3));
}

// Tr (A^p + B^p)^{1/p} is homogeneous, so the statement has no spectral window;
// the convexity failures are tiny inside 0.5:2 and show up reliably with a
// spread of (m/10, 10M).
ProbeConfig widened(const ProbeConfig& c) {
  ProbeConfig out = c;
  out.window = {c.window.m / 10.0, c.window.M * 10.0};
  return out;
}

InequalityReport carlen_lieb_p3(const ProbeConfig& config, const CheckParams& cp, ConvexityMode mode) {
  return expect_found(carlen_lieb_probe(cp.p ? *cp.p : 3.0, mode), widened(config));
}

InequalityReport carlen_lieb_direction(const ProbeConfig& config, const CheckParams& cp) {
  const double p = cp.p ? *cp.p : 3.0;
  if (p <= 0) throw std::invalid_argument("carlen-lieb-direction needs p > 0");
  const ConvexityMode mode = p <= 1 ? ConvexityMode::concave : ConvexityMode::convex;
  if (p > 2) return expect_found(carlen_lieb_probe(p, mode), widened(config));
  return run_probe(carlen_lieb_probe(p, mode), config);
}

// ----------------------------------------------------------------- table

std::vector<CheckInfo> build() {
  using C = const ProbeConfig&;
  using P = const CheckParams&;
  std::vector<CheckInfo> r;
  const auto add = [&r](std::string id, std::string description, auto fn, bool expect = false) {
    r.push_back({std::move(id), std::move(description), expect, fn});
  };
  add("mean-monotonicity", "A <= C, B <= D implies A s B <= C s D", mean_monotonicity);
  add("mean-transformer", "X*(A s B)X = (X*AX) s (X*BX) for invertible X", mean_transformer);
  add("mean-positive-map", "Phi(A s B) <= Phi(A) s Phi(B) for positive maps", mean_positive_map);
  add("mean-harmonic-interchange", "[X!Y] s [Z!W] <= [X s Z]![Y s W]", mean_harmonic_interchange);
  add("path-sandwich", "A !_t B <= A m_{r,t} B <= A v_t B", path_sandwich);
  add("path-monotonicity", "r -> A m_{r,t} B is nondecreasing", path_monotonicity);
  add("log-convex-decreasing", "f(A v_t B) <= f(A) #_t f(B) for f = t^-p", log_convex_decreasing);
  add("log-convex-paths", "f(A v_t B) <= f(A) m_{r,t} f(B) for f = t^-1/2", log_convex_paths);
  add("log-concave-monotone", "f(A v_t B) >= f(A) #_t f(B) for f = t^p", log_concave_monotone);
  add("harmonic-monotone", "h(A !_t B) <= h(A) !_t h(B) for operator monotone h", harmonic_monotone);
  add("F2-log-convex", "h(Phi(f(A)) s Psi(g(B))) jointly log-convex for log-convex f, g", [](C c, P) { return F2_log(c, true); });
  add("F2-log-concave", "h(Phi(f(A)) s Psi(g(B))) jointly log-concave for log-concave f, g",
      [](C c, P) { return F2_log(c, false); });
  add("F3-log-convex", "h(Phi(f(A))) log-convex for log-convex f", F3_log_convex);
  add("F1-log-convex-second", "F1(A, .) log-convex for fixed A", F1_log_convex_second);
  add("counterexample-sqrt-geo", "(A^2 # B^2)^1/2 is not jointly convex: fixed 2x2 instance",
      [](C, P) { return reproduce_counterexample_sqrt_geo(); }, true);
  add("search-sqrt-geo", "random search for non-convexity of (A^2 # B^2)^1/2 at dim 2", search_sqrt_geo, true);
  add("trace-F2-cases", "Tr h(Phi(f(A)) s Psi(g(B))): all convex, concave and log-convex cases", trace_F2_cases);
  add("trace-power-mean-convex", "A -> Tr Phi(A^p)^(-1/p) convex for p in [-1,1]", trace_power_mean_convex);
  add("lieb-map-concave", "Tr Phi(f1(A))^p K* Psi(f2(B))^(1-p) K jointly concave", lieb_map_concave);
  add("lieb-map-convex", "Tr Phi(f1(A))^p K* Psi(f2(B))^(-1-p) K jointly convex", lieb_map_convex);
  add("lieb-concavity", "Tr K* A^p K B^(1-p) jointly concave", lieb_concavity);
  add("multilinear-mean", "Phi(A1#B1, ...) <= Phi(A1, ...) # Phi(B1, ...)", multilinear_mean);
  add("multilinear-log-convex", "Phi(f1(A1), ..., fk(Ak)) jointly log-convex", [](C c, P p) { return multilinear_suite("multilinear-log-convex", c, p, 0); });
  add("multilinear-inverse-log-concave", "Phi(f1(A1), ..., fk(Ak))^-1 jointly log-concave",
      [](C c, P p) { return multilinear_suite("multilinear-inverse-log-concave", c, p, 1); });
  add("multilinear-trace-convex", "Tr h(Phi(f1(A1), ..., fk(Ak))) jointly convex",
      [](C c, P p) { return multilinear_suite("multilinear-trace-convex", c, p, 2); });
  add("kantorovich-identities", "symmetries and special values of K(h,p)", kantorovich_identities);
  add("kantorovich-specht-limit", "K(h^r, p/r) -> S(h^p) as r -> 0", kantorovich_specht_limit_check);
  add("reverse-jensen", "K(h,p)-bounds between Phi(A^p) and Phi(A)^p", reverse_jensen_suite);
  add("minkowski-sandwich", "K-sandwich of Phi((A+B)^p)^1/p", minkowski_sandwich_suite);
  add("minkowski-sum-sandwich", "K-sandwich of (sum (Ai+Bi)^p)^1/p, p >= 1", minkowski_sum_sandwich);
  add("counterexample-minkowski", "operator Minkowski inequality fails: fixed 3x3 instance",
      [](C, P) { return reproduce_counterexample_minkowski(); }, true);
  add("search-operator-minkowski", "random search for operator Minkowski failures at dim 3", search_operator_minkowski, true);
  add("deformed-minkowski-trace", "Tr Phi((A+B)^p)^(-1/p) <= Tr Phi(A^p)^(-1/p) + Tr Phi(B^p)^(-1/p)",
      deformed_minkowski_trace);
  add("det-properties", "power equality, homogeneity and bounds of exp Phi(log A)", det_properties);
  add("det-additive", "Specht bounds on D(A+B) against D(A) + D(B)", det_additive);
  add("det-minkowski", "Specht and Kantorovich bounds on D(A)^1/p + D(B)^1/p", det_minkowski);
  add("trace-minkowski-sandwich", "K-sandwich of Tr Phi((A+B)^p)^1/p", trace_minkowski_sandwich);
  add("trace-minkowski-sum-sandwich", "K-sandwich of Tr (sum (Ai+Bi)^p)^1/p", trace_minkowski_sum_sandwich);
  add("carlen-lieb-superadditive", "Tr (sum (Ai+Bi)^p)^1/p is superadditive for 0 < p <= 1",
      [](C c, P p) { return carlen_lieb_additive(c, p, true); });
  add("carlen-lieb-subadditive", "Tr (sum (Ai+Bi)^p)^1/p is subadditive for 1 <= p <= 2",
      [](C c, P p) { return carlen_lieb_additive(c, p, false); });
  add("carlen-lieb-p3-convexity", "Tr (A^3 + B^3)^1/3 is not jointly convex",
      [](C c, P p) { return carlen_lieb_p3(c, p, ConvexityMode::convex); }, true);
  add("carlen-lieb-p3-concavity", "Tr (A^3 + B^3)^1/3 is not jointly concave",
      [](C c, P p) { return carlen_lieb_p3(c, p, ConvexityMode::concave); }, true);
  add("carlen-lieb-direction", "Tr (A^p + B^p)^1/p: concave for p <= 1, convex for 1 < p <= 2, neither beyond",
      carlen_lieb_direction, true);
  return r;
}

}  // namespace

const std::vector<CheckInfo>& registry() {
  static const std::vector<CheckInfo> table = build();
  return table;
}

const CheckInfo* find_check(const std::string& id) {
  const std::string key = id == "thm-MO" ? "minkowski-sandwich" : id;
  for (const CheckInfo& c : registry())
    if (c.id == key) return &c;
  return nullptr;
}

InequalityReport run_check(const std::string& id, const ProbeConfig& config, const CheckParams& params) {
  const CheckInfo* info = find_check(id);
  if (!info) throw std::invalid_argument("unknown check '" + id + "'");
  config.validate();
  InequalityReport report = info->run(config, params);
  report.theorem = info->id;
  report.seed = config.seed;
  const json overrides = params.to_json();
  if (!overrides.empty()) report.details["params"] = overrides;
  return report;
}

std::string registry_listing() {
  std::ostringstream os;
  std::size_t width = 0;
  for (const CheckInfo& c : registry()) width = std::max(width, c.id.size());
  for (const CheckInfo& c : registry()) {
    os << c.id << std::string(width - c.id.size() + 2, ' ') << c.description;
    if (c.expect_violation) os << " (expects a violation)";
    os << '\n';
  }
  return os.str();
}

}  // namespace opineq
