// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "opineq/constants.hpp"
#include "opineq/registry.hpp"

using namespace opineq;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool ok = true;
  std::vector<std::string> notes;
  void require(bool cond, const std::string& note) {
    if (!cond) {
      ok = false;
      notes.push_back(note);
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Runs each check with the default config (200 trials, dims 2-5, tol 1e-9).
Verdict suite(const std::vector<std::string>& ids, std::vector<std::string>& info) {
  Verdict v;
  int trials = 0;
  for (const std::string& id : ids) {
    const InequalityReport r = run_check(id, ProbeConfig{});
    trials += r.trials;
    v.require(r.passed(), id + ": " + std::to_string(r.violations) + " violations, " + std::to_string(r.errors) +
                              " errors, worst margin " + fmt(r.worst_margin));
  }
  info.push_back(std::to_string(ids.size()) + " checks, " + std::to_string(trials) + " trials");
  return v;
}

void line(int n, const std::string& title, const Verdict& v, const std::vector<std::string>& info, double seconds) {
  std::cout << "AC" << n << (n < 10 ? "  " : " ") << (v.ok ? "PASS" : "FAIL") << "  " << title << " [";
  for (const std::string& s : info) std::cout << s << "; ";
  std::cout << fmt(seconds) << " s]\n";
  for (const std::string& note : v.notes) std::cout << "      " << note << '\n';
}

bool ac1() {
  const auto t0 = Clock::now();
  const InequalityReport r = run_check("counterexample-sqrt-geo", ProbeConfig{});
  const double s = seconds_since(t0);
  Verdict v;
  for (const std::string& f : r.failed_requirements) v.require(false, f);
  v.require(r.details.at("loewner_leq") == false, "Loewner comparison returned true");
  v.require(s < 1.0, "runtime " + fmt(s) + " s >= 1 s");
  line(1, "2x2 counterexample: LHS/RHS within 5e-4, not Loewner-ordered", v,
       {"LHS(0,0)=" + fmt(r.details.at("lhs").at("re")[0][0].get<double>())}, s);
  return v.ok;
}

bool ac2() {
  const auto t0 = Clock::now();
  const InequalityReport r = run_check("counterexample-minkowski", ProbeConfig{});
  const double s = seconds_since(t0);
  Verdict v;
  for (const std::string& f : r.failed_requirements) v.require(false, f);
  v.require(r.violations == 1, "difference is not indefinite");
  v.require(s < 1.0, "runtime " + fmt(s) + " s >= 1 s");
  std::vector<std::string> info;
  for (const auto& e : r.details.at("eigenvalues_golden").at("entries"))
    info.push_back("eig " + fmt(e.at("computed").get<double>()) + " vs " + fmt(e.at("expected").get<double>()));
  line(2, "3x3 Minkowski counterexample: entries within 5e-6, eigenvalues within 1e-5, lambda_min < 0", v, info, s);
  return v.ok;
}

bool ac_suite(int n, const std::string& title, const std::vector<std::string>& ids, double limit = 0) {
  const auto t0 = Clock::now();
  std::vector<std::string> info;
  Verdict v = suite(ids, info);
  const double s = seconds_since(t0);
  if (limit > 0) v.require(s < limit, "runtime " + fmt(s) + " s >= " + fmt(limit) + " s");
  line(n, title, v, info, s);
  return v.ok;
}

bool ac6() {
  const auto t0 = Clock::now();
  std::vector<std::string> info;
  Verdict v = suite({"kantorovich-identities", "kantorovich-specht-limit"}, info);
  const double K = kantorovich(4.0, 2.0);
  v.require(std::abs(K - 1.5625) <= 1e-12, "K(4,2) = " + fmt(K));
  info.push_back("K(4,2)=" + fmt(K));
  line(6, "Kantorovich/Specht identities, limit at r=1e-5, K(4,2)=1.5625", v, info, seconds_since(t0));
  return v.ok;
}

bool ac11() {
  const auto t0 = Clock::now();
  Verdict v;
  std::vector<std::string> info;
  for (const auto& [id, budget] : std::vector<std::pair<std::string, int>>{{"search-sqrt-geo", 1000},
                                                                          {"search-operator-minkowski", 1000},
                                                                          {"carlen-lieb-p3-convexity", 0},
                                                                          {"carlen-lieb-p3-concavity", 0}}) {
    const InequalityReport r = run_check(id, ProbeConfig{});
    v.require(r.violations > 0, id + ": no violation found");
    if (budget > 0) v.require(r.trials <= budget, id + ": needed " + std::to_string(r.trials) + " trials");
    const int dim = r.witness ? static_cast<int>(input_matrix(r.witness->at("instance"), "A1").dim()) : 0;
    info.push_back(id + " after " + std::to_string(r.trials) + " trials (dim " + std::to_string(dim) +
                   ", margin " + fmt(r.worst_margin) + ")");
  }
  line(11, "expected violations found", v, info, seconds_since(t0));
  return v.ok;
}

bool ac12() {
  const std::vector<std::string> args{"verify", "all", "--seed", "7"};
  std::vector<std::string> outputs;
  std::vector<double> times;
  for (int run = 0; run < 2; ++run) {
    std::ostringstream out, err;
    const auto t0 = Clock::now();
    cli::run_cli(args, out, err);
    times.push_back(seconds_since(t0));
    json doc = json::parse(out.str());
    doc.erase("manifest");  // timestamps and wall clock
    outputs.push_back(doc.dump());
  }
  Verdict v;
  v.require(outputs[0] == outputs[1], "reports differ between runs");
  for (double t : times) v.require(t < 300.0, "suite took " + fmt(t) + " s");
  line(12, "verify all --seed 7 twice: identical reports, each under 5 min", v,
       {"runs " + fmt(times[0]) + " s and " + fmt(times[1]) + " s", std::to_string(outputs[0].size()) + " bytes"},
       times[0] + times[1]);
  return v.ok;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= ac1();
  ok &= ac2();
  ok &= ac_suite(3, "mean axioms and sandwiches, 200 trials, dims 2-5, tol 1e-9",
                 {"mean-monotonicity", "mean-transformer", "mean-positive-map", "mean-harmonic-interchange",
                  "path-sandwich", "path-monotonicity"},
                 60.0);
  ok &= ac_suite(4, "log-convexity lemmas", {"log-convex-decreasing", "log-convex-paths", "log-concave-monotone",
                                             "harmonic-monotone"});
  ok &= ac_suite(5, "operator joint log-convexity / log-concavity, three combinations each",
                 {"F2-log-convex", "F2-log-concave"});
  ok &= ac6();
  ok &= ac_suite(7, "reverse Jensen, all regimes, unital avg:2 / pinch / schur", {"reverse-jensen"});
  ok &= ac_suite(8, "Minkowski sandwiches in all regimes and the operator-sum form",
                 {"minkowski-sandwich", "minkowski-sum-sandwich"});
  ok &= ac_suite(9, "operator determinant properties and bounds", {"det-properties", "det-additive", "det-minkowski"});
  ok &= ac_suite(10, "trace suite",
                 {"trace-F2-cases", "trace-power-mean-convex", "lieb-map-concave", "lieb-map-convex",
                  "multilinear-mean", "multilinear-log-convex", "multilinear-inverse-log-concave",
                  "multilinear-trace-convex", "lieb-concavity", "carlen-lieb-superadditive",
                  "carlen-lieb-subadditive", "trace-minkowski-sandwich", "trace-minkowski-sum-sandwich",
                  "deformed-minkowski-trace"});
  ok &= ac11();
  ok &= ac12();
  std::cout << (ok ? "all criteria passed" : "some criteria failed") << '\n';
  return ok ? 0 : 1;
}
