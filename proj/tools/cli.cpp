#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "opineq/constants.hpp"
#include "opineq/functionals.hpp"
#include "opineq/registry.hpp"

namespace opineq::cli {
namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonFlags {
  std::string dim;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string window;
  std::string lambda_grid;
  std::optional<int> threads;
  std::string out;
  CheckParams params;
};

std::vector<double> parse_list(const std::string& text, char sep) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument("not a number: '" + item + "'");
    values.push_back(v);
  }
  return values;
}

ProbeConfig resolve_config(const CommonFlags& f) {
  ProbeConfig c;
  if (!f.dim.empty()) {
    const std::vector<double> d = parse_list(f.dim, ':');
    if (d.size() == 1) {
      c.dim_min = c.dim_max = static_cast<int>(d[0]);
    } else if (d.size() == 2) {
      c.dim_min = static_cast<int>(d[0]);
      c.dim_max = static_cast<int>(d[1]);
    } else {
      throw std::invalid_argument("--dim expects n or lo:hi");
    }
  }
  if (f.trials) c.trials = *f.trials;
  if (f.seed) c.seed = *f.seed;
  if (f.tol) c.tol = *f.tol;
  if (!f.window.empty()) {
    const std::vector<double> w = parse_list(f.window, ':');
    if (w.size() != 2) throw std::invalid_argument("--window expects m:M");
    c.window = {w[0], w[1]};
  }
  if (f.lambda_grid == "full")
    c.lambda_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  else if (!f.lambda_grid.empty())
    c.lambda_grid = parse_list(f.lambda_grid, ',');
  if (f.threads) c.threads = *f.threads;
  c.validate();
  return c;
}

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--dim", f.dim, "matrix dimension n or range lo:hi (default 2:5)");
  cmd->add_option("--trials", f.trials, "random trials per probe (default 200)");
  cmd->add_option("--seed", f.seed, "base seed (default 7)");
  cmd->add_option("--tol", f.tol, "violation tolerance (default 1e-9)");
  cmd->add_option("--window", f.window, "spectral window m:M (default 0.5:2)");
  cmd->add_option("--lambda-grid", f.lambda_grid, "comma list of lambdas, or 'full'");
  cmd->add_option("--threads", f.threads, "worker threads (reports do not depend on it)");
  cmd->add_option("--out", f.out, "write results here; the manifest goes to <out>.manifest.json");
  cmd->add_option("--p", f.params.p, "exponent override");
  cmd->add_option("--t", f.params.t, "mean weight override");
  cmd->add_option("--map", f.params.map, "positive map override");
  cmd->add_option("--mean", f.params.mean, "mean kind override");
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

json make_manifest(const std::vector<std::string>& args, const ProbeConfig* config, double seconds,
                   const std::string& out) {
  json m = {{"command", args}, {"version", kVersion}, {"started_utc", utc_now()}, {"wall_clock_seconds", seconds}};
  m["config"] = config ? config->to_json() : json(nullptr);
  m["outputs"] = out.empty() ? json::array({"stdout"}) : json::array({out});
  return m;
}

// Results to --out (manifest beside it, manifest on stdout) or both to stdout.
void emit_json(const json& results, json manifest, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    json doc = results;
    doc["manifest"] = std::move(manifest);
    out << doc.dump(2) << '\n';
    return;
  }
  write_json_file(out_path, results);
  write_json_file(out_path + ".manifest.json", manifest);
  out << manifest.dump(2) << '\n';
}

void summarize(const InequalityReport& r, std::ostream& err) {
  err << (r.passed() ? "PASS " : "FAIL ") << r.theorem << "  trials=" << r.trials << " violations=" << r.violations
      << " errors=" << r.errors << " worst_margin=" << r.worst_margin;
  if (r.expect_violation) err << " (violation expected)";
  for (const std::string& f : r.failed_requirements) err << "\n     " << f;
  err << '\n';
}

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int cmd_verify(const std::string& id, const CommonFlags& flags, const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  std::vector<std::string> ids;
  if (id == "all") {
    for (const CheckInfo& c : registry()) ids.push_back(c.id);
  } else if (find_check(id)) {
    ids.push_back(id);
  } else {
    err << "unknown check '" << id << "'. Registered checks:\n" << registry_listing();
    return 2;
  }
  const ProbeConfig config = resolve_config(flags);
  const auto t0 = Clock::now();
  json reports = json::array();
  bool all_passed = true;
  for (const std::string& name : ids) {
    InequalityReport r;
    try {
      r = run_check(name, config, flags.params);
    } catch (const std::exception& e) {
      err << "FAIL " << name << "  " << e.what() << '\n';
      reports.push_back({{"theorem", name}, {"passed", false}, {"error", e.what()}});
      all_passed = false;
      continue;
    }
    summarize(r, err);
    all_passed = all_passed && r.passed();
    reports.push_back(r.to_json(false));
  }
  const double elapsed = seconds_since(t0);
  err << (all_passed ? "all passed" : "FAILED") << " (" << ids.size() << " checks, " << elapsed << " s)\n";
  emit_json({{"passed", all_passed}, {"reports", reports}}, make_manifest(args, &config, elapsed, flags.out), flags.out,
            out);
  return all_passed ? 0 : 1;
}

int cmd_eval(const std::string& spec_path, const std::string& form, const std::vector<std::string>& files,
             const std::string& out_path, const std::vector<std::string>& args, std::ostream& out) {
  const auto t0 = Clock::now();
  const FunctionalSpec spec = spec_path.empty() ? FunctionalSpec{} : FunctionalSpec::from_json(read_json_file(spec_path));
  const std::size_t need = (form == "F3" || form == "det") ? 1 : 2;
  if (files.size() != need)
    throw std::invalid_argument("form " + form + " takes " + std::to_string(need) + " matrix file(s)");
  std::vector<HermitianMatrix> x;
  for (const std::string& f : files) x.push_back(read_hermitian_file(f));
  json result = {{"form", form}, {"spec", spec.to_json()}};
  const auto matrix_result = [&](const HermitianMatrix& v) {
    result["value"] = matrix_to_json(v);
    const RealVector ev = eigenvalues(v);
    result["eigenvalues"] = std::vector<double>(ev.data(), ev.data() + ev.size());
  };
  if (form == "F1")
    matrix_result(F1(spec, x[0], x[1]));
  else if (form == "F2")
    matrix_result(F2(spec, x[0], x[1]));
  else if (form == "F3")
    matrix_result(F3(spec, x[0]));
  else if (form == "det")
    matrix_result(op_determinant(spec.phi, x[0]));
  else if (form == "trace-F2")
    result["value"] = trace_F2(spec, x[0], x[1]);
  else
    throw std::invalid_argument("unknown form '" + form + "' (F1, F2, F3, trace-F2, det)");
  emit_json(result, make_manifest(args, nullptr, seconds_since(t0), out_path), out_path, out);
  return 0;
}

std::vector<std::pair<std::string, std::vector<double>>> parse_grids(const std::vector<std::string>& specs) {
  std::vector<std::pair<std::string, std::vector<double>>> grids;
  for (const std::string& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--grid expects name=v1,v2,...");
    const std::string name = s.substr(0, eq);
    if (name != "p" && name != "t") throw std::invalid_argument("grid parameter must be p or t, got '" + name + "'");
    const std::string values = s.substr(eq + 1);
    if (values.empty()) throw std::invalid_argument("empty grid for " + name);
    grids.emplace_back(name, parse_list(values, ','));
  }
  if (grids.empty()) throw std::invalid_argument("empty grid");
  return grids;
}

int cmd_scan(const std::string& id, const std::vector<std::string>& grid_specs, const CommonFlags& flags,
             const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (!find_check(id)) {
    err << "unknown check '" << id << "'. Registered checks:\n" << registry_listing();
    return 2;
  }
  const auto grids = parse_grids(grid_specs);
  const ProbeConfig config = resolve_config(flags);
  const auto t0 = Clock::now();

  std::ostringstream csv;
  csv << std::setprecision(17);
  for (const auto& g : grids) csv << g.first << ',';
  csv << "trials,violations,errors,worst_margin,expect_violation,passed\n";

  std::vector<std::size_t> idx(grids.size(), 0);
  bool all_passed = true;
  while (true) {
    CheckParams cp = flags.params;
    for (std::size_t i = 0; i < grids.size(); ++i) {
      const double v = grids[i].second[idx[i]];
      (grids[i].first == "p" ? cp.p : cp.t) = v;
      csv << v << ',';
    }
    const InequalityReport r = run_check(id, config, cp);
    summarize(r, err);
    all_passed = all_passed && r.passed();
    csv << r.trials << ',' << r.violations << ',' << r.errors << ',' << r.worst_margin << ','
        << (r.expect_violation ? "true" : "false") << ',' << (r.passed() ? "true" : "false") << '\n';
    std::size_t i = grids.size();
    while (i > 0 && ++idx[i - 1] == grids[i - 1].second.size()) idx[--i] = 0;
    if (i == 0) break;
  }

  const json manifest = make_manifest(args, &config, seconds_since(t0), flags.out);
  if (flags.out.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(flags.out);
    if (!f) throw std::runtime_error("cannot write " + flags.out);
    f << csv.str();
    write_json_file(flags.out + ".manifest.json", manifest);
  }
  return all_passed ? 0 : 1;
}

int cmd_constants(double h, double p, std::ostream& out) {
  const json j = {{"h", h},
                  {"p", p},
                  {"K", kantorovich(h, p)},
                  {"S(h)", specht(h)},
                  {"S(h^p)", specht(std::pow(h, p))}};
  out << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Randomized checks of operator and trace inequalities", "opineq-cli"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonFlags verify_flags;
  std::string verify_id;
  CLI::App* verify = app.add_subcommand("verify", "run a registered check (or 'all'); exit 0 iff it passes");
  bool list_checks = false;
  verify->add_option("id", verify_id, "check id or 'all'");
  add_common(verify, verify_flags);
  verify->add_flag("--list", list_checks, "list registered checks");

  std::string spec_path, form = "F2", eval_out;
  std::vector<std::string> eval_files;
  CLI::App* eval = app.add_subcommand("eval", "evaluate F1, F2, F3, trace-F2 or the operator determinant");
  eval->add_option("--spec", spec_path, "functional spec JSON (keys f, g, h, phi, psi, sigma, K)");
  eval->add_option("--form", form, "F1, F2, F3, trace-F2 or det (default F2)");
  eval->add_option("--out", eval_out, "write the result here");
  eval->add_option("matrices", eval_files, "matrix JSON files")->required();

  CommonFlags scan_flags;
  std::string scan_id;
  std::vector<std::string> grid_specs;
  CLI::App* scan = app.add_subcommand("scan", "run a check over a parameter grid; CSV of margins");
  scan->add_option("id", scan_id, "check id")->required();
  scan->add_option("--grid", grid_specs, "name=v1,v2,... for p or t; repeat for a product grid")->required();
  add_common(scan, scan_flags);

  double h = 0, p = 0;
  CLI::App* constants = app.add_subcommand("constants", "K(h,p), S(h) and S(h^p) as JSON");
  constants->set_help_flag("--help", "print this help");  // -h would clash with --h
  constants->add_option("--h", h, "condition ratio M/m")->required();
  constants->add_option("--p", p, "exponent")->required();

  std::string manifest_path;
  CLI::App* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  replay->add_option("manifest", manifest_path, "manifest JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::Success&) {
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (*verify && list_checks) {
      out << registry_listing();
      return 0;
    }
    if (*verify && verify_id.empty()) throw std::invalid_argument("verify needs a check id, 'all', or --list");
    if (*verify) return cmd_verify(verify_id, verify_flags, args, out, err);
    if (*eval) return cmd_eval(spec_path, form, eval_files, eval_out, args, out);
    if (*scan) return cmd_scan(scan_id, grid_specs, scan_flags, args, out, err);
    if (*constants) return cmd_constants(h, p, out);
    if (*replay) {
      const json m = read_json_file(manifest_path);
      std::vector<std::string> recorded = m.at("command").get<std::vector<std::string>>();
      if (!recorded.empty() && recorded.front() == "replay") throw std::invalid_argument("manifest records a replay");
      return run_cli(recorded, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace opineq::cli
