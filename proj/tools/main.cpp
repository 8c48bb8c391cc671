// Command-line front end: tableau construction, exact order analysis, time
// integration, and the acceptance checks. Machine-readable output (JSON or
// CSV with a "# manifest:" comment) is the default; --pretty renders tables.
//
// Exit codes: 0 ok, 1 check/runtime failure, 2 usage, 3 solver failure.
#include "xpsrk/analysis.hpp"
#include "xpsrk/integrate.hpp"
#include "xpsrk/manifest.hpp"
#include "xpsrk/tableau.hpp"
#include "xpsrk/trees.hpp"
#include "xpsrk/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace xpsrk;

// Usage-level mistakes discovered after argument parsing; mapped to exit 2.
struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scalar parse_exact(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Scalar(Rational(Int(s)));
    return Scalar::rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const CliError&) {
    throw;
  } catch (const std::exception&) {
    throw CliError("cannot parse '" + s + "' (want an integer or p/q)");
  }
}

std::vector<Scalar> parse_exact_list(const std::vector<std::string>& xs) {
  std::vector<Scalar> out;
  out.reserve(xs.size());
  for (const std::string& s : xs) out.push_back(parse_exact(s));
  return out;
}

template <class Real>
Real real_from_string(const std::string& s) {
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const Real den = real_from_string<Real>(s.substr(slash + 1));
    if (den == Real(0)) throw CliError("zero denominator in '" + s + "'");
    return real_from_string<Real>(s.substr(0, slash)) / den;
  }
  try {
    if constexpr (std::is_same_v<Real, double>) {
      size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } else {
      return Real(s);
    }
  } catch (const std::exception&) {
    throw CliError("cannot parse number '" + s + "'");
  }
}

template <class Real>
std::string fmt_real(const Real& x) {
  std::ostringstream ss;
  ss.precision(std::numeric_limits<Real>::max_digits10);
  ss << x;
  return ss.str();
}

int resolve_precision(int flag_bits) {
  if (flag_bits == 0) {
    const char* env = std::getenv("XPSRK_PRECISION");
    if (!env) return int(kDefaultFloatBits);
    try {
      flag_bits = std::stoi(env);
    } catch (const std::exception&) {
      throw CliError("XPSRK_PRECISION must be an integer (53, 128, or 256)");
    }
  }
  backend_name(flag_bits);  // validates the menu
  return flag_bits;
}

// Runs fn with a value of the float type selected by `bits`.
template <class Fn>
int with_real(int bits, Fn&& fn) {
  switch (bits) {
    case 53: return fn(double{});
    case 128: return fn(Float128{});
    case 256: return fn(Float256{});
    default: throw CliError("precision must be 53, 128, or 256");
  }
}

class Sink {
 public:
  explicit Sink(const std::string& path) : path_(path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw CliError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& os() { return path_ == "-" ? std::cout : file_; }

 private:
  std::string path_;
  std::ofstream file_;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot read '" + path + "'");
  try {
    json j;
    in >> j;
    return j;
  } catch (const std::exception& e) {
    throw CliError("bad JSON in '" + path + "': " + e.what());
  }
}

// Accepts either a bare tableau document or the CLI's own {"tableau": ...}
// wrapper, so emitted files feed straight back in.
ButcherTableau tableau_from_file(const std::string& path) {
  const json j = load_json(path);
  return tableau_from_json(j.contains("tableau") ? j["tableau"] : j);
}

std::vector<std::string> default_state(const std::string& problem) {
  if (problem == "harmonic") return {"1", "0"};
  if (problem == "nonseparable") return {"0.6", "0.4"};
  if (problem == "rotation") return {"1", "0"};
  if (problem == "kepler") return {"1", "0", "0", "1"};
  return {};
}

struct MethodOpts {
  std::string method = "midpoint";  // midpoint | symmetric | rk:FILE
  std::string scheme = "leapfrog2";
  double tol = 1e-12;
  int max_iter = 50;

  json params() const {
    return {{"method", method}, {"scheme", scheme}, {"tol", tol},
            {"max_iter", max_iter}};
  }
};

template <class Real>
Stepper<Real> make_stepper(const MethodOpts& m) {
  SolverConfig cfg;
  cfg.tolerance = m.tol;
  cfg.max_iterations = m.max_iter;
  if (m.method == "midpoint")
    return make_midpoint_stepper<Real>(
        composition_alphas(scheme_from_string(m.scheme)));
  if (m.method == "symmetric")
    return make_symmetric_stepper<Real>(
        alternating_alphas(composition_alphas(scheme_from_string(m.scheme))),
        cfg);
  if (m.method.rfind("rk:", 0) == 0)
    return make_rk_stepper<Real>(tableau_from_file(m.method.substr(3)), cfg);
  throw CliError("unknown method '" + m.method +
                 "' (want midpoint, symmetric, or rk:FILE)");
}

template <class Real>
RVec<Real> parse_state(const std::vector<std::string>& given,
                       const std::string& problem, int dim) {
  const std::vector<std::string> strs =
      given.empty() ? default_state(problem) : given;
  if (int(strs.size()) != dim)
    throw CliError("--z0 wants " + std::to_string(dim) +
                   " components for problem '" + problem + "'");
  RVec<Real> z(dim);
  for (int i = 0; i < dim; ++i) z[i] = real_from_string<Real>(strs[i]);
  return z;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  const double n = double(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sxx += lx * lx;
    sy += ly;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---- subcommands ----------------------------------------------------------

struct TreesOpts {
  int max_order = 6;
  bool pretty = false;
  std::string out = "-";
};

int run_trees(const TreesOpts& o) {
  if (o.max_order < 1 || o.max_order > kMaxTreeOrder)
    throw CliError("--max must be in 1.." + std::to_string(kMaxTreeOrder));
  RunManifest man;
  man.command = "trees";
  man.params = {{"max", o.max_order}};
  man.backend = "exact";
  man.outputs = {o.out};

  Sink sink(o.out);
  std::ostream& os = sink.os();
  if (o.pretty) {
    for (int n = 1; n <= o.max_order; ++n) {
      const auto ts = enumerate_trees(n);
      os << "order " << n << " | " << ts.size()
         << (ts.size() == 1 ? " tree\n" : " trees\n");
      for (const RootedTree& t : ts) {
        os << "  ";
        for (int lvl : t.levels()) os << ' ' << lvl;
        os << "   gamma=" << density(t).str() << "  sigma=" << symmetry(t).str()
           << '\n';
      }
    }
    return 0;
  }
  os << json{{"manifest", manifest_to_json(man)}}.dump() << '\n';
  for (int n = 1; n <= o.max_order; ++n) {
    const auto ts = enumerate_trees(n);
    json trees = json::array();
    for (const RootedTree& t : ts)
      trees.push_back({{"levels", t.levels()},
                       {"density", density(t).str()},
                       {"symmetry", symmetry(t).str()}});
    os << json{{"order", n}, {"count", ts.size()}, {"trees", std::move(trees)}}
              .dump()
       << '\n';
  }
  return 0;
}

struct TableauOpts {
  std::string construction;
  std::string scheme = "leapfrog2";
  std::vector<std::string> alphas;
  bool pretty = false;
  std::string out = "-";
};

int run_tableau(const TableauOpts& o) {
  std::vector<Scalar> alphas;
  if (!o.alphas.empty()) {
    alphas = parse_exact_list(o.alphas);
  } else {
    const Scheme s = scheme_from_string(o.scheme);
    // midpoint consumes whole-map sizes; the projected constructions take
    // the interleaved substep list.
    alphas = o.construction == "midpoint" ? composition_alphas(s)
                                          : alternating_alphas(composition_alphas(s));
  }

  std::optional<ButcherTableau> tab;
  std::optional<ExtendedTableau> ext;
  if (o.construction == "midpoint") {
    tab = midpoint_projection_tableau(alphas);
  } else if (o.construction == "monoimplicit") {
    tab = monoimplicit_tableau(alphas);
  } else if (o.construction == "symmetric") {
    ext = symmetric_projection_extended(alphas);
    tab = eliminate_constraints(*ext);
  } else {
    throw CliError("unknown construction '" + o.construction +
                   "' (want midpoint, symmetric, or monoimplicit)");
  }

  RunManifest man;
  man.command = "tableau";
  man.params = {{"construction", o.construction}};
  if (o.alphas.empty())
    man.params["scheme"] = o.scheme;
  else
    man.params["alphas"] = o.alphas;
  man.backend = "exact";
  man.outputs = {o.out};

  Sink sink(o.out);
  if (o.pretty) {
    sink.os() << format_tableau(*tab);
    if (ext) sink.os() << "\nextended form (d k = 0):\n" << format_extended(*ext);
    return 0;
  }
  json doc = {{"manifest", manifest_to_json(man)},
              {"tableau", tableau_to_json(*tab)}};
  if (ext) doc["extended"] = extended_to_json(*ext);
  sink.os() << doc.dump(2) << '\n';
  return 0;
}

struct AnalyzeOpts {
  std::string tableau_file;
  int max_order = 6;
  bool census = false;
  bool pretty = false;
  std::string out = "-";
};

int run_analyze(const AnalyzeOpts& o) {
  if (o.max_order < 1 || o.max_order > 11)
    throw CliError("--max-order must be in 1..11");
  const ButcherTableau tab = tableau_from_file(o.tableau_file);
  const OrderReport rep = order_report(tab, o.max_order);

  RunManifest man;
  man.command = "analyze";
  man.params = {{"tableau", o.tableau_file},
                {"max_order", o.max_order},
                {"census", o.census}};
  man.backend = "exact";
  man.outputs = {o.out};

  Sink sink(o.out);
  std::ostream& os = sink.os();
  if (o.pretty) {
    const auto show = [](bool infinite, int order) {
      return infinite ? std::string("infinite") : std::to_string(order);
    };
    os << "stages               | " << tab.stages() << '\n'
       << "classical order      | " << rep.classical.order << '\n'
       << "pseudosymplecticity  | "
       << show(rep.pseudosymplectic.infinite, rep.pseudosymplectic.order) << '\n'
       << "pseudosymmetry       | "
       << show(rep.pseudosymmetry.infinite, rep.pseudosymmetry.order) << '\n';
    if (o.census) {
      os << "order | conditions | satisfied\n";
      for (const CensusRow& row : rep.pseudosymplectic.census) {
        os.width(5);
        os << row.order << " | ";
        os.width(10);
        os << row.conditions << " | ";
        os.width(9);
        os << row.satisfied << '\n';
      }
    }
    return 0;
  }
  json report = order_report_to_json(rep);
  if (!o.census) report.erase("symplecticity_census");
  os << json{{"manifest", manifest_to_json(man)}, {"report", std::move(report)}}
            .dump(2)
     << '\n';
  return 0;
}

struct IntegrateOpts {
  MethodOpts m;
  std::string problem;
  std::string h;
  long steps = 0;
  std::vector<std::string> z0;
  int precision = 0;
  std::string out = "-";
};

int run_integrate(const IntegrateOpts& o) {
  const int bits = resolve_precision(o.precision);
  if (o.steps < 1) throw CliError("--steps must be positive");
  return with_real(bits, [&](auto tag) {
    using Real = decltype(tag);
    const Problem<Real> prob = builtin_problem<Real>(o.problem);
    const RVec<Real> z0 = parse_state<Real>(o.z0, o.problem, prob.dim);
    const Real h = real_from_string<Real>(o.h);
    if (h == Real(0)) throw CliError("--h must be nonzero");

    const Stepper<Real> stepper = make_stepper<Real>(o.m);
    const Trajectory<Real> traj = integrate(stepper, prob, z0, h, o.steps);

    RunManifest man;
    man.command = "integrate";
    man.params = o.m.params();
    man.params["problem"] = o.problem;
    man.params["h"] = o.h;
    man.params["steps"] = o.steps;
    man.params["z0"] = o.z0.empty() ? default_state(o.problem) : o.z0;
    man.backend = backend_name(bits);
    man.precision_bits = bits;
    man.outputs = {o.out};

    Sink sink(o.out);
    std::ostream& os = sink.os();
    os << manifest_csv_comment(man) << '\n';
    os << "t";
    for (int i = 0; i < prob.dim; ++i) os << ",z" << i;
    os << ",energy_err,quad_err\n";
    const bool has_h = !traj.energy_error.empty();
    const bool has_q = !traj.quad_error.empty();
    for (size_t n = 0; n < traj.times.size(); ++n) {
      os << fmt_real(traj.times[n]);
      for (int i = 0; i < prob.dim; ++i) os << ',' << fmt_real(traj.states[n][i]);
      os << ',' << (has_h ? fmt_real(traj.energy_error[n]) : std::string("nan"));
      os << ',' << (has_q ? fmt_real(traj.quad_error[n]) : std::string("nan"));
      os << '\n';
    }
    return 0;
  });
}

struct DriftOpts {
  MethodOpts m;
  std::string problem;
  std::vector<std::string> h_list;
  std::string T;
  std::vector<std::string> z0;
  int precision = 0;
  std::string out = "-";
};

int run_drift(const DriftOpts& o) {
  const int bits = resolve_precision(o.precision);
  return with_real(bits, [&](auto tag) {
    using Real = decltype(tag);
    const Problem<Real> prob = builtin_problem<Real>(o.problem);
    const RVec<Real> z0 = parse_state<Real>(o.z0, o.problem, prob.dim);
    std::vector<Real> hs;
    for (const std::string& s : o.h_list) hs.push_back(real_from_string<Real>(s));
    const Real T = real_from_string<Real>(o.T);

    const Stepper<Real> stepper = make_stepper<Real>(o.m);
    const DriftFit<Real> fit = drift_fit(stepper, prob, z0, hs, T);

    RunManifest man;
    man.command = "drift";
    man.params = o.m.params();
    man.params["problem"] = o.problem;
    man.params["h_list"] = o.h_list;
    man.params["T"] = o.T;
    man.params["z0"] = o.z0.empty() ? default_state(o.problem) : o.z0;
    man.backend = backend_name(bits);
    man.precision_bits = bits;
    man.outputs = {o.out};

    Sink sink(o.out);
    std::ostream& os = sink.os();
    os << manifest_csv_comment(man) << '\n';
    os << "h,rate,rate_err,below_floor\n";
    for (const DriftRate<Real>& r : fit.rates)
      os << fmt_real(r.h) << ',' << fmt_real(r.rate) << ',' << fmt_real(r.rate_err)
         << ',' << (r.below_floor ? 1 : 0) << '\n';
    json fj = {{"slope", fit.slope_defined ? json(fit.slope) : json(nullptr)},
               {"slope_defined", fit.slope_defined}};
    if (!fit.warning.empty()) fj["warning"] = fit.warning;
    os << "# fit: " << fj.dump() << '\n';
    return 0;
  });
}

struct DefectScanOpts {
  MethodOpts m;
  std::string problem;
  std::vector<std::string> h_list;
  std::vector<std::string> z0;
  int precision = 0;
  std::string out = "-";
};

int run_defect_scan(const DefectScanOpts& o) {
  const int bits = resolve_precision(o.precision);
  if (o.h_list.empty()) throw CliError("--h-list must not be empty");
  return with_real(bits, [&](auto tag) {
    using Real = decltype(tag);
    const Problem<Real> prob = builtin_problem<Real>(o.problem);
    const RVec<Real> z0 = parse_state<Real>(o.z0, o.problem, prob.dim);
    const Stepper<Real> stepper = make_stepper<Real>(o.m);

    std::vector<double> hd, sp, sm;
    for (const std::string& s : o.h_list) {
      const Real h = real_from_string<Real>(s);
      hd.push_back(static_cast<double>(h));
      sp.push_back(static_cast<double>(symplectic_defect(stepper, prob, z0, h)));
      sm.push_back(static_cast<double>(symmetry_defect(stepper, prob, z0, h)));
    }

    RunManifest man;
    man.command = "defect-scan";
    man.params = o.m.params();
    man.params["problem"] = o.problem;
    man.params["h_list"] = o.h_list;
    man.params["z0"] = o.z0.empty() ? default_state(o.problem) : o.z0;
    man.backend = backend_name(bits);
    man.precision_bits = bits;
    man.outputs = {o.out};

    Sink sink(o.out);
    std::ostream& os = sink.os();
    os << manifest_csv_comment(man) << '\n';
    os << "h,symplectic_defect,symmetry_defect\n";
    for (size_t i = 0; i < hd.size(); ++i)
      os << fmt_real(hd[i]) << ',' << fmt_real(sp[i]) << ',' << fmt_real(sm[i])
         << '\n';
    json fj;
    if (hd.size() >= 2) {
      fj = {{"symplectic_slope", loglog_slope(hd, sp)},
            {"symmetry_slope", loglog_slope(hd, sm)}};
    } else {
      fj = {{"symplectic_slope", nullptr}, {"symmetry_slope", nullptr}};
    }
    os << "# fit: " << fj.dump() << '\n';
    return 0;
  });
}

struct VerifyCmdOpts {
  bool skip_numeric = false;
  std::uint64_t seed = 12345;
  std::vector<int> checks;
  std::string out = "-";
};

int run_verify(const VerifyCmdOpts& o) {
  for (int id : o.checks)
    if (id < 1 || id > 11) throw CliError("--checks ids must be in 1..11");

  VerifyOptions opt;
  opt.skip_numeric = o.skip_numeric;
  opt.only = o.checks;
  opt.seed = o.seed;
  const auto results = run_verification(opt, [](const VerifyCheck& c) {
    std::fprintf(stderr, "%s  %2d  %s\n",
                 c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL"), c.id,
                 c.name.c_str());
  });

  RunManifest man;
  man.command = "verify";
  man.params = {{"skip_numeric", o.skip_numeric},
                {"seed", o.seed},
                {"checks", o.checks}};
  man.backend = o.skip_numeric ? "exact" : "mixed";
  man.outputs = {o.out};

  json arr = json::array();
  std::string first_failure;
  for (const VerifyCheck& c : results) {
    arr.push_back({{"id", c.id},
                   {"name", c.name},
                   {"passed", c.passed},
                   {"skipped", c.skipped},
                   {"details", c.details}});
    if (!c.skipped && !c.passed && first_failure.empty()) first_failure = c.name;
  }
  const bool ok = all_passed(results);
  const json doc = {
      {"manifest", manifest_to_json(man)},
      {"checks", std::move(arr)},
      {"passed", ok},
      {"first_failure", ok ? json(nullptr) : json(first_failure)}};
  Sink sink(o.out);
  sink.os() << doc.dump(2) << '\n';
  if (!ok)
    std::fprintf(stderr, "first failing check: %s\n", first_failure.c_str());
  return ok ? 0 : 1;
}

void add_method_options(CLI::App* cmd, MethodOpts& m) {
  cmd->add_option("--method", m.method,
                  "midpoint, symmetric, or rk:FILE (a tableau JSON file)");
  cmd->add_option("--scheme", m.scheme,
                  "composition scheme: leapfrog2, triplejump4, suzuki4");
  cmd->add_option("--tol", m.tol, "nonlinear solver residual tolerance");
  cmd->add_option("--max-iter", m.max_iter, "nonlinear solver iteration cap");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Runge-Kutta realizations of extended-phase-space integrators: "
      "construction, exact structure analysis, and long-time experiments"};
  app.require_subcommand(1);

  TreesOpts trees_o;
  auto* trees = app.add_subcommand(
      "trees", "Enumerate rooted trees with density and symmetry");
  trees->add_option("--max", trees_o.max_order, "largest tree order")
      ->required();
  trees->add_flag("--pretty", trees_o.pretty, "human-readable listing");
  trees->add_option("-o,--output", trees_o.out, "output file ('-' = stdout)");

  TableauOpts tab_o;
  auto* tableau = app.add_subcommand(
      "tableau", "Construct a tableau from a substep schedule");
  tableau
      ->add_option("--construction", tab_o.construction,
                   "midpoint, symmetric, or monoimplicit")
      ->required();
  tableau->add_option(
      "--scheme", tab_o.scheme,
      "composition scheme: leapfrog2, triplejump4, suzuki4");
  tableau
      ->add_option("--alphas", tab_o.alphas,
                   "explicit substep fractions (integers or p/q); midpoint "
                   "takes whole-map sizes, the others the alternating list")
      ->delimiter(',');
  tableau->add_flag("--pretty", tab_o.pretty, "aligned coefficient table");
  tableau->add_option("-o,--output", tab_o.out, "output file ('-' = stdout)");

  AnalyzeOpts an_o;
  auto* analyze = app.add_subcommand(
      "analyze", "Classify a tableau's order and structure exactly");
  analyze->add_option("--tableau", an_o.tableau_file, "tableau JSON file")
      ->required();
  analyze->add_option("--max-order", an_o.max_order,
                      "largest order to examine (1..11)");
  analyze->add_flag("--census", an_o.census,
                    "include the per-order symplecticity-condition census");
  analyze->add_flag("--pretty", an_o.pretty, "human-readable summary");
  analyze->add_option("-o,--output", an_o.out, "output file ('-' = stdout)");

  IntegrateOpts int_o;
  auto* integrate_cmd = app.add_subcommand(
      "integrate", "Integrate a built-in problem; CSV trajectory out");
  // The step-size option is spelled --h, so this subcommand keeps only the
  // long help flag.
  integrate_cmd->set_help_flag("--help", "print help");
  add_method_options(integrate_cmd, int_o.m);
  integrate_cmd
      ->add_option("--problem", int_o.problem,
                   "harmonic, nonseparable, rotation, or kepler")
      ->required();
  integrate_cmd->add_option("--h", int_o.h, "step size")->required();
  integrate_cmd->add_option("--steps", int_o.steps, "number of steps")
      ->required();
  integrate_cmd->add_option("--z0", int_o.z0, "initial state components")
      ->delimiter(',');
  integrate_cmd->add_option(
      "--precision", int_o.precision,
      "float significand bits: 53, 128, or 256 (env XPSRK_PRECISION)");
  integrate_cmd->add_option("-o,--output", int_o.out,
                            "output file ('-' = stdout)");

  DriftOpts dr_o;
  auto* drift = app.add_subcommand(
      "drift", "Secular energy-drift rates over a step-size grid");
  add_method_options(drift, dr_o.m);
  drift
      ->add_option("--problem", dr_o.problem,
                   "harmonic, nonseparable, rotation, or kepler")
      ->required();
  drift->add_option("--h-list", dr_o.h_list, "step sizes (>= 3)")
      ->required()
      ->delimiter(',');
  drift->add_option("--T", dr_o.T, "integration time per step size")
      ->required();
  drift->add_option("--z0", dr_o.z0, "initial state components")
      ->delimiter(',');
  drift->add_option(
      "--precision", dr_o.precision,
      "float significand bits: 53, 128, or 256 (env XPSRK_PRECISION)");
  drift->add_option("-o,--output", dr_o.out, "output file ('-' = stdout)");

  DefectScanOpts de_o;
  auto* defect = app.add_subcommand(
      "defect-scan", "One-step symplecticity and symmetry defects vs h");
  add_method_options(defect, de_o.m);
  defect
      ->add_option("--problem", de_o.problem,
                   "harmonic, nonseparable, rotation, or kepler")
      ->required();
  defect->add_option("--h-list", de_o.h_list, "step sizes")
      ->required()
      ->delimiter(',');
  defect->add_option("--z0", de_o.z0, "initial state components")
      ->delimiter(',');
  defect->add_option(
      "--precision", de_o.precision,
      "float significand bits: 53, 128, or 256 (env XPSRK_PRECISION)");
  defect->add_option("-o,--output", de_o.out, "output file ('-' = stdout)");

  VerifyCmdOpts ve_o;
  auto* verify = app.add_subcommand(
      "verify", "Run the acceptance checks; exit 0 iff all pass");
  verify->add_flag("--skip-numeric", ve_o.skip_numeric,
                   "run only the exact checks (1-6)");
  verify->add_option("--seed", ve_o.seed, "seed for randomized sub-checks");
  verify->add_option("--checks", ve_o.checks, "restrict to these check ids")
      ->delimiter(',');
  verify->add_option("-o,--output", ve_o.out,
                     "report file ('-' = stdout); progress goes to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (trees->parsed()) return run_trees(trees_o);
    if (tableau->parsed()) return run_tableau(tab_o);
    if (analyze->parsed()) return run_analyze(an_o);
    if (integrate_cmd->parsed()) return run_integrate(int_o);
    if (drift->parsed()) return run_drift(dr_o);
    if (defect->parsed()) return run_defect_scan(de_o);
    if (verify->parsed()) return run_verify(ve_o);
    return 2;
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const SolverFailure& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
