#include "ighit/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ighit/errors.hpp"
#include "ighit/inverse_process.hpp"
#include "ighit/pde_residuals.hpp"
#include "ighit/serialize.hpp"
#include "ighit/subordinated.hpp"
#include "ighit/subordinators.hpp"
#include "ighit/verify.hpp"

namespace ighit::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

/// Thrown for flag values that parse but are out of range.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_number(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(flag + ": '" + text + "' is not a finite number");
  }
}

/// "a:b:h" (inclusive range) or a comma separated list.
std::vector<double> parse_grid(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw UsageError(flag + ": range must look like start:stop:step");
    const double a = parse_number(parts[0], flag);
    const double b = parse_number(parts[1], flag);
    const double h = parse_number(parts[2], flag);
    if (!(h > 0.0)) throw UsageError(flag + ": range step must be positive");
    if (b < a) throw UsageError(flag + ": range stop is below start");
    const auto n = static_cast<long>(std::floor((b - a) / h + 1e-9));
    if (n > 1000000) throw UsageError(flag + ": range has more than 10^6 points");
    for (long k = 0; k <= n; ++k) out.push_back(a + static_cast<double>(k) * h);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(parse_number(part, flag));
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void require_positive(const std::vector<double>& v, const std::string& flag) {
  for (double x : v) require(x > 0.0, flag + " values must be positive");
}

void require_nonnegative(const std::vector<double>& v, const std::string& flag) {
  for (double x : v) require(x >= 0.0, flag + " values must be nonnegative");
}

struct Common {
  double delta = 1.0;
  double gamma = 1.0;
  std::string t = "1";
  std::string x;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 42;
};

struct Flags {
  Common common;
  std::string q = "1,2";
  std::string s = "1";
  std::string mu_list = "1";
  std::string variable = "time";
  std::string route = "automatic";
  std::string prefactor = "corrected";
  double horizon = 5.0;
  double dt = 1e-3;
  bool svg = false;
  std::string eq = "hitting";
  int refine = 2;
  double step = 0.0;
  double beta = 0.5;
  double mu = 1.0;
  std::vector<std::string> only;
  long mc_samples = 20000;
  std::uint64_t verify_seed = 20240611;
};

void add_params(CLI::App* cmd, Common& c) {
  cmd->add_option("--delta", c.delta, "Level scale delta > 0")->capture_default_str();
  cmd->add_option("--gamma", c.gamma, "Drift gamma >= 0")->capture_default_str();
}

void add_output(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("--out", c.out, "Output file (stdout when omitted)");
}

void validate_params(const Common& c) {
  require(std::isfinite(c.delta) && c.delta > 0.0, "--delta must be positive");
  require(std::isfinite(c.gamma) && c.gamma >= 0.0, "--gamma must be nonnegative");
}

void emit(const Table& table, const std::string& command, const std::string& citation, const Common& c,
          const NumericSpec& spec, const nlohmann::json& parameters, std::ostream& out) {
  std::string text;
  if (c.format == "json") {
    nlohmann::json j{{"tool", "ighit"},     {"version", kVersion},       {"command", command},
                     {"citation", citation}, {"parameters", parameters}, {"seed", c.seed},
                     {"spec", to_json(spec)}, {"table", to_json(table)}};
    text = dump_json(j);
  } else {
    text = to_csv(table);
  }
  if (c.out.empty()) {
    out << text;
  } else {
    atomic_write(c.out, text);
  }
}

nlohmann::json ig_parameters(const Common& c) { return {{"delta", c.delta}, {"gamma", c.gamma}}; }

int cmd_density(const Flags& f, const NumericSpec& spec, std::ostream& out) {
  const Common& c = f.common;
  validate_params(c);
  const auto xs = parse_grid(c.x.empty() ? "0:3:0.1" : c.x, "--x");
  const auto ts = parse_grid(c.t, "--t");
  require_nonnegative(xs, "--x");
  require_positive(ts, "--t");
  HittingDensityEval eval{{c.delta, c.gamma}, spec};
  eval.prefactor = f.prefactor == "printed" ? Prefactor::paper_literal : Prefactor::corrected;
  if (f.route == "real-axis") eval.route = DensityRoute::real_axis;
  if (f.route == "steepest-descent") eval.route = DensityRoute::steepest_descent;
  Table table{{"x", "t", "density"}, {}};
  for (double t : ts)
    for (double x : xs) table.rows.push_back({x, t, hit_pdf_integral(x, t, eval)});
  auto params = ig_parameters(c);
  params["prefactor"] = f.prefactor;
  params["route"] = f.route;
  emit(table, "density", "hitting-time density h(x, t), integral representation", c, spec, params, out);
  return kExitOk;
}

int cmd_cdf(const Flags& f, const NumericSpec& spec, std::ostream& out) {
  const Common& c = f.common;
  validate_params(c);
  const auto xs = parse_grid(c.x.empty() ? "0:3:0.1" : c.x, "--x");
  const auto ts = parse_grid(c.t, "--t");
  require_nonnegative(xs, "--x");
  require_positive(ts, "--t");
  const IGParams p{c.delta, c.gamma};
  Table table{{"x", "t", "cdf", "survival"}, {}};
  for (double t : ts)
    for (double x : xs) table.rows.push_back({x, t, hit_cdf(x, t, p), hit_survival(x, t, p)});
  emit(table, "cdf", "P(H(t) <= x) = P(G(x) >= t) by duality", c, spec, ig_parameters(c), out);
  return kExitOk;
}

int cmd_moments(const Flags& f, const NumericSpec& spec, std::ostream& out) {
  const Common& c = f.common;
  validate_params(c);
  const auto ts = parse_grid(c.t, "--t");
  const auto qs = parse_grid(f.q, "--q");
  require_positive(ts, "--t");
  require_positive(qs, "--q");
  const IGParams p{c.delta, c.gamma};
  Table table{{"t", "q", "moment"}, {}};
  for (double t : ts) {
    for (double q : qs) {
      double m = 0.0;
      if (q == 1.0) {
        m = hit_mean(t, p);
      } else if (q == 2.0) {
        m = hit_second_moment(t, p);
      } else {
        m = hit_moment(q, t, p, spec);
      }
      table.rows.push_back({t, q, m});
    }
  }
  emit(table, "moments", "E H(t)^q; closed forms for q = 1, 2, inverse Laplace of Gamma(1+q)/(s Psi^q) otherwise",
       c, spec, ig_parameters(c), out);
  return kExitOk;
}

int cmd_tail(const Flags& f, const NumericSpec& spec, std::ostream& out) {
  const Common& c = f.common;
  validate_params(c);
  const auto xs = parse_grid(c.x.empty() ? "2:8:0.25" : c.x, "--x");
  const auto ts = parse_grid(c.t, "--t");
  require_positive(xs, "--x");
  require_positive(ts, "--t");
  require(xs.size() >= 5, "--x needs at least 5 points for the tail fit");
  const IGParams p{c.delta, c.gamma};
  Table table{{"x", "t", "survival", "bound", "ratio"}, {}};
  nlohmann::json reports = nlohmann::json::array();
  for (double t : ts) {
    const TailBoundReport rep = tail_report(t, p, xs);
    for (std::size_t i = 0; i < xs.size(); ++i)
      table.rows.push_back({xs[i], t, rep.survival[i], rep.bound_values[i], rep.ratio[i]});
    reports.push_back(to_json(rep));
  }
  auto params = ig_parameters(c);
  params["tail_reports"] = reports;
  emit(table, "tail", "P(H(t) > x) against x^{-1} exp(delta gamma x - x^2 / (4 t))", c, spec, params, out);
  return kExitOk;
}

int cmd_lt(const Flags& f, const NumericSpec& spec, std::ostream& out) {
  const Common& c = f.common;
  validate_params(c);
  const IGParams p{c.delta, c.gamma};
  if (f.variable == "time") {
    const auto xs = parse_grid(c.x.empty() ? "0:3:0.5" : c.x, "--x");
    const auto ss = parse_grid(f.s, "--s");
    require_nonnegative(xs, "--x");
    require_positive(ss, "--s");
    Table table{{"x", "s", "transform"}, {}};
    for (double s : ss)
      for (double x : xs) table.rows.push_back({x, s, hit_lt_time(x, s, p)});
    emit(table, "lt", "time transform (Psi(s) / s) exp(-x Psi(s))", c, spec, ig_parameters(c), out);
    return kExitOk;
  }
  const auto mus = parse_grid(f.mu_list, "--mu");
  const auto ts = parse_grid(c.t, "--t");
  require_positive(ts, "--t");
  for (double m : mus) require(m > c.delta * c.gamma, "--mu must exceed delta * gamma");
  Table table{{"mu", "t", "transform"}, {}};
  for (double t : ts)
    for (double m : mus) table.rows.push_back({m, t, hit_lt_space(m, t, p, spec)});
  emit(table, "lt", "space transform int_0^inf exp(-mu x) h(x, t) dx", c, spec, ig_parameters(c), out);
  return kExitOk;
}

int cmd_paths(const Flags& f, std::ostream& out) {
  const Common& c = f.common;
  validate_params(c);
  require(std::isfinite(f.horizon) && f.horizon > 0.0, "--T must be positive");
  require(std::isfinite(f.dt) && f.dt > 0.0, "--dt must be positive");
  require(f.dt <= f.horizon, "--dt must not exceed --T");
  require(f.horizon / f.dt <= 5e6, "--T / --dt exceeds 5e6 grid points");
  const IGParams p{c.delta, c.gamma};
  const auto model = SubordinatorModel::inverse_gaussian(p);
  Rng rng(c.seed);

  // G on a grid that covers [0, T] and runs until G exceeds T, so H is
  // defined on all of [0, T].
  SamplePath g;
  g.times.push_back(0.0);
  g.values.push_back(0.0);
  for (long k = 1; g.times.back() < f.horizon - 1e-12 || g.values.back() <= f.horizon; ++k) {
    g.values.push_back(g.values.back() + model.sample_increment(f.dt, rng));
    g.times.push_back(static_cast<double>(k) * f.dt);
  }
  const auto n = static_cast<long>(std::llround(f.horizon / f.dt));
  std::vector<double> grid;
  for (long k = 0; k <= n; ++k) grid.push_back(static_cast<double>(k) * f.dt);
  const SamplePath h = invert_path(g, grid);

  const std::filesystem::path dir = c.out.empty() ? std::filesystem::path(".") : std::filesystem::path(c.out);
  std::filesystem::create_directories(dir);
  atomic_write(dir / "g_path.csv", to_csv(path_table(g)));
  atomic_write(dir / "h_path.csv", to_csv(path_table(h)));
  if (f.svg) {
    atomic_write(dir / "g_path.svg",
                 svg_plot({{"G(t)", g.times, g.values, true}}, "IG subordinator path", "t", "G(t)"));
    atomic_write(dir / "h_path.svg", svg_plot({{"H(t)", h.times, h.values, false}}, "hitting-time path", "t", "H(t)"));
  }
  out << "wrote " << (dir / "g_path.csv").string() << " and " << (dir / "h_path.csv").string() << "\n";
  return kExitOk;
}

int cmd_subordinated(const Flags& f, const NumericSpec& spec, std::ostream& out) {
  const Common& c = f.common;
  validate_params(c);
  const auto xs = parse_grid(c.x.empty() ? "-3:3:0.25" : c.x, "--x");
  const auto ts = parse_grid(c.t, "--t");
  require_positive(ts, "--t");
  const SubordinatedEval eval{{c.delta, c.gamma}, spec};
  Table table{{"x", "t", "density"}, {}};
  for (double t : ts)
    for (double x : xs) table.rows.push_back({x, t, sub_pdf(x, t, eval)});
  emit(table, "subordinated", "density of X(t) = B(H(t))", c, spec, ig_parameters(c), out);
  return kExitOk;
}

int cmd_stable(const Flags& f, const NumericSpec& spec, std::ostream& out) {
  const Common& c = f.common;
  require(f.beta > 0.0 && f.beta < 1.0, "--beta must lie in (0, 1)");
  const auto xs = parse_grid(c.x.empty() ? "0:4:0.1" : c.x, "--x");
  const auto ts = parse_grid(c.t, "--t");
  require_nonnegative(xs, "--x");
  require_positive(ts, "--t");
  Table table{{"x", "t", "density", "survival"}, {}};
  for (double t : ts)
    for (double x : xs)
      table.rows.push_back({x, t, stable_hit_pdf(x, t, f.beta, spec), stable_hit_survival(x, t, f.beta, spec)});
  emit(table, "stable", "hitting time of a beta-stable subordinator", c, spec, {{"beta", f.beta}}, out);
  return kExitOk;
}

ResidualGrid default_grid(const std::string& eq) {
  if (eq == "subordinated") return {{0.5, 1.0, 1.5}, {0.5, 1.0}, 0.1, 3, 0.0};
  if (eq == "tempered-stable") return {{0.4, 0.8, 1.2, 1.6}, {0.5, 1.0, 1.5}, 1.0 / 32.0, 3, 0.0};
  if (eq == "frac-subordinated") return {{0.5, 1.0}, {0.5, 1.0}, 1.0 / 32.0, 3, 0.0};
  if (eq.rfind("frac-", 0) == 0) return {{0.5, 1.0, 1.5}, {0.5, 1.0}, 1.0 / 32.0, 3, 0.0};
  return {{0.5, 1.0, 1.5, 2.0, 3.0}, {0.5, 1.0, 2.0}, 1.0 / 32.0, 3, 0.0};
}

int cmd_pde_check(const Flags& f, std::ostream& out) {
  const Common& c = f.common;
  validate_params(c);
  require(f.refine >= 1 && f.refine <= 6, "--refine must be between 1 and 6");
  require(f.step >= 0.0, "--step must be positive");
  const NumericSpec strict = NumericSpec::strict();
  ResidualGrid grid = default_grid(f.eq);
  grid.levels = f.refine + 1;
  if (f.step > 0.0) grid.step = f.step;
  const IGParams p{c.delta, c.gamma};
  ResidualReport rep;
  if (f.eq == "hitting") {
    rep = residual_hitting_pde(HittingDensityEval{p, strict}, grid);
  } else if (f.eq == "ig") {
    rep = residual_ig_pde(p, grid, strict);
  } else if (f.eq == "tempered-stable") {
    const double n = 1.0 / f.beta;
    require(std::fabs(n - 2.0) < 1e-9 || std::fabs(n - 3.0) < 1e-9, "--beta must be 1/2 or 1/3 for tempered-stable");
    require(f.mu >= 0.0, "--mu must be nonnegative");
    rep = residual_ts_pde(static_cast<int>(std::lround(n)), f.mu, grid, strict);
  } else if (f.eq == "subordinated") {
    rep = residual_subordinated(p, grid, strict);
  } else if (f.eq == "frac-hitting") {
    rep = residual_frac_hitting(grid, strict);
  } else if (f.eq == "frac-ig") {
    rep = residual_frac_ig(grid, strict);
  } else if (f.eq == "frac-subordinated") {
    rep = residual_subordinated_frac(grid, strict);
  } else {
    rep = residual_pseudo_lt(p, {0.5, 1.0, 2.0}, {0.5, 1.0, 2.0}, TransformSource::numerical, strict,
                             f.step > 0.0 ? f.step : 1.0 / 16.0, f.refine + 1);
  }
  std::string text;
  if (c.format == "json") {
    nlohmann::json j{{"tool", "ighit"}, {"version", kVersion}, {"command", "pde-check"},
                     {"parameters", ig_parameters(c)}, {"spec", to_json(strict)}, {"report", to_json(rep)}};
    text = dump_json(j);
  } else {
    text = to_csv(residual_table(rep));
  }
  if (c.out.empty()) {
    out << text;
  } else {
    atomic_write(c.out, text);
  }
  return kExitOk;
}

int cmd_verify(const Flags& f, const NumericSpec& spec, std::ostream& out, std::ostream& err) {
  require(f.mc_samples >= 1000, "--mc-samples must be at least 1000");
  VerifyOptions options;
  options.only = f.only;
  options.spec = spec;
  options.seed = f.verify_seed;
  options.mc_samples = f.mc_samples;
  for (const auto& id : f.only) {
    const auto& ids = verification_ids();
    require(std::find(ids.begin(), ids.end(), id) != ids.end(), "--only: unknown id '" + id + "'");
  }
  const VerificationReport report = run_verification(options);
  const std::string text = dump_json(to_json(report));
  if (f.common.out.empty()) {
    out << text;
  } else {
    atomic_write(f.common.out, text);
  }
  for (const auto& r : report.records) err << r.id << ": " << to_string(r.verdict) << "\n";
  if (report.numeric_failure) {
    err << "numeric failure: " << report.failure_message << "\n";
    return kExitNumeric;
  }
  return report.all_passed() ? kExitOk : kExitDisagreement;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hitting times of the inverse Gaussian subordinator: densities, moments, transforms, paths and checks",
               "ighit"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kVersion);
  Flags f;
  Common& c = f.common;
  std::string seed_text;

  auto* density = app.add_subcommand("density", "Hitting-time density h(x, t)");
  auto* cdf = app.add_subcommand("cdf", "Distribution function of H(t)");
  auto* moments = app.add_subcommand("moments", "Moments E H(t)^q");
  auto* tail = app.add_subcommand("tail", "Survival function against the Gaussian-type bound");
  auto* lt = app.add_subcommand("lt", "Laplace transforms of the density in t or in x");
  auto* paths = app.add_subcommand("paths", "Simulate a G path and its inverse H, write g_path.csv and h_path.csv");
  auto* subordinated = app.add_subcommand("subordinated", "Density of B(H(t))");
  auto* pde = app.add_subcommand("pde-check", "Finite-difference residual of a PDE under grid refinement");
  auto* stable = app.add_subcommand("stable", "Hitting time of a beta-stable subordinator");
  auto* verify = app.add_subcommand("verify", "Run the oracle battery and write a JSON report");

  for (auto* cmd : {density, cdf, moments, tail, lt, subordinated}) {
    add_params(cmd, c);
    add_output(cmd, c);
    cmd->add_option("--t", c.t, "Time value, list a,b,c or range start:stop:step")->capture_default_str();
  }
  for (auto* cmd : {density, cdf, tail, subordinated})
    cmd->add_option("--x", c.x, "Space grid start:stop:step or list");
  density->add_option("--route", f.route, "Quadrature route")
      ->check(CLI::IsMember({"automatic", "real-axis", "steepest-descent"}))
      ->capture_default_str();
  density->add_option("--prefactor", f.prefactor, "Exponential prefactor variant")
      ->check(CLI::IsMember({"corrected", "printed"}))
      ->capture_default_str();
  moments->add_option("--q", f.q, "Moment orders, list or range")->capture_default_str();
  lt->add_option("--variable", f.variable, "Transform variable")
      ->check(CLI::IsMember({"time", "space"}))
      ->capture_default_str();
  lt->add_option("--x", c.x, "Space grid for --variable time");
  lt->add_option("--s", f.s, "Transform arguments for --variable time")->capture_default_str();
  lt->add_option("--mu", f.mu_list, "Transform arguments for --variable space")->capture_default_str();

  add_params(paths, c);
  paths->add_option("--T", f.horizon, "Horizon")->capture_default_str();
  paths->add_option("--dt", f.dt, "Grid step")->capture_default_str();
  paths->add_option("--seed", seed_text, "Random seed (default 42)");
  paths->add_option("--out", c.out, "Output directory (default .)");
  paths->add_flag("--svg", f.svg, "Also write g_path.svg and h_path.svg");

  add_params(pde, c);
  add_output(pde, c);
  pde->add_option("--eq", f.eq, "Equation")
      ->check(CLI::IsMember({"hitting", "ig", "tempered-stable", "subordinated", "frac-hitting", "frac-ig",
                             "frac-subordinated", "pseudo-lt"}))
      ->capture_default_str();
  pde->add_option("--refine", f.refine, "Number of step halvings")->capture_default_str();
  pde->add_option("--step", f.step, "Coarsest stencil step (equation default when omitted)");
  pde->add_option("--beta", f.beta, "Stability index, 1/2 or 1/3 (tempered-stable)")->capture_default_str();
  pde->add_option("--mu", f.mu, "Tempering parameter (tempered-stable)")->capture_default_str();

  add_output(stable, c);
  stable->add_option("--beta", f.beta, "Stability index in (0, 1)")->capture_default_str();
  stable->add_option("--t", c.t, "Time value, list or range")->capture_default_str();
  stable->add_option("--x", c.x, "Space grid start:stop:step or list");

  verify->add_option("--only", f.only, "Record ids to run")->delimiter(',');
  verify->add_option("--mc-samples", f.mc_samples, "Monte Carlo sample count")->capture_default_str();
  verify->add_option("--seed", seed_text, "Random seed (default 20240611)");
  verify->add_option("--out", c.out, "Report file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!seed_text.empty()) {
      require(seed_text.find_first_not_of("0123456789") == std::string::npos && seed_text.size() <= 19,
              "--seed must be a nonnegative integer");
      const auto seed = static_cast<std::uint64_t>(std::stoull(seed_text));
      c.seed = seed;
      f.verify_seed = seed;
    }
    const NumericSpec spec = NumericSpec::from_environment();
    if (*density) return cmd_density(f, spec, out);
    if (*cdf) return cmd_cdf(f, spec, out);
    if (*moments) return cmd_moments(f, spec, out);
    if (*tail) return cmd_tail(f, spec, out);
    if (*lt) return cmd_lt(f, spec, out);
    if (*paths) return cmd_paths(f, out);
    if (*subordinated) return cmd_subordinated(f, spec, out);
    if (*pde) return cmd_pde_check(f, out);
    if (*stable) return cmd_stable(f, spec, out);
    return cmd_verify(f, spec, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NonConvergence& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const NumericalInstability& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const BudgetExceeded& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDisagreement;
  }
}

}  // namespace ighit::cli
