#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/csv.hpp"
#include "curved_nbody/format.hpp"
#include "parallel.hpp"

namespace curved_nbody::cli {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << content;
  if (!f) throw ConfigError("failed writing '" + path + "'");
}

std::string stem(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

std::vector<std::string> header_block(const std::string& command, const json& echo) {
  return {std::string("curved-nbody ") + kVersion, "command: " + command, "config: " + echo.dump()};
}

json num(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

json drift_json(const DriftReport& d) {
  json j = {{"max_constraint_drift", num(d.max_constraint_drift)},
            {"max_constraint_drift_ulps", num(d.max_constraint_drift_ulps)},
            {"max_tangency_drift", num(d.max_tangency_drift)},
            {"max_energy_drift_rel", num(d.max_energy_drift_rel)},
            {"steps_accepted", d.steps_accepted},
            {"steps_rejected", d.steps_rejected}};
  json m = json::object();
  for (const auto& [k, v] : d.max_momentum_drift_abs) m[k] = num(v);
  j["max_momentum_drift_abs"] = m;
  if (d.singular_termination) {
    const SingularEvent& e = *d.singular_termination;
    j["singular_termination"] = {
        {"time", e.time}, {"i", e.i + 1}, {"j", e.j + 1}, {"kind", to_string(e.kind)}};
  } else {
    j["singular_termination"] = nullptr;
  }
  return j;
}

std::string or_default(const std::string& cli, const std::string& cfg, const std::string& fallback) {
  if (!cli.empty()) return cli;
  if (!cfg.empty()) return cfg;
  return fallback;
}

}  // namespace

std::string diagnostics_path(const std::string& out) { return stem(out) + ".diagnostics.json"; }
std::string summary_path(const std::string& out) { return stem(out) + ".txt"; }

// --- simulate ----------------------------------------------------------------------

int cmd_simulate(const SimulateConfig& cfg, const std::string& out_arg, std::ostream& log) {
  const std::string out = or_default(out_arg, cfg.out, "trajectory.csv");
  SystemState start;
  if (cfg.state) {
    start = *cfg.state;
  } else {
    start = initial_state(*cfg.family).state;
    require_nonsingular(start);
  }
  if (cfg.t_end < start.time) throw ConfigError("t_end precedes the initial time");

  Trajectory traj;
  try {
    traj = integrate(start, cfg.t_end, cfg.integrator);
  } catch (const StepUnderflow& e) {
    log << "integrator failure: " << e.what() << '\n';
    return kIntegratorFailure;
  } catch (const MaxStepsExceeded& e) {
    log << "integrator failure: " << e.what() << '\n';
    return kIntegratorFailure;
  }

  const auto header = header_block("simulate", cfg.echo);
  write_file(out, to_csv(trajectory_table(traj.samples, header)));

  json samples = json::array();
  for (const Sample& s : traj.samples) {
    json mom = json::object();
    for (const auto& [k, v] : angular_momentum(s.state)) mom[k] = v;
    json ip = json::object();
    for (const auto& [k, v] : mutual_inner_products(s.state)) ip[k] = v;
    samples.push_back({{"t", s.time},
                       {"energy", num(total_energy(s.state, 0.0))},
                       {"kinetic", kinetic_energy(s.state)},
                       {"momenta", mom},
                       {"inner_products", ip}});
  }
  const json diag = {{"tool", "curved-nbody"},
                     {"version", kVersion},
                     {"config", cfg.echo},
                     {"diagnostics", drift_json(traj.diagnostics)},
                     {"samples", samples}};
  write_file(diagnostics_path(out), diag.dump(2) + "\n");

  std::ostringstream sum;
  const DriftReport& d = traj.diagnostics;
  sum << "curved-nbody " << kVersion << " simulate\n"
      << "space: " << start.space.name() << ", bodies: " << start.size() << '\n'
      << "interval: [" << format_double(start.time) << ", "
      << format_double(traj.samples.back().time) << "], samples: " << traj.samples.size() << '\n'
      << "steps: " << d.steps_accepted << " accepted, " << d.steps_rejected << " rejected\n"
      << "max constraint drift: " << brief(d.max_constraint_drift) << " ("
      << brief(d.max_constraint_drift_ulps) << " ulp)\n"
      << "max relative energy drift: " << brief(d.max_energy_drift_rel) << '\n';
  if (d.singular_termination) {
    const SingularEvent& e = *d.singular_termination;
    sum << "singular termination at t = " << format_double(e.time) << ": pair (" << e.i + 1 << ", "
        << e.j + 1 << ") " << to_string(e.kind) << '\n';
  }
  sum << "trajectory: " << out << "\ndiagnostics: " << diagnostics_path(out) << '\n';
  write_file(summary_path(out), sum.str());
  log << sum.str();
  return d.singular_termination ? kSingular : kOk;
}

// --- verify ------------------------------------------------------------------------

int cmd_verify(const VerifyConfig& cfg, const std::string& out_arg, std::ostream& log) {
  const std::string out = or_default(out_arg, cfg.out, to_string(cfg.theorem) + ".json");
  VerificationReport rep;
  try {
    rep = run_theorem(cfg.theorem, cfg.grid, cfg.tolerances, cfg.options);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  json doc = rep.to_json();
  doc["tool"] = "curved-nbody";
  doc["version"] = kVersion;
  doc["config"] = cfg.echo;
  write_file(out, doc.dump(2) + "\n");
  const std::string text = std::string("curved-nbody ") + kVersion + " verify\n" + rep.summary() +
                           "report: " + out + "\n";
  write_file(summary_path(out), text);
  log << text;
  switch (rep.status) {
    case Status::Confirmed: return kOk;
    case Status::Violated: return kViolated;
    case Status::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

// --- scan --------------------------------------------------------------------------

namespace {

struct ScanPlan {
  std::vector<std::string> axes;
  std::function<bool(const std::vector<double>&)> excluded;
  std::function<double(const std::vector<double>&)> value;
};

ScanPlan plan_for(const ScanConfig& c) {
  const ScanGrid& g = c.grid;
  ScanPlan p;
  for (const ParamRange& r : g.ranges) p.axes.push_back(r.name);
  auto idx = [&](const std::string& n) {
    for (std::size_t k = 0; k < p.axes.size(); ++k)
      if (p.axes[k] == n) return k;
    throw ConfigError("grid has no range '" + n + "'");
  };
  p.excluded = [](const std::vector<double>&) { return false; };
  switch (c.expr) {
    case ScanExpr::DetA: {
      const auto ia = idx("alpha"), ib = idx("beta");
      const double m1 = g.margin("beta_minus_alpha_ne_pi"), m2 = g.margin("sin_alpha_plus_beta_ne_0");
      p.excluded = [=](const std::vector<double>& x) {
        return std::abs(x[ib] - x[ia] - std::numbers::pi) < m1 || std::abs(std::sin(x[ia] + x[ib])) < m2;
      };
      p.value = [=](const std::vector<double>& x) { return det_A_cartesian(x[ia], x[ib]); };
      break;
    }
    case ScanExpr::Releq2dMismatch: {
      const auto ia = idx("alpha");
      const double r = g.value("r"), m = g.value("m");
      const double s = g.value("sigma");
      if (s != 1.0 && s != -1.0) throw ConfigError("sigma must be 1 or -1");
      p.value = [=](const std::vector<double>& x) {
        return releq_2d_mismatch(x[ia], r, static_cast<int>(s), m);
      };
      break;
    }
    case ScanExpr::PeIdentity: {
      const auto it = idx("theta");
      const double z = g.value("z"), gm = g.value("gamma"), m = g.value("m");
      p.value = [=](const std::vector<double>& x) { return pe_identity_residual(x[it], z, gm, m); };
      break;
    }
    case ScanExpr::NeIdentity: {
      const auto it = idx("theta");
      const double y = g.value("y"), gm = g.value("gamma"), m = g.value("m");
      const double band = g.margin("theta_ne_0");
      p.excluded = [=](const std::vector<double>& x) { return std::abs(x[it]) < band; };
      p.value = [=](const std::vector<double>& x) { return ne_identity_residual(x[it], y, gm, m); };
      break;
    }
    case ScanExpr::NhIdentity:
    case ScanExpr::NehIdentity: {
      const bool neh = c.expr == ScanExpr::NehIdentity;
      const auto ip = idx("phi"), iq = idx(neh ? "r" : "eta");
      const double m = g.value("m"), band = g.margin("phi_ne_0");
      const Reading rd = c.reading;
      p.excluded = [=](const std::vector<double>& x) { return std::abs(x[ip]) < band; };
      p.value = [=](const std::vector<double>& x) {
        return neh ? neh_identity_residual(x[ip], x[iq], m, rd) : nh_identity_residual(x[ip], x[iq], m, rd);
      };
      break;
    }
  }
  return p;
}

}  // namespace

int cmd_scan(const ScanConfig& cfg, const std::string& out_arg, std::ostream& log) {
  const std::string out = or_default(out_arg, cfg.out, to_string(cfg.expr) + ".csv");
  const ScanPlan plan = plan_for(cfg);
  std::vector<std::vector<double>> axes;
  std::size_t total = 1;
  for (const ParamRange& r : cfg.grid.ranges) {
    axes.push_back(r.points());
    total *= axes.back().size();
  }
  if (total == 0) throw ConfigError("empty scan grid");

  // Row-major over the ranges in their declared order.
  std::vector<std::vector<double>> rows(total);
  std::vector<char> keep(total, 0);
  std::vector<std::string> failure(total);
  detail::parallel_for(total, [&](std::size_t flat) {
    std::vector<double> x(axes.size());
    std::size_t rem = flat;
    for (std::size_t k = axes.size(); k-- > 0;) {
      x[k] = axes[k][rem % axes[k].size()];
      rem /= axes[k].size();
    }
    if (plan.excluded(x)) return;
    try {
      const double v = plan.value(x);
      x.push_back(v);
      rows[flat] = std::move(x);
      keep[flat] = 1;
    } catch (const Error& e) {
      failure[flat] = e.what();
    }
  });
  for (std::size_t k = 0; k < total; ++k)
    if (!failure[k].empty()) throw ConfigError("scan point " + std::to_string(k) + ": " + failure[k]);

  CsvTable t;
  t.header = header_block("scan", cfg.echo);
  t.header.push_back("grid: " + cfg.grid.to_json().dump());
  t.columns = plan.axes;
  t.columns.push_back("value");
  double vmin = INFINITY, vmax = -INFINITY;
  for (std::size_t k = 0; k < total; ++k)
    if (keep[k]) {
      vmin = std::min(vmin, rows[k].back());
      vmax = std::max(vmax, rows[k].back());
      t.rows.push_back(std::move(rows[k]));
    }
  const std::size_t excluded = total - t.rows.size();
  t.header.push_back("points: " + std::to_string(total) + ", excluded: " + std::to_string(excluded));
  write_file(out, to_csv(t));
  log << "scan " << to_string(cfg.expr) << ": " << t.rows.size() << " rows (" << excluded
      << " excluded), value range [" << brief(vmin) << ", " << brief(vmax) << "] -> " << out << '\n';
  return kOk;
}

// --- reduced -------------------------------------------------------------------------

int cmd_reduced(const ReducedConfig& cfg, const std::string& out_arg, std::ostream& log) {
  const bool pe = cfg.family == ReducedFamily::PositiveElliptic;
  const std::string out = or_default(out_arg, cfg.out, pe ? "reduced_pe.csv" : "reduced_ne.csv");
  double q0 = 0.0, nu0 = 0.0;
  ReducedSystem sys{};
  try {
    if (pe) {
      const auto& p = std::get<PositiveElliptic>(cfg.params);
      q0 = p.z0;
      nu0 = p.nu0;
      sys = ReducedSystem::positive_elliptic(p);
    } else {
      const auto& p = std::get<NegativeElliptic>(cfg.params);
      q0 = p.y0;
      nu0 = p.nu0;
      sys = ReducedSystem::negative_elliptic(p);
    }
  } catch (const Error& e) {
    throw ConfigError(std::string("initial data: ") + e.what());
  }
  if (!sys.admissible(q0))
    throw ConfigError(std::string("initial ") + (pe ? "z0" : "y0") + " = " + format_double(q0) +
                      " is outside the admissible region");

  ReducedRun run;
  try {
    run = integrate_reduced_run(sys, q0, nu0, cfg.t_end, cfg.integrator);
  } catch (const StepUnderflow& e) {
    log << "integrator failure: " << e.what() << '\n';
    return kIntegratorFailure;
  } catch (const MaxStepsExceeded& e) {
    log << "integrator failure: " << e.what() << '\n';
    return kIntegratorFailure;
  }

  CsvTable t;
  t.header = header_block("reduced", cfg.echo);
  t.header.push_back(std::string("energy: ") + format_double(sys.energy));
  t.columns = {"t", pe ? "z" : "y", "nu", "alpha"};
  double eom = 0.0;
  for (const ReducedSample& s : run.samples) {
    t.rows.push_back({s.time, s.q, s.nu, s.alpha});
    const LiftedState ls = sys.lift(s.q, s.nu, s.alpha);
    eom = std::max(eom, eom_residual(ls.state, sys.lifted_acceleration(s.q, s.nu, s.alpha), 0.0));
  }
  const auto period = period_estimate(run.samples);
  if (run.domain_exit) t.header.push_back("domain exit: " + *run.domain_exit);
  write_file(out, to_csv(t));

  std::ostringstream sum;
  sum << "reduced " << (pe ? "pe" : "ne") << ": samples=" << run.samples.size()
      << " period=" << (period ? format_double(*period) : std::string("none"))
      << " max_lifted_eom_residual=" << brief(eom) << '\n';
  if (run.domain_exit) sum << "domain exit: " << *run.domain_exit << '\n';
  write_file(summary_path(out), sum.str());
  log << sum.str();
  return run.domain_exit ? kSingular : kOk;
}

// --- entry point -------------------------------------------------------------------

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curved N-body simulator and theorem checker"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path, out_path, seed, theorem, expr, family, reading;
  std::vector<std::string> grid, tol;

  auto* sim = app.add_subcommand("simulate", "Integrate a family member or a raw state");
  sim->add_option("--config", config_path, "JSON run configuration");
  sim->add_option("--out", out_path, "Trajectory CSV path");
  auto* seed_opt = sim->add_option("--seed-family", seed, "Start from a built-in family member");

  auto* ver = app.add_subcommand("verify", "Check one theorem (T1..T7)");
  auto* thm_opt = ver->add_option("theorem", theorem, "T1..T7");
  ver->add_option("--config", config_path, "JSON run configuration");
  ver->add_option("--out", out_path, "Report JSON path");
  ver->add_option("--grid", grid, "name=lo:hi:steps,name=value,...");
  ver->add_option("--tol", tol, "name=value,...");
  auto* ver_reading = ver->add_option("--reading", reading, "cosh-inside or cos-inside");

  auto* scan = app.add_subcommand("scan", "Evaluate an expression on a grid");
  auto* expr_opt = scan->add_option("expression", expr,
                                    "detA, releq2d_mismatch, pe_identity, ne_identity, nh_identity, neh_identity");
  scan->add_option("--config", config_path, "JSON run configuration");
  scan->add_option("--out", out_path, "CSV path");
  scan->add_option("--grid", grid, "name=lo:hi:steps,name=value,...");
  auto* scan_reading = scan->add_option("--reading", reading, "cosh-inside or cos-inside");

  auto* red = app.add_subcommand("reduced", "Integrate a reduced rotopulsator system");
  auto* fam_opt = red->add_option("family", family, "pe or ne");
  red->add_option("--config", config_path, "JSON run configuration");
  red->add_option("--out", out_path, "CSV path");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();  // program name
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kConfigError;
  }

  auto opt = [](CLI::Option* o, const std::string& v) {
    return o->count() ? std::optional<std::string>(v) : std::nullopt;
  };
  std::vector<std::string> grid_items, tol_items;
  for (const std::string& g : grid)
    for (const std::string& s : split_overrides(g)) grid_items.push_back(s);
  for (const std::string& g : tol)
    for (const std::string& s : split_overrides(g)) tol_items.push_back(s);

  try {
    const json doc = config_path.empty() ? json::object() : load_config(config_path);
    if (sim->parsed()) return cmd_simulate(parse_simulate(doc, opt(seed_opt, seed)), out_path, out);
    if (ver->parsed())
      return cmd_verify(parse_verify(doc, opt(thm_opt, theorem), grid_items, tol_items,
                                     opt(ver_reading, reading)),
                        out_path, out);
    if (scan->parsed())
      return cmd_scan(parse_scan(doc, opt(expr_opt, expr), grid_items, opt(scan_reading, reading)),
                      out_path, out);
    if (red->parsed()) return cmd_reduced(parse_reduced(doc, opt(fam_opt, family)), out_path, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const SingularPair& e) {
    err << "config error: initial state has a " << e.what() << '\n';
    return kConfigError;
  } catch (const AntipodalConfiguration& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainExit& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "integrator failure: " << e.what() << '\n';
    return kIntegratorFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIntegratorFailure;
  }
  return kConfigError;
}

}  // namespace curved_nbody::cli
