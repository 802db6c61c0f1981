#include "curved_nbody/integrator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "curved_nbody/format.hpp"
#include "ode.hpp"

namespace curved_nbody {

using detail::Flat;

std::string to_string(Method m) {
  return m == Method::RK4Fixed ? "rk4_fixed" : "rk45_adaptive";
}

Method parse_method(const std::string& s) {
  std::string t;
  for (char ch : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (t == "rk4_fixed" || t == "rk4") return Method::RK4Fixed;
  if (t == "rk45_adaptive" || t == "rk45") return Method::RK45Adaptive;
  throw InvalidArgument("unknown integration method '" + s + "'");
}

void IntegratorConfig::validate() const {
  if (!(dt_initial > 0.0) || !std::isfinite(dt_initial))
    throw InvalidArgument("dt_initial must be positive");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw InvalidArgument("tolerances must be positive");
  if (max_steps <= 0) throw InvalidArgument("max_steps must be positive");
  if (!(sample_dt >= 0.0)) throw InvalidArgument("sample_dt must be >= 0");
}

namespace {

Flat pack(const SystemState& s) {
  const int dim = s.space.ambient_dim();
  Flat y;
  y.reserve(static_cast<std::size_t>(2 * dim * s.size()));
  for (const Body& b : s.bodies)
    for (int k = 0; k < dim; ++k) y.push_back(b.position[k]);
  for (const Body& b : s.bodies)
    for (int k = 0; k < dim; ++k) y.push_back(b.velocity[k]);
  return y;
}

void unpack(const Flat& y, SystemState& s) {
  const int dim = s.space.ambient_dim();
  const std::size_t half = static_cast<std::size_t>(dim * s.size());
  for (int i = 0; i < s.size(); ++i)
    for (int k = 0; k < dim; ++k) {
      s.bodies[i].position[k] = y[static_cast<std::size_t>(i * dim + k)];
      s.bodies[i].velocity[k] = y[half + static_cast<std::size_t>(i * dim + k)];
    }
}

bool reached(double t, double t_end, double interval) {
  return t_end - t <= 1e-12 * interval;
}

// Drift bookkeeping shared by every accepted state.
struct DriftTracker {
  double e0;
  MomentumMap c0;
  DriftReport report;

  explicit DriftTracker(const SystemState& s)
      : e0(total_energy(s, 0.0)), c0(angular_momentum(s)) {
    for (const auto& [k, v] : c0) report.max_momentum_drift_abs[k] = 0.0;
    observe(s);
  }

  void observe(const SystemState& s) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (const Body& b : s.bodies) {
      const double drift = std::abs(constraint_residual(b.position, s.space));
      report.max_constraint_drift = std::max(report.max_constraint_drift, drift);
      report.max_constraint_drift_ulps =
          std::max(report.max_constraint_drift_ulps, drift / (eps * euclidean_norm2(b.position)));
      report.max_tangency_drift =
          std::max(report.max_tangency_drift, std::abs(inner(b.position, b.velocity, s.space)));
    }
    const double e = total_energy(s, 0.0);
    const double de = std::abs(e - e0) / (std::abs(e0) < 1e-12 ? 1.0 : std::abs(e0));
    report.max_energy_drift_rel = std::max(report.max_energy_drift_rel, de);
    for (const auto& [k, v] : angular_momentum(s)) {
      double& slot = report.max_momentum_drift_abs[k];
      slot = std::max(slot, std::abs(v - c0.at(k)));
    }
  }
};

}  // namespace

Trajectory integrate(const SystemState& state, double t_end, const IntegratorConfig& cfg) {
  cfg.validate();
  if (state.size() < 2) throw InvalidArgument("a system needs at least two bodies");
  require_nonsingular(state);
  const double t0 = state.time;
  if (!std::isfinite(t_end)) throw InvalidArgument("t_end must be finite");
  const double tiny = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t0));
  if (t_end < t0 - tiny) throw InvalidArgument("t_end must not precede the state time");

  Trajectory traj;
  traj.samples.push_back({t0, state});
  DriftTracker drift(state);
  if (t_end - t0 <= tiny) {
    traj.diagnostics = drift.report;
    return traj;
  }

  const double interval = t_end - t0;
  const double h_underflow = 1e-14 * interval;
  const double h_guard_min = 1e-12 * interval;
  const bool adaptive = cfg.method == Method::RK45Adaptive;

  SystemState work = state;
  auto rhs = [&work](double, const Flat& y, Flat& dy) {
    unpack(y, work);
    const std::vector<Vec> acc = acceleration(work, 0.0);
    const int dim = work.space.ambient_dim();
    const std::size_t half = y.size() / 2;
    for (std::size_t i = 0; i < half; ++i) dy[i] = y[half + i];
    for (int i = 0; i < work.size(); ++i)
      for (int k = 0; k < dim; ++k) dy[half + static_cast<std::size_t>(i * dim + k)] = acc[i][k];
  };

  SystemState current = state;
  Flat y = pack(current);
  double t = t0;
  double h_ctrl = std::min(cfg.dt_initial, interval);
  long sample_index = 1;
  auto next_sample = [&]() {
    if (cfg.sample_dt <= 0.0) return t_end;
    return std::min(t_end, t0 + static_cast<double>(sample_index) * cfg.sample_dt);
  };
  double previous_base = min_pair_base(current).base;
  long attempts = 0;

  while (!reached(t, t_end, interval)) {
    if (++attempts > cfg.max_steps)
      throw MaxStepsExceeded("integration exceeded " + std::to_string(cfg.max_steps) + " steps");
    const double target = next_sample();
    const bool clamped = h_ctrl >= target - t;
    const double h = clamped ? target - t : h_ctrl;

    auto reject = [&](double factor) {
      ++drift.report.steps_rejected;
      h_ctrl = h * factor;
      if (h_ctrl < h_underflow)
        throw StepUnderflow("step size fell below " + brief(h_underflow) + " at t = " +
                            brief(t));
    };

    Flat proposed;
    double err = 0.0;
    try {
      if (adaptive) {
        detail::EmbeddedStep st = detail::dopri_step(rhs, t, y, h, cfg.abs_tol, cfg.rel_tol);
        proposed = std::move(st.y);
        err = st.error;
      } else {
        proposed = detail::rk4_step(rhs, t, y, h);
      }
    } catch (const SingularPair&) {
      reject(0.5);
      continue;
    }
    bool finite = true;
    for (double v : proposed) finite = finite && std::isfinite(v);
    if (!finite) {
      reject(0.5);
      continue;
    }
    if (adaptive && err > 1.0) {
      reject(detail::step_factor(err));
      continue;
    }

    SystemState next = current;
    unpack(proposed, next);
    next.time = clamped ? target : t + h;
    if (cfg.project_each_step) {
      try {
        for (Body& b : next.bodies) {
          PhaseState ps = project_state(b.position, b.velocity, next.space);
          b.position = ps.position;
          b.velocity = ps.velocity;
        }
      } catch (const DegeneratePoint&) {
        reject(0.5);
        continue;
      }
    }

    const PairBase pb = min_pair_base(next);
    if (pb.base < kGuardTerminate) {
      const double x = inner(next.bodies[pb.i].position, next.bodies[pb.j].position, next.space);
      const PairKind kind = next.space.sigma() > 0 && x < 0.0 ? PairKind::Antipodal
                                                               : PairKind::Collision;
      drift.report.singular_termination = SingularEvent{next.time, pb.i, pb.j, kind};
      break;
    }
    if (pb.base < kGuardReject && previous_base >= kGuardReject && h > h_guard_min) {
      reject(0.5);
      continue;
    }

    ++drift.report.steps_accepted;
    t = next.time;
    current = std::move(next);
    y = pack(current);
    previous_base = pb.base;
    drift.observe(current);
    if (adaptive)
      h_ctrl = clamped ? std::max(h_ctrl, h * detail::step_factor(err)) : h * detail::step_factor(err);

    if (cfg.sample_dt <= 0.0 || clamped || reached(t, t_end, interval)) {
      if (clamped && cfg.sample_dt > 0.0) ++sample_index;
      traj.samples.push_back({t, current});
    }
  }
  if (traj.samples.back().time != current.time) traj.samples.push_back({current.time, current});
  traj.diagnostics = drift.report;
  return traj;
}

// --- reduced systems ----------------------------------------------------------

namespace {
constexpr double kDomainTol = 1e-9;
}

ReducedSystem ReducedSystem::positive_elliptic(const PositiveElliptic& p) {
  validate(p);
  return {ReducedFamily::PositiveElliptic, p, pe_energy(p, p.z0, p.nu0)};
}

ReducedSystem ReducedSystem::negative_elliptic(const NegativeElliptic& p) {
  validate(p);
  return {ReducedFamily::NegativeElliptic, p, ne_energy(p, p.y0, p.nu0)};
}

bool ReducedSystem::admissible(double q) const {
  if (!std::isfinite(q)) return false;
  if (family == ReducedFamily::PositiveElliptic) {
    const auto& p = std::get<PositiveElliptic>(params);
    return 1.0 - (p.gamma * p.gamma + 1.0) * q * q > kDomainTol;
  }
  const auto& p = std::get<NegativeElliptic>(params);
  return p.gamma * q > 0.0 && (p.gamma * p.gamma - 1.0) * q * q - 1.0 > kDomainTol;
}

void ReducedSystem::require_admissible(double q, double time) const {
  if (admissible(q)) return;
  if (family == ReducedFamily::PositiveElliptic)
    throw DomainExit("positive elliptic: 1 - delta z^2 must exceed " + brief(kDomainTol) + ", z = " + brief(q),
                     time);
  throw DomainExit("negative elliptic: r^2 = z^2 - y^2 - 1 must exceed " + brief(kDomainTol) +
                       " with gamma y > 0, y = " + brief(q),
                   time);
}

double ReducedSystem::acceleration(double q, double nu) const {
  if (family == ReducedFamily::PositiveElliptic)
    return pe_force_factor_energy(std::get<PositiveElliptic>(params), energy, q) * q;
  return ne_force_factor(std::get<NegativeElliptic>(params), q, nu) * q;
}

double ReducedSystem::angular_rate(double q) const {
  if (family == ReducedFamily::PositiveElliptic) {
    const auto& p = std::get<PositiveElliptic>(params);
    return p.c_wx / (4.0 * p.m * (1.0 - (p.gamma * p.gamma + 1.0) * q * q));
  }
  const auto& p = std::get<NegativeElliptic>(params);
  return p.b_wx / (4.0 * p.m * ((p.gamma * p.gamma - 1.0) * q * q - 1.0));
}

LiftedState ReducedSystem::lift(double q, double nu, double alpha) const {
  if (family == ReducedFamily::PositiveElliptic)
    return lift_positive_elliptic(std::get<PositiveElliptic>(params), q, nu, alpha);
  return lift_negative_elliptic(std::get<NegativeElliptic>(params), q, nu, alpha);
}

std::vector<Vec> ReducedSystem::lifted_acceleration(double q, double nu, double alpha) const {
  const double nu_dot = acceleration(q, nu);
  if (family == ReducedFamily::PositiveElliptic)
    return positive_elliptic_acceleration(std::get<PositiveElliptic>(params), q, nu, alpha, nu_dot);
  return negative_elliptic_acceleration(std::get<NegativeElliptic>(params), q, nu, alpha, nu_dot);
}

ReducedRun integrate_reduced_run(const ReducedSystem& sys, double q0, double nu0, double t_end,
                                 const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw InvalidArgument("t_end must be finite and >= 0");
  ReducedRun run;
  if (!sys.admissible(q0)) {
    try {
      sys.require_admissible(q0, 0.0);
    } catch (const DomainExit& e) {
      run.domain_exit = e.what();
    }
    return run;
  }
  const double alpha0 = sys.family == ReducedFamily::PositiveElliptic
                            ? std::get<PositiveElliptic>(sys.params).alpha0
                            : std::get<NegativeElliptic>(sys.params).alpha0;
  run.samples.push_back({0.0, q0, nu0, alpha0});
  if (t_end == 0.0) return run;

  struct OutOfDomain {};
  auto rhs = [&sys](double, const Flat& y, Flat& dy) {
    if (!sys.admissible(y[0])) throw OutOfDomain{};
    dy[0] = y[1];
    dy[1] = sys.acceleration(y[0], y[1]);
    dy[2] = sys.angular_rate(y[0]);
  };

  const bool adaptive = cfg.method == Method::RK45Adaptive;
  const double h_underflow = 1e-14 * t_end;
  Flat y{q0, nu0, alpha0};
  double t = 0.0;
  double h_ctrl = std::min(cfg.dt_initial, t_end);
  long sample_index = 1;
  long attempts = 0;
  while (!reached(t, t_end, t_end)) {
    if (++attempts > cfg.max_steps)
      throw MaxStepsExceeded("reduced integration exceeded " + std::to_string(cfg.max_steps) +
                             " steps");
    const double target = cfg.sample_dt > 0.0
                              ? std::min(t_end, static_cast<double>(sample_index) * cfg.sample_dt)
                              : t_end;
    const bool clamped = h_ctrl >= target - t;
    const double h = clamped ? target - t : h_ctrl;
    Flat proposed;
    double err = 0.0;
    bool ok = true;
    try {
      if (adaptive) {
        detail::EmbeddedStep st = detail::dopri_step(rhs, t, y, h, cfg.abs_tol, cfg.rel_tol);
        proposed = std::move(st.y);
        err = st.error;
      } else {
        proposed = detail::rk4_step(rhs, t, y, h);
      }
      ok = sys.admissible(proposed[0]) && std::isfinite(proposed[1]) && std::isfinite(proposed[2]);
    } catch (const OutOfDomain&) {
      ok = false;
    }
    if (!ok) {
      h_ctrl = 0.5 * h;
      if (h_ctrl < h_underflow) {
        const bool pe = sys.family == ReducedFamily::PositiveElliptic;
        run.domain_exit = std::string(pe ? "positive elliptic: left the admissible region after z = "
                                         : "negative elliptic: left the admissible region after y = ") +
                          brief(y[0]) +
                          "; last valid sample at t = " + brief(t);
        break;
      }
      continue;
    }
    if (adaptive && err > 1.0) {
      h_ctrl = h * detail::step_factor(err);
      if (h_ctrl < h_underflow)
        throw StepUnderflow("reduced step size fell below " + brief(h_underflow));
      continue;
    }
    t = clamped ? target : t + h;
    y = std::move(proposed);
    if (adaptive)
      h_ctrl = clamped ? std::max(h_ctrl, h * detail::step_factor(err)) : h * detail::step_factor(err);
    if (cfg.sample_dt <= 0.0 || clamped || reached(t, t_end, t_end)) {
      if (clamped && cfg.sample_dt > 0.0) ++sample_index;
      run.samples.push_back({t, y[0], y[1], y[2]});
    }
  }
  return run;
}

std::vector<ReducedSample> integrate_reduced(const ReducedSystem& sys, double q0, double nu0,
                                             double t_end, const IntegratorConfig& cfg) {
  ReducedRun run = integrate_reduced_run(sys, q0, nu0, t_end, cfg);
  if (run.domain_exit) {
    const double when = run.samples.empty() ? 0.0 : run.samples.back().time;
    throw DomainExit(*run.domain_exit, when);
  }
  return std::move(run.samples);
}

std::optional<double> period_estimate(const std::vector<ReducedSample>& samples) {
  double peak = 0.0;
  for (const ReducedSample& s : samples) peak = std::max(peak, std::abs(s.nu));
  if (peak <= 1e-9) return std::nullopt;

  std::vector<double> up, down;
  const ReducedSample* prev = nullptr;
  for (const ReducedSample& s : samples) {
    if (s.nu == 0.0) continue;
    if (prev != nullptr && (prev->nu < 0.0) != (s.nu < 0.0)) {
      const double frac = prev->nu / (prev->nu - s.nu);
      const double tc = prev->time + frac * (s.time - prev->time);
      (s.nu > 0.0 ? up : down).push_back(tc);
    }
    prev = &s;
  }
  if (up.size() + down.size() < 3) return std::nullopt;
  double total = 0.0;
  int count = 0;
  for (const auto* list : {&up, &down})
    for (std::size_t k = 1; k < list->size(); ++k) {
      total += (*list)[k] - (*list)[k - 1];
      ++count;
    }
  if (count == 0) return std::nullopt;
  return total / count;
}

}  // namespace curved_nbody
