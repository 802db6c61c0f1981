// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "bridge.hpp"
#include "curved_nbody/format.hpp"
#include "curved_nbody/integrator.hpp"
#include "curved_nbody/verify.hpp"

using namespace curved_nbody;
using std::numbers::pi;

namespace {

int failures = 0;

void report(int n, bool pass, const std::string& what, const std::string& detail, double seconds) {
  std::printf("%s criterion %d: %s (%s) [%.1fs]\n", pass ? "PASS" : "FAIL", n, what.c_str(), detail.c_str(),
              seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// Names of failed checks in a report, comma separated.
std::string failed_checks(const VerificationReport& rep) {
  std::string s;
  for (const auto& c : rep.evidence["checks"])
    if (!c.value("pass", false)) s += (s.empty() ? "" : ", ") + c.value("name", std::string("?"));
  return s;
}

VerificationReport run(TheoremId id, const std::vector<std::string>& grid, const std::vector<std::string>& tol) {
  ScanGrid g = default_grid(id);
  for (const auto& o : grid) apply_grid_override(g, o);
  Tolerances t = default_tolerances(id);
  for (const auto& o : tol) apply_tolerance_override(t, o);
  return run_theorem(id, g, t);
}

void criterion1() {
  Timer tm;
  const auto rep = run(TheoremId::T1, {"beta_minus_alpha_ne_pi=1e-3", "sin_alpha_plus_beta_ne_0=1e-3"},
                       {"rel_agreement=1e-9"});
  const double mx = rep.evidence["max_det_cartesian"].get<double>();
  const double rel = rep.evidence["max_rel_disagreement"].get<double>();
  const bool pass = rep.status == Status::Confirmed && mx < 0 && rel <= 1e-9;
  report(1, pass, "det A < 0 on 200x200, cartesian vs polar within 1e-9",
         "max det A " + brief(mx) + ", max rel gap " + brief(rel) + ", " +
             std::to_string(rep.evidence["points_evaluated"].get<int>()) + " points" +
             (pass ? "" : ", failed: " + failed_checks(rep)),
         tm.seconds());
}

void criterion2() {
  Timer tm;
  const auto rep = run(TheoremId::T2, {"r_pos=0.5;0.8;0.95",
                                       "r_neg=0.5;1.5;3", "periods=10"},
                       {"root_location=1e-10", "eom=1e-10", "inner_drift=1e-6", "energy_drift=1e-8"});
  bool existence = rep.status == Status::Confirmed;
  bool long_runs = true;
  std::ostringstream why;
  for (const auto& c : rep.evidence["cases"]) {
    const auto& lr = c["long_run"];
    const bool ok = lr.value("inner_products_constant", false) && lr.value("energy_conserved", false) &&
                    !lr.value("singular", true);
    if (ok) continue;
    long_runs = false;
    why << " [sigma=" << c["sigma"].get<int>() << " r=" << brief(c["r"].get<double>())
        << ": drift " << brief(c.value("inner_product_drift", NAN)) << " after "
        << c.value("periods_integrated", 0) << " periods";
    if (c.contains("drift_growth_per_period"))
      why << ", growth x" << brief(c["drift_growth_per_period"].get<double>()) << "/period";
    why << "]";
  }
  std::string detail = existence ? "unique root at pi/4 and eom < 1e-10 in all 6 cases"
                                 : "existence checks failed: " + failed_checks(rep);
  if (!long_runs)
    detail += "; 10-period runs leave the equilibrium, which is linearly unstable: round-off of 1e-16 "
              "amplified by the per-period growth cannot stay below 1e-6 over 10 periods in double "
              "precision:" + why.str();
  report(2, existence && long_runs, "rectangle root at pi/4, eom, 10-period constancy", detail, tm.seconds());
}

void rotopulsator(int n, TheoremId id, const std::vector<std::string>& grid) {
  Timer tm;
  const auto rep = run(id, grid,
                       {"zero_band=1e-3", "eom=1e-7", "momenta=1e-10", "momentum_drift=1e-9", "equiangular=1e-9"});
  const auto& ev = rep.evidence["reduced_run"];
  std::ostringstream d;
  d << "roots " << rep.evidence["roots"].size() << ", floor " << brief(rep.evidence["floor"].value("min_abs_residual", NAN))
    << ", lifted eom " << brief(ev.value("max_lifted_eom_residual", NAN)) << ", off-plane momenta "
    << brief(ev.value("max_off_plane_momentum", NAN)) << ", momentum drift "
    << brief(ev.value("max_wx_drift", NAN)) << ", equiangular "
    << brief(ev.value("max_equiangular_gap", NAN));
  if (rep.status != Status::Confirmed) d << ", failed: " << failed_checks(rep);
  report(n, rep.status == Status::Confirmed,
         n == 3 ? "positive elliptic zero only at pi/2, lifted reduced run passes all gates"
                : "negative elliptic zero only at +-pi/2, lifted reduced run passes all gates",
         d.str(), tm.seconds());
}

void criterion4() {
  Timer tm;
  const auto rep = run(TheoremId::T4, {"a=-1:4:50", "b=-2:2:50", "r=0.15:0.95:10"},
                       {"zero_set=1e-8", "degeneracy=1e-12"});
  std::ostringstream d;
  d << rep.evidence["zero_set_points"].get<int>() << " zero-set points, max distance "
    << brief(rep.evidence["max_zero_set_distance"].get<double>()) << ", max degeneracy gap "
    << brief(rep.evidence["max_degeneracy_gap"].get<double>());
  if (rep.status != Status::Confirmed) d << ", failed: " << failed_checks(rep);
  report(4, rep.status == Status::Confirmed, "elliptic-elliptic zero set on a, b lines and degenerate", d.str(),
         tm.seconds());
}

void criterion6() {
  Timer tm;
  bool pass = true;
  std::ostringstream d;
  for (TheoremId id : {TheoremId::T6, TheoremId::T7}) {
    const auto rep = run(id, {"phi_ne_0=1e-3"},
                         {});
    pass = pass && rep.status == Status::Confirmed;
    for (const auto& [reading, ev] : rep.evidence["readings"].items())
      d << (id == TheoremId::T6 ? "T6 " : "T7 ") << reading << " floor " << brief(ev.value("floor", NAN)) << "; ";
    if (rep.status != Status::Confirmed) d << "failed: " << failed_checks(rep) << "; ";
  }
  report(6, pass, "hyperbolic residuals nonzero off the phi band under both readings", d.str(), tm.seconds());
}

void criterion7() {
  Timer tm;
  RectangleRelEq2D p{1, pi / 4, 0.8, 1.0, 0.0};
  p.omega = std::sqrt(releq_2d_omega_squared(p.alpha, p.r, 1, 1.0, Balance::X));
  const double period = 2 * pi / p.omega;
  double err[2], ulps = 0;
  for (int k = 0; k < 2; ++k) {
    IntegratorConfig cfg;
    cfg.method = Method::RK4Fixed;
    cfg.dt_initial = period / (100 << k);
    const Trajectory tr = integrate(make_rectangle_releq_2d(p, 0.0), period, cfg);
    const SystemState exact = make_rectangle_releq_2d(p, period);
    err[k] = 0;
    for (int i = 0; i < 4; ++i)
      for (int c = 0; c < 3; ++c)
        err[k] = std::max(err[k], std::abs(tr.samples.back().state.bodies[i].position[c] - exact.bodies[i].position[c]));
    ulps = std::max(ulps, tr.diagnostics.max_constraint_drift_ulps);
  }
  const double ratio = err[0] / err[1];
  const bool pass = std::abs(ratio - 16) <= 0.2 * 16 && ulps <= 8;
  report(7, pass, "RK4 error ratio 16 +- 20% under dt halving, constraints <= 8 ulp",
         "ratio " + brief(ratio) + ", errors " + brief(err[0]) + " / " + brief(err[1]) + ", max drift " +
             brief(ulps) + " ulp",
         tm.seconds());
}

void criterion8() {
  Timer tm;
  std::mt19937_64 rng(20240601);
  double worst_fd = 0, worst_iso = 0;
  for (const SpaceSpec& sp : {SpaceSpec::S2(), SpaceSpec::S3(), SpaceSpec::H2(), SpaceSpec::H3()}) {
    const int d = sp.ambient_dim();
    for (int k = 0; k < 20; ++k) {
      const SystemState s = bridge::to_state(oracle::random_config(rng, d, sp.sigma(), 4));
      const auto pw = pairwise_acceleration(s);
      for (int i = 0; i < 4; ++i) {
        const Vec g = bridge::fd_force_term(s, i, 1e-6);
        for (int c = 0; c < d; ++c) worst_fd = std::max(worst_fd, std::abs(g[c] - pw[i][c]));
      }
    }
    const oracle::Config base = oracle::random_config(rng, d, sp.sigma(), 4);
    const auto a = acceleration(bridge::to_state(base));
    for (int k = 0; k < 10; ++k) {
      const auto m = oracle::random_isometry(rng, d, sp.sigma());
      oracle::Config rc = base;
      for (std::size_t i = 0; i < rc.m.size(); ++i) {
        rc.q[i] = oracle::apply(m, base.q[i], d);
        rc.v[i] = oracle::apply(m, base.v[i], d);
      }
      std::vector<oracle::V> expect;
      for (const Vec& v : a) expect.push_back(oracle::apply(m, bridge::from_vec(v), d));
      worst_iso = std::max(worst_iso, bridge::max_abs_diff(acceleration(bridge::to_state(rc)), expect));
    }
  }
  report(8, worst_fd <= 1e-5 && worst_iso <= 1e-12,
         "pair term equals projected FD gradient within 1e-5, isometry equivariance within 1e-12",
         "max FD gap " + brief(worst_fd) + ", max equivariance gap " + brief(worst_iso), tm.seconds());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  rotopulsator(3, TheoremId::T3, {});
  criterion4();
  rotopulsator(5, TheoremId::T5, {"theta_ne_0=1e-3"});
  criterion6();
  criterion7();
  criterion8();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
