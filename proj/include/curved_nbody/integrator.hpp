#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curved_nbody/dynamics.hpp"
#include "curved_nbody/solutions.hpp"

namespace curved_nbody {

enum class Method { RK4Fixed, RK45Adaptive };

std::string to_string(Method m);
Method parse_method(const std::string& s);

struct IntegratorConfig {
  Method method = Method::RK45Adaptive;
  /// Fixed step for RK4, first trial step for RK45.
  double dt_initial = 1e-3;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  bool project_each_step = true;
  long max_steps = 10'000'000;
  /// Output cadence. 0 records every accepted step.
  double sample_dt = 0.0;

  void validate() const;
};

/// Steps are rejected and halved when a pair base drops below this...
inline constexpr double kGuardReject = 1e-8;
/// ...and the run stops with diagnostics below this.
inline constexpr double kGuardTerminate = 1e-10;

struct SingularEvent {
  double time;
  int i;
  int j;
  PairKind kind;
};

struct DriftReport {
  /// max |q.q - sigma| over accepted steps and bodies.
  double max_constraint_drift = 0.0;
  /// Largest constraint drift divided by the floating-point scale of q.q.
  double max_constraint_drift_ulps = 0.0;
  /// max |q.v| over accepted steps and bodies.
  double max_tangency_drift = 0.0;
  /// max |E - E0| / |E0|, absolute when |E0| < 1e-12.
  double max_energy_drift_rel = 0.0;
  MomentumMap max_momentum_drift_abs;
  std::optional<SingularEvent> singular_termination;
  long steps_accepted = 0;
  long steps_rejected = 0;
};

struct Sample {
  double time;
  SystemState state;
};

struct Trajectory {
  std::vector<Sample> samples;
  DriftReport diagnostics;
};

/// Integrates the curved N-body equations from state.time to t_end.
///
/// The first sample is the input state. A zero-length interval returns just
/// that sample. Approaching a singular pair terminates the run early with
/// diagnostics.singular_termination set instead of throwing.
Trajectory integrate(const SystemState& state, double t_end, const IntegratorConfig& cfg);

// --- reduced one-degree-of-freedom systems ---------------------------------

enum class ReducedFamily { PositiveElliptic, NegativeElliptic };

/// A reduced square-rotopulsator system with its constants frozen.
///
/// The free coordinate q is z for the positive elliptic family (y = gamma z)
/// and y for the negative elliptic family (z = gamma y). The energy is fixed
/// from the params' initial data at construction.
struct ReducedSystem {
  ReducedFamily family;
  CandidateParams params;
  double energy;

  static ReducedSystem positive_elliptic(const PositiveElliptic& p);
  static ReducedSystem negative_elliptic(const NegativeElliptic& p);

  /// d nu / dt at (q, nu). Uses the energy-substituted force factor for the
  /// positive elliptic family and the velocity form for the negative one.
  double acceleration(double q, double nu) const;
  /// Rotation rate alpha' at q.
  double angular_rate(double q) const;
  /// Lifts a reduced sample to a full four-body state.
  LiftedState lift(double q, double nu, double alpha) const;
  /// Ansatz second derivatives for the lift at (q, nu, alpha).
  std::vector<Vec> lifted_acceleration(double q, double nu, double alpha) const;
  /// Throws DomainExit when q is outside the family's admissible region.
  void require_admissible(double q, double time) const;
  bool admissible(double q) const;
};

struct ReducedSample {
  double time;
  double q;
  double nu;
  double alpha;
};

struct ReducedRun {
  std::vector<ReducedSample> samples;
  /// Set when the run left the admissible region; samples end at the last
  /// valid point.
  std::optional<std::string> domain_exit;
};

/// Integrates q' = nu, nu' = F q (or G q), alpha' = rate(q). Never throws
/// DomainExit; reports it in the result instead.
ReducedRun integrate_reduced_run(const ReducedSystem& sys, double q0, double nu0, double t_end,
                                 const IntegratorConfig& cfg);

/// As integrate_reduced_run, but throws DomainExit on leaving the domain.
std::vector<ReducedSample> integrate_reduced(const ReducedSystem& sys, double q0, double nu0,
                                             double t_end, const IntegratorConfig& cfg);

/// Oscillation period from successive same-direction zero crossings of nu.
/// Returns nothing with fewer than three sign changes or when nu never leaves
/// the noise floor.
std::optional<double> period_estimate(const std::vector<ReducedSample>& samples);

}  // namespace curved_nbody
