#pragma once

#include <map>
#include <string>
#include <vector>

#include "curved_nbody/geometry.hpp"

namespace curved_nbody {

struct Body {
  double mass = 1.0;
  Point position;
  Vec velocity;
};

/// N bodies on one space plus the current time.
///
/// A plain value: construction does not validate. Use checked_state() when
/// the no-singular-pair invariant must hold on entry; the dynamics functions
/// raise SingularPair on their own when they meet a singular pair.
struct SystemState {
  SpaceSpec space = SpaceSpec::S2();
  std::vector<Body> bodies;
  double time = 0.0;

  int size() const noexcept { return static_cast<int>(bodies.size()); }
};

/// Builds a state and checks shapes, masses and pairwise nonsingularity.
SystemState checked_state(const SpaceSpec& space, std::vector<Body> bodies, double time = 0.0,
                          double tol = kSingularTol);

/// Throws SingularPair for the first pair whose denominator base is <= tol.
void require_nonsingular(const SystemState& state, double tol = kSingularTol);

/// Smallest denominator base over all pairs, with the pair that attains it.
struct PairBase {
  double base;
  int i;
  int j;
};
PairBase min_pair_base(const SystemState& state);

/// Angular-momentum components keyed by coordinate plane ("wx", ..., "yz").
using MomentumMap = std::map<std::string, double>;

struct ConservedSet {
  double energy = 0.0;
  MomentumMap momenta;
};

/// Coordinate planes in the fixed reporting order: wx wy wz xy xz yz in 4D,
/// xy xz yz in 3D.
std::vector<std::string> momentum_planes(const SpaceSpec& space);

/// Right-hand side of the curved N-body equations.
///
/// a_i = sum_{j != i} m_j [q_j - sigma (q_i.q_j) q_i] / [sigma - sigma (q_i.q_j)^2]^{3/2}
///       - sigma (v_i.v_i) q_i
///
/// The pair term is not antisymmetric in (i, j), so every ordered pair is
/// evaluated separately.
std::vector<Vec> acceleration(const SystemState& state, double tol = kSingularTol);

/// Only the pairwise (tangential) sum of the acceleration.
std::vector<Vec> pairwise_acceleration(const SystemState& state, double tol = kSingularTol);

/// U = sum_{i<j} sigma m_i m_j (q_i.q_j) / [sigma - sigma (q_i.q_j)^2]^{1/2}.
double force_function(const SystemState& state, double tol = kSingularTol);

/// T = 1/2 sum m_i (v_i.v_i)(sigma q_i.q_i). The last factor is kept so
/// that off-manifold drift shows up in diagnostics.
double kinetic_energy(const SystemState& state);

double total_energy(const SystemState& state, double tol = kSingularTol);

/// c_ab = sum_i m_i (a_i b'_i - b_i a'_i) for every coordinate plane ab.
MomentumMap angular_momentum(const SystemState& state);

ConservedSet conserved(const SystemState& state, double tol = kSingularTol);

/// max |acceleration(state) - claim| over bodies and components.
double eom_residual(const SystemState& state, const std::vector<Vec>& claim,
                    double tol = kSingularTol);

/// Pairwise inner products q_i.q_j keyed "12", "13", ..., "34" (1-based).
std::map<std::string, double> mutual_inner_products(const SystemState& state);

}  // namespace curved_nbody
