#include "curved_nbody/dynamics.hpp"

#include <cmath>
#include <limits>

namespace curved_nbody {

namespace {

PairKind kind_of(double x, int sigma) {
  if (sigma < 0) return PairKind::Collision;
  return x > 0.0 ? PairKind::Collision : PairKind::Antipodal;
}

void check_shapes(const SystemState& state) {
  const int n = state.space.ambient_dim();
  for (const Body& b : state.bodies) {
    if (b.position.size() != n || b.velocity.size() != n)
      throw InvalidArgument("body coordinates must have length " + std::to_string(n));
  }
}

// Base of the pair denominator, raising SingularPair at or below tol.
double checked_base(const SystemState& state, int i, int j, double x, double tol) {
  const int sigma = state.space.sigma();
  const double base = sigma * (1.0 - x) * (1.0 + x);
  if (!(base > tol)) throw SingularPair(i, j, kind_of(x, sigma), base);
  return base;
}

}  // namespace

SystemState checked_state(const SpaceSpec& space, std::vector<Body> bodies, double time,
                          double tol) {
  if (bodies.size() < 2) throw InvalidArgument("a system needs at least two bodies");
  SystemState s{space, std::move(bodies), time};
  check_shapes(s);
  for (const Body& b : s.bodies)
    if (!(b.mass > 0.0)) throw InvalidArgument("masses must be positive");
  require_nonsingular(s, tol);
  return s;
}

void require_nonsingular(const SystemState& state, double tol) {
  check_shapes(state);
  const int n = state.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double x = inner(state.bodies[i].position, state.bodies[j].position, state.space);
      checked_base(state, i, j, x, tol);
    }
}

PairBase min_pair_base(const SystemState& state) {
  PairBase best{std::numeric_limits<double>::infinity(), -1, -1};
  const int n = state.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double b = singular_base(state.bodies[i].position, state.bodies[j].position, state.space);
      if (b < best.base) best = {b, i, j};
    }
  return best;
}

std::vector<std::string> momentum_planes(const SpaceSpec& space) {
  if (space.ambient_dim() == 4) return {"wx", "wy", "wz", "xy", "xz", "yz"};
  return {"xy", "xz", "yz"};
}

std::vector<Vec> pairwise_acceleration(const SystemState& state, double tol) {
  check_shapes(state);
  const int n = state.size();
  const int dim = state.space.ambient_dim();
  const double sigma = state.space.sigma();
  std::vector<Vec> acc(static_cast<std::size_t>(n), Vec(dim));
  for (int i = 0; i < n; ++i) {
    const Point& qi = state.bodies[i].position;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Point& qj = state.bodies[j].position;
      const double x = inner(qi, qj, state.space);
      const double base = checked_base(state, std::min(i, j), std::max(i, j), x, tol);
      const double w = state.bodies[j].mass / (base * std::sqrt(base));
      for (int k = 0; k < dim; ++k) acc[i][k] += w * (qj[k] - sigma * x * qi[k]);
    }
  }
  return acc;
}

std::vector<Vec> acceleration(const SystemState& state, double tol) {
  std::vector<Vec> acc = pairwise_acceleration(state, tol);
  const double sigma = state.space.sigma();
  for (int i = 0; i < state.size(); ++i) {
    const Body& b = state.bodies[i];
    const double vv = inner(b.velocity, b.velocity, state.space);
    acc[i] -= (sigma * vv) * b.position;
  }
  return acc;
}

double force_function(const SystemState& state, double tol) {
  check_shapes(state);
  const int n = state.size();
  const double sigma = state.space.sigma();
  double u = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double x = inner(state.bodies[i].position, state.bodies[j].position, state.space);
      const double base = checked_base(state, i, j, x, tol);
      u += sigma * state.bodies[i].mass * state.bodies[j].mass * x / std::sqrt(base);
    }
  return u;
}

double kinetic_energy(const SystemState& state) {
  check_shapes(state);
  const double sigma = state.space.sigma();
  double t = 0.0;
  for (const Body& b : state.bodies)
    t += b.mass * inner(b.velocity, b.velocity, state.space) *
         (sigma * inner(b.position, b.position, state.space));
  return 0.5 * t;
}

double total_energy(const SystemState& state, double tol) {
  return kinetic_energy(state) - force_function(state, tol);
}

MomentumMap angular_momentum(const SystemState& state) {
  check_shapes(state);
  const std::string names = state.space.coordinate_names();
  MomentumMap out;
  for (const std::string& plane : momentum_planes(state.space)) {
    const int a = static_cast<int>(names.find(plane[0]));
    const int b = static_cast<int>(names.find(plane[1]));
    double c = 0.0;
    for (const Body& body : state.bodies)
      c += body.mass * (body.position[a] * body.velocity[b] - body.position[b] * body.velocity[a]);
    out[plane] = c;
  }
  return out;
}

ConservedSet conserved(const SystemState& state, double tol) {
  return {total_energy(state, tol), angular_momentum(state)};
}

double eom_residual(const SystemState& state, const std::vector<Vec>& claim, double tol) {
  const std::vector<Vec> acc = acceleration(state, tol);
  if (claim.size() != acc.size()) throw InvalidArgument("claimed acceleration has wrong body count");
  double worst = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (claim[i].size() != acc[i].size())
      throw InvalidArgument("claimed acceleration has wrong dimension");
    for (int k = 0; k < acc[i].size(); ++k) worst = std::max(worst, std::abs(acc[i][k] - claim[i][k]));
  }
  return worst;
}

std::map<std::string, double> mutual_inner_products(const SystemState& state) {
  std::map<std::string, double> out;
  const int n = state.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      out[std::to_string(i + 1) + std::to_string(j + 1)] =
          inner(state.bodies[i].position, state.bodies[j].position, state.space);
  return out;
}

}  // namespace curved_nbody
