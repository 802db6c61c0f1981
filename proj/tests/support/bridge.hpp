#pragma once
// Conversions between oracle configurations and library states.

#include <cmath>
#include <numbers>

#include "curved_nbody/dynamics.hpp"
#include "oracle.hpp"

namespace bridge {

inline curved_nbody::SpaceSpec space_of(const oracle::Config& c) { return {c.dim, c.sigma}; }

inline curved_nbody::Vec to_vec(const oracle::V& v, int dim) {
  curved_nbody::Vec out(dim);
  for (int k = 0; k < dim; ++k) out[k] = static_cast<double>(v[k]);
  return out;
}

inline oracle::V from_vec(const curved_nbody::Vec& v) {
  oracle::V out{0, 0, 0, 0};
  for (int k = 0; k < v.size(); ++k) out[k] = v[k];
  return out;
}

inline curved_nbody::SystemState to_state(const oracle::Config& c) {
  curved_nbody::SystemState s;
  s.space = space_of(c);
  for (std::size_t i = 0; i < c.m.size(); ++i)
    s.bodies.push_back({static_cast<double>(c.m[i]), to_vec(c.q[i], c.dim), to_vec(c.v[i], c.dim)});
  return s;
}

/// Exact (double-rounded) copy of a library state as an oracle configuration.
inline oracle::Config from_state(const curved_nbody::SystemState& s) {
  oracle::Config c{s.space.ambient_dim(), s.space.sigma(), {}, {}, {}};
  for (const auto& b : s.bodies) {
    c.m.push_back(b.mass);
    c.q.push_back(from_vec(b.position));
    c.v.push_back(from_vec(b.velocity));
  }
  return c;
}

inline double max_abs_diff(const std::vector<curved_nbody::Vec>& a, const std::vector<oracle::V>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int k = 0; k < a[i].size(); ++k)
      d = std::max(d, static_cast<double>(std::fabs(static_cast<oracle::R>(a[i][k]) - b[i][k])));
  return d;
}

// Ansatz positions of the four-body families, built from the geometry alone.

/// S3 positive elliptic: wx rotation at angles alpha + {0, theta, pi, theta + pi}, y = gamma z.
inline oracle::Config pe_positions(oracle::R theta, oracle::R z, oracle::R gamma, oracle::R m,
                                   oracle::R alpha = 0) {
  const oracle::R pi = std::numbers::pi_v<long double>;
  const oracle::R y = gamma * z, r = std::sqrt(1 - y * y - z * z);
  oracle::Config c{4, 1, {m, m, m, m}, {}, {}};
  for (oracle::R off : {oracle::R(0), theta, pi, theta + pi}) {
    c.q.push_back({r * std::cos(alpha + off), r * std::sin(alpha + off), y, z});
    c.v.push_back({0, 0, 0, 0});
  }
  return c;
}

/// H3 negative elliptic: the same wx layout with z = gamma y on the hyperboloid.
inline oracle::Config ne_positions(oracle::R theta, oracle::R y, oracle::R gamma, oracle::R m,
                                   oracle::R alpha = 0) {
  const oracle::R pi = std::numbers::pi_v<long double>;
  const oracle::R z = gamma * y, r = std::sqrt(z * z - y * y - 1);
  oracle::Config c{4, -1, {m, m, m, m}, {}, {}};
  for (oracle::R off : {oracle::R(0), theta, pi, theta + pi}) {
    c.q.push_back({r * std::cos(alpha + off), r * std::sin(alpha + off), y, z});
    c.v.push_back({0, 0, 0, 0});
  }
  return c;
}

/// H3 negative hyperbolic: bodies 1,3 at (w, x), bodies 2,4 at (-w, -x); yz
/// boosted by beta for bodies 1,2 and beta + phi for bodies 3,4.
inline oracle::Config nh_positions(oracle::R phi, oracle::R w, oracle::R x, oracle::R m, oracle::R beta = 0) {
  const oracle::R eta = std::sqrt(w * w + x * x + 1);
  oracle::Config c{4, -1, {m, m, m, m}, {}, {}};
  const oracle::R sw[4] = {1, -1, 1, -1};
  const oracle::R bb[4] = {beta, beta, beta + phi, beta + phi};
  for (int i = 0; i < 4; ++i) {
    c.q.push_back({sw[i] * w, sw[i] * x, eta * std::sinh(bb[i]), eta * std::cosh(bb[i])});
    c.v.push_back({0, 0, 0, 0});
  }
  return c;
}

/// H3 negative elliptic-hyperbolic: wx circle of radius r at alpha (bodies
/// 1,3) and alpha + pi (bodies 2,4); yz boosted as in the hyperbolic family.
inline oracle::Config neh_positions(oracle::R phi, oracle::R r, oracle::R m, oracle::R alpha = 0,
                                    oracle::R beta = 0) {
  const oracle::R pi = std::numbers::pi_v<long double>;
  const oracle::R eta = std::sqrt(r * r + 1);
  oracle::Config c{4, -1, {m, m, m, m}, {}, {}};
  const oracle::R aa[4] = {alpha, alpha + pi, alpha, alpha + pi};
  const oracle::R bb[4] = {beta, beta, beta + phi, beta + phi};
  for (int i = 0; i < 4; ++i) {
    c.q.push_back({r * std::cos(aa[i]), r * std::sin(aa[i]), eta * std::sinh(bb[i]), eta * std::cosh(bb[i])});
    c.v.push_back({0, 0, 0, 0});
  }
  return c;
}

/// S3 positive elliptic-elliptic: body i has wx angle alpha + a_i and yz
/// angle beta + b_i with a_i = {0, 0, a, a}, b_i = {0, pi, b, b + pi}.
inline oracle::Config pee_positions(oracle::R a, oracle::R b, oracle::R r, oracle::R m, oracle::R alpha = 0,
                                    oracle::R beta = 0) {
  const oracle::R pi = std::numbers::pi_v<long double>;
  const oracle::R rho = std::sqrt(1 - r * r);
  const oracle::R aa[4] = {0, 0, a, a};
  const oracle::R bb[4] = {0, pi, b, b + pi};
  oracle::Config c{4, 1, {m, m, m, m}, {}, {}};
  for (int i = 0; i < 4; ++i) {
    c.q.push_back({r * std::cos(alpha + aa[i]), r * std::sin(alpha + aa[i]), rho * std::cos(beta + bb[i]),
                   rho * std::sin(beta + bb[i])});
    c.v.push_back({0, 0, 0, 0});
  }
  return c;
}

}  // namespace bridge

namespace bridge {

/// Centered finite-difference gradient of the library force function with
/// respect to body i, each perturbed point re-projected onto the manifold,
/// then raised by the metric and projected to the tangent space, over m_i.
inline curved_nbody::Vec fd_force_term(const curved_nbody::SystemState& s, int i, double h = 1e-6) {
  using namespace curved_nbody;
  const SpaceSpec& sp = s.space;
  const int d = sp.ambient_dim();
  Vec g(d);
  for (int k = 0; k < d; ++k) {
    double u[2];
    for (int side = 0; side < 2; ++side) {
      SystemState t = s;
      Vec p = t.bodies[i].position;
      p[k] += side == 0 ? h : -h;
      t.bodies[i].position = project_state(p, Vec(d), sp).position;
      u[side] = force_function(t);
    }
    g[k] = (u[0] - u[1]) / (2 * h);
  }
  if (sp.sigma() < 0) g[d - 1] = -g[d - 1];
  const Point& q = s.bodies[i].position;
  g -= (sp.sigma() * inner(g, q, sp)) * q;
  return g * (1.0 / s.bodies[i].mass);
}

}  // namespace bridge
