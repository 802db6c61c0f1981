#include <cmath>
#include <numbers>
#include <random>

#include "bridge.hpp"
#include "curved_nbody/dynamics.hpp"
#include "curved_nbody/solutions.hpp"
#include "curved_nbody/verify.hpp"
#include "doctest.h"

using namespace curved_nbody;
using std::numbers::pi;

namespace {

const SpaceSpec kSpaces[] = {SpaceSpec::S2(), SpaceSpec::S3(), SpaceSpec::H2(), SpaceSpec::H3()};

SystemState two_bodies(const SpaceSpec& sp, Vec a, Vec b, Vec va = {}, Vec vb = {}) {
  const int d = sp.ambient_dim();
  if (va.size() == 0) va = Vec(d);
  if (vb.size() == 0) vb = Vec(d);
  SystemState s;
  s.space = sp;
  s.bodies = {{1.0, a, va}, {1.0, b, vb}};
  return s;
}

RectangleRelEq2D square_releq(double alpha = pi / 4, double r = 0.8, int sigma = 1) {
  RectangleRelEq2D p{sigma, alpha, r, 1.0, 0.0};
  p.omega = std::sqrt(releq_2d_omega_squared(alpha, r, sigma, 1.0, Balance::X));
  return p;
}

double max_abs(const std::vector<Vec>& a) {
  double m = 0;
  for (const Vec& v : a)
    for (int k = 0; k < v.size(); ++k) m = std::max(m, std::abs(v[k]));
  return m;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("antipodal pair raises") {
  const SystemState s = two_bodies(SpaceSpec::S2(), {0, 0, 1}, {0, 0, -1});
  try {
    acceleration(s);
    FAIL("expected SingularPair");
  } catch (const SingularPair& e) {
    CHECK(e.kind() == PairKind::Antipodal);
    CHECK(e.i() == 0);
    CHECK(e.j() == 1);
  }
  CHECK_THROWS_AS(checked_state(SpaceSpec::S2(), s.bodies), SingularPair);
  CHECK_THROWS_AS(force_function(s), SingularPair);
}

TEST_CASE("checked_state rejects bad shapes and masses") {
  CHECK_THROWS_AS(checked_state(SpaceSpec::S2(), {{1.0, {0, 0, 1}, {0, 0, 0}}}), InvalidArgument);
  CHECK_THROWS_AS(checked_state(SpaceSpec::S2(), {{-1.0, {0, 0, 1}, {0, 0, 0}}, {1.0, {1, 0, 0}, {0, 0, 0}}}),
                  InvalidArgument);
  CHECK_THROWS_AS(checked_state(SpaceSpec::S3(), {{1.0, {0, 0, 1}, {0, 0, 0}}, {1.0, {1, 0, 0}, {0, 0, 0}}}),
                  InvalidArgument);
}

TEST_CASE("square relative equilibrium acceleration matches the rigid rotation") {
  const RectangleRelEq2D p = square_releq();
  const SystemState s = make_rectangle_releq_2d(p, 0.0);
  CHECK(eom_residual(s, rectangle_releq_2d_acceleration(p, 0.0)) < 1e-10);
  CHECK(eom_residual(s, acceleration(s)) == 0.0);
  // same on H2
  const RectangleRelEq2D h = square_releq(pi / 4, 1.3, -1);
  CHECK(eom_residual(make_rectangle_releq_2d(h, 0.7), rectangle_releq_2d_acceleration(h, 0.7)) < 1e-10);
}

TEST_CASE("non-square rectangle is not a relative equilibrium") {
  // omega from the x-balance; the y-balance then fails
  const RectangleRelEq2D p = square_releq(pi / 3);
  const double res = eom_residual(make_rectangle_releq_2d(p, 0.0), rectangle_releq_2d_acceleration(p, 0.0));
  CHECK(res > 0.1);
}

TEST_CASE("zero velocities leave only the pairwise term") {
  std::mt19937_64 rng(3);
  for (const SpaceSpec& sp : kSpaces) {
    auto c = oracle::random_config(rng, sp.ambient_dim(), sp.sigma(), 4);
    for (auto& v : c.v) v = {0, 0, 0, 0};
    const SystemState s = bridge::to_state(c);
    const auto a = acceleration(s);
    const auto p = pairwise_acceleration(s);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == p[i]);
  }
}

TEST_CASE("force function examples") {
  CHECK(force_function(two_bodies(SpaceSpec::S2(), {1, 0, 0}, {0, 1, 0})) == 0.0);
  // two points of H2 with inner product -2
  const SystemState h = two_bodies(SpaceSpec::H2(), {0, 0, 1}, {std::sqrt(3.0), 0, 2});
  CHECK(inner(h.bodies[0].position, h.bodies[1].position, h.space) == doctest::Approx(-2.0));
  CHECK(force_function(h) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));

  // square on S2, r = 0.8, z^2 = 0.36: sides have inner product 0.36, diagonals -0.28
  const SystemState sq = make_rectangle_releq_2d(square_releq(), 0.0);
  const double hand = 4 * 0.36 / std::sqrt(1 - 0.36 * 0.36) + 2 * (-0.28) / std::sqrt(1 - 0.28 * 0.28);
  CHECK(force_function(sq) == doctest::Approx(hand).epsilon(1e-13));

  // positive elliptic square with delta z^2 = 0.2: e12 = e14 = 0.2, e13 = -0.6
  const PositiveElliptic pe{1.0, pi / 2, 0.3, 0.5, 0.4, 0.0, 0.0};
  const LiftedState ls = lift_positive_elliptic(pe, 0.4, 0.0, 0.1);
  const double hand_pe = 4 * 0.2 / std::sqrt(1 - 0.04) + 2 * (-0.6) / std::sqrt(1 - 0.36);
  CHECK(force_function(ls.state) == doctest::Approx(hand_pe).epsilon(1e-13));
}

TEST_CASE("kinetic and total energy examples") {
  SystemState s;
  s.space = SpaceSpec::S2();
  s.bodies = {{2.0, {0, 0, 1}, {1, 0, 0}}};
  CHECK(kinetic_energy(s) == 1.0);
  s.space = SpaceSpec::H2();
  s.bodies = {{1.0, {0, 0, 1}, {3, 4, 0}}};
  CHECK(kinetic_energy(s) == 12.5);
  s.bodies[0].velocity = {0, 0, 0};
  CHECK(kinetic_energy(s) == 0.0);

  // U = 0, T = 1
  const SystemState e = two_bodies(SpaceSpec::S2(), {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 1});
  CHECK(total_energy(e) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(total_energy(two_bodies(SpaceSpec::S2(), {1, 0, 0}, {0, 1, 0})) == 0.0);
  // off-manifold positions change T through the sigma q.q factor
  SystemState off;
  off.space = SpaceSpec::S2();
  off.bodies = {{2.0, {0, 0, 1.1}, {1, 0, 0}}};
  CHECK(kinetic_energy(off) == doctest::Approx(1.21));
}

TEST_CASE("angular momentum") {
  SystemState s;
  s.space = SpaceSpec::S2();
  s.bodies = {{3.0, {1, 0, 0}, {0, 0.7, 0}}};
  const MomentumMap c = angular_momentum(s);
  CHECK(c.size() == 3);
  CHECK(c.at("xy") == doctest::Approx(3.0 * 0.7));
  CHECK(c.at("xz") == 0.0);
  CHECK(angular_momentum(two_bodies(SpaceSpec::H3(), {0, 0, 0, 1}, {1, 0, 0, std::sqrt(2.0)})).size() == 6);
  for (const auto& [k, v] : angular_momentum(two_bodies(SpaceSpec::S3(), {1, 0, 0, 0}, {0, 1, 0, 0})))
    CHECK(v == 0.0);
  CHECK(momentum_planes(SpaceSpec::S3()) == std::vector<std::string>{"wx", "wy", "wz", "xy", "xz", "yz"});

  // positive elliptic square: only c_wx survives, equal to 4 m r^2 alpha'
  const PositiveElliptic pe{1.5, pi / 2, 0.9, 0.5, 0.4, 0.03, 0.2};
  const LiftedState ls = lift_positive_elliptic(pe, 0.4, 0.03, 0.2);
  const MomentumMap m = angular_momentum(ls.state);
  for (const char* k : {"wy", "wz", "xy", "xz", "yz"}) CHECK(std::abs(m.at(k)) < 1e-14);
  CHECK(m.at("wx") == doctest::Approx(0.9).epsilon(1e-13));
}

TEST_CASE("acceleration agrees with the long-double oracle") {
  std::mt19937_64 rng(21);
  for (const SpaceSpec& sp : kSpaces)
    for (int k = 0; k < 25; ++k) {
      const auto c = oracle::random_config(rng, sp.ambient_dim(), sp.sigma(), 4);
      const SystemState s = bridge::to_state(c);
      const auto ref = oracle::acceleration(bridge::from_state(s));
      const auto a = acceleration(s);
      CHECK(bridge::max_abs_diff(a, ref) <= 1e-12 * (1 + max_abs(a)));
      CHECK(force_function(s) == doctest::Approx(static_cast<double>(oracle::force_function(bridge::from_state(s))))
                                     .epsilon(1e-12));
      CHECK(kinetic_energy(s) == doctest::Approx(static_cast<double>(oracle::kinetic(bridge::from_state(s))))
                                     .epsilon(1e-13));
    }
}

TEST_CASE("pairwise term is the constrained gradient of U") {
  std::mt19937_64 rng(5);
  for (const SpaceSpec& sp : kSpaces)
    for (int k = 0; k < 10; ++k) {
      const SystemState s = bridge::to_state(oracle::random_config(rng, sp.ambient_dim(), sp.sigma(), 4));
      const auto p = pairwise_acceleration(s);
      for (int i = 0; i < s.size(); ++i) {
        const Vec g = bridge::fd_force_term(s, i);
        for (int c = 0; c < sp.ambient_dim(); ++c) CHECK(std::abs(g[c] - p[i][c]) < 1e-5);
      }
    }
}

TEST_CASE("isometry equivariance") {
  std::mt19937_64 rng(9);
  for (const SpaceSpec& sp : kSpaces) {
    const int d = sp.ambient_dim();
    for (int k = 0; k < 10; ++k) {
      auto c = oracle::random_config(rng, d, sp.sigma(), 4);
      const auto m = oracle::random_isometry(rng, d, sp.sigma());
      const auto a = acceleration(bridge::to_state(c));
      oracle::Config rc = c;
      for (std::size_t i = 0; i < c.m.size(); ++i) {
        rc.q[i] = oracle::apply(m, c.q[i], d);
        rc.v[i] = oracle::apply(m, c.v[i], d);
      }
      const auto ra = acceleration(bridge::to_state(rc));
      std::vector<oracle::V> expect;
      for (const Vec& v : a) expect.push_back(oracle::apply(m, bridge::from_vec(v), d));
      CHECK(bridge::max_abs_diff(ra, expect) <= 1e-12 * (1 + max_abs(a)));
    }
  }
}

TEST_CASE("tangency of the acceleration") {
  std::mt19937_64 rng(13);
  for (const SpaceSpec& sp : kSpaces)
    for (int k = 0; k < 20; ++k) {
      const SystemState s = bridge::to_state(oracle::random_config(rng, sp.ambient_dim(), sp.sigma(), 4));
      const auto a = acceleration(s);
      for (int i = 0; i < s.size(); ++i) {
        const Body& b = s.bodies[i];
        const double t = inner(b.position, a[i], sp) + inner(b.velocity, b.velocity, sp);
        CHECK(std::abs(t) < 1e-12 * (1 + max_abs(a)));
      }
    }
}

TEST_CASE("exchanging equal masses permutes the accelerations") {
  std::mt19937_64 rng(17);
  for (const SpaceSpec& sp : kSpaces) {
    auto c = oracle::random_config(rng, sp.ambient_dim(), sp.sigma(), 4);
    c.m[1] = c.m[2];
    SystemState s = bridge::to_state(c);
    const auto a = acceleration(s);
    std::swap(s.bodies[1], s.bodies[2]);
    const auto b = acceleration(s);
    // summation order differs for the bystanders
    for (int i : {0, 3})
      for (std::size_t k = 0; k < a[i].size(); ++k)
        CHECK(std::abs(b[i][k] - a[i][k]) <= 1e-14 * (1 + std::abs(a[i][k])));
    CHECK(b[1] == a[2]);
    CHECK(b[2] == a[1]);
  }
}

TEST_CASE("conserved set and mutual inner products") {
  const SystemState s = make_rectangle_releq_2d(square_releq(), 0.0);
  const ConservedSet c = conserved(s);
  CHECK(c.energy == total_energy(s));
  CHECK(c.momenta.size() == 3);
  const auto ip = mutual_inner_products(s);
  CHECK(ip.size() == 6);
  CHECK(ip.at("12") == doctest::Approx(0.36));
  CHECK(ip.at("13") == doctest::Approx(-0.28));
  const PairBase mb = min_pair_base(s);
  CHECK(mb.base == doctest::Approx(1 - 0.36 * 0.36));
}

}  // TEST_SUITE
