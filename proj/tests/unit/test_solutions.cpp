#include <cmath>
#include <limits>
#include <numbers>

#include "bridge.hpp"
#include "curved_nbody/dynamics.hpp"
#include "curved_nbody/solutions.hpp"
#include "curved_nbody/verify.hpp"
#include "doctest.h"

using namespace curved_nbody;
using std::numbers::pi;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Largest gap between the measured pair inner products and the closed forms.
double closed_form_gap(const LiftedState& ls) {
  const PairTable got = PairTable::of(ls.state);
  double g = 0;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) g = std::max(g, std::abs(got(i, j) - ls.closed_form(i, j)));
  return g;
}

double max_constraint(const SystemState& s) {
  double g = 0;
  for (const Body& b : s.bodies)
    g = std::max(g, std::abs(constraint_residual(b.position, s.space)) / euclidean_norm2(b.position));
  return g;
}

double off_plane(const MomentumMap& m, const char* keep) {
  double g = 0;
  for (const auto& [k, v] : m)
    if (k != keep) g = std::max(g, std::abs(v));
  return g;
}

}  // namespace

TEST_SUITE("solutions") {

TEST_CASE("trapezoid fixed point") {
  CHECK_THROWS_AS(make_trapezoid_fixed_point({pi / 4, 5 * pi / 4, 1, 1}), AntipodalConfiguration);
  CHECK_THROWS_AS(make_trapezoid_fixed_point({0.0, 4.0, 1, 1}), InvalidArgument);
  const SystemState s = make_trapezoid_fixed_point({pi / 3, pi + pi / 6, 1.0, 2.0});
  REQUIRE(s.size() == 4);
  for (const Body& b : s.bodies) {
    CHECK(std::abs(constraint_residual(b.position, s.space)) <= 4 * kEps);
    CHECK(b.position[2] == 0.0);
    CHECK(b.velocity == Vec{0, 0, 0});
  }
  // bodies 1,2 mirror across the y-axis, as do 3,4
  CHECK(s.bodies[1].position[0] == -s.bodies[0].position[0]);
  CHECK(s.bodies[1].position[1] == s.bodies[0].position[1]);
  CHECK(s.bodies[3].position[0] == -s.bodies[2].position[0]);
  CHECK(s.bodies[2].mass == 2.0);
  CHECK(s.bodies[0].mass == 1.0);
  // body i sits in quadrant i
  CHECK((s.bodies[0].position[0] > 0 && s.bodies[0].position[1] > 0));
  CHECK((s.bodies[1].position[0] < 0 && s.bodies[1].position[1] > 0));
  CHECK((s.bodies[2].position[0] < 0 && s.bodies[2].position[1] < 0));
  CHECK((s.bodies[3].position[0] > 0 && s.bodies[3].position[1] < 0));
}

TEST_CASE("rectangle relative equilibrium") {
  RectangleRelEq2D p{1, pi / 4, 0.8, 1.0, 0.0};
  p.omega = std::sqrt(releq_2d_omega_squared(p.alpha, p.r, 1, 1.0, Balance::X));
  CHECK(eom_residual(make_rectangle_releq_2d(p, 0.0), rectangle_releq_2d_acceleration(p, 0.0)) < 1e-10);
  RectangleRelEq2D eq = p;
  eq.r = 1.0;
  CHECK_THROWS_AS(make_rectangle_releq_2d(eq, 0.0), InvalidArgument);
  // one full turn reproduces the inner products
  const auto a = mutual_inner_products(make_rectangle_releq_2d(p, 0.3));
  const auto b = mutual_inner_products(make_rectangle_releq_2d(p, 0.3 + 2 * pi / p.omega));
  for (const auto& [k, v] : a) CHECK(b.at(k) == doctest::Approx(v).epsilon(1e-13));
  const SystemState h = make_rectangle_releq_2d({-1, pi / 4, 1.3, 1.0, 0.5}, 0.0);
  CHECK(h.bodies[0].position[2] == doctest::Approx(std::sqrt(1 + 1.69)));
}

TEST_CASE("positive elliptic lift") {
  const PairClasses c = positive_elliptic_pairs(pi / 2, 0.2);
  CHECK(c.e12 == doctest::Approx(0.2));
  CHECK(c.e13 == doctest::Approx(-0.6));
  CHECK(c.e14 == doctest::Approx(0.2));

  const PositiveElliptic p{1.0, pi / 2, 0.7, 0.5, 0.4, 0.03, 0.0};
  const LiftedState ls = lift_positive_elliptic(p, 0.4, 0.03, 0.3);
  CHECK(closed_form_gap(ls) <= 1e-12);
  CHECK(max_constraint(ls.state) <= 4 * kEps);
  CHECK(ls.proper_rectangle);
  CHECK_FALSE(ls.singular);
  const MomentumMap m = angular_momentum(ls.state);
  CHECK(off_plane(m, "wx") < 1e-14);
  CHECK(m.at("yz") == doctest::Approx(0.0));
  CHECK_THROWS_AS(lift_positive_elliptic(p, 0.9, 0.0, 0.0), DomainExit);

  // generic theta keeps the closed forms
  const PositiveElliptic q{1.0, 1.1, 0.7, -0.3, 0.2, 0.0, 0.0};
  CHECK(closed_form_gap(lift_positive_elliptic(q, 0.2, 0.1, 1.0)) <= 1e-12);
}

TEST_CASE("positive elliptic-elliptic lift") {
  const double r = 0.6, rho2 = 1 - r * r;
  const PairClasses c = positive_elliptic_elliptic_pairs(pi, pi / 2, r);
  CHECK(c.e13 == doctest::Approx(-r * r));
  CHECK(c.e14 == doctest::Approx(-r * r));
  CHECK(c.e12 == doctest::Approx(2 * r * r - 1));
  CHECK(std::abs(positive_elliptic_elliptic_pairs(0.9, 0.9, 1 / std::sqrt(2.0)).e14) < 1e-15);

  const PositiveEllipticElliptic p{1.0, pi / 3, pi / 4, 0.7, 0.4, r, 0.2, 0.5};
  const LiftedState ls = lift_positive_elliptic_elliptic(p, r, 0.2, 0.5);
  CHECK(closed_form_gap(ls) <= 1e-12);
  CHECK(max_constraint(ls.state) <= 4 * kEps);
  // bodies 1,2 share (w,x) and negate (y,z)
  const auto& b = ls.state.bodies;
  CHECK(b[1].position[0] == b[0].position[0]);
  CHECK(b[1].position[1] == b[0].position[1]);
  CHECK(b[1].position[2] == doctest::Approx(-b[0].position[2]));
  CHECK(b[1].position[3] == doctest::Approx(-b[0].position[3]));
  CHECK(c.e12 + 1 == doctest::Approx(2 * (1 - rho2)));
}

TEST_CASE("negative elliptic lift") {
  const PairClasses c = negative_elliptic_pairs(pi / 2, 0.5);
  CHECK(c.e12 == doctest::Approx(-1.5));
  CHECK(c.e13 == doctest::Approx(-2.0));
  CHECK(c.e14 == doctest::Approx(-1.5));
  for (double r2 : {0.0, 0.3, 2.0}) CHECK(negative_elliptic_pairs(0.7, r2).e13 <= -1.0);

  const Interval iv = ne_admissible_interval(2.0);
  CHECK_FALSE(iv.empty());
  CHECK(iv.lo == doctest::Approx(1 / std::sqrt(3.0)));
  CHECK(ne_admissible_interval(0.9).empty());

  const NegativeElliptic p{1.0, pi / 2, 0.8, 2.0, 0.7, 0.02, 0.0};
  const LiftedState ls = lift_negative_elliptic(p, 0.7, 0.02, 0.4);
  CHECK(closed_form_gap(ls) <= 1e-12);
  CHECK(max_constraint(ls.state) <= 4 * kEps);
  const MomentumMap m = angular_momentum(ls.state);
  CHECK(off_plane(m, "wx") < 1e-14);
  CHECK(m.at("wx") == doctest::Approx(0.8).epsilon(1e-13));
  for (const Body& b : ls.state.bodies) CHECK(b.position[3] >= 1.0);
  CHECK_THROWS_AS(lift_negative_elliptic(p, 0.3, 0.0, 0.0), DomainExit);
  CHECK_THROWS_AS(lift_negative_elliptic(p, -0.7, 0.0, 0.0), DomainExit);
}

TEST_CASE("negative hyperbolic lift") {
  const NegativeHyperbolic p{1.0, 1.0, 0.3, 1.0, 0.0, 0.0};
  const LiftedState zero = lift_negative_hyperbolic(p, 0.0, 0.0, 0.0);
  CHECK(zero.closed_form(1, 2) == doctest::Approx(-1.0));
  CHECK(zero.singular);
  CHECK(zero.singular_kind == PairKind::Collision);

  const LiftedState ls = lift_negative_hyperbolic(p, 1.0, 0.0, 0.4);
  CHECK(ls.closed_form(1, 2) == doctest::Approx(-3.0));
  CHECK(closed_form_gap(ls) <= 1e-12);
  CHECK(max_constraint(ls.state) <= 4 * kEps);
  const auto& b = ls.state.bodies;
  CHECK(b[2].position[0] == b[0].position[0]);
  CHECK(b[2].position[1] == b[0].position[1]);
  CHECK(b[3].position[0] == -b[0].position[0]);
  CHECK(b[1].position[0] == -b[0].position[0]);
  const LiftedState g = lift_negative_hyperbolic({1.0, 0.7, 0.3, 1.0, 0.5, 0.0}, 0.6, -0.4, 0.2);
  CHECK(closed_form_gap(g) <= 1e-12);
}

TEST_CASE("negative elliptic-hyperbolic lift") {
  const NegativeEllipticHyperbolic p{1.0, 1.0, 0.4, 0.3, 0.8, 0.1, 0.2, 0.3};
  const LiftedState zero = lift_negative_elliptic_hyperbolic(p, 0.0, 0.0, 0.0);
  CHECK(zero.singular);
  CHECK(zero.closed_form(1, 2) == doctest::Approx(-1.0));
  for (double r : {0.3, 1.0, 2.5}) {
    const PairClasses c = negative_elliptic_hyperbolic_pairs(0.8, r);
    CHECK(c.e14 - c.e13 == doctest::Approx(-2 * r * r).epsilon(1e-13));
    CHECK(c.e12 == doctest::Approx(-2 * r * r - 1));
  }
  CHECK(negative_elliptic_hyperbolic_pairs(0.0, 1.0).e13 == doctest::Approx(-1.0));
  const LiftedState ls = lift_negative_elliptic_hyperbolic(p, 0.8, 0.2, 0.3);
  CHECK(closed_form_gap(ls) <= 1e-12);
  CHECK(max_constraint(ls.state) <= 4 * kEps);
  for (const Body& b : ls.state.bodies) CHECK(b.position[3] >= 1.0);
}

TEST_CASE("lift positions agree with the independent ansatz layout") {
  auto pos_gap = [](const SystemState& s, const oracle::Config& c) {
    double g = 0;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k)
        g = std::max(g, static_cast<double>(std::fabs(s.bodies[i].position[k] - c.q[i][k])));
    return g;
  };
  const PositiveElliptic pe{1.0, 1.2, 0.5, 0.5, 0.4, 0.0, 0.0};
  CHECK(pos_gap(lift_positive_elliptic(pe, 0.4, 0.0, 0.3).state, bridge::pe_positions(1.2L, 0.4L, 0.5L, 1, 0.3L)) <
        1e-15);
  const NegativeElliptic ne{1.0, 1.2, 0.5, 2.0, 0.7, 0.0, 0.0};
  CHECK(pos_gap(lift_negative_elliptic(ne, 0.7, 0.0, 0.3).state, bridge::ne_positions(1.2L, 0.7L, 2, 1, 0.3L)) <
        1e-14);
  const NegativeHyperbolic nh{1.0, 0.9, 0.3, 0.0, 0.0, 0.0};
  CHECK(pos_gap(lift_negative_hyperbolic(nh, 0.6, -0.4, 0.2).state, bridge::nh_positions(0.9L, 0.6L, -0.4L, 1, 0.2L)) <
        1e-14);
  const NegativeEllipticHyperbolic neh{1.0, 0.9, 0.4, 0.3, 0.8, 0.0, 0.0, 0.0};
  CHECK(pos_gap(lift_negative_elliptic_hyperbolic(neh, 0.8, 0.2, 0.3).state,
                bridge::neh_positions(0.9L, 0.8L, 1, 0.2L, 0.3L)) < 1e-14);
  const PositiveEllipticElliptic pee{1.0, pi / 3, pi / 4, 0.7, 0.4, 0.6, 0.0, 0.0};
  CHECK(pos_gap(lift_positive_elliptic_elliptic(pee, 0.6, 0.2, 0.5).state,
                bridge::pee_positions(std::numbers::pi_v<long double> / 3, std::numbers::pi_v<long double> / 4,
                                      0.6L, 1, 0.2L, 0.5L)) < 1e-15);
}

TEST_CASE("diagonal gate") {
  CHECK(diagonals_longer(-0.6, 0.2, 0.2));
  CHECK_FALSE(diagonals_longer(0.2, 0.2, -0.6));
  CHECK_FALSE(diagonals_longer(-0.36, -0.36, 0.1));
}

TEST_CASE("validation and family names") {
  CHECK_THROWS_AS(validate(PositiveElliptic{1.0, 0.0, 0.5, 0.5, 0.4, 0.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(validate(NegativeHyperbolic{-1.0, 1.0, 0.3, 1.0, 0.0, 0.0}), InvalidArgument);
  CHECK(family_name(TrapezoidFixedPoint{0.5, 3.5, 1, 1}) == "trapezoid");
  CHECK(family_name(NegativeEllipticHyperbolic{}) == "negative_elliptic_hyperbolic");
}

TEST_CASE("initial_state dispatches to the family constructors") {
  const PositiveElliptic pe{1.0, pi / 2, 0.5, 0.5, 0.4, 0.02, 0.1};
  const LiftedState a = initial_state(pe);
  const LiftedState b = lift_positive_elliptic(pe, 0.4, 0.02, 0.1);
  for (int i = 0; i < 4; ++i) {
    CHECK(a.state.bodies[i].position == b.state.bodies[i].position);
    CHECK(a.state.bodies[i].velocity == b.state.bodies[i].velocity);
  }
  CHECK(initial_state(TrapezoidFixedPoint{pi / 3, 7 * pi / 6, 1, 2}).state.size() == 4);
}

TEST_CASE("equilibrium momenta make the reduced field vanish") {
  const double cw = pe_equilibrium_momentum(1.0, pi / 2, 0.5, 0.5);
  const PositiveElliptic pe{1.0, pi / 2, cw, 0.5, 0.5, 0.0, 0.0};
  CHECK(std::abs(pe_force_factor_velocity(pe, 0.5, 0.0)) < 1e-12);
  const double h = pe_energy(pe, 0.5, 0.0);
  CHECK(std::abs(pe_force_factor_energy(pe, h, 0.5)) < 1e-12);
  const double bw = ne_equilibrium_momentum(1.0, pi / 2, 2.0, 0.65);
  const NegativeElliptic ne{1.0, pi / 2, bw, 2.0, 0.65, 0.0, 0.0};
  CHECK(std::abs(ne_force_factor(ne, 0.65, 0.0)) < 1e-12);
}

TEST_CASE("both forms of the reduced force factor agree on shell") {
  const PositiveElliptic pe{1.0, pi / 2, 0.6, 0.5, 0.45, 0.04, 0.0};
  const double h = pe_energy(pe, 0.45, 0.04);
  for (double z : {0.3, 0.45, 0.55}) {
    // nu from the energy at z, keeping the same h
    double lo = 0.0, hi = 5.0;
    if (pe_energy(pe, z, lo) > h) continue;
    for (int k = 0; k < 200; ++k) {
      const double mid = 0.5 * (lo + hi);
      (pe_energy(pe, z, mid) < h ? lo : hi) = mid;
    }
    CHECK(pe_force_factor_velocity(pe, z, lo) == doctest::Approx(pe_force_factor_energy(pe, h, z)).epsilon(1e-9));
  }
  // the closed-form energy is the energy of the lifted state
  CHECK(pe_energy(pe, 0.45, 0.04) ==
        doctest::Approx(total_energy(lift_positive_elliptic(pe, 0.45, 0.04, 0.0).state)).epsilon(1e-12));
  const NegativeElliptic ne{1.0, pi / 2, 0.8, 2.0, 0.7, 0.02, 0.0};
  CHECK(ne_energy(ne, 0.7, 0.02) ==
        doctest::Approx(total_energy(lift_negative_elliptic(ne, 0.7, 0.02, 0.0).state)).epsilon(1e-12));
}

TEST_CASE("ansatz accelerations solve the equations of motion") {
  // positive elliptic: nu' = F z with the velocity form of F
  const PositiveElliptic pe{1.0, pi / 2, 0.6, 0.5, 0.45, 0.04, 0.0};
  const double nud = pe_force_factor_velocity(pe, 0.45, 0.04) * 0.45;
  const LiftedState ls = lift_positive_elliptic(pe, 0.45, 0.04, 0.2);
  CHECK(eom_residual(ls.state, positive_elliptic_acceleration(pe, 0.45, 0.04, 0.2, nud)) < 1e-12);
  const NegativeElliptic ne{1.0, pi / 2, 0.8, 2.0, 0.7, 0.02, 0.0};
  const double nud2 = ne_force_factor(ne, 0.7, 0.02) * 0.7;
  const LiftedState ln = lift_negative_elliptic(ne, 0.7, 0.02, 0.2);
  CHECK(eom_residual(ln.state, negative_elliptic_acceleration(ne, 0.7, 0.02, 0.2, nud2)) < 1e-12);
}

}  // TEST_SUITE
