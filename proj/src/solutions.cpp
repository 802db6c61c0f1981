#include "curved_nbody/solutions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "curved_nbody/format.hpp"

namespace curved_nbody {

namespace {

constexpr double kPi = std::numbers::pi;

// 1 - e^2 without cancellation near |e| = 1.
double one_minus_sq(double e) { return (1.0 - e) * (1.0 + e); }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

bool finite(double v) { return std::isfinite(v); }

PairTable table_from(const PairClasses& c) {
  PairTable t;
  t.set(1, 2, c.e12);
  t.set(3, 4, c.e12);
  t.set(1, 3, c.e13);
  t.set(2, 4, c.e13);
  t.set(1, 4, c.e14);
  t.set(2, 3, c.e14);
  return t;
}

// Diagonal pair class of a family: 13 (opposite in the rotation plane) or 14.
enum class Diagonal { D13, D14 };

void finish(LiftedState& ls, const PairClasses& classes, Diagonal diag) {
  ls.closed_form = table_from(classes);
  const SystemState& s = ls.state;
  for (int i = 0; i < s.size() && !ls.singular; ++i)
    for (int j = i + 1; j < s.size(); ++j) {
      const PairKind k = pair_singularity(s.bodies[i].position, s.bodies[j].position, s.space);
      if (k != PairKind::None) {
        ls.singular = true;
        ls.singular_kind = k;
        ls.singular_i = i;
        ls.singular_j = j;
        break;
      }
    }
  if (diag == Diagonal::D13)
    ls.proper_rectangle = diagonals_longer(classes.e13, classes.e12, classes.e14);
  else
    ls.proper_rectangle = diagonals_longer(classes.e14, classes.e12, classes.e13);
  if (ls.singular) ls.proper_rectangle = false;
}

std::vector<Body> four_bodies(double m, int dim) {
  return std::vector<Body>(4, Body{m, Vec(dim), Vec(dim)});
}

// Sum over the three pair classes of f(e).
template <class F>
double class_sum(const PairClasses& c, F f) {
  return f(c.e12) + f(c.e13) + f(c.e14);
}

double ne_r2(const NegativeElliptic& p, double y) { return (p.gamma * p.gamma - 1.0) * y * y - 1.0; }

// Planar rotation: body at radius r, angle psi, with r', psi', r'', psi''.
struct Polar {
  double pos0, pos1, vel0, vel1, acc0, acc1;
};

Polar polar(double r, double rd, double rdd, double psi, double psid, double psidd) {
  const double c = std::cos(psi), s = std::sin(psi);
  return {r * c,
          r * s,
          rd * c - r * psid * s,
          rd * s + r * psid * c,
          rdd * c - 2.0 * rd * psid * s - r * psidd * s - r * psid * psid * c,
          rdd * s + 2.0 * rd * psid * c + r * psidd * c - r * psid * psid * s};
}

// Hyperbolic rotation (y, z) = eta (sinh psi, cosh psi).
Polar hyperbolic(double eta, double etad, double psi, double psid) {
  const double sh = std::sinh(psi), ch = std::cosh(psi);
  return {eta * sh, eta * ch, etad * sh + eta * psid * ch, etad * ch + eta * psid * sh, 0.0, 0.0};
}

}  // namespace

std::string family_name(const CandidateParams& params) {
  return std::visit(Overloaded{
                        [](const TrapezoidFixedPoint&) { return std::string("trapezoid"); },
                        [](const RectangleRelEq2D&) { return std::string("rectangle_releq_2d"); },
                        [](const PositiveElliptic&) { return std::string("positive_elliptic"); },
                        [](const PositiveEllipticElliptic&) {
                          return std::string("positive_elliptic_elliptic");
                        },
                        [](const NegativeElliptic&) { return std::string("negative_elliptic"); },
                        [](const NegativeHyperbolic&) {
                          return std::string("negative_hyperbolic");
                        },
                        [](const NegativeEllipticHyperbolic&) {
                          return std::string("negative_elliptic_hyperbolic");
                        },
                    },
                    params);
}

void validate(const CandidateParams& params) {
  std::visit(
      Overloaded{
          [](const TrapezoidFixedPoint& p) {
            require(p.alpha > 0.0 && p.alpha < kPi / 2, "trapezoid: alpha must be in (0, pi/2)");
            require(p.beta > kPi && p.beta < 1.5 * kPi, "trapezoid: beta must be in (pi, 3pi/2)");
            require(p.m > 0.0 && p.M > 0.0, "trapezoid: masses must be positive");
          },
          [](const RectangleRelEq2D& p) {
            require(p.sigma == 1 || p.sigma == -1, "rectangle: sigma must be +1 or -1");
            require(p.alpha > 0.0 && p.alpha < kPi / 2, "rectangle: alpha must be in (0, pi/2)");
            require(p.r > 0.0 && finite(p.r), "rectangle: r must be positive");
            require(p.sigma < 0 || p.r < 1.0,
                    "rectangle: r must be < 1 on S2 (the plane z = 0 is excluded)");
            require(p.m > 0.0, "rectangle: m must be positive");
            require(finite(p.omega), "rectangle: omega must be finite");
          },
          [](const PositiveElliptic& p) {
            require(p.m > 0.0, "positive elliptic: m must be positive");
            require(p.theta != 0.0 && finite(p.theta), "positive elliptic: theta must be nonzero");
            require(finite(p.gamma) && finite(p.c_wx), "positive elliptic: gamma, c must be finite");
          },
          [](const PositiveEllipticElliptic& p) {
            require(p.m > 0.0, "positive elliptic-elliptic: m must be positive");
            require(p.a != 0.0 && p.b != 0.0, "positive elliptic-elliptic: a, b must be nonzero");
            require(p.r0 > 0.0 && p.r0 < 1.0, "positive elliptic-elliptic: r must be in (0, 1)");
          },
          [](const NegativeElliptic& p) {
            require(p.m > 0.0, "negative elliptic: m must be positive");
            require(p.theta != 0.0 && finite(p.theta), "negative elliptic: theta must be nonzero");
            require(std::abs(p.gamma) > 1.0 && finite(p.gamma),
                    "negative elliptic: |gamma| must exceed 1");
          },
          [](const NegativeHyperbolic& p) {
            require(p.m > 0.0, "negative hyperbolic: m must be positive");
            require(p.phi != 0.0 && finite(p.phi), "negative hyperbolic: phi must be nonzero");
          },
          [](const NegativeEllipticHyperbolic& p) {
            require(p.m > 0.0, "negative elliptic-hyperbolic: m must be positive");
            require(p.phi != 0.0 && finite(p.phi),
                    "negative elliptic-hyperbolic: phi must be nonzero");
            require(p.r0 >= 0.0, "negative elliptic-hyperbolic: r must be >= 0");
          },
      },
      params);
}

std::size_t PairTable::slot(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 1 || j > 4 || i == j) throw InvalidArgument("pair indices must be distinct in 1..4");
  static constexpr int index[5][5] = {
      {-1, -1, -1, -1, -1}, {-1, -1, 0, 1, 2}, {-1, -1, -1, 3, 4}, {-1, -1, -1, -1, 5}, {}};
  return static_cast<std::size_t>(index[i][j]);
}

double PairTable::operator()(int i, int j) const { return v_[slot(i, j)]; }
void PairTable::set(int i, int j, double value) { v_[slot(i, j)] = value; }

std::map<std::string, double> PairTable::to_map() const {
  std::map<std::string, double> out;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) out[std::to_string(i) + std::to_string(j)] = (*this)(i, j);
  return out;
}

PairTable PairTable::of(const SystemState& state) {
  if (state.size() != 4) throw InvalidArgument("pair table needs exactly four bodies");
  PairTable t;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      t.set(i + 1, j + 1, inner(state.bodies[i].position, state.bodies[j].position, state.space));
  return t;
}

bool diagonals_longer(double diag, double side_a, double side_b) {
  return diag < side_a && diag < side_b;
}

PairClasses rectangle_2d_pairs(int sigma, double alpha, double r) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  return {sigma - 2.0 * r * r * ca * ca, sigma - 2.0 * r * r, sigma - 2.0 * r * r * sa * sa};
}

PairClasses positive_elliptic_pairs(double theta, double s) {
  const double c = std::cos(theta);
  return {(1.0 - s) * c + s, -1.0 + 2.0 * s, (-1.0 + s) * c + s};
}

PairClasses positive_elliptic_elliptic_pairs(double a, double b, double r) {
  const double r2 = r * r, rho2 = 1.0 - r2;
  return {2.0 * r2 - 1.0, r2 * std::cos(a) + rho2 * std::cos(b), r2 * std::cos(a) - rho2 * std::cos(b)};
}

PairClasses negative_elliptic_pairs(double theta, double r2) {
  const double c = std::cos(theta);
  return {r2 * c - r2 - 1.0, -2.0 * r2 - 1.0, -r2 * c - r2 - 1.0};
}

PairClasses negative_hyperbolic_pairs(double phi, double eta) {
  const double e2 = eta * eta, ch = std::cosh(phi);
  return {1.0 - 2.0 * e2, e2 - 1.0 - e2 * ch, -e2 + 1.0 - e2 * ch};
}

PairClasses negative_elliptic_hyperbolic_pairs(double phi, double r) {
  const double r2 = r * r, e2 = r2 + 1.0, ch = std::cosh(phi);
  return {-2.0 * r2 - 1.0, r2 - e2 * ch, -r2 - e2 * ch};
}

// --- trapezoid --------------------------------------------------------------

SystemState make_trapezoid_fixed_point(const TrapezoidFixedPoint& p) {
  validate(p);
  const double gap = std::remainder(p.beta - p.alpha - kPi, 2.0 * kPi);
  if (std::abs(gap) < 1e-9)
    throw AntipodalConfiguration("trapezoid: beta - alpha = pi puts bodies 1 and 3 antipodal");
  const double ca = std::cos(p.alpha), sa = std::sin(p.alpha);
  const double cb = std::cos(p.beta), sb = std::sin(p.beta);
  SystemState s{SpaceSpec::S2(), four_bodies(p.m, 3), 0.0};
  s.bodies[0].position = {ca, sa, 0.0};
  s.bodies[1].position = {-ca, sa, 0.0};
  s.bodies[2].position = {cb, sb, 0.0};
  s.bodies[3].position = {-cb, sb, 0.0};
  s.bodies[2].mass = p.M;
  s.bodies[3].mass = p.M;
  return s;
}

// --- rectangle relative equilibria on S2 / H2 --------------------------------

namespace {
std::array<double, 4> rectangle_angles(double alpha) {
  return {alpha, kPi - alpha, kPi + alpha, -alpha};
}
}  // namespace

SystemState make_rectangle_releq_2d(const RectangleRelEq2D& p, double t) {
  validate(p);
  const double z = std::sqrt(1.0 - p.sigma * p.r * p.r);
  SystemState s{SpaceSpec(3, p.sigma), four_bodies(p.m, 3), t};
  const auto angles = rectangle_angles(p.alpha);
  for (int i = 0; i < 4; ++i) {
    const double psi = p.omega * t + angles[i];
    const double c = std::cos(psi), sn = std::sin(psi);
    s.bodies[i].position = {p.r * c, p.r * sn, z};
    s.bodies[i].velocity = {-p.r * p.omega * sn, p.r * p.omega * c, 0.0};
  }
  return s;
}

std::vector<Vec> rectangle_releq_2d_acceleration(const RectangleRelEq2D& p, double t) {
  validate(p);
  std::vector<Vec> acc;
  const auto angles = rectangle_angles(p.alpha);
  const double w2 = p.omega * p.omega;
  for (int i = 0; i < 4; ++i) {
    const double psi = p.omega * t + angles[i];
    acc.push_back(Vec{-w2 * p.r * std::cos(psi), -w2 * p.r * std::sin(psi), 0.0});
  }
  return acc;
}

// --- positive elliptic ---------------------------------------------------------

LiftedState lift_positive_elliptic(const PositiveElliptic& p, double z, double nu, double alpha) {
  validate(p);
  const double delta = p.gamma * p.gamma + 1.0;
  const double s = delta * z * z;
  const double r2 = 1.0 - s;
  if (!(r2 > 0.0))
    throw DomainExit("positive elliptic: 1 - delta z^2 must be positive (got " +
                     brief(r2) + ")",
                     0.0);
  const double r = std::sqrt(r2);
  const double rd = -delta * z * nu / r;
  const double ad = p.c_wx / (4.0 * p.m * r2);
  const std::array<double, 4> offsets{0.0, p.theta, kPi, p.theta + kPi};
  LiftedState ls{SystemState{SpaceSpec::S3(), four_bodies(p.m, 4), 0.0}, p, {}};
  for (int i = 0; i < 4; ++i) {
    const Polar wx = polar(r, rd, 0.0, alpha + offsets[i], ad, 0.0);
    ls.state.bodies[i].position = {wx.pos0, wx.pos1, p.gamma * z, z};
    ls.state.bodies[i].velocity = {wx.vel0, wx.vel1, p.gamma * nu, nu};
  }
  finish(ls, positive_elliptic_pairs(p.theta, s), Diagonal::D13);
  return ls;
}

std::vector<Vec> positive_elliptic_acceleration(const PositiveElliptic& p, double z, double nu,
                                                double alpha, double nu_dot) {
  const double delta = p.gamma * p.gamma + 1.0;
  const double r2 = 1.0 - delta * z * z;
  if (!(r2 > 0.0)) throw DomainExit("positive elliptic: 1 - delta z^2 must be positive", 0.0);
  const double r = std::sqrt(r2);
  const double rd = -delta * z * nu / r;
  const double rdd = (-delta * (nu * nu + z * nu_dot) - rd * rd) / r;
  const double ad = p.c_wx / (4.0 * p.m * r2);
  const double add = -2.0 * rd * ad / r;
  const std::array<double, 4> offsets{0.0, p.theta, kPi, p.theta + kPi};
  std::vector<Vec> acc;
  for (int i = 0; i < 4; ++i) {
    const Polar wx = polar(r, rd, rdd, alpha + offsets[i], ad, add);
    acc.push_back(Vec{wx.acc0, wx.acc1, p.gamma * nu_dot, nu_dot});
  }
  return acc;
}

double pe_force_factor_velocity(const PositiveElliptic& p, double z, double nu) {
  const double delta = p.gamma * p.gamma + 1.0;
  const double s = delta * z * z;
  const PairClasses e = positive_elliptic_pairs(p.theta, s);
  const double pair_sum = class_sum(e, [](double x) {
    const double q = one_minus_sq(x);
    return (1.0 - x) / (q * std::sqrt(q));
  });
  return p.m * pair_sum - delta * nu * nu / (1.0 - s) -
         p.c_wx * p.c_wx / (16.0 * p.m * p.m * (1.0 - s));
}

double pe_force_factor_energy(const PositiveElliptic& p, double h, double z) {
  const double s = (p.gamma * p.gamma + 1.0) * z * z;
  const PairClasses e = positive_elliptic_pairs(p.theta, s);
  const double pair_sum = class_sum(e, [](double x) {
    const double q = one_minus_sq(x);
    return (1.0 - 2.0 * x + x * x * x) / (q * std::sqrt(q));
  });
  return p.m * pair_sum - h / (2.0 * p.m);
}

double pe_energy(const PositiveElliptic& p, double z, double nu) {
  const double delta = p.gamma * p.gamma + 1.0;
  const double s = delta * z * z;
  const PairClasses e = positive_elliptic_pairs(p.theta, s);
  const double kinetic = 2.0 * p.m * delta * nu * nu / (1.0 - s) +
                         p.c_wx * p.c_wx / (8.0 * p.m * (1.0 - s));
  const double force = 2.0 * p.m * p.m * class_sum(e, [](double x) {
    return x / std::sqrt(one_minus_sq(x));
  });
  return kinetic - force;
}

double pe_equilibrium_momentum(double m, double theta, double gamma, double z_star) {
  const double s = (gamma * gamma + 1.0) * z_star * z_star;
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("positive elliptic: need 0 < delta z^2 < 1");
  const PairClasses e = positive_elliptic_pairs(theta, s);
  const double pair_sum = class_sum(e, [](double x) {
    const double q = one_minus_sq(x);
    return (1.0 - x) / (q * std::sqrt(q));
  });
  return std::sqrt(16.0 * m * m * m * (1.0 - s) * pair_sum);
}

// --- positive elliptic-elliptic -------------------------------------------------

LiftedState lift_positive_elliptic_elliptic(const PositiveEllipticElliptic& p, double r,
                                            double alpha, double beta, double r_dot) {
  validate(p);
  require(r > 0.0 && r < 1.0, "positive elliptic-elliptic: r must be in (0, 1)");
  const double rho = std::sqrt(one_minus_sq(r));
  const double rho_dot = -r * r_dot / rho;
  const double ad = p.c1 / (4.0 * p.m * r * r);
  const double bd = p.c2 / (4.0 * p.m * rho * rho);
  LiftedState ls{SystemState{SpaceSpec::S3(), four_bodies(p.m, 4), 0.0}, p, {}};
  for (int i = 0; i < 4; ++i) {
    const double a_off = i >= 2 ? p.a : 0.0;
    const double b_off = (i >= 2 ? p.b : 0.0) + (i % 2 == 1 ? kPi : 0.0);
    const Polar wx = polar(r, r_dot, 0.0, alpha + a_off, ad, 0.0);
    const Polar yz = polar(rho, rho_dot, 0.0, beta + b_off, bd, 0.0);
    ls.state.bodies[i].position = {wx.pos0, wx.pos1, yz.pos0, yz.pos1};
    ls.state.bodies[i].velocity = {wx.vel0, wx.vel1, yz.vel0, yz.vel1};
  }
  finish(ls, positive_elliptic_elliptic_pairs(p.a, p.b, r), Diagonal::D13);
  return ls;
}

// --- negative elliptic ------------------------------------------------------------

Interval ne_admissible_interval(double gamma) {
  const double g2 = gamma * gamma - 1.0;
  if (!(g2 > 0.0)) return {1.0, 0.0};
  const double edge = 1.0 / std::sqrt(g2);
  const double inf = std::numeric_limits<double>::infinity();
  return gamma > 0 ? Interval{edge, inf} : Interval{-inf, -edge};
}

LiftedState lift_negative_elliptic(const NegativeElliptic& p, double y, double nu, double alpha) {
  validate(p);
  const double z = p.gamma * y;
  const double r2 = z * z - y * y - 1.0;
  if (!(z > 0.0)) throw DomainExit("negative elliptic: z = gamma y must be positive", 0.0);
  if (r2 < 0.0)
    throw DomainExit("negative elliptic: z^2 - y^2 - 1 must be >= 0 (got " + brief(r2) +
                         ")",
                     0.0);
  const double r = std::sqrt(r2);
  const double g2 = p.gamma * p.gamma - 1.0;
  const double rd = r > 0.0 ? g2 * y * nu / r : 0.0;
  const double ad = r > 0.0 ? p.b_wx / (4.0 * p.m * r2) : 0.0;
  const std::array<double, 4> offsets{0.0, p.theta, kPi, p.theta + kPi};
  LiftedState ls{SystemState{SpaceSpec::H3(), four_bodies(p.m, 4), 0.0}, p, {}};
  for (int i = 0; i < 4; ++i) {
    const Polar wx = polar(r, rd, 0.0, alpha + offsets[i], ad, 0.0);
    ls.state.bodies[i].position = {wx.pos0, wx.pos1, y, z};
    ls.state.bodies[i].velocity = {wx.vel0, wx.vel1, nu, p.gamma * nu};
  }
  finish(ls, negative_elliptic_pairs(p.theta, r2), Diagonal::D13);
  return ls;
}

std::vector<Vec> negative_elliptic_acceleration(const NegativeElliptic& p, double y, double nu,
                                                double alpha, double nu_dot) {
  const double g2 = p.gamma * p.gamma - 1.0;
  const double r2 = ne_r2(p, y);
  if (!(r2 > 0.0)) throw DomainExit("negative elliptic: z^2 - y^2 - 1 must be positive", 0.0);
  const double r = std::sqrt(r2);
  const double rd = g2 * y * nu / r;
  const double rdd = (g2 * (nu * nu + y * nu_dot) - rd * rd) / r;
  const double ad = p.b_wx / (4.0 * p.m * r2);
  const double add = -2.0 * rd * ad / r;
  const std::array<double, 4> offsets{0.0, p.theta, kPi, p.theta + kPi};
  std::vector<Vec> acc;
  for (int i = 0; i < 4; ++i) {
    const Polar wx = polar(r, rd, rdd, alpha + offsets[i], ad, add);
    acc.push_back(Vec{wx.acc0, wx.acc1, nu_dot, p.gamma * nu_dot});
  }
  return acc;
}

double ne_force_factor(const NegativeElliptic& p, double y, double nu) {
  const double g2 = p.gamma * p.gamma - 1.0;
  const double r2 = ne_r2(p, y);
  const PairClasses mu = negative_elliptic_pairs(p.theta, r2);
  const double pair_sum = class_sum(mu, [](double x) {
    const double q = -one_minus_sq(x);
    return (1.0 + x) / (q * std::sqrt(q));
  });
  return p.m * pair_sum + g2 * nu * nu / r2 + p.b_wx * p.b_wx / (16.0 * p.m * p.m * r2);
}

double ne_energy(const NegativeElliptic& p, double y, double nu) {
  const double g2 = p.gamma * p.gamma - 1.0;
  const double r2 = ne_r2(p, y);
  const PairClasses mu = negative_elliptic_pairs(p.theta, r2);
  const double kinetic = 2.0 * p.m * (g2 * nu * nu + p.b_wx * p.b_wx / (16.0 * p.m * p.m)) / r2;
  const double force = -2.0 * p.m * p.m * class_sum(mu, [](double x) {
    return x / std::sqrt(-one_minus_sq(x));
  });
  return kinetic - force;
}

double ne_equilibrium_momentum(double m, double theta, double gamma, double y_star) {
  const double r2 = (gamma * gamma - 1.0) * y_star * y_star - 1.0;
  if (!(r2 > 0.0) || !(gamma * y_star > 0.0))
    throw InvalidArgument("negative elliptic: y* outside the admissible interval");
  const PairClasses mu = negative_elliptic_pairs(theta, r2);
  const double pair_sum = class_sum(mu, [](double x) {
    const double q = -one_minus_sq(x);
    return (1.0 + x) / (q * std::sqrt(q));
  });
  return std::sqrt(-16.0 * m * m * m * r2 * pair_sum);
}

// --- negative hyperbolic ------------------------------------------------------------

LiftedState lift_negative_hyperbolic(const NegativeHyperbolic& p, double w, double x, double beta,
                                     double w_dot, double x_dot) {
  validate(p);
  const double eta = std::sqrt(w * w + x * x + 1.0);
  const double eta_dot = (w * w_dot + x * x_dot) / eta;
  const double bd = p.a_mom / (4.0 * p.m * eta * eta);
  LiftedState ls{SystemState{SpaceSpec::H3(), four_bodies(p.m, 4), 0.0}, p, {}};
  for (int i = 0; i < 4; ++i) {
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    const Polar yz = hyperbolic(eta, eta_dot, beta + (i >= 2 ? p.phi : 0.0), bd);
    ls.state.bodies[i].position = {sign * w, sign * x, yz.pos0, yz.pos1};
    ls.state.bodies[i].velocity = {sign * w_dot, sign * x_dot, yz.vel0, yz.vel1};
  }
  finish(ls, negative_hyperbolic_pairs(p.phi, eta), Diagonal::D14);
  return ls;
}

// --- negative elliptic-hyperbolic ---------------------------------------------------

LiftedState lift_negative_elliptic_hyperbolic(const NegativeEllipticHyperbolic& p, double r,
                                              double alpha, double beta,
                                              std::optional<double> r_dot) {
  validate(p);
  require(r >= 0.0 && finite(r), "negative elliptic-hyperbolic: r must be >= 0");
  const double rd = r_dot.value_or(p.mu0);
  const double eta = std::sqrt(r * r + 1.0);
  const double eta_dot = r * rd / eta;
  const double ad = r > 0.0 ? p.d1 / (4.0 * p.m * r * r) : 0.0;
  const double bd = p.d2 / (4.0 * p.m * eta * eta);
  LiftedState ls{SystemState{SpaceSpec::H3(), four_bodies(p.m, 4), 0.0}, p, {}};
  for (int i = 0; i < 4; ++i) {
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    const Polar wx = polar(r, rd, 0.0, alpha, ad, 0.0);
    const Polar yz = hyperbolic(eta, eta_dot, beta + (i >= 2 ? p.phi : 0.0), bd);
    if (yz.pos1 < 1.0)
      throw InvalidArgument("negative elliptic-hyperbolic: z coordinates must be >= 1");
    ls.state.bodies[i].position = {sign * wx.pos0, sign * wx.pos1, yz.pos0, yz.pos1};
    ls.state.bodies[i].velocity = {sign * wx.vel0, sign * wx.vel1, yz.vel0, yz.vel1};
  }
  finish(ls, negative_elliptic_hyperbolic_pairs(p.phi, r), Diagonal::D14);
  return ls;
}

// --- dispatch -------------------------------------------------------------------------

LiftedState initial_state(const CandidateParams& params) {
  return std::visit(
      Overloaded{
          [](const TrapezoidFixedPoint& p) {
            LiftedState ls{make_trapezoid_fixed_point(p), p, {}};
            const double a = p.alpha, b = p.beta;
            ls.closed_form.set(1, 2, -std::cos(2 * a));
            ls.closed_form.set(3, 4, -std::cos(2 * b));
            ls.closed_form.set(1, 3, std::cos(a - b));
            ls.closed_form.set(2, 4, std::cos(a - b));
            ls.closed_form.set(1, 4, -std::cos(a + b));
            ls.closed_form.set(2, 3, -std::cos(a + b));
            return ls;
          },
          [](const RectangleRelEq2D& p) {
            LiftedState ls{make_rectangle_releq_2d(p, 0.0), p, {}};
            finish(ls, rectangle_2d_pairs(p.sigma, p.alpha, p.r), Diagonal::D13);
            return ls;
          },
          [](const PositiveElliptic& p) { return lift_positive_elliptic(p, p.z0, p.nu0, p.alpha0); },
          [](const PositiveEllipticElliptic& p) {
            return lift_positive_elliptic_elliptic(p, p.r0, p.alpha0, p.beta0);
          },
          [](const NegativeElliptic& p) { return lift_negative_elliptic(p, p.y0, p.nu0, p.alpha0); },
          [](const NegativeHyperbolic& p) {
            return lift_negative_hyperbolic(p, p.w0, p.x0, p.beta0);
          },
          [](const NegativeEllipticHyperbolic& p) {
            return lift_negative_elliptic_hyperbolic(p, p.r0, p.alpha0, p.beta0);
          },
      },
      params);
}

}  // namespace curved_nbody
