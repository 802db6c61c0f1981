#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "curved_nbody/dynamics.hpp"

namespace curved_nbody {

// Candidate families. Angles are in radians; masses are dimensionless with
// the gravitational constant set to 1.

/// Static trapezoid on the equator of S2: bodies 1,2 of mass m at angles
/// alpha and pi - alpha, bodies 3,4 of mass M at beta and 3pi - beta.
struct TrapezoidFixedPoint {
  double alpha;  ///< (0, pi/2)
  double beta;   ///< (pi, 3 pi/2)
  double m;
  double M;
};

/// Rectangle rotating rigidly on the circle z = const of S2 or H2.
struct RectangleRelEq2D {
  int sigma;
  double alpha;  ///< (0, pi/2); pi/4 is the square
  double r;      ///< circle radius, (0, 1) on S2
  double m;
  double omega;  ///< angular velocity, supplied by the caller
};

/// S3, one rotation in the wx plane; y = gamma z throughout.
struct PositiveElliptic {
  double m;
  double theta;  ///< angle between bodies 1 and 2 in the wx plane
  double c_wx;   ///< angular momentum; alpha' = c / (4 m r^2)
  double gamma;
  double z0;
  double nu0;    ///< z'(0)
  double alpha0;
};

/// S3, rotations in both the wx and yz planes.
struct PositiveEllipticElliptic {
  double m;
  double a;
  double b;
  double c1;  ///< c_wx; alpha' = c1 / (4 m r^2)
  double c2;  ///< c_yz; beta' = c2 / (4 m rho^2)
  double r0;
  double alpha0;
  double beta0;
};

/// H3, one rotation in the wx plane; z = gamma y throughout.
struct NegativeElliptic {
  double m;
  double theta;
  double b_wx;  ///< alpha' = b / (4 m r^2)
  double gamma;
  double y0;
  double nu0;   ///< y'(0)
  double alpha0;
};

/// H3, hyperbolic rotation in the yz plane.
struct NegativeHyperbolic {
  double m;
  double phi;
  double a_mom;  ///< beta' = a / (4 m eta^2); equals -c_yz
  double w0;
  double x0;
  double beta0;
};

/// H3, elliptic rotation in wx and hyperbolic rotation in yz.
struct NegativeEllipticHyperbolic {
  double m;
  double phi;
  double d1;  ///< alpha' = d1 / (4 m r^2); equals c_wx
  double d2;  ///< beta' = d2 / (4 m eta^2); equals -c_yz
  double r0;
  double mu0;  ///< r'(0)
  double alpha0;
  double beta0;
};

using CandidateParams =
    std::variant<TrapezoidFixedPoint, RectangleRelEq2D, PositiveElliptic,
                 PositiveEllipticElliptic, NegativeElliptic, NegativeHyperbolic,
                 NegativeEllipticHyperbolic>;

/// Short identifier: "trapezoid", "rectangle_releq_2d", "positive_elliptic", ...
std::string family_name(const CandidateParams& params);

/// Throws InvalidArgument when a field violates its family's range.
void validate(const CandidateParams& params);

/// Inner products of the six pairs of a four-body configuration.
class PairTable {
 public:
  /// i, j are 1-based body indices, i != j.
  double operator()(int i, int j) const;
  void set(int i, int j, double value);
  std::map<std::string, double> to_map() const;
  static PairTable of(const SystemState& state);

 private:
  static std::size_t slot(int i, int j);
  std::array<double, 6> v_{};
};

/// The three pair classes of a rectangle-like candidate, as inner products.
struct PairClasses {
  double e12;  ///< = e34
  double e13;  ///< = e24
  double e14;  ///< = e23
};

PairClasses rectangle_2d_pairs(int sigma, double alpha, double r);
/// s = delta z^2 with delta = gamma^2 + 1.
PairClasses positive_elliptic_pairs(double theta, double s);
PairClasses positive_elliptic_elliptic_pairs(double a, double b, double r);
/// r2 = z^2 - y^2 - 1.
PairClasses negative_elliptic_pairs(double theta, double r2);
PairClasses negative_hyperbolic_pairs(double phi, double eta);
PairClasses negative_elliptic_hyperbolic_pairs(double phi, double r);

struct LiftedState {
  SystemState state;
  CandidateParams family;
  /// Inner products predicted by the family's closed forms.
  PairTable closed_form;
  /// Some pair coincides or is antipodal; the dynamics are undefined there.
  bool singular = false;
  PairKind singular_kind = PairKind::None;
  int singular_i = -1;
  int singular_j = -1;
  /// The designated diagonals are strictly longer than both side classes.
  bool proper_rectangle = false;
};

/// True when diag is strictly smaller (longer geodesic) than both sides.
bool diagonals_longer(double diag, double side_a, double side_b);

// --- constructors ----------------------------------------------------------

SystemState make_trapezoid_fixed_point(const TrapezoidFixedPoint& p);

/// Configuration at time t with exact velocities. The constructor never
/// solves for omega.
SystemState make_rectangle_releq_2d(const RectangleRelEq2D& p, double t);
/// Exact second derivatives of the rigid rotation at time t.
std::vector<Vec> rectangle_releq_2d_acceleration(const RectangleRelEq2D& p, double t);

/// Closes over the positive elliptic ansatz at (z, nu = z', alpha).
/// Throws DomainExit when 1 - delta z^2 <= 0.
LiftedState lift_positive_elliptic(const PositiveElliptic& p, double z, double nu, double alpha);
/// Ansatz second derivatives given nu' (alpha' from the conserved c_wx).
std::vector<Vec> positive_elliptic_acceleration(const PositiveElliptic& p, double z, double nu,
                                                double alpha, double nu_dot);
/// Force factor with velocity terms: z'' = F z.
double pe_force_factor_velocity(const PositiveElliptic& p, double z, double nu);
/// Force factor with the energy h substituted.
double pe_force_factor_energy(const PositiveElliptic& p, double h, double z);
/// Energy of the square-symmetric lift at (z, nu), in closed form.
double pe_energy(const PositiveElliptic& p, double z, double nu);
/// c_wx that makes z* a fixed point of the reduced system (nu = 0).
double pe_equilibrium_momentum(double m, double theta, double gamma, double z_star);

LiftedState lift_positive_elliptic_elliptic(const PositiveEllipticElliptic& p, double r,
                                            double alpha, double beta, double r_dot = 0.0);

/// Admissible y-interval of the negative elliptic family for a given gamma
/// (z = gamma y > 0 and z^2 - y^2 - 1 >= 0). Empty when |gamma| <= 1.
struct Interval {
  double lo;
  double hi;
  bool empty() const { return !(lo <= hi); }
};
Interval ne_admissible_interval(double gamma);

/// Throws DomainExit when z^2 - y^2 - 1 < 0 or z <= 0.
LiftedState lift_negative_elliptic(const NegativeElliptic& p, double y, double nu, double alpha);
std::vector<Vec> negative_elliptic_acceleration(const NegativeElliptic& p, double y, double nu,
                                                double alpha, double nu_dot);
/// y'' = G y with the velocity terms written out.
double ne_force_factor(const NegativeElliptic& p, double y, double nu);
double ne_energy(const NegativeElliptic& p, double y, double nu);
double ne_equilibrium_momentum(double m, double theta, double gamma, double y_star);

LiftedState lift_negative_hyperbolic(const NegativeHyperbolic& p, double w, double x, double beta,
                                     double w_dot = 0.0, double x_dot = 0.0);

/// r_dot defaults to p.mu0 when not given.
LiftedState lift_negative_elliptic_hyperbolic(const NegativeEllipticHyperbolic& p, double r,
                                              double alpha, double beta,
                                              std::optional<double> r_dot = std::nullopt);

/// Initial state of any family from its stored initial data.
LiftedState initial_state(const CandidateParams& params);

}  // namespace curved_nbody
