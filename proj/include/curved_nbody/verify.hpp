#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace curved_nbody {

// --- residual expressions --------------------------------------------------

/// det A of the trapezoid linear system, built from the four equatorial
/// positions. Throws AntipodalConfiguration when beta - alpha = pi.
double det_A_cartesian(double alpha, double beta);

/// The q_ij entries behind det_A_cartesian, keyed "12", "13", "14", "31",
/// "32", "34".
std::map<std::string, double> trapezoid_entries(double alpha, double beta);

/// Two-term polar expression of det A.
///
/// DoubleAngleVariant multiplies the second term by sin(2 alpha) sin(2 beta).
/// It is kept for comparison only: it does not reproduce det_A_cartesian
/// (see docs/notes.md).
enum class PolarForm { Standard, DoubleAngleVariant };

std::string to_string(PolarForm f);

double det_A_polar(double alpha, double beta, PolarForm form = PolarForm::Standard);

/// Just the cos alpha cos beta / (16 |cos^3| |cos^3| |sin| |sin|) term.
double det_A_polar_first_term(double alpha, double beta);

enum class Balance { X, Y };

/// omega^2 required by the x- or y-balance of the rotating rectangle at t = 0.
double releq_2d_omega_squared(double alpha, double r, int sigma, double m, Balance b);

/// omega^2(X) - omega^2(Y).
double releq_2d_mismatch(double alpha, double r, int sigma, double m);

/// m r sin(theta) [1/|1 - e12^2|^{3/2} - 1/|1 - e14^2|^{3/2}] on S3.
double pe_identity_residual(double theta, double z, double gamma, double m);

/// Right-hand sides of the elliptic-elliptic angular equations.
struct PeeRhs {
  double alpha_1;  ///< m r sin a (A + B)
  double alpha_2;  ///< -m r sin a (A + B)
  double beta_1;   ///< m rho sin b (A - B)
  double beta_2;   ///< -m rho sin b (A - B)
};
PeeRhs pee_rhs(double a, double b, double r, double m);

/// m r sin(theta) [1/(mu12^2 - 1)^{3/2} - 1/(mu14^2 - 1)^{3/2}] on H3.
double ne_identity_residual(double theta, double y, double gamma, double m);

/// Reading of the bracketed denominators of the hyperbolic-rotation equations.
enum class Reading { CoshInside, CosInside };

std::string to_string(Reading r);
Reading parse_reading(const std::string& s);

/// m eta sinh(phi) [1/|(eta^2 - 1 - eta^2 C)^2 - 1|^{3/2} + 1/|(eta^2 - 1 + eta^2 C)^2 - 1|^{3/2}]
/// with C = cosh(phi) or cos(phi).
double nh_identity_residual(double phi, double eta, double m, Reading reading);

/// m eta sinh(phi) [1/|(r^2 - eta^2 C)^2 - 1|^{3/2} + 1/|(r^2 + eta^2 C)^2 - 1|^{3/2}],
/// eta^2 = r^2 + 1.
double neh_identity_residual(double phi, double r, double m, Reading reading);

// --- root localization -------------------------------------------------------

/// Bisects a sign change of f on [lo, hi] down to adjacent doubles.
double bisect(const std::function<double(double)>& f, double lo, double hi);

struct Crossing {
  double lo;
  double hi;
  double x;      ///< bisected location
  double f_x;
  bool pole;     ///< |f| grew under refinement: a singularity, not a zero
};

/// Sign changes between consecutive finite samples (xs[k], xs[k+1]) where
/// contiguous[k] is true; each one is bisected and classified.
std::vector<Crossing> locate_sign_changes(const std::function<double(double)>& f,
                                          const std::vector<double>& xs,
                                          const std::vector<double>& fs,
                                          const std::vector<bool>& contiguous);

// --- theorem drivers ------------------------------------------------------------

enum class TheoremId { T1, T2, T3, T4, T5, T6, T7 };

/// "T1_trapezoid", "T2_rect_releq_2d", ...
std::string to_string(TheoremId id);
/// Accepts "T1".."T7" or the long names.
TheoremId parse_theorem(const std::string& s);

enum class Status { Confirmed, Violated, Inconclusive };
std::string to_string(Status s);

struct ParamRange {
  std::string name;
  double lo;
  double hi;
  int steps;

  /// lo + k (hi - lo) / (steps - 1), k = 0..steps-1.
  std::vector<double> points() const;
};

struct Exclusion {
  std::string rule;
  double margin;
};

struct ScanGrid {
  std::vector<ParamRange> ranges;
  std::vector<Exclusion> exclusions;
  std::map<std::string, double> fixed;
  std::map<std::string, std::vector<double>> lists;

  const ParamRange& range(const std::string& name) const;
  double margin(const std::string& rule) const;
  double value(const std::string& name) const;
  const std::vector<double>& list(const std::string& name) const;
  /// Throws InvalidArgument when a range is empty or inverted.
  void validate() const;
  nlohmann::json to_json() const;
};

using Tolerances = std::map<std::string, double>;

ScanGrid default_grid(TheoremId id);
Tolerances default_tolerances(TheoremId id);

/// Applies "name=lo:hi:steps", "name=value" or "name=v1;v2;..." overrides.
/// Unknown names are rejected.
void apply_grid_override(ScanGrid& grid, const std::string& entry);
void apply_tolerance_override(Tolerances& tol, const std::string& entry);

struct TheoremOptions {
  /// Restricts T6/T7 to one reading; both are evaluated when empty.
  std::optional<Reading> reading;
};

struct VerificationReport {
  TheoremId theorem = TheoremId::T1;
  Status status = Status::Inconclusive;
  nlohmann::json evidence = nlohmann::json::object();
  std::vector<std::string> notes;
  /// Reproducible parameter point for Violated reports.
  nlohmann::json witness;
  ScanGrid grid;
  Tolerances tolerances;

  nlohmann::json to_json() const;
  /// Human-readable multi-line summary.
  std::string summary() const;
};

VerificationReport run_theorem(TheoremId id, const ScanGrid& grid, const Tolerances& tol,
                               const TheoremOptions& opts = {});

inline VerificationReport run_theorem(TheoremId id) {
  return run_theorem(id, default_grid(id), default_tolerances(id));
}

}  // namespace curved_nbody
