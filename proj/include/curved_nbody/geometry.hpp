#pragma once

#include <array>
#include <initializer_list>
#include <span>
#include <string>

#include "curved_nbody/errors.hpp"

namespace curved_nbody {

/// Default proximity tolerance for collision/antipodal detection.
inline constexpr double kSingularTol = 1e-9;

/// Which constant-curvature surface the bodies live on.
///
/// The ambient space is R^3 or R^4 with coordinates (x,y,z) or (w,x,y,z).
/// For sigma = -1 the last coordinate carries the minus sign of the
/// Lorentz product and points live on the upper sheet (last coord >= 1).
class SpaceSpec {
 public:
  SpaceSpec(int ambient_dim, int sigma);

  static SpaceSpec S2() { return {3, 1}; }
  static SpaceSpec S3() { return {4, 1}; }
  static SpaceSpec H2() { return {3, -1}; }
  static SpaceSpec H3() { return {4, -1}; }
  /// Parses "S2", "S3", "H2" or "H3".
  static SpaceSpec parse(const std::string& name);

  int ambient_dim() const noexcept { return dim_; }
  int sigma() const noexcept { return sigma_; }
  bool spherical() const noexcept { return sigma_ > 0; }
  std::string name() const;
  /// Coordinate letters in storage order, "xyz" or "wxyz".
  std::string coordinate_names() const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  int dim_;
  int sigma_;
};

/// Small fixed-capacity coordinate vector (3 or 4 entries).
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim);
  Vec(std::initializer_list<double> values);

  int size() const noexcept { return n_; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(n_)}; }
  std::span<double> coords() { return {c_.data(), static_cast<std::size_t>(n_)}; }

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(double s);

  friend bool operator==(const Vec& a, const Vec& b);

 private:
  std::array<double, 4> c_{};
  int n_ = 0;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator-(Vec a);
Vec operator*(double s, Vec a);
Vec operator*(Vec a, double s);

using Point = Vec;

/// Signed inner product: Euclidean for sigma = +1, Lorentz (last term
/// negated) for sigma = -1. Throws InvalidArgument on a size mismatch.
double inner(const Vec& a, const Vec& b, const SpaceSpec& space);

/// inner(p, p) - sigma; zero on the manifold.
double constraint_residual(const Point& p, const SpaceSpec& space);

/// Sum of squared coordinates. Sets the floating-point scale of inner(p, p).
double euclidean_norm2(const Vec& v);

struct PhaseState {
  Point position;
  Vec velocity;
};

/// Rescales p onto the manifold and removes the normal part of v.
///
/// Under sigma = -1 a point that lands on the lower sheet is negated.
/// Throws DegeneratePoint when inner(p, p) is zero or has the wrong sign.
PhaseState project_state(const Point& p, const Vec& v, const SpaceSpec& space);

/// sigma - sigma (qi.qj)^2, the base of the force denominators. Positive
/// for every nonsingular pair; zero at collision or antipodal placement.
double singular_base(const Point& qi, const Point& qj, const SpaceSpec& space);

PairKind pair_singularity(const Point& qi, const Point& qj, const SpaceSpec& space,
                          double tol = kSingularTol);

}  // namespace curved_nbody
