#include "curved_nbody/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "curved_nbody/format.hpp"

namespace curved_nbody {

std::string to_string(PairKind kind) {
  switch (kind) {
    case PairKind::None: return "none";
    case PairKind::Collision: return "collision";
    case PairKind::Antipodal: return "antipodal";
  }
  return "unknown";
}

namespace {
std::string singular_message(int i, int j, PairKind kind, double base) {
  std::ostringstream os;
  os << "singular pair (" << i + 1 << ", " << j + 1 << "): " << to_string(kind)
     << " (denominator base " << base << ")";
  return os.str();
}
}  // namespace

SingularPair::SingularPair(int i, int j, PairKind kind, double base)
    : Error(singular_message(i, j, kind, base)), i_(i), j_(j), kind_(kind), base_(base) {}

SpaceSpec::SpaceSpec(int ambient_dim, int sigma) : dim_(ambient_dim), sigma_(sigma) {
  if (dim_ != 3 && dim_ != 4) throw InvalidArgument("ambient dimension must be 3 or 4");
  if (sigma_ != 1 && sigma_ != -1) throw InvalidArgument("sigma must be +1 or -1");
}

SpaceSpec SpaceSpec::parse(const std::string& name) {
  if (name == "S2") return S2();
  if (name == "S3") return S3();
  if (name == "H2") return H2();
  if (name == "H3") return H3();
  throw InvalidArgument("unknown space '" + name + "' (expected S2, S3, H2 or H3)");
}

std::string SpaceSpec::name() const {
  return std::string(sigma_ > 0 ? "S" : "H") + (dim_ == 3 ? "2" : "3");
}

std::string SpaceSpec::coordinate_names() const { return dim_ == 3 ? "xyz" : "wxyz"; }

Vec::Vec(int dim) : n_(dim) {
  if (dim < 0 || dim > 4) throw InvalidArgument("vector size must be between 0 and 4");
}

Vec::Vec(std::initializer_list<double> values) : n_(static_cast<int>(values.size())) {
  if (values.size() > 4) throw InvalidArgument("vector size must be between 0 and 4");
  std::size_t k = 0;
  for (double v : values) c_[k++] = v;
}

Vec& Vec::operator+=(const Vec& o) {
  if (o.n_ != n_) throw InvalidArgument("vector size mismatch");
  for (int k = 0; k < n_; ++k) c_[k] += o.c_[k];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  if (o.n_ != n_) throw InvalidArgument("vector size mismatch");
  for (int k = 0; k < n_; ++k) c_[k] -= o.c_[k];
  return *this;
}

Vec& Vec::operator*=(double s) {
  for (int k = 0; k < n_; ++k) c_[k] *= s;
  return *this;
}

bool operator==(const Vec& a, const Vec& b) {
  if (a.n_ != b.n_) return false;
  for (int k = 0; k < a.n_; ++k)
    if (a.c_[k] != b.c_[k]) return false;
  return true;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator-(Vec a) { return a *= -1.0; }
Vec operator*(double s, Vec a) { return a *= s; }
Vec operator*(Vec a, double s) { return a *= s; }

double inner(const Vec& a, const Vec& b, const SpaceSpec& space) {
  const int n = space.ambient_dim();
  if (a.size() != n || b.size() != n)
    throw InvalidArgument("inner product: vectors must have length " + std::to_string(n));
  double s = 0.0;
  for (int k = 0; k < n - 1; ++k) s += a[k] * b[k];
  return s + static_cast<double>(space.sigma()) * a[n - 1] * b[n - 1];
}

double constraint_residual(const Point& p, const SpaceSpec& space) {
  return inner(p, p, space) - space.sigma();
}

double euclidean_norm2(const Vec& v) {
  double s = 0.0;
  for (double c : v.coords()) s += c * c;
  return s;
}

PhaseState project_state(const Point& p, const Vec& v, const SpaceSpec& space) {
  const double sigma = space.sigma();
  const double pp = inner(p, p, space);
  if (!(pp * sigma > 0.0) || !std::isfinite(pp))
    throw DegeneratePoint("cannot project point with signed norm " + brief(pp) +
                          " onto " + space.name());
  Point q = p;
  // already on the manifold to rounding: rescaling again would only move the last bits
  const bool on_sheet = sigma > 0 || p[p.size() - 1] > 0.0;
  if (!on_sheet || std::abs(pp - sigma) > 4.0 * std::numeric_limits<double>::epsilon() * euclidean_norm2(p)) {
    q = p * (1.0 / std::sqrt(std::abs(pp)));
    if (sigma < 0 && q[q.size() - 1] < 0.0) q *= -1.0;
  }
  Vec u = v - (sigma * inner(q, v, space)) * q;
  return {q, u};
}

double singular_base(const Point& qi, const Point& qj, const SpaceSpec& space) {
  const double x = inner(qi, qj, space);
  const double sigma = space.sigma();
  // (1 - x)(1 + x) keeps relative accuracy near x = +-1.
  return sigma * (1.0 - x) * (1.0 + x);
}

PairKind pair_singularity(const Point& qi, const Point& qj, const SpaceSpec& space, double tol) {
  const double x = inner(qi, qj, space);
  const double sigma = space.sigma();
  if (std::abs(x - sigma) < tol) return PairKind::Collision;
  if (sigma > 0 && std::abs(x + 1.0) < tol) return PairKind::Antipodal;
  return PairKind::None;
}

}  // namespace curved_nbody
