#pragma once
// Test-only reference implementations. Written from the formulas directly in
// long double with plain arrays, sharing no code with the library.

#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using R = long double;
using V = std::array<R, 4>;

struct Config {
  int dim;    // 3 or 4
  int sigma;  // +1 or -1
  std::vector<R> m;
  std::vector<V> q;
  std::vector<V> v;
};

inline R dot(const V& a, const V& b, int dim, int sigma) {
  R s = 0;
  for (int k = 0; k < dim; ++k) s += (k == dim - 1 && sigma < 0 ? -1 : 1) * a[k] * b[k];
  return s;
}

/// a_i = sum_j m_j (q_j - sigma x q_i) / (sigma - sigma x^2)^{3/2} - sigma (v.v) q_i
inline std::vector<V> acceleration(const Config& c) {
  const std::size_t n = c.m.size();
  std::vector<V> a(n, V{0, 0, 0, 0});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const R x = dot(c.q[i], c.q[j], c.dim, c.sigma);
      const R base = c.sigma * (1 - x * x);
      const R w = c.m[j] / std::pow(base, R(1.5));
      for (int k = 0; k < c.dim; ++k) a[i][k] += w * (c.q[j][k] - c.sigma * x * c.q[i][k]);
    }
    const R vv = dot(c.v[i], c.v[i], c.dim, c.sigma);
    for (int k = 0; k < c.dim; ++k) a[i][k] -= c.sigma * vv * c.q[i][k];
  }
  return a;
}

inline R force_function(const Config& c) {
  R u = 0;
  for (std::size_t i = 0; i < c.m.size(); ++i)
    for (std::size_t j = i + 1; j < c.m.size(); ++j) {
      const R x = dot(c.q[i], c.q[j], c.dim, c.sigma);
      u += c.sigma * c.m[i] * c.m[j] * x / std::sqrt(c.sigma * (1 - x * x));
    }
  return u;
}

inline R kinetic(const Config& c) {
  R t = 0;
  for (std::size_t i = 0; i < c.m.size(); ++i)
    t += R(0.5) * c.m[i] * dot(c.v[i], c.v[i], c.dim, c.sigma) * (c.sigma * dot(c.q[i], c.q[i], c.dim, c.sigma));
  return t;
}

// --- generators -------------------------------------------------------------------

/// Random point on S^{dim-1} (sigma = 1) or the upper hyperboloid sheet.
inline V random_point(std::mt19937_64& rng, int dim, int sigma, R spread = 1.2) {
  std::normal_distribution<double> g(0.0, 1.0);
  V p{0, 0, 0, 0};
  if (sigma > 0) {
    R n = 0;
    for (int k = 0; k < dim; ++k) {
      p[k] = g(rng);
      n += p[k] * p[k];
    }
    for (int k = 0; k < dim; ++k) p[k] /= std::sqrt(n);
  } else {
    R n = 0;
    for (int k = 0; k < dim - 1; ++k) {
      p[k] = spread * g(rng) / std::sqrt(R(dim));
      n += p[k] * p[k];
    }
    p[dim - 1] = std::sqrt(1 + n);
  }
  return p;
}

/// Random tangent vector at p.
inline V random_tangent(std::mt19937_64& rng, const V& p, int dim, int sigma, R scale = 0.5) {
  std::normal_distribution<double> g(0.0, 1.0);
  V v{0, 0, 0, 0};
  for (int k = 0; k < dim; ++k) v[k] = scale * g(rng);
  const R c = dot(v, p, dim, sigma) / dot(p, p, dim, sigma);
  for (int k = 0; k < dim; ++k) v[k] -= c * p[k];
  return v;
}

/// Smallest sigma - sigma x^2 over pairs.
inline R min_base(const Config& c) {
  R b = 1e300L;
  for (std::size_t i = 0; i < c.m.size(); ++i)
    for (std::size_t j = i + 1; j < c.m.size(); ++j) {
      const R x = dot(c.q[i], c.q[j], c.dim, c.sigma);
      b = std::min(b, c.sigma * (1 - x * x));
    }
  return b;
}

/// Random state with every pair base above min_b.
inline Config random_config(std::mt19937_64& rng, int dim, int sigma, int n, R min_b = 0.05) {
  std::uniform_real_distribution<double> mass(0.5, 2.0);
  for (;;) {
    Config c{dim, sigma, {}, {}, {}};
    for (int i = 0; i < n; ++i) {
      c.m.push_back(mass(rng));
      c.q.push_back(random_point(rng, dim, sigma));
      c.v.push_back(random_tangent(rng, c.q.back(), dim, sigma));
    }
    if (min_base(c) > min_b) return c;
  }
}

using M = std::array<std::array<R, 4>, 4>;

inline V apply(const M& a, const V& x, int dim) {
  V y{0, 0, 0, 0};
  for (int r = 0; r < dim; ++r)
    for (int k = 0; k < dim; ++k) y[r] += a[r][k] * x[k];
  return y;
}

inline M mul(const M& a, const M& b, int dim) {
  M c{};
  for (int r = 0; r < dim; ++r)
    for (int k = 0; k < dim; ++k)
      for (int s = 0; s < dim; ++s) c[r][k] += a[r][s] * b[s][k];
  return c;
}

/// Random orthogonal matrix on the first n coordinates (Gram-Schmidt of
/// Gaussian columns), identity elsewhere.
inline M random_orthogonal(std::mt19937_64& rng, int n, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  M q{};
  for (int k = 0; k < dim; ++k) q[k][k] = 1;
  std::vector<std::array<R, 4>> cols;
  while (static_cast<int>(cols.size()) < n) {
    std::array<R, 4> c{};
    for (int k = 0; k < n; ++k) c[k] = g(rng);
    for (const auto& b : cols) {
      R d = 0;
      for (int k = 0; k < n; ++k) d += c[k] * b[k];
      for (int k = 0; k < n; ++k) c[k] -= d * b[k];
    }
    R nn = 0;
    for (int k = 0; k < n; ++k) nn += c[k] * c[k];
    if (nn < 1e-6) continue;
    for (int k = 0; k < n; ++k) c[k] /= std::sqrt(nn);
    cols.push_back(c);
  }
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) q[r][k] = cols[k][r];
  return q;
}

/// Random isometry: orthogonal for sigma = 1; for sigma = -1 a spatial
/// rotation composed with a boost (rapidity up to 1) along a random axis.
inline M random_isometry(std::mt19937_64& rng, int dim, int sigma) {
  if (sigma > 0) return random_orthogonal(rng, dim, dim);
  const M rot = random_orthogonal(rng, dim - 1, dim);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const R chi = u(rng);
  M boost{};
  for (int k = 0; k < dim; ++k) boost[k][k] = 1;
  boost[0][0] = std::cosh(chi);
  boost[0][dim - 1] = std::sinh(chi);
  boost[dim - 1][0] = std::sinh(chi);
  boost[dim - 1][dim - 1] = std::cosh(chi);
  return mul(random_orthogonal(rng, dim - 1, dim), mul(boost, rot, dim), dim);
}

}  // namespace oracle
