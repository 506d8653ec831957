#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "invgeo/energy.hpp"
#include "invgeo/optimizer.hpp"

namespace invgeo::testsupport {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Reference paths

/// Straight representative of the lattice class `cls` through x0 on a torus.
inline DiscretePath torus_line(const Manifold& m, const Isometry& iso, const Vec& x0,
                               const Vec& cls, int n) {
  Vec x1 = iso.apply(x0);
  Vec slope(m.ambient_dim());
  for (int i = 0; i < slope.size(); ++i) {
    double d = x1[i] - x0[i];
    slope[i] = d - std::floor(d + 0.5) + cls[i];
  }
  Mat samples(n, m.ambient_dim());
  for (int k = 0; k < n; ++k)
    samples.row(k) = m.canonicalize(x0 + (static_cast<double>(k) / n) * slope).transpose();
  return DiscretePath(m, iso, 1.0, std::move(samples));
}

/// Great circle in the plane orthogonal to z, traversed with total angle L
/// over one shift; valid for the z-rotation twist when L = theta + 2 pi k.
inline DiscretePath equator_path(const Manifold& s2, const Isometry& iso, double total_angle,
                                 int n) {
  Mat samples(n, 3);
  for (int k = 0; k < n; ++k) {
    double phi = total_angle * k / n;
    samples(k, 0) = std::cos(phi);
    samples(k, 1) = std::sin(phi);
    samples(k, 2) = 0.0;
  }
  return DiscretePath(s2, iso, 1.0, std::move(samples));
}

// ---------------------------------------------------------------------------
// Oracles

/// Central finite difference of the energy along a tangent field.
inline double fd_differential(const DiscretePath& path, const Mat& field, double h = 1e-6) {
  double ep = energy(displace(path, field, h));
  double em = energy(displace(path, field, -h));
  return (ep - em) / (2.0 * h);
}

struct JacobiCounts {
  int index = 0;
  int nullity = 0;
};

/// Second-variation counts of the k-fold great circle on the unit sphere,
/// from the periodic Jacobi equation: normal Fourier modes carry eigenvalue
/// (2 pi j)^2 - L^2 with L = 2 pi k (multiplicity 2 for j > 0), tangential
/// modes (2 pi j)^2; the orbit direction is removed from the kernel count.
inline JacobiCounts sphere_circle_jacobi_counts(int k, int max_mode = 1024) {
  JacobiCounts c;
  double L2 = (2.0 * kPi * k) * (2.0 * kPi * k);
  int zeros = 0;
  for (int j = -max_mode; j <= max_mode; ++j) {
    double normal = (2.0 * kPi * j) * (2.0 * kPi * j) - L2;
    if (normal < -1e-9) ++c.index;
    if (std::abs(normal) <= 1e-9) ++zeros;
    if (j == 0) ++zeros;  // tangential constant mode
  }
  c.nullity = zeros - 1;
  return c;
}

/// Flat-line counts on a torus: the Jacobi operator is -d^2/dt^2 on periodic
/// fields, so only the constant fields are null and nothing is negative.
inline JacobiCounts torus_line_jacobi_counts(int dim) { return {0, dim - 1}; }

/// RK4 integration of the unit-sphere geodesic equation x'' = -|v|^2 x.
inline std::vector<Vec> rk4_sphere_geodesic(const Vec& x0, const Vec& v0, double time,
                                            int steps) {
  auto acc = [](const Vec& x, const Vec& v) -> Vec { return -v.squaredNorm() * x; };
  std::vector<Vec> traj;
  Vec x = x0, v = v0;
  traj.push_back(x);
  double h = time / steps;
  for (int i = 0; i < steps; ++i) {
    Vec k1x = v, k1v = acc(x, v);
    Vec k2x = v + 0.5 * h * k1v, k2v = acc(x + 0.5 * h * k1x, v + 0.5 * h * k1v);
    Vec k3x = v + 0.5 * h * k2v, k3v = acc(x + 0.5 * h * k2x, v + 0.5 * h * k2v);
    Vec k4x = v + h * k3v, k4v = acc(x + h * k3x, v + h * k3v);
    x = x + (h / 6.0) * (k1x + 2 * k2x + 2 * k3x + k4x);
    v = v + (h / 6.0) * (k1v + 2 * k2v + 2 * k3v + k4v);
    traj.push_back(x);
  }
  return traj;
}

/// Brute-force fixed-point search of an isometry of the square torus.
inline std::vector<Vec> grid_fixed_points(const Isometry& iso, int grid = 400, double tol = 1e-7) {
  const Manifold& m = iso.manifold();
  std::vector<Vec> out;
  if (m.ambient_dim() != 2) throw std::runtime_error("grid search is 2d only");
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      Vec p(2);
      p << static_cast<double>(i) / grid, static_cast<double>(j) / grid;
      if (m.geodesic_distance(iso.apply(p), p) < 0.75 / grid) {
        // polish by local bisection on the displacement
        Vec q = p;
        for (int it = 0; it < 60; ++it) {
          Vec d = m.step_delta(q, iso.apply(q));
          if (d.norm() < tol) break;
          q = m.canonicalize(q + 0.5 * d);
        }
        if (m.geodesic_distance(iso.apply(q), q) < tol) {
          bool dup = false;
          for (const auto& r : out) dup |= m.geodesic_distance(q, r) < 1e-4;
          if (!dup) out.push_back(q);
        }
      }
    }
  return out;
}

/// Deterministic random tangent field along a path.
inline Mat random_field(const DiscretePath& path, std::mt19937_64& rng, double amp = 1.0) {
  Mat field(path.size(), path.manifold().ambient_dim());
  for (int k = 0; k < path.size(); ++k)
    field.row(k) = (amp * path.manifold().random_tangent(path.sample(k), rng)).transpose();
  return field;
}

}  // namespace invgeo::testsupport
