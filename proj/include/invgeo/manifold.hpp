#pragma once

#include <Eigen/Dense>
#include <random>
#include <string>
#include <vector>

#include "invgeo/errors.hpp"

namespace invgeo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// One factor of a (possibly product) model manifold.
///
/// Torus factors use chart coordinates in [0,1)^dim with metric
/// diag(sides^2); a circle of radius r is a 1-torus with side 2*pi*r.
/// Sphere factors are the unit 2-sphere, represented extrinsically by unit
/// vectors in R^3 with tangent-space projection.
struct Factor {
  enum class Kind { Torus, Sphere };

  Kind kind = Kind::Torus;
  int dim = 0;
  Vec sides;  // torus only, one side length per coordinate

  int ambient_dim() const { return kind == Kind::Sphere ? dim + 1 : dim; }
};

/// A closed model Riemannian manifold: flat torus, round sphere, or a
/// metric product of those. Products are kept as flat factor lists.
class Manifold {
 public:
  Manifold() = default;

  static Manifold torus(int dim);
  static Manifold torus(const Vec& sides);
  static Manifold circle(double radius);
  static Manifold sphere();
  static Manifold product(const std::vector<Manifold>& parts);

  const std::vector<Factor>& factors() const { return factors_; }
  int num_factors() const { return static_cast<int>(factors_.size()); }
  int ambient_dim() const;
  int intrinsic_dim() const;
  bool is_product() const { return factors_.size() > 1; }
  std::string id() const;

  bool operator==(const Manifold& other) const;
  bool operator!=(const Manifold& other) const { return !(*this == other); }

  /// Offset of factor f in ambient coordinates.
  int factor_offset(int f) const;
  /// Offset of factor f in intrinsic (tangent-frame) coordinates.
  int intrinsic_offset(int f) const;

  /// Canonical representative: torus coordinates wrapped to [0,1), sphere
  /// coordinates normalized. Throws ArgumentError if the input is not close
  /// to the manifold (sphere norm off by more than 1e-6).
  Vec canonicalize(const Vec& p) const;
  bool contains(const Vec& p, double tol = 1e-9) const;

  /// Riemannian inner product of tangent vectors u, v at p.
  double metric(const Vec& p, const Vec& u, const Vec& v) const;
  double norm(const Vec& p, const Vec& u) const;

  /// Orthogonal projection onto the tangent space at p (sphere factors).
  Vec project_tangent(const Vec& p, const Vec& u) const;
  bool is_tangent(const Vec& p, const Vec& u, double tol = 1e-10) const;

  /// Distance along the shortest geodesic.
  double geodesic_distance(const Vec& a, const Vec& b) const;

  /// Squared displacement used by the discrete energy quadrature: minimal
  /// lattice displacement on torus factors (exact), ambient chord on sphere
  /// factors (O(h^2) below the arc), summed over factors.
  double step_sq(const Vec& a, const Vec& b) const;

  /// Chart/ambient displacement entering step_sq, as a vector: wrapped delta
  /// on torus coordinates, plain difference on sphere coordinates.
  Vec step_delta(const Vec& a, const Vec& b) const;

  /// Diagonal coordinate weights of the quadrature (torus: sides^2, sphere: 1).
  Vec coordinate_weights() const;

  /// Point at parameter fraction f in [0,1] along the shortest geodesic a->b.
  /// Requires geodesic_distance(a,b) < injectivity_radius_bound().
  Vec geodesic_point(const Vec& a, const Vec& b, double f) const;

  /// Exponential map (exact on all factors).
  Vec exp(const Vec& p, const Vec& v) const;
  /// Inverse of exp within the injectivity radius.
  Vec log(const Vec& p, const Vec& q) const;
  /// Parallel transport of tangent v from T_a to T_b along the shortest
  /// geodesic.
  Vec transport(const Vec& a, const Vec& b, const Vec& v) const;

  /// Positive lower bound on the injectivity radius: min side / 2 on tori,
  /// pi on the unit sphere, min over factors on products.
  double injectivity_radius_bound() const;

  /// g-orthonormal tangent frame at p, ambient_dim x intrinsic_dim.
  Mat tangent_frame(const Vec& p) const;

  Vec random_point(std::mt19937_64& rng) const;
  Vec random_tangent(const Vec& p, std::mt19937_64& rng) const;

  Eigen::VectorBlock<const Vec> factor_block(const Vec& x, int f) const;

 private:
  std::vector<Factor> factors_;
};

/// A point tagged with its manifold; coords are canonical.
struct ManifoldPoint {
  Manifold manifold;
  Vec coords;

  ManifoldPoint() = default;
  ManifoldPoint(Manifold m, Vec c) : manifold(std::move(m)), coords(manifold.canonicalize(c)) {}
};

/// A tangent vector in the same coordinate system as its base point.
struct TangentVector {
  ManifoldPoint base;
  Vec components;
};

/// g_p(u, v). Throws ArgumentError when u, v are not based at the same point.
double metric_eval(const TangentVector& u, const TangentVector& v);

/// Constant-speed sampling of the unique minimizing geodesic from a to b,
/// endpoints exact. Throws NonUniqueGeodesicError at or beyond the
/// injectivity bound.
std::vector<ManifoldPoint> shortest_geodesic(const ManifoldPoint& a, const ManifoldPoint& b,
                                             int samples);

double injectivity_radius_bound(const Manifold& m);

}  // namespace invgeo
