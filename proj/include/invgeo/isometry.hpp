#pragma once

#include <memory>
#include <vector>

#include "invgeo/manifold.hpp"

namespace invgeo {

/// Exact description of the fixed-point set of an isometry.
struct FixedPointSet {
  enum class Kind { WholeManifold, FinitePoints, GreatCircle, ProductOf };

  Kind kind = Kind::WholeManifold;
  Manifold manifold;                    // the (factor) manifold this set lives on
  std::vector<Vec> points;              // FinitePoints
  Vec axis;                             // GreatCircle: {x : x . axis = 0}
  std::vector<FixedPointSet> factor_sets;  // ProductOf, aligned with factors

  /// Geodesic distance from p to the set.
  double distance_to(const Vec& p) const;
  bool contains(const Vec& p, double tol = 1e-10) const;
  bool is_whole_manifold() const;
  /// Total number of points when the set is finite (product of factor counts);
  /// -1 when not finite.
  long finite_count() const;
};

/// An isometry of a model manifold, with an optional homotopy to the
/// identity. All supported kinds reduce per factor to an affine map
/// x -> A x + b (torus charts, mod 1) or an orthogonal map x -> R x
/// (sphere), so differentials are constant matrices.
class Isometry {
 public:
  Isometry() = default;

  static Isometry identity(const Manifold& m);
  static Isometry torus_translation(const Manifold& m, const Vec& v);
  static Isometry torus_rotation90(const Manifold& m);
  static Isometry sphere_rotation(const Manifold& m, const Vec& axis, double angle);
  static Isometry product(const Isometry& a, const Isometry& b);
  static Isometry power(const Isometry& base, int k);
  static Isometry compose(const Isometry& outer, const Isometry& inner);

  const Manifold& manifold() const { return manifold_; }

  /// Image point, canonicalized.
  Vec apply(const Vec& p) const;
  /// Pushforward of an ambient tangent vector (constant linear part).
  Vec differential(const Vec& u) const;
  /// Full ambient linear part as a block-diagonal matrix.
  const Mat& linear() const { return linear_; }
  /// Full ambient translation part (torus blocks; zero on sphere blocks).
  const Vec& translation() const { return translation_; }

  Isometry inverse() const;
  bool is_identity(double tol = 1e-12) const;

  /// Whether a homotopy-to-identity track I_t is available.
  bool has_homotopy() const;
  /// I_t(p) for t in [0,1]; I_0 = id, I_1 = this. Throws MissingHomotopyError.
  Vec homotopy(double t, const Vec& p) const;

  /// Exact fixed-point set {p : I(p) = p}. Throws UnsupportedFixedSetError
  /// for factor maps outside the supported closed forms.
  FixedPointSet fixed_point_set() const;

  /// Structural description used by serialization.
  struct Node;
  std::shared_ptr<const Node> node() const { return node_; }

 private:
  Manifold manifold_;
  Mat linear_;       // ambient x ambient block diagonal
  Vec translation_;  // ambient
  std::shared_ptr<const Node> node_;

  Isometry(Manifold m, Mat A, Vec b, std::shared_ptr<const Node> node);
  friend struct IsometryAccess;
};

struct Isometry::Node {
  enum class Kind { Identity, TorusTranslation, TorusRotation90, SphereRotation, Product, Power, Compose };
  Kind kind = Kind::Identity;
  Vec v;                 // translation vector
  Vec axis;              // rotation axis
  double angle = 0;      // rotation angle
  int exponent = 1;      // Power
  std::vector<std::shared_ptr<const Node>> children;
  std::vector<Manifold> child_manifolds;
};

/// ManifoldPoint front-ends.
ManifoldPoint apply_isometry(const Isometry& iso, const ManifoldPoint& p);
TangentVector differential(const Isometry& iso, const TangentVector& u);
ManifoldPoint evaluate_homotopy(const Isometry& iso, double t, const ManifoldPoint& p);

}  // namespace invgeo
