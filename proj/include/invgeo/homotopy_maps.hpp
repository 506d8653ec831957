#pragma once

#include "invgeo/path.hpp"

namespace invgeo {

/// Product-manifold scene: a base loop with nontrivial class on the first
/// factor, and an isometry of the product homotopic to the identity.
struct ProductSceneConfig {
  Manifold m1;
  Manifold m2;
  DiscretePath sigma;  // free loop on m1, shift 1
  Isometry iso;        // isometry of m1 x m2, with a homotopy track

  Manifold product() const { return Manifold::product({m1, m2}); }
  void validate() const;
};

/// The free loop t -> (sigma(m t), q) on the product, with winding marker m
/// recorded on the first factor.
DiscretePath sigma_m(const ProductSceneConfig& cfg, int m, const Vec& q);

/// Free loop -> twisted loop: first half traverses the loop at double speed,
/// second half follows the homotopy track of the basepoint. Continuous at
/// both junctions; output satisfies the twisted closure exactly.
DiscretePath iota(const DiscretePath& free_loop, const Isometry& iso);

/// Second-factor component of the initial sample of a twisted path on a
/// product; inverse of iota . sigma_m on the grid.
Vec ev(const ProductSceneConfig& cfg, const DiscretePath& path);

/// Convenience overload reading the final factor of any product manifold.
Vec ev(const DiscretePath& path, int split_factor);

}  // namespace invgeo
