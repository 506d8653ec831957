#include "invgeo/homotopy_maps.hpp"

#include <cmath>

#include "invgeo/optimizer.hpp"

namespace invgeo {

void ProductSceneConfig::validate() const {
  if (sigma.manifold() != m1) throw ArgumentError("base loop must live on the first factor");
  if (!sigma.isometry().is_identity()) throw ArgumentError("base loop must be a free loop");
  if (std::abs(sigma.shift() - 1.0) > 1e-12) throw ArgumentError("base loop must have shift 1");
  if (iso.manifold() != product()) throw ArgumentError("isometry must act on the product");
  if (!iso.has_homotopy()) throw MissingHomotopyError("scene isometry needs a homotopy track");
  std::vector<int> w = winding_markers(sigma);
  bool nontrivial = false;
  for (int x : w) nontrivial |= (x != 0);
  if (!nontrivial) throw ArgumentError("base loop class is trivial");
}

DiscretePath sigma_m(const ProductSceneConfig& cfg, int m, const Vec& q) {
  Manifold prod = cfg.product();
  Vec q_c = cfg.m2.canonicalize(q);
  int n1 = cfg.m1.ambient_dim();
  int n_base = cfg.sigma.size();
  int mult = std::max(1, std::abs(m));
  int n_out = n_base * mult;
  int step = (m == 0) ? 0 : (m > 0 ? 1 : -1);
  Mat samples(n_out, prod.ambient_dim());
  for (int j = 0; j < n_out; ++j) {
    // with n_out = |m| n_base the resampling lands on the base grid exactly
    Vec p1 = cfg.sigma.extended_sample(static_cast<long>(step) * j);
    samples.row(j).head(n1) = p1.transpose();
    samples.row(j).tail(prod.ambient_dim() - n1) = q_c.transpose();
  }
  return DiscretePath(prod, Isometry::identity(prod), 1.0, std::move(samples));
}

DiscretePath iota(const DiscretePath& free_loop, const Isometry& iso) {
  if (!free_loop.isometry().is_identity())
    throw ArgumentError("iota expects a free loop");
  if (iso.manifold() != free_loop.manifold())
    throw ArgumentError("isometry acts on a different manifold");
  if (!iso.has_homotopy())
    throw MissingHomotopyError("iota needs a homotopy-to-identity track");
  const Manifold& m = free_loop.manifold();
  int n = free_loop.size();
  Vec base = free_loop.sample(0);
  Mat samples(2 * n, m.ambient_dim());
  for (int j = 0; j < n; ++j) samples.row(j) = free_loop.sample(j).transpose();
  for (int j = 0; j < n; ++j)
    samples.row(n + j) = iso.homotopy(static_cast<double>(j) / n, base).transpose();
  return DiscretePath(m, iso, free_loop.shift(), std::move(samples));
}

Vec ev(const ProductSceneConfig& cfg, const DiscretePath& path) {
  if (path.manifold() != cfg.product())
    throw ArgumentError("path does not live on the scene product");
  int n1 = cfg.m1.ambient_dim();
  return path.sample(0).tail(path.manifold().ambient_dim() - n1);
}

Vec ev(const DiscretePath& path, int split_factor) {
  const Manifold& m = path.manifold();
  if (!m.is_product()) throw ArgumentError("ev needs a product manifold");
  if (split_factor < 1 || split_factor >= m.num_factors())
    throw ArgumentError("invalid factor split");
  int off = m.factor_offset(split_factor);
  return path.sample(0).tail(m.ambient_dim() - off);
}

}  // namespace invgeo
