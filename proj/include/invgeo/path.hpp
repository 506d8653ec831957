#pragma once

#include "invgeo/isometry.hpp"
#include "invgeo/manifold.hpp"

namespace invgeo {

/// Discrete twisted path: N samples x_0..x_{N-1} of a curve on one
/// fundamental domain [0, shift], with the implied closure x_N = I(x_0) and
/// extension x_{k+jN} = I^j(x_k). The curve between samples is the broken
/// geodesic through them.
class DiscretePath {
 public:
  DiscretePath() = default;
  /// samples: N x ambient_dim, rows canonicalized on construction. N >= 8.
  DiscretePath(Manifold manifold, Isometry iso, double shift, Mat samples);

  const Manifold& manifold() const { return manifold_; }
  const Isometry& isometry() const { return iso_; }
  double shift() const { return shift_; }
  int size() const { return static_cast<int>(samples_.rows()); }
  double dt() const { return shift_ / size(); }
  const Mat& samples() const { return samples_; }

  Vec sample(int k) const { return samples_.row(k).transpose(); }

  /// Sample at any integer index via the twist extension rule.
  Vec extended_sample(long j) const;

  /// Broken-geodesic evaluation at any real time.
  Vec eval(double t) const;

  /// Same curve re-sampled at n uniform times.
  DiscretePath resampled(int n) const;

  /// Cyclic sample translation by j steps, twist applied on wrap-around.
  DiscretePath translated(long j) const;

  DiscretePath with_samples(Mat samples) const;
  DiscretePath with_shift(double shift) const;

  /// Longest geodesic distance between consecutive samples (including the
  /// closing segment to I(x_0)).
  double max_segment_length() const;

  /// Doubles N until max_segment_length < injectivity_bound / 3.
  DiscretePath refined_to_resolution(int max_samples = 1 << 15) const;

 private:
  Manifold manifold_;
  Isometry iso_;
  double shift_ = 1.0;
  Mat samples_;
};

}  // namespace invgeo
