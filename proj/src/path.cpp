#include "invgeo/path.hpp"

#include <cmath>

namespace invgeo {

DiscretePath::DiscretePath(Manifold manifold, Isometry iso, double shift, Mat samples)
    : manifold_(std::move(manifold)), iso_(std::move(iso)), shift_(shift), samples_(std::move(samples)) {
  if (iso_.manifold() != manifold_) throw ArgumentError("isometry manifold mismatch");
  if (!(shift_ > 0)) throw ArgumentError("shift must be positive");
  if (samples_.rows() < 8) throw ArgumentError("need at least 8 samples");
  if (samples_.cols() != manifold_.ambient_dim())
    throw ArgumentError("sample coordinates have wrong dimension");
  for (int k = 0; k < samples_.rows(); ++k)
    samples_.row(k) = manifold_.canonicalize(samples_.row(k).transpose()).transpose();
}

Vec DiscretePath::extended_sample(long j) const {
  const long n = size();
  long q = j >= 0 ? j / n : -((-j + n - 1) / n);
  long r = j - q * n;
  Vec p = samples_.row(static_cast<int>(r)).transpose();
  if (q == 0) return p;
  if (q > 0) {
    for (long i = 0; i < q; ++i) p = iso_.apply(p);
  } else {
    Isometry inv = iso_.inverse();
    for (long i = 0; i < -q; ++i) p = inv.apply(p);
  }
  return p;
}

Vec DiscretePath::eval(double t) const {
  double s = t / dt();
  double fl = std::floor(s);
  long j = static_cast<long>(fl);
  double frac = s - fl;
  Vec a = extended_sample(j);
  if (frac < 1e-15) return a;
  Vec b = extended_sample(j + 1);
  return manifold_.geodesic_point(a, b, frac);
}

DiscretePath DiscretePath::resampled(int n) const {
  if (n < 8) throw ArgumentError("need at least 8 samples");
  Mat out(n, manifold_.ambient_dim());
  for (int k = 0; k < n; ++k) {
    // exact on grid-aligned times
    long num = static_cast<long>(k) * size();
    if (num % n == 0) {
      out.row(k) = extended_sample(num / n).transpose();
    } else {
      out.row(k) = eval(static_cast<double>(k) * shift_ / n).transpose();
    }
  }
  return DiscretePath(manifold_, iso_, shift_, std::move(out));
}

DiscretePath DiscretePath::translated(long j) const {
  Mat out(size(), manifold_.ambient_dim());
  for (int k = 0; k < size(); ++k) out.row(k) = extended_sample(k + j).transpose();
  return DiscretePath(manifold_, iso_, shift_, std::move(out));
}

DiscretePath DiscretePath::with_samples(Mat samples) const {
  return DiscretePath(manifold_, iso_, shift_, std::move(samples));
}

DiscretePath DiscretePath::with_shift(double shift) const {
  return DiscretePath(manifold_, iso_, shift, samples_);
}

double DiscretePath::max_segment_length() const {
  double worst = 0;
  for (int k = 0; k < size(); ++k) {
    Vec a = sample(k);
    Vec b = (k + 1 < size()) ? sample(k + 1) : iso_.apply(sample(0));
    worst = std::max(worst, manifold_.geodesic_distance(a, b));
  }
  return worst;
}

DiscretePath DiscretePath::refined_to_resolution(int max_samples) const {
  DiscretePath p = *this;
  double bound = manifold_.injectivity_radius_bound() / 3.0;
  while (p.max_segment_length() >= bound) {
    if (2 * p.size() > max_samples)
      throw ResolutionError("cannot refine path below the resolution bound");
    p = p.resampled(2 * p.size());
  }
  return p;
}

}  // namespace invgeo
