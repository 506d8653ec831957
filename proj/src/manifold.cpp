#include "invgeo/manifold.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace invgeo {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_unit(double x) {
  double w = x - std::floor(x);
  if (w >= 1.0) w -= 1.0;  // guards floor(x) == x - 1 rounding
  return w;
}

// Signed representative of x modulo 1 in [-1/2, 1/2).
double wrap_signed(double x) { return x - std::floor(x + 0.5); }

double clamp_unit(double c) { return std::min(1.0, std::max(-1.0, c)); }

}  // namespace

Manifold Manifold::torus(int dim) { return torus(Vec::Ones(dim)); }

Manifold Manifold::torus(const Vec& sides) {
  if (sides.size() < 1 || (sides.array() <= 0).any())
    throw ArgumentError("torus sides must be positive");
  Manifold m;
  Factor f;
  f.kind = Factor::Kind::Torus;
  f.dim = static_cast<int>(sides.size());
  f.sides = sides;
  m.factors_.push_back(std::move(f));
  return m;
}

Manifold Manifold::circle(double radius) {
  if (radius <= 0) throw ArgumentError("circle radius must be positive");
  Vec s(1);
  s[0] = 2.0 * kPi * radius;
  return torus(s);
}

Manifold Manifold::sphere() {
  Manifold m;
  Factor f;
  f.kind = Factor::Kind::Sphere;
  f.dim = 2;
  m.factors_.push_back(f);
  return m;
}

Manifold Manifold::product(const std::vector<Manifold>& parts) {
  if (parts.empty()) throw ArgumentError("empty product");
  Manifold m;
  for (const auto& p : parts)
    for (const auto& f : p.factors_) m.factors_.push_back(f);
  return m;
}

int Manifold::ambient_dim() const {
  int n = 0;
  for (const auto& f : factors_) n += f.ambient_dim();
  return n;
}

int Manifold::intrinsic_dim() const {
  int n = 0;
  for (const auto& f : factors_) n += f.dim;
  return n;
}

std::string Manifold::id() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& f : factors_) {
    if (!first) os << "*";
    first = false;
    if (f.kind == Factor::Kind::Sphere) {
      os << "sphere";
    } else {
      os << "torus[";
      for (int i = 0; i < f.dim; ++i) os << (i ? "x" : "") << f.sides[i];
      os << "]";
    }
  }
  return os.str();
}

bool Manifold::operator==(const Manifold& other) const {
  if (factors_.size() != other.factors_.size()) return false;
  for (size_t i = 0; i < factors_.size(); ++i) {
    const auto& a = factors_[i];
    const auto& b = other.factors_[i];
    if (a.kind != b.kind || a.dim != b.dim) return false;
    if (a.kind == Factor::Kind::Torus && (a.sides - b.sides).cwiseAbs().maxCoeff() > 0)
      return false;
  }
  return true;
}

int Manifold::factor_offset(int f) const {
  int off = 0;
  for (int i = 0; i < f; ++i) off += factors_[i].ambient_dim();
  return off;
}

int Manifold::intrinsic_offset(int f) const {
  int off = 0;
  for (int i = 0; i < f; ++i) off += factors_[i].dim;
  return off;
}

Eigen::VectorBlock<const Vec> Manifold::factor_block(const Vec& x, int f) const {
  return x.segment(factor_offset(f), factors_[f].ambient_dim());
}

Vec Manifold::canonicalize(const Vec& p) const {
  if (p.size() != ambient_dim()) throw ArgumentError("point has wrong dimension");
  Vec out = p;
  int off = 0;
  for (const auto& f : factors_) {
    int n = f.ambient_dim();
    if (f.kind == Factor::Kind::Torus) {
      for (int i = 0; i < n; ++i) out[off + i] = wrap_unit(out[off + i]);
    } else {
      double r = out.segment(off, n).norm();
      if (std::abs(r - 1.0) > 1e-6)
        throw ArgumentError("sphere coordinates far from the unit sphere");
      if (std::abs(r - 1.0) > 1e-12) out.segment(off, n) /= r;
    }
    off += n;
  }
  return out;
}

bool Manifold::contains(const Vec& p, double tol) const {
  if (p.size() != ambient_dim()) return false;
  int off = 0;
  for (const auto& f : factors_) {
    int n = f.ambient_dim();
    if (f.kind == Factor::Kind::Torus) {
      for (int i = 0; i < n; ++i) {
        double c = p[off + i];
        if (c < -tol || c >= 1.0 + tol) return false;
      }
    } else {
      if (std::abs(p.segment(off, n).norm() - 1.0) > tol) return false;
    }
    off += n;
  }
  return true;
}

double Manifold::metric(const Vec& /*p*/, const Vec& u, const Vec& v) const {
  double s = 0;
  int off = 0;
  for (const auto& f : factors_) {
    int n = f.ambient_dim();
    if (f.kind == Factor::Kind::Torus) {
      for (int i = 0; i < n; ++i) s += f.sides[i] * f.sides[i] * u[off + i] * v[off + i];
    } else {
      s += u.segment(off, n).dot(v.segment(off, n));
    }
    off += n;
  }
  return s;
}

double Manifold::norm(const Vec& p, const Vec& u) const { return std::sqrt(metric(p, u, u)); }

Vec Manifold::project_tangent(const Vec& p, const Vec& u) const {
  Vec out = u;
  int off = 0;
  for (const auto& f : factors_) {
    int n = f.ambient_dim();
    if (f.kind == Factor::Kind::Sphere) {
      auto x = p.segment(off, n);
      out.segment(off, n) -= x.dot(out.segment(off, n)) * x;
    }
    off += n;
  }
  return out;
}

bool Manifold::is_tangent(const Vec& p, const Vec& u, double tol) const {
  int off = 0;
  for (const auto& f : factors_) {
    int n = f.ambient_dim();
    if (f.kind == Factor::Kind::Sphere) {
      if (std::abs(p.segment(off, n).dot(u.segment(off, n))) > tol) return false;
    }
    off += n;
  }
  return true;
}

double Manifold::geodesic_distance(const Vec& a, const Vec& b) const {
  double s = 0;
  int off = 0;
  for (const auto& f : factors_) {
    int n = f.ambient_dim();
    if (f.kind == Factor::Kind::Torus) {
      for (int i = 0; i < n; ++i) {
        double d = f.sides[i] * wrap_signed(b[off + i] - a[off + i]);
        s += d * d;
      }
    } else {
      double c = clamp_unit(a.segment(off, n).dot(b.segment(off, n)));
      double d = std::acos(c);
      s += d * d;
    }
    off += n;
  }
  return std::sqrt(s);
}

Vec Manifold::step_delta(const Vec& a, const Vec& b) const {
  Vec out(ambient_dim());
  int off = 0;
  for (const auto& f : factors_) {
    int n = f.ambient_dim();
    if (f.kind == Factor::Kind::Torus) {
      for (int i = 0; i < n; ++i) out[off + i] = wrap_signed(b[off + i] - a[off + i]);
    } else {
      out.segment(off, n) = b.segment(off, n) - a.segment(off, n);
    }
    off += n;
  }
  return out;
}

Vec Manifold::coordinate_weights() const {
  Vec w(ambient_dim());
  int off = 0;
  for (const auto& f : factors_) {
    int n = f.ambient_dim();
    if (f.kind == Factor::Kind::Torus) {
      for (int i = 0; i < n; ++i) w[off + i] = f.sides[i] * f.sides[i];
    } else {
      w.segment(off, n).setOnes();
    }
    off += n;
  }
  return w;
}

double Manifold::step_sq(const Vec& a, const Vec& b) const {
  Vec d = step_delta(a, b);
  Vec w = coordinate_weights();
  return d.cwiseProduct(d).dot(w);
}

Vec Manifold::geodesic_point(const Vec& a, const Vec& b, double f) const {
  Vec out(ambient_dim());
  int off = 0;
  for (const auto& fac : factors_) {
    int n = fac.ambient_dim();
    if (fac.kind == Factor::Kind::Torus) {
      for (int i = 0; i < n; ++i) {
        double d = wrap_signed(b[off + i] - a[off + i]);
        out[off + i] = wrap_unit(a[off + i] + f * d);
      }
    } else {
      auto x = a.segment(off, n);
      auto y = b.segment(off, n);
      double c = clamp_unit(x.dot(y));
      double th = std::acos(c);
      if (th < 1e-12) {
        out.segment(off, n) = (x + f * (y - x)).normalized();
      } else {
        double s = std::sin(th);
        out.segment(off, n) = (std::sin((1.0 - f) * th) * x + std::sin(f * th) * y) / s;
      }
    }
    off += n;
  }
  return out;
}

Vec Manifold::exp(const Vec& p, const Vec& v) const {
  Vec out(ambient_dim());
  int off = 0;
  for (const auto& f : factors_) {
    int n = f.ambient_dim();
    if (f.kind == Factor::Kind::Torus) {
      for (int i = 0; i < n; ++i) out[off + i] = wrap_unit(p[off + i] + v[off + i]);
    } else {
      auto x = p.segment(off, n);
      Vec w = v.segment(off, n);
      w -= x.dot(w) * x;  // safety projection
      double r = w.norm();
      if (r < 1e-300) {
        out.segment(off, n) = x;
      } else {
        out.segment(off, n) = std::cos(r) * x + (std::sin(r) / r) * w;
      }
    }
    off += n;
  }
  return out;
}

Vec Manifold::log(const Vec& p, const Vec& q) const {
  Vec out = Vec::Zero(ambient_dim());
  int off = 0;
  for (const auto& f : factors_) {
    int n = f.ambient_dim();
    if (f.kind == Factor::Kind::Torus) {
      for (int i = 0; i < n; ++i) out[off + i] = wrap_signed(q[off + i] - p[off + i]);
    } else {
      auto x = p.segment(off, n);
      auto y = q.segment(off, n);
      double c = clamp_unit(x.dot(y));
      double th = std::acos(c);
      if (th > 1e-12) {
        Vec dir = y - c * x;
        double r = dir.norm();
        if (r < 1e-300) throw NonUniqueGeodesicError("log undefined near the cut locus");
        out.segment(off, n) = (th / r) * dir;
      }
    }
    off += n;
  }
  return out;
}

Vec Manifold::transport(const Vec& a, const Vec& b, const Vec& v) const {
  Vec out = v;
  int off = 0;
  for (const auto& f : factors_) {
    int n = f.ambient_dim();
    if (f.kind == Factor::Kind::Sphere) {
      auto x = a.segment(off, n);
      auto y = b.segment(off, n);
      double c = clamp_unit(x.dot(y));
      double th = std::acos(c);
      if (th > 1e-12) {
        Vec ta = y - c * x;  // tangent at a toward b
        double r = ta.norm();
        if (r < 1e-300) throw NonUniqueGeodesicError("transport undefined near the cut locus");
        ta /= r;
        // unit tangent at b pointing away from a
        Vec tb = (c * y - x) / std::sin(th);
        Vec w = v.segment(off, n);
        double along = w.dot(ta);
        out.segment(off, n) = w - along * ta + along * tb;
      }
    }
    off += n;
  }
  return out;
}

double Manifold::injectivity_radius_bound() const {
  double bound = std::numeric_limits<double>::infinity();
  for (const auto& f : factors_) {
    if (f.kind == Factor::Kind::Torus) {
      bound = std::min(bound, f.sides.minCoeff() / 2.0);
    } else {
      bound = std::min(bound, kPi);
    }
  }
  return bound;
}

Mat Manifold::tangent_frame(const Vec& p) const {
  Mat frame = Mat::Zero(ambient_dim(), intrinsic_dim());
  int off = 0, ioff = 0;
  for (const auto& f : factors_) {
    int n = f.ambient_dim();
    if (f.kind == Factor::Kind::Torus) {
      for (int i = 0; i < f.dim; ++i) frame(off + i, ioff + i) = 1.0 / f.sides[i];
    } else {
      auto x = p.segment(off, n);
      // deterministic orthonormal pair orthogonal to x
      Vec helper = Vec::Zero(n);
      helper[std::abs(x[0]) < 0.9 ? 0 : 1] = 1.0;
      Vec u = helper - x.dot(helper) * x;
      u.normalize();
      Vec w(3);
      w[0] = x[1] * u[2] - x[2] * u[1];
      w[1] = x[2] * u[0] - x[0] * u[2];
      w[2] = x[0] * u[1] - x[1] * u[0];
      frame.block(off, ioff, n, 1) = u;
      frame.block(off, ioff + 1, n, 1) = w;
    }
    off += n;
    ioff += f.dim;
  }
  return frame;
}

Vec Manifold::random_point(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec p(ambient_dim());
  int off = 0;
  for (const auto& f : factors_) {
    int n = f.ambient_dim();
    if (f.kind == Factor::Kind::Torus) {
      for (int i = 0; i < n; ++i) p[off + i] = unif(rng);
    } else {
      Vec g(n);
      do {
        for (int i = 0; i < n; ++i) g[i] = gauss(rng);
      } while (g.norm() < 1e-6);
      p.segment(off, n) = g.normalized();
    }
    off += n;
  }
  return p;
}

Vec Manifold::random_tangent(const Vec& p, std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(ambient_dim());
  for (int i = 0; i < v.size(); ++i) v[i] = gauss(rng);
  return project_tangent(p, v);
}

double metric_eval(const TangentVector& u, const TangentVector& v) {
  if (u.base.manifold != v.base.manifold)
    throw ArgumentError("tangent vectors on different manifolds");
  if ((u.base.coords - v.base.coords).cwiseAbs().maxCoeff() > 1e-12)
    throw ArgumentError("tangent vectors based at different points");
  return u.base.manifold.metric(u.base.coords, u.components, v.components);
}

std::vector<ManifoldPoint> shortest_geodesic(const ManifoldPoint& a, const ManifoldPoint& b,
                                             int samples) {
  if (a.manifold != b.manifold) throw ArgumentError("endpoints on different manifolds");
  if (samples < 2) throw ArgumentError("need at least two samples");
  const Manifold& m = a.manifold;
  double d = m.geodesic_distance(a.coords, b.coords);
  if (!(d < m.injectivity_radius_bound() - 1e-12))
    throw NonUniqueGeodesicError("endpoints at or beyond the injectivity bound");
  std::vector<ManifoldPoint> out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    double f = static_cast<double>(k) / (samples - 1);
    Vec p = (k == 0) ? a.coords : (k == samples - 1 ? b.coords : m.geodesic_point(a.coords, b.coords, f));
    out.push_back(ManifoldPoint(m, p));
  }
  return out;
}

double injectivity_radius_bound(const Manifold& m) { return m.injectivity_radius_bound(); }

}  // namespace invgeo
