#include "invgeo/isometry.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace invgeo {

namespace {

double wrap_signed(double x) { return x - std::floor(x + 0.5); }

Mat rotation_matrix(const Vec& axis, double angle) {
  Vec a = axis.normalized();
  Mat k = Mat::Zero(3, 3);
  k(0, 1) = -a[2];
  k(0, 2) = a[1];
  k(1, 0) = a[2];
  k(1, 2) = -a[0];
  k(2, 0) = -a[1];
  k(2, 1) = a[0];
  return std::cos(angle) * Mat::Identity(3, 3) + std::sin(angle) * k +
         (1.0 - std::cos(angle)) * (a * a.transpose());
}

void enumerate_lattice(const std::vector<std::pair<long, long>>& ranges, size_t i, Vec& k,
                       const std::function<void(const Vec&)>& visit) {
  if (i == ranges.size()) {
    visit(k);
    return;
  }
  for (long val = ranges[i].first; val <= ranges[i].second; ++val) {
    k[static_cast<int>(i)] = static_cast<double>(val);
    enumerate_lattice(ranges, i + 1, k, visit);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// FixedPointSet

double FixedPointSet::distance_to(const Vec& p) const {
  switch (kind) {
    case Kind::WholeManifold:
      return 0.0;
    case Kind::FinitePoints: {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : points) best = std::min(best, manifold.geodesic_distance(p, q));
      return best;
    }
    case Kind::GreatCircle: {
      double c = std::min(1.0, std::max(-1.0, p.dot(axis)));
      return std::abs(std::asin(c));
    }
    case Kind::ProductOf: {
      double s = 0;
      for (size_t f = 0; f < factor_sets.size(); ++f) {
        Vec block = manifold.factor_block(p, static_cast<int>(f));
        double d = factor_sets[f].distance_to(block);
        if (!std::isfinite(d)) return d;
        s += d * d;
      }
      return std::sqrt(s);
    }
  }
  return std::numeric_limits<double>::infinity();
}

bool FixedPointSet::contains(const Vec& p, double tol) const { return distance_to(p) <= tol; }

bool FixedPointSet::is_whole_manifold() const {
  if (kind == Kind::WholeManifold) return true;
  if (kind == Kind::ProductOf) {
    for (const auto& s : factor_sets)
      if (!s.is_whole_manifold()) return false;
    return true;
  }
  return false;
}

long FixedPointSet::finite_count() const {
  switch (kind) {
    case Kind::FinitePoints:
      return static_cast<long>(points.size());
    case Kind::ProductOf: {
      long n = 1;
      for (const auto& s : factor_sets) {
        long c = s.finite_count();
        if (c < 0) return -1;
        n *= c;
      }
      return n;
    }
    default:
      return -1;
  }
}

// ---------------------------------------------------------------------------
// Isometry

Isometry::Isometry(Manifold m, Mat A, Vec b, std::shared_ptr<const Node> node)
    : manifold_(std::move(m)), linear_(std::move(A)), translation_(std::move(b)), node_(std::move(node)) {}

Isometry Isometry::identity(const Manifold& m) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Identity;
  int n = m.ambient_dim();
  return Isometry(m, Mat::Identity(n, n), Vec::Zero(n), node);
}

Isometry Isometry::torus_translation(const Manifold& m, const Vec& v) {
  if (m.num_factors() != 1 || m.factors()[0].kind != Factor::Kind::Torus)
    throw ArgumentError("torus_translation requires a single torus factor");
  if (v.size() != m.ambient_dim()) throw ArgumentError("translation vector has wrong dimension");
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::TorusTranslation;
  node->v = v;
  int n = m.ambient_dim();
  return Isometry(m, Mat::Identity(n, n), v, node);
}

Isometry Isometry::torus_rotation90(const Manifold& m) {
  if (m.num_factors() != 1 || m.factors()[0].kind != Factor::Kind::Torus ||
      m.factors()[0].dim != 2)
    throw ArgumentError("torus_rotation90 requires a 2-torus");
  const Vec& s = m.factors()[0].sides;
  if (std::abs(s[0] - s[1]) > 1e-12)
    throw ArgumentError("torus_rotation90 requires a square torus");
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::TorusRotation90;
  Mat A(2, 2);
  A << 0, -1, 1, 0;
  Vec b(2);
  b << 1, 0;  // (x,y) -> (1-y, x)
  return Isometry(m, A, b, node);
}

Isometry Isometry::sphere_rotation(const Manifold& m, const Vec& axis, double angle) {
  if (m.num_factors() != 1 || m.factors()[0].kind != Factor::Kind::Sphere)
    throw ArgumentError("sphere_rotation requires a sphere manifold");
  if (axis.size() != 3 || axis.norm() < 1e-12) throw ArgumentError("bad rotation axis");
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::SphereRotation;
  node->axis = axis.normalized();
  node->angle = angle;
  return Isometry(m, rotation_matrix(axis, angle), Vec::Zero(3), node);
}

Isometry Isometry::product(const Isometry& a, const Isometry& b) {
  Manifold m = Manifold::product({a.manifold_, b.manifold_});
  int n = m.ambient_dim();
  int na = a.manifold_.ambient_dim();
  Mat A = Mat::Zero(n, n);
  A.topLeftCorner(na, na) = a.linear_;
  A.bottomRightCorner(n - na, n - na) = b.linear_;
  Vec t(n);
  t.head(na) = a.translation_;
  t.tail(n - na) = b.translation_;
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Product;
  node->children = {a.node_, b.node_};
  node->child_manifolds = {a.manifold_, b.manifold_};
  return Isometry(m, A, t, node);
}

Isometry Isometry::power(const Isometry& base, int k) {
  if (k < 0) return power(base.inverse(), -k);
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Power;
  node->exponent = k;
  node->children = {base.node_};
  node->child_manifolds = {base.manifold_};
  int n = base.manifold_.ambient_dim();
  Mat A = Mat::Identity(n, n);
  Vec b = Vec::Zero(n);
  for (int i = 0; i < k; ++i) {
    b = base.linear_ * b + base.translation_;
    A = base.linear_ * A;
  }
  return Isometry(base.manifold_, A, b, node);
}

Isometry Isometry::compose(const Isometry& outer, const Isometry& inner) {
  if (outer.manifold_ != inner.manifold_)
    throw ArgumentError("compose requires isometries of the same manifold");
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Compose;
  node->children = {outer.node_, inner.node_};
  node->child_manifolds = {outer.manifold_, inner.manifold_};
  Mat A = outer.linear_ * inner.linear_;
  Vec b = outer.linear_ * inner.translation_ + outer.translation_;
  return Isometry(outer.manifold_, A, b, node);
}

Vec Isometry::apply(const Vec& p) const {
  return manifold_.canonicalize(linear_ * p + translation_);
}

Vec Isometry::differential(const Vec& u) const { return linear_ * u; }

namespace {

std::shared_ptr<const Isometry::Node> invert_node(const std::shared_ptr<const Isometry::Node>& n);

std::shared_ptr<const Isometry::Node> invert_node(const std::shared_ptr<const Isometry::Node>& n) {
  using Node = Isometry::Node;
  auto out = std::make_shared<Node>(*n);
  switch (n->kind) {
    case Node::Kind::Identity:
      break;
    case Node::Kind::TorusTranslation:
      out->v = -n->v;
      break;
    case Node::Kind::TorusRotation90: {
      // inverse is the cube of the rotation
      auto base = std::make_shared<Node>(*n);
      out->kind = Node::Kind::Power;
      out->exponent = 3;
      out->children = {base};
      out->child_manifolds = n->child_manifolds;
      break;
    }
    case Node::Kind::SphereRotation:
      out->angle = -n->angle;
      break;
    case Node::Kind::Product:
      out->children = {invert_node(n->children[0]), invert_node(n->children[1])};
      break;
    case Node::Kind::Power:
      out->children = {invert_node(n->children[0])};
      break;
    case Node::Kind::Compose:
      out->children = {invert_node(n->children[1]), invert_node(n->children[0])};
      out->child_manifolds = {n->child_manifolds[1], n->child_manifolds[0]};
      break;
  }
  return out;
}

}  // namespace

Isometry Isometry::inverse() const {
  Eigen::FullPivLU<Mat> lu(linear_);
  Mat Ainv = lu.inverse();
  Vec binv = -Ainv * translation_;
  std::shared_ptr<const Node> node = invert_node(node_);
  // rotation90 inverse node is Power(rot90, 3); manifold data unchanged
  if (node_->kind == Node::Kind::TorusRotation90) {
    auto n = std::make_shared<Node>(*node);
    n->child_manifolds = {manifold_};
    node = n;
  }
  return Isometry(manifold_, Ainv, binv, node);
}

bool Isometry::is_identity(double tol) const {
  int n = manifold_.ambient_dim();
  if ((linear_ - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > tol) return false;
  int off = 0;
  for (const auto& f : manifold_.factors()) {
    int d = f.ambient_dim();
    for (int i = 0; i < d; ++i) {
      double b = translation_[off + i];
      double r = (f.kind == Factor::Kind::Torus) ? wrap_signed(b) : b;
      if (std::abs(r) > tol) return false;
    }
    off += d;
  }
  return true;
}

namespace {

bool node_has_homotopy(const std::shared_ptr<const Isometry::Node>& n) {
  using Node = Isometry::Node;
  switch (n->kind) {
    case Node::Kind::Identity:
    case Node::Kind::TorusTranslation:
    case Node::Kind::SphereRotation:
      return true;
    case Node::Kind::TorusRotation90:
      return false;
    case Node::Kind::Power:
      return n->exponent == 0 || node_has_homotopy(n->children[0]);
    case Node::Kind::Product:
    case Node::Kind::Compose:
      return node_has_homotopy(n->children[0]) && node_has_homotopy(n->children[1]);
  }
  return false;
}

Vec node_homotopy(const std::shared_ptr<const Isometry::Node>& n, const Manifold& m, double t,
                  const Vec& p) {
  using Node = Isometry::Node;
  switch (n->kind) {
    case Node::Kind::Identity:
      return p;
    case Node::Kind::TorusTranslation:
      return m.canonicalize(p + t * n->v);
    case Node::Kind::SphereRotation:
      return m.canonicalize(rotation_matrix(n->axis, t * n->angle) * p);
    case Node::Kind::TorusRotation90:
      throw MissingHomotopyError("torus_rotation90 is not homotopic to the identity");
    case Node::Kind::Power: {
      Vec q = p;
      for (int i = 0; i < n->exponent; ++i)
        q = node_homotopy(n->children[0], n->child_manifolds[0], t, q);
      return q;
    }
    case Node::Kind::Product: {
      const Manifold& ma = n->child_manifolds[0];
      const Manifold& mb = n->child_manifolds[1];
      int na = ma.ambient_dim();
      Vec out(p.size());
      out.head(na) = node_homotopy(n->children[0], ma, t, p.head(na).eval());
      out.tail(p.size() - na) = node_homotopy(n->children[1], mb, t, p.tail(p.size() - na).eval());
      return out;
    }
    case Node::Kind::Compose: {
      Vec inner = node_homotopy(n->children[1], n->child_manifolds[1], t, p);
      return node_homotopy(n->children[0], n->child_manifolds[0], t, inner);
    }
  }
  throw MissingHomotopyError("unsupported isometry node");
}

}  // namespace

bool Isometry::has_homotopy() const { return node_has_homotopy(node_); }

Vec Isometry::homotopy(double t, const Vec& p) const {
  if (t < -1e-12 || t > 1.0 + 1e-12) throw ArgumentError("homotopy parameter outside [0,1]");
  if (!has_homotopy()) throw MissingHomotopyError("isometry has no homotopy-to-identity track");
  return node_homotopy(node_, manifold_, std::min(1.0, std::max(0.0, t)), p);
}

namespace {

FixedPointSet torus_factor_fixed_set(const Manifold& factor_manifold, const Mat& A, const Vec& b) {
  int d = static_cast<int>(b.size());
  FixedPointSet out;
  out.manifold = factor_manifold;
  Mat D = A - Mat::Identity(d, d);
  if (D.cwiseAbs().maxCoeff() < 1e-12) {
    bool integral = true;
    for (int i = 0; i < d; ++i)
      if (std::abs(wrap_signed(b[i])) > 1e-12) integral = false;
    out.kind = integral ? FixedPointSet::Kind::WholeManifold : FixedPointSet::Kind::FinitePoints;
    return out;
  }
  Eigen::FullPivLU<Mat> lu(D);
  lu.setThreshold(1e-9);
  if (lu.rank() < d)
    throw UnsupportedFixedSetError("torus factor map has a degenerate linear part");
  // solutions of (A - I) x = k - b for integer k with x in [0,1)^d
  std::vector<std::pair<long, long>> ranges(d);
  for (int i = 0; i < d; ++i) {
    double lo = b[i], hi = b[i];
    for (int j = 0; j < d; ++j) {
      lo += std::min(0.0, D(i, j));
      hi += std::max(0.0, D(i, j));
    }
    ranges[i] = {static_cast<long>(std::ceil(lo - 1e-9)), static_cast<long>(std::floor(hi + 1e-9))};
  }
  long total = 1;
  for (auto& r : ranges) {
    total *= std::max<long>(0, r.second - r.first + 1);
    if (total > 100000) throw UnsupportedFixedSetError("fixed-point enumeration too large");
  }
  out.kind = FixedPointSet::Kind::FinitePoints;
  Vec k(d);
  enumerate_lattice(ranges, 0, k, [&](const Vec& kk) {
    Vec x = lu.solve(kk - b);
    Vec residual = D * x - (kk - b);
    if (residual.cwiseAbs().maxCoeff() > 1e-9) return;
    Vec xc = factor_manifold.canonicalize(x);
    for (const auto& q : out.points)
      if (factor_manifold.geodesic_distance(xc, q) < 1e-9) return;
    out.points.push_back(xc);
  });
  return out;
}

FixedPointSet sphere_factor_fixed_set(const Manifold& factor_manifold, const Mat& R) {
  FixedPointSet out;
  out.manifold = factor_manifold;
  if ((R - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12) {
    out.kind = FixedPointSet::Kind::WholeManifold;
    return out;
  }
  Eigen::FullPivLU<Mat> lu(R - Mat::Identity(3, 3));
  lu.setThreshold(1e-9);
  Mat ker = lu.kernel();
  if (lu.rank() == 2 && ker.cols() == 1) {
    Vec axis = ker.col(0).normalized();
    out.kind = FixedPointSet::Kind::FinitePoints;
    out.points.push_back(axis);
    out.points.push_back(-axis);
    return out;
  }
  if (lu.rank() == 1 && ker.cols() == 2) {
    Vec u = ker.col(0), v = ker.col(1);
    Vec n(3);
    n << u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0];
    out.kind = FixedPointSet::Kind::GreatCircle;
    out.axis = n.normalized();
    return out;
  }
  throw UnsupportedFixedSetError("sphere factor map without a closed-form fixed set");
}

}  // namespace

FixedPointSet Isometry::fixed_point_set() const {
  const auto& factors = manifold_.factors();
  std::vector<FixedPointSet> sets;
  sets.reserve(factors.size());
  int off = 0;
  for (size_t f = 0; f < factors.size(); ++f) {
    int n = factors[f].ambient_dim();
    // factor maps must not mix coordinates across factors
    Mat A = linear_.block(off, off, n, n);
    Mat row = linear_.block(off, 0, n, manifold_.ambient_dim());
    if ((row.cwiseAbs().sum() - A.cwiseAbs().sum()) > 1e-12)
      throw UnsupportedFixedSetError("isometry mixes product factors");
    Manifold fm;
    if (factors[f].kind == Factor::Kind::Torus) {
      fm = Manifold::torus(factors[f].sides);
      sets.push_back(torus_factor_fixed_set(fm, A, translation_.segment(off, n)));
    } else {
      fm = Manifold::sphere();
      sets.push_back(sphere_factor_fixed_set(fm, A));
    }
    off += n;
  }
  if (sets.size() == 1) return sets[0];
  FixedPointSet out;
  out.kind = FixedPointSet::Kind::ProductOf;
  out.manifold = manifold_;
  out.factor_sets = std::move(sets);
  return out;
}

ManifoldPoint apply_isometry(const Isometry& iso, const ManifoldPoint& p) {
  if (iso.manifold() != p.manifold) throw ArgumentError("point not on the isometry's manifold");
  return ManifoldPoint(p.manifold, iso.apply(p.coords));
}

TangentVector differential(const Isometry& iso, const TangentVector& u) {
  if (iso.manifold() != u.base.manifold)
    throw ArgumentError("tangent vector not on the isometry's manifold");
  TangentVector out;
  out.base = apply_isometry(iso, u.base);
  out.components = iso.differential(u.components);
  return out;
}

ManifoldPoint evaluate_homotopy(const Isometry& iso, double t, const ManifoldPoint& p) {
  if (iso.manifold() != p.manifold) throw ArgumentError("point not on the isometry's manifold");
  return ManifoldPoint(p.manifold, iso.homotopy(t, p.coords));
}

}  // namespace invgeo
