#include "invgeo/energy.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace invgeo {

namespace {

struct Assembly {
  const Manifold* m = nullptr;
  int N = 0;
  int d = 0;                 // intrinsic dim per sample
  double c = 0;              // N / tau^2
  double dt = 0;
  Vec weights;               // ambient quadrature weights
  std::vector<Mat> frames;   // g-orthonormal frames per sample
  Mat twist_frame;           // dI * frame(x_0), tangent frame at x_N
  Vec closing_point;         // x_N = I(x_0)
};

Assembly make_assembly(const DiscretePath& path) {
  Assembly a;
  a.m = &path.manifold();
  a.N = path.size();
  a.d = a.m->intrinsic_dim();
  a.c = a.N / (path.shift() * path.shift());
  a.dt = path.dt();
  a.weights = a.m->coordinate_weights();
  a.frames.reserve(a.N);
  for (int k = 0; k < a.N; ++k) a.frames.push_back(a.m->tangent_frame(path.sample(k)));
  a.closing_point = path.isometry().apply(path.sample(0));
  a.twist_frame = path.isometry().linear() * a.frames[0];
  return a;
}

// Ambient gradient of E with respect to each sample (twist chain included).
Mat ambient_gradient(const DiscretePath& path, const Assembly& a) {
  Mat grad = Mat::Zero(a.N, a.m->ambient_dim());
  const Mat& C = path.isometry().linear();
  for (int k = 0; k < a.N; ++k) {
    bool twist = (k == a.N - 1);
    Vec x = path.sample(k);
    Vec y = twist ? a.closing_point : path.sample(k + 1);
    Vec g = 2.0 * a.c * a.weights.cwiseProduct(a.m->step_delta(x, y));
    grad.row(k) -= g.transpose();
    if (twist) {
      grad.row(0) += (C.transpose() * g).transpose();
    } else {
      grad.row(k + 1) += g.transpose();
    }
  }
  return grad;
}

// Intrinsic frame coordinates of the differential dE.
Vec intrinsic_differential(const Assembly& a, const Mat& amb_grad) {
  Vec e(a.N * a.d);
  for (int k = 0; k < a.N; ++k)
    e.segment(k * a.d, a.d) = a.frames[k].transpose() * amb_grad.row(k).transpose();
  return e;
}

// d x d coupling of the covariant difference over segment k: maps intrinsic
// coordinates at the segment end back to the frame at sample k.
Mat segment_transport(const DiscretePath& path, const Assembly& a, int k) {
  bool twist = (k == a.N - 1);
  Vec x = path.sample(k);
  Vec y = twist ? a.closing_point : path.sample(k + 1);
  const Mat& end_frame = twist ? a.twist_frame : a.frames[k + 1];
  Mat transported(a.m->ambient_dim(), a.d);
  for (int j = 0; j < a.d; ++j)
    transported.col(j) = a.m->transport(y, x, end_frame.col(j));
  // frames are g-orthonormal; use the metric-weighted pairing
  return a.frames[k].transpose() * a.weights.asDiagonal() * transported;
}

void add_gram_block(Mat& G, const Assembly& a, int k, const Mat& T) {
  int d = a.d;
  int ib = (k + 1) % a.N;
  G.block(k * d, k * d, d, d) += (a.dt) * Mat::Identity(d, d);
  G.block(k * d, k * d, d, d) += (1.0 / a.dt) * Mat::Identity(d, d);
  G.block(ib * d, ib * d, d, d) += (1.0 / a.dt) * T.transpose() * T;
  G.block(k * d, ib * d, d, d) -= (1.0 / a.dt) * T;
  G.block(ib * d, k * d, d, d) -= (1.0 / a.dt) * T.transpose();
}

Mat assemble_gram(const DiscretePath& path, const Assembly& a) {
  int n = a.N * a.d;
  Mat G = Mat::Zero(n, n);
  for (int k = 0; k < a.N; ++k) add_gram_block(G, a, k, segment_transport(path, a, k));
  return G;
}

Eigen::SparseMatrix<double> assemble_gram_sparse(const DiscretePath& path, const Assembly& a) {
  int n = a.N * a.d;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(a.N) * a.d * a.d * 4 + n);
  int d = a.d;
  for (int k = 0; k < a.N; ++k) {
    Mat T = segment_transport(path, a, k);
    int ib = (k + 1) % a.N;
    for (int i = 0; i < d; ++i) {
      trip.emplace_back(k * d + i, k * d + i, a.dt + 1.0 / a.dt);
    }
    Mat TtT = T.transpose() * T;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        trip.emplace_back(ib * d + i, ib * d + j, TtT(i, j) / a.dt);
        trip.emplace_back(k * d + i, ib * d + j, -T(i, j) / a.dt);
        trip.emplace_back(ib * d + i, k * d + j, -T(j, i) / a.dt);
      }
  }
  Eigen::SparseMatrix<double> G(n, n);
  G.setFromTriplets(trip.begin(), trip.end());
  return G;
}

void check_resolution(const DiscretePath& path) {
  double bound = path.manifold().injectivity_radius_bound();
  double worst = path.max_segment_length();
  if (worst >= bound)
    throw ResolutionError("consecutive samples separated by " + std::to_string(worst) +
                          ", at or beyond the injectivity bound " + std::to_string(bound) +
                          "; refine N");
}

}  // namespace

double energy(const DiscretePath& path) {
  check_resolution(path);
  const Manifold& m = path.manifold();
  int N = path.size();
  double sum = 0;
  for (int k = 0; k < N; ++k) {
    Vec a = path.sample(k);
    Vec b = (k + 1 < N) ? path.sample(k + 1) : path.isometry().apply(path.sample(0));
    sum += m.step_sq(a, b);
  }
  return sum * N / (path.shift() * path.shift());
}

double h1_inner(const DiscretePath& path, const Mat& X, const Mat& Y) {
  const Manifold& m = path.manifold();
  int N = path.size();
  if (X.rows() != N + 1 || Y.rows() != N + 1 || X.cols() != m.ambient_dim() ||
      Y.cols() != m.ambient_dim())
    throw ArgumentError("tangent fields must be (N+1) x ambient_dim");
  Vec xN = path.isometry().apply(path.sample(0));
  for (const Mat* F : {&X, &Y}) {
    Vec closing = path.isometry().differential(F->row(0).transpose());
    Vec gap = F->row(N).transpose() - closing;
    if (std::sqrt(m.metric(xN, gap, gap)) > 1e-8)
      throw ArgumentError("tangent field violates the twisted closure");
    for (int k = 0; k < N; ++k)
      if (!m.is_tangent(path.sample(k), F->row(k).transpose(), 1e-8))
        throw ArgumentError("field row is not tangent at its sample");
  }
  double dt = path.dt();
  double total = 0;
  for (int k = 0; k < N; ++k) {
    Vec xk = path.sample(k);
    Vec xk1 = (k + 1 < N) ? path.sample(k + 1) : xN;
    total += m.metric(xk, X.row(k).transpose(), Y.row(k).transpose()) * dt;
    Vec dX = m.transport(xk1, xk, X.row(k + 1).transpose()) - X.row(k).transpose();
    Vec dY = m.transport(xk1, xk, Y.row(k + 1).transpose()) - Y.row(k).transpose();
    total += m.metric(xk, dX, dY) / dt;
  }
  return total;
}

GradientResult gradient(const DiscretePath& path) {
  check_resolution(path);
  Assembly a = make_assembly(path);
  Mat amb = ambient_gradient(path, a);
  Vec e = intrinsic_differential(a, amb);
  Eigen::SparseMatrix<double> G = assemble_gram_sparse(path, a);
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(G);
  if (llt.info() != Eigen::Success) throw Error("H1 Gram factorization failed");
  Vec z = llt.solve(e);
  GradientResult out;
  out.field = Mat::Zero(a.N, a.m->ambient_dim());
  for (int k = 0; k < a.N; ++k)
    out.field.row(k) = (a.frames[k] * z.segment(k * a.d, a.d)).transpose();
  out.norm = std::sqrt(std::max(0.0, e.dot(z)));
  out.differential = e;
  return out;
}

double energy_differential(const DiscretePath& path, const Mat& V) {
  Assembly a = make_assembly(path);
  Mat amb = ambient_gradient(path, a);
  double s = 0;
  for (int k = 0; k < a.N; ++k) {
    Vec v = a.m->project_tangent(path.sample(k), V.row(k).transpose());
    s += amb.row(k).dot(v);
  }
  return s;
}

DiscretePath displace(const DiscretePath& path, const Mat& V, double scale) {
  const Manifold& m = path.manifold();
  Mat out(path.size(), m.ambient_dim());
  for (int k = 0; k < path.size(); ++k) {
    Vec v = m.project_tangent(path.sample(k), V.row(k).transpose());
    out.row(k) = m.exp(path.sample(k), scale * v).transpose();
  }
  return path.with_samples(std::move(out));
}

SecondVariation second_variation(const DiscretePath& path) {
  check_resolution(path);
  Assembly a = make_assembly(path);
  const Manifold& m = *a.m;
  int n = a.N * a.d;
  int d = a.d;
  Mat H = Mat::Zero(n, n);
  Mat W2 = (2.0 * a.c * a.weights).asDiagonal();
  for (int k = 0; k < a.N; ++k) {
    bool twist = (k == a.N - 1);
    int ib = (k + 1) % a.N;
    const Mat& Sa = a.frames[k];
    const Mat& Sb = twist ? a.twist_frame : a.frames[ib];
    H.block(k * d, k * d, d, d) += Sa.transpose() * W2 * Sa;
    H.block(ib * d, ib * d, d, d) += Sb.transpose() * W2 * Sb;
    H.block(k * d, ib * d, d, d) -= Sa.transpose() * W2 * Sb;
    H.block(ib * d, k * d, d, d) -= Sb.transpose() * W2 * Sa;
  }
  // curvature of the sphere factors: -(x . grad) on the tangent block
  Mat amb = ambient_gradient(path, a);
  const auto& factors = m.factors();
  for (int k = 0; k < a.N; ++k) {
    int off = 0, ioff = 0;
    for (const auto& f : factors) {
      if (f.kind == Factor::Kind::Sphere) {
        double lambda =
            path.sample(k).segment(off, f.ambient_dim()).dot(amb.row(k).segment(off, f.ambient_dim()));
        for (int i = 0; i < f.dim; ++i) H(k * d + ioff + i, k * d + ioff + i) -= lambda;
      }
      off += f.ambient_dim();
      ioff += f.dim;
    }
  }
  SecondVariation out;
  out.asymmetry = (H - H.transpose()).cwiseAbs().maxCoeff();
  out.hessian = 0.5 * (H + H.transpose());
  out.gram = assemble_gram(path, a);
  return out;
}

IndexReport hessian_report(const DiscretePath& path, double eps_null, double critical_grad_tol) {
  SecondVariation sv = second_variation(path);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> solver(sv.hessian, sv.gram);
  if (solver.info() != Eigen::Success) throw Error("generalized eigensolver failed");
  const Vec& ev = solver.eigenvalues();
  IndexReport rep;
  rep.energy = energy(path);
  rep.gradient_norm = gradient(path).norm;
  rep.hessian_asymmetry = sv.asymmetry;
  rep.spectral_scale = std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
  double eps = eps_null * (rep.spectral_scale > 0 ? rep.spectral_scale : 1.0);
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] < -eps)
      ++rep.index;
    else if (ev[i] <= eps)
      ++rep.zero_count;
    else
      ++rep.positive_count;
  }
  rep.nullity = std::max(0, rep.zero_count - 1);
  int head = std::min<int>(16, static_cast<int>(ev.size()));
  rep.spectrum_head.assign(ev.data(), ev.data() + head);
  rep.critical = rep.gradient_norm <= critical_grad_tol;
  return rep;
}

DiscretePath iterate(const DiscretePath& path, int k, double closure_tol) {
  if (k < 1) throw ArgumentError("iterate exponent must be positive");
  if (k == 1) return path;
  const Manifold& m = path.manifold();
  int N = path.size();
  // gamma^k stays in the same twisted space only when the samples are
  // (k-1)*shift periodic
  long offset = static_cast<long>(k - 1) * N;
  for (int j = 0; j < N; ++j) {
    double gap = m.geodesic_distance(path.extended_sample(j + offset), path.sample(j));
    if (gap > closure_tol)
      throw ClosureError("iterate exponent breaks the twisted closure (gap " +
                         std::to_string(gap) + " at sample " + std::to_string(j) + ")");
  }
  Mat out(static_cast<long>(k) * N, m.ambient_dim());
  for (long j = 0; j < out.rows(); ++j) out.row(j) = path.extended_sample(j).transpose();
  return DiscretePath(m, path.isometry(), path.shift(), std::move(out));
}

DiscretePath rescale_to_unit_shift(const DiscretePath& path) {
  DiscretePath out = path.with_shift(1.0);
  double lhs = energy(out);
  double rhs = path.shift() * path.shift() * energy(path);
  if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(lhs)))
    throw Error("rescale identity violated");
  return out;
}

DiscretePath embed_periodic_subspace(const DiscretePath& loop, const Isometry& iso, double p,
                                     int m, int mu) {
  if (!loop.isometry().is_identity())
    throw ArgumentError("input must be a free loop (identity twist)");
  if (m < 0 || mu < 1 || p <= 0) throw ArgumentError("bad subspace parameters");
  if (std::abs(loop.shift() - mu * p) > 1e-9)
    throw ArgumentError("loop shift must equal mu * p");
  if (iso.manifold() != loop.manifold()) throw ArgumentError("isometry manifold mismatch");

  const Manifold& man = loop.manifold();
  double target_shift = m * p + 1.0;
  double ratio = target_shift / loop.dt();
  long n_new = std::lround(ratio);
  if (std::abs(ratio - n_new) > 1e-9)
    throw ResolutionError("time grids of the two path spaces are incommensurable; change N");
  if (n_new < 8) throw ArgumentError("embedded path would have fewer than 8 samples");

  // membership: I(zeta(t)) = zeta(t + m p + 1) on the grid
  for (int j = 0; j < loop.size(); ++j) {
    Vec lhs = iso.apply(loop.sample(j));
    Vec rhs = loop.extended_sample(j + n_new);
    if (man.geodesic_distance(lhs, rhs) > 1e-8)
      throw NotInSubspaceError("loop does not satisfy the twisted condition at sample " +
                               std::to_string(j));
  }

  Mat samples(n_new, man.ambient_dim());
  for (long j = 0; j < n_new; ++j) samples.row(j) = loop.extended_sample(j).transpose();
  DiscretePath out(man, iso, target_shift, std::move(samples));

  double e_in = energy(loop);
  double e_out = energy(out);
  if (std::abs(e_in - e_out) > 1e-10 * std::max(1.0, std::abs(e_in)))
    throw NotInSubspaceError("embedded energy deviates from the subspace energy");
  return out;
}

bool restrict_to_fixed_set(const DiscretePath& path, int alpha, double tol) {
  FixedPointSet fps = Isometry::power(path.isometry(), alpha).fixed_point_set();
  for (int k = 0; k < path.size(); ++k)
    if (!fps.contains(path.sample(k), tol)) return false;
  return true;
}

AverageIndexEstimate average_index(const DiscretePath& path, double p,
                                   const std::vector<int>& m_list, double eps_null) {
  AverageIndexEstimate est;
  for (int m : m_list) {
    if (m < 1) throw ArgumentError("iterate multipliers must be positive");
    double k_real = m * p + 1.0;
    long k = std::lround(k_real);
    if (std::abs(k_real - k) > 1e-9)
      throw ArgumentError("m p + 1 must be an integer to form the iterate");
    IndexReport rep = hessian_report(iterate(path, static_cast<int>(k)), eps_null);
    est.samples.emplace_back(m, rep.index);
  }
  size_t n = est.samples.size();
  if (n < 2) {
    est.slope_estimate = std::numeric_limits<double>::quiet_NaN();
    est.converged = false;
    return est;
  }
  double mbar = 0, ibar = 0;
  for (auto& [m, ind] : est.samples) {
    mbar += m;
    ibar += ind;
  }
  mbar /= n;
  ibar /= n;
  double num = 0, den = 0;
  for (auto& [m, ind] : est.samples) {
    num += (m - mbar) * (ind - ibar);
    den += (m - mbar) * (m - mbar);
  }
  est.slope_estimate = den > 0 ? num / den : std::numeric_limits<double>::quiet_NaN();
  double r_last = static_cast<double>(est.samples[n - 1].second) / est.samples[n - 1].first;
  double r_prev = static_cast<double>(est.samples[n - 2].second) / est.samples[n - 2].first;
  est.converged = std::abs(r_last - r_prev) < 0.1;
  return est;
}

}  // namespace invgeo
