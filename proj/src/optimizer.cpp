#include "invgeo/optimizer.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace invgeo {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_signed(double x) { return x - std::floor(x + 0.5); }

double mean_segment_length(const DiscretePath& path, double* max_dev = nullptr) {
  const Manifold& m = path.manifold();
  int N = path.size();
  double mean = 0;
  std::vector<double> lens(N);
  for (int k = 0; k < N; ++k) {
    Vec a = path.sample(k);
    Vec b = (k + 1 < N) ? path.sample(k + 1) : path.isometry().apply(path.sample(0));
    lens[k] = m.geodesic_distance(a, b);
    mean += lens[k];
  }
  mean /= N;
  if (max_dev) {
    double dev = 0;
    for (double l : lens) dev = std::max(dev, std::abs(l - mean));
    *max_dev = dev;
  }
  return mean;
}

bool constant_speed(const DiscretePath& path, double rel_tol = 1e-6) {
  double dev = 0;
  double mean = mean_segment_length(path, &dev);
  return dev <= rel_tol * mean + 1e-12;
}

double safe_energy(const DiscretePath& path) {
  try {
    return energy(path);
  } catch (const ResolutionError&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Intrinsic Newton correction, solved on the regularized system.
std::optional<Mat> newton_direction(const DiscretePath& path, const GradientResult& grad) {
  SecondVariation sv = second_variation(path);
  int n = static_cast<int>(sv.hessian.rows());
  double scale = sv.hessian.cwiseAbs().maxCoeff();
  Mat sys = sv.hessian + (1e-9 * (scale + 1.0)) * sv.gram;
  Eigen::PartialPivLU<Mat> lu(sys);
  Vec du = lu.solve(-grad.differential);
  if (!du.allFinite()) return std::nullopt;
  const Manifold& m = path.manifold();
  int d = m.intrinsic_dim();
  Mat field = Mat::Zero(path.size(), m.ambient_dim());
  for (int k = 0; k < path.size(); ++k) {
    Mat frame = m.tangent_frame(path.sample(k));
    field.row(k) = (frame * du.segment(k * d, d)).transpose();
  }
  (void)n;
  return field;
}

GeodesicRecord build_record(const DiscretePath& path, const SearchConfig& cfg, double E,
                            double grad_norm) {
  GeodesicRecord rec;
  rec.path = path;
  rec.energy = E;
  rec.gradient_norm = grad_norm;
  if (cfg.compute_index_report) rec.index_report = hessian_report(path, cfg.eps_null);
  if (E > 1e-12) rec.basic_period = detect_period(path);
  rec.winding = winding_markers(path);
  rec.image_fingerprint = image_fingerprint(path);
  return rec;
}

}  // namespace

void SearchConfig::validate() const {
  if (max_iterations < 1 || gradient_tolerance <= 0 || energy_cap <= 0 || backtracking_c <= 0 ||
      backtracking_rho <= 0 || backtracking_rho >= 1)
    throw ArgumentError("invalid search configuration");
}

FindOutcome find_critical(const DiscretePath& seed, const SearchConfig& cfg) {
  cfg.validate();
  FindOutcome out;
  DiscretePath path = seed;
  try {
    path = seed.refined_to_resolution();
  } catch (const ResolutionError& e) {
    out.diagnostic = std::string("seed under-resolved: ") + e.what();
    return out;
  }

  double E = safe_energy(path);
  out.energy_trace.push_back(E);
  double alpha = 1.0;
  double inj_third = path.manifold().injectivity_radius_bound() / 3.0;

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    out.iterations = iter;
    if (E > cfg.energy_cap) {
      out.diagnostic = "divergence: energy " + std::to_string(E) + " exceeded the cap";
      return out;
    }
    GradientResult grad = gradient(path);
    if (grad.norm <= cfg.gradient_tolerance) {
      if (!constant_speed(path)) {
        out.diagnostic = "converged but the speed profile is not constant";
        return out;
      }
      out.record = build_record(path, cfg, E, grad.norm);
      if (E < 1e-6) out.stall_point = path.sample(0);
      return out;
    }

    bool stepped = false;
    if (cfg.use_newton && grad.norm < cfg.newton_threshold) {
      if (auto dir = newton_direction(path, grad)) {
        double step = 1.0;
        for (int bt = 0; bt < 30 && !stepped; ++bt) {
          DiscretePath cand = displace(path, *dir, step);
          double cand_norm;
          try {
            cand_norm = gradient(cand).norm;
          } catch (const ResolutionError&) {
            cand_norm = std::numeric_limits<double>::infinity();
          }
          if (cand_norm < grad.norm * (1.0 - 1e-4 * step)) {
            path = cand;
            E = safe_energy(path);
            stepped = true;
          } else {
            step *= cfg.backtracking_rho;
          }
        }
      }
      if (stepped) {
        out.energy_trace.push_back(E);
        continue;
      }
    }

    // H1 steepest descent with Armijo backtracking
    double slope = grad.norm * grad.norm;  // -dE(-Z) = G(Z,Z)
    alpha = std::min(1.0, alpha * 2.0);
    while (alpha > 1e-14) {
      DiscretePath cand = displace(path, grad.field, -alpha);
      double cand_E = safe_energy(cand);
      if (cand_E <= E - cfg.backtracking_c * alpha * slope) {
        path = cand;
        E = cand_E;
        stepped = true;
        break;
      }
      alpha *= cfg.backtracking_rho;
    }
    if (!stepped) {
      out.diagnostic = "line search stalled at gradient norm " + std::to_string(grad.norm);
      return out;
    }
    out.energy_trace.push_back(E);
    if (path.max_segment_length() >= inj_third) {
      try {
        path = path.refined_to_resolution();
        E = safe_energy(path);
      } catch (const ResolutionError& e) {
        out.diagnostic = std::string("resolution limit: ") + e.what();
        return out;
      }
    }
  }
  out.diagnostic = "iteration budget exhausted";
  return out;
}

bool record_recheck(const GeodesicRecord& record, double gradient_tolerance, std::string* why) {
  double gn = gradient(record.path).norm;
  if (gn > gradient_tolerance) {
    if (why) *why = "gradient norm " + std::to_string(gn) + " above tolerance";
    return false;
  }
  if (!constant_speed(record.path)) {
    if (why) *why = "speed profile not constant";
    return false;
  }
  return true;
}

std::optional<double> detect_period(const DiscretePath& path, double tol, double max_multiplier) {
  const Manifold& m = path.manifold();
  const int N = path.size();
  const double dt = path.dt();
  const long max_j = static_cast<long>(std::floor(max_multiplier * N));
  if (max_j < 2) return std::nullopt;

  // extended samples up to index N + max_j + 1
  const long total = N + max_j + 2;
  Mat ext(total, m.ambient_dim());
  for (int k = 0; k < N; ++k) ext.row(k) = path.sample(k).transpose();
  for (long j = N; j < total; ++j)
    ext.row(j) = path.isometry().apply(ext.row(j - N).transpose()).transpose();

  auto eval_ext = [&](double t) -> Vec {
    double s = t / dt;
    double fl = std::floor(s);
    long j = static_cast<long>(fl);
    double frac = s - fl;
    if (j < 0 || j + 1 >= total) throw ArgumentError("period scan outside the extension window");
    if (frac < 1e-15) return ext.row(j).transpose();
    return m.geodesic_point(ext.row(j).transpose(), ext.row(j + 1).transpose(), frac);
  };
  auto max_dist_grid = [&](long j) {
    double worst = 0;
    for (int k = 0; k < N; ++k)
      worst = std::max(worst, m.geodesic_distance(ext.row(k + j).transpose(), ext.row(k).transpose()));
    return worst;
  };
  auto max_dist_real = [&](double p) {
    double worst = 0;
    for (int k = 0; k < N; ++k)
      worst = std::max(worst, m.geodesic_distance(eval_ext(k * dt + p), ext.row(k).transpose()));
    return worst;
  };

  std::vector<double> d(max_j + 1, 0.0);
  for (long j = 1; j <= max_j; ++j) d[j] = max_dist_grid(j);

  for (long j = 1; j <= max_j; ++j) {
    bool local_min = (j == 1 || d[j] <= d[j - 1]) && (j == max_j || d[j] <= d[j + 1]);
    if (!local_min) continue;
    // golden-section refinement on [max(dt, (j-1)dt), (j+1)dt]
    double lo = std::max(dt * 0.5, (j - 1) * dt);
    double hi = std::min((j + 1) * dt, max_multiplier * path.shift());
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = max_dist_real(x1), f2 = max_dist_real(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = max_dist_real(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = max_dist_real(x2);
      }
    }
    double p = 0.5 * (a + b);
    if (max_dist_real(p) < tol) return p;
  }
  return std::nullopt;
}

std::vector<int> winding_markers(const DiscretePath& path) {
  const Manifold& m = path.manifold();
  std::vector<int> markers;
  Vec x0 = path.sample(0);
  Vec closing = path.isometry().apply(x0);
  int off = 0;
  for (size_t f = 0; f < m.factors().size(); ++f) {
    const Factor& fac = m.factors()[f];
    int n = fac.ambient_dim();
    Mat A = path.isometry().linear().block(off, off, n, n);
    if (fac.kind == Factor::Kind::Torus) {
      bool plain = (A - Mat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12;
      for (int i = 0; i < n; ++i) {
        if (!plain) continue;  // no canonical lattice class under a rotating twist
        double total = 0;
        for (int k = 0; k < path.size(); ++k) {
          double next = (k + 1 < path.size()) ? path.samples()(k + 1, off + i) : closing[off + i];
          total += wrap_signed(next - path.samples()(k, off + i));
        }
        double twist_part = wrap_signed(closing[off + i] - x0[off + i]);
        markers.push_back(static_cast<int>(std::lround(total - twist_part)));
      }
    } else {
      // signed rotation count about the twist axis (or the traversal axis)
      Vec axis;
      double theta_ref = 0;
      if ((A - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12) {
        Vec area = Vec::Zero(3);
        for (int k = 0; k < path.size(); ++k) {
          Vec a = path.samples().row(k).segment(off, 3).transpose();
          Vec b = (k + 1 < path.size()) ? path.samples().row(k + 1).segment(off, 3).transpose()
                                        : closing.segment(off, 3).eval();
          area[0] += a[1] * b[2] - a[2] * b[1];
          area[1] += a[2] * b[0] - a[0] * b[2];
          area[2] += a[0] * b[1] - a[1] * b[0];
        }
        if (area.norm() < 1e-9) continue;
        axis = area.normalized();
      } else {
        Eigen::FullPivLU<Mat> lu(A - Mat::Identity(3, 3));
        lu.setThreshold(1e-9);
        Mat ker = lu.kernel();
        if (ker.cols() != 1) continue;
        axis = ker.col(0).normalized();
        Vec u = Vec::Zero(3);
        u[std::abs(axis[0]) < 0.9 ? 0 : 1] = 1.0;
        u -= axis.dot(u) * axis;
        u.normalize();
        Vec Ru = A * u;
        Vec cxu(3);
        cxu << axis[1] * u[2] - axis[2] * u[1], axis[2] * u[0] - axis[0] * u[2],
            axis[0] * u[1] - axis[1] * u[0];
        theta_ref = std::atan2(Ru.dot(cxu), Ru.dot(u));
      }
      double total = 0;
      bool ok = true;
      for (int k = 0; k < path.size() && ok; ++k) {
        Vec a = path.samples().row(k).segment(off, 3).transpose();
        Vec b = (k + 1 < path.size()) ? path.samples().row(k + 1).segment(off, 3).transpose()
                                      : closing.segment(off, 3).eval();
        Vec pa = (a - a.dot(axis) * axis), pb = (b - b.dot(axis) * axis);
        if (pa.norm() < 1e-6 || pb.norm() < 1e-6) {
          ok = false;
          break;
        }
        pa.normalize();
        pb.normalize();
        Vec cross(3);
        cross << pa[1] * pb[2] - pa[2] * pb[1], pa[2] * pb[0] - pa[0] * pb[2],
            pa[0] * pb[1] - pa[1] * pb[0];
        total += std::atan2(cross.dot(axis), pa.dot(pb));
      }
      if (!ok) continue;
      markers.push_back(static_cast<int>(std::lround((total - theta_ref) / (2.0 * kPi))));
    }
    off += n;
  }
  return markers;
}

Mat image_fingerprint(const DiscretePath& path, int max_points, int max_extension) {
  const Manifold& m = path.manifold();
  std::vector<Vec> cloud;
  cloud.reserve(path.size() * 4);
  for (int k = 0; k < path.size(); ++k) cloud.push_back(path.sample(k));
  if (!path.isometry().is_identity()) {
    std::vector<Vec> block(cloud);
    for (int b = 1; b < max_extension; ++b) {
      for (auto& p : block) p = path.isometry().apply(p);
      // stop once the extension adds nothing new
      double newest = 0;
      for (const auto& p : block) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& q : cloud) nearest = std::min(nearest, m.geodesic_distance(p, q));
        newest = std::max(newest, nearest);
        if (newest > 1e-6) break;
      }
      if (newest <= 1e-6) break;
      for (const auto& p : block) cloud.push_back(p);
    }
  }
  int stride = std::max<int>(1, static_cast<int>((cloud.size() + max_points - 1) / max_points));
  std::vector<Vec> sub;
  for (size_t i = 0; i < cloud.size(); i += stride) sub.push_back(cloud[i]);
  std::sort(sub.begin(), sub.end(), [](const Vec& a, const Vec& b) {
    for (int i = 0; i < a.size(); ++i) {
      if (a[i] < b[i]) return true;
      if (a[i] > b[i]) return false;
    }
    return false;
  });
  Mat out(sub.size(), m.ambient_dim());
  for (size_t i = 0; i < sub.size(); ++i) out.row(i) = sub[i].transpose();
  return out;
}

double hausdorff_distance(const Manifold& m, const Mat& A, const Mat& B) {
  auto one_sided = [&](const Mat& P, const Mat& Q) {
    double worst = 0;
    for (int i = 0; i < P.rows(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < Q.rows(); ++j) {
        best = std::min(best, m.geodesic_distance(P.row(i).transpose(), Q.row(j).transpose()));
        if (best <= worst) break;  // cannot raise the max
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(A, B), one_sided(B, A));
}

std::vector<OrbitFamily> dedup_orbits(const std::vector<GeodesicRecord>& records, double tol) {
  std::vector<OrbitFamily> families;
  std::vector<int> reps;
  for (size_t i = 0; i < records.size(); ++i) {
    const Manifold& m = records[i].path.manifold();
    bool placed = false;
    for (size_t f = 0; f < families.size() && !placed; ++f) {
      double d = hausdorff_distance(m, records[i].image_fingerprint,
                                    records[reps[f]].image_fingerprint);
      if (d < tol) {
        families[f].members.push_back(static_cast<int>(i));
        families[f].min_energy = std::min(families[f].min_energy, records[i].energy);
        placed = true;
      }
    }
    if (!placed) {
      OrbitFamily fam;
      fam.members = {static_cast<int>(i)};
      fam.min_energy = records[i].energy;
      families.push_back(std::move(fam));
      reps.push_back(static_cast<int>(i));
    }
  }
  return families;
}

namespace {

// Random free loop around x0, twisted into the path space by the homotopy
// track when one exists, otherwise by an enveloped chart/slerp connection
// from x0 to I(x0).
Mat random_seed_samples(const Manifold& m, const Isometry& iso, int N, double jitter,
                        std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vec x0 = m.random_point(rng);
  if (m.num_factors() == 1 && m.factors()[0].kind == Factor::Kind::Sphere) {
    // keep away from the antipode of I(x0)
    for (int tries = 0; tries < 32; ++tries) {
      if (m.geodesic_distance(x0, iso.apply(x0)) < kPi - 0.3) break;
      x0 = m.random_point(rng);
    }
  }
  const int harmonics = 3;
  Mat amp(harmonics, m.ambient_dim());
  Mat phase(harmonics, m.ambient_dim());
  for (int h = 0; h < harmonics; ++h)
    for (int c = 0; c < m.ambient_dim(); ++c) {
      amp(h, c) = jitter * unif(rng) / (h + 1);
      phase(h, c) = kPi * unif(rng);
    }
  bool track = iso.has_homotopy();
  Vec x1 = iso.apply(x0);
  Mat samples(N, m.ambient_dim());
  for (int k = 0; k < N; ++k) {
    double t = static_cast<double>(k) / N;
    Vec base;
    if (track) {
      base = iso.homotopy(t, x0);
    } else {
      // factor-wise connection from x0 to I(x0); zero wiggle at the endpoints
      base = Vec(m.ambient_dim());
      int off = 0;
      for (const auto& f : m.factors()) {
        int n = f.ambient_dim();
        if (f.kind == Factor::Kind::Torus) {
          for (int i = 0; i < n; ++i) {
            double d = wrap_signed(x1[off + i] - x0[off + i]);
            base[off + i] = x0[off + i] + t * d;
          }
        } else {
          Vec a = x0.segment(off, n), b = x1.segment(off, n);
          double c = std::min(1.0, std::max(-1.0, a.dot(b)));
          double th = std::acos(c);
          if (th < 1e-12) {
            base.segment(off, n) = a;
          } else {
            base.segment(off, n) = (std::sin((1 - t) * th) * a + std::sin(t * th) * b) / std::sin(th);
          }
        }
        off += n;
      }
    }
    Vec wiggle = Vec::Zero(m.ambient_dim());
    double envelope = track ? 1.0 : std::sin(kPi * t);
    for (int h = 0; h < harmonics; ++h)
      for (int c = 0; c < m.ambient_dim(); ++c)
        wiggle[c] += amp(h, c) * std::sin(2.0 * kPi * (h + 1) * t + phase(h, c));
    Vec p = m.exp(m.canonicalize(base), envelope * m.project_tangent(m.canonicalize(base), wiggle));
    samples.row(k) = p.transpose();
  }
  return samples;
}

void append_torus_class_seed(std::vector<DiscretePath>& out, const Manifold& m,
                             const Isometry& iso, const Vec& winding, int N, double jitter,
                             std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vec x0(m.ambient_dim());
  for (int i = 0; i < x0.size(); ++i) x0[i] = 0.15 + 0.1 * i + (jitter > 0 ? 0.05 * unif(rng) : 0.0);
  x0 = m.canonicalize(x0);
  Vec x1 = iso.apply(x0);
  Vec slope(m.ambient_dim());
  for (int i = 0; i < slope.size(); ++i) slope[i] = wrap_signed(x1[i] - x0[i]) + winding[i];
  Mat samples(N, m.ambient_dim());
  for (int k = 0; k < N; ++k) {
    double t = static_cast<double>(k) / N;
    Vec p = x0 + t * slope;
    if (jitter > 0)
      for (int i = 0; i < p.size(); ++i)
        p[i] += jitter * std::sin(kPi * t) * unif(rng);
    samples.row(k) = m.canonicalize(p).transpose();
  }
  out.emplace_back(m, iso, 1.0, std::move(samples));
}

// Axis and angle of the sphere-factor twist (identity gives the z axis, 0).
std::pair<Vec, double> sphere_twist_axis(const Mat& R) {
  Vec axis(3);
  axis << 0, 0, 1;
  double theta = 0;
  if ((R - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() >= 1e-12) {
    Eigen::FullPivLU<Mat> lu(R - Mat::Identity(3, 3));
    lu.setThreshold(1e-9);
    Mat ker = lu.kernel();
    if (ker.cols() != 1) throw ArgumentError("sphere twist is not a rotation about an axis");
    axis = ker.col(0).normalized();
    Vec u = Vec::Zero(3);
    u[std::abs(axis[0]) < 0.9 ? 0 : 1] = 1.0;
    u -= axis.dot(u) * axis;
    u.normalize();
    Vec Ru = R * u;
    Vec cxu(3);
    cxu << axis[1] * u[2] - axis[2] * u[1], axis[2] * u[0] - axis[0] * u[2],
        axis[0] * u[1] - axis[1] * u[0];
    theta = std::atan2(Ru.dot(cxu), Ru.dot(u));
  }
  return {axis, theta};
}

Mat sphere_winding_samples(const Vec& axis, double theta, int k, int N, double jitter,
                           std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vec u = Vec::Zero(3);
  u[std::abs(axis[0]) < 0.9 ? 0 : 1] = 1.0;
  u -= axis.dot(u) * axis;
  u.normalize();
  Vec w(3);
  w << axis[1] * u[2] - axis[2] * u[1], axis[2] * u[0] - axis[0] * u[2],
      axis[0] * u[1] - axis[1] * u[0];
  double L = theta + 2.0 * kPi * k;
  Mat samples(N, 3);
  for (int j = 0; j < N; ++j) {
    double t = static_cast<double>(j) / N;
    double phi = L * t;
    Vec p = std::cos(phi) * u + std::sin(phi) * w;
    if (jitter > 0) {
      p += jitter * (unif(rng) * axis + 0.3 * unif(rng) * u + 0.3 * unif(rng) * w);
      p.normalize();
    }
    samples.row(j) = p.transpose();
  }
  return samples;
}

}  // namespace

std::vector<DiscretePath> seed_library(const Manifold& m, const Isometry& iso,
                                       const SeedSpec& spec) {
  if (iso.manifold() != m) throw ArgumentError("isometry manifold mismatch");
  std::mt19937_64 rng(spec.rng_seed);
  std::vector<DiscretePath> out;
  int N = std::max(8, spec.samples);

  switch (spec.kind) {
    case SeedSpec::Kind::TorusClasses: {
      if (m.num_factors() != 1 || m.factors()[0].kind != Factor::Kind::Torus)
        throw ArgumentError("TorusClasses seeds require a torus manifold");
      if ((iso.linear() - Mat::Identity(m.ambient_dim(), m.ambient_dim())).cwiseAbs().maxCoeff() >
          1e-12)
        throw ArgumentError("TorusClasses seeds require a translational twist");
      int dim = m.ambient_dim();
      std::vector<Vec> classes;
      std::function<void(Vec&, int)> rec = [&](Vec& w, int i) {
        if (i == dim) {
          classes.push_back(w);
          return;
        }
        for (int a = -spec.class_range; a <= spec.class_range; ++a) {
          w[i] = a;
          rec(w, i + 1);
        }
      };
      Vec w(dim);
      rec(w, 0);
      for (const auto& cls : classes)
        for (int r = 0; r < std::max(1, spec.count); ++r)
          append_torus_class_seed(out, m, iso, cls, N, spec.jitter, rng);
      break;
    }
    case SeedSpec::Kind::SphereWindings: {
      if (m.num_factors() != 1 || m.factors()[0].kind != Factor::Kind::Sphere)
        throw ArgumentError("SphereWindings seeds require the sphere");
      auto [axis, theta] = sphere_twist_axis(iso.linear());
      for (int k = spec.winding_min; k <= spec.winding_max; ++k)
        for (int r = 0; r < std::max(1, spec.count); ++r)
          out.emplace_back(m, iso, 1.0, sphere_winding_samples(axis, theta, k, N, spec.jitter, rng));
      break;
    }
    case SeedSpec::Kind::ProductWindings: {
      // one winding slot per torus coordinate and per sphere factor
      std::vector<int> slots;
      for (const auto& f : m.factors())
        slots.push_back(f.kind == Factor::Kind::Torus ? f.dim : 1);
      int total_slots = 0;
      for (int s : slots) total_slots += s;
      std::vector<int> w(total_slots, spec.winding_min);
      bool done = false;
      while (!done) {
        for (int r = 0; r < std::max(1, spec.count); ++r) {
          Mat samples(N, m.ambient_dim());
          int off = 0, slot = 0;
          Vec x0 = m.random_point(rng);
          Vec x1 = iso.apply(x0);
          for (size_t f = 0; f < m.factors().size(); ++f) {
            const Factor& fac = m.factors()[f];
            int n = fac.ambient_dim();
            if (fac.kind == Factor::Kind::Torus) {
              for (int i = 0; i < n; ++i) {
                double d = wrap_signed(x1[off + i] - x0[off + i]) + w[slot + i];
                for (int j = 0; j < N; ++j) {
                  double t = static_cast<double>(j) / N;
                  samples(j, off + i) = x0[off + i] + t * d;
                }
              }
              slot += n;
            } else {
              Mat R = iso.linear().block(off, off, n, n);
              auto [axis, theta] = sphere_twist_axis(R);
              Mat block = sphere_winding_samples(axis, theta, w[slot], N, spec.jitter, rng);
              samples.block(0, off, N, n) = block;
              slot += 1;
            }
            off += n;
          }
          for (int j = 0; j < N; ++j)
            samples.row(j) = m.canonicalize(samples.row(j).transpose()).transpose();
          out.emplace_back(m, iso, 1.0, std::move(samples));
        }
        // advance the winding counter
        int i = 0;
        for (; i < total_slots; ++i) {
          if (w[i] < spec.winding_max) {
            ++w[i];
            for (int j = 0; j < i; ++j) w[j] = spec.winding_min;
            break;
          }
        }
        done = (i == total_slots);
      }
      break;
    }
    case SeedSpec::Kind::Random: {
      for (int r = 0; r < spec.count; ++r)
        out.emplace_back(m, iso, 1.0, random_seed_samples(m, iso, N, spec.jitter, rng));
      break;
    }
  }
  return out;
}

}  // namespace invgeo
