#include "invgeo/bangert.hpp"

#include <algorithm>
#include <cmath>

namespace invgeo {

namespace {

double loop_energy(const Manifold& m, const Mat& row, double period) {
  int n = static_cast<int>(row.rows());
  double sum = 0;
  for (int j = 0; j < n; ++j) {
    Vec a = row.row(j).transpose();
    Vec b = row.row((j + 1) % n).transpose();
    sum += m.step_sq(a, b);
  }
  return sum * n / (period * period);
}

// One affine piece of the construction: on [t_lo, t_hi] the output curve is
// gamma(sa + sb t)(ta + tb t); starred pieces sweep the path parameter.
struct Block {
  double t_lo = 0, t_hi = 0;
  double sa = 0, sb = 0;
  double ta = 0, tb = 0;
  bool starred = false;

  double s_arg(double t) const { return std::min(1.0, std::max(0.0, sa + sb * t)); }
  double t_arg(double t) const { return ta + tb * t; }
};

// The piecewise definition of the lengthened path at regime k (0 = opening,
// 1..m-2 = middle, m-1 = closing) and local parameter s in [0,1].
std::vector<Block> regime_blocks(double p, int m, int k, double s) {
  std::vector<Block> b;
  if (k == 0) {
    b.push_back({0.0, (1.0 - s / 2) * p, s, 0.0, 0.0, 2.0 / (2.0 - s), false});
    b.push_back({(1.0 - s / 2) * p, (1.0 - s / 4) * p, 4.0 - s, -4.0 / p, p, 0.0, true});
    b.push_back({(1.0 - s / 4) * p, (m - s / 4) * p, 0.0, 0.0, s * p / 4.0, 1.0, false});
    b.push_back({(m - s / 4) * p, m * p, s - 4.0 * m, 4.0 / p, static_cast<double>(m) * p, 0.0, true});
  } else if (k <= m - 2) {
    b.push_back({0.0, p / 2, 1.0, 0.0, 0.0, 2.0, false});
    b.push_back({p / 2, (k - 0.5) * p, 1.0, 0.0, -p / 2, 1.0, false});
    b.push_back({(k - 0.5) * p, (k - (1.0 + s) / 4) * p, 4.0 * k - 1.0, -4.0 / p, k * p, 0.0, true});
    b.push_back({(k - (1.0 + s) / 4) * p, (k + (3.0 - s) / 4) * p, s, 0.0, (1.0 + s) * p / 4.0, 1.0,
                 false});
    b.push_back({(k + (3.0 - s) / 4) * p, (k + 0.75) * p, 4.0 * k + 3.0, -4.0 / p, (k + 1.0) * p,
                 0.0, true});
    b.push_back({(k + 0.75) * p, (m - 0.25) * p, 0.0, 0.0, p / 4.0, 1.0, false});
    b.push_back({(m - 0.25) * p, m * p, 1.0 - 4.0 * m, 4.0 / p, static_cast<double>(m) * p, 0.0, true});
  } else {
    b.push_back({0.0, (1.0 + s) * p / 2, 1.0, 0.0, 0.0, 2.0 / (1.0 + s), false});
    b.push_back({(1.0 + s) * p / 2, (m + (s - 3.0) / 2) * p, 1.0, 0.0, (1.0 - s) * p / 2, 1.0, false});
    b.push_back({(m + (s - 3.0) / 2) * p, (m + (s - 5.0) / 4) * p, 2.0 * s + 4.0 * m - 5.0, -4.0 / p,
                 (m - 1.0) * p, 0.0, true});
    b.push_back({(m + (s - 5.0) / 4) * p, (m + (s - 1.0) / 4) * p, s, 0.0, (1.0 - s) * p / 4.0, 1.0,
                 false});
    b.push_back({(m + (s - 1.0) / 4) * p, m * p, 1.0 - 4.0 * m, 4.0 / p, static_cast<double>(m) * p,
                 0.0, true});
  }
  return b;
}

int block_at(const std::vector<Block>& blocks, double t) {
  for (size_t i = 0; i + 1 < blocks.size(); ++i)
    if (t < blocks[i].t_hi) return static_cast<int>(i);
  return static_cast<int>(blocks.size()) - 1;
}

// Constant-speed broken geodesic through the delta-spaced nodes of one
// starred block.
struct SweepGeodesic {
  std::vector<Vec> nodes;
  std::vector<double> cumulative;  // cumulative node distances
  double t_lo = 0, t_hi = 0;
  const Manifold* m = nullptr;

  Vec at(double t) const {
    double total = cumulative.back();
    if (total < 1e-15 || t_hi - t_lo < 1e-15) return nodes.front();
    double u = (t - t_lo) / (t_hi - t_lo) * total;
    u = std::min(total, std::max(0.0, u));
    size_t leg = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
    if (leg == 0) leg = 1;
    if (leg >= cumulative.size()) leg = cumulative.size() - 1;
    double seg = cumulative[leg] - cumulative[leg - 1];
    double frac = seg < 1e-15 ? 0.0 : (u - cumulative[leg - 1]) / seg;
    return m->geodesic_point(nodes[leg - 1], nodes[leg], frac);
  }
};

SweepGeodesic make_sweep(const LoopPath& gamma, const Block& blk, double delta) {
  SweepGeodesic sw;
  sw.m = &gamma.manifold();
  sw.t_lo = blk.t_lo;
  sw.t_hi = blk.t_hi;
  std::vector<double> ts;
  double span = blk.t_hi - blk.t_lo;
  for (double off = 0; off < span - 1e-15; off += delta) ts.push_back(blk.t_lo + off);
  ts.push_back(blk.t_hi);
  for (double t : ts) sw.nodes.push_back(gamma.eval(blk.s_arg(t), blk.t_arg(t)));
  sw.cumulative.assign(1, 0.0);
  double inj = gamma.manifold().injectivity_radius_bound();
  for (size_t i = 0; i + 1 < sw.nodes.size(); ++i) {
    double d = gamma.manifold().geodesic_distance(sw.nodes[i], sw.nodes[i + 1]);
    if (d >= inj)
      throw ResolutionError("sweep nodes separated beyond the injectivity bound; decrease delta");
    sw.cumulative.push_back(sw.cumulative.back() + d);
  }
  return sw;
}

struct RowBuild {
  Mat row;
  double junction = 0;
};

RowBuild build_row(const LoopPath& gamma, int m, int k, double s, int n_out, bool continuous,
                   double delta) {
  const Manifold& man = gamma.manifold();
  const double p = gamma.period();
  std::vector<Block> blocks = regime_blocks(p, m, k, s);

  std::vector<SweepGeodesic> sweeps(blocks.size());
  if (continuous)
    for (size_t i = 0; i < blocks.size(); ++i)
      if (blocks[i].starred && blocks[i].t_hi - blocks[i].t_lo > 1e-15)
        sweeps[i] = make_sweep(gamma, blocks[i], delta);

  auto eval_block = [&](int bi, double t) -> Vec {
    if (continuous && blocks[bi].starred && !sweeps[bi].nodes.empty()) return sweeps[bi].at(t);
    return gamma.eval(blocks[bi].s_arg(t), blocks[bi].t_arg(t));
  };

  RowBuild out;
  out.row = Mat(n_out, man.ambient_dim());
  double total = m * p;
  for (int j = 0; j < n_out; ++j) {
    double t = total * j / n_out;
    out.row.row(j) = eval_block(block_at(blocks, t), t).transpose();
  }
  // seam agreement between adjacent formula pieces, and the wrap-around
  for (size_t i = 0; i + 1 < blocks.size(); ++i) {
    double t = blocks[i].t_hi;
    out.junction = std::max(out.junction, man.geodesic_distance(eval_block(static_cast<int>(i), t),
                                                                eval_block(static_cast<int>(i) + 1, t)));
  }
  out.junction = std::max(
      out.junction, man.geodesic_distance(eval_block(0, 0.0),
                                          eval_block(static_cast<int>(blocks.size()) - 1, total)));
  return out;
}

BangertResult run_construction(const LoopPath& gamma, int m, bool continuous, double delta) {
  if (m < 2) throw ArgumentError("the construction needs m >= 2");
  if (gamma.cols() < 8) throw ResolutionError("loop grid too coarse for the reparametrizations");
  const double p = gamma.period();
  const int n_out = 4 * m * gamma.cols();
  const int rows_per_regime = std::max(gamma.rows(), 9);

  BangertResult res;
  res.m = m;
  std::vector<double> s_out;
  std::vector<Mat> rows_out;
  const Manifold& man = gamma.manifold();

  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < rows_per_regime; ++i) {
      double s = static_cast<double>(i) / (rows_per_regime - 1);
      RowBuild rb = build_row(gamma, m, k, s, n_out, continuous, delta);
      res.junction_max = std::max(res.junction_max, rb.junction);
      double s_prime = (k + s) / m;
      if (k > 0 && i == 0) {
        // regime boundary: the closing row of the previous regime must agree
        const Mat& prev = rows_out.back();
        double gap = 0;
        for (int j = 0; j < n_out; ++j)
          gap = std::max(gap, man.geodesic_distance(prev.row(j).transpose(), rb.row.row(j).transpose()));
        res.junction_max = std::max(res.junction_max, gap);
        continue;
      }
      s_out.push_back(s_prime);
      rows_out.push_back(std::move(rb.row));
    }
  }

  Vec s_vec = Eigen::Map<Vec>(s_out.data(), static_cast<long>(s_out.size()));
  res.result = LoopPath(man, m * p, s_vec, std::move(rows_out));
  for (int i = 0; i < res.result.rows(); ++i)
    res.energy_profile.emplace_back(res.result.s_values()[i], res.result.row_energy(i));
  return res;
}

}  // namespace

// ---------------------------------------------------------------------------
// LoopPath

LoopPath::LoopPath(Manifold manifold, double period, Vec s_values, std::vector<Mat> rows)
    : manifold_(std::move(manifold)), period_(period), s_values_(std::move(s_values)), rows_(std::move(rows)) {
  if (period_ <= 0) throw ArgumentError("loop period must be positive");
  if (rows_.size() < 2 || static_cast<long>(rows_.size()) != s_values_.size())
    throw ArgumentError("need at least two rows with matching parameter values");
  for (long i = 1; i < s_values_.size(); ++i)
    if (!(s_values_[i] > s_values_[i - 1])) throw ArgumentError("parameter values must increase");
  int n = static_cast<int>(rows_[0].rows());
  if (n < 8) throw ArgumentError("need at least 8 time samples per loop");
  for (auto& r : rows_) {
    if (r.rows() != n || r.cols() != manifold_.ambient_dim())
      throw ArgumentError("inconsistent loop grid");
    for (int j = 0; j < n; ++j) r.row(j) = manifold_.canonicalize(r.row(j).transpose()).transpose();
  }
  double inj = manifold_.injectivity_radius_bound();
  if (max_row_gap() >= inj)
    throw ResolutionError("adjacent loops farther apart than the injectivity bound");
}

LoopPath LoopPath::sample(Manifold manifold, double period, int s_rows, int t_cols,
                          const std::function<Vec(double, double)>& f) {
  if (s_rows < 2) throw ArgumentError("need at least two rows");
  Vec s_values(s_rows);
  std::vector<Mat> rows;
  rows.reserve(s_rows);
  for (int i = 0; i < s_rows; ++i) {
    double s = static_cast<double>(i) / (s_rows - 1);
    s_values[i] = s;
    Mat row(t_cols, manifold.ambient_dim());
    for (int j = 0; j < t_cols; ++j) row.row(j) = f(s, period * j / t_cols).transpose();
    rows.push_back(std::move(row));
  }
  return LoopPath(std::move(manifold), period, std::move(s_values), std::move(rows));
}

Vec LoopPath::eval_row(int i, double t) const {
  const Mat& r = rows_[i];
  int n = static_cast<int>(r.rows());
  double tt = t - period_ * std::floor(t / period_);
  double s = tt * n / period_;
  double fl = std::floor(s);
  int j = static_cast<int>(fl) % n;
  double frac = s - fl;
  if (frac < 1e-15) return r.row(j).transpose();
  return manifold_.geodesic_point(r.row(j).transpose(), r.row((j + 1) % n).transpose(), frac);
}

Vec LoopPath::eval(double s, double t) const {
  if (s <= s_values_[0]) return eval_row(0, t);
  if (s >= s_values_[s_values_.size() - 1]) return eval_row(rows() - 1, t);
  int lo = 0, hi = rows() - 1;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (s_values_[mid] <= s)
      lo = mid;
    else
      hi = mid;
  }
  double frac = (s - s_values_[lo]) / (s_values_[hi] - s_values_[lo]);
  if (frac < 1e-15) return eval_row(lo, t);
  return manifold_.geodesic_point(eval_row(lo, t), eval_row(hi, t), frac);
}

double LoopPath::row_energy(int i) const { return loop_energy(manifold_, rows_[i], period_); }

double LoopPath::max_row_gap() const {
  double worst = 0;
  for (size_t i = 0; i + 1 < rows_.size(); ++i)
    for (int j = 0; j < rows_[i].rows(); ++j)
      worst = std::max(worst, manifold_.geodesic_distance(rows_[i].row(j).transpose(),
                                                          rows_[i + 1].row(j).transpose()));
  return worst;
}

double LoopPath::max_closure_gap() const {
  // rows close by construction (column N wraps to column 0); report the
  // largest step of the wrap segment relative to the typical step instead
  double worst = 0;
  for (const auto& r : rows_) {
    int n = static_cast<int>(r.rows());
    double wrap = manifold_.geodesic_distance(r.row(n - 1).transpose(), r.row(0).transpose());
    double typical = 0;
    for (int j = 0; j + 1 < n; ++j)
      typical = std::max(typical,
                         manifold_.geodesic_distance(r.row(j).transpose(), r.row(j + 1).transpose()));
    worst = std::max(worst, std::max(0.0, wrap - typical));
  }
  return worst;
}

LoopPath LoopPath::restricted(double r, int s_rows) const {
  if (r <= 0 || r > 1) throw ArgumentError("restriction parameter must lie in (0, 1]");
  Vec s_values(s_rows);
  std::vector<Mat> out;
  out.reserve(s_rows);
  int n = cols();
  for (int i = 0; i < s_rows; ++i) {
    double sl = static_cast<double>(i) / (s_rows - 1);
    s_values[i] = sl;
    Mat row(n, manifold_.ambient_dim());
    for (int j = 0; j < n; ++j) row.row(j) = eval(r * sl, period_ * j / n).transpose();
    out.push_back(std::move(row));
  }
  return LoopPath(manifold_, period_, std::move(s_values), std::move(out));
}

// ---------------------------------------------------------------------------
// Construction, homotopy, estimate

BangertResult bangert_path(const LoopPath& gamma, int m) {
  return run_construction(gamma, m, false, 0.0);
}

double default_delta(const LoopPath& gamma) {
  double p = gamma.period();
  double lip = 0;
  for (int i = 0; i + 1 < gamma.rows(); ++i) {
    double ds = gamma.s_values()[i + 1] - gamma.s_values()[i];
    for (int j = 0; j < gamma.cols(); ++j) {
      double d = gamma.manifold().geodesic_distance(gamma.row(i).row(j).transpose(),
                                                    gamma.row(i + 1).row(j).transpose());
      lip = std::max(lip, d / ds);
    }
  }
  double inj = gamma.manifold().injectivity_radius_bound();
  double bound = lip > 1e-12 ? inj * p / (8.0 * lip) : p / 64.0;
  return std::min(p / 64.0, bound);
}

BangertResult bangert_path_continuous(const LoopPath& gamma, int m, double delta) {
  if (delta <= 0) throw ArgumentError("delta must be positive");
  // loops at parameters within 4 delta / p must stay pointwise within the
  // injectivity bound
  double window = 4.0 * delta / gamma.period();
  double inj = gamma.manifold().injectivity_radius_bound();
  for (int i = 0; i < gamma.rows(); ++i)
    for (int j = i + 1; j < gamma.rows(); ++j) {
      if (gamma.s_values()[j] - gamma.s_values()[i] > window + 1e-12) break;
      for (int l = 0; l < gamma.cols(); ++l) {
        double d = gamma.manifold().geodesic_distance(gamma.row(i).row(l).transpose(),
                                                      gamma.row(j).row(l).transpose());
        if (d >= inj)
          throw ArgumentError(
              "delta too large: loops at parameters " + std::to_string(gamma.s_values()[i]) +
              " and " + std::to_string(gamma.s_values()[j]) + " are " + std::to_string(d) +
              " apart at time " + std::to_string(gamma.period() * l / gamma.cols()));
      }
    }
  return run_construction(gamma, m, true, delta);
}

LoopPath connecting_homotopy(const LoopPath& gamma, int m, double r) {
  if (r < 0 || r > 1) throw ArgumentError("homotopy parameter must lie in [0, 1]");
  if (m < 2) throw ArgumentError("the construction needs m >= 2");
  const Manifold& man = gamma.manifold();
  const double p = gamma.period();
  const int n_out = 4 * m * gamma.cols();
  const double total = m * p;

  auto plain_row = [&](double s) {
    Mat row(n_out, man.ambient_dim());
    for (int j = 0; j < n_out; ++j) row.row(j) = gamma.eval(s, total * j / n_out).transpose();
    return row;
  };

  std::vector<double> s_out;
  std::vector<Mat> rows_out;
  if (r < 1e-12) {
    for (int i = 0; i < gamma.rows(); ++i) {
      s_out.push_back(gamma.s_values()[i]);
      rows_out.push_back(plain_row(gamma.s_values()[i]));
    }
  } else {
    LoopPath restricted = gamma.restricted(r, std::max(gamma.rows(), 9));
    BangertResult lengthened = bangert_path(restricted, m);
    const LoopPath& lp = lengthened.result;
    for (int i = 0; i < lp.rows(); ++i) {
      double s = r * lp.s_values()[i];
      if (s >= r * (1.0 - 1e-15)) break;  // boundary row handled by the plain branch
      s_out.push_back(s);
      rows_out.push_back(lp.row(i));
    }
    s_out.push_back(r);
    rows_out.push_back(plain_row(r));
    for (int i = 0; i < gamma.rows(); ++i) {
      double s = gamma.s_values()[i];
      if (s <= r + 1e-15) continue;
      s_out.push_back(s);
      rows_out.push_back(plain_row(s));
    }
    if (s_out.back() < 1.0 - 1e-15) {
      s_out.push_back(1.0);
      rows_out.push_back(plain_row(1.0));
    }
  }
  Vec s_vec = Eigen::Map<Vec>(s_out.data(), static_cast<long>(s_out.size()));
  return LoopPath(man, total, s_vec, std::move(rows_out));
}

EstimateReport verify_estimate(const LoopPath& gamma, const std::vector<int>& m_list) {
  EstimateReport rep;
  rep.endpoint_max = std::max(gamma.row_energy(0), gamma.row_energy(gamma.rows() - 1));
  std::vector<int> ms = m_list;
  std::sort(ms.begin(), ms.end());
  const double p = gamma.period();
  for (int m : ms) {
    BangertResult b = bangert_path(gamma, m);
    EstimateReport::Entry e;
    e.m = m;
    e.max_energy = 0;
    for (auto& [s, en] : b.energy_profile) e.max_energy = std::max(e.max_energy, en);
    e.excess = e.max_energy - rep.endpoint_max;
    e.scaled_excess = e.excess * m * p;
    rep.entries.push_back(e);
  }
  for (auto& e : rep.entries) rep.fitted_constant = std::max(rep.fitted_constant, e.scaled_excess);
  double floor = 1e-9 * (rep.endpoint_max + 1.0);
  for (auto& e : rep.entries)
    if (e.excess > rep.fitted_constant / (e.m * p) * (1.0 + 1e-9) + floor) rep.per_m_pass = false;
  // trend of the scaled excess over m: a growing fit means the 1/(mp) decay fails
  if (rep.entries.size() >= 2) {
    double mbar = 0, qbar = 0;
    for (auto& e : rep.entries) {
      mbar += e.m;
      qbar += e.scaled_excess;
    }
    mbar /= rep.entries.size();
    qbar /= rep.entries.size();
    double num = 0, den = 0, scale = floor;
    for (auto& e : rep.entries) {
      num += (e.m - mbar) * (e.scaled_excess - qbar);
      den += (e.m - mbar) * (e.m - mbar);
      scale = std::max(scale, std::abs(e.scaled_excess));
    }
    double slope = den > 0 ? num / den : 0.0;
    double span = rep.entries.back().m - rep.entries.front().m;
    rep.bounded_no_growth = slope * span <= 0.05 * scale;
    double first = rep.entries.front().excess, last = rep.entries.back().excess;
    rep.last_below_first = (last < first) || (std::abs(first) < floor && std::abs(last) < floor);
  }
  return rep;
}

}  // namespace invgeo
