#pragma once

#include <functional>

#include "invgeo/manifold.hpp"

namespace invgeo {

/// A continuous path of free loops: rows are p-periodic loops sampled on a
/// uniform time grid of [0, p], indexed by a parameter s in [0, 1].
class LoopPath {
 public:
  LoopPath() = default;
  LoopPath(Manifold manifold, double period, Vec s_values, std::vector<Mat> rows);

  /// Samples f(s, t) on an S x N grid.
  static LoopPath sample(Manifold manifold, double period, int s_rows, int t_cols,
                         const std::function<Vec(double, double)>& f);

  const Manifold& manifold() const { return manifold_; }
  double period() const { return period_; }
  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return static_cast<int>(rows_.empty() ? 0 : rows_[0].rows()); }
  const Vec& s_values() const { return s_values_; }
  const Mat& row(int i) const { return rows_[i]; }

  /// Broken-geodesic evaluation of row i at any time (wraps mod p).
  Vec eval_row(int i, double t) const;
  /// Evaluation at any (s, t): geodesic interpolation between adjacent rows.
  Vec eval(double s, double t) const;

  /// Free-loop energy E^p of row i.
  double row_energy(int i) const;
  /// Largest pointwise gap between adjacent rows.
  double max_row_gap() const;
  /// Worst closure gap of the rows (distance from the last to the first
  /// column continuation).
  double max_closure_gap() const;

  /// The path restricted to [0, r], re-indexed over [0, 1].
  LoopPath restricted(double r, int s_rows) const;

 private:
  Manifold manifold_;
  double period_ = 1.0;
  Vec s_values_;
  std::vector<Mat> rows_;
};

/// Output of the loop-path lengthening construction.
struct BangertResult {
  int m = 0;
  LoopPath result;                                      // period m p
  double junction_max = 0;                              // worst seam mismatch
  std::vector<std::pair<double, double>> energy_profile;  // (s, E^{mp})
};

/// Turns a path of p-periodic loops into a path of mp-periodic loops whose
/// interior energy exceeds the endpoint energies by at most O(1/(mp)).
/// Endpoints: result(0) is gamma(0) read mp-periodically, result(1) is the
/// m-fold traversal of gamma(1).
BangertResult bangert_path(const LoopPath& gamma, int m);

/// Variant for merely continuous input: the parameter-sweep segments are
/// replaced by constant-speed broken geodesics with node spacing delta.
/// Requires that loops at parameters within 4 delta / p of each other stay
/// pointwise within the injectivity bound (checked on the grid).
BangertResult bangert_path_continuous(const LoopPath& gamma, int m, double delta);

/// Default node spacing for the continuous variant.
double default_delta(const LoopPath& gamma);

/// Homotopy (in r) between gamma read mp-periodically and the lengthened
/// path: keeps gamma on [r, 1] and applies the construction to gamma|[0, r].
/// Path endpoints are the same loops for every r.
LoopPath connecting_homotopy(const LoopPath& gamma, int m, double r);

/// Energy-estimate verification across iterate counts.
struct EstimateReport {
  struct Entry {
    int m = 0;
    double max_energy = 0;
    double excess = 0;            // max_s E^{mp} - max endpoint energy
    double scaled_excess = 0;     // excess * m p
  };
  std::vector<Entry> entries;
  double endpoint_max = 0;
  double fitted_constant = 0;     // max_m excess * m p
  bool per_m_pass = true;         // excess(m) <= C/(mp) (1 + 1e-9)
  bool bounded_no_growth = true;  // scaled excess shows no increasing trend
  bool last_below_first = true;   // excess(m_max) < excess(m_min)
};
EstimateReport verify_estimate(const LoopPath& gamma, const std::vector<int>& m_list);

}  // namespace invgeo
