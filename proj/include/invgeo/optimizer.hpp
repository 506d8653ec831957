#pragma once

#include <optional>
#include <string>
#include <vector>

#include "invgeo/energy.hpp"

namespace invgeo {

/// Descent configuration.
struct SearchConfig {
  int max_iterations = 3000;
  double gradient_tolerance = 1e-8;   // H1 norm
  double energy_cap = 1e4;
  double backtracking_c = 1e-4;
  double backtracking_rho = 0.5;
  bool use_newton = true;
  double newton_threshold = 1e-3;     // switch to Newton below this gradient norm
  double eps_null = 1e-6;
  bool compute_index_report = true;
  unsigned long long seed = 0;        // recorded for reproducibility

  void validate() const;
};

/// A converged critical point with orbit metadata.
struct GeodesicRecord {
  DiscretePath path;
  double energy = 0;
  double gradient_norm = 0;
  std::optional<IndexReport> index_report;
  std::optional<double> basic_period;
  std::vector<int> winding;       // homotopy-class markers, empty when undefined
  Mat image_fingerprint;          // subsampled image cloud, sorted rows
};

/// Outcome of one descent run.
struct FindOutcome {
  std::optional<GeodesicRecord> record;
  std::string diagnostic;
  int iterations = 0;
  std::optional<Vec> stall_point;     // mean sample when converged to a constant path
  std::vector<double> energy_trace;   // energy after each accepted descent step
};

/// Independent validation of a record: gradient below tolerance and constant
/// speed within 1e-6 relative.
bool record_recheck(const GeodesicRecord& record, double gradient_tolerance,
                    std::string* why = nullptr);

/// Descent to a critical point of the energy: H1 gradient steps with
/// backtracking, then Newton refinement on the discrete system once the
/// gradient is small (required to land on saddle-type geodesics).
FindOutcome find_critical(const DiscretePath& seed, const SearchConfig& cfg);

/// Smallest period of the sample curve: scans the grid, then refines real
/// candidates; absent when nothing closes below shift * max_multiplier.
std::optional<double> detect_period(const DiscretePath& path, double tol = 1e-6,
                                    double max_multiplier = 8.0);

/// Homotopy-class markers per factor: torus windings from lattice lifts,
/// sphere winding from the total signed rotation relative to the twist angle.
std::vector<int> winding_markers(const DiscretePath& path);

/// Subsampled geometric image of the full invariant curve (twist extensions
/// applied), rows sorted for deterministic comparison.
Mat image_fingerprint(const DiscretePath& path, int max_points = 1024, int max_extension = 32);

/// Symmetric Hausdorff distance between two fingerprint clouds.
double hausdorff_distance(const Manifold& m, const Mat& A, const Mat& B);

/// One family of records sharing a geometric image.
struct OrbitFamily {
  std::vector<int> members;  // indices into the input record list
  double min_energy = 0;
};

/// Partition of records into geometric-geodesic families (symmetric
/// Hausdorff distance below tol).
std::vector<OrbitFamily> dedup_orbits(const std::vector<GeodesicRecord>& records,
                                      double tol = 1e-4);

/// Seed construction strategies.
struct SeedSpec {
  enum class Kind {
    TorusClasses,    // lattice classes within |a_i| <= class_range
    SphereWindings,  // circles winding k in [winding_min, winding_max] about the twist axis
    ProductWindings, // factor-wise combinations for torus x sphere products
    Random,          // jittered closures of random base points
  };
  Kind kind = Kind::Random;
  int samples = 64;              // N per seed
  int class_range = 2;           // TorusClasses
  int winding_min = 0;           // SphereWindings / ProductWindings
  int winding_max = 0;
  int count = 1;                 // Random / replicates per class
  double jitter = 0.0;
  unsigned long long rng_seed = 12345;
};

std::vector<DiscretePath> seed_library(const Manifold& m, const Isometry& iso,
                                       const SeedSpec& spec);

}  // namespace invgeo
