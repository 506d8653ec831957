#pragma once

#include <Eigen/Sparse>
#include <optional>
#include <vector>

#include "invgeo/path.hpp"

namespace invgeo {

/// Spectrum summary of the discrete second variation at a path.
struct IndexReport {
  double energy = 0;
  double gradient_norm = 0;          // H1 norm of the gradient
  std::vector<double> spectrum_head; // smallest eigenvalues, ascending
  int index = 0;                     // negative eigenvalues
  int nullity = 0;                   // near-zero count minus 1, floored at 0
  int zero_count = 0;                // raw near-zero count
  int positive_count = 0;
  double spectral_scale = 0;         // max |eigenvalue|
  double hessian_asymmetry = 0;      // max |H - H^T| before symmetrization
  bool critical = true;              // gradient_norm below the caller threshold
};

/// Index samples of iterates and the fitted growth rate.
struct AverageIndexEstimate {
  std::vector<std::pair<int, int>> samples;  // (m, ind(gamma^{m p + 1}))
  double slope_estimate = 0;
  bool converged = false;
};

/// Discrete energy E^tau = (N / tau^2) * sum of squared segment steps.
/// Throws ResolutionError when consecutive samples are separated by at least
/// the injectivity bound.
double energy(const DiscretePath& path);

/// Discrete H1 inner product of tangent fields given as (N+1) x ambient
/// matrices (row N explicit). Rows must be tangent at the samples and
/// satisfy the twisted closure dI X_0 = X_N within 1e-8.
double h1_inner(const DiscretePath& path, const Mat& X, const Mat& Y);

/// H1 gradient of the energy: the field Z with G(Z, .) = dE(.).
struct GradientResult {
  Mat field;          // N x ambient, rows tangent at samples
  double norm = 0;    // H1 norm
  Vec differential;   // intrinsic dE coefficients (frame coordinates)
};
GradientResult gradient(const DiscretePath& path);

/// dE(V) for a tangent field V given as N x ambient rows.
double energy_differential(const DiscretePath& path, const Mat& V);

/// Path moved by a tangent field through the exponential map.
DiscretePath displace(const DiscretePath& path, const Mat& V, double scale = 1.0);

/// Discrete second variation in a g-orthonormal frame, with the twisted
/// closure eliminated, plus the H1 Gram matrix of the same coordinates.
struct SecondVariation {
  Mat hessian;        // n x n, symmetrized
  Mat gram;           // n x n, SPD
  double asymmetry;   // max |H - H^T| before symmetrization
};
SecondVariation second_variation(const DiscretePath& path);

/// Assembles the second variation and classifies the spectrum of the
/// G-preconditioned Hessian (inertia equals the plain Hessian's).
IndexReport hessian_report(const DiscretePath& path, double eps_null = 1e-6,
                           double critical_grad_tol = 1e-4);

/// k-fold iterate gamma^k(t) = gamma(k t), exact sample repetition, same
/// shift. For twisted paths requires the samples to be (k-1)*shift periodic
/// within tol; throws ClosureError otherwise.
DiscretePath iterate(const DiscretePath& path, int k, double closure_tol = 1e-6);

/// Shift-tau path re-read at shift 1 (same samples). E(out) = tau^2 E^tau(in).
DiscretePath rescale_to_unit_shift(const DiscretePath& path);

/// Re-reads a mu*p-periodic free loop that also satisfies the (m*p+1)-twist
/// condition as an element of the shift-(m*p+1) twisted space. Requires the
/// two grids to be commensurable; verifies the energies agree to 1e-10.
DiscretePath embed_periodic_subspace(const DiscretePath& loop, const Isometry& iso, double p,
                                     int m, int mu);

/// True iff every sample lies in fix(I^alpha) within tol.
bool restrict_to_fixed_set(const DiscretePath& path, int alpha, double tol = 1e-8);

/// ind(gamma^{m p + 1}) over m_list via iterate + hessian_report, with a
/// least-squares slope fit. p*m + 1 must be an integer for each m.
AverageIndexEstimate average_index(const DiscretePath& path, double p,
                                   const std::vector<int>& m_list, double eps_null = 1e-6);

}  // namespace invgeo
