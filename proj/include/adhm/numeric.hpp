#pragma once

#include "adhm/types.hpp"

#include <cstdint>
#include <random>

namespace adhm {

// ---------------------------------------------------------------------------
// Rank decisions
// ---------------------------------------------------------------------------

/// Outcome of a thresholded SVD rank decision.
struct RankResult {
  int rank = 0;
  double threshold = 0.0;       ///< rtol * sigma_max * max(m, n)
  double gap_ratio = 0.0;       ///< sigma_rank / sigma_{rank+1} (+inf across zero)
  bool ambiguous = false;       ///< gap_ratio < tolerances().gap_min
  Eigen::VectorXd singular_values;  ///< descending
};

/// Numerical rank with gap diagnostics.  `rtol <= 0` uses tolerances().rank_rtol.
RankResult numerical_rank(const Mat& m, double rtol = 0.0);

/// Orthonormal basis of the (right) null space, cols x (cols - rank).
Mat null_space_basis(const Mat& m, double rtol = 0.0);

/// Orthonormal basis of the column space, rows x rank.
Mat range_basis(const Mat& m, double rtol = 0.0);

/// Orthonormal basis of the orthogonal complement of span(columns) inside
/// the ambient space C^rows(columns).
Mat orthonormal_complement(const Mat& columns, double rtol = 0.0);

// ---------------------------------------------------------------------------
// Vectorization and Kronecker calculus (column-major convention:
// vec(P X Q) = (Q^T (x) P) vec(X)).
// ---------------------------------------------------------------------------

Vec vec(const Mat& m);
Mat unvec(const Vec& v, int rows, int cols);
Mat kron(const Mat& a, const Mat& b);

/// Identity matrix shorthand.
Mat eye(int n);

// ---------------------------------------------------------------------------
// Hermitian calculus
// ---------------------------------------------------------------------------

/// exp(t * H) for Hermitian H, via its spectral decomposition.
Mat hermitian_exp(const Mat& h, double t);

/// Largest |eigenvalue| of a Hermitian matrix (0 for empty).
double hermitian_spectral_radius(const Mat& h);

/// max eigenvalue - min eigenvalue of a Hermitian matrix (0 for empty).
double hermitian_spread(const Mat& h);

// ---------------------------------------------------------------------------
// Fingerprints (gauge-invariant matrix invariants)
// ---------------------------------------------------------------------------

/// Monic characteristic polynomial coefficients [a_{n-1}, ..., a_0] of a
/// square matrix, from its eigenvalues.
std::vector<Cx> charpoly_coeffs(const Mat& m);

/// Gauge-invariant fingerprint of a plain datum: characteristic polynomials of
/// A, B, A*B, A+B and the moments tr(A^i B^j) for 1 <= i + j <= 4.
std::vector<Cx> gauge_fingerprint(const ADHMDatum& x);

/// Max relative deviation between two fingerprints: |u-v| / (1 + |u|).
double fingerprint_distance(const std::vector<Cx>& u, const std::vector<Cx>& v);

// ---------------------------------------------------------------------------
// Deterministic random sampling
// ---------------------------------------------------------------------------

/// Deterministic RNG wrapper.  Identical seeds yield identical streams on all
/// platforms: doubles are built from the top 53 bits of each 64-bit draw, and
/// complex gaussians use an explicit amplitude-phase transform, so no
/// library-specific distribution code is involved.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t bits();                       ///< raw 64-bit draw
  double unit();                              ///< uniform in [0, 1)
  double uniform(double a, double b);         ///< uniform in [a, b)
  Cx gaussian();                              ///< standard complex normal
  Cx unit_modulus();                          ///< uniform on the unit circle
  Cx annulus(double rmin, double rmax);       ///< |z| uniform in [rmin, rmax], phase uniform
  Mat gaussian_matrix(int rows, int cols);    ///< i.i.d. standard complex normal entries

  /// Deterministically derived child seed (advances this stream).
  std::uint64_t fork();

 private:
  std::mt19937_64 gen_;  // the engine's output sequence is fixed by the standard
};

/// Stable 64-bit mix of a base seed with a stream label, for deriving
/// independent per-sample seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t label);

/// Draws `n` complex values with pairwise distance >= min_sep (rejection
/// sampling over a centered square of half-width `box`).
std::vector<Cx> distinct_complex(Rng& rng, int n, double min_sep = 1e-3, double box = 1.0);

}  // namespace adhm
