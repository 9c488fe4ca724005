#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adhm {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Shape or dimension-vector violation (negative dims, mismatched blocks, ...).
struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad scalar parameter (zero denominator, non-integer exponent, bad flag value, ...).
struct ParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input data violate a documented precondition (invalid datum, F not injective, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerical rank decision had no usable singular-value gap.
struct RankAmbiguityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The fiber-lift solver could not produce an admissible kernel element.
struct LiftError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The balancing flow failed to make progress.
struct FlowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Global tolerances
// ---------------------------------------------------------------------------

/// Shared numeric tolerances.  All are strictly positive; `residual_tau` scales
/// with 1+|X|_F^2 when deciding datum validity.
struct Tolerances {
  double residual_tau = 1e-10;  ///< validity: each residual <= tau*(1+|X|_F^2)
  double rank_rtol = 1e-9;      ///< SVD cutoff: sigma <= rtol*sigma_max*max(m,n)
  double gap_min = 1e3;         ///< required sigma ratio across a rank cut
  double flow_tol = 1e-8;       ///< balance target: |mu1| <= flow_tol*(1+|X|_F^2)
  double welldef_tol = 1e-8;    ///< pre-symplectic well-definedness threshold
};

/// Mutable process-wide tolerance set.  Read-mostly; CLI flags may override it
/// once at startup before any computation.
Tolerances& tolerances();

// ---------------------------------------------------------------------------
// Dimension vectors and data
// ---------------------------------------------------------------------------

/// Dimension vector (r, c, c') of the three underlying spaces (W, V, V').
struct Dims {
  int r = 0;
  int c = 0;
  int cprime = 0;

  bool operator==(const Dims&) const = default;

  /// Throws DimensionError unless r >= 1, c >= 0, cprime >= 0.
  void validate() const;

  std::string str() const;
};

/// Plain ADHM datum (A, B, I, J) on (W, V) with dim W = r, dim V = c.
struct ADHMDatum {
  int r = 0;
  int c = 0;
  Mat A;  ///< c x c
  Mat B;  ///< c x c
  Mat I;  ///< c x r
  Mat J;  ///< r x c

  static ADHMDatum zeros(int r, int c);
  void validate_shapes() const;
  double frobenius_sq() const;
};

/// Enhanced ADHM datum (A, B, I, J, A', B', F, G) on (W, V, V').
struct EnhancedDatum {
  Dims dims;
  Mat A;       ///< c  x c
  Mat B;       ///< c  x c
  Mat I;       ///< c  x r
  Mat J;       ///< r  x c
  Mat Aprime;  ///< c' x c'
  Mat Bprime;  ///< c' x c'
  Mat F;       ///< c  x c'
  Mat G;       ///< c' x c

  static EnhancedDatum zeros(const Dims& d);
  void validate_shapes() const;
  double frobenius_sq() const;

  /// The underlying plain datum (A, B, I, J); independent of the V' block.
  ADHMDatum plain_part() const;

  /// Embed a plain datum as an enhanced one with c' = 0.
  static EnhancedDatum embed(const ADHMDatum& x);
};

/// Complex gauge element (h, h') in GL(V) x GL(V').
struct GaugeElement {
  Mat h;       ///< c  x c, invertible
  Mat hprime;  ///< c' x c', invertible

  static GaugeElement identity(const Dims& d);
};

// ---------------------------------------------------------------------------
// Point configurations (supports of 0-dimensional quotients)
// ---------------------------------------------------------------------------

/// One affine plane point with algebraic multiplicity.
struct SupportPoint {
  Cx x;
  Cx y;
  int mult = 1;
};

/// Finite multiset of distinct plane points.
struct PointConfiguration {
  std::vector<SupportPoint> points;

  /// Sum of multiplicities.
  int length() const;

  /// Sorted copy: lexicographic by (Re x, Im x, Re y, Im y).
  PointConfiguration sorted() const;

  /// Throws DimensionError on repeated (x, y) pairs or non-positive mult.
  void validate() const;
};

}  // namespace adhm
