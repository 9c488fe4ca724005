#pragma once

#include "adhm/types.hpp"

#include <cstdint>
#include <utility>

namespace adhm {

// ---------------------------------------------------------------------------
// Quotient representation
// ---------------------------------------------------------------------------

/// Quotient datum induced on V'' = V / im F, realized on the orthogonal
/// complement Q of im F:  A'' = Q* A Q, B'' = Q* B Q, I'' = Q* I, J'' = J Q.
/// Requires x valid and stable (ValidationError otherwise); the result is a
/// stable plain datum of type (r, c - c').
ADHMDatum quotient_rep(const EnhancedDatum& x);

// ---------------------------------------------------------------------------
// Fiber lift
// ---------------------------------------------------------------------------

/// Coefficient matrix L of the off-diagonal matching equation
///   A' Bt + At B'' - B' At - Bt A'' + It J'' = 0
/// in the unknowns (At, Bt, It), vectorized in that block order.
/// Shapes: L is (c' c'') x (2 c' c'' + c' r).
Mat lift_operator(const ADHMDatum& x2, const Mat& Aprime, const Mat& Bprime);

/// Lifts a stable plain datum x2 = (A'', B'', I'', J'') of type (r, c'')
/// through the frame (A', B') on V' (dim c'), producing a stable enhanced
/// datum of type (r, c'' + c', c') with
///   A = [[A', At], [0, A'']],  B analogous,  I = [It; I''],  J = [0  J''],
///   F = [Id; 0],  G = 0.
/// The off-diagonal blocks are sampled from ker L (seeded); candidates are
/// rejected until the assembled datum is valid and stable, with a structured
/// fallback before giving up.  Throws LiftError when ker L contains no
/// admissible element.
EnhancedDatum fiber_lift(const ADHMDatum& x2, const Mat& Aprime, const Mat& Bprime,
                         std::uint64_t seed);

/// Deterministic frame on V': diagonal A', B' with separated eigenvalues and
/// the rank-one It = 1 * w^T pattern used by the structured fallback.
struct Frame {
  Mat Aprime;  ///< c' x c' diagonal
  Mat Bprime;  ///< c' x c' diagonal
  Mat It;      ///< c' x r, rank one, all entries nonzero
};
Frame vandermonde_frame(int cprime, int r, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Monad pencil of a plain datum
// ---------------------------------------------------------------------------

/// The two-step pencil over the projective plane with coordinates (x, y, z):
///   alpha(x,y,z) = [ zA + x Id ; zB + y Id ; zJ ]      ((2c + r) x c)
///   beta (x,y,z) = [ -zB - y Id , zA + x Id , zI ]     (c x (2c + r))
/// beta * alpha = z^2 ([A,B] + IJ), so the composite vanishes on valid data.
struct MonadPencil {
  int r = 0;
  int c = 0;
  Mat A, B, I, J;
};

MonadPencil monad_pencil(const ADHMDatum& x);

Mat monad_alpha(const MonadPencil& m, Cx x, Cx y, Cx z);
Mat monad_beta(const MonadPencil& m, Cx x, Cx y, Cx z);

struct MonadRanks {
  int rank_alpha = 0;
  int rank_beta = 0;
  int fiber_dim = 0;  ///< dim ker beta - rank alpha
};

MonadRanks monad_ranks(const MonadPencil& m, Cx x, Cx y, Cx z);

// ---------------------------------------------------------------------------
// Support of the quotient sheaf
// ---------------------------------------------------------------------------

/// Joint spectrum of (-A', -B') as a plane point configuration: the support
/// of the 0-dimensional quotient carried by the V' block.  Uses a Schur
/// triangularization of A' and requires B' to be simultaneously
/// triangularized by it (retrying with the roles swapped); throws
/// ValidationError when the pair is too far from commuting.  Points equal
/// within `group_tol` are merged with added multiplicities; output is sorted
/// lexicographically by (Re x, Im x, Re y, Im y).
PointConfiguration quotient_support(const EnhancedDatum& x, double group_tol = 1e-6);

/// Joint spectrum of an explicitly commuting pair (M, N) (same contract as
/// quotient_support but for raw matrices, without negation).
PointConfiguration joint_spectrum(const Mat& M, const Mat& N, double group_tol = 1e-6);

// ---------------------------------------------------------------------------
// Nested configurations (r = 1)
// ---------------------------------------------------------------------------

/// Enhanced datum representing a nested pair Z1 ⊆ Z2 of reduced point
/// configurations (all multiplicities 1, points distinct; containment is
/// matched within 1e-12).  Type (1, |Z2|, |Z2| - |Z1|); the V' block carries
/// the points of Z2 \ Z1, listed before the Z1 points in the chosen basis.
/// Z1 = Z2 yields c' = 0.  Throws ValidationError on multiplicity > 1 or a
/// containment failure.
EnhancedDatum nested_hilbert_datum(const PointConfiguration& z1,
                                   const PointConfiguration& z2);

/// Inverse direction: recovers (Z1, Z2) from a valid stable datum with r = 1
/// via joint spectra of (A, B) and of the quotient representation.
std::pair<PointConfiguration, PointConfiguration> nested_hilbert_points(
    const EnhancedDatum& x);

}  // namespace adhm
