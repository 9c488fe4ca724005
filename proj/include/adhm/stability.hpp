#pragma once

#include "adhm/rational.hpp"
#include "adhm/types.hpp"

#include <optional>
#include <string>

namespace adhm {

// ---------------------------------------------------------------------------
// Invariant closure
// ---------------------------------------------------------------------------

struct ClosureResult {
  int dim = 0;
  Mat basis;  ///< orthonormal, c x dim
};

/// Smallest A,B-invariant subspace of C^c containing the column span of
/// `seed_columns`:  S <- S + A S + B S until the numerical rank stabilizes
/// (at most c rounds).  The dimension sequence is monotone non-decreasing.
ClosureResult invariant_closure(const Mat& A, const Mat& B, const Mat& seed_columns,
                                double rtol = 0.0);

// ---------------------------------------------------------------------------
// Stability parameters and chamber
// ---------------------------------------------------------------------------

/// Rational stability parameter Theta = (theta, theta', theta_inf).
struct StabilityParameter {
  Rational theta;
  Rational theta_prime;
  Rational theta_inf;
};

/// True iff Theta lies in the distinguished chamber: theta' > 0 and
/// theta + c' * theta' < 0.  Throws ParameterError unless the balance
/// relation c*theta + c'*theta' + r*theta_inf = 0 holds exactly.
bool chamber_check(const Dims& dims, const StabilityParameter& theta);

/// A canonical in-chamber parameter for the given dimensions:
/// theta' = 1, theta = -(c'+1), theta_inf = (c*(c'+1) - c') / r.
StabilityParameter canonical_chamber(const Dims& dims);

/// Character chi_Theta(h, h') = det(h)^(-theta) * det(h')^(-theta').
/// Both exponents must be integers; otherwise throws ParameterError.
Cx chi_character(const StabilityParameter& theta, const GaugeElement& g);

// ---------------------------------------------------------------------------
// Stability decision
// ---------------------------------------------------------------------------

enum class Verdict { stable, unstable, outside_chamber_unknown };
const char* to_string(Verdict v);

struct StabilityReport {
  bool f_injective = false;
  double f_smallest_singular = 0.0;
  bool adhm_stable = false;  ///< invariant closure of (A, B, im I) is all of V
  int closure_dim = 0;
  bool chamber_ok = false;
  Verdict verdict = Verdict::outside_chamber_unknown;
};

/// Decides stability via the two numeric conditions (F injective, closure
/// full).  Inside the distinguished chamber these are equivalent to
/// Theta-stability; outside it the verdict is outside_chamber_unknown.
/// The parameterless overload uses canonical_chamber(x.dims).
StabilityReport is_stable(const EnhancedDatum& x);
StabilityReport is_stable(const EnhancedDatum& x, const StabilityParameter& theta);

// ---------------------------------------------------------------------------
// Destabilizer search
// ---------------------------------------------------------------------------

/// Witness subrepresentation (W~, V~, V'~) with non-negative Theta-slope,
/// i.e. one violating the strict stability inequality.
struct SubrepCertificate {
  int rtilde = 0;  ///< 0 or r (W~ is 0 or all of W)
  int ctilde = 0;
  int cptilde = 0;
  Mat v_basis;       ///< orthonormal basis of V~ (c x ctilde)
  Mat vprime_basis;  ///< orthonormal basis of V'~ (c' x cptilde)
  Rational slope;    ///< rtilde*theta_inf + ctilde*theta + cptilde*theta'
};

struct DestabilizerResult {
  std::optional<SubrepCertificate> certificate;
  bool inconclusive = false;  ///< true only outside the chamber with no witness
  int candidates_examined = 0;
};

/// Searches for a destabilizing subrepresentation.  Inside the chamber the
/// search is complete: it returns a certificate exactly when the datum is
/// unstable (kernel of F, or the invariant closure with its F-preimage).
/// Outside the chamber it probes eigenvector-generated subspaces up to
/// `budget` candidates and may return inconclusive.
DestabilizerResult destabilizer_search(const EnhancedDatum& x,
                                       const StabilityParameter& theta,
                                       int budget = 64);

}  // namespace adhm
