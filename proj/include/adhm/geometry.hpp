#pragma once

#include "adhm/deformation.hpp"
#include "adhm/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace adhm {

// ---------------------------------------------------------------------------
// Ambient space with G kept free
// ---------------------------------------------------------------------------

/// Norms of the two ambient complex-equation residuals
/// ( [A,B] + IJ + FG , [A',B'] - GF ).
std::pair<double, double> ambient_residuals(const EnhancedDatum& x);

/// dim ker dPhi - dim(gauge orbit directions), where dPhi is the ambient
/// linearization of the two complex equations at x and the gauge directions
/// are the image of the ambient infinitesimal action.  For stable data this
/// equals 2c(r + c') independently of the point.
int ambient_tangent_dim(const EnhancedDatum& x);

// ---------------------------------------------------------------------------
// Moment maps
// ---------------------------------------------------------------------------

/// Real and complex moment-map values, with constant prefactors dropped.
/// muV and muVprime are Hermitian by construction.
struct MomentValue {
  Mat muV;         ///< [A,A*]+[B,B*]+II*-J*J+FF*-G*G           (c  x c)
  Mat muVprime;    ///< [A',A'*]+[B',B'*]-F*F+GG*               (c' x c')
  Mat muC_V;       ///< -([A,B]+IJ+FG)                          (c  x c)
  Mat muC_Vprime;  ///< -([A',B']-GF)                           (c' x c')

  double real_norm_sq() const;     ///< |muV|_F^2 + |muVprime|_F^2
  double complex_norm_sq() const;  ///< |muC_V|_F^2 + |muC_Vprime|_F^2
};

MomentValue moment_map(const EnhancedDatum& x);

// ---------------------------------------------------------------------------
// Balancing flow
// ---------------------------------------------------------------------------

/// Step control for the balancing flow
///   X <- act((exp(-eps muV), exp(-eps muVprime)), X).
/// The default policy starts from eps = 1 / (1 + sigma_max^2) and halves on
/// non-decrease of |mu1|^2 (never growing the step).  With `allow_growth` the
/// accepted step may also be enlarged by `growth` after each success, capped
/// so that eps * spread(mu) <= log(cond_cap); this preserves per-step
/// conditioning while allowing geometric convergence on orbits whose balance
/// energy has no interior minimum.
struct FlowControl {
  int max_iters = 100000;
  double tol = 0.0;          ///< target multiplier; <= 0 means tolerances().flow_tol
  bool allow_growth = false;
  double growth = 2.0;
  double cond_cap = 1e3;
  double eps_min = 1e-18;    ///< below this step size the flow reports failure
};

struct FlowResult {
  EnhancedDatum datum;
  int iterations = 0;
  double final_norm = 0.0;  ///< sqrt(real_norm_sq) at the final point
  double target = 0.0;      ///< tol * (1 + |X_final|_F^2)
  bool converged = false;
};

/// Runs the balancing flow until |mu1| <= tol * (1 + |X|_F^2) (evaluated at
/// the current point) or the iteration budget is exhausted.  Gauge-orbit
/// invariants (spectra of A and B, all residuals' vanishing) are preserved.
FlowResult balance_flow(const EnhancedDatum& x, const FlowControl& control = {});

// ---------------------------------------------------------------------------
// Pre-symplectic pairing
// ---------------------------------------------------------------------------

/// Omega(x1, x2) = tr(-a2 b1 + b2 a1 - i2 j1 + i1 j2 - a2' b1' + b2' a1').
/// Bilinear and antisymmetric; blind to the f components.
Cx omega_pair(const TangentBlocks& u, const TangentBlocks& v);

struct OmegaReport {
  int h1_dim = 0;
  Mat matrix;              ///< Omega on the chosen h1 representatives
  int rank = 0;
  double gap_ratio = 0.0;
  bool rank_ambiguous = false;
  double welldef_residual = 0.0;  ///< max |Omega(d0(h,h'), v)| over sampled pairs
  bool welldef_ok = false;        ///< residual <= welldef_tol * (1 + |X|_F^2)
};

/// Restriction of the pairing to harmonic first-cohomology representatives at
/// a stable datum with c' = 1, with a sampled check that the value only
/// depends on classes modulo gauge directions.
OmegaReport omega_on_h1(const EnhancedDatum& x, std::uint64_t seed = 0,
                        int welldef_pairs = 100);

// ---------------------------------------------------------------------------
// Degeneracy scan over strata
// ---------------------------------------------------------------------------

enum class Stratum {
  diagonal,      ///< A, B simultaneously diagonalizable
  jordan,        ///< both A and B non-semisimple on a shared invariant flag
  jordan_mixed,  ///< A semisimple (scalar on the flag), B with a Jordan block
};

Stratum parse_stratum(const std::string& name);  ///< throws ParameterError
const char* to_string(Stratum s);

/// Deterministic stable sample lying on the requested stratum.  Currently the
/// non-diagonal strata are realized at dims (1,2,1) (DimensionError otherwise).
EnhancedDatum sample_stratum(const Dims& dims, Stratum s, std::uint64_t seed);

struct ScanRow {
  int index = 0;
  std::uint64_t seed = 0;
  int h1_dim = 0;
  int rank = 0;
  double gap_ratio = 0.0;
  double welldef_residual = 0.0;
};

struct ScanTable {
  Dims dims;
  Stratum stratum = Stratum::diagonal;
  std::vector<ScanRow> rows;
  std::map<int, int> rank_histogram;
};

ScanTable degeneracy_scan(const Dims& dims, int samples, Stratum s, std::uint64_t seed);

/// CSV rendering: header "index,seed,h1,rank,gap_ratio,welldef_residual".
std::string scan_to_csv(const ScanTable& t);

}  // namespace adhm
