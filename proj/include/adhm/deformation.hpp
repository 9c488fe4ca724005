#pragma once

#include "adhm/types.hpp"

#include <array>
#include <string>

namespace adhm {

// ---------------------------------------------------------------------------
// The four-term deformation complex  C^0 -> C^1 -> C^2 -> C^3
// ---------------------------------------------------------------------------
//
// C^0 = End(V) + End(V')
// C^1 = End(V)^2 + Hom(W,V) + Hom(V,W) + End(V')^2 + Hom(V',V)
// C^2 = End(V)  + Hom(V',V)^2 + Hom(V',W) + [End(V') in the general variant]
// C^3 = Hom(V',V)
//
// d0(h,h')            = ([h,A], [h,B], hI, -Jh, [h',A'], [h',B'], hF - Fh')
// d1(a,b,i,j,a',b',f) = ([a,B]+[A,b]+Ij+iJ,
//                        Af + aF - Fa' - fA',
//                        Bf + bF - Fb' - fB',
//                        jF + Jf,
//                        [a',B'] + [A',b'])          (last row general only)
// d2(c1,c2,c3,c4,c5)  = c1 F + B c2 - c2 B' + c3 A' - A c3 - I c4 - F c5
//                                                    (c5 term general only)
//
// The reduced variant applies to c' = 1 and drops the End(V') summand of C^2
// together with the matching row of d1 and column of d2.  d1 d0 = 0 and
// d2 d1 = 0 hold identically on data satisfying the defining equations with
// G = 0.

enum class ComplexVariant { general, reduced };

ComplexVariant parse_variant(const std::string& name);  ///< throws ParameterError
const char* to_string(ComplexVariant v);

struct DeformationComplex {
  ComplexVariant variant = ComplexVariant::general;
  Dims dims;
  std::array<int, 4> term_dims{};  ///< dim C^0..C^3
  Mat D0;  ///< term_dims[1] x term_dims[0]
  Mat D1;  ///< term_dims[2] x term_dims[1]
  Mat D2;  ///< term_dims[3] x term_dims[2]
};

/// Assembles the vectorized differentials.  The reduced variant requires
/// c' = 1 (DimensionError otherwise).  Composites D1*D0 and D2*D1 vanish up
/// to the defining-equation residuals of x.
DeformationComplex build_complex(const EnhancedDatum& x, ComplexVariant variant);

// ---------------------------------------------------------------------------
// Cohomology dimensions
// ---------------------------------------------------------------------------

struct CohomologyReport {
  std::array<int, 4> h{};          ///< h^0..h^3 by rank counting
  std::array<int, 4> term_dims{};
  std::array<int, 3> ranks{};      ///< numerical ranks of D0, D1, D2
  std::array<double, 3> gap_ratios{};
  bool ambiguous = false;          ///< some rank cut had gap < tolerances().gap_min
  long long euler = 0;             ///< -h0 + h1 - h2 + h3 = -C0 + C1 - C2 + C3
};

/// h^k via SVD ranks: h^0 = dim C^0 - rk D0, h^1 = dim ker D1 - rk D0,
/// h^2 = dim ker D2 - rk D1, h^3 = dim C^3 - rk D2.  A thin singular-value
/// gap sets `ambiguous` instead of throwing.
CohomologyReport cohomology_dims(const DeformationComplex& k);

// ---------------------------------------------------------------------------
// Tangent vectors and bases
// ---------------------------------------------------------------------------

/// A C^1 element in matrix form.
struct TangentBlocks {
  Mat a, b;        ///< c  x c
  Mat i;           ///< c  x r
  Mat j;           ///< r  x c
  Mat aprime, bprime;  ///< c' x c'
  Mat f;           ///< c  x c'
};

/// Block offsets of C^1 coordinates: (a, b, i, j, a', b', f), column-major
/// within each block.
TangentBlocks unpack_tangent(const Dims& dims, const Vec& v);
Vec pack_tangent(const TangentBlocks& t);

struct TangentBasis {
  Mat kernel;            ///< orthonormal basis of ker D1   (dim C^1 x k)
  Mat gauge_image;       ///< orthonormal basis of im D0    (dim C^1 x rk D0)
  Mat gauge_generators;  ///< (h,h') columns with D0 * gauge_generators = gauge_image
  Mat h1;                ///< orthonormal basis of ker D1 ∩ (im D0)^perp
  bool ambiguous = false;
};

/// Reduced-variant tangent decomposition at a stable datum with c' = 1.
/// Throws ValidationError if the datum is not stable, DimensionError if
/// c' != 1.
TangentBasis tangent_basis(const EnhancedDatum& x);

/// dim ker d0 = dimension of the infinitesimal stabilizer of x.  Zero exactly
/// when the gauge action is locally free at x.
int stabilizer_dim(const EnhancedDatum& x);

}  // namespace adhm
