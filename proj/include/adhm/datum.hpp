#pragma once

#include "adhm/types.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace adhm {

// ---------------------------------------------------------------------------
// Residuals of the defining equations
// ---------------------------------------------------------------------------

inline constexpr int kResidualCount = 9;

/// Frobenius-norm residuals of the nine defining equations, in this fixed
/// report order.  Names match the expressions whose norm is taken.
extern const std::array<const char*, kResidualCount> kResidualNames;
// { "[A,B]+IJ", "[A',B']", "AF-FA'", "BF-FB'", "JF", "GI", "FG", "GA-A'G", "GB-B'G" }

struct ResidualReport {
  std::array<double, kResidualCount> values{};
  double max_value = 0.0;
  double scale = 1.0;  ///< 1 + |X|_F^2; validity compares against tau * scale
};

ResidualReport residuals(const EnhancedDatum& x);

/// True when every residual is <= tau * (1 + |X|_F^2).
/// `tau <= 0` uses tolerances().residual_tau.
bool is_valid(const EnhancedDatum& x, double tau = 0.0);

// ---------------------------------------------------------------------------
// Gauge action
// ---------------------------------------------------------------------------

/// (h, h') . (A,B,I,J,A',B',F,G) =
///   (hAh^-1, hBh^-1, hI, Jh^-1, h'A'h'^-1, h'B'h'^-1, hFh'^-1, h'Gh^-1).
EnhancedDatum act(const GaugeElement& g, const EnhancedDatum& x);

/// Composition so that act(compose(g2, g1), x) == act(g2, act(g1, x)).
GaugeElement compose(const GaugeElement& g2, const GaugeElement& g1);

// ---------------------------------------------------------------------------
// Seeded generation of stable data
// ---------------------------------------------------------------------------

enum class GenStyle {
  diagonal,  ///< A, B diagonal with separated eigenvalues; F a coordinate inclusion
  jordan,    ///< non-diagonalizable (1,2,1) family with a shared 2x2 Jordan block
  lifted,    ///< fiber-lift of a random stable quotient datum through a random frame
};

GenStyle parse_style(const std::string& name);  ///< throws ParameterError
const char* to_string(GenStyle s);

/// Deterministic stable sample of the given dimension vector.  Identical
/// (dims, seed, style) always produce bit-identical output.  Throws
/// DimensionError when the style cannot realize the dimensions
/// (diagonal needs c' <= c; jordan needs (1,2,1); lifted needs c' >= 1 and
/// c - c' >= 1).
EnhancedDatum generate_stable(const Dims& dims, std::uint64_t seed, GenStyle style);

}  // namespace adhm
