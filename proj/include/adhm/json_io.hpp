#pragma once

#include "adhm/deformation.hpp"
#include "adhm/datum.hpp"
#include "adhm/geometry.hpp"
#include "adhm/stability.hpp"
#include "adhm/types.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace adhm {

using Json = nlohmann::ordered_json;

/// Malformed JSON text; carries 1-based line/column of the first offending
/// byte when available (0 when not applicable, e.g. schema violations).
struct JsonError : std::runtime_error {
  int line = 0;
  int column = 0;
  JsonError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg), line(line_), column(column_) {}
};

// --- datum <-> JSON --------------------------------------------------------
//
// {
//   "dims": {"r": 1, "c": 2, "cprime": 1},
//   "matrices": {
//     "A": [[[re, im], ...row...], ...],   // row-major, entries [re, im]
//     "B": ..., "I": ..., "J": ..., "Aprime": ..., "Bprime": ..., "F": ..., "G": ...
//   }
// }
//
// A missing "G" is read as zero; when cprime = 0 the V'-side matrices may be
// omitted entirely.  Unknown keys are ignored.  Serialization always writes
// every matrix explicitly.

Json datum_to_json(const EnhancedDatum& x);
EnhancedDatum datum_from_json(const Json& j);

/// Parses text (tracking line/column on failure) and decodes a datum.
EnhancedDatum datum_from_json_text(const std::string& text);

/// Two-space-indented serialization with a trailing newline; numbers are
/// emitted by the shortest round-trip rule, so equal data give equal bytes.
std::string to_json_text(const Json& j);

/// Parses arbitrary JSON text, throwing JsonError with position on failure.
Json parse_json_text(const std::string& text);

// --- point configurations ---------------------------------------------------
//
// {"points": [{"x": [re, im], "y": [re, im], "mult": 1}, ...]}

Json points_to_json(const PointConfiguration& z);
PointConfiguration points_from_json(const Json& j);

// --- reports -----------------------------------------------------------------

Json report_to_json(const StabilityReport& rep);
Json residuals_to_json(const ResidualReport& rep);
Json cohomology_to_json(const CohomologyReport& rep);

}  // namespace adhm
