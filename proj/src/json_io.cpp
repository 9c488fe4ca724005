#include "adhm/json_io.hpp"

#include <cmath>

namespace adhm {

namespace {

Json complex_to_json(const Cx& z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

[[noreturn]] void schema_error(const std::string& what) { throw JsonError(what, 0, 0); }

double number_at(const Json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where + " must be a number");
  return j.get<double>();
}

Cx complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    schema_error(where + " must be a [re, im] pair");
  }
  return {number_at(j[0], where + "[0]"), number_at(j[1], where + "[1]")};
}

Mat matrix_from_json(const Json& j, int rows, int cols, const std::string& name) {
  if (!j.is_array()) schema_error("matrix " + name + " must be an array of rows");
  if (static_cast<int>(j.size()) != rows) {
    schema_error("matrix " + name + " must have " + std::to_string(rows) + " rows");
  }
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      schema_error("matrix " + name + " row " + std::to_string(i) + " must have " +
                   std::to_string(cols) + " entries");
    }
    for (int k = 0; k < cols; ++k) {
      m(i, k) = complex_from_json(row[k], name + "[" + std::to_string(i) + "][" +
                                              std::to_string(k) + "]");
    }
  }
  return m;
}

int int_at(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where + " must be an integer");
  return j.get<int>();
}

// Serialized gap ratios may be infinite (an exact zero below the rank cut).
Json finite_or_tag(double v) {
  if (std::isinf(v)) return Json("infinity");
  return Json(v);
}

}  // namespace

Json datum_to_json(const EnhancedDatum& x) {
  x.validate_shapes();
  Json j;
  j["dims"] = {{"r", x.dims.r}, {"c", x.dims.c}, {"cprime", x.dims.cprime}};
  Json m;
  m["A"] = matrix_to_json(x.A);
  m["B"] = matrix_to_json(x.B);
  m["I"] = matrix_to_json(x.I);
  m["J"] = matrix_to_json(x.J);
  m["Aprime"] = matrix_to_json(x.Aprime);
  m["Bprime"] = matrix_to_json(x.Bprime);
  m["F"] = matrix_to_json(x.F);
  m["G"] = matrix_to_json(x.G);
  j["matrices"] = std::move(m);
  return j;
}

EnhancedDatum datum_from_json(const Json& j) {
  if (!j.is_object()) schema_error("datum must be a JSON object");
  if (!j.contains("dims") || !j["dims"].is_object()) schema_error("missing \"dims\" object");
  const Json& dj = j["dims"];
  for (const char* key : {"r", "c", "cprime"}) {
    if (!dj.contains(key)) schema_error(std::string("dims missing \"") + key + "\"");
  }
  Dims d{int_at(dj["r"], "dims.r"), int_at(dj["c"], "dims.c"),
         int_at(dj["cprime"], "dims.cprime")};
  try {
    d.validate();
  } catch (const DimensionError& e) {
    schema_error(e.what());
  }
  if (!j.contains("matrices") || !j["matrices"].is_object()) {
    schema_error("missing \"matrices\" object");
  }
  const Json& m = j["matrices"];

  EnhancedDatum x = EnhancedDatum::zeros(d);
  auto read = [&](const char* name, int rows, int cols, Mat& out, bool required) {
    if (!m.contains(name)) {
      if (required) schema_error(std::string("matrices missing \"") + name + "\"");
      return;  // optional blocks default to zero
    }
    out = matrix_from_json(m[name], rows, cols, name);
  };
  read("A", d.c, d.c, x.A, true);
  read("B", d.c, d.c, x.B, true);
  read("I", d.c, d.r, x.I, true);
  read("J", d.r, d.c, x.J, true);
  // The V'-side blocks are only mandatory when V' is nonzero; G always
  // defaults to zero.
  const bool vp = d.cprime > 0;
  read("Aprime", d.cprime, d.cprime, x.Aprime, vp);
  read("Bprime", d.cprime, d.cprime, x.Bprime, vp);
  read("F", d.c, d.cprime, x.F, vp);
  read("G", d.cprime, d.c, x.G, false);
  return x;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is the 1-based offset of the offending byte; recover line/column.
    std::size_t pos = e.byte > 0 ? static_cast<std::size_t>(e.byte - 1) : 0;
    if (pos > text.size()) pos = text.size();
    int line = 1;
    int col = 1;
    for (std::size_t k = 0; k < pos; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw JsonError(std::string("JSON parse error: ") + e.what(), line, col);
  }
}

EnhancedDatum datum_from_json_text(const std::string& text) {
  return datum_from_json(parse_json_text(text));
}

std::string to_json_text(const Json& j) { return j.dump(2) + "\n"; }

Json points_to_json(const PointConfiguration& z) {
  Json arr = Json::array();
  for (const SupportPoint& p : z.points) {
    Json e;
    e["x"] = complex_to_json(p.x);
    e["y"] = complex_to_json(p.y);
    e["mult"] = p.mult;
    arr.push_back(std::move(e));
  }
  Json j;
  j["points"] = std::move(arr);
  return j;
}

PointConfiguration points_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
    schema_error("point configuration must be {\"points\": [...]}");
  }
  PointConfiguration z;
  int idx = 0;
  for (const Json& e : j["points"]) {
    const std::string where = "points[" + std::to_string(idx++) + "]";
    if (!e.is_object() || !e.contains("x") || !e.contains("y")) {
      schema_error(where + " must be an object with \"x\" and \"y\"");
    }
    SupportPoint p;
    p.x = complex_from_json(e["x"], where + ".x");
    p.y = complex_from_json(e["y"], where + ".y");
    p.mult = e.contains("mult") ? int_at(e["mult"], where + ".mult") : 1;
    if (p.mult < 1) schema_error(where + ".mult must be >= 1");
    z.points.push_back(p);
  }
  try {
    z.validate();
  } catch (const DimensionError& e) {
    schema_error(e.what());
  }
  return z;
}

Json report_to_json(const StabilityReport& rep) {
  Json j;
  j["f_injective"] = rep.f_injective;
  j["f_smallest_singular"] = rep.f_smallest_singular;
  j["adhm_stable"] = rep.adhm_stable;
  j["closure_dim"] = rep.closure_dim;
  j["chamber_ok"] = rep.chamber_ok;
  j["verdict"] = to_string(rep.verdict);
  return j;
}

Json residuals_to_json(const ResidualReport& rep) {
  Json values;
  for (int k = 0; k < kResidualCount; ++k) values[kResidualNames[k]] = rep.values[k];
  Json j;
  j["values"] = std::move(values);
  j["max"] = rep.max_value;
  j["scale"] = rep.scale;
  j["tau"] = tolerances().residual_tau;
  return j;
}

Json cohomology_to_json(const CohomologyReport& rep) {
  Json j;
  j["h"] = rep.h;
  j["term_dims"] = rep.term_dims;
  j["ranks"] = rep.ranks;
  j["gap_ratios"] = Json::array();
  for (double g : rep.gap_ratios) j["gap_ratios"].push_back(finite_or_tag(g));
  j["ambiguous"] = rep.ambiguous;
  j["euler"] = rep.euler;
  j["rank_rtol"] = tolerances().rank_rtol;
  j["gap_min"] = tolerances().gap_min;
  return j;
}

}  // namespace adhm
