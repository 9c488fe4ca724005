// adhmlab: command-line workbench for framed enhanced ADHM data.
//
// Exit codes: 0 success, 1 domain failure (invalid/unstable input, failed
// lift or flow), 2 usage or parameter error, 3 malformed JSON input (the
// message carries line and column), 4 ambiguous numerical rank.

#include "adhm/acceptance.hpp"
#include "adhm/datum.hpp"
#include "adhm/deformation.hpp"
#include "adhm/geometry.hpp"
#include "adhm/json_io.hpp"
#include "adhm/moduli_maps.hpp"
#include "adhm/numeric.hpp"
#include "adhm/stability.hpp"
#include "adhm/types.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using adhm::Json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw adhm::ParameterError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw adhm::ParameterError("cannot open output file: " + path);
  out << bytes;
}

adhm::EnhancedDatum load_datum(const std::string& path) {
  return adhm::datum_from_json_text(read_input(path));
}

adhm::Mat matrix_from_json(const Json& j, const std::string& name) {
  if (!j.is_array()) throw adhm::ParameterError(name + " must be an array of rows");
  const int rows = static_cast<int>(j.size());
  int cols = -1;
  for (const Json& row : j) {
    if (!row.is_array()) throw adhm::ParameterError(name + " rows must be arrays");
    if (cols < 0) cols = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != cols) {
      throw adhm::ParameterError(name + " rows must have equal length");
    }
  }
  if (cols < 0) cols = 0;
  adhm::Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < cols; ++k) {
      const Json& cell = j[i][k];
      if (!cell.is_array() || cell.size() != 2) {
        throw adhm::ParameterError(name + " entries must be [re, im] pairs");
      }
      m(i, k) = adhm::Cx(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

adhm::Dims parse_dims(const std::string& text) {
  adhm::Dims d;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> d.r >> c1 >> d.c >> c2 >> d.cprime) || c1 != ',' || c2 != ',' ||
      !is.eof()) {
    throw adhm::ParameterError("dims must be of the form r,c,cprime (got \"" + text + "\")");
  }
  d.validate();
  return d;
}

std::uint64_t env_seed() {
  const char* raw = std::getenv("ADHM_LAB_SEED");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == nullptr || *end != '\0') {
    throw adhm::ParameterError("ADHM_LAB_SEED must be a decimal unsigned integer");
  }
  return v;
}

Json datum_with_seed(std::uint64_t seed, const adhm::EnhancedDatum& x) {
  Json out;
  out["seed"] = seed;
  Json d = adhm::datum_to_json(x);
  out["dims"] = d["dims"];
  out["matrices"] = d["matrices"];
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for framed enhanced ADHM data"};
  app.require_subcommand(1);

  std::uint64_t default_seed = 0;
  try {
    default_seed = env_seed();
  } catch (const adhm::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate a seeded stable datum");
  std::string gen_dims = "1,2,1";
  std::string gen_style = "diagonal";
  std::uint64_t gen_seed = default_seed;
  std::string gen_out;
  gen->add_option("--dims", gen_dims, "dimension vector r,c,cprime");
  gen->add_option("--style", gen_style, "diagonal|jordan|lifted");
  gen->add_option("--seed", gen_seed, "sampling seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // --- verify ---
  auto* verify = app.add_subcommand("verify", "residuals and stability report");
  std::string verify_in;
  verify->add_option("--in", verify_in, "datum JSON file or -")->required();

  // --- cohomology ---
  auto* coho = app.add_subcommand("cohomology", "deformation-complex cohomology dimensions");
  std::string coho_in, coho_variant = "reduced";
  coho->add_option("--in", coho_in, "datum JSON file or -")->required();
  coho->add_option("--variant", coho_variant, "reduced|general");

  // --- quotient ---
  auto* quot = app.add_subcommand("quotient", "induced datum on V / im F");
  std::string quot_in, quot_out;
  quot->add_option("--in", quot_in, "datum JSON file or -")->required();
  quot->add_option("--out", quot_out, "output file (default stdout)");

  // --- lift ---
  auto* lift = app.add_subcommand("lift", "fiber-lift a plain datum through a frame");
  std::string lift_in, lift_frame, lift_out;
  int lift_cprime = 1;
  std::uint64_t lift_seed = default_seed;
  lift->add_option("--in", lift_in, "plain datum JSON (cprime = 0) or -")->required();
  lift->add_option("--cprime", lift_cprime, "frame size for the sampled frame");
  lift->add_option("--frame", lift_frame, "JSON file with explicit Aprime/Bprime");
  lift->add_option("--seed", lift_seed, "sampling seed");
  lift->add_option("--out", lift_out, "output file (default stdout)");

  // --- support ---
  auto* support = app.add_subcommand("support", "support of the quotient sheaf");
  std::string support_in;
  support->add_option("--in", support_in, "datum JSON file or -")->required();

  // --- hilb ---
  auto* hilb = app.add_subcommand("hilb", "nested point configurations <-> datum");
  std::string hilb_in, hilb_z1, hilb_z2, hilb_out;
  hilb->add_option("--in", hilb_in, "datum JSON (inverse direction)");
  hilb->add_option("--z1", hilb_z1, "lower configuration JSON (forward direction)");
  hilb->add_option("--z2", hilb_z2, "upper configuration JSON (forward direction)");
  hilb->add_option("--out", hilb_out, "output file (default stdout)");

  // --- flow ---
  auto* flow = app.add_subcommand("flow", "run the balancing flow");
  std::string flow_in, flow_out;
  double flow_tol = 0.0;
  int flow_iters = 100000;
  bool flow_growth = false;
  flow->add_option("--in", flow_in, "datum JSON file or -")->required();
  flow->add_option("--tol", flow_tol, "target multiplier (default 1e-8)");
  flow->add_option("--max-iters", flow_iters, "iteration budget");
  flow->add_flag("--growth", flow_growth, "allow conditioned step growth");
  flow->add_option("--out", flow_out, "output file (default stdout)");

  // --- omega ---
  auto* omega = app.add_subcommand("omega", "pre-symplectic pairing on first cohomology");
  std::string omega_in;
  std::uint64_t omega_seed = default_seed;
  int omega_pairs = 100;
  omega->add_option("--in", omega_in, "datum JSON file or -")->required();
  omega->add_option("--seed", omega_seed, "sampling seed for the well-definedness check");
  omega->add_option("--pairs", omega_pairs, "sampled pair count");

  // --- scan ---
  auto* scan = app.add_subcommand("scan", "degeneracy scan over a stratum");
  std::string scan_dims = "1,2,1", scan_stratum = "diagonal", scan_csv;
  int scan_samples = 20;
  std::uint64_t scan_seed = default_seed;
  scan->add_option("--dims", scan_dims, "dimension vector r,c,cprime");
  scan->add_option("--samples", scan_samples, "number of samples");
  scan->add_option("--stratum", scan_stratum, "diagonal|jordan|jordan_mixed");
  scan->add_option("--csv", scan_csv, "write the CSV table to this file");
  scan->add_option("--seed", scan_seed, "sampling seed");

  // --- accept ---
  auto* accept = app.add_subcommand("accept", "run the acceptance suite");
  std::uint64_t accept_seed = default_seed;
  accept->add_option("--seed", accept_seed, "suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) {
      const adhm::EnhancedDatum x =
          adhm::generate_stable(parse_dims(gen_dims), gen_seed, adhm::parse_style(gen_style));
      write_output(gen_out, adhm::to_json_text(datum_with_seed(gen_seed, x)));
      return 0;
    }

    if (verify->parsed()) {
      const adhm::EnhancedDatum x = load_datum(verify_in);
      const adhm::StabilityReport rep = adhm::is_stable(x);
      Json out;
      out["report"] = adhm::report_to_json(rep);
      out["residuals"] = adhm::residuals_to_json(adhm::residuals(x));
      out["valid"] = adhm::is_valid(x);
      write_output("", adhm::to_json_text(out));
      return 0;
    }

    if (coho->parsed()) {
      const adhm::EnhancedDatum x = load_datum(coho_in);
      const adhm::ComplexVariant variant = adhm::parse_variant(coho_variant);
      const adhm::CohomologyReport rep =
          adhm::cohomology_dims(adhm::build_complex(x, variant));
      Json out = adhm::cohomology_to_json(rep);
      out["variant"] = adhm::to_string(variant);
      write_output("", adhm::to_json_text(out));
      return rep.ambiguous ? 4 : 0;
    }

    if (quot->parsed()) {
      const adhm::EnhancedDatum x = load_datum(quot_in);
      const adhm::ADHMDatum q = adhm::quotient_rep(x);
      write_output(quot_out, adhm::to_json_text(adhm::datum_to_json(adhm::EnhancedDatum::embed(q))));
      return 0;
    }

    if (lift->parsed()) {
      const adhm::EnhancedDatum base = load_datum(lift_in);
      if (base.dims.cprime != 0) {
        throw adhm::ParameterError("lift input must be a plain datum (cprime = 0)");
      }
      adhm::Mat Ap, Bp;
      if (!lift_frame.empty()) {
        const Json fj = adhm::parse_json_text(read_input(lift_frame));
        if (!fj.is_object() || !fj.contains("Aprime") || !fj.contains("Bprime")) {
          throw adhm::ParameterError("frame file must carry \"Aprime\" and \"Bprime\"");
        }
        Ap = matrix_from_json(fj["Aprime"], "Aprime");
        Bp = matrix_from_json(fj["Bprime"], "Bprime");
        if (Ap.rows() != Ap.cols() || Bp.rows() != Bp.cols() || Ap.rows() != Bp.rows()) {
          throw adhm::ParameterError("frame matrices must be square with matching size");
        }
      } else {
        const adhm::Frame frame =
            adhm::vandermonde_frame(lift_cprime, base.dims.r, adhm::mix_seed(lift_seed, 0xF));
        Ap = frame.Aprime;
        Bp = frame.Bprime;
      }
      const adhm::EnhancedDatum lifted =
          adhm::fiber_lift(base.plain_part(), Ap, Bp, lift_seed);
      write_output(lift_out, adhm::to_json_text(datum_with_seed(lift_seed, lifted)));
      return 0;
    }

    if (support->parsed()) {
      const adhm::EnhancedDatum x = load_datum(support_in);
      write_output("", adhm::to_json_text(adhm::points_to_json(adhm::quotient_support(x))));
      return 0;
    }

    if (hilb->parsed()) {
      const bool inverse = !hilb_in.empty();
      const bool forward = !hilb_z1.empty() || !hilb_z2.empty();
      if (inverse == forward) {
        throw adhm::ParameterError("hilb needs either --in, or both --z1 and --z2");
      }
      if (inverse) {
        const adhm::EnhancedDatum x = load_datum(hilb_in);
        const auto [z1, z2] = adhm::nested_hilbert_points(x);
        Json out;
        out["Z1"] = adhm::points_to_json(z1);
        out["Z2"] = adhm::points_to_json(z2);
        write_output(hilb_out, adhm::to_json_text(out));
      } else {
        if (hilb_z1.empty() || hilb_z2.empty()) {
          throw adhm::ParameterError("forward direction needs both --z1 and --z2");
        }
        const adhm::PointConfiguration z1 =
            adhm::points_from_json(adhm::parse_json_text(read_input(hilb_z1)));
        const adhm::PointConfiguration z2 =
            adhm::points_from_json(adhm::parse_json_text(read_input(hilb_z2)));
        const adhm::EnhancedDatum x = adhm::nested_hilbert_datum(z1, z2);
        write_output(hilb_out, adhm::to_json_text(adhm::datum_to_json(x)));
      }
      return 0;
    }

    if (flow->parsed()) {
      const adhm::EnhancedDatum x = load_datum(flow_in);
      adhm::FlowControl control;
      control.tol = flow_tol;
      control.max_iters = flow_iters;
      control.allow_growth = flow_growth;
      const adhm::FlowResult res = adhm::balance_flow(x, control);
      Json out;
      out["converged"] = res.converged;
      out["iterations"] = res.iterations;
      out["final_norm"] = res.final_norm;
      out["target"] = res.target;
      out["tol"] = control.tol > 0 ? control.tol : adhm::tolerances().flow_tol;
      out["datum"] = adhm::datum_to_json(res.datum);
      write_output(flow_out, adhm::to_json_text(out));
      return 0;
    }

    if (omega->parsed()) {
      const adhm::EnhancedDatum x = load_datum(omega_in);
      const adhm::OmegaReport rep = adhm::omega_on_h1(x, omega_seed, omega_pairs);
      Json out;
      out["seed"] = omega_seed;
      out["h1"] = rep.h1_dim;
      out["rank"] = rep.rank;
      out["gap_ratio"] = std::isinf(rep.gap_ratio) ? Json("infinity") : Json(rep.gap_ratio);
      out["ambiguous"] = rep.rank_ambiguous;
      out["welldef_residual"] = rep.welldef_residual;
      out["welldef_ok"] = rep.welldef_ok;
      out["welldef_tol"] = adhm::tolerances().welldef_tol;
      write_output("", adhm::to_json_text(out));
      return rep.rank_ambiguous ? 4 : 0;
    }

    if (scan->parsed()) {
      const adhm::ScanTable table = adhm::degeneracy_scan(
          parse_dims(scan_dims), scan_samples, adhm::parse_stratum(scan_stratum), scan_seed);
      const std::string csv = adhm::scan_to_csv(table);
      if (scan_csv.empty()) {
        write_output("", csv);
      } else {
        write_output(scan_csv, csv);
        Json out;
        out["seed"] = scan_seed;
        out["dims"] = scan_dims;
        out["stratum"] = adhm::to_string(table.stratum);
        out["samples"] = static_cast<int>(table.rows.size());
        Json hist;
        for (const auto& [rank, count] : table.rank_histogram) {
          hist[std::to_string(rank)] = count;
        }
        out["rank_histogram"] = std::move(hist);
        out["csv"] = scan_csv;
        write_output("", adhm::to_json_text(out));
      }
      return 0;
    }

    if (accept->parsed()) {
      const adhm::AcceptanceReport rep = adhm::run_acceptance(accept_seed);
      std::cout << "seed " << accept_seed << "\n" << rep.text;
      return rep.all_passed ? 0 : 1;
    }
  } catch (const adhm::JsonError& e) {
    std::cerr << "error: " << e.what() << " (line " << e.line << ", column " << e.column
              << ")\n";
    return 3;
  } catch (const adhm::RankAmbiguityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const adhm::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const adhm::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  return 0;
}
