#include "adhm/geometry.hpp"

#include "adhm/datum.hpp"
#include "adhm/numeric.hpp"
#include "adhm/stability.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace adhm {

std::pair<double, double> ambient_residuals(const EnhancedDatum& x) {
  x.validate_shapes();
  const double rv = (x.A * x.B - x.B * x.A + x.I * x.J + x.F * x.G).norm();
  const double rp = (x.Aprime * x.Bprime - x.Bprime * x.Aprime - x.G * x.F).norm();
  return {rv, rp};
}

namespace {

// Linearization of the two ambient complex equations in the full coordinate
// block order (a, b, i, j, a', b', f, g).
Mat assemble_ambient_dphi(const EnhancedDatum& x) {
  const Dims& d = x.dims;
  const int c = d.c, cp = d.cprime, r = d.r;
  const Mat Ic = eye(c), Ip = eye(cp);
  const std::vector<int> cols = {c * c, c * c, c * r, r * c, cp * cp, cp * cp, c * cp, cp * c};
  const std::vector<int> rows = {c * c, cp * cp};
  int total_cols = 0, total_rows = 0;
  for (int s : cols) total_cols += s;
  for (int s : rows) total_rows += s;
  Mat m = Mat::Zero(total_rows, total_cols);
  std::vector<int> off(cols.size(), 0);
  for (std::size_t k = 1; k < cols.size(); ++k) off[k] = off[k - 1] + cols[k - 1];

  auto put = [&](int row_block, int col_block, const Mat& term) {
    m.block(row_block == 0 ? 0 : c * c, off[col_block], term.rows(), term.cols()) = term;
  };
  // d([A,B] + IJ + FG)
  put(0, 0, kron(x.B.transpose(), Ic) - kron(Ic, x.B));
  put(0, 1, kron(Ic, x.A) - kron(x.A.transpose(), Ic));
  put(0, 2, kron(x.J.transpose(), Ic));
  put(0, 3, kron(Ic, x.I));
  put(0, 6, kron(x.G.transpose(), Ic));
  put(0, 7, kron(Ic, x.F));
  // d([A',B'] - GF)
  put(1, 4, kron(x.Bprime.transpose(), Ip) - kron(Ip, x.Bprime));
  put(1, 5, kron(Ip, x.Aprime) - kron(x.Aprime.transpose(), Ip));
  put(1, 6, -kron(Ip, x.G));
  put(1, 7, -kron(x.F.transpose(), Ip));
  return m;
}

// Infinitesimal gauge action on the full ambient coordinates, including the
// h'G - Gh component.
Mat assemble_ambient_action(const EnhancedDatum& x) {
  const Dims& d = x.dims;
  const int c = d.c, cp = d.cprime, r = d.r;
  const Mat Ic = eye(c), Ip = eye(cp);
  const std::vector<int> rows = {c * c, c * c, c * r, r * c, cp * cp, cp * cp, c * cp, cp * c};
  int total_rows = 0;
  for (int s : rows) total_rows += s;
  Mat m = Mat::Zero(total_rows, c * c + cp * cp);
  std::vector<int> off(rows.size(), 0);
  for (std::size_t k = 1; k < rows.size(); ++k) off[k] = off[k - 1] + rows[k - 1];

  auto put = [&](int row_block, int col_block, const Mat& term) {
    m.block(off[row_block], col_block == 0 ? 0 : c * c, term.rows(), term.cols()) = term;
  };
  put(0, 0, kron(x.A.transpose(), Ic) - kron(Ic, x.A));
  put(1, 0, kron(x.B.transpose(), Ic) - kron(Ic, x.B));
  put(2, 0, kron(x.I.transpose(), Ic));
  put(3, 0, -kron(Ic, x.J));
  put(4, 1, kron(x.Aprime.transpose(), Ip) - kron(Ip, x.Aprime));
  put(5, 1, kron(x.Bprime.transpose(), Ip) - kron(Ip, x.Bprime));
  put(6, 0, kron(x.F.transpose(), Ic));
  put(6, 1, -kron(Ip, x.F));
  put(7, 0, -kron(Ic, x.G));
  put(7, 1, kron(x.G.transpose(), Ip));
  return m;
}

}  // namespace

int ambient_tangent_dim(const EnhancedDatum& x) {
  x.validate_shapes();
  const Mat dphi = assemble_ambient_dphi(x);
  const Mat action = assemble_ambient_action(x);
  const int kernel_dim = static_cast<int>(dphi.cols()) - numerical_rank(dphi).rank;
  return kernel_dim - numerical_rank(action).rank;
}

double MomentValue::real_norm_sq() const { return muV.squaredNorm() + muVprime.squaredNorm(); }

double MomentValue::complex_norm_sq() const {
  return muC_V.squaredNorm() + muC_Vprime.squaredNorm();
}

MomentValue moment_map(const EnhancedDatum& x) {
  x.validate_shapes();
  MomentValue mu;
  mu.muV = x.A * x.A.adjoint() - x.A.adjoint() * x.A + x.B * x.B.adjoint() -
           x.B.adjoint() * x.B + x.I * x.I.adjoint() - x.J.adjoint() * x.J +
           x.F * x.F.adjoint() - x.G.adjoint() * x.G;
  mu.muVprime = x.Aprime * x.Aprime.adjoint() - x.Aprime.adjoint() * x.Aprime +
                x.Bprime * x.Bprime.adjoint() - x.Bprime.adjoint() * x.Bprime -
                x.F.adjoint() * x.F + x.G * x.G.adjoint();
  mu.muC_V = -(x.A * x.B - x.B * x.A + x.I * x.J + x.F * x.G);
  mu.muC_Vprime = -(x.Aprime * x.Bprime - x.Bprime * x.Aprime - x.G * x.F);
  return mu;
}

FlowResult balance_flow(const EnhancedDatum& x, const FlowControl& control) {
  x.validate_shapes();
  const double tol = control.tol > 0 ? control.tol : tolerances().flow_tol;

  FlowResult res;
  res.datum = x;
  MomentValue mu = moment_map(res.datum);
  double energy = mu.real_norm_sq();
  double eps_carry = 0.0;  // next initial step when growth is enabled

  int iter = 0;
  for (; iter < control.max_iters; ++iter) {
    res.final_norm = std::sqrt(energy);
    res.target = tol * (1.0 + res.datum.frobenius_sq());
    if (res.final_norm <= res.target) {
      res.converged = true;
      break;
    }

    const double radius =
        std::max(hermitian_spectral_radius(mu.muV), hermitian_spectral_radius(mu.muVprime));
    const double base_eps = 1.0 / (1.0 + radius * radius);
    double eps = base_eps;
    if (control.allow_growth) {
      const double spread =
          std::max(hermitian_spread(mu.muV), hermitian_spread(mu.muVprime));
      // Cap the step so no gauge factor is conditioned worse than cond_cap.
      const double eps_cap =
          spread > 0 ? std::log(control.cond_cap) / spread
                     : std::numeric_limits<double>::infinity();
      eps = std::min(eps_carry > 0 ? eps_carry : base_eps, eps_cap);
      eps = std::max(eps, std::min(base_eps, eps_cap));
    }

    EnhancedDatum next;
    MomentValue mu_next;
    double energy_next = 0.0;
    while (true) {
      GaugeElement g;
      g.h = hermitian_exp(mu.muV, -eps);
      g.hprime = hermitian_exp(mu.muVprime, -eps);
      next = act(g, res.datum);
      mu_next = moment_map(next);
      energy_next = mu_next.real_norm_sq();
      if (energy_next < energy) break;
      eps *= 0.5;
      if (eps < control.eps_min) {
        throw FlowError("balancing step collapsed without energy decrease");
      }
    }

    res.datum = std::move(next);
    mu = std::move(mu_next);
    energy = energy_next;
    if (control.allow_growth) eps_carry = eps * control.growth;
  }
  res.iterations = iter;
  if (!res.converged) {
    res.final_norm = std::sqrt(energy);
    res.target = tol * (1.0 + res.datum.frobenius_sq());
    // One last acceptance check at the budget boundary.
    res.converged = res.final_norm <= res.target;
  }
  return res;
}

Cx omega_pair(const TangentBlocks& u, const TangentBlocks& v) {
  const Cx end_v = (-v.a * u.b + v.b * u.a).trace();
  const Cx frame = (-(v.i * u.j) + u.i * v.j).trace();
  const Cx end_vp = (-v.aprime * u.bprime + v.bprime * u.aprime).trace();
  return end_v + frame + end_vp;
}

OmegaReport omega_on_h1(const EnhancedDatum& x, std::uint64_t seed, int welldef_pairs) {
  const TangentBasis basis = tangent_basis(x);  // checks stability and cprime = 1
  const DeformationComplex k = build_complex(x, ComplexVariant::reduced);

  OmegaReport rep;
  rep.h1_dim = static_cast<int>(basis.h1.cols());
  rep.matrix = Mat(rep.h1_dim, rep.h1_dim);
  std::vector<TangentBlocks> reps;
  reps.reserve(rep.h1_dim);
  for (int p = 0; p < rep.h1_dim; ++p) {
    reps.push_back(unpack_tangent(x.dims, basis.h1.col(p)));
  }
  for (int p = 0; p < rep.h1_dim; ++p) {
    for (int q = 0; q < rep.h1_dim; ++q) {
      rep.matrix(p, q) = omega_pair(reps[p], reps[q]);
    }
  }
  const RankResult rk = numerical_rank(rep.matrix);
  rep.rank = rk.rank;
  rep.gap_ratio = rk.gap_ratio;
  // A pre-symplectic form has even rank; an odd count means the cut is noise.
  rep.rank_ambiguous = rk.ambiguous || (rk.rank % 2 != 0);

  // Well-definedness: pairing a gauge direction with any closed direction
  // must vanish up to the kernel-residual scale.
  Rng rng(seed);
  const int kernel_dim = static_cast<int>(basis.kernel.cols());
  double worst = 0.0;
  for (int t = 0; t < welldef_pairs && kernel_dim > 0; ++t) {
    Vec xi = vec(rng.gaussian_matrix(k.term_dims[0], 1));
    xi /= std::max(xi.norm(), 1e-300);
    Vec coeff = vec(rng.gaussian_matrix(kernel_dim, 1));
    coeff /= std::max(coeff.norm(), 1e-300);
    const Vec gauge_dir = k.D0 * xi;
    const Vec closed_dir = basis.kernel * coeff;
    const Cx val =
        omega_pair(unpack_tangent(x.dims, gauge_dir), unpack_tangent(x.dims, closed_dir));
    worst = std::max(worst, std::abs(val));
  }
  rep.welldef_residual = worst;
  rep.welldef_ok = worst <= tolerances().welldef_tol * (1.0 + x.frobenius_sq());
  return rep;
}

Stratum parse_stratum(const std::string& name) {
  if (name == "diagonal") return Stratum::diagonal;
  if (name == "jordan") return Stratum::jordan;
  if (name == "jordan_mixed") return Stratum::jordan_mixed;
  throw ParameterError("unknown stratum: " + name);
}

const char* to_string(Stratum s) {
  switch (s) {
    case Stratum::diagonal: return "diagonal";
    case Stratum::jordan: return "jordan";
    case Stratum::jordan_mixed: return "jordan_mixed";
  }
  return "?";
}

EnhancedDatum sample_stratum(const Dims& dims, Stratum s, std::uint64_t seed) {
  switch (s) {
    case Stratum::diagonal:
      return generate_stable(dims, seed, GenStyle::diagonal);
    case Stratum::jordan:
      return generate_stable(dims, seed, GenStyle::jordan);
    case Stratum::jordan_mixed: {
      if (!(dims.r == 1 && dims.c == 2 && dims.cprime == 1)) {
        throw DimensionError("jordan_mixed stratum is defined for dims (1,2,1)");
      }
      Rng rng(seed);
      EnhancedDatum x = EnhancedDatum::zeros(dims);
      const Cx alpha(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      const Cx beta(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      const Cx mu = rng.annulus(0.5, 1.5);
      x.A << alpha, Cx(0.0), Cx(0.0), alpha;  // scalar, hence semisimple
      x.B << beta, Cx(1.0), Cx(0.0), beta;    // a genuine Jordan block
      x.Aprime(0, 0) = alpha;
      x.Bprime(0, 0) = beta;
      x.F(0, 0) = Cx(1.0);
      x.I(0, 0) = mu;
      x.I(1, 0) = Cx(1.0);
      return x;
    }
  }
  throw ParameterError("unknown stratum");
}

ScanTable degeneracy_scan(const Dims& dims, int samples, Stratum s, std::uint64_t seed) {
  if (samples < 0) throw ParameterError("sample count must be non-negative");
  ScanTable table;
  table.dims = dims;
  table.stratum = s;
  table.rows.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const std::uint64_t sample_seed = mix_seed(seed, static_cast<std::uint64_t>(k));
    const EnhancedDatum x = sample_stratum(dims, s, sample_seed);
    const OmegaReport rep = omega_on_h1(x, mix_seed(sample_seed, 0x5ca1ab1eULL), 50);
    table.rows.push_back(
        {k, sample_seed, rep.h1_dim, rep.rank, rep.gap_ratio, rep.welldef_residual});
    ++table.rank_histogram[rep.rank];
  }
  return table;
}

std::string scan_to_csv(const ScanTable& t) {
  std::string out = "index,seed,h1,rank,gap_ratio,welldef_residual\n";
  char buf[160];
  for (const ScanRow& row : t.rows) {
    std::snprintf(buf, sizeof(buf), "%d,%llu,%d,%d,%.17g,%.17g\n", row.index,
                  static_cast<unsigned long long>(row.seed), row.h1_dim, row.rank,
                  row.gap_ratio, row.welldef_residual);
    out += buf;
  }
  return out;
}

}  // namespace adhm
