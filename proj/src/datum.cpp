#include "adhm/datum.hpp"

#include "adhm/moduli_maps.hpp"
#include "adhm/numeric.hpp"

#include <cmath>

namespace adhm {

const std::array<const char*, kResidualCount> kResidualNames = {
    "[A,B]+IJ", "[A',B']", "AF-FA'", "BF-FB'", "JF", "GI", "FG", "GA-A'G", "GB-B'G",
};

ResidualReport residuals(const EnhancedDatum& x) {
  x.validate_shapes();
  ResidualReport rep;
  rep.values[0] = (x.A * x.B - x.B * x.A + x.I * x.J).norm();
  rep.values[1] = (x.Aprime * x.Bprime - x.Bprime * x.Aprime).norm();
  rep.values[2] = (x.A * x.F - x.F * x.Aprime).norm();
  rep.values[3] = (x.B * x.F - x.F * x.Bprime).norm();
  rep.values[4] = (x.J * x.F).norm();
  rep.values[5] = (x.G * x.I).norm();
  rep.values[6] = (x.F * x.G).norm();
  rep.values[7] = (x.G * x.A - x.Aprime * x.G).norm();
  rep.values[8] = (x.G * x.B - x.Bprime * x.G).norm();
  rep.max_value = 0.0;
  for (double v : rep.values) rep.max_value = std::max(rep.max_value, v);
  rep.scale = 1.0 + x.frobenius_sq();
  return rep;
}

bool is_valid(const EnhancedDatum& x, double tau) {
  if (tau <= 0) tau = tolerances().residual_tau;
  const ResidualReport rep = residuals(x);
  return rep.max_value <= tau * rep.scale;
}

namespace {

Mat safe_inverse(const Mat& m) {
  if (m.rows() == 0) return Mat(0, 0);
  return m.partialPivLu().solve(Mat::Identity(m.rows(), m.cols()));
}

}  // namespace

EnhancedDatum act(const GaugeElement& g, const EnhancedDatum& x) {
  x.validate_shapes();
  if (g.h.rows() != x.dims.c || g.h.cols() != x.dims.c ||
      g.hprime.rows() != x.dims.cprime || g.hprime.cols() != x.dims.cprime) {
    throw DimensionError("gauge element does not match datum dimensions");
  }
  const Mat hinv = safe_inverse(g.h);
  const Mat hpinv = safe_inverse(g.hprime);
  EnhancedDatum y = x;
  y.A = g.h * x.A * hinv;
  y.B = g.h * x.B * hinv;
  y.I = g.h * x.I;
  y.J = x.J * hinv;
  y.Aprime = g.hprime * x.Aprime * hpinv;
  y.Bprime = g.hprime * x.Bprime * hpinv;
  y.F = g.h * x.F * hpinv;
  y.G = g.hprime * x.G * hinv;
  return y;
}

GaugeElement compose(const GaugeElement& g2, const GaugeElement& g1) {
  GaugeElement g;
  g.h = g2.h * g1.h;
  g.hprime = g2.hprime * g1.hprime;
  return g;
}

GenStyle parse_style(const std::string& name) {
  if (name == "diagonal") return GenStyle::diagonal;
  if (name == "jordan") return GenStyle::jordan;
  if (name == "lifted") return GenStyle::lifted;
  throw ParameterError("unknown generation style: " + name);
}

const char* to_string(GenStyle s) {
  switch (s) {
    case GenStyle::diagonal: return "diagonal";
    case GenStyle::jordan: return "jordan";
    case GenStyle::lifted: return "lifted";
  }
  return "?";
}

namespace {

// A, B diagonal with separated spectra; A', B' their leading blocks; F the
// coordinate inclusion.  Every residual vanishes exactly in floating point,
// and any I with all rows nonzero generates V under the diagonal pair.
EnhancedDatum generate_diagonal(const Dims& d, Rng& rng) {
  if (d.cprime > d.c) {
    throw DimensionError("diagonal style needs cprime <= c");
  }
  EnhancedDatum x = EnhancedDatum::zeros(d);
  const std::vector<Cx> aeig = distinct_complex(rng, d.c);
  const std::vector<Cx> beig = distinct_complex(rng, d.c);
  for (int k = 0; k < d.c; ++k) {
    x.A(k, k) = aeig[k];
    x.B(k, k) = beig[k];
  }
  for (int k = 0; k < d.cprime; ++k) {
    x.Aprime(k, k) = aeig[k];
    x.Bprime(k, k) = beig[k];
    x.F(k, k) = Cx(1.0);
  }
  for (int j = 0; j < d.r; ++j) {
    for (int i = 0; i < d.c; ++i) x.I(i, j) = rng.annulus(0.5, 1.5);
  }
  return x;
}

// Shared-Jordan-block family at (1,2,1): both A and B are non-semisimple,
// the span of e1 is the common invariant line, and I has a unit in the
// complementary coordinate, which forces the closure to be everything.
EnhancedDatum generate_jordan(const Dims& d, Rng& rng) {
  if (!(d.r == 1 && d.c == 2 && d.cprime == 1)) {
    throw DimensionError("jordan style is defined for dims (1,2,1)");
  }
  EnhancedDatum x = EnhancedDatum::zeros(d);
  const Cx alpha(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  const Cx beta(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  const Cx gamma = rng.annulus(0.5, 1.5);
  const Cx mu = rng.annulus(0.5, 1.5);
  x.A << alpha, Cx(1.0), Cx(0.0), alpha;
  x.B << beta, gamma, Cx(0.0), beta;
  x.Aprime(0, 0) = alpha;
  x.Bprime(0, 0) = beta;
  x.F(0, 0) = Cx(1.0);
  x.I(0, 0) = mu;
  x.I(1, 0) = Cx(1.0);
  return x;
}

// Random stable quotient datum pushed through a random diagonal frame via the
// fiber lift; exercises the non-split extension shapes.
EnhancedDatum generate_lifted(const Dims& d, Rng& rng) {
  const int csec = d.c - d.cprime;
  if (d.cprime < 1 || csec < 1) {
    throw DimensionError("lifted style needs cprime >= 1 and c - cprime >= 1");
  }
  // One pooled draw per letter keeps the frame spectrum disjoint from the
  // quotient spectrum.
  const std::vector<Cx> aeig = distinct_complex(rng, d.c);
  const std::vector<Cx> beig = distinct_complex(rng, d.c);
  Mat Aprime = Mat::Zero(d.cprime, d.cprime);
  Mat Bprime = Mat::Zero(d.cprime, d.cprime);
  for (int k = 0; k < d.cprime; ++k) {
    Aprime(k, k) = aeig[k];
    Bprime(k, k) = beig[k];
  }
  ADHMDatum x2 = ADHMDatum::zeros(d.r, csec);
  for (int k = 0; k < csec; ++k) {
    x2.A(k, k) = aeig[d.cprime + k];
    x2.B(k, k) = beig[d.cprime + k];
  }
  for (int j = 0; j < d.r; ++j) {
    for (int i = 0; i < csec; ++i) x2.I(i, j) = rng.annulus(0.5, 1.5);
  }
  return fiber_lift(x2, Aprime, Bprime, rng.fork());
}

}  // namespace

EnhancedDatum generate_stable(const Dims& dims, std::uint64_t seed, GenStyle style) {
  dims.validate();
  if (dims.c < 1) throw DimensionError("generation needs c >= 1");
  Rng rng(seed);
  switch (style) {
    case GenStyle::diagonal: return generate_diagonal(dims, rng);
    case GenStyle::jordan: return generate_jordan(dims, rng);
    case GenStyle::lifted: return generate_lifted(dims, rng);
  }
  throw ParameterError("unknown generation style");
}

}  // namespace adhm
