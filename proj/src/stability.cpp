#include "adhm/stability.hpp"

#include "adhm/numeric.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace adhm {

ClosureResult invariant_closure(const Mat& A, const Mat& B, const Mat& seed_columns,
                                double rtol) {
  const int c = static_cast<int>(A.rows());
  if (A.cols() != c || B.rows() != c || B.cols() != c || seed_columns.rows() != c) {
    throw DimensionError("invariant_closure: incompatible shapes");
  }
  ClosureResult res;
  res.basis = range_basis(seed_columns, rtol);
  res.dim = static_cast<int>(res.basis.cols());
  if (res.dim == 0) return res;
  // Dimensions are strictly increasing until saturation, so at most c rounds.
  for (int round = 0; round < c; ++round) {
    Mat grown(c, 3 * res.basis.cols());
    grown << res.basis, A * res.basis, B * res.basis;
    Mat next = range_basis(grown, rtol);
    if (next.cols() == res.basis.cols()) break;
    res.basis = next;
    res.dim = static_cast<int>(next.cols());
    if (res.dim == c) break;
  }
  return res;
}

bool chamber_check(const Dims& dims, const StabilityParameter& theta) {
  dims.validate();
  const Rational balance = Rational(dims.c) * theta.theta +
                           Rational(dims.cprime) * theta.theta_prime +
                           Rational(dims.r) * theta.theta_inf;
  if (!balance.is_zero()) {
    throw ParameterError("stability parameter violates the balance relation (got " +
                         balance.str() + ", need 0)");
  }
  const Rational edge = theta.theta + Rational(dims.cprime) * theta.theta_prime;
  return theta.theta_prime > Rational(0) && edge < Rational(0);
}

StabilityParameter canonical_chamber(const Dims& dims) {
  dims.validate();
  StabilityParameter t;
  t.theta_prime = Rational(1);
  t.theta = Rational(-(static_cast<std::int64_t>(dims.cprime) + 1));
  // Balance: c*theta + c'*theta' + r*theta_inf = 0.
  t.theta_inf = Rational(static_cast<std::int64_t>(dims.c) * (dims.cprime + 1) - dims.cprime,
                         dims.r);
  return t;
}

namespace {

Cx integer_power(Cx z, std::int64_t n) {
  const bool neg = n < 0;
  std::uint64_t e = neg ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  Cx acc(1.0);
  Cx base = z;
  while (e != 0) {
    if (e & 1U) acc *= base;
    base *= base;
    e >>= 1U;
  }
  return neg ? Cx(1.0) / acc : acc;
}

}  // namespace

Cx chi_character(const StabilityParameter& theta, const GaugeElement& g) {
  if (!theta.theta.is_integer() || !theta.theta_prime.is_integer()) {
    throw ParameterError("character exponents must be integers, got theta = " +
                         theta.theta.str() + ", theta' = " + theta.theta_prime.str());
  }
  const Cx det_h = g.h.rows() > 0 ? g.h.determinant() : Cx(1.0);
  const Cx det_hp = g.hprime.rows() > 0 ? g.hprime.determinant() : Cx(1.0);
  return integer_power(det_h, -theta.theta.num()) *
         integer_power(det_hp, -theta.theta_prime.num());
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::outside_chamber_unknown: return "outside_chamber_unknown";
  }
  return "?";
}

StabilityReport is_stable(const EnhancedDatum& x) {
  return is_stable(x, canonical_chamber(x.dims));
}

StabilityReport is_stable(const EnhancedDatum& x, const StabilityParameter& theta) {
  x.validate_shapes();
  StabilityReport rep;
  rep.chamber_ok = chamber_check(x.dims, theta);

  if (x.dims.cprime == 0) {
    rep.f_injective = true;  // map out of the zero space
    rep.f_smallest_singular = 0.0;
  } else {
    const RankResult rk = numerical_rank(x.F);
    rep.f_injective = rk.rank == x.dims.cprime;
    rep.f_smallest_singular =
        rk.singular_values.size() > 0 ? rk.singular_values(rk.singular_values.size() - 1) : 0.0;
    if (x.dims.c < x.dims.cprime) rep.f_injective = false;
  }

  const ClosureResult closure = invariant_closure(x.A, x.B, x.I);
  rep.closure_dim = closure.dim;
  rep.adhm_stable = closure.dim == x.dims.c;

  if (rep.chamber_ok) {
    rep.verdict = (rep.f_injective && rep.adhm_stable) ? Verdict::stable : Verdict::unstable;
  } else {
    rep.verdict = Verdict::outside_chamber_unknown;
  }
  return rep;
}

namespace {

// Largest subspace of span(K) invariant under both M1 and M2: repeatedly cut
// by the rows expressing "stays inside the current subspace".
Mat maximal_invariant_subspace(const Mat& M1, const Mat& M2, const Mat& K) {
  Mat Q = range_basis(K);
  const int n = static_cast<int>(M1.rows());
  for (int round = 0; round <= n && Q.cols() > 0; ++round) {
    const Mat P = Mat::Identity(n, n) - Q * Q.adjoint();
    Mat constraints(2 * n, Q.cols());
    constraints << P * (M1 * Q), P * (M2 * Q);
    const Mat N = null_space_basis(constraints);
    if (N.cols() == Q.cols()) break;
    Q = Q * N;  // orthonormal times orthonormal-columns stays orthonormal
  }
  return Q;
}

// |(Id - P_target) * M * source| small => M(source) lies inside target.
bool maps_into(const Mat& M, const Mat& source, const Mat& target, double tol_scale) {
  if (source.cols() == 0) return true;
  const int rows = static_cast<int>(M.rows());
  const Mat P = target.cols() > 0 ? Mat(Mat::Identity(rows, rows) - target * target.adjoint())
                                  : Mat(Mat::Identity(rows, rows));
  return (P * (M * source)).norm() <= 1e-8 * tol_scale;
}

}  // namespace

DestabilizerResult destabilizer_search(const EnhancedDatum& x,
                                       const StabilityParameter& theta, int budget) {
  x.validate_shapes();
  DestabilizerResult res;
  const bool chamber_ok = chamber_check(x.dims, theta);
  const int c = x.dims.c;
  const int cp = x.dims.cprime;
  const double mscale = 1.0 + std::sqrt(x.frobenius_sq());

  auto slope_of = [&](int rt, int ct, int cpt) {
    return Rational(rt) * theta.theta_inf + Rational(ct) * theta.theta +
           Rational(cpt) * theta.theta_prime;
  };

  // Witness (0, 0, V'~) inside ker F, shrunk to an invariant subspace.
  if (cp > 0) {
    Mat K = null_space_basis(x.F);
    if (K.cols() > 0) {
      K = maximal_invariant_subspace(x.Aprime, x.Bprime, K);
      if (K.cols() > 0) {
        ++res.candidates_examined;
        const Rational slope = slope_of(0, 0, static_cast<int>(K.cols()));
        if (slope >= Rational(0)) {
          res.certificate = SubrepCertificate{0, 0, static_cast<int>(K.cols()), Mat(c, 0), K,
                                              slope};
          return res;
        }
      }
    }
  }

  // Witness (W, S, F^{-1}(S)) from a strict invariant closure.
  const ClosureResult closure = invariant_closure(x.A, x.B, x.I);
  if (closure.dim < c) {
    const Mat P = Mat::Identity(c, c) - closure.basis * closure.basis.adjoint();
    Mat Vp = cp > 0 ? null_space_basis(P * x.F) : Mat(0, 0);
    if (Vp.cols() > 0) Vp = maximal_invariant_subspace(x.Aprime, x.Bprime, Vp);
    ++res.candidates_examined;
    const Rational slope = slope_of(x.dims.r, closure.dim, static_cast<int>(Vp.cols()));
    if (slope >= Rational(0)) {
      res.certificate = SubrepCertificate{x.dims.r, closure.dim, static_cast<int>(Vp.cols()),
                                          closure.basis, Vp, slope};
      return res;
    }
  }

  if (chamber_ok) {
    // Inside the chamber the two checks above are complete: injective F plus a
    // full closure rules out every non-negative-slope subrepresentation.
    return res;
  }

  // Outside the chamber: bounded eigenvector-generated probes.
  // First the J-kernel candidate (0, V, V'), a subrepresentation whenever
  // J vanishes; it can only destabilize outside the chamber.
  if (x.J.norm() <= 1e-8 * mscale) {
    ++res.candidates_examined;
    const Rational slope = slope_of(0, c, cp);
    if (slope >= Rational(0)) {
      res.certificate =
          SubrepCertificate{0, c, cp, Mat(Mat::Identity(c, c)), Mat(Mat::Identity(cp, cp)),
                            slope};
      return res;
    }
  }
  if (c > 0) {
    std::vector<Mat> generators;
    Eigen::ComplexEigenSolver<Mat> esA(x.A, /*computeEigenvectors=*/true);
    Eigen::ComplexEigenSolver<Mat> esB(x.B, /*computeEigenvectors=*/true);
    for (int k = 0; k < c; ++k) {
      generators.push_back(esA.eigenvectors().col(k));
      generators.push_back(esB.eigenvectors().col(k));
    }
    for (const Mat& v : generators) {
      if (res.candidates_examined >= budget) break;
      // Type (0, V~, V'~): invariant, killed by J, with the full F-preimage.
      {
        const ClosureResult s = invariant_closure(x.A, x.B, v);
        if (s.dim < c || cp > 0) {
          ++res.candidates_examined;
          Mat Vp = cp > 0
                       ? maximal_invariant_subspace(
                             x.Aprime, x.Bprime,
                             null_space_basis((Mat::Identity(c, c) -
                                               s.basis * s.basis.adjoint()) *
                                              x.F))
                       : Mat(0, 0);
          const bool admissible =
              (s.dim < c || Vp.cols() < cp) &&  // proper
              maps_into(x.J, s.basis, Mat(x.dims.r, 0), mscale) &&
              maps_into(x.G, s.basis, Vp, mscale);
          if (admissible) {
            const Rational slope = slope_of(0, s.dim, static_cast<int>(Vp.cols()));
            if (slope >= Rational(0)) {
              res.certificate = SubrepCertificate{0, s.dim, static_cast<int>(Vp.cols()),
                                                  s.basis, Vp, slope};
              return res;
            }
          }
        }
      }
      if (res.candidates_examined >= budget) break;
      // Type (W, V~, V'~): closure of im I together with the probe vector.
      {
        Mat seeded(c, x.dims.r + 1);
        seeded << x.I, v;
        const ClosureResult s = invariant_closure(x.A, x.B, seeded);
        if (s.dim < c) {
          ++res.candidates_examined;
          Mat Vp = cp > 0
                       ? maximal_invariant_subspace(
                             x.Aprime, x.Bprime,
                             null_space_basis((Mat::Identity(c, c) -
                                               s.basis * s.basis.adjoint()) *
                                              x.F))
                       : Mat(0, 0);
          if (maps_into(x.G, s.basis, Vp, mscale)) {
            const Rational slope = slope_of(x.dims.r, s.dim, static_cast<int>(Vp.cols()));
            if (slope >= Rational(0)) {
              res.certificate = SubrepCertificate{x.dims.r, s.dim,
                                                  static_cast<int>(Vp.cols()), s.basis, Vp,
                                                  slope};
              return res;
            }
          }
        }
      }
    }
  }

  res.inconclusive = true;
  return res;
}

}  // namespace adhm
