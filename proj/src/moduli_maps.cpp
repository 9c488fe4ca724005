#include "adhm/moduli_maps.hpp"

#include "adhm/datum.hpp"
#include "adhm/numeric.hpp"
#include "adhm/stability.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <optional>
#include <tuple>

namespace adhm {

ADHMDatum quotient_rep(const EnhancedDatum& x) {
  x.validate_shapes();
  if (!is_valid(x)) throw ValidationError("quotient needs a valid datum");
  const StabilityReport stab = is_stable(x);
  if (stab.verdict != Verdict::stable) {
    throw ValidationError("quotient needs a stable datum");
  }
  // F is injective here, so im F has dimension c' and the complement c - c'.
  const Mat Q = orthonormal_complement(x.F);
  ADHMDatum q;
  q.r = x.dims.r;
  q.c = static_cast<int>(Q.cols());
  q.A = Q.adjoint() * x.A * Q;
  q.B = Q.adjoint() * x.B * Q;
  q.I = Q.adjoint() * x.I;
  q.J = x.J * Q;
  return q;
}

Mat lift_operator(const ADHMDatum& x2, const Mat& Aprime, const Mat& Bprime) {
  x2.validate_shapes();
  const int cp = static_cast<int>(Aprime.rows());
  if (Aprime.cols() != cp || Bprime.rows() != cp || Bprime.cols() != cp) {
    throw DimensionError("frame matrices must be square of equal size");
  }
  const int cs = x2.c;
  const int r = x2.r;
  const Mat Ip = eye(cp);
  const Mat Ics = eye(cs);
  // Unknowns (At, Bt, It), vectorized in this order.
  Mat L(cp * cs, 2 * cp * cs + cp * r);
  L.block(0, 0, cp * cs, cp * cs) = kron(x2.B.transpose(), Ip) - kron(Ics, Bprime);
  L.block(0, cp * cs, cp * cs, cp * cs) = kron(Ics, Aprime) - kron(x2.A.transpose(), Ip);
  L.block(0, 2 * cp * cs, cp * cs, cp * r) = kron(x2.J.transpose(), Ip);
  return L;
}

namespace {

EnhancedDatum assemble_lift(const ADHMDatum& x2, const Mat& Aprime, const Mat& Bprime,
                            const Mat& At, const Mat& Bt, const Mat& It) {
  const int cp = static_cast<int>(Aprime.rows());
  const int cs = x2.c;
  EnhancedDatum x = EnhancedDatum::zeros({x2.r, cp + cs, cp});
  x.Aprime = Aprime;
  x.Bprime = Bprime;
  x.A.topLeftCorner(cp, cp) = Aprime;
  x.A.topRightCorner(cp, cs) = At;
  x.A.bottomRightCorner(cs, cs) = x2.A;
  x.B.topLeftCorner(cp, cp) = Bprime;
  x.B.topRightCorner(cp, cs) = Bt;
  x.B.bottomRightCorner(cs, cs) = x2.B;
  x.I.topRows(cp) = It;
  x.I.bottomRows(cs) = x2.I;
  x.J.rightCols(cs) = x2.J;
  x.F.topRows(cp) = eye(cp);
  return x;
}

bool lift_admissible(const EnhancedDatum& x, const Mat& At, const Mat& Bt, const Mat& It) {
  if (!is_valid(x)) return false;
  if (is_stable(x).verdict != Verdict::stable) return false;
  const int cp = x.dims.cprime;
  if (cp > 1) {
    // The off-diagonal data must generate V' under the frame action.
    Mat seeds(cp, At.cols() + Bt.cols() + It.cols());
    seeds << At, Bt, It;
    if (invariant_closure(x.Aprime, x.Bprime, seeds).dim != cp) return false;
  }
  return true;
}

}  // namespace

EnhancedDatum fiber_lift(const ADHMDatum& x2, const Mat& Aprime, const Mat& Bprime,
                         std::uint64_t seed) {
  x2.validate_shapes();
  const int cp = static_cast<int>(Aprime.rows());
  if (cp == 0) return EnhancedDatum::embed(x2);

  if ((Aprime * Bprime - Bprime * Aprime).norm() >
      1e-10 * (1.0 + Aprime.squaredNorm() + Bprime.squaredNorm())) {
    throw ValidationError("frame matrices must commute");
  }
  if ((x2.A * x2.B - x2.B * x2.A + x2.I * x2.J).norm() >
      1e-10 * (1.0 + x2.frobenius_sq())) {
    throw ValidationError("base datum violates its defining equation");
  }
  if (invariant_closure(x2.A, x2.B, x2.I).dim != x2.c) {
    throw ValidationError("base datum must be stable");
  }

  const Mat L = lift_operator(x2, Aprime, Bprime);
  const Mat N = null_space_basis(L);
  if (N.cols() == 0) {
    throw LiftError("matching equation has a trivial kernel; no lift exists");
  }

  const int cs = x2.c;
  const int r = x2.r;
  Rng rng(seed);
  auto unpack = [&](const Vec& k) {
    const Mat At = unvec(k.segment(0, cp * cs), cp, cs);
    const Mat Bt = unvec(k.segment(cp * cs, cp * cs), cp, cs);
    const Mat It = unvec(k.segment(2 * cp * cs, cp * r), cp, r);
    return std::tuple<Mat, Mat, Mat>(At, Bt, It);
  };

  for (int attempt = 0; attempt < 32; ++attempt) {
    const Vec k = N * vec(rng.gaussian_matrix(static_cast<int>(N.cols()), 1));
    if (k.norm() < 1e-12) continue;
    const auto [At, Bt, It] = unpack(k);
    const EnhancedDatum x = assemble_lift(x2, Aprime, Bprime, At, Bt, It);
    if (lift_admissible(x, At, Bt, It)) return x;
  }

  // Structured fallback: pin It to a separated rank-one pattern and solve the
  // matching equation for (At, Bt) by least squares.
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Frame frame = vandermonde_frame(cp, r, rng.fork());
    const Mat Lab = L.leftCols(2 * cp * cs);
    const Vec rhs = -L.rightCols(cp * r) * vec(frame.It);
    const Vec ab = Lab.completeOrthogonalDecomposition().solve(rhs);
    if ((Lab * ab - rhs).norm() > 1e-8 * (1.0 + rhs.norm())) continue;
    const Mat At = unvec(ab.segment(0, cp * cs), cp, cs);
    const Mat Bt = unvec(ab.segment(cp * cs, cp * cs), cp, cs);
    const EnhancedDatum x = assemble_lift(x2, Aprime, Bprime, At, Bt, frame.It);
    if (lift_admissible(x, At, Bt, frame.It)) return x;
  }

  throw LiftError("no admissible lift found in the kernel of the matching equation");
}

Frame vandermonde_frame(int cprime, int r, std::uint64_t seed) {
  if (cprime < 1 || r < 1) throw DimensionError("frame needs cprime >= 1, r >= 1");
  Rng rng(seed);
  // Separated nodes bounded away from zero keep all powers well-scaled.
  std::vector<Cx> nodes;
  int attempts = 0;
  while (static_cast<int>(nodes.size()) < cprime) {
    if (++attempts > 100000) throw ParameterError("frame node sampling failed");
    const Cx t = rng.annulus(0.5, 1.5);
    bool ok = true;
    for (const Cx& u : nodes) {
      if (std::abs(t - u) < 1e-3) {
        ok = false;
        break;
      }
    }
    if (ok) nodes.push_back(t);
  }
  Frame f;
  f.Aprime = Mat::Zero(cprime, cprime);
  f.Bprime = Mat::Zero(cprime, cprime);
  const std::vector<Cx> beig = distinct_complex(rng, cprime);
  for (int k = 0; k < cprime; ++k) {
    f.Aprime(k, k) = nodes[k];
    f.Bprime(k, k) = beig[k];
  }
  f.It = Mat(cprime, r);
  for (int k = 0; k < cprime; ++k) {
    Cx p(1.0);
    for (int j = 0; j < r; ++j) {
      f.It(k, j) = p;
      p *= nodes[k];
    }
  }
  return f;
}

MonadPencil monad_pencil(const ADHMDatum& x) {
  x.validate_shapes();
  MonadPencil m;
  m.r = x.r;
  m.c = x.c;
  m.A = x.A;
  m.B = x.B;
  m.I = x.I;
  m.J = x.J;
  return m;
}

Mat monad_alpha(const MonadPencil& m, Cx x, Cx y, Cx z) {
  Mat a(2 * m.c + m.r, m.c);
  a.topRows(m.c) = z * m.A + x * eye(m.c);
  a.middleRows(m.c, m.c) = z * m.B + y * eye(m.c);
  a.bottomRows(m.r) = z * m.J;
  return a;
}

Mat monad_beta(const MonadPencil& m, Cx x, Cx y, Cx z) {
  Mat b(m.c, 2 * m.c + m.r);
  b.leftCols(m.c) = -z * m.B - y * eye(m.c);
  b.middleCols(m.c, m.c) = z * m.A + x * eye(m.c);
  b.rightCols(m.r) = z * m.I;
  return b;
}

MonadRanks monad_ranks(const MonadPencil& m, Cx x, Cx y, Cx z) {
  MonadRanks res;
  res.rank_alpha = numerical_rank(monad_alpha(m, x, y, z)).rank;
  res.rank_beta = numerical_rank(monad_beta(m, x, y, z)).rank;
  res.fiber_dim = (2 * m.c + m.r - res.rank_beta) - res.rank_alpha;
  return res;
}

namespace {

// Pairs the diagonals of a joint triangularization, then clusters and sorts.
PointConfiguration cluster_pairs(const std::vector<std::pair<Cx, Cx>>& pairs,
                                 double group_tol) {
  PointConfiguration z;
  for (const auto& [px, py] : pairs) {
    bool merged = false;
    for (SupportPoint& q : z.points) {
      const double scale = 1.0 + std::abs(q.x) + std::abs(q.y);
      if (std::abs(px - q.x) <= group_tol * scale && std::abs(py - q.y) <= group_tol * scale) {
        ++q.mult;
        merged = true;
        break;
      }
    }
    if (!merged) z.points.push_back({px, py, 1});
  }
  return z.sorted();
}

}  // namespace

PointConfiguration joint_spectrum(const Mat& M, const Mat& N, double group_tol) {
  const int n = static_cast<int>(M.rows());
  if (M.cols() != n || N.rows() != n || N.cols() != n) {
    throw DimensionError("joint spectrum needs square matrices of equal size");
  }
  if (n == 0) return {};

  auto attempt = [&](const Mat& first,
                     const Mat& second) -> std::optional<std::vector<std::pair<Cx, Cx>>> {
    Eigen::ComplexSchur<Mat> schur(first, /*computeU=*/true);
    const Mat t2 = schur.matrixU().adjoint() * second * schur.matrixU();
    double lower = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int i = j + 1; i < n; ++i) lower += std::norm(t2(i, j));
    }
    if (std::sqrt(lower) > 1e-8 * (1.0 + second.norm())) return std::nullopt;
    std::vector<std::pair<Cx, Cx>> pairs(n);
    for (int i = 0; i < n; ++i) pairs[i] = {schur.matrixT()(i, i), t2(i, i)};
    return pairs;
  };

  if (auto pairs = attempt(M, N)) return cluster_pairs(*pairs, group_tol);
  if (auto pairs = attempt(N, M)) {
    for (auto& p : *pairs) std::swap(p.first, p.second);
    return cluster_pairs(*pairs, group_tol);
  }
  throw ValidationError("matrices do not admit a joint triangularization (non-commuting pair)");
}

PointConfiguration quotient_support(const EnhancedDatum& x, double group_tol) {
  x.validate_shapes();
  if (x.dims.cprime == 0) return {};
  return joint_spectrum(Mat(-x.Aprime), Mat(-x.Bprime), group_tol);
}

EnhancedDatum nested_hilbert_datum(const PointConfiguration& z1,
                                   const PointConfiguration& z2) {
  z1.validate();
  z2.validate();
  for (const auto& cfg : {z1, z2}) {
    for (const SupportPoint& p : cfg.points) {
      if (p.mult != 1) {
        throw ValidationError("nested construction needs reduced configurations (mult 1)");
      }
    }
  }
  constexpr double kMatchTol = 1e-12;
  std::vector<bool> matched(z2.points.size(), false);
  for (const SupportPoint& p : z1.points) {
    bool found = false;
    for (std::size_t k = 0; k < z2.points.size(); ++k) {
      if (matched[k]) continue;
      if (std::abs(p.x - z2.points[k].x) <= kMatchTol &&
          std::abs(p.y - z2.points[k].y) <= kMatchTol) {
        matched[k] = true;
        found = true;
        break;
      }
    }
    if (!found) {
      throw ValidationError("containment fails: a first-level point is missing upstairs");
    }
  }

  // Basis order: the extra points first, then the shared ones, each group in
  // the order it appears in z2.
  std::vector<SupportPoint> ordered;
  for (std::size_t k = 0; k < z2.points.size(); ++k) {
    if (!matched[k]) ordered.push_back(z2.points[k]);
  }
  const int cprime = static_cast<int>(ordered.size());
  for (std::size_t k = 0; k < z2.points.size(); ++k) {
    if (matched[k]) ordered.push_back(z2.points[k]);
  }

  const int c = static_cast<int>(ordered.size());
  EnhancedDatum x = EnhancedDatum::zeros({1, c, cprime});
  for (int k = 0; k < c; ++k) {
    x.A(k, k) = ordered[k].x;
    x.B(k, k) = ordered[k].y;
    x.I(k, 0) = Cx(1.0);
  }
  for (int k = 0; k < cprime; ++k) {
    x.Aprime(k, k) = ordered[k].x;
    x.Bprime(k, k) = ordered[k].y;
    x.F(k, k) = Cx(1.0);
  }
  return x;
}

std::pair<PointConfiguration, PointConfiguration> nested_hilbert_points(
    const EnhancedDatum& x) {
  x.validate_shapes();
  if (x.dims.r != 1) throw DimensionError("nested readout requires r = 1");
  if (!is_valid(x)) throw ValidationError("nested readout needs a valid datum");
  if (is_stable(x).verdict != Verdict::stable) {
    throw ValidationError("nested readout needs a stable datum");
  }
  PointConfiguration z2 = joint_spectrum(x.A, x.B);
  const ADHMDatum q = quotient_rep(x);
  PointConfiguration z1 = joint_spectrum(q.A, q.B);
  return {z1, z2};
}

}  // namespace adhm
