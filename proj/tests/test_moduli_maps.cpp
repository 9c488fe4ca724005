#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adhm/datum.hpp"
#include "adhm/moduli_maps.hpp"
#include "adhm/numeric.hpp"
#include "adhm/stability.hpp"
#include "adhm/types.hpp"

#include <cmath>
#include <complex>

using namespace adhm;

namespace {

PointConfiguration config(std::initializer_list<std::pair<Cx, Cx>> pts) {
  PointConfiguration z;
  for (const auto& [x, y] : pts) {
    SupportPoint p;
    p.x = x;
    p.y = y;
    p.mult = 1;
    z.points.push_back(p);
  }
  return z;
}

}  // namespace

TEST_CASE("compression to the complement of the framed subspace") {
  // A = diag(0,1), B = diag(0,2), F = e1: the quotient keeps the e2 data.
  EnhancedDatum x = EnhancedDatum::zeros({1, 2, 1});
  x.A(1, 1) = 1.0;
  x.B(1, 1) = 2.0;
  x.I(0, 0) = 1.0;
  x.I(1, 0) = 1.0;
  x.F(0, 0) = 1.0;

  const ADHMDatum q = quotient_rep(x);
  REQUIRE(q.c == 1);
  CHECK(std::abs(q.A(0, 0) - Cx(1.0)) <= 1e-12);
  CHECK(std::abs(q.B(0, 0) - Cx(2.0)) <= 1e-12);
  CHECK(std::abs(std::abs(q.I(0, 0)) - 1.0) <= 1e-12);  // unit phase freedom
  CHECK(q.J.norm() <= 1e-12);

  SUBCASE("preconditions") {
    EnhancedDatum bad = x;
    bad.I.setZero();  // unstable
    CHECK_THROWS_AS(quotient_rep(bad), ValidationError);
  }
}

TEST_CASE("lift equation kernel has the predicted dimension") {
  Rng rng(3);
  for (const auto& [r, csec] : {std::pair<int, int>{1, 1}, {1, 2}, {2, 2}}) {
    ADHMDatum x2 = ADHMDatum::zeros(r, csec);
    const std::vector<Cx> ae = distinct_complex(rng, csec);
    const std::vector<Cx> be = distinct_complex(rng, csec);
    for (int i = 0; i < csec; ++i) {
      x2.A(i, i) = ae[i];
      x2.B(i, i) = be[i];
      for (int k = 0; k < r; ++k) x2.I(i, k) = rng.annulus(0.5, 1.5);
    }
    const Frame frame = vandermonde_frame(1, r, rng.bits());
    const Mat L = lift_operator(x2, frame.Aprime, frame.Bprime);
    const int kernel_dim = static_cast<int>(L.cols()) - numerical_rank(L).rank;
    CHECK(kernel_dim == csec + r);  // equals c + r - 1 for a one-dimensional frame
  }
}

TEST_CASE("lifting and compressing is the identity on invariants") {
  Rng rng(5);
  for (int t = 0; t < 5; ++t) {
    ADHMDatum x2 = ADHMDatum::zeros(1, 2);
    const std::vector<Cx> eigs = distinct_complex(rng, 5);
    x2.A(0, 0) = eigs[0];
    x2.A(1, 1) = eigs[1];
    x2.B(0, 0) = eigs[2];
    x2.B(1, 1) = eigs[3];
    x2.I(0, 0) = rng.annulus(0.5, 1.5);
    x2.I(1, 0) = rng.annulus(0.5, 1.5);

    Mat Ap(1, 1), Bp(1, 1);
    Ap(0, 0) = eigs[4];
    Bp(0, 0) = rng.annulus(0.5, 1.5);

    const EnhancedDatum lifted = fiber_lift(x2, Ap, Bp, rng.bits());
    CHECK(is_valid(lifted));
    CHECK(is_stable(lifted).verdict == Verdict::stable);
    CHECK(lifted.G.norm() == 0.0);
    CHECK(lifted.dims.c == 3);

    const ADHMDatum back = quotient_rep(lifted);
    CHECK(fingerprint_distance(gauge_fingerprint(x2), gauge_fingerprint(back)) <= 1e-8);
  }
}

TEST_CASE("lift refuses an unstable base") {
  ADHMDatum x2 = ADHMDatum::zeros(1, 1);  // I = 0: not stable
  Mat Ap = Mat::Identity(1, 1), Bp = Mat::Identity(1, 1);
  CHECK_THROWS_AS(fiber_lift(x2, Ap, Bp, 0), ValidationError);
}

TEST_CASE("deterministic frame structure") {
  const Frame f = vandermonde_frame(3, 2, 42);
  REQUIRE(f.Aprime.rows() == 3);
  REQUIRE(f.It.rows() == 3);
  REQUIRE(f.It.cols() == 2);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) {
        CHECK(f.Aprime(i, j) == Cx(0.0));
        CHECK(std::abs(f.Aprime(i, i) - f.Aprime(j, j)) >= 1e-3);
        CHECK(std::abs(f.Bprime(i, i) - f.Bprime(j, j)) >= 1e-3);
      }
    }
    const double m = std::abs(f.Aprime(i, i));
    CHECK(m >= 0.5);
    CHECK(m <= 1.5);
    CHECK(f.It(i, 0) == Cx(1.0));                              // column of powers, t^0
    CHECK(std::abs(f.It(i, 1) - f.Aprime(i, i)) <= 1e-14);     // t^1
  }
}

TEST_CASE("pencil composite vanishes identically in the equations") {
  Rng rng(7);
  ADHMDatum x = ADHMDatum::zeros(2, 3);
  x.A = rng.gaussian_matrix(3, 3);
  x.B = rng.gaussian_matrix(3, 3);
  x.I = rng.gaussian_matrix(3, 2);
  x.J = rng.gaussian_matrix(2, 3);
  const MonadPencil m = monad_pencil(x);
  const Cx px(0.3, -1.1), py(-0.2, 0.8), pz(1.5, 0.4);
  const Mat composite = monad_beta(m, px, py, pz) * monad_alpha(m, px, py, pz);
  const Mat expected = pz * pz * (x.A * x.B - x.B * x.A + x.I * x.J);
  CHECK((composite - expected).norm() <= 1e-12 * (1.0 + expected.norm()));
}

TEST_CASE("monad ranks at generic points of a stable datum") {
  const EnhancedDatum x = generate_stable({2, 3, 1}, 9, GenStyle::diagonal);
  const MonadPencil m = monad_pencil(x.plain_part());
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const Cx px(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const Cx py(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const MonadRanks ranks = monad_ranks(m, px, py, Cx(1.0));
    CHECK(ranks.rank_alpha == 3);
    CHECK(ranks.rank_beta == 3);
    CHECK(ranks.fiber_dim == 2);  // equals r
  }
}

TEST_CASE("joint spectra of commuting pairs") {
  SUBCASE("diagonal pair with a repeated joint eigenvalue") {
    Mat a = Mat::Zero(3, 3), b = Mat::Zero(3, 3);
    a.diagonal() << Cx(1.0), Cx(1.0), Cx(2.0);
    b.diagonal() << Cx(5.0), Cx(5.0), Cx(6.0);
    const PointConfiguration z = joint_spectrum(a, b);
    REQUIRE(z.points.size() == 2);
    CHECK(z.points[0].mult == 2);
    CHECK(std::abs(z.points[0].x - Cx(1.0)) <= 1e-10);
    CHECK(std::abs(z.points[0].y - Cx(5.0)) <= 1e-10);
    CHECK(z.points[1].mult == 1);
    CHECK(z.length() == 3);
  }
  SUBCASE("jordan block with a commuting diagonal partner") {
    Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
    a << Cx(0.5), Cx(1.0), Cx(0.0), Cx(0.5);
    b.diagonal() << Cx(-1.0), Cx(-1.0);
    const PointConfiguration z = joint_spectrum(a, b);
    REQUIRE(z.points.size() == 1);
    CHECK(z.points[0].mult == 2);
  }
  SUBCASE("scalar first matrix forces the swapped triangularization") {
    Mat a = Mat::Identity(2, 2);
    Mat b = Mat::Zero(2, 2);
    b << Cx(1.0), Cx(0.0), Cx(1.0), Cx(2.0);  // lower triangular on purpose
    const PointConfiguration z = joint_spectrum(a, b);
    REQUIRE(z.points.size() == 2);
    CHECK(std::abs(z.points[0].x - Cx(1.0)) <= 1e-10);
    CHECK(std::abs(z.points[1].x - Cx(1.0)) <= 1e-10);
  }
  SUBCASE("genuinely non-commuting pair is rejected") {
    Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
    a(0, 1) = 1.0;
    b(1, 0) = 1.0;
    CHECK_THROWS_AS(joint_spectrum(a, b), ValidationError);
  }
}

TEST_CASE("support of the quotient sheaf is the negated frame spectrum") {
  Rng rng(13);
  ADHMDatum x2 = ADHMDatum::zeros(1, 1);
  x2.A(0, 0) = Cx(0.25, 0.0);
  x2.B(0, 0) = Cx(-0.75, 0.0);
  x2.I(0, 0) = 1.0;
  Mat Ap(1, 1), Bp(1, 1);
  Ap(0, 0) = Cx(0.7, 0.2);
  Bp(0, 0) = Cx(-0.3, 0.9);
  const EnhancedDatum lifted = fiber_lift(x2, Ap, Bp, rng.bits());
  const PointConfiguration sup = quotient_support(lifted);
  REQUIRE(sup.points.size() == 1);
  CHECK(sup.points[0].mult == 1);
  CHECK(std::abs(sup.points[0].x - (-Ap(0, 0))) <= 1e-10);
  CHECK(std::abs(sup.points[0].y - (-Bp(0, 0))) <= 1e-10);

  SUBCASE("plain data have empty support") {
    const EnhancedDatum plain = EnhancedDatum::embed(x2);
    CHECK(quotient_support(plain).points.empty());
  }
}

TEST_CASE("nested configurations to data and back") {
  SUBCASE("frozen two-point example") {
    const PointConfiguration z1 = config({{Cx(0.0), Cx(0.0)}});
    const PointConfiguration z2 = config({{Cx(0.0), Cx(0.0)}, {Cx(1.0), Cx(2.0)}});
    const EnhancedDatum x = nested_hilbert_datum(z1, z2);
    CHECK(x.dims.r == 1);
    CHECK(x.dims.c == 2);
    CHECK(x.dims.cprime == 1);
    // The extra point (1,2) is listed first in the basis.
    CHECK(x.A(0, 0) == Cx(1.0));
    CHECK(x.A(1, 1) == Cx(0.0));
    CHECK(x.B(0, 0) == Cx(2.0));
    CHECK(x.B(1, 1) == Cx(0.0));
    CHECK(x.F(0, 0) == Cx(1.0));
    CHECK(x.F(1, 0) == Cx(0.0));
    CHECK(x.I(0, 0) == Cx(1.0));
    CHECK(x.I(1, 0) == Cx(1.0));
    CHECK(x.J.norm() == 0.0);
    CHECK(x.Aprime(0, 0) == Cx(1.0));
    CHECK(x.Bprime(0, 0) == Cx(2.0));
    CHECK(is_valid(x));
    CHECK(is_stable(x).verdict == Verdict::stable);

    const auto [r1, r2] = nested_hilbert_points(x);
    REQUIRE(r1.points.size() == 1);
    REQUIRE(r2.points.size() == 2);
    CHECK(std::abs(r1.points[0].x) <= 1e-10);
    CHECK(std::abs(r1.points[0].y) <= 1e-10);
    const PointConfiguration sorted2 = r2.sorted();
    CHECK(std::abs(sorted2.points[1].x - Cx(1.0)) <= 1e-10);
    CHECK(std::abs(sorted2.points[1].y - Cx(2.0)) <= 1e-10);
  }
  SUBCASE("equal configurations give a plain datum") {
    const PointConfiguration z = config({{Cx(0.5), Cx(-0.5)}, {Cx(-1.0), Cx(0.25)}});
    const EnhancedDatum x = nested_hilbert_datum(z, z);
    CHECK(x.dims.cprime == 0);
    const auto [r1, r2] = nested_hilbert_points(x);
    CHECK(r1.points.size() == 2);
    CHECK(r2.points.size() == 2);
  }
  SUBCASE("containment and multiplicity are validated") {
    const PointConfiguration z1 = config({{Cx(9.0), Cx(9.0)}});
    const PointConfiguration z2 = config({{Cx(0.0), Cx(0.0)}, {Cx(1.0), Cx(2.0)}});
    CHECK_THROWS_AS(nested_hilbert_datum(z1, z2), ValidationError);

    PointConfiguration thick = z2;
    thick.points[0].mult = 2;
    CHECK_THROWS_AS(nested_hilbert_datum(config({}), thick), ValidationError);
  }
  SUBCASE("inverse requires rank-one framing") {
    const EnhancedDatum x = generate_stable({2, 2, 1}, 21, GenStyle::diagonal);
    CHECK_THROWS_AS(nested_hilbert_points(x), DimensionError);
  }
}
