#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adhm/datum.hpp"
#include "adhm/deformation.hpp"
#include "adhm/numeric.hpp"
#include "adhm/stability.hpp"
#include "adhm/types.hpp"

#include <cmath>

using namespace adhm;

TEST_CASE("term dimensions follow the block formulas") {
  const EnhancedDatum x = generate_stable({1, 2, 1}, 1, GenStyle::diagonal);
  SUBCASE("reduced at (1,2,1)") {
    const DeformationComplex k = build_complex(x, ComplexVariant::reduced);
    CHECK(k.term_dims[0] == 5);
    CHECK(k.term_dims[1] == 16);
    CHECK(k.term_dims[2] == 9);
    CHECK(k.term_dims[3] == 2);
    CHECK(k.D0.rows() == 16);
    CHECK(k.D0.cols() == 5);
    CHECK(k.D1.rows() == 9);
    CHECK(k.D1.cols() == 16);
    CHECK(k.D2.rows() == 2);
    CHECK(k.D2.cols() == 9);
  }
  SUBCASE("general at (1,2,1) keeps the primed endomorphism block") {
    const DeformationComplex k = build_complex(x, ComplexVariant::general);
    CHECK(k.term_dims[0] == 5);
    CHECK(k.term_dims[1] == 16);
    CHECK(k.term_dims[2] == 10);
    CHECK(k.term_dims[3] == 2);
  }
  SUBCASE("general at (2,3,1)") {
    const EnhancedDatum y = generate_stable({2, 3, 1}, 1, GenStyle::diagonal);
    const DeformationComplex k = build_complex(y, ComplexVariant::general);
    CHECK(k.term_dims[0] == 10);
    CHECK(k.term_dims[1] == 35);
    CHECK(k.term_dims[2] == 18);
    CHECK(k.term_dims[3] == 3);
  }
  SUBCASE("reduced variant needs a one-dimensional primed space") {
    const EnhancedDatum y = EnhancedDatum::zeros({1, 3, 2});
    CHECK_THROWS_AS(build_complex(y, ComplexVariant::reduced), DimensionError);
  }
}

TEST_CASE("differentials compose to zero on solution data") {
  for (std::uint64_t seed : {3ULL, 4ULL}) {
    for (const Dims d : {Dims{1, 2, 1}, Dims{2, 3, 1}, Dims{3, 2, 1}}) {
      const EnhancedDatum x = generate_stable(d, seed, GenStyle::diagonal);
      const double scale = 1.0 + x.frobenius_sq();
      for (const ComplexVariant v : {ComplexVariant::general, ComplexVariant::reduced}) {
        const DeformationComplex k = build_complex(x, v);
        CHECK((k.D1 * k.D0).norm() <= 1e-12 * scale * scale);
        CHECK((k.D2 * k.D1).norm() <= 1e-12 * scale * scale);
      }
    }
  }
}

TEST_CASE("cohomology of stable data matches the dimension formula") {
  SUBCASE("reduced (1,2,1) gives (0,4,0,0)") {
    const EnhancedDatum x = generate_stable({1, 2, 1}, 5, GenStyle::diagonal);
    const CohomologyReport rep = cohomology_dims(build_complex(x, ComplexVariant::reduced));
    CHECK(rep.h[0] == 0);
    CHECK(rep.h[1] == 4);
    CHECK(rep.h[2] == 0);
    CHECK(rep.h[3] == 0);
    CHECK(rep.euler == 4);
    CHECK_FALSE(rep.ambiguous);
  }
  SUBCASE("reduced (2,3,1) gives (0,11,0,0)") {
    const EnhancedDatum x = generate_stable({2, 3, 1}, 6, GenStyle::lifted);
    const CohomologyReport rep = cohomology_dims(build_complex(x, ComplexVariant::reduced));
    CHECK(rep.h[0] == 0);
    CHECK(rep.h[1] == 11);
    CHECK(rep.h[2] == 0);
    CHECK(rep.h[3] == 0);
  }
  SUBCASE("reduced (1,1,1) gives (0,2,0,0)") {
    const EnhancedDatum x = generate_stable({1, 1, 1}, 7, GenStyle::diagonal);
    const CohomologyReport rep = cohomology_dims(build_complex(x, ComplexVariant::reduced));
    CHECK(rep.h[1] == 2);
  }
  SUBCASE("general variant still has vanishing ends") {
    const EnhancedDatum x = generate_stable({2, 2, 1}, 8, GenStyle::diagonal);
    const CohomologyReport rep = cohomology_dims(build_complex(x, ComplexVariant::general));
    CHECK(rep.h[0] == 0);
    CHECK(rep.h[3] == 0);
    // The declared Euler characteristic is r(2c - c') for the general variant.
    CHECK(rep.euler == 2 * (2 * 2 - 1));
    CHECK(rep.euler == -rep.h[0] + rep.h[1] - rep.h[2] + rep.h[3]);
  }
}

TEST_CASE("euler characteristic equals the alternating term sum") {
  // Rank-nullity makes this an exact integer identity whatever the ranks are.
  Rng rng(9);
  for (int t = 0; t < 4; ++t) {
    EnhancedDatum x = EnhancedDatum::zeros({1, 2, 1});
    x.A = rng.gaussian_matrix(2, 2);
    x.B = rng.gaussian_matrix(2, 2);
    x.I = rng.gaussian_matrix(2, 1);
    x.J = rng.gaussian_matrix(1, 2);
    x.Aprime = rng.gaussian_matrix(1, 1);
    x.Bprime = rng.gaussian_matrix(1, 1);
    x.F = rng.gaussian_matrix(2, 1);
    x.G = rng.gaussian_matrix(1, 2);
    for (const ComplexVariant v : {ComplexVariant::general, ComplexVariant::reduced}) {
      const DeformationComplex k = build_complex(x, v);
      const CohomologyReport rep = cohomology_dims(k);
      const long long terms = -static_cast<long long>(k.term_dims[0]) + k.term_dims[1] -
                              k.term_dims[2] + k.term_dims[3];
      CHECK(rep.euler == terms);
    }
  }
}

TEST_CASE("tangent decomposition at a stable point") {
  const EnhancedDatum x = generate_stable({1, 2, 1}, 11, GenStyle::diagonal);
  const TangentBasis basis = tangent_basis(x);
  const DeformationComplex k = build_complex(x, ComplexVariant::reduced);

  SUBCASE("gauge directions have full rank five") {
    CHECK(basis.gauge_image.cols() == 5);  // C^0 = 5, h^0 = 0
    CHECK(basis.kernel.cols() == 4 + 5);   // h^1 + rank D0
    CHECK(basis.h1.cols() == 4);
    CHECK_FALSE(basis.ambiguous);
  }
  SUBCASE("kernel columns satisfy the linearized equations") {
    for (int c = 0; c < basis.kernel.cols(); ++c) {
      CHECK((k.D1 * basis.kernel.col(c)).norm() <= 1e-9);
    }
  }
  SUBCASE("bases are orthonormal and compatible") {
    const int g = static_cast<int>(basis.gauge_image.cols());
    CHECK((basis.gauge_image.adjoint() * basis.gauge_image - Mat::Identity(g, g)).norm() <=
          1e-10);
    const int hh = static_cast<int>(basis.h1.cols());
    CHECK((basis.h1.adjoint() * basis.h1 - Mat::Identity(hh, hh)).norm() <= 1e-10);
    CHECK((basis.gauge_image.adjoint() * basis.h1).norm() <= 1e-10);
  }
  SUBCASE("gauge generators map onto the gauge image") {
    CHECK((k.D0 * basis.gauge_generators - basis.gauge_image).norm() <= 1e-9);
  }
  SUBCASE("preconditions are enforced") {
    EnhancedDatum unstable = x;
    unstable.I.setZero();
    CHECK_THROWS_AS(tangent_basis(unstable), ValidationError);
  }
}

TEST_CASE("pack and unpack are mutually inverse") {
  Rng rng(13);
  const Dims d{2, 3, 1};
  const int c1 = 2 * 9 + 2 * 1 + 2 * 2 * 3 + 3 * 1;
  const Vec v = [&] {
    Vec w(c1);
    for (int i = 0; i < c1; ++i) w(i) = rng.gaussian();
    return w;
  }();
  const TangentBlocks t = unpack_tangent(d, v);
  CHECK(t.a.rows() == 3);
  CHECK(t.i.cols() == 2);
  CHECK(t.j.rows() == 2);
  CHECK(t.f.cols() == 1);
  CHECK((pack_tangent(t) - v).norm() == 0.0);
}

TEST_CASE("stabilizer dimension detects non-free points") {
  SUBCASE("zero datum is stabilized by the whole group") {
    const EnhancedDatum x = EnhancedDatum::zeros({1, 1, 1});
    CHECK(stabilizer_dim(x) == 2);  // dim C^0 = 1 + 1
  }
  SUBCASE("stable data are free") {
    const EnhancedDatum x = generate_stable({2, 2, 1}, 17, GenStyle::diagonal);
    CHECK(stabilizer_dim(x) == 0);
  }
  SUBCASE("direct sum with a zero block is stabilized") {
    // Stable (1,1,1) datum padded by a zero V-summand: gauge acting on the
    // padding commutes with everything.
    const EnhancedDatum small = generate_stable({1, 1, 1}, 19, GenStyle::diagonal);
    EnhancedDatum padded = EnhancedDatum::zeros({1, 2, 1});
    padded.A(0, 0) = small.A(0, 0);
    padded.B(0, 0) = small.B(0, 0);
    padded.I(0, 0) = small.I(0, 0);
    padded.F(0, 0) = small.F(0, 0);
    padded.Aprime = small.Aprime;
    padded.Bprime = small.Bprime;
    CHECK(stabilizer_dim(padded) >= 1);
  }
}
