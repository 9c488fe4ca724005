#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adhm/datum.hpp"
#include "adhm/json_io.hpp"
#include "adhm/numeric.hpp"
#include "adhm/types.hpp"

#include <cmath>
#include <complex>
#include <set>
#include <string>

using namespace adhm;

namespace {

EnhancedDatum scalar_datum(double a, double b, double i, double j, double ap, double bp,
                           double f, double g) {
  EnhancedDatum x = EnhancedDatum::zeros({1, 1, 1});
  x.A(0, 0) = a;
  x.B(0, 0) = b;
  x.I(0, 0) = i;
  x.J(0, 0) = j;
  x.Aprime(0, 0) = ap;
  x.Bprime(0, 0) = bp;
  x.F(0, 0) = f;
  x.G(0, 0) = g;
  return x;
}

GaugeElement random_gauge(const Dims& d, Rng& rng) {
  GaugeElement g;
  g.h = Mat::Identity(d.c, d.c) + 0.3 * rng.gaussian_matrix(d.c, d.c);
  g.hprime = Mat::Identity(d.cprime, d.cprime) + 0.3 * rng.gaussian_matrix(d.cprime, d.cprime);
  return g;
}

}  // namespace

TEST_CASE("residual names are fixed and ordered") {
  REQUIRE(kResidualNames.size() == 9);
  CHECK(kResidualNames[0] == std::string("[A,B]+IJ"));
  CHECK(kResidualNames[1] == std::string("[A',B']"));
  CHECK(kResidualNames[2] == std::string("AF-FA'"));
  CHECK(kResidualNames[3] == std::string("BF-FB'"));
  CHECK(kResidualNames[4] == std::string("JF"));
  CHECK(kResidualNames[5] == std::string("GI"));
  CHECK(kResidualNames[6] == std::string("FG"));
  CHECK(kResidualNames[7] == std::string("GA-A'G"));
  CHECK(kResidualNames[8] == std::string("GB-B'G"));
}

TEST_CASE("scalar residuals match hand arithmetic") {
  // All-integer scalars keep every operation exact in floating point.
  const EnhancedDatum x = scalar_datum(1, 2, 3, 4, 5, 6, 7, 8);
  const ResidualReport rep = residuals(x);
  CHECK(rep.values[0] == 12.0);  // 0 + 3*4
  CHECK(rep.values[1] == 0.0);   // scalars commute
  CHECK(rep.values[2] == 28.0);  // |7 - 35|
  CHECK(rep.values[3] == 28.0);  // |14 - 42|
  CHECK(rep.values[4] == 28.0);  // 4*7
  CHECK(rep.values[5] == 24.0);  // 8*3
  CHECK(rep.values[6] == 56.0);  // 7*8
  CHECK(rep.values[7] == 32.0);  // |8 - 40|
  CHECK(rep.values[8] == 32.0);  // |16 - 48|
  CHECK(rep.max_value == 56.0);
  CHECK(rep.scale == 205.0);
  CHECK_FALSE(is_valid(x));
}

TEST_CASE("known solution of the equations has all residuals exactly zero") {
  EnhancedDatum x = EnhancedDatum::zeros({1, 2, 1});
  x.A(1, 1) = 1.0;
  x.B(1, 1) = 2.0;
  x.I(0, 0) = 1.0;
  x.I(1, 0) = 1.0;
  x.F(0, 0) = 1.0;
  const ResidualReport rep = residuals(x);
  CHECK(rep.max_value == 0.0);
  CHECK(is_valid(x));
}

TEST_CASE("gauge action preserves solutions") {
  Rng rng(42);
  for (const Dims d : {Dims{1, 2, 1}, Dims{2, 3, 1}, Dims{3, 2, 1}}) {
    const EnhancedDatum x = generate_stable(d, rng.bits(), GenStyle::diagonal);
    const GaugeElement g = random_gauge(d, rng);
    const EnhancedDatum y = act(g, x);
    const ResidualReport rep = residuals(y);
    CHECK(rep.max_value <= 1e-9 * rep.scale);
  }
}

TEST_CASE("action composes and identity acts trivially") {
  Rng rng(7);
  const Dims d{2, 2, 1};
  const EnhancedDatum x = generate_stable(d, 11, GenStyle::diagonal);

  const EnhancedDatum same = act(GaugeElement::identity(d), x);
  CHECK((same.A - x.A).norm() == 0.0);
  CHECK((same.I - x.I).norm() == 0.0);
  CHECK((same.F - x.F).norm() == 0.0);

  const GaugeElement g1 = random_gauge(d, rng);
  const GaugeElement g2 = random_gauge(d, rng);
  const EnhancedDatum via_steps = act(g2, act(g1, x));
  const EnhancedDatum via_product = act(compose(g2, g1), x);
  const double scale = 1.0 + x.frobenius_sq();
  CHECK((via_steps.A - via_product.A).norm() <= 1e-10 * scale);
  CHECK((via_steps.B - via_product.B).norm() <= 1e-10 * scale);
  CHECK((via_steps.I - via_product.I).norm() <= 1e-10 * scale);
  CHECK((via_steps.J - via_product.J).norm() <= 1e-10 * scale);
  CHECK((via_steps.F - via_product.F).norm() <= 1e-10 * scale);
  CHECK((via_steps.G - via_product.G).norm() <= 1e-10 * scale);
}

TEST_CASE("generation styles produce the advertised structure") {
  SUBCASE("diagonal: exactly-zero residuals, G = 0") {
    const EnhancedDatum x = generate_stable({2, 3, 1}, 5, GenStyle::diagonal);
    CHECK(residuals(x).max_value == 0.0);
    CHECK(x.G.norm() == 0.0);
    CHECK(x.J.norm() == 0.0);
  }
  SUBCASE("jordan: non-diagonalizable A with a repeated eigenvalue") {
    const EnhancedDatum x = generate_stable({1, 2, 1}, 5, GenStyle::jordan);
    CHECK(x.A(0, 0) == x.A(1, 1));
    CHECK(x.A(0, 1) == Cx(1.0));
    CHECK(x.A(1, 0) == Cx(0.0));
    CHECK(residuals(x).max_value == 0.0);
  }
  SUBCASE("lifted: valid output at (2,3,1)") {
    const EnhancedDatum x = generate_stable({2, 3, 1}, 5, GenStyle::lifted);
    const ResidualReport rep = residuals(x);
    CHECK(rep.max_value <= 1e-12 * rep.scale);
  }
  SUBCASE("style/dimension guards") {
    const Dims narrow{1, 1, 2};
    const Dims wide{1, 3, 1};
    const Dims tight{1, 1, 1};
    CHECK_THROWS_AS(generate_stable(narrow, 0, GenStyle::diagonal), DimensionError);
    CHECK_THROWS_AS(generate_stable(wide, 0, GenStyle::jordan), DimensionError);
    CHECK_THROWS_AS(generate_stable(tight, 0, GenStyle::lifted), DimensionError);
  }
}

TEST_CASE("generation is deterministic in the seed") {
  const EnhancedDatum a = generate_stable({1, 2, 1}, 123, GenStyle::diagonal);
  const EnhancedDatum b = generate_stable({1, 2, 1}, 123, GenStyle::diagonal);
  const EnhancedDatum c = generate_stable({1, 2, 1}, 124, GenStyle::diagonal);
  CHECK(to_json_text(datum_to_json(a)) == to_json_text(datum_to_json(b)));
  CHECK(to_json_text(datum_to_json(a)) != to_json_text(datum_to_json(c)));
}

TEST_CASE("json round trip is bit-faithful") {
  const EnhancedDatum x = generate_stable({2, 2, 1}, 9, GenStyle::lifted);
  const std::string text = to_json_text(datum_to_json(x));
  const EnhancedDatum y = datum_from_json_text(text);
  CHECK((x.A - y.A).norm() == 0.0);
  CHECK((x.B - y.B).norm() == 0.0);
  CHECK((x.I - y.I).norm() == 0.0);
  CHECK((x.J - y.J).norm() == 0.0);
  CHECK((x.Aprime - y.Aprime).norm() == 0.0);
  CHECK((x.Bprime - y.Bprime).norm() == 0.0);
  CHECK((x.F - y.F).norm() == 0.0);
  CHECK((x.G - y.G).norm() == 0.0);
}

TEST_CASE("json reader tolerates optional parts and rejects malformed input") {
  SUBCASE("G may be omitted") {
    Json j = datum_to_json(generate_stable({1, 1, 1}, 3, GenStyle::diagonal));
    j["matrices"].erase("G");
    const EnhancedDatum x = datum_from_json(j);
    CHECK(x.G.rows() == 1);
    CHECK(x.G.norm() == 0.0);
  }
  SUBCASE("unknown keys are ignored") {
    Json j = datum_to_json(generate_stable({1, 1, 1}, 3, GenStyle::diagonal));
    j["comment"] = "extra";
    j["matrices"]["Z"] = Json::array();
    CHECK_NOTHROW(datum_from_json(j));
  }
  SUBCASE("plain data omit the primed side") {
    Json j;
    j["dims"] = {{"r", 1}, {"c", 1}, {"cprime", 0}};
    j["matrices"] = {{"A", {{{1.0, 0.0}}}},
                     {"B", {{{2.0, 0.0}}}},
                     {"I", {{{3.0, 0.0}}}},
                     {"J", {{{0.0, 0.0}}}}};
    const EnhancedDatum x = datum_from_json(j);
    CHECK(x.dims.cprime == 0);
    CHECK(x.F.cols() == 0);
  }
  SUBCASE("missing required matrix") {
    Json j = datum_to_json(generate_stable({1, 1, 1}, 3, GenStyle::diagonal));
    j["matrices"].erase("A");
    CHECK_THROWS_AS(datum_from_json(j), JsonError);
  }
  SUBCASE("shape mismatch against declared dims") {
    Json j = datum_to_json(generate_stable({1, 2, 1}, 3, GenStyle::diagonal));
    j["dims"]["c"] = 3;
    CHECK_THROWS_AS(datum_from_json(j), JsonError);
  }
  SUBCASE("parse errors carry line and column") {
    try {
      parse_json_text("{\n  \"dims\": [,]\n}\n");
      CHECK(false);
    } catch (const JsonError& e) {
      CHECK(e.line == 2);
      CHECK(e.column >= 1);
    }
  }
}

TEST_CASE("rank decisions report thresholds, gaps, and ambiguity") {
  SUBCASE("clean rank deficiency gives an infinite gap") {
    Mat m = Mat::Zero(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = 1e-5;
    const RankResult r = numerical_rank(m);
    CHECK(r.rank == 2);
    CHECK(std::isinf(r.gap_ratio));
    CHECK_FALSE(r.ambiguous);
  }
  SUBCASE("singular value hovering near the threshold is flagged") {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 3e-9;  // threshold is 1e-9 * 1 * 2 = 2e-9
    const RankResult r = numerical_rank(m);
    CHECK(r.rank == 2);
    CHECK(r.ambiguous);
  }
  SUBCASE("zero matrix has rank zero") {
    const RankResult r = numerical_rank(Mat::Zero(2, 3));
    CHECK(r.rank == 0);
    CHECK(std::isinf(r.gap_ratio));
  }
}

TEST_CASE("vectorization and kronecker products agree") {
  Rng rng(17);
  const Mat p = rng.gaussian_matrix(3, 2);
  const Mat x = rng.gaussian_matrix(2, 4);
  const Mat q = rng.gaussian_matrix(4, 3);
  const Vec lhs = vec(p * x * q);
  const Vec rhs = kron(q.transpose(), p) * vec(x);
  CHECK((lhs - rhs).norm() <= 1e-12);
  CHECK((unvec(vec(x), 2, 4) - x).norm() == 0.0);
}

TEST_CASE("characteristic polynomial coefficients are exact on diagonal input") {
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  const std::vector<Cx> coeffs = charpoly_coeffs(a);  // z^2 + c[0] z + c[1]
  REQUIRE(coeffs.size() == 2);
  CHECK(std::abs(coeffs[0] - Cx(-3.0)) <= 1e-12);
  CHECK(std::abs(coeffs[1] - Cx(2.0)) <= 1e-12);
}

TEST_CASE("gauge fingerprints are conjugation invariants") {
  Rng rng(23);
  ADHMDatum x = ADHMDatum::zeros(1, 3);
  x.A = rng.gaussian_matrix(3, 3);
  x.B = rng.gaussian_matrix(3, 3);
  const Mat h = Mat::Identity(3, 3) + 0.2 * rng.gaussian_matrix(3, 3);
  const Mat hinv = h.inverse();
  ADHMDatum y = x;
  y.A = h * x.A * hinv;
  y.B = h * x.B * hinv;
  CHECK(fingerprint_distance(gauge_fingerprint(x), gauge_fingerprint(y)) <= 1e-8);
  // Distinct data separate.
  ADHMDatum z = x;
  z.A = 2.0 * x.A;
  CHECK(fingerprint_distance(gauge_fingerprint(x), gauge_fingerprint(z)) > 1e-3);
}

TEST_CASE("seeded rng utilities behave as documented") {
  SUBCASE("reproducibility and seed mixing") {
    Rng r1(99), r2(99), r3(100);
    CHECK(r1.bits() == r2.bits());
    CHECK(r1.unit() == r2.unit());
    CHECK(mix_seed(1, 2) != mix_seed(1, 3));
    CHECK(mix_seed(1, 2) != mix_seed(2, 2));
  }
  SUBCASE("distinct draws respect the separation floor") {
    Rng rng(5);
    const std::vector<Cx> pts = distinct_complex(rng, 6);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        CHECK(std::abs(pts[i] - pts[j]) >= 1e-3);
      }
    }
  }
  SUBCASE("annulus samples stay inside the annulus") {
    Rng rng(6);
    for (int k = 0; k < 64; ++k) {
      const double m = std::abs(rng.annulus(0.5, 1.5));
      CHECK(m >= 0.5);
      CHECK(m <= 1.5);
    }
  }
}

TEST_CASE("dimension validation rejects nonsense") {
  const Dims zero_r{0, 1, 1};
  const Dims neg_c{1, -1, 1};
  const Dims neg_cp{1, 1, -1};
  const Dims plain{1, 1, 0};
  const Dims empty_v{1, 0, 0};  // empty quotients are representable
  CHECK_THROWS_AS(zero_r.validate(), DimensionError);
  CHECK_THROWS_AS(neg_c.validate(), DimensionError);
  CHECK_THROWS_AS(neg_cp.validate(), DimensionError);
  CHECK_NOTHROW(plain.validate());
  CHECK_NOTHROW(empty_v.validate());

  EnhancedDatum x = EnhancedDatum::zeros({1, 2, 1});
  x.F = Mat::Zero(1, 2);
  CHECK_THROWS_AS(x.validate_shapes(), DimensionError);
}
