#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "metgeo/error.hpp"
#include "metgeo/metric_core.hpp"
#include "oracles.hpp"

using namespace metgeo;

namespace {

DistanceMatrix three_point(double xz) { return DistanceMatrix({"x", "y", "z"}, {{0, 1, xz}, {1, 0, 1}, {xz, 1, 0}}); }

}  // namespace

TEST_CASE("metric axioms and quasi-metric constant") {
  CHECK(check_metric_axioms(three_point(2.0)).is_metric);
  const auto bad = check_metric_axioms(three_point(3.0));
  CHECK_FALSE(bad.is_metric);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0] == Triple{0, 1, 2});
  CHECK(quasi_metric_constant(three_point(2.0)) == doctest::Approx(2.0));
  CHECK(quasi_metric_constant(three_point(1.0)) == doctest::Approx(1.0));
  CHECK(quasi_metric_constant(three_point(3.0)) == doctest::Approx(3.0));
}

TEST_CASE("metric axioms agree with the brute-force oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  for (int t = 0; t < 500; ++t) {
    const auto d = DistanceMatrix::from_function(DistanceMatrix::default_labels(5),
                                                 [&](std::size_t, std::size_t) { return u(rng); });
    CHECK(check_metric_axioms(d).is_metric == oracle::triangle_brute(d, 1e-9));
  }
}

TEST_CASE("Ptolemy slack equals the labeled-inequality oracle") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    const auto d = oracle::random_metric(4, rng);
    CHECK(ptolemy_slack(d, {0, 1, 2, 3}) == doctest::Approx(oracle::labeled_ptolemy_min_slack(d, {0, 1, 2, 3})));
  }
}

TEST_CASE("ptolemy_check agrees with brute force on random 6-point metrics") {
  std::mt19937_64 rng(8);
  int failures = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto d = oracle::random_metric(6, rng);
    const auto r = ptolemy_check(d);
    CHECK(r.satisfied == oracle::ptolemy_brute(d, 1e-9));
    CHECK(r.quadruples_checked == 15);
    failures += !r.satisfied;
  }
  // The generator must produce both outcomes for the comparison to mean much.
  CHECK(failures > 50);
  CHECK(failures < 950);
}

TEST_CASE("Euclidean plane: concyclic points give equality") {
  std::vector<std::complex<double>> z;
  for (double a : {0.3, 1.4, 2.0, 4.5}) z.push_back(std::polar(2.0, a));
  const auto d = oracle::plane_metric(z);
  const auto r = ptolemy_check(d);
  CHECK(r.satisfied);
  CHECK(r.equality_count == 1);
  CHECK(std::abs(r.worst_slack) < 1e-12);

  z[3] = {0.1, 0.2};
  const auto strict = ptolemy_check(oracle::plane_metric(z));
  CHECK(strict.satisfied);
  CHECK(strict.equality_count == 0);
  CHECK(strict.worst_slack > 1e-3);
}

TEST_CASE("Ptolemy violation is located and n < 4 is vacuous") {
  // Two far pairs whose cross products beat the rest.
  const DistanceMatrix d({"a", "b", "c", "e"}, {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
  // 2*2 > 1*1 + 1*1
  const auto r = ptolemy_check(d);
  CHECK_FALSE(r.satisfied);
  CHECK(r.worst_slack == doctest::Approx(-2.0));
  CHECK(r.worst_quadruple == Quadruple{0, 1, 2, 3});

  const auto small = ptolemy_check(three_point(2.0));
  CHECK(small.satisfied);
  CHECK(std::isinf(small.worst_slack));
  CHECK(small.quadruples_checked == 0);
}

TEST_CASE("equality listing is truncated but counted, and thread count is irrelevant") {
  const auto d = DistanceMatrix::from_function(DistanceMatrix::default_labels(8),
                                               [](std::size_t, std::size_t) { return 1.0; });
  PtolemyOptions opt;
  opt.max_equalities = 3;
  const auto r = ptolemy_check(d, opt);
  CHECK(r.satisfied);
  CHECK(r.equality_count == 0);  // 1 < 1 + 1 everywhere

  std::mt19937_64 rng(9);
  const auto e = oracle::random_metric(14, rng);
  PtolemyOptions one, many;
  many.threads = 4;
  const auto a = ptolemy_check(e, one), b = ptolemy_check(e, many);
  CHECK(a.worst_slack == b.worst_slack);
  CHECK(a.worst_quadruple == b.worst_quadruple);
  CHECK(a.equality_quadruples == b.equality_quadruples);
  CHECK(a.quadruples_checked == 1001);
}

TEST_CASE("snowflake") {
  CHECK_THROWS_AS(snowflake(three_point(2.0), 0.0), DomainError);
  CHECK_THROWS_AS(snowflake(three_point(2.0), -1.0), DomainError);
  CHECK(snowflake(three_point(2.0), 2.0)(0, 2) == doctest::Approx(4.0));
  CHECK(snowflake_preserves_metric(0.5));
  CHECK_FALSE(snowflake_preserves_metric(1.5));

  // The square root of any metric is Ptolemaic.
  std::mt19937_64 rng(10);
  for (int t = 0; t < 300; ++t) {
    const auto d = snowflake(oracle::random_metric(6, rng), 0.5);
    CHECK(ptolemy_check(d, {1e-12}).satisfied);
    CHECK(check_metric_axioms(d).is_metric);
  }
}

TEST_CASE("involution") {
  const DistanceMatrix d({"a", "b", "c", "z"}, {{0, 1, 2, 1}, {1, 0, 1.5, 2}, {2, 1.5, 0, 4}, {1, 2, 4, 0}});
  const auto dz = involute(d, "z");
  CHECK(dz.labels() == std::vector<std::string>{"a", "b", "c"});
  CHECK(dz(0, 1) == doctest::Approx(1.0 / (1.0 * 2.0)));
  CHECK(dz(1, 2) == doctest::Approx(1.5 / (2.0 * 4.0)));
  CHECK(involute(d, std::size_t{3}) == dz);
  CHECK_THROWS_AS(involute(DistanceMatrix({"a", "b"}, {{0, 1}, {1, 0}}), std::size_t{0}), PreconditionError);
  CHECK_THROWS(involute(d, "q"));
}

TEST_CASE("involution preserves cross ratios of the remaining points") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto d = oracle::random_metric(6, rng);
    const std::vector<std::size_t> keep{0, 1, 2, 3, 4};
    CHECK(mobius_equivalent(d.submatrix(keep), involute(d, std::size_t{5})).equivalent);
  }
}

TEST_CASE("involution is a metric at every point exactly when Ptolemy holds (4 points)") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 2000; ++t) {
    const auto d = oracle::random_metric(4, rng);
    bool all_metric = true;
    for (std::size_t z = 0; z < 4; ++z) all_metric = all_metric && check_metric_axioms(involute(d, z), 0.0).is_metric;
    const double slack = oracle::labeled_ptolemy_min_slack(d, {0, 1, 2, 3});
    if (std::abs(slack) > 1e-9) CHECK(all_metric == (slack > 0));
  }
}

TEST_CASE("cross ratio and Möbius equivalence") {
  const DistanceMatrix d({"a", "b", "c", "e"}, {{0, 1, 2, 3}, {1, 0, 2.5, 2}, {2, 2.5, 0, 1.5}, {3, 2, 1.5, 0}});
  CHECK(cross_ratio(d, 0, 1, 2, 3) == doctest::Approx(1.0 * 1.5 / (2.0 * 2.0)));
  CHECK_THROWS_AS(cross_ratio(d, 0, 0, 2, 3), DomainError);

  CHECK(mobius_equivalent(d, d.scaled(3.7)).equivalent);
  const std::vector<std::size_t> perm{2, 0, 3, 1};
  CHECK(mobius_equivalent(d, d.submatrix(perm)).equivalent);

  const auto other = d.transformed([](double x) { return x * x; });
  const auto r = mobius_equivalent(d, other);
  CHECK_FALSE(r.equivalent);
  REQUIRE(r.witness);
  const auto& w = *r.witness;
  CHECK(w.first == doctest::Approx(cross_ratio(d, w.quadruple[0], w.quadruple[1], w.quadruple[2], w.quadruple[3])));

  const DistanceMatrix renamed({"a", "b", "c", "x"}, d.rows());
  CHECK_THROWS_AS(mobius_equivalent(d, renamed), StructuralError);
}

TEST_CASE("canonical four-point form") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 300; ++t) {
    const auto d = oracle::random_metric(4, rng);
    const auto c = canonical_four_point(d);
    CHECK(mobius_equivalent(d, c.normal_form).equivalent);
    const auto& nf = c.normal_form;
    const auto [w1, w2, w3, w4] = c.order;
    CHECK(nf(w1, w3) == doctest::Approx(1.0));
    CHECK(nf(w2, w4) == doctest::Approx(1.0));
    CHECK(nf(w1, w2) == doctest::Approx(c.a));
    CHECK(nf(w3, w4) == doctest::Approx(c.a));
    CHECK(nf(w2, w3) == doctest::Approx(c.b));
    CHECK(nf(w4, w1) == doctest::Approx(c.b));
    CHECK(c.a <= 1.0 + 1e-12);
    CHECK(c.b <= 1.0 + 1e-12);
    // Ptolemaic exactly when a^2 + b^2 >= 1.
    const bool ptolemaic = ptolemy_slack(d, {0, 1, 2, 3}) >= 0.0;
    if (std::abs(c.a * c.a + c.b * c.b - 1.0) > 1e-9) CHECK(ptolemaic == (c.a * c.a + c.b * c.b > 1.0));
  }
  CHECK_THROWS_AS(canonical_four_point(three_point(2.0)), StructuralError);
}
