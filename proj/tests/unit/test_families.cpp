#include <doctest.h>

#include <cmath>
#include <random>

#include "metgeo/families.hpp"
#include "metgeo/metric_core.hpp"

using namespace metgeo;

TEST_CASE("Kovalev segment and path") {
  const auto k = families::kovalev_segment(100);
  CHECK(k.size() == 101);
  CHECK(k(0, 2) == doctest::Approx(std::log(3.0)));
  CHECK(check_metric_axioms(k).is_metric);
  const auto p = families::path_graph(5);
  CHECK(p(1, 4) == 3.0);
}

TEST_CASE("cycle, star and ultrametric") {
  const auto c = families::cycle_graph(6);
  CHECK(c(0, 3) == 3.0);
  CHECK(c(1, 5) == 2.0);
  const auto s = families::star_tree({1, 2, 3});
  CHECK(s(0, 2) == 2.0);
  CHECK(s(1, 3) == 4.0);
  const auto u = families::binary_ultrametric(3);
  CHECK(u.size() == 8);
  CHECK(u(0, 1) == 2.0);
  CHECK(u(0, 7) == 8.0);
  CHECK(quasi_metric_constant(u) == 1.0);
}

TEST_CASE("l1 lattice nets") {
  const std::size_t sizes[] = {63, 129, 231, 377};
  for (int k = 3; k <= 6; ++k) {
    const auto d = families::l1_ball_lattice(3, k);
    CHECK(d.size() == sizes[k - 3]);
    CHECK(d.max_entry() == doctest::Approx(2.0));
    CHECK(d.min_off_diagonal() == doctest::Approx(1.0 / k));
  }
}

TEST_CASE("random generators produce metrics") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    CHECK(check_metric_axioms(families::random_euclidean(10, 3, rng)).is_metric);
    CHECK(check_metric_axioms(families::random_bounded_metric(10, rng)).is_metric);
    CHECK(check_metric_axioms(families::random_tree_metric(10, rng)).is_metric);
  }
}
