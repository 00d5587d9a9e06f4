// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <Eigen/Geometry>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "metgeo/cube_lab.hpp"
#include "metgeo/embeddings.hpp"
#include "metgeo/families.hpp"
#include "metgeo/hyperbolic_models.hpp"
#include "metgeo/hyperbolicity.hpp"
#include "metgeo/metric_core.hpp"
#include "metgeo/metrization.hpp"
#include "oracles.hpp"

using namespace metgeo;
namespace hyp = metgeo::hyperbolic;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ------------------------------------------------------------------ 1

constexpr double kPtolemyTol = 1e-9;
constexpr double kEqualityTol = 1e-7;
// Normalized coplanarity determinant: at most kCoplanar counts as coplanar,
// at least kGeneric as generic. The relative slack of a nearly coplanar
// quadruple is quadratic in this determinant, so in between the 1e-7
// equality tolerance cannot tell the two apart.
constexpr double kCoplanar = 1e-9;
constexpr double kGeneric = 1e-3;

double coplanarity(const std::vector<hyp::Vector>& p) {
  if (p[0].size() == 2) return 0.0;
  Eigen::Matrix3d m;
  for (int k = 0; k < 3; ++k) m.col(k) = p[static_cast<std::size_t>(k + 1)] - p[0];
  return std::abs(m.determinant()) / (m.col(0).norm() * m.col(1).norm() * m.col(2).norm());
}

hyp::Vector random_ball_point(int dim, std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return hyp::random_unit_vector(dim, rng) * radius * std::pow(u(rng), 1.0 / dim);
}

Outcome criterion1() {
  std::mt19937_64 rng(101);
  std::size_t violations = 0, mismatches = 0, equalities = 0, total = 0, unclassified = 0;
  double worst = std::numeric_limits<double>::infinity();
  double diag_lemma = 0.0;

  auto record = [&](const hyp::IdealConfig& config) {
    PtolemyOptions opt;
    opt.tol = kPtolemyTol;
    const auto d = hyp::bourdon_metric(config).matrix;
    const auto r = ptolemy_check(d, opt);
    worst = std::min(worst, r.worst_slack);
    violations += !r.satisfied;
    ++total;
    const double largest = std::max({d(0, 1) * d(2, 3), d(0, 2) * d(1, 3), d(0, 3) * d(1, 2)});
    const bool equal = r.worst_slack <= kEqualityTol * largest;
    equalities += equal;
    const double c = coplanarity(config.ideal_points());
    if (c > kCoplanar && c < kGeneric) {
      ++unclassified;
      return;
    }
    mismatches += equal != (c <= kCoplanar);
  };

  // H^2: every quadruple is coplanar.
  for (int t = 0; t < 2500; ++t) {
    const auto c = hyp::random_ideal_config(2, 4, rng, 0.9);
    record(c);
  }
  // H^3 generic.
  for (int t = 0; t < 2500; ++t) {
    const auto c = hyp::random_ideal_config(3, 4, rng, 0.9);
    record(c);
  }
  // H^3, four points on a random circle of S^2.
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 2500; ++t) {
    const Eigen::Vector3d n = hyp::random_unit_vector(3, rng);
    const double h = 0.95 * (2 * u(rng) - 1);
    const Eigen::Vector3d e1 = n.unitOrthogonal(), e2 = n.cross(e1);
    std::vector<hyp::Vector> pts;
    for (int k = 0; k < 4; ++k) {
      const double phi = 2 * pi * u(rng);
      const Eigen::Vector3d p = h * n + std::sqrt(1 - h * h) * (std::cos(phi) * e1 + std::sin(phi) * e2);
      pts.push_back(hyp::Vector(p.normalized()));
    }
    record(hyp::IdealConfig(hyp::Model::PoincareBall, random_ball_point(3, rng, 0.9), pts));
  }
  // H^3, basepoint on both diagonals: symmetric frame at the origin moved by
  // the isometry sending the origin to a.
  for (int t = 0; t < 2500; ++t) {
    const hyp::Vector y1 = hyp::random_unit_vector(3, rng), y2 = hyp::random_unit_vector(3, rng);
    const hyp::Vector a = random_ball_point(3, rng, 0.9);
    std::vector<hyp::Vector> pts;
    for (const hyp::Vector& y : {y1, y2, hyp::Vector(-y1), hyp::Vector(-y2)}) {
      pts.push_back(hyp::ball_isometry_to_origin(-a, y).normalized());
    }
    const hyp::IdealConfig config(hyp::Model::PoincareBall, a, pts);
    record(config);
    const auto reference = hyp::bourdon_metric(config.with_basepoint(hyp::Vector::Zero(3))).matrix;
    diag_lemma = std::max(diag_lemma, std::abs(hyp::lemma_sincomp_check(config, reference)));
  }

  Outcome o;
  o.pass = violations == 0 && mismatches == 0 && worst >= -kPtolemyTol && total == 10000;
  o.detail = std::to_string(total) + " configs, violations " + std::to_string(violations) + ", min slack " +
             fmt("%.2e", worst) + ", equalities " + std::to_string(equalities) + ", equality/coplanarity mismatches " +
             std::to_string(mismatches) + ", unclassified near-coplanar " + std::to_string(unclassified) + ", sin-comparison defect on diagonals " + fmt("%.1e", diag_lemma);
  return o;
}

// ------------------------------------------------------------------ 2

Outcome criterion2() {
  double worst = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double theta = 0.05 + (pi - 0.05) * k / 100.0;
    const auto lim = hyp::bourdon_limit(theta, 20.0);
    worst = std::max(worst, std::abs(lim.values.back() - std::sin(theta / 2)));
  }
  return {worst <= 1e-6, "100 angles in (0.05, pi], t = 20, max defect " + fmt("%.2e", worst) + " (tol 1e-6)"};
}

// ------------------------------------------------------------------ 3

Outcome criterion3() {
  std::mt19937_64 rng(103);
  std::size_t violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  PtolemyOptions opt;
  opt.tol = 1e-12;
  for (int t = 0; t < 100000; ++t) {
    const auto r = ptolemy_check(snowflake(oracle::random_metric(4, rng), 0.5), opt);
    violations += !r.satisfied;
    worst = std::min(worst, r.worst_slack);
  }
  return {violations == 0, "100000 metrics, violations " + std::to_string(violations) + ", min slack " +
                               fmt("%.2e", worst) + " (tol 1e-12)"};
}

// ------------------------------------------------------------------ 4

Outcome criterion4() {
  std::mt19937_64 rng(104);
  std::uniform_int_distribution<std::size_t> size(3, 50);
  std::size_t failures = 0;
  double worst = 1.0, max_k = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const auto d = oracle::random_metric(size(rng), rng);
    const double K = quasi_metric_constant(d);
    const auto rho = K > 1.0 ? snowflake(d, std::log(2.0) / std::log(K)) : d;
    const auto q = QuasiMetricSpace::from(rho);
    max_k = std::max(max_k, q.K);
    const auto f = frink_bound_check(q);
    const auto chain = chain_metric(q);
    const bool exact_metric = check_metric_axioms(chain.ca, 0.0).is_metric;
    failures += !(f.holds && exact_metric && f.distortion <= 4.0);
    worst = std::max(worst, f.distortion);
  }
  return {failures == 0, "10000 quasi-metrics (n <= 50, max K " + fmt("%.15f", max_k) + "), max distortion " +
                             fmt("%.4f", worst) + " (bound 4), failures " + std::to_string(failures)};
}

// ------------------------------------------------------------------ 5

Outcome criterion5() {
  std::mt19937_64 rng(105);
  std::size_t agree = 0, ptolemaic = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto d = oracle::random_metric(5, rng);
    bool involutions_metric = true;
    for (std::size_t z = 0; z < 5; ++z) {
      involutions_metric = involutions_metric && check_metric_axioms(involute(d, z)).is_metric;
    }
    const bool ptolemy = ptolemy_check(d).satisfied;
    const bool brute = oracle::ptolemy_brute(d, 1e-9);
    agree += involutions_metric == ptolemy && ptolemy == brute;
    ptolemaic += ptolemy;
  }
  return {agree == 10000, "10000 five-point metrics (" + std::to_string(ptolemaic) +
                              " Ptolemaic), agreement " + fmt("%.2f", agree / 100.0) + "%"};
}

// ------------------------------------------------------------------ 6

Outcome criterion6() {
  const auto frame = hyp::bourdon_metric(hyp::orthogonal_frame(3)).matrix;
  const std::vector<Quadruple> coordinate_pairs{{0, 1, 2, 3}, {0, 1, 4, 5}, {2, 3, 4, 5}};
  const auto [wi, wj, wk, wl] = hyp::six_point_witness();
  bool pass = true;
  std::ostringstream detail;
  for (double a : {1.0, 1.01, 1.02, 1.05}) {
    const auto d = hyp::six_point_example(a, a, a);
    PtolemyOptions opt;
    opt.equality_tol = 1e-9;
    const auto r = ptolemy_check(d, opt);
    const bool metric = check_metric_axioms(d).is_metric;
    const bool equalities = r.equality_quadruples == coordinate_pairs;
    const auto m = mobius_equivalent(d, frame);
    const double cr = cross_ratio(d, wi, wj, wk, wl);
    const double cr_frame = cross_ratio(frame, wi, wj, wk, wl);
    const bool witness_ok = std::abs(cr - a * a) <= 1e-12 && std::abs(cr_frame - 1.0) <= 1e-12;
    const bool mobius_ok = (a == 1.0) == m.equivalent;
    pass = pass && metric && r.satisfied && equalities && witness_ok && mobius_ok;
    detail << "a=" << a << (metric && r.satisfied && equalities && witness_ok && mobius_ok ? " ok" : " FAILED")
           << " (cr " << fmt("%.12f", cr) << ") ";
  }
  detail << "; three coordinate-pair equalities, non-equivalent to the frame for a != 1";
  return {pass, detail.str()};
}

// ------------------------------------------------------------------ 7

Outcome criterion7() {
  namespace cube = metgeo::cube;
  const auto schedule = cube::n_schedule(3);
  const bool schedule_ok = schedule[0] == 2 && schedule[1] == 5 && schedule[2] == 26;

  // m = 2 on several Ptolemaic targets.
  std::mt19937_64 rng(107);
  std::vector<DistanceMatrix> targets{cube::euclidean_slice_target(5, 2), cube::euclidean_slice_target(5, 2, 7.5)};
  for (int t = 0; t < 40; ++t) {
    const cube::Slice s(5, 2);
    std::normal_distribution<double> g;
    std::vector<Eigen::Vector3d> x(s.size());
    for (auto& p : x) p = {g(rng), g(rng), g(rng)};
    targets.push_back(DistanceMatrix::from_function(s.labels(), [&](std::size_t i, std::size_t j) {
      return (x[i] - x[j]).norm();
    }));
  }
  // Square roots of metrics are Ptolemaic too.
  for (int t = 0; t < 20; ++t) {
    const auto base = oracle::random_metric(10, rng);
    targets.push_back(DistanceMatrix::from_function(cube::Slice(5, 2).labels(), [&](std::size_t i, std::size_t j) {
      return std::sqrt(base(i, j));
    }));
  }
  std::size_t m2_ok = 0;
  for (const auto& d : targets) {
    const cube::CubeTarget target(d, 2);
    double b = 0.0;
    const auto& s = target.slice();
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        if (cube::hamming_distance(s[i], s[j]) == 2) b = std::max(b, target.distance(s[i], s[j]));
    const auto brute = cube::find_short_diagonal(target, b, cube::Strategy::Brute);
    const auto ind = cube::find_short_diagonal(target, b, cube::Strategy::Inductive);
    const double bound = std::sqrt(2.0) * b * (1 + 1e-9);
    m2_ok += brute.length <= bound && ind.length <= bound && brute.length <= ind.length;
  }

  // m = 3: the full experiment on the 26-coordinate slice, timed.
  const auto start = std::chrono::steady_clock::now();
  const auto q8 = cube::snowflake_obstruction_experiment(
      0.8, {1, 2, 3}, [](int n, int m) { return cube::euclidean_slice_target(n, m); }, true);
  const double m3_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool rows_ok = true;
  for (const auto& r : q8.rows) {
    rows_ok = rows_ok && r.inductive && r.inductive->length <= r.bound * (1 + 1e-9) &&
              r.brute.length <= r.bound * (1 + 1e-9);
  }
  const auto q1 = cube::snowflake_obstruction_experiment(
      1.0, {1, 2, 3}, [](int n, int m) { return cube::euclidean_slice_target(n, m); }, false);

  std::ostringstream detail;
  detail << "n_schedule [2,5,26] " << (schedule_ok ? "exact" : "WRONG") << "; m=2: " << m2_ok << "/"
         << targets.size() << " targets within sqrt2*b for both strategies; m=3 inductive+brute "
         << fmt("%.1f", m3_seconds) << " s; slack sqrt(m)/m^q - 1/c^2 at q=0.8 (c=" << fmt("%.3f", q8.c) << "):";
  for (const auto& r : q8.rows) detail << ' ' << fmt("%.4f", r.slack);
  detail << (q8.slack_decreasing ? " decreasing" : " NOT decreasing") << ", q=1 "
         << (q1.slack_decreasing ? "decreasing" : "NOT decreasing") << "; q<=1/2 itself needs m->infinity"
         << " (violation predicted at m ~ " << fmt("%.0f", q8.violation_m.value_or(0)) << ")";
  const bool pass = schedule_ok && m2_ok == targets.size() && rows_ok && m3_seconds < 600 && q8.slack_decreasing &&
                    q1.slack_decreasing;
  return {pass, detail.str()};
}

// ------------------------------------------------------------------ 8

Outcome criterion8() {
  namespace embed = metgeo::embed;
  std::mt19937_64 rng(108);
  const auto pts = embed::sample_l1_ball(3, 100, rng);
  const auto r = embed::analyze_composite(pts, 512);

  double round_trip = 0.0;
  std::vector<embed::Vector> sphere;
  for (const auto& x : embed::sample_sphere(3, 10000, rng)) {
    round_trip = std::max(round_trip, (embed::inverse_stereographic(embed::stereographic(x), 3).coords() - x.coords()).norm());
    if (sphere.size() < 200) sphere.push_back(x.coords());
  }
  const auto defect = embed::mobius_check_map(
      [](const embed::Vector& x) { return embed::Vector(x.tail(x.size() - 1) / (1.0 - x[0])); }, sphere, 1000, 8);

  const bool pass = r.exponent >= 0.47 && r.exponent <= 0.53 && r.ptolemy.satisfied && round_trip <= 1e-12 &&
                    defect.max_defect <= 1e-9 && defect.quadruples_tested == 1000;
  return {pass, "exponent " + fmt("%.4f", r.exponent) + " (target [0.47, 0.53]), image Ptolemy " +
                    (r.ptolemy.satisfied ? "passes" : "FAILS") + " (min slack " + fmt("%.2e", r.ptolemy.worst_slack) +
                    "), round trip " + fmt("%.1e", round_trip) + ", cross-ratio defect " +
                    fmt("%.1e", defect.max_defect) + " on 1000 quadruples"};
}

// ------------------------------------------------------------------ 9

Outcome criterion9() {
  std::mt19937_64 rng(109);
  double tree_delta = 0.0;
  for (int t = 0; t < 200; ++t) {
    tree_delta = std::max(tree_delta, delta_global(families::random_tree_metric(4 + t % 30, rng)).delta);
  }
  std::size_t doubling_failures = 0, k_failures = 0;
  double identity = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto d = oracle::random_metric(5 + t % 11, rng);
    const auto s = delta_global(d);
    doubling_failures += !s.doubling_bound_holds;
    for (std::size_t o = 0; o < d.size(); ++o) {
      k_failures += boundary_quasimetric(d, o).K > std::exp(s.delta_per_basepoint[o]) + 1e-9;
      identity = std::max(identity, basepoint_change_identity_check(d, o, (o + 1) % d.size()));
    }
  }
  const bool pass = tree_delta <= 1e-12 && doubling_failures == 0 && k_failures == 0 && identity <= 1e-12;
  return {pass, "tree delta max " + fmt("%.1e", tree_delta) + ", 2-delta basepoint failures " +
                    std::to_string(doubling_failures) + "/1000, K > e^delta " + std::to_string(k_failures) +
                    ", identity defect " + fmt("%.1e", identity)};
}

// ------------------------------------------------------------------ 10

Outcome criterion10() {
  const std::vector<int> sizes{25, 50, 100, 200};
  std::ostringstream detail;
  bool pass = true;
  for (double s : {2.0, 4.0}) {
    std::vector<double> c;
    for (int n : sizes) c.push_back(chain_metric(snowflake(families::kovalev_segment(n), s)).distortion);
    const double peak = *std::max_element(c.begin(), c.end());
    const bool bounded = peak <= 1.05 * c.back();
    pass = pass && bounded;
    detail << "Kovalev s=" << s << ":";
    for (double v : c) detail << ' ' << fmt("%.4f", v);
    detail << (bounded ? " (bounded)" : " (NOT bounded)") << "; ";
  }
  // Path graph: ca(rho^s) is the unit-step metric, so the distortion is n^{s-1}.
  for (double s : {1.5, 2.0}) {
    std::vector<double> c;
    bool law = true;
    for (int n : sizes) {
      c.push_back(chain_metric(snowflake(families::path_graph(n), s)).distortion);
      law = law && std::abs(c.back() - std::pow(n, s - 1)) <= 1e-9 * c.back();
    }
    bool increasing = true;
    for (std::size_t k = 1; k < c.size(); ++k) increasing = increasing && c[k] > c[k - 1];
    pass = pass && law && increasing;
    detail << "path s=" << s << ":";
    for (double v : c) detail << ' ' << fmt("%.3f", v);
    detail << (law && increasing ? " (= n^(s-1), unbounded)" : " (UNEXPECTED)") << "; ";
  }
  detail << "growth at s=1.5 is n^0.5, linear only from s=2";
  return {pass, detail.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Ptolemy on CAT(-1) model boundaries", 60, criterion1},
      {2, "Bourdon limit formula", 10, criterion2},
      {3, "square-root metrics are Ptolemaic", 60, criterion3},
      {4, "Frink bound for 2-quasi-metrics", 120, criterion4},
      {5, "involution metric <=> Ptolemy", 60, criterion5},
      {6, "six-point example", 10, criterion6},
      {7, "cube schedule, short diagonals, obstruction trend", 600, criterion7},
      {8, "snowflake of the l1 ball onto a sphere", 60, criterion8},
      {9, "hyperbolicity suite", 60, criterion9},
      {10, "Kovalev segment vs path graph", 120, criterion10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("%s [%2d] %s: %s [%.1f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                o.detail.c_str(), seconds, c.budget_seconds, in_time ? "" : ", OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
