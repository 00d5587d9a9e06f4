#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "metgeo/distance_matrix.hpp"
#include "metgeo/metric_core.hpp"

namespace metgeo::embed {

using Vector = Eigen::VectorXd;

/// Point of the l1 unit ball (finite-dimensional truncation).
class L1Point {
 public:
  /// Throws DomainError if the l1 norm exceeds 1 + 1e-12 or a coordinate is
  /// not finite.
  explicit L1Point(Vector coords);
  const Vector& coords() const { return coords_; }
  int dimension() const { return static_cast<int>(coords_.size()); }
  double norm() const { return coords_.lpNorm<1>(); }

 private:
  Vector coords_;
};

double l1_distance(const L1Point& a, const L1Point& b);

/// Unit vector in R^{1+N}; coordinate 0 is the distinguished axis x0.
class SpherePoint {
 public:
  /// Throws DomainError unless | |x| - 1 | <= 1e-12.
  explicit SpherePoint(Vector coords);
  const Vector& coords() const { return coords_; }
  bool is_north_pole() const;

 private:
  Vector coords_;
};

/// R^n with a point at infinity (empty `finite`).
struct ExtendedPoint {
  std::optional<Vector> finite;
  static ExtendedPoint infinity() { return {}; }
  bool is_infinite() const { return !finite; }
};

/// h(t) in R^N: coordinate k is sqrt(w) times the covered fraction of the
/// k-th cell of width w = 2/N on [-1, 1], minus h(0). Grid points give
/// |h(t) - h(s)|^2 = |t - s| exactly; partial cells only shrink it, by at
/// most a factor 2 once |t - s| >= w. Requires N >= 2, t in [-1, 1].
Vector line_snowflake(double t, int resolution);

/// (h(z_1), ..., h(z_d)) concatenated, in R^{dN}.
Vector ball_snowflake(const L1Point& z, int resolution);

struct SnowflakeConstant {
  /// max over pairs of max(r, 1/r) with r = |g g'|^2 / |z z'|_1.
  double c = 1.0;
  double min_ratio = 1.0;
  double max_ratio = 1.0;
  std::size_t pairs = 0;
};

SnowflakeConstant measure_ball_snowflake(const std::vector<L1Point>& points, int resolution);

/// x -> (x_1, ..., x_n) / (1 - x_0); the north pole e0 goes to infinity.
ExtendedPoint stereographic(const SpherePoint& x);
/// y -> ((|y|^2 - 1), 2y) / (|y|^2 + 1); infinity goes to e0. `dimension` is
/// n, used only for the point at infinity.
SpherePoint inverse_stereographic(const ExtendedPoint& y, int dimension);
/// Same as inverse_stereographic on a finite point.
Vector inverse_stereographic(const Vector& y);

/// center + r^2 (x - center) / |x - center|^2. Throws DomainError at the
/// center.
Vector inversion(const Vector& x, double radius, const Vector& center);

/// Inversion in the sphere of radius sqrt2 about e0 applied to sphere points:
/// max |inversion(x) - (0, stereographic(x))| over the samples (north pole
/// skipped).
double inversion_stereographic_agreement(const std::vector<SpherePoint>& samples);

using PointMap = std::function<Vector(const Vector&)>;
using PointMetric = std::function<double(const Vector&, const Vector&)>;

double euclidean(const Vector& a, const Vector& b);
double manhattan(const Vector& a, const Vector& b);

struct MobiusDefect {
  /// max |cr(f) / cr - 1| over the tested quadruples.
  double max_defect = 0.0;
  std::size_t quadruples_tested = 0;
  std::size_t degenerate_skipped = 0;
};

/// Samples `quadruples` 4-subsets of `samples` (seeded) and compares the
/// cross ratio |x1x2||x3x4| / (|x1x3||x2x4|) before and after `map`.
/// Quadruples with a distance below 1e-12 on either side are skipped.
/// Requires at least 4 samples.
MobiusDefect mobius_check_map(const PointMap& map, const std::vector<Vector>& samples, std::size_t quadruples,
                              std::uint64_t seed, const PointMetric& source_metric = euclidean,
                              const PointMetric& target_metric = euclidean);

/// Uniform sample of the l1 unit ball: normalized exponential spacings with
/// random signs.
std::vector<L1Point> sample_l1_ball(int dimension, std::size_t count, std::mt19937_64& rng);

/// Uniform sample of the unit sphere in R^{1+n}.
std::vector<SpherePoint> sample_sphere(int n, std::size_t count, std::mt19937_64& rng);

/// f(z) = inverse_stereographic(scale * g(z)). The pre-scale keeps g(Z)
/// near the origin, where the projection is close to a homothety.
SpherePoint composite_embedding(const L1Point& z, int resolution, double scale = 0.25);

struct PairSample {
  std::size_t i = 0, j = 0;
  double l1 = 0.0;
  double chordal = 0.0;
};

struct CompositeReport {
  int resolution = 0;
  double scale = 0.0;
  std::vector<PairSample> pairs;
  /// Least-squares slope and intercept of log chordal against log l1.
  double exponent = 0.0;
  double intercept = 0.0;
  /// Snowflake constant of g (squared distances against l1).
  SnowflakeConstant g_constant;
  /// max over pairs of max(r, 1/r), r = chordal / (e^intercept l1^exponent).
  double fit_constant = 1.0;
  /// Chordal distances of the image, labeled z1..zn.
  DistanceMatrix chordal;
  PtolemyReport ptolemy;
};

/// Requires at least two distinct points.
CompositeReport analyze_composite(const std::vector<L1Point>& points, int resolution, double scale = 0.25,
                                  unsigned threads = 1);

}  // namespace metgeo::embed
