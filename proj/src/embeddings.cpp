#include "metgeo/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "metgeo/error.hpp"

namespace metgeo::embed {

L1Point::L1Point(Vector coords) : coords_(std::move(coords)) {
  if (!coords_.allFinite()) throw DomainError("l1 point has non-finite coordinates");
  if (coords_.lpNorm<1>() > 1.0 + 1e-12) throw DomainError("l1 point lies outside the unit ball");
}

double l1_distance(const L1Point& a, const L1Point& b) {
  if (a.dimension() != b.dimension()) throw DomainError("l1 distance: dimension mismatch");
  return (a.coords() - b.coords()).lpNorm<1>();
}

SpherePoint::SpherePoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2 || !coords_.allFinite() || std::abs(coords_.norm() - 1.0) > 1e-12) {
    throw DomainError("sphere point must be a unit vector in R^{1+n}, n >= 1");
  }
}

bool SpherePoint::is_north_pole() const {
  return coords_[0] > 0.0 && coords_.tail(coords_.size() - 1).squaredNorm() == 0.0;
}

namespace {

Vector cumulative_profile(double t, int resolution) {
  // Position of t in cell units; cell k covers [k, k+1).
  const double u = (t + 1.0) * resolution / 2.0;
  const double amplitude = std::sqrt(2.0 / resolution);
  Vector h(resolution);
  for (int k = 0; k < resolution; ++k) h[k] = amplitude * std::clamp(u - k, 0.0, 1.0);
  return h;
}

}  // namespace

Vector line_snowflake(double t, int resolution) {
  if (resolution < 2) throw DomainError("line snowflake needs resolution N >= 2");
  if (!(t >= -1.0 && t <= 1.0)) throw DomainError("line snowflake is defined on [-1, 1]");
  return cumulative_profile(t, resolution) - cumulative_profile(0.0, resolution);
}

Vector ball_snowflake(const L1Point& z, int resolution) {
  Vector g(static_cast<Eigen::Index>(z.dimension()) * resolution);
  for (int i = 0; i < z.dimension(); ++i) {
    g.segment(static_cast<Eigen::Index>(i) * resolution, resolution) = line_snowflake(z.coords()[i], resolution);
  }
  return g;
}

SnowflakeConstant measure_ball_snowflake(const std::vector<L1Point>& points, int resolution) {
  std::vector<Vector> images;
  images.reserve(points.size());
  for (const auto& z : points) images.push_back(ball_snowflake(z, resolution));
  SnowflakeConstant out;
  bool first = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double source = l1_distance(points[i], points[j]);
      if (source == 0.0) continue;
      const double r = (images[i] - images[j]).squaredNorm() / source;
      out.min_ratio = first ? r : std::min(out.min_ratio, r);
      out.max_ratio = first ? r : std::max(out.max_ratio, r);
      first = false;
      ++out.pairs;
    }
  }
  if (out.pairs > 0) out.c = std::max({1.0, out.max_ratio, 1.0 / out.min_ratio});
  return out;
}

ExtendedPoint stereographic(const SpherePoint& x) {
  if (x.is_north_pole()) return ExtendedPoint::infinity();
  const auto& c = x.coords();
  return ExtendedPoint{Vector(c.tail(c.size() - 1) / (1.0 - c[0]))};
}

Vector inverse_stereographic(const Vector& y) {
  const double s = y.squaredNorm();
  Vector x(y.size() + 1);
  x[0] = (s - 1.0) / (s + 1.0);
  x.tail(y.size()) = 2.0 * y / (s + 1.0);
  return x;
}

SpherePoint inverse_stereographic(const ExtendedPoint& y, int dimension) {
  if (y.is_infinite()) {
    Vector pole = Vector::Zero(dimension + 1);
    pole[0] = 1.0;
    return SpherePoint(pole);
  }
  Vector x = inverse_stereographic(*y.finite);
  // Absorb the last-ulp drift so the point passes the unit-norm invariant.
  x /= x.norm();
  return SpherePoint(std::move(x));
}

Vector inversion(const Vector& x, double radius, const Vector& center) {
  if (x.size() != center.size()) throw DomainError("inversion: dimension mismatch");
  if (!(radius > 0.0)) throw DomainError("inversion radius must be positive");
  const Vector v = x - center;
  const double s = v.squaredNorm();
  if (s == 0.0) throw DomainError("inversion is undefined at its center");
  return center + radius * radius * v / s;
}

double inversion_stereographic_agreement(const std::vector<SpherePoint>& samples) {
  double worst = 0.0;
  for (const auto& x : samples) {
    if (x.is_north_pole()) continue;
    const auto& c = x.coords();
    Vector e0 = Vector::Zero(c.size());
    e0[0] = 1.0;
    const Vector inv = inversion(c, std::sqrt(2.0), e0);
    Vector expected(c.size());
    expected[0] = 0.0;
    expected.tail(c.size() - 1) = *stereographic(x).finite;
    worst = std::max(worst, (inv - expected).norm() / std::max(1.0, expected.norm()));
  }
  return worst;
}

double euclidean(const Vector& a, const Vector& b) { return (a - b).norm(); }
double manhattan(const Vector& a, const Vector& b) { return (a - b).lpNorm<1>(); }

MobiusDefect mobius_check_map(const PointMap& map, const std::vector<Vector>& samples, std::size_t quadruples,
                              std::uint64_t seed, const PointMetric& source_metric,
                              const PointMetric& target_metric) {
  if (samples.size() < 4) throw DomainError("Möbius check needs at least 4 samples");
  std::vector<Vector> images;
  images.reserve(samples.size());
  for (const auto& x : samples) images.push_back(map(x));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
  auto cross_ratio = [](const std::vector<Vector>& p, const std::array<std::size_t, 4>& q,
                        const PointMetric& metric) -> std::optional<double> {
    const double d12 = metric(p[q[0]], p[q[1]]), d34 = metric(p[q[2]], p[q[3]]);
    const double d13 = metric(p[q[0]], p[q[2]]), d24 = metric(p[q[1]], p[q[3]]);
    if (std::min({d12, d34, d13, d24}) < 1e-12) return std::nullopt;
    return d12 * d34 / (d13 * d24);
  };

  MobiusDefect out;
  for (std::size_t s = 0; s < quadruples; ++s) {
    std::array<std::size_t, 4> q{};
    do {
      for (auto& v : q) v = pick(rng);
    } while (q[0] == q[1] || q[0] == q[2] || q[0] == q[3] || q[1] == q[2] || q[1] == q[3] || q[2] == q[3]);
    const auto before = cross_ratio(samples, q, source_metric);
    const auto after = cross_ratio(images, q, target_metric);
    if (!before || !after) {
      ++out.degenerate_skipped;
      continue;
    }
    out.max_defect = std::max(out.max_defect, std::abs(*after / *before - 1.0));
    ++out.quadruples_tested;
  }
  return out;
}

std::vector<L1Point> sample_l1_ball(int dimension, std::size_t count, std::mt19937_64& rng) {
  if (dimension < 1) throw DomainError("l1 ball dimension must be positive");
  std::exponential_distribution<double> exp1(1.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<L1Point> out;
  out.reserve(count);
  std::vector<double> e(static_cast<std::size_t>(dimension) + 1);
  for (std::size_t s = 0; s < count; ++s) {
    for (auto& v : e) v = exp1(rng);
    const double total = std::accumulate(e.begin(), e.end(), 0.0);
    Vector z(dimension);
    for (int i = 0; i < dimension; ++i) {
      z[i] = (sign(rng) ? -1.0 : 1.0) * e[static_cast<std::size_t>(i)] / total;
    }
    out.emplace_back(std::move(z));
  }
  return out;
}

std::vector<SpherePoint> sample_sphere(int n, std::size_t count, std::mt19937_64& rng) {
  if (n < 1) throw DomainError("sphere dimension must be positive");
  std::normal_distribution<double> normal;
  std::vector<SpherePoint> out;
  out.reserve(count);
  while (out.size() < count) {
    Vector x(n + 1);
    for (int i = 0; i <= n; ++i) x[i] = normal(rng);
    const double r = x.norm();
    if (r < 1e-9) continue;
    out.emplace_back(x / r);
  }
  return out;
}

SpherePoint composite_embedding(const L1Point& z, int resolution, double scale) {
  if (!(scale > 0.0)) throw DomainError("composite embedding scale must be positive");
  Vector x = inverse_stereographic(Vector(scale * ball_snowflake(z, resolution)));
  x /= x.norm();
  return SpherePoint(std::move(x));
}

CompositeReport analyze_composite(const std::vector<L1Point>& points, int resolution, double scale,
                                  unsigned threads) {
  if (points.size() < 2) throw PreconditionError("composite analysis needs at least two points");
  std::vector<Vector> images;
  images.reserve(points.size());
  for (const auto& z : points) images.push_back(composite_embedding(z, resolution, scale).coords());

  std::vector<std::string> labels(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) labels[i] = "z" + std::to_string(i + 1);
  auto chordal = DistanceMatrix::from_function(
      labels, [&](std::size_t i, std::size_t j) { return (images[i] - images[j]).norm(); });

  std::vector<PairSample> pairs;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      PairSample p{i, j, l1_distance(points[i], points[j]), chordal(i, j)};
      const double x = std::log(p.l1), y = std::log(p.chordal);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      pairs.push_back(p);
    }
  }
  const double count = static_cast<double>(pairs.size());
  const double var = sxx - sx * sx / count;
  const double exponent = var > 0.0 ? (sxy - sx * sy / count) / var : 0.0;
  const double intercept = (sy - exponent * sx) / count;
  double fit_constant = 1.0;
  for (const auto& p : pairs) {
    const double r = p.chordal / (std::exp(intercept) * std::pow(p.l1, exponent));
    fit_constant = std::max({fit_constant, r, 1.0 / r});
  }

  PtolemyOptions options;
  options.threads = threads;
  options.max_equalities = 0;
  auto ptolemy = ptolemy_check(chordal, options);
  return CompositeReport{resolution,
                         scale,
                         std::move(pairs),
                         exponent,
                         intercept,
                         measure_ball_snowflake(points, resolution),
                         fit_constant,
                         std::move(chordal),
                         std::move(ptolemy)};
}

}  // namespace metgeo::embed
