#include "metgeo/hyperbolic_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "metgeo/error.hpp"

namespace metgeo::hyperbolic {

double minkowski_dot(const Vector& u, const Vector& v) {
  if (u.size() != v.size() || u.size() < 2) throw DomainError("Minkowski product: dimension mismatch");
  return -u[0] * v[0] + u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

Vector ball_to_hyperboloid(const Vector& u) {
  validate_point(u, Model::PoincareBall);
  const double s = u.squaredNorm();
  Vector x(u.size() + 1);
  x[0] = (1.0 + s) / (1.0 - s);
  x.tail(u.size()) = 2.0 * u / (1.0 - s);
  return x;
}

Vector hyperboloid_to_ball(const Vector& x) {
  validate_point(x, Model::Hyperboloid);
  return x.tail(x.size() - 1) / (1.0 + x[0]);
}

void validate_point(const Vector& p, Model model) {
  if (!p.allFinite()) throw DomainError("model point has non-finite coordinates");
  if (model == Model::PoincareBall) {
    if (p.size() < 1) throw DomainError("ball point needs at least one coordinate");
    if (!(p.squaredNorm() < 1.0)) throw DomainError("point lies outside the open unit ball");
    return;
  }
  if (p.size() < 2) throw DomainError("hyperboloid point needs at least two coordinates");
  const double q = minkowski_dot(p, p);
  if (!(p[0] > 0.0) || std::abs(q + 1.0) > 1e-9 * std::max(1.0, p[0] * p[0])) {
    throw DomainError("point is not on the upper hyperboloid sheet");
  }
}

double hyp_distance(const Vector& u, const Vector& v, Model model) {
  validate_point(u, model);
  validate_point(v, model);
  if (u.size() != v.size()) throw DomainError("hyperbolic distance: dimension mismatch");
  if (model == Model::PoincareBall) {
    const double chord_half =
        (u - v).norm() / std::sqrt((1.0 - u.squaredNorm()) * (1.0 - v.squaredNorm()));
    return 2.0 * std::asinh(chord_half);
  }
  const Vector diff = u - v;
  const double chord = std::sqrt(std::max(0.0, minkowski_dot(diff, diff)));
  return 2.0 * std::asinh(0.5 * chord);
}

Vector ball_isometry_to_origin(const Vector& a, const Vector& x) {
  const double aa = a.squaredNorm();
  const Vector diff = x - a;
  const double denom = 1.0 - 2.0 * x.dot(a) + x.squaredNorm() * aa;
  return ((1.0 - aa) * diff - diff.squaredNorm() * a) / denom;
}

Vector ray_point(const Vector& basepoint, const Vector& direction, double t) {
  Vector light(basepoint.size());
  light[0] = 1.0;
  light.tail(direction.size()) = direction;
  // Unit tangent at the basepoint pointing at the ideal point.
  const Vector tangent = -light / minkowski_dot(light, basepoint) - basepoint;
  return std::cosh(t) * basepoint + std::sinh(t) * tangent;
}

IdealConfig::IdealConfig(Model model, Vector basepoint, std::vector<Vector> ideal_points,
                         std::vector<std::string> labels)
    : model_(model), basepoint_(std::move(basepoint)), ideal_points_(std::move(ideal_points)),
      labels_(std::move(labels)) {
  validate_point(basepoint_, model_);
  dimension_ = static_cast<int>(model_ == Model::PoincareBall ? basepoint_.size() : basepoint_.size() - 1);
  for (auto& xi : ideal_points_) {
    if (xi.size() != dimension_) throw DomainError("ideal point dimension does not match the model");
    const double norm = xi.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-9) {
      throw DomainError("ideal points must be unit vectors");
    }
    xi /= norm;
  }
  if (labels_.empty()) {
    for (std::size_t i = 0; i < ideal_points_.size(); ++i) labels_.push_back("y" + std::to_string(i + 1));
  }
  if (labels_.size() != ideal_points_.size()) throw StructuralError("one label per ideal point required");
}

Vector IdealConfig::basepoint_in_ball() const {
  return model_ == Model::PoincareBall ? basepoint_ : hyperboloid_to_ball(basepoint_);
}

Vector IdealConfig::basepoint_in_hyperboloid() const {
  return model_ == Model::Hyperboloid ? basepoint_ : ball_to_hyperboloid(basepoint_);
}

IdealConfig IdealConfig::with_basepoint(Vector basepoint) const {
  return IdealConfig(model_, std::move(basepoint), ideal_points_, labels_);
}

namespace {

// Ideal points as seen from the basepoint moved to the origin.
std::vector<Vector> centered_directions(const IdealConfig& config) {
  const Vector o = config.basepoint_in_ball();
  std::vector<Vector> out;
  out.reserve(config.size());
  for (const auto& xi : config.ideal_points()) out.push_back(ball_isometry_to_origin(o, xi).normalized());
  return out;
}

double half_chord(const Vector& u, const Vector& v) { return std::min(1.0, 0.5 * (u - v).norm()); }

}  // namespace

double angle_at_basepoint(const IdealConfig& config, std::size_t i, std::size_t j) {
  const Vector o = config.basepoint_in_ball();
  const Vector u = ball_isometry_to_origin(o, config.ideal_points().at(i)).normalized();
  const Vector v = ball_isometry_to_origin(o, config.ideal_points().at(j)).normalized();
  return 2.0 * std::asin(half_chord(u, v));
}

BourdonMetric bourdon_metric(const IdealConfig& config) {
  const auto dirs = centered_directions(config);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    for (std::size_t j = i + 1; j < dirs.size(); ++j) {
      if ((config.ideal_points()[i] - config.ideal_points()[j]).norm() < 1e-12) {
        throw DomainError("ideal points " + config.labels()[i] + " and " + config.labels()[j] + " coincide");
      }
    }
  }
  auto matrix = DistanceMatrix::from_function(
      config.labels(), [&](std::size_t i, std::size_t j) { return half_chord(dirs[i], dirs[j]); });
  return BourdonMetric{std::move(matrix), config.basepoint_in_ball()};
}

DistanceMatrix truncated_gromov_bourdon(const IdealConfig& config, double t) {
  if (!(t > 0.0)) throw DomainError("truncation parameter must be positive");
  const Vector o = config.basepoint_in_hyperboloid();
  std::vector<Vector> points;
  points.reserve(config.size());
  for (const auto& xi : config.ideal_points()) points.push_back(ray_point(o, xi, t));
  return DistanceMatrix::from_function(config.labels(), [&](std::size_t i, std::size_t j) {
    const Vector diff = points[i] - points[j];
    const double h = 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, minkowski_dot(diff, diff))));
    // (y_i(t)|y_j(t))_o = t - h/2
    return std::exp(0.5 * h - t);
  });
}

double ideal_triangle_height(double theta, double t) {
  if (!(theta > 0.0) || theta > std::numbers::pi) throw DomainError("angle must lie in (0, pi]");
  if (!(t >= 0.0)) throw DomainError("ray parameter must be nonnegative");
  // cosh^2 t - sinh^2 t cos(theta) rewritten without cancellation.
  const double s = std::sinh(t) * std::sin(0.5 * theta);
  return std::acosh(1.0 + 2.0 * s * s);
}

BourdonLimit bourdon_limit(double theta, double t_max) {
  if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
  BourdonLimit out;
  auto push = [&](double t) {
    out.t.push_back(t);
    out.values.push_back(std::exp(0.5 * ideal_triangle_height(theta, t) - t));
  };
  for (double t = 1.0; t <= t_max; t += 1.0) push(t);
  if (out.t.empty() || out.t.back() < t_max) push(t_max);
  out.limit_estimate = out.values.back();
  return out;
}

double lemma_sincomp_check(const IdealConfig& config, const DistanceMatrix& reference) {
  if (config.size() != 4 || reference.size() != 4) {
    throw StructuralError("sin comparison needs exactly four ideal points");
  }
  const auto rho = bourdon_metric(config).matrix;
  const double ratio = cross_ratio(reference, 0, 1, 2, 3);
  return ratio - rho(0, 1) * rho(2, 3);
}

DistanceMatrix hamenstadt_metric(const BourdonMetric& bourdon, const std::string& omega) {
  return involute(bourdon.matrix, omega);
}

GluedQuadrilateral glued_quadrilateral(double a, double b, std::vector<std::string> labels) {
  if (!(a > 0.0 && a <= 1.0) || !(b > 0.0 && b <= 1.0)) {
    throw DomainError("glued quadrilateral needs 0 < a, b <= 1");
  }
  if (a * a + b * b < 1.0 - 1e-12) {
    throw PreconditionError("a^2 + b^2 < 1: the four-point space is not Ptolemaic");
  }
  if (labels.size() != 4) throw StructuralError("glued quadrilateral needs four labels");
  const double side[4][4] = {{0, a, 1, b}, {a, 0, b, 1}, {1, b, 0, a}, {b, 1, a, 0}};
  GluedQuadrilateral out{
      BourdonMetric{DistanceMatrix::from_function(std::move(labels),
                                                  [&](std::size_t i, std::size_t j) { return side[i][j]; }),
                    std::nullopt},
      2.0 * std::asin(a), 2.0 * std::asin(b), 0.0};
  out.cone_angle = 2.0 * (out.alpha + out.beta);
  return out;
}

IdealConfig orthogonal_frame(int dimension) {
  if (dimension < 2) throw DomainError("frame needs dimension >= 2");
  std::vector<Vector> points;
  std::vector<std::string> labels;
  for (int i = 0; i < dimension; ++i) {
    const Vector e = Vector::Unit(dimension, i);
    points.push_back(e);
    points.push_back(-e);
    labels.push_back("e" + std::to_string(i + 1) + "+");
    labels.push_back("e" + std::to_string(i + 1) + "-");
  }
  return IdealConfig(Model::PoincareBall, Vector::Zero(dimension), std::move(points), std::move(labels));
}

namespace {

std::vector<std::string> six_point_labels() { return {"e1+", "e1-", "e2+", "e2-", "e3+", "e3-"}; }

// Unvalidated six-point table.
std::vector<std::vector<double>> six_point_rows(double a, double b, double c) {
  const double r2 = std::numbers::sqrt2;
  std::vector<std::vector<double>> d(6, std::vector<double>(6, 0.0));
  auto set = [&](int i, int j, double v) { d[i][j] = d[j][i] = v; };
  const double params[3] = {a, b, c};
  for (int i = 0; i < 3; ++i) {
    set(2 * i, 2 * i + 1, 1.0);
    const int j = (i + 1) % 3;
    const double p = params[i];
    for (int sign = 0; sign < 2; ++sign) {
      set(2 * i, 2 * j + sign, p / r2);
      set(2 * i + 1, 2 * j + sign, 1.0 / (p * r2));
    }
  }
  return d;
}

}  // namespace

DistanceMatrix six_point_example(double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) throw DomainError("six-point parameters must be positive");
  DistanceMatrix d(six_point_labels(), six_point_rows(a, b, c));
  const auto axioms = check_metric_axioms(d, 1e-12);
  if (!axioms.is_metric) {
    const auto [i, j, k] = axioms.violations.front();
    throw PreconditionError("six-point parameters violate the triangle inequality on (" + d.label(i) + ", " +
                            d.label(j) + ", " + d.label(k) + ")");
  }
  return d;
}

Quadruple six_point_witness() { return {0, 3, 2, 4}; }

std::vector<ScanEntry> admissible_parameter_scan(const std::vector<double>& a_values,
                                                 const std::vector<double>& b_values,
                                                 const std::vector<double>& c_values) {
  auto in_range = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.5 && x <= 2.0; });
  };
  if (!in_range(a_values) || !in_range(b_values) || !in_range(c_values)) {
    throw DomainError("scan parameters must lie in [0.5, 2]");
  }
  std::vector<ScanEntry> out;
  out.reserve(a_values.size() * b_values.size() * c_values.size());
  for (double a : a_values) {
    for (double b : b_values) {
      for (double c : c_values) {
        const DistanceMatrix d(six_point_labels(), six_point_rows(a, b, c));
        ScanEntry e;
        e.a = a;
        e.b = b;
        e.c = c;
        const auto axioms = check_metric_axioms(d, 1e-12);
        e.is_metric = axioms.is_metric;
        if (!axioms.is_metric) e.triangle_violation = axioms.violations.front();
        const auto ptolemy = ptolemy_check(d);
        e.is_ptolemaic = ptolemy.satisfied;
        if (!ptolemy.satisfied) e.ptolemy_violation = ptolemy.worst_quadruple;
        out.push_back(e);
      }
    }
  }
  return out;
}

Vector random_unit_vector(int dimension, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(dimension);
  do {
    for (int i = 0; i < dimension; ++i) v[i] = normal(rng);
  } while (v.norm() < 1e-6);
  return v.normalized();
}

IdealConfig random_ideal_config(int dimension, std::size_t count, std::mt19937_64& rng,
                                double basepoint_radius) {
  if (!(basepoint_radius >= 0.0 && basepoint_radius < 1.0)) {
    throw DomainError("basepoint radius must lie in [0, 1)");
  }
  std::vector<Vector> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) points.push_back(random_unit_vector(dimension, rng));
  Vector base = Vector::Zero(dimension);
  if (basepoint_radius > 0.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = basepoint_radius * std::pow(unit(rng), 1.0 / dimension);
    base = r * random_unit_vector(dimension, rng);
  }
  return IdealConfig(Model::PoincareBall, std::move(base), std::move(points));
}

}  // namespace metgeo::hyperbolic
