#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "metgeo/distance_matrix.hpp"
#include "metgeo/metric_core.hpp"

namespace metgeo::hyperbolic {

using Vector = Eigen::VectorXd;

enum class Model { PoincareBall, Hyperboloid };

/// Minkowski form -u0 v0 + u1 v1 + ... + un vn.
double minkowski_dot(const Vector& u, const Vector& v);

Vector ball_to_hyperboloid(const Vector& u);
Vector hyperboloid_to_ball(const Vector& x);

/// Throws DomainError unless `p` lies in the open ball (|p| < 1) or on the
/// upper sheet of the hyperboloid (<p,p> = -1 within 1e-9 relative, p0 > 0).
void validate_point(const Vector& p, Model model);

/// Hyperbolic distance in either model, evaluated through
/// 2 asinh(chord / 2), which stays accurate for nearby points.
double hyp_distance(const Vector& u, const Vector& v, Model model);

/// The ball isometry x -> ((1-|a|^2)(x-a) - |x-a|^2 a) / (1 - 2<x,a> + |x|^2|a|^2),
/// sending a to the origin. Defined on the closed ball; preserves the
/// boundary sphere.
Vector ball_isometry_to_origin(const Vector& a, const Vector& x);

/// Point at distance t from `basepoint` (hyperboloid coordinates) on the
/// geodesic ray towards the ideal point `direction` (unit vector on the
/// boundary sphere of the ball model).
Vector ray_point(const Vector& basepoint, const Vector& direction, double t);

/// Ideal points on the boundary of H^n together with an interior basepoint.
/// Ideal points are stored as unit vectors of the ball model's boundary
/// sphere; the basepoint is given in `model` coordinates.
class IdealConfig {
 public:
  IdealConfig(Model model, Vector basepoint, std::vector<Vector> ideal_points,
              std::vector<std::string> labels = {});

  Model model() const { return model_; }
  int dimension() const { return dimension_; }
  const Vector& basepoint() const { return basepoint_; }
  Vector basepoint_in_ball() const;
  Vector basepoint_in_hyperboloid() const;
  const std::vector<Vector>& ideal_points() const { return ideal_points_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return ideal_points_.size(); }

  /// Same ideal points seen from another basepoint (same model).
  IdealConfig with_basepoint(Vector basepoint) const;

 private:
  Model model_;
  int dimension_;
  Vector basepoint_;
  std::vector<Vector> ideal_points_;
  std::vector<std::string> labels_;
};

/// Angle at the basepoint between the rays to ideal points i and j.
double angle_at_basepoint(const IdealConfig& config, std::size_t i, std::size_t j);

struct BourdonMetric {
  /// rho_o(y_i, y_j) = sin(theta_o(y_i, y_j) / 2).
  DistanceMatrix matrix;
  /// Basepoint in ball coordinates; empty for analytically glued spaces.
  std::optional<Vector> basepoint;
};

/// Throws DomainError for coincident ideal points.
BourdonMetric bourdon_metric(const IdealConfig& config);

/// exp(-(y_i(t)|y_j(t))_o) from the points at distance t along the rays,
/// an independent route to the Bourdon metric (it converges as t grows).
DistanceMatrix truncated_gromov_bourdon(const IdealConfig& config, double t);

/// h_t with cosh h_t = cosh^2 t - sinh^2 t cos theta, the distance between
/// the points at distance t on two rays with angle theta. Requires
/// theta in (0, pi] and t >= 0.
double ideal_triangle_height(double theta, double t);

struct BourdonLimit {
  std::vector<double> t;
  /// (e^{h_t} e^{-2t})^{1/2}
  std::vector<double> values;
  double limit_estimate = 0.0;
};

/// Sequence at t = 1, 2, ..., t_max (plus t_max itself when fractional).
BourdonLimit bourdon_limit(double theta, double t_max);

/// For four ideal points and the basepoint o of `config`, returns
/// |y1y2||y3y4| / (|y1y3||y2y4|) - sin(theta_o(y1,y2)/2) sin(theta_o(y3,y4)/2)
/// with |.| = `reference` (a Bourdon metric on the same four points, same
/// order, possibly from another basepoint). Nonnegative, and zero exactly
/// when o lies on both geodesics y1y3 and y2y4.
double lemma_sincomp_check(const IdealConfig& config, const DistanceMatrix& reference);

/// Involution of a Bourdon metric at the ideal point omega.
DistanceMatrix hamenstadt_metric(const BourdonMetric& bourdon, const std::string& omega);

struct GluedQuadrilateral {
  BourdonMetric metric;
  double alpha = 0.0;  ///< sin(alpha/2) = a
  double beta = 0.0;   ///< sin(beta/2) = b
  double cone_angle = 0.0;
};

/// Bourdon metric at the cone point of four ideal triangles with angles
/// alpha, beta, alpha, beta glued cyclically: sides (a, b, a, b), both
/// diagonals 1. Requires 0 < a, b <= 1 and a^2 + b^2 >= 1 (PreconditionError
/// otherwise); the cone angle 2(alpha + beta) is then at least 2 pi.
GluedQuadrilateral glued_quadrilateral(double a, double b,
                                       std::vector<std::string> labels = {"y1", "y2", "y3", "y4"});

/// Ideal points +-e_1, ..., +-e_n seen from the origin, labeled
/// "e1+", "e1-", ..., in that order.
IdealConfig orthogonal_frame(int dimension);

/// Six-point metric on {e1+, e1-, e2+, e2-, e3+, e3-}: opposite pairs at 1,
/// |e1+ e2+-| = a/sqrt2, |e1- e2+-| = 1/(a sqrt2), and cyclically with b for
/// (e2, e3) and c for (e3, e1). For a = b = c = 1 this is the Bourdon metric
/// of the orthogonal frame in H^3.
///
/// Every pair of coordinate geodesics spans a Ptolemy-equality quadruple with
/// equal products of opposite sides, so a Möbius embedding into a CAT(-1)
/// boundary would force the three geodesics to meet pairwise orthogonally.
/// They cannot share a point (the cross ratio below would then be 1), and
/// three distinct pairwise intersections would bound a triangle with three
/// right angles, which CAT(-1) forbids. Nothing here checks that argument;
/// it is the reason the example is interesting.
///
/// Throws PreconditionError naming a violating triple when the parameters
/// break the triangle inequality, DomainError for nonpositive parameters.
DistanceMatrix six_point_example(double a, double b, double c);

/// Indices of (e1+, e2-, e2+, e3+): cross_ratio on them gives b^2 for the
/// six-point metric and 1 for the frame.
Quadruple six_point_witness();

struct ScanEntry {
  double a = 0.0, b = 0.0, c = 0.0;
  bool is_metric = false;
  bool is_ptolemaic = false;
  bool admissible() const { return is_metric && is_ptolemaic; }
  std::optional<Triple> triangle_violation;
  std::optional<Quadruple> ptolemy_violation;
};

/// Evaluates six_point_example over the grid product. All values must lie in
/// [0.5, 2].
std::vector<ScanEntry> admissible_parameter_scan(const std::vector<double>& a_values,
                                                 const std::vector<double>& b_values,
                                                 const std::vector<double>& c_values);

/// Uniform random unit vector in R^dimension.
Vector random_unit_vector(int dimension, std::mt19937_64& rng);

/// `count` uniform ideal points; basepoint uniform in the ball of Euclidean
/// radius `basepoint_radius` (ball model).
IdealConfig random_ideal_config(int dimension, std::size_t count, std::mt19937_64& rng,
                                double basepoint_radius = 0.0);

}  // namespace metgeo::hyperbolic
