#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "metgeo/distance_matrix.hpp"

namespace metgeo {

struct ChainMetricResult {
  /// Chain-approach metric: infimum of chain sums, i.e. all-pairs shortest
  /// paths on the complete graph weighted by the input.
  DistanceMatrix ca;
  /// max over pairs of rho(i,j) / ca(i,j); 1 for a single point.
  double distortion = 1.0;
  std::optional<std::pair<std::size_t, std::size_t>> witness_pair;
};

/// Exact chain metric. Relaxation passes are repeated until no entry changes,
/// so the result satisfies the triangle inequality in floating point with
/// zero tolerance.
ChainMetricResult chain_metric(const DistanceMatrix& rho);
inline ChainMetricResult chain_metric(const QuasiMetricSpace& q) { return chain_metric(q.matrix); }

struct FrinkCheck {
  bool holds = false;  ///< distortion <= 4 and ca positive off the diagonal
  double distortion = 1.0;
  double K = 1.0;
};

/// Frink's bound ca/4 <= rho <= ca for 2-quasi-metrics. Throws
/// PreconditionError when K > 2 + 1e-12.
FrinkCheck frink_bound_check(const QuasiMetricSpace& q);

struct DistortionCurve {
  std::vector<double> s_values;
  std::vector<double> c_values;
};

/// Geometric grid from 0.25 to 4 with 25 points (1 is a grid point).
std::vector<double> default_s_grid();
std::vector<double> geometric_grid(double lo, double hi, std::size_t points);

/// For each s, distortion of chain_metric(rho^s) against rho^s.
DistortionCurve distortion_curve(const DistanceMatrix& rho, const std::vector<double>& s_grid);
inline DistortionCurve distortion_curve(const QuasiMetricSpace& q,
                                        const std::vector<double>& s_grid) {
  return distortion_curve(q.matrix, s_grid);
}

/// Heuristic finite-family bracket for the critical exponent.
///
/// At each s the family's distortions c_1, ..., c_F (family ordered by size)
/// are called divergent when they increase strictly at every step and the
/// last one exceeds the threshold. `upper` is the smallest divergent s,
/// `lower` the largest non-divergent grid value below it. No divergent s
/// means the estimate is infinite (`upper` empty, `lower` = largest s).
struct CriticalExponentEstimate {
  double lower = 0.0;
  std::optional<double> upper;
  bool infinite() const { return !upper.has_value(); }
  std::vector<double> s_values;
  /// distortions[k][f]: grid point k, family member f.
  std::vector<std::vector<double>> distortions;
  std::vector<bool> divergent;
};

CriticalExponentEstimate estimate_critical_exponent(const std::vector<QuasiMetricSpace>& family,
                                                    const std::vector<double>& s_grid,
                                                    double divergence_threshold);

}  // namespace metgeo
