#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "metgeo/distance_matrix.hpp"
#include "metgeo/metric_core.hpp"

namespace metgeo {

/// (x|y)_o = (|ox| + |oy| - |xy|) / 2.
double gromov_product(const DistanceMatrix& d, std::size_t o, std::size_t x, std::size_t y);

struct GromovReport {
  std::size_t basepoint = 0;
  /// Smallest delta making every triple of Gromov products at the basepoint
  /// a delta-triple: the two smallest of the three differ by at most delta.
  double delta = 0.0;
  /// (o, x, y, z) realizing delta; empty when fewer than three other points.
  std::optional<Quadruple> worst_quadruple;
};

GromovReport delta_at_basepoint(const DistanceMatrix& d, std::size_t o);

struct DeltaSummary {
  std::vector<double> delta_per_basepoint;
  double delta = 0.0;  ///< max over basepoints
  std::size_t worst_basepoint = 0;
  /// delta(o') <= 2 delta(o) for every ordered pair of basepoints, with
  /// tolerance 1e-12 * (1 + delta).
  bool doubling_bound_holds = true;
  std::optional<std::pair<std::size_t, std::size_t>> doubling_violation;
};

DeltaSummary delta_global(const DistanceMatrix& d, unsigned threads = 1);

/// e^{-(x|y)_o} on all points (diagonal 0), with its quasi-metric constant.
/// The constant is at most e^delta for delta = delta_at_basepoint(d, o).
QuasiMetricSpace boundary_quasimetric(const DistanceMatrix& d, std::size_t o);

/// Max over pairs (x1, x2) of
/// |(x1|x2)_{o'} - (|oo'| + (x1|x2)_o - (x1|o')_o - (x2|o')_o)|.
double basepoint_change_identity_check(const DistanceMatrix& d, std::size_t o, std::size_t o_prime);

}  // namespace metgeo
