#include "metgeo/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>

#include "metgeo/error.hpp"
#include "metgeo/parallel.hpp"

namespace metgeo {

double gromov_product(const DistanceMatrix& d, std::size_t o, std::size_t x, std::size_t y) {
  return 0.5 * (d(o, x) + d(o, y) - d(x, y));
}

GromovReport delta_at_basepoint(const DistanceMatrix& d, std::size_t o) {
  const std::size_t n = d.size();
  if (o >= n) throw StructuralError("basepoint index out of range");
  GromovReport report;
  report.basepoint = o;
  // Triples with a repeated point or containing o always have deficiency 0.
  for (std::size_t x = 0; x < n; ++x) {
    if (x == o) continue;
    for (std::size_t y = x + 1; y < n; ++y) {
      if (y == o) continue;
      const double xy = gromov_product(d, o, x, y);
      for (std::size_t z = y + 1; z < n; ++z) {
        if (z == o) continue;
        std::array<double, 3> g{xy, gromov_product(d, o, x, z), gromov_product(d, o, y, z)};
        std::sort(g.begin(), g.end());
        const double deficiency = g[1] - g[0];
        if (!report.worst_quadruple || deficiency > report.delta) {
          report.delta = std::max(deficiency, 0.0);
          report.worst_quadruple = Quadruple{o, x, y, z};
        }
      }
    }
  }
  return report;
}

DeltaSummary delta_global(const DistanceMatrix& d, unsigned threads) {
  const std::size_t n = d.size();
  DeltaSummary summary;
  summary.delta_per_basepoint.resize(n);
  detail::parallel_for(n, threads, [&](std::size_t o) {
    summary.delta_per_basepoint[o] = delta_at_basepoint(d, o).delta;
  });
  const auto& deltas = summary.delta_per_basepoint;
  const auto worst = std::max_element(deltas.begin(), deltas.end());
  summary.delta = *worst;
  summary.worst_basepoint = static_cast<std::size_t>(worst - deltas.begin());

  const double slack = 1e-12 * (1.0 + summary.delta);
  for (std::size_t o = 0; o < n && summary.doubling_bound_holds; ++o) {
    for (std::size_t p = 0; p < n; ++p) {
      if (deltas[p] > 2.0 * deltas[o] + slack) {
        summary.doubling_bound_holds = false;
        summary.doubling_violation = std::pair{o, p};
        break;
      }
    }
  }
  return summary;
}

QuasiMetricSpace boundary_quasimetric(const DistanceMatrix& d, std::size_t o) {
  if (o >= d.size()) throw StructuralError("basepoint index out of range");
  auto m = DistanceMatrix::from_function(d.labels(), [&](std::size_t x, std::size_t y) {
    return std::exp(-gromov_product(d, o, x, y));
  });
  return QuasiMetricSpace::from(std::move(m));
}

double basepoint_change_identity_check(const DistanceMatrix& d, std::size_t o, std::size_t o_prime) {
  const std::size_t n = d.size();
  if (o >= n || o_prime >= n) throw StructuralError("basepoint index out of range");
  double defect = 0.0;
  for (std::size_t x1 = 0; x1 < n; ++x1) {
    for (std::size_t x2 = x1; x2 < n; ++x2) {
      const double lhs = gromov_product(d, o_prime, x1, x2);
      const double rhs = d(o, o_prime) + gromov_product(d, o, x1, x2) -
                         gromov_product(d, o, x1, o_prime) - gromov_product(d, o, x2, o_prime);
      defect = std::max(defect, std::abs(lhs - rhs));
    }
  }
  return defect;
}

}  // namespace metgeo
