#include "metgeo/metrization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "metgeo/error.hpp"
#include "metgeo/metric_core.hpp"

namespace metgeo {

namespace {

// Floyd–Warshall relaxation; returns true if any entry decreased.
bool relax(std::vector<double>& d, std::size_t n) {
  bool changed = false;
  for (std::size_t k = 0; k < n; ++k) {
    const double* row_k = d.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) {
      double* row_i = d.data() + i * n;
      const double dik = row_i[k];
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + row_k[j];
        if (via < row_i[j]) {
          row_i[j] = via;
          changed = true;
        }
      }
    }
  }
  return changed;
}

}  // namespace

ChainMetricResult chain_metric(const DistanceMatrix& rho) {
  const std::size_t n = rho.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) std::copy(rho.row(i).begin(), rho.row(i).end(), d.begin() + i * n);

  // Further passes only matter when rounding in nested sums leaves a one-ulp
  // triangle violation or an i->j / j->i mismatch; entries only decrease, so
  // this terminates, and the final pass changes nothing.
  for (int pass = 0; pass < 16; ++pass) {
    bool changed = relax(d, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double& a = d[i * n + j];
        double& b = d[j * n + i];
        if (a != b) {
          a = b = std::min(a, b);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  ChainMetricResult result{
      DistanceMatrix::from_function(rho.labels(), [&](std::size_t i, std::size_t j) { return d[i * n + j]; }),
      1.0, std::nullopt};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double ratio = rho(i, j) / result.ca(i, j);
      if (!result.witness_pair || ratio > result.distortion) {
        result.distortion = std::max(ratio, 1.0);
        result.witness_pair = std::pair{i, j};
      }
    }
  }
  return result;
}

FrinkCheck frink_bound_check(const QuasiMetricSpace& q) {
  if (q.K > 2.0 + 1e-12) {
    throw PreconditionError("Frink bound requires a 2-quasi-metric, got K = " + std::to_string(q.K));
  }
  const auto chain = chain_metric(q.matrix);
  FrinkCheck check;
  check.K = q.K;
  check.distortion = chain.distortion;
  // DistanceMatrix construction already rejects zero off-diagonal entries.
  check.holds = chain.distortion <= 4.0 && chain.ca.min_off_diagonal() > 0.0;
  return check;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi >= lo) || points == 0) {
    throw DomainError("geometric grid needs 0 < lo <= hi and at least one point");
  }
  if (points == 1) return {lo};
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) {
    grid[k] = lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(points - 1));
  }
  grid.back() = hi;
  return grid;
}

std::vector<double> default_s_grid() { return geometric_grid(0.25, 4.0, 25); }

DistortionCurve distortion_curve(const DistanceMatrix& rho, const std::vector<double>& s_grid) {
  DistortionCurve curve;
  curve.s_values = s_grid;
  curve.c_values.reserve(s_grid.size());
  for (double s : s_grid) {
    if (!(s > 0.0)) throw DomainError("distortion curve exponents must be positive");
    curve.c_values.push_back(chain_metric(snowflake(rho, s)).distortion);
  }
  return curve;
}

CriticalExponentEstimate estimate_critical_exponent(const std::vector<QuasiMetricSpace>& family,
                                                    const std::vector<double>& s_grid,
                                                    double divergence_threshold) {
  if (family.size() < 2) {
    throw PreconditionError("critical exponent estimate needs a family of at least two spaces");
  }
  if (s_grid.empty()) throw DomainError("critical exponent estimate needs a nonempty s grid");
  for (std::size_t f = 1; f < family.size(); ++f) {
    if (family[f].matrix.size() < family[f - 1].matrix.size()) {
      throw PreconditionError("family must be ordered by size");
    }
  }
  for (std::size_t k = 0; k < s_grid.size(); ++k) {
    if (!(s_grid[k] > 0.0) || (k > 0 && !(s_grid[k] > s_grid[k - 1]))) {
      throw DomainError("s grid must be positive and strictly increasing");
    }
  }

  CriticalExponentEstimate est;
  est.s_values = s_grid;
  est.distortions.assign(s_grid.size(), std::vector<double>(family.size()));
  for (std::size_t f = 0; f < family.size(); ++f) {
    const auto curve = distortion_curve(family[f].matrix, s_grid);
    for (std::size_t k = 0; k < s_grid.size(); ++k) est.distortions[k][f] = curve.c_values[k];
  }

  constexpr double kStrictGrowth = 1e-9;
  est.divergent.assign(s_grid.size(), false);
  for (std::size_t k = 0; k < s_grid.size(); ++k) {
    const auto& c = est.distortions[k];
    bool growing = true;
    for (std::size_t f = 1; f < c.size(); ++f) {
      growing = growing && c[f] > c[f - 1] * (1.0 + kStrictGrowth);
    }
    est.divergent[k] = growing && c.back() > divergence_threshold;
  }

  const auto first = std::find(est.divergent.begin(), est.divergent.end(), true);
  if (first == est.divergent.end()) {
    est.lower = s_grid.back();
    return est;
  }
  const auto k_up = static_cast<std::size_t>(first - est.divergent.begin());
  est.upper = s_grid[k_up];
  est.lower = k_up == 0 ? 0.0 : s_grid[k_up - 1];
  return est;
}

}  // namespace metgeo
