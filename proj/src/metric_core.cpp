#include "metgeo/metric_core.hpp"

#include <algorithm>
#include <cmath>

#include "metgeo/error.hpp"
#include "metgeo/parallel.hpp"

namespace metgeo {

MetricAxiomReport check_metric_axioms(const DistanceMatrix& d, double tol) {
  MetricAxiomReport report;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (d(i, k) > d(i, j) + d(j, k) + tol) report.violations.push_back({i, j, k});
      }
    }
  }
  report.is_metric = report.violations.empty();
  return report;
}

double quasi_metric_constant(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  double K = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        K = std::max(K, d(i, k) / std::max(d(i, j), d(j, k)));
      }
    }
  }
  return K;
}

double ptolemy_slack(const DistanceMatrix& d, const Quadruple& q) {
  const auto [i, j, k, l] = q;
  std::array<double, 3> p{d(i, j) * d(k, l), d(i, k) * d(j, l), d(i, l) * d(j, k)};
  std::sort(p.begin(), p.end());
  return (p[0] + p[1]) - p[2];
}

namespace {

struct PtolemyPartial {
  double worst = std::numeric_limits<double>::infinity();
  Quadruple worst_quadruple{};
  std::vector<Quadruple> equalities;
  std::size_t equality_count = 0;
  std::size_t checked = 0;
};

}  // namespace

PtolemyReport ptolemy_check(const DistanceMatrix& d, const PtolemyOptions& options) {
  PtolemyReport report;
  const std::size_t n = d.size();
  if (n < 4) return report;

  std::vector<PtolemyPartial> partial(n - 3);
  detail::parallel_for(n - 3, options.threads, [&](std::size_t i) {
    PtolemyPartial& out = partial[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
          const Quadruple q{i, j, k, l};
          const double s = ptolemy_slack(d, q);
          ++out.checked;
          if (s < out.worst) {
            out.worst = s;
            out.worst_quadruple = q;
          }
          if (std::abs(s) <= options.equality_tol) {
            if (out.equality_count < options.max_equalities) out.equalities.push_back(q);
            ++out.equality_count;
          }
        }
      }
    }
  });

  for (auto& part : partial) {
    report.quadruples_checked += part.checked;
    if (part.checked > 0 && part.worst < report.worst_slack) {
      report.worst_slack = part.worst;
      report.worst_quadruple = part.worst_quadruple;
    }
    report.equality_count += part.equality_count;
    for (const auto& q : part.equalities) {
      if (report.equality_quadruples.size() >= options.max_equalities) break;
      report.equality_quadruples.push_back(q);
    }
  }
  report.satisfied = report.worst_slack >= -options.tol;
  return report;
}

DistanceMatrix snowflake(const DistanceMatrix& d, double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("snowflake exponent must be positive");
  if (q == 1.0) return d;
  return d.transformed([q](double x) { return std::pow(x, q); });
}

DistanceMatrix involute(const DistanceMatrix& d, std::size_t z) {
  const std::size_t n = d.size();
  if (z >= n) throw StructuralError("involution point index out of range");
  if (n < 3) throw PreconditionError("involution needs at least three points");
  std::vector<std::size_t> keep;
  keep.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != z) keep.push_back(i);
  }
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (auto i : keep) labels.push_back(d.label(i));
  return DistanceMatrix::from_function(std::move(labels), [&](std::size_t a, std::size_t b) {
    const std::size_t x = keep[a];
    const std::size_t y = keep[b];
    return d(x, y) / (d(x, z) * d(y, z));
  });
}

DistanceMatrix involute(const DistanceMatrix& d, const std::string& z) {
  return involute(d, d.index_of(z));
}

double cross_ratio(const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t k,
                   std::size_t l) {
  const std::size_t n = d.size();
  if (i >= n || j >= n || k >= n || l >= n) throw StructuralError("cross ratio index out of range");
  if (i == j || i == k || i == l || j == k || j == l || k == l) {
    throw DomainError("cross ratio needs four distinct points");
  }
  const double denominator = d(i, k) * d(j, l);
  if (denominator == 0.0) throw DomainError("cross ratio denominator vanishes");
  return d(i, j) * d(k, l) / denominator;
}

MobiusResult mobius_equivalent(const DistanceMatrix& a, const DistanceMatrix& b, double tol) {
  const std::size_t n = a.size();
  if (b.size() != n) throw StructuralError("Möbius comparison: label sets differ in size");
  std::vector<std::size_t> to_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto j = b.find(a.label(i));
    if (!j) throw StructuralError("Möbius comparison: label '" + a.label(i) + "' missing");
    to_b[i] = *j;
  }

  auto differ = [tol](double x, double y) {
    return std::abs(x - y) > tol * std::max(std::abs(x), std::abs(y));
  };

  MobiusResult result;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
          // The three independent cross ratios of {i,j,k,l}; every other
          // ordering yields one of these or a reciprocal.
          const std::array<Quadruple, 3> orders{Quadruple{i, j, k, l}, Quadruple{i, j, l, k},
                                                Quadruple{i, k, l, j}};
          for (const auto& q : orders) {
            const double x = cross_ratio(a, q[0], q[1], q[2], q[3]);
            const double y = cross_ratio(b, to_b[q[0]], to_b[q[1]], to_b[q[2]], to_b[q[3]]);
            if (differ(x, y)) {
              MobiusWitness w;
              w.quadruple = q;
              for (int t = 0; t < 4; ++t) w.labels[t] = a.label(q[t]);
              w.first = x;
              w.second = y;
              result.equivalent = false;
              result.witness = w;
              return result;
            }
          }
        }
      }
    }
  }
  return result;
}

CanonicalFourPoint canonical_four_point(const DistanceMatrix& d) {
  if (d.size() != 4) throw StructuralError("canonical four-point form needs exactly four points");

  const double a_mean = std::sqrt(d(0, 1) * d(2, 3));
  const double b_mean = std::sqrt(d(1, 2) * d(3, 0));
  const double c_mean = std::sqrt(d(0, 2) * d(1, 3));

  CanonicalFourPoint out{0.0, 0.0, {}, d};
  double side_a, side_b, diagonal;
  if (c_mean >= a_mean && c_mean >= b_mean) {
    out.order = {0, 1, 2, 3};
    side_a = a_mean;
    side_b = b_mean;
    diagonal = c_mean;
  } else if (a_mean >= b_mean) {
    out.order = {0, 2, 1, 3};
    side_a = c_mean;
    side_b = b_mean;
    diagonal = a_mean;
  } else {
    out.order = {0, 1, 3, 2};
    side_a = a_mean;
    side_b = c_mean;
    diagonal = b_mean;
  }
  out.a = side_a / diagonal;
  out.b = side_b / diagonal;

  std::array<std::array<double, 4>, 4> renumbered{};
  const auto set = [&](int x, int y, double v) {
    renumbered[out.order[x]][out.order[y]] = v;
    renumbered[out.order[y]][out.order[x]] = v;
  };
  set(0, 1, out.a);
  set(2, 3, out.a);
  set(1, 2, out.b);
  set(3, 0, out.b);
  set(0, 2, 1.0);
  set(1, 3, 1.0);
  out.normal_form = DistanceMatrix::from_function(
      d.labels(), [&](std::size_t x, std::size_t y) { return renumbered[x][y]; });
  return out;
}

}  // namespace metgeo
