#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "metgeo/distance_matrix.hpp"

namespace metgeo {

using Triple = std::array<std::size_t, 3>;
using Quadruple = std::array<std::size_t, 4>;

struct MetricAxiomReport {
  bool is_metric = true;
  /// (i, j, k) with d(i,k) > d(i,j) + d(j,k) + tol, i < k, j distinct.
  std::vector<Triple> violations;
};

/// Scans every triple for triangle-inequality violations.
MetricAxiomReport check_metric_axioms(const DistanceMatrix& d, double tol = 1e-9);

/// Smallest K >= 1 with d(i,k) <= K max(d(i,j), d(j,k)) over all triples.
double quasi_metric_constant(const DistanceMatrix& d);

struct PtolemyOptions {
  double tol = 1e-9;           ///< violation threshold on the slack
  double equality_tol = 1e-7;  ///< |slack| at or below this counts as equality
  std::size_t max_equalities = std::numeric_limits<std::size_t>::max();
  unsigned threads = 1;
};

/// Ptolemy slack of an unordered quadruple: with pairing products
/// p = d12 d34, q = d13 d24, r = d14 d23 sorted ascending, the slack is
/// (smallest + middle) - largest. The quadruple is Ptolemaic iff slack >= 0.
double ptolemy_slack(const DistanceMatrix& d, const Quadruple& q);

struct PtolemyReport {
  bool satisfied = true;
  /// Minimum slack over all quadruples; +inf when n < 4.
  double worst_slack = std::numeric_limits<double>::infinity();
  std::optional<Quadruple> worst_quadruple;
  /// Quadruples with |slack| <= equality_tol, in lexicographic order,
  /// truncated to max_equalities entries. equality_count is the full count.
  std::vector<Quadruple> equality_quadruples;
  std::size_t equality_count = 0;
  std::size_t quadruples_checked = 0;
};

PtolemyReport ptolemy_check(const DistanceMatrix& d, const PtolemyOptions& options = {});

/// Entrywise power d^q. Throws DomainError for q <= 0. For q <= 1 the result
/// is a metric whenever d is; for q > 1 it is in general only a quasi-metric.
DistanceMatrix snowflake(const DistanceMatrix& d, double q);
inline bool snowflake_preserves_metric(double q) { return q > 0.0 && q <= 1.0; }

/// Involution at z: d_z(a,b) = d(a,b) / (d(a,z) d(b,z)) on the other n-1
/// points (original order, z removed). Requires n >= 3.
DistanceMatrix involute(const DistanceMatrix& d, std::size_t z);
DistanceMatrix involute(const DistanceMatrix& d, const std::string& z);

/// d(i,j) d(k,l) / (d(i,k) d(j,l)). Indices must be pairwise distinct.
double cross_ratio(const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t k,
                   std::size_t l);

struct MobiusWitness {
  /// Indices into the first matrix, in cross_ratio argument order.
  Quadruple quadruple{};
  std::array<std::string, 4> labels;
  double first = 0.0;
  double second = 0.0;
};

struct MobiusResult {
  bool equivalent = true;
  std::optional<MobiusWitness> witness;
};

/// Compares every cross ratio of `a` with the one of `b` on the same labels
/// (b may list them in another order). Relative tolerance:
/// |x - y| <= tol * max(|x|, |y|). Throws StructuralError if the label sets
/// differ.
MobiusResult mobius_equivalent(const DistanceMatrix& a, const DistanceMatrix& b,
                               double tol = 1e-9);

struct CanonicalFourPoint {
  double a = 0.0;
  double b = 0.0;
  /// order[k] is the original index of the point renumbered as w_{k+1}.
  Quadruple order{};
  /// Normal-form metric on the original labels and in the original order:
  /// d'(w1,w2) = d'(w3,w4) = a, d'(w2,w3) = d'(w4,w1) = b,
  /// d'(w1,w3) = d'(w2,w4) = 1 in the renumbered points.
  DistanceMatrix normal_form;
};

/// Möbius normal form of a four-point space: pairing products are replaced
/// by their geometric means, the points renumbered so that the w1w3/w2w4
/// pairing is largest, and the result scaled so that pairing has length 1.
/// Throws StructuralError unless n == 4.
CanonicalFourPoint canonical_four_point(const DistanceMatrix& d);

}  // namespace metgeo
