#include "metgeo/distance_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "metgeo/error.hpp"
#include "metgeo/metric_core.hpp"

namespace metgeo {

namespace {

std::string entry_name(const std::vector<std::string>& labels, std::size_t i, std::size_t j) {
  return "d(" + labels[i] + "," + labels[j] + ")";
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels,
                               const std::vector<std::vector<double>>& rows)
    : n_(labels.size()), labels_(std::move(labels)) {
  if (rows.size() != n_) {
    throw StructuralError("distance matrix has " + std::to_string(rows.size()) +
                          " rows but " + std::to_string(n_) + " labels");
  }
  d_.reserve(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (rows[i].size() != n_) {
      throw StructuralError("row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(n_));
    }
    d_.insert(d_.end(), rows[i].begin(), rows[i].end());
  }
  validate();
}

DistanceMatrix::DistanceMatrix(FlatTag, std::vector<std::string> labels, std::vector<double> flat)
    : n_(labels.size()), labels_(std::move(labels)), d_(std::move(flat)) {
  validate();
}

void DistanceMatrix::validate() {
  if (n_ == 0) throw StructuralError("distance matrix must contain at least one point");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw StructuralError("duplicate label '" + l + "'");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (d_[i * n_ + i] != 0.0) {
      throw StructuralError("nonzero diagonal entry " + entry_name(labels_, i, i));
    }
    for (std::size_t j = i + 1; j < n_; ++j) {
      double& a = d_[i * n_ + j];
      double& b = d_[j * n_ + i];
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw StructuralError("non-finite entry " + entry_name(labels_, i, j));
      }
      if (a < 0.0 || b < 0.0) {
        throw StructuralError("negative entry " + entry_name(labels_, i, j));
      }
      if (std::abs(a - b) > 1e-12 * std::max(a, b)) {
        throw StructuralError("asymmetric entries " + entry_name(labels_, i, j) + " and " +
                              entry_name(labels_, j, i));
      }
      if (a == 0.0 || b == 0.0) {
        throw StructuralError("zero distance between distinct points " +
                              entry_name(labels_, i, j));
      }
      if (a != b) a = b = 0.5 * (a + b);
    }
  }
}

DistanceMatrix DistanceMatrix::from_function(
    std::vector<std::string> labels,
    const std::function<double(std::size_t, std::size_t)>& f) {
  const std::size_t n = labels.size();
  std::vector<double> flat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      flat[i * n + j] = flat[j * n + i] = f(i, j);
    }
  }
  return DistanceMatrix(FlatTag{}, std::move(labels), std::move(flat));
}

std::vector<std::string> DistanceMatrix::default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

std::optional<std::size_t> DistanceMatrix::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t DistanceMatrix::index_of(const std::string& label) const {
  if (auto i = find(label)) return *i;
  throw StructuralError("unknown label '" + label + "'");
}

std::vector<std::vector<double>> DistanceMatrix::rows() const {
  std::vector<std::vector<double>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    out[i].assign(d_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                  d_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
  }
  return out;
}

DistanceMatrix DistanceMatrix::transformed(const std::function<double(double)>& f) const {
  std::vector<double> flat(d_.size(), 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      flat[i * n_ + j] = flat[j * n_ + i] = f(d_[i * n_ + j]);
    }
  }
  return DistanceMatrix(FlatTag{}, labels_, std::move(flat));
}

DistanceMatrix DistanceMatrix::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw DomainError("scale factor must be positive and finite");
  }
  return transformed([factor](double x) { return factor * x; });
}

DistanceMatrix DistanceMatrix::submatrix(std::span<const std::size_t> indices) const {
  std::vector<std::string> labels;
  labels.reserve(indices.size());
  for (auto i : indices) {
    if (i >= n_) throw StructuralError("submatrix index out of range");
    labels.push_back(labels_[i]);
  }
  const std::size_t m = indices.size();
  std::vector<double> flat(m * m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) flat[a * m + b] = (*this)(indices[a], indices[b]);
  }
  return DistanceMatrix(FlatTag{}, std::move(labels), std::move(flat));
}

double DistanceMatrix::max_entry() const { return *std::max_element(d_.begin(), d_.end()); }

double DistanceMatrix::min_off_diagonal() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) m = std::min(m, d_[i * n_ + j]);
  }
  return m;
}

QuasiMetricSpace QuasiMetricSpace::from(DistanceMatrix matrix) {
  const double K = quasi_metric_constant(matrix);
  return QuasiMetricSpace{std::move(matrix), K};
}

}  // namespace metgeo
