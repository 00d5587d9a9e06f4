#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace metgeo {

/// Symmetric, zero-diagonal matrix of positive off-diagonal distances over
/// labeled points. Nothing beyond positivity and symmetry is assumed; the
/// triangle inequality may or may not hold.
class DistanceMatrix {
 public:
  /// Validates and stores `rows` (row-major n x n). Entries that differ from
  /// their transpose by at most 1e-12 relative are averaged; anything larger
  /// is a StructuralError, as are non-finite, negative or zero off-diagonal
  /// entries, a nonzero diagonal and duplicate labels.
  DistanceMatrix(std::vector<std::string> labels,
                 const std::vector<std::vector<double>>& rows);

  /// Builds the matrix from f(i, j) evaluated for i < j.
  static DistanceMatrix from_function(
      std::vector<std::string> labels,
      const std::function<double(std::size_t, std::size_t)>& f);

  /// Labels "0", "1", ..., "n-1".
  static std::vector<std::string> default_labels(std::size_t n);

  std::size_t size() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {d_.data() + i * n_, n_};
  }

  std::optional<std::size_t> find(const std::string& label) const;
  /// Like find() but throws StructuralError for unknown labels.
  std::size_t index_of(const std::string& label) const;

  std::vector<std::vector<double>> rows() const;

  /// Entrywise f(d) on off-diagonal entries.
  DistanceMatrix transformed(const std::function<double(double)>& f) const;
  DistanceMatrix scaled(double factor) const;
  /// Restriction to the given point indices, in that order.
  DistanceMatrix submatrix(std::span<const std::size_t> indices) const;

  double max_entry() const;
  double min_off_diagonal() const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  struct FlatTag {};
  DistanceMatrix(FlatTag, std::vector<std::string> labels, std::vector<double> flat);
  void validate();

  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> d_;
};

/// A distance matrix together with its smallest quasi-metric constant K:
/// d(x,z) <= K * max(d(x,y), d(y,z)) for all x, y, z.
struct QuasiMetricSpace {
  DistanceMatrix matrix;
  double K = 1.0;

  static QuasiMetricSpace from(DistanceMatrix matrix);
};

}  // namespace metgeo
