#include "metgeo/families.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "metgeo/error.hpp"

namespace metgeo::families {

namespace {

std::vector<std::string> integer_labels(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i <= n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace

DistanceMatrix kovalev_segment(int n) {
  if (n < 1) throw DomainError("segment needs n >= 1");
  return DistanceMatrix::from_function(integer_labels(n), [](std::size_t i, std::size_t j) {
    return std::log1p(static_cast<double>(j - i));
  });
}

DistanceMatrix path_graph(int n) {
  if (n < 1) throw DomainError("path needs n >= 1");
  return DistanceMatrix::from_function(integer_labels(n),
                                       [](std::size_t i, std::size_t j) { return static_cast<double>(j - i); });
}

DistanceMatrix cycle_graph(int n) {
  if (n < 3) throw DomainError("cycle needs n >= 3");
  return DistanceMatrix::from_function(DistanceMatrix::default_labels(static_cast<std::size_t>(n)),
                                       [n](std::size_t i, std::size_t j) {
                                         const auto k = static_cast<int>(j - i);
                                         return static_cast<double>(std::min(k, n - k));
                                       });
}

DistanceMatrix star_tree(const std::vector<double>& edge_lengths) {
  if (edge_lengths.empty()) throw DomainError("star needs at least one leaf");
  std::vector<std::string> labels{"c"};
  for (std::size_t i = 0; i < edge_lengths.size(); ++i) labels.push_back("l" + std::to_string(i + 1));
  return DistanceMatrix::from_function(labels, [&](std::size_t i, std::size_t j) {
    return i == 0 ? edge_lengths[j - 1] : edge_lengths[i - 1] + edge_lengths[j - 1];
  });
}

DistanceMatrix binary_ultrametric(int depth) {
  if (depth < 1 || depth > 20) throw DomainError("ultrametric depth must lie in [1, 20]");
  const std::size_t n = std::size_t{1} << depth;
  return DistanceMatrix::from_function(DistanceMatrix::default_labels(n), [](std::size_t i, std::size_t j) {
    return std::ldexp(1.0, std::bit_width(i ^ j));
  });
}

DistanceMatrix l1_ball_lattice(int dimension, int k) {
  if (dimension < 1 || k < 1) throw DomainError("lattice needs dimension >= 1 and k >= 1");
  std::vector<std::vector<int>> points;
  std::vector<int> p(static_cast<std::size_t>(dimension), -k);
  while (true) {
    int norm = 0;
    for (int v : p) norm += std::abs(v);
    if (norm <= k) points.push_back(p);
    std::size_t i = 0;
    while (i < p.size() && p[i] == k) p[i++] = -k;
    if (i == p.size()) break;
    ++p[i];
  }
  std::vector<std::string> labels;
  for (const auto& q : points) {
    std::string s = "(";
    for (std::size_t i = 0; i < q.size(); ++i) s += (i ? "," : "") + std::to_string(q[i]);
    labels.push_back(s + ")/" + std::to_string(k));
  }
  return DistanceMatrix::from_function(labels, [&](std::size_t i, std::size_t j) {
    int sum = 0;
    for (std::size_t c = 0; c < points[i].size(); ++c) sum += std::abs(points[i][c] - points[j][c]);
    return static_cast<double>(sum) / k;
  });
}

DistanceMatrix random_euclidean(std::size_t n, int dimension, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> x(n, std::vector<double>(static_cast<std::size_t>(dimension)));
  for (auto& p : x)
    for (auto& v : p) v = u(rng);
  return DistanceMatrix::from_function(DistanceMatrix::default_labels(n), [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t c = 0; c < x[i].size(); ++c) s += (x[i][c] - x[j][c]) * (x[i][c] - x[j][c]);
    return std::sqrt(s);
  });
}

DistanceMatrix random_bounded_metric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(1.0, 2.0);
  return DistanceMatrix::from_function(DistanceMatrix::default_labels(n),
                                       [&](std::size_t, std::size_t) { return u(rng); });
}

DistanceMatrix random_tree_metric(std::size_t n, std::mt19937_64& rng) {
  if (n == 0) throw DomainError("tree needs at least one vertex");
  std::uniform_real_distribution<double> length(0.1, 1.0);
  // depth[v] from the root and parent links; distance via the common ancestor.
  std::vector<std::size_t> parent(n, 0);
  std::vector<double> depth(n, 0.0);
  for (std::size_t v = 1; v < n; ++v) {
    parent[v] = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
    depth[v] = depth[parent[v]] + length(rng);
  }
  return DistanceMatrix::from_function(DistanceMatrix::default_labels(n), [&](std::size_t i, std::size_t j) {
    std::size_t a = i, b = j;
    while (a != b) (a > b ? a : b) = parent[a > b ? a : b];
    return depth[i] + depth[j] - 2.0 * depth[a];
  });
}

}  // namespace metgeo::families
