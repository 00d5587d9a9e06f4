#pragma once

#include <random>

#include "metgeo/distance_matrix.hpp"

namespace metgeo::families {

/// {0, ..., n} with d(i, j) = log(1 + |i - j|).
DistanceMatrix kovalev_segment(int n);

/// {0, ..., n} with unit steps: d(i, j) = |i - j|.
DistanceMatrix path_graph(int n);

/// Shortest-path metric of the n-cycle with unit edges.
DistanceMatrix cycle_graph(int n);

/// Center "c" plus leaves "l1".."ln" with the given edge lengths.
DistanceMatrix star_tree(const std::vector<double>& edge_lengths);

/// Leaves of a complete binary tree of the given depth; two leaves whose
/// lowest common ancestor sits h levels up are at distance 2^h.
DistanceMatrix binary_ultrametric(int depth);

/// (1/k) Z^dim inside the closed l1 unit ball, with the l1 metric.
DistanceMatrix l1_ball_lattice(int dimension, int k);

/// Uniform random points in [0,1]^dim, Euclidean distances.
DistanceMatrix random_euclidean(std::size_t n, int dimension, std::mt19937_64& rng);

/// Entries uniform in [1, 2]; every such matrix is a metric.
DistanceMatrix random_bounded_metric(std::size_t n, std::mt19937_64& rng);

/// Leaf-to-leaf distances of a random weighted tree: each new vertex
/// attaches to a uniformly chosen earlier vertex with an edge length in
/// [0.1, 1]. All vertices are returned. Tree metrics are 0-hyperbolic.
DistanceMatrix random_tree_metric(std::size_t n, std::mt19937_64& rng);

}  // namespace metgeo::families
