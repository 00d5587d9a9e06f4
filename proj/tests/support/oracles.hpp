#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's algorithms; only DistanceMatrix is shared.

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "metgeo/distance_matrix.hpp"
#include "metgeo/metric_core.hpp"

namespace metgeo::oracle {

/// Minimum over the 24 orderings (a,b,c,d) of the labeled inequality
/// d(a,b)d(c,d) + d(a,d)d(b,c) - d(a,c)d(b,d).
double labeled_ptolemy_min_slack(const DistanceMatrix& d, const Quadruple& q);
bool ptolemy_brute(const DistanceMatrix& d, double tol);

/// Every ordered triple, including repeated indices.
bool triangle_brute(const DistanceMatrix& d, double tol);

/// Shortest paths on the complete graph by Dijkstra from every source;
/// row-major n x n.
std::vector<double> dijkstra_all_pairs(const DistanceMatrix& rho);

/// max over ordered (x, y, z) avoiding o of min((x|z)_o, (y|z)_o) - (x|y)_o,
/// clipped at 0.
double delta_four_point(const DistanceMatrix& d, std::size_t o);

/// acosh(-<x, y>) on the hyperboloid lifts of two ball points.
double hyperboloid_acosh_distance(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// Points of the Euclidean plane.
DistanceMatrix plane_metric(const std::vector<std::complex<double>>& z);

/// Mixture of uniform-[1,2] matrices, Euclidean point sets in R^1..R^3 and
/// shortest-path metrics of random weighted complete graphs.
DistanceMatrix random_metric(std::size_t n, std::mt19937_64& rng);

}  // namespace metgeo::oracle
