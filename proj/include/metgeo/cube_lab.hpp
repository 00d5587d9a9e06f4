#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "metgeo/distance_matrix.hpp"

namespace metgeo::cube {

using BigInt = boost::multiprecision::cpp_int;

/// 0/1 vector of length n <= 64; coordinate k (1-based) is bit k-1.
class BitIndex {
 public:
  BitIndex() = default;
  BitIndex(std::uint64_t bits, int length);
  /// Parses "10010" (coordinate 1 first).
  static BitIndex parse(const std::string& text);

  std::uint64_t bits() const { return bits_; }
  int length() const { return length_; }
  bool operator[](int coordinate) const { return (bits_ >> (coordinate - 1)) & 1u; }
  int weight() const;
  /// Flips every coordinate.
  BitIndex complement() const;
  std::string str() const;

  friend bool operator==(const BitIndex&, const BitIndex&) = default;
  friend auto operator<=>(const BitIndex&, const BitIndex&) = default;

 private:
  std::uint64_t bits_ = 0;
  int length_ = 0;
};

/// Number of differing coordinates. Throws DomainError on length mismatch.
int hamming_distance(const BitIndex& a, const BitIndex& b);

/// S_{n,m}: all length-n indices with exactly m ones, in increasing order of
/// their bit patterns. Pairwise Hamming distances are even.
class Slice {
 public:
  Slice(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<BitIndex>& elements() const { return elements_; }
  const BitIndex& operator[](std::size_t i) const { return elements_[i]; }
  std::optional<std::size_t> index_of(const BitIndex& index) const;
  std::vector<std::string> labels() const;

 private:
  int n_, m_;
  std::vector<BitIndex> elements_;
  std::unordered_map<std::uint64_t, std::size_t> position_;
};

/// 1 <= k_1 < ... < k_{2m} <= n.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::vector<int> k, int n);
  const std::vector<int>& values() const { return k_; }
  int m() const { return static_cast<int>(k_.size() / 2); }
  int n() const { return n_; }
  std::string str() const;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> k_;
  int n_ = 0;
};

/// phi_K(i_1..i_m) = sum_j (i_j ? e_{k_{2j}} : e_{k_{2j-1}}); `cube_vertex`
/// has length m. The map is a factor-2 homothety into S_{n,m}.
BitIndex phi(const MultiIndex& k, const BitIndex& cube_vertex);

/// n_1 = 2 and n_m = n_{m-1} + 2^{m-1} C(n_{m-1}, 2m-2) + 1, exact.
std::vector<BigInt> n_schedule(int m);
BigInt binomial(const BigInt& n, int k);

/// n_m as an int for m <= 3. Larger m throws PreconditionError quoting the
/// size of the slice that would have to be enumerated.
int feasible_n(int m);

/// I -> I/m in the l1 ball; pairwise l1 distance is d_H / m.
std::vector<double> scaling_map(const BitIndex& index, int m);

/// A target map Phi: S_{n,m} -> Y given by its distance matrix. Matrix labels
/// are the bit strings of the slice elements (any order).
class CubeTarget {
 public:
  CubeTarget(DistanceMatrix target, int m);

  const Slice& slice() const { return slice_; }
  const DistanceMatrix& matrix() const { return target_; }
  int n() const { return slice_.n(); }
  int m() const { return slice_.m(); }
  /// |Phi(a) Phi(b)|
  double distance(const BitIndex& a, const BitIndex& b) const;
  std::size_t matrix_index(const BitIndex& a) const;

 private:
  DistanceMatrix target_;
  Slice slice_;
  std::vector<std::size_t> slice_to_matrix_;
};

/// Euclidean image of I/m in R^n, scaled by `scale`; Euclidean space is
/// Ptolemaic, so this is always an admissible target.
DistanceMatrix euclidean_slice_target(int n, int m, double scale = 1.0);

enum class Strategy { Inductive, Brute };

struct DiagonalWitness {
  MultiIndex k;
  /// Cube vertex with first coordinate 0, and its complement.
  BitIndex vertex;
  BitIndex opposite;
  BitIndex endpoint_a;  ///< phi_K(vertex)
  BitIndex endpoint_b;  ///< phi_K(opposite)
  double length = 0.0;
  double bound = 0.0;  ///< sqrt(m) b
};

struct DiagonalOptions {
  /// Full Ptolemy precondition check up to this many quadruples; above it a
  /// seeded sample of `ptolemy_samples` quadruples is checked instead.
  std::uint64_t full_ptolemy_budget = 20'000'000;
  std::uint64_t ptolemy_samples = 1'000'000;
  std::uint64_t seed = 1;
  double tol = 1e-9;  ///< relative, on the sqrt(m) b bound and the side bound
};

/// Checks the hypotheses of the short-diagonal search: n >= n_m, every
/// Hamming-2 pair within b, target Ptolemaic. Throws PreconditionError naming
/// the offending pair or quadruple.
void validate_cube_target(const CubeTarget& target, double b, const DiagonalOptions& options = {});

/// Returns a multiindex K and a diagonal of the m-cube whose image under
/// Phi o phi_K has length <= sqrt(m) b. `Brute` scans every multiindex and
/// diagonal and returns the shortest (ties: smallest K, then vertex).
/// `Inductive` replays the induction: p canonical embeddings of
/// S_{n_{m-1}, m-1}, pigeonhole on (K', diagonal), and one Ptolemy step.
DiagonalWitness find_short_diagonal(const CubeTarget& target, double b, Strategy strategy,
                                    const DiagonalOptions& options = {});

/// Builds the target for S_{n,m}.
using TargetBuilder = std::function<DistanceMatrix(int n, int m)>;

struct ObstructionRow {
  int m = 0;
  int n = 0;
  double c_slice = 1.0;  ///< snowflake constant measured on this slice alone
  double b = 0.0;        ///< c 2^q / m^q with the uniform c
  double bound = 0.0;    ///< sqrt(m) b
  std::optional<DiagonalWitness> inductive;
  DiagonalWitness brute;
  double long_pair_lower = 0.0;  ///< 2^q / c
  double lhs = 0.0;              ///< sqrt(m) / m^q
  double rhs = 0.0;              ///< 1 / c^2
  double slack = 0.0;            ///< lhs - rhs
};

struct ObstructionReport {
  double q = 0.0;
  /// Snowflake constant of the target with respect to (l1 distance)^q over
  /// all tested slices: (1/c) |zz'|^q <= |Phi Phi'| <= c |zz'|^q.
  double c = 1.0;
  std::vector<ObstructionRow> rows;
  /// Slack strictly decreasing in m (q > 1/2), constant (q = 1/2) or
  /// increasing (q < 1/2).
  bool slack_decreasing = false;
  /// For q > 1/2, the m beyond which sqrt(m)/m^q < 1/c^2, i.e. c^{4/(2q-1)}.
  std::optional<double> violation_m;
};

/// Snowflake constant of `target` over slice pairs against (d_H/m)^q.
double slice_snowflake_constant(const CubeTarget& target, double q);

/// For each m in m_list (each <= 3), builds the target on S_{n_m, m},
/// measures its q-snowflake constant, derives the side bound b = c 2^q/m^q,
/// runs find_short_diagonal and evaluates sqrt(m)/m^q >= 1/c^2.
ObstructionReport snowflake_obstruction_experiment(double q, const std::vector<int>& m_list,
                                                   const TargetBuilder& builder,
                                                   bool run_inductive = true,
                                                   const DiagonalOptions& options = {});

}  // namespace metgeo::cube
