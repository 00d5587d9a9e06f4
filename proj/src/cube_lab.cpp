#include "metgeo/cube_lab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>

#include "metgeo/error.hpp"
#include "metgeo/metric_core.hpp"

namespace metgeo::cube {

namespace {

std::uint64_t low_mask(int length) {
  return length >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << length) - 1;
}

std::uint64_t coordinate_bit(int coordinate) { return std::uint64_t{1} << (coordinate - 1); }

}  // namespace

BitIndex::BitIndex(std::uint64_t bits, int length) : bits_(bits), length_(length) {
  if (length < 0 || length > 64) throw DomainError("bit index length must lie in [0, 64]");
  if (bits & ~low_mask(length)) throw DomainError("bit index has bits beyond its length");
}

BitIndex BitIndex::parse(const std::string& text) {
  if (text.size() > 64) throw StructuralError("bit index longer than 64: '" + text + "'");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits |= std::uint64_t{1} << i;
    } else if (text[i] != '0') {
      throw StructuralError("bit index must consist of 0 and 1: '" + text + "'");
    }
  }
  return BitIndex(bits, static_cast<int>(text.size()));
}

int BitIndex::weight() const { return std::popcount(bits_); }

BitIndex BitIndex::complement() const { return BitIndex(~bits_ & low_mask(length_), length_); }

std::string BitIndex::str() const {
  std::string s(static_cast<std::size_t>(length_), '0');
  for (int i = 0; i < length_; ++i) {
    if ((bits_ >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

int hamming_distance(const BitIndex& a, const BitIndex& b) {
  if (a.length() != b.length()) throw DomainError("Hamming distance: length mismatch");
  return std::popcount(a.bits() ^ b.bits());
}

BigInt binomial(const BigInt& n, int k) {
  if (k < 0 || n < k) return 0;
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

Slice::Slice(int n, int m) : n_(n), m_(m) {
  if (n < 1 || n > 62 || m < 0 || m > n) throw DomainError("slice needs 0 <= m <= n <= 62");
  if (binomial(n, m) > 50'000'000) {
    throw PreconditionError("slice S_{" + std::to_string(n) + "," + std::to_string(m) + "} has " +
                            binomial(n, m).str() + " elements, too many to enumerate");
  }
  std::uint64_t v = low_mask(m);
  const std::uint64_t end = std::uint64_t{1} << n;
  while (v < end) {
    position_.emplace(v, elements_.size());
    elements_.emplace_back(v, n);
    if (v == 0) break;
    // Next larger integer with the same popcount.
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
  }
}

std::optional<std::size_t> Slice::index_of(const BitIndex& index) const {
  if (index.length() != n_) return std::nullopt;
  auto it = position_.find(index.bits());
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Slice::labels() const {
  std::vector<std::string> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(e.str());
  return out;
}

MultiIndex::MultiIndex(std::vector<int> k, int n) : k_(std::move(k)), n_(n) {
  if (k_.empty() || k_.size() % 2 != 0) throw DomainError("multiindex needs 2m entries, m >= 1");
  for (std::size_t i = 0; i < k_.size(); ++i) {
    if (k_[i] < 1 || k_[i] > n_ || (i > 0 && k_[i] <= k_[i - 1])) {
      throw DomainError("multiindex must satisfy 1 <= k_1 < ... < k_2m <= n");
    }
  }
}

std::string MultiIndex::str() const {
  std::string s;
  for (std::size_t i = 0; i < k_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(k_[i]);
  }
  return s;
}

BitIndex phi(const MultiIndex& k, const BitIndex& cube_vertex) {
  if (cube_vertex.length() != k.m()) throw DomainError("cube vertex length must equal m");
  std::uint64_t bits = 0;
  for (int j = 1; j <= k.m(); ++j) {
    const int coordinate = k.values()[static_cast<std::size_t>(2 * j - 2 + (cube_vertex[j] ? 1 : 0))];
    bits |= coordinate_bit(coordinate);
  }
  return BitIndex(bits, k.n());
}

std::vector<BigInt> n_schedule(int m) {
  if (m < 1) throw DomainError("n schedule needs m >= 1");
  std::vector<BigInt> n{2};
  for (int j = 2; j <= m; ++j) {
    const BigInt p = (BigInt{1} << (j - 1)) * binomial(n.back(), 2 * j - 2) + 1;
    n.push_back(n.back() + p);
  }
  return n;
}

int feasible_n(int m) {
  const auto schedule = n_schedule(m);
  if (m > 3) {
    throw PreconditionError("m = " + std::to_string(m) + " needs n = " + schedule.back().str() +
                            " and a slice of " + binomial(schedule.back(), m).str() +
                            " points; only m <= 3 is feasible");
  }
  return static_cast<int>(schedule.back());
}

std::vector<double> scaling_map(const BitIndex& index, int m) {
  if (m < 1 || index.weight() != m) throw DomainError("scaling map needs an element of S_{n,m}");
  std::vector<double> z(static_cast<std::size_t>(index.length()), 0.0);
  for (int i = 1; i <= index.length(); ++i) {
    if (index[i]) z[static_cast<std::size_t>(i - 1)] = 1.0 / m;
  }
  return z;
}

CubeTarget::CubeTarget(DistanceMatrix target, int m)
    : target_(std::move(target)),
      slice_([&] {
        const int n = static_cast<int>(target_.label(0).size());
        return Slice(n, m);
      }()) {
  if (target_.size() != slice_.size()) {
    throw StructuralError("target has " + std::to_string(target_.size()) + " points but S_{" +
                          std::to_string(slice_.n()) + "," + std::to_string(m) + "} has " +
                          std::to_string(slice_.size()));
  }
  slice_to_matrix_.assign(slice_.size(), 0);
  std::vector<bool> seen(slice_.size(), false);
  for (std::size_t i = 0; i < target_.size(); ++i) {
    const auto index = BitIndex::parse(target_.label(i));
    auto pos = slice_.index_of(index);
    if (!pos) throw StructuralError("label '" + target_.label(i) + "' is not an element of the slice");
    seen[*pos] = true;
    slice_to_matrix_[*pos] = i;
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
    throw StructuralError("target labels do not cover the slice");
  }
}

std::size_t CubeTarget::matrix_index(const BitIndex& a) const {
  auto pos = slice_.index_of(a);
  if (!pos) throw DomainError("index " + a.str() + " is not in the slice");
  return slice_to_matrix_[*pos];
}

double CubeTarget::distance(const BitIndex& a, const BitIndex& b) const {
  return target_(matrix_index(a), matrix_index(b));
}

DistanceMatrix euclidean_slice_target(int n, int m, double scale) {
  if (!(scale > 0.0)) throw DomainError("target scale must be positive");
  const Slice slice(n, m);
  return DistanceMatrix::from_function(slice.labels(), [&](std::size_t i, std::size_t j) {
    return scale * std::sqrt(static_cast<double>(hamming_distance(slice[i], slice[j]))) / m;
  });
}

void validate_cube_target(const CubeTarget& target, double b, const DiagonalOptions& options) {
  const int m = target.m();
  if (m < 1) throw PreconditionError("cube dimension m must be at least 1");
  if (!(b > 0.0)) throw DomainError("side bound b must be positive");
  const BigInt needed = n_schedule(m).back();
  if (BigInt(target.n()) < needed) {
    throw PreconditionError("n = " + std::to_string(target.n()) + " is below n_" + std::to_string(m) + " = " +
                            needed.str());
  }

  const auto& slice = target.slice();
  for (std::size_t i = 0; i < slice.size(); ++i) {
    for (std::size_t j = i + 1; j < slice.size(); ++j) {
      if (hamming_distance(slice[i], slice[j]) != 2) continue;
      const double d = target.distance(slice[i], slice[j]);
      if (d > b * (1.0 + options.tol)) {
        throw PreconditionError("side bound violated: |Phi(" + slice[i].str() + ") Phi(" + slice[j].str() +
                                ")| = " + std::to_string(d) + " > b = " + std::to_string(b));
      }
    }
  }

  const auto& d = target.matrix();
  const std::uint64_t N = d.size();
  const BigInt quadruples = binomial(BigInt(N), 4);
  auto fail = [&](const Quadruple& q) {
    throw PreconditionError("target violates the Ptolemy inequality on (" + d.label(q[0]) + ", " +
                            d.label(q[1]) + ", " + d.label(q[2]) + ", " + d.label(q[3]) + ")");
  };
  if (quadruples <= options.full_ptolemy_budget) {
    const auto report = ptolemy_check(d);
    if (!report.satisfied) fail(*report.worst_quadruple);
    return;
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, N - 1);
  for (std::uint64_t s = 0; s < options.ptolemy_samples; ++s) {
    Quadruple q{pick(rng), pick(rng), pick(rng), pick(rng)};
    std::sort(q.begin(), q.end());
    if (std::adjacent_find(q.begin(), q.end()) != q.end()) continue;
    if (ptolemy_slack(d, q) < -1e-9) fail(q);
  }
}

namespace {

struct Partial {
  std::vector<int> k;        // multiindex over the first n_j coordinates
  std::uint64_t vertex = 0;  // cube vertex bits, first coordinate 0
  double length = 0.0;
};

class InductiveSearch {
 public:
  InductiveSearch(const CubeTarget& target, double b, double tol)
      : target_(target), b_(b), tol_(tol), schedule_(n_schedule(target.m())) {}

  Partial solve(int j, std::uint64_t extra) const {
    const int n_target = target_.n();
    if (j == 1) {
      const BitIndex a(coordinate_bit(1) | extra, n_target);
      const BitIndex b(coordinate_bit(2) | extra, n_target);
      return Partial{{1, 2}, 0, target_.distance(a, b)};
    }
    const int n_prev = static_cast<int>(schedule_[static_cast<std::size_t>(j - 2)]);
    const int n_here = static_cast<int>(schedule_[static_cast<std::size_t>(j - 1)]);
    const int p = n_here - n_prev;

    // (K', diagonal) -> the canonical embeddings rho_i producing it.
    std::map<std::pair<std::vector<int>, std::uint64_t>, std::vector<int>> groups;
    std::vector<Partial> results(static_cast<std::size_t>(p));
    for (int i = 1; i <= p; ++i) {
      results[static_cast<std::size_t>(i - 1)] = solve(j - 1, extra | coordinate_bit(n_prev + i));
      const auto& r = results[static_cast<std::size_t>(i - 1)];
      groups[{r.k, r.vertex}].push_back(i);
    }
    auto chosen = std::find_if(groups.begin(), groups.end(), [](const auto& g) { return g.second.size() >= 2; });
    if (chosen == groups.end()) {
      throw std::logic_error("pigeonhole failed: fewer embeddings than (K', diagonal) pairs");
    }
    const int i1 = chosen->second[0];
    const int i2 = chosen->second[1];

    std::vector<int> k = chosen->first.first;
    k.push_back(n_prev + i1);
    k.push_back(n_prev + i2);
    const MultiIndex K(k, n_target);

    const std::uint64_t a = chosen->first.second;
    const std::uint64_t a_bar = ~a & low_mask(j - 1);
    const std::uint64_t last = std::uint64_t{1} << (j - 1);
    auto y = [&](std::uint64_t vertex) {
      return BitIndex(phi(K, BitIndex(vertex, j)).bits() | extra, n_target);
    };
    const BitIndex a0 = y(a), a1 = y(a | last), abar0 = y(a_bar), abar1 = y(a_bar | last);

    const double d1 = target_.distance(a0, abar1);
    const double d2 = target_.distance(abar0, a1);
    const double budget = j * b_ * b_ * (1.0 + tol_);
    if (d1 * d2 > budget) {
      throw PreconditionError("Ptolemy step failed on (" + a0.str() + ", " + abar0.str() + ", " + abar1.str() +
                              ", " + a1.str() + "): target is not Ptolemaic");
    }
    if (d1 <= d2) return Partial{std::move(k), a, d1};
    return Partial{std::move(k), a | last, d2};
  }

 private:
  const CubeTarget& target_;
  double b_;
  double tol_;
  std::vector<BigInt> schedule_;
};

DiagonalWitness make_witness(const CubeTarget& target, const MultiIndex& k, std::uint64_t vertex, double b) {
  const int m = target.m();
  const BitIndex v(vertex, m);
  const BitIndex w = v.complement();
  return DiagonalWitness{k,
                         v,
                         w,
                         phi(k, v),
                         phi(k, w),
                         target.distance(phi(k, v), phi(k, w)),
                         std::sqrt(static_cast<double>(m)) * b};
}

bool next_combination(std::vector<int>& k, int n) {
  const int r = static_cast<int>(k.size());
  int i = r - 1;
  while (i >= 0 && k[static_cast<std::size_t>(i)] == n - r + i + 1) --i;
  if (i < 0) return false;
  ++k[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < r; ++j) k[static_cast<std::size_t>(j)] = k[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

}  // namespace

DiagonalWitness find_short_diagonal(const CubeTarget& target, double b, Strategy strategy,
                                    const DiagonalOptions& options) {
  validate_cube_target(target, b, options);
  const int m = target.m();
  const int n = target.n();

  if (strategy == Strategy::Inductive) {
    const InductiveSearch search(target, b, options.tol);
    const Partial found = search.solve(m, 0);
    return make_witness(target, MultiIndex(found.k, n), found.vertex, b);
  }

  std::vector<int> k(static_cast<std::size_t>(2 * m));
  for (int i = 0; i < 2 * m; ++i) k[static_cast<std::size_t>(i)] = i + 1;
  const std::uint64_t vertices = std::uint64_t{1} << (m - 1);
  std::optional<std::pair<std::vector<int>, std::uint64_t>> best;
  double best_length = 0.0;
  do {
    const MultiIndex K(k, n);
    for (std::uint64_t half = 0; half < vertices; ++half) {
      // Vertices with first coordinate 0: bit 0 clear.
      const std::uint64_t vertex = half << 1;
      const BitIndex v(vertex, m);
      const double length = target.distance(phi(K, v), phi(K, v.complement()));
      if (!best || length < best_length) {
        best = std::pair{k, vertex};
        best_length = length;
      }
    }
  } while (next_combination(k, n));
  return make_witness(target, MultiIndex(best->first, n), best->second, b);
}

double slice_snowflake_constant(const CubeTarget& target, double q) {
  const auto& slice = target.slice();
  const double m = target.m();
  double c = 1.0;
  for (std::size_t i = 0; i < slice.size(); ++i) {
    for (std::size_t j = i + 1; j < slice.size(); ++j) {
      const double source = std::pow(hamming_distance(slice[i], slice[j]) / m, q);
      const double r = target.distance(slice[i], slice[j]) / source;
      c = std::max({c, r, 1.0 / r});
    }
  }
  return c;
}

ObstructionReport snowflake_obstruction_experiment(double q, const std::vector<int>& m_list,
                                                   const TargetBuilder& builder, bool run_inductive,
                                                   const DiagonalOptions& options) {
  if (!(q > 0.0)) throw DomainError("snowflake exponent must be positive");
  if (m_list.empty()) throw DomainError("experiment needs at least one m");
  std::vector<int> ms = m_list;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  std::vector<CubeTarget> targets;
  ObstructionReport report;
  report.q = q;
  for (int m : ms) {
    if (m < 1) throw DomainError("cube dimension m must be at least 1");
    const int n = feasible_n(m);
    targets.emplace_back(builder(n, m), m);
    ObstructionRow row;
    row.m = m;
    row.n = n;
    row.c_slice = slice_snowflake_constant(targets.back(), q);
    report.c = std::max(report.c, row.c_slice);
    report.rows.push_back(row);
  }

  const double c = report.c;
  for (std::size_t r = 0; r < ms.size(); ++r) {
    auto& row = report.rows[r];
    const double m = row.m;
    row.b = c * std::pow(2.0, q) / std::pow(m, q);
    row.bound = std::sqrt(m) * row.b;
    row.brute = find_short_diagonal(targets[r], row.b, Strategy::Brute, options);
    if (run_inductive) row.inductive = find_short_diagonal(targets[r], row.b, Strategy::Inductive, options);
    row.long_pair_lower = std::pow(2.0, q) / c;
    row.lhs = std::sqrt(m) / std::pow(m, q);
    row.rhs = 1.0 / (c * c);
    row.slack = row.lhs - row.rhs;
  }

  report.slack_decreasing = report.rows.size() >= 2;
  for (std::size_t r = 1; r < report.rows.size(); ++r) {
    report.slack_decreasing = report.slack_decreasing && report.rows[r].slack < report.rows[r - 1].slack;
  }
  if (q > 0.5) report.violation_m = std::pow(c, 4.0 / (2.0 * q - 1.0));
  return report;
}

}  // namespace metgeo::cube
