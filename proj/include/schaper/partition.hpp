#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "schaper/bigint.hpp"
#include "schaper/errors.hpp"

namespace schaper {

inline bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// A partition of n: weakly decreasing positive row lengths. Rows are 1-based
// everywhere; reading past the last row yields 0, which is how every window
// condition in the classifiers is evaluated.
class Partition {
public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1)
        throw NotAPartition("non-positive part in partition");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw NotAPartition("parts must be weakly decreasing");
    }
  }

  static Partition from_row_lengths_with_zeros(std::vector<int> parts) {
    parts.erase(std::remove(parts.begin(), parts.end(), 0), parts.end());
    return Partition(std::move(parts));
  }

  int rows() const { return static_cast<int>(parts_.size()); }
  long long n() const { return std::accumulate(parts_.begin(), parts_.end(), 0LL); }
  bool empty() const { return parts_.empty(); }

  // lambda_i with zero padding
  int part(int i) const {
    if (i < 1) throw SchaperError("Partition::part: rows are 1-based");
    return i <= rows() ? parts_[i - 1] : 0;
  }

  const std::vector<int>& parts() const { return parts_; }

  // round-trips through parse_partition; the empty partition is ""
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s;
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.parts_ == b.parts_;
  }
  friend bool operator!=(const Partition& a, const Partition& b) {
    return !(a == b);
  }
  // descending lexicographic on parts = the dominance-compatible total order
  // used for display ((12,1) before (10,3) before (8,5), ...)
  friend bool operator<(const Partition& a, const Partition& b) {
    return a.parts_ < b.parts_;
  }

private:
  std::vector<int> parts_;
};

// Accepts "8,2,2,1" and exponent shorthand "3^4" == "3,3,3,3", composable as
// "5^2,4,3^2"; empty text is the empty partition.
inline Partition parse_partition(const std::string& text) {
  std::vector<int> parts;
  std::size_t i = 0;
  auto read_number = [&](const char* what) -> long long {
    if (i >= text.size() || text[i] < '0' || text[i] > '9')
      throw ParseError(std::string("partition: expected ") + what + " in '" + text + "'");
    long long v = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      v = v * 10 + (text[i] - '0');
      if (v > 1000000000LL) throw ParseError("partition: part too large");
      ++i;
    }
    return v;
  };
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    long long part = read_number("a part");
    long long rep = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      rep = read_number("an exponent");
      if (rep < 1) throw ParseError("partition: exponent must be positive");
      if (rep > 100000) throw ParseError("partition: exponent too large");
    }
    if (part < 1) throw NotAPartition("partition parts must be positive");
    for (long long k = 0; k < rep; ++k) parts.push_back(static_cast<int>(part));
    while (i < text.size() && text[i] == ' ') ++i;
    if (i < text.size()) {
      if (text[i] != ',') throw ParseError("partition: expected ',' in '" + text + "'");
      ++i;
      if (i == text.size()) throw ParseError("partition: trailing ',' in '" + text + "'");
    }
  }
  return Partition(std::move(parts)); // NotAPartition if not weakly decreasing
}

inline Partition conjugate(const Partition& lambda) {
  std::vector<int> cols(lambda.empty() ? 0 : lambda.part(1), 0);
  for (int i = 1; i <= lambda.rows(); ++i)
    for (int j = 0; j < lambda.part(i); ++j) ++cols[j];
  return Partition(std::move(cols));
}

// nu dominates lambda: every prefix sum of nu is >= that of lambda.
inline bool dominates(const Partition& nu, const Partition& lambda) {
  if (nu.n() != lambda.n())
    throw SizeMismatch("dominance compares partitions of the same n");
  long long snu = 0, slam = 0;
  int r = std::max(nu.rows(), lambda.rows());
  for (int i = 1; i <= r; ++i) {
    snu += nu.part(i);
    slam += lambda.part(i);
    if (snu < slam) return false;
  }
  return true;
}

inline bool strictly_dominates(const Partition& nu, const Partition& lambda) {
  return nu != lambda && dominates(nu, lambda);
}

// lambda * mu: concatenation of the row sequences, defined only when the
// result is still a partition.
inline Partition star_compose(const Partition& lambda, const Partition& mu) {
  if (!mu.empty() && !lambda.empty() &&
      lambda.part(lambda.rows()) < mu.part(1))
    throw NotComposable("star: last row of lambda shorter than first row of mu");
  std::vector<int> parts = lambda.parts();
  parts.insert(parts.end(), mu.parts().begin(), mu.parts().end());
  return Partition(std::move(parts));
}

inline Partition remove_first_column(const Partition& lambda) {
  std::vector<int> parts;
  for (int p : lambda.parts())
    if (p > 1) parts.push_back(p - 1);
  return Partition(std::move(parts));
}

// z_j = number of parts equal to j, nonzero entries only
inline std::map<int, int> multiplicities(const Partition& lambda) {
  std::map<int, int> z;
  for (int p : lambda.parts()) ++z[p];
  return z;
}

// James: v_p(prod z_j!) <= v_p(lambda) <= v_p(prod (z_j!)^j)
inline std::pair<long, long> james_bounds(const Partition& lambda, std::uint32_t p) {
  if (!is_prime(p)) throw SchaperError("james_bounds: p must be prime");
  long lower = 0, upper = 0;
  for (const auto& [j, zj] : multiplicities(lambda)) {
    long v = factorial_valuation(zj, p);
    lower += v;
    upper += static_cast<long>(j) * v;
  }
  return {lower, upper};
}

// p consecutive rows of the same positive length, rows start..start+span-1
struct SingularityWindow {
  int start = 0;
  int length = 0;
  int span = 0;
};

inline std::vector<SingularityWindow> singularity_windows(const Partition& lambda,
                                                          std::uint32_t p) {
  if (p < 2) throw SchaperError("singularity_windows: p must be >= 2");
  std::vector<SingularityWindow> out;
  int span = static_cast<int>(p);
  for (int i = 1; i + span - 1 <= lambda.rows(); ++i)
    if (lambda.part(i) == lambda.part(i + span - 1))
      out.push_back({i, lambda.part(i), span});
  return out;
}

// Maximum number of pairwise row-disjoint p-singularities. Windows live inside
// maximal runs of equal parts, so a run of m rows contributes floor(m/p).
inline int count_disjoint_singularities(const Partition& lambda, std::uint32_t p) {
  if (p < 2) throw SchaperError("count_disjoint_singularities: p must be >= 2");
  int count = 0;
  int i = 1;
  while (i <= lambda.rows()) {
    int j = i;
    while (j < lambda.rows() && lambda.part(j + 1) == lambda.part(i)) ++j;
    count += (j - i + 1) / static_cast<int>(p);
    i = j + 1;
  }
  return count;
}

inline bool is_p_regular(const Partition& lambda, std::uint32_t p) {
  return count_disjoint_singularities(lambda, p) == 0;
}

// Ladder through (r,c) has step (-(p-1), +1); all its cells share this index.
inline long ladder_of(int row, int col, std::uint32_t p) {
  return row + static_cast<long>(p - 1) * (col - 1);
}

// James-Kerber p-regularisation: slide every box up its ladder to the highest
// unoccupied position.
inline Partition regularise(const Partition& lambda, std::uint32_t p) {
  if (p < 2) throw SchaperError("regularise: p must be >= 2");
  std::map<long, int> ladder_count;
  for (int r = 1; r <= lambda.rows(); ++r)
    for (int c = 1; c <= lambda.part(r); ++c) ++ladder_count[ladder_of(r, c, p)];
  std::vector<int> row_len(lambda.rows() + 1, 0);
  for (const auto& [ladder, count] : ladder_count) {
    // positions on the ladder ordered from the top: maximal column first
    long cmax = (ladder - 1) / static_cast<long>(p - 1) + 1;
    int placed = 0;
    for (long c = cmax; placed < count; --c) {
      long r = ladder - static_cast<long>(p - 1) * (c - 1);
      if (r < 1) throw SchaperError("regularise: internal ladder overflow");
      if (r > static_cast<long>(row_len.size()))
        row_len.resize(static_cast<std::size_t>(r), 0);
      ++row_len[static_cast<std::size_t>(r - 1)];
      ++placed;
    }
  }
  while (!row_len.empty() && row_len.back() == 0) row_len.pop_back();
  for (std::size_t i = 0; i + 1 < row_len.size(); ++i)
    if (row_len[i] < row_len[i + 1])
      throw SchaperError("regularise: result not a partition");
  return Partition(std::move(row_len));
}

struct Hook {
  int row = 0;
  int col = 0;
  int arm = 0;
  int leg = 0;
  int length = 0;
};

inline std::vector<Hook> hooks(const Partition& lambda) {
  Partition conj = conjugate(lambda);
  std::vector<Hook> out;
  for (int r = 1; r <= lambda.rows(); ++r)
    for (int c = 1; c <= lambda.part(r); ++c) {
      int arm = lambda.part(r) - c;
      int leg = conj.part(c) - r;
      out.push_back({r, c, arm, leg, arm + leg + 1});
    }
  return out;
}

inline Hook hook_at(const Partition& lambda, int row, int col) {
  if (row < 1 || col < 1 || col > lambda.part(row))
    throw HookOutsideDiagram("cell (" + std::to_string(row) + "," +
                             std::to_string(col) + ") not in diagram");
  int arm = lambda.part(row) - col;
  int leg = conjugate(lambda).part(col) - row;
  return {row, col, arm, leg, arm + leg + 1};
}

// First-column hook lengths ("beta numbers") with slots slots:
// beta_i = lambda_i + slots - i. Rim-hook surgery is set surgery on these.
inline std::vector<long long> beta_numbers(const Partition& lambda, int slots) {
  if (slots < lambda.rows())
    throw SchaperError("beta_numbers: too few slots");
  std::vector<long long> beta(static_cast<std::size_t>(slots));
  for (int i = 1; i <= slots; ++i)
    beta[static_cast<std::size_t>(i - 1)] = lambda.part(i) + slots - i;
  return beta;
}

inline Partition partition_from_beta(std::vector<long long> beta) {
  std::sort(beta.begin(), beta.end(), std::greater<>());
  int slots = static_cast<int>(beta.size());
  std::vector<int> parts;
  for (int i = 1; i <= slots; ++i) {
    long long part = beta[static_cast<std::size_t>(i - 1)] - (slots - i);
    if (part < 0) throw SchaperError("beta set not valid");
    if (part > 0) parts.push_back(static_cast<int>(part));
  }
  return Partition(std::move(parts));
}

// Strips the border strip determined by hook g. Always yields a partition.
inline Partition remove_rim_hook(const Partition& lambda, const Hook& g) {
  Hook check = hook_at(lambda, g.row, g.col);
  if (check.length != g.length || check.arm != g.arm || check.leg != g.leg)
    throw HookOutsideDiagram("hook does not match the diagram");
  auto beta = beta_numbers(lambda, lambda.rows());
  long long moved = beta[static_cast<std::size_t>(g.row - 1)] - g.length;
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (static_cast<int>(i) != g.row - 1 && beta[i] == moved)
      throw SchaperError("remove_rim_hook: beta collision"); // cannot happen for a real hook
  beta[static_cast<std::size_t>(g.row - 1)] = moved;
  return partition_from_beta(std::move(beta));
}

// Every partition of |tau| + length whose diagram minus a border strip of the
// given length equals tau, with the strip's leg length (rows spanned - 1).
// Ordered by descending lexicographic result.
inline std::vector<std::pair<Partition, int>> add_rim_hooks(const Partition& tau,
                                                            int length) {
  if (length < 1) throw SchaperError("add_rim_hooks: length must be >= 1");
  int slots = tau.rows() + length;
  auto beta = beta_numbers(tau, slots);
  std::vector<std::pair<Partition, int>> out;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    long long target = beta[i] + length;
    bool collide = false;
    int leg = 0;
    for (std::size_t j = 0; j < beta.size(); ++j) {
      if (j == i) continue;
      if (beta[j] == target) collide = true;
      if (beta[j] > beta[i] && beta[j] < target) ++leg;
    }
    if (collide) continue;
    auto moved = beta;
    moved[i] = target;
    out.emplace_back(partition_from_beta(std::move(moved)), leg);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return b.first < a.first;
  });
  return out;
}

// Hook length formula: n! / prod of hook lengths.
inline BigInt standard_tableau_count(const Partition& lambda) {
  BigInt num = BigInt::factorial(static_cast<unsigned>(lambda.n()));
  BigInt den(1);
  for (const Hook& h : hooks(lambda)) den *= BigInt(h.length);
  BigInt q, r;
  BigInt::divmod(num, den, q, r);
  if (!r.is_zero()) throw SchaperError("hook length formula: non-integral");
  return q;
}

} // namespace schaper

template <>
struct std::hash<schaper::Partition> {
  std::size_t operator()(const schaper::Partition& p) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int part : p.parts())
      h = h * 1099511628211ULL + static_cast<std::size_t>(part);
    return h;
  }
};
