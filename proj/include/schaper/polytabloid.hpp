#pragma once

#include <cstring>
#include <numeric>
#include <ostream>

#include "schaper/bigint.hpp"
#include "schaper/tableau.hpp"

namespace schaper {

// Expansion terms per polytabloid; prod_j (lambda'_j)! beyond this is refused.
inline constexpr long long kDefaultTermBudget = 10'000'000;

// prod_j (lambda'_j)!, saturating at limit+1
inline long long expansion_term_count(const Partition& shape, long long limit) {
  Partition conj = conjugate(shape);
  long long total = 1;
  for (int h : conj.parts())
    for (int k = 2; k <= h; ++k) {
      total *= k;
      if (total > limit) return limit + 1;
    }
  return total;
}

// e_t = kappa_t {t} as a sparse signed vector indexed by tabloids. Keys are the
// row-of-entry byte strings, sorted lexicographically; every coefficient is
// +-1 and all keys are distinct (checked on every build), so inner products
// are exact two-pointer merges.
class PolytabloidExpansion {
public:
  const Partition& shape() const { return shape_; }
  std::size_t term_count() const { return coeffs_.size(); }
  int key_width() const { return width_; }

  const std::uint8_t* key(std::size_t i) const { return keys_.data() + i * width_; }
  int coefficient(std::size_t i) const { return coeffs_[i]; }

  Tabloid tabloid(std::size_t i) const {
    return Tabloid(shape_, std::vector<std::uint8_t>(key(i), key(i) + width_));
  }

  BigInt coefficient_of(const Tabloid& tab) const {
    if (!(tab.shape() == shape_)) throw ShapeMismatch("coefficient_of: wrong shape");
    std::size_t lo = 0, hi = term_count();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      int cmp = std::memcmp(key(mid), tab.row_of().data(), static_cast<std::size_t>(width_));
      if (cmp == 0) return BigInt(coeffs_[mid]);
      if (cmp < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    return BigInt();
  }

  // debug dump: one line per term, "coef<TAB>row1|row2|..."
  void dump(std::ostream& os) const {
    for (std::size_t i = 0; i < term_count(); ++i)
      os << static_cast<int>(coeffs_[i]) << '\t' << tabloid(i).to_string() << '\n';
  }

  friend PolytabloidExpansion polytabloid(const Tableau& t, long long max_terms);

private:
  Partition shape_;
  int width_ = 0;                    // bytes per key = n
  std::vector<std::uint8_t> keys_;   // term_count * width_, sorted
  std::vector<std::int8_t> coeffs_;  // +-1
};

inline PolytabloidExpansion polytabloid(const Tableau& t,
                                        long long max_terms = kDefaultTermBudget) {
  const Partition& shape = t.shape();
  if (shape.rows() > 255)
    throw ResourceLimit("polytabloid: more than 255 rows");
  long long terms = expansion_term_count(shape, max_terms);
  if (terms > max_terms)
    throw ResourceLimit("polytabloid: expansion of " + shape.to_string() +
                        " exceeds the term budget");
  int n = t.n();
  Partition conj = conjugate(shape);
  std::vector<std::vector<int>> columns(static_cast<std::size_t>(conj.rows()));
  for (int c = 1; c <= conj.rows(); ++c) {
    columns[static_cast<std::size_t>(c - 1)].reserve(static_cast<std::size_t>(conj.part(c)));
    for (int r = 1; r <= conj.part(c); ++r)
      columns[static_cast<std::size_t>(c - 1)].push_back(t.at(r, c));
  }

  PolytabloidExpansion out;
  out.shape_ = shape;
  out.width_ = n;
  out.keys_.reserve(static_cast<std::size_t>(terms) * static_cast<std::size_t>(n));
  out.coeffs_.reserve(static_cast<std::size_t>(terms));

  std::vector<std::uint8_t> key(static_cast<std::size_t>(n));
  // place the entries of each column into its cells in every order, tracking
  // the sign of the arrangement; picking index idx from the remaining list
  // costs idx transpositions
  std::vector<int> remaining;
  std::function<void(std::size_t, int)> fill_column;
  std::function<void(std::size_t, int, int)> place_cell;

  fill_column = [&](std::size_t col, int sign) {
    if (col == columns.size()) {
      out.keys_.insert(out.keys_.end(), key.begin(), key.end());
      out.coeffs_.push_back(static_cast<std::int8_t>(sign));
      return;
    }
    remaining = columns[col];
    place_cell(col, 1, sign);
  };
  place_cell = [&](std::size_t col, int row, int sign) {
    if (remaining.empty()) {
      std::vector<int> saved = std::move(remaining);
      fill_column(col + 1, sign);
      remaining = std::move(saved);
      return;
    }
    std::vector<int> pool = remaining;
    for (std::size_t idx = 0; idx < pool.size(); ++idx) {
      int entry = pool[idx];
      key[static_cast<std::size_t>(entry - 1)] = static_cast<std::uint8_t>(row);
      remaining = pool;
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(idx));
      place_cell(col, row + 1, idx % 2 == 0 ? sign : -sign);
    }
    remaining = pool;
  };
  fill_column(0, 1);

  // sort terms by key
  std::vector<std::uint32_t> order(out.coeffs_.size());
  std::iota(order.begin(), order.end(), 0u);
  const std::uint8_t* base = out.keys_.data();
  std::size_t w = static_cast<std::size_t>(n);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::memcmp(base + a * w, base + b * w, w) < 0;
  });
  std::vector<std::uint8_t> sorted_keys(out.keys_.size());
  std::vector<std::int8_t> sorted_coeffs(out.coeffs_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::memcpy(sorted_keys.data() + i * w, base + order[i] * w, w);
    sorted_coeffs[i] = out.coeffs_[order[i]];
  }
  out.keys_ = std::move(sorted_keys);
  out.coeffs_ = std::move(sorted_coeffs);

  // distinct column-stabiliser elements give distinct tabloids
  for (std::size_t i = 0; i + 1 < out.coeffs_.size(); ++i)
    if (std::memcmp(out.key(i), out.key(i + 1), w) == 0)
      throw SchaperError("polytabloid: internal error, duplicate tabloid term");
  return out;
}

// <a, b> = sum over common tabloids of coefficient products. The accumulator
// cannot overflow: every product is +-1 and the term counts are budgeted.
inline BigInt inner_product(const PolytabloidExpansion& a, const PolytabloidExpansion& b) {
  if (!(a.shape() == b.shape()))
    throw ShapeMismatch("inner_product: expansions have different shapes");
  std::size_t w = static_cast<std::size_t>(a.key_width());
  std::size_t i = 0, j = 0;
  long long acc = 0;
  if (w == 0) // empty partition: single empty tabloid on both sides
    return BigInt(static_cast<long long>(a.coefficient(0)) * b.coefficient(0));
  while (i < a.term_count() && j < b.term_count()) {
    int cmp = std::memcmp(a.key(i), b.key(j), w);
    if (cmp < 0)
      ++i;
    else if (cmp > 0)
      ++j;
    else {
      acc += static_cast<long long>(a.coefficient(i)) * b.coefficient(j);
      ++i;
      ++j;
    }
  }
  return BigInt(acc);
}

} // namespace schaper
