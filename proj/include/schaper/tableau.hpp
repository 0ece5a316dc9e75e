#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "schaper/partition.hpp"

namespace schaper {

// A bijective filling of the Young diagram of `shape` with 1..n, stored
// row-major. Rows and columns are 1-based.
class Tableau {
public:
  Tableau() = default;

  Tableau(Partition shape, std::vector<int> entries)
      : shape_(std::move(shape)), entries_(std::move(entries)) {
    if (static_cast<long long>(entries_.size()) != shape_.n())
      throw NotABijection("tableau: entry count does not match shape");
    std::vector<bool> seen(entries_.size() + 1, false);
    for (int e : entries_) {
      if (e < 1 || e > static_cast<int>(entries_.size()) || seen[static_cast<std::size_t>(e)])
        throw NotABijection("tableau: entries must be a bijection with 1..n");
      seen[static_cast<std::size_t>(e)] = true;
    }
    positions_.resize(entries_.size());
    std::size_t idx = 0;
    for (int r = 1; r <= shape_.rows(); ++r)
      for (int c = 1; c <= shape_.part(r); ++c, ++idx)
        positions_[static_cast<std::size_t>(entries_[idx] - 1)] = {r, c};
  }

  const Partition& shape() const { return shape_; }
  int n() const { return static_cast<int>(entries_.size()); }

  int at(int row, int col) const {
    return entries_[static_cast<std::size_t>(offset(row) + col - 1)];
  }

  int row_of_entry(int entry) const {
    return positions_[static_cast<std::size_t>(entry - 1)].first;
  }
  int column_of_entry(int entry) const {
    return positions_[static_cast<std::size_t>(entry - 1)].second;
  }

  const std::vector<int>& entries() const { return entries_; }

  std::string to_string() const {
    std::string s;
    for (int r = 1; r <= shape_.rows(); ++r) {
      if (r > 1) s += ';';
      for (int c = 1; c <= shape_.part(r); ++c) {
        if (c > 1) s += ',';
        s += std::to_string(at(r, c));
      }
    }
    return s;
  }

  friend bool operator==(const Tableau& a, const Tableau& b) {
    return a.shape_ == b.shape_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const Tableau& a, const Tableau& b) { return !(a == b); }
  friend bool operator<(const Tableau& a, const Tableau& b) {
    if (!(a.shape_ == b.shape_)) return a.shape_ < b.shape_;
    return a.entries_ < b.entries_;
  }

private:
  long long offset(int row) const {
    long long off = 0;
    for (int r = 1; r < row; ++r) off += shape_.part(r);
    return off;
  }

  Partition shape_;
  std::vector<int> entries_;
  std::vector<std::pair<int, int>> positions_; // entry -> (row, col)
};

// Entries 1,2,3,... filled left to right, top to bottom.
inline Tableau initial_tableau(const Partition& shape) {
  std::vector<int> entries(static_cast<std::size_t>(shape.n()));
  for (std::size_t i = 0; i < entries.size(); ++i)
    entries[i] = static_cast<int>(i) + 1;
  return Tableau(shape, std::move(entries));
}

// Rows separated by ';', entries by ',': "1,2,3;6,4,5;8,9,7"
inline Tableau parse_tableau(const std::string& text) {
  std::vector<int> entries;
  std::vector<int> row_lengths;
  int current = 0;
  bool in_number = false;
  int row_len = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    char ch = i < text.size() ? text[i] : ';';
    if (ch >= '0' && ch <= '9') {
      current = current * 10 + (ch - '0');
      if (current > 1000000) throw ParseError("tableau: entry too large");
      in_number = true;
    } else if (ch == ',' || ch == ';') {
      if (!in_number) {
        if (ch == ';' && row_len == 0 && i == text.size() && entries.empty())
          break; // empty text: empty tableau
        throw ParseError("tableau: expected an entry in '" + text + "'");
      }
      entries.push_back(current);
      ++row_len;
      current = 0;
      in_number = false;
      if (ch == ';') {
        row_lengths.push_back(row_len);
        row_len = 0;
      }
    } else if (ch == ' ') {
      if (in_number) throw ParseError("tableau: space inside entry");
    } else {
      throw ParseError(std::string("tableau: unexpected character '") + ch + "'");
    }
  }
  Partition shape;
  try {
    shape = Partition(std::move(row_lengths));
  } catch (const NotAPartition&) {
    throw ParseError("tableau: row lengths do not form a partition");
  }
  return Tableau(std::move(shape), std::move(entries));
}

inline bool is_standard(const Tableau& t) {
  const Partition& shape = t.shape();
  for (int r = 1; r <= shape.rows(); ++r)
    for (int c = 1; c <= shape.part(r); ++c) {
      if (c < shape.part(r) && t.at(r, c) >= t.at(r, c + 1)) return false;
      if (r < shape.rows() && c <= shape.part(r + 1) && t.at(r, c) >= t.at(r + 1, c))
        return false;
    }
  return true;
}

inline bool row_equivalent(const Tableau& s, const Tableau& t) {
  if (!(s.shape() == t.shape())) return false;
  for (int e = 1; e <= s.n(); ++e)
    if (s.row_of_entry(e) != t.row_of_entry(e)) return false;
  return true;
}

// Sign of the permutation w defined cellwise by w(s at cell) = t at cell.
inline int row_permutation_sign(const Tableau& s, const Tableau& t) {
  if (!row_equivalent(s, t))
    throw NotRowEquivalent("row_permutation_sign: tableaux are not row equivalent");
  int n = s.n();
  std::vector<int> w(static_cast<std::size_t>(n) + 1, 0);
  {
    std::size_t idx = 0;
    const auto& se = s.entries();
    const auto& te = t.entries();
    for (; idx < se.size(); ++idx) w[static_cast<std::size_t>(se[idx])] = te[idx];
  }
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  int sign = 1;
  for (int e = 1; e <= n; ++e) {
    if (seen[static_cast<std::size_t>(e)]) continue;
    int len = 0;
    for (int x = e; !seen[static_cast<std::size_t>(x)]; x = w[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

// Visits every standard tableau of the shape exactly once (numbers 1..n are
// placed in order; each prefix is a Young diagram, so rows and columns
// increase automatically).
inline void for_each_standard_tableau(const Partition& shape,
                                      const std::function<void(const Tableau&)>& fn) {
  int rows = shape.rows();
  long long n = shape.n();
  std::vector<int> filled(static_cast<std::size_t>(rows), 0);
  std::vector<int> entries(static_cast<std::size_t>(n), 0);
  // cell (r, filled[r]+1), row-major offset
  std::vector<long long> offsets(static_cast<std::size_t>(rows) + 1, 0);
  for (int r = 1; r <= rows; ++r)
    offsets[static_cast<std::size_t>(r)] =
        offsets[static_cast<std::size_t>(r - 1)] + shape.part(r);

  std::function<void(int)> place = [&](int k) {
    if (k > n) {
      fn(Tableau(shape, entries));
      return;
    }
    for (int r = 1; r <= rows; ++r) {
      int c = filled[static_cast<std::size_t>(r - 1)] + 1;
      if (c > shape.part(r)) continue;
      if (r > 1 && filled[static_cast<std::size_t>(r - 2)] < c) continue;
      entries[static_cast<std::size_t>(offsets[static_cast<std::size_t>(r - 1)] + c - 1)] =
          static_cast<int>(k);
      ++filled[static_cast<std::size_t>(r - 1)];
      place(k + 1);
      --filled[static_cast<std::size_t>(r - 1)];
    }
  };
  place(1);
}

inline std::vector<Tableau> standard_tableaux(const Partition& shape) {
  std::vector<Tableau> out;
  for_each_standard_tableau(shape, [&](const Tableau& t) { out.push_back(t); });
  return out;
}

// Canonical row-equivalence class of a tableau: stored as the row index of
// each entry, which makes the sorted-rows form implicit.
class Tabloid {
public:
  Tabloid() = default;

  explicit Tabloid(const Tableau& t) : shape_(t.shape()) {
    row_of_.resize(static_cast<std::size_t>(t.n()));
    for (int e = 1; e <= t.n(); ++e)
      row_of_[static_cast<std::size_t>(e - 1)] =
          static_cast<std::uint8_t>(t.row_of_entry(e));
  }

  Tabloid(Partition shape, std::vector<std::uint8_t> row_of)
      : shape_(std::move(shape)), row_of_(std::move(row_of)) {}

  const Partition& shape() const { return shape_; }
  const std::vector<std::uint8_t>& row_of() const { return row_of_; }

  // rows as sorted sequences (entries visited in increasing order)
  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(shape_.rows()));
    for (std::size_t e = 0; e < row_of_.size(); ++e)
      out[static_cast<std::size_t>(row_of_[e] - 1)].push_back(static_cast<int>(e) + 1);
    return out;
  }

  // "1,2|3" — rows joined by '|', entries by ','
  std::string to_string() const {
    std::string s;
    auto rs = rows();
    for (std::size_t r = 0; r < rs.size(); ++r) {
      if (r) s += '|';
      for (std::size_t i = 0; i < rs[r].size(); ++i) {
        if (i) s += ',';
        s += std::to_string(rs[r][i]);
      }
    }
    return s;
  }

  friend bool operator==(const Tabloid& a, const Tabloid& b) {
    return a.shape_ == b.shape_ && a.row_of_ == b.row_of_;
  }
  friend bool operator!=(const Tabloid& a, const Tabloid& b) { return !(a == b); }

private:
  Partition shape_;
  std::vector<std::uint8_t> row_of_;
};

} // namespace schaper

template <>
struct std::hash<schaper::Tabloid> {
  std::size_t operator()(const schaper::Tabloid& t) const noexcept {
    std::size_t h = 14695981039346656037ULL;
    for (std::uint8_t b : t.row_of()) h = (h ^ b) * 1099511628211ULL;
    return h;
  }
};
