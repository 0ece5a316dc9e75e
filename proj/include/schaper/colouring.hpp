#pragma once

#include <unordered_map>

#include "schaper/gram.hpp"

namespace schaper {

inline constexpr long long kDefaultColouringBudget = 100'000'000;

// Fayers' bipartite multigraph G(s,t) on column indices: edge l joins the
// column of entry l in s to its column in t.
struct ColouringGraph {
  Partition shape;
  int columns = 0;                        // vertices per side
  std::vector<std::pair<int, int>> edges; // edge l-1 -> (s column, t column)

  int multiplicity(int s_col, int t_col) const {
    int m = 0;
    for (const auto& [a, b] : edges)
      if (a == s_col && b == t_col) ++m;
    return m;
  }

  // "edge l: s_i t_j" per line
  std::string dump() const {
    std::string out;
    for (std::size_t l = 0; l < edges.size(); ++l)
      out += "edge " + std::to_string(l + 1) + ": s_" + std::to_string(edges[l].first) +
             " t_" + std::to_string(edges[l].second) + "\n";
    return out;
  }
};

inline ColouringGraph build_graph(const Tableau& s, const Tableau& t) {
  if (!row_equivalent(s, t))
    throw NotRowEquivalent("build_graph: tableaux are not row equivalent");
  ColouringGraph g;
  g.shape = s.shape();
  g.columns = g.shape.empty() ? 0 : g.shape.part(1);
  g.edges.reserve(static_cast<std::size_t>(s.n()));
  for (int l = 1; l <= s.n(); ++l)
    g.edges.emplace_back(s.column_of_entry(l), t.column_of_entry(l));
  return g;
}

// Colour c_l corresponds to row l: the edges of colour l form a perfect
// matching between the first lambda_l column vertices on each side. The sign
// is the product over colours of the signatures of the induced matchings.
struct AdmissibleColouring {
  std::vector<int> colour_of_edge; // 1-based colours, one per edge
  int sign = 1;
};

namespace detail {

class ColouringEnumerator {
public:
  ColouringEnumerator(const ColouringGraph& g, long long budget)
      : g_(g), budget_(budget) {
    rows_ = g.shape.rows();
    conj_ = conjugate(g.shape);
    int cols = g.columns;
    by_scol_.assign(static_cast<std::size_t>(cols) + 1, {});
    for (std::size_t l = 0; l < g.edges.size(); ++l)
      by_scol_[static_cast<std::size_t>(g.edges[l].first)].push_back(static_cast<int>(l));
    edge_used_.assign(g.edges.size(), false);
    remaining_s_.assign(static_cast<std::size_t>(cols) + 1, 0);
    remaining_t_.assign(static_cast<std::size_t>(cols) + 1, 0);
    for (const auto& [a, b] : g.edges) {
      ++remaining_s_[static_cast<std::size_t>(a)];
      ++remaining_t_[static_cast<std::size_t>(b)];
    }
    colour_of_edge_.assign(g.edges.size(), 0);
    matched_t_.assign(static_cast<std::size_t>(cols) + 1, false);
    perm_.assign(static_cast<std::size_t>(cols) + 1, 0);
  }

  template <typename Fn>
  long long run(Fn&& fn) {
    count_ = 0;
    callback_ = [&](const std::vector<int>& colours, int sign) {
      fn(colours, sign);
    };
    colour(1, 1);
    return count_;
  }

private:
  // exact degree feasibility: the unused edges at each column must be consumed
  // by the colours still to come
  bool degrees_feasible(int l) const {
    for (int a = 1; a <= g_.columns; ++a) {
      int needed = std::max(0, conj_.part(a) - (l - 1));
      if (remaining_s_[static_cast<std::size_t>(a)] != needed) return false;
      if (remaining_t_[static_cast<std::size_t>(a)] != needed) return false;
    }
    return true;
  }

  void colour(int l, int sign) {
    if (l > rows_) {
      if (++count_ > budget_)
        throw ResourceLimit("colouring enumeration exceeds the budget");
      callback_(colour_of_edge_, sign);
      return;
    }
    if (!degrees_feasible(l)) return;
    match(l, 1, g_.shape.part(l), sign);
  }

  // match s columns a = 1..width for colour l
  void match(int l, int a, int width, int sign) {
    if (a > width) {
      // a perfect matching on 1..width marked every t vertex; clear for the
      // next colour and restore on the way back
      for (int b = 1; b <= width; ++b) matched_t_[static_cast<std::size_t>(b)] = false;
      colour(l + 1, sign);
      for (int b = 1; b <= width; ++b) matched_t_[static_cast<std::size_t>(b)] = true;
      return;
    }
    for (int ei : by_scol_[static_cast<std::size_t>(a)]) {
      if (edge_used_[static_cast<std::size_t>(ei)]) continue;
      int b = g_.edges[static_cast<std::size_t>(ei)].second;
      if (b > width || matched_t_[static_cast<std::size_t>(b)]) continue;
      // inversions added by appending a -> b
      int inv = 0;
      for (int a2 = 1; a2 < a; ++a2)
        if (perm_[static_cast<std::size_t>(a2)] > b) ++inv;
      edge_used_[static_cast<std::size_t>(ei)] = true;
      matched_t_[static_cast<std::size_t>(b)] = true;
      int saved = perm_[static_cast<std::size_t>(a)]; // deeper colours reuse the slot
      perm_[static_cast<std::size_t>(a)] = b;
      colour_of_edge_[static_cast<std::size_t>(ei)] = l;
      --remaining_s_[static_cast<std::size_t>(a)];
      --remaining_t_[static_cast<std::size_t>(b)];
      match(l, a + 1, width, inv % 2 == 0 ? sign : -sign);
      ++remaining_s_[static_cast<std::size_t>(a)];
      ++remaining_t_[static_cast<std::size_t>(b)];
      colour_of_edge_[static_cast<std::size_t>(ei)] = 0;
      edge_used_[static_cast<std::size_t>(ei)] = false;
      matched_t_[static_cast<std::size_t>(b)] = false;
      perm_[static_cast<std::size_t>(a)] = saved;
    }
  }

  const ColouringGraph& g_;
  long long budget_;
  int rows_ = 0;
  Partition conj_;
  std::vector<std::vector<int>> by_scol_;
  std::vector<bool> edge_used_;
  std::vector<int> remaining_s_, remaining_t_;
  std::vector<int> colour_of_edge_;
  std::vector<bool> matched_t_;
  std::vector<int> perm_;
  long long count_ = 0;
  std::function<void(const std::vector<int>&, int)> callback_;
};

} // namespace detail

// Visits every admissible colouring; returns how many there are.
template <typename Fn>
long long enumerate_admissible(const ColouringGraph& g, Fn&& fn,
                               long long budget = kDefaultColouringBudget) {
  detail::ColouringEnumerator e(g, budget);
  return e.run([&](const std::vector<int>& colours, int sign) {
    AdmissibleColouring c;
    c.colour_of_edge = colours;
    c.sign = sign;
    fn(c);
  });
}

inline long long admissible_count(const ColouringGraph& g,
                                  long long budget = kDefaultColouringBudget) {
  detail::ColouringEnumerator e(g, budget);
  return e.run([](const std::vector<int>&, int) {});
}

// sum over A(G) of (-1)^C; equals (-1)^{pi_st} <e_s, e_t>
inline long long signed_sum(const ColouringGraph& g,
                            long long budget = kDefaultColouringBudget) {
  long long sum = 0;
  detail::ColouringEnumerator e(g, budget);
  e.run([&](const std::vector<int>&, int sign) { sum += sign; });
  return sum;
}

// |A(G)| vs the number of tableau pairs (u,v) with s ~col u ~row v ~col t,
// counted directly. Small shapes only.
inline bool colouring_count_matches_pairs(const Tableau& s, const Tableau& t,
                                          long long budget = kDefaultColouringBudget) {
  long long colourings = admissible_count(build_graph(s, t), budget);

  // count column rearrangements of s by tabloid, then sum over those of t
  auto column_rearrangements = [&](const Tableau& base,
                                   const std::function<void(const Tableau&)>& fn) {
    const Partition& shape = base.shape();
    Partition conj = conjugate(shape);
    std::vector<std::vector<int>> columns(static_cast<std::size_t>(conj.rows()));
    for (int c = 1; c <= conj.rows(); ++c)
      for (int r = 1; r <= conj.part(c); ++r)
        columns[static_cast<std::size_t>(c - 1)].push_back(base.at(r, c));
    std::vector<std::vector<int>> arrangement = columns;
    std::function<void(std::size_t)> rec = [&](std::size_t col) {
      if (col == columns.size()) {
        std::vector<int> entries(static_cast<std::size_t>(base.n()));
        std::size_t idx = 0;
        for (int r = 1; r <= shape.rows(); ++r)
          for (int c = 1; c <= shape.part(r); ++c, ++idx)
            entries[idx] = arrangement[static_cast<std::size_t>(c - 1)]
                                      [static_cast<std::size_t>(r - 1)];
        fn(Tableau(shape, std::move(entries)));
        return;
      }
      std::sort(arrangement[col].begin(), arrangement[col].end());
      do {
        rec(col + 1);
      } while (std::next_permutation(arrangement[col].begin(), arrangement[col].end()));
      arrangement[col] = columns[col];
    };
    rec(0);
  };

  long long terms = expansion_term_count(s.shape(), budget);
  if (terms > budget) throw ResourceLimit("pair count: shape too large");

  std::unordered_map<Tabloid, long long> u_tabloids;
  column_rearrangements(s, [&](const Tableau& u) { ++u_tabloids[Tabloid(u)]; });
  long long pairs = 0;
  column_rearrangements(t, [&](const Tableau& v) {
    auto it = u_tabloids.find(Tabloid(v));
    if (it != u_tabloids.end()) pairs += it->second;
  });
  return colourings == pairs;
}

// m! p^{v_p(lambda-hat)} divides <e_s, e_t>, where m is the number of edges
// s_1 -> t_1 and lambda-hat is lambda with its first column removed.
struct MEdgeReport {
  int m = 0;
  Partition lambda_hat;
  long hat_schaper = 0;
  BigInt modulus;
  BigInt inner;
  bool divides = false;
};

inline MEdgeReport check_m_edge_divisibility(const Tableau& s, const Tableau& t,
                                             std::uint32_t p,
                                             const ResourceBudget& budget = {},
                                             OracleCache* cache = nullptr) {
  ColouringGraph g = build_graph(s, t);
  MEdgeReport r;
  r.m = g.columns == 0 ? 0 : g.multiplicity(1, 1);
  r.lambda_hat = remove_first_column(s.shape());
  r.hat_schaper = schaper_number(r.lambda_hat, p, budget, cache).schaper_number;
  r.modulus = BigInt::factorial(static_cast<unsigned>(r.m)) *
              BigInt::power(p, static_cast<unsigned>(r.hat_schaper));
  r.inner = inner_product(polytabloid(s, budget.max_expansion_terms),
                          polytabloid(t, budget.max_expansion_terms));
  r.divides = r.inner.divisible_by(r.modulus);
  return r;
}

} // namespace schaper
