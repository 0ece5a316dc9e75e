#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>

#include "schaper/polytabloid.hpp"

namespace schaper {

struct ResourceBudget {
  long long max_basis = 1000;
  long long max_expansion_terms = kDefaultTermBudget;
  long long max_total_ops = 10'000'000'000;
};

inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Gram matrix of the Specht module over the standard polytabloid basis.
struct GramMatrix {
  Partition shape;
  std::vector<Tableau> basis;
  std::vector<std::vector<BigInt>> entries; // symmetric, dim x dim
};

// Ground truth for one partition: the minimum p-adic valuation over nonzero
// Gram entries, with the witnessing basis pair.
struct OracleResult {
  Partition shape;
  std::uint32_t prime = 0;
  long schaper_number = 0;
  Tableau witness_a;
  Tableau witness_b;
  BigInt entry_value;
};

namespace detail {

inline void check_oracle_budget(const Partition& lambda, const ResourceBudget& budget,
                                long long& dim_out, long long& terms_out) {
  BigInt dim = standard_tableau_count(lambda);
  if (dim > BigInt(budget.max_basis))
    throw ResourceLimit("oracle: basis of " + lambda.to_string() + " has " +
                        dim.to_string() + " standard tableaux, budget " +
                        std::to_string(budget.max_basis));
  dim_out = dim.is_zero() ? 0 : dim.to_int64();
  terms_out = expansion_term_count(lambda, budget.max_expansion_terms);
  if (terms_out > budget.max_expansion_terms)
    throw ResourceLimit("oracle: expansion of " + lambda.to_string() +
                        " exceeds the term budget " +
                        std::to_string(budget.max_expansion_terms));
  long long pairs = dim_out * (dim_out + 1) / 2;
  if (pairs > budget.max_total_ops / (2 * std::max<long long>(terms_out, 1)))
    throw ResourceLimit("oracle: " + std::to_string(pairs) + " Gram entries of " +
                        lambda.to_string() + " exceed the operation budget");
}

inline std::vector<PolytabloidExpansion> basis_expansions(const std::vector<Tableau>& basis,
                                                          long long max_terms) {
  std::vector<PolytabloidExpansion> exps;
  exps.reserve(basis.size());
  for (const Tableau& t : basis) exps.push_back(polytabloid(t, max_terms));
  return exps;
}

// run fn(k) for k in [0, total) across a small worker pool
inline void parallel_for(std::size_t total, int threads,
                         const std::function<void(std::size_t)>& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || total < 2) {
    for (std::size_t k = 0; k < total; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= total) return;
      fn(k);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

} // namespace detail

inline GramMatrix gram_matrix(const Partition& lambda,
                              const ResourceBudget& budget = {}, int threads = 0) {
  long long dim = 0, terms = 0;
  detail::check_oracle_budget(lambda, budget, dim, terms);
  GramMatrix g;
  g.shape = lambda;
  g.basis = standard_tableaux(lambda);
  auto exps = detail::basis_expansions(g.basis, budget.max_expansion_terms);
  std::size_t d = g.basis.size();
  g.entries.assign(d, std::vector<BigInt>(d));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) pairs.emplace_back(i, j);
  detail::parallel_for(pairs.size(), threads, [&](std::size_t k) {
    auto [i, j] = pairs[k];
    BigInt v = inner_product(exps[i], exps[j]);
    g.entries[i][j] = v;
    g.entries[j][i] = v;
  });
  return g;
}

// Memo of oracle results; hits are bit-identical to recomputation because the
// oracle scan order is deterministic. Movable: the mutex lives behind a
// pointer.
class OracleCache {
public:
  OracleCache() : mutex_(std::make_unique<std::mutex>()) {}
  OracleCache(OracleCache&&) = default;
  OracleCache& operator=(OracleCache&&) = default;

  std::optional<OracleResult> get(const Partition& lambda, std::uint32_t p) const {
    std::lock_guard<std::mutex> lock(*mutex_);
    auto it = map_.find(key(lambda, p));
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void put(const OracleResult& r) {
    std::lock_guard<std::mutex> lock(*mutex_);
    map_.insert_or_assign(key(r.shape, r.prime), r);
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(*mutex_);
    return map_.size();
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    std::lock_guard<std::mutex> lock(*mutex_);
    for (const auto& [k, v] : map_) fn(v);
  }

private:
  static std::string key(const Partition& lambda, std::uint32_t p) {
    return std::to_string(p) + "|" + lambda.to_string();
  }

  mutable std::unique_ptr<std::mutex> mutex_;
  std::unordered_map<std::string, OracleResult> map_;
};

// The Schaper number of lambda: minimum v_p over nonzero entries of the Gram
// matrix. Why this equals the index of the first nonzero filtration layer:
// the layer index is the largest k with p^k dividing <x, y> for all lattice
// elements x, y; bilinearity bounds every <x, y> by the minimum valuation
// over basis pairs, a basis pair attains it, and the minimum is finite
// because the form is nondegenerate over the rationals (the diagonal is
// positive). The witness is the (valuation, i, j)-least pair, independent of
// the thread count.
inline OracleResult schaper_number(const Partition& lambda, std::uint32_t p,
                                   const ResourceBudget& budget = {},
                                   OracleCache* cache = nullptr, int threads = 0) {
  if (!is_prime(p)) throw SchaperError("schaper_number: p must be prime");
  if (cache)
    if (auto hit = cache->get(lambda, p)) return *hit;

  long long dim = 0, terms = 0;
  detail::check_oracle_budget(lambda, budget, dim, terms);
  std::vector<Tableau> basis = standard_tableaux(lambda);
  auto exps = detail::basis_expansions(basis, budget.max_expansion_terms);
  std::size_t d = basis.size();

  struct Best {
    long val = kInfiniteValuation;
    std::size_t i = 0, j = 0;
    BigInt value;
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) pairs.emplace_back(i, j);

  int nthreads = resolve_threads(threads);
  std::vector<Best> best(static_cast<std::size_t>(nthreads));
  std::atomic<std::size_t> next{0};
  auto worker = [&](int tid) {
    Best local;
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= pairs.size()) break;
      auto [i, j] = pairs[k];
      BigInt v = inner_product(exps[i], exps[j]);
      if (v.is_zero()) continue; // valuation +infinity, never a minimum
      long val = valuation(v, p);
      if (val < local.val || (val == local.val && std::tie(i, j) < std::tie(local.i, local.j))) {
        local = {val, i, j, v};
      }
    }
    best[static_cast<std::size_t>(tid)] = local;
  };
  if (nthreads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();
  }
  Best overall;
  for (const Best& b : best)
    if (b.val < overall.val ||
        (b.val == overall.val && b.val != kInfiniteValuation &&
         std::tie(b.i, b.j) < std::tie(overall.i, overall.j)))
      overall = b;
  if (overall.val == kInfiniteValuation)
    throw SchaperError("oracle: Gram matrix unexpectedly zero");

  OracleResult r{lambda, p, overall.val, basis[overall.i], basis[overall.j],
                 overall.value};
  if (cache) cache->put(r);
  return r;
}

} // namespace schaper
