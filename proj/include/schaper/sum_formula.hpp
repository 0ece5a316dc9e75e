#pragma once

#include "schaper/decomp_io.hpp"

namespace schaper {

// One element of H(lambda): remove rim hook g from lambda, reattach a strip h
// of the same length to get nu (strictly dominating lambda). The coefficient
// is alpha = v_p(|g|) * (-1)^{l(g) + l(h) + 1}; hooks with p not dividing |g|
// contribute nothing and are skipped.
struct HookTriple {
  Hook g;
  int h_leg = 0;
  Partition nu;
  long alpha = 0;
};

struct SumFormulaResult {
  Partition lambda;
  std::uint32_t prime = 0;
  std::vector<std::pair<Partition, long>> terms; // (nu, a_nu), zeros dropped
};

inline std::vector<HookTriple> enumerate_triples(const Partition& lambda,
                                                 std::uint32_t p) {
  if (!is_prime(p)) throw SchaperError("enumerate_triples: p must be prime");
  std::vector<HookTriple> out;
  for (const Hook& g : hooks(lambda)) {
    long vg = valuation(static_cast<long long>(g.length), p);
    if (vg == 0) continue;
    Partition stripped = remove_rim_hook(lambda, g);
    for (const auto& [nu, leg] : add_rim_hooks(stripped, g.length)) {
      if (!strictly_dominates(nu, lambda)) continue;
      long alpha = ((g.leg + leg + 1) % 2 == 0 ? 1 : -1) * vg;
      out.push_back({g, leg, nu, alpha});
    }
  }
  return out;
}

// a_nu = sum of alpha over triples yielding nu; sorted descending
// lexicographically (a dominance-compatible total order).
inline SumFormulaResult symbolic_rhs(const Partition& lambda, std::uint32_t p) {
  SumFormulaResult result;
  result.lambda = lambda;
  result.prime = p;
  std::map<Partition, long> agg;
  for (const HookTriple& t : enumerate_triples(lambda, p)) agg[t.nu] += t.alpha;
  for (const auto& [nu, a] : agg)
    if (a != 0) result.terms.emplace_back(nu, a);
  std::sort(result.terms.begin(), result.terms.end(),
            [](const auto& x, const auto& y) { return y.first < x.first; });
  return result;
}

// sum a_nu [S^nu : D^mu] over the symbolic terms; every needed entry must be
// present in the table (explicit zeros required).
inline long long numeric_rhs(const Partition& lambda, const Partition& mu,
                             std::uint32_t p, const DecompositionTable& table) {
  if (table.prime() != p)
    throw SchaperError("numeric_rhs: table is for p = " + std::to_string(table.prime()));
  if (!is_p_regular(mu, p))
    throw NotPRegular("numeric_rhs: mu = " + mu.to_string() + " is " +
                      std::to_string(p) + "-singular");
  if (mu == lambda) throw SchaperError("numeric_rhs: mu must differ from lambda");
  long long total = 0;
  for (const auto& [nu, a] : symbolic_rhs(lambda, p).terms)
    total += a * table.require(nu, mu);
  return total;
}

// [S^lambda : D^mu] <= floor(numeric_rhs / schaper) once the Schaper number is
// known to be >= schaper.
inline long long improved_upper_bound(const Partition& lambda, const Partition& mu,
                                      std::uint32_t p, const DecompositionTable& table,
                                      long schaper) {
  if (schaper < 1) throw ZeroSchaper("improved_upper_bound: needs schaper >= 1");
  long long rhs = numeric_rhs(lambda, mu, p, table);
  long long q = rhs / schaper;
  if (rhs % schaper != 0 && rhs < 0) --q; // mathematical floor
  return q;
}

// numeric_rhs against mu = lambda^r: the index of the Schaper layer holding
// D^{lambda^r}, hence an upper certificate for the Schaper number.
inline long long regularisation_layer_check(const Partition& lambda, std::uint32_t p,
                                            const DecompositionTable& table) {
  if (is_p_regular(lambda, p))
    throw SchaperError("regularisation_layer_check: lambda must be p-singular");
  return numeric_rhs(lambda, regularise(lambda, p), p, table);
}

inline nlohmann::json sum_formula_to_json(const SumFormulaResult& r) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [nu, a] : r.terms) {
    nlohmann::json t;
    t["nu"] = detail::partition_to_json(nu);
    t["coef"] = a;
    terms.push_back(std::move(t));
  }
  return terms;
}

} // namespace schaper
