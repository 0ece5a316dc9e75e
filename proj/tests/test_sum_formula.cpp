#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "schaper/sum_formula.hpp"

using namespace schaper;

namespace {

Partition P(const std::string& text) { return parse_partition(text); }

std::map<std::string, long> term_map(const SumFormulaResult& r) {
  std::map<std::string, long> out;
  for (const auto& [nu, a] : r.terms) out[nu.to_string()] = a;
  return out;
}

} // namespace

TEST_CASE("triples of tiny shapes") {
  auto triples = enumerate_triples(P("1,1"), 2);
  REQUIRE(triples.size() == 1);
  CHECK(triples[0].nu == P("2"));
  CHECK(triples[0].g.length == 2);
  CHECK(triples[0].g.leg == 1);
  CHECK(triples[0].h_leg == 0);
  CHECK(triples[0].alpha == 1);

  CHECK(enumerate_triples(P("2,1"), 2).empty()); // hook lengths 3,1,1
  auto t3 = enumerate_triples(P("2,1"), 3);
  REQUIRE(t3.size() == 1);
  CHECK(t3[0].nu == P("3"));
  CHECK(t3[0].alpha == 1);
}

TEST_CASE("triples respect the hook calculus") {
  for (int n = 1; n <= 7; ++n)
    for_each_partition_of(n, [](const Partition& lam) {
      for (std::uint32_t p : {2u, 3u})
        for (const HookTriple& t : enumerate_triples(lam, p)) {
          CHECK(strictly_dominates(t.nu, lam));
          CHECK(t.alpha != 0);
          CHECK(valuation(static_cast<long long>(t.g.length), p) > 0);
          // nu really is lam \ g with a strip of the same length reattached
          Partition stripped = remove_rim_hook(lam, t.g);
          bool found = false;
          for (const auto& [nu, leg] : add_rim_hooks(stripped, t.g.length))
            if (nu == t.nu && leg == t.h_leg) found = true;
          CHECK(found);
        }
    });
}

TEST_CASE("triples match the defining double loop") {
  // independent route: pairs (g, h) with g a hook of lambda, h a hook of nu,
  // |g| = |h|, identical leftovers, nu strictly dominating, p dividing |g|
  for (int n = 1; n <= 8; ++n)
    for_each_partition_of(n, [n](const Partition& lam) {
      for (std::uint32_t p : {2u, 3u}) {
        std::map<std::string, long> direct;
        for_each_partition_of(n, [&](const Partition& nu) {
          if (!strictly_dominates(nu, lam)) return;
          for (const Hook& g : hooks(lam)) {
            long vg = valuation(static_cast<long long>(g.length), p);
            if (vg == 0) continue;
            Partition left = remove_rim_hook(lam, g);
            for (const Hook& h : hooks(nu)) {
              if (h.length != g.length) continue;
              if (!(remove_rim_hook(nu, h) == left)) continue;
              direct[nu.to_string()] +=
                  ((g.leg + h.leg + 1) % 2 == 0 ? 1 : -1) * vg;
            }
          }
        });
        std::map<std::string, long> mine;
        for (const HookTriple& t : enumerate_triples(lam, p))
          mine[t.nu.to_string()] += t.alpha;
        for (auto it = direct.begin(); it != direct.end();)
          it = it->second == 0 ? direct.erase(it) : std::next(it);
        for (auto it = mine.begin(); it != mine.end();)
          it = it->second == 0 ? mine.erase(it) : std::next(it);
        CHECK(direct == mine);
      }
    });
}

TEST_CASE("the worked column: (8,3,2) at p = 2") {
  auto r = symbolic_rhs(P("8,3,2"), 2);
  REQUIRE(r.terms.size() == 2);
  CHECK(r.terms[0].first == P("12,1"));
  CHECK(r.terms[0].second == 1);
  CHECK(r.terms[1].first == P("8,5"));
  CHECK(r.terms[1].second == 1);
}

TEST_CASE("the worked column: (8,2,2,1) at p = 2") {
  auto r = symbolic_rhs(P("8,2,2,1"), 2);
  REQUIRE(r.terms.size() == 5);
  // descending lexicographic order
  CHECK(r.terms[0].first == P("12,1"));
  CHECK(r.terms[0].second == -2);
  CHECK(r.terms[1].first == P("10,1,1,1"));
  CHECK(r.terms[1].second == 1);
  CHECK(r.terms[2].first == P("8,5"));
  CHECK(r.terms[2].second == -2);
  CHECK(r.terms[3].first == P("8,3,2"));
  CHECK(r.terms[3].second == 2);
  CHECK(r.terms[4].first == P("8,3,1,1"));
  CHECK(r.terms[4].second == 1);
}

TEST_CASE("simple symbolic cases") {
  auto r = symbolic_rhs(P("1,1"), 2);
  REQUIRE(r.terms.size() == 1);
  CHECK(r.terms[0].first == P("2"));
  CHECK(r.terms[0].second == 1);

  CHECK(symbolic_rhs(P("2,1"), 2).terms.empty());

  auto q = symbolic_rhs(P("2,2"), 2);
  auto m = term_map(q);
  CHECK(m.size() == 2);
  CHECK(m["4"] == -1);
  CHECK(m["3,1"] == 1);
}

TEST_CASE("empty whenever no hook length is divisible by p") {
  for (int n = 1; n <= 8; ++n)
    for_each_partition_of(n, [](const Partition& lam) {
      for (std::uint32_t p : {2u, 3u}) {
        bool has_divisible = false;
        for (const Hook& h : hooks(lam))
          if (h.length % static_cast<int>(p) == 0) has_divisible = true;
        if (!has_divisible) CHECK(symbolic_rhs(lam, p).terms.empty());
      }
    });
}

namespace {
DecompositionTable s13_column() {
  DecompositionTable table(2);
  Partition mu = P("12,1");
  table.set(P("12,1"), mu, 1);
  table.set(P("10,3"), mu, 0);
  table.set(P("10,1,1,1"), mu, 1);
  table.set(P("8,5"), mu, 1);
  table.set(P("8,3,2"), mu, 2);
  table.set(P("8,3,1,1"), mu, 3);
  table.set(P("8,2,2,1"), mu, 2);
  return table;
}
} // namespace

TEST_CASE("numeric evaluation of the worked column") {
  DecompositionTable table = s13_column();
  CHECK(numeric_rhs(P("8,2,2,1"), P("12,1"), 2, table) == 4); // -2+1-2+4+3
  CHECK(numeric_rhs(P("8,3,2"), P("12,1"), 2, table) == 2);   // 1*1 + 1*1
}

TEST_CASE("numeric error paths") {
  DecompositionTable empty(2);
  CHECK_THROWS_AS(numeric_rhs(P("8,2,2,1"), P("12,1"), 2, empty), MissingEntry);
  DecompositionTable table = s13_column();
  CHECK_THROWS_AS(numeric_rhs(P("8,2,2,1"), P("1,1"), 2, table), NotPRegular);
  CHECK_THROWS_AS(numeric_rhs(P("12,1"), P("12,1"), 2, table), SchaperError);
  CHECK_THROWS_AS(numeric_rhs(P("8,2,2,1"), P("12,1"), 3, table), SchaperError);
}

TEST_CASE("improved upper bound reproduces the worked conclusion") {
  DecompositionTable table = s13_column();
  CHECK(improved_upper_bound(P("8,2,2,1"), P("12,1"), 2, table, 2) == 2);
  CHECK_THROWS_AS(improved_upper_bound(P("8,2,2,1"), P("12,1"), 2, table, 0), ZeroSchaper);

  DecompositionTable tiny(2);
  tiny.set(P("2"), P("2"), 1);
  CHECK(improved_upper_bound(P("1,1"), P("2"), 2, tiny, 1) == 1);

  // a vanishing right-hand side bounds the multiplicity by zero
  DecompositionTable cancel(2);
  cancel.set(P("4"), P("4"), 1);
  cancel.set(P("3,1"), P("4"), 1);
  CHECK(numeric_rhs(P("2,2"), P("4"), 2, cancel) == 0); // -1*1 + 1*1
  CHECK(improved_upper_bound(P("2,2"), P("4"), 2, cancel, 1) == 0);
}

TEST_CASE("regularisation layer check") {
  // (1,1): lambda^r = (2), single term
  DecompositionTable tiny(2);
  tiny.set(P("2"), P("2"), 1);
  CHECK(regularisation_layer_check(P("1,1"), 2, tiny) == 1);

  // (5,5,2,2): the two box-shift partitions carry multiplicity 1
  {
    Partition lam = P("5,5,2,2");
    Partition reg = regularise(lam, 2); // (6,4,3,1)
    DecompositionTable table(2);
    for (const auto& [nu, a] : symbolic_rhs(lam, 2).terms) {
      long long mult = (nu == P("6,4,2,2") || nu == P("5,5,3,1") || nu == reg) ? 1 : 0;
      table.set(nu, reg, mult);
    }
    CHECK(regularisation_layer_check(lam, 2, table) == 2);
  }

  // a triply singular, well separated shape reaches layer 3
  {
    Partition lam = P("9,9,5,5,1,1");
    Partition reg = regularise(lam, 2);
    CHECK(reg == P("10,8,6,4,2"));
    DecompositionTable table(2);
    for (const auto& [nu, a] : symbolic_rhs(lam, 2).terms) {
      bool shift = nu == P("10,8,5,5,1,1") || nu == P("9,9,6,4,1,1") || nu == P("9,9,5,5,2");
      table.set(nu, reg, (shift || nu == reg) ? 1 : 0);
    }
    CHECK(regularisation_layer_check(lam, 2, table) == 3);
  }

  DecompositionTable table(2);
  CHECK_THROWS_AS(regularisation_layer_check(P("3,2,1"), 2, table), SchaperError);
}

TEST_CASE("json rendering of symbolic output") {
  auto j = sum_formula_to_json(symbolic_rhs(P("8,3,2"), 2));
  REQUIRE(j.size() == 2);
  CHECK(j[0]["nu"] == nlohmann::json({12, 1}));
  CHECK(j[0]["coef"] == 1);
}
