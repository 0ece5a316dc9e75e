#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "schaper/colouring.hpp"
#include "schaper/decomp_io.hpp"

using namespace schaper;

namespace {

Partition P(const std::string& text) { return parse_partition(text); }

Tableau shuffle_rows(const Tableau& t, std::mt19937& rng) {
  const Partition& lam = t.shape();
  std::vector<int> entries;
  for (int r = 1; r <= lam.rows(); ++r) {
    std::vector<int> row;
    for (int c = 1; c <= lam.part(r); ++c) row.push_back(t.at(r, c));
    std::shuffle(row.begin(), row.end(), rng);
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Tableau(lam, std::move(entries));
}

// every tableau row-equivalent to t
std::vector<Tableau> row_class(const Tableau& t) {
  const Partition& lam = t.shape();
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(lam.rows()));
  for (int r = 1; r <= lam.rows(); ++r)
    for (int c = 1; c <= lam.part(r); ++c)
      rows[static_cast<std::size_t>(r - 1)].push_back(t.at(r, c));
  std::vector<Tableau> out;
  std::vector<std::vector<int>> current = rows;
  std::function<void(std::size_t)> rec = [&](std::size_t r) {
    if (r == current.size()) {
      std::vector<int> entries;
      for (const auto& row : current) entries.insert(entries.end(), row.begin(), row.end());
      out.push_back(Tableau(lam, std::move(entries)));
      return;
    }
    std::sort(current[r].begin(), current[r].end());
    do {
      rec(r + 1);
    } while (std::next_permutation(current[r].begin(), current[r].end()));
  };
  rec(0);
  return out;
}

void check_identity(const Tableau& s, const Tableau& t) {
  long long sum = signed_sum(build_graph(s, t));
  BigInt expect = inner_product(polytabloid(s), polytabloid(t));
  if (row_permutation_sign(s, t) < 0) expect = -expect;
  CHECK(BigInt(sum) == expect);
}

} // namespace

TEST_CASE("graph construction") {
  Tableau s = initial_tableau(P("2,2"));
  ColouringGraph g = build_graph(s, s);
  CHECK(g.columns == 2);
  REQUIRE(g.edges.size() == 4);
  CHECK(g.edges[0] == std::pair<int, int>{1, 1});
  CHECK(g.edges[1] == std::pair<int, int>{2, 2});
  CHECK(g.edges[2] == std::pair<int, int>{1, 1});
  CHECK(g.edges[3] == std::pair<int, int>{2, 2});
  CHECK(g.multiplicity(1, 1) == 2);
  CHECK(g.multiplicity(1, 2) == 0);
  CHECK(g.dump() == "edge 1: s_1 t_1\nedge 2: s_2 t_2\nedge 3: s_1 t_1\nedge 4: s_2 t_2\n");
  CHECK_THROWS_AS(build_graph(parse_tableau("1,2;3"), parse_tableau("1,3;2")),
                  NotRowEquivalent);
}

TEST_CASE("one column gives n parallel edges") {
  Tableau s = initial_tableau(P("1,1,1,1"));
  ColouringGraph g = build_graph(s, s);
  CHECK(g.columns == 1);
  CHECK(g.multiplicity(1, 1) == 4);
}

TEST_CASE("the (3,3,3) proof pair has a simple graph and signed sum 0") {
  Tableau s = initial_tableau(P("3,3,3"));
  Tableau t = parse_tableau("1,2,3;6,4,5;8,9,7");
  ColouringGraph g = build_graph(s, t);
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) CHECK(g.multiplicity(a, b) <= 1);
  CHECK(signed_sum(g) == 0);
  // the polytabloids really are orthogonal
  CHECK(inner_product(polytabloid(s), polytabloid(t)) == BigInt(0));
}

TEST_CASE("single column colourings are the n! colour assignments") {
  Tableau s = initial_tableau(P("1,1,1"));
  ColouringGraph g = build_graph(s, s);
  CHECK(admissible_count(g) == 6);
  CHECK(signed_sum(g) == 6);
}

TEST_CASE("colour classes are matchings on row-length prefixes") {
  Tableau s = initial_tableau(P("2,2"));
  ColouringGraph g = build_graph(s, s);
  long long count = enumerate_admissible(g, [&](const AdmissibleColouring& c) {
    REQUIRE(c.colour_of_edge.size() == 4);
    std::vector<int> per_colour(3, 0);
    for (int col : c.colour_of_edge) {
      REQUIRE(col >= 1);
      REQUIRE(col <= 2);
      ++per_colour[static_cast<std::size_t>(col)];
    }
    CHECK(per_colour[1] == 2); // lambda_1 = 2 edges of colour 1
    CHECK(per_colour[2] == 2);
    CHECK(c.sign == 1);
  });
  CHECK(count == 4);
  CHECK(signed_sum(g) == 4); // <e_t, e_t> = 4 for (2,2)
}

TEST_CASE("budget on colouring enumeration") {
  Tableau s = initial_tableau(P("1^7"));
  CHECK_THROWS_AS(admissible_count(build_graph(s, s), 100), ResourceLimit);
}

TEST_CASE("signed sum identity on every pair up to n = 5") {
  for (int n = 1; n <= 5; ++n)
    for_each_partition_of(n, [](const Partition& lam) {
      auto klass = row_class(initial_tableau(lam));
      for (const Tableau& s : klass)
        for (const Tableau& t : klass) check_identity(s, t);
    });
}

TEST_CASE("signed sum identity on random pairs at n = 6, 7") {
  std::mt19937 rng(2024);
  for (int n : {6, 7}) {
    auto shapes = partitions_of(n);
    for (int iter = 0; iter < 40; ++iter) {
      const Partition& lam = shapes[rng() % shapes.size()];
      Tableau base = initial_tableau(lam);
      check_identity(shuffle_rows(base, rng), shuffle_rows(base, rng));
    }
  }
}

TEST_CASE("colouring count equals the (u,v) pair count") {
  CHECK(colouring_count_matches_pairs(initial_tableau(P("2,1")), initial_tableau(P("2,1"))));
  CHECK(colouring_count_matches_pairs(initial_tableau(P("1,1")), initial_tableau(P("1,1"))));
  CHECK(colouring_count_matches_pairs(initial_tableau(P("2")), initial_tableau(P("2"))));
  // both sides are 2 for the (1,1) identity pair
  CHECK(admissible_count(build_graph(initial_tableau(P("1,1")), initial_tableau(P("1,1")))) == 2);
  std::mt19937 rng(5);
  Tableau s = shuffle_rows(initial_tableau(P("2,2,1")), rng);
  Tableau t = shuffle_rows(initial_tableau(P("2,2,1")), rng);
  CHECK(colouring_count_matches_pairs(s, t));
}

TEST_CASE("m-edge divisibility") {
  Tableau s = initial_tableau(P("1,1,1,1"));
  auto r = check_m_edge_divisibility(s, s, 2);
  CHECK(r.m == 4);
  CHECK(r.lambda_hat == Partition());
  CHECK(r.hat_schaper == 0);
  CHECK(r.modulus == BigInt(24));
  CHECK(r.inner == BigInt(24));
  CHECK(r.divides);

  // (2,2,2,2): lambda-hat = (1^4), nu_2 = 3, so m! * 8 divides every inner product
  std::mt19937 rng(11);
  OracleCache cache;
  for (int iter = 0; iter < 20; ++iter) {
    Tableau a = shuffle_rows(initial_tableau(P("2,2,2,2")), rng);
    Tableau b = shuffle_rows(initial_tableau(P("2,2,2,2")), rng);
    auto rep = check_m_edge_divisibility(a, b, 2, {}, &cache);
    CHECK(rep.hat_schaper == 3);
    CHECK(rep.divides);
  }
  for (int iter = 0; iter < 20; ++iter) {
    Tableau a = shuffle_rows(initial_tableau(P("2,2,1")), rng);
    Tableau b = shuffle_rows(initial_tableau(P("2,2,1")), rng);
    CHECK(check_m_edge_divisibility(a, b, 2, {}, &cache).divides);
  }
}

TEST_CASE("counts and signed sums are invariant under relabelling") {
  // relabelling the entries of both tableaux permutes the edge labels but
  // leaves the multiset of colourings alone
  std::mt19937 rng(31);
  for (const char* shape : {"3,2", "2,2,1", "3,1,1"}) {
    Partition lam = P(shape);
    Tableau s = shuffle_rows(initial_tableau(lam), rng);
    Tableau t = shuffle_rows(initial_tableau(lam), rng);
    std::vector<int> relabel(static_cast<std::size_t>(lam.n()));
    std::iota(relabel.begin(), relabel.end(), 1);
    std::shuffle(relabel.begin(), relabel.end(), rng);
    auto apply = [&](const Tableau& t0) {
      std::vector<int> entries;
      for (int e : t0.entries())
        entries.push_back(relabel[static_cast<std::size_t>(e - 1)]);
      return Tableau(lam, std::move(entries));
    };
    ColouringGraph g = build_graph(s, t);
    ColouringGraph h = build_graph(apply(s), apply(t));
    CHECK(admissible_count(g) == admissible_count(h));
    CHECK(signed_sum(g) == signed_sum(h));
  }
}

TEST_CASE("pigeonhole: (2^{2p}) always has a p-fold parallel edge") {
  // exhaustive at p = 2
  auto klass = row_class(initial_tableau(P("2,2,2,2")));
  Tableau s = initial_tableau(P("2,2,2,2"));
  for (const Tableau& t : klass) {
    ColouringGraph g = build_graph(s, t);
    int best = 0;
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b) best = std::max(best, g.multiplicity(a, b));
    CHECK(best >= 2);
  }
  // sampled at p = 3
  std::mt19937 rng(17);
  for (int iter = 0; iter < 50; ++iter) {
    Tableau a = shuffle_rows(initial_tableau(P("2^6")), rng);
    Tableau b = shuffle_rows(initial_tableau(P("2^6")), rng);
    ColouringGraph g = build_graph(a, b);
    int best = 0;
    for (int x = 1; x <= 2; ++x)
      for (int y = 1; y <= 2; ++y) best = std::max(best, g.multiplicity(x, y));
    CHECK(best >= 3);
  }
}
