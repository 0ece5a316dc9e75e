#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <unordered_set>

#include "schaper/decomp_io.hpp"
#include "schaper/tableau.hpp"

using namespace schaper;

namespace {
Partition P(const std::string& text) { return parse_partition(text); }
} // namespace

TEST_CASE("initial tableau") {
  CHECK(initial_tableau(P("2,1")).to_string() == "1,2;3");
  CHECK(initial_tableau(P("3,3,3")).to_string() == "1,2,3;4,5,6;7,8,9");
  CHECK(initial_tableau(Partition()).n() == 0);
}

TEST_CASE("parsing") {
  Tableau t = parse_tableau("1,2,3;6,4,5;8,9,7");
  CHECK(t.shape() == P("3,3,3"));
  CHECK(t.at(2, 1) == 6);
  CHECK(t.at(3, 3) == 7);
  CHECK(t.to_string() == "1,2,3;6,4,5;8,9,7");
  CHECK(parse_tableau("").n() == 0);
  CHECK_THROWS_AS(parse_tableau("1,2;3,4,5"), ParseError);    // increasing rows
  CHECK_THROWS_AS(parse_tableau("1,2;2"), NotABijection);     // duplicate
  CHECK_THROWS_AS(parse_tableau("1,2;4"), NotABijection);     // not 1..n
  CHECK_THROWS_AS(parse_tableau("1,,2"), ParseError);
  CHECK_THROWS_AS(parse_tableau("1;x"), ParseError);
}

TEST_CASE("entry positions") {
  Tableau t = parse_tableau("1,2,3;6,4,5;8,9,7");
  CHECK(t.row_of_entry(6) == 2);
  CHECK(t.column_of_entry(6) == 1);
  CHECK(t.row_of_entry(7) == 3);
  CHECK(t.column_of_entry(7) == 3);
}

TEST_CASE("standardness") {
  CHECK(is_standard(initial_tableau(P("4,2,1"))));
  CHECK(!is_standard(parse_tableau("1,2,3;6,4,5;8,9,7")));
  CHECK(is_standard(parse_tableau("1,3;2,4")));
  CHECK(!is_standard(parse_tableau("2,1;3,4")));
}

TEST_CASE("standard enumeration matches the hook length formula up to n = 10") {
  for (int n = 0; n <= 10; ++n)
    for_each_partition_of(n, [](const Partition& lam) {
      long long count = 0;
      std::set<std::vector<int>> seen;
      for_each_standard_tableau(lam, [&](const Tableau& t) {
        ++count;
        CHECK(is_standard(t));
        seen.insert(t.entries());
      });
      CHECK(BigInt(count) == standard_tableau_count(lam));
      CHECK(static_cast<long long>(seen.size()) == count); // all distinct
    });
}

TEST_CASE("text form round-trips") {
  for (int n = 0; n <= 7; ++n)
    for_each_partition_of(n, [](const Partition& lam) {
      for_each_standard_tableau(lam, [](const Tableau& t) {
        CHECK(parse_tableau(t.to_string()) == t);
      });
    });
}

TEST_CASE("standard enumeration examples") {
  CHECK(standard_tableaux(P("2,2")).size() == 2);
  CHECK(standard_tableaux(P("6")).size() == 1);
  CHECK(standard_tableaux(P("3,3,3")).size() == 42);
}

TEST_CASE("row equivalence and the cellwise permutation sign") {
  Tableau s = initial_tableau(P("3,3,3"));
  Tableau t = parse_tableau("1,2,3;6,4,5;8,9,7");
  CHECK(row_equivalent(s, t));
  CHECK(row_permutation_sign(s, s) == 1);
  // (4 6 5)(7 8 9): two 3-cycles, even
  CHECK(row_permutation_sign(s, t) == 1);
  CHECK(row_permutation_sign(parse_tableau("1,2"), parse_tableau("2,1")) == -1);
  CHECK_THROWS_AS(row_permutation_sign(parse_tableau("1,2;3"), parse_tableau("1,3;2")),
                  NotRowEquivalent);
  CHECK(!row_equivalent(parse_tableau("1,2;3"), parse_tableau("1,3;2")));
}

TEST_CASE("tabloids are canonical row classes") {
  Tabloid a(parse_tableau("2,1;3"));
  Tabloid b(parse_tableau("1,2;3"));
  Tabloid c(parse_tableau("1,3;2"));
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.to_string() == "1,2|3");
  CHECK(c.to_string() == "1,3|2");
  auto rows = a.rows();
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<int>{1, 2});
  CHECK(rows[1] == std::vector<int>{3});
  std::unordered_set<Tabloid> set{a, b, c};
  CHECK(set.size() == 2);
}
