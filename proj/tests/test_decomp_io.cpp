#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "schaper/decomp_io.hpp"

using namespace schaper;

namespace {

Partition P(const std::string& text) { return parse_partition(text); }

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("schaper_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

} // namespace

TEST_CASE("partition iteration is reverse lexicographic and complete") {
  auto p4 = partitions_of(4);
  REQUIRE(p4.size() == 5);
  CHECK(p4[0] == P("4"));
  CHECK(p4[1] == P("3,1"));
  CHECK(p4[2] == P("2,2"));
  CHECK(p4[3] == P("2,1,1"));
  CHECK(p4[4] == P("1,1,1,1"));

  auto p0 = partitions_of(0);
  REQUIRE(p0.size() == 1);
  CHECK(p0[0] == Partition());

  CHECK(partitions_of(9).size() == 30);

  // strictly decreasing in the order, all of the right size
  for (int n : {6, 10}) {
    auto ps = partitions_of(n);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      CHECK(ps[i].n() == n);
      if (i > 0) CHECK(ps[i] < ps[i - 1]);
    }
  }

  long count = 0;
  for_each_partition_up_to(9, [&](const Partition&) { ++count; });
  CHECK(count == 1 + 1 + 2 + 3 + 5 + 7 + 11 + 15 + 22 + 30);
}

TEST_CASE("decomposition table semantics") {
  DecompositionTable table(2);
  table.set(P("12,1"), P("12,1"), 1);
  table.set(P("10,3"), P("12,1"), 0, "explicit zero");
  CHECK(table.get(P("12,1"), P("12,1")) == 1);
  CHECK(table.get(P("10,3"), P("12,1")) == 0);
  CHECK(!table.get(P("8,5"), P("12,1")).has_value()); // missing, not zero
  CHECK_THROWS_AS(table.require(P("8,5"), P("12,1")), MissingEntry);
  CHECK_THROWS_AS(table.set(P("2"), P("1,1"), 1), NotPRegular);
  CHECK_THROWS_AS(table.set(P("3,1"), P("3,1"), 2), SchemaError);
  CHECK_THROWS_AS(table.set(P("3,1"), P("3,1"), -1), SchemaError);
  CHECK_THROWS_AS(DecompositionTable(4), SchemaError);
}

TEST_CASE("table file round trip") {
  TempDir dir;
  DecompositionTable table(2);
  Partition mu = P("12,1");
  table.set(P("12,1"), mu, 1, "reflexive");
  table.set(P("10,3"), mu, 0);
  table.set(P("10,1,1,1"), mu, 1);
  table.set(P("8,5"), mu, 1);
  table.set(P("8,3,2"), mu, 2);
  table.set(P("8,3,1,1"), mu, 3);
  table.set(P("8,2,2,1"), mu, 2);
  std::string path = dir.file("s13.json");
  save_table(table, path);

  DecompositionTable loaded = load_table(path);
  CHECK(loaded.prime() == 2);
  CHECK(loaded.size() == table.size());
  table.for_each([&](const Partition& nu, const Partition& m, long long mult,
                     const std::string& note) {
    CHECK(loaded.get(nu, m) == mult);
    if (!note.empty()) {
      bool seen = false;
      loaded.for_each([&](const Partition& nu2, const Partition&, long long,
                          const std::string& note2) {
        if (nu2 == nu && note2 == note) seen = true;
      });
      CHECK(seen);
    }
  });

  // second round trip is byte identical
  std::string path2 = dir.file("s13_again.json");
  save_table(loaded, path2);
  std::ifstream a(path), b(path2);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
}

TEST_CASE("table schema errors") {
  TempDir dir;
  std::string path = dir.file("bad.json");
  {
    std::ofstream out(path);
    out << "{\"entries\": []}";
  }
  CHECK_THROWS_AS(load_table(path), SchemaError);
  {
    std::ofstream out(path);
    out << "not json";
  }
  CHECK_THROWS_AS(load_table(path), SchemaError);
  {
    std::ofstream out(path);
    out << R"({"p": 2, "entries": [{"specht": [1,1], "simple": [1,1], "mult": 1}]})";
  }
  CHECK_THROWS_AS(load_table(path), NotPRegular); // (1,1) is 2-singular
  CHECK_THROWS_AS(load_table(dir.file("missing.json")), SchaperError);
}

TEST_CASE("cache round trip is bit exact") {
  TempDir dir;
  OracleCache cache;
  cache.put(schaper_number(P("1,1,1,1"), 2));
  cache.put(schaper_number(P("2,2"), 2));
  cache.put(schaper_number(P("2,1"), 3));
  std::string path = dir.file("cache.jsonl");
  save_cache(cache, path);

  OracleCache loaded = load_cache(path);
  CHECK(loaded.size() == 3);
  auto hit = loaded.get(P("1,1,1,1"), 2);
  REQUIRE(hit.has_value());
  auto fresh = schaper_number(P("1,1,1,1"), 2);
  CHECK(hit->schaper_number == fresh.schaper_number);
  CHECK(hit->witness_a == fresh.witness_a);
  CHECK(hit->witness_b == fresh.witness_b);
  CHECK(hit->entry_value == fresh.entry_value);
  CHECK(!loaded.get(P("3,2,1"), 2).has_value()); // cold entry

  // saving the loaded cache reproduces the file byte for byte
  std::string path2 = dir.file("cache2.jsonl");
  save_cache(loaded, path2);
  std::ifstream a(path), b(path2);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
}

TEST_CASE("cold cache and corruption detection") {
  TempDir dir;
  CHECK(load_cache(dir.file("absent.jsonl")).size() == 0);

  OracleCache cache;
  cache.put(schaper_number(P("2,2"), 2));
  std::string path = dir.file("cache.jsonl");
  save_cache(cache, path);

  // tamper with the payload: checksum must catch it
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  in.close();
  auto pos = line.find("\"schaper\":1");
  REQUIRE(pos != std::string::npos);
  line.replace(pos, 11, "\"schaper\":7");
  {
    std::ofstream out(path, std::ios::trunc);
    out << line << "\n";
  }
  CHECK_THROWS_AS(load_cache(path), CacheCorrupt);

  {
    std::ofstream out(path, std::ios::trunc);
    out << "{broken\n";
  }
  CHECK_THROWS_AS(load_cache(path), CacheCorrupt);
}

TEST_CASE("readers never see a torn cache during rewrites") {
  TempDir dir;
  std::string path = dir.file("cache.jsonl");
  OracleCache a;
  a.put(schaper_number(P("2,2"), 2));
  OracleCache b;
  b.put(schaper_number(P("2,2"), 2));
  b.put(schaper_number(P("1,1,1,1"), 2));
  save_cache(a, path);

  std::atomic<bool> stop{false};
  std::atomic<int> corrupt{0};
  std::thread reader([&] {
    while (!stop.load()) {
      try {
        OracleCache seen = load_cache(path);
        std::size_t size = seen.size();
        if (size != 1 && size != 2) ++corrupt;
      } catch (const CacheCorrupt&) {
        ++corrupt;
      }
    }
  });
  for (int iter = 0; iter < 200; ++iter) save_cache(iter % 2 ? b : a, path);
  stop = true;
  reader.join();
  CHECK(corrupt.load() == 0);
}

TEST_CASE("json views") {
  Certificate c{"FAYERS_GE2_COND2", {2}, 2, true};
  auto j = certificate_to_json(c);
  CHECK(j["rule"] == "FAYERS_GE2_COND2");
  CHECK(j["witness"] == nlohmann::json({2}));
  CHECK(j["contribution"] == 2);
  CHECK(j["proved"] == true);

  auto br = bound_report_to_json(combined_bounds(P("8,2,2,1"), 2));
  CHECK(br["lower"] == 2);
  CHECK(br["upper"] == 2);
  CHECK(br["certificates"].is_array());

  auto orj = oracle_result_to_json(schaper_number(P("1,1,1,1"), 2));
  CHECK(orj["schaper"] == 3);
  CHECK(orj["entry"] == "24");
}
