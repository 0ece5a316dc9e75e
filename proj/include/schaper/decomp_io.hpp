#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#ifndef _WIN32
#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>
#endif

#include <json.hpp>

#include "schaper/classifiers.hpp"
#include "schaper/gram.hpp"

namespace schaper {

// --- partition iteration -----------------------------------------------------

// Visits every partition of n exactly once, in reverse-lexicographic order:
// (n), (n-1,1), ..., (1^n).
inline void for_each_partition_of(int n, const std::function<void(const Partition&)>& fn) {
  if (n < 0) throw SchaperError("for_each_partition_of: n must be >= 0");
  if (n == 0) {
    fn(Partition());
    return;
  }
  std::vector<int> a{n};
  for (;;) {
    fn(Partition(a));
    int k = static_cast<int>(a.size()) - 1;
    while (k >= 0 && a[static_cast<std::size_t>(k)] == 1) --k;
    if (k < 0) return;
    int rem = static_cast<int>(a.size()) - k; // trailing ones + 1
    a.resize(static_cast<std::size_t>(k) + 1);
    a[static_cast<std::size_t>(k)] -= 1;
    int unit = a[static_cast<std::size_t>(k)];
    while (rem > unit) {
      a.push_back(unit);
      rem -= unit;
    }
    a.push_back(rem);
  }
}

inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  for_each_partition_of(n, [&](const Partition& p) { out.push_back(p); });
  return out;
}

inline void for_each_partition_up_to(int n_max,
                                     const std::function<void(const Partition&)>& fn) {
  for (int n = 0; n <= n_max; ++n) for_each_partition_of(n, fn);
}

// --- decomposition tables ----------------------------------------------------

// [S^nu : D^mu] data. Absent keys are "missing", never 0: Schaper-formula
// evaluation must distinguish known zeros from unknowns.
class DecompositionTable {
public:
  explicit DecompositionTable(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) throw SchemaError("decomposition table: p must be prime");
  }

  std::uint32_t prime() const { return p_; }

  void set(const Partition& specht, const Partition& simple, long long mult,
           std::string note = {}) {
    if (!is_p_regular(simple, p_))
      throw NotPRegular("decomposition table: mu = " + simple.to_string() +
                        " is " + std::to_string(p_) + "-singular");
    if (mult < 0) throw SchemaError("decomposition table: negative multiplicity");
    if (specht == simple && mult != 1)
      throw SchemaError("decomposition table: [S^mu : D^mu] must be 1");
    entries_[{specht, simple}] = {mult, std::move(note)};
  }

  std::optional<long long> get(const Partition& specht, const Partition& simple) const {
    auto it = entries_.find({specht, simple});
    if (it == entries_.end()) return std::nullopt;
    return it->second.mult;
  }

  long long require(const Partition& specht, const Partition& simple) const {
    auto v = get(specht, simple);
    if (!v)
      throw MissingEntry("decomposition table: no entry for [S^" + specht.to_string() +
                         " : D^" + simple.to_string() + "]");
    return *v;
  }

  std::size_t size() const { return entries_.size(); }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [key, entry] : entries_)
      fn(key.first, key.second, entry.mult, entry.note);
  }

private:
  struct Entry {
    long long mult = 0;
    std::string note;
  };
  std::uint32_t p_;
  std::map<std::pair<Partition, Partition>, Entry> entries_;
};

namespace detail {

inline nlohmann::json partition_to_json(const Partition& p) {
  return nlohmann::json(p.parts());
}

inline Partition partition_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw SchemaError("expected a partition as an integer array");
  std::vector<int> parts;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw SchemaError("partition entries must be integers");
    parts.push_back(v.get<int>());
  }
  try {
    return Partition(std::move(parts));
  } catch (const NotAPartition& e) {
    throw SchemaError(std::string("bad partition in file: ") + e.what());
  }
}

// stable checksum over the payload fields, hex FNV-1a
inline std::string fnv_checksum(const std::string& payload) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : payload) h = (h ^ c) * 1099511628211ULL;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Holds an advisory lock on <path>.lock for the lifetime of the object.
class FileLock {
public:
  explicit FileLock(const std::string& path) {
#ifndef _WIN32
    fd_ = ::open((path + ".lock").c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
#endif
  }
  ~FileLock() {
#ifndef _WIN32
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
#endif
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

private:
  int fd_ = -1;
};

// Write-to-temp then atomically rename over the target; readers see either
// the old file or the new one, never a torn mix. The advisory lock serialises
// concurrent writers.
inline void atomic_write(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  FileLock lock(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
    if (!out) throw SchaperError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw SchaperError("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

} // namespace detail

// {"p": int, "entries": [{"specht": [...], "simple": [...], "mult": n, "note": s}]}
inline DecompositionTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchaperError("cannot open table " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("table " + path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("p") || !j.contains("entries"))
    throw SchemaError("table " + path + ": expected {p, entries}");
  if (!j["p"].is_number_integer()) throw SchemaError("table: p must be an integer");
  DecompositionTable table(j["p"].get<std::uint32_t>());
  for (const auto& e : j["entries"]) {
    if (!e.contains("specht") || !e.contains("simple") || !e.contains("mult"))
      throw SchemaError("table entry: expected {specht, simple, mult}");
    if (!e["mult"].is_number_integer()) throw SchemaError("table entry: mult must be an integer");
    table.set(detail::partition_from_json(e["specht"]),
              detail::partition_from_json(e["simple"]), e["mult"].get<long long>(),
              e.value("note", std::string{}));
  }
  return table;
}

inline void save_table(const DecompositionTable& table, const std::string& path) {
  nlohmann::json j;
  j["p"] = table.prime();
  j["entries"] = nlohmann::json::array();
  table.for_each([&](const Partition& specht, const Partition& simple, long long mult,
                     const std::string& note) {
    nlohmann::json e;
    e["specht"] = detail::partition_to_json(specht);
    e["simple"] = detail::partition_to_json(simple);
    e["mult"] = mult;
    e["note"] = note;
    j["entries"].push_back(std::move(e));
  });
  detail::atomic_write(path, j.dump(1) + "\n");
}

// --- oracle result cache -----------------------------------------------------
// One JSON object per line; each line carries a checksum of its payload.

namespace detail {

inline std::string cache_payload(const OracleResult& r) {
  return std::to_string(r.prime) + "|" + r.shape.to_string() + "|" +
         std::to_string(r.schaper_number) + "|" + r.witness_a.to_string() + "|" +
         r.witness_b.to_string() + "|" + r.entry_value.to_string();
}

} // namespace detail

inline void save_cache(const OracleCache& cache, const std::string& path) {
  std::vector<std::string> lines;
  cache.for_each([&](const OracleResult& r) {
    nlohmann::json j;
    j["p"] = r.prime;
    j["partition"] = detail::partition_to_json(r.shape);
    j["schaper"] = r.schaper_number;
    j["witness"] = {r.witness_a.to_string(), r.witness_b.to_string()};
    j["entry"] = r.entry_value.to_string();
    j["checksum"] = detail::fnv_checksum(detail::cache_payload(r));
    lines.push_back(j.dump());
  });
  std::sort(lines.begin(), lines.end());
  std::string contents;
  for (const auto& l : lines) contents += l + "\n";
  detail::atomic_write(path, contents);
}

// Throws CacheCorrupt on any malformed or checksum-failing line; the caller
// recovers by starting from an empty cache and recomputing.
inline OracleCache load_cache(const std::string& path) {
  OracleCache cache;
  std::ifstream in(path);
  if (!in) return cache; // cold cache
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw CacheCorrupt("cache " + path + ": line " + std::to_string(lineno) +
                         " is not valid JSON");
    }
    try {
      OracleResult r;
      r.prime = j.at("p").get<std::uint32_t>();
      r.shape = detail::partition_from_json(j.at("partition"));
      r.schaper_number = j.at("schaper").get<long>();
      r.witness_a = parse_tableau(j.at("witness").at(0).get<std::string>());
      r.witness_b = parse_tableau(j.at("witness").at(1).get<std::string>());
      r.entry_value = BigInt::from_string(j.at("entry").get<std::string>());
      if (j.at("checksum").get<std::string>() != detail::fnv_checksum(detail::cache_payload(r)))
        throw CacheCorrupt("cache " + path + ": checksum mismatch on line " +
                           std::to_string(lineno));
      cache.put(r);
    } catch (const CacheCorrupt&) {
      throw;
    } catch (const std::exception&) {
      throw CacheCorrupt("cache " + path + ": malformed record on line " +
                         std::to_string(lineno));
    }
  }
  return cache;
}

// --- JSON views used by the CLI ---------------------------------------------

inline nlohmann::json certificate_to_json(const Certificate& c) {
  nlohmann::json j;
  j["rule"] = c.rule;
  j["witness"] = c.witness;
  j["contribution"] = c.contribution;
  j["proved"] = c.proved;
  return j;
}

inline nlohmann::json bound_report_to_json(const BoundReport& r) {
  nlohmann::json j;
  j["partition"] = detail::partition_to_json(r.shape);
  j["p"] = r.prime;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  if (r.conjectural_lower) j["conjectural_lower"] = *r.conjectural_lower;
  j["certificates"] = nlohmann::json::array();
  for (const auto& c : r.certificates) j["certificates"].push_back(certificate_to_json(c));
  return j;
}

inline nlohmann::json oracle_result_to_json(const OracleResult& r) {
  nlohmann::json j;
  j["partition"] = detail::partition_to_json(r.shape);
  j["p"] = r.prime;
  j["schaper"] = r.schaper_number;
  j["witness"] = {r.witness_a.to_string(), r.witness_b.to_string()};
  j["entry"] = r.entry_value.to_string();
  return j;
}

} // namespace schaper
