#pragma once

#include "schaper/classifiers.hpp"
#include "schaper/decomp_io.hpp"

namespace schaper {

// One partition where a proved characterisation and the oracle disagree. Any
// such row is a bug: either a condition was transcribed wrong or the oracle
// identity failed, and the witness pair pins down which.
struct Disagreement {
  Partition lambda;
  long oracle = 0;
  bool predicate = false;
  OracleResult witness;
};

struct CharacterisationReport {
  int n_max = 0;
  std::uint32_t prime = 0;
  int level = 0;
  bool iff = true; // false: only (oracle >= level) => predicate is checked
  long checked = 0;
  long agreements = 0;
  std::vector<Disagreement> disagreements;
  std::vector<Partition> skipped; // over budget
};

// Sweep all partitions of n <= n_max comparing the level predicate against
// oracle >= level. Levels 2 and 3 exist for every prime (level 3 at odd p is
// a necessary condition only); level 4 is p = 2.
inline CharacterisationReport verify_characterisation(int n_max, std::uint32_t p,
                                                      int level,
                                                      const ResourceBudget& budget = {},
                                                      OracleCache* cache = nullptr,
                                                      int threads = 0) {
  if (!is_prime(p)) throw SchaperError("verify: p must be prime");
  if (level < 2 || level > 4) throw SchaperError("verify: level must be 2, 3 or 4");
  if (level == 4 && p != 2)
    throw SchaperError("verify: the level-4 characterisation exists only for p = 2");

  CharacterisationReport report;
  report.n_max = n_max;
  report.prime = p;
  report.level = level;
  report.iff = !(level == 3 && p != 2);

  for_each_partition_up_to(n_max, [&](const Partition& lambda) {
    bool predicate = false;
    switch (level) {
      case 2: predicate = ge2(lambda, p).has_value(); break;
      case 3:
        predicate = p == 2 ? ge3_p2(lambda).has_value()
                           : ge3_oddp_condition_holds(lambda, p);
        break;
      case 4: predicate = ge4_p2(lambda).has_value(); break;
    }
    OracleResult oracle;
    try {
      oracle = schaper_number(lambda, p, budget, cache, threads);
    } catch (const ResourceLimit&) {
      report.skipped.push_back(lambda);
      return;
    }
    ++report.checked;
    bool oracle_ge = oracle.schaper_number >= level;
    bool disagree = report.iff ? (predicate != oracle_ge) : (oracle_ge && !predicate);
    if (disagree)
      report.disagreements.push_back({lambda, oracle.schaper_number, predicate, oracle});
    else
      ++report.agreements;
  });
  return report;
}

// The odd-p sufficiency conjecture: condition holds <=> oracle >= 3.
// (true, false) rows are conjecture counterexamples worth reporting;
// (false, true) rows contradict the proved theorem and indicate a bug.
struct ConjectureRow {
  Partition lambda;
  bool condition = false;
  bool oracle_ge3 = false;
  long oracle = 0;
};

struct ConjectureReport {
  int n_max = 0;
  std::uint32_t prime = 0;
  std::vector<ConjectureRow> rows;
  std::vector<Partition> counterexamples; // condition true, oracle < 3
  std::vector<Partition> bugs;            // condition false, oracle >= 3
  std::vector<Partition> skipped;
};

inline ConjectureReport check_conjecture(int n_max, std::uint32_t p,
                                         const ResourceBudget& budget = {},
                                         OracleCache* cache = nullptr, int threads = 0) {
  if (!is_prime(p) || p == 2) throw NotOddPrime("check_conjecture: p must be an odd prime");
  ConjectureReport report;
  report.n_max = n_max;
  report.prime = p;
  for_each_partition_up_to(n_max, [&](const Partition& lambda) {
    bool condition = ge3_oddp_condition_holds(lambda, p);
    OracleResult oracle;
    try {
      oracle = schaper_number(lambda, p, budget, cache, threads);
    } catch (const ResourceLimit&) {
      report.skipped.push_back(lambda);
      return;
    }
    ConjectureRow row{lambda, condition, oracle.schaper_number >= 3, oracle.schaper_number};
    if (row.condition && !row.oracle_ge3) report.counterexamples.push_back(lambda);
    if (!row.condition && row.oracle_ge3) report.bugs.push_back(lambda);
    report.rows.push_back(std::move(row));
  });
  return report;
}

} // namespace schaper
