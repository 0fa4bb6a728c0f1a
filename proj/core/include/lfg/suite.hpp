#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lfg/amalgam.hpp"
#include "lfg/corpus.hpp"
#include "lfg/group.hpp"

namespace lfg {

struct SuiteCheck {
  std::string id;
  std::string law;
  std::string instance;
  bool pass = true;
  bool skipped = false;  // budget skip: recorded, never a failure by itself
  std::string witness;   // replayable description when failed or skipped
  double wall_ms = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass && !c.skipped) return false;
    return true;
  }
  std::size_t skipped_count() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.skipped;
    return n;
  }
  std::size_t failure_count() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += (!c.pass && !c.skipped);
    return n;
  }
};

struct SuiteConfig {
  AmalgamBudget budget;
  int m_max = 2;
  int term_budget = 6;
  std::uint64_t seed = 0;
  bool timings = false;           // include wall times in the serialized records
  std::size_t commuting_max_order = 200;
  int ec_bound = 4;
  int chain_steps = 4;
};

/// Known suites: amalgam-laws | commuting | schemes | closure | types.
/// Throws UnknownSuite / CorpusLoadError.
SuiteReport run_suite(const std::string& name, const std::vector<CorpusEntry>& corpus,
                      const SuiteConfig& cfg = {});

/// Line-delimited JSON records, one per check; wall times only when
/// `timings` is set so reruns stay byte-identical.
std::string serialize_report(const SuiteReport& report, bool timings);

/// The embedding configurations the law suites sweep: all (emb1, emb2) pairs
/// into (g1, g2) deduplicated up to automorphisms of the three groups.
std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> embedding_configurations(
    const FiniteGroup& g0, const FiniteGroup& g1, const FiniteGroup& g2);

/// Disjoint cycle notation over point indices; fixed points omitted, cycles
/// ordered by least moved point; the identity prints "()".
std::string format_permutation(std::span<const PIdx> perm);

}  // namespace lfg
