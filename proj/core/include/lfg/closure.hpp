#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfg/amalgam.hpp"
#include "lfg/group.hpp"
#include "lfg/schemes.hpp"

namespace lfg {

struct ProvenanceStep {
  std::string op;                 // "hall" | "closure" | "ab_k"
  std::vector<std::string> args;  // replayable parameters
};

/// One adjunction record: what was adjoined at a step, over which finite base,
/// referencing which earlier steps' tuples.
struct ConstructionLogEntry {
  std::size_t step = 0;
  std::string op;                   // scheme id or deficiency-pair name
  std::vector<Elem> adjoined;       // realizing tuple, as elements of stage step+1
  std::vector<std::size_t> prior;   // earlier steps this entry's base draws from
  std::vector<Elem> base;           // the finite base subgroup, in stage step
};
using ConstructionLog = std::vector<ConstructionLogEntry>;

/// An increasing chain of finite stages with verified links and replayable
/// provenance.
struct StageChain {
  std::vector<FiniteGroup> stages;
  std::vector<std::vector<Elem>> links;  // stage i -> stage i+1
  std::vector<ProvenanceStep> provenance;

  /// Composition of the links from stage i into stage j >= i.
  std::vector<Elem> link_map(std::size_t i, std::size_t j) const;
};

struct ClosureBudgets {
  AmalgamBudget amalgam;
  std::size_t max_stage_order = 4096;

  ClosureBudgets() {
    amalgam.per_side_try_cap = 2;  // chain stages get large; keep families small
  }
};

/// One canonical deficiency shape: a finite L with a designated subgroup K.
struct DeficiencyPair {
  std::string name;
  FiniteGroup l;
  std::vector<Elem> k_members;  // subgroup of l (contains 0)
};

/// All pairs K ⊆ L with |L| <= bound, L over the corpus classes, K over
/// Aut(L)-orbit representatives of proper subgroups; deterministic order.
std::vector<DeficiencyPair> deficiency_pairs(int bound);

struct HallLogEntry {
  std::string pair_name;
  std::vector<Elem> embedding;  // K -> input stage
  bool repaired_by_amalgam = false;
  int stage_order_after = 0;
};

struct HallStepResult {
  FiniteGroup h;
  std::vector<Elem> link;  // input stage -> h
  std::vector<HallLogEntry> log;
  ConstructionLog adjunctions;  // one entry per amalgamation performed
  bool aborted = false;
  std::string abort_reason;
};

/// Repairs every bounded-size embedding deficiency of the input stage by
/// amalgamating the missing extension over the embedded subgroup; embeddings
/// deduplicated up to inner automorphisms of the stage.
HallStepResult hall_step(const FiniteGroup& g, int bound, const ClosureBudgets& budgets = {});

struct EcLine {
  std::size_t stage = 0;
  std::string pair_name;
  std::vector<Elem> embedding;
  int repaired_at = -1;  // least stage index with an extension, -1 = FAIL
};

struct EcReport {
  bool pass = true;  // no FAIL among stages that have a successor
  std::size_t checked = 0;
  std::vector<EcLine> lines;     // one per (stage, pair, embedding)
  std::vector<EcLine> failures;  // the lines with repaired_at < 0
};

/// For each stage, deficiency pair and embedding: the least stage where an
/// extension exists.  Stages without a successor are reported but excused.
EcReport certify_ec(const StageChain& chain, int bound, const ClosureBudgets& budgets = {});

struct OneStepClosureResult {
  FiniteGroup h;
  std::vector<Elem> link;
  std::vector<DefEntry> entries;
  std::vector<std::vector<Elem>> tuples;  // realizing tuples inside h
  ConstructionLog adjunctions;
  bool independence_checked = false;
  bool independence_ok = true;
};

/// The base-containment invariant of log entry `idx`: its base lies in the
/// subgroup generated by the stage-0 image together with the adjoined tuples
/// of all earlier entries, computed inside the entry's stage.
bool construction_log_base_ok(const StageChain& chain, const ConstructionLog& log, std::size_t idx);

/// Realizes every catalog-definable type over G jointly, by folding the
/// symmetric amalgamation left to right; cross-independence checked pairwise.
OneStepClosureResult one_step_closure(const FiniteGroup& g, std::span<const Scheme> catalog,
                                      int param_bound, const ClosureBudgets& budgets = {});

/// Chain data for the product-stabilization probe: a_n lives in stage n+1 and
/// commutes with stage n; b_n is the running product a_0 ... a_n.
struct ChainProbe {
  std::vector<Elem> a;  // a[n] is an element of stages[n+1]
  int k = 2;            // order parameter of the disjointness clause
};

struct ProbeReport {
  bool valid = false;
  std::string invalid_clause;
  bool pass = false;
  std::string detail;
  std::size_t terms_checked = 0;
};

/// Checks the product-type stabilization: for every term over parameters from
/// `param_stage` up to `term_budget` letters, sigma(b_n, params) vanishes at
/// stage n+1 iff it vanishes at stage n+2.  `check_beta` enforces the
/// disjointness clause on each a_n first; dropping it switches to the weaker
/// variant that only requires the truth value to stabilize along the
/// factorial-index subsequence b_{n!}.
ProbeReport chain_limit_probe(const StageChain& chain, const ChainProbe& probe, int term_budget,
                              std::size_t param_stage = 0, bool check_beta = true);

/// The elementary-abelian chain: stage n is Z2^n via central adjunctions.
StageChain z2_power_chain(int steps);
ChainProbe z2_diagonal_probe(const StageChain& chain);

// persistence: a directory of stage mtables, link files and a manifest
void save_chain(const StageChain& chain, const std::string& dir);
StageChain load_chain(const std::string& dir);

/// Re-runs the provenance from stage 0; used by the determinism checks.
StageChain replay_chain(const StageChain& chain, const ClosureBudgets& budgets = {});

}  // namespace lfg
