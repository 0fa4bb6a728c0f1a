#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lfg/group.hpp"

namespace lfg {

/// Point index into a triple space (or a disjoint union of triple spaces).
using PIdx = std::uint32_t;

struct AmalgamBudget {
  std::size_t max_triples_per_try = 20000;
  std::size_t max_product_points = 2000000;
  std::size_t max_order = 8192;      // closure cap before re-tabling
  int per_side_try_cap = 0;          // 0 = enumerate every transversal choice
  std::size_t max_element_bytes = 1u << 29;  // closure element storage cap
};

/// An amalgamation try: coset transversals I1, I2 of the embedded base in
/// G1, G2, both containing the identity, plus the factorization tables the
/// triple-space actions need.
struct AmalgamTry {
  const FiniteGroup* g0 = nullptr;
  const FiniteGroup* g1 = nullptr;
  const FiniteGroup* g2 = nullptr;
  Embedding emb1, emb2;
  std::vector<Elem> i1, i2;  // sorted ascending, both contain 0

  // factorization v = rep[v] * emb(h[v]) per side
  std::vector<Elem> rep1, h1, rep2, h2;
  std::vector<int> pos1, pos2;  // parent index -> transversal position or -1

  std::size_t triple_count() const {
    return std::size_t(g0->order()) * i1.size() * i2.size();
  }
};

/// The triple space U of a try: points (g0, g1, g2) with g1 in I1, g2 in I2,
/// in lexicographic order of the value triple.
struct TripleSpace {
  const AmalgamTry* x = nullptr;
  std::size_t size() const { return x->triple_count(); }
  PIdx index_of(Elem a0, Elem a1, Elem a2) const;  // a1, a2 transversal members
  std::array<Elem, 3> triple_at(PIdx u) const;
};

AmalgamTry make_try(const FiniteGroup& g0, const FiniteGroup& g1, const FiniteGroup& g2,
                    const Embedding& emb1, const Embedding& emb2,
                    std::optional<std::vector<Elem>> i1 = std::nullopt,
                    std::optional<std::vector<Elem>> i2 = std::nullopt);

/// The right action of g in G_level on a triple (Definition of the try actions;
/// level 0 multiplies the base coordinate, level 1/2 refactor through the
/// transversal on that side).
std::array<Elem, 3> j_action(const AmalgamTry& x, int level, Elem g, std::array<Elem, 3> u);

/// The permutation of the whole triple space induced by g at `level` 1 or 2.
std::vector<PIdx> j_perm(const AmalgamTry& x, int level, Elem g);

/// The permutation group generated by both images on one triple space.
/// j1_map / j2_map are verified embeddings G1, G2 -> carrier, kept as plain
/// index maps so the value type stays movable.
struct GxGroup {
  FiniteGroup carrier;
  std::vector<Elem> j1_map, j2_map;
  std::vector<std::vector<PIdx>> perms;  // carrier index -> permutation of U
};

GxGroup build_Gx(const AmalgamTry& x, const AmalgamBudget& budget = {});

/// Deterministic enumeration of transversal pairs with the identity pinned as
/// the representative of the base coset.  `side_choice_count` can overflow for
/// large inputs, so it saturates at SIZE_MAX.
struct TryFamily {
  std::vector<std::vector<Elem>> side1, side2;  // transversal choices per side
  bool complete = true;                         // no cap truncation
};

std::size_t count_transversals(const FiniteGroup& g, const Embedding& emb);  // saturating
std::vector<std::vector<Elem>> list_transversals(const FiniteGroup& g, const Embedding& emb,
                                                 std::size_t limit);
std::vector<std::vector<Elem>> sample_transversals(const FiniteGroup& g, const Embedding& emb,
                                                   std::uint64_t seed, std::size_t count);

TryFamily enumerate_try_family(const FiniteGroup& g0, const FiniteGroup& g1,
                               const FiniteGroup& g2, const Embedding& emb1,
                               const Embedding& emb2, const AmalgamBudget& budget = {});

/// The stable amalgam: G3 realized as the subgroup generated by the diagonal
/// images of G1 and G2 inside the direct product of the per-try permutation
/// groups, re-tabled with the breadth-first canonical labeling.
struct StableAmalgam {
  FiniteGroup g3;
  std::vector<Elem> j1_map, j2_map;  // verified embeddings G1, G2 -> G3
  const FiniteGroup* g0 = nullptr;
  const FiniteGroup* g1 = nullptr;
  const FiniteGroup* g2 = nullptr;
  Embedding emb1, emb2;
  std::vector<AmalgamTry> tries;  // kept tries (action-duplicates removed)
  std::size_t tries_enumerated = 0;
  std::size_t tries_deduped = 0;
  bool family_complete = true;
  std::size_t union_points = 0;

  Elem j1(Elem g) const { return j1_map[g]; }
  Elem j2(Elem g) const { return j2_map[g]; }
  std::vector<Elem> j0_map() const;  // j1 ∘ emb1 (= j2 ∘ emb2)
};

StableAmalgam stable_amalgam(const FiniteGroup& g0, const FiniteGroup& g1,
                             const FiniteGroup& g2, const Embedding& emb1,
                             const Embedding& emb2, const AmalgamBudget& budget = {});

/// Shared product engine: amalgam over an explicit try family.
StableAmalgam amalgam_over_family(const FiniteGroup& g0, const FiniteGroup& g1,
                                  const FiniteGroup& g2, const Embedding& emb1,
                                  const Embedding& emb2, const TryFamily& family,
                                  const AmalgamBudget& budget);

struct NfLawEntry {
  std::string law;
  std::string instance;
  bool pass = true;
  std::string detail;
};

struct NfLawReport {
  std::vector<NfLawEntry> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

/// Checks disjointness, per-try image intersection, symmetry, monotonicity and
/// uniqueness under relabeling.  `max_subgroup_pairs` bounds the monotonicity
/// sweep (0 = all pairs).
NfLawReport verify_nf_laws(const StableAmalgam& sa, const AmalgamBudget& budget = {},
                           std::size_t max_subgroup_pairs = 0);

/// Law checks carried out on the try-family actions alone, without closing the
/// product group.  Exact for any size: equality in G3 is componentwise
/// equality of the per-try permutations.  Used when the closure is over budget;
/// monotonicity needs the closure and is reported as skipped here.
NfLawReport verify_nf_laws_action(const FiniteGroup& g0, const FiniteGroup& g1,
                                  const FiniteGroup& g2, const Embedding& emb1,
                                  const Embedding& emb2, const AmalgamBudget& budget = {});

struct CommuteCheck {
  bool commute_in_g3 = false;
  bool rhs = false;  // a centralizes base in G1, b in G2, base abelian
  bool match = false;
  std::string explanation;
};

/// The commuting characterization for a in G1 \ base, b in G2 \ base.
/// Throws Error{PreconditionFailed} ("ElementInBase") otherwise.
CommuteCheck commuting_characterization(const StableAmalgam& sa, Elem a, Elem b);

/// log((n*!)^{m*}) with n* = |G1||G2|/|G0|, m* = n*^(|G1|+|G2|), computed on
/// logarithms so the astronomically loose bound stays overflow-safe.
double log_try_group_bound(int n0, int n1, int n2);

/// All subgroups of g containing `lower`, sorted; used by the monotonicity law.
std::vector<std::vector<Elem>> subgroups_containing(const FiniteGroup& g,
                                                    const std::vector<Elem>& lower);

/// Re-tables a subgroup as a standalone group (members sorted ascending keep
/// their relative order; identity stays at 0).
struct SubgroupAsGroup {
  FiniteGroup group;
  std::vector<Elem> to_parent;
  std::vector<int> from_parent;  // parent index -> local index or -1
};
SubgroupAsGroup subgroup_as_group(const FiniteGroup& g, const std::vector<Elem>& members);

/// Relabeled isomorphic copy: table'[s(a)][s(b)] = s(table[a][b]); s(0) = 0.
FiniteGroup relabeled(const FiniteGroup& g, std::span<const Elem> sigma);

/// Extends gens -> images to a homomorphism A -> B if one exists.
std::optional<std::vector<Elem>> extend_generator_map(const FiniteGroup& a,
                                                      std::span<const Elem> gens,
                                                      const FiniteGroup& b,
                                                      std::span<const Elem> images);

}  // namespace lfg
