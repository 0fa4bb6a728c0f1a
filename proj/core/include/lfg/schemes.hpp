#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lfg/amalgam.hpp"
#include "lfg/group.hpp"
#include "lfg/qf_types.hpp"

namespace lfg {

enum class SchemeId { Trivial, Cg, Gl, AbK, AbMarked, Gm };

/// An operational type-scheme: parameter arity k_s, output arity n_s, a
/// parameter-shape test for p_s, and a constructor realizing q_s(ā, G).
struct Scheme {
  SchemeId id = SchemeId::Trivial;
  int trivial_arity = 0;                       // Trivial
  int ab_k = 0;                                // AbK
  std::shared_ptr<const FiniteGroup> marked;   // AbMarked
  std::vector<Elem> marked_tuple;              // AbMarked listing of `marked`
  int gm_half_arity = 1;                       // Gm: k_s = 2 * this

  int k_s() const;
  int n_s() const;
  std::string name() const;

  static Scheme trivial(int arity);
  static Scheme cg();
  static Scheme gl();
  static Scheme ab(int k);
  static Scheme ab_marked(FiniteGroup k, std::vector<Elem> listing);
  static Scheme gm(int half_arity);
};

/// A scheme with concrete parameters over some group.
struct DefEntry {
  Scheme scheme;
  std::vector<Elem> params;
};

/// The result of applying a scheme constructor to (G, ā).
struct SchemeApplication {
  FiniteGroup h;
  std::vector<Elem> j0_map;  // embedding G -> H
  std::vector<Elem> tuple;   // the realizing tuple c̄
  std::string route;         // construction route notes (gm: "automorphism" / "nf3")
};

SchemeApplication apply_cg(const FiniteGroup& g, const AmalgamBudget& budget = {});
SchemeApplication apply_gl(const FiniteGroup& g, Elem a, const AmalgamBudget& budget = {});
SchemeApplication apply_ab(const FiniteGroup& g, const FiniteGroup& k, std::span<const Elem> listing);
SchemeApplication apply_ab_k(const FiniteGroup& g, int k);
SchemeApplication apply_gm(const FiniteGroup& g, std::span<const Elem> a1, std::span<const Elem> a2,
                           const AmalgamBudget& budget = {});

/// True iff `params` realizes p_s in g (shape only, no construction).
bool params_realize(const Scheme& s, const FiniteGroup& g, std::span<const Elem> params);

/// Dispatcher over the scheme id.  Throws the scheme-specific taxonomy.
SchemeApplication apply_scheme(const Scheme& s, const FiniteGroup& g, std::span<const Elem> params,
                               const AmalgamBudget& budget = {});

/// Reference output type q_s(ā, G): the type of the constructed tuple over the
/// embedded copy of G, with the base ordered by G's element order.
QfType scheme_output_type(const Scheme& s, const FiniteGroup& g, std::span<const Elem> params,
                          const AmalgamBudget& budget = {});

/// Sequential composition: entry i is applied over the stage reached after
/// entries < i (entry parameters are indices into that stage).
struct OplusResult {
  FiniteGroup h;
  std::vector<Elem> j0_map;                 // original G -> H
  std::vector<std::vector<Elem>> tuples;    // realizing tuples, mapped into H
  bool restriction_checked = false;         // sub-product law verified
  bool restriction_ok = true;
};

OplusResult oplus_apply(std::span<const DefEntry> entries, const FiniteGroup& g,
                        const AmalgamBudget& budget = {}, bool check_restriction = true);

/// Symmetric composition via the stable amalgam of the two one-step
/// extensions.  When the closure exceeds the budget the joint group is not
/// materialized and the symmetry claim is established at the action level.
struct OtimesResult {
  bool closed = false;
  FiniteGroup g3;                 // valid when closed
  std::vector<Elem> j0_map, c1, c2;
  bool symmetric = false;
  std::string symmetry_route;     // "canonical-form" or "action-mirror"
  bool mixed_term_checked = false;
  bool mixed_term_ok = true;
  std::size_t mixed_term_count = 0;
};

OtimesResult otimes_apply(const DefEntry& t1, const DefEntry& t2, const FiniteGroup& g,
                          const AmalgamBudget& budget = {}, int mixed_term_word_len = 0,
                          int mixed_term_param_slots = 1);

/// cp_s(G1, G2): first coordinates of tuples in G2 realizing q_t(G1) for some
/// parameter choice of the scheme inside G1.  `g1_members` is a subgroup of g2.
std::vector<Elem> cp_set(const Scheme& s, const FiniteGroup& g2, const std::vector<Elem>& g1_members,
                         const AmalgamBudget& budget = {});

}  // namespace lfg
