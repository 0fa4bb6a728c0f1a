#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lfg/group.hpp"

namespace lfg {

/// Canonical form of a marked subgroup: <base ∪ tuple> relabeled by
/// breadth-first numbering from the identity over the generator list
/// [base..., tuple...].  Stored as the m x n_gens transition table of that
/// numbering, which determines the relabeled multiplication table and is much
/// smaller.  Two marked subgroups get equal forms iff there is an isomorphism
/// matching base to base (pointwise, in order) and tuple to tuple.
struct MarkedCanon {
  int order = 1;
  int n_gens = 0;
  std::vector<Elem> transitions;      // order x n_gens, canon indices
  std::vector<Elem> base_positions;   // canon index of each base element
  std::vector<Elem> tuple_positions;  // canon index of each tuple element

  bool operator==(const MarkedCanon&) const = default;

  /// Materializes the relabeled order x order multiplication table.
  std::vector<Elem> full_table() const;
};

/// Quantifier-free (basic) type of a tuple over a parameter subgroup,
/// represented extensionally by the marked-subgroup canonical form.
struct QfType {
  int arity = 0;
  std::vector<Elem> base;  // ordered parameter list (ambient indices)
  MarkedCanon canon;
};

/// Computes the canonical form of <gens> inside h.  The `n_base` first
/// generators are the base, the rest the tuple.
MarkedCanon marked_canon(const FiniteGroup& h, std::span<const Elem> gens, int n_base);

/// tp_bs(ā, A, H): basic type of the tuple over the subgroup A (A.parent == &h).
QfType tp_bs(const FiniteGroup& h, std::span<const Elem> tuple, const Subgroup& a);

/// Same with an explicitly ordered parameter list (used when comparing types
/// across different ambient groups through a base correspondence).
QfType tp_bs_ordered(const FiniteGroup& h, std::span<const Elem> tuple,
                     std::span<const Elem> base_ordered);

/// Throws ArityMismatch / BaseMismatch on incompatible inputs.
bool types_equal(const QfType& p, const QfType& q);

/// Compares p (over base B in H1) against q (over base q.base in H2) where
/// `base_map` carries p's ordered base to q's expected ordered base.
bool types_equal_mapped(const QfType& p, const QfType& q, std::span<const Elem> base_map);

/// A witnessing pair for a failed non-splitting check: equal types over K but
/// distinguishable joint types, with an explicit distinguishing term.
struct SplitWitness {
  int m = 0;
  std::vector<Elem> b1, b2;
  GroupTerm reason;  // variables: b-slots then a-slots; parameters from K
};

/// Does tp_bs(ā, G, H) split over K?  Scans all pairs b̄1, b̄2 ∈ G^m with
/// equal type over K for m <= m_max and returns the lexicographically first
/// witness, or nullopt when the type does not split at this bound.
std::optional<SplitWitness> does_not_split(const FiniteGroup& h, std::span<const Elem> tuple,
                                           const Subgroup& g, const Subgroup& k, int m_max);

struct Scheme;  // schemes.hpp

struct DefinabilityLine {
  std::vector<Elem> tuple;
  bool definable = false;
  std::string via;  // scheme id + parameters, empty when not definable
};

struct DefinabilityReport {
  bool all_definable = true;
  std::vector<DefinabilityLine> lines;
};

/// Bounded-arity test of the scheme-extension relation: for every tuple
/// c̄ ∈ H^n, n <= n_max, find a catalog scheme s, parameters ā from G and a
/// realization c̄* of q_s(ā, G) in H with c̄ inside <G ∪ c̄*>.  (The derived
/// scheme for c̄ itself then exists by closure of the catalog.)
DefinabilityReport check_extension_definable(const FiniteGroup& h, const Subgroup& g,
                                             std::span<const Scheme> catalog, int n_max);

}  // namespace lfg
