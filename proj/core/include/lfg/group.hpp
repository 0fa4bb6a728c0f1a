#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lfg/errors.hpp"

namespace lfg {

/// Element index into a finite group's multiplication table.
/// Index 0 is always the identity.
using Elem = std::uint16_t;

constexpr Elem kIdentity = 0;

/// A finite group given by its full multiplication table, immutable after
/// construction.  Inverses and element orders are cached eagerly.
class FiniteGroup {
 public:
  FiniteGroup() : n_(1), table_{0}, inv_{0}, elem_order_{1} {}

  /// Validates the full group axioms and builds the derived caches.
  /// Throws Error{NotClosed, NoIdentityAtZero, NotAssociative, NoInverse},
  /// each naming the first witnessing tuple.
  static FiniteGroup validate_table(const std::vector<std::vector<long long>>& raw);

  /// Trusted constructor for tables produced by the library's own builders.
  /// Checks only the cheap invariants in debug builds.
  static FiniteGroup from_table_unchecked(int n, std::vector<Elem> flat);

  int order() const { return n_; }
  Elem mul(Elem a, Elem b) const { return table_[std::size_t(a) * n_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  int element_order(Elem a) const { return elem_order_[a]; }
  Elem conj(Elem g, Elem by) const { return mul(mul(inv(by), g), by); }
  Elem pow(Elem a, long e) const;

  std::span<const Elem> row(Elem a) const { return {table_.data() + std::size_t(a) * n_, std::size_t(n_)}; }
  const std::vector<Elem>& table() const { return table_; }

  bool same_table(const FiniteGroup& other) const { return n_ == other.n_ && table_ == other.table_; }

  /// Multiset of element orders, sorted; cheap isomorphism invariant.
  std::vector<int> order_profile() const;

  // Builders for standard groups (all with identity at index 0).
  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  static FiniteGroup dihedral(int n);  // order 2n, n >= 2
  static FiniteGroup quaternion8();
  static FiniteGroup symmetric(int n);  // order n!, n <= 7
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

 private:
  int n_;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  std::vector<std::uint16_t> elem_order_;

  void build_caches();  // throws NoInverse on failure
};

/// A subgroup of `parent`, stored as the sorted member list (always contains 0).
struct Subgroup {
  const FiniteGroup* parent = nullptr;
  std::vector<Elem> members;

  int order() const { return int(members.size()); }
  bool contains(Elem g) const;
};

/// An injective homomorphism source -> target as an index map.
struct Embedding {
  const FiniteGroup* source = nullptr;
  const FiniteGroup* target = nullptr;
  std::vector<Elem> map;

  Elem operator()(Elem g) const { return map[g]; }
};

/// Validates that `map` is an injective homomorphism and returns it.
Embedding make_embedding(const FiniteGroup& source, const FiniteGroup& target,
                         std::vector<Elem> map);
Embedding identity_embedding(const FiniteGroup& g);
/// target-composition: (f then g), requires f.target == g.source.
Embedding compose(const Embedding& f, const Embedding& g);
bool is_embedding(const FiniteGroup& source, const FiniteGroup& target,
                  const std::vector<Elem>& map);

/// One letter of a group term: either a bound variable or a baked-in
/// parameter index of the ambient group, possibly inverted.
struct TermLetter {
  enum Kind { Var, Param } kind;
  int value;  // variable position, or element index
  bool inverted;
};

/// A group word over variables x0..x_{arity-1} and concrete parameters.
struct GroupTerm {
  int arity = 0;
  std::vector<TermLetter> word;

  static GroupTerm from_word(int arity, std::vector<TermLetter> w);
};

/// Left-to-right fold of the term through the table.  Throws ArityMismatch.
Elem eval_term(const FiniteGroup& g, const GroupTerm& term, std::span<const Elem> args);

// --- subgroup / centralizer toolkit ------------------------------------

Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> members);  // validates closure
bool is_subgroup(const FiniteGroup& g, const std::vector<Elem>& members);

/// Least subgroup containing `gens` (fixed point of product/inverse closure).
Subgroup generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens);

/// Blocks of the left-coset partition gK, ordered by least element;
/// the block containing 0 equals K and comes first.
std::vector<std::vector<Elem>> left_cosets(const FiniteGroup& g, const Subgroup& k);

Subgroup centralizer(const FiniteGroup& g, std::span<const Elem> a);
Subgroup center(const FiniteGroup& g);
Subgroup normalizer(const FiniteGroup& g, const Subgroup& a);

bool subgroups_commute_elementwise(const FiniteGroup& g, std::span<const Elem> a,
                                   std::span<const Elem> b);

// --- embedding enumeration ----------------------------------------------

/// A deterministic generating sequence: repeatedly the least element outside
/// the closure of the previously chosen ones.  Empty for the trivial group.
std::vector<Elem> greedy_generators(const FiniteGroup& g);

/// All injective homomorphisms K -> G in lexicographic order of the images of
/// greedy_generators(K).  Empty list when none exist.
std::vector<Embedding> enumerate_embeddings(const FiniteGroup& k, const FiniteGroup& g);

/// First embedding K -> G extending `partial` (pairs of (k-elem, g-elem)),
/// or empty.  Used by existential-closure certification.
std::vector<Elem> find_embedding_extending(const FiniteGroup& k, const FiniteGroup& g,
                                           std::span<const std::pair<Elem, Elem>> partial);

/// Up to `limit` embeddings extending `partial`, in search order (0 = all).
std::vector<std::vector<Elem>> find_embeddings_extending(
    const FiniteGroup& k, const FiniteGroup& g,
    std::span<const std::pair<Elem, Elem>> partial, std::size_t limit);

std::vector<Embedding> automorphisms(const FiniteGroup& g);
std::vector<Embedding> inner_automorphisms(const FiniteGroup& g);

bool isomorphic(const FiniteGroup& a, const FiniteGroup& b);

/// Deduplicates embeddings up to post-composition with inner automorphisms of
/// the target: keeps the lexicographically least map of each orbit.
std::vector<Embedding> dedup_up_to_inner(const std::vector<Embedding>& embs);

}  // namespace lfg
