#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lfg/group.hpp"

namespace lfg {

using PIdx = std::uint32_t;

struct PermBudget {
  std::size_t max_order = 8192;
  std::size_t max_bytes = 1u << 29;
};

/// Breadth-first closure of a permutation generating set with the canonical
/// first-visit numbering (identity = 0).  Feeds both the per-try groups and
/// the full product amalgams.
class PermGroupClosure {
 public:
  PermGroupClosure(std::size_t degree, const std::vector<std::vector<PIdx>>& gens,
                   const PermBudget& budget);

  std::size_t degree() const { return degree_; }
  std::size_t size() const { return arena_.size() / std::max<std::size_t>(degree_, 1); }
  const PIdx* perm(std::size_t i) const { return arena_.data() + i * degree_; }

  /// Index of an element given by its image vector, or -1.
  int find(const PIdx* p) const;

  /// Full multiplication table under the canonical numbering.
  std::vector<Elem> table() const;
  FiniteGroup to_group() const { return FiniteGroup::from_table_unchecked(int(size()), table()); }

 private:
  std::size_t degree_;
  std::vector<PIdx> arena_;
  std::vector<std::vector<Elem>> mult_by_gen_;
  std::vector<int> parent_, parent_gen_;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets_;

  int insert(const PIdx* p);
};

}  // namespace lfg
