#include "lfg/perm_closure.hpp"

#include <algorithm>
#include <numeric>

namespace lfg {

namespace {

std::uint64_t hash_perm(const PIdx* p, std::size_t n) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

int PermGroupClosure::find(const PIdx* p) const {
  auto it = buckets_.find(hash_perm(p, degree_));
  if (it == buckets_.end()) return -1;
  for (int idx : it->second)
    if (std::equal(p, p + degree_, perm(idx))) return idx;
  return -1;
}

int PermGroupClosure::insert(const PIdx* p) {
  int idx = int(size());
  buckets_[hash_perm(p, degree_)].push_back(idx);
  arena_.insert(arena_.end(), p, p + degree_);
  return idx;
}

PermGroupClosure::PermGroupClosure(std::size_t degree, const std::vector<std::vector<PIdx>>& gens,
                                   const PermBudget& budget)
    : degree_(degree) {
  mult_by_gen_.assign(gens.size(), {});
  std::vector<PIdx> id(degree_);
  std::iota(id.begin(), id.end(), 0);
  insert(id.data());
  parent_.push_back(-1);
  parent_gen_.push_back(-1);
  std::vector<PIdx> scratch(degree_);
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const PIdx* a = perm(i);
      const std::vector<PIdx>& b = gens[k];
      for (std::size_t p = 0; p < degree_; ++p) scratch[p] = b[a[p]];  // apply a, then the generator
      int idx = find(scratch.data());
      if (idx < 0) {
        if ((size() + 1) * degree_ * sizeof(PIdx) > budget.max_bytes)
          throw Error(ErrorKind::BudgetExceeded, "closure element storage over budget");
        if (size() + 1 > budget.max_order || size() + 1 > 65535)
          throw Error(ErrorKind::BudgetExceeded,
                      "closure order exceeds cap " + std::to_string(budget.max_order));
        idx = insert(scratch.data());
        parent_.push_back(int(i));
        parent_gen_.push_back(int(k));
      }
      mult_by_gen_[k].push_back(Elem(idx));
    }
  }
}

std::vector<Elem> PermGroupClosure::table() const {
  const std::size_t m = size();
  std::vector<Elem> t(m * m);
  for (std::size_t i = 0; i < m; ++i) t[i * m] = Elem(i);
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i)
      t[i * m + j] = mult_by_gen_[parent_gen_[j]][t[i * m + parent_[j]]];
  return t;
}

}  // namespace lfg
