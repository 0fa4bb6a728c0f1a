#include "lfg/qf_types.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>

namespace lfg {

namespace {

// Breadth-first closure of <gens> from the identity; elements are numbered in
// first-visit order, which is the canonical labeling everything below relies on.
struct CanonBfs {
  std::vector<Elem> elems;      // canon index -> h-index
  std::vector<int> pos;         // h-index -> canon index or -1
  std::vector<Elem> delta;      // m x n_gens transition table (canon indices)
  std::vector<int> parent;      // canon index -> canon index (-1 for identity)
  std::vector<int> parent_gen;  // canon index -> generator slot

  CanonBfs(const FiniteGroup& h, std::span<const Elem> gens) {
    pos.assign(h.order(), -1);
    elems.push_back(kIdentity);
    pos[kIdentity] = 0;
    parent.push_back(-1);
    parent_gen.push_back(-1);
    const std::size_t k = gens.size();
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t g = 0; g < k; ++g) {
        Elem y = h.mul(elems[i], gens[g]);
        if (pos[y] < 0) {
          pos[y] = int(elems.size());
          elems.push_back(y);
          parent.push_back(int(i));
          parent_gen.push_back(int(g));
        }
        delta.push_back(Elem(pos[y]));
      }
    }
  }

  // Word over generator slots reaching elems[c] from the identity.
  std::vector<int> word(int c) const {
    std::vector<int> w;
    while (parent[c] >= 0) {
      w.push_back(parent_gen[c]);
      c = parent[c];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }
};

}  // namespace

MarkedCanon marked_canon(const FiniteGroup& h, std::span<const Elem> gens, int n_base) {
  for (Elem g : gens)
    if (g >= h.order()) throw Error(ErrorKind::IndexOutOfRange, "generator " + std::to_string(g));
  CanonBfs bfs(h, gens);
  MarkedCanon c;
  c.order = int(bfs.elems.size());
  c.n_gens = int(gens.size());
  c.transitions = std::move(bfs.delta);
  c.base_positions.reserve(n_base);
  for (int i = 0; i < n_base; ++i) c.base_positions.push_back(Elem(bfs.pos[gens[i]]));
  for (std::size_t i = n_base; i < gens.size(); ++i) c.tuple_positions.push_back(Elem(bfs.pos[gens[i]]));
  return c;
}

std::vector<Elem> MarkedCanon::full_table() const {
  const int m = order;
  auto delta = [&](int i, int g) { return transitions[std::size_t(i) * n_gens + g]; };
  // parent event of each canon index: its first appearance in BFS order
  std::vector<int> parent(m, -1), parent_gen(m, -1);
  for (int i = 0; i < m; ++i)
    for (int g = 0; g < n_gens; ++g) {
      int t = delta(i, g);
      if (t != 0 && parent[t] < 0) {
        parent[t] = i;
        parent_gen[t] = g;
      }
    }
  std::vector<Elem> table(std::size_t(m) * m);
  for (int i = 0; i < m; ++i) table[std::size_t(i) * m] = Elem(i);  // column of the identity
  // remaining columns in BFS order via their parent decomposition
  for (int j = 1; j < m; ++j)
    for (int i = 0; i < m; ++i)
      table[std::size_t(i) * m + j] = Elem(delta(table[std::size_t(i) * m + parent[j]], parent_gen[j]));
  return table;
}

QfType tp_bs_ordered(const FiniteGroup& h, std::span<const Elem> tuple,
                     std::span<const Elem> base_ordered) {
  std::vector<Elem> gens(base_ordered.begin(), base_ordered.end());
  gens.insert(gens.end(), tuple.begin(), tuple.end());
  QfType t;
  t.arity = int(tuple.size());
  t.base.assign(base_ordered.begin(), base_ordered.end());
  t.canon = marked_canon(h, gens, int(base_ordered.size()));
  return t;
}

QfType tp_bs(const FiniteGroup& h, std::span<const Elem> tuple, const Subgroup& a) {
  if (a.parent != &h) throw Error(ErrorKind::BaseMismatch, "parameter subgroup lives in another group");
  return tp_bs_ordered(h, tuple, a.members);
}

bool types_equal(const QfType& p, const QfType& q) {
  if (p.arity != q.arity) throw Error(ErrorKind::ArityMismatch, "type arities differ");
  if (p.base != q.base) throw Error(ErrorKind::BaseMismatch, "parameter sets differ");
  return p.canon == q.canon;
}

bool types_equal_mapped(const QfType& p, const QfType& q, std::span<const Elem> base_map) {
  if (p.arity != q.arity) throw Error(ErrorKind::ArityMismatch, "type arities differ");
  if (base_map.size() != p.base.size() || base_map.size() != q.base.size())
    throw Error(ErrorKind::BaseMismatch, "base correspondence has the wrong length");
  if (!std::equal(base_map.begin(), base_map.end(), q.base.begin()))
    throw Error(ErrorKind::BaseMismatch, "base correspondence does not match the target base");
  return p.canon == q.canon;
}

namespace {

// First disagreement between the canonical transitions of two marked groups,
// as (row, generator slot, side-1 target).  nullopt iff marked-isomorphic.
std::optional<std::array<int, 3>> first_mismatch(const CanonBfs& a, const CanonBfs& b,
                                                 std::size_t n_gens) {
  const std::size_t m = std::min(a.elems.size(), b.elems.size());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t g = 0; g < n_gens; ++g) {
      Elem ta = a.delta[i * n_gens + g];
      Elem tb = b.delta[i * n_gens + g];
      if (ta != tb) return std::array<int, 3>{int(i), int(g), int(ta)};
    }
  assert(a.elems.size() == b.elems.size());
  return std::nullopt;
}

}  // namespace

std::optional<SplitWitness> does_not_split(const FiniteGroup& h, std::span<const Elem> tuple,
                                           const Subgroup& g, const Subgroup& k, int m_max) {
  if (g.parent != &h || k.parent != &h)
    throw Error(ErrorKind::BaseMismatch, "G and K must be subgroups of H");
  for (Elem x : k.members)
    if (!g.contains(x)) throw Error(ErrorKind::InvariantViolation, "K is not contained in G");
  for (Elem x : tuple)
    if (x >= h.order()) throw Error(ErrorKind::IndexOutOfRange, "tuple element " + std::to_string(x));
  if (m_max < 1) throw Error(ErrorKind::InvariantViolation, "m_max must be >= 1");

  const std::vector<Elem>& kk = k.members;
  const std::vector<Elem>& gg = g.members;
  const int nk = int(kk.size());
  const int na = int(tuple.size());

  for (int m = 1; m <= m_max; ++m) {
    const std::size_t count = [&] {
      std::size_t c = 1;
      for (int i = 0; i < m; ++i) c *= gg.size();
      return c;
    }();
    // one canonical signature per tuple; pairs then compare interned ids
    std::vector<int> base_sig(count), joint_sig(count);
    {
      auto fnv = [](const std::vector<Elem>& v) {
        std::uint64_t h = 1469598103934665603ull;
        for (Elem e : v) {
          h ^= e;
          h *= 1099511628211ull;
        }
        return h;
      };
      using Pool = std::vector<std::pair<std::uint64_t, std::vector<Elem>>>;
      auto intern = [&](Pool& pool, std::vector<Elem> key) {
        std::uint64_t hk = fnv(key);
        for (std::size_t i = 0; i < pool.size(); ++i)
          if (pool[i].first == hk && pool[i].second == key) return int(i);
        pool.emplace_back(hk, std::move(key));
        return int(pool.size()) - 1;
      };
      Pool interned_base, interned_joint;
      std::vector<Elem> gens(nk + m), jgens(nk + m + na);
      std::copy(kk.begin(), kk.end(), gens.begin());
      std::copy(kk.begin(), kk.end(), jgens.begin());
      std::copy(tuple.begin(), tuple.end(), jgens.begin() + nk + m);
      for (std::size_t t = 0; t < count; ++t) {
        std::size_t rest = t;
        for (int i = m - 1; i >= 0; --i) {
          gens[nk + i] = gg[rest % gg.size()];
          rest /= gg.size();
        }
        std::copy(gens.begin() + nk, gens.end(), jgens.begin() + nk);
        CanonBfs b(h, std::span<const Elem>(gens));
        CanonBfs j(h, std::span<const Elem>(jgens));
        base_sig[t] = intern(interned_base, std::move(b.delta));
        joint_sig[t] = intern(interned_joint, std::move(j.delta));
      }
    }
    auto tuple_at = [&](std::size_t t) {
      std::vector<Elem> out(m);
      std::size_t rest = t;
      for (int i = m - 1; i >= 0; --i) {
        out[i] = gg[rest % gg.size()];
        rest /= gg.size();
      }
      return out;
    };
    for (std::size_t t1 = 0; t1 < count; ++t1) {
      for (std::size_t t2 = 0; t2 < count; ++t2) {
        if (t1 == t2) continue;
        if (base_sig[t1] != base_sig[t2] || joint_sig[t1] == joint_sig[t2]) continue;
        // witness found: extract the distinguishing term
        std::vector<Elem> b1 = tuple_at(t1), b2 = tuple_at(t2);
        std::vector<Elem> jg1(kk.begin(), kk.end()), jg2(kk.begin(), kk.end());
        jg1.insert(jg1.end(), b1.begin(), b1.end());
        jg1.insert(jg1.end(), tuple.begin(), tuple.end());
        jg2.insert(jg2.end(), b2.begin(), b2.end());
        jg2.insert(jg2.end(), tuple.begin(), tuple.end());
        CanonBfs c1(h, jg1), c2(h, jg2);
        auto mm = first_mismatch(c1, c2, jg1.size());
        assert(mm.has_value());
        auto [row, gen, target] = *mm;
        auto letter = [&](int slot, bool invert) {
          if (slot < nk) return TermLetter{TermLetter::Param, int(kk[slot]), invert};
          return TermLetter{TermLetter::Var, slot - nk, invert};
        };
        std::vector<TermLetter> word;
        for (int s : c1.word(row)) word.push_back(letter(s, false));
        word.push_back(letter(gen, false));
        auto wt = c1.word(target);
        for (auto it = wt.rbegin(); it != wt.rend(); ++it) word.push_back(letter(*it, true));
        SplitWitness w;
        w.m = m;
        w.b1 = std::move(b1);
        w.b2 = std::move(b2);
        w.reason = GroupTerm::from_word(m + na, std::move(word));
        return w;
      }
    }
  }
  return std::nullopt;
}

}  // namespace lfg
