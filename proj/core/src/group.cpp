#include "lfg/group.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace lfg {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NoIdentityAtZero: return "NoIdentityAtZero";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::NotATransversal: return "NotATransversal";
    case ErrorKind::IdentityNotRepresentative: return "IdentityNotRepresentative";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::ParameterNotOrderTwo: return "ParameterNotOrderTwo";
    case ErrorKind::NotAFullListing: return "NotAFullListing";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::ElementInBase: return "ElementInBase";
    case ErrorKind::NoSwapRealization: return "NoSwapRealization";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::CorpusLoadError: return "CorpusLoadError";
  }
  return "UnknownError";
}

FiniteGroup FiniteGroup::validate_table(const std::vector<std::vector<long long>>& raw) {
  const std::size_t n = raw.size();
  if (n == 0 || n > 65535) throw Error(ErrorKind::NotClosed, "table must have between 1 and 65535 rows");
  std::vector<Elem> flat(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i].size() != n)
      throw Error(ErrorKind::NotClosed, "row " + std::to_string(i) + " is not of length " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      long long v = raw[i][j];
      if (v < 0 || v >= (long long)n)
        throw Error(ErrorKind::NotClosed, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                              ") = " + std::to_string(v) + " out of range");
      flat[i * n + j] = Elem(v);
    }
  }
  auto at = [&](std::size_t a, std::size_t b) { return flat[a * n + b]; };
  for (std::size_t g = 0; g < n; ++g) {
    if (at(0, g) != g || at(g, 0) != g)
      throw Error(ErrorKind::NoIdentityAtZero, "element " + std::to_string(g));
  }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t k = 0; k < n; ++k)
        if (at(at(g, h), k) != at(g, at(h, k)))
          throw Error(ErrorKind::NotAssociative, "triple (" + std::to_string(g) + "," + std::to_string(h) +
                                                     "," + std::to_string(k) + ")");
  for (std::size_t g = 0; g < n; ++g) {
    bool found = false;
    for (std::size_t h = 0; h < n && !found; ++h)
      if (at(g, h) == 0 && at(h, g) == 0) found = true;
    if (!found) throw Error(ErrorKind::NoInverse, "element " + std::to_string(g));
  }
  return from_table_unchecked(int(n), std::move(flat));
}

FiniteGroup FiniteGroup::from_table_unchecked(int n, std::vector<Elem> flat) {
  assert(n >= 1 && flat.size() == std::size_t(n) * std::size_t(n));
  FiniteGroup g;
  g.n_ = n;
  g.table_ = std::move(flat);
  g.build_caches();
  return g;
}

void FiniteGroup::build_caches() {
  inv_.assign(n_, 0);
  for (int g = 0; g < n_; ++g) {
    bool found = false;
    for (int h = 0; h < n_; ++h) {
      if (mul(Elem(g), Elem(h)) == kIdentity && mul(Elem(h), Elem(g)) == kIdentity) {
        inv_[g] = Elem(h);
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorKind::NoInverse, "element " + std::to_string(g));
  }
  elem_order_.assign(n_, 1);
  for (int g = 0; g < n_; ++g) {
    Elem acc = Elem(g);
    int ord = 1;
    while (acc != kIdentity) {
      acc = mul(acc, Elem(g));
      ++ord;
    }
    elem_order_[g] = std::uint16_t(ord);
  }
}

Elem FiniteGroup::pow(Elem a, long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Elem acc = kIdentity;
  for (long i = 0; i < e; ++i) acc = mul(acc, a);
  return acc;
}

std::vector<int> FiniteGroup::order_profile() const {
  std::vector<int> prof(elem_order_.begin(), elem_order_.end());
  std::sort(prof.begin(), prof.end());
  return prof;
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup(); }

FiniteGroup FiniteGroup::cyclic(int n) {
  assert(n >= 1);
  std::vector<Elem> t(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[std::size_t(i) * n + j] = Elem((i + j) % n);
  return from_table_unchecked(n, std::move(t));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  assert(n >= 2);
  // indices: i < n rotation r^i, n+i reflection s r^i
  const int m = 2 * n;
  auto enc = [&](bool refl, int i) { return Elem((refl ? n : 0) + ((i % n + n) % n)); };
  std::vector<Elem> t(std::size_t(m) * m);
  for (int x = 0; x < m; ++x) {
    bool rx = x >= n;
    int ix = rx ? x - n : x;
    for (int y = 0; y < m; ++y) {
      bool ry = y >= n;
      int iy = ry ? y - n : y;
      // (s^a r^i)(s^b r^j) = s^{a+b} r^{±i+j}
      Elem z = ry ? enc(!rx, iy - ix) : enc(rx, ix + iy);
      t[std::size_t(x) * m + y] = z;
    }
  }
  return from_table_unchecked(m, std::move(t));
}

FiniteGroup FiniteGroup::quaternion8() {
  // index = 2*base + sign, base in {1,i,j,k}, sign 0 -> +, 1 -> -
  // base product table with result sign
  // rows/cols: 1, i, j, k;  bsign[x][y] = 1 iff the basis product is negated
  static const int bprod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int bsign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<Elem> t(64);
  for (int x = 0; x < 8; ++x) {
    int bx = x / 2, sx = x % 2;
    for (int y = 0; y < 8; ++y) {
      int by = y / 2, sy = y % 2;
      int bz = bprod[bx][by];
      int sz = (sx + sy + bsign[bx][by]) % 2;
      t[std::size_t(x) * 8 + y] = Elem(2 * bz + sz);
    }
  }
  return from_table_unchecked(8, std::move(t));
}

FiniteGroup FiniteGroup::symmetric(int n) {
  assert(n >= 1 && n <= 7);
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int m = int(perms.size());
  auto index_of = [&](const std::vector<int>& q) {
    return int(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<Elem> t(std::size_t(m) * m);
  std::vector<int> comp(n);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      for (int i = 0; i < n; ++i) comp[i] = perms[y][perms[x][i]];  // apply x first
      t[std::size_t(x) * m + y] = Elem(index_of(comp));
    }
  }
  return from_table_unchecked(m, std::move(t));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  const int n = na * nb;
  std::vector<Elem> t(std::size_t(n) * n);
  for (int x = 0; x < n; ++x) {
    int xa = x / nb, xb = x % nb;
    for (int y = 0; y < n; ++y) {
      int ya = y / nb, yb = y % nb;
      t[std::size_t(x) * n + y] = Elem(int(a.mul(Elem(xa), Elem(ya))) * nb + b.mul(Elem(xb), Elem(yb)));
    }
  }
  return from_table_unchecked(n, std::move(t));
}

bool Subgroup::contains(Elem g) const {
  return std::binary_search(members.begin(), members.end(), g);
}

bool is_embedding(const FiniteGroup& source, const FiniteGroup& target,
                  const std::vector<Elem>& map) {
  if (map.size() != std::size_t(source.order())) return false;
  if (map[0] != kIdentity) return false;
  std::vector<bool> seen(target.order(), false);
  for (Elem v : map) {
    if (v >= target.order() || seen[v]) return false;
    seen[v] = true;
  }
  for (int a = 0; a < source.order(); ++a)
    for (int b = 0; b < source.order(); ++b)
      if (map[source.mul(Elem(a), Elem(b))] != target.mul(map[a], map[b])) return false;
  return true;
}

Embedding make_embedding(const FiniteGroup& source, const FiniteGroup& target,
                         std::vector<Elem> map) {
  if (!is_embedding(source, target, map))
    throw Error(ErrorKind::InvariantViolation, "map is not an injective homomorphism");
  return Embedding{&source, &target, std::move(map)};
}

Embedding identity_embedding(const FiniteGroup& g) {
  std::vector<Elem> m(g.order());
  std::iota(m.begin(), m.end(), 0);
  return Embedding{&g, &g, std::move(m)};
}

Embedding compose(const Embedding& f, const Embedding& g) {
  assert(f.target == g.source);
  std::vector<Elem> m(f.map.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = g.map[f.map[i]];
  return Embedding{f.source, g.target, std::move(m)};
}

GroupTerm GroupTerm::from_word(int arity, std::vector<TermLetter> w) {
  for (const auto& l : w)
    if (l.kind == TermLetter::Var && (l.value < 0 || l.value >= arity))
      throw Error(ErrorKind::ArityMismatch,
                  "variable x" + std::to_string(l.value) + " exceeds arity " + std::to_string(arity));
  return GroupTerm{arity, std::move(w)};
}

Elem eval_term(const FiniteGroup& g, const GroupTerm& term, std::span<const Elem> args) {
  if (args.size() != std::size_t(term.arity))
    throw Error(ErrorKind::ArityMismatch, "expected " + std::to_string(term.arity) + " arguments, got " +
                                              std::to_string(args.size()));
  Elem acc = kIdentity;
  for (const auto& l : term.word) {
    Elem v;
    if (l.kind == TermLetter::Var) {
      v = args[l.value];
    } else {
      if (l.value < 0 || l.value >= g.order())
        throw Error(ErrorKind::IndexOutOfRange, "parameter " + std::to_string(l.value));
      v = Elem(l.value);
    }
    if (l.inverted) v = g.inv(v);
    acc = g.mul(acc, v);
  }
  return acc;
}

bool is_subgroup(const FiniteGroup& g, const std::vector<Elem>& members) {
  if (members.empty() || members[0] != kIdentity) return false;
  if (!std::is_sorted(members.begin(), members.end())) return false;
  auto in = [&](Elem x) { return std::binary_search(members.begin(), members.end(), x); };
  for (Elem a : members) {
    if (a >= g.order()) return false;
    if (!in(g.inv(a))) return false;
    for (Elem b : members)
      if (!in(g.mul(a, b))) return false;
  }
  return true;
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!is_subgroup(g, members)) throw Error(ErrorKind::NotASubgroup, "member set is not a subgroup");
  return Subgroup{&g, std::move(members)};
}

Subgroup generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens) {
  for (Elem s : gens)
    if (s >= g.order()) throw Error(ErrorKind::IndexOutOfRange, "generator " + std::to_string(s));
  std::vector<bool> in(g.order(), false);
  std::vector<Elem> elems;
  auto push = [&](Elem x) {
    if (!in[x]) {
      in[x] = true;
      elems.push_back(x);
    }
  };
  push(kIdentity);
  for (Elem s : gens) push(s);
  // fixed-point closure over products; inverses follow in a finite group
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      push(g.mul(elems[i], elems[j]));
      push(g.mul(elems[j], elems[i]));
    }
  }
  std::sort(elems.begin(), elems.end());
  return Subgroup{&g, std::move(elems)};
}

std::vector<std::vector<Elem>> left_cosets(const FiniteGroup& g, const Subgroup& k) {
  if (!is_subgroup(g, k.members)) throw Error(ErrorKind::NotASubgroup, "coset base");
  std::vector<bool> seen(g.order(), false);
  std::vector<std::vector<Elem>> blocks;
  for (int x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<Elem> block;
    for (Elem h : k.members) {
      Elem y = g.mul(Elem(x), h);
      seen[y] = true;
      block.push_back(y);
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

Subgroup centralizer(const FiniteGroup& g, std::span<const Elem> a) {
  for (Elem x : a)
    if (x >= g.order()) throw Error(ErrorKind::IndexOutOfRange, "element " + std::to_string(x));
  std::vector<Elem> members;
  for (int c = 0; c < g.order(); ++c) {
    bool ok = true;
    for (Elem x : a)
      if (g.mul(x, Elem(c)) != g.mul(Elem(c), x)) {
        ok = false;
        break;
      }
    if (ok) members.push_back(Elem(c));
  }
  return Subgroup{&g, std::move(members)};
}

Subgroup center(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return centralizer(g, all);
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& a) {
  if (!is_subgroup(g, a.members)) throw Error(ErrorKind::NotASubgroup, "normalizer base");
  std::vector<Elem> members;
  for (int c = 0; c < g.order(); ++c) {
    bool ok = true;
    for (Elem x : a.members)
      if (!a.contains(g.conj(x, Elem(c)))) {
        ok = false;
        break;
      }
    if (ok) members.push_back(Elem(c));
  }
  return Subgroup{&g, std::move(members)};
}

bool subgroups_commute_elementwise(const FiniteGroup& g, std::span<const Elem> a,
                                   std::span<const Elem> b) {
  for (Elem x : a)
    for (Elem y : b)
      if (g.mul(x, y) != g.mul(y, x)) return false;
  return true;
}

std::vector<Elem> greedy_generators(const FiniteGroup& g) {
  std::vector<Elem> gens;
  Subgroup sub = generated_subgroup(g, {});
  while (sub.order() < g.order()) {
    Elem next = kIdentity;
    for (int x = 0; x < g.order(); ++x)
      if (!sub.contains(Elem(x))) {
        next = Elem(x);
        break;
      }
    gens.push_back(next);
    sub = generated_subgroup(g, gens);
  }
  return gens;
}

namespace {

// Incremental homomorphism closure used by the backtracking searches.
// `map` holds partial images (kUnset when absent).  Returns false on a
// homomorphism or injectivity conflict.
constexpr int kUnset = -1;

struct PartialHom {
  const FiniteGroup& k;
  const FiniteGroup& g;
  std::vector<int> map;        // k-index -> g-index or kUnset
  std::vector<Elem> domain;    // elements with images, closure of the assigned ones
  std::vector<bool> used;      // g-index already an image

  PartialHom(const FiniteGroup& k_, const FiniteGroup& g_)
      : k(k_), g(g_), map(k_.order(), kUnset), used(g_.order(), false) {
    assign(kIdentity, kIdentity);
  }

  bool assign(Elem kx, Elem gx) {
    if (map[kx] != kUnset) return map[kx] == int(gx);
    if (used[gx]) return false;
    map[kx] = int(gx);
    used[gx] = true;
    domain.push_back(kx);
    return close();
  }

  // Close the mapped set under products.  Every conflict is final: the
  // caller backtracks by rebuilding from a snapshot.
  bool close() {
    for (std::size_t i = 0; i < domain.size(); ++i) {
      for (std::size_t j = 0; j < domain.size(); ++j) {
        Elem ka = domain[i], kb = domain[j];
        Elem kc = k.mul(ka, kb);
        Elem gc = g.mul(Elem(map[ka]), Elem(map[kb]));
        if (map[kc] == kUnset) {
          if (used[gc]) return false;
          map[kc] = int(gc);
          used[gc] = true;
          domain.push_back(kc);
        } else if (map[kc] != int(gc)) {
          return false;
        }
      }
    }
    return true;
  }
};

void search_embeddings(const FiniteGroup& k, const FiniteGroup& g,
                       const std::vector<Elem>& gens, std::size_t pos, PartialHom& hom,
                       std::vector<std::vector<Elem>>& out, std::size_t limit) {
  if (limit && out.size() >= limit) return;
  // skip generators already determined by closure
  std::size_t p = pos;
  while (p < gens.size() && hom.map[gens[p]] != kUnset) ++p;
  if (p == gens.size()) {
    if (hom.domain.size() == std::size_t(k.order())) {
      std::vector<Elem> m(k.order());
      for (int i = 0; i < k.order(); ++i) m[i] = Elem(hom.map[i]);
      out.push_back(std::move(m));
    }
    return;
  }
  const Elem kx = gens[p];
  const int want = k.element_order(kx);
  for (int gx = 0; gx < g.order(); ++gx) {
    if (hom.used[gx]) continue;
    if (g.element_order(Elem(gx)) != want) continue;
    PartialHom snapshot = hom;
    if (snapshot.assign(kx, Elem(gx))) {
      search_embeddings(k, g, gens, p + 1, snapshot, out, limit);
      if (limit && out.size() >= limit) return;
    }
  }
}

}  // namespace

std::vector<Embedding> enumerate_embeddings(const FiniteGroup& k, const FiniteGroup& g) {
  if (g.order() % k.order() != 0) return {};
  std::vector<std::vector<Elem>> maps;
  PartialHom root(k, g);
  search_embeddings(k, g, greedy_generators(k), 0, root, maps, 0);
  std::vector<Embedding> out;
  out.reserve(maps.size());
  for (auto& m : maps) out.push_back(Embedding{&k, &g, std::move(m)});
  return out;
}

std::vector<std::vector<Elem>> find_embeddings_extending(
    const FiniteGroup& k, const FiniteGroup& g,
    std::span<const std::pair<Elem, Elem>> partial, std::size_t limit) {
  PartialHom root(k, g);
  for (const auto& [kx, gx] : partial)
    if (!root.assign(kx, gx)) return {};
  std::vector<std::vector<Elem>> maps;
  search_embeddings(k, g, greedy_generators(k), 0, root, maps, limit);
  return maps;
}

std::vector<Elem> find_embedding_extending(const FiniteGroup& k, const FiniteGroup& g,
                                           std::span<const std::pair<Elem, Elem>> partial) {
  auto maps = find_embeddings_extending(k, g, partial, 1);
  if (maps.empty()) return {};
  return maps.front();
}

std::vector<Embedding> automorphisms(const FiniteGroup& g) { return enumerate_embeddings(g, g); }

std::vector<Embedding> inner_automorphisms(const FiniteGroup& g) {
  std::vector<Embedding> out;
  std::vector<std::vector<Elem>> seen;
  for (int c = 0; c < g.order(); ++c) {
    std::vector<Elem> m(g.order());
    for (int x = 0; x < g.order(); ++x) m[x] = g.conj(Elem(x), Elem(c));
    if (std::find(seen.begin(), seen.end(), m) == seen.end()) {
      seen.push_back(m);
      out.push_back(Embedding{&g, &g, std::move(m)});
    }
  }
  return out;
}

bool isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  if (a.order_profile() != b.order_profile()) return false;
  return !find_embedding_extending(a, b, {}).empty();
}

std::vector<Embedding> dedup_up_to_inner(const std::vector<Embedding>& embs) {
  if (embs.empty()) return {};
  const FiniteGroup& g = *embs.front().target;
  std::vector<Embedding> out;
  std::vector<std::vector<Elem>> reps;
  for (const auto& f : embs) {
    // orbit representative: lexicographically least conjugate of the map
    std::vector<Elem> best;
    for (int c = 0; c < g.order(); ++c) {
      std::vector<Elem> m(f.map.size());
      for (std::size_t x = 0; x < f.map.size(); ++x) m[x] = g.conj(f.map[x], Elem(c));
      if (best.empty() || m < best) best = std::move(m);
    }
    if (std::find(reps.begin(), reps.end(), best) == reps.end()) {
      reps.push_back(best);
      out.push_back(f);
    }
  }
  return out;
}

}  // namespace lfg
