#include "lfg/schemes.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "lfg/nf3.hpp"
#include "lfg/perm_closure.hpp"

namespace lfg {

int Scheme::k_s() const {
  switch (id) {
    case SchemeId::Trivial: return trivial_arity;
    case SchemeId::Cg: return 0;
    case SchemeId::Gl: return 1;
    case SchemeId::AbK: return 0;
    case SchemeId::AbMarked: return 0;
    case SchemeId::Gm: return 2 * gm_half_arity;
  }
  return 0;
}

int Scheme::n_s() const {
  switch (id) {
    case SchemeId::Trivial: return trivial_arity;
    case SchemeId::Cg: return 1;
    case SchemeId::Gl: return 4;
    case SchemeId::AbK: return 1;
    case SchemeId::AbMarked: return int(marked_tuple.size());
    case SchemeId::Gm: return 1;
  }
  return 0;
}

std::string Scheme::name() const {
  switch (id) {
    case SchemeId::Trivial: return "trivial(" + std::to_string(trivial_arity) + ")";
    case SchemeId::Cg: return "cg";
    case SchemeId::Gl: return "gl";
    case SchemeId::AbK: return "ab(" + std::to_string(ab_k) + ")";
    case SchemeId::AbMarked: return "ab[|K|=" + std::to_string(marked ? marked->order() : 0) + "]";
    case SchemeId::Gm: return "gm(" + std::to_string(gm_half_arity) + ")";
  }
  return "?";
}

Scheme Scheme::trivial(int arity) {
  Scheme s;
  s.id = SchemeId::Trivial;
  s.trivial_arity = arity;
  return s;
}
Scheme Scheme::cg() {
  Scheme s;
  s.id = SchemeId::Cg;
  return s;
}
Scheme Scheme::gl() {
  Scheme s;
  s.id = SchemeId::Gl;
  return s;
}
Scheme Scheme::ab(int k) {
  Scheme s;
  s.id = SchemeId::AbK;
  s.ab_k = k;
  return s;
}
Scheme Scheme::ab_marked(FiniteGroup k, std::vector<Elem> listing) {
  Scheme s;
  s.id = SchemeId::AbMarked;
  s.marked = std::make_shared<FiniteGroup>(std::move(k));
  s.marked_tuple = std::move(listing);
  return s;
}
Scheme Scheme::gm(int half_arity) {
  Scheme s;
  s.id = SchemeId::Gm;
  s.gm_half_arity = half_arity;
  return s;
}

namespace {

// the gl construction data: orbit structure of the four involutions and their
// multiplier tuples over the order-2 parameter
constexpr int kGlPi[4][3] = {{1, 0, 2}, {2, 1, 0}, {2, 1, 0}, {1, 0, 2}};
// multipliers expressed as exponent of `a`: abar rows (a,a,e),(a,e,a),(e,e,e),(e,e,a)
constexpr int kGlMult[4][3] = {{1, 1, 0}, {1, 0, 1}, {0, 0, 0}, {0, 0, 1}};

std::vector<PIdx> sheet_mult_perm(const FiniteGroup& g, int sheets, Elem x, int sheet) {
  std::vector<PIdx> p(std::size_t(g.order()) * sheets);
  for (int v = 0; v < g.order(); ++v)
    for (int i = 0; i < sheets; ++i)
      p[std::size_t(v) * sheets + i] =
          PIdx((i == sheet ? std::size_t(g.mul(Elem(v), x)) : std::size_t(v)) * sheets + i);
  return p;
}

std::vector<PIdx> shuffle_perm(const FiniteGroup& g, int sheets, const int* pi, const Elem* mult) {
  std::vector<PIdx> p(std::size_t(g.order()) * sheets);
  for (int v = 0; v < g.order(); ++v)
    for (int i = 0; i < sheets; ++i)
      p[std::size_t(v) * sheets + i] = PIdx(std::size_t(g.mul(Elem(v), mult[i])) * sheets + pi[i]);
  return p;
}

struct SheetClosure {
  PermGroupClosure closure;
  FiniteGroup h;
  std::vector<Elem> j0_map;

  SheetClosure(const FiniteGroup& g, int sheets, const std::vector<std::vector<PIdx>>& extra,
               const AmalgamBudget& budget)
      : closure(std::size_t(g.order()) * sheets,
                [&] {
                  std::vector<std::vector<PIdx>> gens;
                  for (Elem x : greedy_generators(g)) gens.push_back(sheet_mult_perm(g, sheets, x, 0));
                  for (const auto& e : extra) gens.push_back(e);
                  return gens;
                }(),
                PermBudget{budget.max_order, budget.max_element_bytes}) {
    h = closure.to_group();
    j0_map.resize(g.order());
    for (int x = 0; x < g.order(); ++x) {
      auto perm = sheet_mult_perm(g, sheets, Elem(x), 0);
      int idx = closure.find(perm.data());
      if (idx < 0) throw Error(ErrorKind::InvariantViolation, "embedded element missing from closure");
      j0_map[x] = Elem(idx);
    }
    if (!is_embedding(g, h, j0_map))
      throw Error(ErrorKind::InvariantViolation, "sheet embedding is not an embedding");
  }

  Elem locate(const std::vector<PIdx>& perm) const {
    int idx = closure.find(perm.data());
    if (idx < 0) throw Error(ErrorKind::InvariantViolation, "element missing from closure");
    return Elem(idx);
  }
};

}  // namespace

SchemeApplication apply_cg(const FiniteGroup& g, const AmalgamBudget& budget) {
  // the swap on two sheets together with sheet-0 translations generates the
  // full two-sheet group of the construction
  const int pi[3] = {1, 0, 2};
  const Elem mult[3] = {0, 0, 0};
  std::vector<std::vector<PIdx>> extra{shuffle_perm(g, 2, pi, mult)};
  SheetClosure sc(g, 2, extra, budget);
  SchemeApplication app;
  app.tuple = {sc.locate(extra[0])};
  app.h = std::move(sc.h);
  app.j0_map = std::move(sc.j0_map);
  app.route = "wreath";
  const Elem a = app.tuple[0];
  if (app.h.element_order(a) != 2)
    throw Error(ErrorKind::InvariantViolation, "cg element does not have order 2");
  for (int b = 1; b < g.order(); ++b)
    if (app.h.mul(a, app.j0_map[b]) == app.h.mul(app.j0_map[b], a))
      throw Error(ErrorKind::InvariantViolation,
                  "cg element commutes with embedded element " + std::to_string(b));
  for (int x = 0; x < g.order(); ++x) {
    Elem moved = app.h.conj(app.j0_map[x], a);
    for (int y = 0; y < g.order(); ++y)
      if (app.h.mul(moved, app.j0_map[y]) != app.h.mul(app.j0_map[y], moved))
        throw Error(ErrorKind::InvariantViolation, "conjugated copy does not commute with the original");
  }
  return app;
}

SchemeApplication apply_gl(const FiniteGroup& g, Elem a, const AmalgamBudget& budget) {
  if (a >= g.order() || a == kIdentity || g.element_order(a) != 2)
    throw Error(ErrorKind::ParameterNotOrderTwo, "element " + std::to_string(a));
  std::vector<std::vector<PIdx>> extra;
  for (int l = 0; l < 4; ++l) {
    Elem mult[3];
    for (int i = 0; i < 3; ++i) mult[i] = kGlMult[l][i] ? a : kIdentity;
    extra.push_back(shuffle_perm(g, 3, kGlPi[l], mult));
  }
  SheetClosure sc(g, 3, extra, budget);
  SchemeApplication app;
  for (const auto& e : extra) app.tuple.push_back(sc.locate(e));
  app.h = std::move(sc.h);
  app.j0_map = std::move(sc.j0_map);
  app.route = "three-sheet";

  // each piece has order 2, the product telescopes to the parameter, and the
  // parameter lies in the subgroup the tuple generates
  Elem prod = kIdentity;
  for (Elem c : app.tuple) {
    if (app.h.element_order(c) != 2)
      throw Error(ErrorKind::InvariantViolation, "gl piece does not have order 2");
    prod = app.h.mul(prod, c);
  }
  if (prod != app.j0_map[a])
    throw Error(ErrorKind::InvariantViolation, "gl product does not telescope to the parameter");
  if (!generated_subgroup(app.h, app.tuple).contains(app.j0_map[a]))
    throw Error(ErrorKind::InvariantViolation, "parameter escapes the tuple subgroup");

  // every piece realizes the cg type over the embedded copy
  SchemeApplication cg_ref = apply_cg(g, budget);
  QfType ref = tp_bs_ordered(cg_ref.h, cg_ref.tuple, cg_ref.j0_map);
  for (Elem c : app.tuple) {
    QfType mine = tp_bs_ordered(app.h, std::vector<Elem>{c}, app.j0_map);
    if (!(mine.canon == ref.canon))
      throw Error(ErrorKind::InvariantViolation, "gl piece does not realize the cg type");
  }
  return app;
}

SchemeApplication apply_ab(const FiniteGroup& g, const FiniteGroup& k, std::span<const Elem> listing) {
  std::vector<Elem> sorted(listing.begin(), listing.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Elem> want(k.order());
  std::iota(want.begin(), want.end(), 0);
  if (sorted != want)
    throw Error(ErrorKind::NotAFullListing,
                "tuple must list all " + std::to_string(k.order()) + " elements once");
  SchemeApplication app;
  app.h = FiniteGroup::direct_product(g, k);
  app.j0_map.resize(g.order());
  for (int x = 0; x < g.order(); ++x) app.j0_map[x] = Elem(x * k.order());
  for (Elem c : listing) app.tuple.push_back(c);  // (e, c) has index c
  app.route = "product";
  for (Elem c : app.tuple)
    for (int x = 0; x < g.order(); ++x)
      if (app.h.mul(c, app.j0_map[x]) != app.h.mul(app.j0_map[x], c))
        throw Error(ErrorKind::InvariantViolation, "product factor fails to commute");
  for (Elem m : generated_subgroup(app.h, app.tuple).members)
    if (m != kIdentity && std::binary_search(app.j0_map.begin(), app.j0_map.end(), m))
      throw Error(ErrorKind::InvariantViolation, "tuple subgroup meets the base");
  return app;
}

SchemeApplication apply_ab_k(const FiniteGroup& g, int k) {
  if (k < 2) throw Error(ErrorKind::PreconditionFailed, "ab(k) needs k >= 2");
  FiniteGroup zk = FiniteGroup::cyclic(k);
  std::vector<Elem> listing(k);
  std::iota(listing.begin(), listing.end(), 0);
  SchemeApplication full = apply_ab(g, zk, listing);
  SchemeApplication app;
  app.h = std::move(full.h);
  app.j0_map = std::move(full.j0_map);
  app.tuple = {Elem(1)};  // the generator copy (e, 1)
  app.route = "product";
  // order clauses: c^m = e iff c^m embeds into the base iff k | m
  for (int m = 1; m <= 2 * k; ++m) {
    Elem p = app.h.pow(app.tuple[0], m);
    bool is_e = p == kIdentity;
    bool in_base = std::binary_search(app.j0_map.begin(), app.j0_map.end(), p);
    if (is_e != (m % k == 0) || in_base != (m % k == 0))
      throw Error(ErrorKind::InvariantViolation, "ab(k) order clause fails at m=" + std::to_string(m));
  }
  return app;
}

namespace {

// marked isomorphism <a1> -> <a2> sending the tuple pointwise, as a map on
// parent indices; empty when none exists
std::vector<Elem> tuple_subgroup_iso(const FiniteGroup& g, std::span<const Elem> a1,
                                     std::span<const Elem> a2) {
  auto s1 = generated_subgroup(g, a1);
  auto s2 = generated_subgroup(g, a2);
  if (s1.order() != s2.order()) return {};
  auto l1 = subgroup_as_group(g, s1.members);
  auto l2 = subgroup_as_group(g, s2.members);
  std::vector<std::pair<Elem, Elem>> partial;
  for (std::size_t i = 0; i < a1.size(); ++i)
    partial.emplace_back(Elem(l1.from_parent[a1[i]]), Elem(l2.from_parent[a2[i]]));
  auto maps = find_embeddings_extending(l1.group, l2.group, partial, 1);
  if (maps.empty()) return {};
  std::vector<Elem> out(g.order(), 0);
  std::vector<bool> defined(g.order(), false);
  for (int i = 0; i < l1.group.order(); ++i) {
    out[l1.to_parent[i]] = l2.to_parent[maps[0][i]];
    defined[l1.to_parent[i]] = true;
  }
  (void)defined;
  return out;  // meaningful only on <a1>
}

FiniteGroup split_extension_by_involution(const FiniteGroup& g, const std::vector<Elem>& phi) {
  // (x, e) pairs with index 2x + e; (x,e1)(y,e2) = (x phi^e1(y), e1+e2)
  const int n = g.order();
  std::vector<Elem> t(std::size_t(2 * n) * (2 * n));
  auto apply = [&](int e, Elem y) { return e ? phi[y] : y; };
  for (int x = 0; x < n; ++x)
    for (int e1 = 0; e1 < 2; ++e1)
      for (int y = 0; y < n; ++y)
        for (int e2 = 0; e2 < 2; ++e2) {
          Elem z = g.mul(Elem(x), apply(e1, Elem(y)));
          t[std::size_t(2 * x + e1) * (2 * n) + 2 * y + e2] = Elem(2 * z + ((e1 + e2) & 1));
        }
  return FiniteGroup::from_table_unchecked(2 * n, std::move(t));
}

}  // namespace

SchemeApplication apply_gm(const FiniteGroup& g, std::span<const Elem> a1, std::span<const Elem> a2,
                           const AmalgamBudget& budget) {
  if (a1.size() != a2.size() || a1.empty())
    throw Error(ErrorKind::PreconditionFailed, "parameter halves must have equal positive length");
  auto t1 = tp_bs_ordered(g, a1, {});
  auto t2 = tp_bs_ordered(g, a2, {});
  if (!(t1.canon == t2.canon))
    throw Error(ErrorKind::PreconditionFailed, "tuples have different types over the empty set");
  auto s1 = generated_subgroup(g, a1);
  auto s2 = generated_subgroup(g, a2);
  if (!subgroups_commute_elementwise(g, s1.members, s2.members))
    throw Error(ErrorKind::PreconditionFailed, "tuple subgroups do not commute");
  std::vector<Elem> meet;
  std::set_intersection(s1.members.begin(), s1.members.end(), s2.members.begin(), s2.members.end(),
                        std::back_inserter(meet));
  if (meet != std::vector<Elem>{kIdentity})
    throw Error(ErrorKind::PreconditionFailed, "tuple subgroups intersect beyond the identity");
  std::vector<Elem> joined(a1.begin(), a1.end());
  joined.insert(joined.end(), a2.begin(), a2.end());
  auto k_sub = generated_subgroup(g, joined);
  {
    auto kg = subgroup_as_group(g, k_sub.members);
    if (center(kg.group).order() != 1)
      throw Error(ErrorKind::PreconditionFailed, "joined subgroup has nontrivial center");
  }
  std::vector<Elem> cm = centralizer(g, joined).members;

  // route 1: an order-2 automorphism of G swapping the halves and fixing the
  // centralizer pointwise
  std::vector<std::pair<Elem, Elem>> partial;
  for (std::size_t i = 0; i < a1.size(); ++i) {
    partial.emplace_back(a1[i], a2[i]);
    partial.emplace_back(a2[i], a1[i]);
  }
  for (Elem c : cm) partial.emplace_back(c, c);
  for (const auto& phi : find_embeddings_extending(g, g, partial, 0)) {
    bool involutive = true;
    for (int x = 0; x < g.order() && involutive; ++x) involutive = phi[phi[x]] == Elem(x);
    if (!involutive) continue;
    SchemeApplication app;
    app.h = split_extension_by_involution(g, phi);
    app.j0_map.resize(g.order());
    for (int x = 0; x < g.order(); ++x) app.j0_map[x] = Elem(2 * x);
    app.tuple = {Elem(1)};
    app.route = "automorphism";
    return app;
  }

  // route 2: amalgamate with the swap extension of the joined subgroup,
  // keeping the centralizer commuting through the transversal construction
  auto kg = subgroup_as_group(g, k_sub.members);
  std::vector<Elem> phi_k(kg.group.order());
  {
    std::vector<Elem> fwd = tuple_subgroup_iso(g, a1, a2);
    std::vector<Elem> bwd = tuple_subgroup_iso(g, a2, a1);
    if (fwd.empty() || bwd.empty())
      throw Error(ErrorKind::NoSwapRealization, "tuple subgroups admit no marked isomorphism");
    // decompose each element of K as u·v with u from <a1>, v from <a2>
    for (Elem w : k_sub.members) {
      bool done = false;
      for (Elem u : s1.members) {
        Elem v = g.mul(g.inv(u), w);
        if (s2.contains(v)) {
          Elem image = g.mul(fwd[u], bwd[v]);
          phi_k[kg.from_parent[w]] = Elem(kg.from_parent[image]);
          done = true;
          break;
        }
      }
      if (!done) throw Error(ErrorKind::NoSwapRealization, "joined subgroup is not the product of the halves");
    }
  }
  FiniteGroup kplus = split_extension_by_involution(kg.group, phi_k);
  std::vector<Elem> emb1_map, emb2_map(kg.group.order());
  for (Elem m : kg.to_parent) emb1_map.push_back(m);
  for (int x = 0; x < kg.group.order(); ++x) emb2_map[x] = Elem(2 * x);
  Embedding emb1 = make_embedding(kg.group, g, emb1_map);
  Embedding emb2 = make_embedding(kg.group, kplus, emb2_map);
  AmalgamBudget b2 = budget;
  if (b2.per_side_try_cap == 0) b2.per_side_try_cap = 4;
  Nf3Request req = make_nf3_request(kg.group, g, kplus, emb1, emb2, cm, {kIdentity});
  Nf3Amalgam nf3 = nf3_amalgam(req, b2);
  if (!nf3.commutation_certified)
    throw Error(ErrorKind::NoSwapRealization, "commutation certificate failed: " + nf3.detail);
  Elem c_g3 = nf3.amalgam.j2_map[1];  // the swap generator of kplus
  std::vector<Elem> seed(nf3.amalgam.j1_map);
  seed.push_back(c_g3);
  auto inside = subgroup_as_group(nf3.amalgam.g3, generated_subgroup(nf3.amalgam.g3, seed).members);
  SchemeApplication app;
  app.j0_map.resize(g.order());
  for (int x = 0; x < g.order(); ++x) app.j0_map[x] = Elem(inside.from_parent[nf3.amalgam.j1_map[x]]);
  app.tuple = {Elem(inside.from_parent[c_g3])};
  app.h = std::move(inside.group);
  app.route = "nf3";

  // postconditions: conjugation by c swaps the halves and fixes the centralizer
  for (std::size_t i = 0; i < a1.size(); ++i) {
    if (app.h.conj(app.j0_map[a1[i]], app.tuple[0]) != app.j0_map[a2[i]] ||
        app.h.conj(app.j0_map[a2[i]], app.tuple[0]) != app.j0_map[a1[i]])
      throw Error(ErrorKind::NoSwapRealization, "conjugation does not interchange the halves");
  }
  for (Elem c : cm)
    if (app.h.conj(app.j0_map[c], app.tuple[0]) != app.j0_map[c])
      throw Error(ErrorKind::NoSwapRealization, "conjugation moves the centralizer");
  return app;
}

bool params_realize(const Scheme& s, const FiniteGroup& g, std::span<const Elem> params) {
  if (int(params.size()) != s.k_s()) return false;
  for (Elem p : params)
    if (p >= g.order()) return false;
  switch (s.id) {
    case SchemeId::Trivial:
    case SchemeId::Cg:
    case SchemeId::AbK:
    case SchemeId::AbMarked:
      return true;
    case SchemeId::Gl:
      return params[0] != kIdentity && g.element_order(params[0]) == 2;
    case SchemeId::Gm: {
      const int h = s.gm_half_arity;
      auto a1 = params.subspan(0, h), a2 = params.subspan(h, h);
      auto t1 = tp_bs_ordered(g, a1, {});
      auto t2 = tp_bs_ordered(g, a2, {});
      if (!(t1.canon == t2.canon)) return false;
      auto s1 = generated_subgroup(g, a1);
      auto s2 = generated_subgroup(g, a2);
      if (!subgroups_commute_elementwise(g, s1.members, s2.members)) return false;
      std::vector<Elem> meet;
      std::set_intersection(s1.members.begin(), s1.members.end(), s2.members.begin(),
                            s2.members.end(), std::back_inserter(meet));
      if (meet != std::vector<Elem>{kIdentity}) return false;
      std::vector<Elem> joined(a1.begin(), a1.end());
      joined.insert(joined.end(), a2.begin(), a2.end());
      auto kg = subgroup_as_group(g, generated_subgroup(g, joined).members);
      return center(kg.group).order() == 1;
    }
  }
  return false;
}

SchemeApplication apply_scheme(const Scheme& s, const FiniteGroup& g, std::span<const Elem> params,
                               const AmalgamBudget& budget) {
  if (int(params.size()) != s.k_s())
    throw Error(ErrorKind::ArityMismatch, "scheme " + s.name() + " expects " +
                                              std::to_string(s.k_s()) + " parameters");
  switch (s.id) {
    case SchemeId::Trivial: {
      SchemeApplication app;
      app.h = g;
      app.j0_map.resize(g.order());
      std::iota(app.j0_map.begin(), app.j0_map.end(), 0);
      app.tuple.assign(params.begin(), params.end());
      app.route = "identity";
      return app;
    }
    case SchemeId::Cg: return apply_cg(g, budget);
    case SchemeId::Gl: return apply_gl(g, params[0], budget);
    case SchemeId::AbK: return apply_ab_k(g, s.ab_k);
    case SchemeId::AbMarked: return apply_ab(g, *s.marked, s.marked_tuple);
    case SchemeId::Gm:
      return apply_gm(g, params.subspan(0, s.gm_half_arity), params.subspan(s.gm_half_arity),
                      budget);
  }
  throw Error(ErrorKind::PreconditionFailed, "unknown scheme");
}

QfType scheme_output_type(const Scheme& s, const FiniteGroup& g, std::span<const Elem> params,
                          const AmalgamBudget& budget) {
  SchemeApplication app = apply_scheme(s, g, params, budget);
  return tp_bs_ordered(app.h, app.tuple, app.j0_map);
}

OplusResult oplus_apply(std::span<const DefEntry> entries, const FiniteGroup& g,
                        const AmalgamBudget& budget, bool check_restriction) {
  OplusResult out;
  out.h = g;
  out.j0_map.resize(g.order());
  std::iota(out.j0_map.begin(), out.j0_map.end(), 0);
  for (const auto& entry : entries) {
    SchemeApplication app = apply_scheme(entry.scheme, out.h, entry.params, budget);
    for (auto& tup : out.tuples)
      for (Elem& c : tup) c = app.j0_map[c];
    for (Elem& c : out.j0_map) c = app.j0_map[c];
    out.tuples.push_back(app.tuple);
    out.h = std::move(app.h);
  }

  // restriction law: each subsequence of parameter-free entries realizes the
  // type the rebuilt sub-composition defines
  bool checkable = check_restriction && entries.size() <= 4;
  for (const auto& e : entries) checkable = checkable && e.scheme.k_s() == 0;
  if (checkable && !entries.empty()) {
    out.restriction_checked = true;
    const std::size_t n = entries.size();
    for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << n) && out.restriction_ok; ++mask) {
      std::vector<DefEntry> sub;
      std::vector<Elem> joint;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t(1) << i)) {
          sub.push_back(entries[i]);
          joint.insert(joint.end(), out.tuples[i].begin(), out.tuples[i].end());
        }
      OplusResult rebuilt = oplus_apply(sub, g, budget, false);
      std::vector<Elem> rejoint;
      for (const auto& t : rebuilt.tuples) rejoint.insert(rejoint.end(), t.begin(), t.end());
      QfType mine = tp_bs_ordered(out.h, joint, out.j0_map);
      QfType ref = tp_bs_ordered(rebuilt.h, rejoint, rebuilt.j0_map);
      out.restriction_ok = (mine.canon == ref.canon);
    }
  }
  return out;
}

// --- the mixed-term sweep -----------------------------------------------------

namespace {

struct WordLetter {
  bool fresh;  // fresh tuple slot vs base element
  int idx;
  bool inv;
};

// evaluates words in a one-step scheme extension of `base` without building
// its table; supports cg, gl and the ab family
class FreshEval {
 public:
  FreshEval(const Scheme& s, const FiniteGroup& base, std::span<const Elem> params)
      : s_(s), base_(base) {
    switch (s.id) {
      case SchemeId::Cg: sheets_ = 2; break;
      case SchemeId::Gl:
        sheets_ = 3;
        a_ = params[0];
        break;
      case SchemeId::AbK:
        k_ = FiniteGroup::cyclic(s.ab_k);
        listing_ = {1};
        break;
      case SchemeId::AbMarked:
        k_ = *s.marked;
        listing_ = s.marked_tuple;
        break;
      default:
        throw Error(ErrorKind::PreconditionFailed, "no lazy evaluator for " + s.name());
    }
  }

  static bool supported(const Scheme& s) {
    return s.id == SchemeId::Cg || s.id == SchemeId::Gl || s.id == SchemeId::AbK ||
           s.id == SchemeId::AbMarked;
  }

  bool word_is_identity(std::span<const WordLetter> word) const {
    if (sheets_ == 0) {  // ab family: track (base, K) parts symbolically
      Elem b = kIdentity, kk = kIdentity;
      for (const auto& l : word) {
        if (l.fresh) {
          Elem v = listing_[l.idx];
          kk = k_.mul(kk, l.inv ? k_.inv(v) : v);
        } else {
          b = base_.mul(b, l.inv ? base_.inv(Elem(l.idx)) : Elem(l.idx));
        }
      }
      return b == kIdentity && kk == kIdentity;
    }
    for (int v = 0; v < base_.order(); ++v)
      for (int i = 0; i < sheets_; ++i) {
        int g = v, sheet = i;
        for (const auto& l : word) apply(l, g, sheet);
        if (g != v || sheet != i) return false;
      }
    return true;
  }

 private:
  void apply(const WordLetter& l, int& g, int& sheet) const {
    if (!l.fresh) {
      // embedded base elements act on sheet 0 only
      if (sheet == 0) g = base_.mul(Elem(g), l.inv ? base_.inv(Elem(l.idx)) : Elem(l.idx));
      return;
    }
    if (s_.id == SchemeId::Cg) {  // the swap, an involution
      sheet = 1 - sheet;
      return;
    }
    // gl pieces, involutions as well
    Elem m = kGlMult[l.idx][sheet] ? a_ : kIdentity;
    g = base_.mul(Elem(g), m);
    sheet = kGlPi[l.idx][sheet];
  }

  Scheme s_;
  const FiniteGroup& base_;
  int sheets_ = 0;
  Elem a_ = 0;        // gl parameter (in base)
  FiniteGroup k_;     // ab factor
  std::vector<Elem> listing_;
};

}  // namespace

OtimesResult otimes_apply(const DefEntry& t1, const DefEntry& t2, const FiniteGroup& g,
                          const AmalgamBudget& budget, int mixed_term_word_len,
                          int mixed_term_param_slots) {
  SchemeApplication app1 = apply_scheme(t1.scheme, g, t1.params, budget);
  SchemeApplication app2 = apply_scheme(t2.scheme, g, t2.params, budget);
  Embedding emb1 = make_embedding(g, app1.h, app1.j0_map);
  Embedding emb2 = make_embedding(g, app2.h, app2.j0_map);

  OtimesResult out;
  std::optional<StableAmalgam> sa, sa_swapped;
  try {
    sa.emplace(stable_amalgam(g, app1.h, app2.h, emb1, emb2, budget));
    sa_swapped.emplace(stable_amalgam(g, app2.h, app1.h, emb2, emb1, budget));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    sa.reset();
    sa_swapped.reset();
  }

  if (sa && sa_swapped) {
    out.closed = true;
    out.g3 = sa->g3;
    out.j0_map = sa->j0_map();
    for (Elem c : app1.tuple) out.c1.push_back(sa->j1_map[c]);
    for (Elem c : app2.tuple) out.c2.push_back(sa->j2_map[c]);

    std::vector<Elem> joint = out.c1;
    joint.insert(joint.end(), out.c2.begin(), out.c2.end());
    QfType mine = tp_bs_ordered(out.g3, joint, out.j0_map);

    std::vector<Elem> joint2;
    for (Elem c : app1.tuple) joint2.push_back(sa_swapped->j2_map[c]);
    for (Elem c : app2.tuple) joint2.push_back(sa_swapped->j1_map[c]);
    QfType theirs = tp_bs_ordered(sa_swapped->g3, joint2, sa_swapped->j0_map());
    out.symmetric = (mine.canon == theirs.canon);
    out.symmetry_route = "canonical-form";
  } else {
    // over budget: establish symmetry at the action level
    NfLawReport r = verify_nf_laws_action(g, app1.h, app2.h, emb1, emb2, budget);
    out.symmetric = r.all_pass();
    out.symmetry_route = "action-mirror";
  }

  if (out.closed && mixed_term_word_len > 0 && FreshEval::supported(t1.scheme) &&
      FreshEval::supported(t2.scheme)) {
    out.mixed_term_checked = true;
    // fresh realizations of each scheme over the whole joint group
    std::vector<Elem> p1, p2;
    for (Elem p : t1.params) p1.push_back(out.j0_map[p]);
    for (Elem p : t2.params) p2.push_back(out.j0_map[p]);
    FreshEval eval1(t1.scheme, out.g3, p1);
    FreshEval eval2(t2.scheme, out.g3, p2);

    const int n1 = int(out.c1.size()), n2 = int(out.c2.size());
    const int slots = n1 + n2 + mixed_term_param_slots;
    std::vector<Elem> params(mixed_term_param_slots, 0);
    std::vector<int> word;  // letter = slot * 2 + inv

    // iterate parameter instantiations from the embedded base copy
    std::vector<Elem> base_elems;
    for (int x = 0; x < g.order(); ++x) base_elems.push_back(out.j0_map[x]);

    std::vector<std::size_t> pidx(mixed_term_param_slots, 0);
    bool params_done = false;
    while (!params_done && out.mixed_term_ok) {
      for (int i = 0; i < mixed_term_param_slots; ++i) params[i] = base_elems[pidx[i]];
      // depth-first over reduced words
      std::vector<int> cur;
      std::function<void(int)> rec = [&](int depth) {
        if (!out.mixed_term_ok) return;
        if (!cur.empty()) {
          ++out.mixed_term_count;
          // alpha: evaluate in the joint group
          Elem acc = kIdentity;
          for (int letter : cur) {
            int slot = letter >> 1;
            bool inv = letter & 1;
            Elem v = slot < n1            ? out.c1[slot]
                     : slot < n1 + n2     ? out.c2[slot - n1]
                                          : params[slot - n1 - n2];
            acc = out.g3.mul(acc, inv ? out.g3.inv(v) : v);
          }
          bool alpha = acc == kIdentity;
          // beta_1: replace the c1 slots by a fresh realization over G3
          std::vector<WordLetter> w1, w2;
          for (int letter : cur) {
            int slot = letter >> 1;
            bool inv = letter & 1;
            if (slot < n1) {
              w1.push_back({true, slot, inv});
              w2.push_back({false, int(out.c1[slot]), inv});
            } else if (slot < n1 + n2) {
              w1.push_back({false, int(out.c2[slot - n1]), inv});
              w2.push_back({true, slot - n1, inv});
            } else {
              w1.push_back({false, int(params[slot - n1 - n2]), inv});
              w2.push_back({false, int(params[slot - n1 - n2]), inv});
            }
          }
          bool beta = eval1.word_is_identity(w1) && eval2.word_is_identity(w2);
          if (alpha != beta) {
            out.mixed_term_ok = false;
            return;
          }
        }
        if (depth == mixed_term_word_len) return;
        for (int letter = 0; letter < 2 * slots; ++letter) {
          if (!cur.empty()) {
            int prev = cur.back();
            if ((prev >> 1) == (letter >> 1) && (prev & 1) != (letter & 1)) continue;  // free reduction
          }
          cur.push_back(letter);
          rec(depth + 1);
          cur.pop_back();
          if (!out.mixed_term_ok) return;
        }
      };
      rec(0);
      // advance parameter odometer
      int i = mixed_term_param_slots - 1;
      while (i >= 0) {
        if (++pidx[i] < base_elems.size()) break;
        pidx[i] = 0;
        --i;
      }
      params_done = (i < 0) || mixed_term_param_slots == 0;
      if (mixed_term_param_slots == 0) params_done = true;
    }
  }
  return out;
}

std::vector<Elem> cp_set(const Scheme& s, const FiniteGroup& g2, const std::vector<Elem>& g1_members,
                         const AmalgamBudget& budget) {
  auto local = subgroup_as_group(g2, g1_members);
  const int k = s.k_s(), n = s.n_s();
  std::set<Elem> out;
  std::vector<Elem> params(k);
  std::vector<std::size_t> pidx(k, 0);
  bool params_done = false;
  while (!params_done) {
    for (int i = 0; i < k; ++i) params[i] = Elem(pidx[i]);
    if (params_realize(s, local.group, params)) {
      QfType ref = scheme_output_type(s, local.group, params, budget);
      // scan all candidate tuples in the ambient group
      std::vector<Elem> tuple(n);
      std::vector<std::size_t> tidx(n, 0);
      bool done = false;
      while (!done) {
        for (int i = 0; i < n; ++i) tuple[i] = Elem(tidx[i]);
        QfType mine = tp_bs_ordered(g2, tuple, g1_members);
        if (mine.canon == ref.canon) out.insert(tuple[0]);
        int i = n - 1;
        while (i >= 0) {
          if (++tidx[i] < std::size_t(g2.order())) break;
          tidx[i] = 0;
          --i;
        }
        done = (i < 0) || n == 0;
        if (n == 0) done = true;
      }
    }
    int i = k - 1;
    while (i >= 0) {
      if (++pidx[i] < std::size_t(local.group.order())) break;
      pidx[i] = 0;
      --i;
    }
    params_done = (i < 0) || k == 0;
    if (k == 0) params_done = true;
  }
  return {out.begin(), out.end()};
}

DefinabilityReport check_extension_definable(const FiniteGroup& h, const Subgroup& g,
                                             std::span<const Scheme> catalog, int n_max) {
  if (g.parent != &h) throw Error(ErrorKind::BaseMismatch, "G must be a subgroup of H");
  DefinabilityReport report;
  auto local = subgroup_as_group(h, g.members);

  // reference types per catalog entry and parameter choice, built lazily
  struct Realizer {
    const Scheme* scheme;
    std::vector<Elem> params_local;
    QfType ref;
  };
  std::vector<Realizer> realizers;
  for (const auto& s : catalog) {
    const int k = s.k_s();
    std::vector<std::size_t> pidx(k, 0);
    bool done = false;
    while (!done) {
      std::vector<Elem> params(k);
      for (int i = 0; i < k; ++i) params[i] = Elem(pidx[i]);
      if (params_realize(s, local.group, params))
        realizers.push_back({&s, params, scheme_output_type(s, local.group, params)});
      int i = k - 1;
      while (i >= 0) {
        if (++pidx[i] < std::size_t(local.group.order())) break;
        pidx[i] = 0;
        --i;
      }
      done = (i < 0) || k == 0;
      if (k == 0) done = true;
    }
  }

  for (int n = 1; n <= n_max; ++n) {
    std::vector<std::size_t> cidx(n, 0);
    bool done = false;
    while (!done) {
      DefinabilityLine line;
      for (int i = 0; i < n; ++i) line.tuple.push_back(Elem(cidx[i]));
      // inside <G>: the trivial scheme covers it
      bool all_in = true;
      for (Elem c : line.tuple) all_in = all_in && g.contains(c);
      if (all_in) {
        line.definable = true;
        line.via = "trivial";
      } else {
        for (const auto& r : realizers) {
          const int ns = r.scheme->n_s();
          std::vector<std::size_t> sidx(ns, 0);
          bool sdone = false;
          while (!sdone && !line.definable) {
            std::vector<Elem> cand(ns);
            for (int i = 0; i < ns; ++i) cand[i] = Elem(sidx[i]);
            QfType mine = tp_bs_ordered(h, cand, g.members);
            if (mine.canon == r.ref.canon) {
              std::vector<Elem> seed = g.members;
              seed.insert(seed.end(), cand.begin(), cand.end());
              auto reach = generated_subgroup(h, seed);
              bool covers = true;
              for (Elem c : line.tuple) covers = covers && reach.contains(c);
              if (covers) {
                line.definable = true;
                line.via = r.scheme->name();
              }
            }
            int i = ns - 1;
            while (i >= 0) {
              if (++sidx[i] < std::size_t(h.order())) break;
              sidx[i] = 0;
              --i;
            }
            sdone = (i < 0) || ns == 0;
            if (ns == 0) sdone = true;
          }
          if (line.definable) break;
        }
      }
      report.all_definable = report.all_definable && line.definable;
      report.lines.push_back(std::move(line));
      int i = n - 1;
      while (i >= 0) {
        if (++cidx[i] < std::size_t(h.order())) break;
        cidx[i] = 0;
        --i;
      }
      done = (i < 0);
    }
  }
  return report;
}

}  // namespace lfg
