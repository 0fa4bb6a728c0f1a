#include "lfg/nf3.hpp"

#include <algorithm>
#include <set>

namespace lfg {

namespace {

std::vector<Elem> image_of(const Embedding& emb, const std::vector<Elem>& members) {
  std::vector<Elem> out;
  out.reserve(members.size());
  for (Elem m : members) out.push_back(emb(m));
  std::sort(out.begin(), out.end());
  return out;
}

// left cosets of a member-set subgroup, in least-element discovery order
std::vector<std::vector<Elem>> cosets_of(const FiniteGroup& g, const std::vector<Elem>& sub) {
  std::vector<int> seen(g.order(), 0);
  std::vector<std::vector<Elem>> out;
  for (int v = 0; v < g.order(); ++v) {
    if (seen[v]) continue;
    std::vector<Elem> block;
    for (Elem h : sub) {
      Elem w = g.mul(Elem(v), h);
      seen[w] = 1;
      block.push_back(w);
    }
    std::sort(block.begin(), block.end());
    out.push_back(std::move(block));
  }
  return out;
}

// transversal choices (identity pinned on the first coset), mixed radix with
// the last free coset varying fastest
std::vector<std::vector<Elem>> transversal_choices(const std::vector<std::vector<Elem>>& cosets,
                                                   std::size_t limit) {
  std::vector<std::vector<Elem>> free(cosets.begin() + 1, cosets.end());
  std::size_t count = 1;
  for (const auto& f : free) {
    if (count >= limit || count > SIZE_MAX / f.size()) {
      count = limit;
      break;
    }
    count *= f.size();
  }
  count = std::min(count, limit);
  std::vector<std::vector<Elem>> out;
  out.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::vector<Elem> t{kIdentity};
    std::size_t rest = idx;
    for (auto it = free.rbegin(); it != free.rend(); ++it) {
      t.push_back((*it)[rest % it->size()]);
      rest /= it->size();
    }
    std::sort(t.begin(), t.end());
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

Nf3Request make_nf3_request(const FiniteGroup& g0, const FiniteGroup& g1, const FiniteGroup& g2,
                            const Embedding& emb1, const Embedding& emb2,
                            std::vector<Elem> l_members, std::vector<Elem> h0_members) {
  Nf3Request req;
  req.g0 = &g0;
  req.g1 = &g1;
  req.g2 = &g2;
  req.emb1 = emb1;
  req.emb2 = emb2;
  std::sort(l_members.begin(), l_members.end());
  l_members.erase(std::unique(l_members.begin(), l_members.end()), l_members.end());
  std::sort(h0_members.begin(), h0_members.end());
  h0_members.erase(std::unique(h0_members.begin(), h0_members.end()), h0_members.end());
  if (!is_subgroup(g1, l_members))
    throw Error(ErrorKind::InvariantViolation, "commuting request: L is not a subgroup of G1");
  if (!is_subgroup(g0, h0_members))
    throw Error(ErrorKind::InvariantViolation, "commuting request: H0 is not a subgroup of G0");
  req.l_members = std::move(l_members);
  req.h0_members = std::move(h0_members);

  std::vector<Elem> base1;
  for (int h = 0; h < g0.order(); ++h) base1.push_back(emb1(Elem(h)));
  std::sort(base1.begin(), base1.end());
  if (!subgroups_commute_elementwise(g1, req.l_members, base1))
    throw Error(ErrorKind::InvariantViolation, "commuting request: L does not centralize the base in G1");
  std::vector<Elem> meet;
  std::set_intersection(req.l_members.begin(), req.l_members.end(), base1.begin(), base1.end(),
                        std::back_inserter(meet));
  if (meet != std::vector<Elem>{kIdentity})
    throw Error(ErrorKind::InvariantViolation, "commuting request: L meets the base beyond the identity");

  std::vector<Elem> seed = image_of(req.emb1, req.h0_members);
  seed.insert(seed.end(), req.l_members.begin(), req.l_members.end());
  req.h1_members = generated_subgroup(g1, seed).members;
  if (!subgroups_commute_elementwise(g1, req.h1_members, base1))
    throw Error(ErrorKind::InvariantViolation, "commuting request: H1 does not centralize the base in G1");

  req.h2_members = centralizer(g2, image_of(req.emb2, req.h0_members)).members;
  return req;
}

TryFamily nf3_try_family(const Nf3Request& req, const AmalgamBudget& budget) {
  const FiniteGroup& g0 = *req.g0;
  const FiniteGroup& g1 = *req.g1;
  const FiniteGroup& g2 = *req.g2;

  std::vector<Elem> base1;
  for (int h = 0; h < g0.order(); ++h) base1.push_back(req.emb1(Elem(h)));
  std::sort(base1.begin(), base1.end());

  // H1+ = <G0 ∪ L>; L is a transversal of its base cosets
  std::vector<Elem> seed = base1;
  seed.insert(seed.end(), req.l_members.begin(), req.l_members.end());
  std::vector<Elem> h1plus = generated_subgroup(g1, seed).members;
  if (h1plus.size() != base1.size() * req.l_members.size())
    throw Error(ErrorKind::InvariantViolation, "L is not a base transversal of <G0 ∪ L>");

  const std::size_t cap =
      budget.per_side_try_cap > 0 ? std::size_t(budget.per_side_try_cap) : SIZE_MAX;

  TryFamily fam;
  fam.complete = false;  // qualifying-family semantics, not the full try space
  for (const auto& j1 : transversal_choices(cosets_of(g1, h1plus), cap)) {
    std::vector<Elem> i1;
    i1.reserve(j1.size() * req.l_members.size());
    for (Elem g : j1)
      for (Elem b : req.l_members) i1.push_back(g1.mul(g, b));
    std::sort(i1.begin(), i1.end());
    fam.side1.push_back(std::move(i1));
  }

  std::vector<Elem> base2;
  for (int h = 0; h < g0.order(); ++h) base2.push_back(req.emb2(Elem(h)));
  std::sort(base2.begin(), base2.end());
  std::vector<Elem> g0_cap_h2;
  std::set_intersection(base2.begin(), base2.end(), req.h2_members.begin(), req.h2_members.end(),
                        std::back_inserter(g0_cap_h2));

  // cosets of (G0 ∩ H2) inside H2
  std::vector<std::vector<Elem>> inner_cosets;
  {
    std::set<Elem> unseen(req.h2_members.begin(), req.h2_members.end());
    while (!unseen.empty()) {
      Elem v = *unseen.begin();
      std::vector<Elem> block;
      for (Elem c : g0_cap_h2) {
        Elem w = g2.mul(v, c);
        unseen.erase(w);
        block.push_back(w);
      }
      std::sort(block.begin(), block.end());
      inner_cosets.push_back(std::move(block));
    }
  }
  auto outer_cosets = cosets_of(g2, base2);
  for (const auto& inner : transversal_choices(inner_cosets, cap)) {
    std::set<std::vector<Elem>> covered;
    for (Elem r : inner) {
      std::vector<Elem> block;
      for (Elem b : base2) block.push_back(g2.mul(r, b));
      std::sort(block.begin(), block.end());
      if (!covered.insert(block).second)
        throw Error(ErrorKind::InvariantViolation, "inner transversal hits a base coset twice");
    }
    std::vector<Elem> i2 = inner;
    for (const auto& block : outer_cosets)
      if (!covered.count(block)) i2.push_back(block.front());
    std::sort(i2.begin(), i2.end());
    fam.side2.push_back(std::move(i2));
    if (fam.side2.size() >= cap) break;
  }
  std::sort(fam.side1.begin(), fam.side1.end());
  fam.side1.erase(std::unique(fam.side1.begin(), fam.side1.end()), fam.side1.end());
  std::sort(fam.side2.begin(), fam.side2.end());
  fam.side2.erase(std::unique(fam.side2.begin(), fam.side2.end()), fam.side2.end());

  const std::size_t triples = std::size_t(g0.order()) * (g1.order() / g0.order()) *
                              (std::size_t(g2.order()) / g0.order());
  while (fam.side1.size() * fam.side2.size() * triples > budget.max_product_points &&
         (fam.side1.size() > 1 || fam.side2.size() > 1)) {
    if (fam.side1.size() >= fam.side2.size())
      fam.side1.pop_back();
    else
      fam.side2.pop_back();
  }
  return fam;
}

AmalgamTry build_commuting_transversals(const Nf3Request& req) {
  AmalgamBudget one;
  one.per_side_try_cap = 1;
  TryFamily fam = nf3_try_family(req, one);
  return make_try(*req.g0, *req.g1, *req.g2, req.emb1, req.emb2, fam.side1.front(),
                  fam.side2.front());
}

Nf3ClauseReport check_commuting_try(const Nf3Request& req, const AmalgamTry& x) {
  Nf3ClauseReport report;
  const FiniteGroup& g0 = *req.g0;
  const FiniteGroup& g1 = *req.g1;
  const FiniteGroup& g2 = *req.g2;
  auto entry = [&](const char* law, bool pass, std::string detail = "") {
    report.entries.push_back({law, "nf3 try", pass, std::move(detail)});
  };

  std::vector<Elem> base1;
  for (int h = 0; h < g0.order(); ++h) base1.push_back(req.emb1(Elem(h)));
  std::sort(base1.begin(), base1.end());
  std::vector<Elem> h0_img1 = image_of(req.emb1, req.h0_members);

  entry("valid-try", true);
  {  // (d): H0 = H1 ∩ G0
    std::vector<Elem> meet;
    std::set_intersection(req.h1_members.begin(), req.h1_members.end(), base1.begin(), base1.end(),
                          std::back_inserter(meet));
    entry("H0-is-H1-cap-G0", meet == h0_img1);
  }
  {  // (e): H1 is covered by b·H0 over b in I1 ∩ H1
    std::set<Elem> covered;
    std::size_t i1_in_h1 = 0;
    for (Elem b : x.i1)
      if (std::binary_search(req.h1_members.begin(), req.h1_members.end(), b)) {
        ++i1_in_h1;
        for (Elem h : h0_img1) covered.insert(g1.mul(b, h));
      }
    entry("H1-coset-cover",
          covered == std::set<Elem>(req.h1_members.begin(), req.h1_members.end()),
          "I1 ∩ H1 has " + std::to_string(i1_in_h1) + " members");
  }
  {  // (f): I1 closed under right multiplication by I1 ∩ H1
    bool pass = true;
    for (Elem g : x.i1) {
      for (Elem b : x.i1) {
        if (!std::binary_search(req.h1_members.begin(), req.h1_members.end(), b)) continue;
        if (x.pos1[g1.mul(g, b)] < 0) {
          pass = false;
          break;
        }
      }
      if (!pass) break;
    }
    entry("transversal-closure", pass);
  }
  entry("H1-centralizes-base", subgroups_commute_elementwise(g1, req.h1_members, base1));
  entry("H2-centralizes-H0",
        subgroups_commute_elementwise(g2, req.h2_members, image_of(req.emb2, req.h0_members)));
  {  // (i): I2 ∩ H2 covers H2 by (G0 ∩ H2)-cosets
    std::vector<Elem> base2;
    for (int h = 0; h < g0.order(); ++h) base2.push_back(req.emb2(Elem(h)));
    std::sort(base2.begin(), base2.end());
    std::vector<Elem> cap;
    std::set_intersection(base2.begin(), base2.end(), req.h2_members.begin(), req.h2_members.end(),
                          std::back_inserter(cap));
    std::set<Elem> covered;
    for (Elem b : x.i2)
      if (std::binary_search(req.h2_members.begin(), req.h2_members.end(), b))
        for (Elem c : cap) covered.insert(g2.mul(b, c));
    entry("H2-coset-cover",
          covered == std::set<Elem>(req.h2_members.begin(), req.h2_members.end()));
  }
  {  // (j): the two base restrictions agree on the triple space
    bool pass = true;
    for (int h = 0; h < g0.order() && pass; ++h)
      pass = j_perm(x, 1, req.emb1(Elem(h))) == j_perm(x, 2, req.emb2(Elem(h)));
    entry("base-agreement", pass);
  }
  return report;
}

Nf3Amalgam nf3_amalgam(const Nf3Request& req, const AmalgamBudget& budget) {
  TryFamily fam = nf3_try_family(req, budget);
  Nf3Amalgam out;
  out.amalgam = amalgam_over_family(*req.g0, *req.g1, *req.g2, req.emb1, req.emb2, fam, budget);
  // element-wise commutation of j1(H1) and j2(H2); equality in the product is
  // componentwise over the kept tries
  out.commutation_certified = true;
  for (const auto& x : out.amalgam.tries) {
    for (Elem a : req.h1_members) {
      auto pa = j_perm(x, 1, a);
      for (Elem b : req.h2_members) {
        auto pb = j_perm(x, 2, b);
        bool same = true;
        for (std::size_t p = 0; p < pa.size() && same; ++p) same = pb[pa[p]] == pa[pb[p]];
        if (!same) {
          out.commutation_certified = false;
          out.detail = "j1(" + std::to_string(a) + ") and j2(" + std::to_string(b) +
                       ") do not commute in a kept try";
          return out;
        }
      }
    }
  }
  return out;
}

}  // namespace lfg
