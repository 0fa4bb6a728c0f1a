#include <numeric>

#include "doctest.h"
#include "lfg/nf3.hpp"
#include "lfg/qf_types.hpp"

using namespace lfg;

namespace {

Embedding first_embedding(const FiniteGroup& k, const FiniteGroup& g) {
  auto embs = enumerate_embeddings(k, g);
  REQUIRE(!embs.empty());
  return embs.front();
}

}  // namespace

TEST_CASE("request validation names the violated clause") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  FiniteGroup v4 = FiniteGroup::direct_product(z2, z2);
  Embedding emb = first_embedding(z2, v4);  // image {0, 1}

  // L = the embedded base itself meets it beyond the identity
  CHECK_THROWS_WITH_AS(
      (void)make_nf3_request(z2, v4, v4, emb, emb, {0, 1}, {0}),
      "InvariantViolation: commuting request: L meets the base beyond the identity", Error);

  // a complement factor works
  auto req = make_nf3_request(z2, v4, v4, emb, emb, {0, 2}, {0});
  CHECK(req.h1_members == std::vector<Elem>{0, 2});
  CHECK(req.h2_members.size() == 4);  // H0 = {e}, so H2 = G2
}

TEST_CASE("the commuting transversal satisfies the structural clauses") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  FiniteGroup v4 = FiniteGroup::direct_product(z2, z2);
  Embedding emb = first_embedding(z2, v4);
  auto req = make_nf3_request(z2, v4, v4, emb, emb, {0, 2}, {0});
  AmalgamTry x = build_commuting_transversals(req);
  // I1 = J1 · L and the closure property g in I1, b in L => g·b in I1
  for (Elem g : x.i1)
    for (Elem b : req.l_members) CHECK(x.pos1[v4.mul(g, b)] >= 0);
  auto report = check_commuting_try(req, x);
  for (const auto& e : report.entries) {
    INFO(e.law, " ", e.detail);
    CHECK(e.pass);
  }
}

TEST_CASE("L = {e} reduces to the default try") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  Embedding emb = first_embedding(z2, z4);
  auto req = make_nf3_request(z2, z4, z4, emb, emb, {0}, {0});
  AmalgamTry x = build_commuting_transversals(req);
  AmalgamTry d = make_try(z2, z4, z4, emb, emb);
  CHECK(x.i1 == d.i1);
}

TEST_CASE("nf3 certificate: the designated subgroups commute in the amalgam") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  FiniteGroup v4 = FiniteGroup::direct_product(z2, z2);
  Embedding emb = first_embedding(z2, v4);
  auto req = make_nf3_request(z2, v4, v4, emb, emb, {0, 2}, {0});
  auto nf3 = nf3_amalgam(req);
  CHECK(nf3.commutation_certified);
  // j1(L) commutes with all of j2(G2) in the table as well
  for (Elem b : req.l_members)
    for (int y = 0; y < v4.order(); ++y) {
      Elem jb = nf3.amalgam.j1_map[b];
      Elem jy = nf3.amalgam.j2_map[y];
      CHECK(nf3.amalgam.g3.mul(jb, jy) == nf3.amalgam.g3.mul(jy, jb));
    }
}

TEST_CASE("nf3 forces commutation that the plain amalgam refuses") {
  // the natural case: trivial-centered base, L the full centralizer
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  FiniteGroup g12 = FiniteGroup::direct_product(s3, FiniteGroup::cyclic(2));
  Embedding emb = first_embedding(s3, g12);
  // the central involution generates the centralizer of the embedded S3
  std::vector<Elem> base_img;
  for (int h = 0; h < s3.order(); ++h) base_img.push_back(emb(Elem(h)));
  auto cm = centralizer(g12, base_img);
  REQUIRE(cm.order() == 2);

  auto req = make_nf3_request(s3, g12, g12, emb, emb, cm.members, {0});
  AmalgamBudget budget;
  budget.max_order = 3000;
  auto nf3 = nf3_amalgam(req, budget);
  CHECK(nf3.commutation_certified);
  Elem z1 = nf3.amalgam.j1_map[cm.members[1]];
  Elem z2 = nf3.amalgam.j2_map[cm.members[1]];
  CHECK(nf3.amalgam.g3.mul(z1, z2) == nf3.amalgam.g3.mul(z2, z1));

  // the unrestricted amalgam separates the same pair (the commuting
  // characterization over a non-abelian base)
  auto plain = stable_amalgam(s3, g12, g12, emb, emb, budget);
  auto chk = commuting_characterization(plain, cm.members[1], cm.members[1]);
  CHECK(!chk.commute_in_g3);
  CHECK(chk.match);
}

TEST_CASE("fully centralizing request over an abelian base matches the plain amalgam") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  FiniteGroup v4 = FiniteGroup::direct_product(z2, z2);
  Embedding emb = first_embedding(z2, v4);
  // H0 = G0 (abelian) and L the complement: every clause centralizes
  auto req = make_nf3_request(z2, v4, v4, emb, emb, {0, 2}, {0, 1});
  auto nf3 = nf3_amalgam(req);
  CHECK(nf3.commutation_certified);
  auto plain = stable_amalgam(z2, v4, v4, emb, emb, {});
  CHECK(nf3.amalgam.g3.order() == plain.g3.order());
  CHECK(isomorphic(nf3.amalgam.g3, plain.g3));
}

TEST_CASE("degenerate side: G1 = G0 gives back G2") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  auto req = make_nf3_request(z2, z2, z4, identity_embedding(z2), first_embedding(z2, z4), {0}, {0});
  auto nf3 = nf3_amalgam(req);
  CHECK(nf3.commutation_certified);
  CHECK(isomorphic(nf3.amalgam.g3, z4));
}

TEST_CASE("two compatible try subfamilies give the same amalgam on tiny inputs") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  FiniteGroup v4 = FiniteGroup::direct_product(z2, z2);
  Embedding emb = first_embedding(z2, v4);
  auto req = make_nf3_request(z2, v4, v4, emb, emb, {0, 2}, {0});
  AmalgamBudget one;
  one.per_side_try_cap = 1;
  auto small = nf3_amalgam(req, one);
  auto full = nf3_amalgam(req);
  CHECK(small.commutation_certified);
  CHECK(full.commutation_certified);
  CHECK(small.amalgam.g3.order() == full.amalgam.g3.order());
  CHECK(isomorphic(small.amalgam.g3, full.amalgam.g3));
}
