#include <numeric>
#include <random>

#include "doctest.h"
#include "lfg/amalgam.hpp"
#include "lfg/corpus.hpp"
#include "lfg/qf_types.hpp"

using namespace lfg;

namespace {

Subgroup whole(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup{&g, all};
}

Subgroup trivial_sub(const FiniteGroup& g) { return Subgroup{&g, {0}}; }

std::vector<Elem> fixing_relabel(const FiniteGroup& g, const std::vector<Elem>& fixed,
                                 std::uint64_t seed) {
  std::vector<Elem> sigma(g.order());
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<Elem> moving;
  for (int x = 1; x < g.order(); ++x)
    if (!std::binary_search(fixed.begin(), fixed.end(), Elem(x))) moving.push_back(Elem(x));
  std::mt19937_64 rng(seed);
  for (int i = int(moving.size()) - 1; i > 0; --i) {
    int j = int(rng() % (i + 1));
    std::swap(sigma[moving[i]], sigma[moving[j]]);
  }
  return sigma;
}

}  // namespace

TEST_CASE("tp_bs distinguishes exactly up to base-fixing isomorphism") {
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  auto p1 = tp_bs(z4, std::vector<Elem>{1}, trivial_sub(z4));
  auto p3 = tp_bs(z4, std::vector<Elem>{3}, trivial_sub(z4));
  CHECK(types_equal(p1, p3));  // x -> -x is an automorphism

  auto q1 = tp_bs(z4, std::vector<Elem>{1}, whole(z4));
  auto q3 = tp_bs(z4, std::vector<Elem>{3}, whole(z4));
  CHECK(!types_equal(q1, q3));  // over the full group the element is pinned

  // the empty tuple over A is the type of A itself
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  auto sub = generated_subgroup(s3, std::vector<Elem>{3});
  auto e1 = tp_bs(s3, {}, sub);
  auto e2 = tp_bs(s3, {}, sub);
  CHECK(types_equal(e1, e2));
  CHECK(e1.canon.order == sub.order());
}

TEST_CASE("types_equal on transpositions, and the error taxonomy") {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  std::vector<Elem> transpositions, three_cycles;
  for (int x = 1; x < 6; ++x)
    (s3.element_order(Elem(x)) == 2 ? transpositions : three_cycles).push_back(Elem(x));
  REQUIRE(transpositions.size() == 3);

  auto t0 = tp_bs(s3, std::vector<Elem>{transpositions[0]}, trivial_sub(s3));
  auto t1 = tp_bs(s3, std::vector<Elem>{transpositions[1]}, trivial_sub(s3));
  CHECK(types_equal(t0, t0));
  CHECK(types_equal(t0, t1));

  auto r = tp_bs(s3, std::vector<Elem>{three_cycles[0]}, trivial_sub(s3));
  CHECK(!types_equal(t0, r));  // generated subgroups have different orders

  auto pair = tp_bs(s3, std::vector<Elem>{transpositions[0], transpositions[1]}, trivial_sub(s3));
  CHECK_THROWS_AS((void)types_equal(t0, pair), Error);  // ArityMismatch
  auto over_sub = tp_bs(s3, std::vector<Elem>{transpositions[0]},
                        generated_subgroup(s3, std::vector<Elem>{three_cycles[0]}));
  CHECK_THROWS_AS((void)types_equal(t0, over_sub), Error);  // BaseMismatch
}

TEST_CASE("tp_bs is invariant under ambient relabelings fixing the base pointwise") {
  for (const char* name : {"o6b_s3", "o8d_d4", "o8e_q8", "o6a_z6"}) {
    const FiniteGroup& g = corpus_group(name);
    auto base = generated_subgroup(g, std::vector<Elem>{Elem(g.order() - 1)});
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto sigma = fixing_relabel(g, base.members, seed);
      FiniteGroup h = relabeled(g, sigma);
      Subgroup base_h{&h, base.members};
      for (int x = 0; x < g.order(); ++x) {
        for (int y = 0; y < g.order(); ++y) {
          std::vector<Elem> tup{Elem(x), Elem(y)};
          std::vector<Elem> tup_h{sigma[x], sigma[y]};
          CHECK(types_equal(tp_bs(g, tup, Subgroup{&g, base.members}), tp_bs(h, tup_h, base_h)));
        }
      }
    }
  }
}

TEST_CASE("restriction: equal types over A stay equal over any smaller base") {
  const FiniteGroup& d4 = corpus_group("o8d_d4");
  auto a = center(d4);  // order 2
  Subgroup a_triv = trivial_sub(d4);
  for (int x = 0; x < d4.order(); ++x)
    for (int y = 0; y < d4.order(); ++y) {
      auto px = tp_bs(d4, std::vector<Elem>{Elem(x)}, a);
      auto py = tp_bs(d4, std::vector<Elem>{Elem(y)}, a);
      if (types_equal(px, py)) {
        CHECK(types_equal(tp_bs(d4, std::vector<Elem>{Elem(x)}, a_triv),
                          tp_bs(d4, std::vector<Elem>{Elem(y)}, a_triv)));
      }
    }
}

TEST_CASE("does_not_split: trivial cases and the Klein-four witness") {
  FiniteGroup z6 = FiniteGroup::cyclic(6);
  // H = G, K = G: equal types over all of G force equal tuples
  CHECK(!does_not_split(z6, std::vector<Elem>{2}, whole(z6), whole(z6), 2).has_value());

  FiniteGroup v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  auto w = does_not_split(v4, std::vector<Elem>{1}, whole(v4), trivial_sub(v4), 1);
  REQUIRE(w.has_value());
  CHECK(w->m == 1);
  CHECK(w->b1 == std::vector<Elem>{1});
  CHECK(w->b2 == std::vector<Elem>{2});
  // the distinguishing term really distinguishes
  std::vector<Elem> args1{w->b1[0], 1}, args2{w->b2[0], 1};
  CHECK(eval_term(v4, w->reason, args1) == 0);
  CHECK(eval_term(v4, w->reason, args2) != 0);
}

TEST_CASE("does_not_split never flips a witness to true at a larger bound") {
  FiniteGroup v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  auto w1 = does_not_split(v4, std::vector<Elem>{1}, whole(v4), trivial_sub(v4), 1);
  auto w2 = does_not_split(v4, std::vector<Elem>{1}, whole(v4), trivial_sub(v4), 2);
  CHECK(w1.has_value());
  CHECK(w2.has_value());
  CHECK(w1->b1 == w2->b1);  // lexicographic tie-break is stable

  const FiniteGroup& q8 = corpus_group("o8e_q8");
  for (int x = 0; x < q8.order(); ++x) {
    auto a = does_not_split(q8, std::vector<Elem>{Elem(x)}, whole(q8), whole(q8), 1);
    auto b = does_not_split(q8, std::vector<Elem>{Elem(x)}, whole(q8), whole(q8), 2);
    CHECK(!a.has_value());
    CHECK(!b.has_value());
  }
}

TEST_CASE("marked canonical form round-trips to a full multiplication table") {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  std::vector<Elem> gens{1, 3};  // a transposition and a 3-cycle generate S3
  auto canon = marked_canon(s3, gens, 0);
  REQUIRE(canon.order == 6);
  auto table = canon.full_table();
  FiniteGroup rebuilt = FiniteGroup::from_table_unchecked(canon.order, table);
  CHECK(isomorphic(rebuilt, s3));
}
