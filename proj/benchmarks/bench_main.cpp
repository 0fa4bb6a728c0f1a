#include <benchmark/benchmark.h>

#include "lfg/amalgam.hpp"
#include "lfg/closure.hpp"
#include "lfg/corpus.hpp"
#include "lfg/qf_types.hpp"
#include "lfg/schemes.hpp"

using namespace lfg;

namespace {

Embedding first_embedding(const FiniteGroup& k, const FiniteGroup& g) {
  return enumerate_embeddings(k, g).front();
}

void BM_StableAmalgamSmall(benchmark::State& state) {
  const FiniteGroup& z2 = corpus_group("o2_z2");
  const FiniteGroup& z4 = corpus_group("o4a_z4");
  Embedding e = first_embedding(z2, z4);
  for (auto _ : state) {
    auto sa = stable_amalgam(z2, z4, z4, e, e, {});
    benchmark::DoNotOptimize(sa.g3.order());
  }
}
BENCHMARK(BM_StableAmalgamSmall);

void BM_StableAmalgamOrderEight(benchmark::State& state) {
  const FiniteGroup& z2 = corpus_group("o2_z2");
  const FiniteGroup& q8 = corpus_group("o8e_q8");
  Embedding e = first_embedding(z2, q8);
  for (auto _ : state) {
    auto sa = stable_amalgam(z2, q8, q8, e, e, {});
    benchmark::DoNotOptimize(sa.g3.order());
  }
}
BENCHMARK(BM_StableAmalgamOrderEight);

void BM_TypeCanonical(benchmark::State& state) {
  FiniteGroup g = FiniteGroup::direct_product(corpus_group("o6b_s3"), corpus_group("o6b_s3"));
  Subgroup base{&g, {0}};
  for (auto _ : state) {
    for (Elem x = 0; x < Elem(g.order()); x += 5) {
      auto t = tp_bs(g, std::vector<Elem>{x, Elem((x + 7) % g.order())}, base);
      benchmark::DoNotOptimize(t.canon.order);
    }
  }
}
BENCHMARK(BM_TypeCanonical);

void BM_EnumerateEmbeddings(benchmark::State& state) {
  const FiniteGroup& v4 = corpus_group("o4b_v4");
  const FiniteGroup& cube = corpus_group("o8c_z2cube");
  for (auto _ : state) {
    auto embs = enumerate_embeddings(v4, cube);
    benchmark::DoNotOptimize(embs.size());
  }
}
BENCHMARK(BM_EnumerateEmbeddings);

void BM_ApplyCg(benchmark::State& state) {
  const FiniteGroup& g = corpus_group("o8d_d4");
  for (auto _ : state) {
    auto app = apply_cg(g);
    benchmark::DoNotOptimize(app.h.order());
  }
}
BENCHMARK(BM_ApplyCg);

void BM_HallStep(benchmark::State& state) {
  for (auto _ : state) {
    auto r = hall_step(FiniteGroup::trivial(), 4);
    benchmark::DoNotOptimize(r.h.order());
  }
}
BENCHMARK(BM_HallStep);

void BM_SplitScan(benchmark::State& state) {
  auto app = apply_gl(corpus_group("o6b_s3"), 1);
  std::vector<Elem> base(app.j0_map);
  std::sort(base.begin(), base.end());
  Subgroup g_img{&app.h, base};
  Elem prod = kIdentity;
  for (Elem c : app.tuple) prod = app.h.mul(prod, c);
  auto k = generated_subgroup(app.h, std::vector<Elem>{prod});
  for (auto _ : state) {
    auto w = does_not_split(app.h, app.tuple, g_img, k, 2);
    benchmark::DoNotOptimize(w.has_value());
  }
}
BENCHMARK(BM_SplitScan);

}  // namespace

BENCHMARK_MAIN();
