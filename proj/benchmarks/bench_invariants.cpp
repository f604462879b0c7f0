#include <benchmark/benchmark.h>

#include "fbc/fingerprint.hpp"
#include "fbc/superirr.hpp"
#include "fbc/twisted.hpp"

using namespace fbc;

namespace {

FreeEndo sample(int n, int length, std::uint64_t stream) { return endo_from_nielsen(random_auto(n, length, 2024, stream)); }

// t acts by an n-cycle, a_i trivially: valid for every monodromy.
Twist cyclic_twist(const FbcGroup& g, int k) {
  FiniteQuotient q{k, {}};
  for (int i = 0; i < g.rank(); ++i) q.gens.push_back(perm_identity(k));
  Perm c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = (i + 1) % k;
  q.gens.push_back(c);
  Representation r{k, {}};
  for (int i = 0; i < g.rank(); ++i) r.gen_matrices.push_back(q_identity(static_cast<std::size_t>(k)));
  QMatrix t(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) t(static_cast<std::size_t>(c[static_cast<std::size_t>(i)]), static_cast<std::size_t>(i)) = 1;
  r.gen_matrices.push_back(t);
  return make_twist(g, q, r);
}

void BM_Delta1Fox(benchmark::State& st) {
  const FbcGroup g(sample(3, 8, 1));
  const Twist tw = cyclic_twist(g, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(delta1_fox(g, tw));
}
BENCHMARK(BM_Delta1Fox)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void BM_Delta1Charpoly(benchmark::State& st) {
  const FbcGroup g(sample(3, 8, 1));
  const Twist tw = cyclic_twist(g, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(delta1_charpoly(g, tw));
}
BENCHMARK(BM_Delta1Charpoly)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void BM_PeriodicPoints(benchmark::State& st) {
  const GraphMap g = rose_representative(endo_from_nielsen({2, {{NielsenSymbol::Kind::Swap, 1, 2},
                                                                {NielsenSymbol::Kind::RightMul, 2, 1}}}));
  PeriodicOptions opt;
  opt.cd_words = false;
  for (auto _ : st) benchmark::DoNotOptimize(periodic_points(g, static_cast<int>(st.range(0)), opt));
}
BENCHMARK(BM_PeriodicPoints)->DenseRange(4, 16, 4);

void BM_SuperIrreducible(benchmark::State& st) {
  std::vector<ZMatrix> ms;
  for (std::uint64_t s = 0; s < 64; ++s) ms.push_back(abelianization_matrix(sample(3, static_cast<int>(st.range(0)), s)));
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(super_irreducible_check(ms[i++ % ms.size()]));
}
BENCHMARK(BM_SuperIrreducible)->Arg(5)->Arg(20);

void BM_Fingerprint(benchmark::State& st) {
  FingerprintInput in;
  in.monodromy = sample(3, static_cast<int>(st.range(0)), 7);
  for (auto _ : st) benchmark::DoNotOptimize(compute_fingerprint(in));
}
BENCHMARK(BM_Fingerprint)->Arg(5)->Arg(10);

} // namespace
BENCHMARK_MAIN();
