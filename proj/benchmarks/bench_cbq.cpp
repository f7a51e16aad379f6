#include <benchmark/benchmark.h>

#include "cbq/brauer.hpp"
#include "cbq/families.hpp"
#include "cbq/plane.hpp"

using namespace cbq;

namespace {

ConicBundle fixture(const char* name) { return load_bundle(std::string(CBQ_FIXTURES_DIR) + "/" + name); }

void BM_Enumerate(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(multidegrees_for_discriminant(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_Enumerate)->Arg(8)->Arg(40);

void BM_Discriminant(benchmark::State& st) {
  Rng rng(1);
  auto cb = random_bundle({2, 1, 1}, rng);
  for (auto _ : st) benchmark::DoNotOptimize(discriminant(cb));
}
BENCHMARK(BM_Discriminant);

void BM_BrauerModel(benchmark::State& st) {
  Rng rng(2);
  auto cb = random_bundle({3, 1, 0}, rng);
  for (auto _ : st) benchmark::DoNotOptimize(brauer_model(cb));
}
BENCHMARK(BM_BrauerModel)->Unit(benchmark::kMillisecond);

void BM_CertificateEightPoints(benchmark::State& st) {
  auto cb = fixture("eight_points_400.cb");
  for (auto _ : st) benchmark::DoNotOptimize(no_section_certificate(cb));
}
BENCHMARK(BM_CertificateEightPoints)->Unit(benchmark::kMillisecond);

void BM_Certificate310(benchmark::State& st) {
  Rng rng(0);
  auto cb = random_bundle({3, 1, 0}, rng);
  for (auto _ : st) benchmark::DoNotOptimize(no_section_certificate(cb));
}
BENCHMARK(BM_Certificate310)->Unit(benchmark::kMillisecond);

void BM_CremonaChainU12(benchmark::State& st) {
  Rng rng(3);
  auto cb = u12_admissible_member(rng);
  for (auto _ : st) benchmark::DoNotOptimize(chain_U12(cb));
}
BENCHMARK(BM_CremonaChainU12)->Unit(benchmark::kMillisecond);

void BM_DominanceRank(benchmark::State& st) {
  auto spec = locus("U12");
  Rng rng(4);
  auto cb = locus_member(spec, rng);
  for (auto _ : st) benchmark::DoNotOptimize(jacobian_rank_at_identity(spec, cb));
}
BENCHMARK(BM_DominanceRank)->Unit(benchmark::kMillisecond);

void BM_ConicPoint(benchmark::State& st) {
  auto c = ConicQ::parse("1,-2,3,2,1,1");
  for (auto _ : st) benchmark::DoNotOptimize(conic_has_point(c));
}
BENCHMARK(BM_ConicPoint);

}  // namespace

// the packaged libbenchmark_main.a carries LTO bytecode from another compiler
BENCHMARK_MAIN();
