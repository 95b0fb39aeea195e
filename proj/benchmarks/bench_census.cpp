#include <benchmark/benchmark.h>

#include <random>

#include "mcensus/census.hpp"
#include "mcensus/field_mat.hpp"
#include "mcensus/rank_counts.hpp"

using namespace mcensus;

namespace {

Mat random_mat(std::mt19937_64& rng, int n, long long H) {
  Mat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = static_cast<long long>(rng() % (2 * H + 1)) - H;
  return m;
}

}  // namespace

static void BM_MatMul(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int n = static_cast<int>(state.range(0));
  const Mat a = random_mat(rng, n, 100), b = random_mat(rng, n, 100);
  for (auto _ : state) benchmark::DoNotOptimize(mat_mul(a, b));
}
BENCHMARK(BM_MatMul)->Arg(2)->Arg(4)->Arg(6);

static void BM_DetBareiss(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Mat a = random_mat(rng, static_cast<int>(state.range(0)), 100);
  for (auto _ : state) benchmark::DoNotOptimize(det(a));
}
BENCHMARK(BM_DetBareiss)->Arg(2)->Arg(4)->Arg(6);

static void BM_EncodeKey(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const Mat a = random_mat(rng, 2, 100);
  for (auto _ : state) benchmark::DoNotOptimize(encode_key(a, 2));
}
BENCHMARK(BM_EncodeKey);

static void BM_BoxEnumeration(benchmark::State& state) {
  const BoxSpec spec{2, state.range(0)};
  for (auto _ : state) {
    int128 sum = 0;
    for_each_raw(spec, 0, spec.raw_cardinality(),
                 [&](const Mat& m) { sum += m.at(0, 0) ^ m.at(1, 1); });
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(spec.raw_cardinality()));
}
BENCHMARK(BM_BoxEnumeration)->Arg(2)->Arg(4);

static void BM_CensusPairs(benchmark::State& state) {
  const BoxSpec spec{2, state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(census_products(spec, 2, Variant::All, 1));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(spec.raw_cardinality()) *
                          static_cast<std::int64_t>(spec.raw_cardinality()));
}
BENCHMARK(BM_CensusPairs)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_LeftIdentityFactor(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const int n = static_cast<int>(state.range(0));
  FieldMat<Rat> u(n, n - 1), v(n - 1, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n - 1; ++j) {
      u.at(i, j) = Rat(static_cast<long>(rng() % 19) - 9);
      v.at(j, i) = Rat(static_cast<long>(rng() % 19) - 9);
    }
  const FieldMat<Rat> a = u * v;
  for (auto _ : state) benchmark::DoNotOptimize(left_identity_factor(a));
}
BENCHMARK(BM_LeftIdentityFactor)->Arg(3)->Arg(5);

static void BM_VerifyProductSet(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_product_set_field(2, 3, {2, 2}, 1));
  state.SetLabel("F2 n=3 caps (2,2)");
}
BENCHMARK(BM_VerifyProductSet)->Unit(benchmark::kMillisecond);

static void BM_DivisorCount(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(divisor_count(963761198400LL));
}
BENCHMARK(BM_DivisorCount);

BENCHMARK_MAIN();
