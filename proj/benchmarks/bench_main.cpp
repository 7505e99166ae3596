#include <benchmark/benchmark.h>

#include <random>

#include "stabcat/fibration.hpp"
#include "stabcat/fixtures.hpp"
#include "stabcat/hovey.hpp"
#include "stabcat/verify.hpp"

using namespace stabcat;

namespace {

Mat random_mat(PrimeField f, std::size_t n, std::mt19937_64& rng) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, static_cast<std::int64_t>(rng() % f.modulus()));
  return m;
}

const char* fixture_of(const benchmark::State& st) {
  static const char* names[] = {"F1", "F2", "F3"};
  return names[st.range(0)];
}

}  // namespace

static void BM_Rref(benchmark::State& st) {
  std::mt19937_64 rng(1);
  const PrimeField f(static_cast<std::uint64_t>(st.range(1)));
  Mat m = random_mat(f, static_cast<std::size_t>(st.range(0)), rng);
  for (auto _ : st) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_Rref)->ArgsProduct({{16, 64, 256}, {2, 3}});

// Fresh context per iteration: approximations and stable hom spaces are
// rebuilt; ambient hom spaces stay memoized process-wide.
static void BM_StableHomAllPairs(benchmark::State& st) {
  auto rf = load_fixture(fixture_of(st));
  for (auto _ : st) {
    auto ctx = make_context(rf, "main");
    std::size_t total = 0;
    for (const auto& a : rf.modules)
      for (const auto& b : rf.modules) total += stable_hom_dim(a, b, *ctx);
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_StableHomAllPairs)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_Ext1AllPairs(benchmark::State& st) {
  auto rf = load_fixture(fixture_of(st));
  for (auto _ : st) {
    auto ctx = make_context(rf, "main");
    std::size_t total = 0;
    for (const auto& a : rf.modules)
      for (const auto& b : rf.modules) total += ext1_dim(a, b, *ctx);
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_Ext1AllPairs)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_Octahedron(benchmark::State& st) {
  auto fx = open_fixture("F2");
  Morphism g = make_special_epic(fx.map("q"), *fx.ctx);
  Morphism f = fx.map("i");
  for (auto _ : st) benchmark::DoNotOptimize(octahedron(g, f, *fx.ctx));
}
BENCHMARK(BM_Octahedron)->Unit(benchmark::kMillisecond);

static void BM_VerifyLeft(benchmark::State& st) {
  auto fx = open_fixture(fixture_of(st));
  SampleSpec spec{fx.file.class_members("all"), 50, 10, 3, 4};
  for (auto _ : st) benchmark::DoNotOptimize(verify_axioms(*fx.ctx, spec, Side::left));
}
BENCHMARK(BM_VerifyLeft)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_VerifyFibration(benchmark::State& st) {
  auto fx = open_fixture(fixture_of(st));
  SampleSpec spec{fx.file.class_members("all"), 50, 10, 3, 4};
  for (auto _ : st) benchmark::DoNotOptimize(verify_fibration_axioms(*fx.ctx, spec));
}
BENCHMARK(BM_VerifyFibration)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_HoveyTriple(benchmark::State& st) {
  auto fx = open_fixture(fixture_of(st));
  auto uni = fx.file.class_members("all");
  auto c = class_spec(fx.file, "cof");
  auto w = class_spec(fx.file, "triv");
  auto f = class_spec(fx.file, "fib");
  for (auto _ : st) benchmark::DoNotOptimize(check_hovey_triple(c, w, f, *fx.ctx, uni));
}
BENCHMARK(BM_HoveyTriple)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
