// Serial reference kernels against their OpenMP versions, plus one end-to-end
// construction per mode.

#include <random>

#include <benchmark/benchmark.h>

#include "lcover/cover.hpp"
#include "lcover/kernels.hpp"

namespace lcover {
namespace {

std::vector<u64> units_sample(u64 n, std::size_t count, u64 seed) {
  std::mt19937_64 rng(seed);
  std::vector<u64> out;
  while (out.size() < count) {
    const u64 x = 1 + rng() % (n - 1);
    if (std::gcd(x, n) == 1) out.push_back(x);
  }
  return out;
}

constexpr u64 kN = 1'000'003;
constexpr u64 kEll = 1000;

template <bool kSerial>
void BM_MarkSegments(benchmark::State& state) {
  const auto slopes = units_sample(kN, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    Bitmap out(kN);
    if constexpr (kSerial) {
      kernels::serial::mark_segments(kN, kEll, slopes, out);
    } else {
      kernels::mark_segments(kN, kEll, slopes, out);
    }
    benchmark::DoNotOptimize(out.words().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * (kEll + 1));
}
BENCHMARK(BM_MarkSegments<true>)->Name("mark_segments/serial")->Arg(1000)->Arg(10000);
BENCHMARK(BM_MarkSegments<false>)->Name("mark_segments/omp")->Arg(1000)->Arg(10000);

template <bool kSerial>
void BM_GcdMask(benchmark::State& state) {
  const u64 n = static_cast<u64>(state.range(0));
  const auto divs = divisors(factorize(n));
  for (auto _ : state) {
    Bitmap mask = kSerial ? kernels::serial::gcd_threshold_mask(n, 6) : kernels::gcd_threshold_mask(n, 6, divs);
    benchmark::DoNotOptimize(mask.words().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GcdMask<true>)->Name("gcd_threshold_mask/serial")->Arg(720720)->Arg(9699690);
BENCHMARK(BM_GcdMask<false>)->Name("gcd_threshold_mask/omp")->Arg(720720)->Arg(9699690);

template <bool kSerial>
void BM_SegmentGains(benchmark::State& state) {
  const auto pool = units_sample(kN, static_cast<std::size_t>(state.range(0)), 2);
  Bitmap live(kN);
  live.fill();
  for (auto _ : state) {
    auto gains = kSerial ? kernels::serial::segment_gains(kN, kEll, pool, live)
                         : kernels::segment_gains(kN, kEll, pool, live);
    benchmark::DoNotOptimize(gains.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * (kEll + 1));
}
BENCHMARK(BM_SegmentGains<true>)->Name("segment_gains/serial")->Arg(1000)->Arg(10000);
BENCHMARK(BM_SegmentGains<false>)->Name("segment_gains/omp")->Arg(1000)->Arg(10000);

void BM_Construct(benchmark::State& state) {
  ConstructConfig cfg;
  cfg.mode = state.range(0) == 0 ? Mode::kDeterministic : Mode::kRandomized;
  for (auto _ : state) {
    const CoveringSet c = construct(100'000, 300, cfg);
    benchmark::DoNotOptimize(c.slopes.data());
  }
}
BENCHMARK(BM_Construct)->Name("construct/n=1e5,ell=300")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lcover

BENCHMARK_MAIN();
