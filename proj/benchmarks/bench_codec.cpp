#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "lsvc/entropy.hpp"
#include "lsvc/interpolation.hpp"
#include "lsvc/metrics.hpp"
#include "lsvc/transform.hpp"

namespace {

lsvc::Frame textured(int w, int h, int shift) {
  lsvc::Frame f(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = 128 + 50 * std::sin((x + shift) * 0.19) + 40 * std::cos(y * 0.13);
      f.at(x, y) = static_cast<std::uint8_t>(v);
    }
  }
  return f;
}

void BM_ForwardDct(benchmark::State& state) {
  lsvc::Block b{};
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<double>((i * 37) % 255);
  for (auto _ : state) benchmark::DoNotOptimize(lsvc::forward_dct(b));
}
BENCHMARK(BM_ForwardDct);

void BM_Analysis(benchmark::State& state) {
  const lsvc::Frame f = textured(192, 176, 0);
  for (auto _ : state) benchmark::DoNotOptimize(lsvc::analysis(f));
}
BENCHMARK(BM_Analysis);

void BM_RangeCoderRoundtrip(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::geometric_distribution<int> mag(0.4);
  std::vector<std::int64_t> values(static_cast<std::size_t>(state.range(0)));
  for (auto& v : values) v = (rng() & 1) ? mag(rng) : -mag(rng);
  for (auto _ : state) {
    const auto bytes = lsvc::encode_plane(values, 0);
    benchmark::DoNotOptimize(lsvc::decode_plane(bytes, values.size(), 0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RangeCoderRoundtrip)->Arg(1 << 12)->Arg(1 << 16);

void BM_Interpolation(benchmark::State& state) {
  const lsvc::Frame a = textured(192, 176, 0);
  lsvc::Frame b = textured(192, 176, 8);
  b.set_poc(2);
  for (auto _ : state) benchmark::DoNotOptimize(lsvc::interpolate_frame(a, b, 1));
}
BENCHMARK(BM_Interpolation);

void BM_MsSsim(benchmark::State& state) {
  const lsvc::Frame a = textured(192, 176, 0);
  const lsvc::Frame b = textured(192, 176, 1);
  for (auto _ : state) benchmark::DoNotOptimize(lsvc::ms_ssim(a, b));
}
BENCHMARK(BM_MsSsim);

}  // namespace

BENCHMARK_MAIN();
