#include <benchmark/benchmark.h>

#include "srsm/energy.hpp"
#include "srsm/pipeline.hpp"
#include "srsm/scene.hpp"
#include "srsm/snake.hpp"
#include "srsm/superres.hpp"

using namespace srsm;

namespace {

const scene::SyntheticScene& standard_scene() {
  static const auto s = scene::synth_scene(scene::standard_two_box_scene(), 7);
  return s;
}

void BM_Fista(benchmark::State& state) {
  const auto& s = standard_scene();
  const auto sparse = sr::project_points(sr::subsample_stride(s.cloud, static_cast<int>(state.range(0))), s.gt);
  const auto p = sr::SrParams::defaults_for(sparse);
  std::size_t iters = 0;
  for (auto _ : state) {
    auto res = sr::propagate_fista(sparse, p);
    iters = res.trace.iterations();
    benchmark::DoNotOptimize(res.image.storage().data());
  }
  state.counters["fista_iters"] = static_cast<double>(iters);
}
BENCHMARK(BM_Fista)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TiledFista(benchmark::State& state) {
  const auto& s = standard_scene();
  const auto sparse = sr::project_points(sr::subsample_stride(s.cloud, 4), s.gt);
  const auto p = sr::SrParams::defaults_for(sparse);
  for (auto _ : state) {
    auto res = pipeline::tiled_superres(sparse, p, 64, 16, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(res.image.storage().data());
  }
}
BENCHMARK(BM_TiledFista)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Gvf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ScalarField f(n, n, 0.0);
  for (std::size_t r = n / 4; r < 3 * n / 4; ++r) {
    for (std::size_t c = n / 4; c < 3 * n / 4; ++c) f(r, c) = 1.0;
  }
  for (auto _ : state) {
    auto g = energy::gvf(f, 0.2, 200, energy::gvf_default_dt(0.2));
    benchmark::DoNotOptimize(g.u.storage().data());
  }
}
BENCHMARK(BM_Gvf)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Evolve(benchmark::State& state) {
  ZImage z(40, 40, 0.0);
  BinaryMask mask(40, 40, 0);
  for (std::size_t r = 10; r < 30; ++r) {
    for (std::size_t c = 10; c < 30; ++c) {
      z(r, c) = 10.0;
      mask(r, c) = 1;
    }
  }
  const auto field = energy::external_field(z, SnakeParams{});
  const Contour init({{6, 6}, {34, 6}, {34, 34}, {6, 34}});
  for (auto _ : state) {
    auto res = snake::evolve(init, field, state.range(0) ? &mask : nullptr, SnakeParams{});
    benchmark::DoNotOptimize(res.contour.points().data());
  }
}
BENCHMARK(BM_Evolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
