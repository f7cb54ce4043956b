#include <benchmark/benchmark.h>

#include "rispath/pathloss.hpp"
#include "rispath/presets.hpp"
#include "rispath/scenario.hpp"
#include "rispath/units.hpp"

using namespace rispath;

namespace {

LinkGeometry bench_link(double d1, double d2) {
  const AntennaSpec horn = make_antenna(62.0);
  return make_link({d1, kPi / 4.0, kPi}, {d2, kPi / 4.0, 0.0}, horn, horn);
}

void GeneralSum(benchmark::State& state) {
  const int half = static_cast<int>(state.range(0)) / 2;
  const RisConfig cfg = make_ris_config(2 * half, 2 * half, 0.01, 0.01, 0.9, 3.0, 10.5e9, 0.0286);
  const PhaseProfile profile = uniform_profile(cfg, 0.0);
  const LinkGeometry link = bench_link(3.5, 100.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(received_power_general(cfg, profile, link, 1e-3).received_power_w);
  }
  state.SetItemsProcessed(state.iterations() * cfg.cell_count());
}
BENCHMARK(GeneralSum)->RangeMultiplier(2)->Range(8, 128);

void ArrayFactorClosedForm(benchmark::State& state) {
  const RisConfig cfg = ris_preset("large-ris1");
  double theta = 0.2;
  for (auto _ : state) {
    theta += 1e-6;
    benchmark::DoNotOptimize(array_factor(cfg, kPi / 4.0, kPi, theta, 0.1, 0.0, 0.0));
  }
}
BENCHMARK(ArrayFactorClosedForm);

void FocusCodebook(benchmark::State& state) {
  const RisConfig cfg = ris_preset("large-ris1");
  const LinkGeometry link = bench_link(3.5, 100.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        nearfield_focus_codebook(cfg, link.tx_antenna.position, link.rx_antenna.position));
  }
  state.SetItemsProcessed(state.iterations() * cfg.cell_count());
}
BENCHMARK(FocusCodebook);

void HeatmapPoint(benchmark::State& state) {
  // one full large-surface heatmap at a coarse grid; items = evaluated points
  SweepSpec spec;
  spec.ris = ris_preset("large-ris1");
  spec.link = bench_link(100.0, 100.0);
  spec.mode = SweepMode::kAngularHeatmap;
  spec.heatmap_resolution_deg = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_angular_heatmap(spec).rows.size());
  }
  state.SetItemsProcessed(state.iterations() * (10 * 36));
}
BENCHMARK(HeatmapPoint)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
