// Serial reference kernels against their OpenMP counterparts.
// Run with SOC_CASCADE_THREADS=<n> to pick the worker count.

#include <benchmark/benchmark.h>

#include <map>
#include <string>
#include <vector>

#include "soc_cascade/ingest.hpp"
#include "soc_cascade/parallel.hpp"
#include "soc_cascade/rng.hpp"
#include "soc_cascade/serial.hpp"
#include "soc_cascade/synth.hpp"

using namespace soc_cascade;

namespace {

const SupplyNetwork& network(std::size_t n) {
  static std::map<std::size_t, SupplyNetwork> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, generate({BarabasiAlbertModel{n, 2}, CapitalModel::pareto(2, 50), 1})).first;
  }
  return it->second;
}

std::vector<std::u32string> name_keys(std::size_t n) {
  Rng rng(5);
  std::vector<std::u32string> keys;
  for (std::size_t i = 0; i < n; ++i) {
    std::string w;
    const std::size_t len = 4 + rng.below(10);
    for (std::size_t k = 0; k < len; ++k) w.push_back(static_cast<char>('a' + rng.below(26)));
    keys.push_back(utf8_to_scalars(w));
  }
  return keys;
}

RcState rc_state(std::size_t n) {
  Rng rng(7);
  RcState st = RcState::zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    st.s[i] = rng.below(10) == 0 ? 1.0 : rng.uniform();
    st.absorbed[i] = st.s[i] == 1.0;
  }
  return st;
}

RtState rt_state(const RtDynamics& dyn, std::size_t n) {
  RtState st{std::vector<std::uint8_t>(n, 0), dyn.initial_capacity,
             std::vector<PolicyChoice>(n, PolicyChoice::kNone)};
  std::vector<FirmId> seeds;
  for (FirmId i = 0; i < n; i += 10) seeds.push_back(i);
  fail_firms(dyn, st, seeds, 0);
  return st;
}

void BM_Betweenness_Serial(benchmark::State& s) {
  const auto& net = network(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(serial::betweenness(net));
}
void BM_Betweenness_OpenMP(benchmark::State& s) {
  const auto& net = network(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(betweenness(net));
}

void BM_DistanceSums_Serial(benchmark::State& s) {
  const auto& net = network(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(serial::closeness(net));
}
void BM_DistanceSums_OpenMP(benchmark::State& s) {
  const auto& net = network(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(closeness(net));
}

void BM_SimilarPairs_Serial(benchmark::State& s) {
  const auto keys = name_keys(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(serial::similar_pairs(keys, 0.6));
}
void BM_SimilarPairs_OpenMP(benchmark::State& s) {
  const auto keys = name_keys(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(similar_pairs(keys, 0.6, false));
}

void BM_RcStep_Serial(benchmark::State& s) {
  const auto& net = network(s.range(0));
  const RcDynamics dyn(net, RcConfig{});
  const auto st = rc_state(net.size());
  for (auto _ : s) benchmark::DoNotOptimize(serial::rc_step(dyn, std::span(&st, 1)));
}
void BM_RcStep_OpenMP(benchmark::State& s) {
  const auto& net = network(s.range(0));
  const RcDynamics dyn(net, RcConfig{});
  const auto st = rc_state(net.size());
  for (auto _ : s) benchmark::DoNotOptimize(rc_step(dyn, std::span(&st, 1)));
}

void BM_RtStep_Serial(benchmark::State& s) {
  const auto& net = network(s.range(0));
  const RtDynamics dyn(net, RtConfig{});
  const auto st = rt_state(dyn, net.size());
  for (auto _ : s) benchmark::DoNotOptimize(serial::rt_step(dyn, std::span(&st, 1), 1));
}
void BM_RtStep_OpenMP(benchmark::State& s) {
  const auto& net = network(s.range(0));
  const RtDynamics dyn(net, RtConfig{});
  const auto st = rt_state(dyn, net.size());
  for (auto _ : s) benchmark::DoNotOptimize(rt_step(dyn, std::span(&st, 1), 1));
}

}  // namespace

BENCHMARK(BM_Betweenness_Serial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Betweenness_OpenMP)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceSums_Serial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceSums_OpenMP)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimilarPairs_Serial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimilarPairs_OpenMP)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RcStep_Serial)->Arg(10000)->Arg(100000);
BENCHMARK(BM_RcStep_OpenMP)->Arg(10000)->Arg(100000);
BENCHMARK(BM_RtStep_Serial)->Arg(10000)->Arg(100000);
BENCHMARK(BM_RtStep_OpenMP)->Arg(10000)->Arg(100000);

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
