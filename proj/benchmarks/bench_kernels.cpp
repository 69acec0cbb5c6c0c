// Serial-vs-OpenMP comparison of the hot kernels: the decoder Monte-Carlo
// sweep, the brute-force distance search, and the single-fault protocol
// audit. The serial variants are the reference implementations the tests
// pin the parallel ones against.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "sdc/experiments.hpp"
#include "sdc/synth.hpp"

using namespace sdc;

static void BM_decoder_sweep_serial(benchmark::State& state) {
  std::vector<double> ps{0.02};
  for (auto _ : state) {
    auto res = run_decoder_benchmark_serial(ps, static_cast<uint64_t>(state.range(0)), 7);
    benchmark::DoNotOptimize(res.points[0].failures);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_decoder_sweep_serial)->Arg(1 << 18);

static void BM_decoder_sweep_omp(benchmark::State& state) {
  std::vector<double> ps{0.02};
  for (auto _ : state) {
    auto res = run_decoder_benchmark(ps, static_cast<uint64_t>(state.range(0)), 7);
    benchmark::DoNotOptimize(res.points[0].failures);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_decoder_sweep_omp)->Arg(1 << 18);

static void BM_distance_serial(benchmark::State& state) {
  const StabilizerCode& code = builtin_code();
  for (auto _ : state) {
    auto res = code_distance_serial(code, 5);
    benchmark::DoNotOptimize(res.distance);
  }
}
BENCHMARK(BM_distance_serial);

static void BM_distance_omp(benchmark::State& state) {
  const StabilizerCode& code = builtin_code();
  for (auto _ : state) {
    auto res = code_distance(code, 5);
    benchmark::DoNotOptimize(res.distance);
  }
}
BENCHMARK(BM_distance_omp);

static void BM_ft_audit(benchmark::State& state) {
  const StabilizerCode& code = builtin_code();
  EncoderProtocol proto = synth_ft_plus_encoder(code);
  for (auto _ : state) {
    auto res = audit_protocol_ft(proto, code, true);
    benchmark::DoNotOptimize(res.accepted);
  }
}
BENCHMARK(BM_ft_audit);

static void BM_cnot_shot(benchmark::State& state) {
  const StabilizerCode& code = builtin_code();
  EctHarness harness(EncoderVariant::Proposed, code);
  FrameSimulator sim(harness.total_qubits());
  std::vector<uint8_t> scratch;
  uint64_t threshold = probability_threshold(5e-3);
  uint64_t shot = 0;
  for (auto _ : state) {
    Rng rng = Rng::for_shot(1, 0, shot++);
    uint64_t attempts = 0;
    bool fail = harness.shot(sim, threshold, rng, attempts, scratch);
    benchmark::DoNotOptimize(fail);
  }
}
BENCHMARK(BM_cnot_shot);

BENCHMARK_MAIN();
