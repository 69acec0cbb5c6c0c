// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one pass/fail line per criterion. Exits nonzero if
// any criterion fails. An optional argument restricts the run to a single
// criterion number.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "sdc/experiments.hpp"
#include "sdc/frame.hpp"
#include "sdc/synth.hpp"
#include "sdc/tableau.hpp"

using namespace sdc;
using gf2::BitMatrix;
using gf2::BitVector;

namespace {

int g_failures = 0;
int g_only = 0;

bool should_run(int num) { return g_only == 0 || g_only == num; }

void report(int num, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s — %s\n", pass ? "PASS" : "FAIL", num, name,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// Deterministic +1 eigenvalue check of a pure X-type or Z-type operator on
// a tableau with one spare ancilla (the last qubit).
bool plus_one_eigenvalue(Tableau& t, const BitVector& support, bool x_type, Rng& rng) {
  size_t anc = t.num_qubits() - 1;
  bool det;
  bool outcome;
  if (x_type) {
    t.reset_x(anc, rng);
    for (size_t q = 0; q < support.size(); ++q)
      if (support.get(q)) t.cnot(anc, q);
    t.h(anc);
    det = t.is_deterministic_z(anc);
    outcome = t.measure_z(anc, rng);
    t.h(anc);
  } else {
    t.reset_z(anc, rng);
    for (size_t q = 0; q < support.size(); ++q)
      if (support.get(q)) t.cnot(q, anc);
    det = t.is_deterministic_z(anc);
    outcome = t.measure_z(anc, rng);
  }
  return det && !outcome;
}

// The output block at `offset` is exactly the given stabilizer state.
bool block_is_stabilized_by(const Circuit& circuit, uint32_t offset,
                            const std::vector<BitVector>& x_ops,
                            const std::vector<BitVector>& z_ops) {
  Circuit padded(circuit.num_qubits + 1);
  for (const Gate& g : circuit.gates) padded.append(g);
  Rng rng(1);
  Tableau t = run_tableau(padded, rng);
  auto lift = [&](const BitVector& op30) {
    BitVector v(padded.num_qubits);
    for (size_t q = 0; q < op30.size(); ++q)
      if (op30.get(q)) v.set(offset + q, true);
    return v;
  };
  for (const BitVector& op : x_ops)
    if (!plus_one_eigenvalue(t, lift(op), true, rng)) return false;
  for (const BitVector& op : z_ops)
    if (!plus_one_eigenvalue(t, lift(op), false, rng)) return false;
  return true;
}

std::vector<BitVector> rows_of(const BitMatrix& m) {
  std::vector<BitVector> out;
  for (size_t r = 0; r < m.rows(); ++r) out.push_back(m.row(r));
  return out;
}

void criterion_1() {
  Timer timer;
  const StabilizerCode& code = builtin_code();
  bool ok = !validate_code(code).has_value();
  ok = ok && gf2::mat_mul(code.sx, gf2::transpose(code.sz)).ones() == 0;
  ok = ok && gf2::mat_mul(code.lx, gf2::transpose(code.lz)) == BitMatrix::identity(6);
  const auto& supports = builtin_logical_supports();
  for (size_t i = 0; i < 6 && ok; ++i) {
    BitVector x(30), z(30);
    for (int q : supports[i]) x.set(q - 1, true);
    for (int q : supports[6 + i]) z.set(q - 1, true);
    ok = code.lx.row(i) == x && code.lz.row(i) == z;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "[[30,6,5]] conditions and verbatim logicals (%.2fs)",
                timer.s());
  report(1, "code validity", ok, buf);
}

void criterion_2() {
  Timer timer;
  const StabilizerCode& code = builtin_code();
  DistanceResult d4 = code_distance(code, 4);
  DistanceResult d5 = code_distance(code, 5);
  bool ok = !d4.exact && d5.exact && d5.distance == 5 && d5.witness.weight() == 5;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "no logical of weight <= 4, weight-5 witness found (%.2fs)", timer.s());
  report(2, "distance", ok, buf);
}

void criterion_3() {
  Timer timer;
  const StabilizerCode& code = builtin_code();
  auto sx = rows_of(code.sx);
  auto sz = rows_of(code.sz);
  auto lx = rows_of(code.lx);
  auto lz = rows_of(code.lz);
  auto x_plus = sx;
  x_plus.insert(x_plus.end(), lx.begin(), lx.end());
  auto z_zero = sz;
  z_zero.insert(z_zero.end(), lz.begin(), lz.end());

  Circuit raw = synth_plus_encoder(code);
  Circuit opt = overlap_optimize(code, raw);
  ReorderResult ord = reorder_for_low_weight(opt, code);
  EncoderProtocol ft = synth_ft_plus_encoder(code);
  EncoderProtocol ftz = synth_zero_encoder(code, true);
  EncoderProtocol z_plain = synth_zero_encoder(code, false);
  EncoderProtocol n9 = synth_naive_encoder(code, NaiveVariant::Copies9);
  EncoderProtocol n6 = synth_naive_encoder(code, NaiveVariant::Copies6);
  EncoderProtocol n4 = synth_naive_encoder(code, NaiveVariant::Copies4);

  bool counts = raw.cnot_count() == 108 && opt.cnot_count() <= 80;
  bool states = block_is_stabilized_by(raw, 0, x_plus, sz) &&
                block_is_stabilized_by(opt, 0, x_plus, sz) &&
                block_is_stabilized_by(ord.circuit, 0, x_plus, sz) &&
                block_is_stabilized_by(ft.circuit, ft.output_offset, x_plus, sz) &&
                block_is_stabilized_by(ftz.circuit, ftz.output_offset, sx, z_zero) &&
                block_is_stabilized_by(z_plain.circuit, 0, sx, z_zero) &&
                block_is_stabilized_by(n9.circuit, 0, x_plus, sz) &&
                block_is_stabilized_by(n6.circuit, 0, x_plus, sz) &&
                block_is_stabilized_by(n4.circuit, 0, x_plus, sz);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "raw %zu CNOTs, optimized %zu; all encoder outputs exact (%.2fs)",
                raw.cnot_count(), opt.cnot_count(), timer.s());
  report(3, "encoder correctness", counts && states, buf);
}

void criterion_4() {
  Timer timer;
  const StabilizerCode& code = builtin_code();
  LookupTable tx = build_lookup(code.sx, PauliBasis::X);
  LookupTable tz = build_lookup(code.sz, PauliBasis::Z);
  bool ok = LookupTable::kSyndromes == 4096;
  size_t checked = 0;
  for (int a = 0; a < 30 && ok; ++a) {
    for (int b = a; b < 30 && ok; ++b) {
      uint32_t e = (1u << a) | (1u << b);  // b == a gives the weight-1 case
      ok = extract_logicals(e, tx, code).logicals == 0 &&
           extract_logicals(e, tz, code).logicals == 0;
      ++checked;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "%zu weight<=2 patterns per basis corrected, 4096 entries (%.2fs)", checked,
                timer.s());
  report(4, "decoder exhaustive correctness", ok, buf);
}

void criterion_5() {
  Timer timer;
  std::vector<double> ps{0.01, 0.02, 0.03, 0.05};
  DecoderBenchmarkResult res = run_decoder_benchmark(ps, 1000000, 20250810);
  bool ok = res.fit.points_used == 4 && res.fit.exponent >= 2.5 && res.fit.exponent <= 3.3;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "fitted exponent %.3f +/- %.3f over 4x1e6 shots, window [2.5, 3.3] (%.1fs)",
                res.fit.exponent, res.fit.exponent_se, timer.s());
  report(5, "decoder scaling", ok, buf);
}

void criterion_6() {
  Timer timer;
  const StabilizerCode& code = builtin_code();
  size_t total_locs = 0, total_violations = 0;
  bool ok = true;
  auto run_audit = [&](const EncoderProtocol& proto) {
    FtAuditResult audit = audit_protocol_ft(proto, code, true);
    total_locs += audit.locations;
    total_violations += audit.violations.size();
    ok = ok && audit.violations.empty();
  };
  run_audit(synth_ft_plus_encoder(code));
  run_audit(synth_naive_encoder(code, NaiveVariant::Copies9));
  run_audit(synth_naive_encoder(code, NaiveVariant::Copies6));
  run_audit(synth_naive_encoder(code, NaiveVariant::Copies4));
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%zu fault locations across 4 protocols, %zu violations (%.1fs)", total_locs,
                total_violations, timer.s());
  report(6, "fault-tolerance contract", ok, buf);
}

void criterion_7() {
  Timer timer;
  const StabilizerCode& code = builtin_code();
  Circuit arb = synth_arbitrary_encoder(code);
  const auto& inputs = arbitrary_encoder_inputs();
  BitMatrix mzp = derive_mz_prime(code);
  Circuit plus = synth_plus_encoder(code);

  bool ok = true;
  for (uint32_t pattern = 0; pattern < 64 && ok; ++pattern) {
    Circuit c(30);
    for (size_t i = 0; i < 6; ++i) c.append(Gate::prep_x(inputs[i]));
    BitVector fx(30), fz(30);
    for (size_t i = 0; i < 6; ++i)
      if ((pattern >> i) & 1) fz.set(inputs[i], true);
    c.append(Gate::pauli(fx, fz));
    for (const Gate& g : arb.gates) c.append(g);

    Circuit ref(30);
    for (const Gate& g : plus.gates) ref.append(g);
    BitVector rfx(30), rfz(30);
    for (size_t i = 0; i < 6; ++i)
      if ((pattern >> i) & 1)
        for (size_t q = 0; q < 30; ++q)
          if (mzp.get(i, q)) rfz.flip(q);
    ref.append(Gate::pauli(rfx, rfz));

    Rng rng(pattern + 1);
    ok = extract_stabilizer_group(run_tableau(c, rng)) ==
         extract_stabilizer_group(run_tableau(ref, rng));
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "all 64 |±> product inputs verified (%.1fs)", timer.s());
  report(7, "arbitrary-state encoder", ok, buf);
}

void criterion_8() {
  Timer timer;
  std::vector<double> ps{3e-3, 4e-3, 5e-3, 6e-3};
  CnotBenchmarkResult res =
      run_logical_cnot_benchmark(ps, 100000, EncoderVariant::Proposed, 20250810);
  bool ok = res.fit.points_used >= 2 && res.fit.exponent >= 2.4 && res.fit.exponent <= 3.6;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "fitted exponent %.3f +/- %.3f over 4x1e5 shots in [3e-3, 6e-3], window "
                "[2.4, 3.6] (%.0fs)",
                res.fit.exponent, res.fit.exponent_se, timer.s());
  report(8, "logical-CNOT scaling", ok, buf);
}

void criterion_9() {
  Timer timer;
  const uint64_t blocks = 3000;
  OverheadResult prop = estimate_qubit_overhead(EncoderVariant::Proposed, 1e-3, blocks, 4);
  OverheadResult n9 = estimate_qubit_overhead(EncoderVariant::Naive9, 1e-3, blocks, 4);
  OverheadResult n6 = estimate_qubit_overhead(EncoderVariant::Naive6, 1e-3, blocks, 4);
  OverheadResult n4 = estimate_qubit_overhead(EncoderVariant::Naive4, 1e-3, blocks, 4);
  bool ok = prop.expected_qubits < n4.expected_qubits &&
            prop.expected_qubits < n6.expected_qubits &&
            prop.expected_qubits < n9.expected_qubits;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "expected qubits: proposed %.1f vs 4copy %.1f, 6copy %.1f, 9copy %.1f (%.1fs)",
                prop.expected_qubits, n4.expected_qubits, n6.expected_qubits,
                n9.expected_qubits, timer.s());
  report(9, "overhead ordering", ok, buf);
}

void criterion_10() {
  Timer timer;
  int saved = omp_get_max_threads();
  std::vector<double> dec_ps{0.01, 0.03};
  omp_set_num_threads(1);
  std::string dec1 = sweep_to_csv(run_decoder_benchmark(dec_ps, 200000, 77).points);
  omp_set_num_threads(3);
  std::string dec3 = sweep_to_csv(run_decoder_benchmark(dec_ps, 200000, 77).points);

  std::vector<double> cnot_ps{8e-3};
  omp_set_num_threads(1);
  std::string cn1 = sweep_to_csv(
      run_logical_cnot_benchmark(cnot_ps, 600, EncoderVariant::Proposed, 77).points);
  omp_set_num_threads(4);
  std::string cn4 = sweep_to_csv(
      run_logical_cnot_benchmark(cnot_ps, 600, EncoderVariant::Proposed, 77).points);
  omp_set_num_threads(saved);

  bool ok = dec1 == dec3 && cn1 == cn4;
  char buf[128];
  std::snprintf(buf, sizeof buf, "CSV byte-identical across 1/3/4 workers (%.1fs)",
                timer.s());
  report(10, "determinism", ok, buf);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_only = std::atoi(argv[1]);
  if (should_run(1)) criterion_1();
  if (should_run(2)) criterion_2();
  if (should_run(3)) criterion_3();
  if (should_run(4)) criterion_4();
  if (should_run(5)) criterion_5();
  if (should_run(6)) criterion_6();
  if (should_run(7)) criterion_7();
  if (should_run(8)) criterion_8();
  if (should_run(9)) criterion_9();
  if (should_run(10)) criterion_10();
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return 1;
}
