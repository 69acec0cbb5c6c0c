#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sdc/decoder.hpp"
#include "sdc/frame.hpp"
#include "sdc/synth.hpp"

namespace sdc {

struct SweepPoint {
  double p = 0;            // p_flip or p_circ
  uint64_t shots = 0;
  uint64_t failures = 0;
  uint64_t attempts = 0;      // encoder attempts, where applicable
  uint64_t acceptances = 0;   // accepted encoder attempts
  double rate = 0;            // quantity the power-law fit uses
};

struct PowerLawFit {
  double exponent = 0;
  double prefactor = 0;
  double exponent_se = 0;
  size_t points_used = 0;
};

struct WilsonInterval {
  double lo = 0, hi = 0;
};

WilsonInterval wilson_interval(uint64_t failures, uint64_t shots);

// Unweighted least squares on (log p, log rate). Uses points with at least
// 10 failures whose Wilson interval spans a factor of at most 3; throws if
// fewer than two qualify.
PowerLawFit fit_power_law(const std::vector<SweepPoint>& points);

using Heartbeat = std::function<void(size_t point, size_t npoints, uint64_t done, uint64_t total)>;

// Phase-flip channel + ideal transversal X measurement + lookup decoding
// on the error-free logical all-plus state. Failure: any decoded logical
// value flips.
struct DecoderBenchmarkResult {
  std::vector<SweepPoint> points;
  PowerLawFit fit;
};

DecoderBenchmarkResult run_decoder_benchmark(const std::vector<double>& p_flips,
                                             uint64_t shots, uint64_t seed,
                                             const Heartbeat& heartbeat = nullptr);
// Single-threaded reference with identical per-shot substreams; results
// must match the parallel kernel bit for bit.
DecoderBenchmarkResult run_decoder_benchmark_serial(const std::vector<double>& p_flips,
                                                    uint64_t shots, uint64_t seed);

enum class EncoderVariant { Proposed, Naive9, Naive6, Naive4 };
EncoderVariant encoder_variant_from_string(const std::string& s);
std::string to_string(EncoderVariant v);

// Logical-CNOT benchmark: two ideal logical Bell pairs, ten rounds of noisy
// transversal CNOT followed by error-correcting teleportation on both data
// blocks, noiseless disentangling, ideal measurement, lookup decoding.
// rate holds p_CNOT = 1 - (1 - p_1)^{1/6}, p_1 = 1 - (1 - p_10)^{1/10}.
struct CnotBenchmarkResult {
  std::vector<SweepPoint> points;
  PowerLawFit fit;
  EncoderVariant variant;
};

CnotBenchmarkResult run_logical_cnot_benchmark(const std::vector<double>& p_circs,
                                               uint64_t shots, EncoderVariant variant,
                                               uint64_t seed,
                                               const Heartbeat& heartbeat = nullptr);

double p_cnot_from_p10(double p10);

// The teleportation harness behind the benchmark, usable directly: fixed
// register layout (data registers, Bell slots, encoder arena) inside one
// frame simulator, lookup decoding, classical logical Pauli frames.
class EctHarness {
 public:
  static constexpr uint32_t kA = 0, kAp = 30, kB = 60, kBp = 90;
  static constexpr uint32_t kBell1 = 120, kBell2 = 150, kArena = 180;

  EctHarness(EncoderVariant v, const StabilizerCode& c);

  uint32_t total_qubits() const { return total_; }

  // Deterministic single-fault injection: noisy primitive number `site`
  // applies `pauli` (1..15 for CNOTs, X or Z code for preps and
  // measurements) instead of sampling.
  void arm_fault(uint64_t site, uint8_t pauli) {
    fault_site_ = site;
    fault_pauli_ = pauli;
    site_counter_ = 0;
  }
  void disarm_fault() { fault_site_ = UINT64_MAX; }
  uint64_t sites_seen() const { return site_counter_; }
  // When set, every noisy primitive appends its allowed fault count
  // (15 for CNOTs, 1 otherwise) during the next run.
  void record_site_kinds(std::vector<uint8_t>* sink) { site_kinds_ = sink; }

  // Error-correcting teleportation of the 30-qubit logical register at
  // `home`: prepares a fresh verified Bell pair, Bell-measures it with the
  // input, folds the decoded byproducts into the register's logical frame,
  // and moves the register onto the surviving half. Encoder rejections
  // restart the preparation; the return value counts attempts.
  uint64_t ect(FrameSimulator& sim, uint32_t home, uint8_t& frame_x, uint8_t& frame_z,
               uint64_t threshold, Rng& rng, std::vector<uint8_t>& scratch) const;

  // One full benchmark shot (10 rounds of CNOT + 2 ECTs, disentangle,
  // ideal measurement, consistency check). True on failure.
  bool shot(FrameSimulator& sim, uint64_t threshold, Rng& rng, uint64_t& attempts,
            std::vector<uint8_t>& scratch) const;

  uint8_t decode_x(uint32_t mask) const;
  uint8_t decode_z(uint32_t mask) const;

  const EncoderProtocol& plus_protocol() const { return proto_plus_; }
  const EncoderProtocol& zero_protocol() const { return proto_zero_; }

 private:
  friend struct EctAuditAccess;
  uint64_t run_until_accept(FrameSimulator& sim, const EncoderProtocol& proto,
                            uint64_t threshold, Rng& rng, std::vector<uint8_t>& scratch) const;
  void move_block(FrameSimulator& sim, uint32_t from, uint32_t to) const;
  void noisy_cnot(FrameSimulator& sim, uint32_t c, uint32_t t, uint64_t th, Rng& rng) const;
  bool noisy_meas_x(FrameSimulator& sim, uint32_t q, uint64_t th, Rng& rng) const;
  bool noisy_meas_z(FrameSimulator& sim, uint32_t q, uint64_t th, Rng& rng) const;
  void noisy_prep_x(FrameSimulator& sim, uint32_t q, uint64_t th, Rng& rng) const;
  void noisy_prep_z(FrameSimulator& sim, uint32_t q, uint64_t th, Rng& rng) const;
  void run_protocol_gates(FrameSimulator& sim, const Circuit& c, uint64_t th, Rng& rng,
                          std::vector<uint8_t>& out) const;

  const StabilizerCode& code_;
  EncoderProtocol proto_plus_, proto_zero_;
  LookupTable table_x_, table_z_;
  std::vector<uint32_t> lx_masks_, lz_masks_;
  uint32_t total_ = 0;
  mutable uint64_t site_counter_ = 0;
  mutable uint64_t fault_site_ = UINT64_MAX;
  uint8_t fault_pauli_ = 0;
  std::vector<uint8_t>* site_kinds_ = nullptr;
};

// Exhaustive single-fault audit of one ECT gadget (Bell preparation,
// Bell measurement, decoding, frame update): every noisy primitive takes
// every allowed Pauli once, noiselessly otherwise, and the teleported
// register must come out with no effective logical error in either basis.
struct EctAuditResult {
  uint64_t sites = 0;
  uint64_t faults = 0;
  uint64_t failures = 0;
};

EctAuditResult audit_ect_single_faults(EncoderVariant variant);

// Expected physical qubits consumed per accepted logical all-zero block,
// counting every restart's data and verification ancillas.
struct OverheadResult {
  EncoderVariant variant;
  double p_circ = 0;
  uint64_t blocks = 0;            // accepted blocks produced
  uint64_t attempts = 0;
  uint64_t qubits_consumed = 0;
  double expected_qubits = 0;     // qubits_consumed / blocks
};

OverheadResult estimate_qubit_overhead(EncoderVariant variant, double p_circ,
                                       uint64_t blocks, uint64_t seed);

// CSV rows: p,shots,failures,rate,ci_lo,ci_hi (ci on failures/shots).
std::string sweep_to_csv(const std::vector<SweepPoint>& points);

}  // namespace sdc
