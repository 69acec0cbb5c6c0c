#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sdc/circuit.hpp"
#include "sdc/gf2.hpp"
#include "sdc/rng.hpp"

namespace sdc {

// Circuit-level noise: every CNOT is followed by one of the 15 non-identity
// two-qubit Paulis with total probability p_circ; |0> preparations are
// followed by a bit-flip and Z measurements preceded by one, each with
// probability p_circ; |+> preparations and X measurements carry the
// conjugated phase-flip. Hadamard and SWAP are noiseless.
struct NoiseModel {
  double p_circ = 0.0;

  uint64_t threshold() const { return probability_threshold(p_circ); }
};

struct ShotOutcome {
  std::vector<uint8_t> bits;          // measurement outcomes in circuit order
  std::vector<uint8_t> accept_flags;  // one per verification stage, when used
};

// Pauli-frame simulator. Outcomes are reported relative to the all-zeros
// reference sample, which is a valid noiseless sample for every circuit in
// this gate set (no gate introduces a negative stabilizer sign). Faults and
// noise live in per-qubit X/Z masks; measurement bits are the frame flips.
class FrameSimulator {
public:
  explicit FrameSimulator(uint32_t num_qubits);

  void reset_frames();

  uint32_t num_qubits() const { return n_; }

  void prep_z(uint32_t q) { clear(q); }
  void prep_x(uint32_t q) { clear(q); }
  void h(uint32_t q);
  void cnot(uint32_t c, uint32_t t);
  void swap(uint32_t a, uint32_t b);
  bool meas_z(uint32_t q, Rng& rng);  // randomizes the Z frame afterwards
  bool meas_x(uint32_t q, Rng& rng);
  void inject(uint32_t q, bool x, bool z);

  bool frame_x(uint32_t q) const { return get(fx_, q); }
  bool frame_z(uint32_t q) const { return get(fz_, q); }

  // Executes a circuit whose qubits map to [offset, offset + c.num_qubits).
  // Measurement bits are appended to outcomes. A null rng runs noiselessly
  // and without frame randomization (used for deterministic fault audits).
  void run_circuit(const Circuit& c, uint32_t offset, const NoiseModel& noise,
                   Rng* rng, std::vector<uint8_t>* outcomes);
  void apply_gate(const Gate& g, uint32_t offset, uint64_t threshold,
                  Rng* rng, std::vector<uint8_t>* outcomes);

  // Noise helpers shared with the experiment harnesses.
  void noisy_cnot(uint32_t c, uint32_t t, uint64_t threshold, Rng& rng);
  bool noisy_meas_z(uint32_t q, uint64_t threshold, Rng& rng);
  bool noisy_meas_x(uint32_t q, uint64_t threshold, Rng& rng);
  void noisy_prep_z(uint32_t q, uint64_t threshold, Rng& rng);
  void noisy_prep_x(uint32_t q, uint64_t threshold, Rng& rng);

private:
  static bool get(const std::vector<uint64_t>& m, uint32_t q) {
    return (m[q >> 6] >> (q & 63)) & 1;
  }
  static void flip(std::vector<uint64_t>& m, uint32_t q) {
    m[q >> 6] ^= uint64_t(1) << (q & 63);
  }
  static void assign(std::vector<uint64_t>& m, uint32_t q, bool v) {
    uint64_t bit = uint64_t(1) << (q & 63);
    if (v) m[q >> 6] |= bit; else m[q >> 6] &= ~bit;
  }
  void clear(uint32_t q) {
    assign(fx_, q, false);
    assign(fz_, q, false);
  }

  uint32_t n_;
  std::vector<uint64_t> fx_, fz_;
};

// Full noise-model run of a standalone circuit, per the module contract:
// identical (circuit, noise, seed) triples give identical outcomes.
ShotOutcome run(const Circuit& c, const NoiseModel& noise, uint64_t seed);

// Noiseless run with one deterministic Pauli fault injected at `loc`.
// Measurement outcomes consumed as parities of deterministic noiseless
// bits are exact; raw bits of genuinely random measurements are reported
// relative to the all-zeros branch.
ShotOutcome run_with_injected_fault(const Circuit& c, const FaultLocation& loc);

}  // namespace sdc
