#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdc/circuit.hpp"
#include "sdc/code.hpp"

namespace sdc {

// Plus-state encoder in the direct form: |0> on the pivot qubits of
// rref(sz), |+> on the rest, one CNOT per off-pivot 1-entry with the free
// qubit as control and the pivot-row qubit as target.
Circuit synth_plus_encoder(const StabilizerCode& code);

// Overlap-method reduction of the direct encoder: repeatedly merges pairs
// of CNOT fan-ins that share two or more target rows into a single
// free-to-free CNOT. Greedy, largest overlap first, lexicographic ties,
// with first-merge refinement over the top 8 candidate pairs. Falls back
// to `raw` if no merge helps. The output prepares the identical state.
Circuit overlap_optimize(const StabilizerCode& code, const Circuit& raw);

struct ReorderResult {
  Circuit circuit;
  // Gates before the boundary keep every instantaneous stabilizer
  // generator below weight 4; correlated CNOT errors there act like
  // single-qubit errors.
  size_t boundary = 0;
};

// Permutes CNOTs (preserving order among non-commuting pairs, hence the
// final state) to stretch the low-weight early stage as far as possible.
ReorderResult reorder_for_low_weight(const Circuit& c, const StabilizerCode& code);

struct HarmfulFault {
  FaultLocation loc;
  gf2::BitVector residual;      // reduced modulo the stabilizer row space
  size_t weight = 0;
  int detected_by = -1;         // measured-operator index, filled by planners
};

struct FaultAuditReport {
  PauliBasis basis = PauliBasis::Z;
  size_t total_locations = 0;
  std::vector<HarmfulFault> harmful;
};

// Propagates every single-fault location to the end of the circuit,
// projects onto the chosen error type, reduces modulo the matching
// stabilizer row space, and reports everything of weight >= 2.
FaultAuditReport audit_single_faults(const Circuit& c, const StabilizerCode& code,
                                     PauliBasis basis);

struct VerificationPlan {
  std::vector<gf2::BitVector> measured_operators;  // X-type supports
  size_t ancilla_count = 0;                        // == operator count
  // accept rule: every verification outcome is zero
};

struct VerificationResult {
  Circuit circuit;  // input circuit plus ancilla measurement blocks
  VerificationPlan plan;
};

// Chooses a minimum-cardinality set of logical-X-times-stabilizer
// operators (weight capped) such that every harmful Z residual
// anticommutes with at least one, and appends one ancilla-mediated
// measurement per operator.
VerificationResult synth_verification(const Circuit& c, const StabilizerCode& code,
                                      const FaultAuditReport& report,
                                      size_t weight_cap = 11);

// Accept condition: XOR of the listed measurement-outcome indices is zero.
struct ParityCheck {
  std::vector<uint32_t> bits;
};

// A complete state-preparation protocol: flat circuit, acceptance checks
// over its measurement stream, location of the 30-qubit output block, and
// the physical qubits consumed per attempt (restarts pay it again).
struct EncoderProtocol {
  std::string name;
  Circuit circuit;
  std::vector<ParityCheck> checks;
  uint32_t output_offset = 0;
  uint32_t qubits_per_attempt = 0;
  VerificationPlan plan;
};

bool protocol_accepts(const EncoderProtocol& p, const std::vector<uint8_t>& outcomes);

// Two verified blocks, transversal CNOT, Z measurement of the second;
// accepted when both verification stages and the block-2 syndrome are
// trivial. Output is block 1.
EncoderProtocol synth_ft_plus_encoder(const StabilizerCode& code);

enum class NaiveVariant { Copies9, Copies6, Copies4 };

// Multi-copy verification cascades built from the optimized encoder.
// The 4-copy form Z-checks the data block against a raw copy and X-checks
// it against a Z-verified copy; 6 and 9 upgrade the checking copies to
// fully verified ones.
EncoderProtocol synth_naive_encoder(const StabilizerCode& code, NaiveVariant variant);

// Plus-state protocol followed by the transversal-Hadamard/SWAP layer on
// the output block. ft selects the proposed protocol vs the bare
// optimized encoder.
EncoderProtocol synth_zero_encoder(const StabilizerCode& code, bool ft);

// Logical-Z matrix in the form (O_{3,12} M' ; O_{3,15} M), obtained from
// lz by eliminating the first 12 columns of its upper rows with rref(sz).
gf2::BitMatrix derive_mz_prime(const StabilizerCode& code);

// Direct-form plus encoder with qubits {13,14,15,28,29,30} left as open
// inputs and the M'_Z-controlled CNOT layer inserted between the
// preparation and encoding layers.
Circuit synth_arbitrary_encoder(const StabilizerCode& code);
const std::vector<uint32_t>& arbitrary_encoder_inputs();  // 0-based

// Final error masks of one injected fault, via noiseless propagation.
void propagate_fault(const Circuit& c, const FaultLocation& loc,
                     gf2::BitVector& fx, gf2::BitVector& fz,
                     std::vector<uint8_t>* outcome_flips = nullptr);

// Exhaustive single-fault check of a protocol: for every location, if the
// run is accepted, the residual on the output block must be equivalent to
// a Pauli of weight <= 1 modulo the output state's stabilizer group.
struct FtAuditResult {
  size_t locations = 0;
  size_t accepted = 0;
  size_t rejected = 0;
  std::vector<FaultLocation> violations;
};

FtAuditResult audit_protocol_ft(const EncoderProtocol& proto, const StabilizerCode& code,
                                bool output_is_plus_state);

}  // namespace sdc
