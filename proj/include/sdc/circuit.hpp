#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdc/gf2.hpp"

namespace sdc {

enum class GateKind : uint8_t {
  PrepZ,   // reset to |0>
  PrepX,   // reset to |+>
  Hadamard,
  Cnot,    // a = control, b = target
  Swap,
  MeasZ,
  MeasX,
  Pauli,   // explicit Pauli fault, given by x/z masks over the register
};

struct Gate {
  GateKind kind;
  uint32_t a = 0;
  uint32_t b = 0;
  gf2::BitVector fx, fz;  // Pauli masks, only for GateKind::Pauli

  static Gate prep_z(uint32_t q) { return {GateKind::PrepZ, q}; }
  static Gate prep_x(uint32_t q) { return {GateKind::PrepX, q}; }
  static Gate h(uint32_t q) { return {GateKind::Hadamard, q}; }
  static Gate cnot(uint32_t c, uint32_t t) { return {GateKind::Cnot, c, t}; }
  static Gate swap(uint32_t a, uint32_t b) { return {GateKind::Swap, a, b}; }
  static Gate meas_z(uint32_t q) { return {GateKind::MeasZ, q}; }
  static Gate meas_x(uint32_t q) { return {GateKind::MeasX, q}; }
  static Gate pauli(gf2::BitVector fx, gf2::BitVector fz);
};

// Named contiguous qubit range, e.g. "block1" or "ancilla".
struct BlockLabel {
  std::string name;
  uint32_t first = 0;  // 0-based, inclusive
  uint32_t last = 0;
};

struct Circuit {
  uint32_t num_qubits = 0;
  std::vector<Gate> gates;
  std::vector<BlockLabel> labels;

  explicit Circuit(uint32_t n = 0) : num_qubits(n) {}

  void append(const Gate& g);
  size_t cnot_count() const;
  size_t measurement_count() const;

  // One gate per line, `KIND q1 [q2]`, 1-based indices, '#' comments.
  std::string to_text() const;
  static Circuit from_text(const std::string& text);
};

// Appends CNOT(a_i, b_i) for matching positions of two equal-size,
// disjoint qubit ranges.
void transversal_cnot(Circuit& c, uint32_t block_a, uint32_t block_b, uint32_t len);

// Transversal Hadamards over a 30-qubit block followed by SWAP(q, q+15);
// exchanges the X and Z stabilizer sets and swaps logical qubits Q, Q+3.
void logical_hadamard_layer(Circuit& c, uint32_t block_first);

// One fault location per CNOT x 15 two-qubit Paulis, bit-flip after PrepZ,
// bit-flip before MeasZ, phase-flip after PrepX, phase-flip before MeasX.
//
// For CNOTs, pauli = 4*p_control + p_target with I=0, X=1, Y=2, Z=3.
// For the single-qubit kinds, pauli is 1 (X) or 3 (Z) on the gate's qubit.
struct FaultLocation {
  uint32_t gate_index = 0;
  uint8_t pauli = 0;
};

std::vector<FaultLocation> enumerate_fault_locations(const Circuit& c);

// The x/z masks a fault location applies, sized to the circuit register.
void fault_masks(const Circuit& c, const FaultLocation& loc,
                 gf2::BitVector& fx, gf2::BitVector& fz);

}  // namespace sdc
