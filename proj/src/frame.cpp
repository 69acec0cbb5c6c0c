#include "sdc/frame.hpp"

#include <stdexcept>

namespace sdc {

FrameSimulator::FrameSimulator(uint32_t num_qubits)
    : n_(num_qubits), fx_(gf2::words_for(num_qubits), 0), fz_(gf2::words_for(num_qubits), 0) {}

void FrameSimulator::reset_frames() {
  std::fill(fx_.begin(), fx_.end(), 0);
  std::fill(fz_.begin(), fz_.end(), 0);
}

void FrameSimulator::h(uint32_t q) {
  bool x = get(fx_, q), z = get(fz_, q);
  assign(fx_, q, z);
  assign(fz_, q, x);
}

void FrameSimulator::cnot(uint32_t c, uint32_t t) {
  if (get(fx_, c)) flip(fx_, t);
  if (get(fz_, t)) flip(fz_, c);
}

void FrameSimulator::swap(uint32_t a, uint32_t b) {
  bool xa = get(fx_, a), za = get(fz_, a);
  assign(fx_, a, get(fx_, b));
  assign(fz_, a, get(fz_, b));
  assign(fx_, b, xa);
  assign(fz_, b, za);
}

bool FrameSimulator::meas_z(uint32_t q, Rng& rng) {
  bool out = get(fx_, q);
  assign(fz_, q, rng.bit());  // measurement destroys conjugate-basis info
  return out;
}

bool FrameSimulator::meas_x(uint32_t q, Rng& rng) {
  bool out = get(fz_, q);
  assign(fx_, q, rng.bit());
  return out;
}

void FrameSimulator::inject(uint32_t q, bool x, bool z) {
  if (x) flip(fx_, q);
  if (z) flip(fz_, q);
}

void FrameSimulator::noisy_cnot(uint32_t c, uint32_t t, uint64_t threshold, Rng& rng) {
  cnot(c, t);
  if (rng.bernoulli_threshold(threshold)) {
    uint64_t p = rng.below(15) + 1;  // 1..15, skipping identity
    uint8_t pc = static_cast<uint8_t>(p >> 2);
    uint8_t pt = static_cast<uint8_t>(p & 3);
    inject(c, pc == 1 || pc == 2, pc == 3 || pc == 2);
    inject(t, pt == 1 || pt == 2, pt == 3 || pt == 2);
  }
}

bool FrameSimulator::noisy_meas_z(uint32_t q, uint64_t threshold, Rng& rng) {
  if (rng.bernoulli_threshold(threshold)) flip(fx_, q);
  return meas_z(q, rng);
}

bool FrameSimulator::noisy_meas_x(uint32_t q, uint64_t threshold, Rng& rng) {
  if (rng.bernoulli_threshold(threshold)) flip(fz_, q);
  return meas_x(q, rng);
}

void FrameSimulator::noisy_prep_z(uint32_t q, uint64_t threshold, Rng& rng) {
  prep_z(q);
  if (rng.bernoulli_threshold(threshold)) flip(fx_, q);
}

void FrameSimulator::noisy_prep_x(uint32_t q, uint64_t threshold, Rng& rng) {
  prep_x(q);
  if (rng.bernoulli_threshold(threshold)) flip(fz_, q);
}

void FrameSimulator::apply_gate(const Gate& g, uint32_t offset, uint64_t threshold,
                                Rng* rng, std::vector<uint8_t>* outcomes) {
  switch (g.kind) {
    case GateKind::PrepZ:
      if (rng) noisy_prep_z(offset + g.a, threshold, *rng);
      else prep_z(offset + g.a);
      break;
    case GateKind::PrepX:
      if (rng) noisy_prep_x(offset + g.a, threshold, *rng);
      else prep_x(offset + g.a);
      break;
    case GateKind::Hadamard:
      h(offset + g.a);
      break;
    case GateKind::Cnot:
      if (rng) noisy_cnot(offset + g.a, offset + g.b, threshold, *rng);
      else cnot(offset + g.a, offset + g.b);
      break;
    case GateKind::Swap:
      swap(offset + g.a, offset + g.b);
      break;
    case GateKind::MeasZ: {
      bool b;
      if (rng) b = noisy_meas_z(offset + g.a, threshold, *rng);
      else b = get(fx_, offset + g.a);
      if (outcomes) outcomes->push_back(b);
      break;
    }
    case GateKind::MeasX: {
      bool b;
      if (rng) b = noisy_meas_x(offset + g.a, threshold, *rng);
      else b = get(fz_, offset + g.a);
      if (outcomes) outcomes->push_back(b);
      break;
    }
    case GateKind::Pauli:
      for (uint32_t q = 0; q < g.fx.size(); ++q)
        inject(offset + q, g.fx.get(q), g.fz.get(q));
      break;
  }
}

void FrameSimulator::run_circuit(const Circuit& c, uint32_t offset, const NoiseModel& noise,
                                 Rng* rng, std::vector<uint8_t>* outcomes) {
  if (offset + c.num_qubits > n_)
    throw std::invalid_argument("run_circuit: register does not fit");
  const uint64_t th = rng ? noise.threshold() : 0;
  for (const Gate& g : c.gates) apply_gate(g, offset, th, rng, outcomes);
}

ShotOutcome run(const Circuit& c, const NoiseModel& noise, uint64_t seed) {
  FrameSimulator sim(c.num_qubits);
  Rng rng(seed);
  ShotOutcome out;
  sim.run_circuit(c, 0, noise, &rng, &out.bits);
  return out;
}

ShotOutcome run_with_injected_fault(const Circuit& c, const FaultLocation& loc) {
  FrameSimulator sim(c.num_qubits);
  ShotOutcome out;
  gf2::BitVector fx, fz;
  fault_masks(c, loc, fx, fz);
  const Gate& fg = c.gates[loc.gate_index];
  bool before = fg.kind == GateKind::MeasZ || fg.kind == GateKind::MeasX;
  auto inject_all = [&] {
    for (uint32_t q = 0; q < c.num_qubits; ++q) sim.inject(q, fx.get(q), fz.get(q));
  };
  for (uint32_t i = 0; i < c.gates.size(); ++i) {
    if (before && i == loc.gate_index) inject_all();
    sim.apply_gate(c.gates[i], 0, 0, nullptr, &out.bits);
    if (!before && i == loc.gate_index) inject_all();
  }
  return out;
}

}  // namespace sdc
