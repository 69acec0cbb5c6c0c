#include "sdc/experiments.hpp"

#include <omp.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sdc/frame.hpp"

namespace sdc {

WilsonInterval wilson_interval(uint64_t failures, uint64_t shots) {
  if (shots == 0) return {0, 1};
  const double z = 1.96;
  double n = static_cast<double>(shots);
  double p = static_cast<double>(failures) / n;
  double z2 = z * z;
  double denom = 1 + z2 / n;
  double center = (p + z2 / (2 * n)) / denom;
  double half = z / denom * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

PowerLawFit fit_power_law(const std::vector<SweepPoint>& points) {
  std::vector<std::pair<double, double>> xy;
  for (const SweepPoint& pt : points) {
    if (pt.failures < 10 || pt.rate <= 0) continue;
    WilsonInterval ci = wilson_interval(pt.failures, pt.shots);
    if (ci.lo <= 0 || ci.hi / ci.lo > 3) continue;
    xy.emplace_back(std::log(pt.p), std::log(pt.rate));
  }
  if (xy.size() < 2)
    throw std::runtime_error("fit_power_law: fewer than two usable points");
  double sx = 0, sy = 0;
  for (auto [x, y] : xy) {
    sx += x;
    sy += y;
  }
  double mx = sx / xy.size(), my = sy / xy.size();
  double sxx = 0, sxy = 0;
  for (auto [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  fit.points_used = xy.size();
  if (xy.size() > 2) {
    double ssr = 0;
    for (auto [x, y] : xy) {
      double r = y - (my + fit.exponent * (x - mx));
      ssr += r * r;
    }
    fit.exponent_se = std::sqrt(ssr / (xy.size() - 2) / sxx);
  }
  return fit;
}

double p_cnot_from_p10(double p10) {
  double p1 = 1.0 - std::pow(1.0 - p10, 0.1);
  return 1.0 - std::pow(1.0 - p1, 1.0 / 6.0);
}

std::string sweep_to_csv(const std::vector<SweepPoint>& points) {
  std::string out = "p,shots,failures,rate,ci_lo,ci_hi\n";
  char buf[256];
  for (const SweepPoint& pt : points) {
    WilsonInterval ci = wilson_interval(pt.failures, pt.shots);
    std::snprintf(buf, sizeof buf, "%.10g,%llu,%llu,%.10g,%.10g,%.10g\n", pt.p,
                  static_cast<unsigned long long>(pt.shots),
                  static_cast<unsigned long long>(pt.failures), pt.rate, ci.lo, ci.hi);
    out += buf;
  }
  return out;
}

EncoderVariant encoder_variant_from_string(const std::string& s) {
  if (s == "proposed") return EncoderVariant::Proposed;
  if (s == "9copy" || s == "naive9") return EncoderVariant::Naive9;
  if (s == "6copy" || s == "naive6") return EncoderVariant::Naive6;
  if (s == "4copy" || s == "naive4") return EncoderVariant::Naive4;
  throw std::invalid_argument("unknown encoder variant: " + s);
}

std::string to_string(EncoderVariant v) {
  switch (v) {
    case EncoderVariant::Proposed: return "proposed";
    case EncoderVariant::Naive9: return "9copy";
    case EncoderVariant::Naive6: return "6copy";
    case EncoderVariant::Naive4: return "4copy";
  }
  return "?";
}

// ---- decoder benchmark ------------------------------------------------------

namespace {

struct DecoderKernel {
  const LookupTable* table;
  std::vector<uint32_t> lx_masks;

  bool shot_fails(uint64_t threshold, Rng& rng) const {
    uint32_t zmask = 0;
    for (int q = 0; q < 30; ++q)
      if (rng.bernoulli_threshold(threshold)) zmask |= uint32_t(1) << q;
    uint16_t syn = table->syndrome_of(zmask);
    uint32_t corrected = zmask ^ table->entry(syn);
    for (uint32_t m : lx_masks)
      if (std::popcount(corrected & m) & 1) return true;
    return false;
  }
};

DecoderBenchmarkResult decoder_benchmark_impl(const std::vector<double>& p_flips,
                                              uint64_t shots, uint64_t seed, bool parallel,
                                              const Heartbeat& heartbeat) {
  const StabilizerCode& code = builtin_code();
  LookupTable table = build_lookup(code.sx, PauliBasis::X);
  DecoderKernel kernel{&table, row_masks_30(code.lx)};

  DecoderBenchmarkResult res;
  for (size_t pi = 0; pi < p_flips.size(); ++pi) {
    const uint64_t threshold = probability_threshold(p_flips[pi]);
    uint64_t failures = 0;
    const uint64_t chunk = 1 << 18;
    for (uint64_t base = 0; base < shots; base += chunk) {
      uint64_t hi = std::min(shots, base + chunk);
      uint64_t local = 0;
#pragma omp parallel for reduction(+ : local) schedule(static) if (parallel)
      for (uint64_t s = base; s < hi; ++s) {
        Rng rng = Rng::for_shot(seed, pi, s);
        local += kernel.shot_fails(threshold, rng);
      }
      failures += local;
      if (heartbeat) heartbeat(pi, p_flips.size(), hi, shots);
    }
    SweepPoint pt;
    pt.p = p_flips[pi];
    pt.shots = shots;
    pt.failures = failures;
    pt.rate = shots ? static_cast<double>(failures) / static_cast<double>(shots) : 0;
    res.points.push_back(pt);
  }
  try {
    res.fit = fit_power_law(res.points);
  } catch (const std::exception&) {
    res.fit = {};
  }
  return res;
}

EncoderProtocol plus_protocol_for(EncoderVariant v, const StabilizerCode& code) {
  switch (v) {
    case EncoderVariant::Proposed: return synth_ft_plus_encoder(code);
    case EncoderVariant::Naive9: return synth_naive_encoder(code, NaiveVariant::Copies9);
    case EncoderVariant::Naive6: return synth_naive_encoder(code, NaiveVariant::Copies6);
    case EncoderVariant::Naive4: return synth_naive_encoder(code, NaiveVariant::Copies4);
  }
  throw std::logic_error("unreachable");
}

EncoderProtocol zero_protocol_for(EncoderVariant v, const StabilizerCode& code) {
  if (v == EncoderVariant::Proposed) return synth_zero_encoder(code, true);
  EncoderProtocol proto = plus_protocol_for(v, code);
  logical_hadamard_layer(proto.circuit, proto.output_offset);
  proto.name += "-zero";
  return proto;
}

}  // namespace

DecoderBenchmarkResult run_decoder_benchmark(const std::vector<double>& p_flips,
                                             uint64_t shots, uint64_t seed,
                                             const Heartbeat& heartbeat) {
  return decoder_benchmark_impl(p_flips, shots, seed, true, heartbeat);
}

DecoderBenchmarkResult run_decoder_benchmark_serial(const std::vector<double>& p_flips,
                                                    uint64_t shots, uint64_t seed) {
  return decoder_benchmark_impl(p_flips, shots, seed, false, nullptr);
}

// ---- error-correcting teleportation harness ---------------------------------

EctHarness::EctHarness(EncoderVariant v, const StabilizerCode& c)
    : code_(c),
      proto_plus_(plus_protocol_for(v, c)),
      proto_zero_(zero_protocol_for(v, c)),
      table_x_(build_lookup(c.sx, PauliBasis::X)),
      table_z_(build_lookup(c.sz, PauliBasis::Z)),
      lx_masks_(row_masks_30(c.lx)),
      lz_masks_(row_masks_30(c.lz)) {
  total_ = kArena + std::max(proto_plus_.circuit.num_qubits, proto_zero_.circuit.num_qubits);
}

void EctHarness::noisy_cnot(FrameSimulator& sim, uint32_t c, uint32_t t, uint64_t th,
                            Rng& rng) const {
  sim.cnot(c, t);
  if (site_kinds_) site_kinds_->push_back(15);
  uint64_t site = site_counter_++;
  uint8_t p = 0;
  if (site == fault_site_) p = fault_pauli_;
  else if (rng.bernoulli_threshold(th)) p = static_cast<uint8_t>(rng.below(15) + 1);
  if (p) {
    uint8_t pc = p >> 2, pt = p & 3;
    sim.inject(c, pc == 1 || pc == 2, pc == 3 || pc == 2);
    sim.inject(t, pt == 1 || pt == 2, pt == 3 || pt == 2);
  }
}

bool EctHarness::noisy_meas_x(FrameSimulator& sim, uint32_t q, uint64_t th, Rng& rng) const {
  if (site_kinds_) site_kinds_->push_back(1);
  uint64_t site = site_counter_++;
  if (site == fault_site_ || rng.bernoulli_threshold(th)) sim.inject(q, false, true);
  return sim.meas_x(q, rng);
}

bool EctHarness::noisy_meas_z(FrameSimulator& sim, uint32_t q, uint64_t th, Rng& rng) const {
  if (site_kinds_) site_kinds_->push_back(1);
  uint64_t site = site_counter_++;
  if (site == fault_site_ || rng.bernoulli_threshold(th)) sim.inject(q, true, false);
  return sim.meas_z(q, rng);
}

void EctHarness::noisy_prep_x(FrameSimulator& sim, uint32_t q, uint64_t th, Rng& rng) const {
  sim.prep_x(q);
  if (site_kinds_) site_kinds_->push_back(1);
  uint64_t site = site_counter_++;
  if (site == fault_site_ || rng.bernoulli_threshold(th)) sim.inject(q, false, true);
}

void EctHarness::noisy_prep_z(FrameSimulator& sim, uint32_t q, uint64_t th, Rng& rng) const {
  sim.prep_z(q);
  if (site_kinds_) site_kinds_->push_back(1);
  uint64_t site = site_counter_++;
  if (site == fault_site_ || rng.bernoulli_threshold(th)) sim.inject(q, true, false);
}

void EctHarness::run_protocol_gates(FrameSimulator& sim, const Circuit& c, uint64_t th,
                                    Rng& rng, std::vector<uint8_t>& out) const {
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::PrepZ: noisy_prep_z(sim, kArena + g.a, th, rng); break;
      case GateKind::PrepX: noisy_prep_x(sim, kArena + g.a, th, rng); break;
      case GateKind::Hadamard: sim.h(kArena + g.a); break;
      case GateKind::Cnot: noisy_cnot(sim, kArena + g.a, kArena + g.b, th, rng); break;
      case GateKind::Swap: sim.swap(kArena + g.a, kArena + g.b); break;
      case GateKind::MeasZ: out.push_back(noisy_meas_z(sim, kArena + g.a, th, rng)); break;
      case GateKind::MeasX: out.push_back(noisy_meas_x(sim, kArena + g.a, th, rng)); break;
      case GateKind::Pauli:
        for (uint32_t q = 0; q < c.num_qubits; ++q)
          sim.inject(kArena + q, g.fx.get(q), g.fz.get(q));
        break;
    }
  }
}

uint64_t EctHarness::run_until_accept(FrameSimulator& sim, const EncoderProtocol& proto,
                                      uint64_t threshold, Rng& rng,
                                      std::vector<uint8_t>& scratch) const {
  for (uint64_t attempt = 1;; ++attempt) {
    scratch.clear();
    run_protocol_gates(sim, proto.circuit, threshold, rng, scratch);
    if (protocol_accepts(proto, scratch)) return attempt;
    if (attempt == 1000000)
      throw std::runtime_error("encoder never accepted; p_circ too high");
  }
}

void EctHarness::move_block(FrameSimulator& sim, uint32_t from, uint32_t to) const {
  for (uint32_t q = 0; q < 30; ++q) sim.swap(from + q, to + q);
}

uint8_t EctHarness::decode_x(uint32_t mask) const {
  uint16_t syn = table_x_.syndrome_of(mask);
  uint32_t corrected = mask ^ table_x_.entry(syn);
  uint8_t out = 0;
  for (size_t i = 0; i < lx_masks_.size(); ++i)
    if (std::popcount(corrected & lx_masks_[i]) & 1) out |= uint8_t(1) << i;
  return out;
}

uint8_t EctHarness::decode_z(uint32_t mask) const {
  uint16_t syn = table_z_.syndrome_of(mask);
  uint32_t corrected = mask ^ table_z_.entry(syn);
  uint8_t out = 0;
  for (size_t i = 0; i < lz_masks_.size(); ++i)
    if (std::popcount(corrected & lz_masks_[i]) & 1) out |= uint8_t(1) << i;
  return out;
}

uint64_t EctHarness::ect(FrameSimulator& sim, uint32_t home, uint8_t& frame_x,
                         uint8_t& frame_z, uint64_t threshold, Rng& rng,
                         std::vector<uint8_t>& scratch) const {
  uint64_t attempts = 0;
  // Fresh logical Bell pair: verified |+> and |0> halves joined by a noisy
  // transversal CNOT.
  attempts += run_until_accept(sim, proto_plus_, threshold, rng, scratch);
  move_block(sim, kArena + proto_plus_.output_offset, kBell1);
  attempts += run_until_accept(sim, proto_zero_, threshold, rng, scratch);
  move_block(sim, kArena + proto_zero_.output_offset, kBell2);
  for (uint32_t q = 0; q < 30; ++q) noisy_cnot(sim, kBell1 + q, kBell2 + q, threshold, rng);

  // Logical Bell measurement between the input and the first half; the
  // CNOTs and measurements here are faulty too.
  for (uint32_t q = 0; q < 30; ++q) noisy_cnot(sim, home + q, kBell1 + q, threshold, rng);
  uint32_t mx = 0, mz = 0;
  for (uint32_t q = 0; q < 30; ++q)
    if (noisy_meas_x(sim, home + q, threshold, rng)) mx |= uint32_t(1) << q;
  for (uint32_t q = 0; q < 30; ++q)
    if (noisy_meas_z(sim, kBell1 + q, threshold, rng)) mz |= uint32_t(1) << q;

  // Teleportation byproducts fold into the pending logical frame; the
  // second Bell half becomes the register.
  frame_x ^= decode_z(mz);
  frame_z ^= decode_x(mx);
  move_block(sim, kBell2, home);
  return attempts;
}

bool EctHarness::shot(FrameSimulator& sim, uint64_t threshold, Rng& rng, uint64_t& attempts,
                      std::vector<uint8_t>& scratch) const {
  sim.reset_frames();
  uint8_t fxA = 0, fzA = 0, fxB = 0, fzB = 0;
  for (int round = 0; round < 10; ++round) {
    for (uint32_t q = 0; q < 30; ++q) noisy_cnot(sim, kA + q, kB + q, threshold, rng);
    fxB ^= fxA;
    fzA ^= fzB;
    attempts += ect(sim, kA, fxA, fzA, threshold, rng, scratch);
    attempts += ect(sim, kB, fxB, fzB, threshold, rng, scratch);
  }
  // Disentangle with error-free CNOTs, then ideal measurements: the data
  // blocks in X, the idle Bell partners in Z.
  for (uint32_t q = 0; q < 30; ++q) {
    sim.cnot(kA + q, kAp + q);
    sim.cnot(kB + q, kBp + q);
  }
  uint8_t fxAp = fxA, fxBp = fxB;  // frame spreads through the disentangler
  uint32_t mA = 0, mAp = 0, mB = 0, mBp = 0;
  for (uint32_t q = 0; q < 30; ++q) {
    if (sim.frame_z(kA + q)) mA |= uint32_t(1) << q;
    if (sim.frame_x(kAp + q)) mAp |= uint32_t(1) << q;
    if (sim.frame_z(kB + q)) mB |= uint32_t(1) << q;
    if (sim.frame_x(kBp + q)) mBp |= uint32_t(1) << q;
  }
  return decode_x(mA) != fzA || decode_z(mAp) != fxAp ||
         decode_x(mB) != fzB || decode_z(mBp) != fxBp;
}

CnotBenchmarkResult run_logical_cnot_benchmark(const std::vector<double>& p_circs,
                                               uint64_t shots, EncoderVariant variant,
                                               uint64_t seed, const Heartbeat& heartbeat) {
  const StabilizerCode& code = builtin_code();
  CnotBenchmarkResult res;
  res.variant = variant;
  for (size_t pi = 0; pi < p_circs.size(); ++pi) {
    const uint64_t threshold = probability_threshold(p_circs[pi]);
    uint64_t failures = 0, attempts = 0;
    const uint64_t chunk = 4096;
    for (uint64_t base = 0; base < shots; base += chunk) {
      uint64_t hi = std::min(shots, base + chunk);
      uint64_t f_local = 0, a_local = 0;
#pragma omp parallel
      {
        EctHarness harness(variant, code);
        FrameSimulator sim(harness.total_qubits());
        std::vector<uint8_t> scratch;
#pragma omp for reduction(+ : f_local, a_local) schedule(static)
        for (uint64_t s = base; s < hi; ++s) {
          Rng rng = Rng::for_shot(seed, pi, s);
          uint64_t att = 0;
          f_local += harness.shot(sim, threshold, rng, att, scratch);
          a_local += att;
        }
      }
      failures += f_local;
      attempts += a_local;
      if (heartbeat) heartbeat(pi, p_circs.size(), hi, shots);
    }
    SweepPoint pt;
    pt.p = p_circs[pi];
    pt.shots = shots;
    pt.failures = failures;
    pt.attempts = attempts;
    pt.acceptances = 40 * shots;  // 2 halves x 2 ECTs x 10 rounds
    pt.rate = p_cnot_from_p10(shots ? static_cast<double>(failures) / shots : 0);
    res.points.push_back(pt);
  }
  try {
    res.fit = fit_power_law(res.points);
  } catch (const std::exception&) {
    res.fit = {};
  }
  return res;
}

EctAuditResult audit_ect_single_faults(EncoderVariant variant) {
  const StabilizerCode& code = builtin_code();
  EctHarness harness(variant, code);
  FrameSimulator sim(harness.total_qubits());
  std::vector<uint8_t> scratch;

  // Dry run to count the noisy primitives in one gadget and their kinds.
  std::vector<uint8_t> kinds;
  harness.record_site_kinds(&kinds);
  harness.arm_fault(UINT64_MAX, 0);
  {
    sim.reset_frames();
    uint8_t fx = 0, fz = 0;
    Rng rng(1);
    harness.ect(sim, EctHarness::kA, fx, fz, 0, rng, scratch);
  }
  harness.record_site_kinds(nullptr);
  const uint64_t sites = harness.sites_seen();

  EctAuditResult res;
  res.sites = sites;
  for (uint64_t site = 0; site < sites; ++site) {
    for (uint8_t pauli = 1; pauli <= kinds[site]; ++pauli) {
      harness.arm_fault(site, pauli);
      sim.reset_frames();
      uint8_t fx = 0, fz = 0;
      Rng rng(1);
      harness.ect(sim, EctHarness::kA, fx, fz, 0, rng, scratch);
      ++res.faults;
      uint32_t xview = 0, zview = 0;
      for (uint32_t q = 0; q < 30; ++q) {
        if (sim.frame_z(EctHarness::kA + q)) xview |= uint32_t(1) << q;
        if (sim.frame_x(EctHarness::kA + q)) zview |= uint32_t(1) << q;
      }
      bool fail = (harness.decode_x(xview) ^ fz) || (harness.decode_z(zview) ^ fx);
      res.failures += fail;
    }
  }
  harness.disarm_fault();
  return res;
}

OverheadResult estimate_qubit_overhead(EncoderVariant variant, double p_circ,
                                       uint64_t blocks, uint64_t seed) {
  const StabilizerCode& code = builtin_code();
  EncoderProtocol proto = zero_protocol_for(variant, code);
  const uint64_t threshold = probability_threshold(p_circ);
  const uint32_t per_attempt = proto.qubits_per_attempt;

  uint64_t attempts_total = 0;
  NoiseModel noise;
  noise.p_circ = p_circ;
#pragma omp parallel
  {
    FrameSimulator sim(proto.circuit.num_qubits);
    std::vector<uint8_t> outcomes;
#pragma omp for reduction(+ : attempts_total) schedule(static)
    for (uint64_t b = 0; b < blocks; ++b) {
      Rng rng = Rng::for_shot(seed, 7700 + static_cast<uint64_t>(variant), b);
      for (uint64_t attempt = 1;; ++attempt) {
        outcomes.clear();
        sim.run_circuit(proto.circuit, 0, noise, &rng, &outcomes);
        if (protocol_accepts(proto, outcomes)) {
          attempts_total += attempt;
          break;
        }
        if (attempt == 1000000)
          throw std::runtime_error("encoder never accepted; p_circ too high");
      }
    }
  }
  OverheadResult res;
  res.variant = variant;
  res.p_circ = p_circ;
  res.blocks = blocks;
  res.attempts = attempts_total;
  res.qubits_consumed = attempts_total * per_attempt;
  res.expected_qubits = blocks ? static_cast<double>(res.qubits_consumed) / blocks : 0;
  return res;
}

}  // namespace sdc
