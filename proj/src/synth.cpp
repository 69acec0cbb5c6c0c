#include "sdc/synth.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

#include "sdc/frame.hpp"

namespace sdc {

using gf2::BitMatrix;
using gf2::BitVector;

namespace {

struct PlusLayout {
  std::vector<uint32_t> pivots;  // one qubit per sz-rref row
  std::vector<uint32_t> frees;
  BitMatrix p;                   // rref rows restricted to free columns
};

PlusLayout plus_layout(const StabilizerCode& code) {
  gf2::RrefResult rr = gf2::rref(code.sz);
  PlusLayout lay;
  std::vector<bool> is_pivot(code.n, false);
  for (size_t c : rr.pivots) {
    lay.pivots.push_back(static_cast<uint32_t>(c));
    is_pivot[c] = true;
  }
  for (size_t c = 0; c < code.n; ++c)
    if (!is_pivot[c]) lay.frees.push_back(static_cast<uint32_t>(c));
  lay.p = BitMatrix(rr.rank, lay.frees.size());
  for (size_t r = 0; r < rr.rank; ++r)
    for (size_t j = 0; j < lay.frees.size(); ++j)
      if (rr.reduced.get(r, lay.frees[j])) lay.p.set(r, j, true);
  return lay;
}

void append_preps(Circuit& c, const PlusLayout& lay) {
  for (uint32_t q : lay.pivots) c.append(Gate::prep_z(q));
  for (uint32_t q : lay.frees) c.append(Gate::prep_x(q));
}

// Direct fan-in CNOTs, grouped by the |+> control qubit.
void append_raw_cnots(Circuit& c, const PlusLayout& lay) {
  for (size_t j = 0; j < lay.frees.size(); ++j)
    for (size_t i = 0; i < lay.p.rows(); ++i)
      if (lay.p.get(i, j)) c.append(Gate::cnot(lay.frees[j], lay.pivots[i]));
}

// ---- overlap method --------------------------------------------------------
//
// The fan-in matrix P records which free-qubit contributions each pivot row
// needs. A free-to-free CNOT lets one column deliver another column's
// contribution to every row subscribed to it, so rows sharing two or more
// columns cost |overlap| subscriptions plus one delivery instead of
// 2|overlap| direct fan-ins. Each merged value lives on a host column;
// merges consume only the current top value of a host, and the emitted
// schedule replays deliveries newest-first, which makes every historical
// version of a column available to later subscribers.

struct MergePlan {
  std::vector<std::pair<int, int>> deliveries;             // (src col, host col)
  std::vector<std::vector<std::pair<int, int>>> taps;      // per row: (host col, stamp)
  size_t cnot_count = 0;
};

MergePlan greedy_merge(const BitMatrix& p, int forced_a = -1, int forced_b = -1) {
  const int rows = static_cast<int>(p.rows());
  const int nbase = static_cast<int>(p.cols());
  struct Term {
    int host;
    int stamp;
  };
  std::vector<Term> terms(nbase);
  std::vector<int> top(nbase);
  for (int c = 0; c < nbase; ++c) {
    terms[c] = {c, 0};
    top[c] = c;
  }
  std::vector<std::set<int>> rowsets(rows);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < nbase; ++c)
      if (p.get(r, c)) rowsets[r].insert(c);

  MergePlan plan;
  plan.taps.resize(rows);
  bool first = forced_a >= 0;
  while (true) {
    std::set<int> tops(top.begin(), top.end());
    std::map<std::pair<int, int>, int> cnt;
    for (const auto& s : rowsets) {
      std::vector<int> present;
      for (int id : s)
        if (tops.count(id)) present.push_back(id);
      for (size_t i = 0; i < present.size(); ++i)
        for (size_t j = i + 1; j < present.size(); ++j)
          ++cnt[{present[i], present[j]}];
    }
    std::pair<int, int> pick{-1, -1};
    int best = 1;
    for (const auto& [pr, n] : cnt)
      if (n > best) {
        best = n;
        pick = pr;
      }
    if (first) {
      first = false;
      auto it = cnt.find({forced_a, forced_b});
      if (it == cnt.end() || it->second < 2) break;
      pick = {forced_a, forced_b};
    }
    if (pick.first < 0) break;
    auto [a, b] = pick;
    // Clobber the child with the smaller leftover presence; its host column
    // carries the merged value, the other child stays mergeable.
    int pa = 0, pb = 0;
    for (const auto& s : rowsets) {
      if (s.count(a) && !s.count(b)) ++pa;
      if (s.count(b) && !s.count(a)) ++pb;
    }
    int dead = std::pair(pa, terms[a].host) <= std::pair(pb, terms[b].host) ? a : b;
    int live = dead == a ? b : a;
    plan.deliveries.push_back({terms[live].host, terms[dead].host});
    int nid = static_cast<int>(terms.size());
    terms.push_back({terms[dead].host, static_cast<int>(plan.deliveries.size())});
    top[terms[dead].host] = nid;
    for (auto& s : rowsets)
      if (s.count(a) && s.count(b)) {
        s.erase(a);
        s.erase(b);
        s.insert(nid);
      }
  }

  size_t ntaps = 0;
  for (int r = 0; r < rows; ++r) {
    for (int id : rowsets[r]) plan.taps[r].push_back({terms[id].host, terms[id].stamp});
    ntaps += rowsets[r].size();
  }
  plan.cnot_count = plan.deliveries.size() + ntaps;
  return plan;
}

// Deliveries replay newest-first; a tap of the version created at stamp s
// fires between the deliveries stamped s+1 and s, so it collects exactly
// the deliveries that make up that version.
void emit_merged_cnots(Circuit& c, const PlusLayout& lay, const MergePlan& plan) {
  struct Slot {
    int stamp2;  // 2*stamp for deliveries, 2*stamp+1 for taps
    int order;   // tie-break
    uint32_t ctrl, tgt;
  };
  std::vector<Slot> slots;
  for (size_t k = 0; k < plan.deliveries.size(); ++k) {
    auto [src, host] = plan.deliveries[k];
    slots.push_back({2 * static_cast<int>(k + 1), 0, lay.frees[src], lay.frees[host]});
  }
  for (size_t r = 0; r < plan.taps.size(); ++r)
    for (auto [host, stamp] : plan.taps[r])
      slots.push_back({2 * stamp + 1, static_cast<int>(r), lay.frees[host], lay.pivots[r]});
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    if (a.stamp2 != b.stamp2) return a.stamp2 > b.stamp2;
    if (a.order != b.order) return a.order < b.order;
    return a.ctrl < b.ctrl;
  });
  for (const Slot& s : slots) c.append(Gate::cnot(s.ctrl, s.tgt));
}

std::vector<std::pair<int, int>> top_pairs(const BitMatrix& p, size_t limit) {
  const int nbase = static_cast<int>(p.cols());
  std::map<std::pair<int, int>, int> cnt;
  for (size_t r = 0; r < p.rows(); ++r) {
    std::vector<int> present;
    for (int c = 0; c < nbase; ++c)
      if (p.get(r, c)) present.push_back(c);
    for (size_t i = 0; i < present.size(); ++i)
      for (size_t j = i + 1; j < present.size(); ++j)
        ++cnt[{present[i], present[j]}];
  }
  std::vector<std::pair<std::pair<int, int>, int>> items(cnt.begin(), cnt.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::pair<int, int>> out;
  for (const auto& [pr, n] : items) {
    if (n < 2 || out.size() == limit) break;
    out.push_back(pr);
  }
  return out;
}

}  // namespace

Circuit synth_plus_encoder(const StabilizerCode& code) {
  if (code.sz.rows() == 0 || code.sz.cols() != code.n)
    throw std::invalid_argument("synth_plus_encoder: code has no Z stabilizers");
  PlusLayout lay = plus_layout(code);
  Circuit c(static_cast<uint32_t>(code.n));
  c.labels.push_back({"data", 0, static_cast<uint32_t>(code.n - 1)});
  append_preps(c, lay);
  append_raw_cnots(c, lay);
  return c;
}

Circuit overlap_optimize(const StabilizerCode& code, const Circuit& raw) {
  PlusLayout lay = plus_layout(code);

  MergePlan best = greedy_merge(lay.p);
  for (auto [a, b] : top_pairs(lay.p, 8)) {
    MergePlan alt = greedy_merge(lay.p, a, b);
    if (alt.cnot_count < best.cnot_count) best = std::move(alt);
  }
  if (best.cnot_count >= raw.cnot_count()) return raw;

  Circuit c(static_cast<uint32_t>(code.n));
  c.labels = raw.labels;
  append_preps(c, lay);
  emit_merged_cnots(c, lay, best);
  return c;
}

ReorderResult reorder_for_low_weight(const Circuit& c, const StabilizerCode& code) {
  if (code.n > 64)
    throw std::invalid_argument("reorder_for_low_weight: supports up to 64 qubits");

  // Split the prep prefix from the CNOT body.
  std::vector<Gate> preps;
  std::vector<Gate> cnots;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::PrepZ || g.kind == GateKind::PrepX) preps.push_back(g);
    else if (g.kind == GateKind::Cnot) cnots.push_back(g);
    else throw std::invalid_argument("reorder_for_low_weight: expected a prep+CNOT circuit");
  }

  // Instantaneous stabilizer generators: one per prepared qubit, evolved
  // through the CNOTs as support masks.
  auto initial_gens = [&] {
    std::pair<std::vector<uint64_t>, std::vector<uint64_t>> gens;  // z-type, x-type
    for (const Gate& g : preps) {
      if (g.kind == GateKind::PrepZ) gens.first.push_back(uint64_t(1) << g.a);
      else gens.second.push_back(uint64_t(1) << g.a);
    }
    return gens;
  };

  auto apply_gen = [](std::vector<uint64_t>& zg, std::vector<uint64_t>& xg, const Gate& g) {
    uint64_t cbit = uint64_t(1) << g.a, tbit = uint64_t(1) << g.b;
    for (uint64_t& m : zg)
      if (m & tbit) m ^= cbit;  // Z on the target spreads to the control
    for (uint64_t& m : xg)
      if (m & cbit) m ^= tbit;
  };
  auto max_weight = [](const std::vector<uint64_t>& zg, const std::vector<uint64_t>& xg) {
    size_t w = 0;
    for (uint64_t m : zg) w = std::max<size_t>(w, std::popcount(m));
    for (uint64_t m : xg) w = std::max<size_t>(w, std::popcount(m));
    return w;
  };

  // Dependency DAG: CNOTs sharing a control-target qubit (or identical
  // pairs) keep their original order, so the final state is unchanged.
  const size_t n = cnots.size();
  std::vector<std::vector<uint32_t>> children(n);
  std::vector<uint32_t> indeg(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      bool clash = cnots[i].a == cnots[j].b || cnots[i].b == cnots[j].a ||
                   (cnots[i].a == cnots[j].a && cnots[i].b == cnots[j].b);
      if (clash) {
        children[i].push_back(static_cast<uint32_t>(j));
        ++indeg[j];
      }
    }

  auto [zg, xg] = initial_gens();
  std::vector<bool> done(n, false);
  std::vector<Gate> order;
  order.reserve(n);
  for (size_t step = 0; step < n; ++step) {
    size_t best_i = n;
    size_t best_w = SIZE_MAX;
    for (size_t i = 0; i < n; ++i) {
      if (done[i] || indeg[i]) continue;
      auto z2 = zg;
      auto x2 = xg;
      apply_gen(z2, x2, cnots[i]);
      size_t w = max_weight(z2, x2);
      if (w < best_w) {
        best_w = w;
        best_i = i;
      }
    }
    apply_gen(zg, xg, cnots[best_i]);
    done[best_i] = true;
    for (uint32_t ch : children[best_i]) --indeg[ch];
    order.push_back(cnots[best_i]);
  }

  ReorderResult res;
  res.circuit = Circuit(c.num_qubits);
  res.circuit.labels = c.labels;
  for (const Gate& g : preps) res.circuit.append(g);
  std::tie(zg, xg) = initial_gens();
  size_t boundary = preps.size();
  bool low = true;
  for (size_t i = 0; i < order.size(); ++i) {
    res.circuit.append(order[i]);
    apply_gen(zg, xg, order[i]);
    if (low && max_weight(zg, xg) < 4) boundary = preps.size() + i + 1;
    else low = false;
  }
  res.boundary = boundary;
  return res;
}

void propagate_fault(const Circuit& c, const FaultLocation& loc, BitVector& fx, BitVector& fz,
                     std::vector<uint8_t>* outcome_flips) {
  FrameSimulator sim(c.num_qubits);
  gf2::BitVector ifx, ifz;
  fault_masks(c, loc, ifx, ifz);
  const Gate& fg = c.gates[loc.gate_index];
  bool before = fg.kind == GateKind::MeasZ || fg.kind == GateKind::MeasX;

  // Gates before the location cannot move an all-zero frame; only their
  // measurement slots matter for outcome indexing.
  if (outcome_flips) {
    for (uint32_t i = 0; i < loc.gate_index; ++i) {
      GateKind k = c.gates[i].kind;
      if (k == GateKind::MeasZ || k == GateKind::MeasX) outcome_flips->push_back(0);
    }
  }
  for (uint32_t q = 0; q < c.num_qubits; ++q)
    sim.inject(q, ifx.get(q), ifz.get(q));
  // "After" faults skip the faulted gate itself: replaying it would act on
  // the injected mask as if the fault preceded it (and a prep would erase it).
  for (uint32_t i = loc.gate_index + (before ? 0 : 1); i < c.gates.size(); ++i)
    sim.apply_gate(c.gates[i], 0, 0, nullptr, outcome_flips);
  fx = BitVector(c.num_qubits);
  fz = BitVector(c.num_qubits);
  for (uint32_t q = 0; q < c.num_qubits; ++q) {
    if (sim.frame_x(q)) fx.set(q, true);
    if (sim.frame_z(q)) fz.set(q, true);
  }
}

FaultAuditReport audit_single_faults(const Circuit& c, const StabilizerCode& code,
                                     PauliBasis basis) {
  if (c.num_qubits < code.n)
    throw std::invalid_argument("audit_single_faults: circuit smaller than the code");
  FaultAuditReport report;
  report.basis = basis;
  const BitMatrix& stab = basis == PauliBasis::Z ? code.sz : code.sx;
  std::vector<FaultLocation> locs = enumerate_fault_locations(c);
  report.total_locations = locs.size();
  for (const FaultLocation& loc : locs) {
    BitVector fx, fz;
    propagate_fault(c, loc, fx, fz);
    BitVector err(code.n);
    const BitVector& pick = basis == PauliBasis::Z ? fz : fx;
    for (size_t q = 0; q < code.n; ++q)
      if (pick.get(q)) err.set(q, true);
    if (err.is_zero()) continue;
    BitVector reduced = gf2::reduce_mod_rowspace(err, stab);
    size_t w = reduced.weight();
    if (w >= 2) report.harmful.push_back({loc, reduced, w, -1});
  }
  return report;
}

VerificationResult synth_verification(const Circuit& c, const StabilizerCode& code,
                                      const FaultAuditReport& report, size_t weight_cap) {
  VerificationResult res;
  res.circuit = c;
  if (report.harmful.empty()) return res;
  if (report.basis != PauliBasis::Z)
    throw std::invalid_argument("synth_verification: expects a Z-basis audit");

  // Distinct harmful residual classes.
  std::vector<BitVector> classes;
  for (const HarmfulFault& h : report.harmful) {
    bool seen = false;
    for (const BitVector& v : classes) seen = seen || v == h.residual;
    if (!seen) classes.push_back(h.residual);
  }
  const size_t nh = classes.size();
  const size_t sig_words = (nh + 63) / 64;

  // Candidate operators: every nonzero logical-X combination times every
  // X-stabilizer combination, weight capped. Stabilizer combinations walk
  // a Gray code so each step is one row xor.
  struct Cand {
    BitVector support;
    std::vector<uint64_t> sig;
    size_t weight;
  };
  std::map<std::vector<uint64_t>, Cand> by_sig;
  const size_t k = code.lx.rows();
  const size_t nstab = code.sx.rows();
  if (nstab > 16) throw std::invalid_argument("synth_verification: too many stabilizer rows");
  for (uint64_t lam = 1; lam < (uint64_t(1) << k); ++lam) {
    BitVector base(code.n);
    for (size_t i = 0; i < k; ++i)
      if ((lam >> i) & 1) base ^= code.lx.row(i);
    BitVector cur = base;
    uint64_t combos = uint64_t(1) << nstab;
    for (uint64_t i = 0; i < combos; ++i) {
      if (i) cur ^= code.sx.row(std::countr_zero(i));
      size_t w = cur.weight();
      if (w > weight_cap) continue;
      std::vector<uint64_t> sig(sig_words, 0);
      bool any = false;
      for (size_t h = 0; h < nh; ++h)
        if (cur.dot(classes[h])) {
          sig[h >> 6] |= uint64_t(1) << (h & 63);
          any = true;
        }
      if (!any) continue;
      auto it = by_sig.find(sig);
      if (it == by_sig.end() || w < it->second.weight ||
          (w == it->second.weight && gf2::lex_less(cur, it->second.support)))
        by_sig[sig] = {cur, sig, w};
    }
  }
  if (by_sig.empty())
    throw std::runtime_error("synth_verification: no covering operators under the weight cap");

  std::vector<Cand> cands;
  for (auto& [sig, cand] : by_sig) cands.push_back(cand);
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return gf2::lex_less(a.support, b.support);
  });

  std::vector<uint64_t> full(sig_words, 0);
  for (size_t h = 0; h < nh; ++h) full[h >> 6] |= uint64_t(1) << (h & 63);
  auto covers = [&](const std::vector<const Cand*>& set) {
    std::vector<uint64_t> u(sig_words, 0);
    for (const Cand* c2 : set)
      for (size_t w = 0; w < sig_words; ++w) u[w] |= c2->sig[w];
    return u == full;
  };

  // Minimum-cardinality cover: exhaustive up to 3 operators, then greedy.
  std::vector<const Cand*> chosen;
  bool found = false;
  for (size_t i = 0; i < cands.size() && !found; ++i)
    if (covers({&cands[i]})) {
      chosen = {&cands[i]};
      found = true;
    }
  if (!found && cands.size() <= 2000) {
    for (size_t i = 0; i < cands.size() && !found; ++i)
      for (size_t j = i + 1; j < cands.size() && !found; ++j)
        if (covers({&cands[i], &cands[j]})) {
          chosen = {&cands[i], &cands[j]};
          found = true;
        }
    if (!found && cands.size() <= 400) {
      for (size_t i = 0; i < cands.size() && !found; ++i)
        for (size_t j = i + 1; j < cands.size() && !found; ++j)
          for (size_t l = j + 1; l < cands.size() && !found; ++l)
            if (covers({&cands[i], &cands[j], &cands[l]})) {
              chosen = {&cands[i], &cands[j], &cands[l]};
              found = true;
            }
    }
  }
  if (!found) {
    std::vector<uint64_t> covered(sig_words, 0);
    while (covered != full) {
      const Cand* best = nullptr;
      size_t best_gain = 0;
      for (const Cand& cand : cands) {
        size_t gain = 0;
        for (size_t w = 0; w < sig_words; ++w)
          gain += std::popcount(cand.sig[w] & ~covered[w]);
        if (gain > best_gain) {
          best_gain = gain;
          best = &cand;
        }
      }
      if (!best)
        throw std::runtime_error("synth_verification: residuals not coverable");
      chosen.push_back(best);
      for (size_t w = 0; w < sig_words; ++w) covered[w] |= best->sig[w];
    }
  }

  // Append one ancilla-mediated measurement per operator: |+> ancilla
  // controls CNOTs into the support, then an X measurement. Data Z errors
  // copy onto the ancilla; ancilla X faults spread only X errors, which
  // the later X-elimination stage removes.
  uint32_t anc = res.circuit.num_qubits;
  res.circuit.num_qubits += static_cast<uint32_t>(chosen.size());
  res.circuit.labels.push_back(
      {"ancilla", anc, anc + static_cast<uint32_t>(chosen.size()) - 1});
  for (const Cand* op : chosen) {
    res.plan.measured_operators.push_back(op->support);
    res.circuit.append(Gate::prep_x(anc));
    for (uint32_t q = 0; q < code.n; ++q)
      if (op->support.get(q)) res.circuit.append(Gate::cnot(anc, q));
    res.circuit.append(Gate::meas_x(anc));
    ++anc;
  }
  res.plan.ancilla_count = res.plan.measured_operators.size();
  return res;
}

bool protocol_accepts(const EncoderProtocol& p, const std::vector<uint8_t>& outcomes) {
  for (const ParityCheck& chk : p.checks) {
    uint8_t parity = 0;
    for (uint32_t b : chk.bits) parity ^= outcomes[b];
    if (parity) return false;
  }
  return true;
}

namespace {

void append_offset(Circuit& dst, const Circuit& src, uint32_t off) {
  for (const Gate& g : src.gates) {
    Gate h = g;
    if (g.kind == GateKind::Pauli) {
      BitVector fx(dst.num_qubits), fz(dst.num_qubits);
      for (uint32_t q = 0; q < src.num_qubits; ++q) {
        if (g.fx.get(q)) fx.set(off + q, true);
        if (g.fz.get(q)) fz.set(off + q, true);
      }
      dst.append(Gate::pauli(fx, fz));
      continue;
    }
    h.a += off;
    if (g.kind == GateKind::Cnot || g.kind == GateKind::Swap) h.b += off;
    dst.append(h);
  }
}

// The verified single-block plus preparation (encoder + Z-error checks).
struct Stage5A {
  Circuit circuit;       // data block at 0..n-1, ancillas after
  VerificationPlan plan;
};

Stage5A build_5a(const StabilizerCode& code) {
  Circuit raw = synth_plus_encoder(code);
  Circuit opt = overlap_optimize(code, raw);
  ReorderResult ord = reorder_for_low_weight(opt, code);
  FaultAuditReport audit = audit_single_faults(ord.circuit, code, PauliBasis::Z);
  VerificationResult ver = synth_verification(ord.circuit, code, audit);
  return {ver.circuit, ver.plan};
}

const Stage5A& builtin_5a() {
  static const Stage5A stage = build_5a(builtin_code());
  return stage;
}

void add_syndrome_checks(EncoderProtocol& proto, const BitMatrix& stab,
                         uint32_t first_meas, bool include_logicals,
                         const BitMatrix& logicals) {
  auto add_rows = [&](const BitMatrix& m) {
    for (size_t r = 0; r < m.rows(); ++r) {
      ParityCheck chk;
      for (size_t q = 0; q < m.cols(); ++q)
        if (m.get(r, q)) chk.bits.push_back(first_meas + static_cast<uint32_t>(q));
      proto.checks.push_back(std::move(chk));
    }
  };
  add_rows(stab);
  if (include_logicals) add_rows(logicals);
}

}  // namespace

EncoderProtocol synth_ft_plus_encoder(const StabilizerCode& code) {
  const Stage5A stage = &code == &builtin_code() ? builtin_5a() : build_5a(code);
  const uint32_t block = static_cast<uint32_t>(code.n);
  const uint32_t anc = static_cast<uint32_t>(stage.plan.ancilla_count);
  const uint32_t span = block + anc;

  EncoderProtocol proto;
  proto.name = "ft-plus";
  proto.plan = stage.plan;
  proto.circuit = Circuit(2 * span);
  proto.circuit.labels = {{"block1", 0, block - 1},
                          {"block2", span, span + block - 1}};
  if (anc) {
    proto.circuit.labels.push_back({"ancilla1", block, span - 1});
    proto.circuit.labels.push_back({"ancilla2", span + block, 2 * span - 1});
  }
  append_offset(proto.circuit, stage.circuit, 0);
  append_offset(proto.circuit, stage.circuit, span);
  transversal_cnot(proto.circuit, 0, span, block);
  for (uint32_t q = 0; q < block; ++q)
    proto.circuit.append(Gate::meas_z(span + q));

  // Accept: both verification stages all-zero, block-2 syndrome all-zero.
  for (uint32_t i = 0; i < 2 * anc; ++i) proto.checks.push_back({{i}});
  add_syndrome_checks(proto, code.sz, 2 * anc, false, code.lz);
  proto.output_offset = 0;
  proto.qubits_per_attempt = 2 * span;
  return proto;
}

EncoderProtocol synth_naive_encoder(const StabilizerCode& code, NaiveVariant variant) {
  const uint32_t n = static_cast<uint32_t>(code.n);
  const uint32_t copies = variant == NaiveVariant::Copies9 ? 9
                        : variant == NaiveVariant::Copies6 ? 6 : 4;
  Circuit opt = overlap_optimize(code, synth_plus_encoder(code));

  EncoderProtocol proto;
  proto.name = variant == NaiveVariant::Copies9 ? "naive9"
             : variant == NaiveVariant::Copies6 ? "naive6" : "naive4";
  proto.circuit = Circuit(copies * n);
  for (uint32_t b = 0; b < copies; ++b) {
    proto.circuit.labels.push_back({"copy" + std::to_string(b + 1), b * n, (b + 1) * n - 1});
    append_offset(proto.circuit, opt, b * n);
  }

  uint32_t meas_cursor = 0;
  // Z errors on the data copy to the check block through CNOT(check, data)
  // and show up in its X measurement; every nontrivial pattern rejects.
  auto z_check = [&](uint32_t data, uint32_t check) {
    transversal_cnot(proto.circuit, check * n, data * n, n);
    for (uint32_t q = 0; q < n; ++q) proto.circuit.append(Gate::meas_x(check * n + q));
    add_syndrome_checks(proto, code.sx, meas_cursor, true, code.lx);
    meas_cursor += n;
  };
  // X errors on the data copy to the check block through CNOT(data, check)
  // and flip its Z-measurement syndrome. Logical Z values are random for a
  // plus state, so only the syndrome gates acceptance.
  auto x_check = [&](uint32_t data, uint32_t check) {
    transversal_cnot(proto.circuit, data * n, check * n, n);
    for (uint32_t q = 0; q < n; ++q) proto.circuit.append(Gate::meas_z(check * n + q));
    add_syndrome_checks(proto, code.sz, meas_cursor, false, code.lz);
    meas_cursor += n;
  };
  // Minimal fault-tolerant cascade: the X-check copy is Z-verified first so
  // its own Z errors cannot flow back into the data block.
  auto verify4 = [&](uint32_t d, uint32_t cz, uint32_t cxz, uint32_t cx) {
    z_check(d, cz);
    z_check(cx, cxz);
    x_check(d, cx);
  };

  switch (variant) {
    case NaiveVariant::Copies4:
      verify4(0, 1, 2, 3);
      break;
    case NaiveVariant::Copies6:
      z_check(0, 1);
      verify4(2, 3, 4, 5);
      x_check(0, 2);
      break;
    case NaiveVariant::Copies9:
      verify4(1, 2, 3, 4);
      verify4(5, 6, 7, 8);
      z_check(0, 1);
      x_check(0, 5);
      break;
  }
  proto.output_offset = 0;
  proto.qubits_per_attempt = copies * n;
  return proto;
}

EncoderProtocol synth_zero_encoder(const StabilizerCode& code, bool ft) {
  if (code.n != 30)
    throw std::invalid_argument("synth_zero_encoder: built for the 30-qubit code");
  EncoderProtocol proto;
  if (ft) {
    proto = synth_ft_plus_encoder(code);
    proto.name = "ft-zero";
  } else {
    proto.name = "zero";
    Circuit opt = overlap_optimize(code, synth_plus_encoder(code));
    proto.circuit = Circuit(30);
    proto.circuit.labels = opt.labels;
    append_offset(proto.circuit, opt, 0);
    proto.output_offset = 0;
    proto.qubits_per_attempt = 30;
  }
  logical_hadamard_layer(proto.circuit, proto.output_offset);
  return proto;
}

BitMatrix derive_mz_prime(const StabilizerCode& code) {
  if (code.n != 30 || code.lz.rows() != 6)
    throw std::invalid_argument("derive_mz_prime: built for the 30-qubit code");
  gf2::RrefResult rr = gf2::rref(code.sz);
  BitMatrix out(6, 30);
  for (size_t r = 0; r < 3; ++r) {
    BitVector v = code.lz.row(r);
    for (size_t i = 0; i < rr.rank; ++i)
      if (v.get(rr.pivots[i])) v ^= rr.reduced.row(i);
    for (size_t c2 = 0; c2 < 12; ++c2)
      if (v.get(c2))
        throw std::runtime_error("derive_mz_prime: cannot clear the first 12 columns");
    out.set_row(r, v);
  }
  for (size_t r = 3; r < 6; ++r) {
    BitVector v = code.lz.row(r);
    for (size_t c2 = 0; c2 < 15; ++c2)
      if (v.get(c2))
        throw std::runtime_error("derive_mz_prime: lower rows are not supported on 16..30");
    out.set_row(r, v);
  }
  return out;
}

const std::vector<uint32_t>& arbitrary_encoder_inputs() {
  static const std::vector<uint32_t> inputs = {12, 13, 14, 27, 28, 29};
  return inputs;
}

Circuit synth_arbitrary_encoder(const StabilizerCode& code) {
  BitMatrix mzp = derive_mz_prime(code);
  PlusLayout lay = plus_layout(code);
  const auto& inputs = arbitrary_encoder_inputs();

  Circuit c(30);
  c.labels.push_back({"data", 0, 29});
  std::set<uint32_t> input_set(inputs.begin(), inputs.end());
  for (uint32_t q : lay.pivots) c.append(Gate::prep_z(q));
  for (uint32_t q : lay.frees)
    if (!input_set.count(q)) c.append(Gate::prep_x(q));

  // Added layer: each M'_Z row fans into its input qubit, with the other
  // support qubits as controls. A Z on the input then spreads to exactly
  // the row support, i.e. the corresponding logical Z, while |+> controls
  // leave the all-plus case untouched.
  for (size_t r = 0; r < 6; ++r) {
    uint32_t in = inputs[r];
    if (!mzp.get(r, in))
      throw std::runtime_error("synth_arbitrary_encoder: row not rooted at its input");
    for (uint32_t q = 0; q < 30; ++q)
      if (q != in && mzp.get(r, q)) c.append(Gate::cnot(q, in));
  }
  append_raw_cnots(c, lay);
  return c;
}

FtAuditResult audit_protocol_ft(const EncoderProtocol& proto, const StabilizerCode& code,
                                bool output_is_plus_state) {
  // Stabilizer group of the noiseless output state: X part sx (+ lx for a
  // plus state), Z part sz (+ lz for a zero state).
  auto stack = [&](const BitMatrix& a, const BitMatrix& b) {
    BitMatrix m(a.rows() + b.rows(), a.cols());
    for (size_t r = 0; r < a.rows(); ++r) m.set_row(r, a.row(r));
    for (size_t r = 0; r < b.rows(); ++r) m.set_row(a.rows() + r, b.row(r));
    return m;
  };
  gf2::RrefResult xgroup = gf2::rref(output_is_plus_state ? stack(code.sx, code.lx) : code.sx);
  gf2::RrefResult zgroup = gf2::rref(output_is_plus_state ? code.sz : stack(code.sz, code.lz));

  FtAuditResult res;
  std::vector<FaultLocation> locs = enumerate_fault_locations(proto.circuit);
  res.locations = locs.size();
  const uint32_t out0 = proto.output_offset;
  for (const FaultLocation& loc : locs) {
    BitVector fx, fz;
    std::vector<uint8_t> flips;
    propagate_fault(proto.circuit, loc, fx, fz, &flips);
    if (!protocol_accepts(proto, flips)) {
      ++res.rejected;
      continue;
    }
    ++res.accepted;
    BitVector ex(code.n), ez(code.n);
    for (size_t q = 0; q < code.n; ++q) {
      if (fx.get(out0 + q)) ex.set(q, true);
      if (fz.get(out0 + q)) ez.set(q, true);
    }
    // Equivalent to a weight <= 1 Pauli modulo the state's stabilizers?
    bool ok = false;
    for (size_t q = 0; q <= code.n && !ok; ++q) {
      for (int pauli = 0; pauli < (q == code.n ? 1 : 3) && !ok; ++pauli) {
        BitVector tx = ex, tz = ez;
        if (q < code.n) {
          if (pauli == 0 || pauli == 1) tx.flip(q);
          if (pauli == 1 || pauli == 2) tz.flip(q);
        }
        ok = gf2::in_rowspace(xgroup, tx) && gf2::in_rowspace(zgroup, tz);
      }
    }
    if (!ok) res.violations.push_back(loc);
  }
  return res;
}

}  // namespace sdc
