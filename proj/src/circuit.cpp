#include "sdc/circuit.hpp"

#include <sstream>
#include <stdexcept>

namespace sdc {

using gf2::BitVector;

Gate Gate::pauli(BitVector fx, BitVector fz) {
  Gate g{GateKind::Pauli};
  g.fx = std::move(fx);
  g.fz = std::move(fz);
  return g;
}

void Circuit::append(const Gate& g) {
  auto check = [&](uint32_t q) {
    if (q >= num_qubits) throw std::invalid_argument("gate qubit out of range");
  };
  switch (g.kind) {
    case GateKind::Cnot:
      check(g.a); check(g.b);
      if (g.a == g.b) throw std::invalid_argument("cnot: control == target");
      break;
    case GateKind::Swap:
      check(g.a); check(g.b);
      if (g.a == g.b) throw std::invalid_argument("swap: identical qubits");
      break;
    case GateKind::Pauli:
      if (g.fx.size() != num_qubits || g.fz.size() != num_qubits)
        throw std::invalid_argument("pauli: masks must match register size");
      break;
    default:
      check(g.a);
      break;
  }
  gates.push_back(g);
}

size_t Circuit::cnot_count() const {
  size_t n = 0;
  for (const Gate& g : gates) n += g.kind == GateKind::Cnot;
  return n;
}

size_t Circuit::measurement_count() const {
  size_t n = 0;
  for (const Gate& g : gates)
    n += g.kind == GateKind::MeasZ || g.kind == GateKind::MeasX;
  return n;
}

std::string Circuit::to_text() const {
  std::ostringstream out;
  out << "# qubits: " << num_qubits << "\n";
  for (const BlockLabel& l : labels)
    out << "#@block " << l.name << " " << l.first + 1 << " " << l.last + 1 << "\n";
  for (const Gate& g : gates) {
    switch (g.kind) {
      case GateKind::PrepZ: out << "PREPZ " << g.a + 1; break;
      case GateKind::PrepX: out << "PREPX " << g.a + 1; break;
      case GateKind::Hadamard: out << "H " << g.a + 1; break;
      case GateKind::Cnot: out << "CNOT " << g.a + 1 << " " << g.b + 1; break;
      case GateKind::Swap: out << "SWAP " << g.a + 1 << " " << g.b + 1; break;
      case GateKind::MeasZ: out << "MEASZ " << g.a + 1; break;
      case GateKind::MeasX: out << "MEASX " << g.a + 1; break;
      case GateKind::Pauli: {
        out << "FAULT";
        for (uint32_t q = 0; q < num_qubits; ++q) {
          bool x = g.fx.get(q), z = g.fz.get(q);
          if (x && z) out << " Y" << q + 1;
          else if (x) out << " X" << q + 1;
          else if (z) out << " Z" << q + 1;
        }
        break;
      }
    }
    out << "\n";
  }
  return out.str();
}

Circuit Circuit::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Circuit c;
  std::vector<Gate> pending;
  std::vector<BlockLabel> labels;
  std::vector<std::pair<size_t, std::vector<std::pair<char, uint32_t>>>> fault_terms;
  uint32_t declared_qubits = 0;
  uint32_t max_q = 0;
  size_t lineno = 0;

  auto parse_q = [&](const std::string& tok) -> uint32_t {
    size_t v = std::stoul(tok);
    if (v == 0) throw std::invalid_argument("line " + std::to_string(lineno) + ": qubit indices are 1-based");
    max_q = std::max<uint32_t>(max_q, static_cast<uint32_t>(v));
    return static_cast<uint32_t>(v - 1);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (line.rfind("#@block", 0) == 0) {
      std::istringstream ls(line.substr(7));
      BlockLabel l;
      size_t lo, hi;
      if (ls >> l.name >> lo >> hi) {
        l.first = static_cast<uint32_t>(lo - 1);
        l.last = static_cast<uint32_t>(hi - 1);
        labels.push_back(l);
      }
      continue;
    }
    if (line.rfind("# qubits:", 0) == 0) {
      declared_qubits = static_cast<uint32_t>(std::stoul(line.substr(9)));
      continue;
    }
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    try {
      if (kind == "PREPZ" || kind == "PREPX" || kind == "H" || kind == "MEASZ" || kind == "MEASX") {
        std::string q;
        if (!(ls >> q)) throw std::invalid_argument("missing qubit");
        Gate g;
        g.a = parse_q(q);
        g.kind = kind == "PREPZ" ? GateKind::PrepZ
               : kind == "PREPX" ? GateKind::PrepX
               : kind == "H" ? GateKind::Hadamard
               : kind == "MEASZ" ? GateKind::MeasZ : GateKind::MeasX;
        pending.push_back(g);
      } else if (kind == "CNOT" || kind == "SWAP") {
        std::string qa, qb;
        if (!(ls >> qa >> qb)) throw std::invalid_argument("missing qubits");
        Gate g;
        g.kind = kind == "CNOT" ? GateKind::Cnot : GateKind::Swap;
        g.a = parse_q(qa);
        g.b = parse_q(qb);
        pending.push_back(g);
      } else if (kind == "FAULT") {
        Gate g{GateKind::Pauli};
        std::string tok;
        std::vector<std::pair<char, uint32_t>> terms;
        while (ls >> tok) {
          if (tok.size() < 2 || (tok[0] != 'X' && tok[0] != 'Y' && tok[0] != 'Z'))
            throw std::invalid_argument("bad pauli term '" + tok + "'");
          terms.emplace_back(tok[0], parse_q(tok.substr(1)));
        }
        // masks resized once the register size is known
        pending.push_back(g);
        fault_terms.emplace_back(pending.size() - 1, std::move(terms));
      } else {
        throw std::invalid_argument("unknown gate kind '" + kind + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("circuit parse, line " + std::to_string(lineno) + ": " + e.what());
    }
  }

  c.num_qubits = std::max(declared_qubits, max_q);
  c.labels = std::move(labels);
  for (auto& [idx, terms] : fault_terms) {
    pending[idx].fx = BitVector(c.num_qubits);
    pending[idx].fz = BitVector(c.num_qubits);
    for (auto& [p, q] : terms) {
      if (p == 'X' || p == 'Y') pending[idx].fx.set(q, true);
      if (p == 'Z' || p == 'Y') pending[idx].fz.set(q, true);
    }
  }
  for (const Gate& g : pending) c.append(g);
  return c;
}

void transversal_cnot(Circuit& c, uint32_t block_a, uint32_t block_b, uint32_t len) {
  if (block_a + len > c.num_qubits || block_b + len > c.num_qubits)
    throw std::invalid_argument("transversal_cnot: block out of range");
  bool overlap = block_a < block_b ? block_a + len > block_b : block_b + len > block_a;
  if (overlap) throw std::invalid_argument("transversal_cnot: blocks overlap");
  for (uint32_t i = 0; i < len; ++i)
    c.append(Gate::cnot(block_a + i, block_b + i));
}

void logical_hadamard_layer(Circuit& c, uint32_t block_first) {
  if (block_first + 30 > c.num_qubits)
    throw std::invalid_argument("logical_hadamard_layer: needs a 30-qubit block");
  for (uint32_t q = 0; q < 30; ++q) c.append(Gate::h(block_first + q));
  for (uint32_t q = 0; q < 15; ++q)
    c.append(Gate::swap(block_first + q, block_first + q + 15));
}

std::vector<FaultLocation> enumerate_fault_locations(const Circuit& c) {
  std::vector<FaultLocation> locs;
  for (uint32_t i = 0; i < c.gates.size(); ++i) {
    switch (c.gates[i].kind) {
      case GateKind::Cnot:
        for (uint8_t p = 1; p <= 15; ++p) locs.push_back({i, p});
        break;
      case GateKind::PrepZ:
      case GateKind::MeasZ:
        locs.push_back({i, 1});  // X
        break;
      case GateKind::PrepX:
      case GateKind::MeasX:
        locs.push_back({i, 3});  // Z
        break;
      default:
        break;
    }
  }
  return locs;
}

void fault_masks(const Circuit& c, const FaultLocation& loc, BitVector& fx, BitVector& fz) {
  fx = BitVector(c.num_qubits);
  fz = BitVector(c.num_qubits);
  const Gate& g = c.gates[loc.gate_index];
  auto apply = [&](uint32_t q, uint8_t p) {
    if (p == 1 || p == 2) fx.set(q, true);
    if (p == 3 || p == 2) fz.set(q, true);
  };
  if (g.kind == GateKind::Cnot) {
    apply(g.a, loc.pauli >> 2);
    apply(g.b, loc.pauli & 3);
  } else {
    apply(g.a, loc.pauli);
  }
}

}  // namespace sdc
