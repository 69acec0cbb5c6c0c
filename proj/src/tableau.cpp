#include "sdc/tableau.hpp"

#include <stdexcept>

namespace sdc {

using gf2::BitMatrix;
using gf2::BitVector;

Tableau::Tableau(size_t n) : n_(n), sign_(2 * n, false) {
  xs_.reserve(2 * n);
  zs_.reserve(2 * n);
  for (size_t i = 0; i < 2 * n; ++i) {
    xs_.emplace_back(n);
    zs_.emplace_back(n);
  }
  for (size_t q = 0; q < n; ++q) {
    xs_[q].set(q, true);       // destabilizer X_q
    zs_[n + q].set(q, true);   // stabilizer Z_q
  }
}

void Tableau::h(size_t q) {
  for (size_t i = 0; i < 2 * n_; ++i) {
    bool x = xs_[i].get(q), z = zs_[i].get(q);
    if (x && z) sign_[i] = !sign_[i];
    xs_[i].set(q, z);
    zs_[i].set(q, x);
  }
}

void Tableau::cnot(size_t c, size_t t) {
  for (size_t i = 0; i < 2 * n_; ++i) {
    bool xc = xs_[i].get(c), zt = zs_[i].get(t);
    bool xt = xs_[i].get(t), zc = zs_[i].get(c);
    if (xc && zt && (xt == zc)) sign_[i] = !sign_[i];
    xs_[i].set(t, xt ^ xc);
    zs_[i].set(c, zc ^ zt);
  }
}

void Tableau::swap(size_t a, size_t b) {
  for (size_t i = 0; i < 2 * n_; ++i) {
    bool xa = xs_[i].get(a), xb = xs_[i].get(b);
    xs_[i].set(a, xb);
    xs_[i].set(b, xa);
    bool za = zs_[i].get(a), zb = zs_[i].get(b);
    zs_[i].set(a, zb);
    zs_[i].set(b, za);
  }
}

void Tableau::pauli(const BitVector& fx, const BitVector& fz) {
  for (size_t i = 0; i < 2 * n_; ++i)
    if (xs_[i].dot(fz) ^ zs_[i].dot(fx)) sign_[i] = !sign_[i];
}

namespace {

// Phase exponent contribution of multiplying single-qubit Paulis
// (x1,z1) * (x2,z2), in units of i, mod 4.
int g_phase(bool x1, bool z1, bool x2, bool z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return int(z2) - int(x2);             // Y
  if (x1) return int(z2) * (2 * int(x2) - 1);         // X
  return int(x2) * (1 - 2 * int(z2));                 // Z
}

}  // namespace

void Tableau::rowsum(size_t h, size_t i) {
  int phase = 2 * int(sign_[h]) + 2 * int(sign_[i]);
  for (size_t q = 0; q < n_; ++q)
    phase += g_phase(xs_[i].get(q), zs_[i].get(q), xs_[h].get(q), zs_[h].get(q));
  phase &= 3;
  sign_[h] = phase == 2;
  xs_[h] ^= xs_[i];
  zs_[h] ^= zs_[i];
}

bool Tableau::is_deterministic_z(size_t q) const {
  for (size_t p = n_; p < 2 * n_; ++p)
    if (xs_[p].get(q)) return false;
  return true;
}

bool Tableau::measure_z(size_t q, Rng& rng) {
  for (size_t p = n_; p < 2 * n_; ++p) {
    if (!xs_[p].get(q)) continue;
    bool outcome = rng.bit();
    for (size_t i = 0; i < 2 * n_; ++i)
      if (i != p && xs_[i].get(q)) rowsum(i, p);
    xs_[p - n_] = xs_[p];
    zs_[p - n_] = zs_[p];
    sign_[p - n_] = sign_[p];
    xs_[p] = BitVector(n_);
    zs_[p] = BitVector(n_);
    zs_[p].set(q, true);
    sign_[p] = outcome;
    return outcome;
  }
  // Deterministic: accumulate into a scratch row.
  BitVector sx(n_), sz(n_);
  bool ssign = false;
  for (size_t i = 0; i < n_; ++i) {
    if (!xs_[i].get(q)) continue;
    int phase = 2 * int(ssign) + 2 * int(sign_[n_ + i]);
    for (size_t j = 0; j < n_; ++j)
      phase += g_phase(xs_[n_ + i].get(j), zs_[n_ + i].get(j), sx.get(j), sz.get(j));
    ssign = (phase & 3) == 2;
    sx ^= xs_[n_ + i];
    sz ^= zs_[n_ + i];
  }
  return ssign;
}

bool Tableau::force_measure_z(size_t q, bool want) {
  for (size_t p = n_; p < 2 * n_; ++p) {
    if (!xs_[p].get(q)) continue;
    for (size_t i = 0; i < 2 * n_; ++i)
      if (i != p && xs_[i].get(q)) rowsum(i, p);
    xs_[p - n_] = xs_[p];
    zs_[p - n_] = zs_[p];
    sign_[p - n_] = sign_[p];
    xs_[p] = BitVector(n_);
    zs_[p] = BitVector(n_);
    zs_[p].set(q, true);
    sign_[p] = want;
    return true;
  }
  Rng dummy(0);
  return measure_z(q, dummy) == want;
}

void Tableau::reset_z(size_t q, Rng& rng) {
  if (measure_z(q, rng)) {
    // flip |1> -> |0> with X_q: rows anticommuting with X_q change sign
    for (size_t i = 0; i < 2 * n_; ++i)
      if (zs_[i].get(q)) sign_[i] = !sign_[i];
  }
}

void Tableau::reset_x(size_t q, Rng& rng) {
  reset_z(q, rng);
  h(q);
}

CanonicalStabilizers extract_stabilizer_group(const Tableau& t) {
  const size_t n = t.num_qubits();
  struct Row {
    BitVector x, z;
    bool sign;
  };
  std::vector<Row> rows;
  rows.reserve(n);
  for (size_t p = n; p < 2 * n; ++p) {
    Row r{BitVector(n), BitVector(n), t.sign(p)};
    for (size_t q = 0; q < n; ++q) {
      r.x.set(q, t.x_bit(p, q));
      r.z.set(q, t.z_bit(p, q));
    }
    rows.push_back(std::move(r));
  }

  auto mult_into = [&](Row& h, const Row& i) {
    int phase = 2 * int(h.sign) + 2 * int(i.sign);
    for (size_t q = 0; q < n; ++q)
      phase += g_phase(i.x.get(q), i.z.get(q), h.x.get(q), h.z.get(q));
    h.sign = (phase & 3) == 2;
    h.x ^= i.x;
    h.z ^= i.z;
  };

  // Gaussian elimination over columns x_0..x_{n-1} then z_0..z_{n-1}.
  size_t r = 0;
  for (size_t col = 0; col < 2 * n && r < n; ++col) {
    auto bit = [&](const Row& row) {
      return col < n ? row.x.get(col) : row.z.get(col - n);
    };
    size_t p = r;
    while (p < n && !bit(rows[p])) ++p;
    if (p == n) continue;
    std::swap(rows[r], rows[p]);
    for (size_t i = 0; i < n; ++i)
      if (i != r && bit(rows[i])) mult_into(rows[i], rows[r]);
    ++r;
  }

  CanonicalStabilizers out;
  out.x = BitMatrix(n, n);
  out.z = BitMatrix(n, n);
  out.signs.resize(n);
  for (size_t i = 0; i < n; ++i) {
    out.x.set_row(i, rows[i].x);
    out.z.set_row(i, rows[i].z);
    out.signs[i] = rows[i].sign;
  }
  return out;
}

Tableau run_tableau(const Circuit& c, Rng& rng, std::vector<uint8_t>* outcomes) {
  Tableau t(c.num_qubits);
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::PrepZ: t.reset_z(g.a, rng); break;
      case GateKind::PrepX: t.reset_x(g.a, rng); break;
      case GateKind::Hadamard: t.h(g.a); break;
      case GateKind::Cnot: t.cnot(g.a, g.b); break;
      case GateKind::Swap: t.swap(g.a, g.b); break;
      case GateKind::MeasZ: {
        bool b = t.measure_z(g.a, rng);
        if (outcomes) outcomes->push_back(b);
        break;
      }
      case GateKind::MeasX: {
        t.h(g.a);
        bool b = t.measure_z(g.a, rng);
        t.h(g.a);
        if (outcomes) outcomes->push_back(b);
        break;
      }
      case GateKind::Pauli: t.pauli(g.fx, g.fz); break;
    }
  }
  return t;
}

}  // namespace sdc
