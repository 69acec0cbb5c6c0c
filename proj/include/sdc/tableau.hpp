#pragma once

#include <cstdint>
#include <vector>

#include "sdc/circuit.hpp"
#include "sdc/gf2.hpp"
#include "sdc/rng.hpp"

namespace sdc {

// Stabilizer tableau in the destabilizer/stabilizer form: rows 0..n-1 are
// destabilizers, rows n..2n-1 stabilizers, each an (x | z | sign) triple.
class Tableau {
public:
  explicit Tableau(size_t n);

  size_t num_qubits() const { return n_; }

  void h(size_t q);
  void cnot(size_t c, size_t t);
  void swap(size_t a, size_t b);

  // Applies the Pauli X^{fx} Z^{fz}: flips the sign of every row that
  // anticommutes with it.
  void pauli(const gf2::BitVector& fx, const gf2::BitVector& fz);

  // Z-basis measurement; outcome is random_bit when non-deterministic.
  bool measure_z(size_t q, Rng& rng);
  // Same, but a forced outcome for branch exploration. Returns false if the
  // measurement was deterministic and disagrees with `want`.
  bool force_measure_z(size_t q, bool want);
  bool is_deterministic_z(size_t q) const;

  void reset_z(size_t q, Rng& rng);  // measure and flip into |0>
  void reset_x(size_t q, Rng& rng);

  bool x_bit(size_t row, size_t q) const { return xs_[row].get(q); }
  bool z_bit(size_t row, size_t q) const { return zs_[row].get(q); }
  bool sign(size_t row) const { return sign_[row]; }

private:
  friend struct CanonicalStabilizers;
  void rowsum(size_t h, size_t i);  // row h *= row i with phase tracking
  size_t n_;
  std::vector<gf2::BitVector> xs_, zs_;
  std::vector<bool> sign_;
};

// Canonical generating set of the stabilizer group; equal canonical forms
// mean equal states up to global phase.
struct CanonicalStabilizers {
  gf2::BitMatrix x, z;          // n rows each
  std::vector<uint8_t> signs;   // one per row

  bool operator==(const CanonicalStabilizers& o) const {
    return x == o.x && z == o.z && signs == o.signs;
  }
};

CanonicalStabilizers extract_stabilizer_group(const Tableau& t);

// Runs a circuit noiselessly on a fresh tableau (all qubits |0>).
// Measurement outcomes are appended to `outcomes` if given; measurement
// randomness is resolved with `rng`.
Tableau run_tableau(const Circuit& c, Rng& rng, std::vector<uint8_t>* outcomes = nullptr);

}  // namespace sdc
