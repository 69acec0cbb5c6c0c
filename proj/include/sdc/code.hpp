#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdc/gf2.hpp"

namespace sdc {

// Stabilizer matrix (hx | hz) of a non-CSS code. Rows must satisfy
// hx hz^T + hz hx^T = 0 so that the symplectic double is a valid CSS code.
struct NonCssSeed {
  size_t n = 0;
  gf2::BitMatrix hx;  // r x n
  gf2::BitMatrix hz;  // r x n
};

// CSS code with explicit logical operator matrices.
// Invariants: sx sz^T = 0, sx lz^T = 0, sz lx^T = 0, lx lz^T = I_k.
struct StabilizerCode {
  size_t n = 0;
  size_t k = 0;
  gf2::BitMatrix sx;  // X-stabilizer matrix
  gf2::BitMatrix sz;  // Z-stabilizer matrix
  gf2::BitMatrix lx;  // logical X matrix (k x n)
  gf2::BitMatrix lz;  // logical Z matrix (k x n)
};

enum class PauliBasis : uint8_t { X, Z };

struct LogicalOperator {
  PauliBasis basis;
  size_t index;            // logical qubit index, 0-based
  gf2::BitVector support;  // over n physical qubits
};

// The [[15,3,5]] seed whose symplectic double is the built-in [[30,6,5]] code.
const NonCssSeed& builtin_seed();

// The [[30,6,5]] code with the published logical operator matrices.
const StabilizerCode& builtin_code();

// Published logical operator supports, 1-based qubit indices, order
// X_L1..X_L6 then Z_L1..Z_L6.
const std::vector<std::vector<int>>& builtin_logical_supports();

// Constructs the doubled CSS code sx = (hx|hz), sz = (hz|hx). Logical
// matrices are left empty; fill them with derive_logicals or constants.
// Throws if the seed violates symplectic orthogonality (names the rows).
StabilizerCode symplectic_double(const NonCssSeed& seed);

// Derives logical matrices satisfying all four code invariants.
struct LogicalPair {
  gf2::BitMatrix lx, lz;
};
LogicalPair derive_logicals(const StabilizerCode& code);

// True when span(a rows + stab rows) == span(b rows + stab rows).
bool row_equivalent_mod(const gf2::BitMatrix& a, const gf2::BitMatrix& b,
                        const gf2::BitMatrix& stab);

// Checks every code invariant; returns a description of the first failure.
std::optional<std::string> validate_code(const StabilizerCode& code);

struct DistanceResult {
  bool exact = false;       // false means "no logical of weight <= w_max"
  size_t distance = 0;      // valid when exact
  gf2::BitVector witness;   // a minimum-weight logical support when exact
  PauliBasis witness_basis = PauliBasis::Z;
};

// Exhaustive search over all error patterns of weight <= w_max, X and Z
// types independently. Partitioned across threads by first support index.
DistanceResult code_distance(const StabilizerCode& code, size_t w_max);
DistanceResult code_distance_serial(const StabilizerCode& code, size_t w_max);

// Code bundle file: named sections SX, SZ, LX, LZ, each followed by rows
// in the matrix text format.
std::string bundle_to_string(const StabilizerCode& code);
StabilizerCode bundle_parse(const std::string& text);

}  // namespace sdc
