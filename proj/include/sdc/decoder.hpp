#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sdc/code.hpp"

namespace sdc {

// Exhaustive syndrome -> minimal-weight error table for one basis of the
// [[30,6,5]] code. Indexed by the 12-bit syndrome; entries are 30-bit
// error patterns. Built from all patterns up to weight w_max in order of
// increasing weight, lexicographic within a weight class, first writer
// wins. Syndromes still unfilled afterwards are completed by extending the
// enumeration one weight further for just those entries.
class LookupTable {
public:
  static constexpr size_t kSyndromes = 4096;

  PauliBasis basis() const { return basis_; }
  uint32_t w_max() const { return w_max_; }
  bool filled_at_w_max() const { return filled_at_w_max_; }

  uint32_t entry(uint16_t syndrome) const { return entries_[syndrome]; }
  bool fallback_used(uint16_t syndrome) const { return fallback_[syndrome]; }

  // Syndrome of a 30-bit pattern under the generating check matrix.
  uint16_t syndrome_of(uint32_t pattern) const;

  std::vector<uint8_t> serialize() const;
  static LookupTable deserialize(const std::vector<uint8_t>& bytes);

  void save(const std::string& path) const;
  static LookupTable load(const std::string& path);

  friend LookupTable build_lookup(const gf2::BitMatrix& h, PauliBasis basis, uint32_t w_max);

private:
  PauliBasis basis_ = PauliBasis::X;
  uint32_t w_max_ = 4;
  bool filled_at_w_max_ = false;
  std::array<uint32_t, kSyndromes> entries_{};
  std::array<uint8_t, kSyndromes> fallback_{};
  std::array<uint16_t, 30> col_syndrome_{};
};

// h must be 12 x 30. basis X decodes phase-flip (Z) errors seen by X-basis
// measurements; basis Z the mirror.
LookupTable build_lookup(const gf2::BitMatrix& h, PauliBasis basis, uint32_t w_max = 4);

// Constant-time indexed read.
uint32_t decode(const LookupTable& t, uint16_t syndrome);

struct DecodedBlock {
  uint32_t corrected = 0;   // measured + table entry, zero syndrome
  uint8_t logicals = 0;     // k bits
  uint16_t syndrome = 0;
};

// Decodes a transversal 30-qubit measurement. The table basis selects the
// matching check and logical matrices: an X-basis block uses the X table
// and lx, a Z-basis block the Z table and lz.
DecodedBlock extract_logicals(const gf2::BitVector& measured, const LookupTable& t,
                              const StabilizerCode& code);
DecodedBlock extract_logicals(uint32_t measured_mask, const LookupTable& t,
                              const StabilizerCode& code);

// 30-bit row masks of a matrix, for the fast decoding paths.
std::vector<uint32_t> row_masks_30(const gf2::BitMatrix& m);

}  // namespace sdc
