#include "sdc/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sdc {

namespace {

constexpr char kMagic[8] = {'S', 'D', 'C', 'L', 'U', 'T', '0', '1'};

uint32_t crc32(const uint8_t* data, size_t len) {
  uint32_t crc = 0xffffffffu;
  for (size_t i = 0; i < len; ++i) {
    crc ^= data[i];
    for (int b = 0; b < 8; ++b)
      crc = (crc >> 1) ^ (0xedb88320u & (~(crc & 1) + 1));
  }
  return ~crc;
}

// Key ordering bit strings "b1 b2 ... b30" lexicographically ascending:
// qubit 1 is the most significant position.
uint32_t lex_key(uint32_t pattern) {
  uint32_t rev = 0;
  for (int i = 0; i < 30; ++i)
    if ((pattern >> i) & 1) rev |= 1u << (29 - i);
  return rev;
}

void enumerate_weight(uint32_t w, std::vector<uint32_t>& out) {
  out.clear();
  if (w == 0) {
    out.push_back(0);
    return;
  }
  std::vector<int> idx(w);
  for (uint32_t i = 0; i < w; ++i) idx[i] = static_cast<int>(i);
  while (true) {
    uint32_t m = 0;
    for (int i : idx) m |= 1u << i;
    out.push_back(m);
    int i = static_cast<int>(w) - 1;
    while (i >= 0 && idx[i] == 30 - static_cast<int>(w) + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (size_t j = i + 1; j < w; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(), [](uint32_t a, uint32_t b) { return lex_key(a) < lex_key(b); });
}

}  // namespace

std::vector<uint32_t> row_masks_30(const gf2::BitMatrix& m) {
  if (m.cols() != 30) throw std::invalid_argument("row_masks_30: expected 30 columns");
  std::vector<uint32_t> out(m.rows(), 0);
  for (size_t r = 0; r < m.rows(); ++r)
    out[r] = static_cast<uint32_t>(m.row_words(r)[0] & 0x3fffffffu);
  return out;
}

uint16_t LookupTable::syndrome_of(uint32_t pattern) const {
  uint16_t s = 0;
  uint32_t p = pattern;
  while (p) {
    int q = std::countr_zero(p);
    p &= p - 1;
    s ^= col_syndrome_[q];
  }
  return s;
}

LookupTable build_lookup(const gf2::BitMatrix& h, PauliBasis basis, uint32_t w_max) {
  if (h.rows() != 12 || h.cols() != 30)
    throw std::invalid_argument("build_lookup: check matrix must be 12 x 30");
  LookupTable t;
  t.basis_ = basis;
  t.w_max_ = w_max;

  std::vector<uint32_t> rows = row_masks_30(h);
  for (int q = 0; q < 30; ++q) {
    uint16_t s = 0;
    for (int r = 0; r < 12; ++r)
      if ((rows[r] >> q) & 1) s |= uint16_t(1) << r;
    t.col_syndrome_[q] = s;
  }

  std::array<uint8_t, LookupTable::kSyndromes> filled{};
  size_t remaining = LookupTable::kSyndromes;
  std::vector<uint32_t> patterns;
  for (uint32_t w = 0; w <= w_max && remaining; ++w) {
    enumerate_weight(w, patterns);
    for (uint32_t p : patterns) {
      uint16_t s = t.syndrome_of(p);
      if (!filled[s]) {
        filled[s] = 1;
        t.entries_[s] = p;
        --remaining;
      }
    }
  }
  t.filled_at_w_max_ = remaining == 0;

  // Complete any leftover syndromes at the next weight so every index
  // still maps to a lowest-weight pattern. Weight 8 is far beyond what a
  // rank-12 distance-5 check matrix needs.
  for (uint32_t w = w_max + 1; remaining && w <= 8; ++w) {
    enumerate_weight(w, patterns);
    for (uint32_t p : patterns) {
      uint16_t s = t.syndrome_of(p);
      if (!filled[s]) {
        filled[s] = 1;
        t.entries_[s] = p;
        t.fallback_[s] = 1;
        --remaining;
      }
    }
  }
  if (remaining)
    throw std::runtime_error("build_lookup: check matrix does not span 12 syndrome bits");
  return t;
}

uint32_t decode(const LookupTable& t, uint16_t syndrome) {
  return t.entry(syndrome & 0xfff);
}

DecodedBlock extract_logicals(const gf2::BitVector& measured, const LookupTable& t,
                              const StabilizerCode& code) {
  if (measured.size() != 30)
    throw std::invalid_argument("extract_logicals: expected 30 measured bits");
  return extract_logicals(static_cast<uint32_t>(measured.words()[0] & 0x3fffffffu), t, code);
}

DecodedBlock extract_logicals(uint32_t measured_mask, const LookupTable& t,
                              const StabilizerCode& code) {
  const gf2::BitMatrix& logical = t.basis() == PauliBasis::X ? code.lx : code.lz;
  if (logical.rows() != code.k || logical.cols() != 30)
    throw std::invalid_argument("extract_logicals: logical matrix mismatch");
  DecodedBlock out;
  out.syndrome = t.syndrome_of(measured_mask);
  out.corrected = measured_mask ^ t.entry(out.syndrome);
  std::vector<uint32_t> lrows = row_masks_30(logical);
  for (size_t i = 0; i < lrows.size(); ++i)
    if (std::popcount(out.corrected & lrows[i]) & 1) out.logicals |= uint8_t(1) << i;
  return out;
}

std::vector<uint8_t> LookupTable::serialize() const {
  // 32-byte header (magic, basis, w_max, coverage flag, entry count, crc32
  // of the payload), then 4096 little-endian 4-byte entries.
  std::vector<uint8_t> bytes(32 + kSyndromes * 4, 0);
  std::memcpy(bytes.data(), kMagic, 8);
  bytes[8] = basis_ == PauliBasis::X ? 'X' : 'Z';
  bytes[9] = static_cast<uint8_t>(w_max_);
  bytes[10] = filled_at_w_max_ ? 1 : 0;
  uint32_t count = kSyndromes;
  for (int i = 0; i < 4; ++i) bytes[12 + i] = (count >> (8 * i)) & 0xff;
  uint8_t* p = bytes.data() + 32;
  for (uint32_t e : entries_) {
    for (int i = 0; i < 4; ++i) p[i] = (e >> (8 * i)) & 0xff;
    p += 4;
  }
  uint32_t crc = crc32(bytes.data() + 32, bytes.size() - 32);
  for (int i = 0; i < 4; ++i) bytes[16 + i] = (crc >> (8 * i)) & 0xff;
  return bytes;
}

LookupTable LookupTable::deserialize(const std::vector<uint8_t>& bytes) {
  if (bytes.size() != 32 + kSyndromes * 4 || std::memcmp(bytes.data(), kMagic, 8) != 0)
    throw std::invalid_argument("lookup table: bad magic or size");
  LookupTable t;
  t.basis_ = bytes[8] == 'X' ? PauliBasis::X : PauliBasis::Z;
  t.w_max_ = bytes[9];
  t.filled_at_w_max_ = bytes[10] != 0;
  uint32_t crc_stored = 0;
  for (int i = 0; i < 4; ++i) crc_stored |= uint32_t(bytes[16 + i]) << (8 * i);
  if (crc32(bytes.data() + 32, bytes.size() - 32) != crc_stored)
    throw std::invalid_argument("lookup table: checksum mismatch");
  const uint8_t* p = bytes.data() + 32;
  for (auto& e : t.entries_) {
    e = 0;
    for (int i = 0; i < 4; ++i) e |= uint32_t(p[i]) << (8 * i);
    p += 4;
  }
  // Derived fields: the syndrome map comes from the built-in code and the
  // fallback flags from the stored patterns themselves.
  const StabilizerCode& code = builtin_code();
  std::vector<uint32_t> rows = row_masks_30(t.basis_ == PauliBasis::X ? code.sx : code.sz);
  for (int q = 0; q < 30; ++q) {
    uint16_t s = 0;
    for (int r = 0; r < 12; ++r)
      if ((rows[r] >> q) & 1) s |= uint16_t(1) << r;
    t.col_syndrome_[q] = s;
  }
  for (size_t s = 0; s < kSyndromes; ++s)
    t.fallback_[s] = std::popcount(t.entries_[s]) > static_cast<int>(t.w_max_) ? 1 : 0;
  return t;
}

void LookupTable::save(const std::string& path) const {
  std::vector<uint8_t> bytes = serialize();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

LookupTable LookupTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace sdc
