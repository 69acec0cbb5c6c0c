#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Dense GF(2) vectors and matrices, packed 64 bits per word.
// All arithmetic is mod 2; values are immutable in spirit (operations
// return fresh objects) so they can be shared freely across threads.

namespace sdc::gf2 {

inline size_t words_for(size_t bits) { return (bits + 63) / 64; }

class BitVector {
public:
  BitVector() = default;
  explicit BitVector(size_t len) : len_(len), w_(words_for(len), 0) {}

  size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    uint64_t m = uint64_t(1) << (i & 63);
    if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
  }
  void flip(size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

  size_t weight() const;
  bool is_zero() const;

  BitVector& operator^=(const BitVector& o);
  friend BitVector operator^(BitVector a, const BitVector& b) { a ^= b; return a; }
  bool operator==(const BitVector& o) const { return len_ == o.len_ && w_ == o.w_; }

  // Parity of the AND with another vector (the GF(2) inner product).
  bool dot(const BitVector& o) const;

  const std::vector<uint64_t>& words() const { return w_; }
  std::vector<uint64_t>& words() { return w_; }

  std::string to_string() const;            // '0'/'1' characters, index 0 first
  static BitVector parse(std::string_view s);

private:
  size_t len_ = 0;
  std::vector<uint64_t> w_;
};

// True if a precedes b when both are read as bit strings from index 0.
// A 0 at the first differing index wins.
bool lex_less(const BitVector& a, const BitVector& b);

class BitMatrix {
public:
  BitMatrix() = default;
  BitMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), wpr_(words_for(cols)), w_(rows * wpr_, 0) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  bool get(size_t r, size_t c) const { return (w_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1; }
  void set(size_t r, size_t c, bool v) {
    uint64_t m = uint64_t(1) << (c & 63);
    if (v) w_[r * wpr_ + (c >> 6)] |= m; else w_[r * wpr_ + (c >> 6)] &= ~m;
  }

  BitVector row(size_t r) const;
  void set_row(size_t r, const BitVector& v);
  void xor_row(size_t dst, size_t src);     // row dst += row src
  void xor_row(size_t dst, const BitVector& v);
  void swap_rows(size_t a, size_t b);

  size_t row_weight(size_t r) const;
  size_t ones() const;

  bool operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && w_ == o.w_;
  }

  static BitMatrix identity(size_t n);
  static BitMatrix from_rows(const std::vector<BitVector>& rows, size_t cols);

  std::string to_string() const;            // one row per line
  static BitMatrix parse(std::string_view text);

  const uint64_t* row_words(size_t r) const { return w_.data() + r * wpr_; }
  uint64_t* row_words(size_t r) { return w_.data() + r * wpr_; }
  size_t words_per_row() const { return wpr_; }

private:
  size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<uint64_t> w_;
};

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);
BitMatrix mat_add(const BitMatrix& a, const BitMatrix& b);
BitMatrix transpose(const BitMatrix& m);

// v * m^T: one parity bit per row of m.
BitVector mul_vec(const BitMatrix& m, const BitVector& v);

struct RrefResult {
  BitMatrix reduced;
  std::vector<size_t> pivots;
  size_t rank = 0;
};

RrefResult rref(const BitMatrix& m);
size_t rank(const BitMatrix& m);

// Rows spanning { v : m v^T = 0 }; row count = cols - rank.
BitMatrix kernel(const BitMatrix& m);

// True if v lies in the row space of an already-reduced matrix.
bool in_rowspace(const RrefResult& basis, const BitVector& v);

// Minimum-weight representative of v + rowspace(basis), ties broken by
// lex_less. Exhausts all 2^rank combinations; rank must be <= 16.
BitVector reduce_mod_rowspace(const BitVector& v, const BitMatrix& basis);

}  // namespace sdc::gf2
