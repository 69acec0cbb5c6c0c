#include "sdc/gf2.hpp"

#include <bit>
#include <cctype>
#include <stdexcept>

namespace sdc::gf2 {

size_t BitVector::weight() const {
  size_t n = 0;
  for (uint64_t w : w_) n += std::popcount(w);
  return n;
}

bool BitVector::is_zero() const {
  for (uint64_t w : w_)
    if (w) return false;
  return true;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (len_ != o.len_) throw std::invalid_argument("BitVector xor: length mismatch");
  for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

bool BitVector::dot(const BitVector& o) const {
  if (len_ != o.len_) throw std::invalid_argument("BitVector dot: length mismatch");
  uint64_t acc = 0;
  for (size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
  return std::popcount(acc) & 1;
}

std::string BitVector::to_string() const {
  std::string s(len_, '0');
  for (size_t i = 0; i < len_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BitVector BitVector::parse(std::string_view s) {
  BitVector v(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') v.set(i, true);
    else if (s[i] != '0') throw std::invalid_argument("BitVector parse: expected '0' or '1'");
  }
  return v;
}

bool lex_less(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("lex_less: length mismatch");
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (size_t i = 0; i < wa.size(); ++i) {
    uint64_t d = wa[i] ^ wb[i];
    if (d) {
      uint64_t low = d & (~d + 1);  // lowest differing bit = first differing index
      return (wa[i] & low) == 0;
    }
  }
  return false;
}

BitVector BitMatrix::row(size_t r) const {
  BitVector v(cols_);
  for (size_t i = 0; i < wpr_; ++i) v.words()[i] = w_[r * wpr_ + i];
  return v;
}

void BitMatrix::set_row(size_t r, const BitVector& v) {
  if (v.size() != cols_) throw std::invalid_argument("set_row: width mismatch");
  for (size_t i = 0; i < wpr_; ++i) w_[r * wpr_ + i] = v.words()[i];
}

void BitMatrix::xor_row(size_t dst, size_t src) {
  uint64_t* d = row_words(dst);
  const uint64_t* s = row_words(src);
  for (size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
}

void BitMatrix::xor_row(size_t dst, const BitVector& v) {
  uint64_t* d = row_words(dst);
  for (size_t i = 0; i < wpr_; ++i) d[i] ^= v.words()[i];
}

void BitMatrix::swap_rows(size_t a, size_t b) {
  if (a == b) return;
  uint64_t* pa = row_words(a);
  uint64_t* pb = row_words(b);
  for (size_t i = 0; i < wpr_; ++i) std::swap(pa[i], pb[i]);
}

size_t BitMatrix::row_weight(size_t r) const {
  size_t n = 0;
  const uint64_t* p = row_words(r);
  for (size_t i = 0; i < wpr_; ++i) n += std::popcount(p[i]);
  return n;
}

size_t BitMatrix::ones() const {
  size_t n = 0;
  for (uint64_t w : w_) n += std::popcount(w);
  return n;
}

BitMatrix BitMatrix::identity(size_t n) {
  BitMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows, size_t cols) {
  BitMatrix m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

std::string BitMatrix::to_string() const {
  std::string s;
  s.reserve(rows_ * (cols_ + 1));
  for (size_t r = 0; r < rows_; ++r) {
    s += row(r).to_string();
    s += '\n';
  }
  return s;
}

BitMatrix BitMatrix::parse(std::string_view text) {
  std::vector<BitVector> rows;
  size_t cols = 0;
  size_t pos = 0;
  size_t lineno = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++lineno;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    if (line.empty()) continue;
    BitVector v;
    try {
      v = BitVector::parse(line);
    } catch (const std::exception&) {
      throw std::invalid_argument("matrix parse: bad character on line " + std::to_string(lineno));
    }
    if (rows.empty()) cols = v.size();
    else if (v.size() != cols)
      throw std::invalid_argument("matrix parse: ragged row on line " + std::to_string(lineno));
    rows.push_back(std::move(v));
  }
  return from_rows(rows, cols);
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
  BitMatrix out(a.rows(), b.cols());
  for (size_t r = 0; r < a.rows(); ++r) {
    for (size_t k = 0; k < a.cols(); ++k)
      if (a.get(r, k)) out.xor_row(r, b.row(k));
  }
  return out;
}

BitMatrix mat_add(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("mat_add: dimension mismatch");
  BitMatrix out = a;
  for (size_t r = 0; r < a.rows(); ++r) out.xor_row(r, b.row(r));
  return out;
}

BitMatrix transpose(const BitMatrix& m) {
  BitMatrix out(m.cols(), m.rows());
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) out.set(c, r, true);
  return out;
}

BitVector mul_vec(const BitMatrix& m, const BitVector& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("mul_vec: dimension mismatch");
  BitVector out(m.rows());
  const size_t wpr = m.words_per_row();
  for (size_t r = 0; r < m.rows(); ++r) {
    uint64_t acc = 0;
    const uint64_t* p = m.row_words(r);
    for (size_t i = 0; i < wpr; ++i) acc ^= p[i] & v.words()[i];
    if (std::popcount(acc) & 1) out.set(r, true);
  }
  return out;
}

RrefResult rref(const BitMatrix& m) {
  RrefResult res;
  res.reduced = m;
  BitMatrix& a = res.reduced;
  size_t r = 0;
  for (size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    size_t p = r;
    while (p < a.rows() && !a.get(p, c)) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (size_t i = 0; i < a.rows(); ++i)
      if (i != r && a.get(i, c)) a.xor_row(i, r);
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

size_t rank(const BitMatrix& m) { return rref(m).rank; }

BitMatrix kernel(const BitMatrix& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : rr.pivots) is_pivot[c] = true;
  BitMatrix out(m.cols() - rr.rank, m.cols());
  size_t k = 0;
  for (size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    out.set(k, c, true);
    for (size_t r = 0; r < rr.rank; ++r)
      if (rr.reduced.get(r, c)) out.set(k, rr.pivots[r], true);
    ++k;
  }
  return out;
}

bool in_rowspace(const RrefResult& basis, const BitVector& v) {
  BitVector x = v;
  for (size_t r = 0; r < basis.rank; ++r)
    if (x.get(basis.pivots[r])) x ^= basis.reduced.row(r);
  return x.is_zero();
}

BitVector reduce_mod_rowspace(const BitVector& v, const BitMatrix& basis) {
  if (basis.cols() != v.size())
    throw std::invalid_argument("reduce_mod_rowspace: dimension mismatch");
  RrefResult rr = rref(basis);
  if (rr.rank > 16)
    throw std::invalid_argument("reduce_mod_rowspace: rank > 16 not supported");
  std::vector<BitVector> rows;
  rows.reserve(rr.rank);
  for (size_t r = 0; r < rr.rank; ++r) rows.push_back(rr.reduced.row(r));

  // Gray-code walk over all 2^rank combinations: one row xor per step.
  BitVector cur = v;
  BitVector best = cur;
  size_t best_w = cur.weight();
  const uint64_t total = uint64_t(1) << rr.rank;
  for (uint64_t i = 1; i < total; ++i) {
    cur ^= rows[std::countr_zero(i)];
    size_t w = cur.weight();
    if (w < best_w || (w == best_w && lex_less(cur, best))) {
      best = cur;
      best_w = w;
    }
  }
  return best;
}

}  // namespace sdc::gf2
