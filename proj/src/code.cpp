#include "sdc/code.hpp"

#include <omp.h>

#include <sstream>
#include <stdexcept>

namespace sdc {

using gf2::BitMatrix;
using gf2::BitVector;

namespace {

// Stabilizer matrix H = (HX | HZ) of the [[15,3,5]] non-CSS code, one row
// per line, 30 columns.
constexpr const char* kSeedRows[12] = {
    "100000000101010000000011111001",
    "000000011111001100000011010011",
    "010000011110010000000111111101",
    "000000111111101010000100001111",
    "001000010011110000000101111111",
    "000000101111111001000111100001",
    "000100010101000000000100111110",
    "000000100111110000100110010110",
    "000010001010100000000010011111",
    "000000010011111000010011001011",
    "000001011001101000000111001110",
    "000000111001110000001100000011",
};

// Rows of M; M_X = M_Z = blockdiag(M, M).
constexpr const char* kMRows[3] = {
    "100101100110100",
    "010001010100010",
    "001011001101001",
};

BitMatrix seed_half(bool z_half) {
  BitMatrix m(12, 15);
  for (size_t r = 0; r < 12; ++r)
    for (size_t c = 0; c < 15; ++c)
      if (kSeedRows[r][(z_half ? 15 : 0) + c] == '1') m.set(r, c, true);
  return m;
}

BitMatrix block_diag_m() {
  BitMatrix m(6, 30);
  for (size_t r = 0; r < 3; ++r)
    for (size_t c = 0; c < 15; ++c)
      if (kMRows[r][c] == '1') {
        m.set(r, c, true);
        m.set(r + 3, c + 15, true);
      }
  return m;
}

bool is_zero_matrix(const BitMatrix& m) { return m.ones() == 0; }

}  // namespace

const NonCssSeed& builtin_seed() {
  static const NonCssSeed seed = [] {
    NonCssSeed s;
    s.n = 15;
    s.hx = seed_half(false);
    s.hz = seed_half(true);
    return s;
  }();
  return seed;
}

const StabilizerCode& builtin_code() {
  static const StabilizerCode code = [] {
    StabilizerCode c = symplectic_double(builtin_seed());
    c.lx = block_diag_m();
    c.lz = block_diag_m();
    c.k = 6;
    return c;
  }();
  return code;
}

const std::vector<std::vector<int>>& builtin_logical_supports() {
  // X_L1..X_L6 then Z_L1..Z_L6, as listed in the code definition.
  static const std::vector<std::vector<int>> supports = {
      {1, 4, 6, 7, 10, 11, 13},
      {2, 6, 8, 10, 14},
      {3, 5, 6, 9, 10, 12, 15},
      {16, 19, 21, 22, 25, 26, 28},
      {17, 21, 23, 25, 29},
      {18, 20, 21, 24, 25, 27, 30},
      {1, 4, 6, 7, 10, 11, 13},
      {2, 6, 8, 10, 14},
      {3, 5, 6, 9, 10, 12, 15},
      {16, 19, 21, 22, 25, 26, 28},
      {17, 21, 23, 25, 29},
      {18, 20, 21, 24, 25, 27, 30},
  };
  return supports;
}

StabilizerCode symplectic_double(const NonCssSeed& seed) {
  const size_t n = seed.n;
  if (seed.hx.rows() != seed.hz.rows() || seed.hx.cols() != n || seed.hz.cols() != n)
    throw std::invalid_argument("symplectic_double: seed matrices malformed");
  const size_t r = seed.hx.rows();

  // hx hz^T + hz hx^T must vanish row pair by row pair.
  BitMatrix a = gf2::mat_mul(seed.hx, gf2::transpose(seed.hz));
  BitMatrix b = gf2::mat_mul(seed.hz, gf2::transpose(seed.hx));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j)
      if (a.get(i, j) != b.get(i, j))
        throw std::invalid_argument(
            "symplectic_double: rows " + std::to_string(i + 1) + " and " +
            std::to_string(j + 1) + " violate symplectic orthogonality");

  StabilizerCode code;
  code.n = 2 * n;
  code.sx = BitMatrix(r, 2 * n);
  code.sz = BitMatrix(r, 2 * n);
  for (size_t i = 0; i < r; ++i)
    for (size_t c = 0; c < n; ++c) {
      if (seed.hx.get(i, c)) {
        code.sx.set(i, c, true);
        code.sz.set(i, c + n, true);
      }
      if (seed.hz.get(i, c)) {
        code.sx.set(i, c + n, true);
        code.sz.set(i, c, true);
      }
    }
  code.k = code.n - gf2::rank(code.sx) - gf2::rank(code.sz);
  return code;
}

LogicalPair derive_logicals(const StabilizerCode& code) {
  if (!is_zero_matrix(gf2::mat_mul(code.sx, gf2::transpose(code.sz))))
    throw std::invalid_argument("derive_logicals: sx sz^T != 0");

  // X-type candidates commute with every Z stabilizer; quotient out the
  // X stabilizers to get k independent logical X representatives.
  auto pick_cosets = [&](const BitMatrix& checks, const BitMatrix& stabs) {
    BitMatrix ker = gf2::kernel(checks);
    gf2::RrefResult sr = gf2::rref(stabs);
    std::vector<BitVector> out;
    BitMatrix accum = sr.reduced;  // grows as logicals are added
    for (size_t i = 0; i < ker.rows() && out.size() < code.k; ++i) {
      BitVector v = ker.row(i);
      gf2::RrefResult ar = gf2::rref(accum);
      if (gf2::in_rowspace(ar, v)) continue;
      out.push_back(v);
      BitMatrix next(accum.rows() + 1, code.n);
      for (size_t r = 0; r < accum.rows(); ++r) next.set_row(r, accum.row(r));
      next.set_row(accum.rows(), v);
      accum = next;
    }
    if (out.size() != code.k)
      throw std::invalid_argument("derive_logicals: inconsistent code");
    return BitMatrix::from_rows(out, code.n);
  };

  BitMatrix lx = pick_cosets(code.sz, code.sx);
  BitMatrix lz = pick_cosets(code.sx, code.sz);

  // Fix the pairing so lx lz^T = I_k: replace lz by A^{-T} lz where
  // A = lx lz^T (invertible because the spans are complementary).
  BitMatrix pairing = gf2::mat_mul(lx, gf2::transpose(lz));
  // Invert over GF(2) via row reduction of (A | I).
  const size_t k = code.k;
  BitMatrix aug(k, 2 * k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) aug.set(i, j, pairing.get(i, j));
    aug.set(i, k + i, true);
  }
  gf2::RrefResult ar = gf2::rref(aug);
  if (ar.rank != k) throw std::invalid_argument("derive_logicals: singular pairing");
  BitMatrix inv(k, k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) inv.set(i, j, ar.reduced.get(i, k + j));
  BitMatrix lz_fixed = gf2::mat_mul(gf2::transpose(inv), lz);
  return {lx, lz_fixed};
}

bool row_equivalent_mod(const BitMatrix& a, const BitMatrix& b, const BitMatrix& stab) {
  auto span_with = [&](const BitMatrix& m) {
    BitMatrix all(m.rows() + stab.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); ++r) all.set_row(r, m.row(r));
    for (size_t r = 0; r < stab.rows(); ++r) all.set_row(m.rows() + r, stab.row(r));
    gf2::RrefResult rr = gf2::rref(all);
    BitMatrix out(rr.rank, m.cols());
    for (size_t r = 0; r < rr.rank; ++r) out.set_row(r, rr.reduced.row(r));
    return out;
  };
  return span_with(a) == span_with(b);
}

std::optional<std::string> validate_code(const StabilizerCode& code) {
  if (!is_zero_matrix(gf2::mat_mul(code.sx, gf2::transpose(code.sz))))
    return "sx sz^T != 0";
  if (!is_zero_matrix(gf2::mat_mul(code.sx, gf2::transpose(code.lz))))
    return "sx lz^T != 0";
  if (!is_zero_matrix(gf2::mat_mul(code.sz, gf2::transpose(code.lx))))
    return "sz lx^T != 0";
  BitMatrix pairing = gf2::mat_mul(code.lx, gf2::transpose(code.lz));
  if (!(pairing == BitMatrix::identity(code.k)))
    return "lx lz^T != I_k";
  size_t rx = gf2::rank(code.sx), rz = gf2::rank(code.sz);
  if (rx + rz + code.k != code.n)
    return "rank(sx) + rank(sz) + k != n";
  return std::nullopt;
}

namespace {

// Precomputed per-basis search context.
struct DistanceScan {
  std::vector<BitVector> col_syn;  // syndrome contributed by each column
  gf2::RrefResult stab;            // row space of the matching stabilizer type
  size_t syn_bits = 0;
};

DistanceScan make_scan(const StabilizerCode& code, PauliBasis basis) {
  // X-type logical: sz v^T = 0 and v outside rowspace(sx). Mirrored for Z.
  const BitMatrix& checks = basis == PauliBasis::X ? code.sz : code.sx;
  DistanceScan s;
  s.syn_bits = checks.rows();
  s.stab = gf2::rref(basis == PauliBasis::X ? code.sx : code.sz);
  s.col_syn.resize(code.n);
  for (size_t c = 0; c < code.n; ++c) {
    BitVector e(code.n);
    e.set(c, true);
    s.col_syn[c] = gf2::mul_vec(checks, e);
  }
  return s;
}

// Recursively extends a support set to exactly weight w with all elements
// past q; reports the first (lexicographically earliest) logical found.
bool extend_support(const DistanceScan& s, size_t n, std::vector<size_t>& idx,
                    const BitVector& syn, size_t w, BitVector* witness) {
  if (idx.size() == w) {
    if (!syn.is_zero()) return false;
    BitVector v(n);
    for (size_t q : idx) v.set(q, true);
    if (gf2::in_rowspace(s.stab, v)) return false;
    if (witness) *witness = v;
    return true;
  }
  for (size_t q = idx.back() + 1; q + (w - idx.size() - 1) < n; ++q) {
    idx.push_back(q);
    if (extend_support(s, n, idx, syn ^ s.col_syn[q], w, witness)) return true;
    idx.pop_back();
  }
  return false;
}

// Searches all weight-w supports whose first element is q0.
bool scan_weight_class(const DistanceScan& s, size_t n, size_t w, size_t q0,
                       BitVector* witness) {
  std::vector<size_t> idx{q0};
  return extend_support(s, n, idx, s.col_syn[q0], w, witness);
}

DistanceResult distance_impl(const StabilizerCode& code, size_t w_max, bool parallel) {
  DistanceResult res;
  DistanceScan scan_x = make_scan(code, PauliBasis::X);
  DistanceScan scan_z = make_scan(code, PauliBasis::Z);
  for (size_t w = 1; w <= w_max; ++w) {
    struct Hit {
      bool ok = false;
      BitVector v;
      PauliBasis basis;
    };
    std::vector<Hit> hits(code.n);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (size_t q0 = 0; q0 < code.n; ++q0) {
      BitVector v;
      if (scan_weight_class(scan_x, code.n, w, q0, &v))
        hits[q0] = {true, v, PauliBasis::X};
      else if (scan_weight_class(scan_z, code.n, w, q0, &v))
        hits[q0] = {true, v, PauliBasis::Z};
    }
    for (const Hit& h : hits) {
      if (h.ok) {
        res.exact = true;
        res.distance = w;
        res.witness = h.v;
        res.witness_basis = h.basis;
        return res;
      }
    }
  }
  res.exact = false;
  res.distance = w_max + 1;  // lower bound
  return res;
}

}  // namespace

DistanceResult code_distance(const StabilizerCode& code, size_t w_max) {
  return distance_impl(code, w_max, true);
}

DistanceResult code_distance_serial(const StabilizerCode& code, size_t w_max) {
  return distance_impl(code, w_max, false);
}

std::string bundle_to_string(const StabilizerCode& code) {
  std::ostringstream out;
  out << "SX\n" << code.sx.to_string();
  out << "SZ\n" << code.sz.to_string();
  out << "LX\n" << code.lx.to_string();
  out << "LZ\n" << code.lz.to_string();
  return out.str();
}

StabilizerCode bundle_parse(const std::string& text) {
  std::istringstream in(text);
  std::string line, section;
  std::string sx, sz, lx, lz;
  while (std::getline(in, line)) {
    if (line == "SX" || line == "SZ" || line == "LX" || line == "LZ") {
      section = line;
      continue;
    }
    if (line.empty()) continue;
    if (section == "SX") sx += line + "\n";
    else if (section == "SZ") sz += line + "\n";
    else if (section == "LX") lx += line + "\n";
    else if (section == "LZ") lz += line + "\n";
    else throw std::invalid_argument("bundle parse: row outside any section");
  }
  StabilizerCode code;
  code.sx = BitMatrix::parse(sx);
  code.sz = BitMatrix::parse(sz);
  code.lx = BitMatrix::parse(lx);
  code.lz = BitMatrix::parse(lz);
  if (code.sx.cols() == 0 || code.sx.cols() != code.sz.cols())
    throw std::invalid_argument("bundle parse: missing or inconsistent sections");
  code.n = code.sx.cols();
  code.k = code.lx.rows();
  return code;
}

}  // namespace sdc
