#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sdc/code.hpp"
#include "sdc/gf2.hpp"
#include "sdc/rng.hpp"

using namespace sdc;
using gf2::BitMatrix;
using gf2::BitVector;

namespace {

BitMatrix random_matrix(size_t rows, size_t cols, Rng& rng) {
  BitMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c)
      if (rng.bit()) m.set(r, c, true);
  return m;
}

}  // namespace

TEST_CASE("mat_mul identity and paper products") {
  BitMatrix i3 = BitMatrix::identity(3);
  CHECK(gf2::mat_mul(i3, i3) == i3);

  const StabilizerCode& code = builtin_code();
  // H'_X (H'_Z)^T vanishes for the doubled code.
  BitMatrix prod = gf2::mat_mul(code.sx, gf2::transpose(code.sz));
  CHECK(prod.ones() == 0);
  CHECK(prod.rows() == 12);
  CHECK(prod.cols() == 12);
  // M_X M_Z^T = I_6.
  CHECK(gf2::mat_mul(code.lx, gf2::transpose(code.lz)) == BitMatrix::identity(6));
}

TEST_CASE("mat_mul dimension mismatch throws") {
  CHECK_THROWS_AS(gf2::mat_mul(BitMatrix(2, 3), BitMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("characteristic 2: (a+a)b = 0") {
  Rng rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    BitMatrix a = random_matrix(4, 6, rng);
    BitMatrix b = random_matrix(6, 5, rng);
    CHECK(gf2::mat_mul(gf2::mat_add(a, a), b).ones() == 0);
  }
}

TEST_CASE("rref of zero matrix") {
  gf2::RrefResult rr = gf2::rref(BitMatrix(2, 2));
  CHECK(rr.rank == 0);
  CHECK(rr.pivots.empty());
  CHECK(rr.reduced == BitMatrix(2, 2));
}

TEST_CASE("rref ranks of the doubled check matrices") {
  const StabilizerCode& code = builtin_code();
  gf2::RrefResult rz = gf2::rref(code.sz);
  CHECK(rz.rank == 12);
  // Left part is the 12x12 identity once reduced.
  for (size_t r = 0; r < 12; ++r) {
    CHECK(rz.pivots[r] == r);
    for (size_t c = 0; c < 12; ++c) CHECK(rz.reduced.get(r, c) == (r == c));
  }
  CHECK(gf2::rref(code.sx).rank == 12);
}

TEST_CASE("rref is idempotent and agrees with the oracle on random matrices") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    BitMatrix m = random_matrix(5 + trial % 4, 8, rng);
    gf2::RrefResult rr = gf2::rref(m);
    CHECK(rr.rank == oracle::rank(m));
    gf2::RrefResult again = gf2::rref(rr.reduced);
    CHECK(again.reduced == rr.reduced);
    for (size_t i = 1; i < rr.pivots.size(); ++i) CHECK(rr.pivots[i - 1] < rr.pivots[i]);
  }
}

TEST_CASE("kernel basics") {
  CHECK(gf2::kernel(BitMatrix::identity(3)).rows() == 0);

  const StabilizerCode& code = builtin_code();
  BitMatrix ker = gf2::kernel(code.sx);
  CHECK(ker.rows() == 18);
  for (size_t r = 0; r < ker.rows(); ++r) {
    BitVector prod = gf2::mul_vec(code.sx, ker.row(r));
    CHECK(prod.is_zero());
  }
}

TEST_CASE("rank-nullity on random matrices") {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    BitMatrix m = random_matrix(6, 10, rng);
    CHECK(gf2::rank(m) + gf2::kernel(m).rows() == m.cols());
  }
}

TEST_CASE("reduce_mod_rowspace basics") {
  const StabilizerCode& code = builtin_code();
  BitVector zero(30);
  CHECK(gf2::reduce_mod_rowspace(zero, code.sz) == zero);

  // An element of the row space reduces to zero.
  CHECK(gf2::reduce_mod_rowspace(code.sz.row(0), code.sz).is_zero());

  // Z_L2 reduces to weight 5: logical operators are not stabilizers, and
  // the code distance is 5.
  BitVector zl2 = code.lz.row(1);
  BitVector red = gf2::reduce_mod_rowspace(zl2, code.sz);
  CHECK(red.weight() == 5);
  CHECK(red.weight() == oracle::coset_min_weight(zl2, code.sz));
}

TEST_CASE("reduce_mod_rowspace matches the exhaustive oracle on random cosets") {
  Rng rng(4242);
  BitMatrix basis = random_matrix(6, 12, rng);
  for (int trial = 0; trial < 40; ++trial) {
    BitVector v(12);
    for (size_t q = 0; q < 12; ++q)
      if (rng.bit()) v.set(q, true);
    BitVector red = gf2::reduce_mod_rowspace(v, basis);
    CHECK(red.weight() == oracle::coset_min_weight(v, basis));
    // The reduction stays in the coset: v + red lies in the row space.
    gf2::RrefResult rr = gf2::rref(basis);
    CHECK(gf2::in_rowspace(rr, v ^ red));
  }
}

TEST_CASE("reduce_mod_rowspace rejects rank above 16") {
  BitMatrix big = BitMatrix::identity(20);
  BitVector v(20);
  CHECK_THROWS_AS(gf2::reduce_mod_rowspace(v, big), std::invalid_argument);
}

TEST_CASE("lex tie-breaking picks the earlier-zero pattern") {
  // Basis {1100}: the coset of 1000 is {1000, 0100}, both weight 1.
  BitMatrix basis(1, 4);
  basis.set(0, 0, true);
  basis.set(0, 1, true);
  BitVector v(4);
  v.set(0, true);
  BitVector red = gf2::reduce_mod_rowspace(v, basis);
  CHECK(red.weight() == 1);
  // "0100" precedes "1000" as a bit string.
  CHECK_FALSE(red.get(0));
  CHECK(red.get(1));
}

TEST_CASE("matrix text format round trip and errors") {
  const StabilizerCode& code = builtin_code();
  std::string text = code.sx.to_string();
  CHECK(BitMatrix::parse(text) == code.sx);

  CHECK_THROWS(BitMatrix::parse("0101\n01x1\n"));
  CHECK_THROWS(BitMatrix::parse("0101\n011\n"));
}

TEST_CASE("bitvector weight and dot") {
  BitVector a = BitVector::parse("110100");
  BitVector b = BitVector::parse("011010");
  CHECK(a.weight() == 3);
  CHECK(a.dot(b) == true);  // single overlap at index 1
  BitVector c = BitVector::parse("001000");
  CHECK(a.dot(c) == false);
}
