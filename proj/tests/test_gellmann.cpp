#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "su3forge/gellmann.hpp"
#include "su3forge/mat3.hpp"

using namespace su3forge;

namespace {

double hs_inner(const CMat3& a, const CMat3& b) {
  double s = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) s += std::real(std::conj(a(r, c)) * b(r, c));
  return s;
}

CMat3 random_hermitian(std::uint64_t seed) {
  CMat3 u = haar_random_unitary(seed);
  CMat3 v = haar_random_unitary(seed + 9001);
  CMat3 s = u + Cx(0.0, 1.0) * v;
  return 0.5 * (s + adjoint(s));
}

}  // namespace

TEST_CASE("basis matrices: Hermitian, normalized, traceless beyond the identity slot") {
  for (int i = 0; i < kGellCount; ++i) {
    CHECK(is_hermitian(gell(i), 1e-15));
    CHECK(std::abs(hs_inner(gell(i), gell(i)) - 2.0) < 1e-14);
    if (i >= 1) CHECK(std::abs(trace(gell(i))) < 1e-14);
  }
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j)
      if (i != j) CHECK(std::abs(hs_inner(gell(i), gell(j))) < 1e-14);
  CHECK(std::abs(hs_inner(gell(9), gell(11))) < 1e-14);
  CHECK(std::abs(hs_inner(gell(10), gell(12))) < 1e-14);

  // Diagonal identities tying the alternative pairs to the standard one.
  CHECK(frobenius_distance(gell(3), gell(9) - gell(10)) < 1e-15);
  CHECK(frobenius_distance(std::sqrt(3.0) * gell(8), gell(9) + gell(10)) < 1e-14);

  CHECK_THROWS_AS((void)gell(-1), IndexOutOfRange);
  CHECK_THROWS_AS((void)gell(13), IndexOutOfRange);
}

TEST_CASE("structure constants: symmetry classes and hand-checked values") {
  CHECK(std::abs(f_constant(1, 2, 3) - 1.0) < 1e-14);
  CHECK(std::abs(f_constant(4, 5, 8) - std::sqrt(3.0) / 2.0) < 1e-14);
  CHECK(std::abs(d_constant(1, 1, 8) - 1.0 / std::sqrt(3.0)) < 1e-14);

  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j)
      for (int k = 1; k <= 8; ++k) {
        CHECK(std::abs(f_constant(i, j, k) + f_constant(j, i, k)) < 1e-13);
        CHECK(std::abs(d_constant(i, j, k) - d_constant(j, i, k)) < 1e-13);
      }

  // The identity direction commutes with everything.
  for (int j = 0; j < kGellCount; ++j) CHECK(std::abs(f_constant(0, j, 3)) < 1e-14);

  CHECK_THROWS_AS((void)f_constant(0, 1, 13), IndexOutOfRange);
  CHECK_THROWS_AS((void)d_constant(-1, 1, 2), IndexOutOfRange);
}

TEST_CASE("product expansion over the standard nine-element basis") {
  // g_i g_j = (2/3) delta_ij I + sum_{k=1..8} (i f_ijk + d_ijk) g_k holds for
  // all 81 ordered pairs; the identity part is carried by the delta term, so
  // the k sum runs over the traceless basis only.
  double worst = 0.0;
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; j <= 8; ++j) {
      CMat3 rhs;
      if (i == j) rhs = (2.0 / 3.0) * CMat3::identity();
      for (int k = 1; k <= 8; ++k)
        rhs = rhs + (Cx(0.0, 1.0) * f_constant(i, j, k) + d_constant(i, j, k)) * gell(k);
      worst = std::max(worst, frobenius_distance(gell(i) * gell(j), rhs));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("decompose and compose invert each other in every variant") {
  for (DiagonalVariant v :
       {DiagonalVariant::Standard, DiagonalVariant::NineEleven, DiagonalVariant::TenTwelve}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      CMat3 h = random_hermitian(seed * 7);
      GellCoeffs gc = decompose(h, v);
      CHECK(gc.variant == v);
      CHECK(frobenius_distance(compose(gc), h) < 1e-13);
    }
    // Basis elements decompose to unit coefficient vectors.
    std::array<int, 9> idx = basis_indices(v);
    for (int s = 0; s < 9; ++s) {
      GellCoeffs gc = decompose(gell(idx[static_cast<std::size_t>(s)]), v);
      for (int t = 0; t < 9; ++t)
        CHECK(std::abs(gc.c[static_cast<std::size_t>(t)] - (s == t ? 1.0 : 0.0)) < 1e-13);
    }
  }

  // Entry convention: the (0,1) element of c1*g1 + c2*g2 reads c1 - i*c2.
  CMat3 h = 0.3 * gell(1) + 0.7 * gell(2);
  CHECK(std::abs(h(0, 1) - Cx(0.3, -0.7)) < 1e-15);
  GellCoeffs gc = decompose(h);
  CHECK(std::abs(gc.c[1] - 0.3) < 1e-14);
  CHECK(std::abs(gc.c[2] - 0.7) < 1e-14);

  // Cross-variant diagonal resolution: diag(1,-1,0) = 0.5*g9 + (sqrt3/2)*g11.
  GellCoeffs g3 = decompose(gell(3), DiagonalVariant::NineEleven);
  CHECK(std::abs(g3.c[3] - 0.5) < 1e-14);
  CHECK(std::abs(g3.c[8] - std::sqrt(3.0) / 2.0) < 1e-14);

  CHECK_THROWS_AS((void)decompose(haar_random_unitary(3)), NotHermitian);
}

TEST_CASE("cartan split closure checks") {
  CHECK(check_cartan_split({1, 2, 3, 8}, {4, 5, 6, 7}));
  CHECK(check_cartan_split({6, 7, 10, 12}, {1, 2, 4, 5}));
  CHECK(check_cartan_split({4, 5, 9, 11}, {1, 2, 6, 7}));
  CHECK(check_cartan_split({2, 5, 7}, {1, 3, 4, 6, 8}));
  CHECK(!check_cartan_split({1, 4}, {2, 3, 5, 6, 7, 8}));
  CHECK_THROWS_AS((void)check_cartan_split({1, 13}, {2}), IndexOutOfRange);
}

TEST_CASE("constant-table audit flags exactly the known stored typos") {
  DiscrepancyReport rep = verify_constant_tables();
  CHECK(rep.entries.size() == 9 + 16 + 56 + 57 + 57 + 9 + 16 + 9 + 16);

  std::set<std::string> bad;
  for (const auto& e : rep.mismatches()) bad.insert(e.item);
  std::set<std::string> expected = {
      "commutator table standard [g5,g7]", "commutator table standard [g7,g5]",
      "commutator table 10-12 [g1,g2]",    "commutator table 10-12 [g2,g1]",
      "commutator table 10-12 [g2,g12]",   "commutator table 10-12 [g12,g2]",
  };
  CHECK(bad == expected);
  for (const auto& e : rep.mismatches()) CHECK(e.delta > 1e-3);
  CHECK(rep.mismatch_count() == 6);
  CHECK(!rep.all_match());

  // Every list entry (both bases' f and d lists) matches recomputation.
  for (const auto& e : rep.entries)
    if (e.item.find("list") != std::string::npos) CHECK(e.match);
}
