#pragma once

// Hermitian generator basis for 3x3 matrices: a normalized identity direction
// plus eight traceless generators, with two alternative diagonal pairs that
// single out a different embedded two-level subspace.  Provides structure
// constants from trace formulas, coefficient decomposition/composition,
// closure checks for candidate Cartan splits, and an audit of the embedded
// constant tables against recomputation.

#include <array>
#include <vector>

#include "su3forge/mat3.hpp"
#include "su3forge/report.hpp"

namespace su3forge {

inline constexpr int kGellCount = 13;

// Index map:
//   0          sqrt(2/3) * I
//   1..8       traceless basis, diagonal pair {3, 8}
//   9          diag(1, 0, -1)      10  diag(0, 1, -1)
//   11         diag(1, -2, 1)/sqrt(3)   12  diag(-2, 1, 1)/sqrt(3)
// All satisfy Tr(g_i g_i) = 2; each diagonal pair is mutually orthogonal.
const CMat3& gell(int i);  // IndexOutOfRange unless 0 <= i < kGellCount

enum class DiagonalVariant { Standard, NineEleven, TenTwelve };

// The two diagonal generators a variant uses (occupying coefficient slots 3
// and 8): {3,8}, {9,11}, or {10,12}.
std::array<int, 2> diagonal_pair(DiagonalVariant v);

// The nine basis indices behind a coefficient vector, slot by slot.
std::array<int, 9> basis_indices(DiagonalVariant v);

struct GellCoeffs {
  std::array<double, 9> c{};  // slot k weights gell(basis_indices(variant)[k])
  DiagonalVariant variant = DiagonalVariant::Standard;
};

// Coefficients of a Hermitian matrix over the chosen basis.  Off-diagonal
// slots come from the trace inner product; the diagonal pair is recovered
// through an explicit 2x2 Gram solve.  Throws NotHermitian.
GellCoeffs decompose(const CMat3& h, DiagonalVariant v = DiagonalVariant::Standard);

// Inverse of decompose: sum of slot weights times basis matrices.
CMat3 compose(const GellCoeffs& coeffs);

// Structure constants over any indices in 0..12:
//   f = Tr([g_i, g_j] g_k) / (4i)      (antisymmetric)
//   d = Tr({g_i, g_j} g_k) / 4         (symmetric)
double f_constant(int i, int j, int k);
double d_constant(int i, int j, int k);

// True when the commutators close as a symmetric-space split:
// [k, k] in span(k), [p, p] in span(k), [p, k] in span(p), each membership
// tested by projection residual at 1e-12.  Throws IndexOutOfRange on any
// index outside 0..12.
bool check_cartan_split(const std::vector<int>& k_indices, const std::vector<int>& p_indices);

// Audits every embedded constant table (structure-constant lists and the
// three commutator tables) against direct recomputation.  Known typos in the
// stored tables show up as mismatch entries.
DiscrepancyReport verify_constant_tables();

}  // namespace su3forge
