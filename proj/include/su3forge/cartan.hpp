#pragma once

#include <array>
#include <utility>
#include <vector>

#include "su3forge/gellmann.hpp"
#include "su3forge/mat3.hpp"

namespace su3forge {

// One symmetric-space split of the generator algebra: conjugation by the
// diagonal sign matrix Theta fixes the k_indices span and negates the
// p_indices span. The extra fields drive the Euler reduction of the fixed
// factor: its SU(2) acts on `block`, the free axis is `sfree`, and the
// fixed-factor diagonal pair is (z_index, scalar_index).
struct CartanSplit {
  char name = 'A';
  std::array<int, 4> k_indices{};
  std::array<int, 4> p_indices{};
  CMat3 involution_sign;
  std::array<int, 2> block{};
  int sfree = 2;
  int z_index = 3;
  int scalar_index = 8;
  std::array<int, 2> off_pair{};
};

// Fully reduced product form
//   u = e^{i global_phase}
//       * exp(-i (diag_coeffs[0] gz + diag_coeffs[1] gscal))
//       * exp(-i (first_off[0] gx + first_off[1] gy))
//       * exp(-i sum_j second_off[j] g_{p_j}),
// with (gx, gy) the split's off pair and p_j its p_indices ascending.
struct CartanFactors {
  double global_phase = 0.0;
  std::array<double, 2> diag_coeffs{};
  std::array<double, 2> first_off{};
  std::array<double, 4> second_off{};
  CartanSplit split;
};

// One factor exp(-i * angle * sum_i coeffs_i g_i) of a two-photon-free
// chain; support lists the generator indices carrying weight.
struct GivensFactor {
  std::vector<int> support;
  GellCoeffs coeffs;
  double angle = 1.0;
};

struct GivensChain {
  std::vector<GivensFactor> factors;
  CartanFactors source;
  // True when at most three factors act nontrivially.
  bool compresses_to_three() const;
};

// Splits 'A', 'B', 'C'; throws UnknownSplit otherwise.
CartanSplit split(char name);

// Polar-type factorization u = k * p with Theta k Theta = k and the log of
// p supported on the split's p span. Throws NotUnitary or
// BranchSelectionFailed (no log branch of Theta u^dag Theta u lands in the
// p span).
std::pair<CMat3, CMat3> kak_factor(const CMat3& u, const CartanSplit& s);

// Full reduction to the four-factor form above (phase peeled first, fixed
// factor Euler-decomposed, trailing diagonal angle shuffled into the off
// pair). Errors propagate from kak_factor.
CartanFactors cartan_decompose(const CMat3& u, const CartanSplit& s);

CMat3 compose_factors(const CartanFactors& f);

// Rewrites the middle factor of a split-C form over the {g6, g7} pair by
// conjugating with exp(+i g2 pi/2), inserting the compensating factors so
// the chain's product is unchanged; the result carries no g4/g5 weight.
// Throws WrongSplit for splits A and B.
GivensChain eliminate_two_photon(const CartanFactors& f);

CMat3 compose_chain(const GivensChain& chain);

}  // namespace su3forge
