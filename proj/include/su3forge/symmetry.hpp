#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "su3forge/dod.hpp"
#include "su3forge/mat3.hpp"

namespace su3forge {

// Three-torus of unitaries commuting with a fixed non-degenerate target:
//   T(theta) = V diag(e^{-i theta_0}, e^{-i theta_1}, e^{-i theta_2}) V^dag,
// where V holds the target's eigenvectors (ascending eigenvalue phase).
struct CommutantFamily {
  CMat3 frame;
  CMat3 target;
  CMat3 sample(const std::array<double, 3>& theta) const;
};

// Affine relation between two product-form parameter sets of one target:
// eigenvalues of the non-base off-diagonal generator satisfy
//   y_j = scale * x_{permutation[j]} + (branch defect),
// with per-base-column shifts delta_i = (1 - scale) * x_i on the 2*pi/3
// lattice. frame_transform names the fixed unitary relating the frames.
struct RelationReport {
  std::array<int, 3> permutation{};                    // other column j <- base column
  std::array<std::pair<double, double>, 3> affine{};   // per base column (scale, shift)
  double residual = 0.0;
  std::array<double, 3> base_eigenvalues{};            // ascending
  int base_index = 0;                                  // 0: first argument, 1: second
  std::string frame_transform;                         // "identity" or "swap12"
};

struct ConjugatedDecomposition {
  std::pair<CMat3, CMat3> factors;  // (T e^{-iG_d} T^dag, T e^{-iG_o} T^dag)
  bool still_dod_form = false;
  std::optional<DodParams> params;  // set iff still_dod_form
};

// Throws NotUnitary, or DegenerateSpectrum when eigenvalue gaps <= 1e-8
// (the commutant is then larger than a 3-torus).
CommutantFamily commutant(const CMat3& u);

// Conjugates both factors of the product form by t. The factor product is
// always t * compose_dod(p) * t^dag; parameters are re-extracted when the
// conjugated pair is still of diagonal times zero-diagonal type.
ConjugatedDecomposition conjugate_decomposition(const CMat3& t, const DodParams& p);

// Finds the affine symmetry relating two parameter sets for the same target.
// Throws std::invalid_argument unless both compose to u within 5e-3, and
// NoRelationFound when no candidate fit reaches residual <= 1e-2.
RelationReport relate_solutions(const DodParams& pa, const DodParams& pb,
                                const CMat3& u);

}  // namespace su3forge
