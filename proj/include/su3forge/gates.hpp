#pragma once

// Named reference gates: the balanced three-level mixing gate (every input
// spread uniformly over the outputs), the permutation swapping the upper two
// levels, and the Hermitian Hamiltonian reaching the mixing gate in a
// quarter period.  Plus an audit of the algebraic relations tying them
// together.

#include "su3forge/mat3.hpp"
#include "su3forge/report.hpp"

namespace su3forge {

// (1/sqrt(3)) * [[1,1,1],[1,w,w*],[1,w*,w]] with w = exp(2*pi*i/3).
CMat3 walsh_hadamard();

// Permutation fixing level 0 and exchanging levels 1 and 2.
CMat3 swap12();

// Hermitian H with exp(-i*H*pi/2) = walsh_hadamard(); spectrum {-2,-1,0}.
// Entries are exact closed forms in 1/sqrt(3).
CMat3 wh_hamiltonian();

// Checks the four relations S*W*S = W, W^T = W, W^2 = S, det W = -i for the
// supplied candidates, each at 1e-12, reporting pass/fail per relation.
DiscrepancyReport verify_wh_relations(const CMat3& w, const CMat3& s);

// Same audit applied to the canonical gates above (all four pass).
DiscrepancyReport verify_wh_relations();

}  // namespace su3forge
