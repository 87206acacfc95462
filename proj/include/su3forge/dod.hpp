#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "su3forge/mat3.hpp"

namespace su3forge {

// Parameters of the diagonal/off-diagonal product form
//   u = exp(-i*G_d) * exp(-i*G_o),
// where G_d = diag(phi) and G_o has zero diagonal with entries
// m01, m02, m12 in the upper triangle (Hermitian closure below).
struct DodParams {
  std::array<double, 3> phi{};
  Cx m01{};
  Cx m02{};
  Cx m12{};
};

struct SolveConfig {
  int starts = 8;           // grid resolution per phase axis, >= 2
  int branch_range = 1;     // log-branch offsets searched in [-r, r]
  double tol = 1e-9;        // Frobenius acceptance for a candidate root
  double dedup_tol = 1e-6;  // canonical distance below which two roots merge
  std::uint64_t seed = 0;   // reserved; the start grid is deterministic
};

struct SolutionSet {
  std::vector<DodParams> solutions;  // canonically sorted, deduplicated
  std::vector<double> residuals;     // Frobenius distance to the target
  CMat3 target;
};

// diag(phi) as a Hermitian generator.
CMat3 diag_generator(const std::array<double, 3>& phi);

// Zero-diagonal Hermitian generator with the given upper-triangle entries.
CMat3 offdiag_generator(const Cx& m01, const Cx& m02, const Cx& m12);

// exp(-i*diag(phi)) * exp(-i*G_o).
CMat3 compose_dod(const DodParams& p);

// Wraps each phase into [0, 2*pi); the m entries are untouched.
DodParams canonicalize(const DodParams& p);

// Distance between parameter sets: circular on the phases (differences
// wrapped to (-pi, pi]) plus moduli of the m differences, all summed.
double canonical_distance(const DodParams& a, const DodParams& b);

// Residual map for the phase search: with g = logm_unitary(exp(+i*diag(phi)) * u,
// branch), returns the negated real diagonal of g.  Roots of this map are
// phase vectors whose off-diagonal factor has a zero diagonal, so they give
// exact product forms.
std::array<double, 3> phase_residual(const std::array<double, 3>& phi,
                                     const CMat3& u, const BranchVector& branch);

// Sum rule: exp(-i*sum(phi)) must equal det(u); returns the wrapped
// defect sum(phi) + arg(det u) in (-pi, pi].
double phase_sum_check(const DodParams& p, const CMat3& u);

// Multistart damped-Newton search over phases and log branches.
// Throws NotUnitary for a non-unitary target, std::invalid_argument for a
// bad config, NoSolutionFound when no start converges within tolerance.
SolutionSet solve_dod(const CMat3& u, const SolveConfig& cfg = {});

}  // namespace su3forge
