#pragma once

// Pulse-cost accounting: Hilbert-Schmidt generator strength at a given drive
// time, the two-level drive-power proxy, the branch-minimal single-pulse
// cost of a gate, and a ranked audit of a solution set against the embedded
// printed cost table.

#include <string>
#include <vector>

#include "su3forge/dod.hpp"
#include "su3forge/mat3.hpp"
#include "su3forge/report.hpp"

namespace su3forge {

struct CostRow {
  std::string label;
  double diag_cost = 0.0;     // (1/2) Tr(G_d^2) at unit time
  double offdiag_cost = 0.0;  // (1/2) Tr(G_o^2) at unit time
  double total = 0.0;         // diag_cost + offdiag_cost, exact
  double drive_power_proxy = 0.0;
};

struct SinglePulseCost {
  double half_trace = 0.0;   // (1/2) Tr(g^2) of the minimizing generator
  double third_trace = 0.0;  // (1/3) Tr(g^2) of the same generator
  CMat3 generator;
};

struct CostReport {
  std::vector<CostRow> per_decomposition;  // one row per input solution
  SinglePulseCost single_pulse;            // for the set's target gate
  std::vector<std::string> ranking;        // ascending by half-trace total
  DiscrepancyReport discrepancies;         // audit against the printed table
};

// (1/2) Tr((g t)^2).  Equals t^2 times the squared coefficient norm under
// the basis orthogonality Tr(g_i g_j) = 2 delta_ij, identity direction
// included.  Throws NotHermitian.
double hs_cost(const CMat3& g, double t);

// c4^2 + c5^2 over the standard basis: squared strength of the drive that
// couples the outer level pair, the term a two-photon-free pulse must not
// need.  Throws NotHermitian.
double drive_power_proxy(const CMat3& g);

// Minimizes (1/2) Tr(g^2) over log branches |k_j| <= branch_range; returns
// the cost under both trace normalizations plus the minimizing generator
// (ties prefer the principal branch).  Throws NotUnitary, and
// std::invalid_argument when branch_range is negative.
SinglePulseCost single_pulse_cost(const CMat3& u, int branch_range = 1);

// Costs every solution at unit time, appends the single-pulse entry for the
// set's target, and ranks all labels ascending by half-trace total.  When
// the target is the Walsh-Hadamard gate and the set holds exactly five
// solutions in the reference row order, every row is also diffed against
// the embedded printed cost table; mismatches are reported, never patched.
CostReport table2_report(const SolutionSet& solutions);

}  // namespace su3forge
