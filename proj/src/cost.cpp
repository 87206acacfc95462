#include "su3forge/cost.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "su3forge/errors.hpp"
#include "su3forge/gates.hpp"
#include "su3forge/gellmann.hpp"

namespace su3forge {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAuditTol = 1e-3;  // the printed table carries four decimals

struct PrintedRow {
  double diag;
  double offdiag;
  double total;
};

// Two-factor rows of the printed cost table, then its single-pulse entry.
constexpr std::array<PrintedRow, 5> kPrintedRows = {{
    {0.4878, 5.7251, 6.2129},
    {15.746, 5.7248, 21.4708},
    {15.7464, 5.7248, 21.4708},
    {39.1583, 5.8481, 45.0064},
    {34.7688, 1.462, 36.2308},
}};
constexpr double kPrintedSinglePulse = 4.1123;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

DiscrepancyEntry audit_entry(std::string item, double printed, double recomputed) {
  DiscrepancyEntry e;
  e.item = std::move(item);
  e.printed = fmt(printed);
  e.recomputed = fmt(recomputed);
  e.delta = std::abs(printed - recomputed);
  e.match = e.delta <= kAuditTol;
  return e;
}

}  // namespace

double hs_cost(const CMat3& g, double t) {
  if (!is_hermitian(g, 1e-12)) throw NotHermitian("hs_cost: generator is not Hermitian");
  return 0.5 * t * t * std::real(trace(g * g));
}

double drive_power_proxy(const CMat3& g) {
  const GellCoeffs c = decompose(g);  // throws NotHermitian
  return c.c[4] * c.c[4] + c.c[5] * c.c[5];
}

SinglePulseCost single_pulse_cost(const CMat3& u, int branch_range) {
  if (branch_range < 0)
    throw std::invalid_argument("single_pulse_cost: branch_range must be >= 0");
  const EigenSystem es = eig_unitary(u);  // throws NotUnitary
  // The squared norm separates over eigenvalues, so each branch offset is
  // chosen independently; a strict improvement test keeps the principal
  // branch on the boundary tie at phase pi.
  BranchVector bv;
  for (int j = 0; j < 3; ++j) {
    const double psi = std::arg(es.values[static_cast<std::size_t>(j)]);
    double best = 1e300;
    for (int k = -branch_range; k <= branch_range; ++k) {
      const double gj = -psi + 2.0 * kPi * k;
      if (gj * gj < best) {
        best = gj * gj;
        bv.k[static_cast<std::size_t>(j)] = k;
      }
    }
  }
  SinglePulseCost out;
  out.generator = logm_unitary(u, bv);
  out.half_trace = 0.5 * std::real(trace(out.generator * out.generator));
  out.third_trace = out.half_trace * (2.0 / 3.0);
  return out;
}

CostReport table2_report(const SolutionSet& solutions) {
  CostReport rep;
  const std::size_t n = solutions.solutions.size();
  rep.per_decomposition.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const DodParams& p = solutions.solutions[i];
    const CMat3 off = offdiag_generator(p.m01, p.m02, p.m12);
    CostRow row;
    row.label = "set " + std::to_string(i + 1);
    row.diag_cost = hs_cost(diag_generator(p.phi), 1.0);
    row.offdiag_cost = hs_cost(off, 1.0);
    row.total = row.diag_cost + row.offdiag_cost;
    row.drive_power_proxy = drive_power_proxy(off);
    rep.per_decomposition.push_back(row);
  }
  rep.single_pulse = single_pulse_cost(solutions.target, 1);

  std::vector<std::pair<double, std::string>> order;
  order.reserve(n + 1);
  for (const CostRow& r : rep.per_decomposition) order.emplace_back(r.total, r.label);
  order.emplace_back(rep.single_pulse.half_trace, "single-pulse");
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& item : order) rep.ranking.push_back(item.second);

  // The printed table describes the five reference solutions of the
  // Walsh-Hadamard gate in their published order; only that shape is diffed.
  const bool table_shape = n == kPrintedRows.size() &&
                           frobenius_distance(solutions.target, walsh_hadamard()) <= 1e-6;
  if (table_shape) {
    for (std::size_t i = 0; i < n; ++i) {
      const CostRow& r = rep.per_decomposition[i];
      const PrintedRow& p = kPrintedRows[i];
      rep.discrepancies.entries.push_back(audit_entry(r.label + " diagonal", p.diag, r.diag_cost));
      rep.discrepancies.entries.push_back(
          audit_entry(r.label + " off-diagonal", p.offdiag, r.offdiag_cost));
      rep.discrepancies.entries.push_back(audit_entry(r.label + " total", p.total, r.total));
    }
    rep.discrepancies.entries.push_back(
        audit_entry("single-pulse half-trace", kPrintedSinglePulse, rep.single_pulse.half_trace));
    rep.discrepancies.entries.push_back(
        audit_entry("single-pulse third-trace", kPrintedSinglePulse, rep.single_pulse.third_trace));
  }
  return rep;
}

}  // namespace su3forge
