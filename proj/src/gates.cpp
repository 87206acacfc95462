#include "su3forge/gates.hpp"

#include <cmath>
#include <cstdio>

namespace su3forge {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return std::string(buf);
}

void push_check(DiscrepancyReport& rep, std::string item, double delta, double tol = 1e-12) {
  DiscrepancyEntry e;
  e.item = std::move(item);
  e.printed = "0";
  e.recomputed = fmt_num(delta);
  e.delta = delta;
  e.match = delta <= tol;
  rep.entries.push_back(std::move(e));
}

}  // namespace

CMat3 walsh_hadamard() {
  const Cx w = std::polar(1.0, 2.0 * kPi / 3.0);
  const Cx wb = std::conj(w);
  const double s = 1.0 / std::sqrt(3.0);
  CMat3 m;
  m(0, 0) = s;
  m(0, 1) = s;
  m(0, 2) = s;
  m(1, 0) = s;
  m(1, 1) = s * w;
  m(1, 2) = s * wb;
  m(2, 0) = s;
  m(2, 1) = s * wb;
  m(2, 2) = s * w;
  return m;
}

CMat3 swap12() {
  CMat3 m;
  m(0, 0) = 1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  return m;
}

CMat3 wh_hamiltonian() {
  const double r = 1.0 / std::sqrt(3.0);
  CMat3 h;
  h(0, 0) = -1.0 + r;
  h(0, 1) = r;
  h(0, 2) = r;
  h(1, 0) = r;
  h(1, 1) = -1.0 - r / 2.0;
  h(1, 2) = -r / 2.0;
  h(2, 0) = r;
  h(2, 1) = -r / 2.0;
  h(2, 2) = -1.0 - r / 2.0;
  return h;
}

DiscrepancyReport verify_wh_relations(const CMat3& w, const CMat3& s) {
  DiscrepancyReport rep;
  push_check(rep, "swap conjugation fixes the mixing gate (SWS = W)",
             frobenius_distance(s * w * s, w));
  push_check(rep, "mixing gate is symmetric (W^T = W)", frobenius_distance(transpose(w), w));
  push_check(rep, "mixing gate squares to the swap (W^2 = S)", frobenius_distance(w * w, s));
  push_check(rep, "mixing gate determinant is -i", std::abs(det(w) - Cx(0.0, -1.0)));
  return rep;
}

DiscrepancyReport verify_wh_relations() { return verify_wh_relations(walsh_hadamard(), swap12()); }

}  // namespace su3forge
