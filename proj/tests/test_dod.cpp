#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "su3forge/dod.hpp"
#include "su3forge/errors.hpp"
#include "su3forge/gates.hpp"
#include "su3forge/mat3.hpp"

using namespace su3forge;

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_pm(double x) {
  double y = std::remainder(x, 2.0 * kPi);
  if (y <= -kPi) y += 2.0 * kPi;
  return y;
}

// Published four-decimal parameter sets whose product form reproduces the
// balanced mixing gate.
std::array<DodParams, 5> mixing_gate_rows() {
  std::array<DodParams, 5> rows{};
  rows[0] = {{0.8434, 0.3637, 0.3637},
             {-0.9672, -0.2365},
             {-0.9672, -0.2365},
             {1.9345, 0.0}};
  rows[1] = {{1.9199, 6.1087, 6.1086},
             {-0.6982, -1.2092},
             {-0.6981, -1.2092},
             {1.3962, 0.0}};
  rows[2] = {{2.4581, 0.3637, 5.0322},
             {-0.9672, -1.6753},
             {0.2788, -0.9559},
             {0.6885, 0.7194}};
  rows[3] = {{2.4581, 5.0322, 0.3637},
             {0.2788, -0.9559},
             {-0.9672, -1.6753},
             {0.6885, -0.7194}};
  rows[4] = {{6.1086, 4.0143, 4.0143},
             {0.3491, 0.6046},
             {0.3491, 0.6046},
             {-0.6981, 0.0}};
  return rows;
}

DodParams random_params(std::uint64_t seed, double scale) {
  // Deterministic pseudo-random parameters built from two unitary draws.
  CMat3 a = haar_random_unitary(seed);
  CMat3 b = haar_random_unitary(seed + 7919);
  DodParams p;
  p.phi = {scale * a(0, 0).real() * 4.0, scale * a(1, 1).real() * 4.0,
           scale * a(2, 2).real() * 4.0};
  p.m01 = scale * b(0, 1);
  p.m02 = scale * b(0, 2);
  p.m12 = scale * b(1, 2);
  return p;
}

}  // namespace

TEST_CASE("composition building blocks") {
  DodParams zero{};
  CHECK(frobenius_distance(compose_dod(zero), CMat3::identity()) == 0.0);

  DodParams pure_diag{{0.3, -1.1, 2.0}, {}, {}, {}};
  CMat3 u = compose_dod(pure_diag);
  CHECK(std::abs(u(0, 0) - std::polar(1.0, -0.3)) < 1e-14);
  CHECK(std::abs(u(1, 1) - std::polar(1.0, 1.1)) < 1e-14);
  CHECK(std::abs(u(2, 2) - std::polar(1.0, -2.0)) < 1e-14);
  CHECK(std::abs(u(0, 1)) < 1e-15);

  CMat3 go = offdiag_generator({0.1, 0.2}, {-0.3, 0.05}, {0.4, -0.7});
  CHECK(is_hermitian(go, 1e-15));
  CHECK(std::abs(go(0, 0)) == 0.0);
  CHECK(std::abs(go(1, 0) - std::conj(go(0, 1))) == 0.0);

  for (std::uint64_t s = 40; s < 50; ++s) {
    CHECK(is_unitary(compose_dod(random_params(s, 0.8)), 1e-12));
  }
}

TEST_CASE("published rows compose to the balanced mixing gate") {
  CMat3 w = walsh_hadamard();
  auto rows = mixing_gate_rows();
  for (const auto& row : rows) {
    CHECK(frobenius_distance(compose_dod(row), w) < 5e-3);
    // Phase sum rule: the diagonal phases absorb the determinant.
    CHECK(std::abs(phase_sum_check(row, w)) < 5e-3);
    const double s = row.phi[0] + row.phi[1] + row.phi[2];
    CHECK(std::abs(wrap_pm(s - kPi / 2.0)) < 5e-3);
  }
}

TEST_CASE("canonical form and distance") {
  DodParams p{{-0.1, 2.0 * kPi + 0.4, 7.9}, {1.0, 0.0}, {}, {}};
  DodParams c = canonicalize(p);
  CHECK(c.phi[0] == doctest::Approx(2.0 * kPi - 0.1).epsilon(1e-14));
  CHECK(c.phi[1] == doctest::Approx(0.4).epsilon(1e-14));
  for (double v : c.phi) {
    CHECK(v >= 0.0);
    CHECK(v < 2.0 * kPi);
  }
  CHECK(frobenius_distance(compose_dod(c), compose_dod(p)) < 1e-13);

  CHECK(canonical_distance(p, p) == 0.0);
  // Circular: phases differing by a full turn are the same point.
  DodParams q = p;
  q.phi[2] += 2.0 * kPi;
  CHECK(canonical_distance(p, q) < 1e-12);
  DodParams r = p;
  r.m02 += Cx(0.0, 0.5);
  CHECK(canonical_distance(p, r) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("phase residual map") {
  // Fixed point: at the true phases of a product form built from a small
  // zero-diagonal generator, the principal-branch residual vanishes.
  for (std::uint64_t s = 60; s < 66; ++s) {
    DodParams p = random_params(s, 0.3);
    CMat3 u = compose_dod(p);
    auto f = phase_residual(p.phi, u, BranchVector{{0, 0, 0}});
    CHECK(std::abs(f[0]) < 1e-11);
    CHECK(std::abs(f[1]) < 1e-11);
    CHECK(std::abs(f[2]) < 1e-11);
  }

  // Hand assembly oracle: residual equals minus the diagonal of the branch
  // log reconstructed directly from the spectral data.
  {
    CMat3 u = haar_random_unitary(77);
    std::array<double, 3> phi = {0.9, -0.4, 2.2};
    BranchVector k{{1, 0, -1}};
    CMat3 d = CMat3::zero();
    d(0, 0) = std::polar(1.0, phi[0]);
    d(1, 1) = std::polar(1.0, phi[1]);
    d(2, 2) = std::polar(1.0, phi[2]);
    EigenSystem es = eig_unitary(d * u);
    CMat3 g = CMat3::zero();
    for (int j = 0; j < 3; ++j) {
      const double gamma = -std::arg(es.values[j]) + 2.0 * kPi * k.k[j];
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          g(r, c) += gamma * es.vectors(r, j) * std::conj(es.vectors(c, j));
        }
      }
    }
    auto f = phase_residual(phi, u, k);
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(f[j] + g(j, j).real()) < 1e-12);
    }
  }

  // At the published phases for the mixing gate, some log branch makes the
  // residual small (limited only by four-decimal rounding).
  {
    CMat3 w = walsh_hadamard();
    auto rows = mixing_gate_rows();
    double best = 1e9;
    for (int k0 = -1; k0 <= 1; ++k0) {
      for (int k1 = -1; k1 <= 1; ++k1) {
        for (int k2 = -1; k2 <= 1; ++k2) {
          if (std::abs(k0 + k1 + k2) > 1) continue;
          auto f = phase_residual(rows[0].phi, w, BranchVector{{k0, k1, k2}});
          best = std::min(best,
                          std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[2])}));
        }
      }
    }
    CHECK(best < 1e-3);
  }
}

TEST_CASE("solver: identity target contains the trivial form") {
  SolveConfig cfg;
  cfg.starts = 3;
  SolutionSet set = solve_dod(CMat3::identity(), cfg);
  REQUIRE(!set.solutions.empty());
  DodParams zero{};
  double best = 1e9;
  for (const auto& p : set.solutions) {
    best = std::min(best, canonical_distance(p, zero));
  }
  CHECK(best < 1e-6);
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    CHECK(set.residuals[i] <= cfg.tol);
  }
}

TEST_CASE("solver: mixing gate reproduces every published row") {
  SolveConfig cfg;
  cfg.starts = 6;
  CMat3 w = walsh_hadamard();
  SolutionSet set = solve_dod(w, cfg);
  REQUIRE(set.solutions.size() >= 5);

  auto rows = mixing_gate_rows();
  for (const auto& row : rows) {
    DodParams target = canonicalize(row);
    double best = 1e9;
    for (const auto& p : set.solutions) {
      best = std::min(best, canonical_distance(p, target));
    }
    CHECK(best < 1e-3);
  }

  double prev = -1.0;
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    const auto& p = set.solutions[i];
    CHECK(set.residuals[i] <= cfg.tol);
    CHECK(frobenius_distance(compose_dod(p), w) <= cfg.tol);
    // Determinant rule holds exactly at every root.
    CHECK(std::abs(phase_sum_check(p, w)) < 1e-9);
    const double s = p.phi[0] + p.phi[1] + p.phi[2];
    CHECK(std::abs(wrap_pm(s - kPi / 2.0)) < 1e-6);
    // Sorted by off-diagonal weight, then structurally distinct.
    const double oc = std::norm(p.m01) + std::norm(p.m02) + std::norm(p.m12);
    CHECK(oc >= prev - 1e-12);
    prev = oc;
    for (std::size_t j = 0; j < i; ++j) {
      CHECK(canonical_distance(p, set.solutions[j]) >= cfg.dedup_tol);
    }
  }
}

TEST_CASE("solver: random targets always admit a product form") {
  SolveConfig cfg;
  cfg.starts = 4;
  for (std::uint64_t seed = 201; seed < 207; ++seed) {
    CMat3 u = haar_random_unitary(seed);
    SolutionSet set = solve_dod(u, cfg);
    REQUIRE(!set.solutions.empty());
    for (std::size_t i = 0; i < set.solutions.size(); ++i) {
      const auto& p = set.solutions[i];
      CHECK(set.residuals[i] <= cfg.tol);
      CHECK(std::abs(phase_sum_check(p, u)) < 1e-9);
      for (double v : p.phi) {
        CHECK(v >= 0.0);
        CHECK(v < 2.0 * kPi);
      }
    }
  }
}

TEST_CASE("branch shift keeps the product fixed") {
  // Shifting every phase by one third of a turn can be absorbed into the
  // other factor through a scalar phase, leaving the target unchanged.
  const Cx shift = std::polar(1.0, 2.0 * kPi / 3.0);
  for (std::uint64_t s = 90; s < 96; ++s) {
    DodParams p = random_params(s, 0.7);
    CMat3 u = compose_dod(p);
    std::array<double, 3> phi2 = {p.phi[0] + 2.0 * kPi / 3.0,
                                  p.phi[1] + 2.0 * kPi / 3.0,
                                  p.phi[2] + 2.0 * kPi / 3.0};
    CMat3 right = shift * expm_hermitian_generator(
                              offdiag_generator(p.m01, p.m02, p.m12));
    CMat3 g2 = logm_unitary(right);
    CMat3 u2 = expm_hermitian_generator(diag_generator(phi2)) *
               expm_hermitian_generator(g2);
    CHECK(frobenius_distance(u2, u) < 1e-12);
  }
}

TEST_CASE("solver: deterministic output for any worker count") {
  SolveConfig cfg;
  cfg.starts = 4;
  CMat3 w = walsh_hadamard();

  ::setenv("SU3_FORGE_THREADS", "1", 1);
  SolutionSet one = solve_dod(w, cfg);
  ::setenv("SU3_FORGE_THREADS", "5", 1);
  SolutionSet five = solve_dod(w, cfg);
  ::unsetenv("SU3_FORGE_THREADS");

  REQUIRE(one.solutions.size() == five.solutions.size());
  for (std::size_t i = 0; i < one.solutions.size(); ++i) {
    const auto& a = one.solutions[i];
    const auto& b = five.solutions[i];
    for (int j = 0; j < 3; ++j) CHECK(a.phi[j] == b.phi[j]);
    CHECK(a.m01 == b.m01);
    CHECK(a.m02 == b.m02);
    CHECK(a.m12 == b.m12);
    CHECK(one.residuals[i] == five.residuals[i]);
  }
}

TEST_CASE("solver: rejection paths") {
  CMat3 bad = CMat3::identity();
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(solve_dod(bad), NotUnitary);

  CMat3 w = walsh_hadamard();
  SolveConfig cfg;
  cfg.starts = 1;
  CHECK_THROWS_AS(solve_dod(w, cfg), std::invalid_argument);
  cfg.starts = 4;
  cfg.tol = 0.0;
  CHECK_THROWS_AS(solve_dod(w, cfg), std::invalid_argument);
  cfg.tol = 1e-9;
  cfg.branch_range = -1;
  CHECK_THROWS_AS(solve_dod(w, cfg), std::invalid_argument);
  cfg.branch_range = 1;
  cfg.dedup_tol = 0.0;
  CHECK_THROWS_AS(solve_dod(w, cfg), std::invalid_argument);

  // An unreachable acceptance tolerance leaves nothing to report.
  SolveConfig strict;
  strict.starts = 2;
  strict.tol = 1e-30;
  CHECK_THROWS_AS(solve_dod(w, strict), NoSolutionFound);
}
