#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "su3forge/cartan.hpp"
#include "su3forge/errors.hpp"
#include "su3forge/gates.hpp"
#include "su3forge/gellmann.hpp"
#include "su3forge/mat3.hpp"

using namespace su3forge;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Least residual of any bounded log branch of p against the split's p span;
// the defining property is that some physically consistent log lives there.
double min_foreign_residual(const CMat3& p, const CartanSplit& s) {
  double best = 1e18;
  for (int k0 = -1; k0 <= 1; ++k0) {
    for (int k1 = -1; k1 <= 1; ++k1) {
      for (int k2 = -1; k2 <= 1; ++k2) {
        CMat3 g = logm_unitary(p, BranchVector{{k0, k1, k2}});
        if (std::abs(trace(g)) > 1e-6) continue;
        CMat3 proj = CMat3::zero();
        for (int idx : s.p_indices) {
          proj = proj + (0.5 * trace(gell(idx) * g).real()) * gell(idx);
        }
        best = std::min(best, frobenius_distance(g, proj));
      }
    }
  }
  return best;
}

double coeff_of(const GivensFactor& f, int lambda_index) {
  const std::array<int, 9> idx = basis_indices(f.coeffs.variant);
  for (int slot = 0; slot < 9; ++slot) {
    if (idx[slot] == lambda_index) return f.coeffs.c[slot];
  }
  return 0.0;
}

void check_kak_invariants(const CMat3& u, const CartanSplit& s) {
  auto [k, p] = kak_factor(u, s);
  const CMat3& th = s.involution_sign;
  CHECK(frobenius_distance(k * p, u) < 1e-10);
  CHECK(frobenius_distance(th * k * th, k) < 1e-9);
  CHECK(frobenius_distance(th * p * th * p, CMat3::identity()) < 1e-9);
  CHECK(min_foreign_residual(p, s) < 1e-9);
}

}  // namespace

TEST_CASE("split definitions and closure") {
  for (char name : {'A', 'B', 'C'}) {
    CartanSplit s = split(name);
    CHECK(check_cartan_split(
        std::vector<int>(s.k_indices.begin(), s.k_indices.end()),
        std::vector<int>(s.p_indices.begin(), s.p_indices.end())));
    for (int i : s.k_indices) {
      CHECK(frobenius_distance(s.involution_sign * gell(i) * s.involution_sign,
                               gell(i)) < 1e-15);
    }
    for (int i : s.p_indices) {
      CHECK(frobenius_distance(s.involution_sign * gell(i) * s.involution_sign,
                               -1.0 * gell(i)) < 1e-15);
    }
  }
  CHECK(split('A').involution_sign(2, 2) == Cx(-1.0));
  CHECK(split('B').involution_sign(0, 0) == Cx(-1.0));
  CHECK(split('C').involution_sign(1, 1) == Cx(-1.0));
  CHECK_THROWS_AS(split('D'), UnknownSplit);

  // The orthogonal-type split closes too; a random index cut does not.
  CHECK(check_cartan_split({2, 5, 7}, {1, 3, 4, 6, 8}));
  CHECK(!check_cartan_split({1, 4}, {2, 3, 5, 6, 7, 8}));
}

TEST_CASE("polar-type factorization: fixed points") {
  CMat3 d = CMat3::diag(std::polar(1.0, -0.3), std::polar(1.0, -1.1),
                        std::polar(1.0, -2.2));
  auto [kd, pd] = kak_factor(d, split('A'));
  CHECK(frobenius_distance(pd, CMat3::identity()) < 1e-12);
  CHECK(frobenius_distance(kd, d) < 1e-12);

  CMat3 u4 = expm_hermitian_generator(0.7 * gell(4));
  auto [k4, p4] = kak_factor(u4, split('A'));
  CHECK(frobenius_distance(k4, CMat3::identity()) < 1e-12);
  CHECK(frobenius_distance(p4, u4) < 1e-12);

  CHECK_THROWS_AS(kak_factor(2.0 * CMat3::identity(), split('A')), NotUnitary);
}

TEST_CASE("polar-type factorization: degenerate involution orbits") {
  // The swap has a doubly degenerate -1 eigenvalue in its involution square,
  // exercising the basis remix inside the cluster.
  for (char name : {'A', 'B', 'C'}) {
    check_kak_invariants(swap12(), split(name));
    check_kak_invariants(walsh_hadamard(), split(name));
  }
}

TEST_CASE("polar-type factorization: random targets") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    CMat3 u = haar_random_unitary(seed);
    for (char name : {'A', 'B', 'C'}) {
      check_kak_invariants(u, split(name));
    }
  }
}

TEST_CASE("full reduction round-trips") {
  std::vector<CMat3> gates;
  gates.push_back(walsh_hadamard());
  gates.push_back(swap12());
  gates.push_back(CMat3::identity());
  gates.push_back(CMat3::diag(std::polar(1.0, -0.3), std::polar(1.0, -1.1),
                              std::polar(1.0, -2.2)));
  // Gimbal-degenerate fixed factors: purely diagonal and purely antidiagonal
  // SU(2) blocks.
  gates.push_back(expm_hermitian_generator(2.0 * gell(3)));
  gates.push_back(expm_hermitian_generator((kPi / 2.0) * gell(2)));
  for (std::uint64_t seed = 21; seed <= 32; ++seed) {
    gates.push_back(haar_random_unitary(seed));
  }

  for (const CMat3& u : gates) {
    for (char name : {'A', 'B', 'C'}) {
      CartanFactors f = cartan_decompose(u, split(name));
      CHECK(frobenius_distance(compose_factors(f), u) < 1e-9);
    }
  }

  CartanFactors fid = cartan_decompose(CMat3::identity(), split('A'));
  CHECK(std::abs(fid.global_phase) < 1e-12);
  for (double c : fid.diag_coeffs) CHECK(std::abs(c) < 1e-9);
  for (double c : fid.first_off) CHECK(std::abs(c) < 1e-9);
  for (double c : fid.second_off) CHECK(std::abs(c) < 1e-9);
}

TEST_CASE("factor supports for the mixing gate") {
  CMat3 w = walsh_hadamard();

  CartanFactors fa = cartan_decompose(w, split('A'));
  CHECK(fa.split.z_index == 3);
  CHECK(fa.split.scalar_index == 8);
  CHECK(fa.split.off_pair == std::array<int, 2>{1, 2});
  CHECK(fa.split.p_indices == std::array<int, 4>{4, 5, 6, 7});
  CHECK(frobenius_distance(compose_factors(fa), w) < 1e-9);

  CartanFactors fb = cartan_decompose(w, split('B'));
  CHECK(fb.split.z_index == 10);
  CHECK(fb.split.scalar_index == 12);
  CHECK(fb.split.off_pair == std::array<int, 2>{6, 7});
  CHECK(fb.split.p_indices == std::array<int, 4>{1, 2, 4, 5});
  CHECK(frobenius_distance(compose_factors(fb), w) < 1e-9);

  // A generator built from the declared supports reproduces each factor, so
  // the coefficients really are the factor's whole content.
  const CartanSplit& s = fa.split;
  CMat3 dgen = fa.diag_coeffs[0] * gell(s.z_index) +
               fa.diag_coeffs[1] * gell(s.scalar_index);
  CHECK(is_hermitian(dgen, 1e-14));
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (r != c) CHECK(std::abs(dgen(r, c)) < 1e-14);
    }
  }
}

TEST_CASE("two-photon elimination") {
  CMat3 w = walsh_hadamard();
  CartanFactors fc = cartan_decompose(w, split('C'));
  CHECK_THROWS_AS(eliminate_two_photon(cartan_decompose(w, split('A'))),
                  WrongSplit);
  CHECK_THROWS_AS(eliminate_two_photon(cartan_decompose(w, split('B'))),
                  WrongSplit);

  GivensChain chain = eliminate_two_photon(fc);
  CHECK(chain.factors.size() == 5);
  CHECK(frobenius_distance(compose_chain(chain), w) < 1e-9);
  for (const auto& f : chain.factors) {
    CHECK(std::abs(coeff_of(f, 4)) + std::abs(coeff_of(f, 5)) <= 1e-9);
    for (int idx : f.support) {
      CHECK(idx != 4);
      CHECK(idx != 5);
    }
  }
  CHECK(!chain.compresses_to_three());

  // Pure middle factor: the mixed pair moves onto {g6, g7} around the
  // quarter-turn rotation factors.
  CartanFactors mid;
  mid.split = split('C');
  mid.first_off = {0.3, 0.0};
  GivensChain mchain = eliminate_two_photon(mid);
  CHECK(frobenius_distance(compose_chain(mchain),
                           expm_hermitian_generator(0.3 * gell(4))) < 1e-12);
  CHECK(mchain.factors.size() == 5);
  CHECK(coeff_of(mchain.factors[2], 6) == doctest::Approx(0.3));
  CHECK(mchain.factors[1].angle == doctest::Approx(-kPi / 2.0));
  CHECK(mchain.factors[3].angle == doctest::Approx(kPi / 2.0));

  // Zero middle factor: nothing to conjugate, factors pass through.
  CartanFactors flat;
  flat.split = split('C');
  flat.diag_coeffs = {0.4, -0.2};
  flat.second_off = {0.1, 0.0, -0.3, 0.2};
  GivensChain fchain = eliminate_two_photon(flat);
  CHECK(fchain.factors.size() == 3);
  CHECK(fchain.compresses_to_three());
  CHECK(frobenius_distance(compose_chain(fchain), compose_factors(flat)) < 1e-12);
}

TEST_CASE("quarter-turn conjugation identities") {
  for (std::uint64_t s = 800; s < 820; ++s) {
    const double th = 4.0 * haar_random_unitary(s)(0, 0).real();
    const CMat3 rp = expm_hermitian_generator(-th * gell(2));  // e^{+i g2 th}
    const CMat3 rm = expm_hermitian_generator(th * gell(2));   // e^{-i g2 th}
    CHECK(frobenius_distance(rp * gell(4) * rm,
                             std::cos(th) * gell(4) - std::sin(th) * gell(6)) <
          1e-12);
    CHECK(frobenius_distance(rm * gell(5) * rp,
                             std::cos(th) * gell(5) + std::sin(th) * gell(7)) <
          1e-12);
  }
  // The opposite relative sign on the first identity does not hold.
  const double t0 = 0.7321;
  const CMat3 rp = expm_hermitian_generator(-t0 * gell(2));
  const CMat3 rm = expm_hermitian_generator(t0 * gell(2));
  CHECK(frobenius_distance(rp * gell(4) * rm,
                           std::cos(t0) * gell(4) + std::sin(t0) * gell(6)) >
        0.1);
}

TEST_CASE("published pulse list for the mixing gate") {
  // Three-factor chain quoted with four-decimal generators and angles; the
  // recomputed fidelity to the gate is pinned as a regression value. It is
  // far from 1, so the list is reported as a comparison, never asserted as
  // a synthesis of the gate.
  CMat3 h1 = CMat3::diag(0.9631, -0.6091, 0.8471);
  CMat3 h2 = gell(6);
  CMat3 h3 = 0.5907 * gell(2) + 0.8069 * gell(7);
  CMat3 g = expm_hermitian_generator(6.5239 * h1) *
            expm_hermitian_generator(5.9977 * h2) *
            expm_hermitian_generator(4.4994 * h3);
  const double fid = std::abs(trace(adjoint(g) * walsh_hadamard())) / 3.0;
  CHECK(fid == doctest::Approx(0.9179930394618383).epsilon(1e-9));
  CHECK(fid < 0.99);
}
