#pragma once

// Dense 3x3 complex linear algebra: arithmetic, Frobenius metrics, spectral
// decompositions of Hermitian and unitary matrices, matrix exponential and
// logarithm in the convention u = exp(-i*g) with g Hermitian, and seeded
// Haar-random unitary sampling.  Self-contained and deterministic: identical
// inputs (and seeds) produce bit-identical outputs on every run.

#include <array>
#include <complex>
#include <cstdint>

#include "su3forge/errors.hpp"

namespace su3forge {

using Cx = std::complex<double>;

struct CMat3 {
  std::array<Cx, 9> e{};

  Cx& operator()(int r, int c) { return e[static_cast<std::size_t>(3 * r + c)]; }
  const Cx& operator()(int r, int c) const { return e[static_cast<std::size_t>(3 * r + c)]; }

  static CMat3 zero() { return CMat3{}; }
  static CMat3 identity();
  static CMat3 diag(Cx a, Cx b, Cx c);
};

CMat3 operator+(const CMat3& a, const CMat3& b);
CMat3 operator-(const CMat3& a, const CMat3& b);
CMat3 operator-(const CMat3& a);
CMat3 operator*(const CMat3& a, const CMat3& b);
CMat3 operator*(Cx s, const CMat3& a);
CMat3 operator*(const CMat3& a, Cx s);
CMat3 operator*(double s, const CMat3& a);
CMat3 operator*(const CMat3& a, double s);

CMat3 adjoint(const CMat3& a);
CMat3 transpose(const CMat3& a);
CMat3 conj(const CMat3& a);
Cx trace(const CMat3& a);
Cx det(const CMat3& a);

double frobenius_norm(const CMat3& a);
double frobenius_distance(const CMat3& a, const CMat3& b);

bool is_finite(const CMat3& a);
bool is_hermitian(const CMat3& a, double tol = 1e-12);
bool is_unitary(const CMat3& a, double tol = 1e-12);

// Eigenvalues plus an orthonormal eigenvector matrix (eigenvectors are the
// columns of `vectors`, column j pairing with values[j]).
struct EigenSystem {
  std::array<Cx, 3> values{};
  CMat3 vectors{};
};

// Integer branch offsets for the matrix logarithm; the principal branch is
// all zeros.
struct BranchVector {
  std::array<int, 3> k{0, 0, 0};
};

// Hermitian eigendecomposition with real eigenvalues sorted ascending.
// Deterministic for every input, including degenerate spectra (repeated
// eigenvalues get a pivoted, phase-fixed orthonormal basis rather than an
// arbitrary one).  Throws NotHermitian when the input fails the 1e-12 check.
EigenSystem eig_hermitian(const CMat3& m);

// Unitary eigendecomposition; eigenvalues lie on the unit circle and are
// sorted by principal phase arg(v) in (-pi, pi], ascending.  Degenerate
// spectra are handled deterministically, never rejected.  Throws NotUnitary.
EigenSystem eig_unitary(const CMat3& m);

// exp(-i*g) for Hermitian g, computed spectrally.  Throws NotHermitian.
CMat3 expm_hermitian_generator(const CMat3& g);

// Hermitian g with exp(-i*g) = u.  Eigenvalues of g are -psi_j + 2*pi*k_j
// where psi_j are the principal phases of u's eigenvalues; the principal
// branch (k = 0) gives g eigenvalues in [-pi, pi).  Throws NotUnitary.
CMat3 logm_unitary(const CMat3& u, const BranchVector& branch = {});

// Haar-distributed random unitary: QR of a complex Gaussian matrix with the
// R diagonal kept real positive.  Same seed, same matrix, on every platform.
CMat3 haar_random_unitary(std::uint64_t seed);

}  // namespace su3forge
