#include "su3forge/mat3.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

namespace su3forge {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kValidTol = 1e-12;    // Hermiticity / unitarity acceptance
constexpr double kClusterTol = 1e-8;   // eigenvalue cluster width
// The trigonometric cubic splits an exact double root by O(sqrt(eps)), about
// 1.5e-8 at unit scale, so Hermitian clustering must sit above that noise
// floor; size-2 clusters are then re-resolved exactly by Rayleigh-Ritz.
constexpr double kHermClusterTol = 1e-7;

double scale_of(const CMat3& a) { return std::max(1.0, frobenius_norm(a)); }

using Col = std::array<Cx, 3>;

Col get_col(const CMat3& m, int c) { return {m(0, c), m(1, c), m(2, c)}; }

void set_col(CMat3& m, int c, const Col& v) {
  m(0, c) = v[0];
  m(1, c) = v[1];
  m(2, c) = v[2];
}

Cx cdot(const Col& a, const Col& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

double cnorm(const Col& a) { return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2])); }

Col mat_vec(const CMat3& m, const Col& v) {
  Col r{};
  for (int i = 0; i < 3; ++i) r[i] = m(i, 0) * v[0] + m(i, 1) * v[1] + m(i, 2) * v[2];
  return r;
}

// Deterministic phase convention: rotate the column so its largest-modulus
// entry (ties within 1e-12 break toward the lowest row) is real positive.
void phase_fix_column(CMat3& v, int c) {
  int best = 0;
  double bm = std::abs(v(0, c));
  for (int r = 1; r < 3; ++r) {
    double m = std::abs(v(r, c));
    if (m > bm + 1e-12) {
      bm = m;
      best = r;
    }
  }
  Cx z = v(best, c);
  double az = std::abs(z);
  if (az > 0.0) {
    Cx ph = std::conj(z) / az;
    for (int r = 0; r < 3; ++r) v(r, c) *= ph;
  }
}

// Modified Gram-Schmidt over all three columns, in place.  A column that the
// deflation annihilates (duplicate input vectors) restarts from the axis the
// earlier columns cover least, so the result is always a complete frame.
void orthonormalize_columns(CMat3& v) {
  for (int c = 0; c < 3; ++c) {
    Col vc = get_col(v, c);
    for (int attempt = 0; attempt < 2; ++attempt) {
      for (int p = 0; p < c; ++p) {
        Col vp = get_col(v, p);
        Cx d = cdot(vp, vc);
        for (int r = 0; r < 3; ++r) vc[r] -= d * vp[r];
      }
      double n = cnorm(vc);
      if (n > 1e-6 || attempt == 1) {
        if (n > 0.0) {
          for (auto& x : vc) x /= n;
        }
        break;
      }
      int axis = 0;
      double best = -1.0;
      for (int a = 0; a < 3; ++a) {
        double res = 1.0;
        for (int p = 0; p < c; ++p) res -= std::norm(v(a, p));
        if (res > best + 1e-12) {
          best = res;
          axis = a;
        }
      }
      vc = Col{};
      vc[static_cast<std::size_t>(axis)] = Cx(1);
    }
    set_col(v, c, vc);
  }
}

// Gaussian elimination with partial pivoting; false when a pivot underflows
// (the shifted system is exactly singular, so the caller keeps its vector).
bool solve3(CMat3 a, Col b, Col& y) {
  std::array<int, 3> piv{0, 1, 2};
  for (int c = 0; c < 3; ++c) {
    int best = c;
    double bm = std::abs(a(piv[c], c));
    for (int r = c + 1; r < 3; ++r) {
      double m = std::abs(a(piv[r], c));
      if (m > bm) {
        bm = m;
        best = r;
      }
    }
    std::swap(piv[c], piv[best]);
    if (bm < 1e-300) return false;
    for (int r = c + 1; r < 3; ++r) {
      Cx f = a(piv[r], c) / a(piv[c], c);
      for (int k = c; k < 3; ++k) a(piv[r], k) -= f * a(piv[c], k);
      b[static_cast<std::size_t>(piv[r])] -= f * b[static_cast<std::size_t>(piv[c])];
    }
  }
  for (int c = 2; c >= 0; --c) {
    Cx s = b[static_cast<std::size_t>(piv[c])];
    for (int k = c + 1; k < 3; ++k) s -= a(piv[c], k) * y[static_cast<std::size_t>(k)];
    y[static_cast<std::size_t>(c)] = s / a(piv[c], c);
  }
  return true;
}

// Eigenvalues of a Hermitian 3x3 via the trigonometric solution of the
// characteristic cubic; ascending.
std::array<double, 3> herm_eigenvalues(const CMat3& a) {
  double m = std::real(trace(a)) / 3.0;
  CMat3 b = a - m * CMat3::identity();
  double p2 = 0.0;
  for (const auto& z : b.e) p2 += std::norm(z);
  p2 /= 6.0;
  if (p2 < 1e-300) return {m, m, m};
  double p = std::sqrt(p2);
  CMat3 c = (1.0 / p) * b;
  double q = std::clamp(std::real(det(c)) / 2.0, -1.0, 1.0);
  double phi = std::acos(q) / 3.0;
  std::array<double, 3> ev = {m + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0),
                              m + 2.0 * p * std::cos(phi - 2.0 * kPi / 3.0),
                              m + 2.0 * p * std::cos(phi)};
  std::sort(ev.begin(), ev.end());
  return ev;
}

// r orthonormal columns spanning the range of the rank-r projector p,
// chosen by pivoted Gram-Schmidt (largest residual column first, lowest
// index on ties) so degenerate eigenspaces get a reproducible basis.
std::array<Col, 3> projector_basis(const CMat3& p, int r) {
  std::array<Col, 3> cols = {get_col(p, 0), get_col(p, 1), get_col(p, 2)};
  std::array<bool, 3> used{false, false, false};
  std::array<Col, 3> basis{};
  for (int t = 0; t < r; ++t) {
    int best = -1;
    double bm = 0.0;
    for (int i = 0; i < 3; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      double n = cnorm(cols[static_cast<std::size_t>(i)]);
      if (n > bm + 1e-12) {
        bm = n;
        best = i;
      }
    }
    Col v{};
    if (best < 0 || bm < 1e-14) {
      // Numerically empty residual (projector rank deficit): fall back to a
      // canonical axis orthogonalized against what we already hold.
      v = Col{Cx(0), Cx(0), Cx(0)};
      v[static_cast<std::size_t>(t)] = Cx(1);
    } else {
      used[static_cast<std::size_t>(best)] = true;
      v = cols[static_cast<std::size_t>(best)];
    }
    for (int s = 0; s < t; ++s) {
      Cx d = cdot(basis[static_cast<std::size_t>(s)], v);
      for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>(i)] -= d * basis[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)];
    }
    double n = cnorm(v);
    for (auto& x : v) x /= n;
    basis[static_cast<std::size_t>(t)] = v;
    for (int i = 0; i < 3; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      Cx d = cdot(v, cols[static_cast<std::size_t>(i)]);
      for (int j = 0; j < 3; ++j) cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= d * v[static_cast<std::size_t>(j)];
    }
  }
  return basis;
}

// Analytic eigendecomposition of the Hermitian 2x2 [[a, b], [conj(b), c]];
// eigenvalues ascending, q0/q1 the matching orthonormal eigenvectors.
void eig2(double a, Cx b, double c, double& m0, double& m1, std::array<Cx, 2>& q0,
          std::array<Cx, 2>& q1) {
  double ab = std::abs(b);
  if (ab < 1e-15 * (std::abs(a) + std::abs(c) + 1.0)) {
    if (a <= c) {
      m0 = a;
      m1 = c;
      q0 = {Cx(1), Cx(0)};
      q1 = {Cx(0), Cx(1)};
    } else {
      m0 = c;
      m1 = a;
      q0 = {Cx(0), Cx(1)};
      q1 = {Cx(1), Cx(0)};
    }
    return;
  }
  double h = 0.5 * (a + c);
  double d = 0.5 * (a - c);
  double rad = std::sqrt(d * d + ab * ab);
  m0 = h - rad;
  m1 = h + rad;
  Cx v0, v1;
  if (std::abs(m0 - a) > std::abs(m0 - c)) {
    v0 = b;
    v1 = Cx(m0 - a, 0.0);
  } else {
    v0 = Cx(m0 - c, 0.0);
    v1 = std::conj(b);
  }
  double n = std::sqrt(std::norm(v0) + std::norm(v1));
  q0 = {v0 / n, v1 / n};
  q1 = {-std::conj(q0[1]), std::conj(q0[0])};
}

struct Cluster {
  int begin;
  int size;
};

std::array<Cluster, 3> find_clusters(const std::array<double, 3>& ev, double tol, int& count) {
  std::array<Cluster, 3> cl{};
  count = 0;
  int i = 0;
  while (i < 3) {
    int j = i + 1;
    while (j < 3 && std::abs(ev[static_cast<std::size_t>(j)] - ev[static_cast<std::size_t>(j - 1)]) <= tol) ++j;
    cl[static_cast<std::size_t>(count++)] = Cluster{i, j - i};
    i = j;
  }
  return cl;
}

}  // namespace

CMat3 CMat3::identity() {
  CMat3 m;
  m(0, 0) = m(1, 1) = m(2, 2) = Cx(1);
  return m;
}

CMat3 CMat3::diag(Cx a, Cx b, Cx c) {
  CMat3 m;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

CMat3 operator+(const CMat3& a, const CMat3& b) {
  CMat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.e[i] = a.e[i] + b.e[i];
  return r;
}

CMat3 operator-(const CMat3& a, const CMat3& b) {
  CMat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.e[i] = a.e[i] - b.e[i];
  return r;
}

CMat3 operator-(const CMat3& a) {
  CMat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.e[i] = -a.e[i];
  return r;
}

CMat3 operator*(const CMat3& a, const CMat3& b) {
  CMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return r;
}

CMat3 operator*(Cx s, const CMat3& a) {
  CMat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.e[i] = s * a.e[i];
  return r;
}

CMat3 operator*(const CMat3& a, Cx s) { return s * a; }
CMat3 operator*(double s, const CMat3& a) { return Cx(s, 0.0) * a; }
CMat3 operator*(const CMat3& a, double s) { return Cx(s, 0.0) * a; }

CMat3 adjoint(const CMat3& a) {
  CMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = std::conj(a(j, i));
  return r;
}

CMat3 transpose(const CMat3& a) {
  CMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

CMat3 conj(const CMat3& a) {
  CMat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.e[i] = std::conj(a.e[i]);
  return r;
}

Cx trace(const CMat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

Cx det(const CMat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

double frobenius_norm(const CMat3& a) {
  double s = 0.0;
  for (const auto& z : a.e) s += std::norm(z);
  return std::sqrt(s);
}

double frobenius_distance(const CMat3& a, const CMat3& b) { return frobenius_norm(a - b); }

bool is_finite(const CMat3& a) {
  for (const auto& z : a.e)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

bool is_hermitian(const CMat3& a, double tol) {
  return frobenius_distance(a, adjoint(a)) <= tol * scale_of(a);
}

bool is_unitary(const CMat3& a, double tol) {
  return frobenius_distance(adjoint(a) * a, CMat3::identity()) <= tol * scale_of(a);
}

EigenSystem eig_hermitian(const CMat3& m) {
  if (!is_finite(m)) throw NotHermitian("eig_hermitian: non-finite entries");
  if (!is_hermitian(m, kValidTol)) throw NotHermitian("eig_hermitian: input is not Hermitian");
  CMat3 a = 0.5 * (m + adjoint(m));  // exact symmetrization of admissible noise
  double scale = scale_of(a);

  std::array<double, 3> ev = herm_eigenvalues(a);
  int ncl = 0;
  std::array<Cluster, 3> clusters = find_clusters(ev, kHermClusterTol * scale, ncl);

  std::array<Col, 3> vecs{};
  std::array<double, 3> vals = ev;
  for (int ci = 0; ci < ncl; ++ci) {
    const Cluster& cl = clusters[static_cast<std::size_t>(ci)];
    double mean = 0.0;
    for (int t = 0; t < cl.size; ++t) mean += ev[static_cast<std::size_t>(cl.begin + t)];
    mean /= cl.size;
    // Spectral projector: product over eigenvalues outside the cluster.
    CMat3 proj = CMat3::identity();
    for (int cj = 0; cj < ncl; ++cj) {
      if (cj == ci) continue;
      const Cluster& other = clusters[static_cast<std::size_t>(cj)];
      double nu = 0.0;
      for (int t = 0; t < other.size; ++t) nu += ev[static_cast<std::size_t>(other.begin + t)];
      nu /= other.size;
      proj = proj * ((a - nu * CMat3::identity()) * (1.0 / (mean - nu)));
    }
    std::array<Col, 3> basis = projector_basis(proj, cl.size);

    if (cl.size == 1) {
      Col v = basis[0];
      double mu = mean;
      Col y{};
      CMat3 shifted = a - mu * CMat3::identity();
      if (solve3(shifted, v, y)) {
        double n = cnorm(y);
        if (n > 0.0) {
          for (auto& x : y) x /= n;
          v = y;
        }
      }
      Col av = mat_vec(a, v);
      mu = std::real(cdot(v, av));
      vals[static_cast<std::size_t>(cl.begin)] = mu;
      vecs[static_cast<std::size_t>(cl.begin)] = v;
    } else if (cl.size == 2) {
      // Rayleigh-Ritz in the cluster span separates what the cubic could not.
      Col a0 = mat_vec(a, basis[0]);
      Col a1 = mat_vec(a, basis[1]);
      double h00 = std::real(cdot(basis[0], a0));
      Cx h01 = cdot(basis[0], a1);
      double h11 = std::real(cdot(basis[1], a1));
      double m0 = 0.0, m1 = 0.0;
      std::array<Cx, 2> q0{}, q1{};
      eig2(h00, h01, h11, m0, m1, q0, q1);
      Col w0{}, w1{};
      for (int i = 0; i < 3; ++i) {
        w0[static_cast<std::size_t>(i)] = q0[0] * basis[0][static_cast<std::size_t>(i)] + q0[1] * basis[1][static_cast<std::size_t>(i)];
        w1[static_cast<std::size_t>(i)] = q1[0] * basis[0][static_cast<std::size_t>(i)] + q1[1] * basis[1][static_cast<std::size_t>(i)];
      }
      vals[static_cast<std::size_t>(cl.begin)] = m0;
      vals[static_cast<std::size_t>(cl.begin + 1)] = m1;
      vecs[static_cast<std::size_t>(cl.begin)] = w0;
      vecs[static_cast<std::size_t>(cl.begin + 1)] = w1;
    } else {
      // Near-scalar matrix: the identity basis is exact enough.
      for (int t = 0; t < cl.size; ++t) {
        vals[static_cast<std::size_t>(cl.begin + t)] = mean;
        vecs[static_cast<std::size_t>(cl.begin + t)] = basis[static_cast<std::size_t>(t)];
      }
    }
  }

  // Refinement may nudge values across a tight boundary; restore ascending
  // order with a stable index sort.
  std::array<int, 3> idx{0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
    return vals[static_cast<std::size_t>(x)] < vals[static_cast<std::size_t>(y)];
  });

  EigenSystem out;
  for (int j = 0; j < 3; ++j) {
    out.values[static_cast<std::size_t>(j)] = Cx(vals[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])], 0.0);
    set_col(out.vectors, j, vecs[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]);
  }
  orthonormalize_columns(out.vectors);
  for (int j = 0; j < 3; ++j) phase_fix_column(out.vectors, j);
  return out;
}

EigenSystem eig_unitary(const CMat3& m) {
  if (!is_finite(m)) throw NotUnitary("eig_unitary: non-finite entries");
  if (!is_unitary(m, kValidTol)) throw NotUnitary("eig_unitary: input is not unitary");

  // Diagonalize the Hermitian part; inside its degenerate clusters the
  // skew-Hermitian part separates conjugate phase pairs, and whatever stays
  // degenerate after both passes is a genuine repeated eigenvalue.
  CMat3 h = 0.5 * (m + adjoint(m));
  CMat3 k = Cx(0.0, -0.5) * (m - adjoint(m));
  EigenSystem hs = eig_hermitian(h);

  std::array<double, 3> hev{};
  for (int j = 0; j < 3; ++j) hev[static_cast<std::size_t>(j)] = hs.values[static_cast<std::size_t>(j)].real();
  int ncl = 0;
  std::array<Cluster, 3> clusters = find_clusters(hev, kClusterTol, ncl);

  CMat3 vec = hs.vectors;
  for (int ci = 0; ci < ncl; ++ci) {
    const Cluster& cl = clusters[static_cast<std::size_t>(ci)];
    if (cl.size == 2) {
      Col b0 = get_col(vec, cl.begin);
      Col b1 = get_col(vec, cl.begin + 1);
      Col k0 = mat_vec(k, b0);
      Col k1 = mat_vec(k, b1);
      double s00 = std::real(cdot(b0, k0));
      Cx s01 = cdot(b0, k1);
      double s11 = std::real(cdot(b1, k1));
      double m0 = 0.0, m1 = 0.0;
      std::array<Cx, 2> q0{}, q1{};
      eig2(s00, s01, s11, m0, m1, q0, q1);
      if (std::abs(m1 - m0) > kClusterTol) {
        Col w0{}, w1{};
        for (int i = 0; i < 3; ++i) {
          w0[static_cast<std::size_t>(i)] = q0[0] * b0[static_cast<std::size_t>(i)] + q0[1] * b1[static_cast<std::size_t>(i)];
          w1[static_cast<std::size_t>(i)] = q1[0] * b0[static_cast<std::size_t>(i)] + q1[1] * b1[static_cast<std::size_t>(i)];
        }
        set_col(vec, cl.begin, w0);
        set_col(vec, cl.begin + 1, w1);
      }
    } else if (cl.size == 3) {
      EigenSystem ks = eig_hermitian(k);
      vec = ks.vectors;
      break;
    }
  }

  // Rayleigh quotients give the unitary eigenvalues; snap to the unit circle.
  std::array<Cx, 3> mu{};
  std::array<Col, 3> cols{};
  for (int j = 0; j < 3; ++j) {
    Col v = get_col(vec, j);
    Col uv = mat_vec(m, v);
    Cx z = cdot(v, uv);
    double az = std::abs(z);
    mu[static_cast<std::size_t>(j)] = az > 0.0 ? z / az : Cx(1.0, 0.0);
    cols[static_cast<std::size_t>(j)] = v;
  }

  std::array<int, 3> idx{0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
    return std::arg(mu[static_cast<std::size_t>(x)]) < std::arg(mu[static_cast<std::size_t>(y)]);
  });

  EigenSystem out;
  for (int j = 0; j < 3; ++j) {
    out.values[static_cast<std::size_t>(j)] = mu[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
    set_col(out.vectors, j, cols[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]);
  }
  orthonormalize_columns(out.vectors);
  for (int j = 0; j < 3; ++j) phase_fix_column(out.vectors, j);
  return out;
}

CMat3 expm_hermitian_generator(const CMat3& g) {
  EigenSystem es = eig_hermitian(g);
  CMat3 d;
  for (int j = 0; j < 3; ++j) {
    double lam = es.values[static_cast<std::size_t>(j)].real();
    d(j, j) = Cx(std::cos(lam), -std::sin(lam));  // exp(-i*lam)
  }
  return es.vectors * d * adjoint(es.vectors);
}

CMat3 logm_unitary(const CMat3& u, const BranchVector& branch) {
  EigenSystem es = eig_unitary(u);
  CMat3 d;
  for (int j = 0; j < 3; ++j) {
    double psi = std::arg(es.values[static_cast<std::size_t>(j)]);
    d(j, j) = Cx(-psi + 2.0 * kPi * branch.k[static_cast<std::size_t>(j)], 0.0);
  }
  CMat3 g = es.vectors * d * adjoint(es.vectors);
  return 0.5 * (g + adjoint(g));  // exact Hermitian symmetrization
}

CMat3 haar_random_unitary(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto u01 = [&rng]() {
    // 53 significant bits mapped into (0, 1); never 0, so log stays finite.
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  auto gauss_pair = [&](double& a, double& b) {
    double r = std::sqrt(-2.0 * std::log(u01()));
    double t = 2.0 * kPi * u01();
    a = r * std::cos(t);
    b = r * std::sin(t);
  };

  for (int attempt = 0; attempt < 16; ++attempt) {
    CMat3 z;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double a = 0.0, b = 0.0;
        gauss_pair(a, b);
        z(i, j) = Cx(a, b);
      }
    // Gram-Schmidt QR with positive real R diagonal keeps the distribution
    // exactly Haar (the factorization is then unique).
    bool ok = true;
    for (int c = 0; c < 3 && ok; ++c) {
      Col vc = get_col(z, c);
      for (int p = 0; p < c; ++p) {
        Col vp = get_col(z, p);
        Cx d = cdot(vp, vc);
        for (int r = 0; r < 3; ++r) vc[static_cast<std::size_t>(r)] -= d * vp[static_cast<std::size_t>(r)];
      }
      double n = cnorm(vc);
      if (n < 1e-12) {
        ok = false;  // astronomically unlikely; redraw the whole matrix
        break;
      }
      for (auto& x : vc) x /= n;
      set_col(z, c, vc);
    }
    if (ok) return z;
  }
  throw NoSolutionFound("haar_random_unitary: repeated rank-deficient draws");
}

}  // namespace su3forge
