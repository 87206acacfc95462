#include "su3forge/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "su3forge/errors.hpp"

namespace su3forge {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_pm(double x) {
  double y = std::remainder(x, 2.0 * kPi);
  if (y <= -kPi) y += 2.0 * kPi;
  return y;
}

// Eigen decomposition of a unitary M adapted to the involution sign matrix:
// inside any degenerate eigenvalue pair (necessarily at a real eigenvalue,
// where conjugation by Theta maps the eigenspace to itself) the basis is
// remixed so Theta swaps the two vectors whenever its restriction has
// signature {-1, +1}. That makes an antisymmetric branch assignment
// (+pi, -pi) transform correctly under Theta.
void theta_adapted_eig(const CMat3& m, const CMat3& th, std::array<Cx, 3>& values,
                       CMat3& z) {
  EigenSystem es = eig_unitary(m);
  values = es.values;
  z = es.vectors;

  bool used[3] = {false, false, false};
  for (int i = 0; i < 3; ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::vector<int> group{i};
    for (int j = i + 1; j < 3; ++j) {
      if (!used[j] && std::abs(values[i] - values[j]) < 1e-8) {
        group.push_back(j);
        used[j] = true;
      }
    }
    if (group.size() != 2) continue;
    const int g0 = group[0], g1 = group[1];

    // Restriction of Theta to the 2-dim eigenspace.
    Cx t00 = 0.0, t01 = 0.0, t11 = 0.0;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        const Cx trc = th(r, c);
        t00 += std::conj(z(r, g0)) * trc * z(c, g0);
        t01 += std::conj(z(r, g0)) * trc * z(c, g1);
        t11 += std::conj(z(r, g1)) * trc * z(c, g1);
      }
    }
    // Analytic 2x2 Hermitian eigenpair, ascending.
    const double a = t00.real(), d = t11.real();
    const double tr = a + d;
    const double disc = std::sqrt(std::max(0.0, (a - d) * (a - d) / 4.0 +
                                                    std::norm(t01)));
    const double mu0 = tr / 2.0 - disc, mu1 = tr / 2.0 + disc;
    if (!(mu0 < -0.5 && mu1 > 0.5)) continue;

    Cx v0[2], v1[2];
    if (std::abs(t01) > 1e-14) {
      v0[0] = t01;
      v0[1] = mu0 - a;
    } else {
      v0[0] = (a <= d) ? 1.0 : 0.0;
      v0[1] = (a <= d) ? 0.0 : 1.0;
    }
    double n0 = std::sqrt(std::norm(v0[0]) + std::norm(v0[1]));
    v0[0] /= n0;
    v0[1] /= n0;
    v1[0] = -std::conj(v0[1]);
    v1[1] = std::conj(v0[0]);

    Cx qm[3], qp[3];
    for (int r = 0; r < 3; ++r) {
      qm[r] = z(r, g0) * v0[0] + z(r, g1) * v0[1];
      qp[r] = z(r, g0) * v1[0] + z(r, g1) * v1[1];
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int r = 0; r < 3; ++r) {
      z(r, g0) = (qp[r] + qm[r]) * inv_sqrt2;
      z(r, g1) = (qp[r] - qm[r]) * inv_sqrt2;
    }
    const Cx mean = (values[g0] + values[g1]) * 0.5;
    values[g0] = values[g1] = mean;
  }
}

struct KakCore {
  CMat3 k;
  CMat3 p;
  std::array<double, 4> p_coeffs{};  // on s.p_indices, ascending
};

KakCore kak_core(const CMat3& u, const CartanSplit& s) {
  if (!is_unitary(u, 1e-10)) throw NotUnitary("kak_factor: input is not unitary");
  const CMat3& th = s.involution_sign;
  const CMat3 m = th * adjoint(u) * th * u;

  std::array<Cx, 3> values{};
  CMat3 z;
  theta_adapted_eig(m, th, values, z);
  std::array<double, 3> psi{};
  for (int j = 0; j < 3; ++j) psi[j] = std::arg(values[j]);

  double best_res = 1e18;
  double best_norm = 1e18;
  CMat3 best_h;
  for (int k0 = -1; k0 <= 1; ++k0) {
    for (int k1 = -1; k1 <= 1; ++k1) {
      for (int k2 = -1; k2 <= 1; ++k2) {
        const double g0 = -psi[0] + 2.0 * kPi * k0;
        const double g1 = -psi[1] + 2.0 * kPi * k1;
        const double g2 = -psi[2] + 2.0 * kPi * k2;
        if (std::abs(g0 + g1 + g2) > 1e-6) continue;
        CMat3 h = CMat3::zero();
        const double g[3] = {g0, g1, g2};
        for (int j = 0; j < 3; ++j) {
          for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
              h(r, c) += g[j] * z(r, j) * std::conj(z(c, j));
            }
          }
        }
        h = 0.5 * (h + adjoint(h));
        // Residual outside the p span (orthogonal basis, Tr(gg) = 2).
        CMat3 proj = CMat3::zero();
        for (int idx : s.p_indices) {
          const double c = 0.5 * trace(gell(idx) * h).real();
          proj = proj + c * gell(idx);
        }
        const double res = frobenius_distance(h, proj);
        const double gnorm = g0 * g0 + g1 * g1 + g2 * g2;
        // Several branches can land in the span at once (phases at 0 or pi);
        // the minimal-norm one gives the canonical factor, with k = I on
        // targets that already sit inside the p exponential image.
        const bool tie = res < best_res + 1e-12 && gnorm < best_norm;
        if (res < best_res - 1e-12 || tie) {
          best_res = std::min(res, best_res);
          best_norm = gnorm;
          best_h = proj;  // keep the exact-span projection
        }
      }
    }
  }
  if (best_res > 1e-9) {
    throw BranchSelectionFailed(
        "kak_factor: no log branch lands in the p span (best residual " +
        std::to_string(best_res) + ")");
  }

  KakCore out;
  for (int j = 0; j < 4; ++j) {
    out.p_coeffs[j] = 0.5 * trace(gell(s.p_indices[j]) * best_h).real();
  }
  out.p = expm_hermitian_generator(0.5 * best_h);
  out.k = u * adjoint(out.p);
  return out;
}

struct EulerAngles {
  double alpha_scal = 0.0;
  double beta_z = 0.0;   // alpha1 + alpha3
  double beta_x = 0.0;   // alpha2 sin(2 alpha3)
  double beta_y = 0.0;   // alpha2 cos(2 alpha3)
};

EulerAngles euler_fixed_factor(const CMat3& kf, const CartanSplit& s) {
  const int i0 = s.block[0], i1 = s.block[1];
  const double gamma = std::arg(kf(s.sfree, s.sfree));
  const double alpha_s = std::sqrt(3.0) * gamma / 2.0;

  const Cx lift = std::polar(1.0, alpha_s / std::sqrt(3.0));
  const Cx a = lift * kf(i0, i0);
  const Cx b = lift * kf(i1, i0);
  const Cx dd = lift * kf(i1, i1);

  const double a2 = std::atan2(std::abs(b), std::abs(a));
  double a1 = 0.0, a3 = 0.0;
  if (std::abs(b) < 1e-12) {
    a1 = std::arg(dd);  // block is diag(e^{-i a1}, e^{+i a1})
    a3 = 0.0;
  } else if (std::abs(a) < 1e-12) {
    a1 = std::arg(b);
    a3 = 0.0;
  } else {
    const double ta = std::arg(dd);
    const double tb = std::arg(b);
    a1 = (ta + tb) / 2.0;
    a3 = wrap_pm((ta - tb) / 2.0);
  }

  EulerAngles e;
  e.alpha_scal = alpha_s;
  e.beta_z = a1 + a3;
  e.beta_x = a2 * std::sin(2.0 * a3);
  e.beta_y = a2 * std::cos(2.0 * a3);
  return e;
}

GivensFactor make_factor(const std::vector<std::pair<int, double>>& terms,
                         double angle) {
  GivensFactor f;
  f.angle = angle;
  f.coeffs.variant = DiagonalVariant::NineEleven;
  const std::array<int, 9> idx = basis_indices(DiagonalVariant::NineEleven);
  for (const auto& [gi, w] : terms) {
    for (int slot = 0; slot < 9; ++slot) {
      if (idx[slot] == gi) {
        f.coeffs.c[slot] = w;
        break;
      }
    }
    if (std::abs(w) > 1e-12) f.support.push_back(gi);
  }
  return f;
}

}  // namespace

bool GivensChain::compresses_to_three() const {
  int active = 0;
  for (const auto& f : factors) {
    double top = 0.0;
    for (double c : f.coeffs.c) top = std::max(top, std::abs(c));
    if (top * std::abs(f.angle) > 1e-12) ++active;
  }
  return active <= 3;
}

CartanSplit split(char name) {
  CartanSplit s;
  switch (name) {
    case 'A':
      s = {'A', {1, 2, 3, 8},   {4, 5, 6, 7}, CMat3::diag(1.0, 1.0, -1.0),
           {0, 1}, 2, 3, 8, {1, 2}};
      break;
    case 'B':
      s = {'B', {6, 7, 10, 12}, {1, 2, 4, 5}, CMat3::diag(-1.0, 1.0, 1.0),
           {1, 2}, 0, 10, 12, {6, 7}};
      break;
    case 'C':
      s = {'C', {4, 5, 9, 11},  {1, 2, 6, 7}, CMat3::diag(1.0, -1.0, 1.0),
           {0, 2}, 1, 9, 11, {4, 5}};
      break;
    default:
      throw UnknownSplit(std::string("split: unknown name '") + name + "'");
  }
  return s;
}

std::pair<CMat3, CMat3> kak_factor(const CMat3& u, const CartanSplit& s) {
  KakCore core = kak_core(u, s);
  return {core.k, core.p};
}

CartanFactors cartan_decompose(const CMat3& u, const CartanSplit& s) {
  if (!is_unitary(u, 1e-10)) {
    throw NotUnitary("cartan_decompose: input is not unitary");
  }
  const double chi = std::arg(det(u)) / 3.0;
  const CMat3 usu = std::polar(1.0, -chi) * u;

  KakCore core = kak_core(usu, s);
  EulerAngles e = euler_fixed_factor(core.k, s);

  CartanFactors f;
  f.global_phase = chi;
  f.diag_coeffs = {e.beta_z, e.alpha_scal};
  f.first_off = {e.beta_x, e.beta_y};
  for (int j = 0; j < 4; ++j) f.second_off[j] = 0.5 * core.p_coeffs[j];
  f.split = s;
  return f;
}

CMat3 compose_factors(const CartanFactors& f) {
  const CartanSplit& s = f.split;
  const CMat3 d = expm_hermitian_generator(f.diag_coeffs[0] * gell(s.z_index) +
                                           f.diag_coeffs[1] * gell(s.scalar_index));
  const CMat3 f1 = expm_hermitian_generator(f.first_off[0] * gell(s.off_pair[0]) +
                                            f.first_off[1] * gell(s.off_pair[1]));
  CMat3 h2 = CMat3::zero();
  for (int j = 0; j < 4; ++j) h2 = h2 + f.second_off[j] * gell(s.p_indices[j]);
  return std::polar(1.0, f.global_phase) * (d * f1 * expm_hermitian_generator(h2));
}

GivensChain eliminate_two_photon(const CartanFactors& f) {
  if (f.split.name != 'C') {
    throw WrongSplit(
        "eliminate_two_photon: only split C carries its mixed pair on g4/g5");
  }
  GivensChain chain;
  chain.source = f;

  const GivensFactor diag = make_factor(
      {{9, f.diag_coeffs[0]}, {11, f.diag_coeffs[1]}}, 1.0);
  std::vector<std::pair<int, double>> tail;
  for (int j = 0; j < 4; ++j) tail.push_back({f.split.p_indices[j], f.second_off[j]});
  const GivensFactor second = make_factor(tail, 1.0);

  const double b4 = f.first_off[0], b5 = f.first_off[1];
  if (std::abs(b4) + std::abs(b5) <= 1e-12) {
    chain.factors = {diag, make_factor({{4, b4}, {5, b5}}, 1.0), second};
    return chain;
  }
  // exp(+i g2 pi/2) maps g6 -> g4 and g7 -> g5 under conjugation, so the
  // mixed pair moves to the adjacent-level pair at the cost of two rotation
  // factors that cancel around it.
  chain.factors = {diag,
                   make_factor({{2, 1.0}}, -kPi / 2.0),
                   make_factor({{6, b4}, {7, b5}}, 1.0),
                   make_factor({{2, 1.0}}, kPi / 2.0),
                   second};
  return chain;
}

CMat3 compose_chain(const GivensChain& chain) {
  CMat3 out = std::polar(1.0, chain.source.global_phase) * CMat3::identity();
  for (const auto& f : chain.factors) {
    out = out * expm_hermitian_generator(f.angle * compose(f.coeffs));
  }
  return out;
}

}  // namespace su3forge
