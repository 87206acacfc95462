#include "su3forge/dod.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "su3forge/errors.hpp"

namespace su3forge {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Wrap into (-pi, pi].
double wrap_pm(double x) {
  double y = std::remainder(x, kTwoPi);
  if (y <= -kPi) y += kTwoPi;
  return y;
}

// Wrap into [0, 2*pi).
double wrap_02pi(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  if (y >= kTwoPi) y = 0.0;
  return y;
}

double off_cost(const DodParams& p) {
  return std::norm(p.m01) + std::norm(p.m02) + std::norm(p.m12);
}

double diag_cost(const DodParams& p) {
  return 0.5 * (p.phi[0] * p.phi[0] + p.phi[1] * p.phi[1] + p.phi[2] * p.phi[2]);
}

// Exact lexicographic order on (off cost, diag cost, raw coordinates);
// epsilon-free so the sorted order is independent of discovery order.
bool canonical_less(const DodParams& a, const DodParams& b) {
  const double oa = off_cost(a), ob = off_cost(b);
  if (oa != ob) return oa < ob;
  const double da = diag_cost(a), db = diag_cost(b);
  if (da != db) return da < db;
  const double ka[9] = {a.phi[0], a.phi[1], a.phi[2],
                        a.m01.real(), a.m01.imag(), a.m02.real(),
                        a.m02.imag(), a.m12.real(), a.m12.imag()};
  const double kb[9] = {b.phi[0], b.phi[1], b.phi[2],
                        b.m01.real(), b.m01.imag(), b.m02.real(),
                        b.m02.imag(), b.m12.real(), b.m12.imag()};
  for (int i = 0; i < 9; ++i) {
    if (ka[i] != kb[i]) return ka[i] < kb[i];
  }
  return false;
}

struct RootCandidate {
  DodParams params;
  double residual;
};

// One damped-Newton run from a fixed phase start on a fixed log branch.
// Returns true and fills out on convergence to a verified product form.
bool newton_run(const CMat3& u, const BranchVector& branch,
                std::array<double, 3> phi, double tol, RootCandidate& out) {
  constexpr int kMaxIter = 60;
  constexpr int kMaxHalve = 20;
  constexpr double kStepH = 1e-7;
  constexpr double kFTol = 1e-13;

  auto feval = [&](const std::array<double, 3>& x, std::array<double, 3>& f) {
    try {
      f = phase_residual(x, u, branch);
    } catch (const std::exception&) {
      return false;
    }
    return std::isfinite(f[0]) && std::isfinite(f[1]) && std::isfinite(f[2]);
  };

  std::array<double, 3> f{};
  if (!feval(phi, f)) return false;
  double fn = std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[2])});

  for (int iter = 0; iter < kMaxIter && fn > kFTol; ++iter) {
    // Central-difference Jacobian.
    double jac[3][3];
    for (int c = 0; c < 3; ++c) {
      std::array<double, 3> xp = phi, xm = phi, fp{}, fm{};
      xp[c] += kStepH;
      xm[c] -= kStepH;
      if (!feval(xp, fp) || !feval(xm, fm)) return false;
      for (int r = 0; r < 3; ++r) jac[r][c] = (fp[r] - fm[r]) / (2.0 * kStepH);
    }
    // Solve jac * dx = f by Gaussian elimination with partial pivoting.
    double aug[3][4];
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) aug[r][c] = jac[r][c];
      aug[r][3] = f[r];
    }
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      for (int r = col + 1; r < 3; ++r) {
        if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
      }
      if (std::abs(aug[piv][col]) < 1e-14) return false;
      if (piv != col) {
        for (int c = 0; c < 4; ++c) std::swap(aug[piv][c], aug[col][c]);
      }
      for (int r = 0; r < 3; ++r) {
        if (r == col) continue;
        const double m = aug[r][col] / aug[col][col];
        for (int c = col; c < 4; ++c) aug[r][c] -= m * aug[col][c];
      }
    }
    std::array<double, 3> dx = {aug[0][3] / aug[0][0], aug[1][3] / aug[1][1],
                                aug[2][3] / aug[2][2]};

    // Damped update: halve the step until the residual decreases.
    double scale = 1.0;
    bool moved = false;
    for (int h = 0; h < kMaxHalve; ++h, scale *= 0.5) {
      std::array<double, 3> xn = {phi[0] - scale * dx[0], phi[1] - scale * dx[1],
                                  phi[2] - scale * dx[2]};
      std::array<double, 3> ftrial{};
      if (!feval(xn, ftrial)) continue;
      const double fnt =
          std::max({std::abs(ftrial[0]), std::abs(ftrial[1]), std::abs(ftrial[2])});
      if (fnt < fn) {
        phi = xn;
        f = ftrial;
        fn = fnt;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  if (fn > kFTol) return false;

  // Extract the off-diagonal generator from the converged log.
  CMat3 d = CMat3::zero();
  d(0, 0) = std::polar(1.0, phi[0]);
  d(1, 1) = std::polar(1.0, phi[1]);
  d(2, 2) = std::polar(1.0, phi[2]);
  CMat3 g;
  try {
    g = logm_unitary(d * u, branch);
  } catch (const std::exception&) {
    return false;
  }
  DodParams p;
  p.phi = phi;
  p.m01 = g(0, 1);
  p.m02 = g(0, 2);
  p.m12 = g(1, 2);
  p = canonicalize(p);
  const double res = frobenius_distance(compose_dod(p), u);
  if (!(res <= tol)) return false;
  out.params = p;
  out.residual = res;
  return true;
}

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  n = std::min(n, 16);
  if (const char* env = std::getenv("SU3_FORGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env) n = static_cast<int>(std::clamp<long>(v, 1, 256));
  }
  return n;
}

}  // namespace

CMat3 diag_generator(const std::array<double, 3>& phi) {
  CMat3 g = CMat3::zero();
  g(0, 0) = phi[0];
  g(1, 1) = phi[1];
  g(2, 2) = phi[2];
  return g;
}

CMat3 offdiag_generator(const Cx& m01, const Cx& m02, const Cx& m12) {
  CMat3 g = CMat3::zero();
  g(0, 1) = m01;
  g(1, 0) = std::conj(m01);
  g(0, 2) = m02;
  g(2, 0) = std::conj(m02);
  g(1, 2) = m12;
  g(2, 1) = std::conj(m12);
  return g;
}

CMat3 compose_dod(const DodParams& p) {
  return expm_hermitian_generator(diag_generator(p.phi)) *
         expm_hermitian_generator(offdiag_generator(p.m01, p.m02, p.m12));
}

DodParams canonicalize(const DodParams& p) {
  DodParams q = p;
  for (int i = 0; i < 3; ++i) q.phi[i] = wrap_02pi(q.phi[i]);
  return q;
}

double canonical_distance(const DodParams& a, const DodParams& b) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i) d += std::abs(wrap_pm(a.phi[i] - b.phi[i]));
  d += std::abs(a.m01 - b.m01);
  d += std::abs(a.m02 - b.m02);
  d += std::abs(a.m12 - b.m12);
  return d;
}

std::array<double, 3> phase_residual(const std::array<double, 3>& phi,
                                     const CMat3& u, const BranchVector& branch) {
  CMat3 d = CMat3::zero();
  d(0, 0) = std::polar(1.0, phi[0]);
  d(1, 1) = std::polar(1.0, phi[1]);
  d(2, 2) = std::polar(1.0, phi[2]);
  const CMat3 g = logm_unitary(d * u, branch);
  return {-g(0, 0).real(), -g(1, 1).real(), -g(2, 2).real()};
}

double phase_sum_check(const DodParams& p, const CMat3& u) {
  const double s = p.phi[0] + p.phi[1] + p.phi[2];
  return wrap_pm(s + std::arg(det(u)));
}

SolutionSet solve_dod(const CMat3& u, const SolveConfig& cfg) {
  if (!is_unitary(u, 1e-10)) throw NotUnitary("solve_dod: target is not unitary");
  if (cfg.starts < 2) throw std::invalid_argument("solve_dod: starts must be >= 2");
  if (cfg.branch_range < 0) {
    throw std::invalid_argument("solve_dod: branch_range must be >= 0");
  }
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("solve_dod: tol must be positive");
  if (!(cfg.dedup_tol > 0.0)) {
    throw std::invalid_argument("solve_dod: dedup_tol must be positive");
  }

  // Branch vectors with a bounded total winding: the trace constraint on the
  // log keeps |sum(k)| <= 1 for any reachable root.
  std::vector<BranchVector> branches;
  const int r = cfg.branch_range;
  for (int k0 = -r; k0 <= r; ++k0) {
    for (int k1 = -r; k1 <= r; ++k1) {
      for (int k2 = -r; k2 <= r; ++k2) {
        if (std::abs(k0 + k1 + k2) <= 1) branches.push_back({k0, k1, k2});
      }
    }
  }

  // Midpoint grid over the phase cube, flattened into a task list.
  const int n = cfg.starts;
  struct Task {
    BranchVector branch;
    std::array<double, 3> phi0;
  };
  std::vector<Task> tasks;
  tasks.reserve(branches.size() * static_cast<std::size_t>(n) * n * n);
  for (const auto& b : branches) {
    for (int a0 = 0; a0 < n; ++a0) {
      for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
          tasks.push_back({b,
                           {(a0 + 0.5) * kTwoPi / n, (a1 + 0.5) * kTwoPi / n,
                            (a2 + 0.5) * kTwoPi / n}});
        }
      }
    }
  }

  const int nthreads = std::min<int>(worker_count(), static_cast<int>(tasks.size()));
  std::vector<std::vector<RootCandidate>> found(std::max(nthreads, 1));
  std::atomic<std::size_t> next{0};
  auto run = [&](int wid) {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      RootCandidate cand;
      if (newton_run(u, tasks[i].branch, tasks[i].phi0, cfg.tol, cand)) {
        found[wid].push_back(cand);
      }
    }
  };
  if (nthreads <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int w = 0; w < nthreads; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }

  std::vector<RootCandidate> all;
  for (auto& v : found) all.insert(all.end(), v.begin(), v.end());
  if (all.empty()) {
    throw NoSolutionFound("solve_dod: no start converged within tolerance");
  }

  std::sort(all.begin(), all.end(), [](const RootCandidate& a, const RootCandidate& b) {
    return canonical_less(a.params, b.params);
  });

  SolutionSet out;
  out.target = u;
  for (const auto& cand : all) {
    bool dup = false;
    for (const auto& kept : out.solutions) {
      if (canonical_distance(cand.params, kept) < cfg.dedup_tol) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      out.solutions.push_back(cand.params);
      out.residuals.push_back(cand.residual);
    }
  }
  return out;
}

}  // namespace su3forge
