#include "qgeo/sic.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "qgeo/eig.hpp"
#include "qgeo/errors.hpp"

namespace qgeo {

std::vector<ComplexMatrix> wh_displacements(std::size_t d) {
  if (d < 2) fail("dimension", "need dimension >= 2");
  std::vector<ComplexMatrix> disp;
  disp.reserve(d * d);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      ComplexMatrix m(d, d);
      for (std::size_t j = 0; j < d; ++j)
        m((j + p) % d, j) = std::polar(1.0, step * static_cast<double>(q * j));
      disp.push_back(std::move(m));
    }
  return disp;
}

double sic_objective(const CVector& psi, const std::vector<ComplexMatrix>& disp) {
  const double target = 1.0 / (static_cast<double>(psi.size()) + 1.0);
  double acc = 0.0;
  for (std::size_t k = 1; k < disp.size(); ++k) {
    const cplx m = vec_inner(psi, matvec(disp[k], psi));
    const double dev = std::norm(m) - target;
    acc += dev * dev;
  }
  return acc;
}

RayResolution sic_from_fiducial(const Fiducial& f) {
  const auto disp = wh_displacements(f.dim);
  const double c = 1.0 / static_cast<double>(f.dim);
  std::vector<double> weights(disp.size(), c);
  std::vector<RayProjector> projectors;
  projectors.reserve(disp.size());
  for (const auto& d : disp) projectors.emplace_back(matvec(d, f.vector));
  return nrri_new(std::move(weights), std::move(projectors));
}

Fiducial builtin_fiducial(std::size_t d) {
  CVector v;
  if (d == 2) {
    const double theta = std::acos(1.0 / std::sqrt(3.0));
    v = {std::cos(theta / 2.0),
         std::polar(std::sin(theta / 2.0), std::numbers::pi / 4.0)};
  } else if (d == 3) {
    const double r = std::sqrt(0.5);
    v = {0.0, r, -r};
  } else {
    fail("no-builtin", "builtin fiducials exist for d = 2, 3 only");
  }
  Fiducial f{d, normalized(std::move(v)), "builtin", 0.0};
  const SicReport report = verify_sic(sic_from_fiducial(f));
  if (report.max_deviation >= 1e-10)
    fail("incomplete", "builtin fiducial failed symmetry validation");
  f.residual = report.max_deviation;
  return f;
}

SicReport verify_sic(const RayResolution& m) {
  const std::size_t d = m.dim();
  const std::size_t n = m.size();
  if (n != d * d) fail("wrong-count", "a SIC candidate needs d^2 outcomes");

  const double target = 1.0 / (static_cast<double>(d) + 1.0);
  double max_dev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double self = std::norm(vec_inner(m.projector(k).vector(),
                                            m.projector(k).vector())) -
                        1.0;
    max_dev = std::max(max_dev, std::abs(self));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double overlap = std::norm(
          vec_inner(m.projector(k).vector(), m.projector(r).vector()));
      max_dev = std::max(max_dev, std::abs(overlap - target));
    }
  }

  ComplexMatrix acc(d, d);
  for (std::size_t k = 0; k < n; ++k) acc += m.projector(k).matrix();
  acc *= 1.0 / static_cast<double>(d);
  acc -= ComplexMatrix::identity(d);
  return {d, max_dev, hs_norm(acc)};
}

namespace {

// Wirtinger gradient of the overlap objective (up to a positive constant):
// sum_k 2 (|m_k|^2 - t) (conj(m_k) D_k psi + m_k D_k^dagger psi)
CVector objective_gradient(const CVector& psi,
                           const std::vector<ComplexMatrix>& disp) {
  const double target = 1.0 / (static_cast<double>(psi.size()) + 1.0);
  CVector g(psi.size(), 0.0);
  for (std::size_t k = 1; k < disp.size(); ++k) {
    const CVector dpsi = matvec(disp[k], psi);
    const cplx m = vec_inner(psi, dpsi);
    const double dev = std::norm(m) - target;
    const CVector dadj_psi = matvec(disp[k].adjoint(), psi);
    for (std::size_t i = 0; i < psi.size(); ++i)
      g[i] += 2.0 * dev * (std::conj(m) * dpsi[i] + m * dadj_psi[i]);
  }
  return g;
}

double residual_from_vector(const CVector& psi,
                            const std::vector<ComplexMatrix>& disp) {
  const double target = 1.0 / (static_cast<double>(psi.size()) + 1.0);
  double max_dev = 0.0;
  for (std::size_t k = 1; k < disp.size(); ++k) {
    const cplx m = vec_inner(psi, matvec(disp[k], psi));
    max_dev = std::max(max_dev, std::abs(std::norm(m) - target));
  }
  return max_dev;
}

// Levenberg-Marquardt on the overlap residuals r_k = |m_k|^2 - t over the
// real and imaginary parts of psi. Gradient descent only reaches the basin;
// this stage drives the residual to machine precision.
void polish_fiducial(CVector& psi, const std::vector<ComplexMatrix>& disp,
                     std::size_t max_steps) {
  const std::size_t d = psi.size();
  const std::size_t m = disp.size() - 1;
  const std::size_t n = 2 * d;
  const double target = 1.0 / (static_cast<double>(d) + 1.0);

  auto residuals = [&](const CVector& v, std::vector<double>& r) {
    for (std::size_t k = 1; k < disp.size(); ++k)
      r[k - 1] = std::norm(vec_inner(v, matvec(disp[k], v))) - target;
  };
  auto sumsq = [](const std::vector<double>& r) {
    double s = 0.0;
    for (double x : r) s += x * x;
    return s;
  };

  std::vector<double> r(m), rt(m), jac(m * n);
  residuals(psi, r);
  double f = sumsq(r);
  double lambda = 1e-3;

  for (std::size_t step = 0; step < max_steps && f > 1e-28; ++step) {
    // d m_k / d x_a = u_a + conj(w_a), d m_k / d y_a = i (conj(w_a) - u_a)
    // with u = D_k psi, w = D_k^dagger psi; r_k = |m_k|^2 - t
    for (std::size_t k = 1; k < disp.size(); ++k) {
      const CVector u = matvec(disp[k], psi);
      const CVector w = matvec(disp[k].adjoint(), psi);
      const cplx mk = vec_inner(psi, u);
      for (std::size_t a = 0; a < d; ++a) {
        const cplx dx = u[a] + std::conj(w[a]);
        const cplx dy = cplx(0.0, 1.0) * (std::conj(w[a]) - u[a]);
        jac[(k - 1) * n + a] = 2.0 * std::real(std::conj(mk) * dx);
        jac[(k - 1) * n + d + a] = 2.0 * std::real(std::conj(mk) * dy);
      }
    }

    // solve (J^T J + lambda I) delta = -J^T r in the eigenbasis of J^T J so
    // retries with stiffer damping reuse the factorization; the global-phase
    // gauge direction sits in the null space and is tamed by the damping
    ComplexMatrix jtj(n, n);
    std::vector<double> jtr(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k)
          s += jac[k * n + i] * jac[k * n + j];
        jtj(i, j) = s;
        jtj(j, i) = s;
      }
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) s += jac[k * n + i] * r[k];
      jtr[i] = s;
    }
    const EighResult eig = eigh(jtj);
    std::vector<double> proj(n, 0.0);
    for (std::size_t e = 0; e < n; ++e)
      for (std::size_t j = 0; j < n; ++j)
        proj[e] += std::real(eig.eigenvectors(j, e)) * jtr[j];

    bool accepted = false;
    for (int tries = 0; tries < 40 && !accepted; ++tries) {
      CVector trial = psi;
      for (std::size_t a = 0; a < d; ++a) {
        double dx = 0.0, dy = 0.0;
        for (std::size_t e = 0; e < n; ++e) {
          const double gain = proj[e] / (std::max(eig.eigenvalues[e], 0.0) + lambda);
          dx -= std::real(eig.eigenvectors(a, e)) * gain;
          dy -= std::real(eig.eigenvectors(d + a, e)) * gain;
        }
        trial[a] += cplx(dx, dy);
      }
      trial = normalized(std::move(trial));
      residuals(trial, rt);
      const double ft = sumsq(rt);
      if (ft < f) {
        psi = std::move(trial);
        r.swap(rt);
        f = ft;
        lambda = std::max(lambda * 0.3, 1e-14);
        accepted = true;
      } else {
        lambda *= 10.0;
        if (lambda > 1e10) return;
      }
    }
    if (!accepted) return;
  }
}

}  // namespace

Fiducial find_fiducial(std::size_t d, std::uint64_t seed, std::size_t restarts,
                       std::size_t max_iters) {
  if (d < 2 || d > 6) fail("dimension", "fiducial search supports 2 <= d <= 6");
  if (restarts == 0) restarts = 1;
  const auto disp = wh_displacements(d);

  CVector best;
  double best_residual = 0.0;
  Rng root(seed);

  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng = root.split(r);
    CVector psi(d);
    for (auto& z : psi) z = rng.complex_gaussian();
    psi = normalized(std::move(psi));

    double f = sic_objective(psi, disp);
    double eta = 0.1;
    for (std::size_t iter = 0; iter < max_iters && f > 1e-26; ++iter) {
      CVector g = objective_gradient(psi, disp);
      const cplx radial = vec_inner(psi, g);
      for (std::size_t i = 0; i < d; ++i) g[i] -= radial * psi[i];
      double gnorm2 = 0.0;
      for (const auto& z : g) gnorm2 += std::norm(z);
      if (gnorm2 == 0.0) break;

      bool accepted = false;
      while (eta > 1e-18) {
        CVector trial(d);
        for (std::size_t i = 0; i < d; ++i) trial[i] = psi[i] - eta * g[i];
        trial = normalized(std::move(trial));
        const double ft = sic_objective(trial, disp);
        if (ft < f - 1e-4 * eta * gnorm2) {
          psi = std::move(trial);
          f = ft;
          eta *= 1.25;
          accepted = true;
          break;
        }
        eta *= 0.5;
      }
      if (!accepted) break;
    }

    polish_fiducial(psi, disp, 200);
    const double residual = residual_from_vector(psi, disp);
    if (best.empty() || residual < best_residual) {
      best = std::move(psi);
      best_residual = residual;
    }
  }

  fix_phase(best);
  return {d, std::move(best), "optimized", best_residual};
}

DensityMatrix contract_sic(const DensityMatrix& w) {
  const std::size_t d = w.dim();
  ComplexMatrix m = w.matrix() + ComplexMatrix::identity(d);
  m *= 1.0 / (static_cast<double>(d) + 1.0);
  return DensityMatrix(std::move(m));
}

ComplexMatrix stretch_sic(const ComplexMatrix& w) {
  if (!w.is_square() || w.rows() == 0) fail("shape", "stretch needs a square matrix");
  require_hermitian(w);
  if (std::abs(w.trace() - 1.0) > 1e-10) fail("trace", "stretch needs unit trace");
  const std::size_t d = w.rows();
  ComplexMatrix out = w;
  out *= static_cast<double>(d) + 1.0;
  out -= ComplexMatrix::identity(d);
  return out;
}

bool in_v_am_sic(const DensityMatrix& w, double tol) {
  return is_psd(stretch_sic(w.matrix()), tol);
}

}  // namespace qgeo
