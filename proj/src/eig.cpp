#include "qgeo/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qgeo/errors.hpp"

namespace qgeo {

namespace {

// Jacobi rotation parameters (c, s, u) diagonalizing the Hermitian block
// [[app, apq], [conj(apq), aqq]]: with u = apq/|apq| the unitary
// J = [[c, s], [-s*conj(u), c*conj(u)]] satisfies J^dagger B J diagonal.
struct Rotation {
  double c;
  double s;
  cplx u;
};

Rotation solve_rotation(double app, double aqq, cplx apq) {
  const double mag = std::abs(apq);
  const cplx u = apq / mag;
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c, u};
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double acc = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) acc += std::norm(a(p, q));
  return std::sqrt(2.0 * acc);
}

std::vector<std::size_t> descending_order(const std::vector<double>& vals) {
  std::vector<std::size_t> idx(vals.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
  return idx;
}

}  // namespace

cplx fix_phase(CVector& v, double threshold) {
  std::size_t pivot = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > threshold) {
      pivot = i;
      break;
    }
  }
  if (pivot == v.size()) {
    // fall back to the largest component
    double best = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (std::abs(v[i]) > best) {
        best = std::abs(v[i]);
        pivot = i;
      }
    }
    if (pivot == v.size() || best == 0.0) return 1.0;
  }
  const cplx phase = std::conj(v[pivot]) / std::abs(v[pivot]);
  for (auto& z : v) z *= phase;
  v[pivot] = std::abs(v[pivot]);  // kill rounding in the pivot's imag part
  return phase;
}

CVector EighResult::eigenvector(std::size_t k) const {
  CVector v(eigenvectors.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors(i, k);
  return v;
}

EighResult eigh(const ComplexMatrix& input, double herm_tol) {
  require_hermitian(input, herm_tol);
  const std::size_t n = input.rows();

  // work on the exactly-Hermitian average (a + a^dagger)/2
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = 0.5 * (input(i, i) + std::conj(input(i, i)));
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx z = 0.5 * (input(i, j) + std::conj(input(j, i)));
      a(i, j) = z;
      a(j, i) = std::conj(z);
    }
  }

  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(hs_norm(a), 1e-300);
  constexpr int kMaxSweeps = 60;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-15 * scale) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        if (std::abs(apq) <= 1e-18 * scale) continue;
        const auto [c, s, u] = solve_rotation(a(p, p).real(), a(q, q).real(), apq);
        const cplx su = s * u;
        const cplx cu_conj = c * std::conj(u);
        const cplx su_conj = s * std::conj(u);
        // column update: [col_p, col_q] <- [col_p, col_q] J
        for (std::size_t r = 0; r < n; ++r) {
          const cplx arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - su_conj * arq;
          a(r, q) = s * arp + cu_conj * arq;
          const cplx vrp = v(r, p), vrq = v(r, q);
          v(r, p) = c * vrp - su_conj * vrq;
          v(r, q) = s * vrp + cu_conj * vrq;
        }
        // row update with J^dagger
        for (std::size_t r = 0; r < n; ++r) {
          const cplx apr = a(p, r), aqr = a(q, r);
          a(p, r) = c * apr - su * aqr;
          a(q, r) = s * apr + c * u * aqr;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eigenvalues(n);
  for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a(i, i).real();

  const auto order = descending_order(eigenvalues);
  EighResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    result.eigenvalues[k] = eigenvalues[order[k]];
    CVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v(i, order[k]);
    fix_phase(col);
    for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, k) = col[i];
  }
  return result;
}

double min_eigenvalue(const ComplexMatrix& a, double herm_tol) {
  const auto e = eigh(a, herm_tol);
  return e.eigenvalues.back();
}

bool is_psd(const ComplexMatrix& a, double tol) {
  return min_eigenvalue(a) >= -tol * static_cast<double>(a.rows());
}

namespace {

// One-sided Jacobi on the columns of a tall matrix (rows >= cols).
SvdResult svd_tall(const ComplexMatrix& input) {
  const std::size_t m = input.rows(), n = input.cols();
  ComplexMatrix a = input;
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto col_dot = [&](const ComplexMatrix& mat, std::size_t i, std::size_t j) {
    cplx acc = 0.0;
    for (std::size_t r = 0; r < mat.rows(); ++r)
      acc += std::conj(mat(r, i)) * mat(r, j);
    return acc;
  };

  const double scale = std::max(hs_norm(a), 1e-300);
  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = col_dot(a, p, p).real();
        const double beta = col_dot(a, q, q).real();
        const cplx gamma = col_dot(a, p, q);
        const double g = std::abs(gamma);
        if (g <= 1e-16 * std::sqrt(std::max(alpha * beta, 0.0)) ||
            g <= 1e-30 * scale * scale)
          continue;
        rotated = true;
        const auto [c, s, u] = solve_rotation(alpha, beta, gamma);
        const cplx su = s * u;
        const cplx cu_conj = c * std::conj(u);
        const cplx su_conj = s * std::conj(u);
        for (std::size_t r = 0; r < m; ++r) {
          const cplx arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - su_conj * arq;
          a(r, q) = s * arp + cu_conj * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const cplx vrp = v(r, p), vrq = v(r, q);
          v(r, p) = c * vrp - su_conj * vrq;
          v(r, q) = s * vrp + cu_conj * vrq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t r = 0; r < m; ++r) acc += std::norm(a(r, j));
    sigma[j] = std::sqrt(acc);
  }

  const auto order = descending_order(sigma);
  SvdResult out;
  out.u = ComplexMatrix(m, n);
  out.v = ComplexMatrix(n, n);
  out.singular_values.resize(n);

  const double sigma_max = sigma.empty() ? 0.0 : sigma[order[0]];
  const double rank_tol = sigma_max * 1e-13 * static_cast<double>(std::max(m, n));

  std::vector<CVector> u_cols;
  std::vector<std::size_t> deficient;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.singular_values[k] = sigma[j];
    CVector vcol(n);
    for (std::size_t r = 0; r < n; ++r) vcol[r] = v(r, j);
    if (sigma[j] > rank_tol && sigma[j] > 0.0) {
      CVector ucol(m);
      for (std::size_t r = 0; r < m; ++r) ucol[r] = a(r, j) / sigma[j];
      const cplx phase = fix_phase(ucol);
      for (auto& z : vcol) z *= phase;  // keep u sigma v^dagger invariant
      u_cols.push_back(std::move(ucol));
    } else {
      fix_phase(vcol);
      deficient.push_back(k);
      u_cols.emplace_back();  // placeholder, completed below
    }
    for (std::size_t r = 0; r < n; ++r) out.v(r, k) = vcol[r];
  }

  // complete u columns for (near-)zero singular values: Gram-Schmidt of
  // standard basis vectors against the columns already fixed, in index order
  for (const std::size_t k : deficient) {
    CVector candidate;
    for (std::size_t b = 0; b < m; ++b) {
      CVector w(m, 0.0);
      w[b] = 1.0;
      for (const auto& ucol : u_cols) {
        if (ucol.empty()) continue;
        const cplx proj = vec_inner(ucol, w);
        for (std::size_t r = 0; r < m; ++r) w[r] -= proj * ucol[r];
      }
      if (vec_norm(w) > 0.5) {  // comfortably independent
        candidate = normalized(std::move(w));
        break;
      }
    }
    if (candidate.empty()) fail("degenerate", "svd column completion failed");
    fix_phase(candidate);
    u_cols[k] = std::move(candidate);
  }

  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = 0; r < m; ++r) out.u(r, k) = u_cols[k][r];
  return out;
}

}  // namespace

SvdResult svd(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) fail("shape", "svd of empty matrix");
  if (a.rows() >= a.cols()) return svd_tall(a);
  SvdResult t = svd_tall(a.adjoint());
  return {std::move(t.v), std::move(t.singular_values), std::move(t.u)};
}

PolarResult polar_decompose(const ComplexMatrix& a) {
  if (!a.is_square()) fail("shape", "polar decomposition needs a square matrix");
  const SvdResult s = svd(a);
  const std::size_t d = a.rows();
  ComplexMatrix unitary = s.u * s.v.adjoint();
  ComplexMatrix positive(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < d; ++k)
        acc += s.v(i, k) * s.singular_values[k] * std::conj(s.v(j, k));
      positive(i, j) = acc;
    }
  return {std::move(unitary), std::move(positive)};
}

}  // namespace qgeo
