#include "qgeo/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "qgeo/eig.hpp"
#include "qgeo/errors.hpp"
#include "qgeo/kernels.hpp"

namespace qgeo {

namespace {

// rows = vectorize(Q_k); linear independence of {Q_k} is a singular-value
// question about this real n x d^2 coordinate matrix
ComplexMatrix coordinate_matrix(const std::vector<Outcome>& outcomes,
                                const HermitianBasis& basis) {
  const std::size_t n = outcomes.size();
  const std::size_t side = basis.size();
  ComplexMatrix rows(n, side);
  for (std::size_t k = 0; k < n; ++k) {
    const auto coords = vectorize(outcomes[k].projector.matrix(), basis);
    for (std::size_t a = 0; a < side; ++a) rows(k, a) = coords[a];
  }
  return rows;
}

ComplexMatrix completeness_defect(const std::vector<Outcome>& outcomes,
                                  std::size_t d) {
  ComplexMatrix acc(d, d);
  for (const auto& [c, q] : outcomes)
    kernels::caxpy(d * d, cplx{c, 0.0}, q.matrix().data(), acc.data());
  acc -= ComplexMatrix::identity(d);
  return acc;
}

ResolutionKind classify(const std::vector<Outcome>& outcomes) {
  for (const auto& [c, q] : outcomes)
    if (std::abs(c - 1.0) > 1e-10) return ResolutionKind::nrri;
  for (std::size_t k = 0; k < outcomes.size(); ++k)
    for (std::size_t r = k + 1; r < outcomes.size(); ++r) {
      const cplx ip = vec_inner(outcomes[k].projector.vector(),
                                outcomes[r].projector.vector());
      if (std::norm(ip) > 1e-10) return ResolutionKind::nrri;
    }
  return ResolutionKind::orri;
}

}  // namespace

const char* kind_name(ResolutionKind k) {
  return k == ResolutionKind::orri ? "ORRI" : "NRRI";
}

std::vector<double> TransferMatrix::apply(const std::vector<double>& coords) const {
  if (coords.size() != side()) fail("shape", "coordinate count != d^2");
  std::vector<double> out(side());
  kernels::rgemv(side(), side(), matrix.data(), coords.data(), out.data());
  return out;
}

RayResolution::RayResolution(std::size_t d, std::vector<Outcome> outs,
                             ResolutionKind kind)
    : dim_(d),
      outcomes_(std::move(outs)),
      kind_(kind),
      cache_(std::make_shared<TransferCache>()) {}

RayResolution RayResolution::from_outcomes(std::vector<Outcome> outcomes) {
  if (outcomes.empty()) fail("shape", "resolution needs at least one outcome");
  const std::size_t d = outcomes.front().projector.dim();
  if (d == 0) fail("shape", "zero-dimensional projector");
  for (const auto& [c, q] : outcomes) {
    if (q.dim() != d) fail("shape", "mixed projector dimensions");
    if (!(c > 0.0)) fail("bad-weight", "weights must be positive");
  }

  const HermitianBasis basis = HermitianBasis::standard(d);
  if (outcomes.size() > basis.size())
    fail("dependent", "more outcomes than the operator-space dimension");
  const SvdResult s = svd(coordinate_matrix(outcomes, basis));
  if (s.singular_values.back() <= 1e-10)
    fail("dependent", "projectors are linearly dependent");

  if (hs_norm(completeness_defect(outcomes, d)) > 1e-9)
    fail("incomplete", "sum c_k Q_k != I");

  const ResolutionKind kind = classify(outcomes);
  return RayResolution(d, std::move(outcomes), kind);
}

const Outcome& RayResolution::outcome(std::size_t k) const {
  if (k >= outcomes_.size()) fail("index", "outcome index out of range");
  return outcomes_[k];
}

const TransferMatrix& RayResolution::transfer() const {
  std::call_once(cache_->once, [this] {
    const std::size_t side = dim_ * dim_;
    TransferMatrix t{dim_, HermitianBasis::standard(dim_),
                     std::vector<double>(side * side, 0.0)};
    for (const auto& [c, q] : outcomes_) {
      const auto v = vectorize(q.matrix(), t.basis);
      for (std::size_t a = 0; a < side; ++a)
        kernels::raxpy(side, c * v[a], v.data(), t.matrix.data() + a * side);
    }
    cache_->value = std::make_unique<TransferMatrix>(std::move(t));
  });
  return *cache_->value;
}

RayResolution orri_from_vectors(const std::vector<CVector>& vectors) {
  if (vectors.empty()) fail("wrong-count", "no vectors given");
  const std::size_t d = vectors.front().size();
  if (vectors.size() != d)
    fail("wrong-count", "an ORRI needs exactly d vectors");
  for (const auto& v : vectors)
    if (v.size() != d) fail("shape", "mixed vector dimensions");
  for (std::size_t i = 0; i < d; ++i) {
    if (std::abs(vec_norm(vectors[i]) - 1.0) > 1e-10)
      fail("not-orthonormal", "vector is not normalized");
    for (std::size_t j = i + 1; j < d; ++j)
      if (std::abs(vec_inner(vectors[i], vectors[j])) > 1e-10)
        fail("not-orthonormal", "vectors are not pairwise orthogonal");
  }
  std::vector<Outcome> outs;
  outs.reserve(d);
  for (const auto& v : vectors) outs.push_back({1.0, RayProjector(v)});
  return RayResolution::from_outcomes(std::move(outs));
}

RayResolution nrri_new(std::vector<double> weights,
                       std::vector<RayProjector> projectors) {
  if (weights.size() != projectors.size())
    fail("shape", "weight / projector count mismatch");
  std::vector<Outcome> outs;
  outs.reserve(weights.size());
  for (std::size_t k = 0; k < weights.size(); ++k)
    outs.push_back({weights[k], std::move(projectors[k])});
  return RayResolution::from_outcomes(std::move(outs));
}

std::vector<double> probabilities(const RayResolution& m, const DensityMatrix& w) {
  if (w.dim() != m.dim()) fail("shape", "state dimension != resolution dimension");
  std::vector<double> p;
  p.reserve(m.size());
  for (const auto& [c, q] : m.outcomes())
    p.push_back(c * quad_form(w.matrix(), q.vector()));
  return p;
}

DensityMatrix apply_channel(const RayResolution& m, const DensityMatrix& w) {
  const auto p = probabilities(m, w);
  const std::size_t d = m.dim();
  ComplexMatrix acc(d, d);
  for (std::size_t k = 0; k < m.size(); ++k)
    kernels::caxpy(d * d, cplx{p[k], 0.0}, m.projector(k).matrix().data(),
                   acc.data());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const cplx z = 0.5 * (acc(i, j) + std::conj(acc(j, i)));
      acc(i, j) = z;
      acc(j, i) = std::conj(z);
    }
  return DensityMatrix(std::move(acc));
}

std::pair<double, DensityMatrix> selective_outcome(const RayResolution& m,
                                                   const DensityMatrix& w,
                                                   std::size_t k) {
  const auto p = probabilities(m, w);
  if (k >= p.size()) fail("index", "outcome index out of range");
  if (p[k] < 1e-14) fail("zero-probability", "outcome has vanishing probability");
  return {p[k], DensityMatrix(m.projector(k).matrix())};
}

bool is_repeatable(const RayResolution& m, double tol) {
  const TransferMatrix& t = m.transfer();
  const std::size_t side = t.side();
  std::vector<double> square(side * side, 0.0);
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t k = 0; k < side; ++k)
      kernels::raxpy(side, t(i, k), t.matrix.data() + k * side,
                     square.data() + i * side);
  double defect = 0.0;
  for (std::size_t idx = 0; idx < square.size(); ++idx)
    defect = std::max(defect, std::abs(square[idx] - t.matrix[idx]));
  return defect <= tol;
}

const TransferMatrix& transfer_matrix(const RayResolution& m) {
  return m.transfer();
}

ChannelInversion invert_channel(const RayResolution& m, const DensityMatrix& w_am) {
  if (w_am.dim() != m.dim()) fail("shape", "state dimension != resolution dimension");
  const TransferMatrix& t = m.transfer();
  const std::size_t side = t.side();

  ComplexMatrix tc(side, side);
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j) tc(i, j) = t(i, j);
  const SvdResult s = svd(tc);
  const double sigma_max = s.singular_values.front();
  const double sigma_min = s.singular_values.back();
  const double cond =
      sigma_min > 0.0 ? sigma_max / sigma_min : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e12))
    fail("not-informationally-complete",
         "transfer matrix is singular; channel cannot be inverted");

  const auto b = vectorize(w_am.matrix(), t.basis);
  // x = V diag(1/sigma) U^dagger b
  CVector ub(side, 0.0);
  for (std::size_t k = 0; k < side; ++k) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < side; ++i) acc += std::conj(s.u(i, k)) * b[i];
    ub[k] = acc / s.singular_values[k];
  }
  std::vector<double> x(side, 0.0);
  for (std::size_t i = 0; i < side; ++i) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < side; ++k) acc += s.v(i, k) * ub[k];
    x[i] = acc.real();
  }

  ComplexMatrix preimage = devectorize(x, t.basis);
  const double min_eig = min_eigenvalue(preimage);
  const bool feasible = min_eig >= -1e-9 * static_cast<double>(m.dim());
  return {std::move(preimage), feasible, min_eig, cond};
}

KrausSet::KrausSet(std::vector<ComplexMatrix> ops)
    : dim(0), operators(std::move(ops)) {
  if (operators.empty()) fail("shape", "empty Kraus set");
  dim = operators.front().rows();
  ComplexMatrix acc(dim, dim);
  for (const auto& a : operators) {
    if (!a.is_square() || a.rows() != dim) fail("shape", "mixed Kraus dimensions");
    acc += a.adjoint() * a;
  }
  acc -= ComplexMatrix::identity(dim);
  if (hs_norm(acc) > 1e-9) fail("incomplete", "sum A_k^dagger A_k != I");
}

RayResolution strip_unitaries(const KrausSet& kraus) {
  std::vector<double> weights;
  std::vector<RayProjector> projectors;
  weights.reserve(kraus.operators.size());
  projectors.reserve(kraus.operators.size());
  for (const auto& a : kraus.operators) {
    const SvdResult s = svd(a);
    if (s.singular_values.size() > 1 && s.singular_values[1] > 1e-9)
      fail("not-rank-one", "Kraus operator is not a scaled rank-1 projector");
    const double sigma = s.singular_values.front();
    if (sigma <= 1e-12) fail("not-rank-one", "Kraus operator is zero");
    weights.push_back(sigma * sigma);
    CVector v(kraus.dim);
    for (std::size_t i = 0; i < kraus.dim; ++i) v[i] = s.v(i, 0);
    projectors.emplace_back(std::move(v));
  }
  return nrri_new(std::move(weights), std::move(projectors));
}

KrausSet kraus_from_resolution(const RayResolution& m) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(m.size());
  for (const auto& [c, q] : m.outcomes()) {
    ComplexMatrix a = q.matrix();
    a *= std::sqrt(c);
    ops.push_back(std::move(a));
  }
  return KrausSet(std::move(ops));
}

NaimarkModel naimark_dilate(const RayResolution& m) {
  const std::size_t d = m.dim();
  const std::size_t n = m.size();
  ComplexMatrix v(d * n, d);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(m.weight(k));
    const ComplexMatrix& q = m.projector(k).matrix();
    for (std::size_t srow = 0; srow < d; ++srow)
      for (std::size_t t = 0; t < d; ++t)
        v(srow * n + k, t) = root * q(srow, t);
  }
  std::vector<ComplexMatrix> ancilla;
  ancilla.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMatrix p(n, n);
    p(k, k) = 1.0;
    ancilla.push_back(std::move(p));
  }
  return {d, n, std::move(v), std::move(ancilla)};
}

std::vector<double> naimark_probabilities(const NaimarkModel& model,
                                          const DensityMatrix& w) {
  if (w.dim() != model.system_dim) fail("shape", "state dimension mismatch");
  const std::size_t d = model.system_dim, n = model.ancilla_dim;
  const ComplexMatrix joint = model.isometry * w.matrix() * model.isometry.adjoint();
  std::vector<double> p(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t srow = 0; srow < d; ++srow)
      acc += joint(srow * n + k, srow * n + k).real();
    p[k] = acc;
  }
  return p;
}

DensityMatrix naimark_after_state(const NaimarkModel& model, const DensityMatrix& w,
                                  bool dephase_ancilla) {
  if (w.dim() != model.system_dim) fail("shape", "state dimension mismatch");
  const std::size_t d = model.system_dim, n = model.ancilla_dim;
  const ComplexMatrix joint = model.isometry * w.matrix() * model.isometry.adjoint();
  // for block-diagonal dephasing in the ancilla index the partial trace keeps
  // exactly the a == b blocks, so both reductions read the same entries
  (void)dephase_ancilla;
  ComplexMatrix reduced(d, d);
  for (std::size_t srow = 0; srow < d; ++srow)
    for (std::size_t t = 0; t < d; ++t) {
      cplx acc = 0.0;
      for (std::size_t a = 0; a < n; ++a) acc += joint(srow * n + a, t * n + a);
      reduced(srow, t) = acc;
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const cplx z = 0.5 * (reduced(i, j) + std::conj(reduced(j, i)));
      reduced(i, j) = z;
      reduced(j, i) = std::conj(z);
    }
  return DensityMatrix(std::move(reduced));
}

ComplexMatrix complete_isometry(const ComplexMatrix& isometry) {
  const std::size_t rows = isometry.rows(), cols = isometry.cols();
  if (cols > rows) fail("shape", "isometry must be tall");
  std::vector<CVector> columns;
  columns.reserve(rows);
  for (std::size_t j = 0; j < cols; ++j) {
    CVector c(rows);
    for (std::size_t i = 0; i < rows; ++i) c[i] = isometry(i, j);
    columns.push_back(std::move(c));
  }
  for (std::size_t b = 0; b < rows && columns.size() < rows; ++b) {
    CVector w(rows, 0.0);
    w[b] = 1.0;
    for (const auto& c : columns) {
      const cplx proj = vec_inner(c, w);
      for (std::size_t i = 0; i < rows; ++i) w[i] -= proj * c[i];
    }
    if (vec_norm(w) > 1e-6) {
      w = normalized(std::move(w));
      fix_phase(w);
      columns.push_back(std::move(w));
    }
  }
  if (columns.size() != rows) fail("degenerate", "could not complete isometry");
  ComplexMatrix u(rows, rows);
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t i = 0; i < rows; ++i) u(i, j) = columns[j][i];
  return u;
}

double expectation_value(const ComplexMatrix& a, const DensityMatrix& w) {
  if (!a.is_square() || a.rows() != w.dim())
    fail("shape", "observable dimension != state dimension");
  require_hermitian(a);
  return hs_inner(a, w.matrix());
}

}  // namespace qgeo
