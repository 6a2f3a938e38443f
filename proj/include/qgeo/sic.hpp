#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qgeo/matrix.hpp"
#include "qgeo/resolution.hpp"
#include "qgeo/rng.hpp"
#include "qgeo/states.hpp"

namespace qgeo {

struct Fiducial {
  std::size_t dim;
  CVector vector;           // normalized
  std::string provenance;   // "builtin" | "optimized"
  double residual;          // max overlap deviation from (d delta + 1)/(d+1)
};

struct SicReport {
  std::size_t dim;
  double max_deviation;          // of tr(Q_k Q_r) from (d delta_kr + 1)/(d+1)
  double completeness_residual;  // ||(1/d) sum Q_k - I||_HS
};

// X^p Z^q for p,q in {0..d-1}, row-major in (p,q); X cyclic shift,
// Z = diag(1, w, ..., w^{d-1}) with w = exp(2 pi i / d)
std::vector<ComplexMatrix> wh_displacements(std::size_t d);

RayResolution sic_from_fiducial(const Fiducial& f);
Fiducial builtin_fiducial(std::size_t d);
Fiducial find_fiducial(std::size_t d, std::uint64_t seed, std::size_t restarts = 8,
                       std::size_t max_iters = 2000);
SicReport verify_sic(const RayResolution& m);

// sum over (p,q) != (0,0) of (|<psi|D|psi>|^2 - 1/(d+1))^2
double sic_objective(const CVector& psi, const std::vector<ComplexMatrix>& disp);

DensityMatrix contract_sic(const DensityMatrix& w);
ComplexMatrix stretch_sic(const ComplexMatrix& w);
bool in_v_am_sic(const DensityMatrix& w, double tol = 1e-9);

}  // namespace qgeo
