#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "qgeo/resolution.hpp"
#include "qgeo/rng.hpp"
#include "qgeo/states.hpp"

namespace qgeo {

// Exact Hilbert-Schmidt volumes in the tr = 1 hyperplane, with log-space
// companions so sweeps stay finite where the raw values underflow.
struct VolumeReport {
  std::size_t dim;
  double simplex_volume;   // V(conv{Q_k}) for a SIC
  double state_volume;     // V(V_W)
  double v_am_volume;      // V(V_am) = V_W / (d+1)^(d^2-1)
  double log_simplex_volume;
  double log_state_volume;
  double log_v_am_volume;
  double conv_over_states;
  double vam_over_conv;
  double vam_over_states;
};

double simplex_volume(std::size_t d);
double state_space_volume(std::size_t d);
double v_am_volume(std::size_t d);
VolumeReport volume_report(std::size_t d);

struct MembershipVerdict {
  bool in_linear_span;
  bool in_conv;
  bool in_v_am;       // false whenever undecided
  bool v_am_decided;
  std::string v_am_reason;  // empty when decided
  std::vector<double> coefficients;
  double residual;           // least-squares residual of W = sum a_k Q_k
  double coefficient_sum;
  double min_coefficient;
  double min_preimage_eigenvalue;  // NaN when undecided
  std::size_t span_dimension;
};

MembershipVerdict membership(const RayResolution& m, const DensityMatrix& w,
                             double tol = 1e-9);

struct McEstimate {
  double estimate;
  double standard_error;  // binomial, sqrt(p(1-p)/n)
  std::size_t hits;
  std::size_t n;
  std::string measure;  // sampling measure label, always "hilbert-schmidt"
};

// Fraction of HS-random states satisfying the predicate. Samples are drawn
// in fixed-size blocks from split streams of `rng`, so the estimate depends
// only on the rng's seed, not on worker count or prior consumption.
McEstimate mc_fraction(const std::function<bool(const DensityMatrix&)>& predicate,
                       std::size_t d, std::size_t n, const Rng& rng);

DensityMatrix project_to_orri_simplex(const RayResolution& orri,
                                      const DensityMatrix& w);

}  // namespace qgeo
