#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "qgeo/basis.hpp"
#include "qgeo/matrix.hpp"
#include "qgeo/states.hpp"

namespace qgeo {

enum class ResolutionKind { orri, nrri };

const char* kind_name(ResolutionKind k);

struct Outcome {
  double weight;  // c_k
  RayProjector projector;
};

// Real (d^2)x(d^2) representation of the measurement channel in the standard
// Hermitian basis: T * vectorize(W) = vectorize(channel(W)).
struct TransferMatrix {
  std::size_t dim = 0;           // system dimension d
  HermitianBasis basis;          // standard basis of dimension d
  std::vector<double> matrix;    // row-major, side = d^2

  std::size_t side() const { return dim * dim; }
  double operator()(std::size_t i, std::size_t j) const {
    return matrix[i * side() + j];
  }
  std::vector<double> apply(const std::vector<double>& coords) const;
};

// Ray-resolution of the identity: sum_k c_k Q_k = I with rank-1 unit-trace
// projectors Q_k. The kind tag (ORRI vs NRRI) is derived from the data.
class RayResolution {
 public:
  static RayResolution from_outcomes(std::vector<Outcome> outcomes);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return outcomes_.size(); }
  ResolutionKind kind() const { return kind_; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  const Outcome& outcome(std::size_t k) const;
  double weight(std::size_t k) const { return outcome(k).weight; }
  const RayProjector& projector(std::size_t k) const { return outcome(k).projector; }

  // cached after first computation; safe for concurrent readers
  const TransferMatrix& transfer() const;

 private:
  RayResolution(std::size_t d, std::vector<Outcome> outs, ResolutionKind kind);

  struct TransferCache {
    std::once_flag once;
    std::unique_ptr<TransferMatrix> value;
  };

  std::size_t dim_;
  std::vector<Outcome> outcomes_;
  ResolutionKind kind_;
  std::shared_ptr<TransferCache> cache_;
};

struct KrausSet {
  std::size_t dim;
  std::vector<ComplexMatrix> operators;

  explicit KrausSet(std::vector<ComplexMatrix> ops);
};

struct NaimarkModel {
  std::size_t system_dim;
  std::size_t ancilla_dim;           // = outcome count
  ComplexMatrix isometry;            // (d*n) x d, joint index (s,a) -> s*n+a
  std::vector<ComplexMatrix> ancilla_projectors;  // |k><k| on the ancilla
};

struct ChannelInversion {
  ComplexMatrix preimage;   // Hermitian, unit trace; the candidate W_pm
  bool feasible;            // preimage is PSD, i.e. W_am has a state preimage
  double min_eigenvalue;    // of the preimage
  double condition_number;  // of the transfer matrix
};

RayResolution orri_from_vectors(const std::vector<CVector>& vectors);
RayResolution nrri_new(std::vector<double> weights,
                       std::vector<RayProjector> projectors);

std::vector<double> probabilities(const RayResolution& m, const DensityMatrix& w);
DensityMatrix apply_channel(const RayResolution& m, const DensityMatrix& w);
std::pair<double, DensityMatrix> selective_outcome(const RayResolution& m,
                                                   const DensityMatrix& w,
                                                   std::size_t k);
bool is_repeatable(const RayResolution& m, double tol = 1e-9);
const TransferMatrix& transfer_matrix(const RayResolution& m);
ChannelInversion invert_channel(const RayResolution& m, const DensityMatrix& w_am);

RayResolution strip_unitaries(const KrausSet& kraus);
KrausSet kraus_from_resolution(const RayResolution& m);

NaimarkModel naimark_dilate(const RayResolution& m);
std::vector<double> naimark_probabilities(const NaimarkModel& model,
                                          const DensityMatrix& w);
DensityMatrix naimark_after_state(const NaimarkModel& model, const DensityMatrix& w,
                                  bool dephase_ancilla = true);
// first d columns equal the isometry; remaining columns complete it unitarily
ComplexMatrix complete_isometry(const ComplexMatrix& isometry);

double expectation_value(const ComplexMatrix& a, const DensityMatrix& w);

}  // namespace qgeo
