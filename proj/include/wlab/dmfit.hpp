#pragma once

#include <vector>

#include "wlab/types.hpp"
#include "wlab/util.hpp"

namespace wlab {

/// One tomography record: the displacement applied and the measured level
/// populations of the displaced state.
struct DisplacementSample {
  Complex alpha;
  RealVector populations;
};

struct FitConfig {
  Eigen::Index d = 6;      // fit subspace dimension
  int n_samples = 200;     // displacements per fit
  double radius = 2.0;     // |alpha| disk radius
  double ridge = 0.0;      // optional Tikhonov term
};

/// Both sides of the reconstruction: the raw least-squares solution (always
/// Hermitian, possibly unphysical) and its projection to the physical set.
struct FitResult {
  ComplexMatrix raw;
  DensityMatrix projected;
};

/// Area-uniform random displacements inside the |alpha| < radius disk.
std::vector<Complex> sample_displacements(const FitConfig& cfg, Rng& rng);

/// Forward model: embed the d x d state into `dim` levels, apply the ideal
/// displacement D(-alpha), read the lowest-d diagonal. Linear in rho.
RealVector predict_populations(const ComplexMatrix& rho_d, Complex alpha,
                               Eigen::Index dim);

/// Spectral projection to the physical set: Hermitize, clip eigenvalues at
/// zero, renormalize the trace to one.
DensityMatrix project_physical(const ComplexMatrix& m);

/// Linear least squares over a Hermitian parametrization against the ideal
/// displacement forward model, then physical projection.
FitResult fit_density_matrix(const std::vector<DisplacementSample>& samples,
                             const FitConfig& cfg);

/// Precomputed design factorization for a fixed displacement set; lets
/// shot-noise ensembles reuse one decomposition across many outcome draws.
class DisplacementFitter {
 public:
  DisplacementFitter(const std::vector<Complex>& displacements,
                     const FitConfig& cfg);

  /// populations[s] holds the measured lowest-d populations for
  /// displacements[s].
  FitResult fit(const std::vector<RealVector>& populations) const;

  Eigen::Index model_dim() const { return dim_; }

 private:
  FitConfig cfg_;
  Eigen::Index dim_;
  Eigen::MatrixXd design_;
  Eigen::BDCSVD<Eigen::MatrixXd> svd_;
  Eigen::LDLT<Eigen::MatrixXd> ridge_solver_;
};

/// Undo the rotating-frame phase accumulated during the tomography pulse:
/// U rho U^dag with U = free_propagator(beta, delta_t, dim).
DensityMatrix phase_correct(const DensityMatrix& rho, double beta,
                            double delta_t);

}  // namespace wlab
