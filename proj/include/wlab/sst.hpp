#pragma once

#include <vector>

#include "wlab/dmfit.hpp"
#include "wlab/types.hpp"
#include "wlab/util.hpp"

namespace wlab {

/// d^2 Hermitian operators, orthonormal under the trace inner product.
struct OperatorBasis {
  Eigen::Index d;
  std::vector<ComplexMatrix> ops;
};

/// Generalized Gell-Mann matrices plus the scaled identity, normalized so
/// Tr(U_j U_k) = delta_jk.
OperatorBasis su_basis(Eigen::Index d);

/// Simulated expectation value: rotate rho to the operator eigenbasis,
/// sample its diagonal with finite repetitions, recombine with eigenvalues.
double measure_expectation(const DensityMatrix& rho, const ComplexMatrix& op,
                           int repetitions, Rng& rng);

struct SstResult {
  ComplexMatrix raw;        // sum_j <U_j> U_j before projection
  DensityMatrix projected;
};

SstResult sst_reconstruct(const DensityMatrix& rho, const OperatorBasis& basis,
                          int repetitions, Rng& rng);

struct ComparePoint {
  std::string method;  // "WT" or "SST"
  double n;            // repetition-normalized pulse count
  double mean_df;
  double std_df;
};

struct CompareConfig {
  Eigen::Index d = 6;                  // fit / basis subspace
  int wt_repetitions = 900;            // fixed R for the WT branch
  std::vector<int> wt_pulses = {36, 72, 150, 300, 600, 1200};
  std::vector<int> sst_repetitions = {100, 200, 400, 800, 1600, 3000};
  int ensemble = 50;                   // M outcomes per point
  double radius = 2.0;
};

struct CompareResult {
  std::vector<ComparePoint> points;
  double wt_slope = 0.0;
  double sst_slope = 0.0;
  /// Horizontal offset between the fitted log-log lines at dF = 0.02:
  /// N_WT / N_SST, the SST efficiency advantage.
  double efficiency_ratio = 0.0;
};

/// Shot-noise comparison of Wigner tomography vs standard state tomography
/// for a pure state, per-N ensembles of M outcomes.
CompareResult compare_wt_sst(const ComplexVector& state,
                             const CompareConfig& cfg, std::uint64_t seed);

}  // namespace wlab
