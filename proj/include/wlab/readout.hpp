#pragma once

#include "wlab/types.hpp"
#include "wlab/util.hpp"

namespace wlab {

/// Diagonal of rho on the lowest d levels.
RealVector populations(const DensityMatrix& rho, Eigen::Index d);
RealVector populations(const ComplexVector& psi, Eigen::Index d);

enum class SamplingModel {
  /// Cumulative escape probabilities S_k = sum_{n>=k} p_n, each drawn
  /// independently from Binomial(r, S_k)/r; estimates are the differences
  /// and may be negative.
  CumulativeEscape,
  /// Plain multinomial counts over the level populations.
  Multinomial,
};

/// Finite-repetition population estimate. Unbiased; negative entries are
/// kept so downstream fits see uncorrelated noise.
RealVector sample_populations(const RealVector& p, int repetitions, Rng& rng,
                              SamplingModel model =
                                  SamplingModel::CumulativeEscape);

}  // namespace wlab
