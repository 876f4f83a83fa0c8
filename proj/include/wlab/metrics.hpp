#pragma once

#include "wlab/grid.hpp"
#include "wlab/types.hpp"

namespace wlab {

struct ErrorReport {
  double fidelity_error = 0.0;
  double amp_error_0l = 0.0;
  double phase_error_0l = 0.0;  // normalized to [0, 0.5]
};

/// Uhlmann fidelity Tr sqrt(sqrt(a) b sqrt(a)), in [0, 1]. Matrix square
/// roots go through eigendecomposition with eigenvalues clipped at 0.
double fidelity(const DensityMatrix& rho_a, const DensityMatrix& rho_b);
double fidelity(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b);

/// Mean-subtracted, normalized correlation at zero offsets; in [-1, 1].
double cross_correlation(const WignerGrid& f, const WignerGrid& g);

/// Amplitude and phase error of the (0, l) matrix element plus the overall
/// fidelity error 1 - F.
ErrorReport offdiag_errors(const DensityMatrix& rho_fit,
                           const DensityMatrix& rho_ideal, Eigen::Index l);

}  // namespace wlab
