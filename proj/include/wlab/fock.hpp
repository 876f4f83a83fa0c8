#pragma once

#include "wlab/grid.hpp"
#include "wlab/types.hpp"

namespace wlab {

/// Ladder operator a with <n|a|n+1> = sqrt(n+1). Throws on dim < 2.
ComplexMatrix annihilation(Eigen::Index dim);

/// a^dagger.
ComplexMatrix creation(Eigen::Index dim);

/// diag(0, 1, ..., dim-1).
ComplexMatrix number_operator(Eigen::Index dim);

/// Smallest truncation dimension for which a displacement of size |alpha| is
/// numerically trustworthy (Poisson tail control).
Eigen::Index displacement_min_dim(double abs_alpha);

/// exp(alpha a^dag - conj(alpha) a), computed by eigendecomposition of the
/// Hermitian generator. Unitary to truncation tolerance.
ComplexMatrix displacement(Complex alpha, Eigen::Index dim);

/// Exponential of i*H*scale for Hermitian H.
ComplexMatrix expi_hermitian(const ComplexMatrix& h, double scale);

/// Zero-pads a square matrix (or state) into a larger truncation dimension.
ComplexMatrix embed(const ComplexMatrix& m, Eigen::Index dim);
ComplexVector embed(const ComplexVector& psi, Eigen::Index dim);
DensityMatrix embed(const DensityMatrix& rho, Eigen::Index dim);

/// (2/pi) * sum_n (-1)^n rho_nn — the Wigner value at the displaced point.
double parity_expectation(const DensityMatrix& rho);
double parity_expectation(const RealVector& populations);

/// Ideal displaced-parity Wigner map: W(a) = parity(D(-a) rho D(-a)^dag).
WignerGrid wigner_exact(const DensityMatrix& rho, const GridSpec& spec);

/// Single exact Wigner point.
double wigner_exact_point(const DensityMatrix& rho, Complex alpha);

}  // namespace wlab
