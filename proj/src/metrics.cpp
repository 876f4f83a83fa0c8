#include "wlab/metrics.hpp"

#include <cmath>

namespace wlab {

static ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw NumericalError("fidelity: input is not positive semidefinite");
  RealVector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b) {
  if (rho_a.rows() != rho_b.rows())
    throw NumericalError("fidelity: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> check(rho_b,
                                                     Eigen::EigenvaluesOnly);
  if (check.eigenvalues().minCoeff() < -1e-9)
    throw NumericalError("fidelity: input is not positive semidefinite");
  ComplexMatrix ra = psd_sqrt(rho_a);
  ComplexMatrix inner = ra * rho_b * ra;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
      ComplexMatrix(0.5 * (inner + inner.adjoint())), Eigen::EigenvaluesOnly);
  double f = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::min(f, 1.0);
}

double fidelity(const DensityMatrix& rho_a, const DensityMatrix& rho_b) {
  return fidelity(rho_a.matrix(), rho_b.matrix());
}

double cross_correlation(const WignerGrid& f, const WignerGrid& g) {
  if (!(f.spec == g.spec))
    throw NumericalError("cross_correlation: grids differ in geometry");
  Eigen::ArrayXXd fa = f.values.array() - f.values.mean();
  Eigen::ArrayXXd ga = g.values.array() - g.values.mean();
  double vf = (fa * fa).sum(), vg = (ga * ga).sum();
  if (vf < 1e-18 || vg < 1e-18)
    throw NumericalError("cross_correlation: zero-variance grid");
  return (fa * ga).sum() / std::sqrt(vf * vg);
}

ErrorReport offdiag_errors(const DensityMatrix& rho_fit,
                           const DensityMatrix& rho_ideal, Eigen::Index l) {
  if (l >= rho_fit.dim() || l >= rho_ideal.dim())
    throw NumericalError("offdiag_errors: l out of range");
  ErrorReport rep;
  rep.fidelity_error = 1.0 - fidelity(rho_fit, rho_ideal);
  Complex a = rho_fit.matrix()(0, l);
  Complex b = rho_ideal.matrix()(0, l);
  rep.amp_error_0l = std::abs(std::abs(a) - std::abs(b));
  double dphi = std::fmod(std::abs(std::arg(a) - std::arg(b)), 2.0 * kPi);
  if (dphi > kPi) dphi = 2.0 * kPi - dphi;
  rep.phase_error_0l = dphi / (2.0 * kPi);
  return rep;
}

}  // namespace wlab
