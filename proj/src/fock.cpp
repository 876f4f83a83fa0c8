#include "wlab/fock.hpp"

#include <cmath>

#include "wlab/util.hpp"

namespace wlab {

DensityMatrix::DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 2)
    throw NumericalError("DensityMatrix: matrix must be square with dim >= 2");
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw NumericalError("DensityMatrix: not Hermitian");
  double tr = mat_.trace().real();
  if (std::abs(tr - 1.0) > 1e-9)
    throw NumericalError("DensityMatrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat_,
                                                  Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw NumericalError("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  double n2 = psi.squaredNorm();
  if (std::abs(n2 - 1.0) > 1e-10)
    throw NumericalError("pure state: amplitudes not normalized");
  return DensityMatrix(psi * psi.adjoint());
}

ComplexVector fock_state(Eigen::Index n, Eigen::Index dim) {
  if (n < 0 || n >= dim) throw NumericalError("fock_state: level out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(n) = 1.0;
  return v;
}

ComplexVector fock_superposition(Eigen::Index l, Eigen::Index dim,
                                 double phi) {
  if (l < 1 || l >= dim)
    throw NumericalError("fock_superposition: level out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(0) = 1.0 / std::sqrt(2.0);
  v(l) = std::polar(1.0 / std::sqrt(2.0), phi);
  return v;
}

ComplexMatrix annihilation(Eigen::Index dim) {
  if (dim < 2) throw NumericalError("annihilation: dim must be >= 2");
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 0; n + 1 < dim; ++n)
    a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
  return a;
}

ComplexMatrix creation(Eigen::Index dim) {
  return annihilation(dim).adjoint();
}

ComplexMatrix number_operator(Eigen::Index dim) {
  if (dim < 2) throw NumericalError("number_operator: dim must be >= 2");
  ComplexMatrix n = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Eigen::Index displacement_min_dim(double abs_alpha) {
  double a2 = abs_alpha * abs_alpha;
  return static_cast<Eigen::Index>(std::ceil(a2 + 6.0 * std::sqrt(a2) + 4.0));
}

ComplexMatrix expi_hermitian(const ComplexMatrix& h, double scale) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  ComplexVector phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k)
    phases(k) = std::polar(1.0, scale * es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

ComplexMatrix displacement(Complex alpha, Eigen::Index dim) {
  if (dim < 2) throw NumericalError("displacement: dim must be >= 2");
  if (dim < displacement_min_dim(std::abs(alpha)))
    throw TruncationError("displacement: dim too small for |alpha|");
  // alpha a^dag - conj(alpha) a = i H with H Hermitian.
  ComplexMatrix a = annihilation(dim);
  ComplexMatrix h =
      Complex(0, -1) * (alpha * a.adjoint() - std::conj(alpha) * a);
  return expi_hermitian(h, 1.0);
}

double parity_expectation(const DensityMatrix& rho) {
  double s = 0.0;
  for (Eigen::Index n = 0; n < rho.dim(); ++n)
    s += (n % 2 == 0 ? 1.0 : -1.0) * rho.matrix()(n, n).real();
  return kTwoOverPi * s;
}

double parity_expectation(const RealVector& populations) {
  double s = 0.0;
  for (Eigen::Index n = 0; n < populations.size(); ++n)
    s += (n % 2 == 0 ? 1.0 : -1.0) * populations(n);
  return kTwoOverPi * s;
}

ComplexMatrix embed(const ComplexMatrix& m, Eigen::Index dim) {
  if (dim < m.rows()) throw NumericalError("embed: cannot shrink");
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  out.topLeftCorner(m.rows(), m.cols()) = m;
  return out;
}

ComplexVector embed(const ComplexVector& psi, Eigen::Index dim) {
  if (dim < psi.size()) throw NumericalError("embed: cannot shrink");
  ComplexVector out = ComplexVector::Zero(dim);
  out.head(psi.size()) = psi;
  return out;
}

DensityMatrix embed(const DensityMatrix& rho, Eigen::Index dim) {
  return DensityMatrix(embed(rho.matrix(), dim));
}

double wigner_exact_point(const DensityMatrix& rho, Complex alpha) {
  ComplexMatrix d = displacement(-alpha, rho.dim());
  ComplexMatrix displaced = d * rho.matrix() * d.adjoint();
  double s = 0.0;
  for (Eigen::Index n = 0; n < rho.dim(); ++n)
    s += (n % 2 == 0 ? 1.0 : -1.0) * displaced(n, n).real();
  return kTwoOverPi * s;
}

void GridSpec::validate() const {
  if (nx < 2 || ny < 2)
    throw NumericalError("GridSpec: nx, ny must be >= 2");
  if (x_max <= x_min || y_max <= y_min)
    throw NumericalError("GridSpec: max must exceed min");
}

WignerGrid wigner_exact(const DensityMatrix& rho, const GridSpec& spec) {
  spec.validate();
  double corner = std::max({std::hypot(spec.x_min, spec.y_min),
                            std::hypot(spec.x_min, spec.y_max),
                            std::hypot(spec.x_max, spec.y_min),
                            std::hypot(spec.x_max, spec.y_max)});
  Eigen::Index need = displacement_min_dim(corner);
  const DensityMatrix work =
      rho.dim() >= need ? rho : embed(rho, need);
  WignerGrid grid(spec);
  parallel_for(static_cast<std::size_t>(spec.nx) * spec.ny,
               [&](std::size_t idx) {
                 int ix = static_cast<int>(idx) % spec.nx;
                 int iy = static_cast<int>(idx) / spec.nx;
                 grid.values(ix, iy) =
                     wigner_exact_point(work, spec.node(ix, iy));
               });
  return grid;
}

}  // namespace wlab
