#include "wlab/dmfit.hpp"

#include <cmath>

#include "wlab/dynamics.hpp"
#include "wlab/fock.hpp"

namespace wlab {

std::vector<Complex> sample_displacements(const FitConfig& cfg, Rng& rng) {
  if (cfg.radius <= 0.0)
    throw NumericalError("sample_displacements: radius must be positive");
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<Complex> out;
  out.reserve(cfg.n_samples);
  for (int i = 0; i < cfg.n_samples; ++i) {
    double r = cfg.radius * std::sqrt(uni(rng));
    double th = 2.0 * kPi * uni(rng);
    out.push_back(std::polar(r, th));
  }
  return out;
}

RealVector predict_populations(const ComplexMatrix& rho_d, Complex alpha,
                               Eigen::Index dim) {
  const Eigen::Index d = rho_d.rows();
  if (dim < d + 2)
    throw NumericalError("predict_populations: dim too small for subspace");
  ComplexMatrix disp = displacement(-alpha, dim);
  ComplexMatrix moved = disp * embed(rho_d, dim) * disp.adjoint();
  RealVector p(d);
  for (Eigen::Index n = 0; n < d; ++n) p(n) = moved(n, n).real();
  return p;
}

DensityMatrix project_physical(const ComplexMatrix& m) {
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  RealVector ev = es.eigenvalues().cwiseMax(0.0);
  double tr = ev.sum();
  if (tr <= 0.0)
    throw NumericalError("project_physical: no positive spectral weight");
  ev /= tr;
  return DensityMatrix(es.eigenvectors() * ev.asDiagonal() *
                       es.eigenvectors().adjoint());
}

namespace {

// Hermitian d x d parametrization: d diagonal entries, then for each pair
// j < k the real and imaginary parts of rho_jk.
Eigen::Index param_count(Eigen::Index d) { return d * d; }

ComplexMatrix params_to_matrix(const Eigen::VectorXd& x, Eigen::Index d) {
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  Eigen::Index idx = 0;
  for (Eigen::Index n = 0; n < d; ++n) rho(n, n) = x(idx++);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j + 1; k < d; ++k) {
      double re = x(idx++);
      double im = x(idx++);
      rho(j, k) = Complex(re, im);
      rho(k, j) = Complex(re, -im);
    }
  return rho;
}

}  // namespace

DisplacementFitter::DisplacementFitter(
    const std::vector<Complex>& displacements, const FitConfig& cfg)
    : cfg_(cfg) {
  const Eigen::Index d = cfg.d;
  if (d < 2) throw NumericalError("fit: d must be >= 2");
  const auto n_samples = static_cast<Eigen::Index>(displacements.size());
  if (n_samples * d < param_count(d))
    throw IdentifiabilityError("fit: fewer measurements than parameters");

  double rmax = 0.0;
  for (Complex a : displacements) rmax = std::max(rmax, std::abs(a));
  dim_ = std::max<Eigen::Index>(displacement_min_dim(rmax), d + 2);

  design_ = Eigen::MatrixXd(n_samples * d, param_count(d));
  for (Eigen::Index s = 0; s < n_samples; ++s) {
    ComplexMatrix disp = displacement(-displacements[s], dim_);
    for (Eigen::Index n = 0; n < d; ++n) {
      Eigen::Index row = s * d + n;
      Eigen::Index idx = 0;
      for (Eigen::Index q = 0; q < d; ++q)
        design_(row, idx++) = std::norm(disp(n, q));
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = j + 1; k < d; ++k) {
          Complex m = disp(n, j) * std::conj(disp(n, k));
          design_(row, idx++) = 2.0 * m.real();
          design_(row, idx++) = -2.0 * m.imag();
        }
    }
  }

  if (cfg.ridge > 0.0) {
    Eigen::MatrixXd gram = design_.transpose() * design_;
    gram.diagonal().array() += cfg.ridge;
    ridge_solver_.compute(gram);
  } else {
    svd_.compute(design_, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd_.setThreshold(1e-10);
    if (svd_.rank() < param_count(cfg_.d))
      throw IdentifiabilityError("fit: rank-deficient displacement design");
  }
}

FitResult DisplacementFitter::fit(
    const std::vector<RealVector>& populations) const {
  const Eigen::Index d = cfg_.d;
  const Eigen::Index n_samples = design_.rows() / d;
  if (static_cast<Eigen::Index>(populations.size()) != n_samples)
    throw NumericalError("fit: population count mismatch");
  Eigen::VectorXd b(n_samples * d);
  for (Eigen::Index s = 0; s < n_samples; ++s) {
    if (populations[s].size() != d)
      throw NumericalError("fit: population vector length != d");
    b.segment(s * d, d) = populations[s];
  }
  Eigen::VectorXd x = cfg_.ridge > 0.0
                          ? ridge_solver_.solve(design_.transpose() * b)
                          : Eigen::VectorXd(svd_.solve(b));
  FitResult res{params_to_matrix(x, d), project_physical(
                                            params_to_matrix(x, d))};
  return res;
}

FitResult fit_density_matrix(const std::vector<DisplacementSample>& samples,
                             const FitConfig& cfg) {
  if (static_cast<Eigen::Index>(samples.size()) < cfg.d * cfg.d)
    throw IdentifiabilityError("fit: need at least d^2 displacement samples");
  std::vector<Complex> alphas;
  std::vector<RealVector> pops;
  alphas.reserve(samples.size());
  pops.reserve(samples.size());
  for (const auto& s : samples) {
    alphas.push_back(s.alpha);
    pops.push_back(s.populations);
  }
  DisplacementFitter fitter(alphas, cfg);
  return fitter.fit(pops);
}

DensityMatrix phase_correct(const DensityMatrix& rho, double beta,
                            double delta_t) {
  ComplexMatrix u = free_propagator(beta, delta_t, rho.dim());
  return DensityMatrix(u * rho.matrix() * u.adjoint());
}

}  // namespace wlab
