#include "wlab/sst.hpp"

#include <cmath>

#include "wlab/fock.hpp"
#include "wlab/readout.hpp"

namespace wlab {

OperatorBasis su_basis(Eigen::Index d) {
  if (d < 2) throw NumericalError("su_basis: d must be >= 2");
  OperatorBasis basis{d, {}};
  basis.ops.reserve(d * d);
  basis.ops.push_back(ComplexMatrix::Identity(d, d) / std::sqrt(double(d)));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j + 1; k < d; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(d, d);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      basis.ops.push_back(sym);
      ComplexMatrix asym = ComplexMatrix::Zero(d, d);
      asym(j, k) = Complex(0, -inv_sqrt2);
      asym(k, j) = Complex(0, inv_sqrt2);
      basis.ops.push_back(asym);
    }
  for (Eigen::Index l = 1; l < d; ++l) {
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    double norm = 1.0 / std::sqrt(double(l * (l + 1)));
    for (Eigen::Index j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -double(l) * norm;
    basis.ops.push_back(diag);
  }
  return basis;
}

double measure_expectation(const DensityMatrix& rho, const ComplexMatrix& op,
                           int repetitions, Rng& rng) {
  if (op.rows() != rho.dim() || op.cols() != rho.dim())
    throw NumericalError("measure_expectation: dimension mismatch");
  if ((op - op.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw NumericalError("measure_expectation: operator not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(op);
  ComplexMatrix rotated =
      es.eigenvectors().adjoint() * rho.matrix() * es.eigenvectors();
  RealVector p = rotated.diagonal().real().cwiseMax(0.0);
  RealVector sampled = sample_populations(p, repetitions, rng);
  return es.eigenvalues().dot(sampled);
}

SstResult sst_reconstruct(const DensityMatrix& rho, const OperatorBasis& basis,
                          int repetitions, Rng& rng) {
  ComplexMatrix raw = ComplexMatrix::Zero(basis.d, basis.d);
  for (const auto& op : basis.ops)
    raw += measure_expectation(rho, op, repetitions, rng) * op;
  return SstResult{raw, project_physical(raw)};
}

namespace {

// F(rho, |psi><psi|) = sqrt(<psi|rho|psi>)
double pure_fidelity(const ComplexMatrix& rho, const ComplexVector& psi) {
  double f2 = (psi.adjoint() * rho * psi)(0).real();
  return std::sqrt(std::clamp(f2, 0.0, 1.0));
}

struct LineFit {
  double slope, intercept;
};

LineFit fit_loglog(const std::vector<ComparePoint>& pts,
                   const std::string& method) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& p : pts) {
    if (p.method != method || p.mean_df <= 0.0) continue;
    double x = std::log10(p.n), y = std::log10(p.mean_df);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw NumericalError("compare: too few points for slope fit");
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return LineFit{slope, (sy - slope * sx) / n};
}

}  // namespace

CompareResult compare_wt_sst(const ComplexVector& state,
                             const CompareConfig& cfg, std::uint64_t seed) {
  const Eigen::Index d = cfg.d;
  ComplexVector psi_d = state.size() == d ? state : ComplexVector(state);
  if (psi_d.size() > d) {
    if (state.tail(state.size() - d).norm() > 1e-12)
      throw NumericalError("compare: state has support above fit subspace");
    psi_d = state.head(d);
  } else if (psi_d.size() < d) {
    psi_d = embed(psi_d, d);
  }
  ComplexMatrix rho_d = psi_d * psi_d.adjoint();

  CompareResult result;
  FitConfig fit_cfg;
  fit_cfg.d = d;
  fit_cfg.radius = cfg.radius;

  // WT branch: fixed repetitions, growing displacement count.
  for (int nw : cfg.wt_pulses) {
    Rng disp_rng(derive_seed(seed, 1, static_cast<std::uint64_t>(nw)));
    fit_cfg.n_samples = nw;
    std::vector<Complex> alphas = sample_displacements(fit_cfg, disp_rng);
    DisplacementFitter fitter(alphas, fit_cfg);
    std::vector<RealVector> ideal(alphas.size());
    for (std::size_t s = 0; s < alphas.size(); ++s)
      ideal[s] = predict_populations(rho_d, alphas[s], fitter.model_dim());

    double sum = 0.0, sum2 = 0.0;
    for (int m = 0; m < cfg.ensemble; ++m) {
      Rng rng(derive_seed(seed, 2, static_cast<std::uint64_t>(nw) * 4096 + m));
      std::vector<RealVector> noisy(ideal.size());
      for (std::size_t s = 0; s < ideal.size(); ++s)
        noisy[s] = sample_populations(ideal[s], cfg.wt_repetitions, rng);
      FitResult fit = fitter.fit(noisy);
      double df = 1.0 - pure_fidelity(fit.projected.matrix(), psi_d);
      sum += df;
      sum2 += df * df;
    }
    double mean = sum / cfg.ensemble;
    double var = std::max(0.0, sum2 / cfg.ensemble - mean * mean);
    result.points.push_back(
        {"WT", double(cfg.wt_repetitions) * nw / double(d * d), mean,
         std::sqrt(var)});
  }

  // SST branch: fixed d^2 operators, growing repetitions.
  OperatorBasis basis = su_basis(d);
  DensityMatrix rho_state = DensityMatrix::pure(psi_d);
  for (int r : cfg.sst_repetitions) {
    double sum = 0.0, sum2 = 0.0;
    for (int m = 0; m < cfg.ensemble; ++m) {
      Rng rng(derive_seed(seed, 3, static_cast<std::uint64_t>(r) * 4096 + m));
      SstResult rec = sst_reconstruct(rho_state, basis, r, rng);
      double df = 1.0 - pure_fidelity(rec.projected.matrix(), psi_d);
      sum += df;
      sum2 += df * df;
    }
    double mean = sum / cfg.ensemble;
    double var = std::max(0.0, sum2 / cfg.ensemble - mean * mean);
    result.points.push_back({"SST", double(r), mean, std::sqrt(var)});
  }

  LineFit wt = fit_loglog(result.points, "WT");
  LineFit sst = fit_loglog(result.points, "SST");
  result.wt_slope = wt.slope;
  result.sst_slope = sst.slope;
  const double target = std::log10(0.02);
  double n_wt = (target - wt.intercept) / wt.slope;
  double n_sst = (target - sst.intercept) / sst.slope;
  result.efficiency_ratio = std::pow(10.0, n_wt - n_sst);
  return result;
}

}  // namespace wlab
