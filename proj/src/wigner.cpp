#include "wlab/wigner.hpp"

#include <cmath>

#include "wlab/fock.hpp"

namespace wlab {

namespace {

PulseEnvelope tomography_pulse(Complex alpha, const TomographyConfig& cfg) {
  return gaussian_envelope(-alpha, cfg.pulse_fwhm, cfg.pulse_dt,
                           cfg.cutoff_factor * cfg.pulse_fwhm);
}

}  // namespace

double wigner_point_pulsed(const DensityMatrix& rho0, Complex alpha,
                           const SystemParams& params,
                           const TomographyConfig& cfg, Rng* noise_rng) {
  if (params.dim < displacement_min_dim(std::abs(alpha)))
    throw TruncationError("wigner_point_pulsed: dim too small for |alpha|");
  PulseEnvelope env = tomography_pulse(alpha, cfg);
  DensityMatrix displaced = propagate(rho0, env, params);
  if (noise_rng) {
    RealVector p = populations(displaced, cfg.parity_levels);
    RealVector sampled = sample_populations(p, cfg.repetitions, *noise_rng);
    return parity_expectation(sampled);
  }
  return parity_expectation(displaced);
}

WignerGrid wigner_map(const DensityMatrix& rho0, const GridSpec& spec,
                      WignerMode mode, const SystemParams& params,
                      const TomographyConfig& cfg, std::uint64_t seed) {
  spec.validate();
  if (mode == WignerMode::Exact) return wigner_exact(rho0, spec);

  double corner = std::max({std::hypot(spec.x_min, spec.y_min),
                            std::hypot(spec.x_min, spec.y_max),
                            std::hypot(spec.x_max, spec.y_min),
                            std::hypot(spec.x_max, spec.y_max)});
  // The state's own phase-space extent adds to the displacement reach.
  double nbar = 0.0;
  for (Eigen::Index n = 0; n < rho0.dim(); ++n)
    nbar += n * rho0.matrix()(n, n).real();
  SystemParams work = params;
  work.dim = std::max(params.dim,
                      displacement_min_dim(corner + std::sqrt(nbar)));
  if (mode == WignerMode::Pulsed) {
    work.t1.reset();
    work.t2.reset();
  }
  const DensityMatrix rho =
      rho0.dim() == work.dim ? rho0 : embed(rho0, work.dim);

  WignerGrid grid(spec);
  const auto npts = static_cast<std::size_t>(spec.nx) * spec.ny;

  if (mode == WignerMode::Pulsed) {
    // Unitary evolution preserves the spectral decomposition, so mixed
    // states propagate as weighted pure components.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
    std::vector<std::pair<double, ComplexVector>> parts;
    for (Eigen::Index k = 0; k < work.dim; ++k)
      if (es.eigenvalues()(k) > 1e-12)
        parts.emplace_back(es.eigenvalues()(k), es.eigenvectors().col(k));
    parallel_for(npts, [&](std::size_t idx) {
      int ix = static_cast<int>(idx) % spec.nx;
      int iy = static_cast<int>(idx) / spec.nx;
      PulseEnvelope env = tomography_pulse(spec.node(ix, iy), cfg);
      double w = 0.0;
      for (const auto& [weight, psi] : parts) {
        ComplexVector out = propagate_state(psi, env, work);
        w += weight * parity_expectation(populations(out, work.dim));
      }
      grid.values(ix, iy) = w;
    });
    return grid;
  }

  const bool shot_noise = mode == WignerMode::PulsedDecoherenceShotNoise;
  parallel_for(npts, [&](std::size_t idx) {
    int ix = static_cast<int>(idx) % spec.nx;
    int iy = static_cast<int>(idx) / spec.nx;
    if (shot_noise) {
      Rng rng(derive_seed(seed, ix, iy));
      grid.values(ix, iy) =
          wigner_point_pulsed(rho, spec.node(ix, iy), work, cfg, &rng);
    } else {
      grid.values(ix, iy) =
          wigner_point_pulsed(rho, spec.node(ix, iy), work, cfg, nullptr);
    }
  });
  return grid;
}

double purity_from_grid(const WignerGrid& grid) {
  return kPi * grid.values.array().square().sum() * grid.spec.cell_area();
}

double boundary_max(const WignerGrid& grid) {
  double m = 0.0;
  const auto& v = grid.values;
  m = std::max(m, v.row(0).cwiseAbs().maxCoeff());
  m = std::max(m, v.row(v.rows() - 1).cwiseAbs().maxCoeff());
  m = std::max(m, v.col(0).cwiseAbs().maxCoeff());
  m = std::max(m, v.col(v.cols() - 1).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace wlab
