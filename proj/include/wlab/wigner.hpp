#pragma once

#include <cstdint>
#include <optional>

#include "wlab/dynamics.hpp"
#include "wlab/grid.hpp"
#include "wlab/readout.hpp"
#include "wlab/types.hpp"

namespace wlab {

enum class WignerMode {
  Exact,                        // ideal displaced parity (oracle)
  Pulsed,                       // gaussian tomography pulse, unitary
  PulsedDecoherence,            // pulse with T1/T2 during evolution
  PulsedDecoherenceShotNoise,   // plus finite-repetition readout
};

struct TomographyConfig {
  double pulse_fwhm = 1.6;      // ns
  double pulse_dt = 0.1;        // envelope sample spacing, ns
  double cutoff_factor = 2.0;   // pulse length = cutoff_factor * fwhm
  Eigen::Index parity_levels = 6;  // measured subspace for noisy modes
  int repetitions = 900;
};

/// Wigner value at `alpha` measured the way the experiment does: a gaussian
/// pulse displacing the state by -alpha, then parity from the populations.
/// `noise_rng` enables finite-repetition sampling of the populations.
double wigner_point_pulsed(const DensityMatrix& rho0, Complex alpha,
                           const SystemParams& params,
                           const TomographyConfig& cfg,
                           Rng* noise_rng = nullptr);

/// Full map over a grid. Deterministic given `seed`; grid points draw from
/// generators derived per (seed, ix, iy).
WignerGrid wigner_map(const DensityMatrix& rho0, const GridSpec& spec,
                      WignerMode mode, const SystemParams& params,
                      const TomographyConfig& cfg = {},
                      std::uint64_t seed = 0);

/// pi * sum(W^2) * cell_area — Tr(rho^2) when the grid covers the state.
double purity_from_grid(const WignerGrid& grid);

/// Largest |W| on the grid boundary; above ~1e-3 the purity integral is
/// missing mass.
double boundary_max(const WignerGrid& grid);

}  // namespace wlab
