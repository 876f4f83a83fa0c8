#pragma once

#include <optional>
#include <vector>

#include "wlab/types.hpp"

namespace wlab {

/// Shaped drive in the frame rotating at the 0-1 transition. Samples are
/// complex Rabi amplitudes in rad/ns at fixed spacing dt (ns). For chirped
/// drives, phase(k) records the accumulated detuning phase at each sample.
struct PulseEnvelope {
  ComplexVector samples;
  double dt = 1.0;
  std::optional<RealVector> phase;  // accumulated carrier-detuning phase (rad)

  double duration() const { return samples.size() * dt; }
  void validate() const;
};

/// Anharmonic-oscillator parameters. beta = 2*pi*(f01 - f12) in rad/ns.
/// t1/t2 in ns; absent means no relaxation / no pure dephasing.
struct SystemParams {
  double beta = 0.0;
  Eigen::Index dim = 15;
  std::optional<double> t1;
  std::optional<double> t2;

  bool has_decoherence() const { return t1.has_value() || t2.has_value(); }
};

struct PropagateOptions {
  double dt_step = 0.01;          // internal timestep, ns
  bool apply_decoherence = true;  // honor params.t1/t2 during evolution
  bool guard_check = true;        // population ceiling on the top 3 levels
};

/// Gaussian pulse with the given FWHM, phase constant across the pulse,
/// scaled so that -(1/2) * sum(samples) * dt = alpha_target.
PulseEnvelope gaussian_envelope(Complex alpha_target, double fwhm, double dt,
                                double cutoff);

/// Constant-magnitude drive whose per-sample phase is 2*pi * int_0^t df(t')dt'
/// with the detuning df linear from f_start to f_end (GHz), frame at f01.
PulseEnvelope chirp_envelope(double rabi, double f_start_detuning,
                             double f_end_detuning, double duration,
                             double dt);

/// Accumulated chirp phase (rad) at time t for the linear detuning ramp.
double chirp_phase(double f_start_detuning, double f_end_detuning,
                   double duration, double t);

/// One CPTP decoherence step: multilevel amplitude damping (rate n/t1) with
/// no-jump renormalization, then pure dephasing exp(-(n-m)^2 dt / (2 t2)).
/// Pass an absent t1 or t2 to skip that channel.
ComplexMatrix decoherence_step(const ComplexMatrix& rho, double dt,
                               std::optional<double> t1,
                               std::optional<double> t2);
DensityMatrix decoherence_step(const DensityMatrix& rho, double dt,
                               std::optional<double> t1,
                               std::optional<double> t2);

/// Timestepped propagation of rho0 through the drive. Per step the unitary
/// exp(dt * (-(1/2)(W a^dag - W^* a) + i (beta/2) N(N-1))) is applied as
/// U rho U^dag, interleaved with decoherence when configured.
DensityMatrix propagate(const DensityMatrix& rho0, const PulseEnvelope& env,
                        const SystemParams& params,
                        const PropagateOptions& opts = {});

/// Same evolution recorded at the requested times (ns, sorted ascending).
/// Times beyond the envelope continue drive-free.
std::vector<DensityMatrix> propagate_trajectory(
    const DensityMatrix& rho0, const PulseEnvelope& env,
    const SystemParams& params, const std::vector<double>& times,
    const PropagateOptions& opts = {});

/// Pure-state fast path: unitary propagation only (no decoherence).
ComplexVector propagate_state(const ComplexVector& psi0,
                              const PulseEnvelope& env,
                              const SystemParams& params,
                              const PropagateOptions& opts = {});

/// Drive-free evolution for a duration; uses the closed-form diagonal
/// unitary, interleaved with decoherence steps.
DensityMatrix free_evolve(const DensityMatrix& rho0, double duration,
                          const SystemParams& params,
                          const PropagateOptions& opts = {});

/// Diagonal unitary with entries exp(-i * beta * n(n-1)/2 * delta_t); the
/// inverse of the drive-free rotation accumulated during a pulse.
ComplexMatrix free_propagator(double beta, double delta_t, Eigen::Index dim);

}  // namespace wlab
