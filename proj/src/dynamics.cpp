#include "wlab/dynamics.hpp"

#include <cmath>
#include <unordered_map>

#include "wlab/fock.hpp"

namespace wlab {

void PulseEnvelope::validate() const {
  if (dt <= 0.0) throw NumericalError("PulseEnvelope: dt must be positive");
  if (samples.size() < 1)
    throw NumericalError("PulseEnvelope: need at least one sample");
}

PulseEnvelope gaussian_envelope(Complex alpha_target, double fwhm, double dt,
                                double cutoff) {
  if (fwhm <= 0.0) throw NumericalError("gaussian_envelope: fwhm <= 0");
  if (cutoff < 2.0 * fwhm)
    throw NumericalError("gaussian_envelope: cutoff < 2*fwhm");
  if (dt <= 0.0) throw NumericalError("gaussian_envelope: dt <= 0");
  auto n = static_cast<Eigen::Index>(std::llround(cutoff / dt));
  n = std::max<Eigen::Index>(n, 1);
  PulseEnvelope env;
  env.dt = dt;
  env.samples = ComplexVector::Zero(n);
  if (alpha_target == Complex(0.0, 0.0)) return env;

  const double center = 0.5 * n * dt;
  const double k = 4.0 * std::log(2.0) / (fwhm * fwhm);
  RealVector shape(n);
  double area = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double t = (i + 0.5) * dt;
    shape(i) = std::exp(-k * (t - center) * (t - center));
    area += shape(i) * dt;
  }
  // -(1/2) * sum(samples) * dt == alpha_target, exactly on the sampled sum.
  Complex scale = -2.0 * alpha_target / area;
  for (Eigen::Index i = 0; i < n; ++i) env.samples(i) = scale * shape(i);
  return env;
}

double chirp_phase(double f_start_detuning, double f_end_detuning,
                   double duration, double t) {
  double ramp = (f_end_detuning - f_start_detuning) / duration;
  return 2.0 * kPi * (f_start_detuning * t + 0.5 * ramp * t * t);
}

PulseEnvelope chirp_envelope(double rabi, double f_start_detuning,
                             double f_end_detuning, double duration,
                             double dt) {
  if (duration <= 0.0) throw NumericalError("chirp_envelope: duration <= 0");
  if (dt <= 0.0) throw NumericalError("chirp_envelope: dt <= 0");
  auto n = static_cast<Eigen::Index>(std::llround(duration / dt));
  n = std::max<Eigen::Index>(n, 1);
  PulseEnvelope env;
  env.dt = dt;
  env.samples = ComplexVector(n);
  env.phase = RealVector(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double t = (i + 0.5) * dt;
    double th = chirp_phase(f_start_detuning, f_end_detuning, duration, t);
    (*env.phase)(i) = th;
    env.samples(i) = std::polar(rabi, th);
  }
  return env;
}

ComplexMatrix free_propagator(double beta, double delta_t, Eigen::Index dim) {
  if (dim < 2) throw NumericalError("free_propagator: dim must be >= 2");
  ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n)
    u(n, n) = std::polar(1.0, -beta * 0.5 * n * (n - 1.0) * delta_t);
  return u;
}

ComplexMatrix decoherence_step(const ComplexMatrix& rho, double dt,
                               std::optional<double> t1,
                               std::optional<double> t2) {
  const Eigen::Index d = rho.rows();
  if ((t1 && dt > *t1 / 50.0) || (t2 && dt > *t2 / 50.0))
    throw NumericalError("decoherence_step: dt too large (need dt <= T/50)");
  ComplexMatrix out = rho;
  if (t1) {
    double g = dt / *t1;
    RealVector keep(d);
    for (Eigen::Index n = 0; n < d; ++n)
      keep(n) = std::sqrt(std::max(0.0, 1.0 - n * g));
    ComplexMatrix next(d, d);
    for (Eigen::Index n = 0; n < d; ++n)
      for (Eigen::Index m = 0; m < d; ++m) {
        Complex v = keep(n) * keep(m) * out(n, m);
        if (n + 1 < d && m + 1 < d)
          v += g * std::sqrt(double((n + 1) * (m + 1))) * out(n + 1, m + 1);
        next(n, m) = v;
      }
    out = std::move(next);
  }
  if (t2) {
    double c = dt / (2.0 * *t2);
    for (Eigen::Index n = 0; n < d; ++n)
      for (Eigen::Index m = 0; m < d; ++m) {
        double k = static_cast<double>(n - m);
        out(n, m) *= std::exp(-k * k * c);
      }
  }
  return out;
}

DensityMatrix decoherence_step(const DensityMatrix& rho, double dt,
                               std::optional<double> t1,
                               std::optional<double> t2) {
  return DensityMatrix(decoherence_step(rho.matrix(), dt, t1, t2));
}

namespace {

// Shared per-step machinery: drive unitaries cached per envelope sample,
// closed-form diagonal unitary for drive-free stretches.
class Stepper {
 public:
  Stepper(const PulseEnvelope& env, const SystemParams& params,
          const PropagateOptions& opts)
      : env_(env), params_(params), opts_(opts) {
    env.validate();
    if (params.dim < 2) throw NumericalError("propagate: dim must be >= 2");
    a_ = annihilation(params.dim);
    anharm_ = RealVector(params.dim);
    for (Eigen::Index n = 0; n < params.dim; ++n)
      anharm_(n) = 0.5 * params.beta * n * (n - 1.0);
    free_ = ComplexVector(params.dim);
    for (Eigen::Index n = 0; n < params.dim; ++n)
      free_(n) = std::polar(1.0, anharm_(n) * opts.dt_step);
    decohere_ = opts.apply_decoherence && params.has_decoherence();
    if (decohere_) {
      if ((params.t1 && opts.dt_step > *params.t1 / 50.0) ||
          (params.t2 && opts.dt_step > *params.t2 / 50.0))
        throw NumericalError("propagate: dt_step too large for T1/T2");
    }
  }

  // Envelope sample index for internal step j, or -1 past the pulse.
  Eigen::Index sample_index(Eigen::Index j) const {
    double t = (j + 0.5) * opts_.dt_step;
    auto k = static_cast<Eigen::Index>(t / env_.dt);
    return k < env_.samples.size() ? k : -1;
  }

  const ComplexMatrix& drive_unitary(Eigen::Index sample) {
    auto it = cache_.find(sample);
    if (it != cache_.end()) return it->second;
    Complex w = env_.samples(sample);
    // Hermitian generator: H = (i/2)(W a^dag - W^* a) + (beta/2) N(N-1),
    // applied as U = exp(i H dt).
    ComplexMatrix h = Complex(0, 0.5) * (w * a_.adjoint()) +
                      Complex(0, -0.5) * (std::conj(w) * a_);
    h += anharm_.cast<Complex>().asDiagonal().toDenseMatrix();
    return cache_.emplace(sample, expi_hermitian(h, opts_.dt_step))
        .first->second;
  }

  void step_density(ComplexMatrix& rho, Eigen::Index j) {
    Eigen::Index k = sample_index(j);
    if (k >= 0 && env_.samples(k) != Complex(0.0, 0.0)) {
      const ComplexMatrix& u = drive_unitary(k);
      rho = u * rho * u.adjoint();
    } else {
      for (Eigen::Index n = 0; n < rho.rows(); ++n)
        for (Eigen::Index m = 0; m < rho.cols(); ++m)
          rho(n, m) *= free_(n) * std::conj(free_(m));
    }
    if (decohere_)
      rho = decoherence_step(rho, opts_.dt_step, params_.t1, params_.t2);
    if (opts_.guard_check) check_guard(rho);
  }

  void step_state(ComplexVector& psi, Eigen::Index j) {
    Eigen::Index k = sample_index(j);
    if (k >= 0 && env_.samples(k) != Complex(0.0, 0.0)) {
      psi = drive_unitary(k) * psi;
    } else {
      psi = psi.cwiseProduct(free_);
    }
    if (opts_.guard_check) {
      double tail = psi.tail(3).squaredNorm();
      if (tail > 1e-3)
        throw TruncationError("propagate: guard-level population exceeded");
    }
  }

  Eigen::Index steps_for(double duration) const {
    return std::max<Eigen::Index>(
        1, static_cast<Eigen::Index>(std::llround(duration / opts_.dt_step)));
  }

 private:
  void check_guard(const ComplexMatrix& rho) const {
    double tail = 0.0;
    for (Eigen::Index n = rho.rows() - 3; n < rho.rows(); ++n)
      tail += rho(n, n).real();
    if (tail > 1e-3)
      throw TruncationError("propagate: guard-level population exceeded");
  }

  const PulseEnvelope& env_;
  const SystemParams& params_;
  const PropagateOptions& opts_;
  ComplexMatrix a_;
  RealVector anharm_;
  ComplexVector free_;
  bool decohere_ = false;
  std::unordered_map<Eigen::Index, ComplexMatrix> cache_;
};

ComplexMatrix hermitize(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

}  // namespace

DensityMatrix propagate(const DensityMatrix& rho0, const PulseEnvelope& env,
                        const SystemParams& params,
                        const PropagateOptions& opts) {
  if (rho0.dim() != params.dim)
    throw NumericalError("propagate: rho0 dimension != params.dim");
  Stepper st(env, params, opts);
  ComplexMatrix rho = rho0.matrix();
  Eigen::Index n = st.steps_for(env.duration());
  for (Eigen::Index j = 0; j < n; ++j) st.step_density(rho, j);
  return DensityMatrix(hermitize(rho));
}

std::vector<DensityMatrix> propagate_trajectory(
    const DensityMatrix& rho0, const PulseEnvelope& env,
    const SystemParams& params, const std::vector<double>& times,
    const PropagateOptions& opts) {
  if (rho0.dim() != params.dim)
    throw NumericalError("propagate: rho0 dimension != params.dim");
  Stepper st(env, params, opts);
  ComplexMatrix rho = rho0.matrix();
  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  Eigen::Index j = 0;
  for (double t : times) {
    Eigen::Index upto = st.steps_for(t);
    if (t <= 0.0) upto = 0;
    for (; j < upto; ++j) st.step_density(rho, j);
    out.emplace_back(hermitize(rho));
  }
  return out;
}

ComplexVector propagate_state(const ComplexVector& psi0,
                              const PulseEnvelope& env,
                              const SystemParams& params,
                              const PropagateOptions& opts) {
  if (psi0.size() != params.dim)
    throw NumericalError("propagate_state: psi0 dimension != params.dim");
  Stepper st(env, params, opts);
  ComplexVector psi = psi0;
  Eigen::Index n = st.steps_for(env.duration());
  for (Eigen::Index j = 0; j < n; ++j) st.step_state(psi, j);
  return psi;
}

DensityMatrix free_evolve(const DensityMatrix& rho0, double duration,
                          const SystemParams& params,
                          const PropagateOptions& opts) {
  if (rho0.dim() != params.dim)
    throw NumericalError("free_evolve: rho0 dimension != params.dim");
  if (duration <= 0.0) return rho0;
  ComplexMatrix rho = rho0.matrix();
  const Eigen::Index d = rho.rows();
  auto rotate = [&](double dt) {
    for (Eigen::Index n = 0; n < d; ++n)
      for (Eigen::Index m = 0; m < d; ++m)
        rho(n, m) *= std::polar(
            1.0, 0.5 * params.beta * dt * (n * (n - 1.0) - m * (m - 1.0)));
  };
  if (!(opts.apply_decoherence && params.has_decoherence())) {
    rotate(duration);
    return DensityMatrix(hermitize(rho));
  }
  // Decoherent path: the diagonal rotation commutes with both channels per
  // step, so a coarser step bounded by T/50 is exact enough.
  double dt = opts.dt_step;
  if (params.t1) dt = std::max(dt, *params.t1 / 100.0);
  if (params.t2) dt = std::min(dt, *params.t2 / 50.0);
  if (params.t1) dt = std::min(dt, *params.t1 / 50.0);
  auto n = static_cast<Eigen::Index>(std::ceil(duration / dt));
  double step = duration / n;
  for (Eigen::Index j = 0; j < n; ++j) {
    rotate(step);
    rho = decoherence_step(rho, step, params.t1, params.t2);
  }
  return DensityMatrix(hermitize(rho));
}

}  // namespace wlab
