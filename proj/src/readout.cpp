#include "wlab/readout.hpp"

#include <algorithm>

namespace wlab {

RealVector populations(const DensityMatrix& rho, Eigen::Index d) {
  if (d < 1 || d > rho.dim())
    throw NumericalError("populations: d out of range");
  RealVector p(d);
  for (Eigen::Index n = 0; n < d; ++n) p(n) = rho.matrix()(n, n).real();
  return p;
}

RealVector populations(const ComplexVector& psi, Eigen::Index d) {
  if (d < 1 || d > psi.size())
    throw NumericalError("populations: d out of range");
  return psi.head(d).cwiseAbs2();
}

static double draw_binomial_fraction(double p, int r, Rng& rng) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  std::binomial_distribution<int> bin(r, p);
  return static_cast<double>(bin(rng)) / r;
}

RealVector sample_populations(const RealVector& p, int repetitions, Rng& rng,
                              SamplingModel model) {
  if (repetitions < 1)
    throw NumericalError("sample_populations: repetitions must be >= 1");
  const Eigen::Index d = p.size();
  if (model == SamplingModel::Multinomial) {
    // Sequential conditional binomials over (p_0 .. p_{d-1}, rest).
    RealVector out = RealVector::Zero(d);
    int remaining = repetitions;
    double mass = 1.0;
    for (Eigen::Index n = 0; n < d && remaining > 0; ++n) {
      double q = std::clamp(p(n) / mass, 0.0, 1.0);
      std::binomial_distribution<int> bin(remaining, q);
      int c = (q >= 1.0) ? remaining : (q <= 0.0 ? 0 : bin(rng));
      out(n) = static_cast<double>(c) / repetitions;
      remaining -= c;
      mass = std::max(mass - p(n), 1e-300);
    }
    return out;
  }
  // Cumulative escape: S_k = sum_{n>=k} p_n, S_d = 0.
  RealVector s = RealVector::Zero(d + 1);
  for (Eigen::Index k = d - 1; k >= 0; --k) s(k) = s(k + 1) + p(k);
  RealVector s_hat(d + 1);
  s_hat(d) = 0.0;
  for (Eigen::Index k = 0; k < d; ++k)
    s_hat(k) =
        draw_binomial_fraction(std::clamp(s(k), 0.0, 1.0), repetitions, rng);
  RealVector out(d);
  for (Eigen::Index n = 0; n < d; ++n) out(n) = s_hat(n) - s_hat(n + 1);
  return out;
}

}  // namespace wlab
