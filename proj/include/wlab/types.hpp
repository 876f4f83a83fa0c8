#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace wlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoOverPi = 2.0 / kPi;

/// Errors that map to dedicated CLI exit codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TruncationError : NumericalError {
  using NumericalError::NumericalError;
};
struct IdentifiabilityError : NumericalError {
  using NumericalError::NumericalError;
};

/// Hermitian, unit-trace, positive-semidefinite state over a truncated Fock
/// basis. Construction validates the invariants; internals stay immutable.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  /// Builds |psi><psi| from a normalized amplitude vector.
  static DensityMatrix pure(const ComplexVector& psi);

  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

  double purity() const { return (mat_ * mat_).trace().real(); }

 private:
  ComplexMatrix mat_;
};

/// Normalized pure-state amplitude vector |psi>.
ComplexVector fock_state(Eigen::Index n, Eigen::Index dim);

/// (|0> + e^{i phi} |l>)/sqrt(2) embedded in `dim` levels.
ComplexVector fock_superposition(Eigen::Index l, Eigen::Index dim,
                                 double phi = 0.0);

}  // namespace wlab
