#pragma once

#include <Eigen/Dense>
#include <complex>

namespace wlab {

/// Rectangular sampling geometry over the complex-alpha plane.
/// Nodes include both endpoints along each axis.
struct GridSpec {
  double x_min = -2.5, x_max = 2.5;
  double y_min = -2.5, y_max = 2.5;
  int nx = 61, ny = 61;

  void validate() const;
  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dy() const { return (y_max - y_min) / (ny - 1); }
  double cell_area() const { return dx() * dy(); }
  std::complex<double> node(int ix, int iy) const {
    return {x_min + ix * dx(), y_min + iy * dy()};
  }
  bool operator==(const GridSpec&) const = default;
};

/// Real Wigner values sampled on a GridSpec; values(ix, iy).
struct WignerGrid {
  GridSpec spec;
  Eigen::MatrixXd values;

  WignerGrid() = default;
  explicit WignerGrid(const GridSpec& s)
      : spec(s), values(Eigen::MatrixXd::Zero(s.nx, s.ny)) {
    s.validate();
  }
};

}  // namespace wlab
