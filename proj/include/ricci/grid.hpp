#ifndef RICCI_GRID_HPP
#define RICCI_GRID_HPP

#include <Eigen/Dense>
#include <stdexcept>

namespace ricci {

struct invalid_metric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct degenerate_pole_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// 1D coordinate grid on [0,1]; the two endpoints are the poles of the
/// rotationally symmetric manifold (or a pole and a boundary for caps).
struct Grid {
  Eigen::ArrayXd x;

  static Grid uniform(int node_count);

  int size() const { return static_cast<int>(x.size()); }
  double spacing() const { return x(1) - x(0); }  // uniform grids only
  bool is_uniform(double tol = 1e-12) const;
  void validate() const;
};

/// Composite trapezoid of f against abscissae s (both length >= 2).
double trapezoid(const Eigen::ArrayXd& s, const Eigen::ArrayXd& f);

}  // namespace ricci

#endif
