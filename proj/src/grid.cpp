#include "ricci/grid.hpp"

namespace ricci {

Grid Grid::uniform(int node_count) {
  if (node_count < 16) throw parameter_error("grid needs at least 16 nodes");
  Grid g;
  g.x = Eigen::ArrayXd::LinSpaced(node_count, 0.0, 1.0);
  return g;
}

bool Grid::is_uniform(double tol) const {
  const double h = x(1) - x(0);
  for (int i = 1; i + 1 < size(); ++i)
    if (std::abs((x(i + 1) - x(i)) - h) > tol) return false;
  return true;
}

void Grid::validate() const {
  if (size() < 16) throw invalid_metric_error("grid has fewer than 16 nodes");
  if (x(0) != 0.0 || x(size() - 1) != 1.0)
    throw invalid_metric_error("grid endpoints must be 0 and 1");
  for (int i = 0; i + 1 < size(); ++i)
    if (!(x(i + 1) > x(i))) throw invalid_metric_error("grid not strictly increasing");
}

double trapezoid(const Eigen::ArrayXd& s, const Eigen::ArrayXd& f) {
  double acc = 0.0;
  for (int i = 0; i + 1 < s.size(); ++i)
    acc += 0.5 * (f(i) + f(i + 1)) * (s(i + 1) - s(i));
  return acc;
}

}  // namespace ricci
