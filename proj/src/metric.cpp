#include "ricci/metric.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ricci {

Eigen::ArrayXd WarpedMetric::arclength() const {
  const int n = size();
  Eigen::ArrayXd s(n);
  s(0) = 0.0;
  for (int i = 0; i + 1 < n; ++i)
    s(i + 1) = s(i) + 0.5 * (phi(i) + phi(i + 1)) * (grid.x(i + 1) - grid.x(i));
  return s;
}

double WarpedMetric::axis_length() const { return arclength()(size() - 1); }

double WarpedMetric::pole_slope_error() const {
  const int n = size();
  double worst = 0.0;
  if (end0 == EndKind::pole) {
    // psi odd about the pole: psi_s(0) = psi_1 / (h phi_0) to O(h^2)
    const double h = grid.x(1) - grid.x(0);
    worst = std::max(worst, std::abs(std::abs(psi(1) / (h * phi(0))) - 1.0));
  }
  if (end1 == EndKind::pole) {
    const double h = grid.x(n - 1) - grid.x(n - 2);
    worst = std::max(worst, std::abs(std::abs(psi(n - 2) / (h * phi(n - 1))) - 1.0));
  }
  return worst;
}

void WarpedMetric::validate(double pole_tol) const {
  grid.validate();
  const int n = size();
  if (phi.size() != n || psi.size() != n)
    throw invalid_metric_error("phi/psi length mismatch");
  if ((phi <= 0.0).any()) throw invalid_metric_error("phi must be positive");
  for (int i = 1; i + 1 < n; ++i)
    if (!(psi(i) > 0.0)) throw invalid_metric_error("psi must be positive in the interior");
  if (end0 == EndKind::pole && psi(0) != 0.0)
    throw invalid_metric_error("psi must vanish at pole x=0");
  if (end1 == EndKind::pole && psi(n - 1) != 0.0)
    throw invalid_metric_error("psi must vanish at pole x=1");
  if (end0 == EndKind::boundary && !(psi(0) > 0.0))
    throw invalid_metric_error("psi must be positive at a boundary end");
  if (end1 == EndKind::boundary && !(psi(n - 1) > 0.0))
    throw invalid_metric_error("psi must be positive at a boundary end");
  if (!psi.allFinite() || !phi.allFinite())
    throw invalid_metric_error("non-finite metric data");
  if (pole_slope_error() > pole_tol)
    throw degenerate_pole_error("pole regularity |psi_s| = 1 violated beyond tolerance");
}

WarpedMetric rescale(const WarpedMetric& m, double C) {
  if (!(C > 0.0)) throw parameter_error("rescale factor must be positive");
  WarpedMetric out = m;
  const double rc = std::sqrt(C);
  out.phi *= rc;
  out.psi *= rc;
  out.time = C * m.time;
  return out;
}

void save_snapshot(const WarpedMetric& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open snapshot file for writing: " + path);
  f << "# warped-metric-snapshot v1\n";
  f << std::setprecision(17);
  f << "n " << m.dim << "\n";
  f << "node_count " << m.size() << "\n";
  f << "time " << m.time << "\n";
  f << "end0 " << (m.end0 == EndKind::pole ? "pole" : "boundary") << "\n";
  f << "end1 " << (m.end1 == EndKind::pole ? "pole" : "boundary") << "\n";
  f << "# x phi psi\n";
  for (int i = 0; i < m.size(); ++i)
    f << m.grid.x(i) << " " << m.phi(i) << " " << m.psi(i) << "\n";
}

WarpedMetric load_snapshot(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open snapshot file: " + path);
  WarpedMetric m;
  int node_count = -1;
  std::string line;
  std::vector<double> xs, phis, psis;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key == "n") {
      ss >> m.dim;
    } else if (key == "node_count") {
      ss >> node_count;
    } else if (key == "time") {
      ss >> m.time;
    } else if (key == "end0" || key == "end1") {
      std::string v;
      ss >> v;
      (key == "end0" ? m.end0 : m.end1) =
          v == "pole" ? EndKind::pole : EndKind::boundary;
    } else {
      double x = std::stod(key), p, q;
      ss >> p >> q;
      xs.push_back(x);
      phis.push_back(p);
      psis.push_back(q);
    }
  }
  if (node_count != static_cast<int>(xs.size()))
    throw std::runtime_error("snapshot node count mismatch in " + path);
  m.grid.x = Eigen::Map<Eigen::ArrayXd>(xs.data(), xs.size());
  m.phi = Eigen::Map<Eigen::ArrayXd>(phis.data(), phis.size());
  m.psi = Eigen::Map<Eigen::ArrayXd>(psis.data(), psis.size());
  return m;
}

// -- presets ---------------------------------------------------------------

WarpedMetric make_round_sphere(double radius, int nodes) {
  if (!(radius > 0.0)) throw parameter_error("round_sphere: radius must be positive");
  WarpedMetric m;
  m.grid = Grid::uniform(nodes);
  m.phi = Eigen::ArrayXd::Constant(nodes, M_PI * radius);
  m.psi = radius * (M_PI * m.grid.x).sin();
  m.psi(0) = 0.0;
  m.psi(nodes - 1) = 0.0;
  return m;
}

WarpedMetric make_euclidean_cap(double radius, int nodes) {
  if (!(radius > 0.0)) throw parameter_error("euclidean_cap: radius must be positive");
  WarpedMetric m;
  m.grid = Grid::uniform(nodes);
  m.phi = Eigen::ArrayXd::Constant(nodes, radius);
  m.psi = radius * m.grid.x;
  m.end1 = EndKind::boundary;
  return m;
}

namespace {

// Smooth polar-angle profile theta(s) on [0,L] with theta' = 1/rho at the
// caps and theta ~ pi/2 across the middle plateau; psi = rho*sin(theta) is
// then a C^inf capped cylinder of radius rho with smooth pole closure.
Eigen::ArrayXd capped_theta(const Eigen::ArrayXd& s, double rho, double L) {
  const double lambda = M_PI * rho / (2.0 * std::tgamma(1.25));
  auto bump = [&](double u) { return std::exp(-std::pow(u / lambda, 4)); };
  const int n = static_cast<int>(s.size());
  Eigen::ArrayXd q(n);
  for (int i = 0; i < n; ++i) q(i) = (bump(s(i)) + bump(L - s(i))) / rho;
  Eigen::ArrayXd theta(n);
  theta(0) = 0.0;
  for (int i = 0; i + 1 < n; ++i)
    theta(i + 1) = theta(i) + 0.5 * (q(i) + q(i + 1)) * (s(i + 1) - s(i));
  theta *= M_PI / theta(n - 1);
  return theta;
}

}  // namespace

WarpedMetric make_cylinder_capped(double radius, double length, int nodes) {
  if (!(radius > 0.0)) throw parameter_error("cylinder_capped: radius must be positive");
  if (!(length > M_PI * radius))
    throw parameter_error("cylinder_capped: length must exceed pi*radius");
  WarpedMetric m;
  m.grid = Grid::uniform(nodes);
  m.phi = Eigen::ArrayXd::Constant(nodes, length);
  const Eigen::ArrayXd s = length * m.grid.x;
  const Eigen::ArrayXd theta = capped_theta(s, radius, length);
  m.psi = radius * theta.sin();
  m.psi(0) = 0.0;
  m.psi(nodes - 1) = 0.0;
  return m;
}

WarpedMetric make_dumbbell(double bulb_radius, double neck_radius, double length,
                           double neck_width, int necks, int nodes) {
  if (!(neck_radius > 0.0 && neck_radius < bulb_radius))
    throw parameter_error("dumbbell: need 0 < neck_radius < bulb_radius");
  if (necks != 1 && necks != 2) throw parameter_error("dumbbell: necks must be 1 or 2");
  WarpedMetric m = make_cylinder_capped(bulb_radius, length, nodes);
  const Eigen::ArrayXd s = length * m.grid.x;
  const double a = 1.0 - neck_radius / bulb_radius;
  Eigen::ArrayXd factor = Eigen::ArrayXd::Ones(nodes);
  for (int k = 1; k <= necks; ++k) {
    const double sc = length * k / (necks + 1.0);
    factor -= a * (-((s - sc) / neck_width).square()).exp();
  }
  m.psi *= factor;
  m.psi(0) = 0.0;
  m.psi(nodes - 1) = 0.0;
  return m;
}

}  // namespace ricci
