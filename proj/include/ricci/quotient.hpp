#ifndef RICCI_QUOTIENT_HPP
#define RICCI_QUOTIENT_HPP

#include <optional>
#include <vector>

#include "ricci/curvature.hpp"
#include "ricci/metric.hpp"

namespace ricci {

/// A point of the symmetric manifold up to isometry: arclength s from the
/// x=0 end and polar fiber angle alpha in [0,pi] relative to a reference
/// direction.
struct QuotientPoint {
  double s = 0.0;
  double alpha = 0.0;
};

struct BallSpec {
  QuotientPoint center;
  double radius = 0.0;
};

/// Surface area of the unit k-sphere.
double unit_sphere_area(int k);

/// 2D mesh on the (s, alpha) quotient carrying the metric ds^2 + psi^2 dalpha^2
/// and the manifold volume weights.  Pole rows collapse to single nodes;
/// alpha is cell-centered with `bands` cells on [0, pi].
class QuotientMesh {
 public:
  QuotientMesh(const WarpedMetric& m, int alpha_bands = 192);

  const WarpedMetric& metric() const { return m_; }
  int rows() const { return static_cast<int>(s_.size()); }
  int bands() const { return bands_; }
  int node_count() const { return node_count_; }
  bool pole0() const { return m_.end0 == EndKind::pole; }
  bool pole1() const { return m_.end1 == EndKind::pole; }

  int node(int i, int j) const;
  int row_of(int node) const { return node_row_[node]; }
  int band_of(int node) const { return node_band_[node]; }  // -1 for poles
  double s(int i) const { return s_(i); }
  double alpha(int j) const { return (j + 0.5) * dalpha_; }
  double dalpha() const { return dalpha_; }
  double psi_row(int i) const { return m_.psi(i); }
  double axis_length() const { return s_(rows() - 1); }

  /// Manifold volume weight of a node (integrates to the total volume).
  const Eigen::ArrayXd& weights() const { return weight_; }
  /// Local cell diameter (used for fractional ball coverage).
  double cell_diameter(int node) const { return diam_[node]; }

  struct Face {
    int a, b;
    double conductance;  // divergence-form Laplacian coefficient
  };
  const std::vector<Face>& faces() const { return faces_; }

  /// Crude uniform bound on the mesh discretization scale:
  /// max s-spacing + max metric alpha-spacing.
  double error_bound() const { return err_bound_; }

  /// Sample a per-row field (e.g. a curvature array) at every node.
  Eigen::ArrayXd spread_rows(const Eigen::ArrayXd& row_values) const;

  /// Bilinear interpolation of a node field at a quotient point.
  double interp(const Eigen::ArrayXd& field, QuotientPoint p) const;

 private:
  WarpedMetric m_;
  Eigen::ArrayXd s_;
  int bands_;
  double dalpha_;
  int node_count_;
  std::vector<int> node_row_, node_band_;
  Eigen::ArrayXd weight_;
  std::vector<double> diam_;
  std::vector<Face> faces_;
  double err_bound_;
  std::vector<int> row_first_;  // first node id of each row
};

/// First-order fast-marching solve of |grad u| = 1 from the source point.
/// Nodes farther than stop_radius may be left at +inf.
Eigen::ArrayXd fmm_distance(const QuotientMesh& mesh, QuotientPoint source,
                            double stop_radius = std::numeric_limits<double>::infinity());

struct BallVolume {
  double volume = 0.0;
  bool saturated = false;
};

/// Integral of a node field over {dist < r} with fractional edge cells.
double region_integral(const QuotientMesh& mesh, const Eigen::ArrayXd& dist,
                       double r, const Eigen::ArrayXd& node_values);
BallVolume ball_volume_from_distance(const QuotientMesh& mesh,
                                     const Eigen::ArrayXd& dist, double r);

// -- metric-level operations ----------------------------------------------

double total_volume(const WarpedMetric& m);
BallVolume ball_volume(const WarpedMetric& m, const BallSpec& b, int alpha_bands = 192);
/// int |R|^q over the whole manifold or a ball.
double scalar_lp(const WarpedMetric& m, double q,
                 const std::optional<BallSpec>& region = std::nullopt,
                 int alpha_bands = 192);
double riemann_l2(const WarpedMetric& m,
                  const std::optional<BallSpec>& region = std::nullopt,
                  int alpha_bands = 192);
double ricci_lp_ball(const WarpedMetric& m, const BallSpec& b, double q,
                     int alpha_bands = 192);
/// Geodesic distance; exact arclength for pole sources, symmetrized FMM else.
double distance(const WarpedMetric& m, QuotientPoint p, QuotientPoint q,
                int alpha_bands = 192);

/// True if the point lies within half a cell of a pole end.
bool is_pole_point(const WarpedMetric& m, const QuotientPoint& p);

/// Exact 1D volume of a pole-centered ball: omega_{n-1} * int psi^{n-1} ds.
BallVolume pole_ball_volume(const WarpedMetric& m, double r);
/// 1D integral of a per-row integrand over a pole-centered ball
/// (whole manifold when r = +inf).
double pole_ball_integral(const WarpedMetric& m, const Eigen::ArrayXd& row_values,
                          double r);

}  // namespace ricci

#endif
