#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

namespace dbar {

/// Gauss-Legendre nodes and weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);
/// Gauss-Legendre nodes and weights on [a,b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

/// A list of quadrature nodes in R^d with weights.
struct QuadRule {
  std::vector<Eigen::VectorXd> pts;
  std::vector<double> w;
  int size() const { return static_cast<int>(pts.size()); }
  void append(const QuadRule& o);
  /// Keep only nodes with keep(x) true.
  QuadRule filtered(const std::function<bool(const Eigen::VectorXd&)>& keep) const;
};

/// Tensor Gauss-Legendre over an axis-aligned box.
QuadRule tensor_gauss(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                      const std::vector<int>& orders);

/// Tensor Gauss with each axis split into `panels` equal panels.
QuadRule tensor_gauss_paneled(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                              const std::vector<int>& orders, const std::vector<int>& panels);

/// Spherical rule in R^4 centered at `c`: x = c + r*theta(phi1,phi2,phi3),
/// weight includes the Jacobian r^3 sin^2(phi1) sin(phi2). Radial panels are
/// geometrically refined toward r=0 (`radial_panels` panels, ratio 1/2) so
/// kernels with |x-c|^{1-2n} singularities integrate cleanly.
QuadRule polar4(const Eigen::VectorXd& c, double rmax, int nr, int nang, int radial_panels = 6);

/// Dyadic difference-of-boxes decomposition: the annulus box(s) \ box(s/2)
/// around `c` with per-axis half-widths s*scale[a], expressed as a list of
/// disjoint boxes (two per axis).
std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> box_annulus(
    const Eigen::VectorXd& c, const Eigen::VectorXd& half_width);

}  // namespace dbar
