#pragma once

#include <stdexcept>
#include <vector>

#include "dbar/fields.hpp"

namespace dbar {

struct GradientBoundViolated : std::runtime_error {
  explicit GradientBoundViolated(const std::string& m) : std::runtime_error(m) {}
};

/// Special Lipschitz graph domain omega = { y_n > sigma(z', x_n) } in C^n.
/// Real coordinates are ordered (x_1, y_1, ..., x_n, y_n); the graph
/// variables w = (z', x_n) are all real coordinates except the last one.
struct GraphDomain {
  int n = 0;
  AnalyticField sigma;  // on R^{2n-1}
  double grad_bound = 0;
  double sample_radius = 1;
  Eigen::VectorXd box_lo, box_hi;

  Eigen::VectorXd graph_coords(const Eigen::VectorXd& x) const {
    Eigen::VectorXd w(2 * n - 1);
    w.head(2 * n - 1) = x.head(2 * n - 1);
    return w;
  }
  double sigma_at(const Eigen::VectorXd& w) const { return sigma.value(w).real(); }
  /// Canonical defining function rho(x) = sigma(z',x_n) - y_n (negative in omega).
  double rho(const Eigen::VectorXd& x) const { return sigma_at(graph_coords(x)) - x[2 * n - 1]; }
  bool inside(const Eigen::VectorXd& x) const { return rho(x) < 0; }
  /// The canonical defining function as a field on R^{2n}.
  AnalyticField rho_field() const;
};

/// Builds a graph domain; estimates L = sup |grad sigma| over the ball
/// |w| <= sample_radius and rejects L >= 1.
GraphDomain make_graph_domain(const AnalyticField& sigma, int n, const Eigen::VectorXd& box_lo,
                              const Eigen::VectorXd& box_hi, double sample_radius = 1.0);

/// rho_u: the unique defining function with D_u rho_u == 1 along an
/// admissible direction u (u inside {y_n < -3|(z',x_n)|}).
struct DirectionalDefiningFunction {
  GraphDomain dom;
  Eigen::VectorXd u;
  /// Signed time -t* with dom-boundary hit at x + t* u.
  double value(const Eigen::VectorXd& x) const;
  Jet jet(const Eigen::VectorXd& x, const JetSpace& sp) const;
  AnalyticField field() const;
};

bool direction_admissible(const Eigen::VectorXd& u, int n, double margin = 1e-6);
DirectionalDefiningFunction directional_defining_function(const GraphDomain& dom,
                                                          const Eigen::VectorXd& u);

/// delta(x) = min(1, dist(x, b omega)) by damped-Newton projection with
/// multistart.
double boundary_distance(const GraphDomain& dom, const Eigen::VectorXd& x);

/// Real linearly independent unit vectors spanning a cone inside
/// {y_n < -3|(z',x_n)|}.
struct ConeBasis {
  Eigen::MatrixXd V;  // 2n x 2n, columns are the basis vectors
  int n = 0;
  bool check_extreme_rays(double factor = 3.0) const;
};

/// Default admissible basis: v_l = normalize(eps * t_l - e_{y_n}).
ConeBasis make_cone_basis(int n, double eps = 0.3);

/// min over samples of |d rho(zeta).(zeta-z)| / (rho(zeta)-rho(z)+|z-zeta|^2).
/// Throws when a denominator is nonpositive (sample outside the admissible
/// region).
double support_margin(const AnalyticField& rho, int n,
                      const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& samples);

/// Complex gradient d rho(zeta) = (d rho / d zeta_j)_j via exact jets.
Eigen::VectorXcd holomorphic_gradient(const AnalyticField& rho, int n, const Eigen::VectorXd& x);

struct Ellipsoid {
  Eigen::VectorXd center;  // zeta in R^{2n}
  double r = 0;
  AnalyticField rho;
  int n = 0;
  double c0 = 1;
  double rho_lipschitz = 2.0;  // used for the conservative theta correction
};

/// Membership per the anisotropic definition with a 64-point theta grid;
/// conservative via the Lipschitz correction.
bool ellipsoid_membership(const Ellipsoid& E, const Eigen::VectorXd& z, int ntheta = 64);

// Scenario defining functions.
AnalyticField af_sigma_halfspace(int n);
AnalyticField af_sigma_paraboloid(int n, double kappa);
AnalyticField af_sigma_ballchart(int n, double R);

}  // namespace dbar
