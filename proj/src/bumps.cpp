#include "dbar/bumps.hpp"

#include <cmath>

namespace dbar {

Jet jet_expm1t(const Jet& t) {
  if (t.value().real() <= 0.0) return Jet(t.space(), 0.0);
  return jet_exp(-t.reciprocal());
}

Jet jet_smoothstep(const Jet& u) {
  double uv = u.value().real();
  if (uv <= 0.0) return Jet(u.space(), 1.0);
  if (uv >= 1.0) return Jet(u.space(), 0.0);
  Jet a = jet_expm1t(1.0 - u);
  Jet b = jet_expm1t(u);
  return a / (a + b);
}

double smoothstep(double u) {
  if (u <= 0.0) return 1.0;
  if (u >= 1.0) return 0.0;
  double a = std::exp(-1.0 / (1.0 - u)), b = std::exp(-1.0 / u);
  return a / (a + b);
}

AnalyticField af_radial_bump(int dim, const Eigen::VectorXd& c, double r) {
  return {dim, 1 << 20, [c, r, dim](const Eigen::VectorXd& x, const JetSpace& sp) {
            Jet t(sp, 0.0);
            for (int v = 0; v < dim; ++v) {
              Jet d = Jet::variable(sp, v, x[v]) - c[v];
              t += d * d;
            }
            t *= 1.0 / (r * r);
            if (t.value().real() >= 1.0) return Jet(sp, 0.0);
            return jet_exp(1.0 - (1.0 - t).reciprocal());
          }};
}

AnalyticField af_plateau_bump(int dim, const Eigen::VectorXd& c, double r_in, double r_out) {
  double a = r_in * r_in, b = r_out * r_out;
  return {dim, 1 << 20, [c, a, b, dim](const Eigen::VectorXd& x, const JetSpace& sp) {
            Jet t(sp, 0.0);
            for (int v = 0; v < dim; ++v) {
              Jet d = Jet::variable(sp, v, x[v]) - c[v];
              t += d * d;
            }
            return jet_smoothstep((t - a) * (1.0 / (b - a)));
          }};
}

}  // namespace dbar
