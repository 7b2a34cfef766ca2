#include "dbar/domains.hpp"

#include <cmath>
#include <random>

#include <Eigen/Dense>

namespace dbar {

AnalyticField GraphDomain::rho_field() const {
  AnalyticField sig = sigma;
  int nn = n;
  return {2 * n, sig.max_order, [sig, nn](const Eigen::VectorXd& x, const JetSpace& sp) {
            std::vector<Jet> w;
            w.reserve(2 * nn - 1);
            for (int v = 0; v < 2 * nn - 1; ++v) w.push_back(Jet::variable(sp, v, x[v]));
            Jet s = af_compose(sig, w);
            return s - Jet::variable(sp, 2 * nn - 1, x[2 * nn - 1]);
          }};
}

GraphDomain make_graph_domain(const AnalyticField& sigma, int n, const Eigen::VectorXd& box_lo,
                              const Eigen::VectorXd& box_hi, double sample_radius) {
  GraphDomain d;
  d.n = n;
  d.sigma = sigma;
  d.box_lo = box_lo;
  d.box_hi = box_hi;
  d.sample_radius = sample_radius;

  int m = 2 * n - 1;
  const JetSpace& sp1 = JetSpace::isotropic(m, 1);
  auto grad_norm = [&](const Eigen::VectorXd& w) {
    Jet s = sigma.eval(w, sp1);
    double g2 = 0;
    std::vector<int> e(m, 0);
    for (int v = 0; v < m; ++v) {
      e[v] = 1;
      g2 += std::norm(s.deriv(e));
      e[v] = 0;
    }
    return std::sqrt(g2);
  };

  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double L = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Eigen::VectorXd dir(m);
    for (int v = 0; v < m; ++v) dir[v] = gauss(rng);
    dir.normalize();
    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
      Eigen::VectorXd w = dir * (sample_radius * frac);
      // short hill climb along the gradient-ascent of |grad sigma|
      double best = grad_norm(w);
      double step = 0.1 * sample_radius;
      for (int it = 0; it < 20; ++it) {
        bool improved = false;
        for (int v = 0; v < m; ++v)
          for (int sgn : {-1, 1}) {
            Eigen::VectorXd ww = w;
            ww[v] += sgn * step;
            if (ww.norm() > sample_radius) ww *= sample_radius / ww.norm();
            double val = grad_norm(ww);
            if (val > best) {
              best = val;
              w = ww;
              improved = true;
            }
          }
        if (!improved) step *= 0.5;
        if (step < 1e-4 * sample_radius) break;
      }
      L = std::max(L, best);
    }
  }
  d.grad_bound = L;
  if (L >= 1.0)
    throw GradientBoundViolated("make_graph_domain: |grad sigma| = " + std::to_string(L) +
                                " >= 1 on the sample region");
  return d;
}

bool direction_admissible(const Eigen::VectorXd& u, int n, double margin) {
  double yn = u[2 * n - 1];
  double tang = u.head(2 * n - 1).norm();
  return yn < -3.0 * tang - margin;
}

namespace {

// G(x, t) = y_n(x + t u) - sigma(proj(x + t u)); strictly decreasing in t for
// admissible u.
double ray_gap(const GraphDomain& dom, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
               double t) {
  Eigen::VectorXd p = x + t * u;
  return p[2 * dom.n - 1] - dom.sigma_at(dom.graph_coords(p));
}

double solve_ray(const GraphDomain& dom, const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
  double lo = 0, hi = 0;
  double g0 = ray_gap(dom, x, u, 0);
  if (g0 == 0) return 0;
  double step = 0.5;
  if (g0 > 0) {
    hi = step;
    while (ray_gap(dom, x, u, hi) > 0) {
      lo = hi;
      hi *= 2;
      if (hi > 1e6) throw std::runtime_error("directional root: bracket failure");
    }
  } else {
    lo = -step;
    while (ray_gap(dom, x, u, lo) < 0) {
      hi = lo;
      lo *= 2;
      if (lo < -1e6) throw std::runtime_error("directional root: bracket failure");
    }
    std::swap(lo, hi);
    if (lo > hi) std::swap(lo, hi);
  }
  // bisection then Newton polish
  for (int it = 0; it < 40; ++it) {
    double mid = 0.5 * (lo + hi);
    if (ray_gap(dom, x, u, mid) > 0)
      lo = mid;
    else
      hi = mid;
  }
  double t = 0.5 * (lo + hi);
  const JetSpace& sp = JetSpace::isotropic(1, 1);
  for (int it = 0; it < 60; ++it) {
    Eigen::VectorXd p = x + t * u;
    Jet tt = Jet::variable(sp, 0, 0.0);
    std::vector<Jet> w(2 * dom.n - 1, Jet(sp, 0.0));
    for (int v = 0; v < 2 * dom.n - 1; ++v) w[v] = Jet::constant(sp, p[v]) + u[v] * tt;
    Jet g = Jet::constant(sp, p[2 * dom.n - 1]) + u[2 * dom.n - 1] * tt - af_compose(dom.sigma, w);
    double gv = g.value().real(), gp = g.deriv({1}).real();
    double dt = gv / gp;
    t -= dt;
    if (std::abs(gv) < 1e-12 && std::abs(dt) < 1e-12) break;
  }
  return t;
}

}  // namespace

double DirectionalDefiningFunction::value(const Eigen::VectorXd& x) const {
  return -solve_ray(dom, x, u);
}

Jet DirectionalDefiningFunction::jet(const Eigen::VectorXd& x, const JetSpace& sp) const {
  // Newton on jets for G(x, t(x)) = 0; the jet order doubles per sweep, so
  // total_cap+1 sweeps always suffice.
  double t0 = solve_ray(dom, x, u);
  int m = 2 * dom.n;
  Jet t(sp, t0);
  std::vector<Jet> xs(m, Jet(sp, 0.0));
  for (int v = 0; v < m; ++v) xs[v] = Jet::variable(sp, v, x[v]);
  for (int sweep = 0; sweep <= sp.total_cap(); ++sweep) {
    std::vector<Jet> w(2 * dom.n - 1, Jet(sp, 0.0));
    for (int v = 0; v < 2 * dom.n - 1; ++v) w[v] = xs[v] + u[v] * t;
    Jet g = xs[m - 1] + u[m - 1] * t - af_compose(dom.sigma, w);
    // dG/dt along the ray
    const JetSpace& sp1 = JetSpace::isotropic(1, 1);
    Eigen::VectorXd p = x + t0 * u;
    Jet tt = Jet::variable(sp1, 0, 0.0);
    std::vector<Jet> w1(2 * dom.n - 1, Jet(sp1, 0.0));
    for (int v = 0; v < 2 * dom.n - 1; ++v) w1[v] = Jet::constant(sp1, p[v]) + u[v] * tt;
    Jet g1 = Jet::constant(sp1, p[m - 1]) + u[m - 1] * tt - af_compose(dom.sigma, w1);
    double gp = g1.deriv({1}).real();
    t -= g * (1.0 / gp);
  }
  return -t;
}

AnalyticField DirectionalDefiningFunction::field() const {
  DirectionalDefiningFunction self = *this;
  return {2 * dom.n, dom.sigma.max_order, [self](const Eigen::VectorXd& x, const JetSpace& sp) {
            return self.jet(x, sp);
          }};
}

DirectionalDefiningFunction directional_defining_function(const GraphDomain& dom,
                                                          const Eigen::VectorXd& u) {
  if (!direction_admissible(u, dom.n))
    throw std::invalid_argument("directional_defining_function: direction outside the cone");
  DirectionalDefiningFunction d;
  d.dom = dom;
  d.u = u.normalized();
  return d;
}

double boundary_distance(const GraphDomain& dom, const Eigen::VectorXd& x) {
  int m = 2 * dom.n - 1;
  Eigen::VectorXd xp = x.head(m);
  double yn = x[2 * dom.n - 1];
  const JetSpace& sp2 = JetSpace::isotropic(m, 2);

  auto dist2 = [&](const Eigen::VectorXd& w) {
    double s = dom.sigma_at(w);
    return (w - xp).squaredNorm() + (s - yn) * (s - yn);
  };

  double best = dist2(xp);
  Eigen::VectorXd bestw = xp;
  std::mt19937_64 rng(777);
  std::normal_distribution<double> gss(0.0, 1.0);
  for (int start = 0; start < 6; ++start) {
    Eigen::VectorXd w = xp;
    if (start > 0) {
      Eigen::VectorXd off(m);
      for (int v = 0; v < m; ++v) off[v] = gss(rng);
      w += 0.3 * start * off.normalized();
    }
    for (int it = 0; it < 60; ++it) {
      std::vector<Jet> wj;
      wj.reserve(m);
      for (int v = 0; v < m; ++v) wj.push_back(Jet::variable(sp2, v, w[v]));
      Jet s = af_compose(dom.sigma, wj);
      // D(w) = |w-xp|^2 + (sigma(w)-yn)^2
      Jet D(sp2, 0.0);
      for (int v = 0; v < m; ++v) {
        Jet dv = wj[v] - xp[v];
        D += dv * dv;
      }
      Jet e = s - yn;
      D += e * e;
      Eigen::VectorXd grad(m);
      Eigen::MatrixXd H(m, m);
      std::vector<int> ei(m, 0);
      for (int a = 0; a < m; ++a) {
        ei[a] = 1;
        grad[a] = D.deriv(ei).real();
        for (int b = 0; b < m; ++b) {
          ei[b] += 1;
          H(a, b) = D.deriv(ei).real();
          ei[b] -= 1;
        }
        ei[a] = 0;
      }
      if (grad.norm() < 1e-10) break;
      Eigen::MatrixXd Hd = H + 1e-8 * Eigen::MatrixXd::Identity(m, m);
      Eigen::VectorXd step = Hd.ldlt().solve(grad);
      double lam = 1.0;
      double cur = D.value().real();
      for (int ls = 0; ls < 30; ++ls) {
        Eigen::VectorXd wn = w - lam * step;
        if (dist2(wn) < cur) {
          w = wn;
          break;
        }
        lam *= 0.5;
        if (ls == 29) w -= 1e-3 * grad;  // fallback: small gradient step
      }
    }
    double val = dist2(w);
    if (val < best) {
      best = val;
      bestw = w;
    }
  }
  return std::min(1.0, std::sqrt(best));
}

bool ConeBasis::check_extreme_rays(double factor) const {
  for (int j = 0; j < V.cols(); ++j) {
    Eigen::VectorXd v = V.col(j);
    if (!(v[2 * n - 1] < -factor * v.head(2 * n - 1).norm())) return false;
  }
  // cone condition is convex in the generators, so the rays suffice; check
  // independence too
  return std::abs(Eigen::FullPivLU<Eigen::MatrixXd>(V).determinant()) > 1e-12;
}

ConeBasis make_cone_basis(int n, double eps) {
  int m = 2 * n;
  ConeBasis cb;
  cb.n = n;
  cb.V.resize(m, m);
  for (int l = 0; l < m - 1; ++l) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
    v[l] = eps;
    v[m - 1] = -1.0;
    cb.V.col(l) = v.normalized();
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
  for (int l = 0; l < m - 1; ++l) v[l] = -eps / std::sqrt(double(m - 1));
  v[m - 1] = -1.0;
  cb.V.col(m - 1) = v.normalized();
  return cb;
}

Eigen::VectorXcd holomorphic_gradient(const AnalyticField& rho, int n, const Eigen::VectorXd& x) {
  const JetSpace& sp = JetSpace::isotropic(2 * n, 1);
  Jet r = rho.eval(x, sp);
  Eigen::VectorXcd g(n);
  std::vector<int> e(2 * n, 0);
  for (int j = 0; j < n; ++j) {
    e[2 * j] = 1;
    cd dx = r.deriv(e);
    e[2 * j] = 0;
    e[2 * j + 1] = 1;
    cd dy = r.deriv(e);
    e[2 * j + 1] = 0;
    g[j] = 0.5 * (dx - cd(0, 1) * dy);
  }
  return g;
}

double support_margin(const AnalyticField& rho, int n,
                      const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& samples) {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& [z, zeta] : samples) {
    Eigen::VectorXcd dr = holomorphic_gradient(rho, n, zeta);
    cd pairing = 0;
    for (int j = 0; j < n; ++j)
      pairing += dr[j] * (cd(zeta[2 * j], zeta[2 * j + 1]) - cd(z[2 * j], z[2 * j + 1]));
    double rz = rho.value(z).real(), rzeta = rho.value(zeta).real();
    double denom = rzeta - rz + (zeta - z).squaredNorm();
    if (denom <= 0)
      throw std::domain_error("support_margin: nonpositive denominator (bad sample)");
    worst = std::min(worst, std::abs(pairing) / denom);
  }
  return worst;
}

bool ellipsoid_membership(const Ellipsoid& E, const Eigen::VectorXd& z, int ntheta) {
  int n = E.n;
  Eigen::VectorXd w = z - E.center;
  double bound = std::sqrt(E.r / E.c0);
  if (w.norm() >= bound) return false;
  double r0 = E.rho.value(E.center).real();
  double worst = 0;
  for (int k = 0; k < ntheta; ++k) {
    double th = 2 * M_PI * k / ntheta;
    cd ph(std::cos(th), std::sin(th));
    Eigen::VectorXd p = E.center;
    for (int j = 0; j < n; ++j) {
      cd wj(w[2 * j], w[2 * j + 1]);
      cd r = ph * wj;
      p[2 * j] += r.real();
      p[2 * j + 1] += r.imag();
    }
    worst = std::max(worst, std::abs(r0 - E.rho.value(p).real()));
  }
  double theta_corr = E.rho_lipschitz * w.norm() * (M_PI / ntheta);
  return worst + theta_corr < E.r / E.c0;
}

AnalyticField af_sigma_halfspace(int n) { return af_constant(2 * n - 1, 0.0); }

AnalyticField af_sigma_paraboloid(int n, double kappa) {
  int m = 2 * n - 1;
  return {m, 1 << 20, [m, kappa](const Eigen::VectorXd& w, const JetSpace& sp) {
            Jet s(sp, 0.0);
            for (int v = 0; v < m; ++v) {
              Jet d = Jet::variable(sp, v, w[v]);
              s += d * d;
            }
            return s * kappa;
          }};
}

AnalyticField af_sigma_ballchart(int n, double R) {
  int m = 2 * n - 1;
  return {m, 1 << 20, [m, R](const Eigen::VectorXd& w, const JetSpace& sp) {
            Jet s(sp, 0.0);
            for (int v = 0; v < m; ++v) {
              Jet d = Jet::variable(sp, v, w[v]);
              s += d * d;
            }
            return R - jet_sqrt(R * R - s);
          }};
}

}  // namespace dbar
