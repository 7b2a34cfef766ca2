#include "dbar/quad.hpp"

#include <cmath>

namespace dbar {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton from the Chebyshev-like initial guess
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2 * k + 1) * t * p1 - k * p2) / (k + 1);
      }
      double dp = n * (t * p0 - p1) / (t * t - 1.0);
      double dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1.0, p1 = 0.0;
    for (int k = 0; k < n; ++k) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2 * k + 1) * t * p1 - k * p2) / (k + 1);
    }
    double dp = n * (t * p0 - p1) / (t * t - 1.0);
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  gauss_legendre(n, x, w);
  double m = 0.5 * (a + b), s = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    x[i] = m + s * x[i];
    w[i] *= s;
  }
}

void QuadRule::append(const QuadRule& o) {
  pts.insert(pts.end(), o.pts.begin(), o.pts.end());
  w.insert(w.end(), o.w.begin(), o.w.end());
}

QuadRule QuadRule::filtered(const std::function<bool(const Eigen::VectorXd&)>& keep) const {
  QuadRule r;
  for (int i = 0; i < size(); ++i)
    if (keep(pts[i])) {
      r.pts.push_back(pts[i]);
      r.w.push_back(w[i]);
    }
  return r;
}

QuadRule tensor_gauss(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                      const std::vector<int>& orders) {
  int d = static_cast<int>(lo.size());
  std::vector<std::vector<double>> xs(d), ws(d);
  for (int a = 0; a < d; ++a) gauss_legendre(orders[a], lo[a], hi[a], xs[a], ws[a]);
  QuadRule r;
  std::vector<int> idx(d, 0);
  while (true) {
    Eigen::VectorXd p(d);
    double w = 1.0;
    for (int a = 0; a < d; ++a) {
      p[a] = xs[a][idx[a]];
      w *= ws[a][idx[a]];
    }
    r.pts.push_back(p);
    r.w.push_back(w);
    int a = d - 1;
    for (; a >= 0; --a) {
      if (++idx[a] < orders[a]) break;
      idx[a] = 0;
    }
    if (a < 0) break;
  }
  return r;
}

QuadRule tensor_gauss_paneled(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                              const std::vector<int>& orders, const std::vector<int>& panels) {
  int d = static_cast<int>(lo.size());
  std::vector<std::vector<double>> xs(d), ws(d);
  for (int a = 0; a < d; ++a) {
    double len = (hi[a] - lo[a]) / panels[a];
    for (int p = 0; p < panels[a]; ++p) {
      std::vector<double> x, w;
      gauss_legendre(orders[a], lo[a] + p * len, lo[a] + (p + 1) * len, x, w);
      xs[a].insert(xs[a].end(), x.begin(), x.end());
      ws[a].insert(ws[a].end(), w.begin(), w.end());
    }
  }
  QuadRule r;
  int d0 = static_cast<int>(xs[0].size());
  std::vector<int> sizes(d);
  for (int a = 0; a < d; ++a) sizes[a] = static_cast<int>(xs[a].size());
  std::vector<int> idx(d, 0);
  (void)d0;
  while (true) {
    Eigen::VectorXd p(d);
    double w = 1.0;
    for (int a = 0; a < d; ++a) {
      p[a] = xs[a][idx[a]];
      w *= ws[a][idx[a]];
    }
    r.pts.push_back(p);
    r.w.push_back(w);
    int a = d - 1;
    for (; a >= 0; --a) {
      if (++idx[a] < sizes[a]) break;
      idx[a] = 0;
    }
    if (a < 0) break;
  }
  return r;
}

QuadRule polar4(const Eigen::VectorXd& c, double rmax, int nr, int nang, int radial_panels) {
  // radial panels [rmax/2^{k+1}, rmax/2^k]
  std::vector<double> rx, rw;
  for (int p = 0; p < radial_panels; ++p) {
    double hi = rmax / std::pow(2.0, p);
    double lo = (p == radial_panels - 1) ? 0.0 : hi / 2.0;
    std::vector<double> x, w;
    gauss_legendre(nr, lo, hi, x, w);
    rx.insert(rx.end(), x.begin(), x.end());
    rw.insert(rw.end(), w.begin(), w.end());
  }
  std::vector<double> p1x, p1w, p2x, p2w, p3x, p3w;
  gauss_legendre(nang, 0.0, M_PI, p1x, p1w);
  gauss_legendre(nang, 0.0, M_PI, p2x, p2w);
  gauss_legendre(nang, 0.0, 2.0 * M_PI, p3x, p3w);
  QuadRule r;
  for (size_t i = 0; i < rx.size(); ++i)
    for (int a = 0; a < nang; ++a)
      for (int b = 0; b < nang; ++b)
        for (int g = 0; g < nang; ++g) {
          double s1 = std::sin(p1x[a]), c1 = std::cos(p1x[a]);
          double s2 = std::sin(p2x[b]), c2 = std::cos(p2x[b]);
          double s3 = std::sin(p3x[g]), c3 = std::cos(p3x[g]);
          Eigen::VectorXd p(4);
          p[0] = c[0] + rx[i] * c1;
          p[1] = c[1] + rx[i] * s1 * c2;
          p[2] = c[2] + rx[i] * s1 * s2 * c3;
          p[3] = c[3] + rx[i] * s1 * s2 * s3;
          double w = rw[i] * p1w[a] * p2w[b] * p3w[g] * rx[i] * rx[i] * rx[i] * s1 * s1 * s2;
          r.pts.push_back(p);
          r.w.push_back(w);
        }
  return r;
}

std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> box_annulus(
    const Eigen::VectorXd& c, const Eigen::VectorXd& half_width) {
  // Peel one axis at a time: outer box minus inner (half-size) box.
  int d = static_cast<int>(c.size());
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> boxes;
  for (int a = 0; a < d; ++a) {
    for (int side = 0; side < 2; ++side) {
      Eigen::VectorXd lo(d), hi(d);
      for (int b = 0; b < d; ++b) {
        double wfull = half_width[b], whalf = 0.5 * half_width[b];
        if (b < a) {
          lo[b] = c[b] - whalf;
          hi[b] = c[b] + whalf;
        } else if (b == a) {
          if (side == 0) {
            lo[b] = c[b] - wfull;
            hi[b] = c[b] - whalf;
          } else {
            lo[b] = c[b] + whalf;
            hi[b] = c[b] + wfull;
          }
        } else {
          lo[b] = c[b] - wfull;
          hi[b] = c[b] + wfull;
        }
      }
      boxes.emplace_back(lo, hi);
    }
  }
  return boxes;
}

}  // namespace dbar
