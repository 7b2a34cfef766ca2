#include "dbar/fields.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace dbar {

const JetSpace& raised_space(const JetSpace& sp, int var) {
  std::vector<int> caps = sp.group_caps();
  caps[sp.group_of_var()[var]] += 1;
  return JetSpace::get(sp.group_of_var(), caps, sp.total_cap() + 1);
}

Jet restrict_jet(const Jet& j, const JetSpace& target) {
  Jet r(target, 0.0);
  const JetSpace& src = j.space();
  for (int k = 0; k < target.nterms(); ++k) {
    int ks = src.index_of(target.exponent(k));
    if (ks >= 0) r.coeff(k) = j.coeff(ks);
  }
  return r;
}

cd AnalyticField::value(const Eigen::VectorXd& x) const {
  return eval(x, JetSpace::isotropic(dim, 0)).value();
}

AnalyticField af_constant(int dim, cd v) {
  return {dim, 1 << 20,
          [v](const Eigen::VectorXd&, const JetSpace& sp) { return Jet::constant(sp, v); }};
}

AnalyticField af_coordinate(int dim, int var) {
  return {dim, 1 << 20, [var](const Eigen::VectorXd& x, const JetSpace& sp) {
            return Jet::variable(sp, var, x[var]);
          }};
}

AnalyticField af_add(const AnalyticField& a, const AnalyticField& b) {
  return {a.dim, std::min(a.max_order, b.max_order),
          [a, b](const Eigen::VectorXd& x, const JetSpace& sp) {
            return a.eval(x, sp) + b.eval(x, sp);
          }};
}

AnalyticField af_sub(const AnalyticField& a, const AnalyticField& b) {
  return {a.dim, std::min(a.max_order, b.max_order),
          [a, b](const Eigen::VectorXd& x, const JetSpace& sp) {
            return a.eval(x, sp) - b.eval(x, sp);
          }};
}

AnalyticField af_mul(const AnalyticField& a, const AnalyticField& b) {
  return {a.dim, std::min(a.max_order, b.max_order),
          [a, b](const Eigen::VectorXd& x, const JetSpace& sp) {
            return a.eval(x, sp) * b.eval(x, sp);
          }};
}

AnalyticField af_div(const AnalyticField& a, const AnalyticField& b) {
  return {a.dim, std::min(a.max_order, b.max_order),
          [a, b](const Eigen::VectorXd& x, const JetSpace& sp) {
            return a.eval(x, sp) / b.eval(x, sp);
          }};
}

AnalyticField af_scale(const AnalyticField& a, cd s) {
  return {a.dim, a.max_order, [a, s](const Eigen::VectorXd& x, const JetSpace& sp) {
            return a.eval(x, sp) * s;
          }};
}

AnalyticField af_derivative(const AnalyticField& a, int var) {
  if (a.max_order < 1) throw std::domain_error("af_derivative: derivative budget exhausted");
  return {a.dim, a.max_order - 1, [a, var](const Eigen::VectorXd& x, const JetSpace& sp) {
            const JetSpace& up = raised_space(sp, var);
            return restrict_jet(a.eval(x, up).derivative(var), sp);
          }};
}

namespace {
AnalyticField wirtinger(const AnalyticField& a, int j, bool bar) {
  if (a.max_order < 1) throw std::domain_error("wirtinger: derivative budget exhausted");
  cd iw = bar ? cd(0, 0.5) : cd(0, -0.5);
  int vx = 2 * j, vy = 2 * j + 1;
  return {a.dim, a.max_order - 1, [a, vx, vy, iw](const Eigen::VectorXd& x, const JetSpace& sp) {
            const JetSpace& up1 = raised_space(sp, vx);
            const JetSpace& up = raised_space(up1, vy);
            Jet J = a.eval(x, up);
            Jet d = J.derivative(vx) * 0.5 + J.derivative(vy) * iw;
            return restrict_jet(d, sp);
          }};
}
}  // namespace

AnalyticField af_wirtinger_d(const AnalyticField& a, int j) { return wirtinger(a, j, false); }
AnalyticField af_wirtinger_dbar(const AnalyticField& a, int j) { return wirtinger(a, j, true); }

Jet af_compose(const AnalyticField& f, const std::vector<Jet>& args) {
  const JetSpace& sp = args.at(0).space();
  Eigen::VectorXd x0(f.dim);
  for (int i = 0; i < f.dim; ++i) {
    if (std::abs(args[i].value().imag()) > 1e-12)
      throw std::invalid_argument("af_compose: coordinates must be real-valued jets");
    x0[i] = args[i].value().real();
  }
  const JetSpace& inner = JetSpace::isotropic(f.dim, sp.total_cap());
  Jet F = f.eval(x0, inner);
  // nilpotent offsets
  std::vector<Jet> h;
  h.reserve(f.dim);
  for (int i = 0; i < f.dim; ++i) {
    Jet d = args[i];
    d.coeff(0) = 0.0;
    h.push_back(d);
  }
  Jet acc(sp, 0.0);
  for (int k = 0; k < inner.nterms(); ++k) {
    cd fk = F.coeff(k);
    if (fk == 0.0) continue;
    Jet term(sp, fk);
    const std::vector<int>& e = inner.exponent(k);
    for (int i = 0; i < f.dim; ++i)
      if (e[i]) term = term * h[i].pow_int(e[i]);
    acc += term;
  }
  return acc;
}

GridField::GridField(std::vector<int> shape, Eigen::VectorXd lo, Eigen::VectorXd hi)
    : shape_(std::move(shape)), lo_(std::move(lo)), hi_(std::move(hi)) {
  int r = rank();
  h_.resize(r);
  strides_.resize(r);
  long long n = 1;
  for (int a = r - 1; a >= 0; --a) {
    strides_[a] = n;
    n *= shape_[a];
    h_[a] = shape_[a] > 1 ? (hi_[a] - lo_[a]) / (shape_[a] - 1) : 0.0;
  }
  data_.assign(static_cast<size_t>(n), cd(0, 0));
}

long long GridField::flat(const std::vector<int>& idx) const {
  long long f = 0;
  for (int a = 0; a < rank(); ++a) f += strides_[a] * idx[a];
  return f;
}

Eigen::VectorXd GridField::point(const std::vector<int>& idx) const {
  Eigen::VectorXd x(rank());
  for (int a = 0; a < rank(); ++a) x[a] = lo_[a] + h_[a] * idx[a];
  return x;
}

namespace {
bool next_index(std::vector<int>& idx, const std::vector<int>& shape) {
  for (int a = static_cast<int>(shape.size()) - 1; a >= 0; --a) {
    if (++idx[a] < shape[a]) return true;
    idx[a] = 0;
  }
  return false;
}
}  // namespace

void GridField::fill(const std::function<cd(const Eigen::VectorXd&)>& f) {
  std::vector<int> idx(rank(), 0);
  long long k = 0;
  do {
    data_[k++] = f(point(idx));
  } while (next_index(idx, shape_));
}

cd GridField::interp_linear(const Eigen::VectorXd& x) const {
  int r = rank();
  std::vector<int> base(r);
  std::vector<double> t(r);
  for (int a = 0; a < r; ++a) {
    double u = (x[a] - lo_[a]) / h_[a];
    if (u < 0 || u > shape_[a] - 1) return 0.0;
    int i = std::min(static_cast<int>(u), shape_[a] - 2);
    base[a] = std::max(i, 0);
    t[a] = u - base[a];
  }
  cd acc = 0.0;
  for (int corner = 0; corner < (1 << r); ++corner) {
    double w = 1.0;
    long long f = 0;
    for (int a = 0; a < r; ++a) {
      int bit = (corner >> a) & 1;
      w *= bit ? t[a] : 1.0 - t[a];
      f += strides_[a] * (base[a] + bit);
    }
    if (w != 0.0) acc += w * data_[f];
  }
  return acc;
}

cd GridField::interp_cubic(const Eigen::VectorXd& x) const {
  int r = rank();
  std::vector<int> base(r);
  std::vector<std::array<double, 4>> w(r);
  for (int a = 0; a < r; ++a) {
    double u = (x[a] - lo_[a]) / h_[a];
    if (u < 0 || u > shape_[a] - 1) return 0.0;
    int i = static_cast<int>(u);
    i = std::max(1, std::min(i, shape_[a] - 3));
    double t = u - i;
    w[a] = {-0.5 * t + t * t - 0.5 * t * t * t, 1.0 - 2.5 * t * t + 1.5 * t * t * t,
            0.5 * t + 2.0 * t * t - 1.5 * t * t * t, -0.5 * t * t + 0.5 * t * t * t};
    base[a] = i - 1;
  }
  std::vector<int> off(r, 0);
  cd acc = 0.0;
  do {
    double ww = 1.0;
    long long f = 0;
    for (int a = 0; a < r; ++a) {
      ww *= w[a][off[a]];
      f += strides_[a] * (base[a] + off[a]);
    }
    if (ww != 0.0) acc += ww * data_[f];
  } while (next_index(off, std::vector<int>(r, 4)));
  return acc;
}

namespace {
// Fornberg weights for the m-th derivative at x0 on the given nodes.
std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int m) {
  int n = static_cast<int>(xs.size()) - 1;
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0, c4 = xs[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    int mn = std::min(i, m);
    double c2 = 1.0, c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = c[i][m];
  return w;
}
}  // namespace

GridField GridField::fd_derivative(int axis, int fd_order) const {
  if (fd_order != 2 && fd_order != 4 && fd_order != 6)
    throw std::invalid_argument("fd_derivative: order must be 2, 4 or 6");
  int stencil = fd_order + 1;
  if (shape_[axis] < stencil)
    throw std::domain_error("fd_derivative: stencil exceeds grid");
  GridField out(shape_, lo_, hi_);
  double h = h_[axis];
  int n = shape_[axis];
  // Per-position weights (shifted stencils near the edges keep the order).
  std::vector<std::vector<double>> wtab(n);
  std::vector<int> start(n);
  for (int i = 0; i < n; ++i) {
    int s = std::max(0, std::min(i - fd_order / 2, n - stencil));
    start[i] = s;
    std::vector<double> nodes(stencil);
    for (int k = 0; k < stencil; ++k) nodes[k] = (s + k - i) * h;
    wtab[i] = fd_weights(0.0, nodes, 1);
  }
  std::vector<int> idx(rank(), 0);
  do {
    int i = idx[axis];
    long long f0 = flat(idx) - strides_[axis] * i;
    cd acc = 0.0;
    for (int k = 0; k < stencil; ++k) acc += wtab[i][k] * data_[f0 + strides_[axis] * (start[i] + k)];
    out.data_[flat(idx)] = acc;
  } while (next_index(idx, shape_));
  return out;
}

double GridField::max_abs() const {
  double m = 0;
  for (const cd& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double GridField::l1_mass() const {
  double cell = 1.0;
  for (int a = 0; a < rank(); ++a) cell *= h_[a] > 0 ? h_[a] : 1.0;
  double s = 0;
  for (const cd& v : data_) s += std::abs(v);
  return s * cell;
}

void GridField::save(const std::string& path_prefix, const std::string& component) const {
  std::ofstream bin(path_prefix + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("GridField::save: cannot open " + path_prefix + ".bin");
  for (const cd& v : data_) {
    double re = v.real(), im = v.imag();
    bin.write(reinterpret_cast<const char*>(&re), sizeof(double));
    bin.write(reinterpret_cast<const char*>(&im), sizeof(double));
  }
  nlohmann::json j;
  j["shape"] = shape_;
  j["box_min"] = std::vector<double>(lo_.data(), lo_.data() + lo_.size());
  j["box_max"] = std::vector<double>(hi_.data(), hi_.data() + hi_.size());
  j["component"] = component;
  std::ofstream side(path_prefix + ".json");
  side << j.dump(2) << "\n";
}

GridField GridField::load(const std::string& path_prefix) {
  std::ifstream side(path_prefix + ".json");
  if (!side) throw std::runtime_error("GridField::load: missing sidecar " + path_prefix + ".json");
  nlohmann::json j;
  side >> j;
  std::vector<int> shape = j["shape"].get<std::vector<int>>();
  std::vector<double> lo = j["box_min"].get<std::vector<double>>();
  std::vector<double> hi = j["box_max"].get<std::vector<double>>();
  GridField g(shape, Eigen::Map<Eigen::VectorXd>(lo.data(), lo.size()),
              Eigen::Map<Eigen::VectorXd>(hi.data(), hi.size()));
  std::ifstream bin(path_prefix + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("GridField::load: missing data " + path_prefix + ".bin");
  for (long long k = 0; k < g.size(); ++k) {
    double re, im;
    bin.read(reinterpret_cast<char*>(&re), sizeof(double));
    bin.read(reinterpret_cast<char*>(&im), sizeof(double));
    g[k] = cd(re, im);
  }
  return g;
}

int Field::dim() const {
  if (analytic) return analytic->dim;
  if (grid) return grid->rank();
  return 0;
}

cd Field::value(const Eigen::VectorXd& x) const {
  if (analytic) return analytic->value(x);
  if (grid) return grid->interp_cubic(x);
  return 0.0;
}

namespace {
GridField sample_on(const AnalyticField& a, const GridField& geom) {
  GridField g(geom.shape(), geom.lo(), geom.hi());
  g.fill([&](const Eigen::VectorXd& x) { return a.value(x); });
  return g;
}
}  // namespace

Field field_add(const Field& a, const Field& b) {
  if (a.is_analytic() && b.is_analytic()) return Field(af_add(*a.analytic, *b.analytic));
  const GridField& geom = a.grid ? *a.grid : *b.grid;
  GridField ga = a.grid ? *a.grid : sample_on(*a.analytic, geom);
  GridField gb = b.grid ? *b.grid : sample_on(*b.analytic, geom);
  for (long long k = 0; k < ga.size(); ++k) ga[k] += gb[k];
  return Field(std::move(ga));
}

Field field_mul(const Field& a, const Field& b) {
  if (a.is_analytic() && b.is_analytic()) return Field(af_mul(*a.analytic, *b.analytic));
  const GridField& geom = a.grid ? *a.grid : *b.grid;
  GridField ga = a.grid ? *a.grid : sample_on(*a.analytic, geom);
  GridField gb = b.grid ? *b.grid : sample_on(*b.analytic, geom);
  for (long long k = 0; k < ga.size(); ++k) ga[k] *= gb[k];
  return Field(std::move(ga));
}

Field field_scale(const Field& a, cd s) {
  if (a.is_analytic()) return Field(af_scale(*a.analytic, s));
  GridField g = *a.grid;
  for (long long k = 0; k < g.size(); ++k) g[k] *= s;
  return Field(std::move(g));
}

Field field_wirtinger_dbar(const Field& f, int j) {
  if (f.is_analytic()) return Field(af_wirtinger_dbar(*f.analytic, j));
  GridField dx = f.grid->fd_derivative(2 * j, f.fd_order);
  GridField dy = f.grid->fd_derivative(2 * j + 1, f.fd_order);
  for (long long k = 0; k < dx.size(); ++k) dx[k] = 0.5 * (dx[k] + cd(0, 1) * dy[k]);
  Field out(std::move(dx));
  out.fd_order = f.fd_order;
  return out;
}

}  // namespace dbar
