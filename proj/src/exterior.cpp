#include "dbar/exterior.hpp"

#include <cmath>

namespace dbar {

double form_max_abs(const FormC& f) {
  double m = 0;
  for (const auto& [mo, c] : f.terms) m = std::max(m, std::abs(c));
  return m;
}

double form_abs_sum(const FormC& f) {
  double s = 0;
  for (const auto& [mo, c] : f.terms) s += std::abs(c);
  return s;
}

FormC MixedForm::at(const Eigen::VectorXd& x) const {
  FormC r(n);
  for (const auto& [m, c] : terms) {
    cd v = c.value(x);
    if (v != cd(0, 0)) r.terms.emplace(m, v);
  }
  return r;
}

MixedForm wedge(const MixedForm& a, const MixedForm& b) {
  if (a.n != b.n || a.product_space != b.product_space)
    throw std::invalid_argument("wedge: ambient dimension mismatch");
  MixedForm r(a.n, a.product_space);
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      Field prod = field_mul(ca, cb);
      if (s < 0) prod = field_scale(prod, -1.0);
      Mono m = ma | mb;
      auto it = r.terms.find(m);
      if (it == r.terms.end())
        r.terms.emplace(m, std::move(prod));
      else
        it->second = field_add(it->second, prod);
    }
  return r;
}

MixedForm dbar_apply(const MixedForm& f, Var v) {
  MixedForm r(f.n, f.product_space);
  int block = (v == Var::zeta && f.product_space) ? f.n : 0;
  Species sp = (v == Var::z) ? Species::dzbar : Species::dzetabar;
  for (const auto& [m, c] : f.terms) {
    for (int j = 0; j < f.n; ++j) {
      int bit = gen_bit(f.n, sp, j);
      if (m & (Mono(1) << bit)) continue;
      Field d = field_wirtinger_dbar(c, block + j);
      double sign = insert_sign_left(m, bit);
      Mono mm = m | (Mono(1) << bit);
      Field signed_d = (sign < 0) ? field_scale(d, -1.0) : d;
      auto it = r.terms.find(mm);
      if (it == r.terms.end())
        r.terms.emplace(mm, std::move(signed_d));
      else
        it->second = field_add(it->second, signed_d);
    }
  }
  return r;
}

MixedForm extract_bidegree(const MixedForm& f, int deg_z, int p, int q) {
  MixedForm r(f.n, f.product_space);
  for (const auto& [m, c] : f.terms)
    if (deg_dzbar(f.n, m) == deg_z && deg_dzeta(f.n, m) == p && deg_dzetabar(f.n, m) == q)
      r.terms.emplace(m, c);
  return r;
}

cd vol_factor(int n) {
  // dzeta_j ^ dzetabar_j = -2i dx_j ^ dy_j; sorting the interleaved product
  // into the canonical order costs (-1)^{n(n-1)/2}.
  cd f = std::pow(cd(0, -2), n);
  if (((n * (n - 1) / 2) % 2) == 1) f = -f;
  return f;
}

FormC pair_integrate(const std::function<FormC(const Eigen::VectorXd&)>& kernel_at,
                     const std::function<FormC(const Eigen::VectorXd&)>& g_at, int n,
                     const QuadRule& rule) {
  const Mono zeta_full = (Mono(1) << (2 * n)) - 1;
  const cd vf = vol_factor(n);
  FormC out(n);
  for (int i = 0; i < rule.size(); ++i) {
    FormC k = kernel_at(rule.pts[i]);
    FormC g = g_at(rule.pts[i]);
    if (k.empty() || g.empty()) continue;
    for (const auto& [ma, ca] : k.terms)
      for (const auto& [mb, cb] : g.terms) {
        int s = wedge_sign(ma, mb);
        if (s == 0) continue;
        Mono m = ma | mb;
        if ((m & zeta_full) != zeta_full) continue;  // need full zeta-degree
        out.add_term(m & ~zeta_full, ca * cb * vf * rule.w[i], s);
      }
  }
  return out;
}

FormC pair_integrate_at(const Eigen::VectorXd& z, const MixedForm& kernel, const MixedForm& g,
                        const QuadRule& rule) {
  if (g.product_space) throw std::invalid_argument("pair_integrate_at: g must live on C^n_zeta");
  int n = kernel.n;
  auto kernel_at = [&](const Eigen::VectorXd& zeta) {
    if (kernel.product_space) {
      Eigen::VectorXd x(4 * n);
      x.head(2 * n) = z;
      x.tail(2 * n) = zeta;
      return kernel.at(x);
    }
    return kernel.at(zeta);
  };
  auto g_at = [&](const Eigen::VectorXd& zeta) { return g.at(zeta); };
  return pair_integrate(kernel_at, g_at, n, rule);
}

}  // namespace dbar
