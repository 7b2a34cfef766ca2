#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dbar/exterior.hpp"
#include "dbar/fields.hpp"
#include "dbar/quad.hpp"
#include "test_util.hpp"

using namespace dbar;
using namespace dbar::testing;

TEST_CASE("jet arithmetic matches hand derivatives") {
  const JetSpace& sp = JetSpace::isotropic(2, 3);
  Eigen::VectorXd x(2);
  x << 0.7, -0.3;
  Jet X = Jet::variable(sp, 0, x[0]);
  Jet Y = Jet::variable(sp, 1, x[1]);
  // f = exp(x*y) / (1 + x^2)
  Jet f = jet_exp(X * Y) / (1.0 + X * X);
  double fx = std::exp(x[0] * x[1]) / (1 + x[0] * x[0]);
  CHECK(std::abs(f.value() - fx) < 1e-14);
  // d/dx: (y*exp(xy)(1+x^2) - exp(xy)*2x) / (1+x^2)^2
  double dfdx = std::exp(x[0] * x[1]) * (x[1] * (1 + x[0] * x[0]) - 2 * x[0]) /
                std::pow(1 + x[0] * x[0], 2);
  CHECK(std::abs(f.deriv({1, 0}) - dfdx) < 1e-13);

  // third mixed derivative vs central differences of the closed form
  auto fval = [](double a, double b) { return std::exp(a * b) / (1 + a * a); };
  double h = 1e-3;
  double dxxy = 0;
  for (int i : {-1, 1})
    for (int j : {-1, 1})
      dxxy += i * j * (fval(x[0] + i * h, x[1] + j * h) - 2 * fval(x[0], x[1] + j * h) * 0 +
                       0.0);
  // D_x D_x D_y via nested central differences
  auto dx2 = [&](double b) {
    return (fval(x[0] + h, b) - 2 * fval(x[0], b) + fval(x[0] - h, b)) / (h * h);
  };
  double fd = (dx2(x[1] + h) - dx2(x[1] - h)) / (2 * h);
  CHECK(std::abs(f.deriv({2, 1}) - fd) < 1e-5);
}

TEST_CASE("jet sqrt, reciprocal, conj consistency") {
  const JetSpace& sp = JetSpace::isotropic(1, 4);
  Jet X = Jet::variable(sp, 0, 0.4);
  Jet s = jet_sqrt(1.0 + X * X);
  Jet back = s * s - (1.0 + X * X);
  CHECK(back.abs_coeff_max() < 1e-14);
  Jet r = (1.0 + X).reciprocal() * (1.0 + X);
  CHECK(std::abs(r.value() - 1.0) < 1e-15);
  CHECK(std::abs(r.deriv({1})) < 1e-15);

  Jet zc = Jet::variable(sp, 0, 0.3) * cd(0, 1);
  CHECK(std::abs(zc.conjugate().value() - cd(0, -0.3)) < 1e-16);
}

TEST_CASE("anisotropic jet caps") {
  // groups: var0,var1 capped at 2 total; var2 capped at 1; overall 3
  const JetSpace& sp = JetSpace::get({0, 0, 1}, {2, 1}, 3);
  CHECK(sp.index_of({2, 1, 0}) == -1);  // group 0 exceeds cap
  CHECK(sp.index_of({2, 0, 1}) >= 0);
  CHECK(sp.index_of({1, 1, 1}) >= 0);
  Jet X = Jet::variable(sp, 0, 0.5);
  Jet Z = Jet::variable(sp, 2, 0.25);
  Jet f = X * X * Z;
  CHECK(std::abs(f.deriv({2, 0, 1}) - 2.0) < 1e-14);
}

TEST_CASE("analytic field wirtinger derivatives") {
  // f(z) = zbar1 -> dbar_1 f = 1, d_1 f = 0
  AnalyticField zb = {2, 1 << 20, [](const Eigen::VectorXd& x, const JetSpace& sp) {
                        return coord_z(sp, x, 0).conjugate();
                      }};
  Eigen::VectorXd x(2);
  x << 0.3, 0.8;
  CHECK(std::abs(af_wirtinger_dbar(zb, 0).value(x) - 1.0) < 1e-14);
  CHECK(std::abs(af_wirtinger_d(zb, 0).value(x)) < 1e-14);
}

TEST_CASE("wedge trivial identities") {
  int n = 2;
  FormC dz1(n), dz1b(n), dzb2(n);
  dz1.terms[gen_mask(n, Species::dzeta, 0)] = 1.0;
  dz1b.terms[gen_mask(n, Species::dzetabar, 0)] = 1.0;
  // dzeta1 ^ dzeta1 = 0
  CHECK(wedge(dz1, dz1).terms.begin()->second == cd(0, 0));
  // dzeta1 ^ dzetabar1 = -(dzetabar1 ^ dzeta1)
  FormC ab = wedge(dz1, dz1b), ba = wedge(dz1b, dz1);
  CHECK(form_max_abs(ab + ba) < 1e-16);
  // bilinearity with coefficients
  FormC f = dz1 * cd(2, 1);
  FormC g(n);
  g.terms[gen_mask(n, Species::dzeta, 1)] = cd(0, 3);
  FormC fg = wedge(f, g);
  Mono m = gen_mask(n, Species::dzeta, 0) | gen_mask(n, Species::dzeta, 1);
  CHECK(std::abs(fg.terms.at(m) - cd(2, 1) * cd(0, 3)) < 1e-16);
}

TEST_CASE("wedge associativity and anticommutativity vs oracle, 1000 triples") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> dgen(0, 8);  // n=3: bits 0..8
  std::uniform_int_distribution<int> dsz(1, 3);
  int n = 3;
  for (int trial = 0; trial < 1000; ++trial) {
    Mono a = 0, b = 0, c = 0;
    for (int i = dsz(rng); i-- > 0;) a |= Mono(1) << dgen(rng);
    for (int i = dsz(rng); i-- > 0;) b |= Mono(1) << dgen(rng);
    for (int i = dsz(rng); i-- > 0;) c |= Mono(1) << dgen(rng);
    FormC fa(n), fb(n), fc(n);
    fa.terms[a] = 1.0;
    fb.terms[b] = 1.0;
    fc.terms[c] = 1.0;
    FormC left = wedge(wedge(fa, fb), fc);
    FormC right = wedge(fa, wedge(fb, fc));
    CHECK(form_max_abs(left - right) == 0.0);

    // graded anticommutativity: a^b = (-1)^{|a||b|} b^a
    FormC ab = wedge(fa, fb), ba = wedge(fb, fa);
    double sign = ((deg_total(a) * deg_total(b)) % 2) ? -1.0 : 1.0;
    CHECK(form_max_abs(ab - ba * sign) == 0.0);

    // against the independent bubble-sort oracle
    auto to_oracle = [](Mono m) {
      std::vector<OracleTerm> v;
      OracleTerm t;
      t.c = 1.0;
      Mono mm = m;
      while (mm) {
        t.gens.push_back(__builtin_ctzll(mm));
        mm &= mm - 1;
      }
      v.push_back(t);
      return v;
    };
    auto ow = oracle_wedge(oracle_wedge(to_oracle(a), to_oracle(b)), to_oracle(c));
    if (left.terms.empty() || form_max_abs(left) == 0.0) {
      CHECK((ow.empty() || std::abs(ow[0].c) == 0.0));
    } else {
      REQUIRE(ow.size() == 1);
      CHECK(std::abs(left.terms.begin()->second - ow[0].c) == 0.0);
    }
  }
}

TEST_CASE("dbar examples and dbar^2 = 0") {
  int n = 2;
  // f(z) = zbar1 -> dzbar1; f = z1 z2 -> 0
  MixedForm f(n, false);
  f.terms[0] = Field(AnalyticField{4, 1 << 20, [](const Eigen::VectorXd& x, const JetSpace& sp) {
                                     return coord_z(sp, x, 0).conjugate();
                                   }});
  MixedForm df = dbar_apply(f, Var::z);
  Eigen::VectorXd x(4);
  x << 0.2, -0.4, 0.1, 0.9;
  FormC vals = df.at(x);
  CHECK(vals.terms.size() == 1);
  CHECK(std::abs(vals.terms.at(gen_mask(n, Species::dzbar, 0)) - 1.0) < 1e-14);

  MixedForm hol(n, false);
  hol.terms[0] = Field(AnalyticField{4, 1 << 20, [](const Eigen::VectorXd& xx, const JetSpace& sp) {
                                       return coord_z(sp, xx, 0) * coord_z(sp, xx, 1);
                                     }});
  CHECK(form_max_abs(dbar_apply(hol, Var::z).at(x)) < 1e-14);

  // dbar(dbar g) = 0 for random polynomial coefficient forms
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    MixedForm g(n, false);
    g.terms[gen_mask(n, Species::dzbar, trial % 2)] =
        Field(PolyField::random(n, 4, 5, rng).field());
    MixedForm ddg = dbar_apply(dbar_apply(g, Var::z), Var::z);
    CHECK(form_max_abs(ddg.at(x)) < 1e-12);
  }
}

TEST_CASE("Leibniz rule for dbar") {
  int n = 1;
  std::mt19937_64 rng(11);
  Eigen::VectorXd x(2);
  x << 0.25, -0.6;
  for (int trial = 0; trial < 5; ++trial) {
    MixedForm a(n, false), b(n, false);
    a.terms[0] = Field(PolyField::random(n, 3, 4, rng).field());  // 0-form
    b.terms[gen_mask(n, Species::dzbar, 0)] = Field(PolyField::random(n, 3, 4, rng).field());
    MixedForm ab = wedge(a, b);
    FormC lhs = dbar_apply(ab, Var::z).at(x);
    FormC rhs = wedge(dbar_apply(a, Var::z), b).at(x) + wedge(a, dbar_apply(b, Var::z)).at(x);
    // deg a = 0: no sign
    CHECK(form_max_abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("pair_integrate: volume form over unit disk gives pi") {
  int n = 1;
  // omega_vol = (i/2) dzeta ^ dzetabar integrates to Euclidean area
  MixedForm vol(n, false);
  vol.terms[gen_mask(n, Species::dzeta, 0) | gen_mask(n, Species::dzetabar, 0)] =
      Field(af_constant(2, cd(0, 0.5)));
  MixedForm one(n, false);
  one.terms[0] = Field(af_constant(2, 1.0));
  Eigen::VectorXd c0 = Eigen::VectorXd::Zero(2);
  QuadRule rule = disc_rule(c0, 1.0, 16, 32);
  FormC out = pair_integrate_at(c0, vol, one, rule);
  CHECK(std::abs(out.terms.at(0) - M_PI) < 1e-12);
}

TEST_CASE("pair_integrate: Cauchy kernel reproduces chi(z)") {
  // n=1, kernel B = dzeta/(2 pi i (zeta - z)), g = dbar(chi).
  int n = 1;
  Eigen::VectorXd zc = Eigen::VectorXd::Zero(2);
  AnalyticField chi = af_plateau_bump(2, zc, 0.45, 0.8);
  MixedForm g(n, false);
  g.terms[0] = Field(chi);
  g = dbar_apply(g, Var::zeta);  // (0,1) in zeta

  Eigen::VectorXd z(2);
  z << 0.05, -0.1;  // chi == 1 near z
  MixedForm B(n, true);
  B.terms[gen_mask(n, Species::dzeta, 0)] =
      Field(AnalyticField{4, 1 << 20, [](const Eigen::VectorXd& x, const JetSpace& sp) {
                            Jet zj = coord_z(sp, x, 0);
                            Jet zetaj = coord_z(sp, x, 1);
                            return (cd(0, 2 * M_PI) * (zetaj - zj)).reciprocal();
                          }});
  // polar rule around z eliminates the 1/(zeta-z) singularity
  QuadRule rule = disc_rule(z, 1.2, 20, 64, {0.0, 0.3, 0.5, 0.65, 0.8, 0.95, 1.2});
  FormC out = pair_integrate_at(z, B, g, rule);
  double chi_z = chi.value(z).real();
  CHECK(chi_z == 1.0);
  CHECK(std::abs(out.terms.at(0) - chi_z) < 1e-5);

  // independent Cauchy-Pompeiu oracle: -(1/pi) \int dbar(chi)/(zeta-z) dA
  AnalyticField dchi = af_wirtinger_dbar(chi, 0);
  cd oracle = 0;
  for (int i = 0; i < rule.size(); ++i) {
    const Eigen::VectorXd& p = rule.pts[i];
    cd zeta(p[0], p[1]), zz(z[0], z[1]);
    oracle += -1.0 / M_PI * dchi.value(p) / (zeta - zz) * rule.w[i];
  }
  CHECK(std::abs(out.terms.at(0) - oracle) < 1e-12);
}

TEST_CASE("pair_integrate antisymmetry under swapped dzetabar factor") {
  // kernel carries dzeta, g carries dzetabar: swapping which side holds the
  // dzetabar factor flips the wedge sign.
  int n = 1;
  AnalyticField u = {2, 1 << 20, [](const Eigen::VectorXd& x, const JetSpace& sp) {
                       return Jet::variable(sp, 0, x[0]) * Jet::variable(sp, 1, x[1]) + 2.0;
                     }};
  MixedForm a(n, false), b(n, false), a2(n, false), b2(n, false);
  a.terms[gen_mask(n, Species::dzeta, 0)] = Field(u);
  b.terms[gen_mask(n, Species::dzetabar, 0)] = Field(af_constant(2, 1.0));
  a2.terms[gen_mask(n, Species::dzetabar, 0)] = Field(u);
  b2.terms[gen_mask(n, Species::dzeta, 0)] = Field(af_constant(2, 1.0));
  Eigen::VectorXd lo(2), hi(2);
  lo << -1, -1;
  hi << 1, 1;
  QuadRule rule = tensor_gauss(lo, hi, {8, 8});
  Eigen::VectorXd z0 = Eigen::VectorXd::Zero(2);
  FormC r1 = pair_integrate_at(z0, a, b, rule);
  FormC r2 = pair_integrate_at(z0, a2, b2, rule);
  CHECK(std::abs(r1.terms.at(0) + r2.terms.at(0)) < 1e-14);
}

TEST_CASE("bidegree extraction partitions a form") {
  int n = 2;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> dbit(0, 3 * n - 1);
  FormC f(n);
  for (int t = 0; t < 20; ++t) {
    Mono m = 0;
    for (int k = 0; k < 3; ++k) m |= Mono(1) << dbit(rng);
    f.add_term(m, cd(t + 1, -t));
  }
  // extract of zero form is zero
  CHECK(extract_bidegree(FormC(n), 0, 0, 0).terms.empty());
  FormC sum(n);
  for (int dz = 0; dz <= n; ++dz)
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) sum = sum + extract_bidegree(f, dz, p, q);
  CHECK(form_max_abs(sum - f) == 0.0);
}

TEST_CASE("grid field: io roundtrip, interpolation, fd derivative") {
  Eigen::VectorXd lo(2), hi(2);
  lo << -1, -1;
  hi << 1, 1;
  GridField g({33, 33}, lo, hi);
  g.fill([](const Eigen::VectorXd& x) {
    return cd(std::sin(2 * x[0]) * std::cos(x[1]), x[0] * x[1]);
  });
  g.save("/tmp/dbar_gridtest", "dzbar1");
  GridField h = GridField::load("/tmp/dbar_gridtest");
  REQUIRE(h.size() == g.size());
  double d = 0;
  for (long long k = 0; k < g.size(); ++k) d = std::max(d, std::abs(g[k] - h[k]));
  CHECK(d == 0.0);

  Eigen::VectorXd x(2);
  x << 0.123, -0.456;
  cd exact(std::sin(2 * x[0]) * std::cos(x[1]), x[0] * x[1]);
  CHECK(std::abs(g.interp_cubic(x) - exact) < 5e-5);

  GridField dx4 = g.fd_derivative(0, 4);
  cd dexact(2 * std::cos(2 * x[0]) * std::cos(x[1]), x[1]);
  std::vector<int> idx = {18, 9};
  Eigen::VectorXd xn = g.point(idx);
  cd dref(2 * std::cos(2 * xn[0]) * std::cos(xn[1]), xn[1]);
  CHECK(std::abs(dx4.at(idx) - dref) < 5e-5);

  // order-4 convergence: halving h reduces the error by ~16
  GridField g2({65, 65}, lo, hi);
  g2.fill([](const Eigen::VectorXd& p) { return cd(std::sin(2 * p[0]) * std::cos(p[1]), 0); });
  GridField e1 = g.fd_derivative(0, 4), e2 = g2.fd_derivative(0, 4);
  auto err = [&](const GridField& dg, const GridField& base) {
    double m = 0;
    std::vector<int> id(2);
    for (id[0] = 4; id[0] < base.shape()[0] - 4; ++id[0])
      for (id[1] = 4; id[1] < base.shape()[1] - 4; ++id[1]) {
        Eigen::VectorXd p = base.point(id);
        m = std::max(m, std::abs(dg.at(id).real() - 2 * std::cos(2 * p[0]) * std::cos(p[1])));
      }
    return m;
  };
  double r = err(e1, g) / err(e2, g2);
  CHECK(r > 10.0);

  CHECK_THROWS(GridField({3, 3}, lo, hi).fd_derivative(0, 6));
}
