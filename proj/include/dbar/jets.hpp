#pragma once

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Core>

namespace dbar {

using cd = std::complex<double>;

/// Truncated multivariate Taylor coefficients ("jets") over real variables.
///
/// Variables are partitioned into groups. A multi-index alpha is kept when
/// sum(alpha) <= total_cap and, for every group g, sum(alpha restricted to
/// the variables of g) <= group_cap[g]. Anisotropic caps keep mixed
/// z/eta-derivative evaluations cheap.
class JetSpace {
 public:
  static const JetSpace& get(const std::vector<int>& group_of_var,
                             const std::vector<int>& group_caps, int total_cap);
  static const JetSpace& isotropic(int nvars, int order);

  int nvars() const { return nvars_; }
  int nterms() const { return static_cast<int>(exps_.size()); }
  int total_cap() const { return total_cap_; }
  int var_cap(int v) const { return var_cap_[v]; }
  const std::vector<int>& group_of_var() const { return group_of_var_; }
  const std::vector<int>& group_caps() const { return group_caps_; }

  const std::vector<int>& exponent(int term) const { return exps_[term]; }
  int order_of(int term) const { return orders_[term]; }
  /// Index of a multi-index, or -1 when outside the space.
  int index_of(const std::vector<int>& alpha) const;
  /// prod(alpha_i!) for term k.
  double factorial(int term) const { return factorials_[term]; }

  /// index of term_i + term_j, or -1 (truncated away).
  int product_index(int i, int j) const { return prod_[static_cast<size_t>(i) * exps_.size() + j]; }
  /// index of term_k + e_v, or -1.
  int raise_index(int k, int v) const { return raise_[static_cast<size_t>(k) * nvars_ + v]; }

 private:
  JetSpace(std::vector<int> group_of_var, std::vector<int> group_caps, int total_cap);

  int nvars_ = 0;
  int total_cap_ = 0;
  std::vector<int> group_of_var_, group_caps_, var_cap_;
  std::vector<std::vector<int>> exps_;
  std::vector<int> orders_;
  std::vector<double> factorials_;
  std::vector<long long> strides_;
  std::vector<int> code_to_index_;
  std::vector<int> prod_;
  std::vector<int> raise_;
  long long code_of(const std::vector<int>& alpha) const;
};

/// A truncated Taylor expansion with complex coefficients. `order()` tracks
/// how many orders of the stored coefficients are trustworthy; arithmetic
/// propagates the minimum and zeroes everything above it.
class Jet {
 public:
  Jet() = default;
  Jet(const JetSpace& sp, cd constant);

  static Jet constant(const JetSpace& sp, cd v) { return Jet(sp, v); }
  static Jet variable(const JetSpace& sp, int var, double value);

  const JetSpace& space() const { return *sp_; }
  int order() const { return ord_; }
  cd value() const { return c_[0]; }
  cd coeff(int term) const { return c_[term]; }
  cd& coeff(int term) { return c_[term]; }
  /// Value of the derivative D^alpha at the expansion point.
  cd deriv(const std::vector<int>& alpha) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(cd s);
  friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
  friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
  friend Jet operator-(const Jet& a);
  friend Jet operator*(Jet a, cd s) { a *= s; return a; }
  friend Jet operator*(cd s, Jet a) { a *= s; return a; }
  friend Jet operator+(Jet a, cd s) { a.c_[0] += s; return a; }
  friend Jet operator+(cd s, Jet a) { a.c_[0] += s; return a; }
  friend Jet operator-(Jet a, cd s) { a.c_[0] -= s; return a; }
  friend Jet operator-(cd s, const Jet& a);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }
  friend Jet operator/(Jet a, cd s) { a *= (1.0 / s); return a; }
  friend Jet operator/(cd s, const Jet& a) { return a.reciprocal() * s; }

  Jet reciprocal() const;
  Jet pow_int(int p) const;
  Jet conjugate() const;
  Jet exp_() const;
  Jet sqrt_() const;
  /// d/dx_v; drops one trustworthy order.
  Jet derivative(int var) const;

  double abs_coeff_max() const;

 private:
  void truncate_to(int ord);
  const JetSpace* sp_ = nullptr;
  int ord_ = 0;
  Eigen::VectorXcd c_;
};

Jet jet_exp(const Jet& a);
Jet jet_sqrt(const Jet& a);

}  // namespace dbar
