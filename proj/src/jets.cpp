#include "dbar/jets.hpp"

#include <cassert>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dbar {

namespace {

void enumerate(int v, int nvars, const std::vector<int>& group_of_var,
               const std::vector<int>& group_caps, int total_left,
               std::vector<int>& group_left, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
  if (v == nvars) {
    out.push_back(cur);
    return;
  }
  int g = group_of_var[v];
  int maxe = std::min(total_left, group_left[g]);
  for (int e = 0; e <= maxe; ++e) {
    cur[v] = e;
    group_left[g] -= e;
    enumerate(v + 1, nvars, group_of_var, group_caps, total_left - e, group_left, cur, out);
    group_left[g] += e;
  }
  cur[v] = 0;
}

}  // namespace

JetSpace::JetSpace(std::vector<int> group_of_var, std::vector<int> group_caps, int total_cap)
    : nvars_(static_cast<int>(group_of_var.size())),
      total_cap_(total_cap),
      group_of_var_(std::move(group_of_var)),
      group_caps_(std::move(group_caps)) {
  var_cap_.resize(nvars_);
  for (int v = 0; v < nvars_; ++v)
    var_cap_[v] = std::min(total_cap_, group_caps_[group_of_var_[v]]);

  std::vector<int> cur(nvars_, 0);
  std::vector<int> group_left = group_caps_;
  enumerate(0, nvars_, group_of_var_, group_caps_, total_cap_, group_left, cur, exps_);
  // graded order, lexicographic within a grade, with the zero index first
  std::sort(exps_.begin(), exps_.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    int sa = 0, sb = 0;
    for (int x : a) sa += x;
    for (int x : b) sb += x;
    if (sa != sb) return sa < sb;
    return a < b;
  });

  orders_.resize(exps_.size());
  factorials_.resize(exps_.size());
  for (size_t k = 0; k < exps_.size(); ++k) {
    int s = 0;
    double f = 1.0;
    for (int e : exps_[k]) {
      s += e;
      for (int i = 2; i <= e; ++i) f *= i;
    }
    orders_[k] = s;
    factorials_[k] = f;
  }

  strides_.resize(nvars_);
  long long acc = 1;
  for (int v = 0; v < nvars_; ++v) {
    strides_[v] = acc;
    acc *= 2 * var_cap_[v] + 1;
  }
  code_to_index_.assign(static_cast<size_t>(acc), -1);
  for (size_t k = 0; k < exps_.size(); ++k) code_to_index_[code_of(exps_[k])] = static_cast<int>(k);

  const int n = nterms();
  prod_.assign(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<int> s(nvars_);
      bool ok = true;
      for (int v = 0; v < nvars_; ++v) {
        s[v] = exps_[i][v] + exps_[j][v];
        if (s[v] > var_cap_[v]) { ok = false; break; }
      }
      if (ok) prod_[static_cast<size_t>(i) * n + j] = index_of(s);
    }
  }
  raise_.assign(static_cast<size_t>(n) * nvars_, -1);
  for (int k = 0; k < n; ++k) {
    for (int v = 0; v < nvars_; ++v) {
      std::vector<int> s = exps_[k];
      s[v] += 1;
      if (s[v] <= var_cap_[v]) raise_[static_cast<size_t>(k) * nvars_ + v] = index_of(s);
    }
  }
}

long long JetSpace::code_of(const std::vector<int>& alpha) const {
  long long c = 0;
  for (int v = 0; v < nvars_; ++v) c += strides_[v] * alpha[v];
  return c;
}

int JetSpace::index_of(const std::vector<int>& alpha) const {
  int total = 0;
  std::vector<int> gsum(group_caps_.size(), 0);
  for (int v = 0; v < nvars_; ++v) {
    if (alpha[v] < 0 || alpha[v] > var_cap_[v]) return -1;
    total += alpha[v];
    gsum[group_of_var_[v]] += alpha[v];
  }
  if (total > total_cap_) return -1;
  for (size_t g = 0; g < gsum.size(); ++g)
    if (gsum[g] > group_caps_[g]) return -1;
  return code_to_index_[code_of(alpha)];
}

const JetSpace& JetSpace::get(const std::vector<int>& group_of_var,
                              const std::vector<int>& group_caps, int total_cap) {
  struct Key {
    std::vector<int> gv, gc;
    int t;
    bool operator<(const Key& o) const {
      if (t != o.t) return t < o.t;
      if (gv != o.gv) return gv < o.gv;
      return gc < o.gc;
    }
  };
  static std::map<Key, std::unique_ptr<JetSpace>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  Key key{group_of_var, group_caps, total_cap};
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto sp = std::unique_ptr<JetSpace>(new JetSpace(group_of_var, group_caps, total_cap));
    it = cache.emplace(key, std::move(sp)).first;
  }
  return *it->second;
}

const JetSpace& JetSpace::isotropic(int nvars, int order) {
  return get(std::vector<int>(nvars, 0), {order}, order);
}

Jet::Jet(const JetSpace& sp, cd constant) : sp_(&sp), ord_(sp.total_cap()) {
  c_ = Eigen::VectorXcd::Zero(sp.nterms());
  c_[0] = constant;
}

Jet Jet::variable(const JetSpace& sp, int var, double value) {
  Jet j(sp, value);
  std::vector<int> e(sp.nvars(), 0);
  e[var] = 1;
  int k = sp.index_of(e);
  if (k >= 0) j.c_[k] = 1.0;
  return j;
}

cd Jet::deriv(const std::vector<int>& alpha) const {
  int k = sp_->index_of(alpha);
  if (k < 0) throw std::out_of_range("Jet::deriv: multi-index outside space");
  if (sp_->order_of(k) > ord_) throw std::out_of_range("Jet::deriv: order beyond trusted range");
  return c_[k] * sp_->factorial(k);
}

void Jet::truncate_to(int ord) {
  ord_ = ord;
  for (int k = 0; k < sp_->nterms(); ++k)
    if (sp_->order_of(k) > ord_) c_[k] = 0.0;
}

Jet& Jet::operator+=(const Jet& o) {
  assert(sp_ == o.sp_);
  c_ += o.c_;
  truncate_to(std::min(ord_, o.ord_));
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  assert(sp_ == o.sp_);
  c_ -= o.c_;
  truncate_to(std::min(ord_, o.ord_));
  return *this;
}

Jet& Jet::operator*=(cd s) {
  c_ *= s;
  return *this;
}

Jet operator-(const Jet& a) {
  Jet r = a;
  r.c_ = -r.c_;
  return r;
}

Jet operator-(cd s, const Jet& a) {
  Jet r = -a;
  r.c_[0] += s;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  assert(a.sp_ == b.sp_);
  const JetSpace& sp = *a.sp_;
  Jet r(sp, 0.0);
  const int n = sp.nterms();
  for (int i = 0; i < n; ++i) {
    cd ai = a.c_[i];
    if (ai == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      int k = sp.product_index(i, j);
      if (k >= 0) r.c_[k] += ai * b.c_[j];
    }
  }
  r.truncate_to(std::min(a.ord_, b.ord_));
  return r;
}

Jet Jet::reciprocal() const {
  cd a0 = c_[0];
  if (a0 == 0.0) throw std::domain_error("Jet::reciprocal: zero constant term");
  Jet e = *this;
  e.c_[0] = 0.0;
  e *= (1.0 / a0);
  // 1/a = (1/a0) * sum_k (-e)^k, Horner form
  Jet r(*sp_, 1.0);
  for (int k = 0; k < ord_; ++k) {
    r = r * (-1.0);
    r = r * e;
    r.c_[0] += 1.0;
  }
  r *= (1.0 / a0);
  r.truncate_to(ord_);
  return r;
}

Jet Jet::pow_int(int p) const {
  if (p < 0) return reciprocal().pow_int(-p);
  Jet r(*sp_, 1.0);
  r.truncate_to(ord_);
  Jet base = *this;
  while (p > 0) {
    if (p & 1) r = r * base;
    p >>= 1;
    if (p) base = base * base;
  }
  return r;
}

Jet Jet::conjugate() const {
  Jet r = *this;
  r.c_ = r.c_.conjugate();
  return r;
}

Jet Jet::exp_() const {
  cd e0 = std::exp(c_[0]);
  Jet h = *this;
  h.c_[0] = 0.0;
  // exp(a0+h) = e0 * sum h^k/k!, Horner form
  Jet r(*sp_, 1.0);
  for (int k = ord_; k >= 1; --k) {
    r *= (1.0 / k);
    r = r * h;
    r.c_[0] += 1.0;
  }
  r *= e0;
  r.truncate_to(ord_);
  return r;
}

Jet Jet::sqrt_() const {
  cd a0 = c_[0];
  if (a0 == 0.0) throw std::domain_error("Jet::sqrt: zero constant term");
  Jet e = *this;
  e.c_[0] = 0.0;
  e *= (1.0 / a0);
  // (1+e)^{1/2} via Horner on binomial coefficients
  double p = 0.5;
  Jet r(*sp_, 1.0);
  for (int k = ord_; k >= 1; --k) {
    r *= ((p - k + 1) / k);
    r = r * e;
    r.c_[0] += 1.0;
  }
  r *= std::sqrt(a0);
  r.truncate_to(ord_);
  return r;
}

Jet Jet::derivative(int var) const {
  Jet r(*sp_, 0.0);
  const int n = sp_->nterms();
  for (int k = 0; k < n; ++k) {
    int up = sp_->raise_index(k, var);
    if (up >= 0) r.c_[k] = c_[up] * double(sp_->exponent(up)[var]);
  }
  r.truncate_to(std::max(0, ord_ - 1));
  return r;
}

double Jet::abs_coeff_max() const {
  double m = 0;
  for (int k = 0; k < sp_->nterms(); ++k) m = std::max(m, std::abs(c_[k]));
  return m;
}

Jet jet_exp(const Jet& a) { return a.exp_(); }
Jet jet_sqrt(const Jet& a) { return a.sqrt_(); }

}  // namespace dbar
