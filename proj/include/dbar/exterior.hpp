#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>

#include "dbar/fields.hpp"
#include "dbar/quad.hpp"

namespace dbar {

/// Anticommuting generators for ambient complex dimension n, encoded as bits
/// of a mask in the fixed global order
///   dzeta_1..dzeta_n, dzetabar_1..dzetabar_n, dzbar_1..dzbar_n.
using Mono = std::uint64_t;

enum class Species { dzeta = 0, dzetabar = 1, dzbar = 2 };

inline int gen_bit(int n, Species s, int axis) { return static_cast<int>(s) * n + axis; }
inline Mono gen_mask(int n, Species s, int axis) { return Mono(1) << gen_bit(n, s, axis); }

inline int deg_dzeta(int n, Mono m) {
  return __builtin_popcountll(m & ((Mono(1) << n) - 1));
}
inline int deg_dzetabar(int n, Mono m) {
  return __builtin_popcountll((m >> n) & ((Mono(1) << n) - 1));
}
inline int deg_dzbar(int n, Mono m) {
  return __builtin_popcountll((m >> (2 * n)) & ((Mono(1) << n) - 1));
}
inline int deg_total(Mono m) { return __builtin_popcountll(m); }

/// Sign of (sorted a) wedge (sorted b) against the sorted union; 0 if they
/// share a generator.
inline int wedge_sign(Mono a, Mono b) {
  if (a & b) return 0;
  int inv = 0;
  Mono bb = b;
  while (bb) {
    int g = __builtin_ctzll(bb);
    bb &= bb - 1;
    inv += __builtin_popcountll(a >> (g + 1));
  }
  return (inv & 1) ? -1 : 1;
}

/// Sign of writing generator `bit` to the LEFT of the sorted monomial m.
inline int insert_sign_left(Mono m, int bit) {
  int below = __builtin_popcountll(m & ((Mono(1) << bit) - 1));
  return (below & 1) ? -1 : 1;
}

/// A form with coefficients in T, stored per sorted monomial.
template <class T>
struct Form {
  int n = 0;
  std::map<Mono, T> terms;

  Form() = default;
  explicit Form(int n_) : n(n_) {}

  bool empty() const { return terms.empty(); }
  void add_term(Mono m, const T& coef, double sign = 1.0) {
    auto it = terms.find(m);
    if (it == terms.end()) {
      T v = coef;
      v = v * sign;
      terms.emplace(m, std::move(v));
    } else {
      it->second += coef * sign;
    }
  }
};

using FormC = Form<cd>;

inline FormC operator+(FormC a, const FormC& b) {
  for (const auto& [m, c] : b.terms) a.add_term(m, c);
  return a;
}
inline FormC operator-(FormC a, const FormC& b) {
  for (const auto& [m, c] : b.terms) a.add_term(m, c, -1.0);
  return a;
}
inline FormC operator*(FormC a, cd s) {
  for (auto& [m, c] : a.terms) c *= s;
  return a;
}

template <class T>
Form<T> wedge(const Form<T>& a, const Form<T>& b) {
  if (a.n != b.n) throw std::invalid_argument("wedge: ambient dimension mismatch");
  Form<T> r(a.n);
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      r.add_term(ma | mb, ca * cb, s);
    }
  return r;
}

template <class T>
Form<T> extract_bidegree(const Form<T>& f, int deg_z, int p, int q) {
  Form<T> r(f.n);
  for (const auto& [m, c] : f.terms)
    if (deg_dzbar(f.n, m) == deg_z && deg_dzeta(f.n, m) == p && deg_dzetabar(f.n, m) == q)
      r.terms.emplace(m, c);
  return r;
}

/// Max absolute coefficient (for residual reports).
double form_max_abs(const FormC& f);
/// Sum of absolute coefficients.
double form_abs_sum(const FormC& f);

inline FormC drop_small(FormC f, double eps = 0.0) {
  for (auto it = f.terms.begin(); it != f.terms.end();)
    it = (std::abs(it->second) <= eps) ? f.terms.erase(it) : std::next(it);
  return f;
}

// ---------------------------------------------------------------------------
// MixedForm: form whose coefficients are FieldSamples, either on a single
// copy of C^n (dim 2n) or on the product C^n_z x C^n_zeta (dim 4n, z block
// first). Degree bookkeeping matches the monomial encoding above.
// ---------------------------------------------------------------------------

enum class Var { z, zeta };

struct MixedForm {
  int n = 0;
  bool product_space = false;
  std::map<Mono, Field> terms;

  MixedForm() = default;
  MixedForm(int n_, bool product) : n(n_), product_space(product) {}
  int field_dim() const { return product_space ? 4 * n : 2 * n; }

  /// Pointwise evaluation of all coefficients.
  FormC at(const Eigen::VectorXd& x) const;
};

MixedForm wedge(const MixedForm& a, const MixedForm& b);
/// dbar in the chosen variable; inserts dzbar (for z) or dzetabar (for zeta)
/// generators from the left.
MixedForm dbar_apply(const MixedForm& f, Var v);
MixedForm extract_bidegree(const MixedForm& f, int deg_z, int p, int q);

/// Orientation factor: dzeta_1..dzeta_n ^ dzetabar_1..dzetabar_n =
/// vol_factor(n) * dV_{R^{2n}} with Euclidean volume dV.
cd vol_factor(int n);

/// Integrate wedge(kernel, g) over the zeta-nodes of `rule`, keeping only
/// monomials with full (n,n) zeta-degree. Follows the convention that the
/// dzbar part factors out to the right. Returns the dzbar-monomial values.
FormC pair_integrate(const std::function<FormC(const Eigen::VectorXd&)>& kernel_at,
                     const std::function<FormC(const Eigen::VectorXd&)>& g_at, int n,
                     const QuadRule& rule);

/// pair_integrate for MixedForms at a fixed z. Coefficients of the kernel on
/// the product space are evaluated at (z, zeta); g lives on C^n_zeta.
FormC pair_integrate_at(const Eigen::VectorXd& z, const MixedForm& kernel, const MixedForm& g,
                        const QuadRule& rule);

}  // namespace dbar
