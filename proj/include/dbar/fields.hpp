#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dbar/jets.hpp"

namespace dbar {

/// Raise the order budget of `sp` by one in the group containing `var`
/// (and in total). Used to differentiate composed evaluators exactly.
const JetSpace& raised_space(const JetSpace& sp, int var);

/// Copy the coefficients of `j` that exist in `target` (same variable count).
Jet restrict_jet(const Jet& j, const JetSpace& target);

/// A scalar complex-valued function of `dim` real variables given by an
/// exact jet evaluator. `max_order` is the declared derivative budget.
struct AnalyticField {
  int dim = 0;
  int max_order = 0;
  std::function<Jet(const Eigen::VectorXd&, const JetSpace&)> eval;

  bool valid() const { return static_cast<bool>(eval); }
  cd value(const Eigen::VectorXd& x) const;
  Jet jet(const Eigen::VectorXd& x, const JetSpace& sp) const { return eval(x, sp); }
};

AnalyticField af_constant(int dim, cd v);
AnalyticField af_coordinate(int dim, int var);
AnalyticField af_add(const AnalyticField& a, const AnalyticField& b);
AnalyticField af_sub(const AnalyticField& a, const AnalyticField& b);
AnalyticField af_mul(const AnalyticField& a, const AnalyticField& b);
AnalyticField af_div(const AnalyticField& a, const AnalyticField& b);
AnalyticField af_scale(const AnalyticField& a, cd s);
/// Real partial derivative d/dx_var as a field (budget drops by one).
AnalyticField af_derivative(const AnalyticField& a, int var);
/// Wirtinger derivatives for the complex coordinate pairing
/// z_j = x_{2j} + i x_{2j+1}.
AnalyticField af_wirtinger_d(const AnalyticField& a, int j);
AnalyticField af_wirtinger_dbar(const AnalyticField& a, int j);

/// Evaluate f at jet-valued coordinates (Taylor composition). All args must
/// live in the same space; their values give the expansion point.
Jet af_compose(const AnalyticField& f, const std::vector<Jet>& args);

/// Uniform tensor grid of complex samples over an axis-aligned box.
/// Nodes include both box endpoints: spacing h_a = (hi_a-lo_a)/(n_a-1).
class GridField {
 public:
  GridField() = default;
  GridField(std::vector<int> shape, Eigen::VectorXd lo, Eigen::VectorXd hi);

  int rank() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  const Eigen::VectorXd& lo() const { return lo_; }
  const Eigen::VectorXd& hi() const { return hi_; }
  double spacing(int axis) const { return h_[axis]; }
  long long size() const { return static_cast<long long>(data_.size()); }

  cd* data() { return data_.data(); }
  const cd* data() const { return data_.data(); }
  cd& operator[](long long i) { return data_[i]; }
  cd operator[](long long i) const { return data_[i]; }

  long long flat(const std::vector<int>& idx) const;
  Eigen::VectorXd point(const std::vector<int>& idx) const;
  cd& at(const std::vector<int>& idx) { return data_[flat(idx)]; }
  cd at(const std::vector<int>& idx) const { return data_[flat(idx)]; }

  void fill(const std::function<cd(const Eigen::VectorXd&)>& f);
  /// Multilinear interpolation; zero outside the box.
  cd interp_linear(const Eigen::VectorXd& x) const;
  /// Separable cubic (Catmull-Rom) interpolation; zero outside the box.
  cd interp_cubic(const Eigen::VectorXd& x) const;

  /// Centered finite difference along `axis`, order in {2,4,6}.
  GridField fd_derivative(int axis, int fd_order = 4) const;

  double max_abs() const;
  double l1_mass() const;  // sum |v| * cell volume

  /// Raw little-endian float64 (re,im) interleaved, C-order, plus a JSON
  /// sidecar {shape, box_min, box_max, component}.
  void save(const std::string& path_prefix, const std::string& component) const;
  static GridField load(const std::string& path_prefix);

 private:
  std::vector<int> shape_;
  std::vector<long long> strides_;
  Eigen::VectorXd lo_, hi_, h_;
  std::vector<cd> data_;
};

/// FieldSample: either analytic (exact jets) or a sampled grid.
struct Field {
  std::shared_ptr<AnalyticField> analytic;
  std::shared_ptr<GridField> grid;
  int fd_order = 4;

  Field() = default;
  Field(AnalyticField a) : analytic(std::make_shared<AnalyticField>(std::move(a))) {}
  Field(GridField g) : grid(std::make_shared<GridField>(std::move(g))) {}

  bool is_analytic() const { return analytic != nullptr; }
  bool valid() const { return analytic || grid; }
  int dim() const;
  cd value(const Eigen::VectorXd& x) const;
};

Field field_add(const Field& a, const Field& b);
Field field_mul(const Field& a, const Field& b);
Field field_scale(const Field& a, cd s);
/// Wirtinger d/dzbar_j of a FieldSample. Analytic fields differentiate
/// exactly; grids use centered differences of the stored fd_order.
Field field_wirtinger_dbar(const Field& f, int j);

}  // namespace dbar
