#pragma once

#include "gburgers/field.hpp"
#include "gburgers/quadrature.hpp"

#include <functional>
#include <variant>
#include <vector>

namespace gb {

/// Bounded initial data: Riemann step, piecewise constant, or smooth with a
/// caller-certified bound. The step assigns u_minus on x <= 0.
class InitialData {
public:
  struct Step {
    double u_minus;
    double u_plus;
  };
  struct PiecewiseConstant {
    std::vector<double> breakpoints; // strictly ascending
    std::vector<double> values;      // breakpoints.size() + 1 entries
  };
  struct Smooth {
    std::function<double(double)> fn;
    double inf_bound; // certified inf of fn
    double sup_bound; // certified sup of fn
    double far_left;  // limit as x -> -inf
    double far_right; // limit as x -> +inf
  };

  static InitialData step(double u_minus, double u_plus);
  static InitialData piecewise(std::vector<double> breakpoints, std::vector<double> values);
  static InitialData smooth(std::function<double(double)> fn, double inf_bound, double sup_bound,
                            double far_left, double far_right);

  double evaluate(double x) const;
  double sup_norm() const;   // exact sup of |data|
  double inf_value() const;  // exact inf of the data
  double sup_value() const;  // exact sup of the data
  double far_left() const;
  double far_right() const;
  bool is_step() const { return std::holds_alternative<Step>(variant_); }
  bool is_constant() const;
  const Step* as_step() const { return std::get_if<Step>(&variant_); }
  const PiecewiseConstant* as_piecewise() const {
    return std::get_if<PiecewiseConstant>(&variant_);
  }

  /// Heat-semigroup action: integral of data(s) G(x,t;s,0) ds. Closed form
  /// (erfc) for step and piecewise data, Gauss-Hermite quadrature for smooth.
  double heat_convolution(double x, double t, const QuadratureSpec& q = {}) const;

  /// Pointwise sampling onto a grid; far-field constants from the data limits.
  Field sample_field(const GridSpec& grid) const;

  /// Data shifted towards `other` by fraction lambda of the parameter gap.
  /// Supported for step data (used by the continuous-dependence probe).
  InitialData blend_towards(const InitialData& other, double lambda) const;

private:
  std::variant<Step, PiecewiseConstant, Smooth> variant_;
  explicit InitialData(std::variant<Step, PiecewiseConstant, Smooth> v) : variant_(std::move(v)) {}
};

} // namespace gb
