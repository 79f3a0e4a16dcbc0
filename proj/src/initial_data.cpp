#include "gburgers/initial_data.hpp"

#include "gburgers/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gb {

InitialData InitialData::step(double u_minus, double u_plus) {
  if (!std::isfinite(u_minus) || !std::isfinite(u_plus))
    throw DomainError("InitialData::step: values must be finite");
  return InitialData(Step{u_minus, u_plus});
}

InitialData InitialData::piecewise(std::vector<double> breakpoints, std::vector<double> values) {
  if (values.size() != breakpoints.size() + 1)
    throw ConfigError("InitialData::piecewise: need breakpoints.size()+1 values");
  if (!std::is_sorted(breakpoints.begin(), breakpoints.end()) ||
      std::adjacent_find(breakpoints.begin(), breakpoints.end()) != breakpoints.end())
    throw ConfigError("InitialData::piecewise: breakpoints must be strictly ascending");
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError("InitialData::piecewise: values must be finite");
  return InitialData(PiecewiseConstant{std::move(breakpoints), std::move(values)});
}

InitialData InitialData::smooth(std::function<double(double)> fn, double inf_bound,
                                double sup_bound, double far_left, double far_right) {
  if (!(inf_bound <= sup_bound)) throw ConfigError("InitialData::smooth: inf_bound > sup_bound");
  return InitialData(Smooth{std::move(fn), inf_bound, sup_bound, far_left, far_right});
}

double InitialData::evaluate(double x) const {
  if (const auto* s = std::get_if<Step>(&variant_)) {
    return x <= 0.0 ? s->u_minus : s->u_plus;
  }
  if (const auto* p = std::get_if<PiecewiseConstant>(&variant_)) {
    // value index = number of breakpoints <= x (jump value taken from the left).
    const auto it = std::upper_bound(p->breakpoints.begin(), p->breakpoints.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - p->breakpoints.begin());
    if (it != p->breakpoints.begin() && *(it - 1) == x) --idx;
    return p->values[idx];
  }
  return std::get<Smooth>(variant_).fn(x);
}

double InitialData::sup_norm() const {
  return std::max(std::abs(inf_value()), std::abs(sup_value()));
}

double InitialData::inf_value() const {
  if (const auto* s = std::get_if<Step>(&variant_)) return std::min(s->u_minus, s->u_plus);
  if (const auto* p = std::get_if<PiecewiseConstant>(&variant_))
    return *std::min_element(p->values.begin(), p->values.end());
  return std::get<Smooth>(variant_).inf_bound;
}

double InitialData::sup_value() const {
  if (const auto* s = std::get_if<Step>(&variant_)) return std::max(s->u_minus, s->u_plus);
  if (const auto* p = std::get_if<PiecewiseConstant>(&variant_))
    return *std::max_element(p->values.begin(), p->values.end());
  return std::get<Smooth>(variant_).sup_bound;
}

double InitialData::far_left() const {
  if (const auto* s = std::get_if<Step>(&variant_)) return s->u_minus;
  if (const auto* p = std::get_if<PiecewiseConstant>(&variant_)) return p->values.front();
  return std::get<Smooth>(variant_).far_left;
}

double InitialData::far_right() const {
  if (const auto* s = std::get_if<Step>(&variant_)) return s->u_plus;
  if (const auto* p = std::get_if<PiecewiseConstant>(&variant_)) return p->values.back();
  return std::get<Smooth>(variant_).far_right;
}

bool InitialData::is_constant() const {
  if (const auto* s = std::get_if<Step>(&variant_)) return s->u_minus == s->u_plus;
  if (const auto* p = std::get_if<PiecewiseConstant>(&variant_))
    return std::all_of(p->values.begin(), p->values.end(),
                       [&](double v) { return v == p->values.front(); });
  return false;
}

namespace {

// Kernel mass to the right of breakpoint b as seen from (x, t):
// integral_b^inf G(x,t;s,0) ds = (1/2) erfc((b - x)/(2 sqrt(t))).
double right_mass(double b, double x, double t) {
  return 0.5 * std::erfc((b - x) / (2.0 * std::sqrt(t)));
}

} // namespace

double InitialData::heat_convolution(double x, double t, const QuadratureSpec& q) const {
  if (!(t > 0.0)) throw DomainError("heat_convolution: t must be positive");
  if (const auto* s = std::get_if<Step>(&variant_)) {
    return s->u_minus + (s->u_plus - s->u_minus) * right_mass(0.0, x, t);
  }
  if (const auto* p = std::get_if<PiecewiseConstant>(&variant_)) {
    double acc = p->values.front();
    for (std::size_t j = 0; j < p->breakpoints.size(); ++j) {
      acc += (p->values[j + 1] - p->values[j]) * right_mass(p->breakpoints[j], x, t);
    }
    return acc;
  }
  const auto& sm = std::get<Smooth>(variant_);
  const QuadratureRule& gh = gauss_hermite(q.hermite_order);
  const double w = 2.0 * std::sqrt(t);
  double acc = 0.0;
  for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
    acc += gh.weights[k] * sm.fn(x + w * gh.nodes[k]);
  }
  return acc / std::sqrt(M_PI);
}

Field InitialData::sample_field(const GridSpec& grid) const {
  grid.validate();
  if (const auto* p = std::get_if<PiecewiseConstant>(&variant_)) {
    if (!p->breakpoints.empty() &&
        (p->breakpoints.front() <= -grid.L || p->breakpoints.back() >= grid.L))
      throw ConfigError("sample_field: grid does not cover all breakpoints");
  }
  if (is_step() && grid.L <= 0.0) throw ConfigError("sample_field: grid does not cover the jump");
  Field f;
  f.t = 0.0;
  f.x0 = -grid.L;
  f.dx = grid.dx();
  f.values.resize(static_cast<std::size_t>(grid.nx));
  for (int i = 0; i < grid.nx; ++i) f.values[static_cast<std::size_t>(i)] = evaluate(grid.x(i));
  f.far_left = far_left();
  f.far_right = far_right();
  return f;
}

InitialData InitialData::blend_towards(const InitialData& other, double lambda) const {
  const Step* a = as_step();
  const Step* b = other.as_step();
  if (!a || !b) throw ConfigError("blend_towards: supported for step data only");
  return step(a->u_minus + lambda * (b->u_minus - a->u_minus),
              a->u_plus + lambda * (b->u_plus - a->u_plus));
}

} // namespace gb
