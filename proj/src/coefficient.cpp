#include "forge/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "forge/expr.hpp"

namespace forge {

StateCoefficient StateCoefficient::constant(double c) {
  if (!(c > 0.0)) throw ParameterError("constant coefficient must be > 0");
  StateCoefficient s;
  s.fn_ = [c](const Vec&) { return c; };
  s.growth_ = 0.0;
  s.form_ = Form::constant;
  s.param_ = c;
  s.label_ = "constant";
  return s;
}

StateCoefficient StateCoefficient::power(double gamma) {
  StateCoefficient s;
  s.fn_ = [gamma](const Vec& x) { return 1.0 + std::pow(x.norm(), gamma); };
  s.growth_ = std::max(gamma, 0.0);
  s.form_ = Form::power;
  s.param_ = gamma;
  s.label_ = "power";
  return s;
}

StateCoefficient StateCoefficient::bounded_trig(double a) {
  if (!(std::abs(a) < 1.0))
    throw ParameterError("bounded_trig amplitude must satisfy |a| < 1");
  StateCoefficient s;
  s.fn_ = [a](const Vec& x) { return 1.0 + a * std::sin(x.norm()); };
  s.growth_ = 0.0;
  s.form_ = Form::bounded_trig;
  s.param_ = a;
  s.label_ = "bounded_trig";
  return s;
}

StateCoefficient StateCoefficient::exponential() {
  StateCoefficient s;
  s.fn_ = [](const Vec& x) { return std::exp(x.norm()); };
  s.growth_ = std::numeric_limits<double>::infinity();
  s.form_ = Form::exponential;
  s.label_ = "exponential";
  return s;
}

StateCoefficient StateCoefficient::from_expression(const std::string& text,
                                                   double growth_exponent) {
  auto f = parse_expression(text);
  StateCoefficient s;
  s.fn_ = [f](const Vec& x) { return f(x(0)); };
  s.growth_ = growth_exponent;
  s.form_ = Form::expression;
  s.label_ = text;
  s.expr_text_ = text;
  return s;
}

StateCoefficient StateCoefficient::tabulated(std::vector<double> xs,
                                             std::vector<double> values,
                                             double growth_exponent) {
  if (xs.size() != values.size() || xs.size() < 2)
    throw ParameterError("tabulated coefficient needs >= 2 matching knots");
  if (!std::is_sorted(xs.begin(), xs.end()))
    throw ParameterError("tabulated coefficient grid must be sorted");
  StateCoefficient s;
  auto grid = std::make_shared<std::pair<std::vector<double>, std::vector<double>>>(
      xs, values);
  s.fn_ = [grid](const Vec& xv) {
    const auto& [g, v] = *grid;
    double x = xv(0);
    if (x <= g.front()) return v.front();
    if (x >= g.back()) return v.back();
    auto it = std::upper_bound(g.begin(), g.end(), x);
    std::size_t i = static_cast<std::size_t>(it - g.begin());
    double w = (x - g[i - 1]) / (g[i] - g[i - 1]);
    return v[i - 1] + w * (v[i] - v[i - 1]);
  };
  s.growth_ = growth_exponent;
  s.form_ = Form::tabulated;
  s.label_ = "tabulated";
  s.table_xs_ = std::move(xs);
  s.table_values_ = std::move(values);
  return s;
}

StateCoefficient StateCoefficient::custom(std::function<double(const Vec&)> f,
                                          double growth_exponent,
                                          std::string label) {
  StateCoefficient s;
  s.fn_ = std::move(f);
  s.growth_ = growth_exponent;
  s.form_ = Form::custom;
  s.label_ = std::move(label);
  return s;
}

double StateCoefficient::operator()(const Vec& x) const {
  double v = fn_(x);
  // +infinity is admitted (overflow of a legitimately growing coefficient);
  // the condition traces propagate it as divergence.
  if (std::isnan(v) || v <= 0.0)
    throw DomainError("coefficient '" + label_ +
                      "' is not positive at the probed state");
  return v;
}

double StateCoefficient::operator()(double x) const {
  return (*this)(scalar_vec(x));
}

StateCoefficient StateCoefficient::to_power(double alpha) const {
  auto base = fn_;
  std::string label = "|" + label_ + "|^" + std::to_string(alpha);
  StateCoefficient s =
      custom([base, alpha](const Vec& x) { return std::pow(std::abs(base(x)), alpha); },
             growth_ * alpha, label);
  return s;
}

}  // namespace forge
