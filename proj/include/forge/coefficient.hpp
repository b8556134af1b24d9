#ifndef FORGE_COEFFICIENT_HPP
#define FORGE_COEFFICIENT_HPP

#include <functional>
#include <string>
#include <vector>

#include "forge/types.hpp"

namespace forge {

// Positive continuous state coefficient x -> phi(x) with a declared growth
// exponent (phi(x) <= C (1 + |x|^growth)). Builtin forms cover the
// coefficients used throughout; arbitrary ones come from expressions,
// tabulated grids, or raw callables.
class StateCoefficient {
 public:
  enum class Form {
    constant,     // c
    power,        // 1 + |x|^gamma
    bounded_trig, // 1 + a sin(|x|), |a| < 1
    exponential,  // e^{|x|}
    expression,   // parsed 1-d expression in x
    tabulated,    // 1-d grid with linear interpolation
    custom,
  };

  StateCoefficient()
      : fn_([](const Vec&) { return 1.0; }), label_("constant") {}

  static StateCoefficient constant(double c);
  static StateCoefficient power(double gamma);
  static StateCoefficient bounded_trig(double a);
  static StateCoefficient exponential();
  static StateCoefficient from_expression(const std::string& text,
                                          double growth_exponent);
  static StateCoefficient tabulated(std::vector<double> xs,
                                    std::vector<double> values,
                                    double growth_exponent);
  static StateCoefficient custom(std::function<double(const Vec&)> f,
                                 double growth_exponent, std::string label);

  // phi(x); throws DomainError on non-finite or non-positive values.
  double operator()(const Vec& x) const;
  double operator()(double x) const;

  // Unguarded evaluation, for diagnostic overrides that deliberately admit
  // zero (e.g. a frozen dispersion coefficient).
  double raw(const Vec& x) const { return fn_(x); }

  // |sigma(x)|^alpha, the coefficient induced by an SDE dispersion sigma.
  StateCoefficient to_power(double alpha) const;

  double growth_exponent() const { return growth_; }
  Form form() const { return form_; }
  const std::string& label() const { return label_; }
  double param() const { return param_; }
  const std::string& expression_text() const { return expr_text_; }
  const std::vector<double>& table_xs() const { return table_xs_; }
  const std::vector<double>& table_values() const { return table_values_; }

 private:
  std::function<double(const Vec&)> fn_;
  double growth_ = 0.0;
  Form form_ = Form::constant;
  double param_ = 1.0;
  std::string label_;
  std::string expr_text_;
  std::vector<double> table_xs_, table_values_;
};

}  // namespace forge

#endif
