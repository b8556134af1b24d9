#ifndef FORGE_EXPR_HPP
#define FORGE_EXPR_HPP

#include <functional>
#include <string>

#include "forge/types.hpp"

namespace forge {

// Parse error for coefficient mini-expressions.
struct ExprError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Small arithmetic grammar for coefficient expressions in one variable x:
// numbers, x, + - * / ^, parentheses, unary minus, and the functions
// sin, cos, exp, abs, sqrt, min(a,b), max(a,b). "1+0.5*sin(x)" etc.
std::function<double(double)> parse_expression(const std::string& text);

}  // namespace forge

#endif
