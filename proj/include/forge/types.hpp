#ifndef FORGE_TYPES_HPP
#define FORGE_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace forge {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Complex = std::complex<double>;

inline Vec scalar_vec(double x) {
  Vec v(1);
  v(0) = x;
  return v;
}

// Invalid parameter ranges (alpha out of (0,2], negative mass, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Arguments outside an operation's domain (t < 0, empty sample, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested combination is not implemented (e.g. exact sampling of a
// generic triplet in d > 1).
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical routine could not reach the requested accuracy; carries the
// residual estimate.
struct AccuracyError : std::runtime_error {
  AccuracyError(const std::string& what, double residual)
      : std::runtime_error(what), residual_estimate(residual) {}
  double residual_estimate;
};

// Simulation budget exhausted (e.g. adaptive horizon cap exceeded).
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace forge

#endif
