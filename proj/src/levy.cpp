#include "forge/levy.hpp"

#include <algorithm>
#include <cmath>

namespace forge {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Panel breakpoints for the radial part of the jump integral; the integrand
// changes character at the compensation radius 1 and is steep near 0.
std::vector<double> radial_panels(double lo, double hi) {
  std::vector<double> pts = {1e-16, 1e-12, 1e-8, 1e-5, 1e-3, 1e-2,
                             0.1,   0.5,   1.0,  2.0,  10.0, 1e2,
                             1e3,   1e4};
  std::vector<double> out;
  out.push_back(lo);
  for (double p : pts)
    if (p > lo && p < hi) out.push_back(p);
  out.push_back(hi);
  return out;
}

struct JumpIntegral {
  Complex value;
  double error;
};

// 1 - e^{iu} + iu (compensated) / 1 - e^{iu} (raw), evaluated without
// cancellation for small u.
inline Complex one_minus_exp_iu(double u, bool compensated) {
  const double s = std::sin(0.5 * u);
  const double re = 2.0 * s * s;  // 1 - cos(u)
  if (!compensated) return Complex(re, -std::sin(u));
  // u - sin(u) = u^3/6 (1 - u^2/20 + u^4/840 - ...)
  double im;
  if (std::abs(u) < 1e-3) {
    const double u2 = u * u;
    im = u * u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0));
  } else {
    im = u - std::sin(u);
  }
  return Complex(re, im);
}

// \int (1 - e^{iy xi} + i y xi 1_{(0,1)}(|y|)) n(y) dy over one half-line
// (sign = +1 or -1), d = 1.
JumpIntegral half_line_jump_integral(const LevyTriplet& tr, double xi,
                                     double sign,
                                     const QuadratureConfig& quad) {
  const double y_max = 1e4;
  std::function<Complex(double)> g = [&](double r) -> Complex {
    const double y = sign * r;
    const double n = tr.density(y);
    if (n == 0.0) return Complex(0.0, 0.0);
    const double u = y * xi;
    return one_minus_exp_iu(u, r < 1.0) * n;
  };
  auto body = integrate_panels<Complex>(g, radial_panels(1e-16, y_max), quad);

  // Tail beyond y_max: the "1" part integrates exactly, the oscillatory
  // e^{iy xi} part is only bounded and goes into the error estimate.
  std::function<double(double)> nf = [&](double r) { return tr.density(sign * r); };
  auto tail = integrate_to_infinity<double>(nf, y_max, quad);
  double osc_bound =
      std::min(2.0 * tail.value,
               4.0 * tr.density(sign * y_max) * std::max(1.0, 1.0 / std::max(std::abs(xi), 1e-12)));

  JumpIntegral out;
  out.value = body.value + Complex(tail.value, 0.0);
  out.error = body.error + tail.error + osc_bound;
  return out;
}

JumpIntegral jump_integral(const LevyTriplet& tr, const Vec& xi,
                           const QuadratureConfig& quad) {
  if (tr.dim() == 1) {
    auto pos = half_line_jump_integral(tr, xi(0), +1.0, quad);
    auto neg = half_line_jump_integral(tr, xi(0), -1.0, quad);
    return {pos.value + neg.value, pos.error + neg.error};
  }
  if (tr.dim() != 2)
    throw CapabilityError("levy_khintchine quadrature supports d = 1 or 2");

  // Polar: trapezoid in the angle (periodic, spectrally accurate), adaptive
  // panels in the radius.
  const int n_theta = 32;
  const double y_max = 1e4;
  JumpIntegral out{Complex(0, 0), 0.0};
  for (int k = 0; k < n_theta; ++k) {
    const double theta = 2.0 * kPi * k / n_theta;
    Vec u(2);
    u << std::cos(theta), std::sin(theta);
    const double proj = u.dot(xi);
    std::function<Complex(double)> g = [&](double r) -> Complex {
      Vec y = r * u;
      const double n = tr.jump_density(y);
      if (n == 0.0) return Complex(0.0, 0.0);
      const double s = r * proj;
      return one_minus_exp_iu(s, r < 1.0) * (n * r);
    };
    auto body = integrate_panels<Complex>(g, radial_panels(1e-16, y_max), quad);
    std::function<double(double)> nf = [&](double r) {
      return tr.jump_density(Vec(r * u)) * r;
    };
    auto tail = integrate_to_infinity<double>(nf, y_max, quad);
    out.value += (body.value + Complex(tail.value, 0.0)) * (2.0 * kPi / n_theta);
    out.error += (body.error + tail.error + 2.0 * tail.value) * (2.0 * kPi / n_theta);
  }
  return out;
}

}  // namespace

double LevyTriplet::density(double y) const {
  if (!jump_density) return 0.0;
  return jump_density(scalar_vec(y));
}

void LevyTriplet::validate() const {
  const int d = dim();
  if (d < 1) throw ParameterError("LevyTriplet: dimension must be >= 1");
  if (diffusion.rows() != d || diffusion.cols() != d)
    throw ParameterError("LevyTriplet: Q must be d x d");
  if ((diffusion - diffusion.transpose()).norm() > 1e-12 * (1.0 + diffusion.norm()))
    throw ParameterError("LevyTriplet: Q must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(diffusion);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw ParameterError("LevyTriplet: Q must be positive semi-definite");
  if (!(tail_exponent > 0.0 && tail_exponent <= 2.0))
    throw ParameterError("LevyTriplet: tail exponent must be in (0,2]");
  if (!jump_density) return;
  if (d > 2)
    throw CapabilityError("LevyTriplet jump integrals support d = 1 or 2");

  // \int min(|y|^2, 1) n(y) dy < infty, probed by quadrature.
  QuadratureConfig quad;
  quad.rel_tol = 1e-6;
  double total = 0.0;
  auto integrand = [&](const Vec& y) {
    double r2 = y.squaredNorm();
    return std::min(r2, 1.0) * jump_density(y);
  };
  if (d == 1) {
    for (double sign : {-1.0, 1.0}) {
      std::function<double(double)> g = [&](double r) {
        return integrand(scalar_vec(sign * r));
      };
      total += integrate_panels<double>(g, radial_panels(1e-16, 1e4), quad).value;
      total += integrate_to_infinity<double>(g, 1e4, quad).value;
    }
  } else {
    for (int k = 0; k < 16; ++k) {
      const double theta = 2.0 * kPi * k / 16;
      Vec u(2);
      u << std::cos(theta), std::sin(theta);
      std::function<double(double)> g = [&](double r) {
        return integrand(Vec(r * u)) * r;
      };
      total += integrate_panels<double>(g, radial_panels(1e-16, 1e4), quad).value *
               (2.0 * kPi / 16);
    }
  }
  if (!std::isfinite(total))
    throw ParameterError("LevyTriplet: \\int min(|y|^2,1) n(y) dy diverges");
}

LevyTriplet LevyTriplet::pure_drift(const Vec& b) {
  LevyTriplet t;
  t.drift = b;
  t.diffusion = Mat::Zero(b.size(), b.size());
  return t;
}

LevyTriplet LevyTriplet::pure_diffusion(const Mat& Q) {
  LevyTriplet t;
  t.drift = Vec::Zero(Q.rows());
  t.diffusion = Q;
  return t;
}

LevyTriplet LevyTriplet::stable_1d(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw ParameterError("stable_1d: alpha must be in (0,2)");
  const double c = stable_density_normalization(alpha);
  LevyTriplet t;
  t.drift = Vec::Zero(1);
  t.diffusion = Mat::Zero(1, 1);
  t.jump_density = [c, alpha](const Vec& y) {
    return c * std::pow(std::abs(y(0)), -1.0 - alpha);
  };
  t.tail_exponent = alpha;
  t.small_jump_exponent = alpha;
  return t;
}

ExponentSpec ExponentSpec::isotropic_stable(double alpha, int dim) {
  ExponentSpec s;
  s.family = ExponentFamily::isotropic_stable;
  s.alpha = alpha;
  s.dim = dim;
  s.validate();
  return s;
}

ExponentSpec ExponentSpec::relativistic_stable(double alpha, double m, int dim) {
  ExponentSpec s;
  s.family = ExponentFamily::relativistic_stable;
  s.alpha = alpha;
  s.mass = m;
  s.dim = dim;
  s.validate();
  return s;
}

ExponentSpec ExponentSpec::truncated_stable(double alpha, double m) {
  ExponentSpec s;
  s.family = ExponentFamily::truncated_stable;
  s.alpha = alpha;
  s.mass = m;
  s.dim = 1;
  s.validate();
  return s;
}

ExponentSpec ExponentSpec::homographic(double lambda, int dim) {
  ExponentSpec s;
  s.family = ExponentFamily::homographic;
  s.lambda = lambda;
  s.dim = dim;
  s.validate();
  return s;
}

ExponentSpec ExponentSpec::generic(LevyTriplet triplet) {
  triplet.validate();
  ExponentSpec s;
  s.family = ExponentFamily::generic;
  s.dim = triplet.dim();
  s.triplet = std::move(triplet);
  return s;
}

void ExponentSpec::validate() const {
  if (dim < 1) throw ParameterError("ExponentSpec: dimension must be >= 1");
  switch (family) {
    case ExponentFamily::isotropic_stable:
      if (!(alpha > 0.0 && alpha <= 2.0))
        throw ParameterError("isotropic_stable: alpha must be in (0,2]");
      break;
    case ExponentFamily::relativistic_stable:
      if (!(alpha > 0.0 && alpha < 2.0))
        throw ParameterError("relativistic_stable: alpha must be in (0,2)");
      if (!(mass > 0.0)) throw ParameterError("relativistic_stable: m must be > 0");
      break;
    case ExponentFamily::truncated_stable:
      if (!(alpha > 0.0 && alpha < 1.0))
        throw ParameterError("truncated_stable: alpha must be in (0,1)");
      if (!(mass > 0.0)) throw ParameterError("truncated_stable: m must be > 0");
      if (dim != 1) throw CapabilityError("truncated_stable: d = 1 only");
      break;
    case ExponentFamily::homographic:
      if (!(lambda > 0.0)) throw ParameterError("homographic: lambda must be > 0");
      break;
    case ExponentFamily::generic:
      if (!triplet) throw ParameterError("generic: missing Levy triplet");
      triplet->validate();
      break;
  }
}

Complex evaluate_exponent(const ExponentSpec& spec, const Vec& xi) {
  spec.validate();
  if (xi.size() != spec.dim)
    throw DomainError("evaluate_exponent: xi has wrong dimension");
  const double r2 = xi.squaredNorm();
  if (r2 == 0.0) return Complex(0.0, 0.0);
  const double r = std::sqrt(r2);
  switch (spec.family) {
    case ExponentFamily::isotropic_stable:
      return Complex(std::pow(r, spec.alpha), 0.0);
    case ExponentFamily::relativistic_stable: {
      const double m = spec.mass;
      return Complex(std::pow(r2 + m * m, 0.5 * spec.alpha) -
                         std::pow(m, spec.alpha),
                     0.0);
    }
    case ExponentFamily::truncated_stable: {
      const double m = spec.mass;
      const double mod = std::pow(r2 + m * m, 0.5 * spec.alpha);
      return Complex(mod * std::cos(spec.alpha * std::atan(r / m)) -
                         std::pow(m, spec.alpha),
                     0.0);
    }
    case ExponentFamily::homographic: {
      const double l = spec.lambda;
      return Complex(l * r2 / (1.0 + l * r2), 0.0);
    }
    case ExponentFamily::generic:
      return levy_khintchine(*spec.triplet, xi).value;
  }
  return Complex(0.0, 0.0);
}

Complex evaluate_exponent(const ExponentSpec& spec, double xi) {
  return evaluate_exponent(spec, scalar_vec(xi));
}

LKResult levy_khintchine(const LevyTriplet& triplet, const Vec& xi,
                         const QuadratureConfig& quad) {
  if (xi.size() != triplet.dim())
    throw DomainError("levy_khintchine: xi has wrong dimension");
  LKResult out;
  out.value = Complex(0.5 * xi.dot(triplet.diffusion * xi), -triplet.drift.dot(xi));
  if (triplet.has_jumps() && xi.squaredNorm() > 0.0) {
    auto j = jump_integral(triplet, xi, quad);
    out.value += j.value;
    out.error = j.error;
  }
  return out;
}

Complex transition_cf_reference(const ExponentSpec& spec, double t,
                                const Vec& xi) {
  if (t < 0.0) throw DomainError("transition_cf_reference: t must be >= 0");
  if (t == 0.0) return Complex(1.0, 0.0);
  return std::exp(-t * evaluate_exponent(spec, xi));
}

Complex transition_cf_reference(const ExponentSpec& spec, double t, double xi) {
  return transition_cf_reference(spec, t, scalar_vec(xi));
}

double stable_density_normalization(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw ParameterError("stable_density_normalization: alpha must be in (0,2)");
  // 2 \int_0^inf (1-cos u) u^{-1-alpha} du = pi for alpha = 1 and
  // 2 Gamma(2-alpha) cos(pi alpha/2) / (alpha (1-alpha)) otherwise.
  if (std::abs(alpha - 1.0) < 1e-12) return 1.0 / kPi;
  return alpha * (1.0 - alpha) /
         (2.0 * std::tgamma(2.0 - alpha) * std::cos(0.5 * kPi * alpha));
}

double sample_symmetric_stable(double alpha, RngStream& rng) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw ParameterError("sample_symmetric_stable: alpha must be in (0,2]");
  if (alpha == 2.0) return std::sqrt(2.0) * rng.normal();
  const double v = kPi * (rng.uniform() - 0.5);
  if (std::abs(alpha - 1.0) < 1e-12) return std::tan(v);  // Cauchy
  const double w = rng.exponential();
  // Chambers-Mallows-Stuck, symmetric case; CF exp(-|xi|^alpha).
  return std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
         std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
}

double sample_onesided_stable(double alpha, RngStream& rng) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParameterError("sample_onesided_stable: alpha must be in (0,1)");
  // Kanter's representation; Laplace transform exp(-u^alpha).
  const double u = kPi * rng.uniform();
  const double w = rng.exponential();
  const double a = std::pow(std::sin(alpha * u), alpha / (1.0 - alpha)) *
                   std::sin((1.0 - alpha) * u) /
                   std::pow(std::sin(u), 1.0 / (1.0 - alpha));
  return std::pow(a / w, (1.0 - alpha) / alpha);
}

namespace {

// Tempered one-sided stable with Laplace exponent (u+theta)^alpha - theta^alpha
// at time t, by exponential tilting of the stable subordinator. Acceptance
// rate exp(-t theta^alpha), so this is only viable at desk-scale t theta^alpha.
double sample_tempered_subordinator(double alpha, double theta, double t,
                                    RngStream& rng) {
  if (t * std::pow(theta, alpha) > 30.0)
    throw CapabilityError(
        "tempered subordinator: rejection rate too low for t * theta^alpha");
  const double scale = std::pow(t, 1.0 / alpha);
  for (int iter = 0; iter < 100000000; ++iter) {
    const double s = scale * sample_onesided_stable(alpha, rng);
    if (rng.uniform() < std::exp(-theta * s)) return s;
  }
  throw CapabilityError("tempered subordinator: rejection sampling stalled");
}

Eigen::RowVectorXd sample_gaussian_vec(double variance, int d, RngStream& rng) {
  Eigen::RowVectorXd row(d);
  const double sd = std::sqrt(variance);
  for (int j = 0; j < d; ++j) row(j) = sd * rng.normal();
  return row;
}

}  // namespace

Mat sample_increments(const ExponentSpec& spec, double t, int n,
                      RngStream& rng) {
  spec.validate();
  if (!(t > 0.0)) throw DomainError("sample_increments: t must be > 0");
  if (n < 1) throw DomainError("sample_increments: n must be >= 1");
  const int d = spec.dim;
  Mat out(n, d);
  switch (spec.family) {
    case ExponentFamily::isotropic_stable: {
      if (spec.alpha == 2.0) {
        for (int i = 0; i < n; ++i) out.row(i) = sample_gaussian_vec(2.0 * t, d, rng);
      } else if (d == 1) {
        const double scale = std::pow(t, 1.0 / spec.alpha);
        for (int i = 0; i < n; ++i)
          out(i, 0) = scale * sample_symmetric_stable(spec.alpha, rng);
      } else {
        // Brownian motion (CF exp(-t|xi|^2)) subordinated by an
        // (alpha/2)-stable subordinator.
        const double scale = std::pow(t, 2.0 / spec.alpha);
        for (int i = 0; i < n; ++i) {
          const double s = scale * sample_onesided_stable(0.5 * spec.alpha, rng);
          out.row(i) = sample_gaussian_vec(2.0 * s, d, rng);
        }
      }
      break;
    }
    case ExponentFamily::relativistic_stable: {
      const double theta = spec.mass * spec.mass;
      for (int i = 0; i < n; ++i) {
        const double s =
            sample_tempered_subordinator(0.5 * spec.alpha, theta, t, rng);
        out.row(i) = sample_gaussian_vec(2.0 * s, d, rng);
      }
      break;
    }
    case ExponentFamily::truncated_stable: {
      // Difference of two independent tempered subordinators at time t/2,
      // each with Laplace exponent (u+m)^alpha - m^alpha.
      for (int i = 0; i < n; ++i) {
        const double t1 =
            sample_tempered_subordinator(spec.alpha, spec.mass, 0.5 * t, rng);
        const double t2 =
            sample_tempered_subordinator(spec.alpha, spec.mass, 0.5 * t, rng);
        out(i, 0) = t1 - t2;
      }
      break;
    }
    case ExponentFamily::homographic: {
      // Compound Poisson, rate 1, jumps sqrt(2 lambda E) Z whose CF is
      // 1/(1 + lambda |xi|^2).
      for (int i = 0; i < n; ++i) {
        Eigen::RowVectorXd x = Eigen::RowVectorXd::Zero(d);
        const std::uint64_t jumps = rng.poisson(t);
        for (std::uint64_t k = 0; k < jumps; ++k) {
          const double e = rng.exponential();
          x += std::sqrt(2.0 * spec.lambda * e) *
               sample_gaussian_vec(1.0, d, rng);
        }
        out.row(i) = x;
      }
      break;
    }
    case ExponentFamily::generic: {
      if (d != 1)
        throw CapabilityError("sample_increments: generic triplets need d = 1");
      GenericSampler sampler(*spec.triplet);
      for (int i = 0; i < n; ++i) out(i, 0) = sampler.sample(t, rng);
      break;
    }
  }
  return out;
}

GenericSampler::GenericSampler(const LevyTriplet& triplet,
                               const QuadratureConfig& quad) {
  if (triplet.dim() != 1)
    throw CapabilityError("GenericSampler: d = 1 only");
  triplet.validate();
  drift_ = triplet.drift(0);
  gauss_var_ = triplet.diffusion(0, 0);
  if (!triplet.has_jumps()) return;

  auto small_jump_second_moment = [&](double eps) {
    std::function<double(double)> g = [&](double r) {
      return r * r * (triplet.density(r) + triplet.density(-r));
    };
    return integrate_panels<double>(g, radial_panels(1e-16, eps), quad).value;
  };

  // Cutoff chosen so the substituted Gaussian carries at most 1e-4 of the
  // total increment-variance proxy.
  const double proxy = gauss_var_ + small_jump_second_moment(1.0) +
                       [&] {
                         std::function<double(double)> g = [&](double r) {
                           return triplet.density(r) + triplet.density(-r);
                         };
                         return integrate_to_infinity<double>(g, 1.0, quad).value;
                       }();
  const double target = 1e-4 * proxy;
  cutoff_ = 1.0;
  while (cutoff_ > 1e-8 && small_jump_second_moment(cutoff_) > target)
    cutoff_ *= 0.5;
  small_jump_var_ = small_jump_second_moment(cutoff_);
  gauss_var_ += small_jump_var_;

  // Compensated drift: jumps in (cutoff, 1) are compensated in the exponent
  // but added raw by the compound Poisson part.
  {
    std::function<double(double)> g = [&](double r) {
      return r * (triplet.density(r) - triplet.density(-r));
    };
    drift_ -= integrate_panels<double>(g, radial_panels(cutoff_, 1.0), quad).value;
  }

  // Inverse-CDF table for jumps of size > cutoff, log-spaced on both sides.
  const double y_max = 1e6;
  const int n_per_side = 600;
  std::vector<double> grid;
  for (int i = 0; i <= n_per_side; ++i) {
    const double r =
        cutoff_ * std::pow(y_max / cutoff_, static_cast<double>(i) / n_per_side);
    grid.push_back(-r);
  }
  std::reverse(grid.begin(), grid.end());
  for (int i = 0; i <= n_per_side; ++i) {
    const double r =
        cutoff_ * std::pow(y_max / cutoff_, static_cast<double>(i) / n_per_side);
    grid.push_back(r);
  }
  jump_grid_ = grid;
  jump_cdf_.assign(grid.size(), 0.0);
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double a = grid[i], b = grid[i + 1];
    if (a < 0.0 && b > 0.0) {
      jump_cdf_[i + 1] = cum;  // the gap (-cutoff, cutoff) carries no mass
      continue;
    }
    std::function<double(double)> g = [&](double y) { return triplet.density(y); };
    cum += integrate<double>(g, a, b, quad).value;
    jump_cdf_[i + 1] = cum;
  }
  jump_rate_ = cum;
}

double GenericSampler::draw_jump(RngStream& rng) const {
  const double u = rng.uniform() * jump_rate_;
  auto it = std::upper_bound(jump_cdf_.begin(), jump_cdf_.end(), u);
  std::size_t i = std::min<std::size_t>(
      jump_cdf_.size() - 1,
      static_cast<std::size_t>(std::max<std::ptrdiff_t>(
          1, std::distance(jump_cdf_.begin(), it))));
  const double c0 = jump_cdf_[i - 1], c1 = jump_cdf_[i];
  const double w = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.5;
  return jump_grid_[i - 1] + w * (jump_grid_[i] - jump_grid_[i - 1]);
}

double GenericSampler::sample(double t, RngStream& rng) const {
  double x = drift_ * t;
  if (gauss_var_ > 0.0) x += std::sqrt(gauss_var_ * t) * rng.normal();
  if (jump_rate_ > 0.0) {
    const std::uint64_t jumps = rng.poisson(jump_rate_ * t);
    for (std::uint64_t k = 0; k < jumps; ++k) x += draw_jump(rng);
  }
  return x;
}

}  // namespace forge
