#include "forge/quadrature.hpp"

#include <cmath>

#include "doctest.h"

using namespace forge;

TEST_CASE("polynomial exact") {
  std::function<double(double)> f = [](double x) { return x * x * x - 2 * x + 1; };
  auto r = integrate<double>(f, -1.0, 3.0);
  CHECK(r.value == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("oscillatory integrand") {
  std::function<double(double)> f = [](double x) { return std::cos(37.0 * x); };
  auto r = integrate<double>(f, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(std::sin(37.0) / 37.0).epsilon(1e-10));
}

TEST_CASE("integrable endpoint singularity") {
  // \int_a^1 x^{-0.9} dx = 10 (1 - a^{0.1})
  std::function<double(double)> f = [](double x) { return std::pow(x, -0.9); };
  auto r = integrate_panels<double>(f, {1e-14, 1e-8, 1e-4, 1e-2, 1.0});
  CHECK(r.value ==
        doctest::Approx(10.0 * (1.0 - std::pow(1e-14, 0.1))).epsilon(1e-6));
}

TEST_CASE("complex integrand") {
  std::function<Complex(double)> f = [](double x) {
    return std::exp(Complex(0.0, x));
  };
  auto r = integrate<Complex>(f, 0.0, 1.0);
  CHECK(r.value.real() == doctest::Approx(std::sin(1.0)).epsilon(1e-12));
  CHECK(r.value.imag() == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-12));
}

TEST_CASE("semi-infinite tail") {
  std::function<double(double)> f = [](double x) { return std::exp(-x); };
  auto r = integrate_to_infinity<double>(f, 2.0);
  CHECK(r.value == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));

  std::function<double(double)> g = [](double x) { return std::pow(x, -2.5); };
  auto r2 = integrate_to_infinity<double>(g, 1.0);
  CHECK(r2.value == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
}
