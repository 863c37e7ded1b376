#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "linkops/numerics.hpp"

using namespace linkops;

namespace {

// Reference product by direct multiplication, kept separate from the
// implementation on purpose.
double product_oracle(double a, double c, long j, bool rising) {
  double acc = 1.0;
  for (long l = 0; l < j; ++l)
    acc *= rising ? (a + c * static_cast<double>(l))
                  : (a - c * static_cast<double>(l));
  return acc;
}

// Exhaustive enumeration of {0,...,rho-1}^k.
std::vector<double> composition_oracle(int k, long rho) {
  std::vector<double> counts(static_cast<std::size_t>(k * (rho - 1)) + 1, 0.0);
  std::vector<long> tuple(static_cast<std::size_t>(k), 0);
  for (;;) {
    long sum = 0;
    for (long v : tuple) sum += v;
    counts[static_cast<std::size_t>(sum)] += 1.0;
    int pos = 0;
    while (pos < k) {
      if (++tuple[static_cast<std::size_t>(pos)] < rho) break;
      tuple[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  return counts;
}

} // namespace

TEST_CASE("factorial products match the direct loop oracle") {
  CHECK(factorial_product(2.0, -1.0, 0, ProductDirection::rising) == 1.0);
  CHECK(factorial_product(2.0, -1.0, 2, ProductDirection::rising) ==
        doctest::Approx(2.0));
  CHECK(factorial_product(6.0, 1.0, 3, ProductDirection::falling) ==
        doctest::Approx(120.0));

  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    double a = unif(rng);
    double c = unif(rng);
    long j = static_cast<long>(rng() % 8);
    CHECK(factorial_product(a, c, j, ProductDirection::rising) ==
          doctest::Approx(product_oracle(a, c, j, true)).epsilon(1e-13));
    CHECK(factorial_product(a, c, j, ProductDirection::falling) ==
          doctest::Approx(product_oracle(a, c, j, false)).epsilon(1e-13));
  }
}

TEST_CASE("log-domain product tracks sign and magnitude") {
  SignedLog p = log_abs_factorial_product(2.0, -1.0, 4,
                                          ProductDirection::rising);
  // 2*1*0*(-1) hits a zero factor
  CHECK(p.sign == 0);

  p = log_abs_factorial_product(0.5, -1.0, 3, ProductDirection::rising);
  // 0.5 * -0.5 * -1.5 = 0.375
  CHECK(p.sign == 1);
  CHECK(std::exp(p.log_abs) == doctest::Approx(0.375));

  p = log_abs_factorial_product(0.5, -1.0, 2, ProductDirection::rising);
  CHECK(p.sign == -1);
  CHECK(std::exp(p.log_abs) == doctest::Approx(0.25));
}

TEST_CASE("log_gamma and log_beta") {
  CHECK(log_beta(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(log_beta(2.0, 3.0) ==
        doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-13));
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_beta(-1.0, 2.0), DomainError);

  // exp(log_gamma) against exact factorials across the stated range
  double fact = 1.0;
  for (int m = 1; m <= 20; ++m) {
    fact *= m;
    CHECK(std::exp(log_gamma(static_cast<double>(m) + 1.0)) ==
          doctest::Approx(fact).epsilon(1e-13));
  }
}

TEST_CASE("integrate: basic examples") {
  Tolerances tol;
  CHECK(integrate([](double) { return 1.0; }, Interval{0.0, 1.0}, tol) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate([](double t) { return std::exp(-t); },
                  Interval{0.0, kInfinity}, tol) ==
        doctest::Approx(1.0).epsilon(1e-10));
  // 3 t e^{-3t} on [0, inf): mass of p_{3,1} with c = 0; antiderivative
  // gives exactly 1/3.
  CHECK(integrate([](double t) { return 3.0 * t * std::exp(-3.0 * t); },
                  Interval{0.0, kInfinity}, tol) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("integrate: exact on polynomials vs symbolic antiderivative") {
  Tolerances tol;
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int degree = 0; degree <= 10; ++degree) {
    std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1);
    for (double& v : coeffs) v = unif(rng);
    std::vector<double> anti = poly::antiderivative(coeffs);
    double expected = poly::eval(anti, 1.0) - poly::eval(anti, 0.0);
    double got = integrate([&coeffs](double t) { return poly::eval(coeffs, t); },
                           Interval{0.0, 1.0}, tol);
    CHECK(got == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("integrate: beta identity against log_beta") {
  // B(x,y) via t = sin^2(theta), which removes the endpoint singularities
  // for x, y >= 1/2 and stays independent of the lgamma route.
  Tolerances tol;
  constexpr double kPi = 3.14159265358979323846;
  for (double x = 0.5; x <= 8.0; x += 1.875) {
    for (double y = 0.5; y <= 8.0; y += 1.875) {
      double direct = integrate(
          [x, y](double theta) {
            double s = std::sin(theta);
            double c = std::cos(theta);
            return 2.0 * std::pow(s, 2.0 * x - 1.0) *
                   std::pow(c, 2.0 * y - 1.0);
          },
          Interval{0.0, kPi / 2.0}, tol);
      CHECK(direct ==
            doctest::Approx(std::exp(log_beta(x, y))).epsilon(1e-9));
    }
  }
}

TEST_CASE("integrate: reports non-convergence instead of degrading") {
  Tolerances tol;
  CHECK_THROWS_AS(integrate([](double t) { return std::pow(t, -0.9); },
                            Interval{0.0, 1.0}, tol),
                  NumericError);
}

TEST_CASE("composition counts") {
  CHECK((composition_counts(0, 5) == std::vector<double>{1.0}));
  CHECK((composition_counts(2, 2) == std::vector<double>{1.0, 2.0, 1.0}));
  CHECK((composition_counts(3, 2) == std::vector<double>{1.0, 3.0, 3.0, 1.0}));

  for (int k = 0; k <= 4; ++k)
    for (long rho = 1; rho <= 5; ++rho)
      CHECK(composition_counts(k, rho) == composition_oracle(k, rho));

  for (int k = 0; k <= 6; ++k) {
    for (long rho = 1; rho <= 8; ++rho) {
      std::vector<double> counts = composition_counts(k, rho);
      double total = 0.0;
      for (double v : counts) total += v;
      CHECK(total == doctest::Approx(std::pow(static_cast<double>(rho), k)));
    }
  }
}

TEST_CASE("forward and divided differences") {
  FunctionSpec e1 = monomial(1);
  FunctionSpec e2 = monomial(2);
  CHECK(forward_difference(e2, 0.1, 0, 0.7) == doctest::Approx(0.49));
  CHECK(forward_difference(e2, 0.1, 2, 0.0) ==
        doctest::Approx(0.02).epsilon(1e-12));
  CHECK(forward_difference(e1, 0.37, 2, 1.3) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Newton-table divided differences equal forward differences / (k! h^k)
  // over equally spaced nodes, on random polynomials of degree <= 6.
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    int degree = static_cast<int>(rng() % 7);
    std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1);
    for (double& v : coeffs) v = unif(rng);
    RealFn g = [&coeffs](double t) { return poly::eval(coeffs, t); };
    int k = static_cast<int>(rng() % 5);
    double h = 0.05 + 0.2 * std::fabs(unif(rng));
    double x0 = unif(rng);
    std::vector<double> nodes(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) nodes[static_cast<std::size_t>(i)] = x0 + i * h;
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    double scaled = forward_difference(g, h, k, x0) /
                    (kfact * std::pow(h, k));
    double divided = divided_difference(g, nodes);
    CHECK(divided == doctest::Approx(scaled).epsilon(1e-12));
  }
}

TEST_CASE("iterated integral") {
  Tolerances tol;
  CHECK(iterated_integral(monomial(0), 1, 2.0, tol) == doctest::Approx(2.0));
  CHECK(iterated_integral(monomial(1), 1, 1.0, tol) == doctest::Approx(0.5));
  CHECK(iterated_integral(monomial(0), 2, 1.0, tol) == doctest::Approx(0.5));
  CHECK(iterated_integral(monomial(2), 0, 0.3, tol) == doctest::Approx(0.09));

  // quadrature path agrees with the exact antiderivative path
  FunctionSpec decay = FunctionSpec::catalog("exp_decay", 2.0);
  double got = iterated_integral(decay, 1, 1.5, tol);
  CHECK(got == doctest::Approx((1.0 - std::exp(-3.0)) / 2.0).epsilon(1e-10));
  double got2 = iterated_integral(decay, 2, 1.5, tol);
  // I_2 e^{-2t}(x) = x/2 - (1 - e^{-2x})/4
  CHECK(got2 ==
        doctest::Approx(1.5 / 2.0 - (1.0 - std::exp(-3.0)) / 4.0)
            .epsilon(1e-10));
}

TEST_CASE("modulus estimate") {
  FunctionSpec e1 = monomial(1);
  CHECK(modulus_estimate(e1, 0.25, Interval{0.0, 1.0}) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(modulus_estimate(monomial(0), 0.3, Interval{0.0, 1.0}) ==
        doctest::Approx(0.0));
  FunctionSpec kink = FunctionSpec::catalog("abs_shift", 0.5);
  CHECK(modulus_estimate(kink, 0.1, Interval{0.0, 1.0}) ==
        doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(modulus_estimate(e1, 0.1, Interval{0.0, kInfinity}),
                  DomainError);
}
