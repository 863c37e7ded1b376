#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "linkops/analysis.hpp"
#include "linkops/operators.hpp"

using namespace linkops;

namespace {

const Tolerances kTol;

double binomial(long n, long k) {
  double acc = 1.0;
  for (long i = 0; i < k; ++i)
    acc *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  return acc;
}

// Monomial coefficients of C(n,j) x^j (1-x)^{n-j}, used to differentiate
// Bernstein sums exactly in the chain-consistency check.
std::vector<double> bernstein_monomial_coeffs(long n, long j) {
  std::vector<double> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
  double cnj = binomial(n, j);
  for (long i = 0; i <= n - j; ++i)
    coeffs[static_cast<std::size_t>(j + i)] =
        cnj * binomial(n - j, i) * ((i % 2 == 0) ? 1.0 : -1.0);
  return coeffs;
}

// Direct Poisson-weighted summation, independent of basis_row.
double szasz_sum_oracle(double n, double x, const FunctionSpec& f) {
  double acc = 0.0;
  for (long j = 0; j <= 400; ++j) {
    double log_p = j * std::log(n * x) - std::lgamma(j + 1.0) - n * x;
    acc += std::exp(log_p) * f(static_cast<double>(j) / n);
  }
  return acc;
}

} // namespace

TEST_CASE("baskakov-type sampling operator") {
  FunctionSpec e0 = monomial(0);
  FunctionSpec e1 = monomial(1);
  FunctionSpec e2 = monomial(2);

  OperatorConfig szasz{0.0, 10.0, kInfinity, 0};
  CHECK(baskakov_inf_op(szasz, e0, 0.7, kTol) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(baskakov_inf_op(szasz, e1, 0.3, kTol) ==
        doctest::Approx(0.3).epsilon(1e-12));
  CHECK(baskakov_inf_op(szasz, e1, 0.3, kTol) ==
        doctest::Approx(szasz_sum_oracle(10.0, 0.3, e1)).epsilon(1e-12));

  OperatorConfig bern{-1.0, 2.0, kInfinity, 0};
  CHECK(baskakov_inf_op(bern, e2, 0.5, kTol) == doctest::Approx(0.375));
}

TEST_CASE("genuine durrmeyer operator") {
  FunctionSpec e0 = monomial(0);
  FunctionSpec e1 = monomial(1);
  FunctionSpec decay = FunctionSpec::catalog("exp_decay", 1.0);

  for (double c : {-1.0, 0.0, 1.0}) {
    double n = (c < 0.0) ? 5.0 : 4.0;
    OperatorConfig cfg{c, n, 1.0, 0};
    double upper = (c < 0.0) ? 1.0 : 1.0;
    for (int i = 0; i <= 4; ++i) {
      double x = upper * i / 4.0;
      INFO("c=" << c << " x=" << x);
      CHECK(genuine_durrmeyer_op(cfg, e0, x, kTol) ==
            doctest::Approx(1.0).epsilon(1e-9));
      CHECK(genuine_durrmeyer_op(cfg, e1, x, kTol) ==
            doctest::Approx(x).epsilon(1e-9));
      // agrees with the linking operator at rho = 1
      CHECK(genuine_durrmeyer_op(cfg, decay, x, kTol) ==
            doctest::Approx(linking_op(cfg, decay, x, kTol)).epsilon(1e-9));
    }
  }
  // x = 0 interpolates
  OperatorConfig cfg{0.0, 4.0, 1.0, 0};
  CHECK(genuine_durrmeyer_op(cfg, decay, 0.0, kTol) == doctest::Approx(1.0));

  // smallest Bernstein case: the single interior coefficient integrates
  // against the degree-0 basis p_{0,0} = 1
  OperatorConfig tiny{-1.0, 2.0, 1.0, 0};
  for (double x : {0.0, 0.3, 0.7, 1.0}) {
    CHECK(genuine_durrmeyer_op(tiny, e1, x, kTol) ==
          doctest::Approx(x).epsilon(1e-10));
    CHECK(genuine_durrmeyer_op(tiny, e0, x, kTol) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("linking operator") {
  FunctionSpec e0 = monomial(0);
  FunctionSpec e1 = monomial(1);
  OperatorConfig cfg{1.0, 3.0, 2.5, 0};
  CHECK(linking_op(cfg, e0, 0.4, kTol) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(linking_op(cfg, e1, 0.4, kTol) == doctest::Approx(0.4).epsilon(1e-9));
  FunctionSpec decay = FunctionSpec::catalog("exp_decay", 2.0);
  CHECK(linking_op(cfg, decay, 0.0, kTol) == doctest::Approx(1.0));
}

TEST_CASE("normalized operator V") {
  FunctionSpec e1 = monomial(1);
  OperatorConfig cfg{0.0, 10.0, 2.0, 1};
  // (rho/(n rho - kc)) (k(1+1/rho)/2 + (n+ck) x) = 0.575 at x = 0.5
  CHECK(v_operator(cfg, e1, 0.5, kTol) ==
        doctest::Approx(0.575).epsilon(1e-10));
  CHECK(v_operator(cfg, e1, 0.5, kTol, FunctionalRoute::quadrature) ==
        doctest::Approx(0.575).epsilon(1e-9));
  // k = 0 collapses to the linking operator
  OperatorConfig k0{1.0, 3.0, 2.5, 0};
  FunctionSpec decay = FunctionSpec::catalog("exp_decay", 1.0);
  CHECK(v_operator(k0, decay, 0.4, kTol) ==
        doctest::Approx(linking_op(k0, decay, 0.4, kTol)).epsilon(1e-12));
}

TEST_CASE("discrete operator D") {
  FunctionSpec e0 = monomial(0);
  FunctionSpec e1 = monomial(1);
  OperatorConfig cfg{-1.0, 5.0, 2.0, 1};
  for (int i = 0; i <= 4; ++i) {
    double x = i / 4.0;
    CHECK(d_operator(cfg, e0, x, kTol) == doctest::Approx(1.0).epsilon(1e-12));
    // D and V agree on affine functions
    CHECK(d_operator(cfg, e1, x, kTol) ==
          doctest::Approx(v_operator(cfg, e1, x, kTol)).epsilon(1e-9));
  }
  // rho = inf nodes (2j+k)/(2n): D e_1 = ((n+kc)x + k/2)/n
  OperatorConfig dinf{-1.0, 5.0, kInfinity, 1};
  CHECK(d_operator(dinf, e1, 0.5, kTol) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("V at rho = inf via divided differences") {
  FunctionSpec e0 = monomial(0);
  FunctionSpec e1 = monomial(1);

  // k = 0 is the sampling operator
  OperatorConfig k0{0.0, 8.0, kInfinity, 0};
  FunctionSpec decay = FunctionSpec::catalog("exp_decay", 1.0);
  CHECK(v_inf_operator(k0, decay, 0.6, kTol) ==
        doctest::Approx(baskakov_inf_op(k0, decay, 0.6, kTol))
            .epsilon(1e-10));

  // c = -1, n = 2, k = 1 is the Kantorovich operator K_1: e_1 image
  OperatorConfig cfg{-1.0, 2.0, kInfinity, 1};
  for (double x : {0.0, 0.25, 0.5, 1.0}) {
    CHECK(v_inf_operator(cfg, e1, x, kTol) ==
          doctest::Approx(0.25 + 0.5 * x).epsilon(1e-12));
  }
  for (double x : {0.0, 0.3, 0.9}) {
    CHECK(v_inf_operator(cfg, e0, x, kTol) ==
          doctest::Approx(1.0).epsilon(1e-12));
    OperatorConfig deep{0.0, 5.0, kInfinity, 3};
    CHECK(v_inf_operator(deep, e0, x, kTol) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("classical bernstein operator") {
  FunctionSpec e0 = monomial(0);
  FunctionSpec e1 = monomial(1);
  FunctionSpec e2 = monomial(2);
  CHECK(bernstein_classical_op(7, e1, 0.3) ==
        doctest::Approx(0.3).epsilon(1e-12));
  CHECK(bernstein_classical_op(2, e2, 0.5) == doctest::Approx(0.375));
  CHECK(bernstein_classical_op(4, e0, 0.8) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("monomial image closed forms") {
  OperatorConfig k0{0.0, 10.0, 2.0, 0};
  std::array<double, 3> e1c = v_monomial_coeffs(k0, 1);
  CHECK(e1c[0] == doctest::Approx(0.0));
  CHECK(e1c[1] == doctest::Approx(1.0));
  std::array<double, 3> e2c = v_monomial_coeffs(k0, 2);
  // c = 0, k = 0: V e_2 = x^2 + x (rho+1)/(n rho)
  CHECK(e2c[0] == doctest::Approx(0.0));
  CHECK(e2c[1] == doctest::Approx(3.0 / 20.0));
  CHECK(e2c[2] == doctest::Approx(1.0));

  for (double rho : {1.0, 2.0, kInfinity}) {
    for (int k : {0, 1, 2}) {
      OperatorConfig cfg{-1.0, 6.0, rho, k};
      MomentReport report = monomial_images(cfg, kTol);
      CHECK(report.v_images[0][0] == 1.0);
      for (int deg = 0; deg <= 2; ++deg) {
        INFO("rho=" << rho << " k=" << k << " deg=" << deg);
        CHECK(report.max_residual[static_cast<std::size_t>(deg)] <= 1e-9);
      }
    }
  }
}

TEST_CASE("operators are positive and linear") {
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  OperatorConfig cfg{-1.0, 6.0, 2.0, 1};
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<double> pf(4), pg(3);
    for (double& v : pf) v = unif(rng);
    for (double& v : pg) v = unif(rng);
    double alpha = unif(rng), beta = unif(rng);
    FunctionSpec f = FunctionSpec::from_poly("f", pf);
    FunctionSpec g = FunctionSpec::from_poly("g", pg);
    std::vector<double> combo =
        poly::add(poly::scale(pf, alpha), poly::scale(pg, beta));
    FunctionSpec h = FunctionSpec::from_poly("h", combo);
    double x = 0.25;
    double lhs = v_operator(cfg, h, x, kTol);
    double rhs = alpha * v_operator(cfg, f, x, kTol) +
                 beta * v_operator(cfg, g, x, kTol);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }

  // positivity on nonnegative polynomials
  FunctionSpec sq = FunctionSpec::parse("(t-0.3)^2");
  for (double x : {0.0, 0.4, 0.9}) {
    CHECK(v_operator(cfg, sq, x, kTol) >= 0.0);
    CHECK(d_operator(cfg, sq, x, kTol) >= 0.0);
  }
}

TEST_CASE("endpoint interpolation of the k = 0 family") {
  FunctionSpec decay = FunctionSpec::catalog("exp_decay", 1.0);
  for (double c : {-1.0, 0.0, 1.0}) {
    double n = (c < 0.0) ? 5.0 : 4.0;
    for (double rho : {1.0, 2.0}) {
      OperatorConfig cfg{c, n, rho, 0};
      CHECK(linking_op(cfg, decay, 0.0, kTol) ==
            doctest::Approx(1.0).epsilon(1e-10));
      if (c < 0.0) {
        double right = -1.0 / c;
        CHECK(linking_op(cfg, decay, right, kTol) ==
              doctest::Approx(std::exp(-right)).epsilon(1e-10));
      }
    }
  }
  OperatorConfig bern{-1.0, 4.0, kInfinity, 0};
  CHECK(baskakov_inf_op(bern, decay, 1.0, kTol) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("chain consistency: kernel representation vs derivative route") {
  // Certifies the c = -1 kernel form against the definition
  // D^k ( B_{n,rho} (I_k f) ): Bernstein sums expand to exact monomial
  // coefficients, which we differentiate and normalize.
  OperatorConfig cfg{-1.0, 5.0, 2.0, 1};
  OperatorConfig base{-1.0, 5.0, 2.0, 0};
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> coeffs(4);
    for (double& v : coeffs) v = unif(rng);
    FunctionSpec f = FunctionSpec::from_poly("f", coeffs);
    FunctionSpec ikf =
        FunctionSpec::from_poly("I1f", poly::antiderivative(coeffs));

    // B_{5,2}(I_1 f) as an exact degree-5 polynomial in x
    std::vector<double> b_poly(6, 0.0);
    for (long j = 0; j <= 5; ++j) {
      double fj = f_functional(base, j, ikf, kTol,
                               FunctionalRoute::quadrature);
      std::vector<double> pj = bernstein_monomial_coeffs(5, j);
      for (std::size_t i = 0; i < pj.size(); ++i) b_poly[i] += fj * pj[i];
    }
    std::vector<double> derivative = poly::derivative(b_poly);
    // normalization (n rho)^{c,falling k} / (rho^k n^{c,rising k}) = 1 here
    double scale = factorial_product(10.0, -1.0, 1,
                                     ProductDirection::falling) /
                   (2.0 * factorial_product(5.0, -1.0, 1,
                                            ProductDirection::rising));
    for (double x : {0.1, 0.35, 0.6, 0.85}) {
      double via_derivative = scale * poly::eval(derivative, x);
      double via_kernel = v_operator(cfg, f, x, kTol);
      CHECK(via_kernel ==
            doctest::Approx(via_derivative).epsilon(1e-9));
    }
  }
}

TEST_CASE("rho sweep approaches the rho = inf operator") {
  FunctionSpec e2 = monomial(2);
  OperatorConfig cfg{-1.0, 5.0, 1.0, 1};
  std::vector<double> xs = Grid{0.0, 1.0, 11}.points();
  OperatorConfig inf_cfg = cfg;
  inf_cfg.rho = kInfinity;
  std::vector<double> limit =
      evaluate_grid(OperatorKind::v_inf, inf_cfg, e2, xs, kTol);

  double prev = kInfinity;
  double last = 0.0;
  for (double rho = 1.0; rho <= 256.0; rho *= 2.0) {
    OperatorConfig rc = cfg;
    rc.rho = rho;
    std::vector<double> vals =
        evaluate_grid(OperatorKind::v_normalized, rc, e2, xs, kTol);
    double sup = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      sup = std::max(sup, std::fabs(vals[i] - limit[i]));
    CHECK(sup < prev);
    prev = sup;
    last = sup;
  }
  CHECK(last < 1e-2);
}

TEST_CASE("frozen high-precision references for operator values") {
  // Reference values computed independently with 35-digit arithmetic.
  FunctionSpec decay = FunctionSpec::catalog("exp_decay", 1.0);
  OperatorConfig baskakov{1.0, 4.0, 1.0, 0};
  CHECK(genuine_durrmeyer_op(baskakov, decay, 0.7, kTol) ==
        doctest::Approx(0.6166616542245553234).epsilon(1e-10));

  // exact by hand: cell averages of |t-0.3| on the fifths of [0,1] are
  // (0.2, 0.05, 0.2, 0.4, 0.6); against the degree-4 Bernstein weights at
  // x = 0.4 the sum is 0.18912 exactly
  FunctionSpec kink = FunctionSpec::catalog("abs_shift", 0.3);
  OperatorConfig vcfg{-1.0, 5.0, kInfinity, 1};
  CHECK(v_inf_operator(vcfg, kink, 0.4, kTol) ==
        doctest::Approx(0.18912).epsilon(1e-10));
}

TEST_CASE("kind dispatch and validation") {
  CHECK(kind_from_string("v") == OperatorKind::v_normalized);
  CHECK(kind_from_string("binf") == OperatorKind::baskakov_inf);
  CHECK_THROWS_AS(kind_from_string("nope"), ConfigError);
  CHECK(kind_to_string(OperatorKind::d_inf) == "dinf");

  FunctionSpec e1 = monomial(1);
  // linking at k >= 1 is invalid
  OperatorConfig bad{0.0, 5.0, 2.0, 1};
  CHECK_THROWS_AS(evaluate(OperatorKind::linking, bad, e1, 0.5, kTol),
                  ConfigError);
  // v at rho = inf silently uses the divided-difference form
  OperatorConfig inf_cfg{-1.0, 5.0, kInfinity, 1};
  CHECK(evaluate(OperatorKind::v_normalized, inf_cfg, e1, 0.5, kTol) ==
        doctest::Approx(v_inf_operator(inf_cfg, e1, 0.5, kTol)));
  // vinf demands rho = inf
  OperatorConfig finite{-1.0, 5.0, 2.0, 1};
  CHECK_THROWS_AS(evaluate(OperatorKind::v_inf, finite, e1, 0.5, kTol),
                  ConfigError);
}
