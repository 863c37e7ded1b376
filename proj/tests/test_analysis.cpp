#include <doctest.h>

#include <cmath>
#include <vector>

#include "linkops/analysis.hpp"
#include "linkops/report.hpp"

using namespace linkops;

namespace {

const Tolerances kTol;

bool all_pass(const VerificationReport& r) { return r.n_failed() == 0; }

} // namespace

TEST_CASE("second moment M2 examples") {
  // Bernstein (k = 0, rho = inf): M2 D = x(1-x)/n
  OperatorConfig bern{-1.0, 2.0, kInfinity, 0};
  CHECK(second_moment_m2(OperatorKind::d_discrete, bern, 0.5, kTol) ==
        doctest::Approx(0.125).epsilon(1e-12));
  CHECK(second_moment_m2(OperatorKind::d_discrete, bern, 0.0, kTol) ==
        doctest::Approx(0.0));

  // decomposition cross-check at one point
  OperatorConfig cfg{0.0, 10.0, 2.0, 0};
  double m2v = second_moment_m2(OperatorKind::v_normalized, cfg, 0.5, kTol);
  double m2d = second_moment_m2(OperatorKind::d_discrete, cfg, 0.5, kTol);
  SeriesAndClosed e = e_of_l(cfg, 0.5, kTol);
  CHECK(m2v == doctest::Approx(e.closed + m2d).epsilon(1e-10));
}

TEST_CASE("var_x: numeric vs closed form") {
  OperatorConfig cfg{0.0, 10.0, 2.0, 0};
  VarX v = var_x_operator(OperatorKind::v_normalized, cfg, 0.5, kTol);
  REQUIRE(v.closed.has_value());
  CHECK(*v.closed == doctest::Approx(0.075).epsilon(1e-12));
  CHECK(v.numeric == doctest::Approx(*v.closed).epsilon(1e-8));

  // Szasz variance x/n at rho = inf, k = 0
  OperatorConfig szasz{0.0, 10.0, kInfinity, 0};
  CHECK(var_x_closed(szasz, 0.5) == doctest::Approx(0.05));
  VarX vs = var_x_operator(OperatorKind::v_inf, szasz, 0.5, kTol);
  CHECK(vs.numeric == doctest::Approx(0.05).epsilon(1e-9));

  CHECK(var_x_closed(cfg, 0.0) == doctest::Approx(0.0));

  for (double c : {-1.0, 0.0, 1.0}) {
    for (int k : {0, 1, 2}) {
      OperatorConfig probe{c, 10.0, 2.0, k};
      for (double x : {0.1, 0.5, 0.9}) {
        VarX both = var_x_operator(OperatorKind::v_normalized, probe, x, kTol);
        INFO("c=" << c << " k=" << k << " x=" << x);
        CHECK(both.numeric == doctest::Approx(*both.closed).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("E(L): series and closed form") {
  OperatorConfig cfg{0.0, 10.0, 1.0, 1};
  SeriesAndClosed e = e_of_l(cfg, 0.5, kTol);
  CHECK(e.closed == doctest::Approx(0.06).epsilon(1e-12));
  CHECK(e.series == doctest::Approx(e.closed).epsilon(1e-8));

  OperatorConfig inf_cfg{0.0, 10.0, kInfinity, 1};
  for (double x : {0.0, 0.3, 1.0}) {
    SeriesAndClosed ei = e_of_l(inf_cfg, x, kTol);
    CHECK(ei.closed == doctest::Approx(1.0 / 1200.0));
    CHECK(ei.series == doctest::Approx(1.0 / 1200.0).epsilon(1e-10));
  }

  OperatorConfig k0{-1.0, 5.0, 2.0, 0};
  SeriesAndClosed ez = e_of_l(k0, 0.0, kTol);
  CHECK(ez.series == doctest::Approx(0.0));
  CHECK(ez.closed == doctest::Approx(0.0));

  for (double c : {-1.0, 0.0, 1.0}) {
    for (int k : {0, 1, 2}) {
      for (double rho : {1.0, 3.0}) {
        OperatorConfig probe{c, 10.0, rho, k};
        for (double x : {0.25, 0.75}) {
          SeriesAndClosed both = e_of_l(probe, x, kTol);
          INFO("c=" << c << " k=" << k << " rho=" << rho << " x=" << x);
          CHECK(both.series == doctest::Approx(both.closed).epsilon(1e-8));
        }
      }
    }
  }
}

TEST_CASE("decomposition identity suite") {
  std::vector<double> xs = Grid{0.0, 1.0, 11}.points();
  for (OperatorConfig cfg :
       {OperatorConfig{-1.0, 5.0, 2.0, 1}, OperatorConfig{1.0, 4.0, 3.0, 2},
        OperatorConfig{0.0, 10.0, 2.0, 1},
        OperatorConfig{-1.0, 10.0, kInfinity, 2}}) {
    VerificationReport r = check_decomposition(cfg, xs, kTol);
    INFO("cfg c=" << cfg.c << " k=" << cfg.k);
    CHECK(r.cases.size() == 22);
    CHECK(all_pass(r));
  }
}

TEST_CASE("sandwich inequality suite") {
  std::vector<double> xs = Grid{0.0, 1.0, 11}.points();
  for (OperatorConfig cfg :
       {OperatorConfig{0.0, 10.0, 2.0, 1}, OperatorConfig{-1.0, 6.0, 1.0, 2},
        OperatorConfig{1.0, 3.0, 2.5, 0}}) {
    VerificationReport r = check_sandwich(cfg, xs, kTol);
    CHECK(all_pass(r));
  }
}

TEST_CASE("theorem 3.1 suite") {
  std::vector<double> xs = Grid{0.0, 1.0, 11}.points();
  std::vector<long> js = {0, 1, 2, 3, 4};

  OperatorConfig cfg{0.0, 10.0, 2.0, 1};
  FunctionSpec e1 = monomial(1); // affine: both sides vanish
  VerificationReport affine = check_theorem31(cfg, e1, xs, js, kTol);
  CHECK(all_pass(affine));
  for (const CheckCase& c : affine.cases) CHECK(c.lhs <= 1e-9);

  VerificationReport quad = check_theorem31(cfg, monomial(2), xs, js, kTol);
  CHECK(all_pass(quad));
  // for e_2 the Taylor bound is an identity: A(e_2) - b^2 = Var A exactly
  for (const CheckCase& c : quad.cases) {
    if (c.check == "thm31-functional")
      CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-9));
  }

  OperatorConfig bern{-1.0, 8.0, 1.0, 1};
  FunctionSpec decay = FunctionSpec::catalog("exp_decay", 1.0);
  CHECK(all_pass(check_theorem31(bern, decay, xs, js, kTol)));

  FunctionSpec no_meta = FunctionSpec::parse("exp(-t)");
  CHECK_THROWS_AS(check_theorem31(cfg, no_meta, xs, js, kTol), ConfigError);
}

TEST_CASE("theorem 3.2 suite") {
  std::vector<double> xs = Grid{0.0, 1.0, 11}.points();
  OperatorConfig cfg{-1.0, 10.0, kInfinity, 1};

  VerificationReport smooth = check_theorem32(cfg, monomial(2), xs, kTol);
  CHECK(all_pass(smooth));
  // V e_2 - D e_2 = k/(12 n^2) exactly, so the smooth bound is tight
  for (const CheckCase& c : smooth.cases) {
    if (c.check == "thm32-smooth-bound") {
      CHECK(c.lhs == doctest::Approx(1.0 / 1200.0).epsilon(1e-9));
      CHECK(c.rhs == doctest::Approx(2.0 / 2400.0).epsilon(1e-12));
    }
  }

  FunctionSpec kink = FunctionSpec::catalog("abs_shift", 0.5);
  VerificationReport lipschitz = check_theorem32(cfg, kink, xs, kTol);
  CHECK(all_pass(lipschitz));

  // affine f: V and D coincide, both bounds hold with lhs ~ 0
  VerificationReport affine = check_theorem32(cfg, monomial(1), xs, kTol);
  CHECK(all_pass(affine));
  for (const CheckCase& c : affine.cases) CHECK(c.lhs <= 1e-10);

  OperatorConfig finite{-1.0, 10.0, 2.0, 1};
  CHECK_THROWS_AS(check_theorem32(finite, monomial(2), xs, kTol),
                  ConfigError);
}

TEST_CASE("theorem 3.3 monotone chains") {
  VerificationReport r = check_theorem33(kTol);
  CHECK(r.cases.size() > 100);
  CHECK(all_pass(r));
}

TEST_CASE("section 4 suite") {
  std::vector<double> xs = Grid{0.0, 1.0, 11}.points();
  FunctionSpec e1 = monomial(1);
  VerificationReport r = check_section4(2, 1, e1, xs, kTol);
  CHECK(all_pass(r));
  // V_{2,inf}^{(1)} e_1 = 0.25 + 0.5 x equals K_1 e_1 (checked inside);
  // also probe the dedicated Kantorovich cases
  bool saw_kantorovich = false;
  for (const CheckCase& c : r.cases)
    if (c.check == "section4-kantorovich") saw_kantorovich = true;
  CHECK(saw_kantorovich);

  FunctionSpec kink = FunctionSpec::catalog("abs_shift", 0.5);
  CHECK(all_pass(check_section4(10, 2, kink, xs, kTol)));
  CHECK_THROWS_AS(check_section4(3, 3, e1, xs, kTol), ConfigError);
}

TEST_CASE("covariance bound suite") {
  std::vector<double> xs = Grid{0.0, 1.0, 11}.points();
  FunctionSpec e1 = monomial(1);

  // equality case: f = g = e_1, c = -1, n = 1 at x = 0.5
  BasisParams two_point{-1.0, 1.0};
  VerificationReport eq = check_covariance_bound(two_point, e1, e1,
                                                 {0.5}, kTol);
  CHECK(all_pass(eq));
  REQUIRE(eq.cases.size() == 1);
  CHECK(eq.cases[0].lhs == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(eq.cases[0].rhs == doctest::Approx(0.25).epsilon(1e-12));

  // constant f: B(fg) = Bf Bg exactly, lhs vanishes
  FunctionSpec e0 = monomial(0);
  VerificationReport flat =
      check_covariance_bound(BasisParams{-1.0, 4.0}, e0, e1, xs, kTol);
  CHECK(all_pass(flat));
  for (const CheckCase& c : flat.cases) CHECK(c.lhs <= 1e-12);

  FunctionSpec kink = FunctionSpec::catalog("abs_shift", 0.5);
  CHECK(all_pass(
      check_covariance_bound(BasisParams{-1.0, 4.0}, kink, kink, xs, kTol)));

  // unbounded f on an unbounded domain is rejected
  CHECK_THROWS_AS(
      check_covariance_bound(BasisParams{0.0, 4.0}, kink, kink, xs, kTol),
      ConfigError);
  FunctionSpec decay = FunctionSpec::catalog("exp_decay", 1.0);
  CHECK(all_pass(
      check_covariance_bound(BasisParams{0.0, 4.0}, decay, decay, xs, kTol)));
}

TEST_CASE("entropy bound suite") {
  std::vector<double> xs = Grid{0.0, 1.0, 11}.points();
  CHECK(all_pass(check_entropy_bound(BasisParams{-1.0, 2.0}, xs, kTol)));
  CHECK(all_pass(check_entropy_bound(BasisParams{0.0, 8.0}, xs, kTol)));
  CHECK(all_pass(check_entropy_bound(BasisParams{1.0, 4.0}, xs, kTol)));
}

TEST_CASE("suite runner, default grid, and JSON rendering") {
  std::vector<OperatorConfig> configs = default_verification_configs();
  std::vector<VerificationReport> reports =
      run_suites("decomposition", configs, kTol);
  REQUIRE(reports.size() == 1);
  CHECK(all_pass(reports.front()));

  std::string json = report_to_json(reports.front());
  CHECK(json.find("\"schema\":1") != std::string::npos);
  CHECK(json.find("\"suite\":\"decomposition\"") != std::string::npos);
  CHECK(json.find("\"overall\":true") != std::string::npos);

  // determinism: two runs serialize to identical bytes
  std::vector<VerificationReport> again =
      run_suites("decomposition", configs, kTol);
  CHECK(report_to_json(again.front()) == json);

  CHECK_THROWS_AS(run_suites("nope", configs, kTol), ConfigError);
}

TEST_CASE("estimated-rhs cases go inconclusive inside the resolution band") {
  OperatorConfig cfg{0.0, 10.0, 2.0, 1};
  // clear pass
  CHECK(make_estimated_inequality_case("m", cfg, 1.0, 1.2, 0.1, 1e-9).status ==
        CheckStatus::pass);
  // violation within the estimate's resolution: inconclusive, not pass
  CHECK(make_estimated_inequality_case("m", cfg, 1.25, 1.2, 0.1, 1e-9)
            .status == CheckStatus::inconclusive);
  // violation beyond the resolution: hard failure
  CHECK(make_estimated_inequality_case("m", cfg, 1.4, 1.2, 0.1, 1e-9).status ==
        CheckStatus::fail);
}

TEST_CASE("report aggregation flags failures") {
  // harness sanity: a corrupted closed form must fail the report
  OperatorConfig cfg{0.0, 10.0, 2.0, 1};
  CheckCase bad = make_identity_case("corrupted", cfg, 1.0, 1.1, 1e-9);
  CHECK(bad.status == CheckStatus::fail);
  VerificationReport r{"mutation", {bad}};
  CHECK_FALSE(r.overall());
  CHECK(r.n_failed() == 1);
  std::string json = report_to_json(r);
  CHECK(json.find("\"status\":\"fail\"") != std::string::npos);
  CHECK(json.find("\"overall\":false") != std::string::npos);

  // and an impossible slack turns a true identity into a failure
  std::vector<double> xs = {0.5};
  Tolerances strict = kTol;
  strict.check_slack = 1e-300;
  VerificationReport sr = check_decomposition(cfg, xs, strict);
  CHECK(sr.n_failed() > 0);
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.5, 1.0 / 3.0, 1e-17, 123456.789, 0.0}) {
    std::string s = format_number(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_rho(kInfinity) == "inf");
  CHECK(format_rho(2.0) == "2");
}
