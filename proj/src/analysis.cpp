#include "linkops/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace linkops {

long VerificationReport::n_failed() const {
  long n = 0;
  for (const CheckCase& c : cases)
    if (c.status == CheckStatus::fail) ++n;
  return n;
}

long VerificationReport::n_inconclusive() const {
  long n = 0;
  for (const CheckCase& c : cases)
    if (c.status == CheckStatus::inconclusive) ++n;
  return n;
}

CheckCase make_identity_case(std::string check, const OperatorConfig& cfg,
                             double lhs, double rhs, double slack) {
  CheckCase c;
  c.check = std::move(check);
  c.cfg = cfg;
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = slack;
  c.kind = CheckKind::identity;
  c.status = (std::fabs(lhs - rhs) <= slack) ? CheckStatus::pass
                                             : CheckStatus::fail;
  return c;
}

CheckCase make_inequality_case(std::string check, const OperatorConfig& cfg,
                               double lhs, double rhs, double slack) {
  CheckCase c;
  c.check = std::move(check);
  c.cfg = cfg;
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = slack;
  c.kind = CheckKind::inequality;
  c.status = (lhs <= rhs + slack) ? CheckStatus::pass : CheckStatus::fail;
  return c;
}

CheckCase make_estimated_inequality_case(std::string check,
                                         const OperatorConfig& cfg, double lhs,
                                         double rhs_estimate,
                                         double rhs_resolution, double slack) {
  CheckCase c = make_inequality_case(std::move(check), cfg, lhs, rhs_estimate,
                                     slack);
  if (c.status == CheckStatus::fail &&
      lhs <= rhs_estimate + rhs_resolution + slack)
    c.status = CheckStatus::inconclusive;
  return c;
}

namespace {

FunctionSpec shifted_square(double x) {
  // (t - x)^2 with exact coefficients.
  return FunctionSpec::from_poly("(t-x)^2", {x * x, -2.0 * x, 1.0});
}

double eval_coeffs(const std::array<double, 3>& p, double x) {
  return p[0] + x * (p[1] + x * p[2]);
}

std::vector<double> domain_grid(const OperatorConfig& cfg, long count) {
  double upper = (cfg.c < 0.0) ? -1.0 / cfg.c : 1.0;
  return Grid{0.0, upper, count}.points();
}

// Local slope of f on the estimation grid; 2 * max step difference bounds
// how far the grid estimate can sit below the true modulus.
struct ModulusWithResolution {
  double value;
  double resolution;
};

ModulusWithResolution modulus_with_resolution(const FunctionSpec& f,
                                              double delta, Interval iv,
                                              long m = 2001) {
  ModulusWithResolution out{};
  out.value = modulus_estimate(f, delta, iv, m);
  double h = (iv.upper - iv.lower) / static_cast<double>(m - 1);
  double max_step = 0.0;
  double prev = f(iv.lower);
  for (long i = 1; i < m; ++i) {
    double cur = f(iv.lower + static_cast<double>(i) * h);
    max_step = std::max(max_step, std::fabs(cur - prev));
    prev = cur;
  }
  out.resolution = 2.0 * max_step;
  return out;
}

CheckCase make_modulus_case(std::string check, const OperatorConfig& cfg,
                            double lhs, const ModulusWithResolution& rhs,
                            double slack) {
  return make_estimated_inequality_case(std::move(check), cfg, lhs, rhs.value,
                                        rhs.resolution, slack);
}

} // namespace

double second_moment_m2(OperatorKind kind, const OperatorConfig& cfg, double x,
                        const Tolerances& tol) {
  return evaluate(kind, cfg, shifted_square(x), x, tol);
}

double e_closed(const OperatorConfig& cfg, double x) {
  cfg.validate();
  double kd = static_cast<double>(cfg.k);
  if (cfg.rho_infinite()) return kd / (12.0 * cfg.n * cfg.n);
  cfg.require_moments(2);
  double rho = cfg.rho;
  double rho2 = rho * rho;
  double nk = cfg.n + kd * cfg.c;
  double numer = kd * cfg.n * rho2 * rho +
                 (12.0 * x * (1.0 + cfg.c * x) * nk * (nk + cfg.c) +
                  6.0 * kd * cfg.n) *
                     rho2 +
                 5.0 * kd * cfg.n * rho +
                 2.0 * kd * kd * cfg.c * (rho2 - 1.0);
  double d1 = cfg.n * rho - kd * cfg.c;
  double d2 = d1 - cfg.c;
  return numer / (12.0 * d1 * d1 * d2);
}

double var_x_closed(const OperatorConfig& cfg, double x) {
  cfg.validate();
  double kd = static_cast<double>(cfg.k);
  double nk = cfg.n + kd * cfg.c;
  if (cfg.rho_infinite())
    return x * (1.0 + cfg.c * x) * nk / (cfg.n * cfg.n) +
           kd / (12.0 * cfg.n * cfg.n);
  cfg.require_moments(2);
  double rho = cfg.rho;
  double rho2 = rho * rho;
  double numer = 12.0 * cfg.n * x * (1.0 + cfg.c * x) * nk * rho2 *
                     (rho + 1.0) +
                 2.0 * kd * (3.0 * cfg.n + kd * cfg.c) * rho2 +
                 kd * cfg.n * rho * (rho2 + 5.0) - 2.0 * kd * kd * cfg.c;
  double d1 = cfg.n * rho - kd * cfg.c;
  double d2 = d1 - cfg.c;
  return numer / (12.0 * d1 * d1 * d2);
}

double v_barycenter(const OperatorConfig& cfg, double x) {
  cfg.validate();
  double kd = static_cast<double>(cfg.k);
  if (cfg.rho_infinite())
    return ((cfg.n + kd * cfg.c) * x + 0.5 * kd) / cfg.n;
  cfg.require_moments(1);
  return (2.0 * (cfg.n + kd * cfg.c) * cfg.rho * x + kd * (cfg.rho + 1.0)) /
         (2.0 * (cfg.n * cfg.rho - kd * cfg.c));
}

VarX var_x_operator(OperatorKind kind, const OperatorConfig& cfg, double x,
                    const Tolerances& tol) {
  double e1 = evaluate(kind, cfg, monomial(1), x, tol);
  double e2 = evaluate(kind, cfg, monomial(2), x, tol);
  VarX out{e2 - e1 * e1, std::nullopt};
  if (kind == OperatorKind::v_normalized || kind == OperatorKind::v_inf)
    out.closed = var_x_closed(cfg, x);
  return out;
}

SeriesAndClosed e_of_l(const OperatorConfig& cfg, double x,
                       const Tolerances& tol) {
  cfg.validate();
  tol.validate();
  BasisParams bp = cfg.operator_basis();
  if (!bp.domain().contains(x)) throw DomainError("x outside I_c");
  long j_last = truncation_index(bp, x, 2, tol);
  std::vector<double> row = basis_row(bp, x, j_last);
  double acc = 0.0;
  for (long j = 0; j <= j_last; ++j)
    acc += variance_a(cfg, j) * row[static_cast<std::size_t>(j)];
  return {acc, e_closed(cfg, x)};
}

VerificationReport check_decomposition(const OperatorConfig& cfg,
                                       const std::vector<double>& xs,
                                       const Tolerances& tol) {
  cfg.validate();
  cfg.require_moments(2);
  VerificationReport report{"decomposition", {}};
  std::array<double, 3> ve1 = v_monomial_coeffs(cfg, 1);
  for (double x : xs) {
    double m2_v = second_moment_m2(OperatorKind::v_normalized, cfg, x, tol);
    double m2_d = second_moment_m2(OperatorKind::d_discrete, cfg, x, tol);
    double e_val = e_closed(cfg, x);
    CheckCase c1 = make_identity_case("m2-decomposition", cfg, m2_v,
                                      e_val + m2_d, tol.check_slack);
    c1.x = x;
    report.cases.push_back(c1);

    double drift = eval_coeffs(ve1, x) - x;
    CheckCase c2 = make_identity_case(
        "m2-varx-split", cfg, m2_v,
        var_x_closed(cfg, x) + drift * drift, tol.check_slack);
    c2.x = x;
    report.cases.push_back(c2);
  }
  return report;
}

VerificationReport check_sandwich(const OperatorConfig& cfg,
                                  const std::vector<double>& xs,
                                  const Tolerances& tol) {
  cfg.validate();
  cfg.require_moments(2);
  VerificationReport report{"sandwich", {}};
  for (double x : xs) {
    double m2_v = second_moment_m2(OperatorKind::v_normalized, cfg, x, tol);
    double m2_d = second_moment_m2(OperatorKind::d_discrete, cfg, x, tol);
    double varx = var_x_closed(cfg, x);
    double e_val = e_closed(cfg, x);

    CheckCase c1 =
        make_inequality_case("varx-le-m2", cfg, varx, m2_v, tol.check_slack);
    c1.x = x;
    report.cases.push_back(c1);
    CheckCase c2 = make_inequality_case("m2-gap-le-m2d", cfg, m2_v - varx,
                                        m2_d, tol.check_slack);
    c2.x = x;
    report.cases.push_back(c2);
    CheckCase c3 =
        make_inequality_case("e-le-varx", cfg, e_val, varx, tol.check_slack);
    c3.x = x;
    report.cases.push_back(c3);
  }
  return report;
}

VerificationReport check_theorem31(const OperatorConfig& cfg,
                                   const FunctionSpec& f,
                                   const std::vector<double>& xs,
                                   const std::vector<long>& js,
                                   const Tolerances& tol) {
  cfg.validate();
  cfg.require_moments(2);
  if (!f.d2_sup())
    throw ConfigError("Taylor-bound checks require f.d2_sup metadata");
  double d2 = *f.d2_sup();
  VerificationReport report{"thm31", {}};

  for (long j : js) {
    double a_val = a_functional(cfg, j, f, tol);
    double b_j = barycenter(cfg, j);
    CheckCase c = make_inequality_case(
        "thm31-functional", cfg, std::fabs(a_val - f(b_j)),
        0.5 * d2 * variance_a(cfg, j), tol.check_slack);
    c.j = j;
    report.cases.push_back(c);
  }

  std::vector<double> vf =
      evaluate_grid(OperatorKind::v_normalized, cfg, f, xs, tol);
  std::vector<double> df =
      evaluate_grid(OperatorKind::d_discrete, cfg, f, xs, tol);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CheckCase c1 = make_inequality_case(
        "thm31-operator-gap", cfg, std::fabs(vf[i] - df[i]),
        0.5 * e_closed(cfg, xs[i]) * d2, tol.check_slack);
    c1.x = xs[i];
    report.cases.push_back(c1);

    CheckCase c2 = make_inequality_case(
        "thm31-barycenter", cfg,
        std::fabs(vf[i] - f(v_barycenter(cfg, xs[i]))),
        0.5 * d2 * var_x_closed(cfg, xs[i]), tol.check_slack);
    c2.x = xs[i];
    report.cases.push_back(c2);
  }
  return report;
}

VerificationReport check_theorem32(const OperatorConfig& cfg,
                                   const FunctionSpec& f,
                                   const std::vector<double>& xs,
                                   const Tolerances& tol) {
  cfg.validate();
  if (!cfg.rho_infinite())
    throw ConfigError("this suite concerns the rho = inf operators");
  VerificationReport report{"thm32", {}};

  std::vector<double> vf = evaluate_grid(OperatorKind::v_inf, cfg, f, xs, tol);
  std::vector<double> df = evaluate_grid(OperatorKind::d_inf, cfg, f, xs, tol);
  double sup_gap = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    sup_gap = std::max(sup_gap, std::fabs(vf[i] - df[i]));

  if (f.d2_sup()) {
    double bound = static_cast<double>(cfg.k) / (24.0 * cfg.n * cfg.n) *
                   *f.d2_sup();
    report.cases.push_back(make_inequality_case("thm32-smooth-bound", cfg,
                                                sup_gap, bound,
                                                tol.check_slack));
  }

  // Modulus bound over the node range actually reached by the series.
  Interval mod_iv;
  if (cfg.c < 0.0) {
    mod_iv = cfg.basis().domain();
  } else {
    BasisParams bp = cfg.operator_basis();
    long j_last = 0;
    for (double x : xs)
      j_last = std::max(j_last,
                        truncation_index(bp, x, f.growth_order(), tol));
    mod_iv = Interval{0.0, static_cast<double>(j_last + cfg.k) / cfg.n};
  }
  ModulusWithResolution omega = modulus_with_resolution(
      f, static_cast<double>(cfg.k) / (2.0 * cfg.n), mod_iv);
  report.cases.push_back(
      make_modulus_case("thm32-modulus-bound", cfg, sup_gap, omega,
                        tol.check_slack));
  return report;
}

namespace {

enum class ChainDirection { non_decreasing, non_increasing };

// Adjacent comparisons with 1e-12 relative slack; the closed forms are
// exact rational expressions so this only absorbs roundoff.
void push_chain_cases(VerificationReport& report, const std::string& check,
                      const std::vector<OperatorConfig>& cfgs,
                      const std::vector<double>& values,
                      ChainDirection direction) {
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    double lo = values[i];
    double hi = values[i + 1];
    if (direction == ChainDirection::non_increasing) std::swap(lo, hi);
    double slack =
        1e-12 * std::max({std::fabs(values[i]), std::fabs(values[i + 1]), 1.0});
    CheckCase c = make_inequality_case(check, cfgs[i + 1], lo, hi, slack);
    report.cases.push_back(c);
  }
}

} // namespace

VerificationReport check_theorem33(const Tolerances& tol) {
  tol.validate();
  VerificationReport report{"thm33", {}};
  const long j_fixed = 3;
  const double x_fixed = 0.5;

  auto quantity_values = [&](const std::vector<OperatorConfig>& cfgs,
                             int which) {
    std::vector<double> values;
    values.reserve(cfgs.size());
    for (const OperatorConfig& cfg : cfgs) {
      if (which == 0) values.push_back(variance_a(cfg, j_fixed));
      if (which == 1) values.push_back(e_closed(cfg, x_fixed));
      if (which == 2) values.push_back(var_x_closed(cfg, x_fixed));
    }
    return values;
  };
  const char* names[3] = {"var-a", "e", "varx-v"};

  // Chains in k at c >= 0, where the claim's numerator/denominator
  // argument applies. (At c = -1 the k-monotonicity fails numerically;
  // see the c-chain below for the c = -1 coverage.)
  {
    struct KChainBase {
      double c, n, rho;
    };
    const KChainBase bases[] = {
        {0.0, 10.0, 1.0},      {0.0, 10.0, 2.0}, {0.5, 10.0, 2.0},
        {1.0, 10.0, 3.0},      {0.0, 10.0, kInfinity},
        {1.0, 10.0, kInfinity}};
    for (const KChainBase& b : bases) {
      std::vector<OperatorConfig> cfgs;
      for (int k = 0; k <= 3; ++k)
        cfgs.push_back(OperatorConfig{b.c, b.n, b.rho, k});
      for (int q = 0; q < 3; ++q)
        push_chain_cases(report, std::string("thm33-k-chain-") + names[q],
                         cfgs, quantity_values(cfgs, q),
                         ChainDirection::non_decreasing);
    }
  }

  // Chains in c over {-1, 0, 0.5, 1}; n = 10 keeps -n/c integral at c = -1.
  {
    struct CChainBase {
      double rho;
      int k;
    };
    const CChainBase bases[] = {{1.0, 0}, {1.0, 1}, {2.0, 2}};
    const double c_values[] = {-1.0, 0.0, 0.5, 1.0};
    for (const CChainBase& b : bases) {
      std::vector<OperatorConfig> cfgs;
      for (double c : c_values)
        cfgs.push_back(OperatorConfig{c, 10.0, b.rho, b.k});
      for (int q = 0; q < 3; ++q)
        push_chain_cases(report, std::string("thm33-c-chain-") + names[q],
                         cfgs, quantity_values(cfgs, q),
                         ChainDirection::non_decreasing);
    }
  }

  // Chains in rho over {1, 2, 3, 4, 6, 8}.
  {
    struct RChainBase {
      double c;
      int k;
    };
    const RChainBase bases[] = {{-1.0, 1}, {-1.0, 2}, {0.0, 0}, {0.0, 1},
                                {1.0, 2}};
    const double rho_values[] = {1.0, 2.0, 3.0, 4.0, 6.0, 8.0};
    for (const RChainBase& b : bases) {
      std::vector<OperatorConfig> cfgs;
      for (double rho : rho_values)
        cfgs.push_back(OperatorConfig{b.c, 10.0, rho, b.k});
      for (int q = 0; q < 3; ++q)
        push_chain_cases(report, std::string("thm33-rho-chain-") + names[q],
                         cfgs, quantity_values(cfgs, q),
                         ChainDirection::non_increasing);
    }
  }
  return report;
}

VerificationReport check_section4(long n, int k, const FunctionSpec& f,
                                  const std::vector<double>& xs,
                                  const Tolerances& tol) {
  if (!(k >= 1 && k < n)) throw ConfigError("section 4 requires 1 <= k < n");
  OperatorConfig cfg{-1.0, static_cast<double>(n), kInfinity, k};
  cfg.validate();
  VerificationReport report{"section4", {}};

  std::vector<double> vf = evaluate_grid(OperatorKind::v_inf, cfg, f, xs, tol);

  // Comparison with the classical Bernstein polynomial of degree n - k.
  double sup_gap = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    sup_gap = std::max(
        sup_gap, std::fabs(vf[i] - bernstein_classical_op(n - k, f, xs[i])));
  ModulusWithResolution omega = modulus_with_resolution(
      f, static_cast<double>(k) / static_cast<double>(n),
      Interval{0.0, 1.0});
  report.cases.push_back(make_modulus_case("section4-bernstein-gap", cfg,
                                           sup_gap, omega, tol.check_slack));

  if (k == 1) {
    // V_{n,inf}^{(1)} is the classical Kantorovich operator K_{n-1}.
    BasisParams bp{-1.0, static_cast<double>(n - 1)};
    std::vector<double> cell_avg(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) {
      double lo = static_cast<double>(j) / static_cast<double>(n);
      double hi = static_cast<double>(j + 1) / static_cast<double>(n);
      cell_avg[static_cast<std::size_t>(j)] =
          static_cast<double>(n) *
          integrate([&f](double t) { return f(t); }, Interval{lo, hi}, tol);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::vector<double> row = basis_row(bp, xs[i], n - 1);
      double kant = 0.0;
      for (long j = 0; j < n; ++j)
        kant += cell_avg[static_cast<std::size_t>(j)] *
                row[static_cast<std::size_t>(j)];
      CheckCase c = make_identity_case("section4-kantorovich", cfg, vf[i],
                                       kant, tol.check_slack);
      c.x = xs[i];
      report.cases.push_back(c);
    }
  }
  return report;
}

VerificationReport check_covariance_bound(const BasisParams& bp,
                                          const FunctionSpec& f,
                                          const FunctionSpec& g,
                                          const std::vector<double>& xs,
                                          const Tolerances& tol) {
  bp.validate();
  tol.validate();
  VerificationReport report{"covariance", {}};
  OperatorConfig cfg{bp.c, bp.n, kInfinity, 0};

  if (bp.c >= 0.0 && (f.growth_order() > 0 || g.growth_order() > 0))
    throw ConfigError("covariance bound on an unbounded domain requires "
                      "bounded f and g (growth order 0)");

  long j_last;
  if (bp.finite_family()) {
    j_last = bp.max_index();
  } else {
    double x_max = *std::max_element(xs.begin(), xs.end());
    j_last = truncation_index(bp, x_max, 0, tol);
  }
  auto osc = [&](const FunctionSpec& fn) {
    double lo = fn(0.0), hi = fn(0.0);
    for (long j = 0; j <= j_last; ++j) {
      double v = fn(static_cast<double>(j) / bp.n);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo;
  };
  double osc_f = osc(f);
  double osc_g = osc(g);
  FunctionSpec fg = f.product(g);

  for (double x : xs) {
    double bfg = baskakov_inf_op(cfg, fg, x, tol);
    double bf = baskakov_inf_op(cfg, f, x, tol);
    double bg = baskakov_inf_op(cfg, g, x, tol);
    double s_val = squared_sum_series(bp, x, tol);
    CheckCase c = make_inequality_case(
        "covariance-bound", cfg, std::fabs(bfg - bf * bg),
        0.5 * (1.0 - s_val) * osc_f * osc_g, tol.check_slack);
    c.x = x;
    report.cases.push_back(c);
  }
  return report;
}

VerificationReport check_entropy_bound(const BasisParams& bp,
                                       const std::vector<double>& xs,
                                       const Tolerances& tol) {
  bp.validate();
  tol.validate();
  VerificationReport report{"entropy-bound", {}};
  OperatorConfig cfg{bp.c, bp.n, kInfinity, 0};
  // Pinned scales: the series/integral agreement is quadrature-limited at
  // 1e-8; the upper bound is exact mathematics up to 1e-10 roundoff.
  const double agree_slack = 1e-8;
  const double bound_slack = 1e-10;
  for (double x : xs) {
    double s_series = squared_sum_series(bp, x, tol);
    double s_integral = squared_sum_integral(bp, x, tol);
    CheckCase c1 = make_identity_case("s-series-vs-integral", cfg, s_series,
                                      s_integral, agree_slack);
    c1.x = x;
    report.cases.push_back(c1);
    if (bp.n + bp.c > 0.0) {
      CheckCase c2 = make_inequality_case(
          "s-upper-bound", cfg, s_series, squared_sum_bound(bp, x),
          bound_slack);
      c2.x = x;
      report.cases.push_back(c2);
    }
    double ts = tsallis_entropy(bp, x, tol);
    CheckCase c3 =
        make_inequality_case("tsallis-range", cfg, std::fabs(ts - 0.5), 0.5,
                             bound_slack);
    c3.x = x;
    report.cases.push_back(c3);
  }
  return report;
}

std::vector<OperatorConfig> default_verification_configs() {
  return {
      OperatorConfig{-1.0, 5.0, 2.0, 1}, OperatorConfig{-1.0, 6.0, 1.0, 2},
      OperatorConfig{-1.0, 10.0, kInfinity, 1},
      OperatorConfig{0.0, 10.0, 2.0, 1}, OperatorConfig{0.0, 8.0, 1.0, 0},
      OperatorConfig{0.0, 10.0, kInfinity, 2},
      OperatorConfig{1.0, 4.0, 3.0, 2}, OperatorConfig{1.0, 3.0, 2.5, 0},
      OperatorConfig{1.0, 5.0, kInfinity, 1}};
}

namespace {

bool supports_second_moments(const OperatorConfig& cfg) {
  try {
    cfg.validate();
    cfg.require_moments(2);
    return true;
  } catch (const ConfigError&) {
    return false;
  }
}

std::vector<long> default_js(const OperatorConfig& cfg) {
  long hi = 8;
  if (cfg.index_limit() >= 0) hi = std::min(hi, cfg.index_limit());
  std::vector<long> js;
  for (long j = 0; j <= hi; ++j) js.push_back(j);
  return js;
}

} // namespace

std::vector<VerificationReport> run_suites(
    const std::string& suite, const std::vector<OperatorConfig>& configs,
    const Tolerances& tol) {
  std::vector<VerificationReport> reports;
  auto want = [&suite](const char* name) {
    return suite == name || suite == "all";
  };

  if (want("decomposition")) {
    VerificationReport merged{"decomposition", {}};
    for (const OperatorConfig& cfg : configs) {
      if (!supports_second_moments(cfg)) continue;
      VerificationReport r = check_decomposition(cfg, domain_grid(cfg, 11), tol);
      merged.cases.insert(merged.cases.end(), r.cases.begin(), r.cases.end());
    }
    reports.push_back(std::move(merged));
  }
  if (want("sandwich")) {
    VerificationReport merged{"sandwich", {}};
    for (const OperatorConfig& cfg : configs) {
      if (!supports_second_moments(cfg)) continue;
      VerificationReport r = check_sandwich(cfg, domain_grid(cfg, 11), tol);
      merged.cases.insert(merged.cases.end(), r.cases.begin(), r.cases.end());
    }
    reports.push_back(std::move(merged));
  }
  if (want("thm31")) {
    VerificationReport merged{"thm31", {}};
    std::vector<FunctionSpec> fns;
    fns.push_back(monomial(1));
    fns.push_back(monomial(2));
    fns.push_back(FunctionSpec::catalog("exp_decay", 1.0));
    for (const OperatorConfig& cfg : configs) {
      if (!supports_second_moments(cfg)) continue;
      for (const FunctionSpec& f : fns) {
        VerificationReport r = check_theorem31(cfg, f, domain_grid(cfg, 11),
                                               default_js(cfg), tol);
        merged.cases.insert(merged.cases.end(), r.cases.begin(),
                            r.cases.end());
      }
    }
    reports.push_back(std::move(merged));
  }
  if (want("thm32")) {
    VerificationReport merged{"thm32", {}};
    std::vector<FunctionSpec> fns;
    fns.push_back(monomial(2));
    fns.push_back(FunctionSpec::catalog("abs_shift", 0.5));
    for (const OperatorConfig& cfg : configs) {
      if (!cfg.rho_infinite()) continue;
      for (const FunctionSpec& f : fns) {
        VerificationReport r =
            check_theorem32(cfg, f, domain_grid(cfg, 11), tol);
        merged.cases.insert(merged.cases.end(), r.cases.begin(),
                            r.cases.end());
      }
    }
    reports.push_back(std::move(merged));
  }
  if (want("thm33")) reports.push_back(check_theorem33(tol));
  if (want("section4")) {
    VerificationReport merged{"section4", {}};
    std::vector<FunctionSpec> fns;
    fns.push_back(monomial(2));
    fns.push_back(FunctionSpec::catalog("exp_decay", 1.0));
    fns.push_back(FunctionSpec::catalog("abs_shift", 0.5));
    for (const OperatorConfig& cfg : configs) {
      if (!(cfg.c == -1.0 && cfg.k >= 1 &&
            static_cast<double>(cfg.k) < cfg.n))
        continue;
      for (const FunctionSpec& f : fns) {
        VerificationReport r =
            check_section4(std::lround(cfg.n), cfg.k,
                           f, domain_grid(cfg, 11), tol);
        merged.cases.insert(merged.cases.end(), r.cases.begin(),
                            r.cases.end());
      }
    }
    reports.push_back(std::move(merged));
  }
  if (want("covariance")) {
    VerificationReport merged{"covariance", {}};
    for (const OperatorConfig& cfg : configs) {
      BasisParams bp = cfg.basis();
      FunctionSpec f = (bp.c < 0.0)
                           ? FunctionSpec::catalog("abs_shift", 0.5)
                           : FunctionSpec::catalog("exp_decay", 1.0);
      VerificationReport r =
          check_covariance_bound(bp, f, f, domain_grid(cfg, 11), tol);
      merged.cases.insert(merged.cases.end(), r.cases.begin(), r.cases.end());
    }
    reports.push_back(std::move(merged));
  }
  if (want("entropy-bound")) {
    VerificationReport merged{"entropy-bound", {}};
    for (const OperatorConfig& cfg : configs) {
      VerificationReport r =
          check_entropy_bound(cfg.basis(), domain_grid(cfg, 11), tol);
      merged.cases.insert(merged.cases.end(), r.cases.begin(), r.cases.end());
    }
    reports.push_back(std::move(merged));
  }
  if (reports.empty())
    throw ConfigError("unknown verification suite '" + suite + "'");
  // A requested suite with nothing to do must not pass vacuously.
  if (suite != "all" && reports.front().cases.empty())
    throw ConfigError("no applicable configs for suite '" + suite + "'");
  return reports;
}

} // namespace linkops
