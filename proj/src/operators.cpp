#include "linkops/operators.hpp"

#include <algorithm>
#include <cmath>

namespace linkops {

OperatorKind kind_from_string(const std::string& name) {
  if (name == "binf" || name == "baskakov") return OperatorKind::baskakov_inf;
  if (name == "durr" || name == "durrmeyer" || name == "genuine")
    return OperatorKind::genuine_durrmeyer;
  if (name == "link" || name == "linking") return OperatorKind::linking;
  if (name == "v") return OperatorKind::v_normalized;
  if (name == "d") return OperatorKind::d_discrete;
  if (name == "vinf") return OperatorKind::v_inf;
  if (name == "dinf") return OperatorKind::d_inf;
  if (name == "bern" || name == "bernstein")
    return OperatorKind::bernstein_classical;
  throw ConfigError("unknown operator kind '" + name + "'");
}

std::string kind_to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::baskakov_inf: return "binf";
    case OperatorKind::genuine_durrmeyer: return "durr";
    case OperatorKind::linking: return "link";
    case OperatorKind::v_normalized: return "v";
    case OperatorKind::d_discrete: return "d";
    case OperatorKind::v_inf: return "vinf";
    case OperatorKind::d_inf: return "dinf";
    case OperatorKind::bernstein_classical: return "bern";
  }
  return "?";
}

namespace {

void require_k0(const OperatorConfig& cfg, const char* kind) {
  if (cfg.k != 0)
    throw ConfigError(std::string(kind) + " is a k = 0 operator");
}

// Shared truncation for every series built on `bp`; identity checks then
// compare like-for-like partial sums.
long series_index(const BasisParams& bp, double x, int growth,
                  const Tolerances& tol) {
  return truncation_index(bp, x, growth, tol);
}

long max_series_index(const BasisParams& bp, std::span<const double> xs,
                      int growth, const Tolerances& tol) {
  long j_last = 0;
  for (double x : xs)
    j_last = std::max(j_last, series_index(bp, x, growth, tol));
  return j_last;
}

std::vector<double> grid_sum(const BasisParams& bp,
                             const std::vector<double>& coeffs,
                             std::span<const double> xs, int growth,
                             const Tolerances& tol) {
  for (double v : coeffs)
    if (!std::isfinite(v))
      throw NumericError("operator coefficient is not finite");
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    long j_last = series_index(bp, x, growth, tol);
    std::vector<double> row = basis_row(bp, x, j_last);
    double acc = 0.0;
    for (long j = 0; j <= j_last; ++j)
      acc += coeffs[static_cast<std::size_t>(j)] *
             row[static_cast<std::size_t>(j)];
    if (!std::isfinite(acc))
      throw NumericError("operator evaluation is not finite");
    out.push_back(acc);
  }
  return out;
}

std::vector<double> genuine_durrmeyer_coeffs(const OperatorConfig& cfg,
                                             const FunctionSpec& f,
                                             long j_last,
                                             const Tolerances& tol) {
  std::vector<double> coeffs(static_cast<std::size_t>(j_last) + 1, 0.0);
  coeffs[0] = f(0.0);
  long interior_last = j_last;
  if (cfg.c < 0.0) {
    long jmax = cfg.basis().max_index();
    coeffs[static_cast<std::size_t>(jmax)] = f(-1.0 / cfg.c);
    interior_last = jmax - 1;
  }
  double m = cfg.n + 2.0 * cfg.c;
  for (long j = 1; j <= interior_last; ++j)
    coeffs[static_cast<std::size_t>(j)] =
        (cfg.n + cfg.c) * basis_weighted_integral(cfg.c, m, j - 1, f, tol);
  return coeffs;
}

std::vector<double> v_inf_coefficients(const OperatorConfig& cfg,
                                       const FunctionSpec& f, long j_last,
                                       const Tolerances& tol) {
  const double h = 1.0 / cfg.n;
  const double nk = std::pow(cfg.n, cfg.k);
  std::vector<double> coeffs(static_cast<std::size_t>(j_last) + 1);
  if (f.is_poly()) {
    // Delta^k_{1/n}(I_k f) as one exact polynomial, evaluated at j/n.
    std::vector<double> q = *f.poly_coeffs();
    for (int i = 0; i < cfg.k; ++i) q = poly::antiderivative(q);
    for (int i = 0; i < cfg.k; ++i)
      q = poly::add(poly::shift(q, h), poly::scale(q, -1.0));
    for (long j = 0; j <= j_last; ++j)
      coeffs[static_cast<std::size_t>(j)] =
          nk * poly::eval(q, static_cast<double>(j) * h);
    return coeffs;
  }
  // I_k f at the O(J + k) shared nodes, then binomial differences.
  std::vector<double> ikf(static_cast<std::size_t>(j_last + cfg.k) + 1);
  for (long i = 0; i <= j_last + cfg.k; ++i)
    ikf[static_cast<std::size_t>(i)] =
        iterated_integral(f, cfg.k, static_cast<double>(i) * h, tol);
  std::vector<double> binom(static_cast<std::size_t>(cfg.k) + 1);
  binom[0] = 1.0;
  for (int m = 0; m < cfg.k; ++m)
    binom[static_cast<std::size_t>(m) + 1] =
        binom[static_cast<std::size_t>(m)] * static_cast<double>(cfg.k - m) /
        static_cast<double>(m + 1);
  for (long j = 0; j <= j_last; ++j) {
    double acc = 0.0;
    for (int m = 0; m <= cfg.k; ++m) {
      double sign = ((cfg.k - m) % 2 == 0) ? 1.0 : -1.0;
      acc += sign * binom[static_cast<std::size_t>(m)] *
             ikf[static_cast<std::size_t>(j + m)];
    }
    coeffs[static_cast<std::size_t>(j)] = nk * acc;
  }
  return coeffs;
}

std::vector<double> series_coefficients(OperatorKind kind,
                                        const OperatorConfig& cfg,
                                        const FunctionSpec& f, long j_last,
                                        const Tolerances& tol,
                                        FunctionalRoute route) {
  std::vector<double> coeffs(static_cast<std::size_t>(j_last) + 1);
  switch (kind) {
    case OperatorKind::baskakov_inf:
      for (long j = 0; j <= j_last; ++j)
        coeffs[static_cast<std::size_t>(j)] =
            f(static_cast<double>(j) / cfg.n);
      break;
    case OperatorKind::genuine_durrmeyer:
      return genuine_durrmeyer_coeffs(cfg, f, j_last, tol);
    case OperatorKind::linking:
      for (long j = 0; j <= j_last; ++j)
        coeffs[static_cast<std::size_t>(j)] =
            f_functional(cfg, j, f, tol, route);
      break;
    case OperatorKind::v_normalized:
      for (long j = 0; j <= j_last; ++j)
        coeffs[static_cast<std::size_t>(j)] =
            a_functional(cfg, j, f, tol, route);
      break;
    case OperatorKind::d_discrete:
    case OperatorKind::d_inf:
      for (long j = 0; j <= j_last; ++j)
        coeffs[static_cast<std::size_t>(j)] = f(barycenter(cfg, j));
      break;
    case OperatorKind::v_inf:
      return v_inf_coefficients(cfg, f, j_last, tol);
    case OperatorKind::bernstein_classical:
      for (long j = 0; j <= j_last; ++j)
        coeffs[static_cast<std::size_t>(j)] =
            f(static_cast<double>(j) / cfg.n);
      break;
  }
  return coeffs;
}

// Basis the series of `kind` runs over.
BasisParams series_basis(OperatorKind kind, const OperatorConfig& cfg) {
  switch (kind) {
    case OperatorKind::baskakov_inf:
    case OperatorKind::genuine_durrmeyer:
    case OperatorKind::linking:
      return cfg.basis();
    default:
      return cfg.operator_basis();
  }
}

OperatorKind normalize_kind(OperatorKind kind, const OperatorConfig& cfg) {
  if (kind == OperatorKind::v_normalized && cfg.rho_infinite())
    return OperatorKind::v_inf;
  if (kind == OperatorKind::d_discrete && cfg.rho_infinite())
    return OperatorKind::d_inf;
  return kind;
}

void validate_kind(OperatorKind kind, const OperatorConfig& cfg) {
  cfg.validate();
  switch (kind) {
    case OperatorKind::baskakov_inf:
      require_k0(cfg, "baskakov_inf");
      break;
    case OperatorKind::genuine_durrmeyer:
      require_k0(cfg, "genuine_durrmeyer");
      if (!(cfg.n + cfg.c > 0.0))
        throw ConfigError("genuine_durrmeyer requires n + c > 0");
      break;
    case OperatorKind::linking:
      require_k0(cfg, "linking");
      if (cfg.rho_infinite())
        throw ConfigError("linking requires finite rho; use binf for the "
                          "rho = inf limit");
      break;
    case OperatorKind::v_inf:
    case OperatorKind::d_inf:
      if (!cfg.rho_infinite())
        throw ConfigError("this kind requires rho = inf");
      break;
    case OperatorKind::bernstein_classical: {
      if (std::fabs(cfg.c + 1.0) > 1e-12)
        throw ConfigError("bernstein_classical lives at c = -1");
      require_k0(cfg, "bernstein_classical");
      break;
    }
    default:
      break;
  }
}

} // namespace

std::vector<double> evaluate_grid(OperatorKind kind, const OperatorConfig& cfg,
                                  const FunctionSpec& f,
                                  std::span<const double> xs,
                                  const Tolerances& tol,
                                  FunctionalRoute route) {
  kind = normalize_kind(kind, cfg);
  validate_kind(kind, cfg);
  tol.validate();
  BasisParams bp = series_basis(kind, cfg);
  Interval iv = bp.domain();
  for (double x : xs)
    if (!iv.contains(x)) throw DomainError("grid point outside I_c");
  long j_last = max_series_index(bp, xs, f.growth_order(), tol);
  std::vector<double> coeffs =
      series_coefficients(kind, cfg, f, j_last, tol, route);
  return grid_sum(bp, coeffs, xs, f.growth_order(), tol);
}

double evaluate(OperatorKind kind, const OperatorConfig& cfg,
                const FunctionSpec& f, double x, const Tolerances& tol) {
  const double xs[1] = {x};
  return evaluate_grid(kind, cfg, f, xs, tol).front();
}

double baskakov_inf_op(const OperatorConfig& cfg, const FunctionSpec& f,
                       double x, const Tolerances& tol) {
  return evaluate(OperatorKind::baskakov_inf, cfg, f, x, tol);
}

double genuine_durrmeyer_op(const OperatorConfig& cfg, const FunctionSpec& f,
                            double x, const Tolerances& tol) {
  OperatorConfig one = cfg;
  one.rho = 1.0;
  return evaluate(OperatorKind::genuine_durrmeyer, one, f, x, tol);
}

double linking_op(const OperatorConfig& cfg, const FunctionSpec& f, double x,
                  const Tolerances& tol) {
  return evaluate(OperatorKind::linking, cfg, f, x, tol);
}

double v_operator(const OperatorConfig& cfg, const FunctionSpec& f, double x,
                  const Tolerances& tol, FunctionalRoute route) {
  const double xs[1] = {x};
  return evaluate_grid(OperatorKind::v_normalized, cfg, f, xs, tol, route)
      .front();
}

double d_operator(const OperatorConfig& cfg, const FunctionSpec& f, double x,
                  const Tolerances& tol) {
  return evaluate(OperatorKind::d_discrete, cfg, f, x, tol);
}

double v_inf_operator(const OperatorConfig& cfg, const FunctionSpec& f,
                      double x, const Tolerances& tol) {
  OperatorConfig inf_cfg = cfg;
  inf_cfg.rho = kInfinity;
  return evaluate(OperatorKind::v_inf, inf_cfg, f, x, tol);
}

double bernstein_classical_op(long degree, const FunctionSpec& f, double x) {
  if (degree < 1) throw ConfigError("bernstein degree must be >= 1");
  OperatorConfig cfg{-1.0, static_cast<double>(degree), kInfinity, 0};
  return evaluate(OperatorKind::bernstein_classical, cfg, f, x,
                  Tolerances{});
}

double b_e0_scale(const OperatorConfig& cfg) {
  cfg.validate();
  cfg.require_moments(0); // falling factorial positive: n rho > (k-1)c
  double rising =
      factorial_product(cfg.n, cfg.c, cfg.k, ProductDirection::rising);
  if (cfg.rho_infinite()) return rising / std::pow(cfg.n, cfg.k);
  double falling = factorial_product(cfg.n * cfg.rho, cfg.c, cfg.k,
                                     ProductDirection::falling);
  return std::pow(cfg.rho, cfg.k) * rising / falling;
}

std::array<double, 3> v_monomial_coeffs(const OperatorConfig& cfg,
                                        int degree) {
  cfg.validate();
  double kd = static_cast<double>(cfg.k);
  if (degree == 0) return {1.0, 0.0, 0.0};
  if (cfg.rho_infinite()) {
    double n2 = cfg.n * cfg.n;
    if (degree == 1)
      return {kd / (2.0 * cfg.n), (cfg.n + kd * cfg.c) / cfg.n, 0.0};
    if (degree == 2)
      return {kd * (3.0 * kd + 1.0) / (12.0 * n2),
              (cfg.n + cfg.c * kd) * (kd + 1.0) / n2,
              (cfg.n + cfg.c * kd) * (cfg.n + cfg.c * (kd + 1.0)) / n2};
    throw ConfigError("monomial images cover degrees 0..2");
  }
  double rho = cfg.rho;
  double d1 = cfg.n * rho - kd * cfg.c;
  if (degree == 1) {
    cfg.require_moments(1);
    return {kd * (rho + 1.0) / (2.0 * d1), rho * (cfg.n + cfg.c * kd) / d1,
            0.0};
  }
  if (degree == 2) {
    cfg.require_moments(2);
    double d2 = d1 - cfg.c;
    double scale = rho * rho / (d1 * d2);
    double c0 = 0.5 * kd *
                ((3.0 * kd + 1.0) / 6.0 + (kd + 1.0) / rho +
                 (3.0 * kd + 5.0) / (6.0 * rho * rho));
    double c1 = (cfg.n + cfg.c * kd) * (kd + 1.0) * (1.0 + 1.0 / rho);
    double c2 = (cfg.n + cfg.c * kd) * (cfg.n + cfg.c * (kd + 1.0));
    return {scale * c0, scale * c1, scale * c2};
  }
  throw ConfigError("monomial images cover degrees 0..2");
}

MomentReport monomial_images(const OperatorConfig& cfg,
                             const Tolerances& tol) {
  cfg.validate();
  MomentReport report{};
  double scale = b_e0_scale(cfg);
  double upper = (cfg.c < 0.0) ? -1.0 / cfg.c : 1.0;
  std::vector<double> xs = Grid{0.0, upper, 5}.points();
  for (int deg = 0; deg <= 2; ++deg) {
    std::array<double, 3> v = v_monomial_coeffs(cfg, deg);
    report.v_images[static_cast<std::size_t>(deg)] = v;
    report.b_images[static_cast<std::size_t>(deg)] = {
        scale * v[0], scale * v[1], scale * v[2]};
    std::vector<double> series =
        evaluate_grid(OperatorKind::v_normalized, cfg, monomial(deg), xs, tol);
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double closed = v[0] + xs[i] * (v[1] + xs[i] * v[2]);
      worst = std::max(worst, std::fabs(closed - series[i]));
    }
    report.max_residual[static_cast<std::size_t>(deg)] = worst;
  }
  return report;
}

} // namespace linkops
