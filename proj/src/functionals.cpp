#include "linkops/functionals.hpp"

#include <cmath>

namespace linkops {

namespace {

constexpr double kIntegerSlack = 1e-12;

bool is_integer(double v) {
  return std::fabs(v - std::round(v)) <= kIntegerSlack;
}

// Log-domain evaluator of the mu_{n,j}^rho density with the t-independent
// coefficient precomputed.
struct MuEvaluator {
  double c;
  double a;        // j rho
  double log_coef; // log of the normalizing constant
  double decay;    // n rho (c = 0) or -(n/c + j) rho - 1 exponent (c != 0)

  static MuEvaluator make(const OperatorConfig& cfg, long j) {
    MuEvaluator mu{};
    mu.c = cfg.c;
    double jd = static_cast<double>(j);
    mu.a = jd * cfg.rho;
    if (cfg.c < 0.0) {
      mu.log_coef = mu.a * std::log(-cfg.c) -
                    log_beta(mu.a, -(cfg.n / cfg.c + jd) * cfg.rho);
      mu.decay = -(cfg.n / cfg.c + jd) * cfg.rho - 1.0;
    } else if (cfg.c == 0.0) {
      mu.log_coef = mu.a * std::log(cfg.n * cfg.rho) - log_gamma(mu.a);
      mu.decay = cfg.n * cfg.rho;
    } else {
      mu.log_coef = mu.a * std::log(cfg.c) -
                    log_beta(mu.a, (cfg.n / cfg.c) * cfg.rho + 1.0);
      mu.decay = -(cfg.n / cfg.c + jd) * cfg.rho - 1.0;
    }
    return mu;
  }

  // log of the smooth factor (everything except the t^{a-1} head).
  double log_smooth(double t) const {
    return (c == 0.0) ? -decay * t : decay * std::log1p(c * t);
  }

  double density(double t) const {
    if (t == 0.0) {
      if (a > 1.0) return 0.0;
      if (a == 1.0) return std::exp(log_coef);
      return kInfinity;
    }
    return std::exp(log_coef + (a - 1.0) * std::log(t) + log_smooth(t));
  }
};

// Log-domain evaluator of a contiguous block of basis functions
// p_{m, l0}, p_{m, l0+1}, ..., sharing one coefficient recurrence.
struct KernelEvaluator {
  double c;
  double m;
  long l0;
  std::vector<double> weights;   // counts(s)
  std::vector<double> log_coefs; // per index l0+s

  static KernelEvaluator make(double c, double m, long l0,
                              std::vector<double> weights) {
    KernelEvaluator kv{c, m, l0, std::move(weights), {}};
    kv.log_coefs.resize(kv.weights.size());
    SignedLog head =
        log_abs_factorial_product(m, c, l0, ProductDirection::rising);
    double log_coef = head.log_abs - std::lgamma(static_cast<double>(l0) + 1.0);
    for (std::size_t s = 0; s < kv.weights.size(); ++s) {
      kv.log_coefs[s] = log_coef;
      double l = static_cast<double>(l0) + static_cast<double>(s);
      log_coef += std::log(m + c * l) - std::log(l + 1.0);
    }
    return kv;
  }

  // sum_s counts(s) p_{m, l0+s}(t); ascending s for a fixed summation order.
  double operator()(double t) const {
    if (t == 0.0) return (l0 == 0 && !weights.empty()) ? weights[0] : 0.0;
    double log_t = std::log(t);
    double log1pct = (c == 0.0) ? 0.0 : std::log1p(c * t);
    double acc = 0.0;
    for (std::size_t s = 0; s < weights.size(); ++s) {
      double l = static_cast<double>(l0) + static_cast<double>(s);
      double log_p = log_coefs[s] + l * log_t +
                     ((c == 0.0) ? -m * t : -(m / c + l) * log1pct);
      acc += weights[s] * std::exp(log_p);
    }
    return acc;
  }
};

} // namespace

void OperatorConfig::validate() const {
  basis().validate();
  if (c >= 0.0 && !(n > c))
    throw ConfigError("operators require n > c for c >= 0");
  if (!(rho > 0.0)) throw ConfigError("rho must be positive (or inf)");
  if (k < 0) throw ConfigError("k must be nonnegative");
  if (k >= 1) {
    if (!rho_infinite() && !is_integer(rho))
      throw ConfigError("k >= 1 requires integer rho (or inf)");
    if (c < 0.0) {
      if (std::fabs(c + 1.0) > kIntegerSlack)
        throw ConfigError("k >= 1 with c < 0 is supported only at c = -1");
      if (!(n - static_cast<double>(k) >= 1.0 - kIntegerSlack))
        throw ConfigError("k >= 1 with c = -1 requires n - k >= 1");
    }
    operator_basis().validate();
  }
}

void OperatorConfig::require_moments(int order) const {
  if (rho_infinite() || c <= 0.0) return;
  double bound = static_cast<double>(k + order - 1) * c;
  if (!(n * rho > bound))
    throw ConfigError("moments of this order require n rho > (k+order-1)c");
}

long OperatorConfig::index_limit() const {
  if (c < 0.0) return operator_basis().max_index();
  return -1;
}

double mu_density(const OperatorConfig& cfg, long j, double t) {
  cfg.validate();
  if (cfg.k != 0) throw ConfigError("mu_density is the k = 0 density");
  if (j < 1) throw DomainError("index j = 0 is a point mass, not a density");
  if (cfg.c < 0.0) {
    long jmax = cfg.basis().max_index();
    if (j > jmax) throw ConfigError("functional index beyond -n/c");
    if (j == jmax)
      throw DomainError("index j = -n/c is a point mass, not a density");
  }
  if (!cfg.basis().domain().contains(t)) throw DomainError("t outside I_c");
  return MuEvaluator::make(cfg, j).density(t);
}

namespace {

// Integral of mu_{n,j}^rho(t) f(t) over I_c. Algebraic endpoint
// singularities (t^{a-1} with a < 1 at 0; (1+ct)^{b-1} with b < 1 at -1/c
// for c < 0) are removed by the substitutions u = t^a and w = (U-t)^b,
// which turn each head into a bounded integrand.
double f_functional_quadrature(const OperatorConfig& cfg, long j,
                               const FunctionSpec& f, const Tolerances& tol) {
  MuEvaluator mu = MuEvaluator::make(cfg, j);
  Interval iv = cfg.basis().domain();
  RealFn weighted = [&mu, &f](double t) { return mu.density(t) * f(t); };

  double lower_head = 0.0;
  double split_lo = 0.0;
  if (mu.a < 1.0) {
    split_lo = iv.unbounded() ? 1.0 : 0.5 * iv.upper;
    double inv_a = 1.0 / mu.a;
    RealFn head = [&mu, &f, inv_a](double u) {
      double t = std::pow(u, inv_a);
      return std::exp(mu.log_smooth(t)) * f(t);
    };
    lower_head =
        std::exp(mu.log_coef) / mu.a *
        integrate(head, Interval{0.0, std::pow(split_lo, mu.a)}, tol);
  }

  if (iv.unbounded())
    return lower_head +
           (mu.a < 1.0
                ? integrate(weighted, Interval{split_lo, kInfinity}, tol)
                : integrate(weighted, Interval{0.0, kInfinity}, tol));

  // Bounded domain (c < 0): (1+ct)^{b-1} = (-c)^{b-1} (U-t)^{b-1}.
  double upper = iv.upper;
  double b = -(cfg.n / cfg.c + static_cast<double>(j)) * cfg.rho;
  double mid = 0.5 * upper;
  double lo_part =
      (mu.a < 1.0) ? lower_head
                   : integrate(weighted, Interval{0.0, mid}, tol);
  double hi_part;
  if (b < 1.0) {
    double inv_b = 1.0 / b;
    double scale = std::exp(mu.log_coef + (b - 1.0) * std::log(-cfg.c)) / b;
    RealFn head = [&mu, &f, upper, inv_b](double w) {
      double t = upper - std::pow(w, inv_b);
      return std::pow(t, mu.a - 1.0) * f(t);
    };
    hi_part = scale *
              integrate(head, Interval{0.0, std::pow(upper - mid, b)}, tol);
  } else {
    hi_part = integrate(weighted, Interval{mid, upper}, tol);
  }
  return lo_part + hi_part;
}

} // namespace

double f_functional(const OperatorConfig& cfg, long j, const FunctionSpec& f,
                    const Tolerances& tol, FunctionalRoute route) {
  cfg.validate();
  if (cfg.k != 0) throw ConfigError("F functionals live at k = 0");
  if (j < 0) throw ConfigError("functional index must be nonnegative");
  if (j == 0) return f(0.0);
  if (cfg.c < 0.0) {
    long jmax = cfg.basis().max_index();
    if (j > jmax) throw ConfigError("functional index beyond -n/c");
    if (j == jmax) return f(-1.0 / cfg.c);
  }
  if (route == FunctionalRoute::automatic && f.is_poly()) {
    const std::vector<double>& coeffs = *f.poly_coeffs();
    cfg.require_moments(poly::degree(coeffs));
    double acc = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      acc += coeffs[i] * detail::mu_moment(cfg, j, static_cast<int>(i));
    return acc;
  }
  cfg.require_moments(f.growth_order());
  return f_functional_quadrature(cfg, j, f, tol);
}

double a_functional(const OperatorConfig& cfg, long j, const FunctionSpec& f,
                    const Tolerances& tol, FunctionalRoute route) {
  cfg.validate();
  tol.validate();
  if (cfg.k == 0) return f_functional(cfg, j, f, tol, route);
  if (j < 0) throw ConfigError("functional index must be nonnegative");
  long limit = cfg.index_limit();
  if (limit >= 0 && j > limit)
    throw ConfigError("functional index beyond the finite family");

  if (cfg.rho_infinite()) {
    // k! [j/n, ..., (j+k)/n; I_k f] = n^k Delta^k_{1/n} (I_k f)(j/n).
    double h = 1.0 / cfg.n;
    double x0 = static_cast<double>(j) * h;
    double value;
    if (f.is_poly()) {
      std::vector<double> coeffs = *f.poly_coeffs();
      for (int i = 0; i < cfg.k; ++i) coeffs = poly::antiderivative(coeffs);
      value = forward_difference(FunctionSpec::from_poly("", coeffs), h,
                                 cfg.k, x0);
    } else {
      RealFn ikf = [&f, &cfg, &tol](double t) {
        return iterated_integral(f, cfg.k, t, tol);
      };
      value = forward_difference(ikf, h, cfg.k, x0);
    }
    return std::pow(cfg.n, cfg.k) * value;
  }

  long rho = std::lround(cfg.rho);
  std::vector<double> counts = composition_counts(cfg.k, rho);
  double m = cfg.n * cfg.rho - static_cast<double>(cfg.k - 2) * cfg.c;
  long l0 = j * rho + cfg.k - 1;
  double norm =
      (cfg.n * cfg.rho - static_cast<double>(cfg.k - 1) * cfg.c) /
      std::pow(cfg.rho, cfg.k);

  if (route == FunctionalRoute::automatic && f.is_poly()) {
    const std::vector<double>& coeffs = *f.poly_coeffs();
    cfg.require_moments(poly::degree(coeffs));
    double acc = 0.0;
    for (std::size_t s = 0; s < counts.size(); ++s) {
      double l = static_cast<double>(l0) + static_cast<double>(s);
      double inner = 0.0;
      for (std::size_t i = 0; i < coeffs.size(); ++i)
        inner += coeffs[i] *
                 detail::basis_integral_moment(m, cfg.c, l,
                                               static_cast<int>(i));
      acc += counts[s] * inner;
    }
    return norm * acc;
  }

  cfg.require_moments(f.growth_order());
  KernelEvaluator kernel = KernelEvaluator::make(cfg.c, m, l0, counts);
  Interval iv = cfg.basis().domain();
  RealFn weighted = [&kernel, &f](double t) { return kernel(t) * f(t); };
  return norm * integrate(weighted, iv, tol);
}

double basis_weighted_integral(double c, double m, long l,
                               const FunctionSpec& f, const Tolerances& tol,
                               FunctionalRoute route) {
  if (l < 0) throw ConfigError("basis index must be nonnegative");
  if (route == FunctionalRoute::automatic && f.is_poly()) {
    const std::vector<double>& coeffs = *f.poly_coeffs();
    double acc = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      acc += coeffs[i] *
             detail::basis_integral_moment(m, c, static_cast<double>(l),
                                           static_cast<int>(i));
    return acc;
  }
  KernelEvaluator kernel = KernelEvaluator::make(c, m, l, {1.0});
  Interval iv = (c < 0.0) ? Interval{0.0, -1.0 / c} : Interval{0.0, kInfinity};
  RealFn weighted = [&kernel, &f](double t) { return kernel(t) * f(t); };
  return integrate(weighted, iv, tol);
}

double barycenter(const OperatorConfig& cfg, long j) {
  cfg.validate();
  if (j < 0) throw ConfigError("functional index must be nonnegative");
  long limit = cfg.index_limit();
  if (limit >= 0 && j > limit)
    throw ConfigError("functional index beyond the finite family");
  double jd = static_cast<double>(j);
  double kd = static_cast<double>(cfg.k);
  if (cfg.rho_infinite()) return (2.0 * jd + kd) / (2.0 * cfg.n);
  cfg.require_moments(1);
  return ((2.0 * jd + kd) * cfg.rho + kd) /
         (2.0 * (cfg.n * cfg.rho - kd * cfg.c));
}

double second_moment_a(const OperatorConfig& cfg, long j) {
  cfg.validate();
  if (j < 0) throw ConfigError("functional index must be nonnegative");
  long limit = cfg.index_limit();
  if (limit >= 0 && j > limit)
    throw ConfigError("functional index beyond the finite family");
  double jd = static_cast<double>(j);
  double kd = static_cast<double>(cfg.k);
  if (cfg.rho_infinite()) {
    double b = (2.0 * jd + kd) / (2.0 * cfg.n);
    return b * b + kd / (12.0 * cfg.n * cfg.n);
  }
  cfg.require_moments(2);
  double rho = cfg.rho;
  double jr = jd * rho;
  double numer = 12.0 * (jr + kd) * (jr + kd + 1.0) +
                 4.0 * kd * ((3.0 * jd + 1.0) * rho + 3.0 * kd + 1.0) *
                     (rho - 1.0) +
                 3.0 * kd * (kd - 1.0) * (rho - 1.0) * (rho - 1.0);
  double d1 = cfg.n * rho - kd * cfg.c;
  double d2 = d1 - cfg.c;
  return numer / (12.0 * d1 * d2);
}

double variance_a(const OperatorConfig& cfg, long j) {
  cfg.validate();
  if (j < 0) throw ConfigError("functional index must be nonnegative");
  long limit = cfg.index_limit();
  if (limit >= 0 && j > limit)
    throw ConfigError("functional index beyond the finite family");
  double jd = static_cast<double>(j);
  double kd = static_cast<double>(cfg.k);
  if (cfg.rho_infinite()) return kd / (12.0 * cfg.n * cfg.n);
  cfg.require_moments(2);
  double rho = cfg.rho;
  double rho2 = rho * rho;
  double numer = kd * cfg.n * rho2 * rho +
                 6.0 *
                     (kd * (2.0 * jd * cfg.c + cfg.n) +
                      2.0 * jd * (jd * cfg.c + cfg.n)) *
                     rho2 +
                 5.0 * kd * cfg.n * rho +
                 2.0 * kd * kd * cfg.c * (rho2 - 1.0);
  double d1 = cfg.n * rho - kd * cfg.c;
  double d2 = d1 - cfg.c;
  return numer / (12.0 * d1 * d1 * d2);
}

namespace detail {

double basis_integral_moment(double m, double c, double l, int i) {
  double acc = 1.0;
  for (int r = 1; r <= i; ++r)
    acc *= (l + static_cast<double>(r)) / (m - static_cast<double>(r) * c);
  double last = m - static_cast<double>(i + 1) * c;
  if (!(last > 0.0))
    throw ConfigError("basis integral moment undefined: m - (i+1)c <= 0");
  return acc / last;
}

double mu_moment(const OperatorConfig& cfg, long j, int i) {
  double jr = static_cast<double>(j) * cfg.rho;
  double nr = cfg.n * cfg.rho;
  double acc = 1.0;
  for (int r = 0; r < i; ++r) {
    double denom = nr - static_cast<double>(r) * cfg.c;
    if (!(denom > 0.0))
      throw ConfigError("mu moment undefined: n rho - rc <= 0");
    acc *= (jr + static_cast<double>(r)) / denom;
  }
  return acc;
}

} // namespace detail

} // namespace linkops
