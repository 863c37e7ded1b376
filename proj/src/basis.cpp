#include "linkops/basis.hpp"

#include <cmath>

namespace linkops {

namespace {

constexpr double kIntegerSlack = 1e-12;
constexpr long kTruncationCap = 2000000;

bool near_upper_endpoint(const BasisParams& bp, double x) {
  return bp.c < 0.0 && x == -1.0 / bp.c;
}

} // namespace

void BasisParams::validate() const {
  if (c >= 0.0) {
    // Pointwise evaluation only needs n > 0; the operator configs add the
    // n > c condition required for the integral normalizations.
    if (!(n > 0.0)) throw ConfigError("basis requires n > 0");
  } else {
    double ratio = -n / c;
    if (!(ratio >= 1.0) || std::fabs(ratio - std::round(ratio)) > kIntegerSlack)
      throw ConfigError("basis requires -n/c to be a positive integer for c < 0");
  }
}

long BasisParams::max_index() const {
  if (!(c < 0.0)) throw ConfigError("max_index is defined only for c < 0");
  return static_cast<long>(std::llround(-n / c));
}

double basis_p(const BasisParams& bp, long j, double x) {
  bp.validate();
  if (j < 0) throw ConfigError("basis index must be nonnegative");
  Interval iv = bp.domain();
  if (!iv.contains(x)) throw DomainError("x outside I_c");

  if (bp.c < 0.0 && j > bp.max_index()) return 0.0;
  if (x == 0.0) return j == 0 ? 1.0 : 0.0;

  if (bp.c == 0.0) {
    double log_p = static_cast<double>(j) * std::log(bp.n * x) -
                   std::lgamma(static_cast<double>(j) + 1.0) - bp.n * x;
    return std::exp(log_p);
  }

  double expo = -(bp.n / bp.c + static_cast<double>(j));
  if (near_upper_endpoint(bp, x)) {
    // (1+cx) = 0 here; the power is J_max - j >= 0, nonzero only at j = J_max.
    if (j != bp.max_index()) return 0.0;
    SignedLog coef =
        log_abs_factorial_product(bp.n, bp.c, j, ProductDirection::rising);
    double log_p = coef.log_abs - std::lgamma(static_cast<double>(j) + 1.0) +
                   static_cast<double>(j) * std::log(x);
    return static_cast<double>(coef.sign) * std::exp(log_p);
  }

  SignedLog coef =
      log_abs_factorial_product(bp.n, bp.c, j, ProductDirection::rising);
  if (coef.sign == 0) return 0.0;
  double log_p = coef.log_abs - std::lgamma(static_cast<double>(j) + 1.0) +
                 static_cast<double>(j) * std::log(x) +
                 expo * std::log1p(bp.c * x);
  return static_cast<double>(coef.sign) * std::exp(log_p);
}

std::vector<double> basis_row(const BasisParams& bp, double x, long j_last) {
  bp.validate();
  if (j_last < 0) throw ConfigError("basis row needs j_last >= 0");
  Interval iv = bp.domain();
  if (!iv.contains(x)) throw DomainError("x outside I_c");

  std::vector<double> row(static_cast<std::size_t>(j_last) + 1, 0.0);
  if (x == 0.0) {
    row[0] = 1.0;
    return row;
  }
  if (near_upper_endpoint(bp, x)) {
    long jmax = bp.max_index();
    if (jmax <= j_last) row[static_cast<std::size_t>(jmax)] = 1.0;
    return row;
  }

  long hard_last = j_last;
  if (bp.c < 0.0) hard_last = std::min(j_last, bp.max_index());

  // log p_{n,j+1} = log p_{n,j} + log((n+cj) x) - log((j+1)(1+cx))
  double log_p = (bp.c == 0.0) ? -bp.n * x
                               : -(bp.n / bp.c) * std::log1p(bp.c * x);
  for (long j = 0; j <= hard_last; ++j) {
    row[static_cast<std::size_t>(j)] = std::exp(log_p);
    double numer = (bp.n + bp.c * static_cast<double>(j)) * x;
    if (numer <= 0.0) break; // family exhausted (c < 0 beyond the last index)
    double denom = static_cast<double>(j + 1) * (1.0 + bp.c * x);
    log_p += std::log(numer) - std::log(denom);
  }
  return row;
}

long truncation_index(const BasisParams& bp, double x, int growth_order,
                      const Tolerances& tol) {
  bp.validate();
  tol.validate();
  if (growth_order < 0) throw ConfigError("growth order must be nonnegative");
  if (bp.c < 0.0) return bp.max_index();
  Interval iv = bp.domain();
  if (!iv.contains(x)) throw DomainError("x outside I_c");
  if (x == 0.0) return 0;

  double log_p = (bp.c == 0.0) ? -bp.n * x
                               : -(bp.n / bp.c) * std::log1p(bp.c * x);
  double sum = 0.0;
  for (long j = 0; j <= kTruncationCap; ++j) {
    sum += std::exp(log_p);
    double numer = (bp.n + bp.c * static_cast<double>(j)) * x;
    double denom = static_cast<double>(j + 1) * (1.0 + bp.c * x);
    log_p += std::log(numer) - std::log(denom); // now log p_{j+1}
    double weight = std::pow(1.0 + static_cast<double>(j + 1) / bp.n,
                             static_cast<double>(growth_order));
    if (sum >= 1.0 - tol.series_tail &&
        std::exp(log_p) * weight < tol.series_tail)
      return j;
  }
  throw NumericError("series truncation failed to terminate");
}

double squared_sum_series(const BasisParams& bp, double x,
                          const Tolerances& tol) {
  long j_last = truncation_index(bp, x, 0, tol);
  std::vector<double> row = basis_row(bp, x, j_last);
  double acc = 0.0;
  for (double p : row) acc += p * p;
  return acc;
}

double squared_sum_integral(const BasisParams& bp, double x,
                            const Tolerances& tol) {
  bp.validate();
  if (!bp.domain().contains(x)) throw DomainError("x outside I_c");
  constexpr double kPi = 3.14159265358979323846;
  if (bp.c == 0.0) {
    // (1/pi) integral_-1^1 e^{-2nx(1+t)} dt/sqrt(1-t^2), t = -cos(phi).
    double scale = 2.0 * bp.n * x;
    RealFn f = [scale](double phi) {
      return std::exp(-scale * (1.0 - std::cos(phi)));
    };
    return integrate(f, Interval{0.0, kPi}, tol) / kPi;
  }
  // (1/pi) integral_0^1 (t + (1-t)(1+2cx)^2)^{-n/c} dt/sqrt(t(1-t)),
  // t = sin^2(theta).
  double q = 1.0 + 2.0 * bp.c * x;
  double q2 = q * q;
  double expo = -bp.n / bp.c;
  RealFn f = [q2, expo](double theta) {
    double s = std::sin(theta);
    double cth = std::cos(theta);
    double base = s * s + cth * cth * q2;
    return std::pow(base, expo);
  };
  return 2.0 * integrate(f, Interval{0.0, kPi / 2.0}, tol) / kPi;
}

double squared_sum_bound(const BasisParams& bp, double x) {
  bp.validate();
  if (!bp.domain().contains(x)) throw DomainError("x outside I_c");
  if (!(bp.n + bp.c > 0.0))
    throw ConfigError("squared_sum_bound requires n + c > 0");
  double base = 4.0 * (bp.n + bp.c) * x * (1.0 + bp.c * x) + 1.0;
  return std::pow(base, -bp.n / (2.0 * (bp.n + bp.c)));
}

double tsallis_entropy(const BasisParams& bp, double x,
                       const Tolerances& tol) {
  return 1.0 - squared_sum_series(bp, x, tol);
}

} // namespace linkops
