#include "linkops/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace linkops {

double factorial_product(double a, double c, long j, ProductDirection dir) {
  double step = (dir == ProductDirection::rising) ? c : -c;
  double acc = 1.0;
  for (long l = 0; l < j; ++l) acc *= a + step * static_cast<double>(l);
  return acc;
}

SignedLog log_abs_factorial_product(double a, double c, long j,
                                    ProductDirection dir) {
  double step = (dir == ProductDirection::rising) ? c : -c;
  SignedLog out{0.0, 1};
  for (long l = 0; l < j; ++l) {
    double term = a + step * static_cast<double>(l);
    if (term == 0.0) return {-kInfinity, 0};
    if (term < 0.0) {
      out.sign = -out.sign;
      term = -term;
    }
    out.log_abs += std::log(term);
  }
  return out;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires a positive argument");
  return std::lgamma(x);
}

double log_beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0))
    throw DomainError("log_beta requires positive arguments");
  return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
}

namespace {

// 15-point Kronrod extension of 7-point Gauss (positive abscissae).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double err;
  int depth;
};

struct PanelWorse {
  bool operator()(const Panel& p, const Panel& q) const {
    return p.err < q.err;
  }
};

Panel evaluate_panel(const RealFn& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fc = f(center);
  double acc_k = kWgk[7] * fc;
  double acc_g = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    double dx = half * kXgk[i];
    double fsum = f(center - dx) + f(center + dx);
    acc_k += kWgk[i] * fsum;
    if (i % 2 == 1) acc_g += kWg[i / 2] * fsum;
  }
  double value = acc_k * half;
  double err = std::fabs((acc_k - acc_g) * half);
  return Panel{a, b, value, err, depth};
}

constexpr int kMaxDepth = 60;
constexpr std::size_t kMaxPanels = 100000;

double integrate_finite(const RealFn& f, double a, double b,
                        const Tolerances& tol) {
  Panel root = evaluate_panel(f, a, b, 0);
  if (!std::isfinite(root.value))
    throw NumericError("quadrature produced a non-finite value");

  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> queue;
  queue.push(root);
  double total = root.value;
  double total_err = root.err;
  std::size_t splits = 0;

  // Relative target with a hard absolute floor so that genuinely zero-ish
  // integrals do not spin forever.
  auto target = [&]() {
    return std::max(tol.quad_rel * std::fabs(total), 1e-300);
  };

  while (total_err > target()) {
    Panel worst = queue.top();
    if (worst.err <= 0.0) break; // error estimate exhausted at roundoff
    if (worst.depth >= kMaxDepth)
      throw NumericError(
          "quadrature failed to converge: error estimate stalled above "
          "tolerance at maximum refinement depth");
    if (++splits > kMaxPanels)
      throw NumericError("quadrature failed to converge: panel budget "
                         "exhausted");
    queue.pop();
    double mid = 0.5 * (worst.a + worst.b);
    Panel left = evaluate_panel(f, worst.a, mid, worst.depth + 1);
    Panel right = evaluate_panel(f, mid, worst.b, worst.depth + 1);
    if (!std::isfinite(left.value) || !std::isfinite(right.value))
      throw NumericError("quadrature produced a non-finite value");
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
  }
  return total;
}

} // namespace

double integrate(const RealFn& f, Interval iv, const Tolerances& tol) {
  iv.validate();
  tol.validate();
  if (!iv.unbounded()) return integrate_finite(f, iv.lower, iv.upper, tol);
  // Map [lower, inf) to [0, 1) by t = lower + u/(1-u).
  double lo = iv.lower;
  RealFn mapped = [&f, lo](double u) {
    double denom = 1.0 - u;
    double t = lo + u / denom;
    return f(t) / (denom * denom);
  };
  return integrate_finite(mapped, 0.0, 1.0, tol);
}

double integrate(const FunctionSpec& f, Interval iv, const Tolerances& tol) {
  return integrate([&f](double t) { return f(t); }, iv, tol);
}

std::vector<double> composition_counts(int k, long rho) {
  if (k < 0 || rho < 1)
    throw ConfigError("composition_counts requires k >= 0 and rho >= 1");
  std::vector<double> counts{1.0};
  for (int step = 0; step < k; ++step) {
    std::vector<double> next(counts.size() + static_cast<std::size_t>(rho) - 1,
                             0.0);
    // Convolve with the all-ones vector of length rho via a sliding window.
    double window = 0.0;
    for (std::size_t s = 0; s < next.size(); ++s) {
      if (s < counts.size()) window += counts[s];
      if (s >= static_cast<std::size_t>(rho) &&
          s - static_cast<std::size_t>(rho) < counts.size())
        window -= counts[s - static_cast<std::size_t>(rho)];
      next[s] = window;
    }
    counts = std::move(next);
  }
  return counts;
}

double forward_difference(const RealFn& g, double h, int k, double x) {
  if (k < 0) throw ConfigError("forward_difference requires k >= 0");
  double acc = 0.0;
  double binom = 1.0;
  for (int m = 0; m <= k; ++m) {
    double sign = ((k - m) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binom * g(x + static_cast<double>(m) * h);
    binom *= static_cast<double>(k - m) / static_cast<double>(m + 1);
  }
  return acc;
}

double forward_difference(const FunctionSpec& g, double h, int k, double x) {
  if (k < 0) throw ConfigError("forward_difference requires k >= 0");
  if (g.is_poly()) {
    // Exact coefficient route: iterate q(t) <- q(t+h) - q(t).
    std::vector<double> coeffs = *g.poly_coeffs();
    for (int i = 0; i < k; ++i) {
      std::vector<double> shifted = poly::shift(coeffs, h);
      coeffs = poly::add(shifted, poly::scale(coeffs, -1.0));
    }
    return poly::eval(coeffs, x);
  }
  return forward_difference([&g](double t) { return g(t); }, h, k, x);
}

double divided_difference(const RealFn& g, std::span<const double> nodes) {
  if (nodes.empty()) throw ConfigError("divided_difference needs >= 1 node");
  std::vector<double> table(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) table[i] = g(nodes[i]);
  for (std::size_t level = 1; level < nodes.size(); ++level)
    for (std::size_t i = nodes.size() - 1; i >= level; --i)
      table[i] = (table[i] - table[i - 1]) / (nodes[i] - nodes[i - level]);
  return table.back();
}

double iterated_integral(const FunctionSpec& f, int k, double x,
                         const Tolerances& tol) {
  if (k < 0) throw ConfigError("iterated_integral requires k >= 0");
  if (k == 0) return f(x);
  if (f.is_poly()) {
    std::vector<double> coeffs = *f.poly_coeffs();
    for (int i = 0; i < k; ++i) coeffs = poly::antiderivative(coeffs);
    return poly::eval(coeffs, x);
  }
  if (x == 0.0) return 0.0;
  double kfact = 1.0;
  for (int i = 2; i < k; ++i) kfact *= static_cast<double>(i);
  RealFn kernel = [&f, k, x, kfact](double t) {
    double w = 1.0;
    for (int i = 0; i < k - 1; ++i) w *= (x - t);
    return w / kfact * f(t);
  };
  return integrate(kernel, Interval{0.0, x}, tol);
}

double modulus_estimate(const FunctionSpec& f, double delta, Interval iv,
                        long m) {
  iv.validate();
  if (iv.unbounded())
    throw DomainError("modulus_estimate requires a bounded interval");
  if (!(delta > 0.0)) throw ConfigError("modulus_estimate requires delta > 0");
  if (m < 1000) throw ConfigError("modulus_estimate requires m >= 1000");

  const double h = (iv.upper - iv.lower) / static_cast<double>(m - 1);
  std::vector<double> values(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i)
    values[static_cast<std::size_t>(i)] =
        f(iv.lower + static_cast<double>(i) * h);

  const long window = static_cast<long>(std::floor(delta / h * (1.0 + 1e-12)));
  double best = 0.0;
  for (long i = 0; i < m; ++i) {
    long hi = std::min(m - 1, i + window);
    for (long j = i + 1; j <= hi; ++j)
      best = std::max(best, std::fabs(values[static_cast<std::size_t>(j)] -
                                      values[static_cast<std::size_t>(i)]));
  }
  return best;
}

} // namespace linkops
