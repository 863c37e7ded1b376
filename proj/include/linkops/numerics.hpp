#pragma once

#include <functional>
#include <span>
#include <vector>

#include "linkops/funcspec.hpp"
#include "linkops/types.hpp"

namespace linkops {

using RealFn = std::function<double(double)>;

enum class ProductDirection { rising, falling };

// a^{c,rising j} = prod_{l=0}^{j-1} (a + c l),  a^{c,falling j} with (a - c l).
// The empty product (j = 0) is 1. Zero or negative results are legal values.
double factorial_product(double a, double c, long j, ProductDirection dir);

// Same product in log magnitude with a separate sign, for coefficients that
// overflow double range (rising factorials exceed 1e308 near j ~ 300).
struct SignedLog {
  double log_abs; // -inf encodes zero
  int sign;       // -1, 0, +1
};
SignedLog log_abs_factorial_product(double a, double c, long j,
                                    ProductDirection dir);

// Natural logs of Gamma and Beta. Throws DomainError for arguments <= 0.
double log_gamma(double x);
double log_beta(double x, double y);

// Adaptive Gauss-Kronrod quadrature over iv. Semi-infinite intervals are
// mapped to (0,1) by t = u/(1-u) before subdivision. Panels are bisected
// until the accumulated error estimate is below quad_rel relative to the
// running value; a panel that still fails at depth 60 raises NumericError.
double integrate(const RealFn& f, Interval iv, const Tolerances& tol);
double integrate(const FunctionSpec& f, Interval iv, const Tolerances& tol);

// Number of tuples (i_1,...,i_k) in {0,...,rho-1}^k with sum s, for
// s = 0..k(rho-1), by iterated sliding-window convolution. Entries sum
// to rho^k.
std::vector<double> composition_counts(int k, long rho);

// Forward difference sum_{m=0}^{k} (-1)^{k-m} C(k,m) g(x + m h).
double forward_difference(const RealFn& g, double h, int k, double x);
double forward_difference(const FunctionSpec& g, double h, int k, double x);

// Divided difference over arbitrary nodes via the Newton table. Over k+1
// equally spaced nodes it equals forward_difference / (k! h^k).
double divided_difference(const RealFn& g, std::span<const double> nodes);

// (I_k f)(x) = integral_0^x (x-t)^{k-1}/(k-1)! f(t) dt, with I_0 f = f.
// Polynomial FunctionSpecs use exact antiderivative coefficients.
double iterated_integral(const FunctionSpec& f, int k, double x,
                         const Tolerances& tol);

// Max of |f(s)-f(t)| over pairs of m equally spaced points in iv with
// |s-t| <= delta; a lower estimate of the modulus of continuity.
// Requires iv bounded and m >= 1000.
double modulus_estimate(const FunctionSpec& f, double delta, Interval iv,
                        long m = 2001);

} // namespace linkops
