#pragma once

#include "linkops/basis.hpp"
#include "linkops/funcspec.hpp"
#include "linkops/numerics.hpp"
#include "linkops/types.hpp"

namespace linkops {

// Parameter tuple (c, n, rho, k) governing every operator evaluation.
// rho = +infinity selects the limiting operators (closed-form limits and
// divided-difference functionals; no integration).
struct OperatorConfig {
  double c = 0.0;
  double n = 1.0;
  double rho = 1.0;
  int k = 0;

  bool rho_infinite() const { return std::isinf(rho); }
  BasisParams basis() const { return BasisParams{c, n}; }
  // The series in V and D runs over p_{n+kc,j}.
  BasisParams operator_basis() const {
    return BasisParams{c, n + static_cast<double>(k) * c};
  }

  void validate() const;

  // Existence of integral moments of order <= `order` against the
  // coefficient functionals: n rho > (k + order - 1) c.
  void require_moments(int order) const;

  // Largest admissible functional index: -(n+kc)/c for c < 0, -1 for
  // an infinite family.
  long index_limit() const;
};

// Evaluation route for coefficient functionals. `automatic` takes the
// exact coefficient path when f carries polynomial coefficients,
// `quadrature` forces adaptive integration (the independent oracle).
enum class FunctionalRoute { automatic, quadrature };

// Density of F_{n,j}^rho for interior indices (k = 0, 1 <= j < -n/c).
// Beta-type for c < 0, Gamma-type for c = 0, Beta-prime-type for c > 0.
// Indices j = 0 and j = -n/c are point masses, not densities.
double mu_density(const OperatorConfig& cfg, long j, double t);

// F_{n,j}^rho(f): f(0) at j = 0, f(-1/c) at j = -n/c (c < 0), otherwise
// the integral of f against mu_density.
double f_functional(const OperatorConfig& cfg, long j, const FunctionSpec& f,
                    const Tolerances& tol,
                    FunctionalRoute route = FunctionalRoute::automatic);

// A_{n,rho,j}^{(k)}(f). For k = 0 this is F_{n,j}^rho. For k >= 1 and
// finite integer rho it is the normalized k-fold sum collapsed through
// composition_counts:
//   (n rho - (k-1)c)/rho^k * sum_s counts(s) *
//       integral p_{n rho - (k-2)c, j rho + s + k - 1}(t) f(t) dt over I_c.
// For rho = infinity it is the divided-difference functional
//   n^k * forward_difference_{1/n}^k (I_k f)(j/n).
double a_functional(const OperatorConfig& cfg, long j, const FunctionSpec& f,
                    const Tolerances& tol,
                    FunctionalRoute route = FunctionalRoute::automatic);

// Closed-form barycenter b_j = A_j(e_1) = ((2j+k)rho + k)/(2(n rho - kc)),
// with limit (2j+k)/(2n) at rho = infinity.
double barycenter(const OperatorConfig& cfg, long j);

// Closed-form A_j(e_2) from the k-fold sum algebra.
double second_moment_a(const OperatorConfig& cfg, long j);

// Closed-form Var A_j = A_j(e_2) - b_j^2; k/(12 n^2) at rho = infinity.
double variance_a(const OperatorConfig& cfg, long j);

// integral over I_c of p_{m,l}(t) f(t) dt for one basis function of the
// family with parameters (c, m); the building block of the genuine
// Durrmeyer coefficients.
double basis_weighted_integral(double c, double m, long l,
                               const FunctionSpec& f, const Tolerances& tol,
                               FunctionalRoute route =
                                   FunctionalRoute::automatic);

// Exact moments used by the polynomial fast paths (exposed for tests).
namespace detail {
// integral over I_c of t^i p_{m,l}(t) dt
//   = prod_{r=1..i} (l+r)/(m-rc) * 1/(m - (i+1)c).
double basis_integral_moment(double m, double c, double l, int i);
// i-th moment of mu_{n,j}^rho: prod_{r=0..i-1} (j rho + r)/(n rho - rc).
double mu_moment(const OperatorConfig& cfg, long j, int i);
} // namespace detail

} // namespace linkops
