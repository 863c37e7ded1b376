#pragma once

#include <vector>

#include "linkops/numerics.hpp"
#include "linkops/types.hpp"

namespace linkops {

// Parameters (c, n) of the basis family p_{n,j} on I_c, where
// I_c = [0, inf) for c >= 0 and [0, -1/c] for c < 0. For c < 0 the family
// is finite: p_{n,j} = 0 for j > -n/c.
struct BasisParams {
  double c = 0.0;
  double n = 1.0;

  void validate() const;
  Interval domain() const {
    return c < 0.0 ? Interval{0.0, -1.0 / c} : Interval{0.0, kInfinity};
  }
  bool finite_family() const { return c < 0.0; }
  long max_index() const; // -n/c for c < 0; throws otherwise
};

// p_{n,j}(x): (n^j/j!) x^j e^{-n x} for c = 0 and
// (n^{c,rising j}/j!) x^j (1+cx)^{-(n/c+j)} for c != 0, evaluated in the
// log domain. Throws DomainError for x outside I_c.
double basis_p(const BasisParams& bp, long j, double x);

// p_{n,0..j_last}(x) as one pass of the stable log-domain recurrence.
std::vector<double> basis_row(const BasisParams& bp, double x, long j_last);

// Smallest J such that the partial sum of p_{n,j}(x) reaches 1 - series_tail
// and the first excluded term, weighted by (1 + (J+1)/n)^growth_order, is
// below series_tail. Returns -n/c for c < 0.
long truncation_index(const BasisParams& bp, double x, int growth_order,
                      const Tolerances& tol);

// S_{n,c}(x) = sum_j p_{n,j}(x)^2, by truncated series and by the integral
// representations (endpoint singularities removed by t = sin^2 theta).
double squared_sum_series(const BasisParams& bp, double x,
                          const Tolerances& tol);
double squared_sum_integral(const BasisParams& bp, double x,
                            const Tolerances& tol);

// Upper bound (4(n+c)x(1+cx)+1)^{-n/(2(n+c))}; requires n + c > 0.
double squared_sum_bound(const BasisParams& bp, double x);

// Order-2 Tsallis entropy 1 - S_{n,c}(x) of the basis distribution.
double tsallis_entropy(const BasisParams& bp, double x, const Tolerances& tol);

} // namespace linkops
