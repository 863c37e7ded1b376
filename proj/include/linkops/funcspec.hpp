#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linkops/types.hpp"

namespace linkops {

// Exact coefficient arithmetic on polynomials c0 + c1 t + c2 t^2 + ...
// Used by the polynomial fast paths of the numeric kernels.
namespace poly {

double eval(const std::vector<double>& coeffs, double t);
std::vector<double> antiderivative(const std::vector<double>& coeffs);
std::vector<double> derivative(const std::vector<double>& coeffs);
std::vector<double> shift(const std::vector<double>& coeffs, double h); // p(t+h)
std::vector<double> multiply(const std::vector<double>& a,
                             const std::vector<double>& b);
std::vector<double> add(const std::vector<double>& a,
                        const std::vector<double>& b);
std::vector<double> scale(const std::vector<double>& a, double s);
int degree(const std::vector<double>& coeffs);

} // namespace poly

// An evaluable real function on I_c. Parsed expressions detect polynomial
// sources and carry a coefficient vector enabling the exact fast paths.
// d2_sup (a sup-norm bound on f'') is never inferred from an expression;
// only catalog entries and explicit callers set it.
class FunctionSpec {
 public:
  // Grammar: variable `t`; decimal literals; + - * / ^ with ^ binding
  // tightest and right-associative; functions exp, log, sin, cos, abs,
  // sqrt; parentheses; unary minus. Throws ParseError on malformed input.
  static FunctionSpec parse(std::string_view src);

  // Catalog ids: monomial(m), exp_decay(a), abs_shift(a), sin_scale(a).
  static FunctionSpec catalog(const std::string& id, double param);

  static FunctionSpec from_poly(std::string source, std::vector<double> coeffs);
  static FunctionSpec from_function(std::string source,
                                    std::function<double(double)> fn,
                                    int growth_order);

  double operator()(double t) const { return eval_(t); }

  const std::string& source() const { return source_; }
  const std::optional<std::vector<double>>& poly_coeffs() const {
    return poly_;
  }
  bool is_poly() const { return poly_.has_value(); }

  std::optional<double> d2_sup() const { return d2_sup_; }
  void set_d2_sup(double v) { d2_sup_ = v; }

  int growth_order() const { return growth_order_; }
  void set_growth_order(int m);

  // Pointwise product; polynomial coefficients convolve when both carry
  // them, growth orders add, d2_sup is dropped.
  FunctionSpec product(const FunctionSpec& other) const;

 private:
  FunctionSpec() = default;

  std::string source_;
  std::function<double(double)> eval_;
  std::optional<std::vector<double>> poly_;
  std::optional<double> d2_sup_;
  int growth_order_ = 0;
};

// Monomials e_0, e_1, e_2, ... as catalog shorthands.
FunctionSpec monomial(int m);

} // namespace linkops
