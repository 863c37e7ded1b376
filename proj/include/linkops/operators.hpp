#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "linkops/functionals.hpp"

namespace linkops {

enum class OperatorKind {
  baskakov_inf,       // B_{n,inf}: discrete Baskakov-type sampling at j/n
  genuine_durrmeyer,  // B_{n,1}: endpoint-interpolating integral operator
  linking,            // B_{n,rho}, k = 0, rho real > 0
  v_normalized,       // V_{n,rho}^{(k)}: normalized Kantorovich modification
  d_discrete,         // D_{n,rho}^{(k)}: barycenter sampling
  v_inf,              // V_{n,inf}^{(k)} via divided differences of I_k f
  d_inf,              // D_{n,inf}^{(k)}
  bernstein_classical // B_m on [0,1]
};

OperatorKind kind_from_string(const std::string& name);
std::string kind_to_string(OperatorKind kind);

// Point evaluations. All series share the truncation index of
// truncation_index(operator basis, x, f.growth_order, tol), so identity
// checks compare like-for-like partial sums.
double baskakov_inf_op(const OperatorConfig& cfg, const FunctionSpec& f,
                       double x, const Tolerances& tol);
double genuine_durrmeyer_op(const OperatorConfig& cfg, const FunctionSpec& f,
                            double x, const Tolerances& tol);
double linking_op(const OperatorConfig& cfg, const FunctionSpec& f, double x,
                  const Tolerances& tol);
double v_operator(const OperatorConfig& cfg, const FunctionSpec& f, double x,
                  const Tolerances& tol,
                  FunctionalRoute route = FunctionalRoute::automatic);
double d_operator(const OperatorConfig& cfg, const FunctionSpec& f, double x,
                  const Tolerances& tol);
double v_inf_operator(const OperatorConfig& cfg, const FunctionSpec& f,
                      double x, const Tolerances& tol);
double bernstein_classical_op(long degree, const FunctionSpec& f, double x);

// Batched evaluation; coefficient functionals are computed once per call
// and shared across the grid points.
std::vector<double> evaluate_grid(OperatorKind kind, const OperatorConfig& cfg,
                                  const FunctionSpec& f,
                                  std::span<const double> xs,
                                  const Tolerances& tol,
                                  FunctionalRoute route =
                                      FunctionalRoute::automatic);
double evaluate(OperatorKind kind, const OperatorConfig& cfg,
                const FunctionSpec& f, double x, const Tolerances& tol);

// Closed-form images of e_0, e_1, e_2 under V_{n,rho}^{(k)} as coefficient
// triples in x (value = p[0] + p[1] x + p[2] x^2), from the monomial-image
// algebra of the unnormalized operators.
std::array<double, 3> v_monomial_coeffs(const OperatorConfig& cfg, int degree);

// Scale factor B_{n,rho}^{(k)} e_0 relating the unnormalized operator to V.
double b_e0_scale(const OperatorConfig& cfg);

struct MomentReport {
  std::array<std::array<double, 3>, 3> v_images; // e_0, e_1, e_2 triples
  std::array<std::array<double, 3>, 3> b_images; // unnormalized versions
  std::array<double, 3> max_residual; // closed form vs series, 5 grid points
};
MomentReport monomial_images(const OperatorConfig& cfg, const Tolerances& tol);

} // namespace linkops
