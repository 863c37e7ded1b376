#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linkops/operators.hpp"

namespace linkops {

enum class CheckKind { identity, inequality };
enum class CheckStatus { pass, fail, inconclusive };

// One verified identity or inequality: pass means |lhs - rhs| <= slack for
// identities and lhs <= rhs + slack for inequalities. `inconclusive` marks
// inequality cases whose right-hand side is only a lower estimate (modulus
// of continuity on a grid) and whose violation is within the estimate's
// resolution bound.
struct CheckCase {
  std::string check;
  OperatorConfig cfg;
  std::optional<double> x;
  std::optional<long> j;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  CheckKind kind = CheckKind::identity;
  CheckStatus status = CheckStatus::pass;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckCase> cases;

  long n_failed() const;
  long n_inconclusive() const;
  bool overall() const { return n_failed() == 0; }
};

CheckCase make_identity_case(std::string check, const OperatorConfig& cfg,
                             double lhs, double rhs, double slack);
CheckCase make_inequality_case(std::string check, const OperatorConfig& cfg,
                               double lhs, double rhs, double slack);
// Inequality whose right-hand side is a lower estimate with a known
// resolution: violations within the resolution band are inconclusive.
CheckCase make_estimated_inequality_case(std::string check,
                                         const OperatorConfig& cfg, double lhs,
                                         double rhs_estimate,
                                         double rhs_resolution, double slack);

// M_2 L(x) = L((t-x)^2)(x), evaluated through the monomial expansion
// e_2 - 2x e_1 + x^2 e_0 on the operator's series path.
double second_moment_m2(OperatorKind kind, const OperatorConfig& cfg, double x,
                        const Tolerances& tol);

// Var_x L = L e_2(x) - (L e_1(x))^2 through the series path, plus the
// closed form for the normalized operators V.
struct VarX {
  double numeric;
  std::optional<double> closed;
};
VarX var_x_operator(OperatorKind kind, const OperatorConfig& cfg, double x,
                    const Tolerances& tol);

// E(V)(x) = sum_j Var(A_j) p_{n+kc,j}(x) by series and by closed form;
// k/(12 n^2) at rho = infinity.
struct SeriesAndClosed {
  double series;
  double closed;
};
SeriesAndClosed e_of_l(const OperatorConfig& cfg, double x,
                       const Tolerances& tol);

// Closed forms used across the suites.
double e_closed(const OperatorConfig& cfg, double x);
double var_x_closed(const OperatorConfig& cfg, double x);
double v_barycenter(const OperatorConfig& cfg, double x);

// Verification suites. Failures are report entries, never exceptions.
VerificationReport check_decomposition(const OperatorConfig& cfg,
                                       const std::vector<double>& xs,
                                       const Tolerances& tol);
VerificationReport check_sandwich(const OperatorConfig& cfg,
                                  const std::vector<double>& xs,
                                  const Tolerances& tol);
VerificationReport check_theorem31(const OperatorConfig& cfg,
                                   const FunctionSpec& f,
                                   const std::vector<double>& xs,
                                   const std::vector<long>& js,
                                   const Tolerances& tol);
VerificationReport check_theorem32(const OperatorConfig& cfg,
                                   const FunctionSpec& f,
                                   const std::vector<double>& xs,
                                   const Tolerances& tol);
VerificationReport check_theorem33(const Tolerances& tol);
VerificationReport check_section4(long n, int k, const FunctionSpec& f,
                                  const std::vector<double>& xs,
                                  const Tolerances& tol);
VerificationReport check_covariance_bound(const BasisParams& bp,
                                          const FunctionSpec& f,
                                          const FunctionSpec& g,
                                          const std::vector<double>& xs,
                                          const Tolerances& tol);
VerificationReport check_entropy_bound(const BasisParams& bp,
                                       const std::vector<double>& xs,
                                       const Tolerances& tol);

// Named suites over a config list: decomposition, sandwich, thm31, thm32,
// thm33, section4, covariance, entropy-bound, all.
std::vector<VerificationReport> run_suites(const std::string& suite,
                                           const std::vector<OperatorConfig>&
                                               configs,
                                           const Tolerances& tol);

// The default verification grid used when no params file is given.
std::vector<OperatorConfig> default_verification_configs();

} // namespace linkops
