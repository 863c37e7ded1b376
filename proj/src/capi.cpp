#include "linkops.h"

#include <cstring>
#include <sstream>
#include <string>

#include "linkops/analysis.hpp"
#include "linkops/operators.hpp"
#include "linkops/report.hpp"

namespace {

thread_local std::string g_last_error;

linkops::OperatorConfig to_config(const lk_config* cfg) {
  if (!cfg) throw linkops::ConfigError("null config");
  return linkops::OperatorConfig{cfg->c, cfg->n, cfg->rho, cfg->k};
}

linkops::Tolerances to_tolerances(const lk_tolerances* tol) {
  if (!tol) return linkops::Tolerances{};
  return linkops::Tolerances{tol->quad_rel, tol->series_tail,
                             tol->check_slack};
}

linkops::OperatorKind to_kind(int kind) {
  switch (kind) {
    case LK_KIND_BASKAKOV_INF: return linkops::OperatorKind::baskakov_inf;
    case LK_KIND_GENUINE_DURRMEYER:
      return linkops::OperatorKind::genuine_durrmeyer;
    case LK_KIND_LINKING: return linkops::OperatorKind::linking;
    case LK_KIND_V: return linkops::OperatorKind::v_normalized;
    case LK_KIND_D: return linkops::OperatorKind::d_discrete;
    case LK_KIND_V_INF: return linkops::OperatorKind::v_inf;
    case LK_KIND_D_INF: return linkops::OperatorKind::d_inf;
    case LK_KIND_BERNSTEIN: return linkops::OperatorKind::bernstein_classical;
    default: throw linkops::ConfigError("unknown operator kind id");
  }
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return LK_OK;
  } catch (const linkops::ParseError& e) {
    g_last_error = e.what();
    return LK_ERR_PARSE;
  } catch (const linkops::ConfigError& e) {
    g_last_error = e.what();
    return LK_ERR_CONFIG;
  } catch (const linkops::NumericError& e) {
    g_last_error = e.what();
    return LK_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LK_ERR_OTHER;
  }
}

std::vector<linkops::OperatorConfig> parse_params_text(const char* text) {
  if (!text) return linkops::default_verification_configs();
  std::vector<linkops::OperatorConfig> configs;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::string::size_type hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string c_s, n_s, rho_s;
    int k = 0;
    if (!(fields >> c_s >> n_s >> rho_s >> k)) {
      if (c_s.empty()) continue; // blank line
      throw linkops::ConfigError("params grid line needs 'c n rho k': " +
                                 line);
    }
    linkops::OperatorConfig cfg;
    try {
      cfg.c = std::stod(c_s);
      cfg.n = std::stod(n_s);
      cfg.rho = (rho_s == "inf") ? linkops::kInfinity : std::stod(rho_s);
    } catch (const std::exception&) {
      throw linkops::ConfigError("cannot parse params grid line: " + line);
    }
    cfg.k = k;
    cfg.validate();
    configs.push_back(cfg);
  }
  if (configs.empty())
    throw linkops::ConfigError("params grid contains no configs");
  return configs;
}

} // namespace

extern "C" {

struct lk_funcspec {
  linkops::FunctionSpec fs;
};

const char* lk_version(void) { return "1.0.0"; }

const char* lk_last_error(void) { return g_last_error.c_str(); }

lk_tolerances lk_default_tolerances(void) {
  linkops::Tolerances t;
  return lk_tolerances{t.quad_rel, t.series_tail, t.check_slack};
}

int lk_config_validate(const lk_config* cfg) {
  return guarded([&] { to_config(cfg).validate(); });
}

int lk_funcspec_parse(const char* expr, lk_funcspec** out) {
  return guarded([&] {
    if (!expr || !out) throw linkops::ConfigError("null argument");
    *out = new lk_funcspec{linkops::FunctionSpec::parse(expr)};
  });
}

int lk_funcspec_catalog(const char* id, double param, lk_funcspec** out) {
  return guarded([&] {
    if (!id || !out) throw linkops::ConfigError("null argument");
    *out = new lk_funcspec{linkops::FunctionSpec::catalog(id, param)};
  });
}

void lk_funcspec_free(lk_funcspec* f) { delete f; }

int lk_funcspec_eval(const lk_funcspec* f, double t, double* out) {
  return guarded([&] {
    if (!f || !out) throw linkops::ConfigError("null argument");
    *out = f->fs(t);
  });
}

int lk_funcspec_set_d2sup(lk_funcspec* f, double d2sup) {
  return guarded([&] {
    if (!f) throw linkops::ConfigError("null argument");
    if (!(d2sup >= 0.0)) throw linkops::ConfigError("d2sup must be >= 0");
    f->fs.set_d2_sup(d2sup);
  });
}

int lk_funcspec_set_growth(lk_funcspec* f, int growth_order) {
  return guarded([&] {
    if (!f) throw linkops::ConfigError("null argument");
    f->fs.set_growth_order(growth_order);
  });
}

int lk_operator_eval(int kind, const lk_config* cfg, const lk_funcspec* f,
                     double x, const lk_tolerances* tol, double* out) {
  return lk_operator_eval_grid(kind, cfg, f, &x, 1, tol, out);
}

int lk_operator_eval_grid(int kind, const lk_config* cfg,
                          const lk_funcspec* f, const double* xs, size_t n_xs,
                          const lk_tolerances* tol, double* out) {
  return guarded([&] {
    if (!f || !xs || !out || n_xs == 0)
      throw linkops::ConfigError("null argument");
    std::vector<double> values = linkops::evaluate_grid(
        to_kind(kind), to_config(cfg), f->fs,
        std::span<const double>(xs, n_xs), to_tolerances(tol));
    std::memcpy(out, values.data(), n_xs * sizeof(double));
  });
}

int lk_a_functional(const lk_config* cfg, long j, const lk_funcspec* f,
                    const lk_tolerances* tol, int quadrature_oracle,
                    double* out) {
  return guarded([&] {
    if (!f || !out) throw linkops::ConfigError("null argument");
    linkops::FunctionalRoute route =
        quadrature_oracle ? linkops::FunctionalRoute::quadrature
                          : linkops::FunctionalRoute::automatic;
    *out = linkops::a_functional(to_config(cfg), j, f->fs, to_tolerances(tol),
                                 route);
  });
}

int lk_barycenter(const lk_config* cfg, long j, double* out) {
  return guarded([&] {
    if (!out) throw linkops::ConfigError("null argument");
    *out = linkops::barycenter(to_config(cfg), j);
  });
}

int lk_second_moment_a(const lk_config* cfg, long j, double* out) {
  return guarded([&] {
    if (!out) throw linkops::ConfigError("null argument");
    *out = linkops::second_moment_a(to_config(cfg), j);
  });
}

int lk_variance_a(const lk_config* cfg, long j, double* out) {
  return guarded([&] {
    if (!out) throw linkops::ConfigError("null argument");
    *out = linkops::variance_a(to_config(cfg), j);
  });
}

int lk_e_closed(const lk_config* cfg, double x, double* out) {
  return guarded([&] {
    if (!out) throw linkops::ConfigError("null argument");
    *out = linkops::e_closed(to_config(cfg), x);
  });
}

int lk_varx_closed(const lk_config* cfg, double x, double* out) {
  return guarded([&] {
    if (!out) throw linkops::ConfigError("null argument");
    *out = linkops::var_x_closed(to_config(cfg), x);
  });
}

int lk_monomial_images(const lk_config* cfg, double coeffs[3][3]) {
  return guarded([&] {
    if (!coeffs) throw linkops::ConfigError("null argument");
    linkops::OperatorConfig c = to_config(cfg);
    for (int deg = 0; deg <= 2; ++deg) {
      std::array<double, 3> p = linkops::v_monomial_coeffs(c, deg);
      for (int i = 0; i < 3; ++i) coeffs[deg][i] = p[static_cast<size_t>(i)];
    }
  });
}

int lk_basis_p(double c, double n, long j, double x, double* out) {
  return guarded([&] {
    if (!out) throw linkops::ConfigError("null argument");
    *out = linkops::basis_p(linkops::BasisParams{c, n}, j, x);
  });
}

int lk_squared_sum(double c, double n, double x, const lk_tolerances* tol,
                   double* series, double* integral, double* bound) {
  return guarded([&] {
    linkops::BasisParams bp{c, n};
    linkops::Tolerances t = to_tolerances(tol);
    if (series) *series = linkops::squared_sum_series(bp, x, t);
    if (integral) *integral = linkops::squared_sum_integral(bp, x, t);
    if (bound) *bound = linkops::squared_sum_bound(bp, x);
  });
}

int lk_tsallis_entropy(double c, double n, double x, const lk_tolerances* tol,
                       double* out) {
  return guarded([&] {
    if (!out) throw linkops::ConfigError("null argument");
    *out = linkops::tsallis_entropy(linkops::BasisParams{c, n}, x,
                                    to_tolerances(tol));
  });
}

int lk_verify(const char* suite, const char* params_text,
              const lk_tolerances* tol, char** json_out, long* n_failed,
              long* n_inconclusive) {
  return guarded([&] {
    if (!suite || !json_out) throw linkops::ConfigError("null argument");
    std::vector<linkops::OperatorConfig> configs = parse_params_text(params_text);
    std::vector<linkops::VerificationReport> reports =
        linkops::run_suites(suite, configs, to_tolerances(tol));
    std::string json = linkops::reports_to_json(suite, reports);
    long failed = 0, inconclusive = 0;
    for (const linkops::VerificationReport& r : reports) {
      failed += r.n_failed();
      inconclusive += r.n_inconclusive();
    }
    char* buffer = new char[json.size() + 1];
    std::memcpy(buffer, json.c_str(), json.size() + 1);
    *json_out = buffer;
    if (n_failed) *n_failed = failed;
    if (n_inconclusive) *n_inconclusive = inconclusive;
  });
}

void lk_string_free(char* s) { delete[] s; }

} // extern "C"
