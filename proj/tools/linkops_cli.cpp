// Command-line surface over the linkops C API: evaluation tables, moment
// reports, verification suites, entropy tables and rho-convergence sweeps,
// emitted as deterministic CSV or JSON.
//
// Exit codes: 0 success, 1 verification failure, 2 config error,
// 3 numeric failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linkops.h"

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CliError {
  int exit_code;
  std::string message;
};

void raise_on_error(int status) {
  if (status == LK_OK) return;
  int exit_code = kExitConfig;
  if (status == LK_ERR_NUMERIC) exit_code = kExitNumeric;
  throw CliError{exit_code, lk_last_error()};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_rho(double rho) { return std::isinf(rho) ? "inf" : fmt(rho); }

double parse_rho(const std::string& s) {
  if (s == "inf") return INFINITY;
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw CliError{kExitConfig, "cannot parse rho '" + s + "'"};
  }
}

struct GridSpec {
  double start = 0.0;
  double end = 1.0;
  long count = 11;
  bool given = false;
};

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  g.given = true;
  std::istringstream in(s);
  std::string a, b, c;
  if (!std::getline(in, a, ':') || !std::getline(in, b, ':') ||
      !std::getline(in, c))
    throw CliError{kExitConfig, "grid must be start:end:count"};
  try {
    g.start = std::stod(a);
    g.end = std::stod(b);
    g.count = std::stol(c);
  } catch (const std::exception&) {
    throw CliError{kExitConfig, "grid must be start:end:count"};
  }
  if (!(g.start < g.end) || g.count < 2)
    throw CliError{kExitConfig, "grid requires start < end and count >= 2"};
  return g;
}

lk_tolerances parse_tol(const std::string& s) {
  lk_tolerances tol = lk_default_tolerances();
  if (s.empty()) return tol;
  std::istringstream in(s);
  std::string field;
  double* slots[3] = {&tol.quad_rel, &tol.series_tail, &tol.check_slack};
  int i = 0;
  while (std::getline(in, field, ':')) {
    if (i >= 3) throw CliError{kExitConfig, "tol takes at most three fields"};
    try {
      *slots[i++] = std::stod(field);
    } catch (const std::exception&) {
      throw CliError{kExitConfig, "cannot parse tolerance '" + field + "'"};
    }
  }
  return tol;
}

int parse_kind(const std::string& name) {
  if (name == "binf" || name == "baskakov") return LK_KIND_BASKAKOV_INF;
  if (name == "durr" || name == "durrmeyer") return LK_KIND_GENUINE_DURRMEYER;
  if (name == "link" || name == "linking") return LK_KIND_LINKING;
  if (name == "v") return LK_KIND_V;
  if (name == "d") return LK_KIND_D;
  if (name == "vinf") return LK_KIND_V_INF;
  if (name == "dinf") return LK_KIND_D_INF;
  if (name == "bern" || name == "bernstein") return LK_KIND_BERNSTEIN;
  throw CliError{kExitConfig, "unknown kind '" + name + "'"};
}

std::vector<double> grid_points(const GridSpec& g, double c) {
  GridSpec use = g;
  if (!g.given) {
    use.start = 0.0;
    use.end = (c < 0.0) ? -1.0 / c : 1.0;
    use.count = 11;
  }
  std::vector<double> xs(static_cast<std::size_t>(use.count));
  for (long i = 0; i < use.count; ++i)
    xs[static_cast<std::size_t>(i)] =
        use.start + static_cast<double>(i) * (use.end - use.start) /
                        static_cast<double>(use.count - 1);
  return xs;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw CliError{kExitConfig, "cannot open '" + out_path + "'"};
  out << text;
}

using FuncspecPtr = std::unique_ptr<lk_funcspec, decltype(&lk_funcspec_free)>;

FuncspecPtr make_funcspec(const std::string& expr, double d2sup) {
  lk_funcspec* raw = nullptr;
  raise_on_error(lk_funcspec_parse(expr.c_str(), &raw));
  FuncspecPtr f(raw, &lk_funcspec_free);
  if (d2sup >= 0.0) raise_on_error(lk_funcspec_set_d2sup(f.get(), d2sup));
  return f;
}

std::string config_json(const lk_config& cfg) {
  return "{\"c\":" + fmt(cfg.c) + ",\"n\":" + fmt(cfg.n) + ",\"rho\":" +
         (std::isinf(cfg.rho) ? std::string("\"inf\"") : fmt(cfg.rho)) +
         ",\"k\":" + std::to_string(cfg.k) + "}";
}

// Rows rendered either as CSV (comma, header, LF) or as a schema-1 JSON
// table; both byte-deterministic for identical inputs.
std::string render_table(const std::string& command, const lk_config* cfg,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows,
                         const std::string& format) {
  if (format == "csv") {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ",";
      out += columns[i];
    }
    out += "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ",";
        out += row[i];
      }
      out += "\n";
    }
    return out;
  }
  if (format != "json")
    throw CliError{kExitConfig, "format must be csv or json"};
  std::string out = "{\"schema\":1,\"command\":\"" + command + "\"";
  if (cfg) out += ",\"config\":" + config_json(*cfg);
  out += ",\"columns\":[";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ",";
    out += "\"" + columns[i] + "\"";
  }
  out += "],\"rows\":[";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r) out += ",";
    out += "[";
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      if (i) out += ",";
      out += rows[r][i];
    }
    out += "]";
  }
  out += "]}\n";
  return out;
}

struct CommonOptions {
  double c = 0.0;
  double n = 10.0;
  std::string rho = "1";
  int k = 0;
  std::string grid;
  std::string tol;
  std::string format = "csv";
  std::string out;

  lk_config config() const { return lk_config{c, n, parse_rho(rho), k}; }
  GridSpec grid_spec() const {
    return grid.empty() ? GridSpec{} : parse_grid(grid);
  }
  lk_tolerances tolerances() const { return parse_tol(tol); }
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_config = true) {
  if (with_config) {
    cmd->add_option("--c", opt.c, "basis parameter c");
    cmd->add_option("--n", opt.n, "basis parameter n");
    cmd->add_option("--rho", opt.rho, "linking parameter rho ('inf' allowed)");
    cmd->add_option("--k", opt.k, "Kantorovich order k");
  }
  cmd->add_option("--grid", opt.grid, "evaluation grid start:end:count");
  cmd->add_option("--tol", opt.tol,
                  "tolerances quad_rel[:series_tail[:check_slack]]");
  cmd->add_option("--format", opt.format, "output format: csv or json");
  cmd->add_option("--out", opt.out, "output file (default stdout)");
}

int cmd_eval(const CommonOptions& opt, const std::string& kind_name,
             const std::string& expr, double d2sup) {
  lk_config cfg = opt.config();
  int kind = parse_kind(kind_name);
  lk_tolerances tol = opt.tolerances();
  FuncspecPtr f = make_funcspec(expr, d2sup);
  std::vector<double> xs = grid_points(opt.grid_spec(), cfg.c);
  std::vector<double> values(xs.size());
  raise_on_error(lk_operator_eval_grid(kind, &cfg, f.get(), xs.data(),
                                       xs.size(), &tol, values.data()));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < xs.size(); ++i)
    rows.push_back({fmt(xs[i]), fmt(values[i])});
  write_output(render_table("eval", &cfg, {"x", "value"}, rows, opt.format),
               opt.out);
  return 0;
}

int cmd_moments(const CommonOptions& opt) {
  lk_config cfg = opt.config();
  lk_tolerances tol = opt.tolerances();
  double coeffs[3][3];
  raise_on_error(lk_monomial_images(&cfg, coeffs));
  std::vector<double> xs = grid_points(opt.grid_spec(), cfg.c);

  std::vector<std::vector<double>> oracle(3);
  for (int deg = 0; deg <= 2; ++deg) {
    lk_funcspec* raw = nullptr;
    raise_on_error(
        lk_funcspec_catalog("monomial", static_cast<double>(deg), &raw));
    FuncspecPtr f(raw, &lk_funcspec_free);
    oracle[static_cast<std::size_t>(deg)].resize(xs.size());
    raise_on_error(lk_operator_eval_grid(
        LK_KIND_V, &cfg, f.get(), xs.data(), xs.size(), &tol,
        oracle[static_cast<std::size_t>(deg)].data()));
  }

  std::vector<std::string> columns = {"x"};
  for (int deg = 0; deg <= 2; ++deg) {
    std::string base = "e" + std::to_string(deg);
    columns.push_back(base + "_closed");
    columns.push_back(base + "_oracle");
    columns.push_back(base + "_resid");
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::string> row = {fmt(xs[i])};
    for (int deg = 0; deg <= 2; ++deg) {
      double closed = coeffs[deg][0] +
                      xs[i] * (coeffs[deg][1] + xs[i] * coeffs[deg][2]);
      double orc = oracle[static_cast<std::size_t>(deg)][i];
      row.push_back(fmt(closed));
      row.push_back(fmt(orc));
      row.push_back(fmt(closed - orc));
    }
    rows.push_back(std::move(row));
  }
  write_output(render_table("moments", &cfg, columns, rows, opt.format),
               opt.out);
  return 0;
}

int cmd_verify(const CommonOptions& opt, const std::string& suite,
               const std::string& params_path) {
  std::string params_text;
  const char* params = nullptr;
  if (!params_path.empty()) {
    std::ifstream in(params_path);
    if (!in)
      throw CliError{kExitConfig, "cannot read '" + params_path + "'"};
    std::stringstream buf;
    buf << in.rdbuf();
    params_text = buf.str();
    params = params_text.c_str();
  }
  lk_tolerances tol = opt.tolerances();
  char* json = nullptr;
  long failed = 0, inconclusive = 0;
  raise_on_error(
      lk_verify(suite.c_str(), params, &tol, &json, &failed, &inconclusive));
  std::unique_ptr<char, decltype(&lk_string_free)> guard(json,
                                                         &lk_string_free);
  write_output(json, opt.out);
  if (inconclusive > 0)
    std::cerr << "verify: " << inconclusive
              << " case(s) inconclusive (modulus estimate resolution)\n";
  return failed > 0 ? kExitVerifyFailure : 0;
}

int cmd_entropy(const CommonOptions& opt) {
  lk_config cfg = opt.config();
  cfg.k = 0;
  lk_tolerances tol = opt.tolerances();
  std::vector<double> xs = grid_points(opt.grid_spec(), cfg.c);
  std::vector<std::vector<std::string>> rows;
  bool with_bound = cfg.n + cfg.c > 0.0;
  // bound undefined at n + c <= 0: blank in csv, null in json
  std::string missing = (opt.format == "json") ? "null" : "";
  for (double x : xs) {
    double series = 0.0, integral = 0.0, bound = 0.0, ts = 0.0;
    raise_on_error(lk_squared_sum(cfg.c, cfg.n, x, &tol, &series, &integral,
                                  with_bound ? &bound : nullptr));
    raise_on_error(lk_tsallis_entropy(cfg.c, cfg.n, x, &tol, &ts));
    rows.push_back({fmt(x), fmt(series), fmt(integral),
                    with_bound ? fmt(bound) : missing, fmt(ts)});
  }
  write_output(
      render_table("entropy", &cfg,
                   {"x", "s_series", "s_integral", "s_bound", "tsallis"},
                   rows, opt.format),
      opt.out);
  return 0;
}

int cmd_converge(const CommonOptions& opt, const std::string& expr,
                 const std::string& rhos_csv, double d2sup) {
  lk_config cfg = opt.config();
  lk_tolerances tol = opt.tolerances();
  FuncspecPtr f = make_funcspec(expr, d2sup);
  std::vector<double> xs = grid_points(opt.grid_spec(), cfg.c);

  std::vector<double> rhos;
  std::istringstream in(rhos_csv);
  std::string field;
  while (std::getline(in, field, ',')) rhos.push_back(parse_rho(field));
  if (rhos.empty()) throw CliError{kExitConfig, "empty rho list"};

  lk_config inf_cfg = cfg;
  inf_cfg.rho = INFINITY;
  std::vector<double> limit(xs.size());
  raise_on_error(lk_operator_eval_grid(LK_KIND_V_INF, &inf_cfg, f.get(),
                                       xs.data(), xs.size(), &tol,
                                       limit.data()));

  std::vector<std::vector<std::string>> rows;
  std::vector<double> values(xs.size());
  for (double rho : rhos) {
    lk_config rc = cfg;
    rc.rho = rho;
    raise_on_error(lk_operator_eval_grid(LK_KIND_V, &rc, f.get(), xs.data(),
                                         xs.size(), &tol, values.data()));
    double sup = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      sup = std::max(sup, std::fabs(values[i] - limit[i]));
    rows.push_back({fmt_rho(rho), fmt(sup)});
  }
  write_output(render_table("converge", &cfg, {"rho", "sup_distance"}, rows,
                            opt.format),
               opt.out);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"linking-operator evaluation and verification tool"};
  app.require_subcommand(1);

  CommonOptions eval_opt;
  std::string eval_kind = "v";
  std::string eval_expr = "t";
  double eval_d2sup = -1.0;
  CLI::App* eval = app.add_subcommand("eval", "tabulate an operator on a grid");
  add_common(eval, eval_opt);
  eval->add_option("--kind", eval_kind,
                   "binf|durr|link|v|d|vinf|dinf|bern");
  eval->add_option("--f", eval_expr, "test function expression in t");
  eval->add_option("--d2sup", eval_d2sup, "sup-norm bound for f'' metadata");

  CommonOptions moments_opt;
  CLI::App* moments =
      app.add_subcommand("moments", "closed-form vs series monomial images");
  add_common(moments, moments_opt);

  CommonOptions verify_opt;
  std::string suite = "all";
  std::string params_path;
  CLI::App* verify =
      app.add_subcommand("verify", "run a verification suite, emit JSON");
  add_common(verify, verify_opt, false);
  verify->add_option("--suite", suite,
                     "decomposition|sandwich|thm31|thm32|thm33|section4|"
                     "covariance|entropy-bound|all");
  verify->add_option("--params", params_path,
                     "params grid file: lines 'c n rho k' ('inf' for rho)");

  CommonOptions entropy_opt;
  CLI::App* entropy =
      app.add_subcommand("entropy", "squared-sum and Tsallis entropy table");
  add_common(entropy, entropy_opt);

  CommonOptions conv_opt;
  std::string conv_expr = "t^2";
  std::string conv_rhos = "1,2,4,8,16,32,64,128,256";
  double conv_d2sup = -1.0;
  CLI::App* converge =
      app.add_subcommand("converge", "sup-distance to the rho=inf operator");
  add_common(converge, conv_opt);
  converge->add_option("--f", conv_expr, "test function expression in t");
  converge->add_option("--rhos", conv_rhos, "comma-separated rho list");
  converge->add_option("--d2sup", conv_d2sup, "sup-norm bound for f''");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed())
      return cmd_eval(eval_opt, eval_kind, eval_expr, eval_d2sup);
    if (moments->parsed()) return cmd_moments(moments_opt);
    if (verify->parsed()) return cmd_verify(verify_opt, suite, params_path);
    if (entropy->parsed()) return cmd_entropy(entropy_opt);
    if (converge->parsed())
      return cmd_converge(conv_opt, conv_expr, conv_rhos, conv_d2sup);
  } catch (const CliError& e) {
    std::cerr << "linkops: " << e.message << "\n";
    return e.exit_code;
  }
  return 0;
}
