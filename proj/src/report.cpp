#include "linkops/report.hpp"

#include <cmath>
#include <cstdio>

namespace linkops {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_rho(double rho) {
  return std::isinf(rho) ? "inf" : format_number(rho);
}

namespace {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

void append_config(std::string& out, const OperatorConfig& cfg) {
  out += "{\"c\":" + format_number(cfg.c) + ",\"n\":" + format_number(cfg.n) +
         ",\"rho\":";
  if (cfg.rho_infinite())
    out += "\"inf\"";
  else
    out += format_number(cfg.rho);
  out += ",\"k\":" + std::to_string(cfg.k) + "}";
}

void append_case(std::string& out, const CheckCase& c) {
  out += "{\"check\":\"" + c.check + "\",\"config\":";
  append_config(out, c.cfg);
  if (c.x) out += ",\"x\":" + format_number(*c.x);
  if (c.j) out += ",\"j\":" + std::to_string(*c.j);
  out += ",\"kind\":\"";
  out += (c.kind == CheckKind::identity) ? "identity" : "inequality";
  out += "\",\"lhs\":" + format_number(c.lhs) +
         ",\"rhs\":" + format_number(c.rhs) +
         ",\"slack\":" + format_number(c.slack) + ",\"status\":\"";
  out += status_name(c.status);
  out += "\"}";
}

void append_report_body(std::string& out, const VerificationReport& r) {
  out += "\"suite\":\"" + r.suite + "\",\"overall\":";
  out += r.overall() ? "true" : "false";
  out += ",\"counts\":{\"total\":" + std::to_string(r.cases.size()) +
         ",\"failed\":" + std::to_string(r.n_failed()) +
         ",\"inconclusive\":" + std::to_string(r.n_inconclusive()) + "}";
  out += ",\"cases\":[";
  for (std::size_t i = 0; i < r.cases.size(); ++i) {
    if (i) out += ",";
    append_case(out, r.cases[i]);
  }
  out += "]";
}

} // namespace

std::string report_to_json(const VerificationReport& report) {
  std::string out = "{\"schema\":1,";
  append_report_body(out, report);
  out += "}\n";
  return out;
}

std::string reports_to_json(const std::string& suite,
                            const std::vector<VerificationReport>& reports) {
  if (reports.size() == 1 && suite != "all")
    return report_to_json(reports.front());
  bool overall = true;
  long failed = 0, inconclusive = 0, total = 0;
  for (const VerificationReport& r : reports) {
    overall = overall && r.overall();
    failed += r.n_failed();
    inconclusive += r.n_inconclusive();
    total += static_cast<long>(r.cases.size());
  }
  std::string out = "{\"schema\":1,\"suite\":\"" + suite + "\",\"overall\":";
  out += overall ? "true" : "false";
  out += ",\"counts\":{\"total\":" + std::to_string(total) +
         ",\"failed\":" + std::to_string(failed) +
         ",\"inconclusive\":" + std::to_string(inconclusive) + "}";
  out += ",\"suites\":[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) out += ",";
    out += "{";
    append_report_body(out, reports[i]);
    out += "}";
  }
  out += "]}\n";
  return out;
}

} // namespace linkops
