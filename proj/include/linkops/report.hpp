#pragma once

#include <string>
#include <vector>

#include "linkops/analysis.hpp"

namespace linkops {

// 17-significant-digit, locale-independent, round-trip-safe rendering used
// for every number the artifact emits.
std::string format_number(double v);

// rho prints as "inf" at infinity, otherwise as a number.
std::string format_rho(double rho);

// Report JSON, schema 1. Deterministic: identical inputs yield identical
// bytes.
std::string report_to_json(const VerificationReport& report);
std::string reports_to_json(const std::string& suite,
                            const std::vector<VerificationReport>& reports);

} // namespace linkops
