#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace linkops {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Error taxonomy. ConfigError covers invalid parameter tuples and values
// outside their stated domain, detected before numerics run. NumericError
// covers failures of the numeric machinery itself (quadrature stall,
// truncation overflow). ParseError carries the offending position.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DomainError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct Tolerances {
  double quad_rel = 1e-10;    // relative quadrature tolerance
  double series_tail = 1e-12; // series truncation threshold
  double check_slack = 1e-9;  // additive slack for inequality verification

  void validate() const {
    auto ok = [](double v) { return v > 0.0 && v < 1e-2; };
    if (!ok(quad_rel) || !ok(series_tail) || !ok(check_slack))
      throw ConfigError("tolerances must be strictly positive and < 1e-2");
  }
};

// [lower, upper] with upper possibly +infinity.
struct Interval {
  double lower = 0.0;
  double upper = kInfinity;

  bool unbounded() const { return std::isinf(upper); }
  void validate() const {
    if (!(lower >= 0.0) || !(upper > lower))
      throw ConfigError("interval requires 0 <= lower < upper");
  }
  bool contains(double x) const { return x >= lower && x <= upper; }
};

// Equally spaced abscissae: start + i*(end-start)/(count-1).
struct Grid {
  double start = 0.0;
  double end = 1.0;
  long count = 11;

  void validate() const {
    if (!(start < end) || count < 2)
      throw ConfigError("grid requires start < end and count >= 2");
  }
  std::vector<double> points() const {
    validate();
    std::vector<double> xs(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i)
      xs[static_cast<std::size_t>(i)] =
          start + static_cast<double>(i) * (end - start) /
                      static_cast<double>(count - 1);
    return xs;
  }
};

} // namespace linkops
