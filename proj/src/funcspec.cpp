#include "linkops/funcspec.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <utility>

namespace linkops {

namespace poly {

double eval(const std::vector<double>& coeffs, double t) {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
  return acc;
}

std::vector<double> antiderivative(const std::vector<double>& coeffs) {
  std::vector<double> out(coeffs.size() + 1, 0.0);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    out[i + 1] = coeffs[i] / static_cast<double>(i + 1);
  return out;
}

std::vector<double> derivative(const std::vector<double>& coeffs) {
  if (coeffs.size() <= 1) return {0.0};
  std::vector<double> out(coeffs.size() - 1);
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    out[i - 1] = coeffs[i] * static_cast<double>(i);
  return out;
}

std::vector<double> shift(const std::vector<double>& coeffs, double h) {
  // p(t+h) via binomial expansion of each power.
  std::vector<double> out(coeffs.size(), 0.0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    double binom = 1.0; // C(i, r) h^r accumulated
    double hpow = 1.0;
    for (std::size_t r = 0; r <= i; ++r) {
      out[i - r] += coeffs[i] * binom * hpow;
      binom *= static_cast<double>(i - r) / static_cast<double>(r + 1);
      hpow *= h;
    }
  }
  return out;
}

std::vector<double> multiply(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<double> add(const std::vector<double>& a,
                        const std::vector<double>& b) {
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

std::vector<double> scale(const std::vector<double>& a, double s) {
  std::vector<double> out(a);
  for (double& v : out) v *= s;
  return out;
}

int degree(const std::vector<double>& coeffs) {
  for (std::size_t i = coeffs.size(); i-- > 0;)
    if (coeffs[i] != 0.0) return static_cast<int>(i);
  return 0;
}

} // namespace poly

namespace {

// ---------------------------------------------------------------------
// Expression AST and recursive-descent parser
// ---------------------------------------------------------------------

enum class NodeOp { constant, variable, add, sub, mul, div, pow, neg, call };

struct Node {
  NodeOp op;
  double value = 0.0;       // constant
  std::string func;         // call
  std::unique_ptr<Node> a, b;
};

using NodePtr = std::unique_ptr<Node>;

double eval_node(const Node& nd, double t) {
  switch (nd.op) {
    case NodeOp::constant: return nd.value;
    case NodeOp::variable: return t;
    case NodeOp::add: return eval_node(*nd.a, t) + eval_node(*nd.b, t);
    case NodeOp::sub: return eval_node(*nd.a, t) - eval_node(*nd.b, t);
    case NodeOp::mul: return eval_node(*nd.a, t) * eval_node(*nd.b, t);
    case NodeOp::div: return eval_node(*nd.a, t) / eval_node(*nd.b, t);
    case NodeOp::pow: return std::pow(eval_node(*nd.a, t), eval_node(*nd.b, t));
    case NodeOp::neg: return -eval_node(*nd.a, t);
    case NodeOp::call: {
      double v = eval_node(*nd.a, t);
      if (nd.func == "exp") return std::exp(v);
      if (nd.func == "log") return std::log(v);
      if (nd.func == "sin") return std::sin(v);
      if (nd.func == "cos") return std::cos(v);
      if (nd.func == "abs") return std::fabs(v);
      return std::sqrt(v);
    }
  }
  return 0.0; // unreachable
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != src_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        NodePtr rhs = term();
        lhs = make_binary(NodeOp::add, std::move(lhs), std::move(rhs));
      } else if (accept('-')) {
        NodePtr rhs = term();
        lhs = make_binary(NodeOp::sub, std::move(lhs), std::move(rhs));
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        NodePtr rhs = factor();
        lhs = make_binary(NodeOp::mul, std::move(lhs), std::move(rhs));
      } else if (accept('/')) {
        NodePtr rhs = factor();
        lhs = make_binary(NodeOp::div, std::move(lhs), std::move(rhs));
      } else {
        return lhs;
      }
    }
  }

  // factor := ('-'|'+') factor | power
  NodePtr factor() {
    if (accept('-')) {
      NodePtr inner = factor();
      auto nd = std::make_unique<Node>();
      nd->op = NodeOp::neg;
      nd->a = std::move(inner);
      return nd;
    }
    if (accept('+')) return factor();
    return power();
  }

  // power := primary ['^' factor]   (right-associative)
  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) {
      NodePtr exponent = factor();
      return make_binary(NodeOp::pow, std::move(base), std::move(exponent));
    }
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr number() {
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc()) throw ParseError("malformed number", pos_);
    pos_ = static_cast<std::size_t>(ptr - src_.data());
    auto nd = std::make_unique<Node>();
    nd->op = NodeOp::constant;
    nd->value = value;
    return nd;
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_'))
      ++pos_;
    std::string name(src_.substr(start, pos_ - start));
    if (name == "t") {
      auto nd = std::make_unique<Node>();
      nd->op = NodeOp::variable;
      return nd;
    }
    static const char* const kFuncs[] = {"exp", "log", "sin",
                                         "cos", "abs", "sqrt"};
    for (const char* fn : kFuncs) {
      if (name == fn) {
        if (!accept('(')) throw ParseError("expected '(' after function", pos_);
        NodePtr arg = expr();
        if (!accept(')')) throw ParseError("expected ')'", pos_);
        auto nd = std::make_unique<Node>();
        nd->op = NodeOp::call;
        nd->func = name;
        nd->a = std::move(arg);
        return nd;
      }
    }
    throw ParseError("unknown identifier '" + name + "'", start);
  }

  static NodePtr make_binary(NodeOp op, NodePtr a, NodePtr b) {
    auto nd = std::make_unique<Node>();
    nd->op = op;
    nd->a = std::move(a);
    nd->b = std::move(b);
    return nd;
  }
};

constexpr int kMaxPolyDegree = 64;

// Bottom-up polynomial detection. Division only by a nonzero constant;
// exponents must fold to nonnegative integers.
std::optional<std::vector<double>> extract_poly(const Node& nd) {
  switch (nd.op) {
    case NodeOp::constant: return std::vector<double>{nd.value};
    case NodeOp::variable: return std::vector<double>{0.0, 1.0};
    case NodeOp::add:
    case NodeOp::sub: {
      auto a = extract_poly(*nd.a);
      auto b = extract_poly(*nd.b);
      if (!a || !b) return std::nullopt;
      if (nd.op == NodeOp::sub) *b = poly::scale(*b, -1.0);
      return poly::add(*a, *b);
    }
    case NodeOp::mul: {
      auto a = extract_poly(*nd.a);
      auto b = extract_poly(*nd.b);
      if (!a || !b) return std::nullopt;
      if (poly::degree(*a) + poly::degree(*b) > kMaxPolyDegree)
        return std::nullopt;
      return poly::multiply(*a, *b);
    }
    case NodeOp::div: {
      auto a = extract_poly(*nd.a);
      auto b = extract_poly(*nd.b);
      if (!a || !b || poly::degree(*b) != 0 || (*b)[0] == 0.0)
        return std::nullopt;
      return poly::scale(*a, 1.0 / (*b)[0]);
    }
    case NodeOp::pow: {
      auto base = extract_poly(*nd.a);
      auto expo = extract_poly(*nd.b);
      if (!base || !expo || poly::degree(*expo) != 0) return std::nullopt;
      double e = (*expo)[0];
      double e_round = std::round(e);
      if (!(std::fabs(e - e_round) < 1e-12) || e_round < 0.0 ||
          e_round > kMaxPolyDegree)
        return std::nullopt;
      int m = static_cast<int>(e_round);
      if (poly::degree(*base) * m > kMaxPolyDegree) return std::nullopt;
      std::vector<double> acc{1.0};
      for (int i = 0; i < m; ++i) acc = poly::multiply(acc, *base);
      return acc;
    }
    case NodeOp::neg: {
      auto a = extract_poly(*nd.a);
      if (!a) return std::nullopt;
      return poly::scale(*a, -1.0);
    }
    case NodeOp::call: return std::nullopt;
  }
  return std::nullopt;
}

} // namespace

FunctionSpec FunctionSpec::parse(std::string_view src) {
  Parser parser(src);
  std::shared_ptr<Node> root(parser.run().release());
  FunctionSpec fs;
  fs.source_ = std::string(src);
  fs.eval_ = [root](double t) { return eval_node(*root, t); };
  if (auto coeffs = extract_poly(*root)) {
    fs.poly_ = std::move(*coeffs);
    fs.growth_order_ = poly::degree(*fs.poly_);
  } else {
    // No derivative analysis is attempted; a quadratic envelope covers the
    // usual bounded/decaying test functions for series truncation.
    fs.growth_order_ = 2;
  }
  return fs;
}

FunctionSpec FunctionSpec::from_poly(std::string source,
                                     std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  FunctionSpec fs;
  fs.source_ = std::move(source);
  auto shared = std::make_shared<std::vector<double>>(coeffs);
  fs.eval_ = [shared](double t) { return poly::eval(*shared, t); };
  fs.poly_ = std::move(coeffs);
  fs.growth_order_ = poly::degree(*fs.poly_);
  return fs;
}

FunctionSpec FunctionSpec::from_function(std::string source,
                                         std::function<double(double)> fn,
                                         int growth_order) {
  FunctionSpec fs;
  fs.source_ = std::move(source);
  fs.eval_ = std::move(fn);
  fs.set_growth_order(growth_order);
  return fs;
}

void FunctionSpec::set_growth_order(int m) {
  if (m < 0) throw ConfigError("growth order must be nonnegative");
  growth_order_ = m;
}

FunctionSpec FunctionSpec::catalog(const std::string& id, double param) {
  if (id == "monomial") {
    double m_round = std::round(param);
    if (std::fabs(param - m_round) > 1e-12 || m_round < 0.0 || m_round > 60.0)
      throw ConfigError("monomial order must be a small nonnegative integer");
    int m = static_cast<int>(m_round);
    std::vector<double> coeffs(static_cast<std::size_t>(m) + 1, 0.0);
    coeffs.back() = 1.0;
    FunctionSpec fs = from_poly("monomial(" + std::to_string(m) + ")",
                                std::move(coeffs));
    // |f''| = m(m-1) t^{m-2}: constant only up to degree 2.
    if (m <= 2) fs.d2_sup_ = (m == 2) ? 2.0 : 0.0;
    return fs;
  }
  if (id == "exp_decay") {
    if (!(param > 0.0)) throw ConfigError("exp_decay rate must be positive");
    FunctionSpec fs = from_function(
        "exp_decay(" + std::to_string(param) + ")",
        [param](double t) { return std::exp(-param * t); }, 0);
    fs.d2_sup_ = param * param; // sup of a^2 e^{-a t} on [0, inf)
    return fs;
  }
  if (id == "abs_shift") {
    FunctionSpec fs = from_function(
        "abs_shift(" + std::to_string(param) + ")",
        [param](double t) { return std::fabs(t - param); }, 1);
    return fs; // no finite d2_sup
  }
  if (id == "sin_scale") {
    FunctionSpec fs = from_function(
        "sin_scale(" + std::to_string(param) + ")",
        [param](double t) { return std::sin(param * t); }, 0);
    fs.d2_sup_ = param * param;
    return fs;
  }
  throw ConfigError("unknown catalog id '" + id + "'");
}

FunctionSpec FunctionSpec::product(const FunctionSpec& other) const {
  FunctionSpec fs;
  fs.source_ = "(" + source_ + ")*(" + other.source_ + ")";
  auto lhs = eval_;
  auto rhs = other.eval_;
  fs.eval_ = [lhs, rhs](double t) { return lhs(t) * rhs(t); };
  if (poly_ && other.poly_ &&
      poly::degree(*poly_) + poly::degree(*other.poly_) <= kMaxPolyDegree)
    fs.poly_ = poly::multiply(*poly_, *other.poly_);
  fs.growth_order_ = growth_order_ + other.growth_order_;
  return fs;
}

FunctionSpec monomial(int m) {
  return FunctionSpec::catalog("monomial", static_cast<double>(m));
}

} // namespace linkops
