#include "forge/expr.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <vector>

namespace forge {

namespace {

struct Node {
  virtual ~Node() = default;
  virtual double eval(double x) const = 0;
};
using NodePtr = std::shared_ptr<Node>;

struct Num : Node {
  double v;
  explicit Num(double v) : v(v) {}
  double eval(double) const override { return v; }
};

struct Var : Node {
  double eval(double x) const override { return x; }
};

struct Unary : Node {
  std::function<double(double)> f;
  NodePtr a;
  double eval(double x) const override { return f(a->eval(x)); }
};

struct Binary : Node {
  std::function<double(double, double)> f;
  NodePtr a, b;
  double eval(double x) const override { return f(a->eval(x), b->eval(x)); }
};

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ExprError("expression parse error at position " +
                    std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  // expr := term (('+'|'-') term)*
  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (consume('+')) n = make_bin([](double a, double b) { return a + b; }, n, term());
      else if (consume('-')) n = make_bin([](double a, double b) { return a - b; }, n, term());
      else return n;
    }
  }

  // term := factor (('*'|'/') factor)*
  NodePtr term() {
    NodePtr n = factor();
    for (;;) {
      if (consume('*')) n = make_bin([](double a, double b) { return a * b; }, n, factor());
      else if (consume('/')) n = make_bin([](double a, double b) { return a / b; }, n, factor());
      else return n;
    }
  }

  // factor := '-' factor | atom ('^' factor)?
  // (right-associative power; unary minus binds looser, so -2^2 = -(2^2))
  NodePtr factor() {
    if (consume('-')) {
      auto u = std::make_shared<Unary>();
      u->f = [](double a) { return -a; };
      u->a = factor();
      return u;
    }
    NodePtr n = atom();
    if (consume('^'))
      return make_bin([](double a, double b) { return std::pow(a, b); }, n, factor());
    return n;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      if (!consume(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    std::size_t end;
    double v;
    try {
      v = std::stod(s_.substr(pos_), &end);
    } catch (const std::exception&) {
      fail("bad number");
    }
    pos_ += end;
    return std::make_shared<Num>(v);
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "x") return std::make_shared<Var>();
    if (name == "pi") return std::make_shared<Num>(3.14159265358979323846);
    if (name == "min" || name == "max") {
      if (!consume('(')) fail("expected '(' after " + name);
      NodePtr a = expr();
      if (!consume(',')) fail("expected ',' in " + name);
      NodePtr b = expr();
      if (!consume(')')) fail("expected ')'");
      if (name == "min")
        return make_bin([](double p, double q) { return std::min(p, q); }, a, b);
      return make_bin([](double p, double q) { return std::max(p, q); }, a, b);
    }
    std::function<double(double)> f;
    if (name == "sin") f = [](double a) { return std::sin(a); };
    else if (name == "cos") f = [](double a) { return std::cos(a); };
    else if (name == "exp") f = [](double a) { return std::exp(a); };
    else if (name == "abs") f = [](double a) { return std::abs(a); };
    else if (name == "sqrt") f = [](double a) { return std::sqrt(a); };
    else fail("unknown identifier '" + name + "'");
    if (!consume('(')) fail("expected '(' after " + name);
    auto u = std::make_shared<Unary>();
    u->f = f;
    u->a = expr();
    if (!consume(')')) fail("expected ')'");
    return u;
  }

  static NodePtr make_bin(std::function<double(double, double)> f, NodePtr a,
                          NodePtr b) {
    auto n = std::make_shared<Binary>();
    n->f = std::move(f);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::function<double(double)> parse_expression(const std::string& text) {
  NodePtr root = Parser(text).parse();
  return [root](double x) { return root->eval(x); };
}

}  // namespace forge
