#include "linimp/expression.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace linimp {

struct Expression::Node {
  enum class Kind { number, variable, unary_minus, binary, call } kind = Kind::number;
  double number = 0.0;
  std::string name;
  char op = 0;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

const std::map<std::string, double (*)(double), std::less<>>& functions() {
  static const std::map<std::string, double (*)(double), std::less<>> table = {
      {"sin", [](double v) { return std::sin(v); }},
      {"cos", [](double v) { return std::cos(v); }},
      {"tan", [](double v) { return std::tan(v); }},
      {"exp", [](double v) { return std::exp(v); }},
      {"log", [](double v) { return std::log(v); }},
      {"sqrt", [](double v) { return std::sqrt(v); }},
      {"abs", [](double v) { return std::abs(v); }},
      {"sinh", [](double v) { return std::sinh(v); }},
      {"cosh", [](double v) { return std::cosh(v); }},
      {"tanh", [](double v) { return std::tanh(v); }},
      {"sech", [](double v) { return 1.0 / std::cosh(v); }},
  };
  return table;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ExpressionError("expression '" + std::string(text_) + "' at column " +
                          std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr binary(char op, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::binary;
    n->op = op;
    n->args = {std::move(lhs), std::move(rhs)};
    return n;
  }

  NodePtr sum() {
    NodePtr lhs = product();
    for (;;) {
      if (accept('+')) {
        lhs = binary('+', lhs, product());
      } else if (accept('-')) {
        lhs = binary('-', lhs, product());
      } else {
        return lhs;
      }
    }
  }

  NodePtr product() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary('*', lhs, unary());
      } else if (accept('/')) {
        lhs = binary('/', lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::unary_minus;
      n->args = {unary()};
      return n;
    }
    if (accept('+')) return unary();
    return power();
  }

  // Right associative; binds tighter than unary minus on its left operand.
  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return binary('^', base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (accept('(')) {
      NodePtr inner = sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const std::string copy(begin, text_.size() - pos_);
    const double v = std::strtod(copy.c_str(), &end);
    const std::size_t used = static_cast<std::size_t>(end - copy.c_str());
    if (used == 0) fail("bad number");
    pos_ += used;
    auto n = std::make_shared<Node>();
    n->number = v;
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    if (accept('(')) {
      if (functions().find(name) == functions().end()) fail("unknown function '" + name + "'");
      NodePtr arg = sum();
      if (!accept(')')) fail("expected ')'");
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::call;
      n->name = std::move(name);
      n->args = {std::move(arg)};
      return n;
    }
    auto n = std::make_shared<Node>();
    if (name == "pi") {
      n->number = std::numbers::pi;
      return n;
    }
    n->kind = Node::Kind::variable;
    n->name = std::move(name);
    return n;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double eval(const Node& n, const std::map<std::string, double>& vars) {
  switch (n.kind) {
    case Node::Kind::number:
      return n.number;
    case Node::Kind::variable: {
      auto it = vars.find(n.name);
      if (it == vars.end()) throw ExpressionError("unknown variable '" + n.name + "'");
      return it->second;
    }
    case Node::Kind::unary_minus:
      return -eval(*n.args[0], vars);
    case Node::Kind::call:
      return functions().find(n.name)->second(eval(*n.args[0], vars));
    case Node::Kind::binary: {
      const double a = eval(*n.args[0], vars);
      const double b = eval(*n.args[1], vars);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        case '^': return std::pow(a, b);
      }
    }
  }
  throw ExpressionError("corrupt expression tree");
}

}  // namespace

Expression Expression::parse(std::string_view text) { return Expression(Parser(text).parse()); }

double Expression::evaluate(const std::map<std::string, double>& variables) const {
  return eval(*root_, variables);
}

}  // namespace linimp
