#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace linimp {

class ExpressionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Arithmetic expression over named variables, used for initial conditions
/// such as "2*sech(x - L/2)^2". Supports + - * / ^, unary minus, parentheses,
/// pi, and sin cos tan exp log sqrt abs sinh cosh tanh sech.
class Expression {
 public:
  static Expression parse(std::string_view text);

  double evaluate(const std::map<std::string, double>& variables) const;

  struct Node;

 private:
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace linimp
