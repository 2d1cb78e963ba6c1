#ifndef WARPCHECK_EXPR_HPP
#define WARPCHECK_EXPR_HPP

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "warpcheck/errors.hpp"
#include "warpcheck/jet.hpp"

namespace warpcheck {

enum class FuncKind { Exp, Log, Sin, Cos, Sqrt, Abs };

// Immutable arithmetic expression over named chart variables. Named constants
// are bound at parse time, so an Expression is a pure function of the chart
// coordinates. Evaluation produces second-order jets by forward-mode AD.
class Expression {
 public:
  enum class NodeKind { Constant, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

  struct Node;
  using NodeRef = std::shared_ptr<const Node>;
  struct Node {
    NodeKind kind;
    double value = 0.0;       // Constant
    int var = -1;             // Variable index into the chart
    std::string name;         // Variable name (for printing)
    FuncKind func = FuncKind::Exp;
    NodeRef a, b;
  };

  // Grammar (EBNF, documented in the README):
  //   expr   = term { ("+" | "-") term } ;
  //   term   = factor { ("*" | "/") factor } ;
  //   factor = "-" factor | power ;
  //   power  = atom [ "^" factor ] ;
  //   atom   = number | ident | ident "(" expr ")" | "(" expr ")" ;
  // "^" binds tighter than unary minus and is right-associative. There is no
  // implicit multiplication. Functions: exp, log, sin, cos, sqrt, abs.
  static Expression parse(std::string_view text, std::vector<std::string> chart_vars,
                          const std::map<std::string, double>& consts = {});

  static Expression constant(double v, std::vector<std::string> chart_vars);
  static Expression var(const std::string& name, std::vector<std::string> chart_vars);

  // Value, gradient and Hessian at a chart point, exact to rounding.
  Jet eval_jet(std::span<const double> point) const;
  double eval(std::span<const double> point) const;

  // Prints with minimal parentheses; parse(print()) is structurally identical.
  std::string print() const;

  const std::vector<std::string>& vars() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }

  // Same AST over a different chart; new_vars must contain every variable
  // this expression references.
  Expression remapped(std::vector<std::string> new_vars) const;

  bool same_structure(const Expression& other) const;

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  Expression operator-() const;
  Expression pow(double p) const;
  Expression call(FuncKind f) const;

  const NodeRef& root() const { return root_; }
  Expression(NodeRef root, std::vector<std::string> vars)
      : root_(std::move(root)), vars_(std::move(vars)) {}

 private:
  NodeRef root_;
  std::vector<std::string> vars_;
};

}  // namespace warpcheck

#endif  // WARPCHECK_EXPR_HPP
