#include "warpcheck/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>

namespace warpcheck {

namespace {

using Node = Expression::Node;
using NodeKind = Expression::NodeKind;
using NodeRef = Expression::NodeRef;

NodeRef make_const(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->value = v;
  return n;
}

NodeRef make_var(int index, std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Variable;
  n->var = index;
  n->name = std::move(name);
  return n;
}

NodeRef make_unary(NodeKind k, NodeRef a) {
  // "-literal" is a negative literal, not a Neg node; keeps print/parse
  // round-trips structural.
  if (k == NodeKind::Neg && a->kind == NodeKind::Constant) return make_const(-a->value);
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  return n;
}

NodeRef make_binary(NodeKind k, NodeRef a, NodeRef b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodeRef make_call(FuncKind f, NodeRef a) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Call;
  n->func = f;
  n->a = std::move(a);
  return n;
}

std::optional<FuncKind> func_by_name(std::string_view s) {
  if (s == "exp") return FuncKind::Exp;
  if (s == "log") return FuncKind::Log;
  if (s == "sin") return FuncKind::Sin;
  if (s == "cos") return FuncKind::Cos;
  if (s == "sqrt") return FuncKind::Sqrt;
  if (s == "abs") return FuncKind::Abs;
  return std::nullopt;
}

const char* func_name(FuncKind f) {
  switch (f) {
    case FuncKind::Exp: return "exp";
    case FuncKind::Log: return "log";
    case FuncKind::Sin: return "sin";
    case FuncKind::Cos: return "cos";
    case FuncKind::Sqrt: return "sqrt";
    case FuncKind::Abs: return "abs";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum Type { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } type;
  double num = 0.0;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= s_.size()) {
      tok_.type = Token::End;
      return;
    }
    char c = s_[i_];
    switch (c) {
      case '+': tok_.type = Token::Plus; ++i_; return;
      case '-': tok_.type = Token::Minus; ++i_; return;
      case '*': tok_.type = Token::Star; ++i_; return;
      case '/': tok_.type = Token::Slash; ++i_; return;
      case '^': tok_.type = Token::Caret; ++i_; return;
      case '(': tok_.type = Token::LParen; ++i_; return;
      case ')': tok_.type = Token::RParen; ++i_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      auto res = std::from_chars(s_.data() + i_, s_.data() + s_.size(), v);
      if (res.ec != std::errc{} || res.ptr == s_.data() + i_)
        throw SyntaxError("bad numeric literal", i_);
      tok_.type = Token::Num;
      tok_.num = v;
      i_ = static_cast<std::size_t>(res.ptr - s_.data());
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      tok_.type = Token::Ident;
      tok_.text = std::string(s_.substr(i_, j - i_));
      i_ = j;
      return;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", i_);
  }

  std::string_view s_;
  std::size_t i_ = 0;
  Token tok_;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars,
         const std::map<std::string, double>& consts)
      : lex_(text), vars_(vars), consts_(consts) {}

  NodeRef run() {
    NodeRef e = expr();
    if (lex_.peek().type != Token::End)
      throw SyntaxError("expected operator or end of input", lex_.peek().pos);
    return e;
  }

 private:
  NodeRef expr() {
    NodeRef e = term();
    while (lex_.peek().type == Token::Plus || lex_.peek().type == Token::Minus) {
      Token op = lex_.take();
      e = make_binary(op.type == Token::Plus ? NodeKind::Add : NodeKind::Sub, e, term());
    }
    return e;
  }

  NodeRef term() {
    NodeRef e = factor();
    while (lex_.peek().type == Token::Star || lex_.peek().type == Token::Slash) {
      Token op = lex_.take();
      e = make_binary(op.type == Token::Star ? NodeKind::Mul : NodeKind::Div, e, factor());
    }
    return e;
  }

  NodeRef factor() {
    if (lex_.peek().type == Token::Minus) {
      lex_.take();
      return make_unary(NodeKind::Neg, factor());
    }
    return power();
  }

  NodeRef power() {
    NodeRef base = atom();
    if (lex_.peek().type == Token::Caret) {
      lex_.take();
      return make_binary(NodeKind::Pow, base, factor());
    }
    return base;
  }

  NodeRef atom() {
    Token t = lex_.peek();
    switch (t.type) {
      case Token::Num:
        lex_.take();
        return make_const(t.num);
      case Token::LParen: {
        lex_.take();
        NodeRef e = expr();
        expect(Token::RParen, "expected ')'");
        return e;
      }
      case Token::Ident: {
        lex_.take();
        if (lex_.peek().type == Token::LParen) {
          auto f = func_by_name(t.text);
          if (!f) throw UnknownIdentifier(t.text);
          lex_.take();
          NodeRef arg = expr();
          expect(Token::RParen, "expected ')'");
          return make_call(*f, arg);
        }
        auto it = std::find(vars_.begin(), vars_.end(), t.text);
        if (it != vars_.end())
          return make_var(static_cast<int>(it - vars_.begin()), t.text);
        auto ci = consts_.find(t.text);
        if (ci != consts_.end()) return make_const(ci->second);
        throw UnknownIdentifier(t.text);
      }
      default:
        throw SyntaxError("expected number, identifier or '('", t.pos);
    }
  }

  void expect(Token::Type ty, const char* msg) {
    if (lex_.peek().type != ty) throw SyntaxError(msg, lex_.peek().pos);
    lex_.take();
  }

  Lexer lex_;
  const std::vector<std::string>& vars_;
  const std::map<std::string, double>& consts_;
};

// ---------------------------------------------------------------------------
// Printer

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Effective precedence for parenthesization. Negative literals print with a
// leading '-', so they carry unary-minus precedence.
int prec(const Node& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    case NodeKind::Constant: return n.value < 0 || std::signbit(n.value) ? 3 : 5;
    case NodeKind::Variable:
    case NodeKind::Call: return 5;
  }
  return 5;
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& child, int min_prec, std::string& out) {
  if (prec(child) < min_prec) {
    out += '(';
    print_node(child, out);
    out += ')';
  } else {
    print_node(child, out);
  }
}

void print_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Constant:
      out += fmt_double(n.value);
      return;
    case NodeKind::Variable:
      out += n.name;
      return;
    case NodeKind::Neg:
      out += '-';
      print_child(*n.a, 3, out);
      return;
    case NodeKind::Add:
      print_child(*n.a, 1, out);
      out += " + ";
      print_child(*n.b, 2, out);
      return;
    case NodeKind::Sub:
      print_child(*n.a, 1, out);
      out += " - ";
      print_child(*n.b, 2, out);
      return;
    case NodeKind::Mul:
      print_child(*n.a, 2, out);
      out += '*';
      print_child(*n.b, 3, out);
      return;
    case NodeKind::Div:
      print_child(*n.a, 2, out);
      out += '/';
      print_child(*n.b, 3, out);
      return;
    case NodeKind::Pow:
      print_child(*n.a, 5, out);
      out += '^';
      print_child(*n.b, 3, out);
      return;
    case NodeKind::Call:
      out += func_name(n.func);
      out += '(';
      print_node(*n.a, out);
      out += ')';
      return;
  }
}

std::string print_subtree(const Node& n) {
  std::string s;
  print_node(n, s);
  return s;
}

// ---------------------------------------------------------------------------
// Evaluation

[[noreturn]] void domain_error(const char* what, const Node& n) {
  throw DomainError(what, print_subtree(n));
}

Jet eval_node(const Node& n, std::span<const double> p, int nv) {
  switch (n.kind) {
    case NodeKind::Constant:
      return Jet::constant(nv, n.value);
    case NodeKind::Variable:
      return Jet::variable(nv, n.var, p[static_cast<std::size_t>(n.var)]);
    case NodeKind::Neg:
      return -eval_node(*n.a, p, nv);
    case NodeKind::Add:
      return eval_node(*n.a, p, nv) + eval_node(*n.b, p, nv);
    case NodeKind::Sub:
      return eval_node(*n.a, p, nv) - eval_node(*n.b, p, nv);
    case NodeKind::Mul:
      return eval_node(*n.a, p, nv) * eval_node(*n.b, p, nv);
    case NodeKind::Div: {
      Jet b = eval_node(*n.b, p, nv);
      if (b.value() == 0.0) domain_error("division by zero", n);
      return eval_node(*n.a, p, nv) * b.reciprocal();
    }
    case NodeKind::Pow: {
      Jet base = eval_node(*n.a, p, nv);
      Jet ex = eval_node(*n.b, p, nv);
      if (ex.derivatives_vanish()) {
        double q = ex.value();
        if (q == std::nearbyint(q) && std::abs(q) <= 64.0) {
          if (base.value() == 0.0 && q < 0.0) domain_error("zero base with negative exponent", n);
          return base.powi(static_cast<long long>(q));
        }
        if (base.value() <= 0.0) domain_error("non-integer power of non-positive base", n);
        double x = base.value();
        double f = std::pow(x, q);
        return base.chain(f, q * f / x, q * (q - 1.0) * f / (x * x));
      }
      // Variable exponent: a^b = exp(b*log(a)), a > 0.
      if (base.value() <= 0.0) domain_error("variable power of non-positive base", n);
      double x = base.value();
      Jet lg = base.chain(std::log(x), 1.0 / x, -1.0 / (x * x));
      Jet e = ex * lg;
      double ev = std::exp(e.value());
      return e.chain(ev, ev, ev);
    }
    case NodeKind::Call: {
      Jet a = eval_node(*n.a, p, nv);
      double x = a.value();
      switch (n.func) {
        case FuncKind::Exp: {
          double f = std::exp(x);
          return a.chain(f, f, f);
        }
        case FuncKind::Log:
          if (x <= 0.0) domain_error("log of non-positive value", n);
          return a.chain(std::log(x), 1.0 / x, -1.0 / (x * x));
        case FuncKind::Sin:
          return a.chain(std::sin(x), std::cos(x), -std::sin(x));
        case FuncKind::Cos:
          return a.chain(std::cos(x), -std::sin(x), -std::cos(x));
        case FuncKind::Sqrt: {
          if (x <= 0.0) domain_error("sqrt of non-positive value", n);
          double s = std::sqrt(x);
          return a.chain(s, 0.5 / s, -0.25 / (s * x));
        }
        case FuncKind::Abs:
          if (x == 0.0) domain_error("abs is not differentiable at zero", n);
          return a.chain(std::abs(x), x > 0.0 ? 1.0 : -1.0, 0.0);
      }
      domain_error("unknown function", n);
    }
  }
  domain_error("unknown node", n);
}

double eval_value(const Node& n, std::span<const double> p) {
  switch (n.kind) {
    case NodeKind::Constant: return n.value;
    case NodeKind::Variable: return p[static_cast<std::size_t>(n.var)];
    case NodeKind::Neg: return -eval_value(*n.a, p);
    case NodeKind::Add: return eval_value(*n.a, p) + eval_value(*n.b, p);
    case NodeKind::Sub: return eval_value(*n.a, p) - eval_value(*n.b, p);
    case NodeKind::Mul: return eval_value(*n.a, p) * eval_value(*n.b, p);
    case NodeKind::Div: {
      double b = eval_value(*n.b, p);
      if (b == 0.0) domain_error("division by zero", n);
      return eval_value(*n.a, p) / b;
    }
    case NodeKind::Pow: {
      double x = eval_value(*n.a, p);
      double q = eval_value(*n.b, p);
      if (q == std::nearbyint(q) && std::abs(q) <= 64.0) {
        if (x == 0.0 && q < 0.0) domain_error("zero base with negative exponent", n);
        double r = 1.0;
        long long m = static_cast<long long>(std::abs(q));
        for (long long k = 0; k < m; ++k) r *= x;
        return q < 0.0 ? 1.0 / r : r;
      }
      if (x <= 0.0) domain_error("non-integer power of non-positive base", n);
      return std::pow(x, q);
    }
    case NodeKind::Call: {
      double x = eval_value(*n.a, p);
      switch (n.func) {
        case FuncKind::Exp: return std::exp(x);
        case FuncKind::Log:
          if (x <= 0.0) domain_error("log of non-positive value", n);
          return std::log(x);
        case FuncKind::Sin: return std::sin(x);
        case FuncKind::Cos: return std::cos(x);
        case FuncKind::Sqrt:
          if (x < 0.0) domain_error("sqrt of negative value", n);
          return std::sqrt(x);
        case FuncKind::Abs: return std::abs(x);
      }
      domain_error("unknown function", n);
    }
  }
  domain_error("unknown node", n);
}

// ---------------------------------------------------------------------------
// Structure helpers

bool nodes_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Constant: return a.value == b.value;
    case NodeKind::Variable: return a.var == b.var && a.name == b.name;
    case NodeKind::Neg: return nodes_equal(*a.a, *b.a);
    case NodeKind::Call: return a.func == b.func && nodes_equal(*a.a, *b.a);
    default: return nodes_equal(*a.a, *b.a) && nodes_equal(*a.b, *b.b);
  }
}

NodeRef remap_node(const Node& n, const std::vector<std::string>& new_vars) {
  switch (n.kind) {
    case NodeKind::Constant:
      return make_const(n.value);
    case NodeKind::Variable: {
      auto it = std::find(new_vars.begin(), new_vars.end(), n.name);
      if (it == new_vars.end())
        throw BadParams("variable '" + n.name + "' missing from target chart");
      return make_var(static_cast<int>(it - new_vars.begin()), n.name);
    }
    case NodeKind::Neg:
      return make_unary(NodeKind::Neg, remap_node(*n.a, new_vars));
    case NodeKind::Call:
      return make_call(n.func, remap_node(*n.a, new_vars));
    default:
      return make_binary(n.kind, remap_node(*n.a, new_vars), remap_node(*n.b, new_vars));
  }
}

void check_chart(const std::vector<std::string>& vars) {
  if (vars.size() > Jet::kMaxVars)
    throw BadParams("at most 4 chart variables are supported");
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw BadParams("duplicate chart variable '" + vars[i] + "'");
}

}  // namespace

// ---------------------------------------------------------------------------

Expression Expression::parse(std::string_view text, std::vector<std::string> chart_vars,
                             const std::map<std::string, double>& consts) {
  if (text.empty()) throw SyntaxError("empty expression", 0);
  check_chart(chart_vars);
  for (const auto& v : chart_vars)
    if (consts.count(v))
      throw BadParams("'" + v + "' is both a chart variable and a constant");
  Parser p(text, chart_vars, consts);
  return Expression(p.run(), std::move(chart_vars));
}

Expression Expression::constant(double v, std::vector<std::string> chart_vars) {
  check_chart(chart_vars);
  return Expression(make_const(v), std::move(chart_vars));
}

Expression Expression::var(const std::string& name, std::vector<std::string> chart_vars) {
  check_chart(chart_vars);
  auto it = std::find(chart_vars.begin(), chart_vars.end(), name);
  if (it == chart_vars.end()) throw UnknownIdentifier(name);
  int idx = static_cast<int>(it - chart_vars.begin());
  return Expression(make_var(idx, name), std::move(chart_vars));
}

Jet Expression::eval_jet(std::span<const double> point) const {
  if (point.size() != vars_.size())
    throw BadParams("point dimension does not match chart");
  return eval_node(*root_, point, nvars());
}

double Expression::eval(std::span<const double> point) const {
  if (point.size() != vars_.size())
    throw BadParams("point dimension does not match chart");
  return eval_value(*root_, point);
}

std::string Expression::print() const { return print_subtree(*root_); }

Expression Expression::remapped(std::vector<std::string> new_vars) const {
  check_chart(new_vars);
  NodeRef r = remap_node(*root_, new_vars);
  return Expression(std::move(r), std::move(new_vars));
}

bool Expression::same_structure(const Expression& other) const {
  return nodes_equal(*root_, *other.root_);
}

static void require_same_chart(const Expression& a, const Expression& b) {
  if (a.vars() != b.vars())
    throw BadParams("operands are over different charts; remap first");
}

Expression operator+(const Expression& a, const Expression& b) {
  require_same_chart(a, b);
  return Expression(make_binary(NodeKind::Add, a.root(), b.root()), a.vars());
}

Expression operator-(const Expression& a, const Expression& b) {
  require_same_chart(a, b);
  return Expression(make_binary(NodeKind::Sub, a.root(), b.root()), a.vars());
}

Expression operator*(const Expression& a, const Expression& b) {
  require_same_chart(a, b);
  return Expression(make_binary(NodeKind::Mul, a.root(), b.root()), a.vars());
}

Expression operator/(const Expression& a, const Expression& b) {
  require_same_chart(a, b);
  return Expression(make_binary(NodeKind::Div, a.root(), b.root()), a.vars());
}

Expression Expression::operator-() const {
  return Expression(make_unary(NodeKind::Neg, root_), vars_);
}

Expression Expression::pow(double p) const {
  return Expression(make_binary(NodeKind::Pow, root_, make_const(p)), vars_);
}

Expression Expression::call(FuncKind f) const {
  return Expression(make_call(f, root_), vars_);
}

}  // namespace warpcheck
