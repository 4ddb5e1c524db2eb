#include "walker4/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>
#include <vector>

namespace walker4 {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };

struct Expr::Node {
  Op op;
  double value = 0;    // Const
  int var = 0;         // Var
  int exponent = 0;    // Pow
  NodeRef a, b;
};

namespace {

using NodeRef = Expr::NodeRef;
using Node = Expr::Node;

NodeRef make(Op op, NodeRef a = nullptr, NodeRef b = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodeRef make_const(double v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = v;
  return n;
}

NodeRef make_var(int i) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->var = i;
  return n;
}

bool is_const(const NodeRef& n, double v) { return n->op == Op::Const && n->value == v; }

// Smart constructors fold constants and drop identity operands so that third-order
// derivative trees stay small.

NodeRef add(NodeRef a, NodeRef b) {
  if (a->op == Op::Const && b->op == Op::Const) return make_const(a->value + b->value);
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  return make(Op::Add, std::move(a), std::move(b));
}

NodeRef sub(NodeRef a, NodeRef b) {
  if (a->op == Op::Const && b->op == Op::Const) return make_const(a->value - b->value);
  if (is_const(b, 0)) return a;
  if (is_const(a, 0)) return make(Op::Neg, std::move(b));
  return make(Op::Sub, std::move(a), std::move(b));
}

NodeRef neg(NodeRef a) {
  if (a->op == Op::Const) return make_const(-a->value);
  if (a->op == Op::Neg) return a->a;
  return make(Op::Neg, std::move(a));
}

NodeRef mul(NodeRef a, NodeRef b) {
  if (a->op == Op::Const && b->op == Op::Const) return make_const(a->value * b->value);
  if (is_const(a, 0) || is_const(b, 0)) return make_const(0);
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  if (is_const(a, -1)) return neg(std::move(b));
  if (is_const(b, -1)) return neg(std::move(a));
  return make(Op::Mul, std::move(a), std::move(b));
}

NodeRef div(NodeRef a, NodeRef b) {
  if (a->op == Op::Const && b->op == Op::Const && b->value != 0)
    return make_const(a->value / b->value);
  if (is_const(a, 0) && !is_const(b, 0)) return make_const(0);
  if (is_const(b, 1)) return a;
  return make(Op::Div, std::move(a), std::move(b));
}

NodeRef powi(NodeRef a, int n) {
  if (n == 0) return make_const(1);
  if (n == 1) return a;
  if (a->op == Op::Const) return make_const(std::pow(a->value, n));
  auto node = std::make_shared<Node>();
  node->op = Op::Pow;
  node->exponent = n;
  node->a = std::move(a);
  return node;
}

NodeRef unary(Op op, NodeRef a) {
  if (a->op == Op::Const) {
    switch (op) {
      case Op::Sin: return make_const(std::sin(a->value));
      case Op::Cos: return make_const(std::cos(a->value));
      case Op::Exp: return make_const(std::exp(a->value));
      default: break;
    }
  }
  return make(op, std::move(a));
}

// Integer power by squaring; bit-deterministic unlike pow(double,double).
double eval_powi(double base, int n) {
  if (n < 0) return 1.0 / eval_powi(base, -n);
  double r = 1.0, b = base;
  for (unsigned k = static_cast<unsigned>(n); k != 0; k >>= 1) {
    if (k & 1u) r *= b;
    b *= b;
  }
  return r;
}

double eval_node(const Node& n, std::span<const double> vals) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return vals[static_cast<std::size_t>(n.var)];
    case Op::Add: return eval_node(*n.a, vals) + eval_node(*n.b, vals);
    case Op::Sub: return eval_node(*n.a, vals) - eval_node(*n.b, vals);
    case Op::Mul: return eval_node(*n.a, vals) * eval_node(*n.b, vals);
    case Op::Div: return eval_node(*n.a, vals) / eval_node(*n.b, vals);
    case Op::Pow: return eval_powi(eval_node(*n.a, vals), n.exponent);
    case Op::Neg: return -eval_node(*n.a, vals);
    case Op::Sin: return std::sin(eval_node(*n.a, vals));
    case Op::Cos: return std::cos(eval_node(*n.a, vals));
    case Op::Exp: return std::exp(eval_node(*n.a, vals));
  }
  return 0;
}

NodeRef diff(const NodeRef& n, int var) {
  switch (n->op) {
    case Op::Const: return make_const(0);
    case Op::Var: return make_const(n->var == var ? 1 : 0);
    case Op::Add: return add(diff(n->a, var), diff(n->b, var));
    case Op::Sub: return sub(diff(n->a, var), diff(n->b, var));
    case Op::Mul: return add(mul(diff(n->a, var), n->b), mul(n->a, diff(n->b, var)));
    case Op::Div:
      return div(sub(mul(diff(n->a, var), n->b), mul(n->a, diff(n->b, var))),
                 powi(n->b, 2));
    case Op::Pow:
      return mul(mul(make_const(n->exponent), powi(n->a, n->exponent - 1)), diff(n->a, var));
    case Op::Neg: return neg(diff(n->a, var));
    case Op::Sin: return mul(unary(Op::Cos, n->a), diff(n->a, var));
    case Op::Cos: return neg(mul(unary(Op::Sin, n->a), diff(n->a, var)));
    case Op::Exp: return mul(unary(Op::Exp, n->a), diff(n->a, var));
  }
  return make_const(0);
}

void print(const Node& n, std::string& out) {
  switch (n.op) {
    case Op::Const: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      break;
    }
    case Op::Var: out += "$" + std::to_string(n.var); break;
    case Op::Add: out += '('; print(*n.a, out); out += " + "; print(*n.b, out); out += ')'; break;
    case Op::Sub: out += '('; print(*n.a, out); out += " - "; print(*n.b, out); out += ')'; break;
    case Op::Mul: out += '('; print(*n.a, out); out += '*'; print(*n.b, out); out += ')'; break;
    case Op::Div: out += '('; print(*n.a, out); out += '/'; print(*n.b, out); out += ')'; break;
    case Op::Pow: print(*n.a, out); out += '^' + std::to_string(n.exponent); break;
    case Op::Neg: out += "(-"; print(*n.a, out); out += ')'; break;
    case Op::Sin: out += "sin("; print(*n.a, out); out += ')'; break;
    case Op::Cos: out += "cos("; print(*n.a, out); out += ')'; break;
    case Op::Exp: out += "exp("; print(*n.a, out); out += ')'; break;
  }
}

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string_view> vars)
      : text_(text), vars_(vars) {}

  NodeRef run() {
    NodeRef e = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  NodeRef expr() {
    skip_ws();
    bool negate = false;
    if (peek() == '-') { ++pos_; negate = true; }
    else if (peek() == '+') { ++pos_; }
    NodeRef e = term();
    if (negate) e = neg(std::move(e));
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c == '+') { ++pos_; e = add(std::move(e), term()); }
      else if (c == '-') { ++pos_; e = sub(std::move(e), term()); }
      else break;
    }
    return e;
  }

  NodeRef term() {
    NodeRef e = factor();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c == '*') { ++pos_; e = mul(std::move(e), factor()); }
      else if (c == '/') { ++pos_; e = div(std::move(e), factor()); }
      else break;
    }
    return e;
  }

  NodeRef factor() {
    NodeRef b = base();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      b = powi(std::move(b), integer());
    }
    return b;
  }

  NodeRef base() {
    skip_ws();
    const char c = peek();
    if (c == '\0') throw ParseError("unexpected end of expression", pos_);
    if (c == '(') {
      ++pos_;
      NodeRef e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodeRef number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double v = 0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{}) throw ParseError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(ptr - begin);
    return make_const(v);
  }

  NodeRef ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "sin" || name == "cos" || name == "exp") {
      skip_ws();
      expect('(');
      NodeRef arg = expr();
      expect(')');
      if (name == "sin") return unary(Op::Sin, std::move(arg));
      if (name == "cos") return unary(Op::Cos, std::move(arg));
      return unary(Op::Exp, std::move(arg));
    }
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return make_var(static_cast<int>(i));
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected integer exponent", pos_);
    int v = 0;
    const char* begin = text_.data() + start;
    auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), v);
    if (ec != std::errc{}) throw ParseError("malformed integer exponent", start);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    skip_ws();
    if (peek() != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::span<const std::string_view> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr::Expr() : root_(make_const(0)) {}

Expr Expr::constant(double value) { return Expr(make_const(value)); }

Expr Expr::variable(int index) { return Expr(make_var(index)); }

Expr Expr::parse(std::string_view text, std::span<const std::string_view> vars) {
  return Expr(Parser(text, vars).run());
}

double Expr::eval(std::span<const double> values) const {
  const double v = eval_node(*root_, values);
  if (!std::isfinite(v))
    throw EvaluationDomainError("expression evaluated to a non-finite value: " + str());
  return v;
}

Expr Expr::derivative(int var) const { return Expr(diff(root_, var)); }

bool Expr::is_constant_zero() const { return is_const(root_, 0); }

std::string Expr::str() const {
  std::string out;
  print(*root_, out);
  return out;
}

}  // namespace walker4
