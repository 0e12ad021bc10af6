#include "core/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "core/error.hpp"

namespace germlab {

namespace {

bool is_unary(const std::string& f) { return f == "abs" || f == "sqrt" || f == "log" || f == "sin" || f == "cos"; }
bool is_binary(const std::string& f) { return f == "min" || f == "max"; }

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprPtr run() {
    skip();
    if (pos_ >= src_.size()) error("empty expression");
    ExprPtr e = expr();
    skip();
    if (pos_ < src_.size()) error(std::string("unexpected '") + src_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::Parse, "syntax error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) error(pos_ >= src_.size() ? std::string("expected '") + c + "' before end of input"
                                              : std::string("expected '") + c + "'");
  }

  static ExprPtr binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->args = {std::move(a), std::move(b)};
    return e;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = binary(Expr::Kind::Add, lhs, term());
      else if (accept('-'))
        lhs = binary(Expr::Kind::Sub, lhs, term());
      else
        return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = power();
    for (;;) {
      if (accept('*'))
        lhs = binary(Expr::Kind::Mul, lhs, power());
      else if (accept('/'))
        lhs = binary(Expr::Kind::Div, lhs, power());
      else
        return lhs;
    }
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (accept('^')) return binary(Expr::Kind::Pow, base, power());
    return base;
  }

  ExprPtr atom() {
    skip();
    if (pos_ >= src_.size()) error("unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (accept('(')) {
      ExprPtr inner = expr();
      expect(')');
      return inner;
    }
    error(std::string("unexpected '") + c + "'");
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) {
      pos_ = start;
      error("malformed number");
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        pos_ = save;
        error("malformed exponent");
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Number;
    e->number = std::strtod(text.c_str(), nullptr);
    if (!std::isfinite(e->number)) {
      pos_ = start;
      error("number out of range");
    }
    return e;
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::string id(src_.substr(start, pos_ - start));
    if (id == "x" || (id.size() == 2 && id[0] == 'x' && id[1] >= '1' && id[1] <= '9')) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Var;
      e->name = id;
      e->var = id.size() == 1 ? 1 : id[1] - '0';
      return e;
    }
    if (is_unary(id) || is_binary(id)) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Call;
      e->name = id;
      expect('(');
      e->args.push_back(expr());
      if (is_binary(id)) {
        expect(',');
        e->args.push_back(expr());
      }
      expect(')');
      return e;
    }
    pos_ = start;
    error("unknown identifier '" + id + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) fail(ErrorCode::Domain, std::string("non-finite result in ") + what);
  return v;
}

}  // namespace

ExprPtr parse_expr(std::string_view src) { return Parser(src).run(); }

double eval_expr(const Expr& e, VecView vars) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return e.number;
    case Expr::Kind::Var:
      if (e.var > static_cast<int>(vars.size()))
        fail(ErrorCode::InvalidArgument, "unbound variable " + e.name);
      return vars[static_cast<std::size_t>(e.var - 1)];
    case Expr::Kind::Add:
      return checked(eval_expr(*e.args[0], vars) + eval_expr(*e.args[1], vars), "+");
    case Expr::Kind::Sub:
      return checked(eval_expr(*e.args[0], vars) - eval_expr(*e.args[1], vars), "-");
    case Expr::Kind::Mul:
      return checked(eval_expr(*e.args[0], vars) * eval_expr(*e.args[1], vars), "*");
    case Expr::Kind::Div: {
      const double num = eval_expr(*e.args[0], vars);
      const double den = eval_expr(*e.args[1], vars);
      if (den == 0.0) fail(ErrorCode::Domain, "division by zero");
      return checked(num / den, "/");
    }
    case Expr::Kind::Pow:
      return checked(std::pow(eval_expr(*e.args[0], vars), eval_expr(*e.args[1], vars)), "^");
    case Expr::Kind::Call:
      break;
  }
  const double a = eval_expr(*e.args[0], vars);
  if (e.name == "abs") return std::abs(a);
  if (e.name == "sqrt") {
    if (a < 0.0) fail(ErrorCode::Domain, "sqrt of a negative number");
    return std::sqrt(a);
  }
  if (e.name == "log") {
    if (!(a > 0.0)) fail(ErrorCode::Domain, "log of a non-positive number");
    return std::log(a);
  }
  if (e.name == "sin") return std::sin(a);
  if (e.name == "cos") return std::cos(a);
  const double b = eval_expr(*e.args[1], vars);
  return e.name == "min" ? std::min(a, b) : std::max(a, b);
}

std::string pretty(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", e.number);
      return buf;
    }
    case Expr::Kind::Var:
      return e.name;
    case Expr::Kind::Call: {
      std::string s = e.name + "(" + pretty(*e.args[0]);
      if (e.args.size() == 2) s += ", " + pretty(*e.args[1]);
      return s + ")";
    }
    default:
      break;
  }
  const char* op = e.kind == Expr::Kind::Add   ? " + "
                   : e.kind == Expr::Kind::Sub ? " - "
                   : e.kind == Expr::Kind::Mul ? " * "
                   : e.kind == Expr::Kind::Div ? " / "
                                               : " ^ ";
  return "(" + pretty(*e.args[0]) + op + pretty(*e.args[1]) + ")";
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.name != b.name || a.var != b.var || a.args.size() != b.args.size()) return false;
  if (a.kind == Expr::Kind::Number && a.number != b.number) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!expr_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

int max_variable(const Expr& e) {
  int m = e.kind == Expr::Kind::Var ? e.var : 0;
  for (const auto& a : e.args) m = std::max(m, max_variable(*a));
  return m;
}

}  // namespace germlab
