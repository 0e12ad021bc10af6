#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>

#include "core/expr.hpp"
#include "core/lipschitz.hpp"
#include "core/map.hpp"
#include "core/sequence_gen.hpp"

using namespace germlab;

namespace {

double eval1(const std::string& s, double x) { return eval_expr(*parse_expr(s), Vec{x}); }

std::size_t error_offset(const std::string& s) {
  try {
    parse_expr(s);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    const std::string msg = e.what();
    const auto at = msg.find("offset ");
    REQUIRE(at != std::string::npos);
    return std::stoul(msg.substr(at + 7));
  }
  FAIL("no parse error for " << s);
  return 0;
}

// Reference tree, printer and evaluator, independent of the library parser.
struct Node {
  char op = 0;  // 'n' number, 'v' variable, binary operator, or 'f' function
  double value = 0.0;
  int var = 1;
  std::string fn;
  std::unique_ptr<Node> a, b;
};

int prec(const Node& n) {
  switch (n.op) {
    case '+':
    case '-':
      return 1;
    case '*':
    case '/':
      return 2;
    case '^':
      return 3;
    default:
      return 4;
  }
}

std::unique_ptr<Node> random_node(Rng& rng, int depth) {
  auto n = std::make_unique<Node>();
  const auto pick = depth <= 0 ? rng.below(2) : rng.below(9);
  if (pick == 0) {
    n->op = 'n';
    n->value = static_cast<double>(rng.below(40)) / 4.0;
  } else if (pick == 1) {
    n->op = 'v';
    n->var = 1 + static_cast<int>(rng.below(3));
  } else if (pick <= 6) {
    n->op = "+-*/^"[pick - 2];
    n->a = random_node(rng, depth - 1);
    n->b = random_node(rng, depth - 1);
  } else {
    static const char* fns[] = {"abs", "sqrt", "log", "sin", "cos", "min", "max"};
    n->op = 'f';
    n->fn = fns[rng.below(7)];
    n->a = random_node(rng, depth - 1);
    if (n->fn == "min" || n->fn == "max") n->b = random_node(rng, depth - 1);
  }
  return n;
}

std::string spaces(Rng& rng) { return std::string(rng.below(3), ' '); }

// Minimal parentheses: + - * / are left associative, ^ is right associative.
std::string print(const Node& n, Rng& rng) {
  char buf[32];
  switch (n.op) {
    case 'n':
      std::snprintf(buf, sizeof buf, "%g", n.value);
      return buf;
    case 'v':
      if (n.var == 1 && rng.below(2) == 0) return "x";
      return "x" + std::to_string(n.var);
    case 'f': {
      std::string s = n.fn + "(" + spaces(rng) + print(*n.a, rng);
      if (n.b) s += "," + spaces(rng) + print(*n.b, rng);
      return s + spaces(rng) + ")";
    }
    default:
      break;
  }
  const int p = prec(n);
  const bool right_assoc = n.op == '^';
  const bool wrap_a = prec(*n.a) < p || (right_assoc && prec(*n.a) == p);
  const bool wrap_b = prec(*n.b) < p || (!right_assoc && prec(*n.b) == p);
  std::string sa = print(*n.a, rng), sb = print(*n.b, rng);
  if (wrap_a) sa = "(" + sa + ")";
  if (wrap_b) sb = "(" + sb + ")";
  return sa + spaces(rng) + n.op + spaces(rng) + sb;
}

// nullopt marks a domain error.
std::optional<double> reference(const Node& n, const Vec& x) {
  if (n.op == 'n') return n.value;
  if (n.op == 'v') return x[static_cast<std::size_t>(n.var - 1)];
  const auto a = reference(*n.a, x);
  if (!a) return std::nullopt;
  std::optional<double> b;
  if (n.b) {
    b = reference(*n.b, x);
    if (!b) return std::nullopt;
  }
  double r = 0.0;
  switch (n.op) {
    case '+': r = *a + *b; break;
    case '-': r = *a - *b; break;
    case '*': r = *a * *b; break;
    case '/':
      if (*b == 0.0) return std::nullopt;
      r = *a / *b;
      break;
    case '^': r = std::pow(*a, *b); break;
    default:
      if (n.fn == "abs") r = std::fabs(*a);
      else if (n.fn == "sqrt") {
        if (*a < 0.0) return std::nullopt;
        r = std::sqrt(*a);
      } else if (n.fn == "log") {
        if (*a <= 0.0) return std::nullopt;
        r = std::log(*a);
      } else if (n.fn == "sin") r = std::sin(*a);
      else if (n.fn == "cos") r = std::cos(*a);
      else if (n.fn == "min") r = *a < *b ? *a : *b;
      else r = *a > *b ? *a : *b;
  }
  if (!std::isfinite(r)) return std::nullopt;
  return r;
}

}  // namespace

TEST_CASE("expression examples") {
  CHECK(eval1("x + x^2", 1.0) == 2.0);
  CHECK(eval1("abs(x) - 2*x", -1.0) == 3.0);
  CHECK(eval1("2^3^2", 0.0) == 512.0);
  CHECK(eval1("8/4/2", 0.0) == 1.0);
  CHECK(eval1("1 - 2 - 3", 0.0) == -4.0);
  CHECK(eval1("min(x, 1) + max(x, 1)", 3.0) == 4.0);
  CHECK(eval1("1.5e2 * x", 2.0) == 300.0);
  CHECK(eval_expr(*parse_expr("x1 * x2 + x3"), Vec{2.0, 3.0, 4.0}) == 10.0);
  CHECK(max_variable(*parse_expr("x1 * x7 + 2")) == 7);
  CHECK(max_variable(*parse_expr("sin(2)")) == 0);
}

TEST_CASE("parse errors report offsets") {
  CHECK(error_offset("x +") == 3);
  CHECK(error_offset("") == 0);
  CHECK(error_offset("(x") == 2);
  CHECK(error_offset("foo(x)") == 0);
  CHECK(error_offset("x $ 1") == 2);
  CHECK(error_offset("max(x)") == 5);
  CHECK(error_offset("-x") == 0);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_WITH_AS(eval1("1/x", 0.0), doctest::Contains("division by zero"), Error);
  CHECK_THROWS_AS(eval1("sqrt(x)", -1.0), Error);
  CHECK_THROWS_AS(eval1("log(x)", 0.0), Error);
  CHECK_THROWS_AS(eval1("x^0.5", -1.0), Error);
  CHECK_THROWS_AS(eval1("10^x", 400.0), Error);
  CHECK_THROWS_AS(eval_expr(*parse_expr("x2"), Vec{1.0}), Error);
}

TEST_CASE("pretty printing is a parse fixed point") {
  for (const char* s : {"x + x^2", "abs(x) - 2*x", "2^3^2", "min(x1, x2) / (1 + x3)", "sin(cos(x))^2", "1e-3*x"}) {
    const ExprPtr e = parse_expr(s);
    const std::string p = pretty(*e);
    const ExprPtr e2 = parse_expr(p);
    CHECK(expr_equal(*e, *e2));
    CHECK(pretty(*e2) == p);
  }
}

TEST_CASE("expression maps") {
  Rng rng(3);
  std::vector<PointPair> pairs;
  for (int i = 0; i < 2000; ++i) pairs.push_back({{rng.uniform(-1, 1)}, {rng.uniform(-1, 1)}});
  const double L = estimate_lipschitz(make_expr_map("x^2", 1), pairs);
  CHECK(L <= 2.0);
  CHECK(L >= 1.9);
  CHECK_THROWS_AS(make_expr_map("x1 + x3", 2), Error);
}

TEST_CASE("fuzz against a reference interpreter") {
  Rng rng(2024);
  int evaluated = 0, domain = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto tree = random_node(rng, 4);
    const std::string src = print(*tree, rng);
    const Vec x = {rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    INFO(src);
    ExprPtr e;
    REQUIRE_NOTHROW(e = parse_expr(src));
    CHECK(expr_equal(*e, *parse_expr(pretty(*e))));
    const auto want = reference(*tree, x);
    if (want) {
      double got = 0.0;
      CHECK_NOTHROW(got = eval_expr(*e, x));
      CHECK(got == *want);
      ++evaluated;
    } else {
      CHECK_THROWS_AS(eval_expr(*e, x), Error);
      ++domain;
    }
  }
  CHECK(evaluated > 300);
  CHECK(domain > 10);
}
