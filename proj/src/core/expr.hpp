#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "core/geometry.hpp"

namespace germlab {

/// AST of the profile language:
///   expr  := term (('+'|'-') term)*
///   term  := factor (('*'|'/') factor)*
///   factor:= power
///   power := atom ('^' factor)?
///   atom  := number | var | func '(' args ')' | '(' expr ')'
/// with func in {abs, sqrt, log, sin, cos} (one argument) and {min, max}
/// (two comma-separated arguments), var in {x, x1..x9}.
struct Expr {
  enum class Kind { Number, Var, Add, Sub, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  double number = 0.0;
  std::string name;  ///< variable or function name
  int var = 0;       ///< 1-based variable index; "x" is x1
  std::vector<std::shared_ptr<const Expr>> args;
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Throws Error(Parse) with a message "syntax error at offset N: ...".
ExprPtr parse_expr(std::string_view src);

/// Throws Error(Domain) on division by zero, sqrt of a negative, log of a
/// non-positive number, or any non-finite intermediate result.
double eval_expr(const Expr& e, VecView vars);

/// Fully parenthesized text that parses back to an equal tree.
std::string pretty(const Expr& e);

bool expr_equal(const Expr& a, const Expr& b);

/// Largest variable index referenced (0 for constant expressions).
int max_variable(const Expr& e);

}  // namespace germlab
