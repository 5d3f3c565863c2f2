#pragma once

// Series expression language.
//
//   series  := "sum(" ident "=" int ".." "inf" "," expr ")"
//   expr    := term (("+"|"-") term)*
//   term    := factor (("*"|"/") factor)*
//   factor  := base ["!"] ("^" int)?
//   base    := "(" expr ")" | "sin(" expr ")" | "cos(" expr ")"
//            | "(-1)" "^" ident | ident | number | "x"
//
// ASCII only, whitespace insignificant. Identifiers other than the bound
// index and `x` are rejected. The postfix "!" exists only so that factorial
// terms can be parsed and then reported as unsupported by classify().

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trigsum {

enum class NodeKind { Sum, Add, Sub, Mul, Div, Pow, Sin, Cos, Sign, Factorial, Number, Index, X };

/// Value-semantic expression tree.
struct Expr {
  NodeKind kind = NodeKind::Number;
  double number = 0.0;     // Number literal
  long long integer = 0;   // Pow exponent, Sum lower bound
  std::string symbol;      // index name for Index, Sign and Sum
  std::vector<Expr> args;

  bool operator==(const Expr&) const = default;

  static Expr make_number(double value);
  static Expr make_index(std::string name);
  static Expr make_x();
  static Expr make_sign(std::string index);
  static Expr make_unary(NodeKind kind, Expr arg);
  static Expr make_binary(NodeKind kind, Expr lhs, Expr rhs);
  static Expr make_pow(Expr base, long long exponent);
  static Expr make_sum(std::string index, long long lower, Expr body);
};

/// Parses a complete `sum(...)` expression. Throws SyntaxError.
Expr parse(std::string_view text);

/// Canonical text that parse() maps back to an identical tree.
std::string to_string(const Expr& expr);

/// Numeric value of `expr` at x, with the index bound to `index_value` if given.
/// Throws DomainError when an unbound index is encountered.
double evaluate(const Expr& expr, double x, std::optional<double> index_value = std::nullopt);

/// The first `count` summands of a Sum node with the index replaced by literals.
std::vector<Expr> expand_terms(const Expr& sum, int count);

}  // namespace trigsum
