#include "trigsum/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <system_error>
#include <utility>

#include "trigsum/error.hpp"

namespace trigsum {

Expr Expr::make_number(double value) {
  Expr e;
  e.kind = NodeKind::Number;
  e.number = value;
  return e;
}

Expr Expr::make_index(std::string name) {
  Expr e;
  e.kind = NodeKind::Index;
  e.symbol = std::move(name);
  return e;
}

Expr Expr::make_x() {
  Expr e;
  e.kind = NodeKind::X;
  return e;
}

Expr Expr::make_sign(std::string index) {
  Expr e;
  e.kind = NodeKind::Sign;
  e.symbol = std::move(index);
  return e;
}

Expr Expr::make_unary(NodeKind kind, Expr arg) {
  Expr e;
  e.kind = kind;
  e.args.push_back(std::move(arg));
  return e;
}

Expr Expr::make_binary(NodeKind kind, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = kind;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

Expr Expr::make_pow(Expr base, long long exponent) {
  Expr e = make_unary(NodeKind::Pow, std::move(base));
  e.integer = exponent;
  return e;
}

Expr Expr::make_sum(std::string index, long long lower, Expr body) {
  Expr e = make_unary(NodeKind::Sum, std::move(body));
  e.symbol = std::move(index);
  e.integer = lower;
  return e;
}

namespace {

enum class Tok { End, LParen, RParen, Comma, Equals, DotDot, Plus, Minus, Star, Slash, Caret, Bang, Int, Number, Ident };

struct Token {
  Tok kind = Tok::End;
  std::size_t offset = 0;
  std::string_view text;
};

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (true) {
    while (i < s.size() && is_space(s[i])) ++i;
    if (i >= s.size()) {
      out.push_back({Tok::End, s.size(), {}});
      return out;
    }
    const std::size_t start = i;
    const char c = s[i];
    auto single = [&](Tok kind) {
      out.push_back({kind, start, s.substr(start, 1)});
      ++i;
    };
    switch (c) {
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case ',': single(Tok::Comma); continue;
      case '=': single(Tok::Equals); continue;
      case '+': single(Tok::Plus); continue;
      case '-': single(Tok::Minus); continue;
      case '*': single(Tok::Star); continue;
      case '/': single(Tok::Slash); continue;
      case '^': single(Tok::Caret); continue;
      case '!': single(Tok::Bang); continue;
      default: break;
    }
    if (c == '.') {
      if (i + 1 < s.size() && s[i + 1] == '.') {
        out.push_back({Tok::DotDot, start, s.substr(start, 2)});
        i += 2;
        continue;
      }
      throw SyntaxError(start, {"\"..\""}, "'.'");
    }
    if (is_digit(c)) {
      while (i < s.size() && is_digit(s[i])) ++i;
      Tok kind = Tok::Int;
      if (i + 1 < s.size() && s[i] == '.' && is_digit(s[i + 1])) {
        ++i;
        while (i < s.size() && is_digit(s[i])) ++i;
        kind = Tok::Number;
      }
      out.push_back({kind, start, s.substr(start, i - start)});
      continue;
    }
    if (is_ident_start(c)) {
      while (i < s.size() && (is_ident_start(s[i]) || is_digit(s[i]))) ++i;
      out.push_back({Tok::Ident, start, s.substr(start, i - start)});
      continue;
    }
    throw SyntaxError(start, {"token"}, std::string("'") + c + "'");
  }
}

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "\"" + std::string(t.text) + "\"";
}

const std::vector<std::string> kBaseStart = {"\"(\"", "\"sin(\"", "\"cos(\"", "\"(-1)\"", "index",
                                             "number", "\"x\""};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Expr parse_series() {
    expect_ident("sum");
    expect(Tok::LParen, "\"(\"");
    const Token& var = peek();
    if (var.kind != Tok::Ident || is_reserved(var.text)) fail({"index name"});
    index_ = std::string(var.text);
    advance();
    expect(Tok::Equals, "\"=\"");
    const long long lower = parse_int();
    expect(Tok::DotDot, "\"..\"");
    expect_ident("inf");
    expect(Tok::Comma, "\",\"");
    Expr body = parse_expr();
    if (peek().kind != Tok::RParen) fail({"\"+\"", "\"-\"", "\"*\"", "\"/\"", "\"^\"", "\")\""});
    advance();
    if (peek().kind != Tok::End) fail({"end of input"});
    return Expr::make_sum(index_, lower, std::move(body));
  }

 private:
  static bool is_reserved(std::string_view s) {
    return s == "sum" || s == "sin" || s == "cos" || s == "inf" || s == "x";
  }

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  void advance() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(peek().offset, std::move(expected), describe(peek()));
  }

  void expect(Tok kind, const char* name) {
    if (peek().kind != kind) fail({name});
    advance();
  }

  void expect_ident(std::string_view word) {
    if (peek().kind != Tok::Ident || peek().text != word) fail({"\"" + std::string(word) + "\""});
    advance();
  }

  long long parse_int() {
    const Token& t = peek();
    if (t.kind != Tok::Int) fail({"integer"});
    long long value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) fail({"integer"});
    advance();
    return value;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const NodeKind kind = peek().kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub;
      advance();
      lhs = Expr::make_binary(kind, std::move(lhs), parse_term());
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const NodeKind kind = peek().kind == Tok::Star ? NodeKind::Mul : NodeKind::Div;
      advance();
      lhs = Expr::make_binary(kind, std::move(lhs), parse_factor());
    }
    return lhs;
  }

  Expr parse_factor() {
    Expr base = parse_base();
    if (peek().kind == Tok::Bang) {
      advance();
      base = Expr::make_unary(NodeKind::Factorial, std::move(base));
    }
    if (peek().kind == Tok::Caret) {
      advance();
      base = Expr::make_pow(std::move(base), parse_int());
    }
    return base;
  }

  Expr parse_base() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        if (peek(1).kind == Tok::Minus) return parse_sign();
        advance();
        Expr inner = parse_expr();
        if (peek().kind != Tok::RParen) fail({"\"+\"", "\"-\"", "\"*\"", "\"/\"", "\"^\"", "\")\""});
        advance();
        return inner;
      }
      case Tok::Int:
      case Tok::Number: {
        const double value = std::strtod(std::string(t.text).c_str(), nullptr);
        advance();
        return Expr::make_number(value);
      }
      case Tok::Ident: {
        if (t.text == "sin" || t.text == "cos") {
          const NodeKind kind = t.text == "sin" ? NodeKind::Sin : NodeKind::Cos;
          advance();
          expect(Tok::LParen, "\"(\"");
          Expr arg = parse_expr();
          if (peek().kind != Tok::RParen) fail({"\"+\"", "\"-\"", "\"*\"", "\"/\"", "\"^\"", "\")\""});
          advance();
          return Expr::make_unary(kind, std::move(arg));
        }
        if (t.text == "x") {
          advance();
          return Expr::make_x();
        }
        if (t.text == index_) {
          advance();
          return Expr::make_index(index_);
        }
        fail({"\"" + index_ + "\"", "\"x\""});
      }
      default:
        fail(kBaseStart);
    }
  }

  // "(" "-" "1" ")" "^" ident
  Expr parse_sign() {
    advance();  // (
    advance();  // -
    if (peek().kind != Tok::Int || peek().text != "1") fail({"\"1\""});
    advance();
    expect(Tok::RParen, "\")\"");
    expect(Tok::Caret, "\"^\"");
    if (peek().kind != Tok::Ident || peek().text != index_) fail({"\"" + index_ + "\""});
    advance();
    return Expr::make_sign(index_);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string index_;
};

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (ec != std::errc{}) return "0";
  return std::string(buf, ptr);
}

bool is_additive(const Expr& e) { return e.kind == NodeKind::Add || e.kind == NodeKind::Sub; }
bool is_multiplicative(const Expr& e) { return e.kind == NodeKind::Mul || e.kind == NodeKind::Div; }

bool is_primary(const Expr& e) {
  switch (e.kind) {
    case NodeKind::Number:
    case NodeKind::Index:
    case NodeKind::X:
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::Sign:
      return true;
    default:
      return false;
  }
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(e, out);
  if (wrap) out += ')';
}

void print(const Expr& e, std::string& out) {
  switch (e.kind) {
    case NodeKind::Sum:
      out += "sum(" + e.symbol + "=" + std::to_string(e.integer) + "..inf, ";
      print(e.args[0], out);
      out += ')';
      return;
    case NodeKind::Add:
    case NodeKind::Sub:
      print(e.args[0], out);
      out += e.kind == NodeKind::Add ? " + " : " - ";
      print_wrapped(e.args[1], is_additive(e.args[1]), out);
      return;
    case NodeKind::Mul:
    case NodeKind::Div:
      print_wrapped(e.args[0], is_additive(e.args[0]), out);
      out += e.kind == NodeKind::Mul ? "*" : "/";
      print_wrapped(e.args[1], is_additive(e.args[1]) || is_multiplicative(e.args[1]), out);
      return;
    case NodeKind::Pow:
      print_wrapped(e.args[0], !(is_primary(e.args[0]) || e.args[0].kind == NodeKind::Factorial), out);
      out += "^" + std::to_string(e.integer);
      return;
    case NodeKind::Factorial:
      print_wrapped(e.args[0], !is_primary(e.args[0]), out);
      out += '!';
      return;
    case NodeKind::Sin:
    case NodeKind::Cos:
      out += e.kind == NodeKind::Sin ? "sin(" : "cos(";
      print(e.args[0], out);
      out += ')';
      return;
    case NodeKind::Sign:
      out += "(-1)^" + e.symbol;
      return;
    case NodeKind::Number:
      out += format_number(e.number);
      return;
    case NodeKind::Index:
      out += e.symbol;
      return;
    case NodeKind::X:
      out += 'x';
      return;
  }
}

double eval(const Expr& e, double x, std::optional<double> n) {
  switch (e.kind) {
    case NodeKind::Sum:
      throw DomainError("cannot evaluate an infinite sum node directly");
    case NodeKind::Add: return eval(e.args[0], x, n) + eval(e.args[1], x, n);
    case NodeKind::Sub: return eval(e.args[0], x, n) - eval(e.args[1], x, n);
    case NodeKind::Mul: return eval(e.args[0], x, n) * eval(e.args[1], x, n);
    case NodeKind::Div: return eval(e.args[0], x, n) / eval(e.args[1], x, n);
    case NodeKind::Pow: return std::pow(eval(e.args[0], x, n), static_cast<double>(e.integer));
    case NodeKind::Sin: return std::sin(eval(e.args[0], x, n));
    case NodeKind::Cos: return std::cos(eval(e.args[0], x, n));
    case NodeKind::Factorial: return std::tgamma(eval(e.args[0], x, n) + 1.0);
    case NodeKind::Sign:
    case NodeKind::Index: {
      if (!n) throw DomainError("unbound index `" + e.symbol + "`");
      if (e.kind == NodeKind::Index) return *n;
      return std::fmod(std::fabs(*n), 2.0) == 0.0 ? 1.0 : -1.0;
    }
    case NodeKind::Number: return e.number;
    case NodeKind::X: return x;
  }
  return 0.0;
}

Expr substitute(const Expr& e, const std::string& index, double value) {
  if (e.kind == NodeKind::Index && e.symbol == index) return Expr::make_number(value);
  if (e.kind == NodeKind::Sign && e.symbol == index) {
    // (-1)^k for a literal k: keep the sign explicit as a number.
    return Expr::make_number(std::fmod(std::fabs(value), 2.0) == 0.0 ? 1.0 : -1.0);
  }
  Expr out = e;
  for (auto& arg : out.args) arg = substitute(arg, index, value);
  return out;
}

}  // namespace

Expr parse(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (static_cast<unsigned char>(text[i]) > 0x7f) throw SyntaxError(i, {"ASCII character"}, "non-ASCII byte");
  }
  return Parser(text).parse_series();
}

std::string to_string(const Expr& expr) {
  std::string out;
  print(expr, out);
  return out;
}

double evaluate(const Expr& expr, double x, std::optional<double> index_value) {
  return eval(expr, x, index_value);
}

std::vector<Expr> expand_terms(const Expr& sum, int count) {
  if (sum.kind != NodeKind::Sum) throw DomainError("expand_terms expects a sum node");
  std::vector<Expr> terms;
  terms.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    terms.push_back(substitute(sum.args[0], sum.symbol, static_cast<double>(sum.integer + i)));
  }
  return terms;
}

}  // namespace trigsum
