#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "padicstab/rational.hpp"

namespace padicstab {

/// Declared out-of-band; the parser never infers it.
enum class ExprKind { map, sigma, psi };

inline const char* to_string(ExprKind k) {
  switch (k) {
    case ExprKind::map: return "map";
    case ExprKind::sigma: return "sigma";
    case ExprKind::psi: return "psi";
  }
  return "?";
}

struct SourceSpan {
  std::size_t offset = 0;
  std::size_t length = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Op { number, var_u, var_v, norm_u, norm_v, norm_w, add, sub, mul, pow, max, min };

  Op op = Op::number;
  BigRational value;        // number literal, or the exponent of pow
  std::size_t index = 0;    // slot index for norm_w (1-based)
  std::vector<ExprPtr> args;
  SourceSpan span;
};

/// Structural equality, ignoring source spans.
inline bool same_structure(const Expr& a, const Expr& b) {
  if (a.op != b.op || a.value != b.value || a.index != b.index || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!same_structure(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

namespace detail {

inline int precedence(Expr::Op op) {
  switch (op) {
    case Expr::Op::add:
    case Expr::Op::sub: return 1;
    case Expr::Op::mul: return 2;
    case Expr::Op::pow: return 3;
    default: return 4;
  }
}

inline void print(const Expr& e, std::string& out) {
  auto child = [&](const ExprPtr& c, int min_prec) {
    if (precedence(c->op) < min_prec) {
      out += '(';
      print(*c, out);
      out += ')';
    } else {
      print(*c, out);
    }
  };
  switch (e.op) {
    case Expr::Op::number: out += to_string(e.value); break;
    case Expr::Op::var_u: out += 'u'; break;
    case Expr::Op::var_v: out += 'v'; break;
    case Expr::Op::norm_u: out += "norm(u)"; break;
    case Expr::Op::norm_v: out += "norm(v)"; break;
    case Expr::Op::norm_w: out += "norm(w" + std::to_string(e.index) + ")"; break;
    case Expr::Op::add:
    case Expr::Op::sub:
      child(e.args[0], 1);
      out += e.op == Expr::Op::add ? " + " : " - ";
      // left-associative: a right operand of equal precedence needs parentheses
      child(e.args[1], 2);
      break;
    case Expr::Op::mul:
      child(e.args[0], 2);
      out += '*';
      child(e.args[1], 3);
      break;
    case Expr::Op::pow: {
      const auto& base = e.args[0];
      const bool wrap = precedence(base->op) < 4 || (base->op == Expr::Op::number && !is_integer(base->value));
      if (wrap) out += '(';
      print(*base, out);
      if (wrap) out += ')';
      out += '^' + to_string(e.value);
      break;
    }
    case Expr::Op::max:
    case Expr::Op::min:
      out += e.op == Expr::Op::max ? "max(" : "min(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        print(*e.args[i], out);
      }
      out += ')';
      break;
  }
}

class Parser {
 public:
  Parser(std::string_view text, ExprKind kind, const std::map<std::string, BigRational>& params)
      : text_(text), kind_(kind), params_(params) {}

  ExprPtr parse() {
    skip_space();
    auto e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

 private:
  std::string_view text_;
  ExprKind kind_;
  const std::map<std::string, BigRational>& params_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  SourceSpan span_from(std::size_t start) const {
    SourceSpan s;
    s.offset = start;
    s.length = pos_ - start;
    for (std::size_t i = 0; i < start; ++i) {
      if (text_[i] == '\n') {
        ++s.line;
        s.column = 1;
      } else {
        ++s.column;
      }
    }
    return s;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  BigInt integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer", start);
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  // rational := integer ('/' positive-integer)?
  BigRational rational() {
    BigInt num = integer();
    if (peek('/')) {
      std::size_t slash = pos_;
      ++pos_;
      BigInt den = integer();
      if (den == 0) fail("denominator must be positive", slash + 1);
      return make_rational(num, den);
    }
    return BigRational(num);
  }

  static ExprPtr node(Expr::Op op, std::vector<ExprPtr> args, SourceSpan span) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->args = std::move(args);
    e->span = span;
    return e;
  }

  ExprPtr expr() {
    skip_space();
    std::size_t start = pos_;
    ExprPtr lhs;
    if (kind_ == ExprKind::map && peek('-')) {
      // leading minus in a map reads as 0 - term, which prints back the same way
      ++pos_;
      auto zero = std::make_shared<Expr>();
      zero->span = span_from(start);
      lhs = node(Expr::Op::sub, {zero, term()}, span_from(start));
    } else {
      lhs = term();
    }
    for (;;) {
      if (peek('+') || peek('-')) {
        const bool minus = text_[pos_] == '-';
        std::size_t op_pos = pos_;
        ++pos_;
        if (minus && kind_ != ExprKind::map) {
          throw DomainError(std::string("subtraction is not allowed in a ") + padicstab::to_string(kind_) +
                            " expression (at offset " + std::to_string(op_pos) + ")");
        }
        auto rhs = term();
        lhs = node(minus ? Expr::Op::sub : Expr::Op::add, {lhs, rhs}, span_from(start));
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    skip_space();
    std::size_t start = pos_;
    auto lhs = factor();
    while (peek('*')) {
      ++pos_;
      auto rhs = factor();
      lhs = node(Expr::Op::mul, {lhs, rhs}, span_from(start));
    }
    return lhs;
  }

  ExprPtr factor() {
    skip_space();
    std::size_t start = pos_;
    auto base = atom();
    if (peek('^')) {
      ++pos_;
      skip_space();
      std::size_t exp_pos = pos_;
      BigRational exponent = rational();
      if (kind_ == ExprKind::map && !is_integer(exponent)) fail("map exponents must be nonnegative integers", exp_pos);
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::pow;
      e->value = exponent;
      e->args = {base};
      e->span = span_from(start);
      return e;
    }
    return base;
  }

  ExprPtr atom() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ >= text_.size()) fail("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::number;
      e->value = rational();
      e->span = span_from(start);
      return e;
    }
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      expect(')');
      return inner;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'", pos_);

    const std::string name = identifier();
    if (name == "u" || name == "v") {
      if (kind_ == ExprKind::psi) fail("'" + name + "' is not available in a psi expression", start);
      if (kind_ == ExprKind::sigma) {
        throw DomainError("sigma depends on " + name + " only through norm(" + name + ")");
      }
      if (name == "v") fail("'v' is not available in a map expression", start);
      return node(Expr::Op::var_u, {}, span_from(start));
    }
    if (name == "norm") return norm_atom(start);
    if (name == "max" || name == "min") {
      if (kind_ == ExprKind::map) fail("'" + name + "' is not available in a map expression", start);
      expect('(');
      std::vector<ExprPtr> args{expr()};
      while (peek(',')) {
        ++pos_;
        args.push_back(expr());
      }
      if (args.size() < 2) fail(name + " needs at least two arguments", start);
      expect(')');
      return node(name == "max" ? Expr::Op::max : Expr::Op::min, std::move(args), span_from(start));
    }
    if (auto it = params_.find(name); it != params_.end()) {
      if (it->second < 0) throw DomainError("parameter '" + name + "' is negative; constants are nonnegative");
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::number;
      e->value = it->second;
      e->span = span_from(start);
      return e;
    }
    fail("unknown identifier '" + name + "'", start);
  }

  ExprPtr norm_atom(std::size_t start) {
    if (kind_ == ExprKind::map) fail("'norm' is not available in a map expression", start);
    expect('(');
    skip_space();
    std::size_t arg_pos = pos_;
    const std::string target = identifier();
    ExprPtr result;
    if (target == "u" || target == "v") {
      if (kind_ != ExprKind::sigma) fail("norm(" + target + ") is only available in sigma expressions", arg_pos);
      result = node(target == "u" ? Expr::Op::norm_u : Expr::Op::norm_v, {}, {});
    } else if (target.size() > 1 && target[0] == 'w' &&
               target.find_first_not_of("0123456789", 1) == std::string::npos) {
      if (kind_ != ExprKind::psi) fail("slot norms are only available in psi expressions", arg_pos);
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::norm_w;
      e->index = std::stoul(target.substr(1));
      if (e->index == 0) fail("slot indices start at 1", arg_pos);
      result = e;
    } else {
      fail("norm() takes u, v or w<index>", arg_pos);
    }
    expect(')');
    std::const_pointer_cast<Expr>(result)->span = span_from(start);
    return result;
  }
};

}  // namespace detail

/// Parses DSL text of the declared kind. Named parameters (e.g. rho) resolve
/// to rational constants at parse time.
inline ExprPtr parse_expression(std::string_view text, ExprKind kind,
                                const std::map<std::string, BigRational>& params = {}) {
  return detail::Parser(text, kind, params).parse();
}

/// Canonical text form; parsing it yields the same structure.
inline std::string pretty_print(const Expr& e) {
  std::string out;
  detail::print(e, out);
  return out;
}

}  // namespace padicstab
