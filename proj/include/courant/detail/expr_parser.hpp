#pragma once

// Recursive-descent parser shared by the polynomial and graded text forms.
//
//   expr    := ['+'|'-'] term { ('+'|'-') term }
//   term    := power { '*' power }
//   power   := primary [ '^' integer ]
//   primary := rational | atom | '(' expr ')'
//
// The ring type only needs +, - and *; constants come from a factory callback. Atoms (variable names and the like)
// are delegated to a callback that consumes characters from the cursor.

#include <cctype>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "courant/error.hpp"
#include "courant/rational.hpp"

namespace courant::detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string read_digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string read_identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }
  std::size_t position() const { return pos_; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in '" + std::string(text_) + "'", pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

template <class Ring>
class ExprParser {
 public:
  using AtomFn = std::function<Ring(Cursor&)>;
  using PowFn = std::function<Ring(const Ring&, int)>;
  using ConstFn = std::function<Ring(const Rat&)>;

  ExprParser(AtomFn atom, PowFn power, ConstFn constant)
      : atom_(std::move(atom)), power_(std::move(power)), constant_(std::move(constant)) {}

  Ring parse(std::string_view text) const {
    Cursor cur(text);
    if (cur.at_end()) cur.fail("empty expression");
    Ring r = expr(cur);
    if (!cur.at_end()) cur.fail("unexpected trailing input");
    return r;
  }

 private:
  Ring expr(Cursor& cur) const {
    bool negate = false;
    if (cur.accept('-')) negate = true;
    else cur.accept('+');
    Ring acc = term(cur);
    if (negate) acc = constant_(Rat(0)) - acc;
    for (;;) {
      if (cur.accept('+')) acc = acc + term(cur);
      else if (cur.accept('-')) acc = acc - term(cur);
      else break;
    }
    return acc;
  }
  Ring term(Cursor& cur) const {
    Ring acc = power(cur);
    while (cur.accept('*')) acc = acc * power(cur);
    return acc;
  }
  Ring power(Cursor& cur) const {
    Ring base = primary(cur);
    if (cur.accept('^')) {
      std::string digits = cur.read_digits();
      if (digits.size() > 4) cur.fail("exponent too large");
      return power_(base, std::stoi(digits));
    }
    return base;
  }
  Ring primary(Cursor& cur) const {
    char c = cur.peek();
    if (c == '(') {
      cur.expect('(');
      Ring r = expr(cur);
      cur.expect(')');
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = cur.read_digits();
      if (cur.accept('/')) {
        std::string den = cur.read_digits();
        return constant_(parse_rat(num + "/" + den));
      }
      return constant_(parse_rat(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return atom_(cur);
    cur.fail("unexpected character");
  }

  AtomFn atom_;
  PowFn power_;
  ConstFn constant_;
};

}  // namespace courant::detail
