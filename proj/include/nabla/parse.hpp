// Tokenizer and element-literal parser. Element syntax:
//   inner values bare, 'name constants, {e,...} sets, bag{e:k,...},
//   dist{e:p/q,...}, (e1,e2,...) tuples, inl(e)/inr(e), [d:e,...] maps.
// The parser is untyped; what counts as an inner value is injected by the
// caller (bare atoms for carriers, formulas for nabla arguments).
#pragma once

#include <cctype>
#include <functional>
#include <string>
#include <vector>

#include "nabla/elem.hpp"
#include "nabla/error.hpp"

namespace nabla {

class Lexer {
 public:
  struct Token {
    enum class Type { Ident, Number, Punct, End };
    Type type = Type::End;
    std::string text;
    std::size_t pos = 0;
  };

  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  std::size_t pos() const { return tok_.pos; }
  bool at_end() const { return tok_.type == Token::Type::End; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  bool accept(const std::string& text) {
    if (tok_.type != Token::Type::End && tok_.text == text) {
      advance();
      return true;
    }
    return false;
  }

  void expect(const std::string& text) {
    if (!accept(text)) fail(ErrorKind::Syntax, "expected '" + text + "'", tok_.pos);
  }

  std::string expect_ident() {
    if (tok_.type != Token::Type::Ident)
      fail(ErrorKind::Syntax, "expected identifier", tok_.pos);
    return next().text;
  }

  std::string expect_number() {
    if (tok_.type != Token::Type::Number) fail(ErrorKind::Syntax, "expected number", tok_.pos);
    return next().text;
  }

 private:
  void advance() {
    while (cursor_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[cursor_])))
      ++cursor_;
    tok_.pos = cursor_;
    if (cursor_ >= src_.size()) {
      tok_ = {Token::Type::End, "", cursor_};
      return;
    }
    char c = src_[cursor_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = cursor_;
      while (cursor_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[cursor_])) || src_[cursor_] == '_'))
        ++cursor_;
      tok_ = {Token::Type::Ident, src_.substr(start, cursor_ - start), start};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = cursor_;
      while (cursor_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[cursor_])))
        ++cursor_;
      tok_ = {Token::Type::Number, src_.substr(start, cursor_ - start), start};
      return;
    }
    std::size_t start = cursor_;
    auto two = [&](char a, char b) {
      return c == a && cursor_ + 1 < src_.size() && src_[cursor_ + 1] == b;
    };
    if (two('/', '\\') || two('\\', '/') || two('<', '=') || two('-', '>')) {
      cursor_ += 2;
      tok_ = {Token::Type::Punct, src_.substr(start, 2), start};
      return;
    }
    static const std::string singles = "(){}[],:'~*/=";
    if (singles.find(c) != std::string::npos) {
      ++cursor_;
      tok_ = {Token::Type::Punct, std::string(1, c), start};
      return;
    }
    fail(ErrorKind::Syntax, std::string("unexpected character '") + c + "'", start);
  }

  const std::string& src_;
  std::size_t cursor_ = 0;
  Token tok_;
};

using InnerParser = std::function<Elem(Lexer&)>;

Elem parse_elem(Lexer& lx, const InnerParser& inner);

namespace detail {

inline Int parse_int(Lexer& lx) { return Int(lx.expect_number()); }

inline Rat parse_rat(Lexer& lx) {
  Int num = parse_int(lx);
  if (lx.accept("/")) {
    Int den = parse_int(lx);
    if (den == 0) fail(ErrorKind::Syntax, "zero denominator", lx.pos());
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  return Rat(num);
}

inline std::vector<Elem> parse_elem_list(Lexer& lx, const InnerParser& inner,
                                         const std::string& close) {
  std::vector<Elem> items;
  if (lx.accept(close)) return items;
  items.push_back(parse_elem(lx, inner));
  while (lx.accept(",")) items.push_back(parse_elem(lx, inner));
  lx.expect(close);
  return items;
}

}  // namespace detail

// Reserved words that cannot serve as bare atom names.
inline bool reserved_word(const std::string& w) {
  return w == "bag" || w == "dist" || w == "inl" || w == "inr" || w == "nab" || w == "T" ||
         w == "F" || w == "box" || w == "dia";
}

inline Elem parse_elem(Lexer& lx, const InnerParser& inner) {
  const auto& t = lx.peek();
  if (t.type == Lexer::Token::Type::Punct) {
    if (t.text == "{") {
      lx.next();
      return Elem::set(detail::parse_elem_list(lx, inner, "}"));
    }
    if (t.text == "(") {
      lx.next();
      std::vector<Elem> items;
      items.push_back(parse_elem(lx, inner));
      while (lx.accept(",")) items.push_back(parse_elem(lx, inner));
      lx.expect(")");
      if (items.size() < 2)
        fail(ErrorKind::Syntax, "tuple needs at least two components", t.pos);
      return Elem::tuple(std::move(items));
    }
    if (t.text == "[") {
      lx.next();
      Elem::MapEntries entries;
      if (!lx.accept("]")) {
        do {
          std::string d = lx.expect_ident();
          lx.expect(":");
          entries.emplace_back(d, parse_elem(lx, inner));
        } while (lx.accept(","));
        lx.expect("]");
      }
      return Elem::exp_map(std::move(entries));
    }
    if (t.text == "'") {
      lx.next();
      return Elem::sym(lx.expect_ident());
    }
  }
  if (t.type == Lexer::Token::Type::Ident) {
    if (t.text == "bag") {
      lx.next();
      lx.expect("{");
      Elem::BagEntries entries;
      if (!lx.accept("}")) {
        do {
          Elem key = parse_elem(lx, inner);
          lx.expect(":");
          std::size_t at = lx.pos();
          Int count = detail::parse_int(lx);
          if (count <= 0) fail(ErrorKind::Syntax, "bag count must be positive", at);
          entries.emplace_back(std::move(key), std::move(count));
        } while (lx.accept(","));
        lx.expect("}");
      }
      return Elem::bag(std::move(entries));
    }
    if (t.text == "dist") {
      lx.next();
      lx.expect("{");
      Elem::DistEntries entries;
      if (!lx.accept("}")) {
        do {
          Elem key = parse_elem(lx, inner);
          lx.expect(":");
          std::size_t at = lx.pos();
          Rat w = detail::parse_rat(lx);
          if (w <= 0) fail(ErrorKind::Syntax, "distribution weight must be positive", at);
          entries.emplace_back(std::move(key), std::move(w));
        } while (lx.accept(","));
        lx.expect("}");
      }
      return Elem::dist(std::move(entries));
    }
    if (t.text == "inl" || t.text == "inr") {
      int tag = t.text == "inl" ? 0 : 1;
      lx.next();
      lx.expect("(");
      Elem e = parse_elem(lx, inner);
      lx.expect(")");
      return Elem::injection(tag, std::move(e));
    }
  }
  return inner(lx);
}

// Inner parser for opaque carriers: a bare identifier, a number, or '*'
// names an atom.
inline InnerParser atom_inner() {
  return [](Lexer& lx) -> Elem {
    const auto& t = lx.peek();
    if (t.type == Lexer::Token::Type::Ident && !reserved_word(t.text))
      return Elem::atom(lx.next().text);
    if (t.type == Lexer::Token::Type::Number) return Elem::atom(lx.next().text);
    if (t.type == Lexer::Token::Type::Punct && t.text == "*") return Elem::atom(lx.next().text);
    fail(ErrorKind::Syntax, "expected atom", t.pos);
  };
}

inline Elem parse_elem_text(const std::string& text, const InnerParser& inner) {
  Lexer lx(text);
  Elem e = parse_elem(lx, inner);
  if (!lx.at_end()) fail(ErrorKind::Syntax, "trailing input after element", lx.pos());
  return e;
}

}  // namespace nabla
