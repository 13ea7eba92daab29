// Functor expressions: the grammar of extended Kripke polynomial functors
//   Id | Const(s1,...) | P | Bag | Dist | F^(d1,...) | F . F | F * F | F + F
// with precedence ^ > . > * > + and left associativity.
#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nabla/error.hpp"

namespace nabla {

class Functor {
 public:
  enum class Tag : int { Id, Constant, Pow, Bag, Dist, Compose, Sum, Product, Exp };

  static Functor id() { return Functor(Tag::Id); }
  static Functor pow() { return Functor(Tag::Pow); }
  static Functor bag() { return Functor(Tag::Bag); }
  static Functor dist() { return Functor(Tag::Dist); }

  static Functor constant(std::vector<std::string> names) {
    Functor f(Tag::Constant);
    f.symbols_ = checked_symbols(std::move(names), "constant");
    return f;
  }

  static Functor compose(Functor outer, Functor inner) {
    return binary(Tag::Compose, std::move(outer), std::move(inner));
  }

  static Functor sum(Functor l, Functor r) { return binary(Tag::Sum, std::move(l), std::move(r)); }

  static Functor product(Functor l, Functor r) {
    return binary(Tag::Product, std::move(l), std::move(r));
  }

  static Functor exponent(Functor base, std::vector<std::string> domain) {
    Functor f(Tag::Exp);
    f.left_ = std::make_shared<Functor>(std::move(base));
    f.symbols_ = checked_symbols(std::move(domain), "exponent domain");
    return f;
  }

  Tag tag() const { return tag_; }

  const std::vector<std::string>& symbols() const {
    if (tag_ != Tag::Constant && tag_ != Tag::Exp)
      fail(ErrorKind::Type, "functor has no symbol list");
    return symbols_;
  }

  // Compose: left = outer, right = inner. Exp: left = base.
  const Functor& left() const {
    if (!left_) fail(ErrorKind::Type, "functor has no left component");
    return *left_;
  }

  const Functor& right() const {
    if (!right_) fail(ErrorKind::Type, "functor has no right component");
    return *right_;
  }

  bool preserves_finite() const {
    switch (tag_) {
      case Tag::Bag:
      case Tag::Dist:
        return false;
      case Tag::Id:
      case Tag::Constant:
      case Tag::Pow:
        return true;
      case Tag::Exp:
        return left_->preserves_finite();
      default:
        return left_->preserves_finite() && right_->preserves_finite();
    }
  }

  std::string text() const {
    std::string out;
    print(out, 0);
    return out;
  }

  friend int compare(const Functor& a, const Functor& b) {
    if (a.tag_ != b.tag_) return static_cast<int>(a.tag_) < static_cast<int>(b.tag_) ? -1 : 1;
    if (a.symbols_ != b.symbols_) return a.symbols_ < b.symbols_ ? -1 : 1;
    if (a.left_ || b.left_) {
      if (!a.left_ || !b.left_) return a.left_ ? 1 : -1;
      if (int c = compare(*a.left_, *b.left_)) return c;
    }
    if (a.right_ || b.right_) {
      if (!a.right_ || !b.right_) return a.right_ ? 1 : -1;
      if (int c = compare(*a.right_, *b.right_)) return c;
    }
    return 0;
  }

  bool operator==(const Functor& o) const { return compare(*this, o) == 0; }
  bool operator!=(const Functor& o) const { return compare(*this, o) != 0; }

 private:
  explicit Functor(Tag t) : tag_(t) {}

  static Functor binary(Tag t, Functor l, Functor r) {
    Functor f(t);
    f.left_ = std::make_shared<Functor>(std::move(l));
    f.right_ = std::make_shared<Functor>(std::move(r));
    return f;
  }

  // Symbol lists are canonicalized to sorted order; see decisions in README.
  static std::vector<std::string> checked_symbols(std::vector<std::string> names,
                                                  const char* what) {
    if (names.empty()) fail(ErrorKind::Type, std::string(what) + " needs at least one symbol");
    std::sort(names.begin(), names.end());
    for (std::size_t i = 1; i < names.size(); ++i)
      if (names[i] == names[i - 1])
        fail(ErrorKind::Type, std::string("duplicate symbol '") + names[i] + "' in " + what);
    return names;
  }

  // Precedence levels for printing: + is 0, * is 1, . is 2, ^ is 3.
  void print(std::string& out, int min_prec) const {
    auto parens = [&](int prec, auto&& body) {
      if (prec < min_prec) out += '(';
      body();
      if (prec < min_prec) out += ')';
    };
    switch (tag_) {
      case Tag::Id:
        out += "Id";
        return;
      case Tag::Pow:
        out += "P";
        return;
      case Tag::Bag:
        out += "Bag";
        return;
      case Tag::Dist:
        out += "Dist";
        return;
      case Tag::Constant:
        out += "Const(";
        append_symbols(out);
        out += ')';
        return;
      case Tag::Sum:
        parens(0, [&] {
          left_->print(out, 0);
          out += " + ";
          right_->print(out, 1);
        });
        return;
      case Tag::Product:
        parens(1, [&] {
          left_->print(out, 1);
          out += " * ";
          right_->print(out, 2);
        });
        return;
      case Tag::Compose:
        parens(2, [&] {
          left_->print(out, 2);
          out += " . ";
          right_->print(out, 3);
        });
        return;
      case Tag::Exp:
        parens(3, [&] {
          left_->print(out, 4);
          out += " ^ (";
          append_symbols(out);
          out += ')';
        });
        return;
    }
  }

  void append_symbols(std::string& out) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (i) out += ',';
      out += symbols_[i];
    }
  }

  Tag tag_;
  std::vector<std::string> symbols_;
  std::shared_ptr<Functor> left_, right_;
};

namespace detail {

struct FunctorParser {
  const std::string& src;
  std::size_t pos = 0;

  explicit FunctorParser(const std::string& s) : src(s) {}

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool accept(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(ErrorKind::Syntax, std::string("expected '") + c + "'", pos);
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    if (pos == start) fail(ErrorKind::Syntax, "expected identifier", pos);
    return src.substr(start, pos - start);
  }

  std::vector<std::string> symbol_list() {
    expect('(');
    std::vector<std::string> names;
    names.push_back(ident());
    while (accept(',')) names.push_back(ident());
    expect(')');
    return names;
  }

  Functor sum() {
    Functor f = prod();
    while (accept('+')) f = Functor::sum(std::move(f), prod());
    return f;
  }

  Functor prod() {
    Functor f = comp();
    while (accept('*')) f = Functor::product(std::move(f), comp());
    return f;
  }

  Functor comp() {
    Functor f = expo();
    while (accept('.')) f = Functor::compose(std::move(f), expo());
    return f;
  }

  Functor expo() {
    Functor f = primary();
    while (accept('^')) f = Functor::exponent(std::move(f), symbol_list());
    return f;
  }

  Functor primary() {
    skip_ws();
    if (accept('(')) {
      Functor f = sum();
      expect(')');
      return f;
    }
    std::size_t at = pos;
    std::string name = ident();
    if (name == "Id") return Functor::id();
    if (name == "P") return Functor::pow();
    if (name == "Bag") return Functor::bag();
    if (name == "Dist") return Functor::dist();
    if (name == "Const") return Functor::constant(symbol_list());
    fail(ErrorKind::Syntax, "unknown functor '" + name + "'", at);
  }
};

}  // namespace detail

inline Functor parse_functor(const std::string& text) {
  detail::FunctorParser p(text);
  Functor f = p.sum();
  p.skip_ws();
  if (p.pos != text.size()) fail(ErrorKind::Syntax, "trailing input after functor", p.pos);
  return f;
}

}  // namespace nabla
