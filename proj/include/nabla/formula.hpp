// Formula-level operations. A formula is an Elem built from Neg/Conj/Disj/
// Nabla; any other node in formula position is a depth-0 variable leaf
// (one-step contexts use carrier subsets as such variables). T is the empty
// conjunction, F the empty disjunction. A nabla argument is an element of
// F(formulas) for the single ambient functor.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "nabla/elem.hpp"
#include "nabla/error.hpp"
#include "nabla/functor.hpp"
#include "nabla/ops.hpp"
#include "nabla/parse.hpp"

namespace nabla {

namespace detail {

inline bool valid_formula_rec(const Functor& ambient, const Formula& a) {
  switch (a.kind()) {
    case Elem::Kind::Neg:
      return valid_formula_rec(ambient, a.inner());
    case Elem::Kind::Conj:
    case Elem::Kind::Disj: {
      for (const auto& c : a.items())
        if (!valid_formula_rec(ambient, c)) return false;
      return true;
    }
    case Elem::Kind::Nabla:
      return well_typed(
          ambient, [&](const Elem& leaf) { return valid_formula_rec(ambient, leaf); },
          a.inner());
    default:
      return true;  // variable leaf
  }
}

}  // namespace detail

inline bool is_valid_formula(const Functor& ambient, const Formula& a) {
  return detail::valid_formula_rec(ambient, a);
}

inline void require_formula(const Functor& ambient, const Formula& a) {
  if (!is_valid_formula(ambient, a))
    fail(ErrorKind::Type, "not a well-typed formula for " + ambient.text() + ": " + to_text(a));
}

// No variable leaves anywhere, including inside nabla arguments.
inline bool is_closed(const Functor& ambient, const Formula& a) {
  switch (a.kind()) {
    case Elem::Kind::Neg:
      return is_closed(ambient, a.inner());
    case Elem::Kind::Conj:
    case Elem::Kind::Disj: {
      for (const auto& c : a.items())
        if (!is_closed(ambient, c)) return false;
      return true;
    }
    case Elem::Kind::Nabla: {
      for (const auto& b : base(ambient, a.inner()))
        if (!is_closed(ambient, b)) return false;
      return true;
    }
    default:
      return false;
  }
}

inline void require_closed(const Functor& ambient, const Formula& a) {
  require_formula(ambient, a);
  if (!is_closed(ambient, a))
    fail(ErrorKind::Type, "formula has free variables: " + to_text(a));
}

// Least n with a in L_n.
inline int depth(const Functor& ambient, const Formula& a) {
  switch (a.kind()) {
    case Elem::Kind::Neg:
      return depth(ambient, a.inner());
    case Elem::Kind::Conj:
    case Elem::Kind::Disj: {
      int d = 0;
      for (const auto& c : a.items()) d = std::max(d, depth(ambient, c));
      return d;
    }
    case Elem::Kind::Nabla: {
      int d = 0;
      for (const auto& b : base(ambient, a.inner())) d = std::max(d, depth(ambient, b));
      return d + 1;
    }
    default:
      return 0;  // variable leaf
  }
}

namespace detail {

inline void collect_subformulas(const Functor& ambient, const Formula& a,
                                std::set<Formula>& out) {
  if (!out.insert(a).second) return;
  switch (a.kind()) {
    case Elem::Kind::Neg:
      collect_subformulas(ambient, a.inner(), out);
      return;
    case Elem::Kind::Conj:
    case Elem::Kind::Disj:
      for (const auto& c : a.items()) collect_subformulas(ambient, c, out);
      return;
    case Elem::Kind::Nabla:
      for (const auto& b : base(ambient, a.inner())) collect_subformulas(ambient, b, out);
      return;
    default:
      return;
  }
}

}  // namespace detail

inline std::set<Formula> subformulas(const Functor& ambient, const Formula& a) {
  std::set<Formula> out;
  detail::collect_subformulas(ambient, a, out);
  return out;
}

// Prop-letter sugar hook; the CLI installs one built from --props.
struct FormulaSugar {
  virtual ~FormulaSugar() = default;
  virtual Formula letter(const std::string& name, std::size_t pos) const = 0;
  virtual Formula lift_nabla(const Elem& arg, std::size_t pos) const = 0;
  virtual Formula box(const Formula& a, std::size_t pos) const = 0;
  virtual Formula dia(const Formula& a, std::size_t pos) const = 0;
};

namespace detail {

inline Formula parse_formula_rec(Lexer& lx, const FormulaSugar* sugar);

inline std::vector<Formula> parse_formula_set(Lexer& lx, const FormulaSugar* sugar) {
  lx.expect("{");
  std::vector<Formula> items;
  if (lx.accept("}")) return items;
  items.push_back(parse_formula_rec(lx, sugar));
  while (lx.accept(",")) items.push_back(parse_formula_rec(lx, sugar));
  lx.expect("}");
  return items;
}

inline Formula parse_formula_rec(Lexer& lx, const FormulaSugar* sugar) {
  const auto& t = lx.peek();
  std::size_t at = t.pos;
  if (lx.accept("~")) return Elem::neg(parse_formula_rec(lx, sugar));
  if (lx.accept("/\\")) return Elem::conj(parse_formula_set(lx, sugar));
  if (lx.accept("\\/")) return Elem::disj(parse_formula_set(lx, sugar));
  if (t.type == Lexer::Token::Type::Ident) {
    if (t.text == "T") {
      lx.next();
      return Elem::top();
    }
    if (t.text == "F") {
      lx.next();
      return Elem::bottom();
    }
    if (t.text == "nab") {
      lx.next();
      InnerParser inner = [sugar](Lexer& l) { return parse_formula_rec(l, sugar); };
      Elem arg = parse_elem(lx, inner);
      if (sugar) return sugar->lift_nabla(arg, at);
      return Elem::nabla(arg);
    }
    if (t.text == "box" || t.text == "dia") {
      if (!sugar)
        fail(ErrorKind::Syntax, "'" + t.text + "' requires proposition letters (--props)", at);
      std::string op = lx.next().text;
      Formula a = parse_formula_rec(lx, sugar);
      return op == "box" ? sugar->box(a, at) : sugar->dia(a, at);
    }
    // A bare identifier: a proposition letter under --props, otherwise a
    // free variable leaf.
    std::string name = lx.next().text;
    if (sugar) return sugar->letter(name, at);
    return Elem::atom(name);
  }
  fail(ErrorKind::Syntax, "expected formula", at);
}

}  // namespace detail

inline Formula parse_formula(const std::string& text, const Functor& ambient,
                             const FormulaSugar* sugar = nullptr) {
  Lexer lx(text);
  Formula a = detail::parse_formula_rec(lx, sugar);
  if (!lx.at_end()) fail(ErrorKind::Syntax, "trailing input after formula", lx.pos());
  require_formula(ambient, a);
  return a;
}

inline std::string print_formula(const Formula& a) { return to_text(a); }

struct Inequality {
  Formula lhs, rhs;
};

// "a <= b"
inline Inequality parse_inequality(const std::string& text, const Functor& ambient,
                                   const FormulaSugar* sugar = nullptr) {
  Lexer lx(text);
  Formula lhs = detail::parse_formula_rec(lx, sugar);
  lx.expect("<=");
  Formula rhs = detail::parse_formula_rec(lx, sugar);
  if (!lx.at_end()) fail(ErrorKind::Syntax, "trailing input after inequality", lx.pos());
  require_formula(ambient, lhs);
  require_formula(ambient, rhs);
  return {lhs, rhs};
}

}  // namespace nabla
