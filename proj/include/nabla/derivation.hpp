// Derivation trees for the nabla calculus and their checker. A node carries a
// rule name, the concluded inequality, rule-specific side data and its
// premises. The checker validates every node: the propositional rules are
// matched structurally, (nabla-1) checks its side relation by lifting,
// (nabla-2)/(nabla-3) demand exactly the computed premise set, the finitary
// axiom forms compare against the computed right-hand sides, and the
// "onestep" leaf accepts any depth<=1 inequality that the semantic decider
// confirms.
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nabla/elem.hpp"
#include "nabla/error.hpp"
#include "nabla/final_sequence.hpp"
#include "nabla/formula.hpp"
#include "nabla/functor.hpp"
#include "nabla/lifting.hpp"
#include "nabla/ops.hpp"
#include "nabla/parse.hpp"
#include "nabla/redistribution.hpp"
#include "nabla/relation.hpp"

namespace nabla {

struct Derivation {
  std::string rule;
  Formula lhs, rhs;
  std::vector<std::pair<Formula, Formula>> rel;  // nabla1: the relation Z
  std::vector<Elem> elems;                       // nabla2 / nabla2f: the set A
  std::optional<Elem> phi;                       // nabla3 / nabla3f: Phi
  std::vector<Derivation> premises;
};

struct CheckError {
  std::string path;  // "/" for the root, "/0/1" for children
  std::string reason;
};

namespace detail {

using Ineq = std::pair<Formula, Formula>;

inline std::string ineq_text(const Ineq& q) {
  return to_text(q.first) + " <= " + to_text(q.second);
}

inline std::vector<Ineq> sorted_ineqs(std::vector<Ineq> qs) {
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  return qs;
}

inline std::optional<std::string> match_premise_set(const Derivation& d,
                                                    std::vector<Ineq> expected) {
  std::vector<Ineq> actual;
  for (const auto& p : d.premises) actual.emplace_back(p.lhs, p.rhs);
  actual = sorted_ineqs(std::move(actual));
  expected = sorted_ineqs(std::move(expected));
  for (const auto& q : expected)
    if (!std::binary_search(actual.begin(), actual.end(), q))
      return "missing premise: " + ineq_text(q);
  for (const auto& q : actual)
    if (!std::binary_search(expected.begin(), expected.end(), q))
      return "unexpected premise: " + ineq_text(q);
  return std::nullopt;
}

inline Elem apply_conj(const Functor& f, const Elem& phi) {
  return fmap(f, [](const Elem& psi) { return Elem::conj(psi.items()); }, phi);
}

inline Elem apply_disj(const Functor& f, const Elem& phi) {
  return fmap(f, [](const Elem& psi) { return Elem::disj(psi.items()); }, phi);
}

inline std::vector<Elem> members_of(const Functor& f, const Elem& phi, Budget& budget) {
  std::vector<Elem> points;
  for (const auto& s : base(f, phi))
    for (const auto& p : s.items()) points.push_back(p);
  return lifted_members(f, Carrier(std::move(points)), phi, budget);
}

// One rule application; premises are checked recursively by the caller.
inline std::optional<std::string> check_node(const Functor& f, const Derivation& d,
                                             Budget& budget) {
  const auto arity = [&](std::size_t n) -> std::optional<std::string> {
    if (d.premises.size() != n)
      return "rule " + d.rule + " expects " + std::to_string(n) + " premises, got " +
             std::to_string(d.premises.size());
    return std::nullopt;
  };

  if (d.rule == "refl") {
    if (auto e = arity(0)) return e;
    if (d.lhs != d.rhs) return "refl requires identical sides";
    return std::nullopt;
  }

  if (d.rule == "cut") {
    if (auto e = arity(2)) return e;
    const Derivation& p0 = d.premises[0];
    const Derivation& p1 = d.premises[1];
    if (p0.lhs != d.lhs) return "cut: first premise must start at the conclusion's left side";
    if (p1.rhs != d.rhs) return "cut: second premise must end at the conclusion's right side";
    if (p0.rhs != p1.lhs) return "cut: premises do not chain";
    return std::nullopt;
  }

  if (d.rule == "or-l") {
    if (!d.lhs.is(Elem::Kind::Disj)) return "or-l: conclusion left side must be a disjunction";
    std::vector<Ineq> expected;
    for (const auto& a : d.lhs.items()) expected.emplace_back(a, d.rhs);
    return match_premise_set(d, std::move(expected));
  }

  if (d.rule == "or-r") {
    if (auto e = arity(1)) return e;
    if (!d.rhs.is(Elem::Kind::Disj)) return "or-r: conclusion right side must be a disjunction";
    const Derivation& p = d.premises[0];
    if (p.lhs != d.lhs) return "or-r: premise left side differs from conclusion";
    const auto& items = d.rhs.items();
    if (!std::binary_search(items.begin(), items.end(), p.rhs))
      return "or-r: premise right side is not a disjunct of the conclusion";
    return std::nullopt;
  }

  if (d.rule == "and-r") {
    if (!d.rhs.is(Elem::Kind::Conj)) return "and-r: conclusion right side must be a conjunction";
    std::vector<Ineq> expected;
    for (const auto& b : d.rhs.items()) expected.emplace_back(d.lhs, b);
    return match_premise_set(d, std::move(expected));
  }

  if (d.rule == "and-l") {
    if (auto e = arity(1)) return e;
    if (!d.lhs.is(Elem::Kind::Conj)) return "and-l: conclusion left side must be a conjunction";
    const Derivation& p = d.premises[0];
    if (p.rhs != d.rhs) return "and-l: premise right side differs from conclusion";
    const auto& items = d.lhs.items();
    if (!std::binary_search(items.begin(), items.end(), p.lhs))
      return "and-l: premise left side is not a conjunct of the conclusion";
    return std::nullopt;
  }

  if (d.rule == "dist") {
    if (auto e = arity(0)) return e;
    if (!d.lhs.is(Elem::Kind::Conj)) return "dist: left side must be a conjunction";
    std::vector<std::vector<Elem>> choices;
    for (const auto& dd : d.lhs.items()) {
      if (!dd.is(Elem::Kind::Disj)) return "dist: left side must conjoin disjunctions";
      choices.push_back(dd.items());
    }
    // all choice functions, one pick per disjunction
    std::vector<Elem> disjuncts;
    bool possible = std::none_of(choices.begin(), choices.end(),
                                 [](const auto& c) { return c.empty(); });
    if (possible) {
      std::vector<std::size_t> odo(choices.size(), 0);
      while (true) {
        std::vector<Elem> picked;
        for (std::size_t i = 0; i < choices.size(); ++i) picked.push_back(choices[i][odo[i]]);
        disjuncts.push_back(Elem::conj(std::move(picked)));
        std::size_t i = choices.size();
        while (i > 0) {
          if (++odo[i - 1] < choices[i - 1].size()) break;
          odo[i - 1] = 0;
          --i;
        }
        if (i == 0) break;
      }
    }
    if (d.rhs != Elem::disj(std::move(disjuncts)))
      return "dist: right side is not the disjunction of choice conjunctions";
    return std::nullopt;
  }

  if (d.rule == "neg-r" || d.rule == "neg-l") {
    if (auto e = arity(1)) return e;
    const Derivation& p = d.premises[0];
    if (!d.lhs.is(Elem::Kind::Conj) || !d.rhs.is(Elem::Kind::Disj) ||
        !p.lhs.is(Elem::Kind::Conj) || !p.rhs.is(Elem::Kind::Disj))
      return d.rule + ": conclusion and premise must be /\\X <= \\/Y shaped";
    for (const auto& w : d.rhs.items()) {
      // neg-r moves a out of /\(X u {~a}); neg-l moves ~a out of /\(X u {a}).
      Elem moved = d.rule == "neg-r" ? Elem::neg(w) : (w.is(Elem::Kind::Neg) ? w.inner() : w);
      if (d.rule == "neg-l" && !w.is(Elem::Kind::Neg)) continue;
      std::vector<Elem> expected_lhs = d.lhs.items();
      expected_lhs.push_back(moved);
      if (p.lhs != Elem::conj(std::move(expected_lhs))) continue;
      std::vector<Elem> rest = p.rhs.items();
      rest.push_back(w);
      if (Elem::disj(std::move(rest)) != d.rhs) continue;
      return std::nullopt;
    }
    return d.rule + ": no disjunct matches the premise";
  }

  if (d.rule == "nabla1") {
    if (!d.lhs.is(Elem::Kind::Nabla) || !d.rhs.is(Elem::Kind::Nabla))
      return "nabla1: conclusion must relate two nabla formulas";
    const Elem& alpha = d.lhs.inner();
    const Elem& beta = d.rhs.inner();
    Carrier ba(base(f, alpha));
    Carrier bb(base(f, beta));
    for (const auto& [a, b] : d.rel) {
      if (!ba.contains(a)) return "nabla1: Z mentions " + to_text(a) + " outside Base(alpha)";
      if (!bb.contains(b)) return "nabla1: Z mentions " + to_text(b) + " outside Base(beta)";
    }
    std::vector<Ineq> expected(d.rel.begin(), d.rel.end());
    if (auto e = match_premise_set(d, std::move(expected))) return e;
    Relation z(ba, bb, d.rel);
    if (!in_lifting(f, z, alpha, beta)) return "nabla1: (alpha,beta) not in the lifting of Z";
    return std::nullopt;
  }

  if (d.rule == "nabla2" || d.rule == "nabla2f") {
    std::vector<Elem> conjuncts;
    for (const auto& alpha : d.elems) conjuncts.push_back(Elem::nabla(alpha));
    if (d.lhs != Elem::conj(std::move(conjuncts)))
      return d.rule + ": left side must be the conjunction of nablas of A";
    std::vector<Elem> srd;
    try {
      srd = slim_redistributions(f, d.elems, budget);
    } catch (const Error& e) {
      return d.rule + ": " + e.what();
    }
    if (d.rule == "nabla2") {
      std::vector<Ineq> expected;
      for (const auto& phi : srd) expected.emplace_back(Elem::nabla(apply_conj(f, phi)), d.rhs);
      return match_premise_set(d, std::move(expected));
    }
    if (auto e = arity(0)) return e;
    if (!f.preserves_finite())
      return "nabla2f: axiom form requires a functor preserving finite sets";
    std::vector<Elem> disjuncts;
    for (const auto& phi : srd) disjuncts.push_back(Elem::nabla(apply_conj(f, phi)));
    if (d.rhs != Elem::disj(std::move(disjuncts)))
      return "nabla2f: right side is not the disjunction over slim redistributions";
    return std::nullopt;
  }

  if (d.rule == "nabla3" || d.rule == "nabla3f") {
    if (!d.phi) return d.rule + ": missing Phi side data";
    if (d.lhs != Elem::nabla(apply_disj(f, *d.phi)))
      return d.rule + ": left side must be nabla of the disjunction image of Phi";
    std::vector<Elem> members;
    try {
      members = members_of(f, *d.phi, budget);
    } catch (const Error& e) {
      return d.rule + ": " + std::string(e.what());
    }
    if (d.rule == "nabla3") {
      std::vector<Ineq> expected;
      for (const auto& alpha : members) expected.emplace_back(Elem::nabla(alpha), d.rhs);
      return match_premise_set(d, std::move(expected));
    }
    if (auto e = arity(0)) return e;
    if (!f.preserves_finite())
      return "nabla3f: axiom form requires a functor preserving finite sets";
    std::vector<Elem> disjuncts;
    for (const auto& alpha : members) disjuncts.push_back(Elem::nabla(alpha));
    if (d.rhs != Elem::disj(std::move(disjuncts)))
      return "nabla3f: right side is not the disjunction over lifted members";
    return std::nullopt;
  }

  if (d.rule == "onestep") {
    if (auto e = arity(0)) return e;
    if (depth(f, d.lhs) > 1 || depth(f, d.rhs) > 1)
      return "onestep: both sides must have depth at most 1";
    try {
      if (!decide_valid(f, d.lhs, d.rhs, budget).valid)
        return "onestep: inequality is not one-step valid";
    } catch (const Error& e) {
      return "onestep: " + std::string(e.what());
    }
    return std::nullopt;
  }

  return "unknown rule '" + d.rule + "'";
}

inline std::optional<CheckError> check_rec(const Functor& f, const Derivation& d,
                                           const std::string& path, Budget& budget) {
  const std::string shown = path.empty() ? "/" : path;
  if (!is_valid_formula(f, d.lhs) || !is_valid_formula(f, d.rhs))
    return CheckError{shown, "conclusion is not well-typed for " + f.text()};
  if (auto reason = check_node(f, d, budget)) return CheckError{shown, *reason};
  for (std::size_t i = 0; i < d.premises.size(); ++i)
    if (auto e = check_rec(f, d.premises[i], path + "/" + std::to_string(i), budget)) return e;
  return std::nullopt;
}

}  // namespace detail

// std::nullopt means the derivation is valid; otherwise the first failing
// node (preorder) with a reason.
inline std::optional<CheckError> check_derivation(const Functor& f, const Derivation& d,
                                                  Budget& budget) {
  return detail::check_rec(f, d, "", budget);
}

inline std::optional<CheckError> check_derivation(const Functor& f, const Derivation& d) {
  Budget budget;
  return check_derivation(f, d, budget);
}

namespace detail {

inline InnerParser formula_inner() {
  return [](Lexer& lx) { return parse_formula_rec(lx, nullptr); };
}

inline void parse_side_data(const std::string& text, Derivation& node) {
  Lexer lx(text);
  std::string key = lx.expect_ident();
  if (key == "Z") {
    lx.expect("=");
    lx.expect("{");
    if (!lx.accept("}")) {
      do {
        lx.expect("(");
        Formula a = parse_formula_rec(lx, nullptr);
        lx.expect(",");
        Formula b = parse_formula_rec(lx, nullptr);
        lx.expect(")");
        node.rel.emplace_back(std::move(a), std::move(b));
      } while (lx.accept(","));
      lx.expect("}");
    }
  } else if (key == "A") {
    lx.expect("=");
    Elem set = parse_elem(lx, formula_inner());
    if (!set.is(Elem::Kind::Set)) fail(ErrorKind::Syntax, "A must be a set literal");
    node.elems = set.items();
  } else if (key == "Phi") {
    lx.expect("=");
    node.phi = parse_elem(lx, formula_inner());
  } else {
    fail(ErrorKind::Syntax, "unknown side data '" + key + "'");
  }
  if (!lx.at_end()) fail(ErrorKind::Syntax, "trailing input after side data", lx.pos());
}

}  // namespace detail

// Proof file: one node per line, children indented two spaces per level.
//   <rule-name> | <lhs> <= <rhs> | <side-data>
inline Derivation parse_proof(const std::string& text, const Functor& ambient) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<int, Derivation*>> stack;
  std::optional<Derivation> root;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.find('\t') != std::string::npos)
      fail(ErrorKind::Syntax, "proof files are indented with spaces, not tabs (line " +
                                  std::to_string(lineno) + ")");
    if (first % 2 != 0)
      fail(ErrorKind::Syntax, "odd indentation on line " + std::to_string(lineno));
    int level = static_cast<int>(first / 2);

    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      std::size_t bar = line.find('|', start);
      if (bar == std::string::npos) {
        parts.push_back(line.substr(start));
        break;
      }
      parts.push_back(line.substr(start, bar - start));
      start = bar + 1;
    }
    if (parts.size() < 2)
      fail(ErrorKind::Syntax, "expected '<rule> | <lhs> <= <rhs>' on line " +
                                  std::to_string(lineno));
    auto trim = [](std::string s) {
      std::size_t a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      std::size_t b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };

    Derivation node;
    node.rule = trim(parts[0]);
    if (node.rule.empty())
      fail(ErrorKind::Syntax, "missing rule name on line " + std::to_string(lineno));
    Inequality q = parse_inequality(trim(parts[1]), ambient);
    node.lhs = q.lhs;
    node.rhs = q.rhs;
    if (parts.size() > 2 && !trim(parts[2]).empty()) detail::parse_side_data(trim(parts[2]), node);

    if (!root) {
      if (level != 0)
        fail(ErrorKind::Syntax, "first proof node must not be indented");
      root = std::move(node);
      stack.emplace_back(0, &*root);
      continue;
    }
    while (!stack.empty() && stack.back().first >= level) stack.pop_back();
    if (stack.empty() || stack.back().first != level - 1)
      fail(ErrorKind::Syntax, "bad indentation on line " + std::to_string(lineno));
    Derivation* parent = stack.back().second;
    parent->premises.push_back(std::move(node));
    stack.emplace_back(level, &parent->premises.back());
  }
  if (!root) fail(ErrorKind::Syntax, "empty proof file");
  return std::move(*root);
}

}  // namespace nabla
