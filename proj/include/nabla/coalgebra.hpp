// Finite coalgebras: a carrier of states and a total transition map into
// F(states), plus the satisfaction relation computed bottom-up over
// subformulas. The nabla clause checks the lifting of the satisfaction
// relation restricted to states x Base(arg).
#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nabla/elem.hpp"
#include "nabla/error.hpp"
#include "nabla/formula.hpp"
#include "nabla/functor.hpp"
#include "nabla/lifting.hpp"
#include "nabla/ops.hpp"
#include "nabla/parse.hpp"
#include "nabla/relation.hpp"

namespace nabla {

struct Coalgebra {
  Functor functor;
  Carrier states;
  std::map<Elem, Elem> transition;

  const Elem& step(const Elem& state) const {
    auto it = transition.find(state);
    if (it == transition.end())
      fail(ErrorKind::UnknownState, "unknown state " + to_text(state));
    return it->second;
  }
};

inline Coalgebra make_coalgebra(Functor f, Carrier states, std::map<Elem, Elem> transition) {
  for (const auto& s : states.members()) {
    auto it = transition.find(s);
    if (it == transition.end())
      fail(ErrorKind::Type, "transition map missing state " + to_text(s));
    if (!well_typed(f, states, it->second))
      fail(ErrorKind::Type, "transition of " + to_text(s) + " is not well-typed: " +
                                to_text(it->second));
  }
  if (transition.size() != states.size())
    fail(ErrorKind::UnknownState, "transition map mentions undeclared states");
  return Coalgebra{std::move(f), std::move(states), std::move(transition)};
}

// File format:
//   functor: <F-DSL>
//   states: s1 s2 ...
//   map:
//   s1 -> <elem literal>
// Blank lines and lines starting with '#' are ignored.
inline Coalgebra load_coalgebra(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      std::size_t i = line.find_first_not_of(" \t\r");
      if (i == std::string::npos || line[i] == '#') continue;
      out = line;
      return true;
    }
    return false;
  };

  std::string l;
  if (!next_line(l) || l.rfind("functor:", 0) != 0)
    fail(ErrorKind::Syntax, "coalgebra file must start with 'functor:'");
  Functor f = parse_functor(l.substr(8));

  if (!next_line(l) || l.rfind("states:", 0) != 0)
    fail(ErrorKind::Syntax, "expected 'states:' line");
  std::vector<Elem> states;
  {
    std::istringstream ss(l.substr(7));
    std::string name;
    while (ss >> name) states.push_back(Elem::atom(name));
  }
  Carrier carrier(states);

  if (!next_line(l) || l.find("map:") == std::string::npos)
    fail(ErrorKind::Syntax, "expected 'map:' line");

  std::map<Elem, Elem> transition;
  while (next_line(l)) {
    if (l.rfind("witness:", 0) == 0) continue;  // countermodel dumps re-load cleanly
    std::size_t arrow = l.find("->");
    if (arrow == std::string::npos) fail(ErrorKind::Syntax, "expected 'state -> element'");
    std::string name = l.substr(0, arrow);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    Elem state = Elem::atom(name);
    if (!carrier.contains(state)) fail(ErrorKind::UnknownState, "unknown state " + name);
    Elem value = parse_elem_text(l.substr(arrow + 2), atom_inner());
    for (const auto& b : base(f, value))
      if (!carrier.contains(b))
        fail(ErrorKind::UnknownState, "transition of " + name + " mentions unknown state " +
                                          to_text(b));
    transition.emplace(std::move(state), std::move(value));
  }
  return make_coalgebra(std::move(f), std::move(carrier), std::move(transition));
}

inline std::string coalgebra_text(const Coalgebra& c) {
  std::string out = "functor: " + c.functor.text() + "\nstates:";
  for (const auto& s : c.states.members()) out += " " + to_text(s);
  out += "\nmap:\n";
  for (const auto& s : c.states.members())
    out += to_text(s) + " -> " + to_text(c.step(s)) + "\n";
  return out;
}

namespace detail {

// Per-coalgebra evaluation cache: formula -> sorted satisfying states.
struct Evaluator {
  const Coalgebra& model;
  std::map<Formula, std::vector<Elem>> meaning;

  explicit Evaluator(const Coalgebra& m) : model(m) {}

  const std::vector<Elem>& eval(const Formula& a) {
    auto it = meaning.find(a);
    if (it != meaning.end()) return it->second;
    std::vector<Elem> out;
    switch (a.kind()) {
      case Elem::Kind::Neg: {
        const auto& sub = eval(a.inner());
        for (const auto& s : model.states.members())
          if (!std::binary_search(sub.begin(), sub.end(), s)) out.push_back(s);
        break;
      }
      case Elem::Kind::Conj: {
        out = model.states.members();
        for (const auto& c : a.items()) {
          const auto& sub = eval(c);
          std::vector<Elem> next;
          std::set_intersection(out.begin(), out.end(), sub.begin(), sub.end(),
                                std::back_inserter(next));
          out = std::move(next);
        }
        break;
      }
      case Elem::Kind::Disj: {
        for (const auto& c : a.items()) {
          const auto& sub = eval(c);
          std::vector<Elem> next;
          std::set_union(out.begin(), out.end(), sub.begin(), sub.end(),
                         std::back_inserter(next));
          out = std::move(next);
        }
        break;
      }
      case Elem::Kind::Nabla: {
        const Elem& arg = a.inner();
        std::vector<Elem> immediate = base(model.functor, arg);
        std::vector<std::pair<Elem, Elem>> sat_pairs;
        for (const auto& b : immediate)
          for (const auto& s : eval(b)) sat_pairs.emplace_back(s, b);
        Relation sat(model.states, Carrier(immediate), std::move(sat_pairs));
        for (const auto& s : model.states.members())
          if (in_lifting(model.functor, sat, model.step(s), arg)) out.push_back(s);
        break;
      }
      default:
        fail(ErrorKind::Type, "cannot model-check a formula with free variable " + to_text(a));
    }
    return meaning.emplace(a, std::move(out)).first->second;
  }
};

}  // namespace detail

inline std::vector<Elem> meaning_set(const Coalgebra& m, const Formula& a) {
  require_formula(m.functor, a);
  detail::Evaluator ev(m);
  return ev.eval(a);
}

inline bool model_check(const Coalgebra& m, const Elem& state, const Formula& a) {
  if (!m.states.contains(state))
    fail(ErrorKind::UnknownState, "unknown state " + to_text(state));
  std::vector<Elem> sat = meaning_set(m, a);
  return std::binary_search(sat.begin(), sat.end(), state);
}

// f is a coalgebra morphism M -> N iff fmap(F, f, xi(x)) = xi'(f x) for all x.
inline bool is_coalgebra_morphism(const Coalgebra& m, const Coalgebra& n,
                                  const std::map<Elem, Elem>& f) {
  if (!(m.functor == n.functor)) return false;
  for (const auto& x : m.states.members()) {
    auto it = f.find(x);
    if (it == f.end() || !n.states.contains(it->second)) return false;
    if (fmap(m.functor, f, m.step(x)) != n.step(it->second)) return false;
  }
  return true;
}

}  // namespace nabla
