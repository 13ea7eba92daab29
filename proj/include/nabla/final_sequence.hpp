// The final sequence T^n 1, stratified meanings of formulas over it, the
// n-final coalgebras Z_n, and the validity decider: a <= b is valid iff
// mng_n(a) is contained in mng_n(b) at n = max depth, and a failure yields a
// concrete pointed countermodel carved out of Z_n.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nabla/coalgebra.hpp"
#include "nabla/elem.hpp"
#include "nabla/error.hpp"
#include "nabla/formula.hpp"
#include "nabla/functor.hpp"
#include "nabla/lifting.hpp"
#include "nabla/ops.hpp"

namespace nabla {

struct FinalLevel {
  int level = 0;
  std::vector<Elem> carrier;          // elements of T^level 1, canonical order
  std::map<Elem, Elem> projection;    // h_{level-1}: T^level 1 -> T^{level-1} 1; empty at level 0
};

// Levels 0..n of the final sequence. Level 0 is the one-point carrier {*}.
inline std::vector<FinalLevel> final_sequence(const Functor& f, int n, Budget& budget) {
  if (!f.preserves_finite())
    fail(ErrorKind::NotFinitary, "final sequence needs a functor preserving finite sets");
  std::vector<FinalLevel> levels;
  FinalLevel zero;
  zero.level = 0;
  zero.carrier = {Elem::atom("*")};
  levels.push_back(std::move(zero));
  for (int k = 1; k <= n; ++k) {
    FinalLevel next;
    next.level = k;
    try {
      next.carrier = enumerate(f, Carrier(levels.back().carrier), budget);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::EnumerationLimit)
        fail(ErrorKind::EnumerationLimit,
             "final sequence exceeds enumeration limit at level " + std::to_string(k) +
                 " (last completed level " + std::to_string(k - 1) + ")");
      throw;
    }
    if (k == 1) {
      for (const auto& e : next.carrier) next.projection.emplace(e, Elem::atom("*"));
    } else {
      const auto& prev = levels.back().projection;
      for (const auto& e : next.carrier) next.projection.emplace(e, fmap(f, prev, e));
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

inline FinalLevel final_level(const Functor& f, int n, Budget& budget) {
  return final_sequence(f, n, budget).back();
}

inline FinalLevel final_level(const Functor& f, int n) {
  Budget budget;
  return final_level(f, n, budget);
}

// xi_n: states -> T^n 1; xi_0 constant *, xi_{n+1} = fmap(xi_n) after xi.
inline std::map<Elem, Elem> behavior_map(const Coalgebra& m, int n) {
  if (!m.functor.preserves_finite())
    fail(ErrorKind::NotFinitary, "behavior map needs a functor preserving finite sets");
  std::map<Elem, Elem> xi;
  for (const auto& s : m.states.members()) xi.emplace(s, Elem::atom("*"));
  for (int k = 1; k <= n; ++k) {
    std::map<Elem, Elem> next;
    for (const auto& s : m.states.members()) next.emplace(s, fmap(m.functor, xi, m.step(s)));
    xi = std::move(next);
  }
  return xi;
}

namespace detail {

// The canonically least element of T1, the fixed choice for g: 1 -> T1.
inline Elem least_of_t1(const Functor& f, Budget& budget) {
  std::vector<Elem> t1 = enumerate(f, Carrier({Elem::atom("*")}), budget);
  if (t1.empty()) fail(ErrorKind::Type, "T1 is empty; no n-final coalgebra exists");
  return t1.front();
}

// T^n g as a table on the given carrier levels.
inline std::map<Elem, Elem> iterated_g(const Functor& f, const std::vector<FinalLevel>& levels,
                                       int n, Budget& budget) {
  std::map<Elem, Elem> gk;
  gk.emplace(Elem::atom("*"), least_of_t1(f, budget));
  for (int k = 1; k <= n; ++k) {
    std::map<Elem, Elem> next;
    for (const auto& e : levels[k].carrier) next.emplace(e, fmap(f, gk, e));
    gk = std::move(next);
  }
  return gk;
}

}  // namespace detail

inline Coalgebra n_final_coalgebra(const Functor& f, int n, Budget& budget) {
  std::vector<FinalLevel> levels = final_sequence(f, n, budget);
  std::map<Elem, Elem> transition = detail::iterated_g(f, levels, n, budget);
  return make_coalgebra(f, Carrier(levels[n].carrier), std::move(transition));
}

inline Coalgebra n_final_coalgebra(const Functor& f, int n) {
  Budget budget;
  return n_final_coalgebra(f, n, budget);
}

namespace detail {

// Stratified meanings with a (level, formula) cache over fixed levels.
struct StratifiedEvaluator {
  const Functor& functor;
  const std::vector<FinalLevel>& levels;
  Budget& budget;
  std::map<std::pair<int, Formula>, std::vector<Elem>> memo;

  static bool closed_boolean_truth(const Formula& a) {
    switch (a.kind()) {
      case Elem::Kind::Neg:
        return !closed_boolean_truth(a.inner());
      case Elem::Kind::Conj: {
        for (const auto& c : a.items())
          if (!closed_boolean_truth(c)) return false;
        return true;
      }
      case Elem::Kind::Disj: {
        for (const auto& c : a.items())
          if (closed_boolean_truth(c)) return true;
        return false;
      }
      default:
        fail(ErrorKind::Type, "depth-0 meaning of a non-closed formula " + to_text(a));
    }
  }

  const std::vector<Elem>& eval(const Formula& a, int level) {
    auto key = std::make_pair(level, a);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Elem> out;
    const auto& carrier = levels[level].carrier;
    if (level == 0) {
      if (closed_boolean_truth(a)) out = carrier;
    } else {
      switch (a.kind()) {
        case Elem::Kind::Neg: {
          const auto& sub = eval(a.inner(), level);
          for (const auto& e : carrier)
            if (!std::binary_search(sub.begin(), sub.end(), e)) out.push_back(e);
          break;
        }
        case Elem::Kind::Conj: {
          out = carrier;
          for (const auto& c : a.items()) {
            const auto& sub = eval(c, level);
            std::vector<Elem> next;
            std::set_intersection(out.begin(), out.end(), sub.begin(), sub.end(),
                                  std::back_inserter(next));
            out = std::move(next);
          }
          break;
        }
        case Elem::Kind::Disj: {
          for (const auto& c : a.items()) {
            const auto& sub = eval(c, level);
            std::vector<Elem> next;
            std::set_union(out.begin(), out.end(), sub.begin(), sub.end(),
                           std::back_inserter(next));
            out = std::move(next);
          }
          break;
        }
        case Elem::Kind::Nabla: {
          const Elem& arg = a.inner();
          Elem phi = fmap(functor,
                          [&](const Elem& b) { return Elem::set(eval(b, level - 1)); }, arg);
          out = lifted_members(functor, Carrier(levels[level - 1].carrier), phi, budget);
          break;
        }
        default:
          fail(ErrorKind::Type, "stratified meaning of a formula with free variable " +
                                    to_text(a));
      }
    }
    return memo.emplace(std::move(key), std::move(out)).first->second;
  }
};

}  // namespace detail

// Meaning at an explicit level >= depth(a); mng_n below fixes level = depth(a).
inline std::vector<Elem> mng_at(const Functor& f, const Formula& a, int level, Budget& budget) {
  require_formula(f, a);
  if (depth(f, a) > level)
    fail(ErrorKind::Type, "formula depth exceeds requested level");
  std::vector<FinalLevel> levels = final_sequence(f, level, budget);
  detail::StratifiedEvaluator ev{f, levels, budget, {}};
  return ev.eval(a, level);
}

inline std::vector<Elem> mng_n(const Functor& f, const Formula& a, Budget& budget) {
  return mng_at(f, a, depth(f, a), budget);
}

inline std::vector<Elem> mng_n(const Functor& f, const Formula& a) {
  Budget budget;
  return mng_n(f, a, budget);
}

struct Countermodel {
  Coalgebra model;       // reachable part of Z_n, states renamed z0, z1, ...
  Elem witness;          // state satisfying `satisfied` and refuting `refuted`
  Formula satisfied, refuted;
};

struct ValidityResult {
  bool valid = false;
  std::optional<Countermodel> countermodel;
};

namespace detail {

inline Countermodel extract_countermodel(const Functor& f,
                                         const std::vector<FinalLevel>& levels, int n,
                                         const Elem& z, const Formula& a, const Formula& b,
                                         Budget& budget) {
  std::map<Elem, Elem> transition = iterated_g(f, levels, n, budget);
  // Restrict to states reachable from z through base supports.
  std::vector<Elem> todo = {z};
  std::set<Elem> reachable;
  while (!todo.empty()) {
    Elem s = todo.back();
    todo.pop_back();
    if (!reachable.insert(s).second) continue;
    for (const auto& t : base(f, transition.at(s)))
      if (!reachable.count(t)) todo.push_back(t);
  }
  std::vector<Elem> kept(reachable.begin(), reachable.end());
  std::map<Elem, Elem> rename;
  for (std::size_t i = 0; i < kept.size(); ++i)
    rename.emplace(kept[i], Elem::atom("z" + std::to_string(i)));
  std::map<Elem, Elem> renamed_transition;
  std::vector<Elem> renamed_states;
  for (const auto& s : kept) {
    renamed_states.push_back(rename.at(s));
    renamed_transition.emplace(rename.at(s), fmap(f, rename, transition.at(s)));
  }
  Coalgebra model =
      make_coalgebra(f, Carrier(std::move(renamed_states)), std::move(renamed_transition));
  return Countermodel{std::move(model), rename.at(z), a, b};
}

}  // namespace detail

inline ValidityResult decide_valid(const Functor& f, const Formula& a, const Formula& b,
                                   Budget& budget) {
  require_closed(f, a);
  require_closed(f, b);
  int n = std::max(depth(f, a), depth(f, b));
  std::vector<FinalLevel> levels = final_sequence(f, n, budget);
  detail::StratifiedEvaluator ev{f, levels, budget, {}};
  const std::vector<Elem>& sa = ev.eval(a, n);
  const std::vector<Elem>& sb = ev.eval(b, n);
  for (const auto& z : sa) {
    if (!std::binary_search(sb.begin(), sb.end(), z))
      return {false, detail::extract_countermodel(f, levels, n, z, a, b, budget)};
  }
  return {true, std::nullopt};
}

inline ValidityResult decide_valid(const Functor& f, const Formula& a, const Formula& b) {
  Budget budget;
  return decide_valid(f, a, b, budget);
}

}  // namespace nabla
