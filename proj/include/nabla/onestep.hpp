// One-step semantics over a fixed carrier X: depth-0 formulas are Boolean
// combinations of subset variables and denote subsets of X; depth-1 formulas
// are Boolean combinations of nablas of depth-0 material and denote subsets
// of T X. Semantic equality at this level coincides with one-step
// derivability, so one_step_equiv doubles as a proof-theoretic oracle.
#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "nabla/elem.hpp"
#include "nabla/error.hpp"
#include "nabla/functor.hpp"
#include "nabla/lifting.hpp"
#include "nabla/ops.hpp"

namespace nabla {

struct OneStepContext {
  Carrier carrier;               // X
  std::vector<Elem> variables;   // subsets of X usable as depth-0 atoms

  OneStepContext(Carrier x, std::vector<Elem> vars)
      : carrier(std::move(x)), variables(std::move(vars)) {
    std::sort(variables.begin(), variables.end());
    variables.erase(std::unique(variables.begin(), variables.end()), variables.end());
    for (const auto& v : variables) {
      if (!v.is(Elem::Kind::Set))
        fail(ErrorKind::Type, "one-step variable must be a subset: " + to_text(v));
      for (const auto& m : v.items())
        if (!carrier.contains(m))
          fail(ErrorKind::Carrier, "one-step variable " + to_text(v) + " outside the carrier");
    }
  }

  bool is_variable(const Elem& e) const {
    return std::binary_search(variables.begin(), variables.end(), e);
  }
};

// [[a0]]^0: Boolean evaluation with subset variables denoting themselves.
inline std::vector<Elem> one_step_eval0(const OneStepContext& ctx, const Formula& a0) {
  switch (a0.kind()) {
    case Elem::Kind::Neg: {
      std::vector<Elem> sub = one_step_eval0(ctx, a0.inner());
      std::vector<Elem> out;
      for (const auto& s : ctx.carrier.members())
        if (!std::binary_search(sub.begin(), sub.end(), s)) out.push_back(s);
      return out;
    }
    case Elem::Kind::Conj: {
      std::vector<Elem> out = ctx.carrier.members();
      for (const auto& c : a0.items()) {
        std::vector<Elem> sub = one_step_eval0(ctx, c);
        std::vector<Elem> next;
        std::set_intersection(out.begin(), out.end(), sub.begin(), sub.end(),
                              std::back_inserter(next));
        out = std::move(next);
      }
      return out;
    }
    case Elem::Kind::Disj: {
      std::vector<Elem> out;
      for (const auto& c : a0.items()) {
        std::vector<Elem> sub = one_step_eval0(ctx, c);
        std::vector<Elem> next;
        std::set_union(out.begin(), out.end(), sub.begin(), sub.end(),
                       std::back_inserter(next));
        out = std::move(next);
      }
      return out;
    }
    case Elem::Kind::Nabla:
      fail(ErrorKind::Type, "nabla is not a depth-0 formula");
    default:
      if (!ctx.is_variable(a0))
        fail(ErrorKind::UnknownVariable, "unknown one-step variable " + to_text(a0));
      return a0.items();
  }
}

// [[a1]]^1 as a sorted subset of enumerate(F, X). Depth-1 formulas are
// Boolean over nabla atoms only.
inline std::vector<Elem> one_step_eval1(const Functor& f, const OneStepContext& ctx,
                                        const Formula& a1, Budget& budget) {
  switch (a1.kind()) {
    case Elem::Kind::Neg: {
      std::vector<Elem> sub = one_step_eval1(f, ctx, a1.inner(), budget);
      std::vector<Elem> all = enumerate(f, ctx.carrier, budget);
      std::vector<Elem> out;
      for (const auto& e : all)
        if (!std::binary_search(sub.begin(), sub.end(), e)) out.push_back(e);
      return out;
    }
    case Elem::Kind::Conj: {
      std::vector<Elem> out = enumerate(f, ctx.carrier, budget);
      for (const auto& c : a1.items()) {
        std::vector<Elem> sub = one_step_eval1(f, ctx, c, budget);
        std::vector<Elem> next;
        std::set_intersection(out.begin(), out.end(), sub.begin(), sub.end(),
                              std::back_inserter(next));
        out = std::move(next);
      }
      return out;
    }
    case Elem::Kind::Disj: {
      std::vector<Elem> out;
      for (const auto& c : a1.items()) {
        std::vector<Elem> sub = one_step_eval1(f, ctx, c, budget);
        std::vector<Elem> next;
        std::set_union(out.begin(), out.end(), sub.begin(), sub.end(),
                       std::back_inserter(next));
        out = std::move(next);
      }
      return out;
    }
    case Elem::Kind::Nabla: {
      Elem phi = fmap(f, [&](const Elem& b) { return Elem::set(one_step_eval0(ctx, b)); },
                      a1.inner());
      return lifted_members(f, ctx.carrier, phi, budget);
    }
    default:
      fail(ErrorKind::Type,
           "depth-1 formulas are Boolean combinations of nablas; got " + to_text(a1));
  }
}

inline bool one_step_equiv(const Functor& f, const OneStepContext& ctx, const Formula& a1,
                           const Formula& b1, Budget& budget) {
  return one_step_eval1(f, ctx, a1, budget) == one_step_eval1(f, ctx, b1, budget);
}

// Lifted atoms for a partition of X: every alpha in T(blocks) paired with its
// one-step cell. The cells are pairwise disjoint and cover T X, and every
// depth-1 meaning is a union of whole cells.
inline std::vector<std::pair<Elem, std::vector<Elem>>> lifted_atoms(
    const Functor& f, const std::vector<Elem>& partition, const Carrier& x, Budget& budget) {
  std::vector<Elem> seen;
  for (const auto& block : partition) {
    if (!block.is(Elem::Kind::Set) || block.items().empty())
      fail(ErrorKind::Type, "partition blocks must be nonempty subsets");
    for (const auto& m : block.items()) seen.push_back(m);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    fail(ErrorKind::Type, "partition blocks overlap");
  if (!(Carrier(seen) == x)) fail(ErrorKind::Type, "partition does not cover the carrier");

  std::vector<std::pair<Elem, std::vector<Elem>>> out;
  for (const auto& alpha : enumerate(f, Carrier(partition), budget))
    out.emplace_back(alpha, lifted_members(f, x, alpha, budget));
  return out;
}

}  // namespace nabla
