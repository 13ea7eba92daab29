// Deciding membership in the relation lifting of R, and computing lifted
// members. Clauses per functor: Id is R itself, constants lift to the
// identity, P is the Egli-Milner condition, Bag/Dist are transportation
// feasibility over exact numbers, composites go componentwise with Compose
// restricting the inner relation to the bases of the two elements.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "nabla/elem.hpp"
#include "nabla/error.hpp"
#include "nabla/flow.hpp"
#include "nabla/functor.hpp"
#include "nabla/ops.hpp"
#include "nabla/relation.hpp"

namespace nabla {

// One feasible flow for a Bag/Dist lifting: positive assignments to relation
// pairs whose row sums give the left element and column sums the right one.
struct FlowWitness {
  std::vector<std::pair<std::pair<Elem, Elem>, Rat>> assignments;
};

namespace detail {

template <typename Num, typename Entries>
bool flow_lifting(const Entries& left, const Entries& right,
                  const std::function<bool(const Elem&, const Elem&)>& related,
                  FlowWitness* witness) {
  std::vector<Num> supply, demand;
  supply.reserve(left.size());
  demand.reserve(right.size());
  for (const auto& [k, v] : left) supply.push_back(v);
  for (const auto& [k, v] : right) demand.push_back(v);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < static_cast<int>(left.size()); ++i)
    for (int j = 0; j < static_cast<int>(right.size()); ++j)
      if (related(left[i].first, right[j].first)) edges.emplace_back(i, j);
  auto flows = transport_feasible<Num>(supply, demand, edges);
  if (!flows) return false;
  if (witness) {
    witness->assignments.clear();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if ((*flows)[e] == 0) continue;
      auto [i, j] = edges[e];
      witness->assignments.push_back(
          {{left[i].first, right[j].first}, Rat((*flows)[e])});
    }
  }
  return true;
}

inline bool in_lifting_rec(const Functor& f,
                           const std::function<bool(const Elem&, const Elem&)>& related,
                           const Elem& e1, const Elem& e2, FlowWitness* witness) {
  switch (f.tag()) {
    case Functor::Tag::Id:
      return related(e1, e2);
    case Functor::Tag::Constant:
      return e1 == e2;
    case Functor::Tag::Pow: {
      const auto& a = e1.items();
      const auto& b = e2.items();
      for (const auto& x : a) {
        bool hit = false;
        for (const auto& y : b)
          if (related(x, y)) {
            hit = true;
            break;
          }
        if (!hit) return false;
      }
      for (const auto& y : b) {
        bool hit = false;
        for (const auto& x : a)
          if (related(x, y)) {
            hit = true;
            break;
          }
        if (!hit) return false;
      }
      return true;
    }
    case Functor::Tag::Bag:
      return flow_lifting<Int>(e1.bag_entries(), e2.bag_entries(), related, witness);
    case Functor::Tag::Dist:
      return flow_lifting<Rat>(e1.dist_entries(), e2.dist_entries(), related, witness);
    case Functor::Tag::Compose: {
      // Lift the inner relation between the bases of e1 and e2, then lift
      // that through the outer functor.
      const Functor& outer = f.left();
      const Functor& inner = f.right();
      std::vector<Elem> b1 = base(outer, e1);
      std::vector<Elem> b2 = base(outer, e2);
      std::map<std::pair<Elem, Elem>, bool> memo;
      for (const auto& g1 : b1)
        for (const auto& g2 : b2)
          memo[{g1, g2}] = in_lifting_rec(inner, related, g1, g2, nullptr);
      auto lifted = [&memo](const Elem& a, const Elem& b) {
        auto it = memo.find({a, b});
        return it != memo.end() && it->second;
      };
      return in_lifting_rec(outer, lifted, e1, e2, nullptr);
    }
    case Functor::Tag::Sum:
      if (e1.tag() != e2.tag()) return false;
      return in_lifting_rec(e1.tag() == 0 ? f.left() : f.right(), related, e1.inner(),
                            e2.inner(), witness);
    case Functor::Tag::Product:
      return in_lifting_rec(f.left(), related, e1.first(), e2.first(), nullptr) &&
             in_lifting_rec(f.right(), related, e1.second(), e2.second(), nullptr);
    case Functor::Tag::Exp: {
      const auto& m1 = e1.map_entries();
      const auto& m2 = e2.map_entries();
      for (std::size_t i = 0; i < m1.size(); ++i)
        if (!in_lifting_rec(f.left(), related, m1[i].second, m2[i].second, nullptr))
          return false;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// (e1,e2) in the F-lifting of R? For a top-level Bag/Dist a feasible flow can
// be reported through `witness`.
inline bool in_lifting(const Functor& f, const Relation& r, const Elem& e1, const Elem& e2,
                       FlowWitness* witness = nullptr) {
  require_typed(f, r.dom(), e1);
  require_typed(f, r.cod(), e2);
  auto related = [&r](const Elem& a, const Elem& b) { return r.contains(a, b); };
  return detail::in_lifting_rec(f, related, e1, e2, witness);
}

namespace detail {

// Candidate bags alpha over `points` with alpha(x) bounded by the total
// Phi-weight of subsets containing x. Any lifted member satisfies this bound,
// which is what keeps the bag functor's lifted-member and redistribution
// sets finite.
inline std::vector<Elem> bounded_bags(const std::vector<Elem>& points,
                                      const std::function<Int(const Elem&)>& bound,
                                      Budget& budget) {
  std::vector<Int> bounds;
  bounds.reserve(points.size());
  for (const auto& p : points) bounds.push_back(bound(p));
  std::vector<Elem> out;
  std::vector<Int> counts(points.size(), 0);
  while (true) {
    budget.charge();
    Elem::BagEntries entries;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (counts[i] > 0) entries.emplace_back(points[i], counts[i]);
    out.push_back(Elem::bag(std::move(entries)));
    std::size_t i = points.size();
    while (i > 0) {
      if (counts[i - 1] < bounds[i - 1]) {
        ++counts[i - 1];
        break;
      }
      counts[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// lambda(Phi) = { alpha in T X | alpha lifted-member-of Phi }, in canonical
// order. Phi lives in F(P X); its base tells us which subsets matter, and the
// ambient carrier is restricted to their union before enumerating.
inline std::vector<Elem> lifted_members(const Functor& f, const Carrier& x, const Elem& phi,
                                        Budget& budget) {
  if (!well_typed(f, [&x](const Elem& m) { return m.is(Elem::Kind::Set) && std::all_of(
                          m.items().begin(), m.items().end(),
                          [&x](const Elem& p) { return x.contains(p); }); },
                  phi))
    fail(ErrorKind::Type, "element " + to_text(phi) + " is not in " + f.text() + "(P X)");

  std::vector<Elem> subset_elems = base(f, phi);
  std::vector<Elem> point_elems;
  for (const auto& s : subset_elems)
    for (const auto& p : s.items()) point_elems.push_back(p);
  Carrier points(std::move(point_elems));
  Carrier subsets(subset_elems);
  Relation membership = membership_relation(points, subsets);
  auto member_of = [&membership](const Elem& a, const Elem& b) {
    return membership.contains(a, b);
  };

  std::vector<Elem> candidates;
  if (f.tag() == Functor::Tag::Bag) {
    auto bound = [&phi](const Elem& p) {
      Int total = 0;
      for (const auto& [s, c] : phi.bag_entries()) {
        const auto& items = s.items();
        if (std::binary_search(items.begin(), items.end(), p)) total += c;
      }
      return total;
    };
    candidates = detail::bounded_bags(points.members(), bound, budget);
  } else if (f.preserves_finite()) {
    candidates = enumerate(f, points, budget);
  } else {
    fail(ErrorKind::NotEnumerable,
         "lifted members are not finitely enumerable for " + f.text());
  }

  std::vector<Elem> out;
  for (const auto& alpha : candidates)
    if (detail::in_lifting_rec(f, member_of, alpha, phi, nullptr)) out.push_back(alpha);
  return out;
}

inline std::vector<Elem> lifted_members(const Functor& f, const Carrier& x, const Elem& phi) {
  Budget budget;
  return lifted_members(f, x, phi, budget);
}

}  // namespace nabla
