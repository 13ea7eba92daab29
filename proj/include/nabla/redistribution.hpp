// Slim redistributions SRD(A) — the premise material of the (nabla-2) rule —
// and the negation dual Q(alpha) behind (nabla-4). Both enumerate elements of
// F(P B) for B the base material of the input and filter by lifting
// conditions; the bag functor gets the bounded enumeration that makes its
// premise sets finite.
#pragma once

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "nabla/elem.hpp"
#include "nabla/error.hpp"
#include "nabla/functor.hpp"
#include "nabla/lifting.hpp"
#include "nabla/ops.hpp"
#include "nabla/relation.hpp"

namespace nabla {

// All Phi in F(P B), B = union of Base(alpha) for alpha in A, such that every
// alpha in A is a lifted member of Phi. Canonical order.
inline std::vector<Elem> slim_redistributions(const Functor& f, const std::vector<Elem>& a_set,
                                              Budget& budget) {
  std::vector<Elem> pool;
  for (const auto& alpha : a_set)
    for (const auto& x : base(f, alpha)) pool.push_back(x);
  Carrier b(std::move(pool));

  std::vector<Elem> candidates;
  if (f.preserves_finite()) {
    std::vector<Elem> subset_elems = detail::subsets_shortlex(b.members(), budget);
    candidates = enumerate(f, Carrier(std::move(subset_elems)), budget);
  } else if (f.tag() == Functor::Tag::Bag) {
    if (a_set.empty())
      fail(ErrorKind::NotEnumerable,
           "SRD of the empty set is infinite for the bag functor (all multisets over {})");
    std::vector<Elem> subset_elems = detail::subsets_shortlex(b.members(), budget);
    // Phi(U) is bounded by sum of alpha(x) over x in U, for each alpha in A.
    auto bound = [&](const Elem& u) {
      bool first = true;
      Int best = 0;
      for (const auto& alpha : a_set) {
        Int total = 0;
        for (const auto& [x, c] : alpha.bag_entries()) {
          const auto& items = u.items();
          if (std::binary_search(items.begin(), items.end(), x)) total += c;
        }
        if (first || total < best) best = total;
        first = false;
      }
      return best;
    };
    candidates = detail::bounded_bags(subset_elems, bound, budget);
  } else {
    fail(ErrorKind::NotEnumerable,
         "slim redistributions are not finitely enumerable for " + f.text());
  }

  std::vector<Elem> out;
  for (const auto& phi : candidates) {
    bool ok = true;
    // membership restricted to B x Base(phi)
    std::vector<Elem> phi_subsets = base(f, phi);
    Relation membership = membership_relation(b, Carrier(phi_subsets));
    auto member_of = [&membership](const Elem& p, const Elem& s) {
      return membership.contains(p, s);
    };
    for (const auto& alpha : a_set)
      if (!detail::in_lifting_rec(f, member_of, alpha, phi, nullptr)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(phi);
  }
  return out;
}

inline std::vector<Elem> slim_redistributions(const Functor& f,
                                              const std::vector<Elem>& a_set) {
  Budget budget;
  return slim_redistributions(f, a_set, budget);
}

// Q(alpha): images under T(/\ after P~) of those Psi in F(P Base(alpha)) with
// (alpha, Psi) outside the lifting of non-membership. The disjunction of
// nablas of Q(alpha) is semantically the negation of nabla alpha.
inline std::vector<Elem> neg_dual(const Functor& f, const Elem& alpha, Budget& budget) {
  if (!f.preserves_finite())
    fail(ErrorKind::NotEnumerable, "negation dual needs a functor preserving finite sets");
  Carrier b(base(f, alpha));
  std::vector<Elem> subset_elems = detail::subsets_shortlex(b.members(), budget);
  Carrier subsets(subset_elems);
  Relation nonmember = non_membership_relation(b, subsets);
  auto not_in = [&nonmember](const Elem& p, const Elem& s) { return nonmember.contains(p, s); };

  auto conj_of_negs = [](const Elem& psi) {
    std::vector<Elem> items;
    for (const auto& m : psi.items()) items.push_back(Elem::neg(m));
    return Elem::conj(std::move(items));
  };

  std::vector<Elem> out;
  for (const auto& psi_big : enumerate(f, subsets, budget)) {
    if (detail::in_lifting_rec(f, not_in, alpha, psi_big, nullptr)) continue;
    out.push_back(fmap(f, conj_of_negs, psi_big));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<Elem> neg_dual(const Functor& f, const Elem& alpha) {
  Budget budget;
  return neg_dual(f, alpha, budget);
}

}  // namespace nabla
