#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nabla/elem.hpp"
#include "nabla/error.hpp"

namespace nabla {

// A binary relation between two finite carriers, with pairs kept sorted and
// duplicate-free.
class Relation {
 public:
  Relation() = default;

  Relation(Carrier dom, Carrier cod, std::vector<std::pair<Elem, Elem>> pairs)
      : dom_(std::move(dom)), cod_(std::move(cod)), pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
    for (const auto& [l, r] : pairs_) {
      if (!dom_.contains(l))
        fail(ErrorKind::Carrier, "relation pair left component " + to_text(l) + " outside domain");
      if (!cod_.contains(r))
        fail(ErrorKind::Carrier,
             "relation pair right component " + to_text(r) + " outside codomain");
    }
  }

  const Carrier& dom() const { return dom_; }
  const Carrier& cod() const { return cod_; }
  const std::vector<std::pair<Elem, Elem>>& pairs() const { return pairs_; }

  bool contains(const Elem& l, const Elem& r) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), std::make_pair(l, r));
  }

  std::vector<Elem> image_of(const Elem& l) const {
    std::vector<Elem> out;
    for (const auto& [a, b] : pairs_)
      if (a == l) out.push_back(b);
    return out;
  }

 private:
  Carrier dom_, cod_;
  std::vector<std::pair<Elem, Elem>> pairs_;
};

inline Relation identity_relation(const Carrier& x) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (const auto& m : x.members()) pairs.emplace_back(m, m);
  return Relation(x, x, std::move(pairs));
}

inline Relation converse(const Relation& r) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (const auto& [l, rr] : r.pairs()) pairs.emplace_back(rr, l);
  return Relation(r.cod(), r.dom(), std::move(pairs));
}

// {(x,z) | exists y with xRy and yQz}
inline Relation compose_relations(const Relation& r, const Relation& q) {
  if (!(r.cod() == q.dom()))
    fail(ErrorKind::Carrier, "relation composition: codomain/domain mismatch");
  std::map<Elem, std::vector<Elem>> by_left;
  for (const auto& [y, z] : q.pairs()) by_left[y].push_back(z);
  std::vector<std::pair<Elem, Elem>> pairs;
  for (const auto& [x, y] : r.pairs()) {
    auto it = by_left.find(y);
    if (it == by_left.end()) continue;
    for (const auto& z : it->second) pairs.emplace_back(x, z);
  }
  return Relation(r.dom(), q.cod(), std::move(pairs));
}

inline Relation graph_relation(const Carrier& dom, const Carrier& cod,
                               const std::map<Elem, Elem>& fn) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (const auto& m : dom.members()) {
    auto it = fn.find(m);
    if (it == fn.end()) fail(ErrorKind::Carrier, "graph of a non-total map");
    pairs.emplace_back(m, it->second);
  }
  return Relation(dom, cod, std::move(pairs));
}

// Membership between a carrier of points and a carrier of subsets (Set
// elements over those points).
inline Relation membership_relation(const Carrier& points, const Carrier& subsets) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (const auto& s : subsets.members()) {
    for (const auto& m : s.items())
      pairs.emplace_back(m, s);
  }
  return Relation(points, subsets, std::move(pairs));
}

// Complement of membership on the same carriers.
inline Relation non_membership_relation(const Carrier& points, const Carrier& subsets) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (const auto& p : points.members())
    for (const auto& s : subsets.members()) {
      const auto& items = s.items();
      if (!std::binary_search(items.begin(), items.end(), p)) pairs.emplace_back(p, s);
    }
  return Relation(points, subsets, std::move(pairs));
}

}  // namespace nabla
