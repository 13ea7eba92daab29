// Structural action of a functor expression on finite carriers: element
// typing, the Base transformation (least supporting subset), the action on
// functions (fmap), and enumeration of T X in canonical order.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nabla/elem.hpp"
#include "nabla/error.hpp"
#include "nabla/functor.hpp"

namespace nabla {

using MemberTest = std::function<bool(const Elem&)>;

// Shape and membership check for e in F(X), where X is given as a membership
// predicate so composite functors can nest without materializing carriers.
inline bool well_typed(const Functor& f, const MemberTest& in_carrier, const Elem& e) {
  switch (f.tag()) {
    case Functor::Tag::Id:
      return in_carrier(e);
    case Functor::Tag::Constant: {
      if (!e.is(Elem::Kind::Sym)) return false;
      const auto& names = f.symbols();
      return std::binary_search(names.begin(), names.end(), e.name());
    }
    case Functor::Tag::Pow: {
      if (!e.is(Elem::Kind::Set)) return false;
      for (const auto& m : e.items())
        if (!in_carrier(m)) return false;
      return true;
    }
    case Functor::Tag::Bag: {
      if (!e.is(Elem::Kind::Bag)) return false;
      for (const auto& [k, c] : e.bag_entries())
        if (c <= 0 || !in_carrier(k)) return false;
      return true;
    }
    case Functor::Tag::Dist: {
      if (!e.is(Elem::Kind::Dist)) return false;
      Rat total;
      for (const auto& [k, w] : e.dist_entries()) {
        if (w <= 0 || !in_carrier(k)) return false;
        total += w;
      }
      return total == 1;
    }
    case Functor::Tag::Compose: {
      const Functor& inner = f.right();
      return well_typed(f.left(), [&](const Elem& g) { return well_typed(inner, in_carrier, g); },
                        e);
    }
    case Functor::Tag::Sum:
      if (!e.is(Elem::Kind::In)) return false;
      return well_typed(e.tag() == 0 ? f.left() : f.right(), in_carrier, e.inner());
    case Functor::Tag::Product:
      return e.is(Elem::Kind::Pair) && well_typed(f.left(), in_carrier, e.first()) &&
             well_typed(f.right(), in_carrier, e.second());
    case Functor::Tag::Exp: {
      if (!e.is(Elem::Kind::Map)) return false;
      const auto& dom = f.symbols();
      const auto& entries = e.map_entries();
      if (entries.size() != dom.size()) return false;
      for (std::size_t i = 0; i < dom.size(); ++i) {
        if (entries[i].first != dom[i]) return false;
        if (!well_typed(f.left(), in_carrier, entries[i].second)) return false;
      }
      return true;
    }
  }
  return false;
}

inline bool well_typed(const Functor& f, const Carrier& x, const Elem& e) {
  return well_typed(f, [&x](const Elem& m) { return x.contains(m); }, e);
}

inline void require_typed(const Functor& f, const Carrier& x, const Elem& e) {
  if (!well_typed(f, x, e))
    fail(ErrorKind::Type, "element " + to_text(e) + " is not well-typed for " + f.text());
}

namespace detail {

inline void collect_base(const Functor& f, const Elem& e, std::vector<Elem>& out) {
  switch (f.tag()) {
    case Functor::Tag::Id:
      out.push_back(e);
      return;
    case Functor::Tag::Constant:
      return;
    case Functor::Tag::Pow:
      for (const auto& m : e.items()) out.push_back(m);
      return;
    case Functor::Tag::Bag:
      for (const auto& [k, c] : e.bag_entries()) out.push_back(k);
      return;
    case Functor::Tag::Dist:
      for (const auto& [k, w] : e.dist_entries()) out.push_back(k);
      return;
    case Functor::Tag::Compose: {
      std::vector<Elem> mids;
      collect_base(f.left(), e, mids);
      for (const auto& g : mids) collect_base(f.right(), g, out);
      return;
    }
    case Functor::Tag::Sum:
      collect_base(e.tag() == 0 ? f.left() : f.right(), e.inner(), out);
      return;
    case Functor::Tag::Product:
      collect_base(f.left(), e.first(), out);
      collect_base(f.right(), e.second(), out);
      return;
    case Functor::Tag::Exp:
      for (const auto& [d, v] : e.map_entries()) collect_base(f.left(), v, out);
      return;
  }
}

}  // namespace detail

// Base(e): the least carrier subset supporting e, as a sorted list.
inline std::vector<Elem> base(const Functor& f, const Elem& e) {
  std::vector<Elem> out;
  detail::collect_base(f, e, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

using ElemFn = std::function<Elem(const Elem&)>;

// Functorial action on functions. The usual clauses: direct image for P,
// count/weight summation over collapsed preimages for Bag/Dist, identity on
// constants, componentwise elsewhere.
inline Elem fmap(const Functor& f, const ElemFn& fn, const Elem& e) {
  switch (f.tag()) {
    case Functor::Tag::Id:
      return fn(e);
    case Functor::Tag::Constant:
      return e;
    case Functor::Tag::Pow: {
      std::vector<Elem> items;
      items.reserve(e.items().size());
      for (const auto& m : e.items()) items.push_back(fn(m));
      return Elem::set(std::move(items));
    }
    case Functor::Tag::Bag: {
      Elem::BagEntries entries;
      for (const auto& [k, c] : e.bag_entries()) entries.emplace_back(fn(k), c);
      return Elem::bag(std::move(entries));
    }
    case Functor::Tag::Dist: {
      Elem::DistEntries entries;
      for (const auto& [k, w] : e.dist_entries()) entries.emplace_back(fn(k), w);
      return Elem::dist(std::move(entries));
    }
    case Functor::Tag::Compose: {
      const Functor& inner = f.right();
      return fmap(f.left(), [&](const Elem& g) { return fmap(inner, fn, g); }, e);
    }
    case Functor::Tag::Sum:
      return Elem::injection(e.tag(),
                             fmap(e.tag() == 0 ? f.left() : f.right(), fn, e.inner()));
    case Functor::Tag::Product:
      return Elem::pair(fmap(f.left(), fn, e.first()), fmap(f.right(), fn, e.second()));
    case Functor::Tag::Exp: {
      Elem::MapEntries entries;
      for (const auto& [d, v] : e.map_entries()) entries.emplace_back(d, fmap(f.left(), fn, v));
      return Elem::exp_map(std::move(entries));
    }
  }
  return e;  // unreachable
}

inline Elem fmap(const Functor& f, const std::map<Elem, Elem>& fn, const Elem& e) {
  return fmap(f,
              [&fn](const Elem& x) -> Elem {
                auto it = fn.find(x);
                if (it == fn.end())
                  fail(ErrorKind::Carrier, "map not defined on " + to_text(x));
                return it->second;
              },
              e);
}

namespace detail {

// All subsets of a sorted member list in shortlex order: by size, then
// lexicographically within a size.
inline std::vector<Elem> subsets_shortlex(const std::vector<Elem>& members, Budget& budget) {
  std::vector<Elem> out;
  const std::size_t n = members.size();
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      budget.charge();
      std::vector<Elem> items;
      items.reserve(k);
      for (std::size_t i : idx) items.push_back(members[i]);
      out.push_back(Elem::set(std::move(items)));
      if (k == 0) break;
      // next combination
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace detail

// Every element of F(X), exactly once, strictly increasing under compare.
inline std::vector<Elem> enumerate(const Functor& f, const Carrier& x, Budget& budget) {
  switch (f.tag()) {
    case Functor::Tag::Id:
      budget.charge(x.size());
      return x.members();
    case Functor::Tag::Constant: {
      std::vector<Elem> out;
      for (const auto& s : f.symbols()) {
        budget.charge();
        out.push_back(Elem::sym(s));
      }
      return out;
    }
    case Functor::Tag::Pow:
      return detail::subsets_shortlex(x.members(), budget);
    case Functor::Tag::Bag:
    case Functor::Tag::Dist:
      fail(ErrorKind::NotFinitary,
           f.text() + " does not preserve finite sets; cannot enumerate");
    case Functor::Tag::Compose: {
      std::vector<Elem> inner = enumerate(f.right(), x, budget);
      return enumerate(f.left(), Carrier(std::move(inner)), budget);
    }
    case Functor::Tag::Sum: {
      std::vector<Elem> out;
      for (const auto& e : enumerate(f.left(), x, budget)) out.push_back(Elem::inl(e));
      for (const auto& e : enumerate(f.right(), x, budget)) out.push_back(Elem::inr(e));
      return out;
    }
    case Functor::Tag::Product: {
      std::vector<Elem> ls = enumerate(f.left(), x, budget);
      std::vector<Elem> rs = enumerate(f.right(), x, budget);
      std::vector<Elem> out;
      for (const auto& a : ls)
        for (const auto& b : rs) {
          budget.charge();
          out.push_back(Elem::pair(a, b));
        }
      return out;
    }
    case Functor::Tag::Exp: {
      std::vector<Elem> vals = enumerate(f.left(), x, budget);
      const auto& dom = f.symbols();
      std::vector<Elem> out;
      if (vals.empty()) return out;
      std::vector<std::size_t> odo(dom.size(), 0);
      while (true) {
        budget.charge();
        Elem::MapEntries entries;
        for (std::size_t i = 0; i < dom.size(); ++i) entries.emplace_back(dom[i], vals[odo[i]]);
        out.push_back(Elem::exp_map(std::move(entries)));
        // advance, last position fastest
        std::size_t i = dom.size();
        while (i > 0) {
          if (++odo[i - 1] < vals.size()) break;
          odo[i - 1] = 0;
          --i;
        }
        if (i == 0) break;
      }
      return out;
    }
  }
  return {};  // unreachable
}

inline std::vector<Elem> enumerate(const Functor& f, const Carrier& x) {
  Budget budget;
  return enumerate(f, x, budget);
}

}  // namespace nabla
