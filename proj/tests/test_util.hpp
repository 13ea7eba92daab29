#pragma once

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "nabla/coalgebra.hpp"
#include "nabla/elem.hpp"
#include "nabla/functor.hpp"
#include "nabla/ops.hpp"

namespace nabla {

inline void PrintTo(const Elem& e, std::ostream* os) { *os << to_text(e); }
inline void PrintTo(const Functor& f, std::ostream* os) { *os << f.text(); }

}  // namespace nabla

namespace nabla_test {

// Deterministic generator for elements, closed formulas and coalgebras.
struct TermGen {
  std::mt19937 rng;

  explicit TermGen(unsigned seed) : rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  nabla::Elem elem_over(const nabla::Functor& f, const std::vector<nabla::Elem>& pool) {
    using nabla::Elem;
    using nabla::Functor;
    switch (f.tag()) {
      case Functor::Tag::Id:
        return pool[pick(static_cast<int>(pool.size()))];
      case Functor::Tag::Constant:
        return Elem::sym(f.symbols()[pick(static_cast<int>(f.symbols().size()))]);
      case Functor::Tag::Pow: {
        std::vector<Elem> items;
        int k = pick(3);
        for (int i = 0; i < k; ++i) items.push_back(pool[pick(static_cast<int>(pool.size()))]);
        return Elem::set(std::move(items));
      }
      case Functor::Tag::Bag: {
        Elem::BagEntries entries;
        int k = 1 + pick(2);
        for (int i = 0; i < k; ++i)
          entries.emplace_back(pool[pick(static_cast<int>(pool.size()))], 1 + pick(3));
        return Elem::bag(std::move(entries));
      }
      case Functor::Tag::Compose: {
        std::vector<Elem> mid;
        for (int i = 0; i < 2; ++i) mid.push_back(elem_over(f.right(), pool));
        return elem_over(f.left(), mid);
      }
      case Functor::Tag::Sum:
        return pick(2) ? Elem::inr(elem_over(f.right(), pool))
                       : Elem::inl(elem_over(f.left(), pool));
      case Functor::Tag::Product:
        return Elem::pair(elem_over(f.left(), pool), elem_over(f.right(), pool));
      case Functor::Tag::Exp: {
        Elem::MapEntries entries;
        for (const auto& d : f.symbols()) entries.emplace_back(d, elem_over(f.left(), pool));
        return Elem::exp_map(std::move(entries));
      }
      default:
        return Elem::top();
    }
  }

  nabla::Formula closed_formula(const nabla::Functor& f, int max_depth) {
    using nabla::Elem;
    int c = pick(max_depth > 0 ? 5 : 4);
    switch (c) {
      case 0:
        return pick(2) ? Elem::top() : Elem::bottom();
      case 1:
        return Elem::neg(closed_formula(f, max_depth));
      case 2:
      case 3: {
        std::vector<nabla::Formula> items;
        int k = pick(3);
        for (int i = 0; i < k; ++i) items.push_back(closed_formula(f, max_depth));
        return c == 2 ? Elem::conj(std::move(items)) : Elem::disj(std::move(items));
      }
      default: {
        std::vector<Elem> pool;
        for (int i = 0; i < 2; ++i) pool.push_back(closed_formula(f, max_depth - 1));
        return Elem::nabla(elem_over(f, pool));
      }
    }
  }

  nabla::Coalgebra coalgebra(const nabla::Functor& f, int n_states) {
    std::vector<nabla::Elem> states;
    for (int i = 0; i < n_states; ++i) states.push_back(nabla::Elem::atom("s" + std::to_string(i)));
    nabla::Carrier carrier(states);
    std::vector<nabla::Elem> values = nabla::enumerate(f, carrier);
    std::map<nabla::Elem, nabla::Elem> transition;
    for (const auto& s : carrier.members())
      transition.emplace(s, values[pick(static_cast<int>(values.size()))]);
    return nabla::make_coalgebra(f, carrier, std::move(transition));
  }
};

}  // namespace nabla_test
