// The universal value type. One immutable term language hosts both the
// elements of T X (sets, bags, distributions, tuples, injections, exponent
// maps, constant symbols, carrier atoms) and the formulas of the cover-modality
// language (~, /\, \/, nab). Formulas must live inside elements — a nabla
// argument is an element whose leaves are formulas — so a single recursive
// type avoids a mutually recursive pair.
//
// Values are canonical by construction: collections are sorted and
// duplicate-free under the structural total order `compare`, bags carry only
// positive counts, distributions only positive weights summing to one.
#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/numeric.hpp"

namespace nabla {

class Elem;

int compare(const Elem& a, const Elem& b);
std::string to_text(const Elem& e);

class Elem {
 public:
  enum class Kind : std::uint8_t {
    Atom,   // opaque carrier atom (state name, one-step variable, ...)
    Sym,    // constant-functor symbol
    Set,
    Bag,
    Dist,
    Pair,
    In,     // coproduct injection, tag 0 = inl, 1 = inr
    Map,    // exponent: total map from domain symbols to elements
    Neg,
    Conj,
    Disj,
    Nabla,
  };

  using BagEntries = std::vector<std::pair<Elem, Int>>;
  using DistEntries = std::vector<std::pair<Elem, Rat>>;
  using MapEntries = std::vector<std::pair<std::string, Elem>>;

  Elem() : Elem(atom("_")) {}

  static Elem atom(std::string name) {
    Node n(Kind::Atom);
    n.name = std::move(name);
    return Elem(std::move(n));
  }

  static Elem sym(std::string name) {
    Node n(Kind::Sym);
    n.name = std::move(name);
    return Elem(std::move(n));
  }

  static Elem set(std::vector<Elem> items) {
    Node n(Kind::Set);
    n.items = sorted_unique(std::move(items));
    return Elem(std::move(n));
  }

  static Elem bag(BagEntries entries) {
    Node n(Kind::Bag);
    n.bag = merge_bag(std::move(entries));
    return Elem(std::move(n));
  }

  static Elem dist(DistEntries entries) {
    Node n(Kind::Dist);
    n.dist = merge_dist(std::move(entries));
    Rat total;
    for (const auto& [k, w] : n.dist) total += w;
    if (total != 1) fail(ErrorKind::Type, "distribution weights must sum to 1, got " + total.get_str());
    return Elem(std::move(n));
  }

  static Elem pair(Elem a, Elem b) {
    Node n(Kind::Pair);
    n.items = {std::move(a), std::move(b)};
    return Elem(std::move(n));
  }

  // (e1,e2,...,ek) as a left-nested pair, mirroring left-associative products.
  static Elem tuple(std::vector<Elem> items) {
    if (items.size() < 2) fail(ErrorKind::Syntax, "tuple needs at least two components");
    Elem acc = items[0];
    for (std::size_t i = 1; i < items.size(); ++i) acc = pair(acc, items[i]);
    return acc;
  }

  static Elem inl(Elem e) { return injection(0, std::move(e)); }
  static Elem inr(Elem e) { return injection(1, std::move(e)); }

  static Elem injection(int tag, Elem e) {
    if (tag != 0 && tag != 1) fail(ErrorKind::Type, "injection tag must be 0 or 1");
    Node n(Kind::In);
    n.tag = tag;
    n.items = {std::move(e)};
    return Elem(std::move(n));
  }

  static Elem exp_map(MapEntries entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries.size(); ++i)
      if (entries[i].first == entries[i - 1].first)
        fail(ErrorKind::Type, "duplicate domain symbol '" + entries[i].first + "' in map");
    Node n(Kind::Map);
    n.map = std::move(entries);
    return Elem(std::move(n));
  }

  static Elem neg(Elem a) {
    Node n(Kind::Neg);
    n.items = {std::move(a)};
    return Elem(std::move(n));
  }

  static Elem conj(std::vector<Elem> items) {
    Node n(Kind::Conj);
    n.items = sorted_unique(std::move(items));
    return Elem(std::move(n));
  }

  static Elem disj(std::vector<Elem> items) {
    Node n(Kind::Disj);
    n.items = sorted_unique(std::move(items));
    return Elem(std::move(n));
  }

  static Elem nabla(Elem arg) {
    Node n(Kind::Nabla);
    n.items = {std::move(arg)};
    return Elem(std::move(n));
  }

  static Elem top() { return conj({}); }
  static Elem bottom() { return disj({}); }

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return kind() == k; }

  bool is_formula_node() const {
    Kind k = kind();
    return k == Kind::Neg || k == Kind::Conj || k == Kind::Disj || k == Kind::Nabla;
  }

  const std::string& name() const {
    require(is(Kind::Atom) || is(Kind::Sym), "name");
    return node_->name;
  }

  const std::vector<Elem>& items() const {
    require(is(Kind::Set) || is(Kind::Conj) || is(Kind::Disj), "items");
    return node_->items;
  }

  const Elem& first() const {
    require(is(Kind::Pair), "first");
    return node_->items[0];
  }

  const Elem& second() const {
    require(is(Kind::Pair), "second");
    return node_->items[1];
  }

  int tag() const {
    require(is(Kind::In), "tag");
    return node_->tag;
  }

  const Elem& inner() const {
    require(is(Kind::In) || is(Kind::Neg) || is(Kind::Nabla), "inner");
    return node_->items[0];
  }

  const BagEntries& bag_entries() const {
    require(is(Kind::Bag), "bag_entries");
    return node_->bag;
  }

  const DistEntries& dist_entries() const {
    require(is(Kind::Dist), "dist_entries");
    return node_->dist;
  }

  const MapEntries& map_entries() const {
    require(is(Kind::Map), "map_entries");
    return node_->map;
  }

  friend int compare(const Elem& a, const Elem& b);

  bool operator==(const Elem& o) const { return compare(*this, o) == 0; }
  bool operator!=(const Elem& o) const { return compare(*this, o) != 0; }
  bool operator<(const Elem& o) const { return compare(*this, o) < 0; }

 private:
  void require(bool ok, const char* accessor) const {
    if (!ok)
      fail(ErrorKind::Type,
           std::string(accessor) + " applied to a value of the wrong shape: " + to_text(*this));
  }

  struct Node {
    explicit Node(Kind k) : kind(k) {}
    Kind kind;
    int tag = 0;
    std::string name;
    std::vector<Elem> items;
    BagEntries bag;
    DistEntries dist;
    MapEntries map;
  };

  explicit Elem(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  static std::vector<Elem> sorted_unique(std::vector<Elem> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    return items;
  }

  static BagEntries merge_bag(BagEntries entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    BagEntries out;
    for (auto& [key, count] : entries) {
      if (count <= 0) fail(ErrorKind::Type, "bag count must be positive");
      if (!out.empty() && out.back().first == key)
        out.back().second += count;
      else
        out.emplace_back(std::move(key), std::move(count));
    }
    return out;
  }

  static DistEntries merge_dist(DistEntries entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    DistEntries out;
    for (auto& [key, w] : entries) {
      if (w <= 0) fail(ErrorKind::Type, "distribution weight must be positive");
      if (!out.empty() && out.back().first == key)
        out.back().second += w;
      else
        out.emplace_back(std::move(key), std::move(w));
    }
    return out;
  }

  std::shared_ptr<const Node> node_;
};

namespace detail {

// Shorter collections precede longer ones; equal lengths compare pointwise.
// This makes the power set enumeration {} {a} {b} {a,b} strictly increasing.
inline int compare_items(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (int c = compare(a[i], b[i])) return c;
  return 0;
}

template <typename Num>
int compare_keyed(const std::vector<std::pair<Elem, Num>>& a,
                  const std::vector<std::pair<Elem, Num>>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (int c = compare(a[i].first, b[i].first)) return c;
    if (int c = cmp3(a[i].second, b[i].second)) return c;
  }
  return 0;
}

}  // namespace detail

inline int compare(const Elem& a, const Elem& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Elem::Kind::Atom:
    case Elem::Kind::Sym:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Elem::Kind::Set:
    case Elem::Kind::Conj:
    case Elem::Kind::Disj:
      return detail::compare_items(a.items(), b.items());
    case Elem::Kind::Bag:
      return detail::compare_keyed(a.bag_entries(), b.bag_entries());
    case Elem::Kind::Dist:
      return detail::compare_keyed(a.dist_entries(), b.dist_entries());
    case Elem::Kind::Pair:
      if (int c = compare(a.first(), b.first())) return c;
      return compare(a.second(), b.second());
    case Elem::Kind::In:
      if (a.tag() != b.tag()) return a.tag() < b.tag() ? -1 : 1;
      return compare(a.inner(), b.inner());
    case Elem::Kind::Map: {
      const auto& ma = a.map_entries();
      const auto& mb = b.map_entries();
      if (ma.size() != mb.size()) return ma.size() < mb.size() ? -1 : 1;
      for (std::size_t i = 0; i < ma.size(); ++i) {
        if (int c = ma[i].first.compare(mb[i].first)) return c < 0 ? -1 : 1;
        if (int c = compare(ma[i].second, mb[i].second)) return c;
      }
      return 0;
    }
    case Elem::Kind::Neg:
    case Elem::Kind::Nabla:
      return compare(a.inner(), b.inner());
  }
  return 0;  // unreachable
}

namespace detail {

inline void print_elem(std::string& out, const Elem& e);

inline void print_list(std::string& out, const std::vector<Elem>& items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    print_elem(out, items[i]);
  }
}

inline void print_elem(std::string& out, const Elem& e) {
  switch (e.kind()) {
    case Elem::Kind::Atom:
      out += e.name();
      return;
    case Elem::Kind::Sym:
      out += '\'';
      out += e.name();
      return;
    case Elem::Kind::Set:
      out += '{';
      print_list(out, e.items());
      out += '}';
      return;
    case Elem::Kind::Bag: {
      out += "bag{";
      bool first = true;
      for (const auto& [k, c] : e.bag_entries()) {
        if (!first) out += ',';
        first = false;
        print_elem(out, k);
        out += ':';
        out += to_text(c);
      }
      out += '}';
      return;
    }
    case Elem::Kind::Dist: {
      out += "dist{";
      bool first = true;
      for (const auto& [k, w] : e.dist_entries()) {
        if (!first) out += ',';
        first = false;
        print_elem(out, k);
        out += ':';
        out += to_text(w);
      }
      out += '}';
      return;
    }
    case Elem::Kind::Pair: {
      // Flatten the left spine so left-nested pairs print as tuples.
      std::vector<Elem> spine;
      Elem cur = e;
      while (cur.is(Elem::Kind::Pair)) {
        spine.push_back(cur.second());
        cur = cur.first();
      }
      spine.push_back(cur);
      std::reverse(spine.begin(), spine.end());
      out += '(';
      print_list(out, spine);
      out += ')';
      return;
    }
    case Elem::Kind::In:
      out += e.tag() == 0 ? "inl(" : "inr(";
      print_elem(out, e.inner());
      out += ')';
      return;
    case Elem::Kind::Map: {
      out += '[';
      bool first = true;
      for (const auto& [d, v] : e.map_entries()) {
        if (!first) out += ',';
        first = false;
        out += d;
        out += ':';
        print_elem(out, v);
      }
      out += ']';
      return;
    }
    case Elem::Kind::Neg:
      out += '~';
      print_elem(out, e.inner());
      return;
    case Elem::Kind::Conj:
      if (e.items().empty()) {
        out += 'T';
      } else {
        out += "/\\{";
        print_list(out, e.items());
        out += '}';
      }
      return;
    case Elem::Kind::Disj:
      if (e.items().empty()) {
        out += 'F';
      } else {
        out += "\\/{";
        print_list(out, e.items());
        out += '}';
      }
      return;
    case Elem::Kind::Nabla:
      out += "nab ";
      print_elem(out, e.inner());
      return;
  }
}

}  // namespace detail

inline std::string to_text(const Elem& e) {
  std::string out;
  detail::print_elem(out, e);
  return out;
}

// Formulas are elements built from Neg/Conj/Disj/Nabla; any other node in a
// formula position is a depth-0 variable leaf (used by one-step contexts).
using Formula = Elem;

// An ordered duplicate-free finite set of elements, used as the set X that
// functors act on.
class Carrier {
 public:
  Carrier() = default;

  explicit Carrier(std::vector<Elem> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  static Carrier atoms(std::initializer_list<std::string> names) {
    std::vector<Elem> ms;
    for (const auto& n : names) ms.push_back(Elem::atom(n));
    return Carrier(std::move(ms));
  }

  const std::vector<Elem>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(const Elem& e) const {
    return std::binary_search(members_.begin(), members_.end(), e);
  }

  bool operator==(const Carrier& o) const { return members_ == o.members_; }

 private:
  std::vector<Elem> members_;
};

}  // namespace nabla
