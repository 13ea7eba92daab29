// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails. Everything is exact arithmetic and
// desk-scale exhaustive or seeded-random checking against independent
// oracles (exhaustive searches, closed forms, brute-force Kripke semantics).
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nabla/nabla.hpp"

using namespace nabla;

namespace {

Elem A(const std::string& n) { return Elem::atom(n); }

Elem elem_random(const Functor& f, const std::vector<Elem>& pool);
Elem elem_random_seeded(const Functor& f, const std::vector<Elem>& pool, std::mt19937& rng);
Formula formula_random(const Functor& f, int max_depth, std::mt19937& rng);

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;  // 0 = no explicit bound
  std::function<bool(std::string&)> body;
};

// ---------------------------------------------------------------- helpers

std::vector<Carrier> carriers_up_to(int max_size, const std::string& prefix) {
  std::vector<Carrier> out;
  for (int n = 0; n <= max_size; ++n) {
    std::vector<Elem> atoms;
    for (int i = 0; i < n; ++i) atoms.push_back(A(prefix + std::to_string(i)));
    out.emplace_back(std::move(atoms));
  }
  return out;
}

std::vector<std::vector<std::pair<Elem, Elem>>> all_pair_sets(const Carrier& x,
                                                              const Carrier& y) {
  std::vector<std::pair<Elem, Elem>> univ;
  for (const auto& a : x.members())
    for (const auto& b : y.members()) univ.emplace_back(a, b);
  std::vector<std::vector<std::pair<Elem, Elem>>> out;
  for (unsigned mask = 0; mask < (1u << univ.size()); ++mask) {
    std::vector<std::pair<Elem, Elem>> ps;
    for (unsigned i = 0; i < univ.size(); ++i)
      if (mask & (1u << i)) ps.push_back(univ[i]);
    out.push_back(std::move(ps));
  }
  return out;
}

const std::vector<std::string> kCriterion1Functors = {"P", "Const(c)*Id*Id", "P . P",
                                                      "Id + Const(c)", "P ^ (d1,d2)"};

// --------------------------------------------------- 1: lifting functoriality

bool criterion_functoriality(std::string& detail) {
  Budget budget(200000000);
  for (const auto& fs : kCriterion1Functors) {
    Functor f = parse_functor(fs);
    auto xs = carriers_up_to(2, "x");
    auto ys = carriers_up_to(2, "y");
    auto zs = carriers_up_to(2, "z");
    for (const auto& x : xs)
      for (const auto& y : ys)
        for (const auto& z : zs) {
          std::vector<Elem> ex = enumerate(f, x, budget);
          std::vector<Elem> ey = enumerate(f, y, budget);
          std::vector<Elem> ez = enumerate(f, z, budget);
          auto lift_matrix = [&](const Relation& r, const std::vector<Elem>& from,
                                 const std::vector<Elem>& to) {
            std::vector<std::vector<bool>> m(from.size(),
                                             std::vector<bool>(to.size(), false));
            for (std::size_t i = 0; i < from.size(); ++i)
              for (std::size_t j = 0; j < to.size(); ++j)
                m[i][j] = in_lifting(f, r, from[i], to[j]);
            return m;
          };
          std::vector<std::vector<std::vector<bool>>> r_mats, q_mats;
          auto r_sets = all_pair_sets(x, y);
          auto q_sets = all_pair_sets(y, z);
          for (const auto& ps : r_sets) r_mats.push_back(lift_matrix(Relation(x, y, ps), ex, ey));
          for (const auto& ps : q_sets) q_mats.push_back(lift_matrix(Relation(y, z, ps), ey, ez));
          std::map<std::vector<std::pair<Elem, Elem>>, std::vector<std::vector<bool>>>
              composed_cache;
          for (std::size_t ri = 0; ri < r_sets.size(); ++ri)
            for (std::size_t qi = 0; qi < q_sets.size(); ++qi) {
              Relation composed = compose_relations(Relation(x, y, r_sets[ri]),
                                                    Relation(y, z, q_sets[qi]));
              auto it = composed_cache.find(composed.pairs());
              if (it == composed_cache.end())
                it = composed_cache.emplace(composed.pairs(), lift_matrix(composed, ex, ez))
                         .first;
              const auto& lhs = it->second;
              for (std::size_t i = 0; i < ex.size(); ++i)
                for (std::size_t k = 0; k < ez.size(); ++k) {
                  bool rhs = false;
                  for (std::size_t j = 0; j < ey.size() && !rhs; ++j)
                    rhs = r_mats[ri][i][j] && q_mats[qi][j][k];
                  if (lhs[i][k] != rhs) {
                    detail = fs + ": lifting not functorial at |X|,|Y|,|Z| = " +
                             std::to_string(x.size()) + "," + std::to_string(y.size()) + "," +
                             std::to_string(z.size());
                    return false;
                  }
                }
            }
        }
  }
  return true;
}

// ------------------------------------------------------ 2: SRD closed forms

bool criterion_srd_closed_forms(std::string& detail) {
  Budget budget(200000000);
  // binary trees Const(c,d)*Id*Id over three atoms
  {
    Functor f = parse_functor("Const(c,d)*Id*Id");
    std::vector<std::string> atoms = {"x1", "x2", "x3"};
    std::vector<Elem> elems;
    for (const char* c : {"c", "d"})
      for (const auto& y : atoms)
        for (const auto& z : atoms)
          elems.push_back(Elem::pair(Elem::pair(Elem::sym(c), A(y)), A(z)));
    std::vector<std::vector<Elem>> families = {{}};
    for (std::size_t i = 0; i < elems.size(); ++i) {
      families.push_back({elems[i]});
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        families.push_back({elems[i], elems[j]});
        for (std::size_t k = j + 1; k < elems.size(); ++k)
          families.push_back({elems[i], elems[j], elems[k]});
      }
    }
    for (const auto& a_set : families) {
      // closed form per the three cases
      std::vector<Elem> expected;
      if (a_set.empty()) {
        for (const char* c : {"c", "d"})
          expected.push_back(Elem::pair(Elem::pair(Elem::sym(c), Elem::set({})), Elem::set({})));
      } else {
        std::set<Elem> labels;
        std::set<Elem> pi1, pi2;
        for (const auto& e : a_set) {
          labels.insert(e.first().first());
          pi1.insert(e.first().second());
          pi2.insert(e.second());
        }
        if (labels.size() == 1) {
          std::vector<Elem> all;
          for (const auto& e : pi1) all.push_back(e);
          for (const auto& e : pi2) all.push_back(e);
          std::sort(all.begin(), all.end());
          all.erase(std::unique(all.begin(), all.end()), all.end());
          // every S between pi_j[A] and pi1[A] u pi2[A]
          std::vector<Elem> extra;
          for (const auto& e : all)
            if (!pi1.count(e) || !pi2.count(e)) extra.push_back(e);
          auto supersets = [&](const std::set<Elem>& lower) {
            std::vector<Elem> opt;
            for (const auto& e : all)
              if (!lower.count(e)) opt.push_back(e);
            std::vector<Elem> sets;
            for (unsigned mask = 0; mask < (1u << opt.size()); ++mask) {
              std::vector<Elem> items(lower.begin(), lower.end());
              for (unsigned i = 0; i < opt.size(); ++i)
                if (mask & (1u << i)) items.push_back(opt[i]);
              sets.push_back(Elem::set(std::move(items)));
            }
            return sets;
          };
          for (const auto& s1 : supersets(pi1))
            for (const auto& s2 : supersets(pi2))
              expected.push_back(Elem::pair(Elem::pair(*labels.begin(), s1), s2));
        }
      }
      std::sort(expected.begin(), expected.end());
      expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
      if (slim_redistributions(f, a_set, budget) != expected) {
        detail = "binary-tree closed form mismatch, |A|=" + std::to_string(a_set.size());
        return false;
      }
    }
  }
  // power set over three atoms
  {
    Functor f = Functor::pow();
    Carrier x({A("x1"), A("x2"), A("x3")});
    std::vector<Elem> subsets = enumerate(f, x, budget);
    std::vector<std::vector<Elem>> families = {{}};
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      families.push_back({subsets[i]});
      for (std::size_t j = i + 1; j < subsets.size(); ++j) {
        families.push_back({subsets[i], subsets[j]});
        for (std::size_t k = j + 1; k < subsets.size(); ++k)
          families.push_back({subsets[i], subsets[j], subsets[k]});
      }
    }
    for (const auto& a_set : families) {
      std::vector<Elem> union_items;
      for (const auto& alpha : a_set)
        for (const auto& m : alpha.items()) union_items.push_back(m);
      Elem union_a = Elem::set(union_items);
      std::vector<Elem> expected;
      Budget b2(200000000);
      for (const auto& phi :
           enumerate(f, Carrier(detail::subsets_shortlex(union_a.items(), b2)), b2)) {
        std::vector<Elem> union_phi;
        for (const auto& s : phi.items())
          for (const auto& m : s.items()) union_phi.push_back(m);
        if (Elem::set(union_phi) != union_a) continue;
        bool ok = true;
        for (const auto& alpha : a_set) {
          for (const auto& beta : phi.items()) {
            bool meets = false;
            for (const auto& m : beta.items())
              if (std::binary_search(alpha.items().begin(), alpha.items().end(), m))
                meets = true;
            if (!meets) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (ok) expected.push_back(phi);
      }
      std::sort(expected.begin(), expected.end());
      if (slim_redistributions(f, a_set, budget) != expected) {
        detail = "power set closed form mismatch, |A|=" + std::to_string(a_set.size());
        return false;
      }
    }
  }
  return true;
}

// ------------------------------------------------------- 3: modal battery

// A tiny classical modal syntax plus the cover modality, with a brute-force
// Kripke semantics entirely independent of the library.
struct Modal {
  enum class Kind { Letter, Not, And, Or, Box, Dia, Cover };
  Kind kind;
  std::string letter;
  std::vector<Modal> children;

  static Modal lit(std::string p) { return {Kind::Letter, std::move(p), {}}; }
  static Modal mk(Kind k, std::vector<Modal> cs) { return {k, "", std::move(cs)}; }
};

struct KripkeModel {
  int n;
  std::vector<std::vector<bool>> edge;          // n x n
  std::vector<std::set<std::string>> valuation; // per state
};

bool kripke_eval(const KripkeModel& m, int s, const Modal& a) {
  switch (a.kind) {
    case Modal::Kind::Letter:
      return m.valuation[s].count(a.letter) > 0;
    case Modal::Kind::Not:
      return !kripke_eval(m, s, a.children[0]);
    case Modal::Kind::And:
      for (const auto& c : a.children)
        if (!kripke_eval(m, s, c)) return false;
      return true;
    case Modal::Kind::Or:
      for (const auto& c : a.children)
        if (kripke_eval(m, s, c)) return true;
      return false;
    case Modal::Kind::Box:
      for (int t = 0; t < m.n; ++t)
        if (m.edge[s][t] && !kripke_eval(m, t, a.children[0])) return false;
      return true;
    case Modal::Kind::Dia:
      for (int t = 0; t < m.n; ++t)
        if (m.edge[s][t] && kripke_eval(m, t, a.children[0])) return true;
      return false;
    case Modal::Kind::Cover: {
      // successors and the argument formulas cover each other
      for (const auto& c : a.children) {
        bool hit = false;
        for (int t = 0; t < m.n && !hit; ++t) hit = m.edge[s][t] && kripke_eval(m, t, c);
        if (!hit) return false;
      }
      for (int t = 0; t < m.n; ++t) {
        if (!m.edge[s][t]) continue;
        bool hit = false;
        for (const auto& c : a.children)
          if (kripke_eval(m, t, c)) {
            hit = true;
            break;
          }
        if (!hit) return false;
      }
      return true;
    }
  }
  return false;
}

// brute force over all Kripke models with up to max_states states
bool kripke_valid(const Modal& a, const Modal& b, int max_states,
                  const std::vector<std::string>& letters) {
  for (int n = 1; n <= max_states; ++n) {
    int edges = n * n;
    int vals = 1 << letters.size();
    std::vector<int> val_odo(n, 0);
    for (long emask = 0; emask < (1L << edges); ++emask) {
      KripkeModel m;
      m.n = n;
      m.edge.assign(n, std::vector<bool>(n, false));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (emask & (1L << (i * n + j))) m.edge[i][j] = true;
      std::fill(val_odo.begin(), val_odo.end(), 0);
      while (true) {
        m.valuation.assign(n, {});
        for (int s = 0; s < n; ++s)
          for (std::size_t k = 0; k < letters.size(); ++k)
            if (val_odo[s] & (1 << k)) m.valuation[s].insert(letters[k]);
        for (int s = 0; s < n; ++s)
          if (kripke_eval(m, s, a) && !kripke_eval(m, s, b)) return false;
        int i = n;
        while (i > 0) {
          if (++val_odo[i - 1] < vals) break;
          val_odo[i - 1] = 0;
          --i;
        }
        if (i == 0) break;
      }
    }
  }
  return true;
}

Formula to_nabla(const Modal& a, const PropEnv& env) {
  switch (a.kind) {
    case Modal::Kind::Letter:
      return env.letter(a.letter, 0);
    case Modal::Kind::Not:
      return Elem::neg(to_nabla(a.children[0], env));
    case Modal::Kind::And: {
      std::vector<Formula> cs;
      for (const auto& c : a.children) cs.push_back(to_nabla(c, env));
      return Elem::conj(std::move(cs));
    }
    case Modal::Kind::Or: {
      std::vector<Formula> cs;
      for (const auto& c : a.children) cs.push_back(to_nabla(c, env));
      return Elem::disj(std::move(cs));
    }
    case Modal::Kind::Box:
      return env.box(to_nabla(a.children[0], env), 0);
    case Modal::Kind::Dia:
      return env.dia(to_nabla(a.children[0], env), 0);
    case Modal::Kind::Cover: {
      std::vector<Elem> cs;
      for (const auto& c : a.children) cs.push_back(to_nabla(c, env));
      return env.lift_nabla(Elem::set(std::move(cs)), 0);
    }
  }
  return Elem::top();
}

bool criterion_modal_battery(std::string& detail) {
  using K = Modal::Kind;
  Modal p = Modal::lit("p");
  Modal q = Modal::lit("q");
  struct Case {
    std::string name;
    std::vector<std::string> letters;
    Modal lhs, rhs;
    bool expect_valid;
    bool both_directions;
  };
  std::vector<Case> cases;
  // nabla decomposed через box/dia for alpha in {{}, {p}, {p,q}}
  cases.push_back({"nab {} = box bottom", {"p"},
                   Modal::mk(K::Cover, {}),
                   Modal::mk(K::And, {Modal::mk(K::Box, {Modal::mk(K::Or, {})})}), true, true});
  cases.push_back({"nab {p} = box p and dia p", {"p"},
                   Modal::mk(K::Cover, {p}),
                   Modal::mk(K::And, {Modal::mk(K::Box, {Modal::mk(K::Or, {p})}),
                                      Modal::mk(K::Dia, {p})}),
                   true, true});
  cases.push_back({"nab {p,q} decomposition", {"p", "q"},
                   Modal::mk(K::Cover, {p, q}),
                   Modal::mk(K::And, {Modal::mk(K::Box, {Modal::mk(K::Or, {p, q})}),
                                      Modal::mk(K::Dia, {p}), Modal::mk(K::Dia, {q})}),
                   true, true});
  cases.push_back({"dia distributes over or", {"p", "q"},
                   Modal::mk(K::Dia, {Modal::mk(K::Or, {p, q})}),
                   Modal::mk(K::Or, {Modal::mk(K::Dia, {p}), Modal::mk(K::Dia, {q})}), true,
                   true});
  cases.push_back({"box distributes over and", {"p", "q"},
                   Modal::mk(K::Box, {Modal::mk(K::And, {p, q})}),
                   Modal::mk(K::And, {Modal::mk(K::Box, {p}), Modal::mk(K::Box, {q})}), true,
                   true});
  cases.push_back({"K axiom", {"p", "q"},
                   Modal::mk(K::And, {Modal::mk(K::Box, {Modal::mk(K::Or, {Modal::mk(K::Not, {p}), q})}),
                                      Modal::mk(K::Box, {p})}),
                   Modal::mk(K::Box, {q}), true, false});
  cases.push_back({"dia p below box p", {"p"}, Modal::mk(K::Dia, {p}),
                   Modal::mk(K::Box, {p}), false, false});

  for (const auto& c : cases) {
    auto started = std::chrono::steady_clock::now();
    Budget budget(200000000);
    PropEnv env = PropEnv::wrap(Functor::pow(), c.letters, budget);
    Formula lhs = to_nabla(c.lhs, env);
    Formula rhs = to_nabla(c.rhs, env);
    ValidityResult forward = decide_valid(env.wrapped(), lhs, rhs, budget);
    bool verdict = forward.valid;
    if (verdict && c.both_directions)
      verdict = decide_valid(env.wrapped(), rhs, lhs, budget).valid;
    if (verdict != c.expect_valid) {
      detail = c.name + ": verdict " + (verdict ? "VALID" : "INVALID");
      return false;
    }
    // corroborate with the independent Kripke brute force
    bool brute = kripke_valid(c.lhs, c.rhs, 3, c.letters);
    if (c.both_directions && brute) brute = kripke_valid(c.rhs, c.lhs, 3, c.letters);
    if (brute != c.expect_valid) {
      detail = c.name + ": brute-force oracle disagrees";
      return false;
    }
    if (!c.expect_valid) {
      const Countermodel& cm = *forward.countermodel;
      if (cm.model.states.size() > 4) {
        detail = c.name + ": countermodel has " + std::to_string(cm.model.states.size()) +
                 " states";
        return false;
      }
      if (!model_check(cm.model, cm.witness, cm.satisfied) ||
          model_check(cm.model, cm.witness, cm.refuted)) {
        detail = c.name + ": extracted countermodel fails to witness";
        return false;
      }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (secs > 30) {
      detail = c.name + " took " + std::to_string(secs) + "s (limit 30)";
      return false;
    }
  }
  return true;
}

// ----------------------------------------------------------- 4: atomicity

bool criterion_atomicity(std::string& detail) {
  Budget budget(200000000);
  std::mt19937 rng(20260808);
  auto pick = [&rng](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  for (const auto& fs : {"P", "Const(c)*Id", "Const(c)*Id*Id"}) {
    Functor f = parse_functor(fs);
    for (int n = 1; n <= 3; ++n) {
      std::vector<Elem> atoms;
      for (int i = 0; i < n; ++i) atoms.push_back(A("x" + std::to_string(i)));
      Carrier x(atoms);
      std::vector<Elem> blocks;
      for (const auto& m : x.members()) blocks.push_back(Elem::set({m}));
      auto cells = lifted_atoms(f, blocks, x, budget);
      std::vector<Elem> covered;
      for (const auto& [alpha, cell] : cells)
        for (const auto& e : cell) covered.push_back(e);
      std::sort(covered.begin(), covered.end());
      if (std::adjacent_find(covered.begin(), covered.end()) != covered.end()) {
        detail = std::string(fs) + ": cells overlap";
        return false;
      }
      if (covered != enumerate(f, x, budget)) {
        detail = std::string(fs) + ": cells do not cover T X";
        return false;
      }
      // 200 random depth-1 formulas are unions of whole cells
      OneStepContext ctx(x, blocks);
      std::function<Formula(int)> gen1 = [&](int depth_left) -> Formula {
        int c = pick(4);
        if (depth_left == 0 || c == 0) {
          std::vector<Elem> pool = {blocks[pick(static_cast<int>(blocks.size()))],
                                    blocks[pick(static_cast<int>(blocks.size()))]};
          return Elem::nabla(elem_random(f, pool));
        }
        if (c == 1) return Elem::neg(gen1(depth_left - 1));
        std::vector<Formula> items;
        int k = 1 + pick(2);
        for (int j = 0; j < k; ++j) items.push_back(gen1(depth_left - 1));
        return c == 2 ? Elem::conj(std::move(items)) : Elem::disj(std::move(items));
      };
      for (int i = 0; i < 200; ++i) {
        Formula a1 = gen1(2);
        std::vector<Elem> meaning = one_step_eval1(f, ctx, a1, budget);
        for (const auto& [alpha, cell] : cells) {
          bool any = false, all = true;
          for (const auto& e : cell) {
            bool in = std::binary_search(meaning.begin(), meaning.end(), e);
            any = any || in;
            all = all && in;
          }
          if (any && !all) {
            detail = std::string(fs) + ": meaning cuts a cell: " + to_text(a1);
            return false;
          }
        }
      }
    }
  }
  return true;
}

// ------------------------------------------------------- 5: negation dual

bool criterion_negation_dual(std::string& detail) {
  Budget budget(200000000);
  std::mt19937 rng(97);
  auto pick = [&rng](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  for (const auto& fs : {"P", "Const(c)*Id*Id"}) {
    Functor f = parse_functor(fs);
    Carrier x({A("x0"), A("x1"), A("x2")});
    std::vector<Elem> vars = {Elem::set({A("x0")}), Elem::set({A("x0"), A("x1")}),
                              Elem::set({A("x2")}), Elem::set({})};
    OneStepContext ctx(x, vars);
    std::vector<Elem> all = enumerate(f, x, budget);
    for (int i = 0; i < 100; ++i) {
      std::vector<Elem> pool = {vars[pick(static_cast<int>(vars.size()))],
                                vars[pick(static_cast<int>(vars.size()))]};
      Elem alpha = elem_random_seeded(f, pool, rng);
      std::vector<Elem> meaning = one_step_eval1(f, ctx, Elem::nabla(alpha), budget);
      std::vector<Elem> dual_union;
      for (const auto& beta : neg_dual(f, alpha, budget))
        for (const auto& e : one_step_eval1(f, ctx, Elem::nabla(beta), budget))
          dual_union.push_back(e);
      std::sort(dual_union.begin(), dual_union.end());
      dual_union.erase(std::unique(dual_union.begin(), dual_union.end()), dual_union.end());
      std::vector<Elem> complement;
      for (const auto& e : all)
        if (!std::binary_search(meaning.begin(), meaning.end(), e)) complement.push_back(e);
      if (dual_union != complement) {
        detail = std::string(fs) + ": dual mismatch for " + to_text(alpha);
        return false;
      }
    }
  }
  return true;
}

// ------------------------------------------------------------ 6: adequacy

bool criterion_adequacy(std::string& detail) {
  std::mt19937 rng(20251231);
  auto pick = [&rng](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  std::vector<Functor> functors = {parse_functor("P"), parse_functor("Const(c)*Id*Id"),
                                   parse_functor("Id + Const(c)")};
  int checked = 0;
  int attempts = 0;
  while (checked < 200 && attempts < 2000) {
    ++attempts;
    const Functor& f = functors[pick(static_cast<int>(functors.size()))];
    // random target, then an unfolded source with a surjection onto it
    int target_states = 1 + pick(3);
    std::vector<Elem> t_atoms;
    for (int i = 0; i < target_states; ++i) t_atoms.push_back(A("t" + std::to_string(i)));
    Carrier t_carrier(t_atoms);
    std::vector<Elem> t_values = enumerate(f, t_carrier);
    std::map<Elem, Elem> t_transition;
    for (const auto& s : t_carrier.members())
      t_transition.emplace(s, t_values[pick(static_cast<int>(t_values.size()))]);
    Coalgebra target = make_coalgebra(f, t_carrier, std::move(t_transition));

    int source_states = std::min(4, target_states + pick(2));
    std::vector<Elem> s_atoms;
    for (int i = 0; i < source_states; ++i) s_atoms.push_back(A("s" + std::to_string(i)));
    Carrier s_carrier(s_atoms);
    std::map<Elem, Elem> fn;
    const auto& ts = t_carrier.members();
    for (int i = 0; i < source_states; ++i)
      fn.emplace(s_atoms[i], i < target_states ? ts[i] : ts[pick(target_states)]);
    if (source_states < target_states) continue;  // not surjective
    std::vector<Elem> s_values = enumerate(f, s_carrier);
    std::map<Elem, Elem> s_transition;
    bool ok = true;
    for (const auto& xx : s_carrier.members()) {
      std::vector<Elem> candidates;
      for (const auto& v : s_values)
        if (fmap(f, fn, v) == target.step(fn.at(xx))) candidates.push_back(v);
      if (candidates.empty()) {
        ok = false;
        break;
      }
      s_transition.emplace(xx, candidates[pick(static_cast<int>(candidates.size()))]);
    }
    if (!ok) continue;
    Coalgebra source = make_coalgebra(f, s_carrier, std::move(s_transition));
    if (!is_coalgebra_morphism(source, target, fn)) {
      detail = "constructed map is not a morphism";
      return false;
    }
    Formula a = formula_random(f, 2, rng);
    for (const auto& xx : source.states.members())
      if (model_check(source, xx, a) != model_check(target, fn.at(xx), a)) {
        detail = f.text() + ": truth not invariant under morphism for " + to_text(a);
        return false;
      }
    ++checked;
  }
  if (checked < 200) {
    detail = "only built " + std::to_string(checked) + " morphism instances";
    return false;
  }
  return true;
}

// -------------------------------------------------------- 7: stratification

bool criterion_stratification(std::string& detail) {
  std::mt19937 rng(555);
  auto pick = [&rng](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  std::vector<Functor> functors = {parse_functor("P"), parse_functor("Const(c)*Id*Id"),
                                   parse_functor("Id + Const(c)")};
  for (int i = 0; i < 100; ++i) {
    const Functor& f = functors[pick(static_cast<int>(functors.size()))];
    Budget budget(200000000);
    // random coalgebra with up to 4 states
    int n_states = 1 + pick(4);
    std::vector<Elem> atoms;
    for (int s = 0; s < n_states; ++s) atoms.push_back(A("s" + std::to_string(s)));
    Carrier carrier(atoms);
    std::vector<Elem> values = enumerate(f, carrier, budget);
    std::map<Elem, Elem> transition;
    for (const auto& s : carrier.members())
      transition.emplace(s, values[pick(static_cast<int>(values.size()))]);
    Coalgebra m = make_coalgebra(f, carrier, std::move(transition));

    Formula a = formula_random(f, 2, rng);
    int n = depth(f, a);
    std::vector<Elem> stratified = mng_at(f, a, n, budget);
    auto xi = behavior_map(m, n);
    std::vector<Elem> expected;
    for (const auto& s : m.states.members())
      if (std::binary_search(stratified.begin(), stratified.end(), xi.at(s)))
        expected.push_back(s);
    if (meaning_set(m, a) != expected) {
      detail = f.text() + ": meaning_set differs from behavior-map preimage for " + to_text(a);
      return false;
    }
    Coalgebra zn = n_final_coalgebra(f, n, budget);
    if (meaning_set(zn, a) != stratified) {
      detail = f.text() + ": Z_n model checking differs from mng_n for " + to_text(a);
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------- 8: monad unit law

bool criterion_monad_unit(std::string& detail) {
  Budget budget(200000000);
  for (const auto& fs : kCriterion1Functors) {
    Functor f = parse_functor(fs);
    for (int n = 0; n <= 2; ++n) {
      std::vector<Elem> atoms;
      for (int i = 0; i < n; ++i) atoms.push_back(A("x" + std::to_string(i)));
      Carrier x(atoms);
      for (const auto& alpha : enumerate(f, x, budget)) {
        Elem phi = fmap(f, [](const Elem& v) { return Elem::set({v}); }, alpha);
        if (lifted_members(f, x, phi, budget) != std::vector<Elem>{alpha}) {
          detail = fs + ": singleton lift of " + to_text(alpha) + " has wrong members";
          return false;
        }
      }
    }
  }
  return true;
}

// ------------------------------------------ 9: bag lifting solver vs oracle

bool rho_search(const std::vector<std::pair<int, int>>& edges, std::vector<long>& row_rem,
                std::vector<long>& col_rem, std::size_t idx) {
  if (idx == edges.size()) {
    for (long r : row_rem)
      if (r != 0) return false;
    for (long c : col_rem)
      if (c != 0) return false;
    return true;
  }
  auto [i, j] = edges[idx];
  long max_here = std::min(row_rem[i], col_rem[j]);
  for (long v = 0; v <= max_here; ++v) {
    row_rem[i] -= v;
    col_rem[j] -= v;
    bool ok = rho_search(edges, row_rem, col_rem, idx + 1);
    row_rem[i] += v;
    col_rem[j] += v;
    if (ok) return true;
  }
  return false;
}

bool criterion_bag_oracle(std::string& detail) {
  Functor bf = Functor::bag();
  std::vector<Elem> left_atoms = {A("a"), A("b"), A("c")};
  std::vector<Elem> right_atoms = {A("u"), A("v"), A("w")};
  Carrier x(left_atoms), y(right_atoms);
  // all bags with total count <= 4 over three atoms
  auto bags_over = [](const std::vector<Elem>& atoms) {
    std::vector<Elem> out;
    for (int c0 = 0; c0 <= 4; ++c0)
      for (int c1 = 0; c1 + c0 <= 4; ++c1)
        for (int c2 = 0; c2 + c1 + c0 <= 4; ++c2) {
          Elem::BagEntries entries;
          if (c0) entries.emplace_back(atoms[0], c0);
          if (c1) entries.emplace_back(atoms[1], c1);
          if (c2) entries.emplace_back(atoms[2], c2);
          out.push_back(Elem::bag(std::move(entries)));
        }
    return out;
  };
  std::vector<Elem> lefts = bags_over(left_atoms);
  std::vector<Elem> rights = bags_over(right_atoms);
  for (unsigned mask = 0; mask < 512; ++mask) {
    std::vector<std::pair<Elem, Elem>> pairs;
    for (unsigned i = 0; i < 9; ++i)
      if (mask & (1u << i)) pairs.emplace_back(left_atoms[i / 3], right_atoms[i % 3]);
    Relation r(x, y, pairs);
    for (const auto& l : lefts)
      for (const auto& rr : rights) {
        bool solver = in_lifting(bf, r, l, rr);
        // independent exhaustive search
        std::vector<long> rows, cols;
        for (const auto& [k, c] : l.bag_entries()) rows.push_back(c.get_si());
        for (const auto& [k, c] : rr.bag_entries()) cols.push_back(c.get_si());
        std::vector<std::pair<int, int>> edges;
        const auto& ls = l.bag_entries();
        const auto& rs = rr.bag_entries();
        for (int i = 0; i < static_cast<int>(ls.size()); ++i)
          for (int j = 0; j < static_cast<int>(rs.size()); ++j)
            if (r.contains(ls[i].first, rs[j].first)) edges.emplace_back(i, j);
        bool oracle = rho_search(edges, rows, cols, 0);
        if (solver != oracle) {
          detail = "solver/oracle disagree on " + to_text(l) + " vs " + to_text(rr) +
                   " mask " + std::to_string(mask);
          return false;
        }
      }
  }
  return true;
}

// ----------------------------------------------------- 10: checker soundness

Derivation mk_node(const Functor& f, const std::string& rule, const std::string& lhs,
                   const std::string& rhs, std::vector<Derivation> premises = {}) {
  Derivation d;
  d.rule = rule;
  d.lhs = parse_formula(lhs, f);
  d.rhs = parse_formula(rhs, f);
  d.premises = std::move(premises);
  return d;
}

bool criterion_checker_soundness(std::string& detail) {
  Functor f = Functor::pow();
  const std::string a = "nab {}";
  const std::string b = "nab {T}";
  const std::string joinab = "\\/{nab {},nab {T}}";

  std::vector<std::pair<std::string, Derivation>> valid;
  auto add = [&](const std::string& name, Derivation d) { valid.emplace_back(name, std::move(d)); };

  add("refl nabla", mk_node(f, "refl", b, b));
  add("refl top", mk_node(f, "refl", "T", "T"));
  add("cut", mk_node(f, "cut", a, joinab,
                     {mk_node(f, "onestep", a, "\\/{nab {}}"),
                      mk_node(f, "onestep", "\\/{nab {}}", joinab)}));
  add("or-l", mk_node(f, "or-l", joinab, joinab,
                      {mk_node(f, "onestep", a, joinab), mk_node(f, "onestep", b, joinab)}));
  add("or-r", mk_node(f, "or-r", a, joinab, {mk_node(f, "refl", a, a)}));
  add("and-r", mk_node(f, "and-r", a, "/\\{nab {},T}",
                       {mk_node(f, "refl", a, a), mk_node(f, "onestep", a, "T")}));
  add("and-l", mk_node(f, "and-l", "/\\{nab {},nab {T}}", a, {mk_node(f, "refl", a, a)}));
  add("dist one family", mk_node(f, "dist", "/\\{" + joinab + "}",
                                 "\\/{/\\{nab {}},/\\{nab {T}}}"));
  add("dist two families",
      mk_node(f, "dist", "/\\{" + joinab + ",\\/{T}}", "\\/{/\\{nab {},T},/\\{nab {T},T}}"));
  add("dist empty", mk_node(f, "dist", "T", "\\/{T}"));
  add("neg-r", mk_node(f, "neg-r", "T", "\\/{T}", {mk_node(f, "onestep", "/\\{~T}", "F")}));
  add("neg-l", mk_node(f, "neg-l", "T", "\\/{~nab {T},nab {T}}",
                       {mk_node(f, "onestep", "/\\{nab {T}}", "\\/{nab {T}}")}));
  {
    Derivation d = mk_node(f, "nabla1", "nab {nab {}}", "nab {" + joinab + "}",
                           {mk_node(f, "onestep", a, joinab)});
    d.rel = {{parse_formula(a, f), parse_formula(joinab, f)}};
    add("nabla1 singleton", d);
  }
  {
    Derivation d = mk_node(f, "nabla1", "nab {nab {},nab {T}}", "nab {" + joinab + "}",
                           {mk_node(f, "onestep", a, joinab), mk_node(f, "onestep", b, joinab)});
    d.rel = {{parse_formula(a, f), parse_formula(joinab, f)},
             {parse_formula(b, f), parse_formula(joinab, f)}};
    add("nabla1 two pairs", d);
  }
  {
    // the power-set conjunction rule instance: A = {{a},{b}} has the single
    // slim redistribution {{a,b}}
    Derivation d = mk_node(f, "nabla2", "/\\{nab {nab {}},nab {nab {T}}}",
                           "nab {/\\{nab {},nab {T}}}",
                           {mk_node(f, "refl", "nab {/\\{nab {},nab {T}}}",
                                    "nab {/\\{nab {},nab {T}}}")});
    d.elems = {Elem::set({parse_formula(a, f)}), Elem::set({parse_formula(b, f)})};
    add("nabla2 conjunction", d);
  }
  {
    // A = {}: SRD({}) = T{{}} = { {}, {{}} }; (T/\) sends them to nab {} and
    // nab {T}, so top is below their join
    Derivation d = mk_node(f, "nabla2", "T", joinab,
                           {mk_node(f, "or-r", a, joinab, {mk_node(f, "refl", a, a)}),
                            mk_node(f, "or-r", b, joinab, {mk_node(f, "refl", b, b)})});
    d.elems = {};
    add("nabla2 empty family", d);
  }
  {
    std::string rhs3 = "\\/{nab {nab {}},nab {nab {T}},nab {nab {},nab {T}}}";
    auto orr = [&](const std::string& lhs) {
      return mk_node(f, "or-r", lhs, rhs3, {mk_node(f, "refl", lhs, lhs)});
    };
    Derivation d = mk_node(f, "nabla3", "nab {" + joinab + "}", rhs3,
                           {orr("nab {nab {}}"), orr("nab {nab {T}}"),
                            orr("nab {nab {},nab {T}}")});
    d.phi = Elem::set({Elem::set({parse_formula(a, f), parse_formula(b, f)})});
    add("nabla3 disjunction", d);
  }
  {
    Derivation d = mk_node(f, "nabla3", "nab {}", "nab {}",
                           {mk_node(f, "refl", "nab {}", "nab {}")});
    d.phi = Elem::set({});
    add("nabla3 empty argument", d);
  }
  {
    Derivation d = mk_node(f, "nabla2f", "/\\{nab {nab {}},nab {nab {T}}}",
                           "\\/{nab {/\\{nab {},nab {T}}}}");
    d.elems = {Elem::set({parse_formula(a, f)}), Elem::set({parse_formula(b, f)})};
    add("nabla2f", d);
  }
  {
    Derivation d = mk_node(f, "nabla2f", "T", joinab);
    d.elems = {};
    add("nabla2f empty family", d);
  }
  {
    Derivation d = mk_node(f, "nabla3f", "nab {" + joinab + "}",
                           "\\/{nab {nab {}},nab {nab {T}},nab {nab {},nab {T}}}");
    d.phi = Elem::set({Elem::set({parse_formula(a, f), parse_formula(b, f)})});
    add("nabla3f", d);
  }
  add("onestep weakening", mk_node(f, "onestep", b, joinab));
  {
    // negation dual of nab {T} as a one-step fact
    Budget budget(1000000);
    std::vector<Elem> duals = neg_dual(f, Elem::set({Elem::top()}), budget);
    std::vector<Elem> disjuncts;
    for (const auto& beta : duals) disjuncts.push_back(Elem::nabla(beta));
    Derivation d;
    d.rule = "onestep";
    d.lhs = Elem::neg(parse_formula(b, f));
    d.rhs = Elem::disj(std::move(disjuncts));
    add("onestep negation dual", d);
  }
  add("cut through conjunction",
      mk_node(f, "cut", "/\\{nab {},nab {T}}", joinab,
              {mk_node(f, "and-l", "/\\{nab {},nab {T}}", a, {mk_node(f, "refl", a, a)}),
               mk_node(f, "or-r", a, joinab, {mk_node(f, "refl", a, a)})}));

  if (valid.size() < 20) {
    detail = "corpus has only " + std::to_string(valid.size()) + " valid derivations";
    return false;
  }
  for (const auto& [name, d] : valid) {
    Budget budget(200000000);
    auto err = check_derivation(f, d, budget);
    if (err) {
      detail = name + " rejected at " + err->path + ": " + err->reason;
      return false;
    }
    if (!decide_valid(f, d.lhs, d.rhs, budget).valid) {
      detail = name + " accepted but conclusion is not valid";
      return false;
    }
  }

  // corrupted derivations with the expected failing node
  std::vector<std::tuple<std::string, Derivation, std::string>> corrupted;
  auto corrupt = [&](const std::string& name, Derivation d, const std::string& path) {
    corrupted.emplace_back(name, std::move(d), path);
  };
  corrupt("refl mismatch", mk_node(f, "refl", a, b), "/");
  corrupt("cut broken chain",
          mk_node(f, "cut", a, joinab,
                  {mk_node(f, "onestep", a, "\\/{nab {}}"),
                   mk_node(f, "onestep", "\\/{nab {T}}", joinab)}),
          "/");
  corrupt("or-l missing premise",
          mk_node(f, "or-l", joinab, joinab, {mk_node(f, "onestep", a, joinab)}), "/");
  corrupt("and-l wrong conjunct",
          mk_node(f, "and-l", "/\\{nab {T}}", a, {mk_node(f, "refl", a, a)}), "/");
  corrupt("dist wrong rhs", mk_node(f, "dist", "/\\{" + joinab + "}", "\\/{/\\{nab {}}}"), "/");
  {
    Derivation d = mk_node(f, "nabla1", "nab {nab {}}", "nab {nab {}}");
    d.rel = {};
    corrupt("nabla1 empty side relation", d, "/");
  }
  {
    Derivation d = mk_node(f, "nabla1", "nab {nab {}}", "nab {nab {}}",
                           {mk_node(f, "refl", "T", "T")});
    d.rel = {{Elem::top(), Elem::top()}};
    corrupt("nabla1 Z outside bases", d, "/");
  }
  {
    Derivation d = mk_node(f, "nabla2", "/\\{nab {nab {}},nab {nab {T}}}",
                           "nab {/\\{nab {},nab {T}}}");
    d.elems = {Elem::set({parse_formula(a, f)}), Elem::set({parse_formula(b, f)})};
    corrupt("nabla2 missing premise", d, "/");
  }
  {
    Derivation d = mk_node(f, "nabla2", "/\\{nab {nab {}},nab {nab {T}}}",
                           "nab {/\\{nab {},nab {T}}}",
                           {mk_node(f, "refl", "nab {/\\{nab {},nab {T}}}",
                                    "nab {/\\{nab {},nab {T}}}"),
                            mk_node(f, "refl", "nab {/\\{nab {}}}", "nab {/\\{nab {}}}")});
    d.elems = {Elem::set({parse_formula(a, f)}), Elem::set({parse_formula(b, f)})};
    corrupt("nabla2 unexpected premise", d, "/");
  }
  {
    std::string rhs3 = "\\/{nab {nab {}},nab {nab {T}},nab {nab {},nab {T}}}";
    auto orr = [&](const std::string& lhs) {
      return mk_node(f, "or-r", lhs, rhs3, {mk_node(f, "refl", lhs, lhs)});
    };
    Derivation d = mk_node(f, "nabla3", "nab {" + joinab + "}", rhs3,
                           {orr("nab {nab {}}"), orr("nab {nab {T}}")});
    d.phi = Elem::set({Elem::set({parse_formula(a, f), parse_formula(b, f)})});
    corrupt("nabla3 missing premise", d, "/");
  }
  {
    Derivation d = mk_node(f, "nabla2f", "/\\{nab {nab {}},nab {nab {T}}}",
                           "\\/{nab {/\\{nab {}}}}");
    d.elems = {Elem::set({parse_formula(a, f)}), Elem::set({parse_formula(b, f)})};
    corrupt("nabla2f wrong rhs", d, "/");
  }
  corrupt("onestep false", mk_node(f, "onestep", b, a), "/");
  corrupt("unknown rule", mk_node(f, "modus", "T", "T"), "/");
  corrupt("deep failure",
          mk_node(f, "cut", a, joinab,
                  {mk_node(f, "cut", a, "\\/{nab {}}",
                           {mk_node(f, "onestep", a, b), mk_node(f, "onestep", b, "\\/{nab {}}")}),
                   mk_node(f, "onestep", "\\/{nab {}}", joinab)}),
          "/0/0");

  if (corrupted.size() < 10) {
    detail = "only " + std::to_string(corrupted.size()) + " corrupted derivations";
    return false;
  }
  for (const auto& [name, d, path] : corrupted) {
    Budget budget(200000000);
    auto err = check_derivation(f, d, budget);
    if (!err) {
      detail = name + " was accepted";
      return false;
    }
    if (err->path != path) {
      detail = name + " failed at " + err->path + " (expected " + path + ")";
      return false;
    }
  }
  return true;
}

// random helpers shared by criteria 4-7 (definitions after use above)

Elem elem_random_impl(const Functor& f, const std::vector<Elem>& pool, std::mt19937& rng) {
  auto pick = [&rng](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
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
    case Functor::Tag::Compose: {
      std::vector<Elem> mid = {elem_random_impl(f.right(), pool, rng),
                               elem_random_impl(f.right(), pool, rng)};
      return elem_random_impl(f.left(), mid, rng);
    }
    case Functor::Tag::Sum:
      return pick(2) ? Elem::inr(elem_random_impl(f.right(), pool, rng))
                     : Elem::inl(elem_random_impl(f.left(), pool, rng));
    case Functor::Tag::Product:
      return Elem::pair(elem_random_impl(f.left(), pool, rng),
                        elem_random_impl(f.right(), pool, rng));
    case Functor::Tag::Exp: {
      Elem::MapEntries entries;
      for (const auto& d : f.symbols())
        entries.emplace_back(d, elem_random_impl(f.left(), pool, rng));
      return Elem::exp_map(std::move(entries));
    }
    default:
      return Elem::top();
  }
}

std::mt19937 g_rng(4242);

Elem elem_random(const Functor& f, const std::vector<Elem>& pool) {
  return elem_random_impl(f, pool, g_rng);
}

Elem elem_random_seeded(const Functor& f, const std::vector<Elem>& pool, std::mt19937& rng) {
  return elem_random_impl(f, pool, rng);
}

Formula formula_random(const Functor& f, int max_depth, std::mt19937& rng) {
  auto pick = [&rng](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  int c = pick(max_depth > 0 ? 5 : 4);
  switch (c) {
    case 0:
      return pick(2) ? Elem::top() : Elem::bottom();
    case 1:
      return Elem::neg(formula_random(f, max_depth, rng));
    case 2:
    case 3: {
      std::vector<Formula> items;
      int k = pick(3);
      for (int i = 0; i < k; ++i) items.push_back(formula_random(f, max_depth, rng));
      return c == 2 ? Elem::conj(std::move(items)) : Elem::disj(std::move(items));
    }
    default: {
      std::vector<Elem> pool = {formula_random(f, max_depth - 1, rng),
                                formula_random(f, max_depth - 1, rng)};
      return Elem::nabla(elem_random_impl(f, pool, rng));
    }
  }
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "lifting functoriality over composition (exhaustive, carriers <= 2)", 120,
       criterion_functoriality},
      {2, "slim redistribution closed forms (|A| <= 3, bases <= 3)", 60,
       criterion_srd_closed_forms},
      {3, "modal-logic battery over P with proposition wrapping", 0, criterion_modal_battery},
      {4, "lifted-atom cells partition T X; meanings are cell unions", 60, criterion_atomicity},
      {5, "negation dual covers the complement (100 random alphas)", 0, criterion_negation_dual},
      {6, "adequacy under coalgebra morphisms (200 random triples)", 0, criterion_adequacy},
      {7, "semantic stratification and Z_n agreement (100 random instances)", 0,
       criterion_stratification},
      {8, "monad unit law of the lifted-member transformation", 0, criterion_monad_unit},
      {9, "bag lifting solver vs exhaustive rho-search (totals <= 4)", 60, criterion_bag_oracle},
      {10, "derivation checker: 20+ valid accepted, 10+ corrupted rejected", 0,
       criterion_checker_soundness},
  };

  int failures = 0;
  for (auto& c : criteria) {
    auto started = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (ok && c.budget_seconds > 0 && secs > c.budget_seconds) {
      ok = false;
      detail = "exceeded time budget of " + std::to_string(c.budget_seconds) + "s";
    }
    std::printf("%s criterion %2d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", c.number,
                c.title.c_str(), secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
