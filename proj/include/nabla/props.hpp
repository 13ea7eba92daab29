// Proposition letters are not primitive: a model with letters from Prop is a
// coalgebra for Const(P(Prop)) x F. This header wraps a base functor that way
// and provides the surface sugar. The letter p denotes "p is in the color":
//   p  =  \/_{S containing p} \/_{beta in T{T}} nab(('S, beta))
// where T{T} (the base functor applied to the one-point carrier {T}) is the
// finite family of "any behavior" nablas; their disjunction is a tautology by
// the empty-conjunction redistribution. Under this env, `nab e` means the
// base-functor nabla ⋁_S nab(('S, e)), and box/dia (base functor P only)
// follow the classical encodings dia a = nab {a,T}, box a = nab {} \/ nab {a}.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "nabla/elem.hpp"
#include "nabla/error.hpp"
#include "nabla/formula.hpp"
#include "nabla/functor.hpp"
#include "nabla/ops.hpp"

namespace nabla {

class PropEnv : public FormulaSugar {
 public:
  // tag name for a subset of letters: "v" then "_<letter>" per member
  static std::string tag_name(const std::vector<std::string>& subset) {
    std::string out = "v";
    for (const auto& p : subset) out += "_" + p;
    return out;
  }

  static PropEnv wrap(Functor base, std::vector<std::string> letters, Budget& budget) {
    PropEnv env;
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    if (letters.empty()) fail(ErrorKind::Syntax, "--props needs at least one letter");
    env.letters_ = std::move(letters);
    env.base_ = base;

    const std::size_t n = env.letters_.size();
    std::vector<std::string> tags;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
      std::vector<std::string> subset;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t(1) << i)) subset.push_back(env.letters_[i]);
      std::string tag = tag_name(subset);
      tags.push_back(tag);
      for (const auto& p : subset) env.tags_with_[p].push_back(tag);
    }
    env.tags_ = tags;
    std::sort(env.tags_.begin(), env.tags_.end());
    env.wrapped_ = Functor::product(Functor::constant(tags), base);
    env.any_behavior_ = enumerate(env.base_, Carrier({Elem::top()}), budget);
    return env;
  }

  const Functor& wrapped() const { return wrapped_; }
  const Functor& base() const { return base_; }
  const std::vector<std::string>& letters() const { return letters_; }

  Formula letter(const std::string& name, std::size_t pos) const override {
    auto it = tags_with_.find(name);
    if (it == tags_with_.end())
      fail(ErrorKind::UnknownVariable, "unknown proposition letter '" + name + "'", pos);
    std::vector<Elem> disjuncts;
    for (const auto& tag : it->second)
      for (const auto& beta : any_behavior_)
        disjuncts.push_back(Elem::nabla(Elem::pair(Elem::sym(tag), beta)));
    return Elem::disj(std::move(disjuncts));
  }

  // The base-functor nabla: any color, base behavior arg.
  Formula lift_nabla(const Elem& arg, std::size_t pos) const override {
    if (!well_typed(base_, [this](const Elem& leaf) { return is_valid_formula(wrapped_, leaf); },
                    arg))
      fail(ErrorKind::Type, "nabla argument is not well-typed for " + base_.text(), pos);
    std::vector<Elem> disjuncts;
    for (const auto& tag : tags_)
      disjuncts.push_back(Elem::nabla(Elem::pair(Elem::sym(tag), arg)));
    return Elem::disj(std::move(disjuncts));
  }

  Formula box(const Formula& a, std::size_t pos) const override {
    require_pow(pos);
    return Elem::disj(
        {lift_nabla(Elem::set({}), pos), lift_nabla(Elem::set({a}), pos)});
  }

  Formula dia(const Formula& a, std::size_t pos) const override {
    require_pow(pos);
    return lift_nabla(Elem::set({a, Elem::top()}), pos);
  }

 private:
  void require_pow(std::size_t pos) const {
    if (base_.tag() != Functor::Tag::Pow)
      fail(ErrorKind::Type, "box/dia sugar requires base functor P", pos);
  }

  std::vector<std::string> letters_;
  std::vector<std::string> tags_;
  std::map<std::string, std::vector<std::string>> tags_with_;
  Functor base_ = Functor::id();
  Functor wrapped_ = Functor::id();
  std::vector<Elem> any_behavior_;
};

}  // namespace nabla
