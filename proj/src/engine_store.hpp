/*
 * Copyright (C) 2026 The lfk Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Term store with union-find bindings for the constraint engine.

#ifndef LFK_SRC_ENGINE_STORE_HPP
#define LFK_SRC_ENGINE_STORE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lfk/syntax.hpp"

namespace lfk::detail {

enum class Tag : std::uint8_t { TyMeta, Base, Arrow, TrMeta, Empty, Step, PMeta, Pure, Impure };

inline bool is_meta(Tag t) { return t == Tag::TyMeta || t == Tag::TrMeta || t == Tag::PMeta; }

/// Arrow kids: purity, dom, cod, mu_alpha, alpha, mu_beta, beta.
/// Step kids: in, next, out.
struct Term {
  Tag tag = Tag::TyMeta;
  BaseType base = BaseType::Int;
  std::array<int, 7> k{};
};

class Store {
 public:
  static constexpr int kEmpty = 0;
  static constexpr int kPure = 1;
  static constexpr int kImpure = 2;

  Store() {
    add({Tag::Empty, {}, {}});
    add({Tag::Pure, {}, {}});
    add({Tag::Impure, {}, {}});
    for (BaseType b : {BaseType::Int, BaseType::Bool, BaseType::String}) {
      Term t;
      t.tag = Tag::Base;
      t.base = b;
      add(t);
    }
  }

  int base(BaseType b) const { return 3 + static_cast<int>(b); }

  int add(const Term &t) {
    terms_.push_back(t);
    link_.push_back(-1);
    return static_cast<int>(terms_.size()) - 1;
  }

  int ty_meta() { return add({Tag::TyMeta, {}, {}}); }
  int tr_meta() { return add({Tag::TrMeta, {}, {}}); }
  int p_meta() { return add({Tag::PMeta, {}, {}}); }

  int arrow(int purity, int dom, int cod, int ma, int a, int mb, int b) {
    Term t;
    t.tag = Tag::Arrow;
    t.k = {purity, dom, cod, ma, a, mb, b};
    return add(t);
  }

  int step(int in, int next, int out) {
    Term t;
    t.tag = Tag::Step;
    t.k = {in, next, out, 0, 0, 0, 0};
    return add(t);
  }

  int find(int id) {
    int root = id;
    while (link_[root] >= 0) root = link_[root];
    while (link_[id] >= 0) {
      int next = link_[id];
      link_[id] = root;
      id = next;
    }
    return root;
  }

  const Term &at(int id) { return terms_[find(id)]; }
  Tag tag(int id) { return at(id).tag; }

  bool unify(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    Term ta = terms_[a];
    Term tb = terms_[b];
    if (is_meta(ta.tag)) return bind(a, b);
    if (is_meta(tb.tag)) return bind(b, a);
    if (ta.tag != tb.tag) {
      if ((ta.tag == Tag::Pure || ta.tag == Tag::Impure) && (tb.tag == Tag::Pure || tb.tag == Tag::Impure))
        purity_clash_ = true;
      return false;
    }
    switch (ta.tag) {
      case Tag::Base:
        return ta.base == tb.base;
      case Tag::Step:
        for (int i = 0; i < 3; ++i)
          if (!unify(ta.k[i], tb.k[i])) return false;
        return true;
      case Tag::Arrow:
        for (int i = 0; i < 7; ++i)
          if (!unify(ta.k[i], tb.k[i])) return false;
        return true;
      default:
        return true;
    }
  }

  /// Set once a unification fails on pure against impure.
  bool purity_clash() const { return purity_clash_; }
  void clear_purity_clash() { purity_clash_ = false; }

  std::string show(int id) {
    id = find(id);
    const Term t = terms_[id];
    switch (t.tag) {
      case Tag::TyMeta:
      case Tag::TrMeta:
      case Tag::PMeta:
        return "?" + std::to_string(id);
      case Tag::Base:
        return to_string(t.base);
      case Tag::Empty:
        return "*";
      case Tag::Pure:
        return "pure";
      case Tag::Impure:
        return "impure";
      case Tag::Step:
        return "{" + show(t.k[0]) + " => " + show(t.k[1]) + " => " + show(t.k[2]) + "}";
      case Tag::Arrow:
        if (tag(t.k[0]) == Tag::Pure) return "(" + show(t.k[1]) + " => " + show(t.k[2]) + ")";
        return "(" + show(t.k[1]) + " -> " + show(t.k[2]) + " @ [" + show(t.k[3]) + ", " +
               show(t.k[4]) + ", " + show(t.k[5]) + ", " + show(t.k[6]) + "])";
    }
    return "?";
  }

 private:
  bool bind(int meta, int target) {
    if (occurs(meta, target)) return false;
    link_[meta] = target;
    return true;
  }

  bool occurs(int meta, int id) {
    id = find(id);
    if (id == meta) return true;
    const Term &t = terms_[id];
    int n = t.tag == Tag::Arrow ? 7 : t.tag == Tag::Step ? 3 : 0;
    for (int i = 0; i < n; ++i)
      if (occurs(meta, terms_[id].k[i])) return true;
    return false;
  }

  std::vector<Term> terms_;
  std::vector<int> link_;
  bool purity_clash_ = false;
};

}  // namespace lfk::detail

#endif  // LFK_SRC_ENGINE_STORE_HPP
