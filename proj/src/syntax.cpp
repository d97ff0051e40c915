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

#include "lfk/syntax.hpp"

#include <algorithm>
#include <map>

namespace lfk {

bool operator==(const SourceType &a, const SourceType &b) {
  if (a.kind != b.kind) {
    return false;
  }
  switch (a.kind) {
  case SourceType::Kind::Base:
    return a.base == b.base;
  case SourceType::Kind::PureArrow:
    return *a.dom == *b.dom && *a.cod == *b.cod;
  case SourceType::Kind::ImpureArrow:
    return *a.dom == *b.dom && *a.cod == *b.cod && *a.mu_alpha == *b.mu_alpha &&
           *a.alpha == *b.alpha && *a.mu_beta == *b.mu_beta && *a.beta == *b.beta;
  }
  return false;
}

bool operator==(const TrailType &a, const TrailType &b) {
  if (a.kind != b.kind) {
    return false;
  }
  if (a.kind == TrailType::Kind::Empty) {
    return true;
  }
  return *a.in == *b.in && *a.next == *b.next && *a.out == *b.out;
}

bool same_type(const TypePtr &a, const TypePtr &b) {
  if (!a || !b) {
    return !a && !b;
  }
  return a == b || *a == *b;
}

bool same_trail(const TrailPtr &a, const TrailPtr &b) {
  if (!a || !b) {
    return !a && !b;
  }
  return a == b || *a == *b;
}

TypePtr base_type(BaseType b) {
  auto make = [](BaseType x) {
    SourceType t;
    t.base = x;
    return std::make_shared<const SourceType>(std::move(t));
  };
  static const TypePtr table[] = {make(BaseType::Int), make(BaseType::Bool),
                                  make(BaseType::String)};
  return table[static_cast<int>(b)];
}

TypePtr int_type() { return base_type(BaseType::Int); }
TypePtr bool_type() { return base_type(BaseType::Bool); }
TypePtr string_type() { return base_type(BaseType::String); }

TypePtr impure_arrow(TypePtr dom, TypePtr cod, TrailPtr mu_alpha, TypePtr alpha,
                     TrailPtr mu_beta, TypePtr beta) {
  SourceType t;
  t.kind = SourceType::Kind::ImpureArrow;
  t.dom = std::move(dom);
  t.cod = std::move(cod);
  t.mu_alpha = std::move(mu_alpha);
  t.alpha = std::move(alpha);
  t.mu_beta = std::move(mu_beta);
  t.beta = std::move(beta);
  return std::make_shared<const SourceType>(std::move(t));
}

TypePtr pure_arrow(TypePtr dom, TypePtr cod) {
  SourceType t;
  t.kind = SourceType::Kind::PureArrow;
  t.dom = std::move(dom);
  t.cod = std::move(cod);
  return std::make_shared<const SourceType>(std::move(t));
}

TrailPtr empty_trail() {
  static const TrailPtr empty = std::make_shared<const TrailType>();
  return empty;
}

TrailPtr step_trail(TypePtr in, TrailPtr next, TypePtr out) {
  TrailType t;
  t.kind = TrailType::Kind::Step;
  t.in = std::move(in);
  t.next = std::move(next);
  t.out = std::move(out);
  return std::make_shared<const TrailType>(std::move(t));
}

std::size_t trail_depth(const TrailType &t) {
  return t.is_empty() ? 0 : 1 + trail_depth(*t.next);
}

std::size_t type_size(const SourceType &t) {
  switch (t.kind) {
  case SourceType::Kind::Base:
    return 1;
  case SourceType::Kind::PureArrow:
    return 1 + type_size(*t.dom) + type_size(*t.cod);
  case SourceType::Kind::ImpureArrow:
    return 1 + type_size(*t.dom) + type_size(*t.cod) + trail_size(*t.mu_alpha) +
           type_size(*t.alpha) + trail_size(*t.mu_beta) + type_size(*t.beta);
  }
  return 1;
}

std::size_t trail_size(const TrailType &t) {
  if (t.is_empty()) {
    return 1;
  }
  return 1 + type_size(*t.in) + trail_size(*t.next) + type_size(*t.out);
}

bool mentions_pure_arrow(const SourceType &t) {
  switch (t.kind) {
  case SourceType::Kind::Base:
    return false;
  case SourceType::Kind::PureArrow:
    return true;
  case SourceType::Kind::ImpureArrow: {
    auto in_trail = [](const TrailType &mu) {
      const TrailType *cur = &mu;
      while (!cur->is_empty()) {
        if (mentions_pure_arrow(*cur->in) || mentions_pure_arrow(*cur->out)) {
          return true;
        }
        cur = cur->next.get();
      }
      return false;
    };
    return mentions_pure_arrow(*t.dom) || mentions_pure_arrow(*t.cod) ||
           in_trail(*t.mu_alpha) || mentions_pure_arrow(*t.alpha) || in_trail(*t.mu_beta) ||
           mentions_pure_arrow(*t.beta);
  }
  }
  return false;
}

std::string to_string(BaseType b) {
  switch (b) {
  case BaseType::Int:
    return "int";
  case BaseType::Bool:
    return "bool";
  case BaseType::String:
    return "string";
  }
  return "?";
}

std::string to_string(const SourceType &t) {
  switch (t.kind) {
  case SourceType::Kind::Base:
    return to_string(t.base);
  case SourceType::Kind::PureArrow:
    return "(" + to_string(*t.dom) + " => " + to_string(*t.cod) + ")";
  case SourceType::Kind::ImpureArrow:
    return "(" + to_string(*t.dom) + " -> " + to_string(*t.cod) + " @ [" +
           to_string(*t.mu_alpha) + ", " + to_string(*t.alpha) + ", " +
           to_string(*t.mu_beta) + ", " + to_string(*t.beta) + "])";
  }
  return "?";
}

std::string to_string(const TrailType &t) {
  if (t.is_empty()) {
    return "*";
  }
  return "{" + to_string(*t.in) + " => " + to_string(*t.next) + " => " + to_string(*t.out) +
         "}";
}

std::string to_string(Loc loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

// ---------------------------------------------------------------------------
// Expressions

bool Expr::has_free(std::string_view x) const {
  return std::binary_search(free_vars.begin(), free_vars.end(), x);
}

namespace {

std::vector<std::string> merge_free(const std::vector<ExprPtr> &kids) {
  std::vector<std::string> out;
  for (const auto &k : kids) {
    std::vector<std::string> merged;
    merged.reserve(out.size() + k->free_vars.size());
    std::set_union(out.begin(), out.end(), k->free_vars.begin(), k->free_vars.end(),
                   std::back_inserter(merged));
    out = std::move(merged);
  }
  return out;
}

bool binds(ExprKind k) { return k == ExprKind::Abs || k == ExprKind::Control; }

ExprPtr finish(Expr e) {
  e.free_vars = merge_free(e.kids);
  if (binds(e.kind)) {
    auto it = std::lower_bound(e.free_vars.begin(), e.free_vars.end(), e.name);
    if (it != e.free_vars.end() && *it == e.name) {
      e.free_vars.erase(it);
    }
  } else if (e.kind == ExprKind::Var) {
    e.free_vars = {e.name};
  }
  return std::make_shared<const Expr>(std::move(e));
}

Expr node(ExprKind kind, Loc loc, std::vector<ExprPtr> kids = {}) {
  Expr e;
  e.kind = kind;
  e.loc = loc;
  e.kids = std::move(kids);
  return e;
}

}  // namespace

ExprPtr make_int(std::int64_t n, Loc loc) {
  Expr e = node(ExprKind::Int, loc);
  e.int_value = n;
  return finish(std::move(e));
}

ExprPtr make_bool(bool b, Loc loc) {
  Expr e = node(ExprKind::Bool, loc);
  e.bool_value = b;
  return finish(std::move(e));
}

ExprPtr make_str(std::string s, Loc loc) {
  Expr e = node(ExprKind::Str, loc);
  e.name = std::move(s);
  return finish(std::move(e));
}

ExprPtr make_var(std::string x, Loc loc) {
  Expr e = node(ExprKind::Var, loc);
  e.name = std::move(x);
  return finish(std::move(e));
}

ExprPtr make_abs(std::string x, TypePtr param_type, ExprPtr body, Loc loc) {
  Expr e = node(ExprKind::Abs, loc, {std::move(body)});
  e.name = std::move(x);
  e.annotation = std::move(param_type);
  return finish(std::move(e));
}

ExprPtr make_app(ExprPtr fn, ExprPtr arg, Loc loc) {
  return finish(node(ExprKind::App, loc, {std::move(fn), std::move(arg)}));
}

ExprPtr make_control(std::string k, TypePtr cont_type, TrailPtr witness, ExprPtr body,
                     Loc loc) {
  Expr e = node(ExprKind::Control, loc, {std::move(body)});
  e.name = std::move(k);
  e.annotation = std::move(cont_type);
  e.witness = std::move(witness);
  return finish(std::move(e));
}

ExprPtr make_prompt(ExprPtr body, Loc loc) {
  return finish(node(ExprKind::Prompt, loc, {std::move(body)}));
}

ExprPtr make_plus(ExprPtr l, ExprPtr r, Loc loc) {
  return finish(node(ExprKind::Plus, loc, {std::move(l), std::move(r)}));
}

ExprPtr make_mul(ExprPtr l, ExprPtr r, Loc loc) {
  return finish(node(ExprKind::Mul, loc, {std::move(l), std::move(r)}));
}

ExprPtr make_is0(ExprPtr e, Loc loc) { return finish(node(ExprKind::Is0, loc, {std::move(e)})); }

ExprPtr make_b2s(ExprPtr e, Loc loc) { return finish(node(ExprKind::B2S, loc, {std::move(e)})); }

ExprPtr make_seq(ExprPtr l, ExprPtr r, Loc loc) {
  return finish(node(ExprKind::Seq, loc, {std::move(l), std::move(r)}));
}

ExprPtr with_kids(const Expr &e, std::vector<ExprPtr> kids) {
  Expr copy = e;
  copy.kids = std::move(kids);
  return finish(std::move(copy));
}

namespace {

bool same_leaf(const Expr &a, const Expr &b) {
  if (a.kind != b.kind || a.kids.size() != b.kids.size()) {
    return false;
  }
  switch (a.kind) {
  case ExprKind::Int:
    return a.int_value == b.int_value;
  case ExprKind::Bool:
    return a.bool_value == b.bool_value;
  case ExprKind::Str:
    return a.name == b.name;
  case ExprKind::Abs:
    return same_type(a.annotation, b.annotation);
  case ExprKind::Control:
    return same_type(a.annotation, b.annotation) && same_trail(a.witness, b.witness);
  default:
    return true;
  }
}

bool alpha_eq(const Expr &a, const Expr &b, std::map<std::string, int> &left,
              std::map<std::string, int> &right, int depth) {
  if (!same_leaf(a, b)) {
    return false;
  }
  if (a.kind == ExprKind::Var) {
    auto la = left.find(a.name);
    auto rb = right.find(b.name);
    if (la == left.end() || rb == right.end()) {
      return la == left.end() && rb == right.end() && a.name == b.name;
    }
    return la->second == rb->second;
  }
  if (binds(a.kind)) {
    auto saved_l = left.find(a.name) == left.end() ? std::optional<int>{} : left[a.name];
    auto saved_r = right.find(b.name) == right.end() ? std::optional<int>{} : right[b.name];
    left[a.name] = depth;
    right[b.name] = depth;
    bool ok = alpha_eq(*a.kids[0], *b.kids[0], left, right, depth + 1);
    if (saved_l) {
      left[a.name] = *saved_l;
    } else {
      left.erase(a.name);
    }
    if (saved_r) {
      right[b.name] = *saved_r;
    } else {
      right.erase(b.name);
    }
    return ok;
  }
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    if (!alpha_eq(*a.kids[i], *b.kids[i], left, right, depth)) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool same_expr(const Expr &a, const Expr &b) {
  if (&a == &b) {
    return true;
  }
  if (!same_leaf(a, b) || a.name != b.name) {
    return false;
  }
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    if (!same_expr(*a.kids[i], *b.kids[i])) {
      return false;
    }
  }
  return true;
}

bool alpha_equivalent(const Expr &a, const Expr &b) {
  std::map<std::string, int> left;
  std::map<std::string, int> right;
  return alpha_eq(a, b, left, right, 0);
}

std::size_t expr_size(const Expr &e) {
  std::size_t n = 1;
  for (const auto &k : e.kids) {
    n += expr_size(*k);
  }
  return n;
}

bool contains_seq(const Expr &e) {
  if (e.kind == ExprKind::Seq) {
    return true;
  }
  return std::any_of(e.kids.begin(), e.kids.end(),
                     [](const ExprPtr &k) { return contains_seq(*k); });
}

ExprPtr desugar(const ExprPtr &e) {
  if (!contains_seq(*e)) {
    return e;
  }
  std::vector<ExprPtr> kids;
  kids.reserve(e->kids.size());
  for (const auto &k : e->kids) {
    kids.push_back(desugar(k));
  }
  if (e->kind == ExprKind::Seq) {
    return make_app(make_abs("_", nullptr, kids[1], e->loc), kids[0], e->loc);
  }
  return with_kids(*e, std::move(kids));
}

namespace {

std::string fresh_variant(const std::string &base, const Expr &a, const Expr &b) {
  std::string candidate = base + "'";
  while (a.has_free(candidate) || b.has_free(candidate)) {
    candidate += "'";
  }
  return candidate;
}

}  // namespace

ExprPtr substitute(const ExprPtr &body, const std::string &x, const ExprPtr &v) {
  if (!body->has_free(x)) {
    return body;
  }
  switch (body->kind) {
  case ExprKind::Var:
    return v;
  case ExprKind::Abs:
  case ExprKind::Control: {
    // x is free in body, so the binder differs from x.
    const ExprPtr &inner = body->kids[0];
    if (v->has_free(body->name)) {
      std::string renamed = fresh_variant(body->name, *inner, *v);
      ExprPtr moved = substitute(inner, body->name, make_var(renamed));
      Expr copy = *body;
      copy.name = renamed;
      return with_kids(copy, {substitute(moved, x, v)});
    }
    return with_kids(*body, {substitute(inner, x, v)});
  }
  default: {
    std::vector<ExprPtr> kids;
    kids.reserve(body->kids.size());
    for (const auto &k : body->kids) {
      kids.push_back(substitute(k, x, v));
    }
    return with_kids(*body, std::move(kids));
  }
  }
}

ExprPtr shift_encode(const std::string &k, const ExprPtr &body, TypePtr cont_type,
                     ShiftEncoding mode) {
  if (mode == ShiftEncoding::Simplified) {
    TypePtr ann = cont_type;
    if (ann && ann->kind == SourceType::Kind::ImpureArrow) {
      ann = pure_arrow(ann->dom, ann->cod);
    }
    return make_control(k, std::move(ann), nullptr, body, body->loc);
  }
  std::string outer = k + "'";
  std::string x = "x";
  while (body->has_free(outer) || outer == k) {
    outer += "'";
  }
  TypePtr dom = cont_type ? cont_type->dom : nullptr;
  ExprPtr reinstated =
      make_abs(x, dom, make_prompt(make_app(make_var(outer), make_var(x))), body->loc);
  return make_control(outer, std::move(cont_type), nullptr, substitute(body, k, reinstated),
                      body->loc);
}

SyntaxError::SyntaxError(Loc loc, const std::string &msg)
    : std::runtime_error(to_string(loc) + ": " + msg), loc_(loc) {}

}  // namespace lfk
