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

#include "engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <utility>

#include "engine_store.hpp"

namespace lfk::detail {
namespace {

struct Fail {
  ErrorKind kind;
  Loc loc;
  std::string details;
};

enum class CKind : std::uint8_t { IdCont, Compat, And, Implies, AppEffect };

/// Argument layout:
///   IdCont: t, mu, t2
///   Compat: mu1, mu2, mu3 (root holds the triple as first stated)
///   And: result, in1, in2, in3 (-1 when absent)
///   Implies: p, q  (p pure forces q pure)
///   AppEffect: p, fma, fa, fmb, fb, rma, ra, xma, xa
struct Constraint {
  CKind kind;
  std::array<int, 9> a{};
  std::array<int, 3> root{};
  int node = 0;
};

struct Node {
  const Expr *expr = nullptr;
  int t = 0, ma = 0, a = 0, mb = 0, b = 0;
  int purity = -1;
  int binder = -1;
  int arrow = -1;
  int mu0 = -1;
  std::vector<int> kids;
};

struct State {
  Store store;
  std::vector<Constraint> pending;
  int steps = 0;
};

enum class Step { Done, Deferred };

class Engine {
 public:
  Engine(const EngineOptions &opts) : opts_(opts) {}

  EngineResult run(const TypeEnv &env, const ExprPtr &e);

 private:
  bool fg() const { return opts_.system == System::FineGrained; }

  [[noreturn]] void fail(ErrorKind k, int node, std::string details) const {
    throw Fail{k, nodes_[node].expr->loc, std::move(details)};
  }

  int from_type(State &s, const TypePtr &t, int node);
  int from_trail(State &s, const TrailPtr &t);
  int gen(State &s, std::vector<std::pair<std::string, int>> &env, const Expr &e);
  void unify_or(State &s, int a, int b, int node, const char *what);

  Step step(State &s, const Constraint &c);
  void propagate(State &s);
  void search(State s, int depth, std::vector<State> &out);

  struct Grounder;

  EngineOptions opts_;
  std::vector<Node> nodes_;
  std::vector<ExprPtr> owned_;
  int controls_ = 0;
  std::size_t explored_ = 0;
  std::optional<Fail> first_fail_;
};

constexpr std::size_t kMaxStates = 20000;
constexpr std::size_t kMaxSolutions = 64;
constexpr int kMaxRounds = 100000;

std::string show_triple(State &s, const char *name, const std::array<int, 3> &r) {
  return std::string(name) + "(" + s.store.show(r[0]) + ", " + s.store.show(r[1]) + ", " +
         s.store.show(r[2]) + ")";
}

void Engine::unify_or(State &s, int a, int b, int node, const char *what) {
  s.store.clear_purity_clash();
  if (!s.store.unify(a, b)) {
    std::string sa = s.store.show(a);
    std::string sb = s.store.show(b);
    ErrorKind k = s.store.purity_clash() ? ErrorKind::PurityMismatch : ErrorKind::Mismatch;
    fail(k, node, std::string(what) + ": " + sa + " vs " + sb);
  }
}

Step Engine::step(State &s, const Constraint &c) {
  Store &st = s.store;
  switch (c.kind) {
    case CKind::IdCont: {
      int mu = st.find(c.a[1]);
      Tag tg = st.tag(mu);
      if (tg == Tag::TrMeta) return Step::Deferred;
      bool ok;
      if (tg == Tag::Empty) {
        ok = st.unify(c.a[0], c.a[2]);
      } else {
        Term t = st.at(mu);
        ok = st.unify(c.a[0], t.k[0]) && st.unify(c.a[2], t.k[2]) && st.unify(t.k[1], Store::kEmpty);
      }
      if (!ok) fail(ErrorKind::IdContTypeFails, c.node, show_triple(s, "id-cont-type", c.root));
      return Step::Done;
    }
    case CKind::Compat: {
      Tag t1 = st.tag(c.a[0]);
      Tag t2 = st.tag(c.a[1]);
      Tag t3 = st.tag(c.a[2]);
      auto bad = [&]() { fail(ErrorKind::CompatibleFails, c.node, show_triple(s, "compatible", c.root)); };
      if (t1 == Tag::Empty) {
        if (!st.unify(c.a[1], c.a[2])) bad();
        return Step::Done;
      }
      if (t1 == Tag::Step) {
        if (t3 == Tag::Empty) bad();
        Term m1 = st.at(c.a[0]);
        if (t3 == Tag::TrMeta) {
          st.unify(c.a[2], st.step(m1.k[0], st.tr_meta(), m1.k[2]));
        }
        Term m3 = st.at(c.a[2]);
        if (!st.unify(m1.k[0], m3.k[0]) || !st.unify(m1.k[2], m3.k[2])) bad();
        Constraint n = c;
        n.a = {c.a[1], m3.k[1], m1.k[1]};
        s.pending.push_back(n);
        return Step::Done;
      }
      if (t2 == Tag::Empty) {
        if (!st.unify(c.a[0], c.a[2])) bad();
        return Step::Done;
      }
      if (t3 == Tag::Empty) {
        if (!st.unify(c.a[0], Store::kEmpty) || !st.unify(c.a[1], Store::kEmpty)) bad();
        return Step::Done;
      }
      return Step::Deferred;
    }
    case CKind::And: {
      int n_in = c.a[3] < 0 ? 2 : 3;
      int unknown = -1, n_unknown = 0;
      bool any_impure = false;
      for (int i = 1; i <= n_in; ++i) {
        Tag t = st.tag(c.a[i]);
        if (t == Tag::Impure) any_impure = true;
        if (t == Tag::PMeta) {
          unknown = c.a[i];
          ++n_unknown;
        }
      }
      auto bad = [&]() { fail(ErrorKind::PurityMismatch, c.node, "inconsistent purity"); };
      if (any_impure) {
        if (!st.unify(c.a[0], Store::kImpure)) bad();
        return Step::Done;
      }
      if (n_unknown == 0) {
        if (!st.unify(c.a[0], Store::kPure)) bad();
        return Step::Done;
      }
      Tag r = st.tag(c.a[0]);
      if (r == Tag::Pure) {
        for (int i = 1; i <= n_in; ++i)
          if (!st.unify(c.a[i], Store::kPure)) bad();
        return Step::Done;
      }
      if (r == Tag::Impure && n_unknown == 1) {
        st.unify(unknown, Store::kImpure);
        return Step::Done;
      }
      return Step::Deferred;
    }
    case CKind::Implies: {
      Tag p = st.tag(c.a[0]);
      Tag q = st.tag(c.a[1]);
      if (p == Tag::Impure || q == Tag::Pure) return Step::Done;
      if (p == Tag::Pure) {
        if (!st.unify(c.a[1], Store::kPure))
          fail(ErrorKind::PurityMismatch, c.node, "pure function with an effectful body");
        return Step::Done;
      }
      if (q == Tag::Impure) {
        st.unify(c.a[0], Store::kImpure);
        return Step::Done;
      }
      return Step::Deferred;
    }
    case CKind::AppEffect: {
      Tag p = st.tag(c.a[0]);
      if (p == Tag::PMeta) return Step::Deferred;
      if (p == Tag::Impure) {
        unify_or(s, c.a[5], c.a[1], c.node, "application trail");
        unify_or(s, c.a[6], c.a[2], c.node, "application answer type");
        unify_or(s, c.a[7], c.a[3], c.node, "argument trail");
        unify_or(s, c.a[8], c.a[4], c.node, "argument answer type");
      } else {
        unify_or(s, c.a[5], c.a[7], c.node, "application trail");
        unify_or(s, c.a[6], c.a[8], c.node, "application answer type");
      }
      return Step::Done;
    }
  }
  return Step::Deferred;
}

void Engine::propagate(State &s) {
  int rounds = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < s.pending.size();) {
      Constraint c = s.pending[i];
      if (step(s, c) == Step::Done) {
        s.pending.erase(s.pending.begin() + static_cast<std::ptrdiff_t>(i));
        progress = true;
      } else {
        ++i;
      }
    }
    if (++rounds > kMaxRounds)
      throw Fail{ErrorKind::NeedsAnnotation, nodes_[0].expr->loc, "constraint propagation limit"};
  }
}

int Engine::from_trail(State &s, const TrailPtr &t) {
  if (t->is_empty()) return Store::kEmpty;
  int in = from_type(s, t->in, 0);
  int next = from_trail(s, t->next);
  int out = from_type(s, t->out, 0);
  return s.store.step(in, next, out);
}

int Engine::from_type(State &s, const TypePtr &t, int node) {
  Store &st = s.store;
  switch (t->kind) {
    case SourceType::Kind::Base:
      return st.base(t->base);
    case SourceType::Kind::ImpureArrow:
      return st.arrow(Store::kImpure, from_type(s, t->dom, node), from_type(s, t->cod, node),
                      from_trail(s, t->mu_alpha), from_type(s, t->alpha, node),
                      from_trail(s, t->mu_beta), from_type(s, t->beta, node));
    case SourceType::Kind::PureArrow: {
      int m = st.tr_meta();
      int a = st.ty_meta();
      return st.arrow(Store::kPure, from_type(s, t->dom, node), from_type(s, t->cod, node), m, a,
                      m, a);
    }
  }
  return st.ty_meta();
}

int Engine::gen(State &s, std::vector<std::pair<std::string, int>> &env, const Expr &e) {
  Store &st = s.store;
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back({});
  nodes_[id].expr = &e;
  auto set_pure = [&](int t) {
    Node &n = nodes_[id];
    n.t = t;
    n.ma = n.mb = st.tr_meta();
    n.a = n.b = st.ty_meta();
    if (fg()) n.purity = Store::kPure;
  };
  auto set_fresh = [&](int t) {
    Node &n = nodes_[id];
    n.t = t;
    n.ma = st.tr_meta();
    n.a = st.ty_meta();
    n.mb = st.tr_meta();
    n.b = st.ty_meta();
  };
  auto add = [&](CKind k, std::array<int, 9> a) {
    Constraint c{k, a, {a[0], a[1], a[2]}, id};
    s.pending.push_back(c);
  };

  switch (e.kind) {
    case ExprKind::Int:
      set_pure(st.base(BaseType::Int));
      break;
    case ExprKind::Bool:
      set_pure(st.base(BaseType::Bool));
      break;
    case ExprKind::Str:
      set_pure(st.base(BaseType::String));
      break;
    case ExprKind::Var: {
      auto it = std::find_if(env.rbegin(), env.rend(), [&](const auto &b) { return b.first == e.name; });
      if (it == env.rend()) fail(ErrorKind::UnboundVariable, id, e.name);
      set_pure(it->second);
      break;
    }
    case ExprKind::Abs: {
      int param = e.annotation ? from_type(s, e.annotation, id) : st.ty_meta();
      env.emplace_back(e.name, param);
      int body = gen(s, env, *e.body());
      env.pop_back();
      const Node &bn = nodes_[body];
      int p = fg() ? st.p_meta() : Store::kImpure;
      int arrow = st.arrow(p, param, bn.t, bn.ma, bn.a, bn.mb, bn.b);
      if (fg()) add(CKind::Implies, {p, bn.purity});
      set_pure(arrow);
      nodes_[id].binder = param;
      nodes_[id].arrow = arrow;
      nodes_[id].kids = {body};
      break;
    }
    case ExprKind::App: {
      int f = gen(s, env, *e.lhs());
      int x = gen(s, env, *e.rhs());
      int p = fg() ? st.p_meta() : Store::kImpure;
      int fma = st.tr_meta(), fa = st.ty_meta(), fmb = st.tr_meta(), fb = st.ty_meta();
      int cod = st.ty_meta();
      int arrow = st.arrow(p, nodes_[x].t, cod, fma, fa, fmb, fb);
      set_fresh(cod);
      Node &n = nodes_[id];
      n.arrow = arrow;
      n.kids = {f, x};
      unify_or(s, nodes_[f].t, arrow, id, "operator type");
      unify_or(s, n.mb, nodes_[f].mb, id, "operator trail");
      unify_or(s, n.b, nodes_[f].b, id, "operator answer type");
      unify_or(s, nodes_[f].ma, nodes_[x].mb, id, "argument trail");
      unify_or(s, nodes_[f].a, nodes_[x].b, id, "argument answer type");
      add(CKind::AppEffect, {p, fma, fa, fmb, fb, n.ma, n.a, nodes_[x].ma, nodes_[x].a});
      if (fg()) {
        n.purity = st.p_meta();
        add(CKind::And, {n.purity, nodes_[f].purity, nodes_[x].purity, p});
      }
      break;
    }
    case ExprKind::Control: {
      ++controls_;
      bool pure_k = e.annotation && e.annotation->kind == SourceType::Kind::PureArrow;
      int k;
      if (e.annotation) {
        if (!e.annotation->is_arrow())
          fail(ErrorKind::Mismatch, id, "continuation type must be a function type: " +
                                           to_string(*e.annotation));
        k = from_type(s, e.annotation, id);
      } else {
        k = st.arrow(Store::kImpure, st.ty_meta(), st.ty_meta(), st.tr_meta(), st.ty_meta(),
                     st.tr_meta(), st.ty_meta());
      }
      Term kt = st.at(k);
      set_fresh(kt.k[1]);
      nodes_[id].binder = k;
      env.emplace_back(e.name, k);
      int body = gen(s, env, *e.body());
      env.pop_back();
      Node &n = nodes_[id];
      const Node &bn = nodes_[body];
      n.kids = {body};
      if (fg()) n.purity = Store::kImpure;
      unify_or(s, n.a, pure_k ? kt.k[2] : kt.k[6], id, "continuation answer type");
      unify_or(s, bn.mb, Store::kEmpty, id, "control body trail");
      unify_or(s, bn.b, n.b, id, "control body answer type");
      add(CKind::IdCont, {bn.t, bn.ma, bn.a});
      if (pure_k) {
        unify_or(s, n.mb, n.ma, id, "pure control trail");
      } else {
        int mu0 = e.witness ? from_trail(s, e.witness) : st.tr_meta();
        n.mu0 = mu0;
        add(CKind::Compat, {st.step(kt.k[2], kt.k[3], kt.k[4]), kt.k[5], mu0});
        add(CKind::Compat, {n.mb, mu0, n.ma});
      }
      break;
    }
    case ExprKind::Prompt: {
      int body = gen(s, env, *e.body());
      const Node &bn = nodes_[body];
      int bt = bn.t, bma = bn.ma, ba = bn.a, bmb = bn.mb, bb = bn.b;
      set_pure(bb);
      nodes_[id].kids = {body};
      unify_or(s, bmb, Store::kEmpty, id, "prompt body trail");
      add(CKind::IdCont, {bt, bma, ba});
      break;
    }
    case ExprKind::Plus:
    case ExprKind::Mul: {
      int l = gen(s, env, *e.lhs());
      int r = gen(s, env, *e.rhs());
      int i = st.base(BaseType::Int);
      unify_or(s, nodes_[l].t, i, id, "left operand");
      unify_or(s, nodes_[r].t, i, id, "right operand");
      unify_or(s, nodes_[r].mb, nodes_[l].ma, id, "operand trail");
      unify_or(s, nodes_[r].b, nodes_[l].a, id, "operand answer type");
      Node &n = nodes_[id];
      n.t = i;
      n.ma = nodes_[r].ma;
      n.a = nodes_[r].a;
      n.mb = nodes_[l].mb;
      n.b = nodes_[l].b;
      n.kids = {l, r};
      if (fg()) {
        n.purity = st.p_meta();
        add(CKind::And, {n.purity, nodes_[l].purity, nodes_[r].purity, -1});
      }
      break;
    }
    case ExprKind::Is0:
    case ExprKind::B2S: {
      int o = gen(s, env, *e.body());
      bool is0 = e.kind == ExprKind::Is0;
      unify_or(s, nodes_[o].t, st.base(is0 ? BaseType::Int : BaseType::Bool), id, "operand");
      Node &n = nodes_[id];
      const Node &on = nodes_[o];
      n.t = st.base(is0 ? BaseType::Bool : BaseType::String);
      n.ma = on.ma;
      n.a = on.a;
      n.mb = on.mb;
      n.b = on.b;
      n.purity = on.purity;
      n.kids = {o};
      break;
    }
    case ExprKind::Seq:
      fail(ErrorKind::Mismatch, id, "sequencing must be desugared before checking");
  }
  return id;
}

void Engine::search(State s, int depth, std::vector<State> &out) {
  if (out.size() >= kMaxSolutions) return;
  if (++explored_ > kMaxStates) {
    if (!first_fail_)
      first_fail_ = Fail{ErrorKind::NeedsAnnotation, nodes_[0].expr->loc, "typing search budget exhausted"};
    return;
  }
  try {
    propagate(s);
  } catch (const Fail &f) {
    if (!first_fail_) first_fail_ = f;
    return;
  }
  if (s.pending.empty()) {
    out.push_back(std::move(s));
    return;
  }
  Store &st = s.store;
  for (const Constraint &c : s.pending) {
    int v = -1;
    if (c.kind == CKind::Implies || c.kind == CKind::AppEffect) v = c.a[0];
    if (c.kind == CKind::And) {
      int n_in = c.a[3] < 0 ? 2 : 3;
      for (int i = 0; i <= n_in && v < 0; ++i)
        if (st.tag(c.a[i]) == Tag::PMeta) v = c.a[i];
    }
    if (v < 0) continue;
    std::size_t before = out.size();
    State pure = s;
    pure.store.unify(v, Store::kPure);
    search(std::move(pure), depth, out);
    if (out.size() == before) {
      st.unify(v, Store::kImpure);
      search(std::move(s), depth, out);
    }
    return;
  }
  const Constraint c = s.pending.front();
  int m = c.kind == CKind::IdCont ? c.a[1] : c.a[0];
  int limit = static_cast<int>(opts_.check.budget.max_depth) + 2 * controls_;
  State empty = s;
  empty.store.unify(m, Store::kEmpty);
  search(std::move(empty), depth, out);
  if (depth >= limit) {
    if (!first_fail_)
      first_fail_ = Fail{ErrorKind::NeedsAnnotation, nodes_[c.node].expr->loc, "trail search depth exceeded"};
    return;
  }
  int stepped = c.kind == CKind::IdCont ? st.step(c.a[0], Store::kEmpty, c.a[2])
                                        : st.step(st.ty_meta(), st.tr_meta(), st.ty_meta());
  st.unify(m, stepped);
  search(std::move(s), depth + 1, out);
}

struct Residual {
  int node;
};

struct Engine::Grounder {
  Store &st;
  bool defaults;
  int node = 0;
  std::map<int, TypePtr> types;
  std::map<int, TrailPtr> trails;
  std::size_t size = 0;

  TypePtr type(int id) {
    id = st.find(id);
    if (auto it = types.find(id); it != types.end()) return it->second;
    Term t = st.at(id);
    TypePtr r;
    switch (t.tag) {
      case Tag::TyMeta:
        if (!defaults) throw Residual{node};
        st.unify(id, st.base(BaseType::Int));
        r = int_type();
        break;
      case Tag::Base:
        r = base_type(t.base);
        break;
      case Tag::Arrow:
        if (st.tag(t.k[0]) == Tag::PMeta) st.unify(t.k[0], Store::kPure);
        if (st.tag(t.k[0]) == Tag::Pure)
          r = pure_arrow(type(t.k[1]), type(t.k[2]));
        else
          r = impure_arrow(type(t.k[1]), type(t.k[2]), trail(t.k[3]), type(t.k[4]),
                           trail(t.k[5]), type(t.k[6]));
        break;
      default:
        throw Residual{node};
    }
    types.emplace(id, r);
    return r;
  }

  TrailPtr trail(int id) {
    id = st.find(id);
    if (auto it = trails.find(id); it != trails.end()) return it->second;
    Term t = st.at(id);
    TrailPtr r;
    switch (t.tag) {
      case Tag::TrMeta:
        if (!defaults) throw Residual{node};
        st.unify(id, Store::kEmpty);
        r = empty_trail();
        break;
      case Tag::Empty:
        r = empty_trail();
        break;
      case Tag::Step:
        r = step_trail(type(t.k[0]), trail(t.k[1]), type(t.k[2]));
        break;
      default:
        throw Residual{node};
    }
    trails.emplace(id, r);
    return r;
  }

  TypePtr sized(TypePtr t) {
    size += type_size(*t);
    return t;
  }
  TrailPtr sized(TrailPtr t) {
    size += trail_size(*t);
    return t;
  }
};

namespace {
void check_annotations(const Expr &e, bool original, bool need_control) {
  if (original) {
    if (e.annotation && mentions_pure_arrow(*e.annotation))
      throw TypeError(ErrorKind::PureArrowInOriginalSystem, e.loc, to_string(*e.annotation));
  }
  if (need_control && e.kind == ExprKind::Control && !e.annotation)
    throw TypeError(ErrorKind::NeedsAnnotation, e.loc, "control " + e.name + " needs a continuation type");
  for (const auto &k : e.kids) check_annotations(*k, original, need_control);
}
}  // namespace

EngineResult Engine::run(const TypeEnv &env, const ExprPtr &e) {
  check_annotations(*e, !fg(), opts_.require_control_annotations);
  for (const auto &[name, ty] : env.bindings())
    if (!fg() && mentions_pure_arrow(*ty))
      throw TypeError(ErrorKind::PureArrowInOriginalSystem, e->loc, name + " : " + to_string(*ty));

  State s;
  std::vector<std::pair<std::string, int>> scope;
  for (const auto &[name, ty] : env.bindings()) scope.emplace_back(name, from_type(s, ty, 0));

  std::vector<State> sols;
  try {
    int root = gen(s, scope, *e);
    const Node &r = nodes_[root];
    if (opts_.requested) {
      const Judgment &j = *opts_.requested;
      unify_or(s, r.t, from_type(s, j.ty, root), root, "requested type");
      unify_or(s, r.ma, from_trail(s, j.mu_alpha), root, "requested final trail");
      unify_or(s, r.a, from_type(s, j.alpha, root), root, "requested final answer type");
      unify_or(s, r.mb, from_trail(s, j.mu_beta), root, "requested initial trail");
      unify_or(s, r.b, from_type(s, j.beta, root), root, "requested initial answer type");
    }
    propagate(s);
    State plain = s;
    if (!opts_.requested) {
      for (auto [x, y] : {std::pair{r.mb, int(Store::kEmpty)}, std::pair{r.ma, int(Store::kEmpty)},
                          std::pair{r.a, r.t}, std::pair{r.b, r.t}}) {
        State t = s;
        if (!t.store.unify(x, y)) continue;
        try {
          propagate(t);
          s = std::move(t);
        } catch (const Fail &) {
        }
      }
    }
    search(std::move(s), 0, sols);
    if (sols.empty() && !opts_.requested) {
      explored_ = 0;
      search(std::move(plain), 0, sols);
    }
  } catch (const Fail &f) {
    throw TypeError(f.kind, f.loc, f.details);
  }
  if (sols.empty()) {
    if (first_fail_) throw TypeError(first_fail_->kind, first_fail_->loc, first_fail_->details);
    throw TypeError(ErrorKind::NeedsAnnotation, e->loc, "no typing found");
  }

  bool defaults = fg() || opts_.check.default_residuals;
  std::optional<EngineResult> best;
  std::size_t best_size = 0;
  std::string best_sig;
  bool ambiguous = false;
  std::optional<Residual> residual;
  for (State &sol : sols) {
    Grounder g{sol.store, defaults, 0, {}, {}, 0};
    std::function<std::pair<ExprPtr, TypedNode>(int)> build = [&](int id) {
      const Node &n = nodes_[id];
      g.node = id;
      TypedNode tn;
      tn.judgment = {g.sized(g.type(n.t)), g.sized(g.trail(n.ma)), g.sized(g.type(n.a)),
                     g.sized(g.trail(n.mb)), g.sized(g.type(n.b))};
      if (n.binder >= 0) tn.binder_type = g.sized(g.type(n.binder));
      if (n.arrow >= 0) tn.arrow = g.type(n.arrow);
      if (n.mu0 >= 0) tn.mu0 = g.sized(g.trail(n.mu0));
      std::vector<ExprPtr> kids;
      for (int k : n.kids) {
        auto [ke, kt] = build(k);
        kids.push_back(ke);
        tn.children.push_back(std::move(kt));
      }
      const Expr &x = *n.expr;
      ExprPtr out;
      if (x.kind == ExprKind::Abs)
        out = make_abs(x.name, tn.binder_type, kids[0], x.loc);
      else if (x.kind == ExprKind::Control)
        out = make_control(x.name, tn.binder_type, tn.mu0, kids[0], x.loc);
      else
        out = with_kids(x, std::move(kids));
      return std::pair{out, std::move(tn)};
    };
    try {
      auto [ex, tn] = build(0);
      std::string sig = print(*ex) + " : " + to_string(tn.judgment);
      if (!best || g.size < best_size) {
        best = EngineResult{Elaboration{ex, std::move(tn)}};
        best_size = g.size;
        best_sig = sig;
        ambiguous = false;
      } else if (g.size == best_size && sig != best_sig) {
        ambiguous = true;
      }
    } catch (const Residual &r) {
      if (!residual) residual = r;
    }
  }
  if (!best) {
    throw TypeError(ErrorKind::NeedsAnnotation, nodes_[residual ? residual->node : 0].expr->loc,
                    "type not determined; add annotations");
  }
  if (ambiguous)
    throw TypeError(ErrorKind::NeedsAnnotation, e->loc, "ambiguous typing; add annotations");
  return std::move(*best);
}

}  // namespace

EngineResult run_engine(const TypeEnv &env, const ExprPtr &e, const EngineOptions &opts) {
  Engine engine(opts);
  return engine.run(env, desugar(e));
}

}  // namespace lfk::detail
