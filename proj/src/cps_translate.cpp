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

#include <functional>
#include <map>

#include "lfk/cps.hpp"

namespace lfk {

namespace {

class Translator {
 public:
  CExprPtr go(const Expr &e, const TypedNode *tn);

 private:
  std::string fresh(const char *stem) { return std::string(stem) + "#" + std::to_string(++counter_); }

  CTypePtr ty(const TypePtr &t) const { return t ? cps_type(*t) : nullptr; }
  CTypePtr tr(const TrailPtr &t) const { return t ? cps_trail(*t) : nullptr; }
  CTypePtr kont(const TypedNode *tn) const {
    if (!tn) return nullptr;
    const Judgment &j = tn->judgment;
    return c_arrow(cps_type(*j.ty), c_arrow(cps_trail(*j.mu_alpha), cps_type(*j.alpha)));
  }
  static const TypedNode *kid(const TypedNode *tn, std::size_t i) {
    return tn ? &tn->children[i] : nullptr;
  }
  static std::optional<Instance> identity_instance(const TypedNode *tn) {
    if (!tn) return std::nullopt;
    const Judgment &j = tn->judgment;
    return Instance{j.ty, j.alpha, j.mu_alpha, nullptr, nullptr};
  }

  CExprPtr value(const Expr &e, const TypedNode *tn);
  CExprPtr wrap(const TypedNode *tn, const std::function<CExprPtr(CExprPtr, CExprPtr)> &body);

  int counter_ = 0;
  std::map<std::string, CExprPtr> subst_;
};

CExprPtr Translator::wrap(const TypedNode *tn,
                          const std::function<CExprPtr(CExprPtr, CExprPtr)> &body) {
  std::string k = fresh("k");
  std::string t = fresh("t");
  CTypePtr tt = tn ? cps_trail(*tn->judgment.mu_beta) : nullptr;
  return c_abs(k, kont(tn), c_abs(t, tt, body(c_var(k), c_var(t))));
}

CExprPtr Translator::value(const Expr &e, const TypedNode *tn) {
  switch (e.kind) {
    case ExprKind::Int:
      return c_int(e.int_value);
    case ExprKind::Bool:
      return c_bool(e.bool_value);
    case ExprKind::Str:
      return c_str(e.name);
    case ExprKind::Var: {
      auto it = subst_.find(e.name);
      return it != subst_.end() ? it->second : c_var(e.name);
    }
    case ExprKind::Abs: {
      const SourceType *arrow = tn ? tn->arrow.get() : nullptr;
      if (arrow && arrow->kind != SourceType::Kind::ImpureArrow)
        throw std::invalid_argument("full translation needs impure arrows");
      std::optional<CExprPtr> hidden;
      if (auto it = subst_.find(e.name); it != subst_.end()) {
        hidden = it->second;
        subst_.erase(it);
      }
      std::string k = fresh("k");
      std::string t = fresh("t");
      CExprPtr body = go(*e.body(), kid(tn, 0));
      if (hidden) subst_[e.name] = *hidden;
      CTypePtr kt = arrow ? c_arrow(cps_type(*arrow->cod),
                                    c_arrow(cps_trail(*arrow->mu_alpha), cps_type(*arrow->alpha)))
                          : nullptr;
      return c_abs(e.name, arrow ? cps_type(*arrow->dom) : nullptr,
                   c_abs(k, kt, c_abs(t, arrow ? cps_trail(*arrow->mu_beta) : nullptr,
                                      c_app(body, c_var(k), c_var(t)))));
    }
    default:
      return nullptr;
  }
}

CExprPtr Translator::go(const Expr &e, const TypedNode *tn) {
  switch (e.kind) {
    case ExprKind::Int:
    case ExprKind::Bool:
    case ExprKind::Str:
    case ExprKind::Var:
    case ExprKind::Abs: {
      CExprPtr v = value(e, tn);
      return wrap(tn, [&](CExprPtr k, CExprPtr t) { return c_app(k, v, t); });
    }
    case ExprKind::App:
    case ExprKind::Plus:
    case ExprKind::Mul: {
      const TypedNode *n1 = kid(tn, 0);
      const TypedNode *n2 = kid(tn, 1);
      CExprPtr e1 = go(*e.lhs(), n1);
      CExprPtr e2 = go(*e.rhs(), n2);
      std::string v1 = fresh("v"), t1 = fresh("t"), v2 = fresh("v"), t2 = fresh("t");
      return wrap(tn, [&](CExprPtr k, CExprPtr t) {
        CExprPtr inner;
        if (e.kind == ExprKind::App) {
          inner = c_app(c_app(c_var(v1), c_var(v2)), k, c_var(t2));
        } else {
          PrimOp op = e.kind == ExprKind::Plus ? PrimOp::Plus : PrimOp::Mul;
          inner = c_app(k, c_prim(op, {c_var(v1), c_var(v2)}), c_var(t2));
        }
        CExprPtr k2 = c_abs(v2, n2 ? ty(n2->judgment.ty) : nullptr,
                            c_abs(t2, n2 ? tr(n2->judgment.mu_alpha) : nullptr, inner));
        CExprPtr k1 = c_abs(v1, n1 ? ty(n1->judgment.ty) : nullptr,
                            c_abs(t1, n1 ? tr(n1->judgment.mu_alpha) : nullptr,
                                  c_app(e2, k2, c_var(t1))));
        return c_app(e1, k1, t);
      });
    }
    case ExprKind::Is0:
    case ExprKind::B2S: {
      const TypedNode *n1 = kid(tn, 0);
      CExprPtr e1 = go(*e.body(), n1);
      std::string v = fresh("v"), t1 = fresh("t");
      PrimOp op = e.kind == ExprKind::Is0 ? PrimOp::Is0 : PrimOp::B2S;
      return wrap(tn, [&](CExprPtr k, CExprPtr t) {
        CExprPtr k1 = c_abs(v, n1 ? ty(n1->judgment.ty) : nullptr,
                            c_abs(t1, n1 ? tr(n1->judgment.mu_alpha) : nullptr,
                                  c_app(k, c_prim(op, {c_var(v)}), c_var(t1))));
        return c_app(e1, k1, t);
      });
    }
    case ExprKind::Prompt: {
      const TypedNode *nb = kid(tn, 0);
      CExprPtr body = go(*e.body(), nb);
      return wrap(tn, [&](CExprPtr k, CExprPtr t) {
        return c_app(k, c_app(body, c_kid(identity_instance(nb)), c_unit()), t);
      });
    }
    case ExprKind::Control: {
      const TypedNode *nb = kid(tn, 0);
      const SourceType *kt = tn ? tn->binder_type.get() : nullptr;
      if (kt && kt->kind != SourceType::Kind::ImpureArrow)
        throw std::invalid_argument("full translation needs impure continuation types");
      std::string k = fresh("k");
      std::string t = fresh("t");
      std::string x = fresh("x"), k2 = fresh("k"), t2 = fresh("t");
      std::optional<Instance> app_inst, cons_inst;
      if (tn) {
        const Judgment &j = tn->judgment;
        app_inst = Instance{nullptr, nullptr, j.mu_beta, tn->mu0, j.mu_alpha};
        cons_inst = Instance{kt->cod, kt->alpha, kt->mu_alpha, kt->mu_beta, tn->mu0};
      }
      CExprPtr trail = c_app(c_append(app_inst), c_var(t),
                             c_app(c_cons(cons_inst), c_var(k2), c_var(t2)));
      CExprPtr reified = c_abs(
          x, kt ? cps_type(*kt->dom) : nullptr,
          c_abs(k2,
                kt ? c_arrow(cps_type(*kt->cod), c_arrow(cps_trail(*kt->mu_alpha), cps_type(*kt->alpha)))
                   : nullptr,
                c_abs(t2, kt ? cps_trail(*kt->mu_beta) : nullptr,
                      c_app(c_var(k), c_var(x), trail))));
      std::optional<CExprPtr> hidden;
      if (auto it = subst_.find(e.name); it != subst_.end()) hidden = it->second;
      subst_[e.name] = reified;
      CExprPtr body = go(*e.body(), nb);
      if (hidden)
        subst_[e.name] = *hidden;
      else
        subst_.erase(e.name);
      CTypePtr tt = tn ? cps_trail(*tn->judgment.mu_beta) : nullptr;
      return c_abs(k, kont(tn),
                   c_abs(t, tt, c_app(body, c_kid(identity_instance(nb)), c_unit())));
    }
    case ExprKind::Seq:
      throw std::invalid_argument("sequencing must be desugared before translation");
  }
  return nullptr;
}

}  // namespace

CExprPtr cps_expr(const ExprPtr &e) {
  Translator tr;
  return tr.go(*desugar(e), nullptr);
}

CExprPtr cps_expr(const Elaboration &elab) {
  Translator tr;
  return tr.go(*elab.expr, &elab.derivation);
}

CExprPtr cps_program(const ExprPtr &e) { return c_app(cps_expr(e), c_kid(), c_unit()); }

CExprPtr cps_program(const Elaboration &elab) {
  const Judgment &j = elab.derivation.judgment;
  return c_app(cps_expr(elab), c_kid(Instance{j.ty, j.alpha, j.mu_alpha, nullptr, nullptr}),
               c_unit());
}

COutcome run_cps(const ExprPtr &e, const CEvalOptions &opts) { return eval_c(cps_program(e), opts); }

}  // namespace lfk
