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

#include "lfk/finegrained.hpp"

#include <functional>
#include <map>

#include "engine.hpp"

namespace lfk {

std::string to_string(Rule r) {
  switch (r) {
    case Rule::Const:
      return "Const";
    case Rule::Var:
      return "Var";
    case Rule::PAbs:
      return "PAbs";
    case Rule::IAbs:
      return "IAbs";
    case Rule::PApp:
      return "PApp";
    case Rule::PIApp:
      return "PIApp";
    case Rule::IApp:
      return "IApp";
    case Rule::PPrim:
      return "PPrim";
    case Rule::IPrim:
      return "IPrim";
    case Rule::PControl:
      return "PControl";
    case Rule::IControl:
      return "IControl";
    case Rule::Prompt:
      return "Prompt";
    case Rule::Exp:
      return "Exp";
  }
  return "?";
}

namespace {

bool is_pure_arrow(const TypePtr &t) { return t && t->kind == SourceType::Kind::PureArrow; }

/// Wraps a pure derivation for an impure position.
PurityDerivation impure(PurityDerivation d, const Judgment &j) {
  if (!d.pure()) return d;
  PurityDerivation exp;
  exp.rule = Rule::Exp;
  exp.expr = d.expr;
  exp.ty = d.ty;
  exp.judgment = j;
  exp.children.push_back(std::move(d));
  return exp;
}

PurityDerivation build(const ExprPtr &e, const TypedNode &tn) {
  PurityDerivation d;
  d.expr = e;
  d.ty = tn.judgment.ty;
  d.annotation = tn.binder_type;
  d.arrow = tn.arrow;
  auto sub = [&](std::size_t i) { return build(e->kids[i], tn.children[i]); };
  auto as_impure = [&](std::size_t i) {
    return impure(build(e->kids[i], tn.children[i]), tn.children[i].judgment);
  };
  switch (e->kind) {
    case ExprKind::Int:
    case ExprKind::Bool:
    case ExprKind::Str:
      d.rule = Rule::Const;
      break;
    case ExprKind::Var:
      d.rule = Rule::Var;
      break;
    case ExprKind::Abs:
      if (is_pure_arrow(tn.arrow)) {
        d.rule = Rule::PAbs;
        d.children.push_back(sub(0));
      } else {
        d.rule = Rule::IAbs;
        d.children.push_back(as_impure(0));
      }
      break;
    case ExprKind::App:
    case ExprKind::Plus:
    case ExprKind::Mul:
    case ExprKind::Is0:
    case ExprKind::B2S: {
      bool app = e->kind == ExprKind::App;
      std::vector<PurityDerivation> kids;
      bool all_pure = true;
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        kids.push_back(sub(i));
        all_pure = all_pure && kids.back().pure();
      }
      bool pure_op = !app || is_pure_arrow(tn.arrow);
      if (pure_op && all_pure) {
        d.rule = app ? Rule::PApp : Rule::PPrim;
        d.children = std::move(kids);
      } else {
        d.rule = !app ? Rule::IPrim : pure_op ? Rule::PIApp : Rule::IApp;
        d.judgment = tn.judgment;
        for (std::size_t i = 0; i < kids.size(); ++i)
          d.children.push_back(impure(std::move(kids[i]), tn.children[i].judgment));
      }
      break;
    }
    case ExprKind::Control:
      d.rule = is_pure_arrow(tn.binder_type) ? Rule::PControl : Rule::IControl;
      d.judgment = tn.judgment;
      d.mu0 = tn.mu0;
      d.children.push_back(as_impure(0));
      break;
    case ExprKind::Prompt:
      d.rule = Rule::Prompt;
      d.children.push_back(as_impure(0));
      break;
    case ExprKind::Seq:
      throw std::invalid_argument("sequencing must be desugared");
  }
  return d;
}

}  // namespace

FgResult fg_check(const TypeEnv &env, const ExprPtr &e, const CheckOptions &opts) {
  detail::EngineOptions eo;
  eo.system = detail::System::FineGrained;
  eo.check = opts;
  auto r = detail::run_engine(env, e, eo);
  FgResult out;
  out.derivation = build(r.elaboration.expr, r.elaboration.derivation);
  if (out.derivation.pure())
    out.pure = PureJudgment{out.derivation.ty};
  else
    out.impure = *out.derivation.judgment;
  return out;
}

std::size_t count_rule(const PurityDerivation &d, Rule rule) {
  std::size_t n = d.rule == rule ? 1 : 0;
  for (const auto &c : d.children) n += count_rule(c, rule);
  return n;
}

namespace {

class Selective {
 public:
  CExprPtr go(const PurityDerivation &d);

 private:
  std::string fresh(const char *stem) { return std::string(stem) + "#" + std::to_string(++counter_); }

  static CTypePtr kont(const Judgment &j) {
    return c_arrow(cps_type(*j.ty), c_arrow(cps_trail(*j.mu_alpha), cps_type(*j.alpha)));
  }
  static Instance identity_instance(const Judgment &j) {
    return Instance{j.ty, j.alpha, j.mu_alpha, nullptr, nullptr};
  }

  CExprPtr wrap(const Judgment &j, const std::function<CExprPtr(CExprPtr, CExprPtr)> &body) {
    std::string k = fresh("k");
    std::string t = fresh("t");
    return c_abs(k, kont(j), c_abs(t, cps_trail(*j.mu_beta), body(c_var(k), c_var(t))));
  }

  CExprPtr with_binding(const std::string &name, std::optional<CExprPtr> value,
                        const std::function<CExprPtr()> &body) {
    std::optional<CExprPtr> hidden;
    if (auto it = subst_.find(name); it != subst_.end()) hidden = it->second;
    if (value)
      subst_[name] = *value;
    else
      subst_.erase(name);
    CExprPtr out = body();
    if (hidden)
      subst_[name] = *hidden;
    else
      subst_.erase(name);
    return out;
  }

  int counter_ = 0;
  std::map<std::string, CExprPtr> subst_;
};

PrimOp prim_of(ExprKind k) {
  switch (k) {
    case ExprKind::Plus:
      return PrimOp::Plus;
    case ExprKind::Mul:
      return PrimOp::Mul;
    case ExprKind::Is0:
      return PrimOp::Is0;
    default:
      return PrimOp::B2S;
  }
}

CExprPtr Selective::go(const PurityDerivation &d) {
  const Expr &e = *d.expr;
  switch (d.rule) {
    case Rule::Const:
      if (e.kind == ExprKind::Int) return c_int(e.int_value);
      if (e.kind == ExprKind::Bool) return c_bool(e.bool_value);
      return c_str(e.name);
    case Rule::Var: {
      auto it = subst_.find(e.name);
      return it != subst_.end() ? it->second : c_var(e.name);
    }
    case Rule::PAbs:
      return c_abs(e.name, cps_type(*d.annotation),
                   with_binding(e.name, std::nullopt, [&] { return go(d.children[0]); }));
    case Rule::IAbs: {
      const SourceType &a = *d.arrow;
      std::string k = fresh("k");
      std::string t = fresh("t");
      CExprPtr body = with_binding(e.name, std::nullopt, [&] { return go(d.children[0]); });
      return c_abs(e.name, cps_type(*a.dom),
                   c_abs(k, c_arrow(cps_type(*a.cod), c_arrow(cps_trail(*a.mu_alpha), cps_type(*a.alpha))),
                         c_abs(t, cps_trail(*a.mu_beta), c_app(body, c_var(k), c_var(t)))));
    }
    case Rule::PApp:
      return c_app(go(d.children[0]), go(d.children[1]));
    case Rule::PPrim: {
      std::vector<CExprPtr> args;
      for (const auto &c : d.children) args.push_back(go(c));
      return c_prim(prim_of(e.kind), std::move(args));
    }
    case Rule::PIApp:
    case Rule::IApp:
    case Rule::IPrim: {
      std::vector<CExprPtr> imgs;
      for (const auto &c : d.children) imgs.push_back(go(c));
      std::vector<std::string> vs, ts;
      for (std::size_t i = 0; i < imgs.size(); ++i) {
        vs.push_back(fresh("v"));
        ts.push_back(fresh("t"));
      }
      return wrap(*d.judgment, [&](CExprPtr k, CExprPtr t) {
        CExprPtr last = c_var(ts.back());
        CExprPtr inner;
        if (d.rule == Rule::IApp) {
          inner = c_app(c_app(c_var(vs[0]), c_var(vs[1])), k, last);
        } else if (d.rule == Rule::PIApp) {
          inner = c_app(k, c_app(c_var(vs[0]), c_var(vs[1])), last);
        } else {
          std::vector<CExprPtr> args;
          for (const auto &v : vs) args.push_back(c_var(v));
          inner = c_app(k, c_prim(prim_of(e.kind), std::move(args)), last);
        }
        for (std::size_t i = imgs.size(); i-- > 0;) {
          const Judgment &j = *d.children[i].judgment;
          CExprPtr cont = c_abs(vs[i], cps_type(*j.ty), c_abs(ts[i], cps_trail(*j.mu_alpha), inner));
          inner = c_app(imgs[i], cont, i == 0 ? t : c_var(ts[i - 1]));
        }
        return inner;
      });
    }
    case Rule::PControl:
    case Rule::IControl: {
      const Judgment &j = *d.judgment;
      const Judgment &jb = *d.children[0].judgment;
      const SourceType &kt = *d.annotation;
      std::string k = fresh("k");
      std::string t = fresh("t");
      std::string x = fresh("x");
      CExprPtr reified;
      if (d.rule == Rule::PControl) {
        reified = c_abs(x, cps_type(*kt.dom), c_app(c_var(k), c_var(x), c_var(t)));
      } else {
        std::string k2 = fresh("k");
        std::string t2 = fresh("t");
        CExprPtr trail = c_app(c_append(Instance{nullptr, nullptr, j.mu_beta, d.mu0, j.mu_alpha}), c_var(t),
                               c_app(c_cons(Instance{kt.cod, kt.alpha, kt.mu_alpha, kt.mu_beta, d.mu0}),
                                     c_var(k2), c_var(t2)));
        reified = c_abs(
            x, cps_type(*kt.dom),
            c_abs(k2, c_arrow(cps_type(*kt.cod), c_arrow(cps_trail(*kt.mu_alpha), cps_type(*kt.alpha))),
                  c_abs(t2, cps_trail(*kt.mu_beta), c_app(c_var(k), c_var(x), trail))));
      }
      CExprPtr body = with_binding(e.name, reified, [&] { return go(d.children[0]); });
      return c_abs(k, kont(j),
                   c_abs(t, cps_trail(*j.mu_beta),
                         c_app(body, c_kid(identity_instance(jb)), c_unit())));
    }
    case Rule::Prompt:
      return c_app(go(d.children[0]), c_kid(identity_instance(*d.children[0].judgment)), c_unit());
    case Rule::Exp: {
      CExprPtr v = go(d.children[0]);
      return wrap(*d.judgment, [&](CExprPtr k, CExprPtr t) { return c_app(k, v, t); });
    }
  }
  return nullptr;
}

}  // namespace

CExprPtr selective_cps(const PurityDerivation &d) {
  Selective s;
  return s.go(d);
}

CExprPtr selective_program(const PurityDerivation &d) {
  CExprPtr img = selective_cps(d);
  if (d.pure()) return img;
  const Judgment &j = *d.judgment;
  return c_app(img, c_kid(Instance{j.ty, j.alpha, j.mu_alpha, nullptr, nullptr}), c_unit());
}

CTypePtr selective_type(const FgResult &r) {
  if (r.pure) return cps_type(*r.pure->ty);
  return cps_judgment(*r.impure);
}

COutcome run_selective(const FgResult &r, const CEvalOptions &opts) {
  return eval_c(selective_program(r.derivation), opts);
}

}  // namespace lfk
