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

#include "lfk/cps.hpp"

#include "lfk/relations.hpp"

namespace lfk {

namespace {

CExprPtr node(CExpr e) { return std::make_shared<const CExpr>(std::move(e)); }

}  // namespace

CTypePtr c_base(BaseType b) {
  auto make = [](BaseType x) {
    CType t;
    t.base = x;
    return std::make_shared<const CType>(t);
  };
  static const CTypePtr table[] = {make(BaseType::Int), make(BaseType::Bool),
                                   make(BaseType::String)};
  return table[static_cast<int>(b)];
}

CTypePtr c_arrow(CTypePtr dom, CTypePtr cod) {
  CType t;
  t.kind = CType::Kind::Arrow;
  t.dom = std::move(dom);
  t.cod = std::move(cod);
  return std::make_shared<const CType>(std::move(t));
}

CTypePtr c_empty_trail() {
  static const CTypePtr empty = [] {
    CType t;
    t.kind = CType::Kind::EmptyTrail;
    return std::make_shared<const CType>(t);
  }();
  return empty;
}

bool operator==(const CType &a, const CType &b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case CType::Kind::Base:
      return a.base == b.base;
    case CType::Kind::Arrow:
      return *a.dom == *b.dom && *a.cod == *b.cod;
    case CType::Kind::EmptyTrail:
      return true;
  }
  return false;
}

bool same_ctype(const CTypePtr &a, const CTypePtr &b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

std::string to_string(const CType &t) {
  switch (t.kind) {
    case CType::Kind::Base:
      return to_string(t.base);
    case CType::Kind::EmptyTrail:
      return "*";
    case CType::Kind::Arrow: {
      std::string d = to_string(*t.dom);
      if (t.dom->kind == CType::Kind::Arrow) d = "(" + d + ")";
      return d + " -> " + to_string(*t.cod);
    }
  }
  return "?";
}

CTypePtr cps_type(const SourceType &t) {
  switch (t.kind) {
    case SourceType::Kind::Base:
      return c_base(t.base);
    case SourceType::Kind::PureArrow:
      return c_arrow(cps_type(*t.dom), cps_type(*t.cod));
    case SourceType::Kind::ImpureArrow: {
      CTypePtr k = c_arrow(cps_type(*t.cod), c_arrow(cps_trail(*t.mu_alpha), cps_type(*t.alpha)));
      return c_arrow(cps_type(*t.dom),
                     c_arrow(k, c_arrow(cps_trail(*t.mu_beta), cps_type(*t.beta))));
    }
  }
  return nullptr;
}

CTypePtr cps_trail(const TrailType &mu) {
  if (mu.is_empty()) return c_empty_trail();
  return c_arrow(cps_type(*mu.in), c_arrow(cps_trail(*mu.next), cps_type(*mu.out)));
}

CTypePtr cps_judgment(const Judgment &j) {
  CTypePtr k = c_arrow(cps_type(*j.ty), c_arrow(cps_trail(*j.mu_alpha), cps_type(*j.alpha)));
  return c_arrow(k, c_arrow(cps_trail(*j.mu_beta), cps_type(*j.beta)));
}

CExprPtr c_int(std::int64_t n) {
  CExpr e;
  e.kind = CKind::Int;
  e.int_value = n;
  return node(std::move(e));
}

CExprPtr c_bool(bool b) {
  CExpr e;
  e.kind = CKind::Bool;
  e.bool_value = b;
  return node(std::move(e));
}

CExprPtr c_str(std::string s) {
  CExpr e;
  e.kind = CKind::Str;
  e.name = std::move(s);
  return node(std::move(e));
}

CExprPtr c_var(std::string x) {
  CExpr e;
  e.kind = CKind::Var;
  e.name = std::move(x);
  return node(std::move(e));
}

CExprPtr c_abs(std::string x, CTypePtr ty, CExprPtr body) {
  CExpr e;
  e.kind = CKind::Abs;
  e.name = std::move(x);
  e.annotation = std::move(ty);
  e.kids = {std::move(body)};
  return node(std::move(e));
}

CExprPtr c_app(CExprPtr fn, CExprPtr arg) {
  CExpr e;
  e.kind = CKind::App;
  e.kids = {std::move(fn), std::move(arg)};
  return node(std::move(e));
}

CExprPtr c_app(CExprPtr fn, CExprPtr a, CExprPtr b) {
  return c_app(c_app(std::move(fn), std::move(a)), std::move(b));
}

CExprPtr c_unit() {
  static const CExprPtr unit = node(CExpr{});
  return unit;
}

CExprPtr c_case(CExprPtr scrutinee, CExprPtr empty, std::string binder, CExprPtr nonempty) {
  CExpr e;
  e.kind = CKind::Case;
  e.name = std::move(binder);
  e.kids = {std::move(scrutinee), std::move(empty), std::move(nonempty)};
  return node(std::move(e));
}

CExprPtr c_prim(PrimOp op, std::vector<CExprPtr> args) {
  CExpr e;
  e.kind = CKind::Prim;
  e.op = op;
  e.kids = std::move(args);
  return node(std::move(e));
}

namespace {

CExprPtr combinator(CKind k, std::optional<Instance> inst) {
  CExpr e;
  e.kind = k;
  e.instance = std::move(inst);
  return node(std::move(e));
}

}  // namespace

CExprPtr c_kid(std::optional<Instance> inst) { return combinator(CKind::KId, std::move(inst)); }
CExprPtr c_append(std::optional<Instance> inst) { return combinator(CKind::Append, std::move(inst)); }
CExprPtr c_cons(std::optional<Instance> inst) { return combinator(CKind::Cons, std::move(inst)); }

CExprPtr k_id() {
  static const CExprPtr def =
      c_abs("v", nullptr,
            c_abs("t", nullptr,
                  c_case(c_var("t"), c_var("v"), "k",
                         c_app(c_var("k"), c_var("v"), c_unit()))));
  return def;
}

CExprPtr append() {
  static const CExprPtr def =
      c_abs("t", nullptr,
            c_abs("t'", nullptr,
                  c_case(c_var("t"), c_var("t'"), "k", c_app(c_cons(), c_var("k"), c_var("t'")))));
  return def;
}

CExprPtr cons() {
  static const CExprPtr def = c_abs(
      "k", nullptr,
      c_abs("t", nullptr,
            c_case(c_var("t"), c_var("k"), "k'",
                   c_abs("v", nullptr,
                         c_abs("t'", nullptr,
                               c_app(c_var("k"), c_var("v"),
                                     c_app(c_cons(), c_var("k'"), c_var("t'"))))))));
  return def;
}

namespace {

// Levels: 0 abstraction/case, 1 primitive, 2 application, 3 atom.
void print_at(const CExpr &e, int level, std::string &out) {
  auto open = [&](int mine) {
    if (mine < level) out += "(";
  };
  auto close = [&](int mine) {
    if (mine < level) out += ")";
  };
  switch (e.kind) {
    case CKind::Int:
      if (e.int_value < 0 && level > 0) {
        out += "(" + std::to_string(e.int_value) + ")";
      } else {
        out += std::to_string(e.int_value);
      }
      return;
    case CKind::Bool:
      out += e.bool_value ? "true" : "false";
      return;
    case CKind::Str:
      out += "\"" + e.name + "\"";
      return;
    case CKind::Var:
      out += e.name;
      return;
    case CKind::Unit:
      out += "()";
      return;
    case CKind::KId:
      out += "kid";
      return;
    case CKind::Append:
      out += "append";
      return;
    case CKind::Cons:
      out += "cons";
      return;
    case CKind::Abs:
      open(0);
      out += "\xce\xbb" + e.name + ". ";
      print_at(*e.kids[0], 0, out);
      close(0);
      return;
    case CKind::Case:
      open(0);
      out += "case ";
      print_at(*e.kids[0], 0, out);
      out += " of { () \xe2\x86\x92 ";
      print_at(*e.kids[1], 0, out);
      out += " ; " + e.name + " \xe2\x86\x92 ";
      print_at(*e.kids[2], 0, out);
      out += " }";
      close(0);
      return;
    case CKind::App:
      open(2);
      print_at(*e.kids[0], 2, out);
      out += " ";
      print_at(*e.kids[1], 3, out);
      close(2);
      return;
    case CKind::Prim:
      open(1);
      if (e.op == PrimOp::Plus || e.op == PrimOp::Mul) {
        print_at(*e.kids[0], 2, out);
        out += e.op == PrimOp::Plus ? " + " : " * ";
        print_at(*e.kids[1], 2, out);
      } else {
        out += e.op == PrimOp::Is0 ? "is0 " : "b2s ";
        print_at(*e.kids[0], 3, out);
      }
      close(1);
      return;
  }
}

}  // namespace

std::string print(const CExpr &e) {
  std::string out;
  print_at(e, 0, out);
  return out;
}

std::size_t size(const CExpr &e) {
  std::size_t n = 1;
  for (const auto &k : e.kids) n += size(*k);
  return n;
}

CTypeError::CTypeError(const std::string &msg, const CExpr &at)
    : std::runtime_error(msg + ": " + print(at)), subterm_(print(at)) {}

namespace {

CTypePtr check(CTypeEnv &env, const CExpr &e) {
  switch (e.kind) {
    case CKind::Int:
      return c_base(BaseType::Int);
    case CKind::Bool:
      return c_base(BaseType::Bool);
    case CKind::Str:
      return c_base(BaseType::String);
    case CKind::Unit:
      return c_empty_trail();
    case CKind::Var: {
      auto it = env.find(e.name);
      if (it == env.end()) throw CTypeError("unbound variable", e);
      return it->second;
    }
    case CKind::Abs: {
      if (!e.annotation) throw CTypeError("unannotated binder", e);
      std::optional<CTypePtr> saved;
      if (auto it = env.find(e.name); it != env.end()) saved = it->second;
      env[e.name] = e.annotation;
      CTypePtr body = check(env, *e.kids[0]);
      if (saved)
        env[e.name] = *saved;
      else
        env.erase(e.name);
      return c_arrow(e.annotation, body);
    }
    case CKind::App: {
      CTypePtr f = check(env, *e.kids[0]);
      CTypePtr a = check(env, *e.kids[1]);
      if (f->kind != CType::Kind::Arrow) throw CTypeError("application of a non-function", e);
      if (!(*f->dom == *a))
        throw CTypeError("argument type " + to_string(*a) + " does not match " + to_string(*f->dom), e);
      return f->cod;
    }
    case CKind::Prim: {
      BaseType in = e.op == PrimOp::B2S ? BaseType::Bool : BaseType::Int;
      for (const auto &k : e.kids)
        if (!(*check(env, *k) == *c_base(in))) throw CTypeError("primitive operand type", e);
      switch (e.op) {
        case PrimOp::Plus:
        case PrimOp::Mul:
          return c_base(BaseType::Int);
        case PrimOp::Is0:
          return c_base(BaseType::Bool);
        case PrimOp::B2S:
          return c_base(BaseType::String);
      }
      return nullptr;
    }
    case CKind::Case:
      throw CTypeError("case outside the trail combinators", e);
    case CKind::KId: {
      if (!e.instance) throw CTypeError("combinator without a type instance", e);
      const Instance &i = *e.instance;
      if (!id_cont_type(*i.t1, *i.mu1, *i.t2))
        throw CTypeError("id-cont-type does not hold for this instance", e);
      return c_arrow(cps_type(*i.t1), c_arrow(cps_trail(*i.mu1), cps_type(*i.t2)));
    }
    case CKind::Append: {
      if (!e.instance) throw CTypeError("combinator without a type instance", e);
      const Instance &i = *e.instance;
      if (!compatible(*i.mu1, *i.mu2, *i.mu3))
        throw CTypeError("compatible does not hold for this instance", e);
      return c_arrow(cps_trail(*i.mu1), c_arrow(cps_trail(*i.mu2), cps_trail(*i.mu3)));
    }
    case CKind::Cons: {
      if (!e.instance) throw CTypeError("combinator without a type instance", e);
      const Instance &i = *e.instance;
      TrailPtr head = step_trail(i.t1, i.mu1, i.t2);
      if (!compatible(*head, *i.mu2, *i.mu3))
        throw CTypeError("compatible does not hold for this instance", e);
      return c_arrow(cps_trail(*head), c_arrow(cps_trail(*i.mu2), cps_trail(*i.mu3)));
    }
  }
  return nullptr;
}

}  // namespace

CTypePtr typecheck_c(const CTypeEnv &env, const CExprPtr &e) {
  CTypeEnv scope = env;
  return check(scope, *e);
}

}  // namespace lfk
