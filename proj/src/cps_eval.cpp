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

#include "stack.hpp"

namespace lfk {

struct CEnv {
  std::string name;
  CValuePtr value;
  CEnvPtr next;
};

std::string to_string(const CValue &v) {
  switch (v.kind) {
    case CValue::Kind::Int:
      return std::to_string(v.int_value);
    case CValue::Kind::Bool:
      return v.bool_value ? "true" : "false";
    case CValue::Kind::Str:
      return "\"" + v.str_value + "\"";
    case CValue::Kind::Unit:
      return "()";
    case CValue::Kind::Closure:
      return "<fun>";
  }
  return "?";
}

namespace {

struct Kont {
  enum class Kind : std::uint8_t { Arg, Call, Prim, Case };

  Kind kind;
  const CExpr *e = nullptr;
  CEnvPtr env;
  CValuePtr fn;
  std::vector<CValuePtr> vals;
};

CValuePtr make_value(CValue v) { return std::make_shared<const CValue>(std::move(v)); }

const CValuePtr &unit_value() {
  static const CValuePtr u = make_value(CValue{});
  return u;
}

}  // namespace

namespace {

COutcome run_machine(const CExprPtr &root, const CEvalOptions &opts) {
  COutcome out;
  std::vector<Kont> stack;
  const CExpr *cur = root.get();
  CEnvPtr env;
  CValuePtr val;
  bool evaluating = true;
  std::uint64_t ticks = 0;

  auto stuck = [&](std::string why, const CExpr &at) {
    out.kind = COutcome::Kind::Stuck;
    out.reason = std::move(why) + ": " + print(at);
    return out;
  };

  for (;;) {
    if (opts.fuel && out.steps > *opts.fuel) {
      out.kind = COutcome::Kind::FuelExhausted;
      return out;
    }
    if (opts.deadline && (++ticks & 1023) == 0 && std::chrono::steady_clock::now() >= *opts.deadline) {
      out.kind = COutcome::Kind::Timeout;
      return out;
    }
    if (evaluating) {
      const CExpr &e = *cur;
      CValue v;
      switch (e.kind) {
        case CKind::Int:
          v.kind = CValue::Kind::Int;
          v.int_value = e.int_value;
          val = make_value(std::move(v));
          evaluating = false;
          break;
        case CKind::Bool:
          v.kind = CValue::Kind::Bool;
          v.bool_value = e.bool_value;
          val = make_value(std::move(v));
          evaluating = false;
          break;
        case CKind::Str:
          v.kind = CValue::Kind::Str;
          v.str_value = e.name;
          val = make_value(std::move(v));
          evaluating = false;
          break;
        case CKind::Unit:
          val = unit_value();
          evaluating = false;
          break;
        case CKind::Var: {
          const CEnv *p = env.get();
          while (p && p->name != e.name) p = p->next.get();
          if (!p) return stuck("unbound variable", e);
          val = p->value;
          evaluating = false;
          break;
        }
        case CKind::Abs:
          v.kind = CValue::Kind::Closure;
          v.fn = &e;
          v.env = env;
          val = make_value(std::move(v));
          evaluating = false;
          break;
        case CKind::App:
          stack.push_back({Kont::Kind::Arg, &e, env, nullptr, {}});
          cur = e.kids[0].get();
          break;
        case CKind::Prim:
          stack.push_back({Kont::Kind::Prim, &e, env, nullptr, {}});
          cur = e.kids[0].get();
          break;
        case CKind::Case:
          stack.push_back({Kont::Kind::Case, &e, env, nullptr, {}});
          cur = e.kids[0].get();
          break;
        case CKind::KId:
          cur = k_id().get();
          env = nullptr;
          break;
        case CKind::Append:
          cur = append().get();
          env = nullptr;
          break;
        case CKind::Cons:
          cur = cons().get();
          env = nullptr;
          break;
      }
      continue;
    }
    if (stack.empty()) {
      out.kind = COutcome::Kind::Value;
      out.value = val;
      return out;
    }
    Kont k = std::move(stack.back());
    stack.pop_back();
    switch (k.kind) {
      case Kont::Kind::Arg:
        stack.push_back({Kont::Kind::Call, k.e, nullptr, val, {}});
        cur = k.e->kids[1].get();
        env = k.env;
        evaluating = true;
        break;
      case Kont::Kind::Call: {
        const CValue &f = *k.fn;
        if (f.kind != CValue::Kind::Closure) return stuck("application of a non-function", *k.e);
        ++out.steps;
        env = std::make_shared<const CEnv>(CEnv{f.fn->name, val, f.env});
        cur = f.fn->kids[0].get();
        evaluating = true;
        break;
      }
      case Kont::Kind::Prim: {
        k.vals.push_back(val);
        if (k.vals.size() < k.e->kids.size()) {
          cur = k.e->kids[k.vals.size()].get();
          env = k.env;
          stack.push_back(std::move(k));
          evaluating = true;
          break;
        }
        ++out.steps;
        CValue r;
        const auto &a = k.vals;
        switch (k.e->op) {
          case PrimOp::Plus:
          case PrimOp::Mul: {
            if (a[0]->kind != CValue::Kind::Int || a[1]->kind != CValue::Kind::Int)
              return stuck("arithmetic on a non-integer", *k.e);
            r.kind = CValue::Kind::Int;
            bool overflow = k.e->op == PrimOp::Plus
                                ? __builtin_add_overflow(a[0]->int_value, a[1]->int_value, &r.int_value)
                                : __builtin_mul_overflow(a[0]->int_value, a[1]->int_value, &r.int_value);
            if (overflow) return stuck("integer overflow", *k.e);
            break;
          }
          case PrimOp::Is0:
            if (a[0]->kind != CValue::Kind::Int) return stuck("is0 of a non-integer", *k.e);
            r.kind = CValue::Kind::Bool;
            r.bool_value = a[0]->int_value == 0;
            break;
          case PrimOp::B2S:
            if (a[0]->kind != CValue::Kind::Bool) return stuck("b2s of a non-boolean", *k.e);
            r.kind = CValue::Kind::Str;
            r.str_value = a[0]->bool_value ? "true" : "false";
            break;
        }
        val = make_value(std::move(r));
        break;
      }
      case Kont::Kind::Case:
        ++out.steps;
        if (val->kind == CValue::Kind::Unit) {
          cur = k.e->kids[1].get();
          env = k.env;
        } else {
          cur = k.e->kids[2].get();
          env = std::make_shared<const CEnv>(CEnv{k.e->name, val, k.env});
        }
        evaluating = true;
        break;
    }
  }
}

}  // namespace

COutcome eval_c(const CExprPtr &e, const CEvalOptions &opts) {
  COutcome out;
  detail::run_with_large_stack([&] { out = run_machine(e, opts); });
  return out;
}

}  // namespace lfk
