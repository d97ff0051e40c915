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

#include "lfk/eval.hpp"

#include "stack.hpp"

namespace lfk {

ExprPtr Value::to_expr() const {
  switch (kind) {
    case Kind::Int:
      return make_int(int_value);
    case Kind::Bool:
      return make_bool(bool_value);
    case Kind::Str:
      return make_str(str_value);
    case Kind::Closure:
      return fn;
  }
  return fn;
}

Value value_of(const ExprPtr &e) {
  Value v;
  switch (e->kind) {
    case ExprKind::Int:
      v.kind = Value::Kind::Int;
      v.int_value = e->int_value;
      break;
    case ExprKind::Bool:
      v.kind = Value::Kind::Bool;
      v.bool_value = e->bool_value;
      break;
    case ExprKind::Str:
      v.kind = Value::Kind::Str;
      v.str_value = e->name;
      break;
    default:
      v.kind = Value::Kind::Closure;
      v.fn = e;
      break;
  }
  return v;
}

std::string to_string(const Value &v) {
  switch (v.kind) {
    case Value::Kind::Int:
      return std::to_string(v.int_value);
    case Value::Kind::Bool:
      return v.bool_value ? "true" : "false";
    case Value::Kind::Str:
      return "\"" + v.str_value + "\"";
    case Value::Kind::Closure:
      return "<fun>";
  }
  return "?";
}

bool operator==(const Value &a, const Value &b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Value::Kind::Int:
      return a.int_value == b.int_value;
    case Value::Kind::Bool:
      return a.bool_value == b.bool_value;
    case Value::Kind::Str:
      return a.str_value == b.str_value;
    case Value::Kind::Closure:
      return alpha_equivalent(*a.fn, *b.fn);
  }
  return false;
}

std::string to_string(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::Value:
      return "value";
    case Outcome::Kind::Stuck:
      return "stuck";
    case Outcome::Kind::FuelExhausted:
      return "fuel-exhausted";
    case Outcome::Kind::Timeout:
      return "timeout";
  }
  return "?";
}

ExprPtr plug(const std::vector<Frame> &frames, ExprPtr hole) {
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    std::vector<ExprPtr> kids = it->parent->kids;
    kids[it->index] = std::move(hole);
    hole = with_kids(*it->parent, std::move(kids));
  }
  return hole;
}

std::optional<Decomposition> decompose(const ExprPtr &e) {
  if (e->is_value()) return std::nullopt;
  std::vector<Frame> path;
  ExprPtr cur = e;
  for (;;) {
    std::optional<std::size_t> into;
    switch (cur->kind) {
      case ExprKind::App:
      case ExprKind::Plus:
      case ExprKind::Mul:
        if (!cur->lhs()->is_value())
          into = 0;
        else if (!cur->rhs()->is_value())
          into = 1;
        break;
      case ExprKind::Is0:
      case ExprKind::B2S:
      case ExprKind::Prompt:
        if (!cur->body()->is_value()) into = 0;
        break;
      default:
        break;
    }
    if (!into) break;
    path.push_back({cur, *into});
    cur = cur->kids[*into];
  }
  std::size_t split = 0;
  for (std::size_t i = path.size(); i > 0; --i) {
    if (path[i - 1].parent->kind == ExprKind::Prompt) {
      split = i;
      break;
    }
  }
  Decomposition d;
  d.outer.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(split));
  d.inner.assign(path.begin() + static_cast<std::ptrdiff_t>(split), path.end());
  d.redex = cur;
  return d;
}

namespace {

StepResult stuck(std::string reason, const Expr &redex) {
  StepResult r;
  r.kind = StepResult::Kind::Stuck;
  r.reason = std::move(reason) + ": " + print(redex);
  return r;
}

}  // namespace

StepResult step(const ExprPtr &e, FreshNames &names) {
  auto d = decompose(e);
  if (!d) {
    StepResult r;
    r.kind = StepResult::Kind::Done;
    r.value = value_of(e);
    return r;
  }
  const Expr &x = *d->redex;
  ExprPtr out;
  switch (x.kind) {
    case ExprKind::App:
      if (x.lhs()->kind != ExprKind::Abs) return stuck("application of a non-function", x);
      out = substitute(x.lhs()->body(), x.lhs()->name, x.rhs());
      break;
    case ExprKind::Plus:
    case ExprKind::Mul: {
      if (x.lhs()->kind != ExprKind::Int || x.rhs()->kind != ExprKind::Int)
        return stuck("arithmetic on a non-integer", x);
      std::int64_t n = 0;
      bool overflow = x.kind == ExprKind::Plus
                          ? __builtin_add_overflow(x.lhs()->int_value, x.rhs()->int_value, &n)
                          : __builtin_mul_overflow(x.lhs()->int_value, x.rhs()->int_value, &n);
      if (overflow) return stuck("integer overflow", x);
      out = make_int(n, x.loc);
      break;
    }
    case ExprKind::Is0:
      if (x.body()->kind != ExprKind::Int) return stuck("is0 of a non-integer", x);
      out = make_bool(x.body()->int_value == 0, x.loc);
      break;
    case ExprKind::B2S:
      if (x.body()->kind != ExprKind::Bool) return stuck("b2s of a non-boolean", x);
      out = make_str(x.body()->bool_value ? "true" : "false", x.loc);
      break;
    case ExprKind::Prompt:
      out = x.body();
      break;
    case ExprKind::Seq:
      out = desugar(d->redex);
      break;
    case ExprKind::Var:
      return stuck("free variable", x);
    case ExprKind::Control: {
      if (d->outer.empty()) return stuck("control without an enclosing prompt", x);
      std::string param = names.next("x");
      TypePtr dom = x.annotation ? x.annotation->dom : nullptr;
      ExprPtr k = make_abs(param, dom, plug(d->inner, make_var(param)));
      ExprPtr body = substitute(x.body(), x.name, k);
      const Frame &p = d->outer.back();
      std::vector<Frame> above(d->outer.begin(), d->outer.end() - 1);
      StepResult r;
      r.kind = StepResult::Kind::Next;
      r.next = plug(above, make_prompt(body, p.parent->loc));
      return r;
    }
    default:
      return stuck("no rule applies", x);
  }
  StepResult r;
  r.kind = StepResult::Kind::Next;
  std::vector<Frame> frames = d->outer;
  frames.insert(frames.end(), d->inner.begin(), d->inner.end());
  r.next = plug(frames, out);
  return r;
}

StepResult step(const ExprPtr &e) {
  FreshNames names;
  return step(e, names);
}

Outcome eval(const ExprPtr &e, const EvalOptions &opts) {
  Outcome out;
  detail::run_with_large_stack([&] {
    FreshNames names;
    ExprPtr cur = desugar(e);
    for (;;) {
      if (opts.trace) opts.trace(*cur);
      if (opts.fuel && out.steps >= *opts.fuel) {
        if (!cur->is_value()) {
          out.kind = Outcome::Kind::FuelExhausted;
          return;
        }
      }
      if (opts.deadline && (out.steps & 1023) == 0 &&
          std::chrono::steady_clock::now() >= *opts.deadline) {
        out.kind = Outcome::Kind::Timeout;
        return;
      }
      StepResult r = step(cur, names);
      switch (r.kind) {
        case StepResult::Kind::Done:
          out.kind = Outcome::Kind::Value;
          out.value = r.value;
          return;
        case StepResult::Kind::Stuck:
          out.kind = Outcome::Kind::Stuck;
          out.reason = r.reason;
          return;
        case StepResult::Kind::Next:
          cur = r.next;
          ++out.steps;
          break;
      }
    }
  });
  return out;
}

}  // namespace lfk
