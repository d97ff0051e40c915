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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "lfk/eval.hpp"
#include "lfk/harness.hpp"

using namespace lfk;

namespace {

ExprPtr next_of(const std::string &src) {
  auto r = step(parse(src));
  REQUIRE(r.kind == StepResult::Kind::Next);
  return r.next;
}

Outcome run(const std::string &src, std::uint64_t fuel = 100000) {
  EvalOptions o;
  o.fuel = fuel;
  return eval(parse(src), o);
}

}  // namespace

TEST_CASE("single steps") {
  CHECK(same_expr(*next_of("prompt { 3 }"), *make_int(3)));
  CHECK(same_expr(*next_of("(fun (x : int) -> x) 1"), *make_int(1)));
  CHECK(alpha_equivalent(*next_of("prompt { (control k -> k 1) + 2 }"),
                         *parse("prompt { (fun x -> x + 2) 1 }")));
  CHECK(same_expr(*next_of("2 * 3 + 1"), *parse("6 + 1")));
  CHECK(same_expr(*next_of("b2s true"), *make_str("true")));
  CHECK(same_expr(*next_of("is0 0"), *make_bool(true)));
}

TEST_CASE("the captured context stops at the nearest prompt") {
  auto n = next_of("prompt { 1 + prompt { 2 * (control k -> k 3) } }");
  CHECK(alpha_equivalent(*n, *parse("prompt { 1 + prompt { (fun x -> 2 * x) 3 } }")));
  auto m = next_of("prompt { (control k -> k 1) + (control h -> 5) }");
  CHECK(alpha_equivalent(*m, *parse("prompt { (fun x -> x + (control h -> 5)) 1 }")));
}

TEST_CASE("values and stuck terms") {
  auto v = step(parse("fun x -> x"));
  CHECK(v.kind == StepResult::Kind::Done);
  CHECK(to_string(v.value) == "<fun>");
  CHECK(step(parse("control k -> 1")).kind == StepResult::Kind::Stuck);
  CHECK(step(parse("1 2")).kind == StepResult::Kind::Stuck);
  CHECK(step(parse("x")).kind == StepResult::Kind::Stuck);
  CHECK(step(parse("1 + \"a\"")).kind == StepResult::Kind::Stuck);
  CHECK(run("(control k -> 0) 0").kind == Outcome::Kind::Stuck);
}

TEST_CASE("example programs") {
  auto one = run("prompt { (control k1 -> 2 * k1 5) + (control k2 -> 3 + k2 8) } + 13");
  REQUIRE(one.kind == Outcome::Kind::Value);
  CHECK(one.value.int_value == 42);
  auto two = run("prompt { (control k1 -> is0 (k1 5)) + (control k2 -> b2s (k2 8)) }");
  REQUIRE(two.kind == Outcome::Kind::Value);
  CHECK(two.value.kind == Value::Kind::Str);
  CHECK(two.value.str_value == "false");
  auto shifted = run("prompt { (shift k1 -> 2 * k1 5) + (shift k2 -> 3 + k2 8) } + 13");
  CHECK(shifted.value.int_value == 45);
}

TEST_CASE("looping program exhausts its fuel") {
  auto o = run("prompt { (control k1 -> (k1 1; k1 1)); (control k2 -> (k2 1; k2 1)) }", 100000);
  CHECK(o.kind == Outcome::Kind::FuelExhausted);
  CHECK(o.steps == 100000);
}

TEST_CASE("deadline stops evaluation") {
  EvalOptions o;
  o.deadline = std::chrono::steady_clock::now();
  auto r = eval(parse("prompt { (control k1 -> (k1 1; k1 1)); (control k2 -> (k2 1; k2 1)) }"), o);
  CHECK(r.kind == Outcome::Kind::Timeout);
}

TEST_CASE("trace sees every reduct") {
  int seen = 0;
  EvalOptions o;
  o.trace = [&](const Expr &) { ++seen; };
  auto r = eval(parse("prompt { 1 + (control k -> k (k 10)) }"), o);
  CHECK(r.value.int_value == 12);
  CHECK(seen >= static_cast<int>(r.steps));
}

TEST_CASE("decompose and plug are inverse along corpus reductions") {
  for (const auto &c : load_corpus(LFK_CORPUS_DIR)) {
    CAPTURE(c.name);
    FreshNames names;
    ExprPtr e = desugar(c.expr);
    for (int i = 0; i < 300; ++i) {
      auto d = decompose(e);
      if (!d) break;
      std::vector<Frame> frames = d->outer;
      frames.insert(frames.end(), d->inner.begin(), d->inner.end());
      CHECK(same_expr(*plug(frames, d->redex), *e));
      auto s = step(e, names);
      if (s.kind != StepResult::Kind::Next) break;
      e = s.next;
    }
  }
}

TEST_CASE("accepted corpus programs never get stuck") {
  for (const auto &c : load_corpus(LFK_CORPUS_DIR)) {
    CAPTURE(c.name);
    auto o = run(c.source);
    if (c.expect.result == "reject") {
      CHECK(o.kind == Outcome::Kind::Stuck);
    } else if (c.expect.result == "diverge") {
      CHECK(o.kind == Outcome::Kind::FuelExhausted);
    } else {
      REQUIRE(o.kind == Outcome::Kind::Value);
      CHECK(to_string(o.value) == c.expect.result);
    }
  }
}

TEST_CASE("closures compare up to renaming") {
  CHECK(value_of(parse("fun x -> x")) == value_of(parse("fun y -> y")));
  CHECK(!(value_of(make_int(1)) == value_of(make_int(2))));
}
