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
#include "lfk/cps.hpp"
#include "lfk/harness.hpp"
#include "lfk/relations.hpp"

using namespace lfk;

namespace {

CValuePtr value(const CExprPtr &e) {
  auto o = eval_c(e);
  REQUIRE(o.kind == COutcome::Kind::Value);
  return o.value;
}

CTypePtr I() { return c_base(BaseType::Int); }

// λv.λt. v + 1
CExprPtr succ_cont() {
  return c_abs("v", I(), c_abs("t", c_empty_trail(), c_prim(PrimOp::Plus, {c_var("v"), c_int(1)})));
}

std::vector<TrailPtr> small_trails() { return enumerate_trails(2, {int_type(), bool_type()}); }

}  // namespace

TEST_CASE("combinator reductions") {
  CHECK(value(c_app(c_kid(), c_int(5), c_unit()))->int_value == 5);
  CHECK(value(c_app(c_append(), c_unit(), c_unit()))->kind == CValue::Kind::Unit);
  CHECK(value(c_app(c_append(), c_unit(), succ_cont()))->kind == CValue::Kind::Closure);
  auto consed = c_app(c_app(c_cons(), succ_cont(), c_unit()), c_int(7), c_unit());
  CHECK(value(consed)->int_value == 8);
  // kid v k applies k to v and ()
  CHECK(value(c_app(c_kid(), c_int(4), succ_cont()))->int_value == 5);
}

TEST_CASE("lambda-C evaluation") {
  CHECK(value(c_app(c_abs("x", I(), c_var("x")), c_int(3)))->int_value == 3);
  auto on_unit = c_case(c_unit(), c_int(1), "k", c_int(2));
  CHECK(value(on_unit)->int_value == 1);
  auto on_fun = c_case(succ_cont(), c_int(1), "k", c_app(c_var("k"), c_int(9), c_unit()));
  CHECK(value(on_fun)->int_value == 10);
  CHECK(value(c_prim(PrimOp::B2S, {c_prim(PrimOp::Is0, {c_int(0)})}))->str_value == "true");
  CHECK(eval_c(c_var("nope")).kind == COutcome::Kind::Stuck);
}

TEST_CASE("type translation") {
  CHECK(cps_trail(*empty_trail())->kind == CType::Kind::EmptyTrail);
  CHECK(same_ctype(cps_trail(*parse_trail("{int => * => string}")),
                   c_arrow(I(), c_arrow(c_empty_trail(), c_base(BaseType::String)))));
  CHECK(same_ctype(cps_type(*int_type()), I()));
  CHECK(same_ctype(cps_type(*pure_arrow(int_type(), bool_type())), c_arrow(I(), c_base(BaseType::Bool))));
  auto arrow = cps_type(*parse_type("(int -> bool @ [*, string, *, int])"));
  auto expected = c_arrow(
      I(), c_arrow(c_arrow(c_base(BaseType::Bool),
                           c_arrow(c_empty_trail(), c_base(BaseType::String))),
                   c_arrow(c_empty_trail(), I())));
  CHECK(same_ctype(arrow, expected));
}

TEST_CASE("expression translation shapes") {
  auto x = cps_expr(make_var("x"));
  REQUIRE(x->kind == CKind::Abs);
  REQUIRE(x->kids[0]->kind == CKind::Abs);
  const std::string k = x->name;
  const std::string t = x->kids[0]->name;
  auto app = x->kids[0]->kids[0];
  REQUIRE(app->kind == CKind::App);
  CHECK(app->kids[1]->kind == CKind::Var);
  CHECK(app->kids[1]->name == t);
  CHECK(app->kids[0]->kids[0]->name == k);
  CHECK(app->kids[0]->kids[1]->name == "x");

  auto p = cps_expr(make_prompt(make_int(7)));
  auto body = p->kids[0]->kids[0];
  REQUIRE(body->kind == CKind::App);
  auto inner = body->kids[0]->kids[1];
  REQUIRE(inner->kind == CKind::App);
  CHECK(inner->kids[1]->kind == CKind::Unit);
  CHECK(inner->kids[0]->kids[1]->kind == CKind::KId);
}

TEST_CASE("running translated programs") {
  CHECK(to_string(*run_cps(parse("prompt { (control k1 -> 2 * k1 5) + (control k2 -> 3 + k2 8) } + 13")).value) ==
        "42");
  CHECK(run_cps(parse("prompt { control k -> 1 }")).value->int_value == 1);
  CHECK(run_cps(parse("\"a\"")).value->str_value == "a");
}

TEST_CASE("combinator instances are admitted exactly when the relations hold") {
  auto trails = small_trails();
  auto bases = {int_type(), bool_type()};
  for (const auto &a : bases)
    for (const auto &mu : trails)
      for (const auto &b : bases) {
        bool ok = true;
        try {
          typecheck_c({}, c_kid(Instance{a, b, mu, nullptr, nullptr}));
        } catch (const CTypeError &) {
          ok = false;
        }
        CHECK(ok == id_cont_type(*a, *mu, *b));
      }
  for (const auto &m1 : trails)
    for (const auto &m2 : trails)
      for (const auto &m3 : trails) {
        bool ok = true;
        try {
          typecheck_c({}, c_append(Instance{nullptr, nullptr, m1, m2, m3}));
        } catch (const CTypeError &) {
          ok = false;
        }
        CHECK(ok == compatible(*m1, *m2, *m3));
      }
  for (const auto &a : bases)
    for (const auto &m1 : trails)
      for (const auto &m2 : trails)
        for (const auto &m3 : trails) {
          bool ok = true;
          try {
            typecheck_c({}, c_cons(Instance{a, int_type(), m1, m2, m3}));
          } catch (const CTypeError &) {
            ok = false;
          }
          CHECK(ok == compatible(*step_trail(a, m1, int_type()), *m2, *m3));
        }
}

TEST_CASE("lambda-C checking") {
  CHECK(typecheck_c({}, c_unit())->kind == CType::Kind::EmptyTrail);
  CHECK(same_ctype(typecheck_c({}, c_kid(Instance{int_type(), int_type(), empty_trail(), nullptr, nullptr})),
                   c_arrow(I(), c_arrow(c_empty_trail(), I()))));
  CHECK_THROWS_AS(typecheck_c({}, c_case(c_unit(), c_int(1), "k", c_int(2))), CTypeError);
  CHECK_THROWS_AS(typecheck_c({}, c_abs("x", nullptr, c_var("x"))), CTypeError);
  CHECK_THROWS_AS(typecheck_c({}, c_app(c_int(1), c_int(2))), CTypeError);
}

TEST_CASE("typed images check at the translated judgment") {
  for (const auto &c : load_corpus(LFK_CORPUS_DIR)) {
    if (c.expect.type == "reject") continue;
    CAPTURE(c.name);
    auto r = infer({}, c.expr);
    CHECK(same_ctype(typecheck_c({}, cps_expr(r.elaboration)), cps_judgment(r.judgment)));
    auto program = cps_program(r.elaboration);
    CHECK(same_ctype(typecheck_c({}, program), cps_type(*r.judgment.ty)));
    auto o = eval_c(program);
    REQUIRE(o.kind == COutcome::Kind::Value);
    CHECK(to_string(*o.value) == c.expect.result);
  }
}
