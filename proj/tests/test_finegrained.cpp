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
#include <functional>

#include "doctest.h"
#include "lfk/finegrained.hpp"
#include "lfk/harness.hpp"
#include "lfk/relations.hpp"

using namespace lfk;

namespace {

FgResult fg(const std::string &src) { return fg_check({}, parse(src)); }

std::size_t count_kind(const CExpr &e, CKind k) {
  std::size_t n = e.kind == k ? 1 : 0;
  for (const auto &c : e.kids) n += count_kind(*c, k);
  return n;
}

void visit(const PurityDerivation &d, const std::function<void(const PurityDerivation &)> &f) {
  f(d);
  for (const auto &c : d.children) visit(c, f);
}

}  // namespace

TEST_CASE("pure application") {
  auto r = fg("(fun (x : int) -> x) 1");
  REQUIRE(r.pure);
  CHECK(r.pure->ty->base == BaseType::Int);
  CHECK(r.derivation.rule == Rule::PApp);
  CHECK(count_rule(r.derivation, Rule::PAbs) == 1);
  CHECK(print(*selective_cps(r.derivation)) == "(λx. x) 1");
}

TEST_CASE("each rule is exercised by a small program") {
  CHECK(count_rule(fg("5").derivation, Rule::Const) == 1);
  CHECK(count_rule(fg("prompt { (fun (x : int) -> x + 1) (control k -> k (k 1)) }").derivation, Rule::PIApp) >= 1);
  CHECK(count_rule(fg("prompt { (fun (x : int) -> x + (control k -> k 10)) 5 }").derivation, Rule::IApp) >= 1);
  CHECK(count_rule(fg("prompt { (fun (x : int) -> x + (control k -> k 10)) 5 }").derivation, Rule::IAbs) >= 1);
  CHECK(count_rule(fg("prompt { 1 + (control k -> k (k 10)) }").derivation, Rule::IControl) == 1);
  CHECK(count_rule(fg("prompt { 1 + (control (k : (int => int)) -> k (k 10)) }").derivation, Rule::PControl) == 1);
  CHECK(count_rule(fg("prompt { 3 }").derivation, Rule::Prompt) == 1);
  CHECK(count_rule(fg("prompt { 5 + (control k -> k 1) }").derivation, Rule::Exp) >= 1);
  CHECK(count_rule(fg("(fun (x : int) -> x) 1").derivation, Rule::Var) == 1);
}

TEST_CASE("exp nodes wrap one pure subderivation") {
  for (const auto &c : load_corpus(LFK_CORPUS_DIR)) {
    if (!c.expect.fg_accept) continue;
    CAPTURE(c.name);
    visit(fg_check({}, c.expr).derivation, [](const PurityDerivation &d) {
      if (d.rule != Rule::Exp) return;
      REQUIRE(d.children.size() == 1);
      CHECK(d.children[0].pure());
      CHECK(!d.pure());
    });
  }
}

TEST_CASE("exp translation passes the value to the continuation") {
  auto r = fg("prompt { 5 + (control k -> k 1) }");
  const PurityDerivation *exp = nullptr;
  visit(r.derivation, [&](const PurityDerivation &d) {
    if (d.rule == Rule::Exp && d.children[0].rule == Rule::Const && !exp) exp = &d;
  });
  REQUIRE(exp != nullptr);
  auto img = selective_cps(*exp);
  REQUIRE(img->kind == CKind::Abs);
  REQUIRE(img->kids[0]->kind == CKind::Abs);
  auto call = img->kids[0]->kids[0];
  REQUIRE(call->kind == CKind::App);
  CHECK(call->kids[1]->name == img->kids[0]->name);
  CHECK(call->kids[0]->kids[0]->name == img->name);
  CHECK(call->kids[0]->kids[1]->int_value == 5);
}

TEST_CASE("pure control adds no trail composition") {
  auto r = fg("prompt { 1 + (control (k : (int => int)) -> k (k 10)) }");
  visit(r.derivation, [](const PurityDerivation &d) {
    if (d.rule != Rule::PControl) return;
    REQUIRE(d.judgment);
    CHECK(*d.judgment->mu_alpha == *d.judgment->mu_beta);
  });
  auto img = selective_program(r.derivation);
  CHECK(count_kind(*img, CKind::Append) == 0);
  CHECK(count_kind(*img, CKind::Cons) == 0);
  CHECK(run_selective(r).value->int_value == 12);
}

TEST_CASE("impure shift encoding fails in every trail context") {
  for (const auto &mu : enumerate_trails(2, {int_type(), bool_type(), string_type()}))
    CHECK(!compatible(*mu, *step_trail(int_type(), empty_trail(), int_type()), *mu));
  auto encoded = parse(
      "control (k' : (int -> int @ [*, int, *, int])) -> (fun (x : int) -> prompt { k' x }) 1");
  for (const auto &mu : enumerate_trails(2, {int_type(), bool_type()})) {
    CAPTURE(to_string(*mu));
    CHECK_THROWS_AS(verify({}, encoded, Judgment{int_type(), mu, int_type(), mu, int_type()}), TypeError);
  }
  auto pure = fg("control (k : (int => int)) -> k 1");
  CHECK(pure.derivation.rule == Rule::PControl);
}

TEST_CASE("purity annotations are enforced") {
  try {
    fg("prompt { (fun (f : (int => int)) -> f 1) (fun (x : int) -> x + (control k -> k x)) }");
    FAIL("accepted");
  } catch (const TypeError &e) {
    CHECK(e.kind() == ErrorKind::PurityMismatch);
  }
}

TEST_CASE("selective images type check and run") {
  for (const auto &c : load_corpus(LFK_CORPUS_DIR)) {
    if (!c.expect.fg_accept) {
      CHECK_THROWS_AS(fg_check({}, c.expr), TypeError);
      continue;
    }
    CAPTURE(c.name);
    auto r = fg_check({}, c.expr);
    CHECK(same_ctype(typecheck_c({}, selective_cps(r.derivation)), selective_type(r)));
    auto program = selective_program(r.derivation);
    TypePtr ty = r.pure ? r.pure->ty : r.impure->ty;
    CHECK(same_ctype(typecheck_c({}, program), cps_type(*ty)));
    auto o = run_selective(r);
    REQUIRE(o.kind == COutcome::Kind::Value);
    CHECK(to_string(*o.value) == c.expect.selective_result.value_or(c.expect.result));
    CHECK(size(*program) <= size(*cps_program(c.expr)));
  }
}
