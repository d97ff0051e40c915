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
#include "lfk/harness.hpp"
#include "lfk/typecheck.hpp"

using namespace lfk;

namespace {

Judgment J(const char *ty, const char *ma, const char *a, const char *mb, const char *b) {
  return Judgment{parse_type(ty), parse_trail(ma), parse_type(a), parse_trail(mb), parse_type(b)};
}

ErrorKind infer_error(const std::string &src) {
  try {
    infer({}, parse(src));
  } catch (const TypeError &e) {
    return e.kind();
  }
  FAIL("accepted: " << src);
  return ErrorKind::Mismatch;
}

void collect_controls(const Expr &e, const TypedNode &n, std::vector<const TypedNode *> &out) {
  if (e.kind == ExprKind::Control) out.push_back(&n);
  for (std::size_t i = 0; i < e.kids.size(); ++i) collect_controls(*e.kids[i], n.children[i], out);
}

}  // namespace

TEST_CASE("constants take the requested answer types") {
  auto j = J("int", "*", "int", "*", "int");
  CHECK(verify({}, make_int(1), j) == j);
  auto k = J("int", "{int => * => bool}", "string", "{int => * => bool}", "string");
  CHECK(verify({}, make_int(1), k) == k);
}

TEST_CASE("infer on small programs") {
  CHECK(infer({}, parse("prompt { 3 }")).judgment == J("int", "*", "int", "*", "int"));
  CHECK(infer({}, parse("b2s (is0 0)")).judgment.ty->base == BaseType::String);
  CHECK(infer_error("fun x -> x") == ErrorKind::NeedsAnnotation);
  CHECK(infer_error("x") == ErrorKind::UnboundVariable);
  CHECK(infer_error("1 + true") == ErrorKind::Mismatch);
  CHECK(infer_error("is0 \"a\"") == ErrorKind::Mismatch);
  CHECK(infer_error("(fun (f : (int => int)) -> f 1) (fun x -> x)") ==
        ErrorKind::PureArrowInOriginalSystem);
}

TEST_CASE("example1 program") {
  auto e = parse("prompt { (control k1 -> 2 * k1 5) + (control k2 -> 3 + k2 8) } + 13");
  auto r = infer({}, e);
  CHECK(r.judgment.ty->base == BaseType::Int);
  CHECK(verify({}, r.elaboration.expr, r.judgment) == r.judgment);
}

TEST_CASE("heterogeneous trails of example2") {
  auto e = parse("prompt { (control k1 -> is0 (k1 5)) + (control k2 -> b2s (k2 8)) }");
  auto r = infer({}, e);
  CHECK(r.judgment == J("string", "*", "string", "*", "string"));
  std::vector<const TypedNode *> controls;
  collect_controls(*r.elaboration.expr, r.elaboration.derivation, controls);
  REQUIRE(controls.size() == 2);
  auto mu1 = parse_trail("{int => {bool => * => string} => string}");
  auto mu2 = parse_trail("{int => * => string}");
  CHECK(controls[0]->judgment == Judgment{int_type(), mu1, string_type(), empty_trail(), string_type()});
  CHECK(controls[1]->judgment == Judgment{int_type(), mu2, string_type(), mu1, string_type()});
  CHECK(verify({}, r.elaboration.expr, r.judgment) == r.judgment);
}

TEST_CASE("continuation types that disagree with the context are rejected") {
  auto e = parse(
      "prompt { (control (k1 : (int -> int @ [{int => {bool => * => string} => string}, string, "
      "{bool => * => string}, string])) -> is0 (k1 5)) + (control (k2 : (int -> int @ "
      "[{int => * => string}, string, *, string])) -> b2s (k2 8)) }");
  CHECK_THROWS_AS(verify({}, e), TypeError);
}

TEST_CASE("looping program is rejected") {
  CHECK(infer_error("prompt { (control k1 -> (k1 1; k1 1)); (control k2 -> (k2 1; k2 1)) }") ==
        ErrorKind::CompatibleFails);
  auto annotated = parse(
      "prompt { (control (k1 : (int -> int @ [*, int, *, int])) -> (k1 1; k1 1)); "
      "(control (k2 : (int -> int @ [*, int, *, int])) -> (k2 1; k2 1)) }");
  CHECK_THROWS_AS(verify({}, annotated), TypeError);
}

TEST_CASE("verify requires continuation annotations") {
  CHECK_THROWS_AS(verify({}, parse("prompt { control k -> 1 }")), TypeError);
  CHECK(verify({}, parse("prompt { control (k : (int -> int @ [*, int, *, int])) -> 1 }")).ty->base ==
        BaseType::Int);
}

TEST_CASE("elaborations of corpus programs verify at the inferred judgment") {
  for (const auto &c : load_corpus(LFK_CORPUS_DIR)) {
    CAPTURE(c.name);
    if (c.expect.type == "reject") {
      CHECK_THROWS_AS(infer({}, c.expr), TypeError);
      continue;
    }
    auto r = infer({}, c.expr);
    CHECK(to_string(*r.judgment.ty) == c.expect.type);
    CHECK(r.judgment.mu_alpha->is_empty());
    CHECK(r.judgment.mu_beta->is_empty());
    CHECK(verify({}, r.elaboration.expr, r.judgment) == r.judgment);
  }
}

TEST_CASE("type errors serialize to json") {
  try {
    infer({}, parse("y"));
    FAIL("accepted");
  } catch (const TypeError &e) {
    CHECK(e.to_json().find("UnboundVariable") != std::string::npos);
  }
}
