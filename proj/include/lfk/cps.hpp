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

// Target calculus with trails, its evaluator and checker, and the
// trail-passing CPS translation.

#ifndef LFK_CPS_HPP
#define LFK_CPS_HPP

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfk/syntax.hpp"
#include "lfk/typecheck.hpp"

namespace lfk {

struct CType;
using CTypePtr = std::shared_ptr<const CType>;

struct CType {
  enum class Kind : std::uint8_t { Base, Arrow, EmptyTrail };

  Kind kind = Kind::Base;
  BaseType base = BaseType::Int;
  CTypePtr dom;
  CTypePtr cod;
};

CTypePtr c_base(BaseType b);
CTypePtr c_arrow(CTypePtr dom, CTypePtr cod);
CTypePtr c_empty_trail();
bool operator==(const CType &a, const CType &b);
bool same_ctype(const CTypePtr &a, const CTypePtr &b);
std::string to_string(const CType &t);

CTypePtr cps_type(const SourceType &t);
CTypePtr cps_trail(const TrailType &mu);
/// (cps ty -> cps mu_alpha -> cps alpha) -> cps mu_beta -> cps beta
CTypePtr cps_judgment(const Judgment &j);

enum class CKind : std::uint8_t {
  Int,
  Bool,
  Str,
  Var,
  Abs,
  App,
  Unit,
  Case,
  Prim,
  KId,
  Append,
  Cons,
};

enum class PrimOp : std::uint8_t { Plus, Mul, Is0, B2S };

struct CExpr;
using CExprPtr = std::shared_ptr<const CExpr>;

/// The source-level types a combinator occurrence is used at:
///   KId: (t1, mu1, t2) for cps t1 -> cps mu1 -> cps t2
///   Append: (mu1, mu2, mu3)
///   Cons: (t1, mu1, t2) for the head, then mu2 and mu3
struct Instance {
  TypePtr t1;
  TypePtr t2;
  TrailPtr mu1;
  TrailPtr mu2;
  TrailPtr mu3;
};

/// Children:
///   Abs: {body}; App: {fn, arg}; Prim: operands;
///   Case: {scrutinee, empty branch, non-empty branch}
/// `name` is the variable, the Abs parameter, the Case binder, or the
/// string literal.
struct CExpr {
  CKind kind = CKind::Unit;
  std::int64_t int_value = 0;
  bool bool_value = false;
  std::string name;
  CTypePtr annotation;
  PrimOp op = PrimOp::Plus;
  std::optional<Instance> instance;
  std::vector<CExprPtr> kids;
};

CExprPtr c_int(std::int64_t n);
CExprPtr c_bool(bool b);
CExprPtr c_str(std::string s);
CExprPtr c_var(std::string x);
CExprPtr c_abs(std::string x, CTypePtr ty, CExprPtr body);
CExprPtr c_app(CExprPtr fn, CExprPtr arg);
CExprPtr c_app(CExprPtr fn, CExprPtr a, CExprPtr b);
CExprPtr c_unit();
CExprPtr c_case(CExprPtr scrutinee, CExprPtr empty, std::string binder, CExprPtr nonempty);
CExprPtr c_prim(PrimOp op, std::vector<CExprPtr> args);
CExprPtr c_kid(std::optional<Instance> inst = std::nullopt);
CExprPtr c_append(std::optional<Instance> inst = std::nullopt);
CExprPtr c_cons(std::optional<Instance> inst = std::nullopt);

/// The combinator definitions. `cons` mentions itself through a Cons node.
CExprPtr k_id();
CExprPtr append();
CExprPtr cons();

std::string print(const CExpr &e);
/// Node count; each combinator occurrence counts once.
std::size_t size(const CExpr &e);

/// Untyped translation of a closed source expression.
CExprPtr cps_expr(const ExprPtr &e);
/// Translation with every binder and combinator annotated from a typing.
CExprPtr cps_expr(const Elaboration &elab);
/// `[[e]] kid ()`, with kid typed at the top-level judgment when typed.
CExprPtr cps_program(const ExprPtr &e);
CExprPtr cps_program(const Elaboration &elab);

struct CValue;
using CValuePtr = std::shared_ptr<const CValue>;

struct CEnv;
using CEnvPtr = std::shared_ptr<const CEnv>;

struct CValue {
  enum class Kind : std::uint8_t { Int, Bool, Str, Unit, Closure };

  Kind kind = Kind::Unit;
  std::int64_t int_value = 0;
  bool bool_value = false;
  std::string str_value;
  /// Closure: the abstraction and its environment.
  const CExpr *fn = nullptr;
  CExprPtr keep;
  CEnvPtr env;
};

std::string to_string(const CValue &v);

struct CEvalOptions {
  std::optional<std::uint64_t> fuel;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct COutcome {
  enum class Kind : std::uint8_t { Value, Stuck, FuelExhausted, Timeout };

  Kind kind = Kind::Stuck;
  CValuePtr value;
  std::string reason;
  std::uint64_t steps = 0;
};

/// Call-by-value, left to right.
COutcome eval_c(const CExprPtr &e, const CEvalOptions &opts = {});

/// Evaluates `[[e]] kid ()`.
COutcome run_cps(const ExprPtr &e, const CEvalOptions &opts = {});

class CTypeError : public std::runtime_error {
 public:
  CTypeError(const std::string &msg, const CExpr &at);
  const std::string &subterm() const { return subterm_; }

 private:
  std::string subterm_;
};

using CTypeEnv = std::map<std::string, CTypePtr>;

CTypePtr typecheck_c(const CTypeEnv &env, const CExprPtr &e);

}  // namespace lfk

#endif  // LFK_CPS_HPP
