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

#ifndef LFK_TYPECHECK_HPP
#define LFK_TYPECHECK_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfk/relations.hpp"
#include "lfk/syntax.hpp"

namespace lfk {

/// Five-point judgment `e : ty, mu_alpha, alpha, mu_beta, beta`. The first
/// three describe the continuation, mu_beta the trail the expression
/// starts with and beta its eventual answer.
struct Judgment {
  TypePtr ty;
  TrailPtr mu_alpha;
  TypePtr alpha;
  TrailPtr mu_beta;
  TypePtr beta;
};

bool operator==(const Judgment &a, const Judgment &b);
std::string to_string(const Judgment &j);

/// Typing environment; later bindings shadow earlier ones.
class TypeEnv {
 public:
  TypeEnv() = default;
  TypeEnv extended(std::string name, TypePtr ty) const;
  const TypePtr *lookup(const std::string &name) const;
  const std::vector<std::pair<std::string, TypePtr>> &bindings() const { return bindings_; }

 private:
  std::vector<std::pair<std::string, TypePtr>> bindings_;
};

enum class ErrorKind : std::uint8_t {
  UnboundVariable,
  Mismatch,
  IdContTypeFails,
  CompatibleFails,
  NeedsAnnotation,
  PureArrowInOriginalSystem,
  PurityMismatch,
};

std::string to_string(ErrorKind k);

class TypeError : public std::runtime_error {
 public:
  TypeError(ErrorKind kind, Loc loc, std::string details);

  ErrorKind kind() const { return kind_; }
  Loc loc() const { return loc_; }
  const std::string &details() const { return details_; }
  /// `{"kind": ..., "location": "line:col", "details": ...}`
  std::string to_json() const;

 private:
  ErrorKind kind_;
  Loc loc_;
  std::string details_;
};

/// Ground typing of one node together with the node-specific witnesses.
/// `children` follows `Expr::kids`.
struct TypedNode {
  Judgment judgment;
  /// Abs: the parameter type. Control: the continuation type.
  TypePtr binder_type;
  /// Abs: the type of the abstraction itself. App: the operator type.
  TypePtr arrow;
  /// Control: the witness for the first compatible premise.
  TrailPtr mu0;
  std::vector<TypedNode> children;
};

/// A program with every binder annotated and every control carrying its
/// mu0 witness, plus the derivation that typed it.
struct Elaboration {
  ExprPtr expr;
  TypedNode derivation;
};

struct InferResult {
  Judgment judgment;
  Elaboration elaboration;
};

struct CheckOptions {
  TrailSolverBudget budget;
  /// Ground leftover metavariables to the smallest choice (`*` for trails,
  /// `int` for types) instead of failing with NeedsAnnotation.
  bool default_residuals = false;
};

/// Checks an annotated program in the original system. Every control must
/// carry its continuation type; a missing mu0 is solved from it. When
/// `requested` is given, the top-level judgment is fixed to it.
Judgment verify(const TypeEnv &env, const ExprPtr &e,
                const std::optional<Judgment> &requested = std::nullopt,
                const CheckOptions &opts = {});

/// Best-effort inference in the original system.
InferResult infer(const TypeEnv &env, const ExprPtr &e, const CheckOptions &opts = {});

}  // namespace lfk

#endif  // LFK_TYPECHECK_HPP
