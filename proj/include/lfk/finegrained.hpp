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

// Pure/impure type system and the selective CPS translation it drives.

#ifndef LFK_FINEGRAINED_HPP
#define LFK_FINEGRAINED_HPP

#include <optional>
#include <string>
#include <vector>

#include "lfk/cps.hpp"
#include "lfk/typecheck.hpp"

namespace lfk {

enum class Rule : std::uint8_t {
  Const,
  Var,
  PAbs,
  IAbs,
  PApp,
  PIApp,
  IApp,
  PPrim,
  IPrim,
  PControl,
  IControl,
  Prompt,
  Exp,
};

std::string to_string(Rule r);

/// Judgment of a pure expression: just its type.
struct PureJudgment {
  TypePtr ty;
};

/// One rule application. Pure nodes have no `judgment`; an Exp node
/// shares `expr` with its only child.
struct PurityDerivation {
  Rule rule = Rule::Const;
  ExprPtr expr;
  TypePtr ty;
  std::optional<Judgment> judgment;
  /// Abs: parameter type. Control: continuation type.
  TypePtr annotation;
  /// Abs: its own type. App: the operator type.
  TypePtr arrow;
  /// IControl: witness of the first compatible premise.
  TrailPtr mu0;
  std::vector<PurityDerivation> children;

  bool pure() const { return !judgment.has_value(); }
};

struct FgResult {
  PurityDerivation derivation;
  /// Exactly one of the two is set.
  std::optional<PureJudgment> pure;
  std::optional<Judgment> impure;
};

/// Checks in the fine-grained system, preferring pure rules. Missing
/// annotations are inferred; a control without one is typed by IControl.
FgResult fg_check(const TypeEnv &env, const ExprPtr &e, const CheckOptions &opts = {});

/// Number of nodes using `rule`.
std::size_t count_rule(const PurityDerivation &d, Rule rule);

CExprPtr selective_cps(const PurityDerivation &d);
/// The selective image, applied to kid and () when the root is impure.
CExprPtr selective_program(const PurityDerivation &d);
/// cps_type of the pure judgment, or cps_judgment of the impure one.
CTypePtr selective_type(const FgResult &r);
COutcome run_selective(const FgResult &r, const CEvalOptions &opts = {});

}  // namespace lfk

#endif  // LFK_FINEGRAINED_HPP
