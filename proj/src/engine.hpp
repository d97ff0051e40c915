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

// Constraint engine shared by the original and the fine-grained checker.
// Types, trail types and purity flags are terms over metavariables solved
// by unification; the relations id-cont-type and compatible, the purity
// bookkeeping, and purity-dependent application threading are deferred
// constraints discharged as soon as their driving argument is known.
// Whatever is left is settled by a bounded search.

#ifndef LFK_SRC_ENGINE_HPP
#define LFK_SRC_ENGINE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lfk/typecheck.hpp"

namespace lfk::detail {

enum class System : std::uint8_t { Original, FineGrained };

struct EngineOptions {
  System system = System::Original;
  CheckOptions check;
  /// Verifier mode: controls must be annotated.
  bool require_control_annotations = false;
  /// Fixed top-level judgment.
  std::optional<Judgment> requested;
};

struct EngineResult {
  Elaboration elaboration;
};

/// Runs the engine on a Seq-free expression. Throws TypeError.
EngineResult run_engine(const TypeEnv &env, const ExprPtr &e, const EngineOptions &opts);

}  // namespace lfk::detail

#endif  // LFK_SRC_ENGINE_HPP
