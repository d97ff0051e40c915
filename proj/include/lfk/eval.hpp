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

// Substitution-based small-step evaluator.

#ifndef LFK_EVAL_HPP
#define LFK_EVAL_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lfk/syntax.hpp"

namespace lfk {

struct Value {
  enum class Kind : std::uint8_t { Int, Bool, Str, Closure };

  Kind kind = Kind::Int;
  std::int64_t int_value = 0;
  bool bool_value = false;
  std::string str_value;
  /// Closure: the abstraction itself.
  ExprPtr fn;

  ExprPtr to_expr() const;
};

/// Reads a value expression back as a Value. Precondition: e.is_value().
Value value_of(const ExprPtr &e);

/// `42`, `true`, `"false"`, `<fun>`.
std::string to_string(const Value &v);
bool operator==(const Value &a, const Value &b);

/// One step down the spine: `parent` with the hole at `kids[index]`.
struct Frame {
  ExprPtr parent;
  std::size_t index = 0;
};

/// `outer` runs from the root down to and including the innermost prompt
/// around the redex; `inner` is the prompt-free rest.
struct Decomposition {
  std::vector<Frame> outer;
  std::vector<Frame> inner;
  ExprPtr redex;
};

ExprPtr plug(const std::vector<Frame> &frames, ExprPtr hole);

/// Leftmost call-by-value decomposition; nullopt for values.
std::optional<Decomposition> decompose(const ExprPtr &e);

struct StepResult {
  enum class Kind : std::uint8_t { Next, Done, Stuck };

  Kind kind = Kind::Stuck;
  ExprPtr next;
  Value value;
  std::string reason;
};

/// Supplies the suffix for binders of reified continuations.
class FreshNames {
 public:
  std::string next(const std::string &stem) { return stem + "_" + std::to_string(++counter_); }

 private:
  std::uint64_t counter_ = 0;
};

StepResult step(const ExprPtr &e, FreshNames &names);
StepResult step(const ExprPtr &e);

struct EvalOptions {
  std::optional<std::uint64_t> fuel;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Called with every intermediate expression, the initial one included.
  std::function<void(const Expr &)> trace;
};

struct Outcome {
  enum class Kind : std::uint8_t { Value, Stuck, FuelExhausted, Timeout };

  Kind kind = Kind::Stuck;
  Value value;
  std::string reason;
  std::uint64_t steps = 0;
};

std::string to_string(Outcome::Kind k);

/// Desugars, then steps until a value, a stuck term, or a limit. Runs on a
/// thread with a large stack.
Outcome eval(const ExprPtr &e, const EvalOptions &opts = {});

}  // namespace lfk

#endif  // LFK_EVAL_HPP
