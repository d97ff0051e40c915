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

// Corpus loading, bounded program enumeration, and differential runs.

#ifndef LFK_HARNESS_HPP
#define LFK_HARNESS_HPP

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lfk/syntax.hpp"
#include "lfk/typecheck.hpp"

namespace lfk {

/// Contents of `<name>.expect`.
struct Expectation {
  /// Printed source type of the program, or "reject".
  std::string type;
  std::optional<std::string> reject_kind;
  /// Printed value, "reject", or "diverge".
  std::string result;
  bool fg_accept = true;
  std::optional<std::string> fg_reject_kind;
  /// Set when the selective pipeline is expected to differ from `result`.
  std::optional<std::string> selective_result;
};

Expectation parse_expectation(const std::string &json_text);

struct CorpusEntry {
  std::string name;
  std::string source;
  ExprPtr expr;
  Expectation expect;
};

/// Every `<name>.lf` in `dir` with its `<name>.expect`, sorted by name.
std::vector<CorpusEntry> load_corpus(const std::string &dir);

struct EnumOptions {
  /// Upper limit accepted for sizeBound.
  std::size_t ceiling = 8;
  CheckOptions check{TrailSolverBudget{4}, true};
};

struct TypedProgram {
  ExprPtr expr;
  Judgment judgment;
  TypedNode derivation;
};

/// Raw candidates: closed Seq-free expressions with at most sizeBound
/// nodes over the constants 0, 1, true and "a".
std::vector<ExprPtr> enumerate_candidates(std::size_t size_bound, const EnumOptions &opts = {});

/// Candidates accepted by infer at (ty, *, a, *, a) with a base ty, as
/// their elaborations.
std::vector<TypedProgram> enumerate_typed(std::size_t size_bound, const EnumOptions &opts = {});

/// The elaborations accepted at (goal, *, a, *, a).
std::vector<ExprPtr> enumerate(std::size_t size_bound, const TypePtr &goal,
                               const EnumOptions &opts = {});

enum class Verdict : std::uint8_t { Agree, Disagree, Timeout };

std::string to_string(Verdict v);

struct PipelineRun {
  /// Printed value, or empty when none was produced.
  std::optional<std::string> value;
  /// "value", "stuck", "fuel-exhausted", "timeout", or "rejected".
  std::string status;
  std::string detail;
  std::uint64_t steps = 0;
};

struct DiffReport {
  std::string id;
  PipelineRun direct;
  PipelineRun full;
  PipelineRun selective;
  Verdict verdict = Verdict::Disagree;
  std::size_t full_size = 0;
  std::size_t selective_size = 0;
};

std::string to_json(const DiffReport &r);

struct DiffOptions {
  std::chrono::milliseconds timeout{10000};
};

DiffReport diff_test(const ExprPtr &p, const std::string &id, const DiffOptions &opts = {});

/// Runs `jobs` on a pool of worker threads; results keep input order.
std::vector<DiffReport> diff_all(const std::vector<std::pair<std::string, ExprPtr>> &jobs,
                                 const DiffOptions &opts = {}, unsigned workers = 0);

}  // namespace lfk

#endif  // LFK_HARNESS_HPP
