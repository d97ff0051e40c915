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

// lfk: command-line front end for the checkers, evaluators and translators.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lfk/cps.hpp"
#include "lfk/eval.hpp"
#include "lfk/finegrained.hpp"
#include "lfk/harness.hpp"
#include "lfk/syntax.hpp"
#include "lfk/typecheck.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

lfk::ExprPtr load(const std::string &path, lfk::ShiftEncoding shift = lfk::ShiftEncoding::Full) {
  lfk::ParseOptions po;
  po.shift = shift;
  return lfk::parse(read_file(path), po);
}

json judgment_json(const lfk::Judgment &j) {
  return json{{"type", lfk::to_string(*j.ty)},
              {"mu_alpha", lfk::to_string(*j.mu_alpha)},
              {"alpha", lfk::to_string(*j.alpha)},
              {"mu_beta", lfk::to_string(*j.mu_beta)},
              {"beta", lfk::to_string(*j.beta)}};
}

int report_type_error(const lfk::TypeError &e, bool as_json) {
  if (as_json)
    std::cout << e.to_json() << "\n";
  else
    std::cerr << "type error: " << e.what() << "\n";
  return kError;
}

int cmd_check(const std::string &file, const std::string &system, bool as_json, std::size_t depth) {
  lfk::ExprPtr e = load(file);
  lfk::CheckOptions opts;
  opts.budget.max_depth = depth;
  try {
    if (system == "original") {
      lfk::InferResult r = lfk::infer({}, e, opts);
      if (as_json)
        std::cout << json{{"system", system}, {"judgment", judgment_json(r.judgment)}}.dump() << "\n";
      else
        std::cout << lfk::to_string(r.judgment) << "\n";
      return kOk;
    }
    lfk::FgResult r = lfk::fg_check({}, e, opts);
    json out{{"system", system}, {"rule", lfk::to_string(r.derivation.rule)}};
    if (r.pure) {
      out["pure"] = true;
      out["type"] = lfk::to_string(*r.pure->ty);
    } else {
      out["pure"] = false;
      out["judgment"] = judgment_json(*r.impure);
    }
    if (as_json)
      std::cout << out.dump() << "\n";
    else if (r.pure)
      std::cout << "pure " << lfk::to_string(*r.pure->ty) << "\n";
    else
      std::cout << lfk::to_string(*r.impure) << "\n";
    return kOk;
  } catch (const lfk::TypeError &err) {
    return report_type_error(err, as_json);
  }
}

std::string describe(lfk::COutcome::Kind k) {
  switch (k) {
    case lfk::COutcome::Kind::Value:
      return "value";
    case lfk::COutcome::Kind::Stuck:
      return "stuck";
    case lfk::COutcome::Kind::FuelExhausted:
      return "fuel-exhausted";
    case lfk::COutcome::Kind::Timeout:
      return "timeout";
  }
  return "?";
}

int finish_c(const lfk::COutcome &o) {
  if (o.kind == lfk::COutcome::Kind::Value) {
    std::cout << lfk::to_string(*o.value) << "\n";
    return kOk;
  }
  std::cerr << describe(o.kind);
  if (!o.reason.empty()) std::cerr << ": " << o.reason;
  std::cerr << " after " << o.steps << " steps\n";
  return kError;
}

int cmd_run(const std::string &file, const std::string &via, bool trace, std::uint64_t fuel) {
  lfk::ExprPtr e = load(file);
  if (via == "direct") {
    lfk::EvalOptions eo;
    eo.fuel = fuel;
    if (trace) eo.trace = [](const lfk::Expr &t) { std::cerr << lfk::print(t) << "\n"; };
    lfk::Outcome o = lfk::eval(e, eo);
    if (o.kind == lfk::Outcome::Kind::Value) {
      std::cout << lfk::to_string(o.value) << "\n";
      return kOk;
    }
    std::cerr << lfk::to_string(o.kind);
    if (!o.reason.empty()) std::cerr << ": " << o.reason;
    std::cerr << " after " << o.steps << " steps\n";
    return kError;
  }
  lfk::CEvalOptions co;
  co.fuel = fuel;
  if (via == "cps") return finish_c(lfk::run_cps(e, co));
  try {
    return finish_c(lfk::run_selective(lfk::fg_check({}, e), co));
  } catch (const lfk::TypeError &err) {
    return report_type_error(err, false);
  }
}

int cmd_translate(const std::string &file, const std::string &mode) {
  lfk::ExprPtr e = load(file);
  lfk::CExprPtr image;
  try {
    if (mode == "full") {
      try {
        image = lfk::cps_program(lfk::infer({}, e).elaboration);
      } catch (const lfk::TypeError &) {
        image = lfk::cps_program(e);
      }
    } else {
      image = lfk::selective_program(lfk::fg_check({}, e).derivation);
    }
  } catch (const lfk::TypeError &err) {
    return report_type_error(err, false);
  }
  std::cout << lfk::print(*image) << "\n";
  std::cout << "size " << lfk::size(*image) << "\n";
  return kOk;
}

int cmd_diff(const std::string &file, std::size_t enumerate) {
  std::vector<lfk::DiffReport> reports;
  if (!file.empty()) {
    reports.push_back(lfk::diff_test(load(file), file));
  } else {
    std::vector<std::pair<std::string, lfk::ExprPtr>> jobs;
    for (auto &p : lfk::enumerate_typed(enumerate)) jobs.emplace_back(lfk::print(*p.expr), p.expr);
    reports = lfk::diff_all(jobs);
  }
  bool all_agree = true;
  for (const auto &r : reports) {
    std::cout << lfk::to_json(r) << "\n";
    all_agree = all_agree && r.verdict == lfk::Verdict::Agree;
  }
  return all_agree ? kOk : kError;
}

int cmd_shift_desugar(const std::string &file, bool simplified) {
  lfk::ExprPtr e = load(file, simplified ? lfk::ShiftEncoding::Simplified : lfk::ShiftEncoding::Full);
  std::cout << lfk::print(*e) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"lfk: control/prompt with answer-type modification"};
  app.require_subcommand(1, 1);

  std::string file;
  std::string system = "original";
  bool as_json = false;
  std::size_t depth = lfk::TrailSolverBudget{}.max_depth;
  auto *check = app.add_subcommand("check", "Type-check a program");
  check->add_option("file", file, "Source file")->required();
  check->add_option("--system", system, "Type system")
      ->check(CLI::IsMember({"original", "fine-grained"}));
  check->add_flag("--json", as_json, "Machine-readable output");
  check->add_option("--depth", depth, "Trail solver depth budget");

  std::string via = "direct";
  bool trace = false;
  std::uint64_t fuel = 1000000;
  auto *run = app.add_subcommand("run", "Evaluate a program");
  run->add_option("file", file, "Source file")->required();
  run->add_option("--via", via, "Pipeline")->check(CLI::IsMember({"direct", "cps", "selective"}));
  run->add_flag("--trace", trace, "Print each reduct to standard error");
  run->add_option("--fuel", fuel, "Step limit");

  std::string mode = "full";
  auto *translate = app.add_subcommand("translate", "Print the CPS image");
  translate->add_option("file", file, "Source file")->required();
  translate->add_option("--mode", mode, "Translation")->check(CLI::IsMember({"full", "selective"}));

  std::size_t enumerate = 0;
  auto *diff = app.add_subcommand("diff", "Compare the three pipelines");
  auto *diff_file = diff->add_option("file", file, "Source file");
  auto *diff_enum = diff->add_option("--enumerate", enumerate, "Size bound for enumerated programs")
                        ->check(CLI::Range(std::size_t{1}, lfk::EnumOptions{}.ceiling));
  diff_file->excludes(diff_enum);
  diff->require_option(1, 1);

  bool simplified = false;
  auto *desugar = app.add_subcommand("shift-desugar", "Expand shift into control and prompt");
  desugar->add_option("file", file, "Source file")->required();
  desugar->add_flag("--simplified", simplified, "Use a pure continuation instead of a prompt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(file, system, as_json, depth);
    if (*run) return cmd_run(file, via, trace, fuel);
    if (*translate) return cmd_translate(file, mode);
    if (*diff) return cmd_diff(file, enumerate);
    if (*desugar) return cmd_shift_desugar(file, simplified);
  } catch (const UsageError &e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const lfk::SyntaxError &e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return kError;
  }
  return kUsage;
}
