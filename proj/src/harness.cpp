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

#include "lfk/harness.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "lfk/cps.hpp"
#include "lfk/eval.hpp"
#include "lfk/finegrained.hpp"

namespace lfk {

Expectation parse_expectation(const std::string &json_text) {
  auto j = nlohmann::json::parse(json_text);
  Expectation e;
  e.type = j.at("type").get<std::string>();
  e.result = j.at("result").get<std::string>();
  if (j.contains("reject_kind")) e.reject_kind = j["reject_kind"].get<std::string>();
  if (j.contains("fg")) e.fg_accept = j["fg"].get<std::string>() == "accept";
  if (j.contains("fg_reject_kind")) e.fg_reject_kind = j["fg_reject_kind"].get<std::string>();
  if (j.contains("selective_result")) e.selective_result = j["selective_result"].get<std::string>();
  return e;
}

namespace {

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<CorpusEntry> load_corpus(const std::string &dir) {
  std::vector<CorpusEntry> out;
  for (const auto &f : std::filesystem::directory_iterator(dir)) {
    if (f.path().extension() != ".lf") continue;
    CorpusEntry c;
    c.name = f.path().stem().string();
    c.source = slurp(f.path());
    c.expr = parse(c.source);
    auto expect = f.path();
    expect.replace_extension(".expect");
    c.expect = parse_expectation(slurp(expect));
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.name < b.name; });
  return out;
}

namespace {

/// Runs fn(i) for i in [0, n) across worker threads.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto &t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

enum class Shape : std::uint8_t { IntConst, BoolConst, StrConst, Fun, Other };

Shape shape(const Expr &e) {
  switch (e.kind) {
    case ExprKind::Int:
      return Shape::IntConst;
    case ExprKind::Bool:
      return Shape::BoolConst;
    case ExprKind::Str:
      return Shape::StrConst;
    case ExprKind::Abs:
      return Shape::Fun;
    default:
      return Shape::Other;
  }
}

bool can_be(const Expr &e, Shape want) {
  Shape s = shape(e);
  return s == Shape::Other || s == want;
}

class Generator {
 public:
  const std::vector<ExprPtr> &terms(std::size_t n, std::size_t depth) {
    auto key = std::pair{n, depth};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<ExprPtr> out;
    each(n, depth, [&](const ExprPtr &e) { out.push_back(e); });
    return memo_[key] = std::move(out);
  }

  void each(std::size_t n, std::size_t depth, const std::function<void(const ExprPtr &)> &emit) {
    if (n == 0) return;
    if (n == 1) {
      emit(make_int(0));
      emit(make_int(1));
      emit(make_bool(true));
      emit(make_str("a"));
      for (std::size_t i = 0; i < depth; ++i) emit(make_var(name(i)));
      return;
    }
    for (const auto &c : terms(n - 1, depth)) {
      emit(make_prompt(c));
      if (can_be(*c, Shape::IntConst)) emit(make_is0(c));
      if (can_be(*c, Shape::BoolConst)) emit(make_b2s(c));
    }
    for (const auto &c : terms(n - 1, depth + 1)) {
      emit(make_abs(name(depth), nullptr, c));
      emit(make_control(name(depth), nullptr, nullptr, c));
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const auto &ls = terms(i, depth);
      const auto &rs = terms(n - 1 - i, depth);
      for (const auto &l : ls) {
        bool fn = can_be(*l, Shape::Fun);
        bool num = can_be(*l, Shape::IntConst);
        for (const auto &r : rs) {
          if (fn) emit(make_app(l, r));
          if (num && can_be(*r, Shape::IntConst)) {
            emit(make_plus(l, r));
            emit(make_mul(l, r));
          }
        }
      }
    }
  }

 private:
  static std::string name(std::size_t i) { return "x" + std::to_string(i); }

  std::map<std::pair<std::size_t, std::size_t>, std::vector<ExprPtr>> memo_;
};

}  // namespace

std::vector<ExprPtr> enumerate_candidates(std::size_t size_bound, const EnumOptions &opts) {
  if (size_bound > opts.ceiling) throw std::invalid_argument("size bound above the enumeration ceiling");
  Generator g;
  std::vector<ExprPtr> out;
  for (std::size_t n = 1; n <= size_bound; ++n)
    g.each(n, 0, [&](const ExprPtr &e) { out.push_back(e); });
  return out;
}

std::vector<TypedProgram> enumerate_typed(std::size_t size_bound, const EnumOptions &opts) {
  std::vector<ExprPtr> cands = enumerate_candidates(size_bound, opts);
  std::vector<std::optional<TypedProgram>> slots(cands.size());
  parallel_for(cands.size(), 0, [&](std::size_t i) {
    try {
      InferResult r = infer({}, cands[i], opts.check);
      const Judgment &j = r.judgment;
      if (j.ty->is_base() && j.mu_alpha->is_empty() && j.mu_beta->is_empty() &&
          same_type(j.alpha, j.beta))
        slots[i] = TypedProgram{r.elaboration.expr, j, r.elaboration.derivation};
    } catch (const TypeError &) {
    }
  });
  std::vector<TypedProgram> out;
  for (auto &s : slots)
    if (s) out.push_back(std::move(*s));
  return out;
}

std::vector<ExprPtr> enumerate(std::size_t size_bound, const TypePtr &goal, const EnumOptions &opts) {
  std::vector<ExprPtr> out;
  for (auto &p : enumerate_typed(size_bound, opts))
    if (same_type(p.judgment.ty, goal)) out.push_back(p.expr);
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Agree:
      return "Agree";
    case Verdict::Disagree:
      return "Disagree";
    case Verdict::Timeout:
      return "Timeout";
  }
  return "?";
}

namespace {

std::string c_status(COutcome::Kind k) {
  switch (k) {
    case COutcome::Kind::Value:
      return "value";
    case COutcome::Kind::Stuck:
      return "stuck";
    case COutcome::Kind::FuelExhausted:
      return "fuel-exhausted";
    case COutcome::Kind::Timeout:
      return "timeout";
  }
  return "?";
}

PipelineRun from_c(const COutcome &o) {
  PipelineRun r;
  r.status = c_status(o.kind);
  r.detail = o.reason;
  r.steps = o.steps;
  if (o.kind == COutcome::Kind::Value) r.value = to_string(*o.value);
  return r;
}

nlohmann::json run_json(const PipelineRun &r) {
  nlohmann::json j;
  j["status"] = r.status;
  j["value"] = r.value ? nlohmann::json(*r.value) : nlohmann::json(nullptr);
  j["steps"] = r.steps;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

}  // namespace

std::string to_json(const DiffReport &r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["direct"] = run_json(r.direct);
  j["full"] = run_json(r.full);
  j["selective"] = run_json(r.selective);
  j["verdict"] = to_string(r.verdict);
  j["full_size"] = r.full_size;
  j["selective_size"] = r.selective_size;
  return j.dump();
}

DiffReport diff_test(const ExprPtr &p, const std::string &id, const DiffOptions &opts) {
  using Clock = std::chrono::steady_clock;
  DiffReport rep;
  rep.id = id;

  EvalOptions eo;
  eo.deadline = Clock::now() + opts.timeout;
  Outcome d = eval(p, eo);
  rep.direct.status = to_string(d.kind);
  rep.direct.detail = d.reason;
  rep.direct.steps = d.steps;
  if (d.kind == Outcome::Kind::Value) rep.direct.value = to_string(d.value);

  CExprPtr full = cps_program(p);
  rep.full_size = size(*full);
  CEvalOptions co;
  co.deadline = Clock::now() + opts.timeout;
  rep.full = from_c(eval_c(full, co));

  try {
    FgResult fg = fg_check({}, p);
    CExprPtr sel = selective_program(fg.derivation);
    rep.selective_size = size(*sel);
    co.deadline = Clock::now() + opts.timeout;
    rep.selective = from_c(eval_c(sel, co));
  } catch (const TypeError &e) {
    rep.selective.status = "rejected";
    rep.selective.detail = e.what();
  }

  auto timed_out = [](const PipelineRun &r) { return r.status == "timeout"; };
  if (timed_out(rep.direct) || timed_out(rep.full) || timed_out(rep.selective)) {
    rep.verdict = Verdict::Timeout;
  } else if (rep.direct.value && rep.full.value && rep.selective.value &&
             *rep.direct.value == *rep.full.value && *rep.full.value == *rep.selective.value) {
    rep.verdict = Verdict::Agree;
  } else {
    rep.verdict = Verdict::Disagree;
  }
  return rep;
}

std::vector<DiffReport> diff_all(const std::vector<std::pair<std::string, ExprPtr>> &jobs,
                                 const DiffOptions &opts, unsigned workers) {
  std::vector<DiffReport> out(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t i) { out[i] = diff_test(jobs[i].second, jobs[i].first, opts); });
  return out;
}

}  // namespace lfk
