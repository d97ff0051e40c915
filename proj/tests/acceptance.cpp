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

// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lfk/cps.hpp"
#include "lfk/eval.hpp"
#include "lfk/finegrained.hpp"
#include "lfk/harness.hpp"
#include "lfk/relations.hpp"
#include "lfk/typecheck.hpp"
#include "relation_oracle.hpp"

using namespace lfk;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string outcome_text(const COutcome &o) {
  if (o.kind == COutcome::Kind::Value) return to_string(*o.value);
  return "<no value: " + o.reason + ">";
}

/// Results of the direct, full CPS and selective pipelines.
struct Triple {
  std::string direct, full, selective;
  bool all(const std::string &v) const { return direct == v && full == v && selective == v; }
  std::string show() const { return "direct " + direct + ", full " + full + ", selective " + selective; }
};

Triple run_three(const ExprPtr &e) {
  Triple t;
  EvalOptions eo;
  eo.fuel = 1000000;
  Outcome d = eval(e, eo);
  t.direct = d.kind == Outcome::Kind::Value ? to_string(d.value) : "<" + to_string(d.kind) + ">";
  CEvalOptions co;
  co.fuel = 10000000;
  t.full = outcome_text(eval_c(cps_program(infer({}, e).elaboration), co));
  t.selective = outcome_text(run_selective(fg_check({}, e), co));
  return t;
}

ExprPtr corpus_expr(const std::string &name) {
  for (const auto &c : load_corpus(LFK_CORPUS_DIR))
    if (c.name == name) return c.expr;
  throw std::runtime_error("missing corpus program " + name);
}

std::vector<TypedProgram> &enumerated() {
  static std::vector<TypedProgram> programs = [] {
    auto t0 = Clock::now();
    auto out = enumerate_typed(7);
    std::cerr << "enumerated " << out.size() << " typed programs of size <= 7 in " << seconds_since(t0)
              << " s\n";
    return out;
  }();
  return programs;
}

Check criterion1() {
  auto t0 = Clock::now();
  Triple t = run_three(corpus_expr("example1"));
  double s = seconds_since(t0);
  return {t.all("42") && s < 1.0, t.show() + ", " + std::to_string(s) + " s"};
}

Check criterion2() {
  Triple t = run_three(corpus_expr("example1_shift"));
  return {t.all("45"), t.show()};
}

Check criterion3() {
  auto mu1 = parse_trail("{int => {bool => * => string} => string}");
  auto mu2 = parse_trail("{int => * => string}");
  std::ostringstream detail;
  bool ok = true;
  for (const char *name : {"example2", "example2_bare"}) {
    auto r = infer({}, corpus_expr(name));
    std::vector<const TypedNode *> controls;
    std::function<void(const Expr &, const TypedNode &)> walk = [&](const Expr &e, const TypedNode &n) {
      if (e.kind == ExprKind::Control) controls.push_back(&n);
      for (std::size_t i = 0; i < e.kids.size(); ++i) walk(*e.kids[i], n.children[i]);
    };
    walk(*r.elaboration.expr, r.elaboration.derivation);
    bool trails = controls.size() == 2 &&
                  controls[0]->judgment == Judgment{int_type(), mu1, string_type(), empty_trail(), string_type()} &&
                  controls[1]->judgment == Judgment{int_type(), mu2, string_type(), mu1, string_type()};
    bool verified = verify({}, r.elaboration.expr, r.judgment) == r.judgment;
    Triple t = run_three(corpus_expr(name));
    ok = ok && trails && verified && r.judgment.ty->base == BaseType::String && t.all("\"false\"");
    detail << name << ": " << to_string(r.judgment) << ", trails " << (trails ? "match" : "differ") << ", "
           << t.show() << "; ";
  }
  return {ok, detail.str()};
}

Check criterion4() {
  const char *src = "prompt { (control (k1 : %s) -> (k1 1; k1 1)); (control (k2 : %s) -> (k2 1; k2 1)) }";
  bool ok = true;
  std::ostringstream detail;
  try {
    infer({}, corpus_expr("looping"));
    ok = false;
    detail << "infer accepted; ";
  } catch (const TypeError &e) {
    ok = ok && e.kind() == ErrorKind::CompatibleFails;
    detail << "infer: " << to_string(e.kind()) << "; ";
  }

  std::vector<std::string> bases{"int", "bool", "string"};
  std::vector<std::string> trails{"*"};
  for (int d = 0; d < 3; ++d) trails.push_back("{int => " + trails.back() + " => int}");
  std::vector<std::string> menu;
  for (const auto &dom : bases)
    for (const auto &cod : bases)
      for (const auto &a : bases)
        for (const auto &b : bases)
          for (const auto &ma : trails)
            for (const auto &mb : trails)
              menu.push_back("(" + dom + " -> " + cod + " @ [" + ma + ", " + a + ", " + mb + ", " + b + "])");
  std::size_t accepted = 0, tried = 0;
  std::vector<char> buf(1024);
  for (const auto &t1 : menu) {
    for (const auto &t2 : menu) {
      std::snprintf(buf.data(), buf.size(), src, t1.c_str(), t2.c_str());
      ++tried;
      try {
        verify({}, parse(buf.data()));
        if (accepted++ == 0) detail << "verify accepted " << buf.data() << "; ";
      } catch (const TypeError &) {
      }
    }
  }
  ok = ok && accepted == 0;
  detail << "verify rejected " << tried - accepted << "/" << tried << " annotation pairs; ";

  EvalOptions eo;
  eo.fuel = 100000;
  Outcome o = eval(corpus_expr("looping"), eo);
  ok = ok && o.kind == Outcome::Kind::FuelExhausted;
  detail << "direct: " << to_string(o.kind) << " after " << o.steps << " steps";
  return {ok, detail.str()};
}

Check criterion5() {
  auto bases = std::vector<TypePtr>{int_type(), bool_type(), string_type()};
  std::size_t holds = 0, checked = 0;
  for (const auto &mu : enumerate_trails(3, bases)) {
    for (const auto &a : bases) {
      ++checked;
      if (compatible(*mu, *step_trail(a, empty_trail(), a), *mu)) ++holds;
    }
  }
  auto encoded = parse(
      "control (k' : (int -> int @ [*, int, *, int])) -> (fun (x : int) -> prompt { k' x }) 1");
  std::size_t verify_accepts = 0;
  for (const auto &mu : enumerate_trails(2, bases)) {
    try {
      verify({}, encoded, Judgment{int_type(), mu, int_type(), mu, int_type()});
      ++verify_accepts;
    } catch (const TypeError &) {
    }
  }
  FgResult fg = fg_check({}, corpus_expr("example1_shift_simplified"));
  std::size_t pcontrol = count_rule(fg.derivation, Rule::PControl);
  bool original_rejects = false;
  try {
    infer({}, corpus_expr("example1_shift_simplified"));
  } catch (const TypeError &) {
    original_rejects = true;
  }
  std::ostringstream detail;
  detail << "compatible held in " << holds << "/" << checked << " cases; impure encoding verified in "
         << verify_accepts << " trail contexts; fine-grained PControl nodes: " << pcontrol
         << "; original system " << (original_rejects ? "rejects" : "accepts") << " the pure encoding";
  return {holds == 0 && verify_accepts == 0 && pcontrol == 2 && original_rejects, detail.str()};
}

bool cps_preserves(const Elaboration &elab, const Judgment &j, std::string &why) {
  try {
    if (same_ctype(typecheck_c({}, cps_expr(elab)), cps_judgment(j))) return true;
    why = "type differs";
  } catch (const CTypeError &e) {
    why = e.what();
  }
  return false;
}

Check criterion6() {
  std::size_t checked = 0, failed = 0;
  std::string first;
  auto check = [&](const Elaboration &elab, const Judgment &j) {
    ++checked;
    std::string why;
    if (!cps_preserves(elab, j, why)) {
      if (failed++ == 0) first = print(*elab.expr) + ": " + why;
    }
  };
  for (const auto &c : load_corpus(LFK_CORPUS_DIR)) {
    if (c.expect.type == "reject") continue;
    auto r = infer({}, c.expr);
    check(r.elaboration, r.judgment);
  }
  for (const auto &p : enumerated()) check(Elaboration{p.expr, p.derivation}, p.judgment);
  std::string detail = std::to_string(checked - failed) + "/" + std::to_string(checked) + " images check";
  if (failed) detail += "; first failure " + first;
  return {failed == 0, detail};
}

Check criterion7() {
  std::size_t terms = 0, failed = 0;
  std::string first;
  for (const auto &c : load_corpus(LFK_CORPUS_DIR)) {
    if (c.expect.type == "reject") continue;
    auto r = infer({}, c.expr);
    FreshNames names;
    ExprPtr e = desugar(r.elaboration.expr);
    for (int i = 0; i <= 1000; ++i) {
      ++terms;
      bool same = false;
      std::string why;
      try {
        Judgment j = infer({}, e).judgment;
        same = j == r.judgment;
        if (!same) why = to_string(j);
      } catch (const TypeError &err) {
        why = err.what();
      }
      if (!same && failed++ == 0) first = c.name + " step " + std::to_string(i) + ": " + print(*e) + " : " + why;
      StepResult s = step(e, names);
      if (s.kind != StepResult::Kind::Next) break;
      e = s.next;
    }
  }
  std::string detail = std::to_string(terms - failed) + "/" + std::to_string(terms) +
                       " intermediate terms keep their judgment";
  if (failed) detail += "; first failure " + first;
  return {failed == 0, detail};
}

Check criterion8() {
  std::vector<std::pair<std::string, ExprPtr>> jobs;
  for (const auto &p : enumerated()) jobs.emplace_back(print(*p.expr), p.expr);
  auto t0 = Clock::now();
  auto reports = diff_all(jobs);
  double s = seconds_since(t0);
  std::size_t agree = 0, disagree = 0, timeout = 0, stuck = 0, stuck_unprompted = 0, cps_agree = 0;
  std::string example;
  for (const auto &r : reports) {
    if (r.verdict == lfk::Verdict::Agree) ++agree;
    if (r.verdict == lfk::Verdict::Disagree) ++disagree;
    if (r.verdict == lfk::Verdict::Timeout) ++timeout;
    if (r.direct.status == "stuck") {
      ++stuck;
      if (r.direct.detail.find("enclosing prompt") != std::string::npos) ++stuck_unprompted;
      if (r.full.value && r.selective.value && *r.full.value == *r.selective.value) ++cps_agree;
      if (example.empty() || r.id.size() < example.size()) example = r.id;
    }
  }
  std::ostringstream detail;
  detail << reports.size() << " programs in " << s << " s: " << agree << " agree, " << disagree
         << " disagree, " << timeout << " timeout, " << stuck << " stuck directly";
  if (stuck) {
    detail << " (" << stuck_unprompted << " are control with no enclosing prompt, " << cps_agree
           << " of them have equal full and selective CPS values; smallest: " << example << ")";
  }
  return {disagree == 0 && timeout == 0 && stuck == 0, detail.str()};
}

Check criterion9() {
  auto bases = std::vector<TypePtr>{int_type(), bool_type(), string_type()};
  auto trails = enumerate_trails(3, bases);
  oracle::Domain dom(trails);
  const std::size_t n = trails.size();
  std::size_t id_bad = 0, compat_bad = 0, solver_bad = 0, compat_true = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto &a : bases)
      for (const auto &b : bases)
        if (id_cont_type(*a, *trails[i], *b) != oracle::id_cont_type(oracle::code(*a), dom.list(i), oracle::code(*b)))
          ++id_bad;
  std::vector<std::size_t> expected, got;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      expected.clear();
      for (std::size_t k = 0; k < n; ++k) {
        bool o = oracle::compatible(dom.list(i), dom.list(j), dom.list(k));
        if (o != compatible(*trails[i], *trails[j], *trails[k])) ++compat_bad;
        if (o) expected.push_back(k);
      }
      compat_true += expected.size();
      got.clear();
      for (const auto &m : solve_compatible_third(trails[i], trails[j], {3})) got.push_back(dom.index(*m));
      std::sort(got.begin(), got.end());
      if (got != expected) ++solver_bad;
    }
  }
  std::ostringstream detail;
  detail << n << " trails, " << n * n * n << " triples (" << compat_true << " related); mismatches: id_cont_type "
         << id_bad << ", compatible " << compat_bad << ", solve_compatible_third " << solver_bad;
  return {id_bad == 0 && compat_bad == 0 && solver_bad == 0, detail.str()};
}

Check criterion10() {
  std::size_t checked = 0, bad = 0, with_papp = 0;
  std::string first;
  for (const auto &c : load_corpus(LFK_CORPUS_DIR)) {
    if (!c.expect.fg_accept) continue;
    FgResult fg = fg_check({}, c.expr);
    std::size_t sel = size(*selective_program(fg.derivation));
    std::size_t full = size(*cps_program(c.expr));
    bool papp = count_rule(fg.derivation, Rule::PApp) > 0;
    with_papp += papp;
    ++checked;
    if (sel > full || (papp && sel >= full)) {
      if (bad++ == 0) first = c.name + " (" + std::to_string(sel) + " vs " + std::to_string(full) + ")";
    }
  }
  std::string detail = std::to_string(checked) + " programs, " + std::to_string(with_papp) + " with PApp, " +
                       std::to_string(bad) + " violations";
  if (bad) detail += "; first " + first;
  return {bad == 0, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Check()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},  {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}};
  // Criterion 8 fails on terms whose continuation type hides a control
  // effect from the top-level trail; see README.md, "Known failure".
  const std::set<int> documented{8};
  std::set<int> failed;
  for (const auto &[id, run] : criteria) {
    auto t0 = Clock::now();
    Check v;
    try {
      v = run();
    } catch (const std::exception &e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) failed.insert(id);
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << v.detail << " ["
              << seconds_since(t0) << " s]" << std::endl;
  }
  std::set<int> unexpected;
  for (int id : failed)
    if (!documented.count(id)) unexpected.insert(id);
  std::cout << criteria.size() - failed.size() << "/" << criteria.size() << " criteria pass";
  if (!failed.empty()) std::cout << "; " << failed.size() - unexpected.size() << " documented failure(s)";
  std::cout << std::endl;
  return unexpected.empty() ? 0 : 1;
}
