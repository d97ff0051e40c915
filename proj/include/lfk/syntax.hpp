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

#ifndef LFK_SYNTAX_HPP
#define LFK_SYNTAX_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lfk {

enum class BaseType : std::uint8_t { Int, Bool, String };

struct SourceType;
struct TrailType;
using TypePtr = std::shared_ptr<const SourceType>;
using TrailPtr = std::shared_ptr<const TrailType>;

/// Expression types: base types, the six-component impure arrow
/// `(dom -> cod @ [muAlpha, alpha, muBeta, beta])`, and the pure arrow
/// `(dom => cod)` of the fine-grained system.
struct SourceType {
  enum class Kind : std::uint8_t { Base, ImpureArrow, PureArrow };

  Kind kind = Kind::Base;
  BaseType base = BaseType::Int;
  TypePtr dom;
  TypePtr cod;
  TrailPtr mu_alpha;
  TypePtr alpha;
  TrailPtr mu_beta;
  TypePtr beta;

  bool is_base() const { return kind == Kind::Base; }
  bool is_arrow() const { return kind != Kind::Base; }
};

/// Trail types: `*` (the empty trail) or `{in => next => out}`.
struct TrailType {
  enum class Kind : std::uint8_t { Empty, Step };

  Kind kind = Kind::Empty;
  TypePtr in;
  TrailPtr next;
  TypePtr out;

  bool is_empty() const { return kind == Kind::Empty; }
};

bool operator==(const SourceType &a, const SourceType &b);
bool operator==(const TrailType &a, const TrailType &b);
bool same_type(const TypePtr &a, const TypePtr &b);
bool same_trail(const TrailPtr &a, const TrailPtr &b);

TypePtr base_type(BaseType b);
TypePtr int_type();
TypePtr bool_type();
TypePtr string_type();
TypePtr impure_arrow(TypePtr dom, TypePtr cod, TrailPtr mu_alpha, TypePtr alpha,
                     TrailPtr mu_beta, TypePtr beta);
TypePtr pure_arrow(TypePtr dom, TypePtr cod);
TrailPtr empty_trail();
TrailPtr step_trail(TypePtr in, TrailPtr next, TypePtr out);

/// Number of nested steps; `*` has depth 0.
std::size_t trail_depth(const TrailType &t);
std::size_t type_size(const SourceType &t);
std::size_t trail_size(const TrailType &t);
bool mentions_pure_arrow(const SourceType &t);

std::string to_string(BaseType b);
std::string to_string(const SourceType &t);
std::string to_string(const TrailType &t);

struct Loc {
  int line = 0;
  int column = 0;
};

std::string to_string(Loc loc);

enum class ExprKind : std::uint8_t {
  Int,
  Bool,
  Str,
  Var,
  Abs,
  App,
  Control,
  Prompt,
  Plus,
  Mul,
  Is0,
  B2S,
  Seq,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable AST node. Children live in `kids`:
///   Abs/Control/Prompt/Is0/B2S: {body}
///   App: {fn, arg}; Plus/Mul/Seq: {lhs, rhs}
/// `name` is the variable name, the binder, or the string literal.
struct Expr {
  ExprKind kind = ExprKind::Int;
  std::int64_t int_value = 0;
  bool bool_value = false;
  std::string name;
  TypePtr annotation;  // Abs parameter type or Control continuation type
  TrailPtr witness;    // Control: explicit mu0
  std::vector<ExprPtr> kids;
  Loc loc;
  std::vector<std::string> free_vars;  // sorted, unique

  const ExprPtr &body() const { return kids[0]; }
  const ExprPtr &lhs() const { return kids[0]; }
  const ExprPtr &rhs() const { return kids[1]; }
  bool is_value() const {
    return kind == ExprKind::Int || kind == ExprKind::Bool || kind == ExprKind::Str ||
           kind == ExprKind::Abs;
  }
  bool has_free(std::string_view x) const;
  bool closed() const { return free_vars.empty(); }
};

ExprPtr make_int(std::int64_t n, Loc loc = {});
ExprPtr make_bool(bool b, Loc loc = {});
ExprPtr make_str(std::string s, Loc loc = {});
ExprPtr make_var(std::string x, Loc loc = {});
ExprPtr make_abs(std::string x, TypePtr param_type, ExprPtr body, Loc loc = {});
ExprPtr make_app(ExprPtr fn, ExprPtr arg, Loc loc = {});
ExprPtr make_control(std::string k, TypePtr cont_type, TrailPtr witness, ExprPtr body,
                     Loc loc = {});
ExprPtr make_prompt(ExprPtr body, Loc loc = {});
ExprPtr make_plus(ExprPtr l, ExprPtr r, Loc loc = {});
ExprPtr make_mul(ExprPtr l, ExprPtr r, Loc loc = {});
ExprPtr make_is0(ExprPtr e, Loc loc = {});
ExprPtr make_b2s(ExprPtr e, Loc loc = {});
ExprPtr make_seq(ExprPtr l, ExprPtr r, Loc loc = {});

/// Copy of `e` with its children replaced.
ExprPtr with_kids(const Expr &e, std::vector<ExprPtr> kids);

/// Structural equality; locations are ignored, annotations are not.
bool same_expr(const Expr &a, const Expr &b);
/// Equality up to renaming of bound variables (annotations compared too).
bool alpha_equivalent(const Expr &a, const Expr &b);
/// Node count.
std::size_t expr_size(const Expr &e);
bool contains_seq(const Expr &e);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(Loc loc, const std::string &msg);
  Loc loc() const { return loc_; }

 private:
  Loc loc_;
};

enum class ShiftEncoding : std::uint8_t { Full, Simplified };

struct ParseOptions {
  /// How the `shift` sugar is expanded (it has no AST node of its own).
  ShiftEncoding shift = ShiftEncoding::Full;
};

ExprPtr parse(std::string_view text, const ParseOptions &opts = {});
TypePtr parse_type(std::string_view text);
TrailPtr parse_trail(std::string_view text);

std::string print(const Expr &e);

/// Replaces every `e1; e2` by `(fun _ -> e2) e1`.
ExprPtr desugar(const ExprPtr &e);

/// Encodes `shift k -> body` with control and prompt. The full form is
/// `control k' -> body[k := fun x -> prompt { k' x }]`; the simplified form
/// is `control k -> body` with `k` annotated pure. `cont_type` annotates
/// the captured continuation (k' or k).
ExprPtr shift_encode(const std::string &k, const ExprPtr &body, TypePtr cont_type,
                     ShiftEncoding mode = ShiftEncoding::Full);

/// Capture-avoiding substitution body[x := v].
ExprPtr substitute(const ExprPtr &body, const std::string &x, const ExprPtr &v);

}  // namespace lfk

#endif  // LFK_SYNTAX_HPP
