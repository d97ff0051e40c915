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

#include <cctype>
#include <charconv>

#include "lfk/syntax.hpp"

namespace lfk {

namespace {

enum class Tok : std::uint8_t {
  End,
  Int,
  Str,
  Ident,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Colon,
  Arrow,     // ->
  FatArrow,  // =>
  At,
  Comma,
  Star,
  Plus,
  Semi,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Loc loc;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.loc = {line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          advance();
        }
        t.kind = Tok::Int;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_' || src_[pos_] == '\'')) {
          advance();
        }
        t.kind = Tok::Ident;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (c == '"') {
        advance();
        t.kind = Tok::Str;
        for (;;) {
          if (pos_ >= src_.size() || src_[pos_] == '\n') {
            throw SyntaxError(t.loc, "unterminated string literal");
          }
          char d = src_[pos_];
          if (d == '"') {
            advance();
            break;
          }
          if (d == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '"') {
            advance();
            d = '"';
          }
          t.text.push_back(d);
          advance();
        }
      } else {
        t.kind = symbol(t.loc);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  Tok symbol(Loc loc) {
    char c = src_[pos_];
    char n = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';
    if (c == '-' && n == '>') {
      advance();
      advance();
      return Tok::Arrow;
    }
    if (c == '=' && n == '>') {
      advance();
      advance();
      return Tok::FatArrow;
    }
    advance();
    switch (c) {
    case '(':
      return Tok::LParen;
    case ')':
      return Tok::RParen;
    case '{':
      return Tok::LBrace;
    case '}':
      return Tok::RBrace;
    case '[':
      return Tok::LBracket;
    case ']':
      return Tok::RBracket;
    case ':':
      return Tok::Colon;
    case '@':
      return Tok::At;
    case ',':
      return Tok::Comma;
    case '*':
      return Tok::Star;
    case '+':
      return Tok::Plus;
    case ';':
      return Tok::Semi;
    default:
      throw SyntaxError(loc, std::string("unexpected character '") + c + "'");
    }
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
          advance();
        }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool is_keyword(const std::string &s) {
  return s == "fun" || s == "control" || s == "prompt" || s == "shift" || s == "true" ||
         s == "false" || s == "is0" || s == "b2s" || s == "int" || s == "bool" ||
         s == "string";
}

class Parser {
 public:
  Parser(std::string_view src, ParseOptions opts) : toks_(Lexer(src).run()), opts_(opts) {}

  ExprPtr program() {
    ExprPtr e = seq();
    expect(Tok::End, "end of input");
    return e;
  }

  TypePtr whole_type() {
    TypePtr t = type();
    expect(Tok::End, "end of input");
    return t;
  }

  TrailPtr whole_trail() {
    TrailPtr t = trail();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token &peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char *w) const { return at(Tok::Ident) && peek().text == w; }
  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) {
      ++pos_;
    }
    return t;
  }

  [[noreturn]] void fail(const std::string &what) const {
    const Token &t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    if (t.kind != Tok::End && t.text.empty()) {
      found = "symbol";
    }
    throw SyntaxError(t.loc, "expected " + what + ", found " + found);
  }

  Token expect(Tok k, const std::string &what) {
    if (!at(k)) {
      fail(what);
    }
    return take();
  }

  void expect_word(const char *w) {
    if (!at_word(w)) {
      fail(std::string("'") + w + "'");
    }
    take();
  }

  std::string binder() {
    Token t = expect(Tok::Ident, "identifier");
    if (is_keyword(t.text)) {
      throw SyntaxError(t.loc, "keyword '" + t.text + "' cannot be a binder");
    }
    return t.text;
  }

  // seq := plus [";" seq]
  ExprPtr seq() {
    Loc loc = peek().loc;
    ExprPtr lhs = plus();
    if (at(Tok::Semi)) {
      take();
      return make_seq(std::move(lhs), seq(), loc);
    }
    return lhs;
  }

  ExprPtr plus() {
    Loc loc = peek().loc;
    ExprPtr lhs = mul();
    while (at(Tok::Plus)) {
      take();
      lhs = make_plus(std::move(lhs), mul(), loc);
    }
    return lhs;
  }

  ExprPtr mul() {
    Loc loc = peek().loc;
    ExprPtr lhs = prefix();
    while (at(Tok::Star)) {
      take();
      lhs = make_mul(std::move(lhs), prefix(), loc);
    }
    return lhs;
  }

  ExprPtr prefix() {
    Loc loc = peek().loc;
    if (at_word("is0")) {
      take();
      return make_is0(prefix(), loc);
    }
    if (at_word("b2s")) {
      take();
      return make_b2s(prefix(), loc);
    }
    if (at_word("fun")) {
      take();
      auto [x, ann, wit] = binder_group(false);
      expect(Tok::Arrow, "'->'");
      return make_abs(std::move(x), std::move(ann), seq(), loc);
    }
    if (at_word("control") || at_word("shift")) {
      bool is_shift = peek().text == "shift";
      take();
      auto [k, ann, wit] = binder_group(!is_shift);
      expect(Tok::Arrow, "'->'");
      ExprPtr body = seq();
      if (is_shift) {
        return shift_encode(k, body, std::move(ann), opts_.shift);
      }
      return make_control(std::move(k), std::move(ann), std::move(wit), std::move(body), loc);
    }
    return app();
  }

  struct Binder {
    std::string name;
    TypePtr annotation;
    TrailPtr witness;
  };

  Binder binder_group(bool allow_witness) {
    Binder b;
    if (!at(Tok::LParen)) {
      b.name = binder();
      return b;
    }
    take();
    b.name = binder();
    if (at(Tok::Colon)) {
      take();
      b.annotation = type();
    }
    if (allow_witness && at(Tok::At)) {
      take();
      b.witness = trail();
    }
    expect(Tok::RParen, "')'");
    return b;
  }

  bool starts_atom() const {
    switch (peek().kind) {
    case Tok::Int:
    case Tok::Str:
    case Tok::LParen:
      return true;
    case Tok::Ident: {
      const std::string &w = peek().text;
      return w == "prompt" || w == "true" || w == "false" || !is_keyword(w);
    }
    default:
      return false;
    }
  }

  ExprPtr app() {
    Loc loc = peek().loc;
    ExprPtr fn = atom();
    while (starts_atom()) {
      fn = make_app(std::move(fn), atom(), loc);
    }
    return fn;
  }

  ExprPtr atom() {
    Loc loc = peek().loc;
    if (at(Tok::Int)) {
      Token t = take();
      std::int64_t n = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
      if (ec != std::errc{}) {
        throw SyntaxError(t.loc, "integer literal out of range");
      }
      return make_int(n, loc);
    }
    if (at(Tok::Str)) {
      return make_str(take().text, loc);
    }
    if (at(Tok::LParen)) {
      take();
      ExprPtr e = seq();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (at_word("true") || at_word("false")) {
      return make_bool(take().text == "true", loc);
    }
    if (at_word("prompt")) {
      take();
      expect(Tok::LBrace, "'{'");
      ExprPtr body = seq();
      expect(Tok::RBrace, "'}'");
      return make_prompt(std::move(body), loc);
    }
    if (at(Tok::Ident) && !is_keyword(peek().text)) {
      Token t = take();
      if (t.text == "_") {
        throw SyntaxError(t.loc, "'_' cannot be used as an expression");
      }
      return make_var(t.text, loc);
    }
    fail("expression");
  }

  TypePtr type() {
    if (at_word("int")) {
      take();
      return int_type();
    }
    if (at_word("bool")) {
      take();
      return bool_type();
    }
    if (at_word("string")) {
      take();
      return string_type();
    }
    expect(Tok::LParen, "type");
    TypePtr dom = type();
    if (at(Tok::FatArrow)) {
      take();
      TypePtr cod = type();
      expect(Tok::RParen, "')'");
      return pure_arrow(std::move(dom), std::move(cod));
    }
    expect(Tok::Arrow, "'->' or '=>'");
    TypePtr cod = type();
    expect(Tok::At, "'@'");
    expect(Tok::LBracket, "'['");
    TrailPtr mu_alpha = trail();
    expect(Tok::Comma, "','");
    TypePtr alpha = type();
    expect(Tok::Comma, "','");
    TrailPtr mu_beta = trail();
    expect(Tok::Comma, "','");
    TypePtr beta = type();
    expect(Tok::RBracket, "']'");
    expect(Tok::RParen, "')'");
    return impure_arrow(std::move(dom), std::move(cod), std::move(mu_alpha), std::move(alpha),
                        std::move(mu_beta), std::move(beta));
  }

  TrailPtr trail() {
    if (at(Tok::Star)) {
      take();
      return empty_trail();
    }
    expect(Tok::LBrace, "trail type");
    TypePtr in = type();
    expect(Tok::FatArrow, "'=>'");
    TrailPtr next = trail();
    expect(Tok::FatArrow, "'=>'");
    TypePtr out = type();
    expect(Tok::RBrace, "'}'");
    return step_trail(std::move(in), std::move(next), std::move(out));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParseOptions opts_;
};

}  // namespace

ExprPtr parse(std::string_view text, const ParseOptions &opts) {
  return Parser(text, opts).program();
}

TypePtr parse_type(std::string_view text) { return Parser(text, {}).whole_type(); }

TrailPtr parse_trail(std::string_view text) { return Parser(text, {}).whole_trail(); }

// ---------------------------------------------------------------------------
// Printer. Precedence levels: 0 seq/binders, 1 plus, 2 mul, 3 prefix,
// 4 application, 5 atoms.

namespace {

int level(const Expr &e) {
  switch (e.kind) {
  case ExprKind::Seq:
  case ExprKind::Abs:
  case ExprKind::Control:
    return 0;
  case ExprKind::Plus:
    return 1;
  case ExprKind::Mul:
    return 2;
  case ExprKind::Is0:
  case ExprKind::B2S:
    return 3;
  case ExprKind::App:
    return 4;
  default:
    return 5;
  }
}

void emit(const Expr &e, int needed, std::string &out) {
  bool parens = level(e) < needed;
  if (parens) {
    out += '(';
  }
  switch (e.kind) {
  case ExprKind::Int:
    out += std::to_string(e.int_value);
    break;
  case ExprKind::Bool:
    out += e.bool_value ? "true" : "false";
    break;
  case ExprKind::Str:
    out += '"';
    for (char c : e.name) {
      if (c == '"') {
        out += '\\';
      }
      out += c;
    }
    out += '"';
    break;
  case ExprKind::Var:
    out += e.name;
    break;
  case ExprKind::Abs:
  case ExprKind::Control:
    out += e.kind == ExprKind::Abs ? "fun " : "control ";
    if (e.annotation || e.witness) {
      out += "(" + e.name;
      if (e.annotation) {
        out += " : " + to_string(*e.annotation);
      }
      if (e.witness) {
        out += " @ " + to_string(*e.witness);
      }
      out += ")";
    } else {
      out += e.name;
    }
    out += " -> ";
    emit(*e.kids[0], 0, out);
    break;
  case ExprKind::App:
    emit(*e.kids[0], 4, out);
    out += ' ';
    emit(*e.kids[1], 5, out);
    break;
  case ExprKind::Prompt:
    out += "prompt { ";
    emit(*e.kids[0], 0, out);
    out += " }";
    break;
  case ExprKind::Plus:
    emit(*e.kids[0], 1, out);
    out += " + ";
    emit(*e.kids[1], 2, out);
    break;
  case ExprKind::Mul:
    emit(*e.kids[0], 2, out);
    out += " * ";
    emit(*e.kids[1], 3, out);
    break;
  case ExprKind::Is0:
  case ExprKind::B2S:
    out += e.kind == ExprKind::Is0 ? "is0 " : "b2s ";
    emit(*e.kids[0], 3, out);
    break;
  case ExprKind::Seq:
    emit(*e.kids[0], 1, out);
    out += "; ";
    emit(*e.kids[1], 0, out);
    break;
  }
  if (parens) {
    out += ')';
  }
}

}  // namespace

std::string print(const Expr &e) {
  std::string out;
  emit(e, 0, out);
  return out;
}

}  // namespace lfk
