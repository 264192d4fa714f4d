#ifndef IRR_FRONTEND_PARSER_HPP
#define IRR_FRONTEND_PARSER_HPP

// Recursive-descent parser for the vernacular.
//
//   term   ::= 'fun' group+ '=>' term | 'Pi' group+ ',' term | 'Sig' group+ ',' term | arrow
//   arrow  ::= prod ['->' term]
//   prod   ::= app ['*' prod]
//   app    ::= atom atom*
//   atom   ::= ident ['@' num] | num | 'Prop' | 'Type' [num] | '(' term ')'
//            | '{' ident ':' term '|' term '}' | 'pair' ['[' term ']'] '(' term ',' term ')'
//            | 'fst' atom | 'snd' atom
//   group  ::= '(' ident+ ':' term ')'

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "irr/frontend/lexer.hpp"

namespace irr::frontend {

inline bool is_keyword(const std::string& s) {
  static const std::set<std::string> kw = {"def", "axiom", "propdata", "fun", "Pi",  "Sig",
                                           "Prop", "Type", "fst",     "snd", "pair"};
  return kw.count(s) != 0;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  std::vector<Command> commands() {
    std::vector<Command> out;
    while (peek().kind != Token::Kind::end) out.push_back(command());
    return out;
  }

  /// Parses a single term spanning the whole input.
  SPtr whole_term() {
    SPtr t = term();
    if (peek().kind != Token::Kind::end) fail({"end of input"});
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool at_symbol(const char* s) const { return peek().kind == Token::Kind::symbol && peek().text == s; }
  bool at_word(const char* s) const { return peek().kind == Token::Kind::ident && peek().text == s; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().loc, "unexpected " + describe(peek()), std::move(expected));
  }

  void expect_symbol(const char* s) {
    if (!at_symbol(s)) fail({std::string("'") + s + "'"});
    next();
  }

  std::string ident() {
    if (peek().kind != Token::Kind::ident || is_keyword(peek().text)) fail({"identifier"});
    return next().text;
  }

  std::uint32_t number() {
    if (peek().kind != Token::Kind::number) fail({"number"});
    return static_cast<std::uint32_t>(std::stoul(next().text));
  }

  Command command() {
    Command c;
    c.loc = peek().loc;
    const Token& t = peek();
    if (t.kind == Token::Kind::ident && t.text == "def") {
      next();
      c.kind = Command::Kind::def;
      c.name = ident();
      if (at_symbol(":")) {
        next();
        c.type = term();
      }
      expect_symbol(":=");
      c.term = term();
      return c;
    }
    if (t.kind == Token::Kind::ident && t.text == "axiom") {
      next();
      c.kind = Command::Kind::axiom;
      c.name = ident();
      expect_symbol(":");
      c.type = term();
      return c;
    }
    if (t.kind == Token::Kind::ident && t.text == "propdata") {
      next();
      c.kind = Command::Kind::propdata;
      c.name = ident();
      while (at_symbol("(")) c.params.push_back(group());
      expect_symbol(":=");
      c.ctor = ident();
      while (at_symbol("(")) c.args.push_back(group());
      expect_symbol(":");
      c.type = term();
      return c;
    }
    if (t.kind == Token::Kind::directive) {
      static const std::pair<const char*, Command::Kind> table[] = {
          {"#check", Command::Kind::check},     {"#infer", Command::Kind::infer},   {"#normalize", Command::Kind::normalize},
          {"#extract", Command::Kind::extract}, {"#convert", Command::Kind::convert}, {"#mu", Command::Kind::mu},
          {"#coerce", Command::Kind::coerce},   {"#tcc", Command::Kind::tcc},        {"#model", Command::Kind::model}};
      for (const auto& [name, kind] : table) {
        if (t.text != name) continue;
        next();
        c.kind = kind;
        c.term = term();
        if (kind == Command::Kind::check || kind == Command::Kind::model) {
          expect_symbol(":");
          c.type = term();
        }
        if (kind == Command::Kind::convert) {
          if (c.term->kind != SExpr::Kind::app) throw ParseError(c.loc, "#convert needs two terms");
          c.other = c.term->b;
          c.term = c.term->a;
        }
        return c;
      }
      throw ParseError(t.loc, "unknown directive " + t.text);
    }
    fail({"def", "axiom", "propdata", "directive"});
  }

  BinderGroup group() {
    BinderGroup g;
    g.loc = peek().loc;
    expect_symbol("(");
    g.names.push_back(ident());
    while (peek().kind == Token::Kind::ident && !is_keyword(peek().text)) g.names.push_back(next().text);
    expect_symbol(":");
    g.type = term();
    expect_symbol(")");
    return g;
  }

  SPtr binders(SExpr::Kind kind, const char* sep) {
    Loc loc = peek().loc;
    next();
    std::vector<BinderGroup> groups;
    do groups.push_back(group());
    while (at_symbol("("));
    expect_symbol(sep);
    SPtr body = term();
    for (auto g = groups.rbegin(); g != groups.rend(); ++g) {
      for (auto n = g->names.rbegin(); n != g->names.rend(); ++n) {
        SExpr e;
        e.kind = kind;
        e.name = *n;
        e.a = g->type;
        e.b = body;
        e.loc = loc;
        body = make(std::move(e));
      }
    }
    return body;
  }

  SPtr term() {
    if (at_word("fun")) return binders(SExpr::Kind::lam, "=>");
    if (at_word("Pi")) return binders(SExpr::Kind::pi, ",");
    if (at_word("Sig")) return binders(SExpr::Kind::sigma, ",");
    return arrow();
  }

  SPtr arrow() {
    SPtr lhs = prod();
    if (!at_symbol("->")) return lhs;
    SExpr e;
    e.loc = peek().loc;
    next();
    e.kind = SExpr::Kind::arrow;
    e.a = lhs;
    e.b = term();
    return make(std::move(e));
  }

  SPtr prod() {
    SPtr lhs = app();
    if (!at_symbol("*")) return lhs;
    SExpr e;
    e.loc = peek().loc;
    next();
    e.kind = SExpr::Kind::prod;
    e.a = lhs;
    e.b = prod();
    return make(std::move(e));
  }

  bool at_atom() const {
    const Token& t = peek();
    if (t.kind == Token::Kind::number) return true;
    if (t.kind == Token::Kind::ident)
      return !is_keyword(t.text) || t.text == "Prop" || t.text == "Type" || t.text == "pair" || t.text == "fst" ||
             t.text == "snd";
    return t.kind == Token::Kind::symbol && (t.text == "(" || t.text == "{");
  }

  SPtr app() {
    SPtr f = atom();
    while (at_atom()) {
      SExpr e;
      e.kind = SExpr::Kind::app;
      e.loc = f->loc;
      e.a = f;
      e.b = atom();
      f = make(std::move(e));
    }
    return f;
  }

  SPtr atom() {
    SExpr e;
    e.loc = peek().loc;
    const Token& t = peek();
    if (t.kind == Token::Kind::number) {
      e.kind = SExpr::Kind::num;
      e.level = number();
      return make(std::move(e));
    }
    if (at_symbol("(")) {
      next();
      SPtr inner = term();
      expect_symbol(")");
      return inner;
    }
    if (at_symbol("{")) {
      next();
      e.kind = SExpr::Kind::subset;
      e.name = ident();
      expect_symbol(":");
      e.a = term();
      expect_symbol("|");
      e.b = term();
      expect_symbol("}");
      return make(std::move(e));
    }
    if (at_word("Prop")) {
      next();
      e.kind = SExpr::Kind::prop;
      return make(std::move(e));
    }
    if (at_word("Type")) {
      next();
      e.kind = SExpr::Kind::type;
      if (peek().kind == Token::Kind::number) e.level = number();
      return make(std::move(e));
    }
    if (at_word("fst") || at_word("snd")) {
      e.kind = next().text == "fst" ? SExpr::Kind::fst : SExpr::Kind::snd;
      e.a = atom();
      return make(std::move(e));
    }
    if (at_word("pair")) {
      next();
      e.kind = SExpr::Kind::pair;
      if (at_symbol("[")) {
        next();
        e.a = term();
        expect_symbol("]");
      }
      expect_symbol("(");
      e.b = term();
      expect_symbol(",");
      e.c = term();
      expect_symbol(")");
      return make(std::move(e));
    }
    if (t.kind == Token::Kind::ident && !is_keyword(t.text)) {
      e.kind = SExpr::Kind::var;
      e.name = next().text;
      if (at_symbol("@")) {
        next();
        e.level = number();
        e.has_level = true;
      }
      return make(std::move(e));
    }
    fail({"term"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline std::vector<Command> parse(std::string_view src) { return Parser(src).commands(); }
inline SPtr parse_term(std::string_view src) { return Parser(src).whole_term(); }

}  // namespace irr::frontend

#endif  // IRR_FRONTEND_PARSER_HPP
