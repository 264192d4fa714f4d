#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support/common.hpp"

using namespace irr;
using namespace irr::frontend;

namespace {

Report run(const std::string& src, Flags flags = {}) { return run_source(src, "input.irr", flags); }

}  // namespace

TEST(Parse, Definition) {
  auto cmds = parse("def id : Pi (A : Type 0), A -> A := fun (A : Type 0) => fun (x : A) => x");
  ASSERT_EQ(cmds.size(), 1u);
  EXPECT_EQ(cmds[0].kind, Command::Kind::def);
  EXPECT_EQ(cmds[0].name, "id");
  EXPECT_EQ(cmds[0].type->kind, SExpr::Kind::pi);
  EXPECT_EQ(cmds[0].term->kind, SExpr::Kind::lam);
}

TEST(Parse, CheckDirective) {
  auto cmds = parse("#check fun (x : nat) => x : nat -> nat");
  ASSERT_EQ(cmds.size(), 1u);
  EXPECT_EQ(cmds[0].kind, Command::Kind::check);
  EXPECT_EQ(cmds[0].term->kind, SExpr::Kind::lam);
  EXPECT_EQ(cmds[0].type->kind, SExpr::Kind::arrow);
}

TEST(Parse, IncompleteDefinitionIsAnError) {
  try {
    parse("def bad := ");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.loc.line, 1);
    EXPECT_FALSE(e.expected.empty());
  }
}

TEST(Parse, CommentsAndAllCommandForms) {
  auto cmds = parse(
      "-- comment\n"
      "axiom A : Type 0\n"
      "#infer A\n#normalize A\n#extract A\n#convert A A\n#mu nat\n#coerce nat\n#tcc nat\n#model true : bool\n");
  ASSERT_EQ(cmds.size(), 9u);
  EXPECT_EQ(cmds[0].loc.line, 2);
  EXPECT_EQ(cmds[4].kind, Command::Kind::convert);
  EXPECT_TRUE(cmds[4].other);
}

TEST(Parse, TermSyntax) {
  EXPECT_EQ(parse_term("Sig (x : nat), bool")->kind, SExpr::Kind::sigma);
  EXPECT_EQ(parse_term("{x : nat | P x}")->kind, SExpr::Kind::subset);
  EXPECT_EQ(parse_term("nat * bool")->kind, SExpr::Kind::prod);
  EXPECT_EQ(parse_term("pair[nat * nat](1, 2)")->kind, SExpr::Kind::pair);
  EXPECT_EQ(parse_term("fst (snd c)")->kind, SExpr::Kind::fst);
  // application binds tighter than arrows, arrows associate to the right
  SPtr t = parse_term("f x -> g y -> h");
  ASSERT_EQ(t->kind, SExpr::Kind::arrow);
  EXPECT_EQ(t->a->kind, SExpr::Kind::app);
  EXPECT_EQ(t->b->kind, SExpr::Kind::arrow);
}

TEST(Parse, EpsIsNotInputSyntax) {
  EXPECT_THROW(parse_term("ε"), ParseError);
  Report r = run("#infer fun (x : nat) => ε\n");
  EXPECT_EQ(r.exit_code, exit_parse);
}

TEST(Elaborate, ProofBinderIsStar) {
  auto s = support::session("axiom P : Prop\n");
  Term t = s.elaborate_source("fun (p : P) => p");
  ASSERT_EQ(t->kind, Kind::lam);
  EXPECT_EQ(t->tag, Tag::star);
  EXPECT_EQ(t->b->tag, Tag::star);
  EXPECT_EQ(s.elaborate_source("fun (n : nat) => n")->tag, Tag::diamond);
}

TEST(Elaborate, SubsetIsStarSum) {
  auto s = support::session("axiom R : nat -> Prop\n");
  Term t = s.elaborate_source("{x : nat | R x}");
  ASSERT_EQ(t->kind, Kind::sigma);
  EXPECT_EQ(t->tag, Tag::star);
  EXPECT_EQ(t->binder_tag, Tag::diamond);
  EXPECT_EQ(s.elaborate_source("Sig (x : nat), bool")->tag, Tag::diamond);
}

TEST(Elaborate, ProjectionTagFollowsTheScrutinee) {
  auto s = support::session("axiom R : nat -> Prop\naxiom c : {x : nat | R x}\naxiom d : nat * bool\n");
  Term t = s.elaborate_source("snd c");
  ASSERT_EQ(t->kind, Kind::proj2);
  EXPECT_EQ(t->tag, Tag::star);
  EXPECT_EQ(s.elaborate_source("fst c")->tag, Tag::star);
  EXPECT_EQ(s.elaborate_source("snd d")->tag, Tag::diamond);
}

TEST(Elaborate, PairWithoutAnnotationNeedsAnExpectedType) {
  Report r = run("#infer pair(1, true)\n");
  ASSERT_EQ(r.exit_code, exit_type);
  EXPECT_EQ(r.entries.back().kind, "AnnotationRequired");
  EXPECT_EQ(run("#check pair(1, true) : nat * bool\n").exit_code, exit_ok);
}

TEST(Elaborate, IsDeterministic) {
  auto s = support::load("prelude.irr");
  for (const char* src : {"fun (A : Type 0) (x : A) => refl A x", "Pi (P : Prop), or P (not P)",
                          "fun (P : Prop) (p : P) => inl P False p"}) {
    EXPECT_TRUE(alpha_eq(s.elaborate_source(src), s.elaborate_source(src))) << src;
  }
}

TEST(Printer, FixpointOverTheCorpus) {
  int checked = 0;
  for (const auto& file : support::corpus_files()) {
    Session s;
    ASSERT_EQ(run_file(file, {}, &s).exit_code, 0) << file;
    for (const Declaration& d : s.signature()) {
      for (const Term& t : {d.type, d.body}) {
        if (!t) continue;
        std::string once = s.show(t);
        Term again = s.elaborate_source(once);
        EXPECT_EQ(s.show(again), once) << file << " " << d.name;
        // tags are part of alpha equality
        EXPECT_TRUE(alpha_eq(again, t)) << file << " " << d.name << "\n" << once;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Printer, ExtractionPrintsEps) {
  std::ifstream in(support::corpus_path("prelude.irr"));
  std::stringstream buf;
  buf << in.rdbuf();
  Report r = run(buf.str() + "#extract refl\n");
  ASSERT_EQ(r.exit_code, exit_ok);
  EXPECT_EQ(r.entries.back().result, "ε");
}

TEST(Report, FormatsOkLinesAndSummary) {
  Report r = run("axiom A : Type 0\n#check fun (x : A) => x : A -> A\n");
  ASSERT_EQ(r.exit_code, exit_ok);
  EXPECT_EQ(r.declarations, 1);
  EXPECT_EQ(r.directives, 1);
  EXPECT_EQ(r.text(), "OK A : Type 0\nOK #check : A -> A\nchecked 1 declarations, 1 directives\n");
}

TEST(Report, FormatsErrorsWithLocation) {
  Report r = run("axiom P : Prop\n#convert P (P -> P)\n");
  ASSERT_EQ(r.exit_code, exit_type);
  const Entry& e = r.entries.back();
  EXPECT_EQ(e.kind, "NotConvertible");
  EXPECT_EQ(e.loc.line, 2);
  EXPECT_NE(r.text().find("\nERROR input.irr:2:1 NotConvertible "), std::string::npos) << r.text();
}

TEST(Report, ExitCodes) {
  EXPECT_EQ(run("axiom A : Type 0\n").exit_code, exit_ok);
  EXPECT_EQ(run("#check true : nat\n").exit_code, exit_type);
  EXPECT_EQ(run("def := \n").exit_code, exit_parse);
  Flags low;
  low.fuel = 30;
  Report r = run(
      "def plus : nat -> nat -> nat := fun (m n : nat) => nat_rec (fun (k : nat) => nat) n (fun (k r : nat) => S r) m\n"
      "axiom P : nat -> Prop\naxiom p : P 80\n#check p : P (plus 40 40)\n",
      low);
  EXPECT_EQ(r.exit_code, exit_fuel);
  EXPECT_EQ(r.entries.back().kind, "FuelExhausted");
}

TEST(Report, StopsAtFirstErrorUnlessKeepGoing) {
  const char* src = "#check true : nat\n#check O : bool\naxiom A : Type 0\n";
  EXPECT_EQ(run(src).entries.size(), 1u);
  Flags kg;
  kg.keep_going = true;
  Report r = run(src, kg);
  ASSERT_EQ(r.entries.size(), 3u);
  EXPECT_FALSE(r.entries[1].ok);
  EXPECT_TRUE(r.entries[2].ok);
  EXPECT_EQ(r.exit_code, exit_type);
}

TEST(Report, SubsetDirectives) {
  Report r = run("axiom R : nat -> Prop\n#mu nat -> {x : nat | R x}\n#coerce {x : nat | R x}\n#tcc nat\n#mu Prop\n");
  ASSERT_EQ(r.entries.size(), 5u);
  EXPECT_EQ(r.entries[1].result, "nat -> nat");
  EXPECT_TRUE(r.entries[2].ok);
  EXPECT_TRUE(r.entries[3].ok);
  EXPECT_EQ(r.entries.back().kind, "NoSupertype");
}
