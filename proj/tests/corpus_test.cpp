#include <gtest/gtest.h>

#include <chrono>
#include <map>

#include "support/common.hpp"

using namespace irr;

namespace {

Term constant(const char* name) { return mk_const(name, Tag::diamond); }

// ΠA:Type(0).Πa,b:A. or (eq A a b) (not (eq A a b)), built without the parser.
Term decidable_equality() {
  using namespace build;
  Term A = var("A", Tag::diamond), a = var("a", Tag::diamond), b = var("b", Tag::diamond);
  Term e = mk_apps(constant("eq"), {A, a, b});
  Term body = mk_apps(constant("or"), {e, mk_app(constant("not"), e)});
  return pi(A, mk_type(0), pi(a, A, pi(b, A, body)));
}

}  // namespace

TEST(Corpus, EveryFileChecksUnderDefaultFlags) {
  auto files = support::corpus_files();
  for (const char* name : {"prelude.irr", "equality.irr", "dependent_arrays.irr", "subset_equality.irr",
                           "bounded_arrays.irr", "k_statement.irr", "diaconescu.irr", "normalized_types.irr",
                           "model_facts.irr"})
    EXPECT_NE(std::find(files.begin(), files.end(), support::corpus_path(name)), files.end()) << name;
  for (const auto& f : files) {
    frontend::Report r = frontend::run_file(f, {});
    EXPECT_EQ(r.exit_code, 0) << r.text();
  }
}

TEST(Corpus, DiaconescuDerivesDecidableEquality) {
  auto t0 = std::chrono::steady_clock::now();
  frontend::Session s;
  frontend::Report r = frontend::run_file(support::corpus_path("diaconescu.irr"), {}, &s);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ASSERT_EQ(r.exit_code, 0) << r.text();
  EXPECT_LT(secs, 5.0);
  const Declaration* d = s.signature().find("diaconescu");
  ASSERT_NE(d, nullptr);
  EXPECT_TRUE(alpha_eq(d->type, decidable_equality()));
  // the only axiom beyond the built-ins is choice
  std::vector<std::string> axioms;
  Signature builtins = Signature::with_builtins();
  for (const Declaration& x : s.signature())
    if (x.kind == DeclKind::axiom && !builtins.contains(x.name)) axioms.push_back(x.name);
  EXPECT_EQ(axioms, std::vector<std::string>{"AC"});
}

TEST(Corpus, KStatementHoldsByConversion) {
  auto s = support::load("k_statement.irr");
  const Declaration* k = s.signature().find("K");
  ASSERT_NE(k, nullptr);
  EXPECT_EQ(k->kind, DeclKind::definition);
}

TEST(Corpus, SubsetEqualityIsEquivalentToFirstComponentEquality) {
  auto s = support::load("subset_equality.irr");
  EXPECT_NE(s.signature().find("sub_eq_intro"), nullptr);
  EXPECT_NE(s.signature().find("sub_eq_elim"), nullptr);
}

TEST(Corpus, ProofIrrelevantConversions) {
  auto s = support::session(
      "def eq : Pi (A : Type 0), A -> A -> Prop := fun (A : Type 0) (x y : A) => Pi (P : A -> Prop), P x -> P y\n"
      "def refl : Pi (A : Type 0) (x : A), eq A x x := fun (A : Type 0) (x : A) (P : A -> Prop) (h : P x) => h\n"
      "axiom A : Type 0\naxiom a : A\naxiom R : A -> Prop\naxiom p1 : R a\naxiom p2 : R a\n"
      "axiom Pe : eq A a a -> Prop\naxiom e : eq A a a\n");
  Kernel k(s.signature(), {});
  EXPECT_TRUE(k.convert(s.elaborate_source("pair[{x : A | R x}](a, p1)"), s.elaborate_source("pair[{x : A | R x}](a, p2)")));
  EXPECT_TRUE(k.convert(s.elaborate_source("Pe e"), s.elaborate_source("Pe (refl A a)")));
}

TEST(Corpus, PropDataFileNeedsItsFlag) {
  frontend::Flags f;
  f.propdata = true;
  std::string path = support::corpus_path("flags/propdata.irr");
  EXPECT_EQ(frontend::run_file(path, f).exit_code, 0);
  frontend::Report r = frontend::run_file(path, {});
  ASSERT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.entries.back().kind, "IllFormedDeclaration");
}

TEST(Corpus, NegativeFilesFailWithExactKinds) {
  const std::map<std::string, std::pair<std::string, int>> expected = {
      {"sigma_star_first.irr", {"SigmaOnStarFirst", 1}},
      {"prop_not_type.irr", {"NotASubtype", 1}},
      {"tag_mismatch.irr", {"TagMismatch", 1}},
      {"propdata_type_arg.irr", {"IllFormedDeclaration", 1}},
      {"not_convertible.irr", {"NotConvertible", 1}},
      {"parse_error.irr", {"ParseError", 2}},
      {"eps_input.irr", {"ParseError", 2}},
  };
  frontend::Flags f;
  f.propdata = true;
  std::size_t seen = 0;
  for (const auto& e : std::filesystem::directory_iterator(support::corpus_path("negative"))) {
    auto it = expected.find(e.path().filename().string());
    ASSERT_NE(it, expected.end()) << e.path();
    frontend::Report r = frontend::run_file(e.path().string(), f);
    EXPECT_EQ(r.exit_code, it->second.second) << e.path();
    ASSERT_FALSE(r.entries.empty());
    EXPECT_EQ(r.entries.back().kind, it->second.first) << e.path();
    ++seen;
  }
  EXPECT_EQ(seen, expected.size());
}

TEST(Corpus, DirectiveResults) {
  auto result = [](const std::string& file, const std::string& label, std::size_t nth = 0) {
    frontend::Report r = frontend::run_file(support::corpus_path(file), {});
    for (const auto& e : r.entries)
      if (e.label == label && nth-- == 0) return e.result;
    return std::string("<missing>");
  };
  EXPECT_EQ(result("normalized_types.irr", "#normalize"), "true");
  EXPECT_EQ(result("normalized_types.irr", "#mu"), "bool");
  EXPECT_EQ(result("prelude.irr", "#extract"), "ε");
  EXPECT_EQ(result("model_facts.irr", "#model", 0), "0");
  EXPECT_EQ(result("model_facts.irr", "#model", 1), "I");
  EXPECT_EQ(result("model_facts.irr", "#model", 8), "0");
}
