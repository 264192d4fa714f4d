// Runs every acceptance criterion at full scale and prints one PASS/FAIL line each.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "support/common.hpp"
#include "support/suites.hpp"
#include "support/types.hpp"

using namespace irr;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

class Clock {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string secs(double s) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << s << "s";
  return out.str();
}

Verdict fail(const std::string& why) { return {false, why}; }

Verdict from(const suites::Outcome& o) {
  std::string d = std::to_string(o.samples) + " samples, " + std::to_string(o.checked) + " checks, " +
                  std::to_string(o.failures) + " failures in " + secs(o.seconds);
  if (!o.pass()) std::cerr << o.summary() << "\n";
  return {o.pass(), d};
}

Verdict both(const Verdict& a, const Verdict& b) { return {a.pass && b.pass, a.detail + "; " + b.detail}; }

Term constant(const char* name) { return mk_const(name, Tag::diamond); }

Verdict diaconescu() {
  Clock clock;
  frontend::Session s;
  frontend::Report r = frontend::run_file(support::corpus_path("diaconescu.irr"), {}, &s);
  double t = clock.seconds();
  if (r.exit_code != 0) return fail(r.text());
  const Declaration* d = s.signature().find("diaconescu");
  if (!d) return fail("no final theorem");
  using namespace build;
  Term A = var("A", Tag::diamond), a = var("a", Tag::diamond), b = var("b", Tag::diamond);
  Term e = mk_apps(constant("eq"), {A, a, b});
  Term want = pi(A, mk_type(0), pi(a, A, pi(b, A, mk_apps(constant("or"), {e, mk_app(constant("not"), e)}))));
  if (!alpha_eq(d->type, want)) return fail("final statement is " + s.show(d->type));
  Signature builtins = Signature::with_builtins();
  for (const Declaration& x : s.signature())
    if (x.kind == DeclKind::axiom && !builtins.contains(x.name) && x.name != "AC") return fail("extra axiom " + x.name);
  if (t >= 5.0) return fail("took " + secs(t));
  return {true, std::to_string(r.declarations) + " declarations in " + secs(t)};
}

Verdict proof_irrelevance() {
  const std::string prelude =
      "def eq : Pi (A : Type 0), A -> A -> Prop := fun (A : Type 0) (x y : A) => Pi (P : A -> Prop), P x -> P y\n"
      "def refl : Pi (A : Type 0) (x : A), eq A x x := fun (A : Type 0) (x : A) (P : A -> Prop) (h : P x) => h\n"
      "axiom A : Type 0\naxiom a : A\naxiom b : A\naxiom R : A -> Prop\naxiom p1 : R a\naxiom p2 : R a\naxiom q : R b\n"
      "axiom Pe : eq A a a -> Prop\naxiom e : eq A a a\n";
  frontend::Report ok = frontend::run_source(
      prelude + "#convert pair[{x : A | R x}](a, p1) pair[{x : A | R x}](a, p2)\n#convert (Pe e) (Pe (refl A a))\n",
      "pi", {});
  if (ok.exit_code != 0) return fail(ok.text());
  frontend::Report no = frontend::run_source(prelude + "#convert pair[{x : A | R x}](a, p1) pair[{x : A | R x}](b, q)\n", "pi", {});
  if (no.exit_code != 1 || no.entries.back().kind != "NotConvertible") return fail("distinct witnesses were identified");
  return {true, "2 conversions hold, distinct witnesses stay apart"};
}

Verdict church_rosser() {
  auto o = suites::church_rosser(10000, 12, 500);
  Verdict v = from(o);
  if (o.seconds >= 60) v.pass = false;
  return v;
}

Verdict subset_bridge() {
  frontend::Session s = support::session(support::subset_prelude());
  Kernel k(s.signature(), {});
  Kernel ke(s.signature(), eta_options({}));
  Subset sub(k);
  auto types = support::bridge_types();
  int good = 0;
  for (const auto& src : types) {
    try {
      Term A = s.elaborate_source(src);
      Context ctx;
      k.check(ctx, sub.mu_bar(A), sub.mu_bar_type(A));
      Term up = simplify(s.signature(), sub.mu_bar(A), 100000);
      if (!(up->kind == Kind::lam && up->b->kind == Kind::bvar && up->b->index == 0)) {
        std::cerr << "mu_bar(" << src << ") simplifies to " << s.show(up) << "\n";
        continue;
      }
      ke.check(ctx, sub.pi_bar(A), sub.pi_bar_type(A));
      Term down = simplify(s.signature(), sub.pi_bar(A), 100000);
      if (!(down->kind == Kind::lam && down->b->kind == Kind::lam && down->b->b->kind == Kind::bvar &&
            down->b->b->index == 1)) {
        std::cerr << "pi_bar(" << src << ") simplifies to " << s.show(down) << "\n";
        continue;
      }
      ++good;
    } catch (const std::exception& e) {
      std::cerr << src << ": " << e.what() << "\n";
    }
  }
  return {good == 12 && types.size() == 12, std::to_string(good) + "/" + std::to_string(types.size()) + " types"};
}

Verdict model_soundness() {
  Clock clock;
  std::size_t modeled = 0, reducts = 0;
  for (const auto& file : support::corpus_files()) {
    frontend::Session s;
    if (frontend::run_file(file, {}, &s).exit_code != 0) return fail(file + " does not check");
    Kernel k(s.signature(), {});
    Model m(k, ModelOptions{3});
    Env env{&s.signature(), {}};
    for (const Declaration& d : s.signature()) {
      if (d.kind != DeclKind::definition) continue;
      Context ctx;
      try {
        m.check_model(ctx, d.body, d.type, {});
      } catch (const ModelError& e) {
        if (e.kind == ModelError::Kind::ModelViolation) return fail(d.name + " violates the model");
        continue;
      }
      ++modeled;
      Value v = m.interp(ctx, d.body, {});
      for (const Term& r : oracle::one_step(env, d.body)) {
        ++reducts;
        if (!m.equal(v, m.interp(ctx, r, {}))) return fail(d.name + " changes meaning under " + s.show(r));
      }
    }
  }
  frontend::Session s = support::load("prelude.irr");
  Kernel k(s.signature(), {});
  Model m(k, ModelOptions{3});
  Context ctx;
  if (m.interp_set(ctx, s.elaborate_source("eq bool true true"), {}) != HFSet::unit()) return fail("|true=true| is not {0}");
  if (m.interp_set(ctx, s.elaborate_source("eq bool true false"), {}) != HFSet::empty()) return fail("|true=false| is not 0");
  double t = clock.seconds();
  if (t >= 30) return fail("took " + secs(t));
  return {true, std::to_string(modeled) + " terms, " + std::to_string(reducts) + " reducts, |true=true|={0}, |true=false|=0 in " +
                    secs(t)};
}

Verdict negative_suite() {
  const std::map<std::string, std::string> expected = {
      {"sigma_star_first.irr", "SigmaOnStarFirst"},
      {"prop_not_type.irr", "NotASubtype"},
      {"tag_mismatch.irr", "TagMismatch"},
  };
  for (const auto& [file, kind] : expected) {
    frontend::Report r = frontend::run_file(support::corpus_path("negative/" + file), {});
    if (r.exit_code != 1 || r.entries.empty() || r.entries.back().kind != kind)
      return fail(file + ": " + (r.entries.empty() ? std::string("no entries") : r.entries.back().kind));
  }
  return {true, "SigmaOnStarFirst, NotASubtype, TagMismatch"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"1 diaconescu", diaconescu},
      {"2 proof-irrelevant conversion", proof_irrelevance},
      {"3 church-rosser", church_rosser},
      {"4 pre-cooking", [] { return from(suites::pre_cooking(2000)); }},
      {"5 tag preservation and beta postponement",
       [] { return both(from(suites::tag_preservation(10000)), from(suites::beta_postponement(10000))); }},
      {"6 subject reduction", [] { return from(suites::subject_reduction(1000)); }},
      {"7 subset bridge", subset_bridge},
      {"8 model soundness", model_soundness},
      {"9 negative suite", negative_suite},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = fail(std::string("exception: ") + e.what());
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
