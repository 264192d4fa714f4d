#include <gtest/gtest.h>

#include "support/common.hpp"
#include "support/oracles.hpp"

using namespace irr;

namespace {

const HFSet E = HFSet::empty();
const HFSet U = HFSet::unit();

// Kuratowski pair written out by hand.
HFSet kpair(const HFSet& a, const HFSet& b) { return HFSet::of({HFSet::of({a}), HFSet::of({a, b})}); }

struct Fixture {
  frontend::Session s = support::load("model_facts.irr");
  Kernel k{s.signature(), {}};
  Model m{k, ModelOptions{3}};

  HFSet closed(const std::string& src) {
    Context ctx;
    Term t = s.elaborate_source(src);
    k.infer(ctx, t);
    return m.interp_set(ctx, t, {});
  }
};

}  // namespace

TEST(HFSet, EqualityIsExtensional) {
  EXPECT_EQ(HFSet::of({E, U}), HFSet::of({U, E}));
  EXPECT_EQ(HFSet::of({E, E}), U);
  EXPECT_NE(E, U);
  EXPECT_TRUE(U.contains(E));
  EXPECT_FALSE(E.contains(E));
}

TEST(HFSet, NumeralsAreVonNeumann) {
  EXPECT_EQ(HFSet::numeral(0), E);
  EXPECT_EQ(HFSet::numeral(1), U);
  EXPECT_EQ(HFSet::numeral(2), HFSet::of({E, U}));
  EXPECT_EQ(HFSet::numeral(3), HFSet::of({E, U, HFSet::of({E, U})}));
}

TEST(HFSet, PairsUnpair) {
  HFSet p = HFSet::pair(HFSet::numeral(2), U);
  EXPECT_EQ(p, kpair(HFSet::numeral(2), U));
  auto kv = p.unpair();
  ASSERT_TRUE(kv);
  EXPECT_EQ(kv->first, HFSet::numeral(2));
  EXPECT_EQ(kv->second, U);
  EXPECT_EQ(HFSet::pair(U, U).unpair()->second, U);
  EXPECT_FALSE(HFSet::numeral(3).unpair());
}

TEST(Interp, EqualityOfEqualBooleansIsTrue) {
  Fixture f;
  EXPECT_EQ(f.closed("eq bool true true"), U);
}

TEST(Interp, EqualityOfDistinctBooleansIsFalse) {
  Fixture f;
  EXPECT_EQ(f.closed("eq bool true false"), E);
}

TEST(Interp, ProofsDenoteTheEmptySet) {
  Fixture f;
  EXPECT_EQ(f.closed("I"), E);
  EXPECT_EQ(f.closed("refl bool true"), E);
  EXPECT_EQ(f.closed("conj True True I I"), E);
}

TEST(Interp, DataComputes) {
  Fixture f;
  EXPECT_EQ(f.closed("true"), U);
  EXPECT_EQ(f.closed("not_b true"), E);
  EXPECT_EQ(f.closed("pred 2"), HFSet::numeral(1));
  EXPECT_EQ(f.closed("pair[nat * bool](1, false)"), kpair(U, E));
  EXPECT_EQ(f.closed("nat"), HFSet::of({E, U, HFSet::numeral(2)}));
}

TEST(Interp, IdentityOnBoolIsItsGraph) {
  Fixture f;
  EXPECT_EQ(f.closed("fun (x : bool) => x"), HFSet::of({kpair(E, E), kpair(U, U)}));
  EXPECT_EQ(f.closed("not_b"), HFSet::of({kpair(E, U), kpair(U, E)}));
}

TEST(CheckModel, Examples) {
  Fixture f;
  Context ctx;
  auto ok = [&](const char* t, const char* T) {
    EXPECT_NO_THROW(f.m.check_model(ctx, f.s.elaborate_source(t), f.s.elaborate_source(T), {})) << t;
  };
  ok("true", "bool");
  ok("fun (x : bool) => x", "bool -> bool");
  ok("refl bool true", "eq bool true true");
  ok("pred", "nat -> nat");
  ok("eq bool", "bool -> bool -> Prop");
}

TEST(CheckModel, IllTypedPairIsAViolation) {
  Fixture f;
  Context ctx;
  try {
    f.m.check_model(ctx, f.s.elaborate_source("true"), f.s.elaborate_source("eq bool true false"), {});
    FAIL() << "expected a violation";
  } catch (const ModelError& e) {
    EXPECT_EQ(e.kind, ModelError::Kind::ModelViolation);
  }
}

TEST(Interp, LargeNumeralsAreNotFinitelyModelable) {
  Fixture f;
  try {
    f.closed("S (S (S O))");
    FAIL() << "expected NotFinitelyModelable";
  } catch (const ModelError& e) {
    EXPECT_EQ(e.kind, ModelError::Kind::NotFinitelyModelable);
  }
  Model wide(f.k, ModelOptions{5});
  Context ctx;
  EXPECT_EQ(wide.interp_set(ctx, f.s.elaborate_source("S (S (S O))"), {}), HFSet::numeral(3));
}

TEST(Interp, UniverseIsNotACarrier) {
  Fixture f;
  Context ctx;
  try {
    f.m.interp_set(ctx, mk_type(0), {});
    FAIL() << "expected NotFinitelyModelable";
  } catch (const ModelError& e) {
    EXPECT_EQ(e.kind, ModelError::Kind::NotFinitelyModelable);
  }
}

TEST(Interp, UnassignedVariableIsUndefined) {
  Fixture f;
  Context ctx;
  Term x = ctx.push("x", Tag::diamond, bool_type());
  try {
    f.m.interp(ctx, x, {});
    FAIL() << "expected Undefined";
  } catch (const ModelError& e) {
    EXPECT_EQ(e.kind, ModelError::Kind::Undefined);
  }
}

TEST(Interp, EmptyImpredicativeIntersectionIsTrue) {
  Fixture f;
  EXPECT_EQ(f.closed("Pi (n : nat), eq nat n n"), U);
  EXPECT_EQ(f.closed("False"), E);
}

TEST(Axioms, FiniteInstancesAreInhabited) {
  Fixture f;
  // function spaces over bool have rank 5
  Model m5(f.k, ModelOptions{5});
  for (const char* src : {
           "Pi (P : Prop), or P (not P)",
           "Pi (R : bool -> bool -> Prop), (Pi (x : bool), ex bool (R x)) -> "
           "ex (bool -> bool) (fun (g : bool -> bool) => Pi (x : bool), R x (g x))",
           "Pi (g h : bool -> bool), (Pi (x : bool), eq bool (g x) (h x)) -> eq (bool -> bool) g h",
       }) {
    Context ctx;
    Term t = f.s.elaborate_source(src);
    EXPECT_TRUE(f.k.sort_of(ctx, t)->is_prop) << src;
    EXPECT_EQ(m5.interp_set(ctx, t, {}), U) << src;
  }
}

TEST(Interp, SubstitutionCommutesWithInterpretation) {
  Fixture f;
  struct Case {
    const char* fn;
    std::vector<const char*> args;
  };
  std::vector<Case> cases = {
      {"fun (x : bool) => not_b (not_b x)", {"true", "false"}},
      {"fun (x : bool) => eq bool x true", {"true", "false"}},
      {"fun (x : bool) => pair[bool * bool](x, not_b x)", {"true", "not_b true"}},
      {"fun (x : nat) => pred (S x)", {"O", "S O"}},
  };
  for (const Case& c : cases) {
    Term lam = f.s.elaborate_source(c.fn);
    for (const char* arg : c.args) {
      Term u = f.s.elaborate_source(arg);
      Context ctx;
      HFSet direct = f.m.interp_set(ctx, instantiate(lam->b, u), {});
      Term x = ctx.push(lam->name, lam->tag, lam->a);
      Valuation I;
      I[x->id] = Value::of(f.closed(arg));
      EXPECT_EQ(f.m.interp_set(ctx, instantiate(lam->b, x), I), direct) << c.fn << " " << arg;
    }
  }
}

TEST(ModelProperty, CorpusIsSoundAndReductionInvariant) {
  int modeled = 0, reducts = 0;
  for (const auto& file : support::corpus_files()) {
    frontend::Session s{frontend::Flags{}};
    ASSERT_EQ(frontend::run_file(file, {}, &s).exit_code, 0) << file;
    Kernel k(s.signature(), {});
    Model m(k, ModelOptions{3});
    Env env{&s.signature(), {}};
    for (const Declaration& d : s.signature()) {
      if (d.kind != DeclKind::definition) continue;
      Context ctx;
      try {
        m.check_model(ctx, d.body, d.type, {});
      } catch (const ModelError& e) {
        EXPECT_NE(e.kind, ModelError::Kind::ModelViolation) << file << " " << d.name;
        continue;
      }
      ++modeled;
      Value v = m.interp(ctx, d.body, {});
      for (const Term& r : oracle::one_step(env, d.body)) {
        EXPECT_TRUE(m.equal(v, m.interp(ctx, r, {}))) << d.name << " -> " << s.show(r);
        ++reducts;
      }
    }
  }
  EXPECT_GT(modeled, 30);
  EXPECT_GT(reducts, 30);
}
