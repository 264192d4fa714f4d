#ifndef IRR_GEN_HPP
#define IRR_GEN_HPP

// Seed-deterministic term generators for property tests: raw well-scoped
// terms with consistent tags, and well-typed terms built rule by rule.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "irr/typecheck.hpp"

namespace irr::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint32_t below(std::uint32_t n) { return n == 0 ? 0 : static_cast<std::uint32_t>(eng_() % n); }
  bool chance(std::uint32_t percent) { return below(100) < percent; }
  Tag tag() { return chance(50) ? Tag::star : Tag::diamond; }

 private:
  std::mt19937_64 eng_;
};

// ---------------------------------------------------------------------------
// Raw terms

struct RawOptions {
  std::uint32_t max_size = 12;
  bool with_eps = true;        // allow the literal ε
  bool with_constants = true;  // allow O, S, true
};

namespace detail {

class RawGen {
 public:
  RawGen(std::uint64_t seed, RawOptions opts) : rng_(seed), opts_(opts) {}

  Term term(std::uint32_t size) { return go(size); }

 private:
  Term leaf() {
    std::vector<std::function<Term()>> options;
    if (!scope_.empty()) {
      auto var = [this] {
        std::uint32_t i = rng_.below(static_cast<std::uint32_t>(scope_.size()));
        return mk_bvar(i, scope_[scope_.size() - 1 - i], "x");
      };
      options.push_back(var);
      options.push_back(var);
      options.push_back(var);
    }
    options.push_back([] { return mk_prop(); });
    options.push_back([] { return mk_type(0); });
    if (opts_.with_eps) options.push_back([] { return mk_eps(); });
    if (opts_.with_constants) {
      options.push_back([] { return nat_zero(); });
      options.push_back([] { return bool_true(); });
    }
    return options[rng_.below(static_cast<std::uint32_t>(options.size()))]();
  }

  Term bind(Tag tag, std::uint32_t size) {
    scope_.push_back(tag);
    Term body = go(size);
    scope_.pop_back();
    return body;
  }

  // Splits n nodes between two children, each getting at least one.
  std::pair<std::uint32_t, std::uint32_t> split(std::uint32_t n) {
    std::uint32_t l = 1 + rng_.below(n - 1);
    return {l, n - l};
  }

  // Produces at most `size` nodes.
  Term go(std::uint32_t size) {
    if (size <= 1) return leaf();
    std::uint32_t rest = size - 1;  // below the root
    switch (rng_.below(9)) {
      case 0:
        if (rest < 2) break;
        {
          Tag t = rng_.tag();
          return mk_lam("x", t, mk_prop(), bind(t, rest - 1));
        }
      case 1:
        return mk_proj2(rng_.tag(), go(rest));
      case 2:
        return mk_proj1(rng_.tag(), go(rest));
      case 3:
        if (!opts_.with_constants || rest < 2) break;
        return nat_succ(go(rest - 1));
      case 4: {
        // β-redex shape (λx.b) a, guard satisfied or not
        if (rest < 4) break;
        auto [l, r] = split(rest - 2);
        Tag t = rng_.tag();
        Term f = mk_lam("x", t, mk_prop(), bind(t, l));
        return mk_app(f, go(r));
      }
      case 5:
        if (rest < 2) break;
        {
          auto [l, r] = split(rest);
          return mk_app(go(l), go(r));
        }
      case 6:
        if (rest < 2) break;
        {
          auto [l, r] = split(rest);
          Tag t = rng_.tag();
          Term dom = go(l);
          if (rng_.chance(50)) return mk_pi("x", t, dom, bind(t, r));
          return mk_sigma(rng_.tag(), "x", dom, bind(t, r), t);
        }
      case 7: {
        // pair over a fixed Σ annotation, or a projection of one
        bool project = rng_.chance(50);
        std::uint32_t inner = rest - (project ? 1 : 0);
        if (inner < 3 + 1 + 2) break;
        auto [l, r] = split(inner - 1 - 3);
        Tag sum = rng_.tag();
        Term annot = mk_sigma(sum, "x", mk_prop(), mk_prop());
        Term p = mk_pair(annot, go(l), go(r));
        if (!project) return p;
        return rng_.chance(50) ? mk_proj1(sum, p) : mk_proj2(sum, p);
      }
      default:
        if (rest < 2) break;
        {
          Tag t = rng_.tag();
          auto [l, r] = split(rest);
          return mk_lam("x", t, go(l), bind(t, r));
        }
    }
    return rng_.chance(50) ? mk_proj1(rng_.tag(), go(rest)) : mk_proj2(rng_.tag(), go(rest));
  }

  Rng rng_;
  RawOptions opts_;
  std::vector<Tag> scope_;
};

}  // namespace detail

/// A closed raw term of at most `size` nodes; bound occurrences carry their
/// binder's tag.
inline Term gen_raw_term(std::uint64_t seed, std::uint32_t size, RawOptions opts = {}) {
  if (size > opts.max_size) size = opts.max_size;
  detail::RawGen g(seed, opts);
  return g.term(size);
}

/// True when t contains an application (λx_s.b) a with tag(a) ≠ s.
inline bool has_blocked_beta(const Term& t) {
  if (t->kind == Kind::app && t->a->kind == Kind::lam && tag_of(t->b) != t->a->tag) return true;
  return (t->a && has_blocked_beta(t->a)) || (t->b && has_blocked_beta(t->b)) || (t->c && has_blocked_beta(t->c));
}

// ---------------------------------------------------------------------------
// Shrinking

namespace detail {

/// Smaller terms over the same bound variables as t.
inline void shrink_variants(const Term& t, std::vector<Term>& out) {
  const Term kids[] = {t->a, t->b, t->c};
  const bool binder = t->kind == Kind::lam || t->kind == Kind::pi || t->kind == Kind::sigma;
  for (int i = 0; i < 3; ++i) {
    const Term& k = kids[i];
    if (!k) continue;
    if (!(binder && i == 1)) out.push_back(k);
    if (k->size > 1)
      for (const Term& leaf : {mk_prop(), mk_eps()})
        out.push_back(irr::detail::rebuild(t, i == 0 ? leaf : t->a, i == 1 ? leaf : t->b, i == 2 ? leaf : t->c));
  }
  if (binder)
    for (const Term& leaf : {mk_prop(), mk_eps()}) out.push_back(instantiate(t->b, leaf));
  for (int i = 0; i < 3; ++i) {
    const Term& k = kids[i];
    if (!k || k->size <= 1) continue;
    std::vector<Term> inner;
    shrink_variants(k, inner);
    for (const Term& v : inner)
      out.push_back(irr::detail::rebuild(t, i == 0 ? v : t->a, i == 1 ? v : t->b, i == 2 ? v : t->c));
  }
}

}  // namespace detail

/// Smaller closed candidates, smallest first: subterms, binders instantiated
/// with a leaf, and subterms replaced by Prop or ε, at any depth.
inline std::vector<Term> shrink_candidates(const Term& t) {
  std::vector<Term> out;
  detail::shrink_variants(t, out);
  std::erase_if(out, [&](const Term& c) { return c->loose != t->loose || c->size >= t->size; });
  std::stable_sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return x->size < y->size; });
  return out;
}

/// Descends while `fails` keeps holding; returns a locally minimal failing term.
inline Term shrink(Term t, const std::function<bool(const Term&)>& fails) {
  for (bool progress = true; progress;) {
    progress = false;
    for (const Term& c : shrink_candidates(t)) {
      if (c->size < t->size && fails(c)) {
        t = c;
        progress = true;
        break;
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Well-typed terms

struct TypedSample {
  Context ctx;
  Term term;
  Term type;
};

namespace detail {

class TypedGen {
 public:
  TypedGen(std::uint64_t seed, const Signature& sig) : rng_(seed), k_(sig, KernelOptions{}) {}

  TypedSample run(std::uint32_t ctx_depth) {
    A_ = add("A", mk_type(0));
    P_ = add("P", mk_prop());
    Q_ = add("Q", mk_prop());
    R_ = add("R", build::arrow(Tag::diamond, nat_type(), mk_prop()));
    add("a", A_);
    add("p", P_);
    add("q", Q_);
    Term n = build::var("n", Tag::diamond);
    add("r", build::pi(n, nat_type(), mk_app(R_, n)));
    add("f", build::arrow(Tag::diamond, nat_type(), A_));
    for (std::uint32_t i = 0; i < ctx_depth; ++i) add("v" + std::to_string(i), type(1));
    Term T = type(2);
    Term t = term(T, 3);
    return {ctx_, t, T};
  }

 private:
  Term add(const std::string& name, const Term& T) {
    Term v = ctx_.push(name, tag_for(T), T);
    pool_.push_back({v, T});
    return v;
  }

  Tag tag_for(const Term& T) { return Kernel::tag_for_sort(k_.sort_of(ctx_, T)); }

  Term subset_nat() {
    Term x = build::var("x", Tag::diamond);
    return mk_sigma(Tag::star, "x", nat_type(), abstract(mk_app(R_, x), x->id), Tag::diamond);
  }

  Term data_type(std::uint32_t d) {
    switch (d == 0 ? rng_.below(3) : rng_.below(7)) {
      case 0: return nat_type();
      case 1: return bool_type();
      case 2: return A_;
      case 3: return build::arrow(Tag::diamond, data_type(d - 1), data_type(d - 1));
      case 4: return mk_sigma(Tag::diamond, "_", data_type(d - 1), lift(data_type(d - 1), 1));
      case 5: return subset_nat();
      default: return mk_sigma(Tag::star, "_", A_, lift(P_, 1), Tag::diamond);
    }
  }

  Term prop_type(std::uint32_t d) {
    switch (d == 0 ? rng_.below(3) : rng_.below(6)) {
      case 0: return P_;
      case 1: return Q_;
      case 2: return mk_app(R_, numeral(rng_.below(3)));
      case 3: {
        Term dom = rng_.chance(50) ? prop_type(d - 1) : data_type(d - 1);
        return build::arrow(tag_for(dom), dom, prop_type(d - 1));
      }
      case 4: {
        Term n = build::var("n", Tag::diamond);
        return build::pi(n, nat_type(), mk_app(R_, n));
      }
      default: return P_;
    }
  }

  Term type(std::uint32_t d) { return rng_.chance(35) ? prop_type(d) : data_type(d); }

  Term from_pool(const Term& T) {
    std::vector<Term> hits;
    for (const auto& [v, U] : pool_)
      if (alpha_eq(U, T)) hits.push_back(v);
    if (hits.empty()) return nullptr;
    return hits[rng_.below(static_cast<std::uint32_t>(hits.size()))];
  }

  Term lam(const Term& T, std::uint32_t d) {
    Term v = ctx_.push("x" + std::to_string(counter_++), T->tag, T->a);
    pool_.push_back({v, T->a});
    Term body = term(instantiate(T->b, v), d);
    pool_.pop_back();
    ctx_.pop();
    return build::lam(v, T->a, body);
  }

  // Introduction forms only; always succeeds.
  Term intro(const Term& T, std::uint32_t d) {
    if (T->kind == Kind::pi) return lam(T, d);
    if (T->kind == Kind::sigma) {
      Term first = term(T->a, d);
      return mk_pair(T, first, term(instantiate(T->b, first), d));
    }
    if (T->kind == Kind::app && alpha_eq(T->a, R_)) return mk_app(pool_[7].first, T->b);
    if (alpha_eq(T, nat_type())) return d > 0 && rng_.chance(40) ? nat_succ(term(T, d - 1)) : nat_zero();
    if (alpha_eq(T, bool_type())) return rng_.chance(50) ? bool_true() : bool_false();
    if (Term v = from_pool(T)) return v;
    throw std::logic_error("generator: uninhabited type");
  }

  bool is_data(const Term& T) { return tag_for(T) == Tag::diamond; }

  Term term(const Term& T, std::uint32_t d) {
    if (d == 0) {
      if (Term v = from_pool(T); v && rng_.chance(60)) return v;
      return intro(T, 0);
    }
    switch (rng_.below(8)) {
      case 0:
        if (Term v = from_pool(T)) return v;
        break;
      case 1: {
        // β-redex
        Term U = type(1);
        Term v = ctx_.push("y" + std::to_string(counter_++), tag_for(U), U);
        pool_.push_back({v, U});
        Term body = term(T, d - 1);
        pool_.pop_back();
        ctx_.pop();
        return mk_app(build::lam(v, U, body), term(U, d - 1));
      }
      case 2: {
        // projection of a pair
        if (!is_data(T)) break;
        Term U = type(1);
        Term sum = mk_sigma(tag_for(U), "_", T, lift(U, 1));
        Term p = mk_pair(sum, term(T, d - 1), term(U, d - 1));
        return mk_proj1(sum->tag, p);
      }
      case 3: {
        Term U = data_type(1);
        Term sum = mk_sigma(tag_for(T), "_", U, lift(T, 1));
        Term p = mk_pair(sum, term(U, d - 1), term(T, d - 1));
        return mk_proj2(sum->tag, p);
      }
      case 4: {
        // recursion over nat or bool into a data type
        if (!is_data(T)) break;
        bool over_nat = rng_.chance(50);
        Term I = over_nat ? nat_type() : bool_type();
        Term k = build::var("k", Tag::diamond);
        Term motive = build::lam(k, I, T);
        Term rec = mk_rec(over_nat ? "nat" : "bool", ElimKind::rec, 0);
        if (!over_nat) return mk_apps(rec, {motive, term(T, d - 1), term(T, d - 1), term(I, d - 1)});
        Term m = ctx_.push("m", Tag::diamond, nat_type());
        Term ih = ctx_.push("ih", Tag::diamond, T);
        pool_.push_back({ih, T});
        Term body = term(T, d - 1);
        pool_.pop_back();
        ctx_.pop();
        ctx_.pop();
        Term s = build::lam(m, nat_type(), build::lam(ih, T, body));
        return mk_apps(rec, {motive, term(T, d - 1), s, term(I, d - 1)});
      }
      case 5:
        // f : nat -> A
        if (alpha_eq(T, A_)) return mk_app(pool_[8].first, term(nat_type(), d - 1));
        break;
      default:
        break;
    }
    return intro(T, d);
  }

  Rng rng_;
  Kernel k_;
  Context ctx_;
  std::vector<std::pair<Term, Term>> pool_;
  Term A_, P_, Q_, R_;
  std::uint32_t counter_ = 0;
};

}  // namespace detail

/// A context, a term and a type the term checks against. Built by the typing
/// rules, so check(ctx, term, type) holds by construction.
inline TypedSample gen_typed_term(std::uint64_t seed, std::uint32_t ctx_depth,
                                  const Signature& sig = Signature::with_builtins()) {
  detail::TypedGen g(seed, sig);
  return g.run(ctx_depth);
}

}  // namespace irr::gen

#endif  // IRR_GEN_HPP
