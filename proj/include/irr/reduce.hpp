#ifndef IRR_REDUCE_HPP
#define IRR_REDUCE_HPP

// Reduction relations: structural tags, ε-extraction, tag-guarded β,
// ι-rules for the eliminators, the conditional eqrec rule, δ-unfolding,
// η, weak-head and full normalization under a fuel budget.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irr/term.hpp"

namespace irr {

/// Conversion-level switches.
struct Mode {
  bool singleton = false;  // ⟨a,p⟩_{Σ*} ▷ε a and π1*(c) ▷ε c
  bool eta = false;        // conversion modulo η
};

/// Raised when a reduction budget runs out. `partial` holds the best term
/// reached so far, when one is available.
class FuelExhausted : public std::runtime_error {
 public:
  explicit FuelExhausted(Term partial = nullptr)
      : std::runtime_error("fuel exhausted"), partial(std::move(partial)) {}
  Term partial;
};

/// Number of β/ι/δ contractions still allowed. Shared by nested conversion
/// checks (the eqrec guard), so mutual recursion stays bounded.
class Budget {
 public:
  explicit Budget(std::uint64_t fuel) : left_(fuel) {}
  void spend() {
    if (left_ == 0) throw FuelExhausted();
    --left_;
  }
  std::uint64_t remaining() const { return left_; }

 private:
  std::uint64_t left_;
};

/// Read-only view of what reduction needs: δ-bodies and inductive shapes.
struct Env {
  const Signature* sig = nullptr;
  Mode mode;
};

/// Which flavour of terms a weak-head reduction runs on. Typing works on
/// unerased terms and unfolds raw bodies; conversion works on ε-normal forms
/// and unfolds cooked bodies.
enum class Phase : std::uint8_t { typing, erased };

// Defined in convert.hpp; the eqrec and I_rec rules are conditional on it.
bool convertible(const Env& env, const Term& t, const Term& u, Budget& budget);

// ---------------------------------------------------------------------------
// Tags and extraction

/// Structural tag: star iff the ε-normal form of t is ε.
inline Tag tag_of(const Term& t, const Mode& mode = {}) {
  const Node* n = t.get();
  for (;;) {
    switch (n->kind) {
      case Kind::bvar:
      case Kind::fvar:
      case Kind::constant:
      case Kind::rec:
      case Kind::proj2:
        return n->tag;
      case Kind::eps:
        return Tag::star;
      case Kind::lam:
        n = n->b.get();
        continue;
      case Kind::app:
        n = n->a.get();
        continue;
      case Kind::proj1:
        if (mode.singleton && n->tag == Tag::star) {
          n = n->a.get();
          continue;
        }
        return Tag::diamond;
      case Kind::pair:
        if (mode.singleton && n->a->kind == Kind::sigma && n->a->tag == Tag::star) {
          n = n->b.get();
          continue;
        }
        return Tag::diamond;
      default:
        return Tag::diamond;
    }
  }
}

inline bool is_star_sigma(const Term& t) { return t->kind == Kind::sigma && t->tag == Tag::star; }

/// ε-normal form. One bottom-up pass suffices: every rule's right-hand side
/// is already normal once the children are.
inline Term eps_normalize(const Term& t, const Mode& mode = {}) {
  switch (t->kind) {
    case Kind::bvar:
    case Kind::fvar:
    case Kind::constant:
    case Kind::rec:
      return t->tag == Tag::star ? mk_eps() : t;
    case Kind::lam: {
      Term body = eps_normalize(t->b, mode);
      if (is_eps(body)) return body;
      Term dom = eps_normalize(t->a, mode);
      if (body == t->b && dom == t->a) return t;
      return mk_lam(t->name, t->tag, dom, body);
    }
    case Kind::app: {
      Term f = eps_normalize(t->a, mode);
      if (is_eps(f)) return f;
      Term x = eps_normalize(t->b, mode);
      if (f == t->a && x == t->b) return t;
      return mk_app(f, x);
    }
    case Kind::pi:
    case Kind::sigma: {
      Term a = eps_normalize(t->a, mode);
      Term b = eps_normalize(t->b, mode);
      if (a == t->a && b == t->b) return t;
      return t->kind == Kind::pi ? mk_pi(t->name, t->tag, a, b) : mk_sigma(t->tag, t->name, a, b, t->binder_tag);
    }
    case Kind::pair: {
      Term annot = eps_normalize(t->a, mode);
      Term first = eps_normalize(t->b, mode);
      if (mode.singleton && is_star_sigma(annot)) return first;
      Term second = eps_normalize(t->c, mode);
      if (annot == t->a && first == t->b && second == t->c) return t;
      return mk_pair(annot, first, second);
    }
    case Kind::proj1: {
      Term x = eps_normalize(t->a, mode);
      if (mode.singleton && t->tag == Tag::star) return x;
      return x == t->a ? t : mk_proj1(t->tag, x);
    }
    case Kind::proj2: {
      if (t->tag == Tag::star) return mk_eps();
      Term x = eps_normalize(t->a, mode);
      return x == t->a ? t : mk_proj2(t->tag, x);
    }
    default:
      return t;
  }
}

namespace detail {

/// ε-rule at the root of t, if any.
inline std::optional<Term> eps_root(const Term& t, const Mode& mode) {
  switch (t->kind) {
    case Kind::bvar:
    case Kind::fvar:
    case Kind::constant:
    case Kind::rec:
      if (t->tag == Tag::star) return mk_eps();
      return std::nullopt;
    case Kind::lam:
      if (is_eps(t->b)) return mk_eps();
      return std::nullopt;
    case Kind::app:
      if (is_eps(t->a)) return mk_eps();
      return std::nullopt;
    case Kind::proj2:
      if (t->tag == Tag::star) return mk_eps();
      return std::nullopt;
    case Kind::proj1:
      if (mode.singleton && t->tag == Tag::star) return t->a;
      return std::nullopt;
    case Kind::pair:
      if (mode.singleton && is_star_sigma(t->a)) return t->b;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

inline Term rebuild(const Term& t, Term a, Term b, Term c) {
  switch (t->kind) {
    case Kind::lam:
      return mk_lam(t->name, t->tag, std::move(a), std::move(b));
    case Kind::pi:
      return mk_pi(t->name, t->tag, std::move(a), std::move(b));
    case Kind::sigma:
      return mk_sigma(t->tag, t->name, std::move(a), std::move(b), t->binder_tag);
    case Kind::app:
      return mk_app(std::move(a), std::move(b));
    case Kind::pair:
      return mk_pair(std::move(a), std::move(b), std::move(c));
    case Kind::proj1:
      return mk_proj1(t->tag, std::move(a));
    case Kind::proj2:
      return mk_proj2(t->tag, std::move(a));
    default:
      return t;
  }
}

/// Number of arguments an eliminator head consumes before its ι-rule fires.
inline std::size_t elim_arity(const Env& env, const Term& head) {
  if (head->kind == Kind::eqrec) return 6;
  if (head->name == "nat" || head->name == "bool") return 4;
  const Declaration* d = env.sig ? env.sig->find(head->name) : nullptr;
  if (d && d->prop_data) return 3 + d->prop_data->n_indices;
  return 0;
}

/// ι / eqrec contraction of `head args` where args.size() == elim_arity and
/// the scrutinee is already in the shape the caller wants inspected.
inline std::optional<Term> iota(const Env& env, const Term& head, const std::vector<Term>& args,
                                Budget& budget) {
  std::optional<Term> out;
  if (head->kind == Kind::eqrec) {
    // (eqrec A P a b p e) ▷ p  if a =βε b
    if (convertible(env, args[2], args[3], budget)) out = args[4];
  } else if (head->name == "nat") {
    std::vector<Term> sargs;
    Term sh = app_spine(args[3], sargs);
    if (sh->kind == Kind::constant && sh->name == "O" && sargs.empty()) {
      out = args[1];
    } else if (sh->kind == Kind::constant && sh->name == "S" && sargs.size() == 1) {
      Term recursive = mk_apps(head, {args[0], args[1], args[2], sargs[0]});
      out = mk_apps(args[2], {sargs[0], recursive});
    }
  } else if (head->name == "bool") {
    const Term& s = args[3];
    if (s->kind == Kind::constant && s->name == "true") out = args[1];
    if (s->kind == Kind::constant && s->name == "false") out = args[2];
  } else if (env.sig) {
    const Declaration* d = env.sig->find(head->name);
    if (!d || !d->prop_data) return std::nullopt;
    const PropDataInfo& info = *d->prop_data;
    const Term& scrutinee = args.back();
    if (head->elim == ElimKind::ind) {
      // (I_ind X p ā (c b̄)) ▷ (p b̄)
      std::vector<Term> cargs;
      Term ch = app_spine(scrutinee, cargs);
      if (ch->kind == Kind::constant && ch->name == info.ctor && cargs.size() == info.n_args)
        out = mk_apps(args[1], cargs);
    } else {
      // (I_rec X p ā i) ▷ (p ε̄)  if ū =βε ā
      bool ok = true;
      for (std::size_t k = 0; k < info.n_indices && ok; ++k)
        ok = convertible(env, info.erased_indices[k], args[2 + k], budget);
      if (ok) out = mk_apps(args[1], std::vector<Term>(info.n_args, mk_eps()));
    }
  }
  if (out && tag_of(*out, env.mode) != tag_of(head, env.mode)) return std::nullopt;
  return out;
}

inline bool is_elim_head(const Term& h) { return h->kind == Kind::rec || h->kind == Kind::eqrec; }

}  // namespace detail

/// Contracts a β/ι/δ redex sitting exactly at the root of t.
inline std::optional<Term> contract_root(const Env& env, const Term& t, Budget& budget, Phase phase = Phase::typing) {
  switch (t->kind) {
    case Kind::app: {
      const Term& f = t->a;
      if (f->kind == Kind::lam) {
        if (tag_of(t->b, env.mode) != f->tag) return std::nullopt;
        return instantiate(f->b, t->b);
      }
      std::vector<Term> args;
      Term head = app_spine(t, args);
      if (!detail::is_elim_head(head)) return std::nullopt;
      if (args.size() != detail::elim_arity(env, head)) return std::nullopt;
      return detail::iota(env, head, args, budget);
    }
    case Kind::proj1:
      if (t->a->kind == Kind::pair && tag_of(t->a->b, env.mode) == Tag::diamond) return t->a->b;
      return std::nullopt;
    case Kind::proj2:
      if (t->a->kind == Kind::pair && tag_of(t->a->c, env.mode) == t->tag) return t->a->c;
      return std::nullopt;
    case Kind::constant: {
      if (!env.sig) return std::nullopt;
      const Declaration* d = env.sig->find(t->name);
      if (!d || d->kind != DeclKind::definition || d->tag != t->tag) return std::nullopt;
      return phase == Phase::erased && d->cooked ? d->cooked : d->body;
    }
    default:
      return std::nullopt;
  }
}

/// One leftmost-outermost β/ι/δ step, or nothing when t is normal.
inline std::optional<Term> beta_step(const Env& env, const Term& t, Budget& budget) {
  if (auto r = contract_root(env, t, budget)) return r;
  switch (t->kind) {
    case Kind::lam:
    case Kind::pi:
    case Kind::sigma:
    case Kind::app:
      if (auto r = beta_step(env, t->a, budget)) return detail::rebuild(t, *r, t->b, nullptr);
      if (auto r = beta_step(env, t->b, budget)) return detail::rebuild(t, t->a, *r, nullptr);
      return std::nullopt;
    case Kind::pair:
      if (auto r = beta_step(env, t->a, budget)) return mk_pair(*r, t->b, t->c);
      if (auto r = beta_step(env, t->b, budget)) return mk_pair(t->a, *r, t->c);
      if (auto r = beta_step(env, t->c, budget)) return mk_pair(t->a, t->b, *r);
      return std::nullopt;
    case Kind::proj1:
    case Kind::proj2:
      if (auto r = beta_step(env, t->a, budget)) return detail::rebuild(t, *r, nullptr, nullptr);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

/// Which one-step relations `reducts` enumerates.
struct StepKinds {
  bool beta = true;
  bool eps = true;
};

/// Every one-step reduct of t (contextual closure), in leftmost-outermost order.
inline std::vector<Term> reducts(const Env& env, const Term& t, Budget& budget, StepKinds kinds = {}) {
  std::vector<Term> out;
  if (kinds.eps)
    if (auto r = detail::eps_root(t, env.mode)) out.push_back(*r);
  if (kinds.beta)
    if (auto r = contract_root(env, t, budget)) out.push_back(*r);
  auto child = [&](const Term& c, auto&& wrap) {
    if (!c) return;
    for (auto& r : reducts(env, c, budget, kinds)) out.push_back(wrap(r));
  };
  switch (t->kind) {
    case Kind::lam:
    case Kind::pi:
    case Kind::sigma:
    case Kind::app:
      child(t->a, [&](const Term& r) { return detail::rebuild(t, r, t->b, nullptr); });
      child(t->b, [&](const Term& r) { return detail::rebuild(t, t->a, r, nullptr); });
      break;
    case Kind::pair:
      child(t->a, [&](const Term& r) { return mk_pair(r, t->b, t->c); });
      child(t->b, [&](const Term& r) { return mk_pair(t->a, r, t->c); });
      child(t->c, [&](const Term& r) { return mk_pair(t->a, t->b, r); });
      break;
    case Kind::proj1:
    case Kind::proj2:
      child(t->a, [&](const Term& r) { return detail::rebuild(t, r, nullptr, nullptr); });
      break;
    default:
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weak-head and full normalization

/// Weak-head normal form under β, ι, eqrec and δ. In the erased phase the
/// head ε-rules also apply.
inline Term whnf(const Env& env, Term t, Budget& budget, Phase phase = Phase::typing) {
  std::vector<Term> args;
  for (;;) {
    switch (t->kind) {
      case Kind::app: {
        Term head = app_spine(t, args);
        Term h = whnf(env, head, budget, phase);
        if (is_eps(h)) return h;
        if (h->kind == Kind::lam) {
          if (tag_of(args[0], env.mode) != h->tag) return mk_apps(h, args);
          budget.spend();
          Term r = instantiate(h->b, args[0]);
          t = mk_apps(r, std::vector<Term>(args.begin() + 1, args.end()));
          continue;
        }
        if (detail::is_elim_head(h)) {
          std::size_t n = detail::elim_arity(env, h);
          if (n > 0 && args.size() >= n) {
            std::vector<Term> prefix(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(n));
            if (h->kind == Kind::rec) prefix.back() = whnf(env, prefix.back(), budget, phase);
            if (auto r = detail::iota(env, h, prefix, budget)) {
              budget.spend();
              t = mk_apps(*r, std::vector<Term>(args.begin() + static_cast<std::ptrdiff_t>(n), args.end()));
              continue;
            }
            std::copy(prefix.begin(), prefix.end(), args.begin());
          }
        }
        return h == head ? t : mk_apps(h, args);
      }
      case Kind::constant: {
        auto r = contract_root(env, t, budget, phase);
        if (!r) return t;
        budget.spend();
        t = *r;
        continue;
      }
      case Kind::proj1:
      case Kind::proj2: {
        if (phase == Phase::erased && env.mode.singleton && t->kind == Kind::proj1 && t->tag == Tag::star) {
          t = t->a;
          continue;
        }
        Term x = whnf(env, t->a, budget, phase);
        if (x->kind == Kind::pair) {
          const Term& comp = t->kind == Kind::proj1 ? x->b : x->c;
          Tag want = t->kind == Kind::proj1 ? Tag::diamond : t->tag;
          if (tag_of(comp, env.mode) == want) {
            budget.spend();
            t = comp;
            continue;
          }
        }
        if (phase == Phase::erased && t->kind == Kind::proj2 && t->tag == Tag::star) return mk_eps();
        return x == t->a ? t : detail::rebuild(t, x, nullptr, nullptr);
      }
      case Kind::lam:
        if (phase == Phase::erased && is_eps(t->b)) return t->b;
        return t;
      case Kind::pair:
        if (phase == Phase::erased && env.mode.singleton && is_star_sigma(t->a)) {
          t = t->b;
          continue;
        }
        return t;
      default:
        return t;
    }
  }
}

namespace detail {

// Wraps a child normalization so that an exhausted budget reports the
// partially normalized parent.
template <class F>
Term guarded(F&& f, const std::function<Term(Term)>& wrap) {
  try {
    return f();
  } catch (FuelExhausted& e) {
    if (e.partial) e.partial = wrap(e.partial);
    throw;
  }
}

inline Term nf(const Env& env, const Term& input, Budget& budget) {
  Term t;
  try {
    t = whnf(env, input, budget, Phase::erased);
  } catch (FuelExhausted& e) {
    if (!e.partial) e.partial = input;
    throw;
  }
  const bool single = env.mode.singleton;
  for (;;) {
    if (single && t->kind == Kind::proj1 && t->tag == Tag::star) {
      t = whnf(env, t->a, budget, Phase::erased);
      continue;
    }
    if (single && t->kind == Kind::pair && is_star_sigma(t->a)) {
      t = whnf(env, t->b, budget, Phase::erased);
      continue;
    }
    break;
  }
  switch (t->kind) {
    case Kind::lam: {
      Term body = guarded([&] { return nf(env, t->b, budget); },
                          [&](Term p) { return mk_lam(t->name, t->tag, t->a, p); });
      if (is_eps(body)) return body;
      Term dom = guarded([&] { return nf(env, t->a, budget); },
                         [&](Term p) { return mk_lam(t->name, t->tag, p, body); });
      return mk_lam(t->name, t->tag, dom, body);
    }
    case Kind::pi:
    case Kind::sigma: {
      Term a = guarded([&] { return nf(env, t->a, budget); }, [&](Term p) { return rebuild(t, p, t->b, nullptr); });
      Term b = guarded([&] { return nf(env, t->b, budget); }, [&](Term p) { return rebuild(t, a, p, nullptr); });
      return rebuild(t, a, b, nullptr);
    }
    case Kind::pair: {
      Term annot = guarded([&] { return nf(env, t->a, budget); }, [&](Term p) { return mk_pair(p, t->b, t->c); });
      Term first =
          guarded([&] { return nf(env, t->b, budget); }, [&](Term p) { return mk_pair(annot, p, t->c); });
      if (single && is_star_sigma(annot)) return first;
      Term second =
          guarded([&] { return nf(env, t->c, budget); }, [&](Term p) { return mk_pair(annot, first, p); });
      return mk_pair(annot, first, second);
    }
    case Kind::proj1:
    case Kind::proj2: {
      if (t->kind == Kind::proj2 && t->tag == Tag::star) return mk_eps();
      Term x = guarded([&] { return nf(env, t->a, budget); }, [&](Term p) { return rebuild(t, p, nullptr, nullptr); });
      Term r = rebuild(t, x, nullptr, nullptr);
      if (x->kind == Kind::pair) {
        const Term& comp = t->kind == Kind::proj1 ? x->b : x->c;
        if (tag_of(comp, env.mode) == (t->kind == Kind::proj1 ? Tag::diamond : t->tag)) return nf(env, comp, budget);
      }
      return r;
    }
    case Kind::app: {
      std::vector<Term> args;
      Term head = app_spine(t, args);
      Term h = guarded([&] { return nf(env, head, budget); }, [&](Term p) { return mk_apps(p, args); });
      if (is_eps(h)) return h;
      for (std::size_t i = 0; i < args.size(); ++i) {
        args[i] = guarded([&] { return nf(env, args[i], budget); }, [&](Term p) {
          std::vector<Term> partial = args;
          partial[i] = p;
          return mk_apps(h, partial);
        });
      }
      Term r = mk_apps(h, args);
      // A head that normalized to a λ re-enables a β-redex.
      if (h->kind == Kind::lam && tag_of(args[0], env.mode) == h->tag) return nf(env, r, budget);
      return r;
    }
    default:
      return t;
  }
}

}  // namespace detail

/// Full βε(ιδ) normal form: ε-normalize, then normal-order reduction with the
/// erasure rules kept applied. Throws FuelExhausted with a partial result.
inline Term normalize(const Env& env, const Term& t, Budget& budget) {
  Term cooked = eps_normalize(t, env.mode);
  try {
    return detail::nf(env, cooked, budget);
  } catch (FuelExhausted& e) {
    if (!e.partial) e.partial = cooked;
    throw;
  }
}

inline Term normalize(const Env& env, const Term& t, std::uint64_t fuel) {
  Budget b(fuel);
  return normalize(env, t, b);
}

// ---------------------------------------------------------------------------
// η

namespace detail {

inline std::optional<Term> eta_root(const Term& t) {
  if (t->kind == Kind::lam) {
    const Term& body = t->b;
    if (body->kind == Kind::app && body->b->kind == Kind::bvar && body->b->index == 0 &&
        !has_loose_bvar(body->a, 0))
      return instantiate(body->a, mk_eps());  // lowers the remaining indices
    return std::nullopt;
  }
  if (t->kind == Kind::pair) {
    const Term& x = t->b;
    const Term& y = t->c;
    if (x->kind != Kind::proj1) return std::nullopt;
    if (y->kind == Kind::proj2 && alpha_eq(x->a, y->a)) return x->a;
    // ε-image of the same redex: π2*(c) has already been erased.
    if (is_eps(y) && is_star_sigma(t->a)) return x->a;
  }
  return std::nullopt;
}

}  // namespace detail

/// One leftmost-outermost η step (λx.(t x) ▷ t, ⟨π1 t, π2 t⟩ ▷ t).
inline std::optional<Term> eta_step(const Term& t) {
  if (auto r = detail::eta_root(t)) return r;
  for (int i = 0; i < 3; ++i) {
    const Term& c = i == 0 ? t->a : i == 1 ? t->b : t->c;
    if (!c) continue;
    if (auto r = eta_step(c)) {
      return detail::rebuild(t, i == 0 ? *r : t->a, i == 1 ? *r : t->b, i == 2 ? *r : t->c);
    }
  }
  return std::nullopt;
}

/// Bottom-up η normal form.
inline Term eta_normalize(const Term& t) {
  Term a = t->a ? eta_normalize(t->a) : nullptr;
  Term b = t->b ? eta_normalize(t->b) : nullptr;
  Term c = t->c ? eta_normalize(t->c) : nullptr;
  Term r = (a == t->a && b == t->b && c == t->c) ? t : detail::rebuild(t, a, b, c);
  if (auto e = detail::eta_root(r)) return eta_normalize(*e);
  return r;
}

}  // namespace irr

#include "irr/convert.hpp"

#endif  // IRR_REDUCE_HPP
