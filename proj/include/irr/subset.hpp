#ifndef IRR_SUBSET_HPP
#define IRR_SUBSET_HPP

// Predicate subtyping over the non-dependent fragment: maximal super-type μ,
// the up-cast μ̄, the type-checking-condition predicate π and the down-cast π̄.

#include <stdexcept>
#include <string>

#include "irr/typecheck.hpp"

namespace irr {

class NoSupertype : public std::runtime_error {
 public:
  explicit NoSupertype(const std::string& why) : std::runtime_error("NoSupertype: " + why), detail(why) {}
  std::string detail;
};

/// ΠQ:Prop.Q→Q
inline Term true_prop() {
  Term q = build::var("Q", Tag::diamond);
  return build::pi(q, mk_prop(), build::arrow(Tag::star, q, q));
}

class Subset {
 public:
  explicit Subset(const Kernel& kernel) : k_(kernel) {}

  enum class Shape { data, subset, arrow, product };

  /// Classifies A (weak-head normalized) into one of the four μ equations.
  Shape shape(const Term& A, Term& w) const {
    w = k_.whnf(A);
    if (w->kind == Kind::constant) {
      const Declaration* d = k_.signature().find(w->name);
      if (d && d->kind == DeclKind::data_type) return Shape::data;
    }
    if (w->kind == Kind::sigma && w->tag == Tag::star) return Shape::subset;
    if (w->kind == Kind::pi && !has_loose_bvar(w->b, 0)) return Shape::arrow;
    if (w->kind == Kind::sigma && w->tag == Tag::diamond && !has_loose_bvar(w->b, 0)) return Shape::product;
    throw NoSupertype("no maximal super-type for this type");
  }

  static Term codomain(const Term& w) { return instantiate(w->b, mk_eps()); }

  Term mu(const Term& A) const {
    Term w;
    switch (shape(A, w)) {
      case Shape::data:
        return w;
      case Shape::subset:
        return mu(w->a);
      case Shape::arrow:
        return build::arrow(w->tag, w->a, mu(codomain(w)));
      case Shape::product:
        return mk_sigma(Tag::diamond, "_", mu(w->a), lift(mu(codomain(w)), 1));
    }
    return w;
  }

  /// μ̄(A) : A → μ(A)
  Term mu_bar(const Term& A) const {
    Term w;
    Shape s = shape(A, w);
    Term x = build::var("x", Tag::diamond);
    switch (s) {
      case Shape::data:
        return build::lam(x, A, x);
      case Shape::subset:
        return build::lam(x, A, mk_app(mu_bar(w->a), mk_proj1(Tag::star, x)));
      case Shape::arrow: {
        Term h = build::var("h", Tag::diamond);
        Term y = build::var("y", w->tag);
        return build::lam(h, A, build::lam(y, w->a, mk_app(mu_bar(codomain(w)), mk_app(h, y))));
      }
      case Shape::product: {
        Term B = w->a, C = codomain(w);
        Term annot = mu(A);
        Term first = mk_app(mu_bar(B), mk_proj1(Tag::diamond, x));
        Term second = mk_app(mu_bar(C), mk_proj2(Tag::diamond, x));
        return build::lam(x, A, mk_pair(annot, first, second));
      }
    }
    return nullptr;
  }

  /// π(A) : μ(A) → Prop
  Term pi_pred(const Term& A) const {
    Term w;
    Shape s = shape(A, w);
    Term mA = mu(A);
    Term y = build::var("y", Tag::diamond);
    Term q = build::var("Q", Tag::diamond);
    switch (s) {
      case Shape::data:
        return build::lam(y, mA, true_prop());
      case Shape::subset: {
        // ∃h:π(B) y. P[x := π̄(B) y h], impredicatively encoded
        const Term& B = w->a;
        Term pB = mk_app(pi_pred(B), y);
        Term h = build::var("h", Tag::star);
        Term P = instantiate(w->b, mk_apps(pi_bar(B), {y, h}));
        Term premise = build::pi(h, pB, build::arrow(Tag::star, P, q));
        return build::lam(y, mA, build::pi(q, mk_prop(), build::arrow(Tag::star, premise, q)));
      }
      case Shape::arrow: {
        Term f = build::var("f", Tag::diamond);
        Term x = build::var("x", w->tag);
        Term body = build::pi(x, w->a, mk_app(pi_pred(codomain(w)), mk_app(f, x)));
        return build::lam(f, mA, body);
      }
      case Shape::product: {
        Term pB = mk_app(pi_pred(w->a), mk_proj1(Tag::diamond, y));
        Term pC = mk_app(pi_pred(codomain(w)), mk_proj2(Tag::diamond, y));
        Term conj = build::arrow(Tag::star, build::arrow(Tag::star, pB, build::arrow(Tag::star, pC, q)), q);
        return build::lam(y, mA, build::pi(q, mk_prop(), conj));
      }
    }
    return nullptr;
  }

  /// π̄(A) : Πx:μ(A). π(A) x → A
  Term pi_bar(const Term& A) const {
    Term w;
    Shape s = shape(A, w);
    Term mA = mu(A);
    Term y = build::var("y", Tag::diamond);
    Term p = build::var("p", Tag::star);
    Term pAy = mk_app(pi_pred(A), y);
    switch (s) {
      case Shape::data:
        return build::lam(y, mA, build::lam(p, pAy, y));
      case Shape::subset: {
        const Term& B = w->a;
        Term pB = mk_app(pi_pred(B), y);
        Term h = build::var("h", Tag::star);
        Term q = build::var("q", Tag::star);
        Term Ph = instantiate(w->b, mk_apps(pi_bar(B), {y, h}));
        Term h0 = mk_apps(p, {pB, build::lam(h, pB, build::lam(q, Ph, h))});
        Term first = mk_apps(pi_bar(B), {y, h0});
        Term q0 = mk_apps(p, {instantiate(w->b, first), build::lam(h, pB, build::lam(q, Ph, q))});
        return build::lam(y, mA, build::lam(p, pAy, mk_pair(A, first, q0)));
      }
      case Shape::arrow: {
        Term x = build::var("x", w->tag);
        Term fx = mk_app(y, x);
        Term body = mk_apps(pi_bar(codomain(w)), {fx, mk_app(p, x)});
        return build::lam(y, mA, build::lam(p, pAy, build::lam(x, w->a, body)));
      }
      case Shape::product: {
        Term B = w->a, C = codomain(w);
        Term y1 = mk_proj1(Tag::diamond, y), y2 = mk_proj2(Tag::diamond, y);
        Term pB = mk_app(pi_pred(B), y1), pC = mk_app(pi_pred(C), y2);
        Term a = build::var("a", Tag::star), b = build::var("b", Tag::star);
        Term left = mk_apps(p, {pB, build::lam(a, pB, build::lam(b, pC, a))});
        Term right = mk_apps(p, {pC, build::lam(a, pB, build::lam(b, pC, b))});
        Term pair = mk_pair(A, mk_apps(pi_bar(B), {y1, left}), mk_apps(pi_bar(C), {y2, right}));
        return build::lam(y, mA, build::lam(p, pAy, pair));
      }
    }
    return nullptr;
  }

  /// Expected type of μ̄(A): A → μ(A).
  Term mu_bar_type(const Term& A) const { return build::arrow(Tag::diamond, A, mu(A)); }

  /// Expected type of π̄(A): Πx:μ(A). π(A) x → A.
  Term pi_bar_type(const Term& A) const {
    Term x = build::var("x", Tag::diamond);
    return build::pi(x, mu(A), build::arrow(Tag::star, mk_app(pi_pred(A), x), A));
  }

 private:
  const Kernel& k_;
};

/// Kernel options for checking synthesized coercions: η on, singleton off.
inline KernelOptions eta_options(KernelOptions base) {
  base.mode.eta = true;
  return base;
}

/// Mode used to compare synthesized coercions against the identity.
inline Mode simplification_mode() { return Mode{true, true}; }

/// εβη normal form in singleton-simplification mode.
inline Term simplify(const Signature& sig, const Term& t, std::uint64_t fuel) {
  Env env{&sig, simplification_mode()};
  return eta_normalize(normalize(env, t, fuel));
}

}  // namespace irr

#endif  // IRR_SUBSET_HPP
