#ifndef IRR_TYPECHECK_HPP
#define IRR_TYPECHECK_HPP

// Type inference and checking for the tagged calculus: sorts, tagged
// products and sums, eqrec, the nat/bool eliminators and Prop inductives
// with a single non-recursive constructor.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irr/convert.hpp"

namespace irr {

enum class ErrorKind : std::uint8_t {
  UnboundVariable,
  NotAFunction,
  NotAPair,
  TagMismatch,
  NotConvertible,
  NotASubtype,
  UniverseError,
  SigmaOnStarFirst,
  FuelExhausted,
  IllFormedDeclaration,
  EpsNotTypable,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::NotAFunction: return "NotAFunction";
    case ErrorKind::NotAPair: return "NotAPair";
    case ErrorKind::TagMismatch: return "TagMismatch";
    case ErrorKind::NotConvertible: return "NotConvertible";
    case ErrorKind::NotASubtype: return "NotASubtype";
    case ErrorKind::UniverseError: return "UniverseError";
    case ErrorKind::SigmaOnStarFirst: return "SigmaOnStarFirst";
    case ErrorKind::FuelExhausted: return "FuelExhausted";
    case ErrorKind::IllFormedDeclaration: return "IllFormedDeclaration";
    case ErrorKind::EpsNotTypable: return "EpsNotTypable";
  }
  return "?";
}

class TypeError : public std::runtime_error {
 public:
  TypeError(ErrorKind kind, std::string detail, Term expected = nullptr, Term actual = nullptr)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail),
        kind(kind),
        detail(std::move(detail)),
        expected(std::move(expected)),
        actual(std::move(actual)) {}
  ErrorKind kind;
  std::string detail;
  Term expected;
  Term actual;
};

struct KernelOptions {
  Mode mode;
  std::uint64_t fuel = 100000;
  bool propdata = false;
};

// ---------------------------------------------------------------------------
// Builders over free variables, used for the closed eliminator types.

namespace build {

inline Term var(std::string name, Tag tag) { return mk_fvar(fresh_id(), std::move(name), tag); }
inline Term pi(const Term& v, Term dom, const Term& body) { return mk_pi(v->name, v->tag, std::move(dom), abstract(body, v->id)); }
inline Term lam(const Term& v, Term dom, const Term& body) { return mk_lam(v->name, v->tag, std::move(dom), abstract(body, v->id)); }
inline Term arrow(Tag tag, Term dom, const Term& cod) { return mk_pi("_", tag, std::move(dom), lift(cod, 1)); }

}  // namespace build

/// ΠQ:A→Prop. Q a → Q b
inline Term leibniz(const Term& A, const Term& a, const Term& b) {
  Term q = build::var("Q", Tag::diamond);
  Term qa = mk_app(q, a);
  return build::pi(q, build::arrow(Tag::diamond, A, mk_prop()),
                   build::arrow(Tag::star, qa, mk_app(q, b)));
}

/// ΠA:Type(i).ΠP:A→Type(i).Πa b:A. P a → a =_A b → P b
inline Term eqrec_type(std::uint32_t level) {
  Term A = build::var("A", Tag::diamond);
  Term P = build::var("P", Tag::diamond);
  Term a = build::var("a", Tag::diamond);
  Term b = build::var("b", Tag::diamond);
  Term body = build::arrow(Tag::diamond, mk_app(P, a),
                           build::arrow(Tag::star, leibniz(A, a, b), mk_app(P, b)));
  body = build::pi(b, A, body);
  body = build::pi(a, A, body);
  body = build::pi(P, build::arrow(Tag::diamond, A, mk_type(level)), body);
  return build::pi(A, mk_type(level), body);
}

/// Eliminator types for nat and bool; `ind` targets Prop, `rec` Type(level).
inline Term data_elim_type(const std::string& inductive, ElimKind elim, std::uint32_t level) {
  const bool ind = elim == ElimKind::ind;
  const Tag case_tag = ind ? Tag::star : Tag::diamond;
  Term target = ind ? mk_prop() : mk_type(level);
  Term P = build::var("P", Tag::diamond);
  if (inductive == "nat") {
    Term nat = nat_type();
    Term n = build::var("n", Tag::diamond);
    Term m = build::var("n", Tag::diamond);
    Term step = build::pi(m, nat, build::arrow(case_tag, mk_app(P, m), mk_app(P, nat_succ(m))));
    Term concl = build::pi(n, nat, mk_app(P, n));
    Term body = build::arrow(case_tag, mk_app(P, nat_zero()), build::arrow(case_tag, step, concl));
    return build::pi(P, build::arrow(Tag::diamond, nat, target), body);
  }
  Term boolean = bool_type();
  Term b = build::var("b", Tag::diamond);
  Term concl = build::pi(b, boolean, mk_app(P, b));
  Term body = build::arrow(case_tag, mk_app(P, bool_true()), build::arrow(case_tag, mk_app(P, bool_false()), concl));
  return build::pi(P, build::arrow(Tag::diamond, boolean, target), body);
}

namespace detail {

/// Splits Πx̄.B into its first `n` binders (as fresh free variables) and the
/// instantiated remainder.
inline Term strip_pis(Term t, std::size_t n, std::vector<Term>& vars, std::vector<Term>& doms) {
  for (std::size_t k = 0; k < n; ++k) {
    Term v = build::var(t->name.empty() ? "x" : t->name, t->tag);
    vars.push_back(v);
    doms.push_back(t->a);
    t = instantiate(t->b, v);
  }
  return t;
}

inline Term pis_over(const std::vector<Term>& vars, const std::vector<Term>& doms, Term body) {
  for (std::size_t k = vars.size(); k-- > 0;) body = build::pi(vars[k], doms[k], body);
  return body;
}

}  // namespace detail

/// Eliminator types of a Prop inductive `I : Πx̄:Ā.Prop` with constructor
/// `c : Πȳ:B̄.I ū`:
///   I_ind : ΠP:(Πx̄:Ā.Prop).(Πȳ:B̄.P ū) → Πx̄:Ā. I x̄ → P x̄
///   I_rec : ΠX:(Πx̄:Ā.Type(i)).(Πȳ:B̄.X ū) → Πx̄:Ā. I x̄ → X x̄
inline Term propdata_elim_type(const PropDataInfo& info, ElimKind elim, std::uint32_t level) {
  const bool ind = elim == ElimKind::ind;
  std::vector<Term> xs, as;
  detail::strip_pis(info.arity, info.n_indices, xs, as);
  Term target = ind ? mk_prop() : mk_type(level);
  Term motive_type = detail::pis_over(xs, as, target);

  Term P = build::var(ind ? "P" : "X", Tag::diamond);
  std::vector<Term> ys, bs;
  Term result = detail::strip_pis(info.ctor_type, info.n_args, ys, bs);
  std::vector<Term> us;
  app_spine(result, us);
  Term case_type = detail::pis_over(ys, bs, mk_apps(P, us));

  std::vector<Term> xs2, as2;
  detail::strip_pis(info.arity, info.n_indices, xs2, as2);
  Term concl = build::arrow(Tag::star, mk_apps(mk_const(info.name, Tag::diamond), xs2), mk_apps(P, xs2));
  concl = detail::pis_over(xs2, as2, concl);
  Tag case_tag = ind ? Tag::star : Tag::diamond;
  return build::pi(P, motive_type, build::arrow(case_tag, case_type, concl));
}

// ---------------------------------------------------------------------------
// The checker

class Kernel {
 public:
  Kernel(const Signature& sig, KernelOptions opts) : sig_(sig), opts_(opts) {}

  Env env() const { return Env{&sig_, opts_.mode}; }
  const Signature& signature() const { return sig_; }
  const KernelOptions& options() const { return opts_; }

  // Fuel is granted per top-level reduction or conversion query.
  Term whnf(const Term& t) const {
    return guard_fuel([&] {
      Budget b(opts_.fuel);
      return irr::whnf(env(), t, b);
    });
  }
  bool convert(const Term& t, const Term& u) const {
    return guard_fuel([&] { return irr::convert(env(), t, u, opts_.fuel); });
  }
  bool subtype(const Term& t, const Term& u) const {
    return guard_fuel([&] { return irr::subtype(env(), t, u, opts_.fuel); });
  }
  Term normalize(const Term& t) const { return irr::normalize(env(), t, opts_.fuel); }
  Tag tag(const Term& t) const { return tag_of(t, opts_.mode); }

  /// The sort of a type, weak-head normalized; UniverseError if T is not a type.
  Term sort_of(Context& ctx, const Term& T) const {
    Term s = whnf(infer(ctx, T));
    if (s->kind != Kind::sort) throw TypeError(ErrorKind::UniverseError, "expected a type", nullptr, T);
    return s;
  }

  /// Binder tag that a domain of the given sort forces.
  static Tag tag_for_sort(const Term& sort) { return sort->is_prop ? Tag::star : Tag::diamond; }

  void wf_context(const Context& ctx) const {
    Context prefix;
    for (const Binding& b : ctx) {
      Term s = sort_of(prefix, b.type);
      if (tag_for_sort(s) != b.tag)
        throw TypeError(ErrorKind::TagMismatch, "binding " + b.name + " has the wrong tag for its sort", s, b.type);
      prefix.push_binding(b);
    }
  }

  /// Principal type of t.
  Term infer(Context& ctx, const Term& t) const {
    switch (t->kind) {
      case Kind::sort:
        return t->is_prop ? mk_type(1) : mk_type(t->level + 1);
      case Kind::bvar:
        throw TypeError(ErrorKind::UnboundVariable, "loose bound variable");
      case Kind::fvar: {
        const Binding* b = ctx.find(t->id);
        if (!b) throw TypeError(ErrorKind::UnboundVariable, t->name);
        if (b->tag != t->tag) throw TypeError(ErrorKind::TagMismatch, "variable " + t->name + " used with the wrong tag");
        return b->type;
      }
      case Kind::lam: {
        Term s = sort_of(ctx, t->a);
        if (tag_for_sort(s) != t->tag)
          throw TypeError(ErrorKind::TagMismatch, "binder " + t->name + " has the wrong tag for its sort", s, t->a);
        Scope scope(ctx, t->name, t->tag, t->a);
        Term B = infer(ctx, instantiate(t->b, scope.var));
        return mk_pi(t->name, t->tag, t->a, abstract(B, scope.var->id));
      }
      case Kind::pi: {
        Term s1 = sort_of(ctx, t->a);
        if (tag_for_sort(s1) != t->tag)
          throw TypeError(ErrorKind::TagMismatch, "binder " + t->name + " has the wrong tag for its sort", s1, t->a);
        Scope scope(ctx, t->name, t->tag, t->a);
        Term s2 = sort_of(ctx, instantiate(t->b, scope.var));
        if (s2->is_prop) return s2;
        return mk_type(std::max(s1->is_prop ? 0u : s1->level, s2->level));
      }
      case Kind::sigma: {
        Term s1 = sort_of(ctx, t->a);
        if (s1->is_prop || t->binder_tag != Tag::diamond)
          throw TypeError(ErrorKind::SigmaOnStarFirst, "the first component of a sum must be computational", nullptr, t);
        Scope scope(ctx, t->name, Tag::diamond, t->a);
        Term s2 = sort_of(ctx, instantiate(t->b, scope.var));
        if (tag_for_sort(s2) != t->tag)
          throw TypeError(ErrorKind::TagMismatch, "sum tag does not match the sort of its second component", s2, t);
        if (s2->is_prop) return s1;
        return mk_type(std::max(s1->level, s2->level));
      }
      case Kind::pair: {
        sort_of(ctx, t->a);
        Term sig = whnf(t->a);
        if (sig->kind != Kind::sigma) throw TypeError(ErrorKind::NotAPair, "pair annotation is not a sum", nullptr, t->a);
        if (tag(t->b) != Tag::diamond)
          throw TypeError(ErrorKind::TagMismatch, "first component of a pair must be computational", nullptr, t->b);
        check(ctx, t->b, sig->a);
        if (tag(t->c) != sig->tag)
          throw TypeError(ErrorKind::TagMismatch, "second component tag does not match the sum", nullptr, t->c);
        check(ctx, t->c, instantiate(sig->b, t->b));
        return t->a;
      }
      case Kind::proj1:
      case Kind::proj2: {
        Term S = whnf(infer(ctx, t->a));
        if (S->kind != Kind::sigma) throw TypeError(ErrorKind::NotAPair, "projection of a non-pair", nullptr, S);
        if (S->tag != t->tag) throw TypeError(ErrorKind::TagMismatch, "projection tag does not match the sum", nullptr, S);
        if (t->kind == Kind::proj1) return S->a;
        return instantiate(S->b, mk_proj1(t->tag, t->a));
      }
      case Kind::app: {
        Term F = whnf(infer(ctx, t->a));
        if (F->kind != Kind::pi) throw TypeError(ErrorKind::NotAFunction, "applied term is not a function", nullptr, F);
        if (tag(t->b) != F->tag)
          throw TypeError(ErrorKind::TagMismatch, "argument tag does not match the binder", F->a, t->b);
        check(ctx, t->b, F->a);
        return instantiate(F->b, t->b);
      }
      case Kind::eps:
        throw TypeError(ErrorKind::EpsNotTypable, "the extraction placeholder has no type");
      case Kind::constant: {
        const Declaration* d = sig_.find(t->name);
        if (!d) throw TypeError(ErrorKind::UnboundVariable, t->name);
        if (d->tag != t->tag) throw TypeError(ErrorKind::TagMismatch, "constant " + t->name + " used with the wrong tag");
        return d->type;
      }
      case Kind::eqrec:
        return eqrec_type(t->level);
      case Kind::rec: {
        if (t->name == "nat" || t->name == "bool") return data_elim_type(t->name, t->elim, t->level);
        const Declaration* d = sig_.find(t->name);
        if (!d || !d->prop_data) throw TypeError(ErrorKind::UnboundVariable, "no eliminator for " + t->name);
        return propdata_elim_type(*d->prop_data, t->elim, t->level);
      }
    }
    throw TypeError(ErrorKind::UnboundVariable, "unknown term");
  }

  /// Rule Conv: infer, then require the principal type to be a subtype of T.
  void check(Context& ctx, const Term& t, const Term& T) const {
    Term A = infer(ctx, t);
    if (!subtype(A, T)) throw TypeError(ErrorKind::NotASubtype, "type mismatch", T, A);
  }

 private:
  struct Scope {
    Scope(Context& ctx, const std::string& name, Tag tag, const Term& type)
        : ctx(ctx), var(ctx.push(name.empty() ? "x" : name, tag, type)) {}
    ~Scope() { ctx.pop(); }
    Context& ctx;
    Term var;
  };

  template <class F>
  auto guard_fuel(F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (FuelExhausted&) {
      throw TypeError(ErrorKind::FuelExhausted, "reduction budget exhausted");
    }
  }

  const Signature& sig_;
  KernelOptions opts_;
};

inline Term infer(const Signature& sig, Context& ctx, const Term& t, KernelOptions opts = {}) {
  return Kernel(sig, opts).infer(ctx, t);
}

inline void check(const Signature& sig, Context& ctx, const Term& t, const Term& T, KernelOptions opts = {}) {
  Kernel(sig, opts).check(ctx, t, T);
}

inline void wf_context(const Signature& sig, const Context& ctx, KernelOptions opts = {}) {
  Kernel(sig, opts).wf_context(ctx);
}

// ---------------------------------------------------------------------------
// Declarations

/// A declaration submitted for checking. For prop data, `type` is the arity
/// Πx̄:Ā.Prop and `ctor_type` is Πȳ:B̄.I ū (elaborated with I in scope).
struct DeclarationRequest {
  enum class Kind : std::uint8_t { definition, axiom, prop_data } kind = Kind::definition;
  std::string name;
  Term type;  // optional for definitions
  Term body;
  std::string ctor;
  Term ctor_type;
};

namespace detail {

inline std::size_t count_pis(Term t) {
  std::size_t n = 0;
  while (t->kind == Kind::pi) {
    ++n;
    t = t->b;
  }
  return n;
}

inline void check_propdata(const Kernel& k, Signature& sig, const DeclarationRequest& d) {
  auto ill = [&](const std::string& why) { throw TypeError(ErrorKind::IllFormedDeclaration, d.name + ": " + why); };
  if (!d.type || !d.ctor_type) ill("missing arity or constructor type");
  if (d.ctor.empty() || d.ctor == d.name) ill("missing or clashing constructor name");
  if (sig.contains(d.ctor)) ill("constructor name already declared");

  Context ctx;
  k.sort_of(ctx, d.type);
  PropDataInfo info;
  info.name = d.name;
  info.ctor = d.ctor;
  info.arity = d.type;
  info.n_indices = count_pis(d.type);
  {
    std::vector<Term> xs, as;
    Term end = strip_pis(d.type, info.n_indices, xs, as);
    if (!is_prop(end)) ill("the declared type does not end in Prop");
  }
  sig.add({DeclKind::prop_data, d.name, d.type, nullptr, nullptr, Tag::diamond, nullptr});

  Kernel k2(sig, k.options());
  Term s = k2.sort_of(ctx, d.ctor_type);
  if (!s->is_prop) ill("constructor type is not a proposition");
  info.ctor_type = d.ctor_type;
  info.n_args = count_pis(d.ctor_type);
  Term t = d.ctor_type;
  Context scope;
  for (std::size_t i = 0; i < info.n_args; ++i) {
    if (occurs_const(t->a, d.name)) ill("recursive occurrence of " + d.name + " in a constructor argument");
    Term sa = k2.sort_of(scope, t->a);
    if (!sa->is_prop) ill("constructor argument " + std::to_string(i + 1) + " is not of sort Prop");
    t = instantiate(t->b, scope.push(t->name, Tag::star, t->a));
  }
  std::vector<Term> us;
  Term head = app_spine(t, us);
  if (head->kind != Kind::constant || head->name != d.name || us.size() != info.n_indices)
    ill("constructor must return " + d.name + " applied to its indices");
  for (const Term& u : us)
    if (occurs_const(u, d.name)) ill("recursive occurrence of " + d.name + " in an index");

  Term erased = d.ctor_type;
  for (std::size_t i = 0; i < info.n_args; ++i) erased = instantiate(erased->b, mk_eps());
  std::vector<Term> eus;
  app_spine(erased, eus);
  for (Term& u : eus) u = eps_normalize(u, k.options().mode);
  info.erased_indices = eus;

  Signature rebuilt;
  for (const Declaration& decl : sig) {
    Declaration copy = decl;
    if (copy.name == d.name) copy.prop_data = std::make_shared<const PropDataInfo>(info);
    rebuilt.add(std::move(copy));
  }
  rebuilt.add({DeclKind::prop_constructor, d.ctor, d.ctor_type, nullptr, nullptr, Tag::star, nullptr});
  sig = std::move(rebuilt);
}

}  // namespace detail

/// Checks d against sig and returns the extended signature.
inline Signature check_declaration(const Signature& sig, const DeclarationRequest& d, KernelOptions opts = {}) {
  if (sig.contains(d.name))
    throw TypeError(ErrorKind::IllFormedDeclaration, d.name + " is already declared");
  Kernel k(sig, opts);
  Signature out = sig;
  Context ctx;
  switch (d.kind) {
    case DeclarationRequest::Kind::axiom: {
      Term s = k.sort_of(ctx, d.type);
      out.add({DeclKind::axiom, d.name, d.type, nullptr, nullptr, Kernel::tag_for_sort(s), nullptr});
      break;
    }
    case DeclarationRequest::Kind::definition: {
      Term T = d.type;
      if (T) {
        k.sort_of(ctx, T);
        k.check(ctx, d.body, T);
      } else {
        T = k.infer(ctx, d.body);
      }
      Term s = k.sort_of(ctx, T);
      Tag tg = Kernel::tag_for_sort(s);
      if (k.tag(d.body) != tg)
        throw TypeError(ErrorKind::TagMismatch, "body of " + d.name + " has the wrong tag for its sort");
      out.add({DeclKind::definition, d.name, T, d.body, eps_normalize(d.body), tg, nullptr});
      break;
    }
    case DeclarationRequest::Kind::prop_data:
      if (!opts.propdata)
        throw TypeError(ErrorKind::IllFormedDeclaration, "prop-data declarations are disabled (use --propdata)");
      detail::check_propdata(k, out, d);
      break;
  }
  return out;
}

}  // namespace irr

#endif  // IRR_TYPECHECK_HPP
