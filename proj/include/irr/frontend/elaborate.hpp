#ifndef IRR_FRONTEND_ELABORATE_HPP
#define IRR_FRONTEND_ELABORATE_HPP

// Surface terms to tagged kernel terms. Binder tags come from the sort of the
// domain, Σ tags from the sort of the codomain, projection tags from the
// scrutinee's sum, pair annotations from the ascription or expected type.

#include <optional>
#include <stdexcept>
#include <string>

#include "irr/frontend/syntax.hpp"
#include "irr/typecheck.hpp"

namespace irr::frontend {

class ElabError : public std::runtime_error {
 public:
  ElabError(std::string kind, const std::string& detail) : std::runtime_error(detail), kind(std::move(kind)) {}
  std::string kind;
};

class Elaborator {
 public:
  Elaborator(const Kernel& kernel, Context& ctx) : k_(kernel), ctx_(ctx) {}

  /// Elaborates e, using `expected` (when given) to fill pair annotations.
  Term elaborate(const SPtr& e, const Term& expected = nullptr) {
    try {
      return elab(e, expected);
    } catch (...) {
      if (!error_loc) error_loc = e->loc;
      throw;
    }
  }

  /// Location of the innermost expression whose elaboration failed.
  std::optional<Loc> error_loc;

 private:
  Term elab(const SPtr& e, const Term& expected) {
    switch (e->kind) {
      case SExpr::Kind::prop:
        return mk_prop();
      case SExpr::Kind::type:
        return mk_type(e->level);
      case SExpr::Kind::num:
        return numeral(e->level);
      case SExpr::Kind::var:
        return resolve(*e);
      case SExpr::Kind::lam: {
        Term dom = elaborate(e->a);
        Tag tag = binder_tag(dom);
        Term var = ctx_.push(e->name, tag, dom);
        Pop pop{ctx_};
        Term body_expected;
        if (expected) {
          Term w = k_.whnf(expected);
          if (w->kind == Kind::pi) body_expected = instantiate(w->b, var);
        }
        Term body = elaborate(e->b, body_expected);
        return mk_lam(e->name, tag, dom, abstract(body, var->id));
      }
      case SExpr::Kind::pi:
      case SExpr::Kind::sigma:
      case SExpr::Kind::subset: {
        Term dom = elaborate(e->a);
        Tag tag = binder_tag(dom);
        Term var = ctx_.push(e->name, tag, dom);
        Pop pop{ctx_};
        Term cod = elaborate(e->b);
        Term body = abstract(cod, var->id);
        if (e->kind == SExpr::Kind::pi) return mk_pi(e->name, tag, dom, body);
        Term sum = mk_sigma(binder_tag(cod), e->name, dom, body, tag);
        if (tag != Tag::diamond) k_.infer(ctx_, sum);  // reports SigmaOnStarFirst
        return sum;
      }
      case SExpr::Kind::arrow: {
        Term dom = elaborate(e->a);
        Term cod = elaborate(e->b);
        return mk_pi("_", binder_tag(dom), dom, lift(cod, 1));
      }
      case SExpr::Kind::prod: {
        Term dom = elaborate(e->a);
        Term cod = elaborate(e->b);
        if (binder_tag(dom) != Tag::diamond) k_.infer(ctx_, mk_sigma(Tag::diamond, "_", dom, lift(cod, 1), Tag::star));
        return mk_sigma(binder_tag(cod), "_", dom, lift(cod, 1));
      }
      case SExpr::Kind::app: {
        Term f = elaborate(e->a);
        Term arg_expected;
        if (e->b->kind == SExpr::Kind::pair && !e->b->a) {
          Term F = k_.whnf(k_.infer(ctx_, f));
          if (F->kind == Kind::pi) arg_expected = F->a;
        }
        return mk_app(f, elaborate(e->b, arg_expected));
      }
      case SExpr::Kind::pair: {
        Term annot = e->a ? elaborate(e->a) : expected;
        if (!annot) throw ElabError("AnnotationRequired", "pair needs a type annotation");
        Term S = k_.whnf(annot);
        if (S->kind != Kind::sigma) throw TypeError(ErrorKind::NotAPair, "pair annotation is not a sum", nullptr, annot);
        Term first = elaborate(e->b, S->a);
        Term second = elaborate(e->c, instantiate(S->b, first));
        return mk_pair(annot, first, second);
      }
      case SExpr::Kind::fst:
      case SExpr::Kind::snd: {
        Term x = elaborate(e->a);
        Term S = k_.whnf(k_.infer(ctx_, x));
        if (S->kind != Kind::sigma) throw TypeError(ErrorKind::NotAPair, "projection of a non-pair", nullptr, S);
        return e->kind == SExpr::Kind::fst ? mk_proj1(S->tag, x) : mk_proj2(S->tag, x);
      }
    }
    throw ElabError("ParseError", "unknown surface form");
  }

  struct Pop {
    Context& c;
    ~Pop() { c.pop(); }
  };

  Tag binder_tag(const Term& type) { return Kernel::tag_for_sort(k_.sort_of(ctx_, type)); }

  Term resolve(const SExpr& e) {
    if (!e.has_level) {
      if (const Binding* b = ctx_.find_name(e.name)) return mk_fvar(b->id, b->name, b->tag);
      if (const Declaration* d = k_.signature().find(e.name)) return mk_const(d->name, d->tag);
    }
    if (e.name == "eqrec") return mk_eqrec(e.level);
    for (ElimKind kind : {ElimKind::rec, ElimKind::ind}) {
      std::string suffix = kind == ElimKind::rec ? "_rec" : "_ind";
      if (e.name.size() <= suffix.size() || e.name.compare(e.name.size() - suffix.size(), suffix.size(), suffix) != 0)
        continue;
      std::string base = e.name.substr(0, e.name.size() - suffix.size());
      const Declaration* d = k_.signature().find(base);
      if (base == "nat" || base == "bool" || (d && d->prop_data)) return mk_rec(base, kind, e.level);
    }
    throw TypeError(ErrorKind::UnboundVariable, e.name);
  }

  const Kernel& k_;
  Context& ctx_;
};

inline Term elaborate(const Kernel& kernel, Context& ctx, const SPtr& e, const Term& expected = nullptr) {
  return Elaborator(kernel, ctx).elaborate(e, expected);
}

}  // namespace irr::frontend

#endif  // IRR_FRONTEND_ELABORATE_HPP
