#ifndef IRR_FRONTEND_PRINTER_HPP
#define IRR_FRONTEND_PRINTER_HPP

// Kernel terms back to surface syntax. Bound names are freshened against the
// enclosing binders and the constants they would shadow, so the output
// re-parses to the same term.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "irr/term.hpp"

namespace irr::frontend {

class Printer {
 public:
  explicit Printer(const Signature* sig = nullptr) : sig_(sig) {}

  std::string print(const Term& t) {
    names_.clear();
    return go(t, 0);
  }

 private:
  // Precedence levels: 0 binder forms, 1 arrow, 2 product, 3 application, 4 atom.
  static std::string paren(bool wrap, const std::string& s) { return wrap ? "(" + s + ")" : s; }

  static std::optional<std::uint32_t> as_numeral(const Term& t) {
    std::uint32_t n = 0;
    const Node* p = t.get();
    while (p->kind == Kind::app && p->a->kind == Kind::constant && p->a->name == "S") {
      ++n;
      p = p->b.get();
    }
    if (p->kind == Kind::constant && p->name == "O") return n;
    return std::nullopt;
  }

  static bool occurs_fvar_named(const Term& t, const std::string& n) {
    if (!t->has_fvar) return false;
    if (t->kind == Kind::fvar) return t->name == n;
    return (t->a && occurs_fvar_named(t->a, n)) || (t->b && occurs_fvar_named(t->b, n)) ||
           (t->c && occurs_fvar_named(t->c, n));
  }

  std::string fresh(std::string hint, const Term& body) {
    if (hint.empty() || hint == "_") hint = "x";
    auto clashes = [&](const std::string& n) {
      if (std::find(names_.begin(), names_.end(), n) != names_.end()) return true;
      if (sig_ && sig_->contains(n) && occurs_const(body, n)) return true;
      if (occurs_fvar_named(body, n)) return true;
      return n == "eqrec" || n.find('@') != std::string::npos;
    };
    std::string n = hint;
    for (int k = 1; clashes(n); ++k) n = hint + std::to_string(k);
    return n;
  }

  std::string binder(const char* kw, const char* sep, const Term& t) {
    std::string n = fresh(t->name, t->b);
    std::string dom = go(t->a, 0);
    names_.push_back(n);
    std::string body = go(t->b, 0);
    names_.pop_back();
    return std::string(kw) + " (" + n + " : " + dom + ")" + sep + " " + body;
  }

  std::string go(const Term& t, int prec) {
    switch (t->kind) {
      case Kind::sort:
        return t->is_prop ? "Prop" : paren(prec > 3, "Type " + std::to_string(t->level));
      case Kind::bvar:
        if (t->index < names_.size()) return names_[names_.size() - 1 - t->index];
        return "#" + std::to_string(t->index);
      case Kind::fvar:
      case Kind::constant:
        if (auto n = as_numeral(t)) return std::to_string(*n);
        return t->name;
      case Kind::eps:
        return "ε";
      case Kind::eqrec:
        return t->level ? "eqrec@" + std::to_string(t->level) : "eqrec";
      case Kind::rec: {
        std::string s = t->name + (t->elim == ElimKind::rec ? "_rec" : "_ind");
        return t->level ? s + "@" + std::to_string(t->level) : s;
      }
      case Kind::lam:
        return paren(prec > 0, binder("fun", " =>", t));
      case Kind::pi:
        if (!has_loose_bvar(t->b, 0)) {
          std::string dom = go(t->a, 2);
          names_.push_back("_");
          std::string cod = go(t->b, 1);
          names_.pop_back();
          return paren(prec > 1, dom + " -> " + cod);
        }
        return paren(prec > 0, binder("Pi", ",", t));
      case Kind::sigma: {
        if (t->tag == Tag::star && t->binder_tag == Tag::diamond) {
          std::string n = fresh(t->name, t->b);
          std::string dom = go(t->a, 0);
          names_.push_back(n);
          std::string pred = go(t->b, 0);
          names_.pop_back();
          return "{" + n + " : " + dom + " | " + pred + "}";
        }
        if (t->tag == Tag::diamond && !has_loose_bvar(t->b, 0)) {
          std::string dom = go(t->a, 3);
          names_.push_back("_");
          std::string cod = go(t->b, 2);
          names_.pop_back();
          return paren(prec > 2, dom + " * " + cod);
        }
        return paren(prec > 0, binder("Sig", ",", t));
      }
      case Kind::pair:
        return "pair[" + go(t->a, 0) + "](" + go(t->b, 0) + ", " + go(t->c, 0) + ")";
      case Kind::proj1:
      case Kind::proj2:
        return paren(prec > 3, std::string(t->kind == Kind::proj1 ? "fst " : "snd ") + go(t->a, 4));
      case Kind::app: {
        if (auto n = as_numeral(t)) return std::to_string(*n);
        return paren(prec > 3, go(t->a, 3) + " " + go(t->b, 4));
      }
    }
    return "?";
  }

  const Signature* sig_;
  std::vector<std::string> names_;
};

inline std::string print(const Term& t, const Signature* sig = nullptr) { return Printer(sig).print(t); }

}  // namespace irr::frontend

#endif  // IRR_FRONTEND_PRINTER_HPP
