#ifndef IRR_TERM_HPP
#define IRR_TERM_HPP

// Raw terms of the tagged calculus, contexts, signatures and the
// substitution machinery every other header builds on.
//
// Terms use a locally nameless representation: bound variables are de Bruijn
// indices, free variables carry a unique id. Binder names are kept only for
// printing. Binder and occurrence tags are stored redundantly so that the
// erasure rules can inspect a single node.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace irr {

/// Two-valued marker: `star` for erasable proof-level content, `diamond` for
/// computational content. Deliberately unordered.
enum class Tag : std::uint8_t { star, diamond };

inline const char* tag_name(Tag t) { return t == Tag::star ? "*" : "<>"; }

/// Level of a predicative universe Type(level).
struct Universe {
  std::uint32_t level = 0;
  friend bool operator==(Universe, Universe) = default;
};

enum class Kind : std::uint8_t {
  sort,
  bvar,
  fvar,
  lam,
  app,
  pi,
  sigma,
  pair,
  proj1,
  proj2,
  eps,
  constant,
  eqrec,
  rec,
};

/// Eliminator flavour: `ind` targets Prop (tag *), `rec` targets Type (tag ◇).
enum class ElimKind : std::uint8_t { ind, rec };

struct Node;
using Term = std::shared_ptr<const Node>;

// Field use per kind:
//   sort      is_prop, level
//   bvar      index, tag, name (hint)
//   fvar      id, tag, name
//   lam, pi   name, tag (binder), a = domain, b = body
//   app       a = function, b = argument
//   sigma     tag (Σ tag), binder_tag, name, a = domain, b = codomain
//   pair      a = annotation, b = first, c = second
//   proj1/2   tag, a = scrutinee
//   constant  name, tag
//   eqrec     level
//   rec       name (inductive), elim, level
struct Node {
  Kind kind = Kind::eps;
  Tag tag = Tag::diamond;
  Tag binder_tag = Tag::diamond;
  bool is_prop = false;
  ElimKind elim = ElimKind::rec;
  std::uint32_t level = 0;
  std::uint32_t index = 0;
  std::uint64_t id = 0;
  std::string name;
  Term a, b, c;
  std::uint32_t loose = 0;  // 1 + highest loose bound index, 0 when locally closed
  std::uint32_t size = 1;
  bool has_fvar = false;
};

namespace detail {

inline Term finish(Node n) {
  std::uint32_t loose = n.loose;
  std::uint32_t size = 1;
  bool fv = n.has_fvar;
  const bool binds_b = n.kind == Kind::lam || n.kind == Kind::pi || n.kind == Kind::sigma;
  auto absorb = [&](const Term& t, bool under_binder) {
    if (!t) return;
    size += t->size;
    fv = fv || t->has_fvar;
    std::uint32_t l = t->loose;
    if (under_binder) l = l > 0 ? l - 1 : 0;
    if (l > loose) loose = l;
  };
  absorb(n.a, false);
  absorb(n.b, binds_b);
  absorb(n.c, false);
  n.loose = loose;
  n.size = size;
  n.has_fvar = fv;
  return std::make_shared<const Node>(std::move(n));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Constructors

inline Term mk_prop() {
  static const Term prop = [] {
    Node n;
    n.kind = Kind::sort;
    n.is_prop = true;
    return detail::finish(std::move(n));
  }();
  return prop;
}

inline Term mk_type(std::uint32_t level) {
  Node n;
  n.kind = Kind::sort;
  n.level = level;
  return detail::finish(std::move(n));
}

inline Term mk_bvar(std::uint32_t index, Tag tag, std::string name = {}) {
  Node n;
  n.kind = Kind::bvar;
  n.index = index;
  n.tag = tag;
  n.name = std::move(name);
  n.loose = index + 1;
  return detail::finish(std::move(n));
}

inline std::uint64_t fresh_id() {
  static std::atomic<std::uint64_t> next{1};
  return next.fetch_add(1, std::memory_order_relaxed);
}

inline Term mk_fvar(std::uint64_t id, std::string name, Tag tag) {
  Node n;
  n.kind = Kind::fvar;
  n.id = id;
  n.name = std::move(name);
  n.tag = tag;
  n.has_fvar = true;
  return detail::finish(std::move(n));
}

inline Term mk_lam(std::string name, Tag tag, Term dom, Term body) {
  Node n;
  n.kind = Kind::lam;
  n.name = std::move(name);
  n.tag = tag;
  n.a = std::move(dom);
  n.b = std::move(body);
  return detail::finish(std::move(n));
}

inline Term mk_pi(std::string name, Tag tag, Term dom, Term cod) {
  Node n;
  n.kind = Kind::pi;
  n.name = std::move(name);
  n.tag = tag;
  n.a = std::move(dom);
  n.b = std::move(cod);
  return detail::finish(std::move(n));
}

inline Term mk_app(Term f, Term x) {
  Node n;
  n.kind = Kind::app;
  n.a = std::move(f);
  n.b = std::move(x);
  return detail::finish(std::move(n));
}

inline Term mk_apps(Term f, const std::vector<Term>& args) {
  for (const auto& x : args) f = mk_app(std::move(f), x);
  return f;
}

inline Term mk_sigma(Tag tag, std::string name, Term dom, Term cod, Tag binder_tag = Tag::diamond) {
  Node n;
  n.kind = Kind::sigma;
  n.tag = tag;
  n.binder_tag = binder_tag;
  n.name = std::move(name);
  n.a = std::move(dom);
  n.b = std::move(cod);
  return detail::finish(std::move(n));
}

inline Term mk_pair(Term annot, Term first, Term second) {
  Node n;
  n.kind = Kind::pair;
  n.a = std::move(annot);
  n.b = std::move(first);
  n.c = std::move(second);
  return detail::finish(std::move(n));
}

inline Term mk_proj1(Tag tag, Term of) {
  Node n;
  n.kind = Kind::proj1;
  n.tag = tag;
  n.a = std::move(of);
  return detail::finish(std::move(n));
}

inline Term mk_proj2(Tag tag, Term of) {
  Node n;
  n.kind = Kind::proj2;
  n.tag = tag;
  n.a = std::move(of);
  return detail::finish(std::move(n));
}

inline Term mk_eps() {
  static const Term eps = [] {
    Node n;
    n.kind = Kind::eps;
    n.tag = Tag::star;
    return detail::finish(std::move(n));
  }();
  return eps;
}

inline Term mk_const(std::string name, Tag tag) {
  Node n;
  n.kind = Kind::constant;
  n.name = std::move(name);
  n.tag = tag;
  return detail::finish(std::move(n));
}

inline Term mk_eqrec(std::uint32_t level) {
  Node n;
  n.kind = Kind::eqrec;
  n.level = level;
  return detail::finish(std::move(n));
}

inline Term mk_rec(std::string inductive, ElimKind elim, std::uint32_t level = 0) {
  Node n;
  n.kind = Kind::rec;
  n.name = std::move(inductive);
  n.elim = elim;
  n.tag = elim == ElimKind::ind ? Tag::star : Tag::diamond;
  n.level = level;
  return detail::finish(std::move(n));
}

inline bool is_sort(const Term& t) { return t->kind == Kind::sort; }
inline bool is_prop(const Term& t) { return t->kind == Kind::sort && t->is_prop; }
inline bool is_eps(const Term& t) { return t->kind == Kind::eps; }

/// Splits `h a1 ... an` into its head and arguments.
inline Term app_spine(const Term& t, std::vector<Term>& args) {
  args.clear();
  Term h = t;
  while (h->kind == Kind::app) {
    args.push_back(h->b);
    h = h->a;
  }
  std::reverse(args.begin(), args.end());
  return h;
}

// ---------------------------------------------------------------------------
// De Bruijn machinery

/// Shifts loose bound indices >= cutoff by `by`.
inline Term lift(const Term& t, std::uint32_t by, std::uint32_t cutoff = 0) {
  if (by == 0 || t->loose <= cutoff) return t;
  switch (t->kind) {
    case Kind::bvar:
      return mk_bvar(t->index + by, t->tag, t->name);
    case Kind::lam:
      return mk_lam(t->name, t->tag, lift(t->a, by, cutoff), lift(t->b, by, cutoff + 1));
    case Kind::pi:
      return mk_pi(t->name, t->tag, lift(t->a, by, cutoff), lift(t->b, by, cutoff + 1));
    case Kind::sigma:
      return mk_sigma(t->tag, t->name, lift(t->a, by, cutoff), lift(t->b, by, cutoff + 1), t->binder_tag);
    case Kind::app:
      return mk_app(lift(t->a, by, cutoff), lift(t->b, by, cutoff));
    case Kind::pair:
      return mk_pair(lift(t->a, by, cutoff), lift(t->b, by, cutoff), lift(t->c, by, cutoff));
    case Kind::proj1:
      return mk_proj1(t->tag, lift(t->a, by, cutoff));
    case Kind::proj2:
      return mk_proj2(t->tag, lift(t->a, by, cutoff));
    default:
      return t;
  }
}

namespace detail {

inline Term subst_bvar(const Term& t, std::uint32_t depth, const Term& u) {
  if (t->loose <= depth) return t;
  switch (t->kind) {
    case Kind::bvar:
      if (t->index == depth) return lift(u, depth);
      return mk_bvar(t->index - 1, t->tag, t->name);
    case Kind::lam:
      return mk_lam(t->name, t->tag, subst_bvar(t->a, depth, u), subst_bvar(t->b, depth + 1, u));
    case Kind::pi:
      return mk_pi(t->name, t->tag, subst_bvar(t->a, depth, u), subst_bvar(t->b, depth + 1, u));
    case Kind::sigma:
      return mk_sigma(t->tag, t->name, subst_bvar(t->a, depth, u), subst_bvar(t->b, depth + 1, u),
                      t->binder_tag);
    case Kind::app:
      return mk_app(subst_bvar(t->a, depth, u), subst_bvar(t->b, depth, u));
    case Kind::pair:
      return mk_pair(subst_bvar(t->a, depth, u), subst_bvar(t->b, depth, u), subst_bvar(t->c, depth, u));
    case Kind::proj1:
      return mk_proj1(t->tag, subst_bvar(t->a, depth, u));
    case Kind::proj2:
      return mk_proj2(t->tag, subst_bvar(t->a, depth, u));
    default:
      return t;
  }
}

inline Term abstract_fvar(const Term& t, std::uint64_t id, std::uint32_t depth) {
  if (!t->has_fvar && t->loose <= depth) return t;
  switch (t->kind) {
    case Kind::fvar:
      return t->id == id ? mk_bvar(depth, t->tag, t->name) : t;
    case Kind::bvar:
      return t->index >= depth ? mk_bvar(t->index + 1, t->tag, t->name) : t;
    case Kind::lam:
      return mk_lam(t->name, t->tag, abstract_fvar(t->a, id, depth), abstract_fvar(t->b, id, depth + 1));
    case Kind::pi:
      return mk_pi(t->name, t->tag, abstract_fvar(t->a, id, depth), abstract_fvar(t->b, id, depth + 1));
    case Kind::sigma:
      return mk_sigma(t->tag, t->name, abstract_fvar(t->a, id, depth), abstract_fvar(t->b, id, depth + 1),
                      t->binder_tag);
    case Kind::app:
      return mk_app(abstract_fvar(t->a, id, depth), abstract_fvar(t->b, id, depth));
    case Kind::pair:
      return mk_pair(abstract_fvar(t->a, id, depth), abstract_fvar(t->b, id, depth),
                     abstract_fvar(t->c, id, depth));
    case Kind::proj1:
      return mk_proj1(t->tag, abstract_fvar(t->a, id, depth));
    case Kind::proj2:
      return mk_proj2(t->tag, abstract_fvar(t->a, id, depth));
    default:
      return t;
  }
}

inline Term replace_fvar(const Term& t, std::uint64_t id, const Term& u, std::uint32_t depth) {
  if (!t->has_fvar) return t;
  switch (t->kind) {
    case Kind::fvar:
      return t->id == id ? lift(u, depth) : t;
    case Kind::lam:
      return mk_lam(t->name, t->tag, replace_fvar(t->a, id, u, depth), replace_fvar(t->b, id, u, depth + 1));
    case Kind::pi:
      return mk_pi(t->name, t->tag, replace_fvar(t->a, id, u, depth), replace_fvar(t->b, id, u, depth + 1));
    case Kind::sigma:
      return mk_sigma(t->tag, t->name, replace_fvar(t->a, id, u, depth), replace_fvar(t->b, id, u, depth + 1),
                      t->binder_tag);
    case Kind::app:
      return mk_app(replace_fvar(t->a, id, u, depth), replace_fvar(t->b, id, u, depth));
    case Kind::pair:
      return mk_pair(replace_fvar(t->a, id, u, depth), replace_fvar(t->b, id, u, depth),
                     replace_fvar(t->c, id, u, depth));
    case Kind::proj1:
      return mk_proj1(t->tag, replace_fvar(t->a, id, u, depth));
    case Kind::proj2:
      return mk_proj2(t->tag, replace_fvar(t->a, id, u, depth));
    default:
      return t;
  }
}

}  // namespace detail

/// body[0 := u], lowering the remaining loose indices. This is the β
/// contractum of `(λx.body) u`.
inline Term instantiate(const Term& body, const Term& u) { return detail::subst_bvar(body, 0, u); }

/// Turns free variable `id` into bound index 0 of a new enclosing binder.
inline Term abstract(const Term& t, std::uint64_t id) { return detail::abstract_fvar(t, id, 0); }

/// Capture-avoiding substitution of the free variable `id` by `u`.
inline Term subst(const Term& t, std::uint64_t id, const Term& u) { return detail::replace_fvar(t, id, u, 0); }

inline bool has_loose_bvar(const Term& t, std::uint32_t index) {
  if (t->loose <= index) return false;
  switch (t->kind) {
    case Kind::bvar:
      return t->index == index;
    case Kind::lam:
    case Kind::pi:
    case Kind::sigma:
      return has_loose_bvar(t->a, index) || has_loose_bvar(t->b, index + 1);
    case Kind::app:
      return has_loose_bvar(t->a, index) || has_loose_bvar(t->b, index);
    case Kind::pair:
      return has_loose_bvar(t->a, index) || has_loose_bvar(t->b, index) || has_loose_bvar(t->c, index);
    case Kind::proj1:
    case Kind::proj2:
      return has_loose_bvar(t->a, index);
    default:
      return false;
  }
}

inline bool occurs_fvar(const Term& t, std::uint64_t id) {
  if (!t->has_fvar) return false;
  if (t->kind == Kind::fvar) return t->id == id;
  return (t->a && occurs_fvar(t->a, id)) || (t->b && occurs_fvar(t->b, id)) || (t->c && occurs_fvar(t->c, id));
}

inline void collect_fvars(const Term& t, std::unordered_set<std::uint64_t>& out) {
  if (!t->has_fvar) return;
  if (t->kind == Kind::fvar) {
    out.insert(t->id);
    return;
  }
  if (t->a) collect_fvars(t->a, out);
  if (t->b) collect_fvars(t->b, out);
  if (t->c) collect_fvars(t->c, out);
}

inline bool occurs_const(const Term& t, const std::string& name) {
  if ((t->kind == Kind::constant || t->kind == Kind::rec) && t->name == name) return true;
  return (t->a && occurs_const(t->a, name)) || (t->b && occurs_const(t->b, name)) ||
         (t->c && occurs_const(t->c, name));
}

/// Equality up to renaming of bound variables. Tags must agree exactly.
inline bool alpha_eq(const Term& t, const Term& u) {
  if (t == u) return true;
  if (t->kind != u->kind || t->size != u->size) return false;
  switch (t->kind) {
    case Kind::sort:
      return t->is_prop == u->is_prop && (t->is_prop || t->level == u->level);
    case Kind::bvar:
      return t->index == u->index && t->tag == u->tag;
    case Kind::fvar:
      return t->id == u->id && t->tag == u->tag;
    case Kind::lam:
    case Kind::pi:
      return t->tag == u->tag && alpha_eq(t->a, u->a) && alpha_eq(t->b, u->b);
    case Kind::sigma:
      return t->tag == u->tag && t->binder_tag == u->binder_tag && alpha_eq(t->a, u->a) && alpha_eq(t->b, u->b);
    case Kind::app:
      return alpha_eq(t->a, u->a) && alpha_eq(t->b, u->b);
    case Kind::pair:
      return alpha_eq(t->a, u->a) && alpha_eq(t->b, u->b) && alpha_eq(t->c, u->c);
    case Kind::proj1:
    case Kind::proj2:
      return t->tag == u->tag && alpha_eq(t->a, u->a);
    case Kind::eps:
      return true;
    case Kind::constant:
      return t->name == u->name && t->tag == u->tag;
    case Kind::eqrec:
      return t->level == u->level;
    case Kind::rec:
      return t->name == u->name && t->elim == u->elim && t->level == u->level;
  }
  return false;
}

namespace detail {

inline void write_key(const Term& t, std::string& out) {
  auto tg = [&](Tag s) { out += s == Tag::star ? '*' : 'o'; };
  switch (t->kind) {
    case Kind::sort:
      if (t->is_prop)
        out += "P";
      else
        out += "T" + std::to_string(t->level);
      return;
    case Kind::bvar:
      out += "#" + std::to_string(t->index);
      tg(t->tag);
      return;
    case Kind::fvar:
      out += "$" + std::to_string(t->id);
      tg(t->tag);
      return;
    case Kind::lam:
    case Kind::pi:
      out += t->kind == Kind::lam ? "(L" : "(Pi";
      tg(t->tag);
      write_key(t->a, out);
      out += ' ';
      write_key(t->b, out);
      out += ')';
      return;
    case Kind::sigma:
      out += "(S";
      tg(t->tag);
      tg(t->binder_tag);
      write_key(t->a, out);
      out += ' ';
      write_key(t->b, out);
      out += ')';
      return;
    case Kind::app:
      out += "(@";
      write_key(t->a, out);
      out += ' ';
      write_key(t->b, out);
      out += ')';
      return;
    case Kind::pair:
      out += "(<";
      write_key(t->a, out);
      out += ' ';
      write_key(t->b, out);
      out += ' ';
      write_key(t->c, out);
      out += ')';
      return;
    case Kind::proj1:
    case Kind::proj2:
      out += t->kind == Kind::proj1 ? "(p1" : "(p2";
      tg(t->tag);
      write_key(t->a, out);
      out += ')';
      return;
    case Kind::eps:
      out += "E";
      return;
    case Kind::constant:
      out += "c:" + t->name;
      tg(t->tag);
      out += ';';
      return;
    case Kind::eqrec:
      out += "eqrec" + std::to_string(t->level);
      return;
    case Kind::rec:
      out += "r:" + t->name + (t->elim == ElimKind::ind ? "i" : "r") + std::to_string(t->level) + ';';
      return;
  }
}

}  // namespace detail

/// Canonical string of a term modulo bound names; alpha_eq terms share a key.
inline std::string structural_key(const Term& t) {
  std::string out;
  out.reserve(t->size * 4);
  detail::write_key(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Contexts

struct Binding {
  std::uint64_t id = 0;
  std::string name;
  Tag tag = Tag::diamond;
  Term type;
};

/// Telescope of tagged typed bindings; each type mentions only earlier ids.
class Context {
 public:
  Context() = default;

  Term push(std::string name, Tag tag, Term type) {
    std::uint64_t id = fresh_id();
    items_.push_back(Binding{id, name, tag, std::move(type)});
    return mk_fvar(id, std::move(name), tag);
  }
  void push_binding(Binding b) { items_.push_back(std::move(b)); }
  void pop() { items_.pop_back(); }

  const Binding* find(std::uint64_t id) const {
    for (auto it = items_.rbegin(); it != items_.rend(); ++it)
      if (it->id == id) return &*it;
    return nullptr;
  }
  const Binding* find_name(const std::string& name) const {
    for (auto it = items_.rbegin(); it != items_.rend(); ++it)
      if (it->name == name) return &*it;
    return nullptr;
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Binding& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  std::vector<Binding> items_;
};

/// Opens the binder of a lam/pi/sigma node with a fresh free variable pushed
/// onto `ctx`; returns the instantiated body.
inline Term open_binder(Context& ctx, const Term& binder, Tag var_tag) {
  Term v = ctx.push(binder->name.empty() ? "x" : binder->name, var_tag, binder->a);
  return instantiate(binder->b, v);
}

// ---------------------------------------------------------------------------
// Signatures

enum class DeclKind : std::uint8_t {
  definition,
  axiom,
  data_type,         // built-in nat / bool
  constructor,       // built-in O, S, true, false
  prop_data,         // single-constructor non-recursive inductive in Prop
  prop_constructor,  // its constructor
};

/// Shape of a Prop inductive `I : Πx̄:Ā.Prop` with constructor `c : Πȳ:B̄.I ū`.
struct PropDataInfo {
  std::string name;
  std::string ctor;
  std::size_t n_indices = 0;  // |x̄|
  std::size_t n_args = 0;     // |ȳ|
  Term arity;                 // Πx̄:Ā.Prop
  Term ctor_type;             // Πȳ:B̄.I ū
  std::vector<Term> erased_indices;  // ū with every ȳ replaced by ε
};

struct Declaration {
  DeclKind kind = DeclKind::axiom;
  std::string name;
  Term type;
  Term body;    // definitions only
  Term cooked;  // ε-normal body used for δ-unfolding
  Tag tag = Tag::diamond;
  std::shared_ptr<const PropDataInfo> prop_data;
};

class Signature {
 public:
  /// Signature holding the built-in data types nat and bool.
  static Signature with_builtins() {
    Signature s;
    Term nat = mk_const("nat", Tag::diamond);
    Term boolean = mk_const("bool", Tag::diamond);
    s.add({DeclKind::data_type, "nat", mk_type(0), nullptr, nullptr, Tag::diamond, nullptr});
    s.add({DeclKind::constructor, "O", nat, nullptr, nullptr, Tag::diamond, nullptr});
    s.add({DeclKind::constructor, "S", mk_pi("n", Tag::diamond, nat, nat), nullptr, nullptr, Tag::diamond, nullptr});
    s.add({DeclKind::data_type, "bool", mk_type(0), nullptr, nullptr, Tag::diamond, nullptr});
    s.add({DeclKind::constructor, "true", boolean, nullptr, nullptr, Tag::diamond, nullptr});
    s.add({DeclKind::constructor, "false", boolean, nullptr, nullptr, Tag::diamond, nullptr});
    return s;
  }

  const Declaration* find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &decls_[it->second];
  }
  bool contains(const std::string& name) const { return index_.count(name) != 0; }

  void add(Declaration d) {
    if (contains(d.name)) throw std::invalid_argument("duplicate declaration: " + d.name);
    index_.emplace(d.name, decls_.size());
    decls_.push_back(std::move(d));
  }

  std::size_t size() const { return decls_.size(); }
  auto begin() const { return decls_.begin(); }
  auto end() const { return decls_.end(); }

 private:
  std::vector<Declaration> decls_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline Term nat_type() { return mk_const("nat", Tag::diamond); }
inline Term bool_type() { return mk_const("bool", Tag::diamond); }
inline Term nat_zero() { return mk_const("O", Tag::diamond); }
inline Term nat_succ(Term n) { return mk_app(mk_const("S", Tag::diamond), std::move(n)); }
inline Term bool_true() { return mk_const("true", Tag::diamond); }
inline Term bool_false() { return mk_const("false", Tag::diamond); }

inline Term numeral(std::uint32_t n) {
  Term t = nat_zero();
  for (std::uint32_t i = 0; i < n; ++i) t = nat_succ(t);
  return t;
}

}  // namespace irr

#endif  // IRR_TERM_HPP
