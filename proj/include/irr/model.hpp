#ifndef IRR_MODEL_HPP
#define IRR_MODEL_HPP

// Set-theoretic semantics over hereditarily finite sets. Proofs denote ∅,
// Prop denotes {∅, 𝕀}, impredicative products are intersections and
// predicative ones are finite function spaces. Carriers are truncated at a
// rank bound; anything beyond it is reported rather than approximated.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irr/typecheck.hpp"

namespace irr {

/// Hereditarily finite set with a canonical (sorted, duplicate-free) layout.
class HFSet {
 public:
  HFSet() : elems_(empty_storage()) {}
  explicit HFSet(std::vector<HFSet> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    rank_ = 0;
    for (const HFSet& e : elems) rank_ = std::max(rank_, e.rank_ + 1);
    elems_ = std::make_shared<const std::vector<HFSet>>(std::move(elems));
  }

  static HFSet of(std::initializer_list<HFSet> xs) { return HFSet(std::vector<HFSet>(xs)); }
  static HFSet empty() { return HFSet(); }
  /// 𝕀 = {∅}
  static HFSet unit() { return of({HFSet()}); }

  const std::vector<HFSet>& elements() const { return *elems_; }
  std::size_t size() const { return elems_->size(); }
  bool is_empty() const { return elems_->empty(); }
  std::uint32_t rank() const { return rank_; }

  bool contains(const HFSet& x) const { return std::binary_search(elems_->begin(), elems_->end(), x); }

  friend int compare(const HFSet& a, const HFSet& b) {
    if (a.elems_ == b.elems_) return 0;
    if (a.rank_ != b.rank_) return a.rank_ < b.rank_ ? -1 : 1;
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (int c = compare((*a.elems_)[i], (*b.elems_)[i])) return c;
    return 0;
  }
  friend bool operator==(const HFSet& a, const HFSet& b) { return compare(a, b) == 0; }
  friend bool operator<(const HFSet& a, const HFSet& b) { return compare(a, b) < 0; }

  /// Kuratowski pair {{a},{a,b}}.
  static HFSet pair(const HFSet& a, const HFSet& b) { return of({of({a}), of({a, b})}); }

  std::optional<std::pair<HFSet, HFSet>> unpair() const {
    if (size() == 1) {
      const HFSet& s = (*elems_)[0];
      if (s.size() != 1) return std::nullopt;
      return std::make_pair(s.elements()[0], s.elements()[0]);
    }
    if (size() != 2) return std::nullopt;
    const HFSet& s = (*elems_)[0];
    const HFSet& t = (*elems_)[1];
    if (s.size() != 1 || t.size() != 2 || !t.contains(s.elements()[0])) return std::nullopt;
    const HFSet& a = s.elements()[0];
    return std::make_pair(a, t.elements()[0] == a ? t.elements()[1] : t.elements()[0]);
  }

  /// Von Neumann numeral n.
  static HFSet numeral(std::uint32_t n) {
    std::vector<HFSet> xs;
    for (std::uint32_t i = 0; i < n; ++i) xs.push_back(HFSet(xs));
    return HFSet(xs);
  }

  std::string to_string() const {
    if (is_empty()) return "0";
    if (*this == unit()) return "I";
    std::string s = "{";
    for (std::size_t i = 0; i < size(); ++i) s += (i ? "," : "") + (*elems_)[i].to_string();
    return s + "}";
  }

 private:
  static std::shared_ptr<const std::vector<HFSet>> empty_storage() {
    static const auto e = std::make_shared<const std::vector<HFSet>>();
    return e;
  }
  std::shared_ptr<const std::vector<HFSet>> elems_;
  std::uint32_t rank_ = 0;
};

class ModelError : public std::runtime_error {
 public:
  enum class Kind : std::uint8_t { NotFinitelyModelable, Undefined, ModelViolation };
  ModelError(Kind kind, const std::string& why)
      : std::runtime_error(name(kind) + std::string(": ") + why), kind(kind), detail(why) {}
  static const char* name(Kind k) {
    switch (k) {
      case Kind::NotFinitelyModelable: return "NotFinitelyModelable";
      case Kind::Undefined: return "Undefined";
      case Kind::ModelViolation: return "ModelViolation";
    }
    return "?";
  }
  Kind kind;
  std::string detail;
};

struct ModelOptions {
  std::uint32_t bound = 3;               // rank of the Type(0) stratum; nat is {0, …, bound-1}
  std::size_t max_function_space = 4096;  // largest enumerated dependent product
};

struct Value;
using Valuation = std::map<std::uint64_t, Value>;

/// A denotation: a finite set, a universe stratum (membership only), or a
/// λ-closure that is materialized into a graph on demand.
struct Value {
  enum class Kind : std::uint8_t { set, universe, closure } kind = Kind::set;
  HFSet set;
  std::uint32_t level = 0;
  Term lam;
  std::shared_ptr<const Valuation> env;
  std::shared_ptr<const Context> ctx;

  static Value of(HFSet s) {
    Value v;
    v.set = std::move(s);
    return v;
  }
  static Value universe(std::uint32_t level) {
    Value v;
    v.kind = Kind::universe;
    v.level = level;
    return v;
  }
};

class Model {
 public:
  Model(const Kernel& kernel, ModelOptions opts = {}) : k_(kernel), opts_(opts) {}

  HFSet nat_carrier() const {
    std::vector<HFSet> xs;
    for (std::uint32_t i = 0; i < opts_.bound; ++i) xs.push_back(HFSet::numeral(i));
    return HFSet(xs);
  }
  static HFSet prop_carrier() { return HFSet::of({HFSet::empty(), HFSet::unit()}); }

  /// |t| under valuation I in context ctx.
  Value interp(const Context& ctx, const Term& t, const Valuation& I) const {
    Context c = ctx;
    return eval(c, t, I);
  }

  HFSet interp_set(const Context& ctx, const Term& t, const Valuation& I) const {
    return to_set(interp(ctx, t, I));
  }

  /// |t| ∈ |T|; throws ModelViolation otherwise.
  void check_model(const Context& ctx, const Term& t, const Term& T, const Valuation& I) const {
    Value v = interp(ctx, t, I);
    Value S = interp(ctx, T, I);
    if (!member(v, S)) throw ModelError(ModelError::Kind::ModelViolation, "denotation is not in the denotation of its type");
  }

  bool equal(const Value& a, const Value& b) const {
    if (a.kind == Value::Kind::universe || b.kind == Value::Kind::universe)
      return a.kind == b.kind && a.level == b.level;
    return to_set(a) == to_set(b);
  }

  /// Materializes a value as a finite set.
  HFSet to_set(const Value& v) const {
    switch (v.kind) {
      case Value::Kind::set:
        return v.set;
      case Value::Kind::universe:
        nfm("a universe has no finite carrier");
      case Value::Kind::closure: {
        Context c = *v.ctx;
        HFSet dom = to_set(eval(c, v.lam->a, *v.env));
        std::vector<HFSet> graph;
        for (const HFSet& x : dom.elements()) graph.push_back(HFSet::pair(x, to_set(apply(v, Value::of(x)))));
        return HFSet(graph);
      }
    }
    return {};
  }

  bool member(const Value& x, const Value& S) const {
    if (S.kind == Value::Kind::universe) {
      if (x.kind == Value::Kind::universe) return x.level < S.level;
      HFSet xs = to_set(x);
      if (xs.rank() > opts_.bound + S.level) nfm("element exceeds the Type(" + std::to_string(S.level) + ") stratum");
      return true;
    }
    if (S.kind == Value::Kind::closure) undefined("membership in a function");
    if (x.kind == Value::Kind::universe) return false;
    return S.set.contains(to_set(x));
  }

 private:
  [[noreturn]] static void nfm(const std::string& why) { throw ModelError(ModelError::Kind::NotFinitelyModelable, why); }
  [[noreturn]] static void undefined(const std::string& why) { throw ModelError(ModelError::Kind::Undefined, why); }

  Value apply(const Value& f, const Value& a) const {
    if (f.kind == Value::Kind::closure) {
      Context c = *f.ctx;
      Value dom = eval(c, f.lam->a, *f.env);
      if (!member(a, dom)) undefined("argument outside the function's domain");
      Term v = c.push(f.lam->name, f.lam->tag, f.lam->a);
      Valuation env = *f.env;
      env[v->id] = a;
      return eval(c, instantiate(f.lam->b, v), env);
    }
    if (f.kind != Value::Kind::set) undefined("application of a universe");
    HFSet x = to_set(a);
    for (const HFSet& p : f.set.elements()) {
      auto kv = p.unpair();
      if (kv && kv->first == x) return Value::of(kv->second);
    }
    undefined("application outside the graph");
  }

  std::uint32_t numeral_value(const HFSet& n) const {
    for (std::uint32_t i = 0; i < opts_.bound; ++i)
      if (HFSet::numeral(i) == n) return i;
    undefined("not a numeral");
  }

  Value eval(Context& ctx, const Term& t, const Valuation& I) const {
    if (tag_of(t, k_.options().mode) == Tag::star) return Value::of(HFSet::empty());
    switch (t->kind) {
      case Kind::sort:
        return t->is_prop ? Value::of(prop_carrier()) : Value::universe(t->level);
      case Kind::fvar: {
        auto it = I.find(t->id);
        if (it == I.end()) undefined("unassigned variable " + t->name);
        return it->second;
      }
      case Kind::lam: {
        Value v;
        v.kind = Value::Kind::closure;
        v.lam = t;
        v.env = std::make_shared<const Valuation>(I);
        v.ctx = std::make_shared<const Context>(ctx);
        return v;
      }
      case Kind::pi:
        return eval_pi(ctx, t, I);
      case Kind::sigma: {
        HFSet dom = to_set(eval(ctx, t->a, I));
        std::vector<HFSet> out;
        for (const HFSet& x : dom.elements()) {
          HFSet cod = body_set(ctx, t, I, x);
          for (const HFSet& y : cod.elements()) out.push_back(HFSet::pair(x, y));
        }
        return Value::of(HFSet(out));
      }
      case Kind::pair:
        return Value::of(HFSet::pair(to_set(eval(ctx, t->b, I)), to_set(eval(ctx, t->c, I))));
      case Kind::proj1:
      case Kind::proj2: {
        auto kv = to_set(eval(ctx, t->a, I)).unpair();
        if (!kv) undefined("projection of a non-pair");
        return Value::of(t->kind == Kind::proj1 ? kv->first : kv->second);
      }
      case Kind::app:
        return eval_app(ctx, t, I);
      case Kind::constant:
        return eval_const(ctx, t);
      case Kind::eqrec:
      case Kind::rec:
        nfm("unapplied eliminator");
      case Kind::bvar:
        undefined("loose bound variable");
      case Kind::eps:
        return Value::of(HFSet::empty());
    }
    undefined("unknown term");
  }

  /// |B|_{x←value} for the codomain B of a binder node.
  HFSet body_set(Context& ctx, const Term& binder, const Valuation& I, const HFSet& value) const {
    Term v = ctx.push(binder->name, binder->kind == Kind::sigma ? Tag::diamond : binder->tag, binder->a);
    struct Pop {
      Context& c;
      ~Pop() { c.pop(); }
    } pop{ctx};
    Valuation J = I;
    J[v->id] = Value::of(value);
    return to_set(eval(ctx, instantiate(binder->b, v), J));
  }

  Value eval_pi(Context& ctx, const Term& t, const Valuation& I) const {
    Term sort = k_.sort_of(ctx, t);
    HFSet dom = to_set(eval(ctx, t->a, I));
    if (sort->is_prop) {
      // ⋂ over the domain; the empty family denotes 𝕀
      HFSet acc = HFSet::unit();
      for (const HFSet& x : dom.elements()) {
        HFSet b = body_set(ctx, t, I, x);
        std::vector<HFSet> keep;
        for (const HFSet& e : acc.elements())
          if (b.contains(e)) keep.push_back(e);
        acc = HFSet(keep);
      }
      return Value::of(acc);
    }
    std::vector<std::vector<HFSet>> choices;
    std::size_t total = 1;
    for (const HFSet& x : dom.elements()) {
      HFSet b = body_set(ctx, t, I, x);
      std::vector<HFSet> opts;
      for (const HFSet& y : b.elements()) opts.push_back(HFSet::pair(x, y));
      total *= std::max<std::size_t>(opts.size(), 1);
      if (opts.empty()) total = 0;
      if (total > opts_.max_function_space) nfm("function space too large");
      choices.push_back(std::move(opts));
    }
    std::vector<HFSet> graphs;
    if (total == 0) return Value::of(HFSet());
    std::vector<std::size_t> idx(choices.size(), 0);
    for (;;) {
      std::vector<HFSet> g;
      for (std::size_t i = 0; i < choices.size(); ++i) g.push_back(choices[i][idx[i]]);
      graphs.push_back(HFSet(g));
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
    return Value::of(HFSet(graphs));
  }

  Value eval_const(Context& ctx, const Term& t) const {
    const Declaration* d = k_.signature().find(t->name);
    if (!d) undefined("unknown constant " + t->name);
    if (t->name == "nat") return Value::of(nat_carrier());
    if (t->name == "bool") return Value::of(prop_carrier());
    if (t->name == "O" || t->name == "false") return Value::of(HFSet::empty());
    if (t->name == "true") return Value::of(HFSet::unit());
    if (d->kind == DeclKind::definition) {
      Context empty;
      (void)ctx;
      return eval(empty, d->body, {});
    }
    nfm("no denotation for " + t->name);
  }

  Value eval_app(Context& ctx, const Term& t, const Valuation& I) const {
    std::vector<Term> args;
    Term head = app_spine(t, args);
    std::size_t used = 0;
    Value v;
    auto arg = [&](std::size_t i) { return eval(ctx, args[i], I); };
    if (head->kind == Kind::constant && head->name == "S") {
      std::uint32_t n = numeral_value(to_set(arg(0)));
      if (n + 1 >= opts_.bound) nfm("numeral beyond the model bound");
      v = Value::of(HFSet::numeral(n + 1));
      used = 1;
    } else if (head->kind == Kind::eqrec && args.size() >= 6) {
      v = arg(4);
      used = 6;
    } else if (head->kind == Kind::rec && head->name == "nat" && args.size() >= 4) {
      std::uint32_t n = numeral_value(to_set(arg(3)));
      v = arg(1);
      Value step = arg(2);
      for (std::uint32_t j = 0; j < n; ++j) v = apply(apply(step, Value::of(HFSet::numeral(j))), v);
      used = 4;
    } else if (head->kind == Kind::rec && head->name == "bool" && args.size() >= 4) {
      HFSet b = to_set(arg(3));
      if (b == HFSet::unit()) v = arg(1);
      else if (b.is_empty()) v = arg(2);
      else undefined("not a boolean");
      used = 4;
    } else {
      v = eval(ctx, head, I);
    }
    for (std::size_t i = used; i < args.size(); ++i) v = apply(v, arg(i));
    return v;
  }

  const Kernel& k_;
  ModelOptions opts_;
};

}  // namespace irr

#endif  // IRR_MODEL_HPP
