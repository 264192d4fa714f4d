#ifndef IRR_CONVERT_HPP
#define IRR_CONVERT_HPP

// Relaxed conversion =βε (pre-cook, normalize, compare) and syntactic
// subtyping ≤.

#include "irr/reduce.hpp"

namespace irr {

inline bool convertible(const Env& env, const Term& t, const Term& u, Budget& budget) {
  if (alpha_eq(t, u)) return true;
  Term t1 = eps_normalize(t, env.mode);
  Term u1 = eps_normalize(u, env.mode);
  if (alpha_eq(t1, u1)) return true;
  Term t2 = detail::nf(env, t1, budget);
  Term u2 = detail::nf(env, u1, budget);
  if (alpha_eq(t2, u2)) return true;
  if (!env.mode.eta) return false;
  return alpha_eq(eta_normalize(t2), eta_normalize(u2));
}

/// t =βε u. Throws FuelExhausted when undecided within the budget.
inline bool convert(const Env& env, const Term& t, const Term& u, std::uint64_t fuel) {
  Budget b(fuel);
  return convertible(env, t, u, b);
}

/// Conversion extended with η.
inline bool convert_eta(const Env& env, const Term& t, const Term& u, std::uint64_t fuel) {
  Env e = env;
  e.mode.eta = true;
  return convert(e, t, u, fuel);
}

inline bool subtype(const Env& env, const Term& t, const Term& u, Budget& budget) {
  if (alpha_eq(t, u)) return true;
  Term a = whnf(env, t, budget);
  Term b = whnf(env, u, budget);
  if (a->kind == Kind::sort && b->kind == Kind::sort) {
    if (a->is_prop || b->is_prop) return a->is_prop && b->is_prop;
    return a->level <= b->level;
  }
  if (a->kind == Kind::pi && b->kind == Kind::pi) {
    if (a->tag != b->tag) return false;
    return convertible(env, a->a, b->a, budget) && subtype(env, a->b, b->b, budget);
  }
  return convertible(env, a, b, budget);
}

/// t ≤ u: cumulativity of Type(i), covariant in product codomains, modulo =βε.
inline bool subtype(const Env& env, const Term& t, const Term& u, std::uint64_t fuel) {
  Budget b(fuel);
  return subtype(env, t, u, b);
}

}  // namespace irr

#endif  // IRR_CONVERT_HPP
