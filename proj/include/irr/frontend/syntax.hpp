#ifndef IRR_FRONTEND_SYNTAX_HPP
#define IRR_FRONTEND_SYNTAX_HPP

// Untagged surface terms and vernacular commands.

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace irr::frontend {

struct Loc {
  int line = 1;
  int col = 1;
};

struct SExpr;
using SPtr = std::shared_ptr<const SExpr>;

// Field use per kind:
//   var       name, level (when has_level)
//   type      level
//   num       level (the numeral)
//   lam, pi, sigma, subset   name, a = domain, b = body
//   arrow, prod              a, b
//   app       a = function, b = argument
//   pair      a = annotation (may be null), b, c
//   fst, snd  a
struct SExpr {
  enum class Kind : std::uint8_t { var, prop, type, num, lam, pi, sigma, subset, arrow, prod, app, pair, fst, snd };
  Kind kind = Kind::var;
  std::string name;
  std::uint32_t level = 0;
  bool has_level = false;
  SPtr a, b, c;
  Loc loc;
};

inline SPtr make(SExpr e) { return std::make_shared<const SExpr>(std::move(e)); }

/// A binder group `(x y : A)`.
struct BinderGroup {
  std::vector<std::string> names;
  SPtr type;
  Loc loc;
};

struct Command {
  enum class Kind : std::uint8_t {
    def,
    axiom,
    propdata,
    check,
    infer,
    normalize,
    extract,
    convert,
    mu,
    coerce,
    tcc,
    model,
  };
  Kind kind = Kind::def;
  Loc loc;
  std::string name;        // declarations
  SPtr term;               // body, or the directive's subject
  SPtr type;               // declared or ascribed type
  SPtr other;              // second term of #convert
  std::vector<BinderGroup> params;  // propdata indices
  std::string ctor;                 // propdata constructor
  std::vector<BinderGroup> args;    // propdata constructor arguments
};

inline const char* command_name(Command::Kind k) {
  switch (k) {
    case Command::Kind::def: return "def";
    case Command::Kind::axiom: return "axiom";
    case Command::Kind::propdata: return "propdata";
    case Command::Kind::check: return "#check";
    case Command::Kind::infer: return "#infer";
    case Command::Kind::normalize: return "#normalize";
    case Command::Kind::extract: return "#extract";
    case Command::Kind::convert: return "#convert";
    case Command::Kind::mu: return "#mu";
    case Command::Kind::coerce: return "#coerce";
    case Command::Kind::tcc: return "#tcc";
    case Command::Kind::model: return "#model";
  }
  return "?";
}

}  // namespace irr::frontend

#endif  // IRR_FRONTEND_SYNTAX_HPP
