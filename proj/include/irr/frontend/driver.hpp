#ifndef IRR_FRONTEND_DRIVER_HPP
#define IRR_FRONTEND_DRIVER_HPP

// Runs vernacular files: declarations extend the signature in order,
// directives query it. Each command yields one report line.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "irr/frontend/elaborate.hpp"
#include "irr/frontend/parser.hpp"
#include "irr/frontend/printer.hpp"
#include "irr/model.hpp"
#include "irr/subset.hpp"

namespace irr::frontend {

struct Flags {
  std::uint64_t fuel = 100000;
  bool eta = false;
  bool singleton = false;
  bool propdata = false;
  std::uint32_t model_bound = 3;
  bool keep_going = false;
};

struct Entry {
  bool ok = true;
  std::string label;   // declaration name or directive
  std::string result;  // printed type / value
  Loc loc;
  std::string kind;  // error kind
  std::string detail;
};

enum ExitCode : int { exit_ok = 0, exit_type = 1, exit_parse = 2, exit_fuel = 3 };

struct Report {
  std::string file;
  std::vector<Entry> entries;
  int declarations = 0;
  int directives = 0;
  int exit_code = exit_ok;

  std::string text() const {
    std::ostringstream out;
    for (const Entry& e : entries) {
      if (e.ok)
        out << "OK " << e.label << " : " << e.result << "\n";
      else
        out << "ERROR " << file << ":" << e.loc.line << ":" << e.loc.col << " " << e.kind << " " << e.detail << "\n";
    }
    if (exit_code == exit_ok)
      out << "checked " << declarations << " declarations, " << directives << " directives\n";
    return out.str();
  }
};

class Session {
 public:
  explicit Session(Flags flags = {}) : flags_(flags), sig_(Signature::with_builtins()) {}

  const Signature& signature() const { return sig_; }
  const Flags& flags() const { return flags_; }

  KernelOptions options() const {
    KernelOptions o;
    o.fuel = flags_.fuel;
    o.mode.eta = flags_.eta;
    o.mode.singleton = flags_.singleton;
    o.propdata = flags_.propdata;
    return o;
  }

  /// Elaborates a closed surface term against the current signature.
  Term elaborate_term(const SPtr& e, const Term& expected = nullptr) const {
    Kernel k(sig_, options());
    Context ctx;
    return elaborate(k, ctx, e, expected);
  }

  Term elaborate_source(const std::string& src, const Term& expected = nullptr) const {
    return elaborate_term(parse_term(src), expected);
  }

  std::string show(const Term& t) const { return print(t, &sig_); }

  /// Runs one command; throws on failure.
  Entry run(const Command& c) {
    Kernel k(sig_, options());
    Context ctx;
    Elaborator el(k, ctx);
    Entry e;
    e.loc = c.loc;
    e.label = c.kind == Command::Kind::def || c.kind == Command::Kind::axiom || c.kind == Command::Kind::propdata
                  ? c.name
                  : command_name(c.kind);
    error_loc_ = c.loc;
    try {
      execute(c, k, ctx, el, e);
    } catch (...) {
      if (el.error_loc) error_loc_ = *el.error_loc;
      throw;
    }
    return e;
  }

  Loc last_error_loc() const { return error_loc_; }

 private:
  void execute(const Command& c, const Kernel& k, Context& ctx, Elaborator& el, Entry& e) {
    switch (c.kind) {
      case Command::Kind::def: {
        DeclarationRequest d;
        d.kind = DeclarationRequest::Kind::definition;
        d.name = c.name;
        if (c.type) {
          d.type = el.elaborate(c.type);
          k.sort_of(ctx, d.type);
        }
        d.body = el.elaborate(c.term, d.type);
        sig_ = check_declaration(sig_, d, options());
        e.result = show(sig_.find(c.name)->type);
        ++declarations;
        return;
      }
      case Command::Kind::axiom: {
        DeclarationRequest d;
        d.kind = DeclarationRequest::Kind::axiom;
        d.name = c.name;
        d.type = el.elaborate(c.type);
        sig_ = check_declaration(sig_, d, options());
        e.result = show(d.type);
        ++declarations;
        return;
      }
      case Command::Kind::propdata: {
        DeclarationRequest d;
        d.kind = DeclarationRequest::Kind::prop_data;
        d.name = c.name;
        d.ctor = c.ctor;
        SPtr arity = make(SExpr{SExpr::Kind::prop, {}, 0, false, nullptr, nullptr, nullptr, c.loc});
        d.type = el.elaborate(wrap_pis(c.params, arity));
        if (!flags_.propdata)
          throw TypeError(ErrorKind::IllFormedDeclaration, "prop-data declarations are disabled (use --propdata)");
        Signature scratch = sig_;
        if (scratch.contains(c.name)) throw TypeError(ErrorKind::IllFormedDeclaration, c.name + " is already declared");
        scratch.add({DeclKind::axiom, c.name, d.type, nullptr, nullptr, Tag::diamond, nullptr});
        Kernel ks(scratch, options());
        Elaborator es(ks, ctx);
        try {
          d.ctor_type = es.elaborate(wrap_pis(c.args, c.type));
        } catch (...) {
          el.error_loc = es.error_loc;
          throw;
        }
        sig_ = check_declaration(sig_, d, options());
        e.result = show(d.type);
        ++declarations;
        return;
      }
      case Command::Kind::check: {
        Term T = el.elaborate(c.type);
        k.sort_of(ctx, T);
        Term t = el.elaborate(c.term, T);
        k.check(ctx, t, T);
        e.result = show(T);
        break;
      }
      case Command::Kind::infer: {
        Term t = el.elaborate(c.term);
        e.result = show(k.infer(ctx, t));
        break;
      }
      case Command::Kind::normalize: {
        Term t = el.elaborate(c.term);
        k.infer(ctx, t);
        e.result = show(normalize_or_throw(k, t));
        break;
      }
      case Command::Kind::extract: {
        Term t = el.elaborate(c.term);
        k.infer(ctx, t);
        e.result = show(eps_normalize(t, k.options().mode));
        break;
      }
      case Command::Kind::convert: {
        Term t = el.elaborate(c.term);
        Term T = k.infer(ctx, t);
        Term u = el.elaborate(c.other, T);
        k.infer(ctx, u);
        if (!k.convert(t, u))
          throw TypeError(ErrorKind::NotConvertible, show(t) + " and " + show(u) + " are not convertible");
        e.result = "convertible";
        break;
      }
      case Command::Kind::mu:
      case Command::Kind::coerce:
      case Command::Kind::tcc: {
        Term A = el.elaborate(c.term);
        k.sort_of(ctx, A);
        Subset s(k);
        if (c.kind == Command::Kind::mu) {
          e.result = show(s.mu(A));
        } else if (c.kind == Command::Kind::coerce) {
          Term up = s.mu_bar(A);
          k.check(ctx, up, s.mu_bar_type(A));
          e.result = show(up);
        } else {
          Kernel ke(sig_, eta_options(options()));
          Subset se(ke);
          Term down = se.pi_bar(A);
          ke.check(ctx, down, se.pi_bar_type(A));
          e.result = show(se.pi_pred(A));
        }
        break;
      }
      case Command::Kind::model: {
        Term T = el.elaborate(c.type);
        k.sort_of(ctx, T);
        Term t = el.elaborate(c.term, T);
        k.check(ctx, t, T);
        Model m(k, ModelOptions{flags_.model_bound});
        Value v = m.interp(ctx, t, {});
        Value S = m.interp(ctx, T, {});
        if (!m.member(v, S)) throw ModelError(ModelError::Kind::ModelViolation, "denotation outside its type");
        e.result = m.to_set(v).to_string();
        break;
      }
    }
    ++directives;
  }

  static SPtr wrap_pis(const std::vector<BinderGroup>& groups, SPtr body) {
    for (auto g = groups.rbegin(); g != groups.rend(); ++g) {
      for (auto n = g->names.rbegin(); n != g->names.rend(); ++n)
        body = make(SExpr{SExpr::Kind::pi, *n, 0, false, g->type, body, nullptr, g->loc});
    }
    return body;
  }

  static Term normalize_or_throw(const Kernel& k, const Term& t) {
    try {
      return k.normalize(t);
    } catch (FuelExhausted&) {
      throw TypeError(ErrorKind::FuelExhausted, "normalization did not finish within the fuel budget");
    }
  }

 public:
  int declarations = 0;
  int directives = 0;

 private:
  Flags flags_;
  Signature sig_;
  Loc error_loc_;
};

/// Processes `source` command by command.
inline Report run_source(const std::string& source, const std::string& file, const Flags& flags, Session* out = nullptr) {
  Report r;
  r.file = file;
  std::vector<Command> cmds;
  try {
    cmds = parse(source);
  } catch (const ParseError& e) {
    r.entries.push_back({false, "", "", e.loc, "ParseError", e.message()});
    r.exit_code = exit_parse;
    return r;
  }
  Session local(flags);
  Session& s = out ? *out : local;
  if (out) *out = Session(flags);
  for (const Command& c : cmds) {
    Entry err;
    err.ok = false;
    int code = exit_type;
    try {
      r.entries.push_back(s.run(c));
      continue;
    } catch (const TypeError& e) {
      err.kind = error_kind_name(e.kind);
      err.detail = e.detail;
      bool mismatch = e.kind == ErrorKind::NotASubtype || e.kind == ErrorKind::NotConvertible;
      if (mismatch && e.expected && e.actual) err.detail += ": expected " + s.show(e.expected) + ", found " + s.show(e.actual);
      if (e.kind == ErrorKind::FuelExhausted) code = exit_fuel;
    } catch (const ElabError& e) {
      err.kind = e.kind;
      err.detail = e.what();
    } catch (const NoSupertype& e) {
      err.kind = "NoSupertype";
      err.detail = e.detail;
    } catch (const ModelError& e) {
      err.kind = ModelError::name(e.kind);
      err.detail = e.detail;
    }
    err.loc = s.last_error_loc();
    err.label = command_name(c.kind);
    r.entries.push_back(err);
    if (r.exit_code == exit_ok) r.exit_code = code;
    if (!flags.keep_going) break;
  }
  r.declarations = s.declarations;
  r.directives = s.directives;
  return r;
}

inline Report run_file(const std::string& path, const Flags& flags, Session* out = nullptr) {
  std::ifstream in(path);
  if (!in) {
    Report r;
    r.file = path;
    r.entries.push_back({false, "", "", {0, 0}, "IOError", "cannot open file"});
    r.exit_code = exit_parse;
    return r;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return run_source(buf.str(), path, flags, out);
}

}  // namespace irr::frontend

#endif  // IRR_FRONTEND_DRIVER_HPP
