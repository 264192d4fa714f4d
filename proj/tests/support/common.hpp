#ifndef IRR_TESTS_COMMON_HPP
#define IRR_TESTS_COMMON_HPP

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "irr/irr.hpp"

#ifndef IRR_CORPUS_DIR
#error "IRR_CORPUS_DIR must point at the corpus directory"
#endif

namespace irr::support {

inline std::string corpus_path(const std::string& name) { return std::string(IRR_CORPUS_DIR) + "/" + name; }

/// Top-level corpus files, all of which check under default flags.
inline std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(IRR_CORPUS_DIR))
    if (e.is_regular_file() && e.path().extension() == ".irr") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

/// Session holding the signature built by a corpus file; throws if it fails.
inline frontend::Session load(const std::string& name, frontend::Flags flags = {}) {
  frontend::Session s(flags);
  frontend::Report r = frontend::run_file(corpus_path(name), flags, &s);
  if (r.exit_code != 0) throw std::runtime_error(name + " failed:\n" + r.text());
  return s;
}

/// Session over `source` given inline.
inline frontend::Session session(const std::string& source, frontend::Flags flags = {}) {
  frontend::Session s(flags);
  frontend::Report r = frontend::run_source(source, "<inline>", flags, &s);
  if (r.exit_code != 0) throw std::runtime_error("inline source failed:\n" + r.text());
  return s;
}

/// The refl proof λA:Type(0).λx:A.λP:A→Prop.λp:(P x).p, built directly.
inline Term refl_term() {
  using namespace build;
  Term A = var("A", Tag::diamond), x = var("x", Tag::diamond);
  Term P = var("P", Tag::diamond), p = var("p", Tag::star);
  Term PA = arrow(Tag::diamond, A, mk_prop());
  return lam(A, mk_type(0), lam(x, A, lam(P, PA, lam(p, mk_app(P, x), p))));
}

/// Its type ΠA:Type(0).Πx:A.ΠP:A→Prop.(P x)→(P x).
inline Term refl_type() {
  using namespace build;
  Term A = var("A", Tag::diamond), x = var("x", Tag::diamond), P = var("P", Tag::diamond);
  Term Px = mk_app(P, x);
  return pi(A, mk_type(0), pi(x, A, pi(P, arrow(Tag::diamond, A, mk_prop()), arrow(Tag::star, Px, Px))));
}

}  // namespace irr::support

#endif  // IRR_TESTS_COMMON_HPP
