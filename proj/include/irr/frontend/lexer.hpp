#ifndef IRR_FRONTEND_LEXER_HPP
#define IRR_FRONTEND_LEXER_HPP

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "irr/frontend/syntax.hpp"

namespace irr::frontend {

class ParseError : public std::runtime_error {
 public:
  ParseError(Loc loc, std::string detail, std::vector<std::string> expected = {})
      : std::runtime_error(detail), loc(loc), detail(std::move(detail)), expected(std::move(expected)) {}
  Loc loc;
  std::string detail;
  std::vector<std::string> expected;

  std::string message() const {
    std::string m = detail;
    if (!expected.empty()) {
      m += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) m += (i ? ", " : "") + expected[i];
      m += ")";
    }
    return m;
  }
};

struct Token {
  enum class Kind : std::uint8_t { ident, number, directive, symbol, end };
  Kind kind = Kind::end;
  std::string text;
  Loc loc;
};

inline std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::end: return "end of input";
    case Token::Kind::number: return "number " + t.text;
    default: return "'" + t.text + "'";
  }
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  static const char* symbols[] = {":=", "=>", "->", "(", ")", "[", "]", "{", "}", ":", ",", "*", "|", "@"};

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.loc = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = Token::Kind::ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::Kind::number;
      t.text = std::string(src.substr(i, j - i));
      if (t.text.size() > 6) throw ParseError(t.loc, "numeral too large");
      advance(j - i);
    } else if (c == '#') {
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = Token::Kind::directive;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (src.substr(i, 2) == "\xCE\xB5") {
      throw ParseError(t.loc, "the extraction placeholder cannot be written in source");
    } else {
      bool matched = false;
      for (const char* s : symbols) {
        std::string_view sv(s);
        if (src.substr(i, sv.size()) == sv) {
          t.kind = Token::Kind::symbol;
          t.text = std::string(sv);
          advance(sv.size());
          matched = true;
          break;
        }
      }
      if (!matched) throw ParseError(t.loc, "unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.loc = {line, col};
  out.push_back(end);
  return out;
}

}  // namespace irr::frontend

#endif  // IRR_FRONTEND_LEXER_HPP
