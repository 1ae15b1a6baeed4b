#pragma once

// Recursive-descent parser for the formula grammar documented in formula.hpp.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "zol/errors.hpp"
#include "zol/formula.hpp"

namespace zol {

namespace detail {

enum class Tok { Ident, Forall, Exists, True, False, LParen, RParen, Comma, Dot, Not, And, Or, Implies, Iff, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Forall: return "'forall'";
    case Tok::Exists: return "'exists'";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Eq: return "'='";
    case Tok::End: return "end of input";
  }
  return "?";
}

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      std::string word(text.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (word == "forall") kind = Tok::Forall;
      else if (word == "exists") kind = Tok::Exists;
      else if (word == "true") kind = Tok::True;
      else if (word == "false") kind = Tok::False;
      out.push_back({kind, word, l, cl});
      advance(j - i);
      continue;
    }
    auto single = [&](Tok kind) {
      out.push_back({kind, std::string(1, c), l, cl});
      advance(1);
    };
    switch (c) {
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case ',': single(Tok::Comma); continue;
      case '.': single(Tok::Dot); continue;
      case '~': single(Tok::Not); continue;
      case '&': single(Tok::And); continue;
      case '|': single(Tok::Or); continue;
      case '=': single(Tok::Eq); continue;
      default: break;
    }
    if (text.substr(i, 2) == "->") {
      out.push_back({Tok::Implies, "->", l, cl});
      advance(2);
      continue;
    }
    if (text.substr(i, 3) == "<->") {
      out.push_back({Tok::Iff, "<->", l, cl});
      advance(3);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : tokens_(tokenize(text)) {}

  Formula parse_all() {
    Formula f = formula();
    expect(Tok::End);
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  const Token& expect(Tok kind) {
    const Token& t = peek();
    if (t.kind != kind) {
      throw ParseError(std::string("expected ") + describe(kind) + ", found " + describe(t.kind), t.line, t.column);
    }
    ++pos_;
    return t;
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  Formula formula() {
    if (peek().kind == Tok::Forall || peek().kind == Tok::Exists) return quant();
    return iff();
  }

  Formula quant() {
    const bool is_exists = peek().kind == Tok::Exists;
    ++pos_;
    std::string var = expect(Tok::Ident).text;
    expect(Tok::Dot);
    Formula body = formula();
    return is_exists ? Formula::exists(std::move(var), std::move(body)) : Formula::forall(std::move(var), std::move(body));
  }

  Formula iff() {
    Formula lhs = imp();
    while (accept(Tok::Iff)) lhs = Formula::biconditional(std::move(lhs), imp());
    return lhs;
  }

  Formula imp() {
    Formula lhs = disj();
    if (accept(Tok::Implies)) return Formula::implication(std::move(lhs), imp());
    return lhs;
  }

  Formula disj() {
    Formula lhs = conj();
    while (accept(Tok::Or)) lhs = Formula::disjunction(std::move(lhs), conj());
    return lhs;
  }

  Formula conj() {
    Formula lhs = unary();
    while (accept(Tok::And)) lhs = Formula::conjunction(std::move(lhs), unary());
    return lhs;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::negation(unary());
    if (peek().kind == Tok::Forall || peek().kind == Tok::Exists) return quant();
    return atom();
  }

  Formula atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::True: ++pos_; return Formula::truth();
      case Tok::False: ++pos_; return Formula::falsity();
      case Tok::LParen: {
        ++pos_;
        Formula f = formula();
        expect(Tok::RParen);
        return f;
      }
      case Tok::Ident: {
        std::string name = t.text;
        ++pos_;
        if (accept(Tok::Eq)) return Formula::equal(std::move(name), expect(Tok::Ident).text);
        expect(Tok::LParen);
        std::vector<std::string> vars{expect(Tok::Ident).text};
        while (accept(Tok::Comma)) vars.push_back(expect(Tok::Ident).text);
        expect(Tok::RParen);
        return Formula::atom(std::move(name), std::move(vars));
      }
      default:
        throw ParseError(std::string("expected a formula, found ") + describe(t.kind), t.line, t.column);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text) { return detail::FormulaParser(text).parse_all(); }

}  // namespace zol
