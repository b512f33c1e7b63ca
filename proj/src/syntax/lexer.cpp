#include "lexer.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace hyperseq::detail {

namespace {

struct Spelling {
  std::string_view text;
  Tok kind;
};

// Longest spellings first so that "||" wins over "|".
constexpr std::array<Spelling, 20> kSymbols{{
    {"\xE2\x87\x92", Tok::Modal},  // ⇒
    {"\xE2\x86\x92", Tok::Plain},  // →
    {"\xE2\x88\xA7", Tok::And},    // ∧
    {"\xE2\x88\xA8", Tok::Or},     // ∨
    {"\xE2\x8A\x83", Tok::Imp},    // ⊃
    {"\xE2\x96\xA1", Tok::Box},    // □
    {"\xE2\x97\x87", Tok::Dia},    // ◇
    {"\xE2\x8A\xA5", Tok::Bot},    // ⊥
    {"\xC2\xAC", Tok::Neg},        // ¬
    {"||", Tok::Bar},
    {"=>", Tok::Modal},
    {"->", Tok::Plain},
    {"<>", Tok::Dia},
    {"~", Tok::Neg},
    {"&", Tok::And},
    {"|", Tok::Or},
    {">", Tok::Imp},
    {"(", Tok::LParen},
    {")", Tok::RParen},
    {",", Tok::Comma},
}};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
      continue;
    }
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (word == "bot") kind = Tok::Bot;
      else if (word == "box") kind = Tok::Box;
      else if (word == "dia") kind = Tok::Dia;
      out.push_back({kind, i, std::move(word)});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& s : kSymbols) {
      if (text.substr(i).starts_with(s.text)) {
        out.push_back({s.kind, i, std::string(s.text)});
        i += s.text.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(i, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, text.size(), ""});
  return out;
}

bool Parser::accept(Tok k) {
  if (peek().kind != k) return false;
  ++i_;
  return true;
}

void Parser::fail(const std::string& msg) const {
  const Token& t = peek();
  throw ParseError(t.pos, msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"));
}

void Parser::expect_end() {
  if (peek().kind != Tok::End) fail("trailing input");
}

Formula Parser::formula() { return imp(); }

Formula Parser::imp() {
  Formula lhs = disj();
  if (accept(Tok::Imp)) return Formula::imp(lhs, imp());
  return lhs;
}

Formula Parser::disj() {
  Formula lhs = conj();
  while (accept(Tok::Or)) lhs = Formula::disj(lhs, conj());
  return lhs;
}

Formula Parser::conj() {
  Formula lhs = unary();
  while (accept(Tok::And)) lhs = Formula::conj(lhs, unary());
  return lhs;
}

Formula Parser::unary() {
  const Token& t = peek();
  switch (t.kind) {
    case Tok::Neg: ++i_; return Formula::neg(unary());
    case Tok::Box: ++i_; return Formula::box(unary());
    case Tok::Dia: ++i_; return Formula::dia(unary());
    case Tok::Bot: ++i_; return Formula::bot();
    case Tok::Ident: {
      std::string name = t.text;
      ++i_;
      return Formula::atom(std::move(name));
    }
    case Tok::LParen: {
      ++i_;
      Formula f = imp();
      if (!accept(Tok::RParen)) fail("expected ')'");
      return f;
    }
    default: fail("expected a formula");
  }
}

bool Parser::starts_formula() const {
  switch (peek().kind) {
    case Tok::Neg: case Tok::Box: case Tok::Dia: case Tok::Bot:
    case Tok::Ident: case Tok::LParen:
      return true;
    default:
      return false;
  }
}

std::vector<Formula> Parser::formula_list() {
  std::vector<Formula> out;
  if (!starts_formula()) return out;
  out.push_back(formula());
  while (accept(Tok::Comma)) out.push_back(formula());
  return out;
}

Sequent Parser::sequent() {
  Sequent s;
  s.ant = formula_list();
  if (accept(Tok::Modal)) s.sort = Sort::Modal;
  else if (accept(Tok::Plain)) s.sort = Sort::Plain;
  else fail("expected '=>' or '->'");
  s.suc = formula_list();
  return s;
}

Hypersequent Parser::hypersequent() {
  Hypersequent h;
  h.seqs.push_back(sequent());
  while (accept(Tok::Bar)) h.seqs.push_back(sequent());
  return h;
}

}  // namespace hyperseq::detail
