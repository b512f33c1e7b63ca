#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hyperseq/formula.hpp"
#include "hyperseq/sequent.hpp"

namespace hyperseq::detail {

enum class Tok {
  Ident, Bot, Neg, Box, Dia, And, Or, Imp, LParen, RParen, Comma,
  Modal, Plain, Bar, End
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

std::vector<Token> lex(std::string_view text);

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Formula formula();
  Sequent sequent();
  Hypersequent hypersequent();
  void expect_end();

 private:
  const Token& peek() const { return toks_[i_]; }
  bool accept(Tok k);
  [[noreturn]] void fail(const std::string& msg) const;

  Formula imp();
  Formula disj();
  Formula conj();
  Formula unary();
  std::vector<Formula> formula_list();
  bool starts_formula() const;

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace hyperseq::detail
