#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperseq {

enum class Op : std::uint8_t { Bot, Atom, Neg, And, Box };

// Immutable modal formula over the primitive connectives. Copies share structure.
class Formula {
 public:
  Formula();  // bottom

  static Formula bot();
  static Formula atom(std::string name);
  static Formula neg(const Formula& a);
  static Formula conj(const Formula& a, const Formula& b);
  static Formula box(const Formula& a);

  // Derived connectives, expanded to primitives.
  static Formula top();                                  // ~bot
  static Formula disj(const Formula& a, const Formula& b);  // ~(~a & ~b)
  static Formula imp(const Formula& a, const Formula& b);   // ~(a & ~b)
  static Formula dia(const Formula& a);                  // ~box ~a

  Op op() const;
  const std::string& name() const;  // atoms only
  const Formula& sub() const;       // Neg/Box child
  const Formula& left() const;      // And
  const Formula& right() const;     // And

  bool is(Op o) const { return op() == o; }
  bool is_boxed() const { return op() == Op::Box; }

  // Number of Neg, And and Box nodes.
  int degree() const;
  std::size_t size() const;
  std::size_t hash() const;

  // Total order used for canonical multiset forms.
  int compare(const Formula& other) const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  friend bool operator<(const Formula& a, const Formula& b) { return a.compare(b) < 0; }

  void collect_atoms(std::set<std::string>& out) const;
  void collect_subformulas(std::set<Formula>& out) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n);
  std::shared_ptr<const Node> n_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, const std::string& msg);
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

Formula parse_formula(std::string_view text);

// ASCII rendering; re-sugars implication, disjunction and diamond patterns so
// that parse_formula(to_string(f)) == f.
std::string to_string(const Formula& f);

// Rendering with only the primitive connectives.
std::string to_primitive_string(const Formula& f);

}  // namespace hyperseq

template <>
struct std::hash<hyperseq::Formula> {
  std::size_t operator()(const hyperseq::Formula& f) const noexcept { return f.hash(); }
};
