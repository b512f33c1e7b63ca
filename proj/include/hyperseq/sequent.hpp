#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hyperseq/formula.hpp"

namespace hyperseq {

enum class Sort : std::uint8_t { Modal, Plain };  // "=>" and "->"
enum class Side : std::uint8_t { Ant, Suc };

const char* arrow(Sort s);

struct Sequent {
  Sort sort = Sort::Plain;
  std::vector<Formula> ant;
  std::vector<Formula> suc;

  Sequent() = default;
  Sequent(Sort s, std::vector<Formula> a, std::vector<Formula> c)
      : sort(s), ant(std::move(a)), suc(std::move(c)) {}

  std::vector<Formula>& side(Side s) { return s == Side::Ant ? ant : suc; }
  const std::vector<Formula>& side(Side s) const { return s == Side::Ant ? ant : suc; }
  bool empty() const { return ant.empty() && suc.empty(); }
  std::size_t size() const { return ant.size() + suc.size(); }

  // Sort equality plus multiset equality of both sides.
  bool equiv(const Sequent& o) const;
  // Sides sorted; used for hashing and canonical comparison.
  Sequent normalized() const;
  int compare(const Sequent& o) const;  // on normalized forms

  friend bool operator==(const Sequent& a, const Sequent& b) {
    return a.sort == b.sort && a.ant == b.ant && a.suc == b.suc;
  }
};

struct Hypersequent {
  std::vector<Sequent> seqs;

  Hypersequent() = default;
  explicit Hypersequent(std::vector<Sequent> s) : seqs(std::move(s)) {}

  std::size_t size() const { return seqs.size(); }
  const Sequent& operator[](std::size_t i) const { return seqs[i]; }
  Sequent& operator[](std::size_t i) { return seqs[i]; }

  // Equality up to permutation of sequents (and of formulas inside each side).
  bool equiv(const Hypersequent& o) const;
  Hypersequent normalized() const;

  friend bool operator==(const Hypersequent& a, const Hypersequent& b) { return a.seqs == b.seqs; }
};

class SortMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Sequent parse_sequent(std::string_view text);
Hypersequent parse_hypersequent(std::string_view text);

std::string to_string(const Sequent& s);
std::string to_string(const Hypersequent& h);

// Big conjunction / disjunction with the empty-junction conventions (~bot, bot).
Formula big_and(const std::vector<Formula>& fs);
Formula big_or(const std::vector<Formula>& fs);

Formula formula_image(const Sequent& s);
Formula hyper_image(const Hypersequent& h);

Sequent concat_sequents(const Sequent& a, const Sequent& b);
Sequent concat_hyper(const Hypersequent& h);

bool multiset_equal(std::vector<Formula> a, std::vector<Formula> b);

}  // namespace hyperseq
