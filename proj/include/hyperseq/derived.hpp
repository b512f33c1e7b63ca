#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "hyperseq/proof.hpp"

namespace hyperseq {

enum class AxiomName : std::uint8_t { K, D, T, Four, B, Five };

const char* axiom_name(AxiomName a);
std::optional<AxiomName> parse_axiom(std::string_view name);
// Hilbert form of the axiom instance; `b` is used by K only.
Formula axiom_formula(AxiomName a, const Formula& x, const Formula& b = Formula::bot());
// Smallest of the fifteen systems whose rules prove the template.
SystemId minimal_system(AxiomName a);

// Hypersequent proof whose single end sequent has the axiom instance as image
// (K: box(A>B) -> box A > box B, T: box A -> A, D: -> ~box bot, ...).
Proof axiom_template(AxiomName a, const Formula& x, std::optional<Formula> b = std::nullopt);

// -> box A, box ~box A in K5, the upper part of the 5 template.
Proof five_lemma(const Formula& a);

// From a proof of `-> A` to one of `-> box A` (nec2 then nec1).
Proof necessitate(Proof p);

// Rule compositions over the primitive calculus. Addresses refer to the
// conclusions of the given proofs.
namespace macro {

// Appends every sequent of `side` by external weakening.
Proof append(Proof p, const std::vector<Sequent>& side);
// Adds the formulas of `target` missing from sequent `seq` by internal weakening.
Proof weaken_to(Proof p, int seq, const Sequent& target);
// Contracts and weakens sequent `seq` to the multiset `target`; every formula
// of the sequent must occur in `target`.
Proof adjust(Proof p, int seq, const Sequent& target);
// True when `x` reaches `y` by contraction, weakening, merge and plain split:
// every '=>' sequent of x is contained (as a set) in some '=>' sequent of y and
// the plain formulas of x all occur in plain sequents of y.
bool embeds(const Hypersequent& x, const Hypersequent& y);
// Turns a proof of x into a proof of y for embeds(x, y) by structural rules.
Proof fit(Proof p, const Hypersequent& y);
// Merges the listed sequents (all of one sort) into one; returns its index through `at`.
Proof merge_all(Proof p, std::vector<int> seqs, int* at = nullptr);

// p: H | G => D, A (A at suc idx) and q: H' | B, P => T (B at ant idx2)
// gives H | H' | A > B, G, P => D, T.
Proof imp_l(Proof p, int seq, int idx, Proof q, int seq2, int idx2);
// H | A, G => D, B  gives  H | G => D, A > B.
Proof imp_r(Proof p, int seq, int ant_idx, int suc_idx);
// H | A, G => D and H' | B, P => T gives H | H' | A | B, G, P => D, T.
Proof or_l(Proof p, int seq, int idx, Proof q, int seq2, int idx2);
// H | G => D, A, B gives H | G => D, A | B.
Proof or_r(Proof p, int seq, int idx_a, int idx_b);
// Cut with concatenated side hypersequents: H | G => D, A and H' | A, P => T
// give H | H' | G, P => D, T.
Proof mcut(Proof p, int seq, int idx, Proof q, int seq2, int idx2);

// A proof of `A >> A` whose initial sequents are atomic `p -> p` or `bot ->`.
Proof eta_initial(const Formula& a, Sort s);

}  // namespace macro

enum class DerivedRule : std::uint8_t {
  S4BoxL, S4BoxR, S5BoxR, KD4Rule, StdBoxL, StdBoxR, StdMove, ImpL, ImpR, OrL, OrR, MultCut
};

const char* derived_name(DerivedRule r);
std::optional<DerivedRule> parse_derived(std::string_view name);
const std::vector<DerivedRule>& all_derived();
// System in which the expansion of the rule checks.
SystemId derived_system(DerivedRule r);

// Premises plus addressing of a derived-rule instance.
//   s4_box_l, std_box_l : seq/idx locate A
//   s5_box_r            : idx is the unboxed succedent formula
//   kd4                 : pick lists the boxed antecedent formulas of the boxed part
//   std_box_r           : seq is the sequent with succedent A
//   std_move            : seq/idx locate box A, seq2 is the receiving sequent
//   imp_l, or_l, cut    : seq/idx in the first premise, seq2/idx2 in the second
//   imp_r               : idx is A (antecedent), idx2 is B (succedent)
//   or_r                : idx and idx2 are the two succedent disjuncts
struct DerivedInstance {
  std::vector<Hypersequent> premises;
  int seq = 0;
  int idx = 0;
  int seq2 = 0;
  int idx2 = 0;
  std::vector<int> pick;
};

class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fragment with one open leaf per premise (left to right) whose root is the
// conclusion of the derived rule. Throws ShapeError on an ill-shaped instance.
Proof expand_derived(DerivedRule r, const DerivedInstance& in);

// The same expansions applied to closed proofs.
namespace derived {
Proof s4_box_l(Proof p, int idx);
Proof s4_box_r(Proof p);
Proof s5_box_r(Proof p, int idx);
Proof kd4_rule(Proof p, const std::vector<int>& boxed);
Proof std_box_l(Proof p, int seq, int idx);
Proof std_box_r(Proof p, int seq);
Proof std_move(Proof p, int seq, int idx, int seq2);
}  // namespace derived

}  // namespace hyperseq
