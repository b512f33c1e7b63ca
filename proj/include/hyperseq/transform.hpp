#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperseq/proof.hpp"

namespace hyperseq {

struct TransformStep {
  std::string name;
  std::size_t before = 0;  // node count of the rewritten subproof
  std::size_t after = 0;
};

struct TransformTrace {
  std::vector<TransformStep> steps;
  std::size_t fuel_used = 0;
};

std::string trace_to_string(const TransformTrace& t);

struct TransformOptions {
  std::size_t fuel = 1000000;     // budget of rewrites
  bool assert_each_step = false;  // re-check every rewritten subproof
  TransformTrace* trace = nullptr;
};

class TransformError : public std::runtime_error {
 public:
  enum class Kind : std::uint8_t { WrongGroup, WrongSystem, FuelExhausted, NotRegular, EndNotPlain, Unsupported };
  TransformError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* transform_error_name(TransformError::Kind k);

// Replaces compound and '=>' initial sequents by derivations from `p -> p` and `bot ->`.
Proof atomize_initials(const Proof& p, const TransformOptions& opts = {});

// Removes every t2 step (alpha and gamma systems).
Proof eliminate_T2(const Proof& p, SystemId sys, const TransformOptions& opts = {});

struct RegularityReport {
  bool regular = true;
  std::vector<std::string> offending_nodes;  // paths of 4r steps and of irregular nec1/d steps
};

RegularityReport is_regular(const Proof& p, SystemId sys);

// Regular proof with the same end hypersequent (alpha systems, t2-free input).
Proof regularize(const Proof& p, SystemId sys, const TransformOptions& opts = {});

// Single-sequent calculus of the alpha systems: LK rules plus the modal rule
// box G -> box E from G* -> E (each box C of the conclusion stands for C or,
// with the 4 rules, for box C), its variant with empty succedents (D systems)
// and box:l (T systems).
enum class StdRule : std::uint8_t {
  Ax, Bot, AndL1, AndL2, AndR, NegL, NegR, IcL, IcR, IwL, IwR, Cut, Modal, ModalD, BoxL
};

const char* std_rule_name(StdRule r);

struct StdNode;
using StandardProof = std::shared_ptr<const StdNode>;

struct StdNode {
  StdRule rule = StdRule::Ax;
  Sequent conclusion;             // always '->'
  std::vector<StandardProof> premises;
  std::optional<Formula> formula;  // principal, weakened, contracted or cut formula
  std::vector<bool> keep_box;     // modal rules: per conclusion antecedent formula
};

StandardProof to_standard(const Proof& p, SystemId sys);
// Empty when the proof is correct; otherwise the first failure.
std::optional<std::string> check_standard(const StandardProof& p, SystemId sys);
std::size_t std_node_count(const StandardProof& p);
std::size_t std_count_rule(const StandardProof& p, StdRule r);
// Back into the hypersequent calculus as a proof of the single sequent.
Proof embed_standard(const StandardProof& p);

// Proof whose every 52 step has an initial sequent as premise (K45, KD45, S5).
Proof restrict_52(const Proof& p, SystemId sys, const TransformOptions& opts = {});

// Total degree of the cut formulas, sorted descending.
std::vector<int> cut_degrees(const Proof& p);
// Decomposes compound cut formulas until every cut is on an atom, bot or a box.
Proof reduce_cut_formula(const Proof& p, const TransformOptions& opts = {});

// Cut-free proof with the same end hypersequent (alpha and beta systems).
Proof eliminate_cut(const Proof& p, SystemId sys, const TransformOptions& opts = {});

}  // namespace hyperseq
