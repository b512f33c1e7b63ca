#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hyperseq/rules.hpp"

namespace hyperseq {

struct ProofNode;
using Proof = std::shared_ptr<const ProofNode>;

struct ProofNode {
  Hypersequent conclusion;
  RuleApp app;
  std::vector<Proof> premises;
  bool open = false;  // unproved leaf of a proof fragment
};

// Canonical node: the conclusion is computed from the premises. Throws StepFailure.
Proof mk(const RuleApp& app, std::vector<Proof> premises);
// Node with a declared conclusion; nothing is checked.
Proof mk_declared(const RuleApp& app, std::vector<Proof> premises, Hypersequent conclusion);
Proof open_leaf(Hypersequent h);

// The side that `idx` addresses for a rule (ant for and_l, k, t1, ...).
Side principal_side(RuleId r);

struct CheckFailure {
  std::string path;  // "root", "root/0/1", ...
  StepError error;
};

struct CheckReport {
  bool ok = true;
  SystemId system = SystemId::K;
  std::size_t node_count = 0;
  std::map<RuleId, std::size_t> rules_used;
  std::vector<CheckFailure> failures;
};

struct CheckOptions {
  bool allow_open = false;
};

CheckReport check_proof(const Proof& p, SystemId sys, CheckOptions opts = {});

std::size_t node_count(const Proof& p);
std::size_t count_rule(const Proof& p, RuleId r);
std::vector<Proof> open_leaves(const Proof& p);
void for_each_node(const Proof& p, const std::function<void(const Proof&)>& fn);

// Rebuilds every node canonically, remapping addresses to the rebuilt premise
// layouts. Throws StepFailure if some step does not check.
Proof canonicalize(const Proof& p);

// Replaces the open leaves (left to right) by proofs of equivalent hypersequents.
Proof plug(const Proof& fragment, const std::vector<Proof>& fills);

// Re-applies `app` (addressed against `old_premise`) on top of a premise whose
// conclusion is an equivalent permutation of it.
RuleApp remap_app(const RuleApp& app, const std::vector<Alignment>& premise_maps);

// Proof file I/O (JSON tree with goal/rule/args/premises per node).
std::string proof_to_json(const Proof& p, const std::string& system = "");
Proof proof_from_json(std::string_view text, std::string* system = nullptr);
Proof load_proof(const std::string& path, std::string* system = nullptr);
void save_proof(const std::string& path, const Proof& p, const std::string& system = "");

class ProofFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Index helpers over a proof's conclusion; throw std::out_of_range when absent.
int find_formula(const Sequent& s, Side side, const Formula& f, int skip = -1);
int find_sequent(const Hypersequent& h, const Sequent& s);
const Sequent& seq_of(const Proof& p, int i);

// Small constructors for canonical proofs.
namespace pb {
Proof ax(const Formula& a, Sort s = Sort::Plain);
Proof bot(Sort s = Sort::Plain);
Proof and_l1(Proof p, int seq, int idx, const Formula& other);
Proof and_l2(Proof p, int seq, int idx, const Formula& other);
Proof and_r(Proof p, Proof q, int seq, int idx, int seq2, int idx2);
Proof neg_l(Proof p, int seq, int idx);
Proof neg_r(Proof p, int seq, int idx);
Proof ic_l(Proof p, int seq, int keep, int drop);
Proof ic_r(Proof p, int seq, int keep, int drop);
Proof iw_l(Proof p, int seq, const Formula& a);
Proof iw_r(Proof p, int seq, const Formula& a);
Proof cut(Proof p, Proof q, int seq, int idx, int seq2, int idx2);
Proof ew(Proof p, const Sequent& s);
Proof merge(Proof p, int seq, int seq2);
Proof split(Proof p, int seq, std::vector<int> pick_ant, std::vector<int> pick_suc);
Proof nec1(Proof p, int seq);
Proof nec2(Proof p);
Proof k(Proof p, int seq, int idx);
Proof d(Proof p, int seq);
Proof t1(Proof p, int seq, int idx);
Proof t2(Proof p, int seq);
Proof four_r(Proof p, int seq);
Proof four_l(Proof p, int seq, int idx);
Proof b1(Proof p, int seq, int idx);
Proof b2(Proof p, int seq);
Proof five1(Proof p, int seq, int idx);
Proof five2(Proof p, int seq);
Proof b25(Proof p, int seq, std::vector<int> flip);
Proof apply(RuleId r, std::vector<Proof> prems, int seq, int idx = 0);
}  // namespace pb

}  // namespace hyperseq
