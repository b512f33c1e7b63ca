#pragma once

#include <array>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperseq/derived.hpp"
#include "hyperseq/transform.hpp"

namespace hyperseq::xf {

using Kind = TransformError::Kind;

[[noreturn]] void unsupported(const std::string& msg);
[[noreturn]] void wrong_group(const char* op, SystemId sys);

// Step budget and trace shared by the passes of one transformation.
class Run {
 public:
  Run(const TransformOptions& opts, SystemId sys) : opts_(opts), sys_(sys) {}
  void tick(const char* name, const Proof& before, const Proof& after);
  void spend(std::size_t n = 1);
  // Re-checks a rewritten subproof when asked to (open leaves allowed).
  void verify(const Proof& p, const char* name) const;
  SystemId system() const { return sys_; }

 private:
  const TransformOptions& opts_;
  SystemId sys_;
  std::size_t used_ = 0;
};

// Marks on the sequents and formula occurrences of one hypersequent.
struct Marks {
  std::vector<char> seq;
  std::vector<std::array<std::vector<char>, 2>> f;

  Marks() = default;
  explicit Marks(const Hypersequent& h);
  bool any_seq() const;
  bool any_formula() const;
  bool at(int s, Side side, int k) const {
    return f[static_cast<std::size_t>(s)][static_cast<int>(side)][static_cast<std::size_t>(k)] != 0;
  }
  void set(int s, Side side, int k) {
    f[static_cast<std::size_t>(s)][static_cast<int>(side)][static_cast<std::size_t>(k)] = 1;
  }
  bool seq_has_formula(int s) const;
};

StepResult step_of(const Proof& n);
std::vector<Hypersequent> premise_conclusions(const Proof& n);

// Marks of the premises: formula marks follow the occurrence trace, sequent
// marks follow sequent origins (only those keeping the turnstile if asked).
std::vector<Marks> lift(const StepResult& sr, const std::vector<Hypersequent>& prems, const Marks& m,
                        bool same_turnstile_only);

// Edit of a hypersequent: dropped sequents and occurrences, retyped sequents,
// formulas appended to kept sequents and sequents appended at the end.
struct Edit {
  std::vector<char> drop_seq;
  std::vector<std::optional<Sort>> retype;
  std::vector<std::array<std::vector<char>, 2>> drop;
  std::vector<std::array<std::vector<Formula>, 2>> add;
  std::vector<Sequent> extra;

  Edit() = default;
  explicit Edit(const Hypersequent& h);
};

struct Edited {
  Hypersequent h;
  Alignment map;  // original positions to edited ones, -1 for dropped
};

Edited apply_edit(const Hypersequent& h, const Edit& e);
Alignment compose(const Alignment& a, const Alignment& b);
Alignment align_or_throw(const Hypersequent& a, const Hypersequent& b);

// Structural repair; Unsupported when `p` does not embed into `target`.
Proof fit_to(const Proof& p, const Hypersequent& target);

// Applies the rule of `n` to new premises proving (up to fit) the edited
// premise conclusions, and fits the result to the edited conclusion.
Proof replay(const Proof& n, std::vector<Proof> prems, const std::vector<Edit>& edits, const Edit& out);
// Same rule on premises proving exactly the original premise conclusions.
Proof replay_exact(const Proof& n, std::vector<Proof> prems);

// Position of sequent `s` of `orig` in the equivalent hypersequent `now`.
int locate_seq(const Hypersequent& orig, const Hypersequent& now, int s);

// Post-order rebuild with per-node memo; `node` receives the rebuilt premises.
class Rebuilder {
 public:
  using Fn = std::function<Proof(const Proof& orig, std::vector<Proof> prems)>;
  explicit Rebuilder(Fn fn) : fn_(std::move(fn)) {}
  Proof operator()(const Proof& p);

 private:
  Fn fn_;
  std::unordered_map<const ProofNode*, Proof> memo_;
};

bool rule_is(const Proof& n, std::initializer_list<RuleId> rs);

}  // namespace hyperseq::xf
