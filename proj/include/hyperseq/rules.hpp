#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hyperseq/sequent.hpp"

namespace hyperseq {

enum class RuleId : std::uint8_t {
  InitAx, InitBot, AndL1, AndL2, AndR, NegL, NegR, IcL, IcR, IwL, IwR, Cut,
  Ew, Merge, Split, Nec1, Nec2, K, D, T1, T2, FourR, FourL, B1, B2, Five1, Five2, B25
};
inline constexpr int kRuleCount = 28;

enum class SystemId : std::uint8_t {
  K, D, T, K4, KB, K5, B, K45, KD4, KD5, KDB, KB5, KD45, S4, S5
};
inline constexpr int kSystemCount = 15;

enum class Group : std::uint8_t { Alpha, Beta, Gamma };

const char* rule_name(RuleId r);
std::optional<RuleId> parse_rule(std::string_view name);
int rule_arity(RuleId r);
const std::array<RuleId, kRuleCount>& all_rules();

const char* system_name(SystemId s);
std::optional<SystemId> parse_system(std::string_view name);
const std::array<SystemId, kSystemCount>& all_systems();
const std::set<RuleId>& system_rules(SystemId s);
bool system_has(SystemId s, RuleId r);
Group group_of(SystemId s);
const char* group_name(Group g);

// Premise-addressed rule instance. `seq`/`idx` locate the principal sequent and
// formula in the (first) premise; the remaining fields are rule specific:
//   and_r, cut : seq2/idx2 address the second premise
//   ic_l, ic_r : idx2 is the duplicate that disappears
//   merge      : seq2 is the sequent merged into seq
//   split      : pick_ant/pick_suc select the formulas moved to the new sequent
//   b25        : flip lists the context sequents that become plain
//   and_l1/2   : formula is the other conjunct
//   ax, iw, ew : formula / sequent introduced; sort for initial sequents
struct RuleApp {
  RuleId rule = RuleId::InitAx;
  int seq = 0;
  Side side = Side::Ant;
  int idx = 0;
  int seq2 = -1;
  int idx2 = -1;
  std::vector<int> pick_ant;
  std::vector<int> pick_suc;
  std::vector<int> flip;
  std::optional<Formula> formula;
  std::optional<Sequent> sequent;
  Sort sort = Sort::Plain;
};

struct StepError {
  enum class Kind : std::uint8_t {
    WrongArity, BadAddressing, SchemaMismatch, SortViolation, ContextMismatch, RuleUnavailable
  };
  Kind kind;
  std::string message;
};

const char* kind_name(StepError::Kind k);

class StepFailure : public std::runtime_error {
 public:
  explicit StepFailure(StepError e);
  const StepError& error() const { return err_; }

 private:
  StepError err_;
};

struct FormulaRef {
  int prem;
  int seq;
  Side side;
  int idx;
  friend bool operator==(const FormulaRef&, const FormulaRef&) = default;
};

// Where a conclusion sequent comes from. `same_turnstile` is false when the
// rule changes or creates the sort of the sequent.
struct SeqOrigin {
  int prem;
  int seq;
  bool same_turnstile;
};

struct SequentTrace {
  std::vector<SeqOrigin> from;
  std::array<std::vector<std::vector<FormulaRef>>, 2> formulas;  // [side][idx]
  const std::vector<FormulaRef>& of(Side s, int i) const {
    return formulas[static_cast<int>(s)][static_cast<std::size_t>(i)];
  }
};

struct StepResult {
  Hypersequent conclusion;
  std::vector<int> principal;           // conclusion sequents written by the rule
  std::vector<SequentTrace> trace;      // one per conclusion sequent
};

// Builds the canonical conclusion of a rule instance; throws StepFailure.
StepResult apply_rule(const RuleApp& app, const std::vector<Hypersequent>& premises);

// Checks a declared conclusion against the canonical one (up to permutation).
std::optional<StepError> check_step(const RuleApp& app, const std::vector<Hypersequent>& premises,
                                    const Hypersequent& conclusion);

// Position correspondence between two equivalent hypersequents.
struct Alignment {
  std::vector<int> seq;                                 // a-index -> b-index
  std::vector<std::array<std::vector<int>, 2>> formula;  // [a-seq][side][a-idx] -> b-idx
};
std::optional<Alignment> align_hyper(const Hypersequent& a, const Hypersequent& b);

}  // namespace hyperseq
