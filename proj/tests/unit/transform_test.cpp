#include <gtest/gtest.h>

#include "../support/cut_proofs.hpp"
#include "../support/append_sequent.hpp"
#include "../support/transform_support.hpp"
#include "hyperseq/corpus.hpp"
#include "hyperseq/search.hpp"
#include "hyperseq/transform.hpp"

namespace hyperseq {
namespace {

using testing::all_plain;
using testing::cut_formula_cases;
using testing::alpha_beta;
using testing::five2_premises_initial;
using testing::has_plain;
using testing::multiset_smaller;
using testing::random_proofs;

Formula F(const char* s) { return parse_formula(s); }

TransformOptions checked() {
  TransformOptions o;
  o.assert_each_step = true;
  return o;
}

void expect_same_end_and_checks(const Proof& in, const Proof& out, SystemId sys) {
  const CheckReport r = check_proof(out, sys);
  EXPECT_TRUE(r.ok) << (r.ok ? "" : r.failures[0].path + ": " + r.failures[0].error.message);
  EXPECT_TRUE(out->conclusion.equiv(in->conclusion))
      << to_string(in->conclusion) << " became " << to_string(out->conclusion);
}

TEST(Atomize, CompoundAndModalInitials) {
  for (const char* f : {"box p", "p & q", "~(p & box q)"}) {
    for (Sort s : {Sort::Plain, Sort::Modal}) {
      const Proof in = pb::ax(F(f), s);
      const Proof out = atomize_initials(in, checked());
      expect_same_end_and_checks(in, out, SystemId::K);
      EXPECT_GT(node_count(out), 1u) << f;
    }
  }
}

TEST(Atomize, AtomicPlainInitialUnchanged) {
  const Proof in = pb::ax(F("p"));
  EXPECT_EQ(proof_to_json(atomize_initials(in)), proof_to_json(in));
}

TEST(EliminateT2, S4Expansions) {
  std::size_t t2 = 0;
  for (const CorpusEntry& e : golden_corpus()) {
    if (e.system != SystemId::S4) continue;
    t2 += count_rule(e.proof, RuleId::T2);
    const Proof out = eliminate_T2(e.proof, SystemId::S4, checked());
    expect_same_end_and_checks(e.proof, out, SystemId::S4);
    EXPECT_EQ(count_rule(out, RuleId::T2), 0u) << e.name;
  }
  EXPECT_GT(t2, 0u);
}

TEST(EliminateT2, RandomT2BearingProofs) {
  int done = 0;
  for (SystemId sys : {SystemId::T, SystemId::S4, SystemId::B}) {
    for (const Proof& in : random_proofs(sys, 21, 6, [](const Proof& p) { return count_rule(p, RuleId::T2) > 0; })) {
      const Proof out = eliminate_T2(in, sys, checked());
      expect_same_end_and_checks(in, out, sys);
      EXPECT_EQ(count_rule(out, RuleId::T2), 0u);
      ++done;
    }
  }
  EXPECT_GE(done, 10);
}

TEST(EliminateT2, RejectsBeta) {
  try {
    eliminate_T2(axiom_template(AxiomName::Five, F("p")), SystemId::K5);
    FAIL() << "expected WrongGroup";
  } catch (const TransformError& e) {
    EXPECT_EQ(e.kind(), TransformError::Kind::WrongGroup);
  }
}

TEST(Regularity, FourTemplateIsNotRegular) {
  const RegularityReport r = is_regular(axiom_template(AxiomName::Four, F("p")), SystemId::K4);
  EXPECT_FALSE(r.regular);
  EXPECT_FALSE(r.offending_nodes.empty());
  EXPECT_TRUE(is_regular(axiom_template(AxiomName::K, F("p"), F("q")), SystemId::K).regular);
}

TEST(Regularize, FourTemplate) {
  const Proof in = axiom_template(AxiomName::Four, F("p"));
  const Proof out = regularize(in, SystemId::K4, checked());
  expect_same_end_and_checks(in, out, SystemId::K4);
  EXPECT_TRUE(is_regular(out, SystemId::K4).regular);
  EXPECT_EQ(count_rule(out, RuleId::FourR), 0u);
  EXPECT_EQ(proof_to_json(regularize(out, SystemId::K4)), proof_to_json(out));
}

TEST(Regularize, S4CorpusProofs) {
  int done = 0;
  for (const CorpusEntry& e : golden_corpus()) {
    if (e.system != SystemId::S4) continue;
    const Proof in = eliminate_T2(e.proof, SystemId::S4);
    const Proof out = regularize(in, SystemId::S4, checked());
    expect_same_end_and_checks(e.proof, out, SystemId::S4);
    EXPECT_TRUE(is_regular(out, SystemId::S4).regular) << e.name;
    EXPECT_EQ(count_rule(out, RuleId::FourR), 0u) << e.name;
    EXPECT_EQ(proof_to_json(regularize(out, SystemId::S4)), proof_to_json(out)) << e.name;
    ++done;
  }
  EXPECT_GE(done, 2);
}

TEST(Regularize, RandomAlphaProofs) {
  int done = 0;
  for (SystemId sys : {SystemId::K, SystemId::D, SystemId::T, SystemId::K4, SystemId::KD4, SystemId::S4}) {
    for (const Proof& x : random_proofs(sys, 33, 3, [](const Proof&) { return true; })) {
      const Proof out = regularize(atomize_initials(eliminate_T2(x, sys)), sys, checked());
      expect_same_end_and_checks(x, out, sys);
      EXPECT_TRUE(is_regular(out, sys).regular);
      EXPECT_EQ(count_rule(out, RuleId::FourR), 0u);
      EXPECT_EQ(proof_to_json(regularize(out, sys)), proof_to_json(out));
      ++done;
    }
  }
  EXPECT_GE(done, 10);
}

TEST(Regularize, RejectsOtherGroups) {
  try {
    regularize(axiom_template(AxiomName::B, F("p")), SystemId::KB);
    FAIL() << "expected WrongGroup";
  } catch (const TransformError& e) {
    EXPECT_EQ(e.kind(), TransformError::Kind::WrongGroup);
  }
}

void expect_standard(const Proof& p, SystemId sys, const std::string& what) {
  const Proof r = regularize(atomize_initials(eliminate_T2(p, sys)), sys);
  const StandardProof s = to_standard(r, sys);
  const auto err = check_standard(s, sys);
  EXPECT_FALSE(err.has_value()) << what << ": " << err.value_or("");
  EXPECT_TRUE(s->conclusion.equiv(concat_hyper(p->conclusion))) << what;
  const Proof back = embed_standard(s);
  EXPECT_TRUE(check_proof(back, sys).ok) << what;
  ASSERT_EQ(back->conclusion.size(), 1u);
  EXPECT_TRUE(back->conclusion[0].equiv(s->conclusion)) << what;
}

TEST(ToStandard, AlphaCorpusProofs) {
  int done = 0;
  for (const CorpusEntry& e : golden_corpus()) {
    if (group_of(e.system) != Group::Alpha || !all_plain(e.proof->conclusion)) continue;
    expect_standard(e.proof, e.system, e.name);
    ++done;
  }
  EXPECT_GE(done, 6);
}

TEST(ToStandard, ModalRuleCounts) {
  const Proof k = axiom_template(AxiomName::K, F("p"), F("q"));
  EXPECT_EQ(std_count_rule(to_standard(regularize(atomize_initials(k), SystemId::K), SystemId::K), StdRule::Modal), 1u);
  const Proof d = axiom_template(AxiomName::D, F("p"));
  EXPECT_EQ(std_count_rule(to_standard(regularize(atomize_initials(d), SystemId::D), SystemId::D), StdRule::ModalD), 1u);
}

TEST(ToStandard, RandomAlphaProofs) {
  int done = 0;
  for (SystemId sys : {SystemId::K, SystemId::D, SystemId::T, SystemId::K4, SystemId::KD4, SystemId::S4}) {
    for (const Proof& x : random_proofs(sys, 41, 4, [](const Proof& p) { return all_plain(p->conclusion); })) {
      expect_standard(x, sys, std::string(system_name(sys)) + " " + to_string(x->conclusion));
      ++done;
    }
  }
  EXPECT_GE(done, 12);
}

TEST(ToStandard, Errors) {
  try {
    to_standard(axiom_template(AxiomName::Four, F("p")), SystemId::K4);
    FAIL() << "expected NotRegular";
  } catch (const TransformError& e) {
    EXPECT_EQ(e.kind(), TransformError::Kind::NotRegular);
  }
  try {
    to_standard(pb::ax(F("p"), Sort::Modal), SystemId::K);
    FAIL() << "expected EndNotPlain";
  } catch (const TransformError& e) {
    EXPECT_EQ(e.kind(), TransformError::Kind::EndNotPlain);
  }
}

TEST(Restrict52, FiveTemplate) {
  for (SystemId sys : {SystemId::K45, SystemId::KD45, SystemId::S5}) {
    const Proof in = axiom_template(AxiomName::Five, F("p"));
    ASSERT_GT(count_rule(in, RuleId::Five2), 0u);
    const Proof out = restrict_52(in, sys, checked());
    expect_same_end_and_checks(in, out, sys);
    EXPECT_TRUE(five2_premises_initial(out)) << system_name(sys);
  }
}

TEST(Restrict52, RandomProofsWithUnrestricted52) {
  int done = 0;
  for (SystemId sys : {SystemId::K45, SystemId::KD45, SystemId::S5}) {
    const auto keep = [](const Proof& p) { return !five2_premises_initial(p) && has_plain(p->conclusion); };
    for (const Proof& in : random_proofs(sys, 52, 4, keep)) {
      const Proof out = restrict_52(in, sys, checked());
      expect_same_end_and_checks(in, out, sys);
      EXPECT_TRUE(five2_premises_initial(out)) << to_string(in->conclusion);
      ++done;
    }
  }
  EXPECT_GE(done, 6);
}

TEST(Restrict52, RejectsSystemsWithout4) {
  try {
    restrict_52(axiom_template(AxiomName::Five, F("p")), SystemId::K5);
    FAIL() << "expected WrongSystem";
  } catch (const TransformError& e) {
    EXPECT_EQ(e.kind(), TransformError::Kind::WrongSystem);
  }
}

TEST(ReduceCutFormula, DegreesDecreaseAndEndIsKept) {
  for (const auto& c : cut_formula_cases()) {
    ASSERT_TRUE(check_proof(c.proof, SystemId::K).ok) << c.name;
    const std::vector<int> before = cut_degrees(c.proof);
    const Proof out = reduce_cut_formula(c.proof, checked());
    expect_same_end_and_checks(c.proof, out, SystemId::K);
    const std::vector<int> after = cut_degrees(out);
    EXPECT_TRUE(multiset_smaller(after, before)) << c.name;
    for (int d : after) EXPECT_LT(d, before.front()) << c.name;
  }
}

TEST(ReduceCutFormula, FrozenDegrees) {
  const auto cs = cut_formula_cases();
  EXPECT_EQ(cut_degrees(cs[0].proof), std::vector<int>({1}));
  EXPECT_EQ(cut_degrees(cs[1].proof), std::vector<int>({1}));
  EXPECT_EQ(cut_degrees(cs[2].proof), std::vector<int>({2}));
}

void expect_cut_free(const Proof& in, const Proof& out, SystemId sys, const std::string& what) {
  const CheckReport r = check_proof(out, sys);
  EXPECT_TRUE(r.ok) << what;
  EXPECT_TRUE(out->conclusion.equiv(in->conclusion)) << what;
  EXPECT_EQ(count_rule(out, RuleId::Cut), 0u) << what;
}

TEST(EliminateCut, CutFreeInputUnchanged) {
  const Proof in = axiom_template(AxiomName::T, F("p"));
  EXPECT_EQ(proof_to_json(eliminate_cut(in, SystemId::T)), proof_to_json(in));
}

TEST(EliminateCut, HandmadeProofsInEverySystem) {
  int agree = 0;
  for (SystemId sys : alpha_beta()) {
    int eliminated = 0;
    for (const auto& c : testing::handmade_cut_proofs(sys)) {
      const std::string what = std::string(system_name(sys)) + " " + c.name;
      ASSERT_TRUE(check_proof(c.proof, sys).ok) << what;
      ASSERT_EQ(count_rule(c.proof, RuleId::Cut), 1u) << what;
      try {
        const Proof out = eliminate_cut(c.proof, sys, checked());
        expect_cut_free(c.proof, out, sys, what);
        ++eliminated;
        if (prove(c.proof->conclusion, sys).status == SearchStatus::Found) ++agree;
      } catch (const TransformError& e) {
        EXPECT_EQ(e.kind(), TransformError::Kind::Unsupported) << what << ": " << e.what();
      }
    }
    EXPECT_GE(eliminated, 2) << system_name(sys);
  }
  EXPECT_GE(agree, 6);
}

TEST(EliminateCut, RandomProofsInEverySystem) {
  for (SystemId sys : alpha_beta()) {
    int eliminated = 0;
    for (const auto& c : testing::random_cut_proofs(sys, 7, 12)) {
      const std::string what = std::string(system_name(sys)) + " " + to_string(c.proof->conclusion);
      ASSERT_TRUE(check_proof(c.proof, sys).ok) << what;
      try {
        expect_cut_free(c.proof, eliminate_cut(c.proof, sys), sys, what);
        ++eliminated;
      } catch (const TransformError& e) {
        EXPECT_EQ(e.kind(), TransformError::Kind::Unsupported) << what << ": " << e.what();
      }
    }
    EXPECT_GE(eliminated, 10) << system_name(sys);
  }
}

TEST(EliminateCut, ModusPonensInK) {
  // box(p > q), box p -> box q from the K template and two cuts.
  const Proof k = axiom_template(AxiomName::K, F("p"), F("q"));
  const Proof lemma = macro::imp_l(pb::ax(F("box p")), 0, 0, pb::ax(F("box q")), 0, 0);
  const Formula imp = F("box p > box q");
  const Proof in = macro::mcut(k, 0, find_formula(seq_of(k, 0), Side::Suc, imp), lemma, 0,
                               find_formula(seq_of(lemma, 0), Side::Ant, imp));
  ASSERT_TRUE(check_proof(in, SystemId::K).ok);
  const Proof out = eliminate_cut(in, SystemId::K, checked());
  expect_cut_free(in, out, SystemId::K, "modus ponens");
  EXPECT_EQ(prove(in->conclusion, SystemId::K).status, SearchStatus::Found);
}

TEST(EliminateCut, RejectsGamma) {
  for (SystemId sys : {SystemId::KB, SystemId::KDB, SystemId::B}) {
    try {
      eliminate_cut(gamma_counterexample(), sys);
      FAIL() << "expected WrongGroup";
    } catch (const TransformError& e) {
      EXPECT_EQ(e.kind(), TransformError::Kind::WrongGroup);
    }
  }
}

TEST(EliminateCut, FuelExhausted) {
  TransformOptions o;
  o.fuel = 1;
  const auto cs = testing::handmade_cut_proofs(SystemId::K);
  try {
    eliminate_cut(cs[2].proof, SystemId::K, o);
    FAIL() << "expected FuelExhausted";
  } catch (const TransformError& e) {
    EXPECT_EQ(e.kind(), TransformError::Kind::FuelExhausted);
  }
}

TEST(AppendSequent, PlainSequentBreaksExactlyContextRestrictedSteps) {
  const Sequent t = parse_sequent("r -> s");
  int fragments = 0, restricted = 0;
  for (SystemId sys : alpha_beta()) {
    for (const auto& f : testing::harvest_fragments(sys, 11, 10)) {
      const bool r = testing::uses_context_restricted_rule(f);
      EXPECT_EQ(testing::steps_survive_append(f, t), !r) << system_name(sys);
      ++fragments;
      restricted += r;
    }
  }
  EXPECT_GE(fragments, 100);
  EXPECT_GT(restricted, 0);
}

TEST(AppendSequent, ModalSequentPreservesStepsWith52) {
  const Sequent t = parse_sequent("r => s");
  int fragments = 0;
  for (SystemId sys : alpha_beta()) {
    if (!system_has(sys, RuleId::Five2) && !system_has(sys, RuleId::B25)) continue;
    for (const auto& f : testing::harvest_fragments(sys, 13, 20)) {
      EXPECT_TRUE(testing::steps_survive_append(f, t)) << system_name(sys);
      ++fragments;
    }
  }
  EXPECT_GE(fragments, 100);
}

}  // namespace
}  // namespace hyperseq
