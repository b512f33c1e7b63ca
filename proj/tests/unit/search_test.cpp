#include <random>

#include <gtest/gtest.h>

#include "../support/random_proofs.hpp"
#include "hyperseq/corpus.hpp"
#include "hyperseq/search.hpp"
#include "hyperseq/semantics.hpp"

namespace hyperseq {
namespace {

Hypersequent H(const char* s) { return parse_hypersequent(s); }

TEST(Prove, PropositionalCommutation) {
  const SearchResult r = prove(H("p & q -> q & p"), SystemId::K);
  ASSERT_EQ(r.status, SearchStatus::Found);
  EXPECT_TRUE(check_proof(r.proof, SystemId::K).ok);
  EXPECT_TRUE(r.proof->conclusion.equiv(H("p & q -> q & p")));
  EXPECT_EQ(count_rule(r.proof, RuleId::Cut), 0u);
}

TEST(Prove, FourAxiomIsNotAKTheorem) {
  SearchConfig cfg;
  cfg.max_depth = 12;
  EXPECT_EQ(prove(H("box p -> box box p"), SystemId::K, cfg).status, SearchStatus::ExhaustedBound);
  EXPECT_FALSE(bounded_valid(parse_formula("box p > box box p"), frame_class(SystemId::K), 3).valid);
  EXPECT_EQ(prove(H("box p -> box box p"), SystemId::K4, cfg).status, SearchStatus::Found);
}

TEST(Prove, GammaCounterexampleHasNoCutFreeProofWithinBound) {
  SearchConfig cfg;
  cfg.max_depth = 12;
  cfg.node_budget = 100000;
  for (SystemId s : {SystemId::KB, SystemId::KDB, SystemId::B}) {
    EXPECT_EQ(prove(H("=> box ~box box box p || => p"), s, cfg).status, SearchStatus::ExhaustedBound)
        << system_name(s);
    EXPECT_EQ(prove(gamma_counterexample()->conclusion, s, cfg).status, SearchStatus::ExhaustedBound)
        << system_name(s);
  }
}

TEST(Prove, FoundProofsRecheckAndMatchTheGoal) {
  std::mt19937_64 rng(21);
  int found = 0;
  for (SystemId sys : all_systems()) {
    testing::RandomProofs gen(rng, sys, 40);
    gen.exclude(RuleId::Cut);
    gen.generate(30);
    for (const Proof& p : gen.pool()) {
      if (p->conclusion.size() > 3) continue;
      SearchConfig cfg;
      cfg.node_budget = 20000;
      const SearchResult r = prove(p->conclusion, sys, cfg);
      if (r.status != SearchStatus::Found) continue;
      ++found;
      ASSERT_TRUE(check_proof(r.proof, sys).ok) << system_name(sys) << " " << to_string(p->conclusion);
      ASSERT_TRUE(r.proof->conclusion.equiv(p->conclusion));
    }
  }
  EXPECT_GE(found, 100);
}

TEST(Prove, NeverFindsInvalidGoals) {
  for (SystemId sys : all_systems()) {
    for (const char* g : {"p -> q", "box p -> p", "-> box p", "=> p", "box p -> box q"}) {
      const Hypersequent h = H(g);
      const bool valid = bounded_valid(hyper_image(h), frame_class(sys), 3).valid;
      if (!valid) {
        EXPECT_NE(prove(h, sys).status, SearchStatus::Found) << system_name(sys) << " " << g;
      }
    }
  }
}

TEST(Prove, Deterministic) {
  const Hypersequent g = H("box(p & q) -> box p & box q");
  const SearchResult a = prove(g, SystemId::K);
  const SearchResult b = prove(g, SystemId::K);
  ASSERT_EQ(a.status, SearchStatus::Found);
  EXPECT_EQ(a.nodes, b.nodes);
  EXPECT_EQ(proof_to_json(a.proof), proof_to_json(b.proof));
}

TEST(Prove, PropositionalRulesOnly) {
  SearchConfig cfg;
  cfg.allow_rules = propositional_rules();
  EXPECT_EQ(prove(H("-> p > p"), SystemId::K, cfg).status, SearchStatus::Found);
  EXPECT_EQ(prove(H("-> box p > box p"), SystemId::K, cfg).status, SearchStatus::Found);
  EXPECT_NE(prove(H("box(p & q) -> box p"), SystemId::K, cfg).status, SearchStatus::Found);
  for (RuleId r : propositional_rules()) EXPECT_NE(r, RuleId::Cut);
}

TEST(Prove, BudgetIsReported) {
  SearchConfig cfg;
  cfg.node_budget = 1;
  EXPECT_EQ(prove(H("box(p & q) -> box p & box q"), SystemId::K, cfg).status, SearchStatus::BudgetExceeded);
}

TEST(Prove, TemplatesOfTheFiveRuleSystems) {
  for (SystemId sys : {SystemId::K5, SystemId::KD45, SystemId::S5, SystemId::KB5}) {
    SearchConfig cfg;
    cfg.max_depth = 14;
    EXPECT_EQ(prove(H("~box p -> box ~box p"), sys, cfg).status, SearchStatus::Found) << system_name(sys);
  }
}

TEST(NormalForm, MergesPlainSequentsAndDropsSubsumedModalOnes) {
  const Hypersequent n = saturation_normal_form(H("p -> q || r -> || p => || p, q => s"));
  int plain = 0;
  for (const auto& s : n.seqs)
    if (s.sort == Sort::Plain) ++plain;
  EXPECT_EQ(plain, 1);
  EXPECT_EQ(n.size(), 2u);
}

}  // namespace
}  // namespace hyperseq
