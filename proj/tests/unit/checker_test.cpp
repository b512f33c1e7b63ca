#include <random>

#include <gtest/gtest.h>

#include "../support/generators.hpp"
#include "../support/negative_suite.hpp"
#include "hyperseq/corpus.hpp"
#include "hyperseq/hilbert.hpp"
#include "hyperseq/search.hpp"
#include "hyperseq/semantics.hpp"

namespace hyperseq {
namespace {

Formula F(const char* s) { return parse_formula(s); }
Hypersequent H(const char* s) { return parse_hypersequent(s); }

const std::vector<AxiomName> kAxioms{AxiomName::K, AxiomName::D, AxiomName::T,
                                     AxiomName::Four, AxiomName::B, AxiomName::Five};

Proof instantiate(AxiomName a, const Formula& x, const Formula& y) {
  return axiom_template(a, x, a == AxiomName::K ? std::optional<Formula>(y) : std::nullopt);
}

TEST(Templates, EndSequentsAreTheAxioms) {
  EXPECT_TRUE(axiom_template(AxiomName::K, F("p"), F("q"))->conclusion.equiv(H("box(p > q) -> box p > box q")));
  EXPECT_TRUE(axiom_template(AxiomName::T, F("p"))->conclusion.equiv(H("box p -> p")));
  EXPECT_TRUE(axiom_template(AxiomName::D, F("p"))->conclusion.equiv(H("-> ~box bot")));
  EXPECT_TRUE(axiom_template(AxiomName::Four, F("p"))->conclusion.equiv(H("box p -> box box p")));
  EXPECT_TRUE(axiom_template(AxiomName::B, F("p"))->conclusion.equiv(H("~p -> box ~box p")));
  EXPECT_TRUE(axiom_template(AxiomName::Five, F("p"))->conclusion.equiv(H("~box p -> box ~box p")));
}

TEST(Templates, CheckInTheirMinimalSystems) {
  for (AxiomName a : kAxioms) {
    const Proof p = instantiate(a, F("p"), F("q"));
    const CheckReport r = check_proof(p, minimal_system(a));
    EXPECT_TRUE(r.ok) << axiom_name(a);
  }
}

TEST(Templates, RandomInstantiations) {
  std::mt19937_64 rng(11);
  for (AxiomName a : kAxioms) {
    for (int i = 0; i < 20; ++i) {
      const Formula x = testing::random_formula(rng, 2);
      const Formula y = testing::random_formula(rng, 2);
      const Proof p = instantiate(a, x, y);
      ASSERT_TRUE(check_proof(p, minimal_system(a)).ok) << axiom_name(a) << " at " << to_string(x);
      const Formula img = hyper_image(p->conclusion);
      EXPECT_TRUE(bounded_valid(img, frame_class(minimal_system(a)), 3).valid) << to_string(img);
    }
  }
}

TEST(Templates, FourTemplateShape) {
  const Proof p = axiom_template(AxiomName::Four, F("p"));
  ASSERT_EQ(p->app.rule, RuleId::Merge);
  ASSERT_EQ(p->premises[0]->app.rule, RuleId::Nec1);
  ASSERT_EQ(p->premises[0]->premises[0]->app.rule, RuleId::FourR);
  EXPECT_EQ(p->premises[0]->premises[0]->premises[0]->app.rule, RuleId::K);
}

TEST(Templates, FiveTemplateUsesTheLemma) {
  const Proof p = axiom_template(AxiomName::Five, F("p"));
  ASSERT_EQ(p->premises.size(), 1u);
  EXPECT_TRUE(p->premises[0]->conclusion.equiv(H("-> box ~box p, box p")));
  EXPECT_EQ(count_rule(p, RuleId::Five2), 1u);
}

TEST(Templates, FiveTemplateFailsInK) {
  const CheckReport r = check_proof(axiom_template(AxiomName::Five, F("p")), SystemId::K);
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(r.failures[0].error.kind, StepError::Kind::RuleUnavailable);
}

TEST(Templates, TemplatesAreRejectedBelowTheirSystems) {
  EXPECT_FALSE(check_proof(axiom_template(AxiomName::T, F("p")), SystemId::K).ok);
  EXPECT_FALSE(check_proof(axiom_template(AxiomName::D, F("p")), SystemId::K).ok);
  EXPECT_FALSE(check_proof(axiom_template(AxiomName::Four, F("p")), SystemId::K).ok);
  EXPECT_FALSE(check_proof(axiom_template(AxiomName::B, F("p")), SystemId::K5).ok);
}

TEST(Templates, KNeedsTheSecondFormula) {
  EXPECT_THROW(axiom_template(AxiomName::K, F("p")), std::invalid_argument);
  EXPECT_THROW(axiom_template(AxiomName::T, F("p"), F("q")), std::invalid_argument);
}

TEST(Templates, ProverFindsCutFreeProofsOfTheAxioms) {
  for (AxiomName a : kAxioms) {
    const Proof p = instantiate(a, F("p"), F("q"));
    SearchConfig cfg;
    cfg.max_depth = 14;
    const SearchResult r = prove(p->conclusion, minimal_system(a), cfg);
    ASSERT_EQ(r.status, SearchStatus::Found) << axiom_name(a);
    EXPECT_TRUE(check_proof(r.proof, minimal_system(a)).ok);
  }
}

TEST(Necessitation, NecOneOverNecTwo) {
  const Proof p = necessitate(macro::imp_r(pb::ax(F("p")), 0, 0, 0));
  EXPECT_EQ(p->app.rule, RuleId::Nec1);
  EXPECT_EQ(p->premises[0]->app.rule, RuleId::Nec2);
  EXPECT_TRUE(p->conclusion.equiv(H("-> box(p > p)")));
  EXPECT_TRUE(check_proof(p, SystemId::K).ok);
  EXPECT_THROW(necessitate(pb::ax(F("p"))), std::invalid_argument);
}

struct ExpansionCase {
  DerivedRule rule;
  std::vector<const char*> premises;
  int seq = 0, idx = 0, seq2 = 0, idx2 = 0;
  std::vector<int> pick;
  const char* conclusion;
};

std::vector<ExpansionCase> expansion_cases() {
  using D = DerivedRule;
  return {
      {D::S4BoxL, {"p, q -> p"}, 0, 0, 0, 0, {}, "box p, q -> p"},
      {D::S4BoxR, {"box p, box q -> p"}, 0, 0, 0, 0, {}, "box p, box q -> box p"},
      {D::S5BoxR, {"box p -> p, box r"}, 0, 0, 0, 0, {}, "box p -> box p, box r"},
      {D::KD4Rule, {"p, ~p, box q ->"}, 0, 0, 0, 0, {2}, "box p, box ~p, box q ->"},
      {D::StdBoxL, {"p, q => p || s =>"}, 0, 0, 0, 0, {}, "box p, q => p || s =>"},
      {D::StdBoxR, {"box p => p || r =>"}, 0, 0, 0, 0, {}, "box p => box p || r =>"},
      {D::StdMove, {"box p, q => box p || s =>"}, 0, 0, 1, 0, {}, "q => box p || box p, s =>"},
      {D::ImpL, {"q -> q, p", "s, t -> s"}, 0, 1, 0, 0, {}, "p > s, q, t -> q, s"},
      {D::ImpR, {"p, q -> p"}, 0, 0, 0, 0, {}, "q -> p > p"},
      {D::OrL, {"p -> p", "q -> q"}, 0, 0, 0, 0, {}, "p | q -> p, q"},
      {D::OrR, {"-> p, ~p"}, 0, 0, 0, 1, {}, "-> p | ~p"},
      {D::MultCut, {"p -> p", "p, c -> p"}, 0, 0, 0, 0, {}, "p, c -> p"},
  };
}

DerivedInstance instance(const ExpansionCase& c) {
  DerivedInstance in;
  for (const char* h : c.premises) in.premises.push_back(H(h));
  in.seq = c.seq;
  in.idx = c.idx;
  in.seq2 = c.seq2;
  in.idx2 = c.idx2;
  in.pick = c.pick;
  return in;
}

TEST(Expansions, FragmentsCheckWithOpenLeaves) {
  for (const auto& c : expansion_cases()) {
    const Proof frag = expand_derived(c.rule, instance(c));
    CheckOptions opts;
    opts.allow_open = true;
    const CheckReport r = check_proof(frag, derived_system(c.rule), opts);
    EXPECT_TRUE(r.ok) << derived_name(c.rule) << ": "
                      << (r.failures.empty() ? "" : r.failures[0].path + " " + r.failures[0].error.message);
    EXPECT_TRUE(frag->conclusion.equiv(H(c.conclusion))) << derived_name(c.rule) << " gives "
                                                          << to_string(frag->conclusion);
    EXPECT_EQ(open_leaves(frag).size(), c.premises.size());
    EXPECT_FALSE(check_proof(frag, derived_system(c.rule)).ok);
  }
}

TEST(Expansions, PluggingProvedPremisesGivesProofs) {
  int plugged = 0;
  for (const auto& c : expansion_cases()) {
    const Proof frag = expand_derived(c.rule, instance(c));
    std::vector<Proof> fills;
    const SystemId sys = derived_system(c.rule);
    bool provable = true;
    for (const Proof& leaf : open_leaves(frag)) {
      SearchConfig cfg;
      const SearchResult r = prove(leaf->conclusion, sys, cfg);
      if (r.status != SearchStatus::Found) {
        provable = false;
        break;
      }
      fills.push_back(r.proof);
    }
    if (!provable) continue;
    const Proof p = plug(frag, fills);
    EXPECT_TRUE(check_proof(p, sys).ok) << derived_name(c.rule);
    ++plugged;
  }
  EXPECT_EQ(plugged, static_cast<int>(expansion_cases().size()));
  // Premises that are initial sequents.
  const Proof p = plug(expand_derived(DerivedRule::S4BoxL, [] {
                         DerivedInstance in;
                         in.premises = {H("p -> p")};
                         return in;
                       }()),
                       {pb::ax(F("p"))});
  EXPECT_TRUE(check_proof(p, SystemId::S4).ok);
  EXPECT_TRUE(p->conclusion.equiv(H("box p -> p")));
}

TEST(Expansions, S4BoxLShape) {
  const Proof p = derived::s4_box_l(pb::ax(F("p")), 0);
  EXPECT_EQ(p->app.rule, RuleId::Merge);
  EXPECT_EQ(p->premises[0]->app.rule, RuleId::T2);
  EXPECT_EQ(p->premises[0]->premises[0]->app.rule, RuleId::K);
  EXPECT_EQ(p->premises[0]->premises[0]->premises[0]->app.rule, RuleId::Nec2);
}

TEST(Expansions, KD4Shape) {
  const Proof p = derived::kd4_rule(pb::iw_l(pb::neg_l(pb::ax(F("p")), 0, 0), 0, F("box q")), {2});
  EXPECT_TRUE(check_proof(p, SystemId::KD4).ok);
  EXPECT_EQ(count_rule(p, RuleId::D), 1u);
  EXPECT_EQ(count_rule(p, RuleId::FourL), 1u);
  EXPECT_EQ(count_rule(p, RuleId::Nec2), 1u);
}

TEST(Expansions, S5BoxREmbedsTheFiveLemmaCut) {
  const Proof p = derived::s5_box_r(pb::iw_r(pb::t1(pb::ax(F("p")), 0, 0), 0, F("box q")), 0);
  EXPECT_TRUE(check_proof(p, SystemId::S5).ok);
  EXPECT_EQ(count_rule(p, RuleId::Cut), 1u);
  EXPECT_TRUE(p->conclusion.equiv(H("box p -> box p, box q")));
}

TEST(Expansions, ShapeErrors) {
  auto bad = [](DerivedRule r, std::vector<const char*> ps, std::vector<int> pick = {}) {
    DerivedInstance in;
    for (const char* h : ps) in.premises.push_back(H(h));
    in.pick = std::move(pick);
    return in;
  };
  EXPECT_THROW(expand_derived(DerivedRule::S4BoxR, bad(DerivedRule::S4BoxR, {"p -> q"})), ShapeError);
  EXPECT_THROW(expand_derived(DerivedRule::S4BoxR, bad(DerivedRule::S4BoxR, {"box p -> q, r"})), ShapeError);
  EXPECT_THROW(expand_derived(DerivedRule::S5BoxR, bad(DerivedRule::S5BoxR, {"box p -> q, r"})), ShapeError);
  EXPECT_THROW(expand_derived(DerivedRule::KD4Rule, bad(DerivedRule::KD4Rule, {"p -> q"})), ShapeError);
  EXPECT_THROW(expand_derived(DerivedRule::KD4Rule, bad(DerivedRule::KD4Rule, {"p ->"}, {0})), ShapeError);
  EXPECT_THROW(expand_derived(DerivedRule::StdBoxL, bad(DerivedRule::StdBoxL, {"p -> q"})), ShapeError);
  EXPECT_THROW(expand_derived(DerivedRule::StdMove, bad(DerivedRule::StdMove, {"box p => q"})), ShapeError);
  EXPECT_THROW(expand_derived(DerivedRule::S4BoxL, bad(DerivedRule::S4BoxL, {"p -> q", "q -> q"})), ShapeError);
  EXPECT_THROW(expand_derived(DerivedRule::S4BoxL, bad(DerivedRule::S4BoxL, {"p -> q || -> r"})), ShapeError);
}

TEST(Macros, FitAndEmbeds) {
  EXPECT_TRUE(macro::embeds(H("p -> q"), H("p, r -> q || => s")));
  EXPECT_FALSE(macro::embeds(H("p => q"), H("p -> q")));
  const Proof p = macro::fit(pb::ax(F("p")), H("p, r -> q, p || => s"));
  EXPECT_TRUE(check_proof(p, SystemId::K).ok);
  EXPECT_TRUE(p->conclusion.equiv(H("p, r -> q, p || => s")));
}

TEST(Macros, MultiplicativeCutConcatenatesContexts) {
  const Proof l = macro::append(pb::iw_r(pb::ax(F("p")), 0, F("q")), {parse_sequent("=> s")});
  const Proof r = pb::ax(F("q"));
  const Proof c = macro::mcut(l, 0, 1, r, 0, 0);
  EXPECT_TRUE(check_proof(c, SystemId::K).ok);
  EXPECT_TRUE(c->conclusion.equiv(H("p -> p, q || => s")));
}

TEST(Macros, EtaInitialUsesAtomicLeaves) {
  for (const char* f : {"box p", "p & ~q", "box(p & box q)", "~box ~p"}) {
    for (Sort s : {Sort::Plain, Sort::Modal}) {
      const Proof p = macro::eta_initial(F(f), s);
      ASSERT_TRUE(check_proof(p, SystemId::K).ok) << f;
      EXPECT_TRUE(p->conclusion.equiv(Hypersequent({Sequent{s, {F(f)}, {F(f)}}})));
      for_each_node(p, [](const Proof& n) {
        if (n->app.rule == RuleId::InitAx) {
          EXPECT_EQ(n->app.formula->op(), Op::Atom);
          EXPECT_EQ(n->conclusion[0].sort, Sort::Plain);
        }
      });
    }
  }
}

TEST(Macros, SugarRules) {
  Proof p = macro::imp_r(pb::iw_l(pb::ax(F("q")), 0, F("p")), 0, 1, 0);
  EXPECT_TRUE(p->conclusion.equiv(H("q -> p > q")));
  p = macro::or_r(pb::iw_r(pb::ax(F("p")), 0, F("q")), 0, 0, 1);
  EXPECT_TRUE(p->conclusion.equiv(H("p -> p | q")));
  EXPECT_TRUE(check_proof(p, SystemId::K).ok);
}

TEST(NegativeSuite, EveryBrokenStepIsRejectedWithItsKind) {
  const auto cases = testing::negative_suite();
  EXPECT_GE(cases.size(), 24u);
  std::set<RuleId> rules;
  for (const auto& c : cases) {
    rules.insert(c.app.rule);
    const auto e = testing::run_negative(c);
    ASSERT_TRUE(e) << c.name << " was accepted";
    EXPECT_EQ(e->kind, c.expected) << c.name << ": " << kind_name(e->kind) << " " << e->message;
  }
  for (RuleId r : all_rules()) EXPECT_TRUE(rules.contains(r)) << "no broken case for " << rule_name(r);
}

TEST(Report, CountsRulesAndNodes) {
  const Proof p = axiom_template(AxiomName::Four, F("p"));
  const CheckReport r = check_proof(p, SystemId::K4);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.node_count, 5u);
  EXPECT_EQ(r.rules_used.at(RuleId::FourR), 1u);
  EXPECT_EQ(r.system, SystemId::K4);
}

TEST(Report, FailurePathsPointAtTheBrokenNode) {
  const Proof bad = mk_declared(testing::make_app(RuleId::K), {pb::ax(F("p"), Sort::Modal)}, H("=> p || box q ->"));
  RuleApp ew = testing::make_app(RuleId::Ew);
  ew.sequent = parse_sequent("=> r");
  const Proof p = mk_declared(ew, {bad}, H("=> p || box q -> || => r"));
  const CheckReport r = check_proof(p, SystemId::K);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].path, "root/0");
  EXPECT_EQ(r.failures[0].error.kind, StepError::Kind::SchemaMismatch);
}

TEST(Corpus, EveryEntryChecksAndIsValid) {
  const auto corpus = golden_corpus();
  EXPECT_GE(corpus.size(), 20u);
  for (const auto& e : corpus) {
    const CheckReport r = check_proof(e.proof, e.system);
    EXPECT_TRUE(r.ok) << e.name;
    EXPECT_TRUE(bounded_valid(hyper_image(e.proof->conclusion), frame_class(e.system), 3).valid) << e.name;
  }
}

TEST(Corpus, GammaCounterexample) {
  const Proof p = gamma_counterexample();
  EXPECT_EQ(count_rule(p, RuleId::Cut), 1u);
  for (SystemId s : {SystemId::KB, SystemId::KDB, SystemId::B}) EXPECT_TRUE(check_proof(p, s).ok);
  EXPECT_FALSE(check_proof(p, SystemId::K).ok);
  EXPECT_TRUE(p->conclusion.equiv(H("-> || => box ~box box box p || => p")));
}

TEST(Bridge, AxiomT) {
  HilbertProof hp{{AxiomInstance{false, AxiomName::T, F("p"), Formula::bot()}}};
  const Proof p = hilbert_to_hyperseq(hp, SystemId::T);
  EXPECT_TRUE(check_proof(p, SystemId::T).ok);
  EXPECT_TRUE(p->conclusion.equiv(H("-> box p > p")));
}

TEST(Bridge, NecessitationEndsWithNecOneOverNecTwo) {
  HilbertProof hp{{AxiomInstance{true, AxiomName::K, F("p > p"), Formula::bot()}, Necessitation{0}}};
  const Proof p = hilbert_to_hyperseq(hp, SystemId::K);
  EXPECT_EQ(p->app.rule, RuleId::Nec1);
  EXPECT_EQ(p->premises[0]->app.rule, RuleId::Nec2);
  EXPECT_TRUE(p->conclusion.equiv(H("-> box(p > p)")));
}

TEST(Bridge, ModusPonensUsesCut) {
  HilbertProof hp{{AxiomInstance{true, AxiomName::K, F("p > p"), Formula::bot()},
                   AxiomInstance{true, AxiomName::K, F("(p > p) > (p > p)"), Formula::bot()}, ModusPonens{0, 1}}};
  const Proof p = hilbert_to_hyperseq(hp, SystemId::K);
  EXPECT_TRUE(check_proof(p, SystemId::K).ok);
  EXPECT_GE(count_rule(p, RuleId::Cut), 1u);
  EXPECT_TRUE(p->conclusion.equiv(H("-> p > p")));
  EXPECT_EQ(prove(p->conclusion, SystemId::K).status, SearchStatus::Found);
}

TEST(Bridge, Examples) {
  for (const auto& e : hilbert_examples()) {
    const Proof p = hilbert_to_hyperseq(e.proof, e.system);
    EXPECT_TRUE(check_proof(p, e.system).ok) << e.name;
    const Formula want = hilbert_formulas(e.proof).back();
    EXPECT_TRUE(p->conclusion.equiv(Hypersequent({Sequent{Sort::Plain, {}, {want}}}))) << e.name;
    const Formula img = hyper_image(p->conclusion);
    SearchConfig cfg;
    cfg.allow_rules = propositional_rules();
    const Sequent same{Sort::Plain, {}, {Formula::conj(Formula::imp(img, want), Formula::imp(want, img))}};
    EXPECT_EQ(prove(Hypersequent({same}), e.system, cfg).status, SearchStatus::Found) << e.name;
  }
}

TEST(Bridge, Errors) {
  HilbertProof t{{AxiomInstance{false, AxiomName::T, F("p"), Formula::bot()}}};
  try {
    hilbert_to_hyperseq(t, SystemId::K);
    FAIL();
  } catch (const BridgeError& e) {
    EXPECT_EQ(e.kind(), BridgeError::Kind::UnavailableAxiom);
  }
  HilbertProof pc{{AxiomInstance{true, AxiomName::K, F("p > q"), Formula::bot()}}};
  try {
    hilbert_to_hyperseq(pc, SystemId::K);
    FAIL();
  } catch (const BridgeError& e) {
    EXPECT_EQ(e.kind(), BridgeError::Kind::TautologyDischargeFailed);
  }
  HilbertProof mp{{AxiomInstance{true, AxiomName::K, F("p > p"), Formula::bot()}, ModusPonens{0, 0}}};
  try {
    hilbert_to_hyperseq(mp, SystemId::K);
    FAIL();
  } catch (const BridgeError& e) {
    EXPECT_EQ(e.kind(), BridgeError::Kind::MalformedProof);
  }
  HilbertProof fwd{{Necessitation{0}}};
  EXPECT_THROW(hilbert_to_hyperseq(fwd, SystemId::K), BridgeError);
}

TEST(Bridge, JsonRoundTrip) {
  for (const auto& e : hilbert_examples()) {
    std::string sys;
    const HilbertProof back = hilbert_from_json(hilbert_to_json(e.proof, system_name(e.system)), &sys);
    EXPECT_EQ(sys, system_name(e.system));
    EXPECT_EQ(hilbert_formulas(back), hilbert_formulas(e.proof));
  }
  EXPECT_THROW(hilbert_from_json("{\"steps\": [{\"axiom\": \"X\", \"a\": \"p\"}]}"), ProofFormatError);
  EXPECT_THROW(hilbert_from_json("{\"steps\": [{}]}"), ProofFormatError);
}

}  // namespace
}  // namespace hyperseq
