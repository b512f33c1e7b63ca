#pragma once

#include <string>
#include <vector>

#include "hyperseq/proof.hpp"

namespace hyperseq::testing {

// One deliberately broken rule application and the error kind it must raise.
struct NegativeCase {
  std::string name;
  SystemId system;
  RuleApp app;
  std::vector<std::string> premises;
  std::string conclusion;
  StepError::Kind expected;
};

inline RuleApp make_app(RuleId r, int seq = 0, int idx = 0) {
  RuleApp a;
  a.rule = r;
  a.seq = seq;
  a.idx = idx;
  return a;
}

inline std::vector<NegativeCase> negative_suite() {
  using R = RuleId;
  using K = StepError::Kind;
  using S = SystemId;
  std::vector<NegativeCase> cs;
  auto add = [&](std::string name, S sys, RuleApp a, std::vector<std::string> ps, std::string c, K k) {
    cs.push_back({std::move(name), sys, std::move(a), std::move(ps), std::move(c), k});
  };
  auto with = [](RuleApp a, auto&& fn) {
    fn(a);
    return a;
  };
  const Formula p = parse_formula("p");

  add("ax concludes different formulas", S::K, with(make_app(R::InitAx), [&](RuleApp& a) { a.formula = p; }), {},
      "p -> q", K::SchemaMismatch);
  add("bot with a formula on the left of bot", S::K, make_app(R::InitBot), {}, "p ->", K::SchemaMismatch);
  add("and_l1 builds the conjunction in the wrong order", S::K,
      with(make_app(R::AndL1), [](RuleApp& a) { a.formula = parse_formula("q"); }), {"p -> r"}, "q & p -> r",
      K::SchemaMismatch);
  add("and_l2 addresses a missing formula", S::K,
      with(make_app(R::AndL2, 0, 3), [](RuleApp& a) { a.formula = parse_formula("q"); }), {"p -> r"}, "q & p -> r",
      K::BadAddressing);
  add("and_r over different sequent contexts", S::K,
      with(make_app(R::AndR), [](RuleApp& a) { a.seq2 = 0; a.idx2 = 0; }), {"a -> p", "b -> q"}, "a -> p & q",
      K::ContextMismatch);
  add("neg_l negates the wrong formula", S::K, make_app(R::NegL), {"p -> q"}, "~p, p ->", K::SchemaMismatch);
  add("neg_r changes the sort of its sequent", S::K, make_app(R::NegR), {"p => q"}, "-> q, ~p", K::SortViolation);
  add("ic_l contracts two different formulas", S::K,
      with(make_app(R::IcL), [](RuleApp& a) { a.idx2 = 1; }), {"p, q -> r"}, "p -> r", K::SchemaMismatch);
  add("ic_r addresses a missing duplicate", S::K,
      with(make_app(R::IcR), [](RuleApp& a) { a.idx2 = 4; }), {"-> p, p"}, "-> p", K::BadAddressing);
  add("iw_l drops a side sequent", S::K,
      with(make_app(R::IwL), [](RuleApp& a) { a.formula = parse_formula("s"); }), {"p -> q || -> r"}, "s, p -> q",
      K::ContextMismatch);
  add("iw_r adds another formula than declared", S::K,
      with(make_app(R::IwR), [](RuleApp& a) { a.formula = parse_formula("s"); }), {"p -> q"}, "p -> q, t",
      K::SchemaMismatch);
  add("cut on different formulas", S::K, with(make_app(R::Cut), [](RuleApp& a) { a.seq2 = 0; a.idx2 = 0; }),
      {"-> p", "q -> r"}, "-> r", K::SchemaMismatch);
  add("ew adds another sequent than declared", S::K,
      with(make_app(R::Ew), [](RuleApp& a) { a.sequent = parse_sequent("q -> q"); }), {"p -> p"},
      "p -> p || r -> r", K::SchemaMismatch);
  add("merge of sequents of different sorts", S::K,
      with(make_app(R::Merge), [](RuleApp& a) { a.seq2 = 1; }), {"p -> || q =>"}, "p, q ->", K::SortViolation);
  add("split on a '=>' sequent", S::K, with(make_app(R::Split), [](RuleApp& a) { a.pick_ant = {0}; }),
      {"p, q => r"}, "q => r || p =>", K::SortViolation);
  add("nec1 with a nonempty antecedent", S::K, make_app(R::Nec1), {"p => q"}, "p -> box q", K::SchemaMismatch);
  add("nec2 with a side sequent", S::K, make_app(R::Nec2), {"p -> p || q -> q"}, "p => p || q -> q",
      K::ContextMismatch);
  add("k on a '->' sequent", S::K, make_app(R::K), {"p -> q"}, "-> q || box p ->", K::SortViolation);
  add("d with a nonempty succedent", S::D, make_app(R::D), {"=> p"}, "-> p", K::SchemaMismatch);
  add("t1 boxes another formula", S::T, make_app(R::T1), {"p -> p"}, "box q -> p", K::SchemaMismatch);
  add("t2 on a '->' sequent", S::T, make_app(R::T2), {"p -> p"}, "p -> p", K::SortViolation);
  add("4r with a nonempty antecedent", S::K4, make_app(R::FourR), {"p => q"}, "p => box q", K::SchemaMismatch);
  add("4l on a '->' sequent", S::K4, make_app(R::FourL), {"box p -> q"}, "-> q || box p ->", K::SortViolation);
  add("b1 on a '=>' sequent", S::KB, make_app(R::B1), {"box p => q"}, "=> q || box box p =>", K::SortViolation);
  add("b2 with a '->' context sequent", S::KB, make_app(R::B2, 1), {"p -> q || r -> s"}, "p -> q || r => s",
      K::SortViolation);
  add("51 on a '=>' sequent", S::K5, make_app(R::Five1), {"box p => q"}, "=> q || box p =>", K::SortViolation);
  add("52 with a '->' context sequent", S::K5, make_app(R::Five2, 1), {"p -> q || r -> s"}, "p -> q || r => s",
      K::SortViolation);
  add("b25 flips its own principal sequent", S::KB5,
      with(make_app(R::B25, 1), [](RuleApp& a) { a.flip = {1}; }), {"p => q || r -> s"}, "p -> q || r => s",
      K::BadAddressing);
  add("and_r with a single premise", S::K, with(make_app(R::AndR), [](RuleApp& a) { a.seq2 = 0; a.idx2 = 0; }),
      {"-> p"}, "-> p & p", K::WrongArity);
  add("52 used in K", S::K, make_app(R::Five2, 1), {"p => q || r -> s"}, "p => q || r => s", K::RuleUnavailable);
  add("t1 used in K4", S::K4, make_app(R::T1), {"p -> p"}, "box p -> p", K::RuleUnavailable);
  return cs;
}

// The first failure kind reported for a case, or nothing when it checks.
inline std::optional<StepError> run_negative(const NegativeCase& c) {
  std::vector<Proof> leaves;
  for (const auto& h : c.premises) leaves.push_back(open_leaf(parse_hypersequent(h)));
  const Proof p = mk_declared(c.app, std::move(leaves), parse_hypersequent(c.conclusion));
  CheckOptions opts;
  opts.allow_open = true;
  const CheckReport r = check_proof(p, c.system, opts);
  if (r.ok) return std::nullopt;
  return r.failures.front().error;
}

}  // namespace hyperseq::testing
