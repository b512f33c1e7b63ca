#include "hyperseq/corpus.hpp"

namespace hyperseq {

namespace {

Formula f(const char* s) { return parse_formula(s); }

Proof closed(DerivedRule r, const DerivedInstance& in, const std::vector<Proof>& fills) {
  return plug(expand_derived(r, in), fills);
}

}  // namespace

Proof gamma_counterexample() {
  const Formula p = f("p");
  const Formula bp = Formula::box(p);
  Proof left = pb::k(pb::ax(bp, Sort::Modal), 0, 0);  // => box p | box box p ->
  left = pb::b1(left, 1, 0);                          // => box p | -> | box box box p =>
  left = pb::neg_r(left, 2, 0);                       // => box p | -> | => ~box box box p
  left = pb::nec1(left, 2);                           // => box p | -> | -> box ~box box box p
  left = pb::merge(left, 1, 2);                       // => box p | -> box ~box box box p
  left = pb::b2(left, 1);                             // -> box p | => box ~box box box p
  Proof right = pb::k(pb::ax(p, Sort::Modal), 0, 0);  // => p | box p ->
  return macro::mcut(left, 0, 0, right, 1, 0);
}

std::vector<CorpusEntry> golden_corpus() {
  const Formula p = f("p");
  const Formula q = f("q");
  std::vector<CorpusEntry> out;
  auto add = [&](std::string name, SystemId sys, Proof pr, std::string fig) {
    out.push_back({std::move(name), sys, std::move(pr), std::move(fig)});
  };
  add("axiom_k", SystemId::K, axiom_template(AxiomName::K, p, q), "K axiom box(p > q) > (box p > box q)");
  add("axiom_t", SystemId::T, axiom_template(AxiomName::T, p), "T axiom box p -> p by t1");
  add("axiom_d", SystemId::D, axiom_template(AxiomName::D, p), "D axiom -> ~box bot");
  add("axiom_4", SystemId::K4, axiom_template(AxiomName::Four, p), "4 axiom box p -> box box p via 4r");
  add("axiom_b", SystemId::KB, axiom_template(AxiomName::B, p), "B axiom via b2");
  add("axiom_5", SystemId::K5, axiom_template(AxiomName::Five, p), "5 axiom via 52");
  add("necessitation", SystemId::K, necessitate(macro::imp_r(pb::ax(p), 0, 0, 0)),
      "necessitation as nec1 over nec2: -> box(p > p)");
  add("box_initial", SystemId::K, macro::eta_initial(Formula::box(p), Sort::Modal),
      "box p => box p from p -> p");
  add("s4_box_l", SystemId::S4, derived::s4_box_l(pb::ax(p), 0), "S4 box:l giving box p -> p");
  add("s4_box_r", SystemId::S4, derived::s4_box_r(pb::ax(Formula::box(p))), "S4 box:r giving box p -> box p");
  add("s5_box_r", SystemId::S5,
      derived::s5_box_r(pb::iw_r(pb::t1(pb::ax(p), 0, 0), 0, Formula::box(q)), 0),
      "traditional S5 box:r giving box p -> box p, box q from box p -> p, box q");
  add("s5_box_r_plain", SystemId::S5, derived::s5_box_r(pb::ax(Formula::box(p)), 0),
      "traditional S5 box:r without side succedents");
  add("kd4_rule", SystemId::KD4,
      derived::kd4_rule(pb::iw_l(pb::neg_l(pb::ax(p), 0, 0), 0, Formula::box(q)), {2}),
      "KD4 rule from p, ~p, box q ->");
  add("std_box_l", SystemId::S5, derived::std_box_l(pb::ax(p, Sort::Modal), 0, 0), "S5 standard box:l");
  add("std_box_r", SystemId::S5, derived::std_box_r(pb::ax(Formula::box(p), Sort::Modal), 0),
      "S5 standard box:r");
  add("std_move", SystemId::S5,
      derived::std_move(pb::ew(pb::ax(Formula::box(p), Sort::Modal), Sequent{Sort::Modal, {}, {}}), 0, 0, 1),
      "S5 standard move");
  {
    DerivedInstance in;
    in.premises = {parse_hypersequent("p -> p"), parse_hypersequent("q -> q")};
    add("imp_l", SystemId::K, closed(DerivedRule::ImpL, in, {pb::ax(p), pb::ax(q)}), "implication left");
  }
  add("mult_cut", SystemId::K,
      macro::mcut(pb::iw_r(pb::ax(p), 0, q), 0, 0, pb::iw_l(pb::ax(p), 0, q), 0, 0),
      "multiplicative cut");
  const Proof gc = gamma_counterexample();
  add("gamma_kb", SystemId::KB, gc, "with-cut proof of => box ~box box box p | => p");
  add("gamma_kdb", SystemId::KDB, gc, "the same proof in KDB");
  add("gamma_ktb", SystemId::B, gc, "the same proof in KTB");
  return out;
}

std::vector<HilbertExample> hilbert_examples() {
  auto ax = [](AxiomName a, const char* x, const char* b = "bot") {
    return HilbertStep{AxiomInstance{false, a, f(x), f(b)}};
  };
  auto pc = [](const char* x) { return HilbertStep{AxiomInstance{true, AxiomName::K, f(x), Formula::bot()}}; };
  std::vector<HilbertExample> out;
  out.push_back({"t_axiom", SystemId::T, {{ax(AxiomName::T, "p")}}});
  out.push_back({"nec_tautology", SystemId::K, {{pc("p > p"), Necessitation{0}}}});
  out.push_back({"mp_tautology", SystemId::K, {{pc("p > p"), pc("(p > p) > (p > p)"), ModusPonens{0, 1}}}});
  out.push_back({"k_distribution", SystemId::K,
                 {{pc("p > (q > p)"), Necessitation{0}, ax(AxiomName::K, "p", "q > p"), ModusPonens{1, 2}}}});
  out.push_back({"four_contrapositive", SystemId::K4,
                 {{ax(AxiomName::Four, "p"), pc("(box p > box box p) > (~box box p > ~box p)"), ModusPonens{0, 1}}}});
  out.push_back({"five_necessitated", SystemId::K5, {{ax(AxiomName::Five, "p"), Necessitation{0}}}});
  out.push_back({"s5_t_and_5", SystemId::S5,
                 {{ax(AxiomName::T, "~box p"), ax(AxiomName::Five, "p"),
                   pc("(box ~box p > ~box p) > ((~box p > box ~box p) > (box ~box p > ~box p))"), ModusPonens{0, 2},
                   ModusPonens{1, 3}}}});
  return out;
}

}  // namespace hyperseq
