#include "hyperseq/derived.hpp"

namespace hyperseq {

namespace {

constexpr std::array<const char*, 6> kAxiomNames{"K", "D", "T", "4", "B", "5"};

}  // namespace

const char* axiom_name(AxiomName a) { return kAxiomNames[static_cast<std::size_t>(a)]; }

std::optional<AxiomName> parse_axiom(std::string_view name) {
  for (std::size_t i = 0; i < kAxiomNames.size(); ++i)
    if (name == kAxiomNames[i]) return static_cast<AxiomName>(i);
  return std::nullopt;
}

Formula axiom_formula(AxiomName a, const Formula& x, const Formula& b) {
  using F = Formula;
  switch (a) {
    case AxiomName::K: return F::imp(F::box(F::imp(x, b)), F::imp(F::box(x), F::box(b)));
    case AxiomName::D: return F::neg(F::box(F::bot()));
    case AxiomName::T: return F::imp(F::box(x), x);
    case AxiomName::Four: return F::imp(F::box(x), F::box(F::box(x)));
    case AxiomName::B: return F::imp(F::neg(x), F::box(F::neg(F::box(x))));
    case AxiomName::Five: return F::imp(F::neg(F::box(x)), F::box(F::neg(F::box(x))));
  }
  return F::bot();
}

SystemId minimal_system(AxiomName a) {
  switch (a) {
    case AxiomName::K: return SystemId::K;
    case AxiomName::D: return SystemId::D;
    case AxiomName::T: return SystemId::T;
    case AxiomName::Four: return SystemId::K4;
    case AxiomName::B: return SystemId::KB;
    case AxiomName::Five: return SystemId::K5;
  }
  return SystemId::K;
}

Proof five_lemma(const Formula& a) {
  Proof p = pb::k(pb::ax(a, Sort::Modal), 0, 0);  // => A | box A ->
  p = pb::neg_r(p, 1, 0);                         // => A | -> ~box A
  p = pb::five2(p, 1);                            // => A | => ~box A
  p = pb::nec1(p, 1);                             // => A | -> box ~box A
  p = pb::nec1(p, 0);                             // -> box A | -> box ~box A
  return pb::merge(p, 1, 0);                      // -> box ~box A, box A
}

Proof axiom_template(AxiomName name, const Formula& a, std::optional<Formula> b) {
  if ((name == AxiomName::K) != b.has_value())
    throw std::invalid_argument("the second formula is used by the K template only");
  switch (name) {
    case AxiomName::K: {
      const Formula ab = Formula::imp(a, *b);
      Proof p = macro::imp_l(pb::ax(a), 0, 0, pb::ax(*b), 0, 0);  // A, A > B -> B
      p = pb::nec2(p);
      p = pb::k(p, 0, find_formula(seq_of(p, 0), Side::Ant, ab));
      p = pb::k(p, 0, find_formula(seq_of(p, 0), Side::Ant, a));
      p = pb::nec1(p, 0);      // -> box B | box(A > B) -> | box A ->
      p = pb::merge(p, 1, 2);  // -> box B | box(A > B), box A ->
      p = pb::merge(p, 1, 0);  // box(A > B), box A -> box B
      return macro::imp_r(p, 0, find_formula(seq_of(p, 0), Side::Ant, Formula::box(a)), 0);
    }
    case AxiomName::T: return pb::t1(pb::ax(a), 0, 0);
    case AxiomName::Four: {
      Proof p = pb::k(pb::ax(a, Sort::Modal), 0, 0);  // => A | box A ->
      p = pb::four_r(p, 0);                           // => box A | box A ->
      p = pb::nec1(p, 0);                             // -> box box A | box A ->
      return pb::merge(p, 1, 0);
    }
    case AxiomName::D: {
      Proof p = pb::k(pb::bot(Sort::Modal), 0, 0);  // => | box bot ->
      p = pb::d(p, 0);                              // -> | box bot ->
      p = pb::merge(p, 1, 0);
      return pb::neg_r(p, 0, 0);
    }
    case AxiomName::B: {
      Proof p = pb::k(pb::ax(a, Sort::Modal), 0, 0);  // => A | box A ->
      p = pb::neg_r(p, 1, 0);                         // => A | -> ~box A
      p = pb::b2(p, 1);                               // -> A | => ~box A
      p = pb::nec1(p, 1);                             // -> A | -> box ~box A
      p = pb::merge(p, 1, 0);                         // -> box ~box A, A
      return pb::neg_l(p, 0, 1);
    }
    case AxiomName::Five: return pb::neg_l(five_lemma(a), 0, 1);
  }
  throw std::invalid_argument("unknown axiom");
}

Proof necessitate(Proof p) {
  const Hypersequent& h = p->conclusion;
  if (h.size() != 1 || h[0].sort != Sort::Plain || !h[0].ant.empty() || h[0].suc.size() != 1)
    throw std::invalid_argument("necessitation needs a proof of '-> A'");
  return pb::nec1(pb::nec2(std::move(p)), 0);
}

}  // namespace hyperseq
