#include <algorithm>

#include "hyperseq/derived.hpp"

namespace hyperseq {

namespace {

constexpr std::array<const char*, 12> kDerivedNames{
    "s4_box_l", "s4_box_r", "s5_box_r", "kd4", "std_box_l", "std_box_r", "std_move",
    "imp_l",    "imp_r",    "or_l",     "or_r", "cut"};

[[noreturn]] void shape(const std::string& msg) { throw ShapeError(msg); }

const Sequent& single_plain(const Proof& p, const char* rule) {
  const Hypersequent& h = p->conclusion;
  if (h.size() != 1 || h[0].sort != Sort::Plain)
    shape(std::string(rule) + " needs a single '->' sequent");
  return h[0];
}

void need_all_modal(const Proof& p, const char* rule) {
  for (const auto& s : p->conclusion.seqs)
    if (s.sort != Sort::Modal) shape(std::string(rule) + " needs a hypersequent of '=>' sequents");
}

void need_index(const std::vector<Formula>& fs, int k, const char* rule) {
  if (k < 0 || static_cast<std::size_t>(k) >= fs.size()) shape(std::string(rule) + ": index out of range");
}

void need_seq(const Proof& p, int s, const char* rule) {
  if (s < 0 || static_cast<std::size_t>(s) >= p->conclusion.size())
    shape(std::string(rule) + ": sequent index out of range");
}

std::vector<int> range(int from, int to) {
  std::vector<int> out;
  for (int i = from; i < to; ++i) out.push_back(i);
  return out;
}

// Moves every antecedent formula of the modal sequent `seq` to its own
// `box A ->` sequent by 4l and merges those; returns the merged index or -1.
Proof four_l_all(Proof p, int seq, int* merged) {
  const int before = static_cast<int>(p->conclusion.size());
  while (!seq_of(p, seq).ant.empty()) p = pb::four_l(p, seq, 0);
  const int after = static_cast<int>(p->conclusion.size());
  *merged = -1;
  if (after > before) p = macro::merge_all(p, range(before, after), merged);
  return p;
}

}  // namespace

const char* derived_name(DerivedRule r) { return kDerivedNames[static_cast<std::size_t>(r)]; }

std::optional<DerivedRule> parse_derived(std::string_view name) {
  for (std::size_t i = 0; i < kDerivedNames.size(); ++i)
    if (name == kDerivedNames[i]) return static_cast<DerivedRule>(i);
  return std::nullopt;
}

const std::vector<DerivedRule>& all_derived() {
  static const std::vector<DerivedRule> all = [] {
    std::vector<DerivedRule> out;
    for (std::size_t i = 0; i < kDerivedNames.size(); ++i) out.push_back(static_cast<DerivedRule>(i));
    return out;
  }();
  return all;
}

SystemId derived_system(DerivedRule r) {
  switch (r) {
    case DerivedRule::S4BoxL:
    case DerivedRule::S4BoxR: return SystemId::S4;
    case DerivedRule::S5BoxR:
    case DerivedRule::StdBoxL:
    case DerivedRule::StdBoxR:
    case DerivedRule::StdMove: return SystemId::S5;
    case DerivedRule::KD4Rule: return SystemId::KD4;
    default: return SystemId::K;
  }
}

namespace derived {

Proof s4_box_l(Proof p, int idx) {
  need_index(single_plain(p, "s4_box_l").ant, idx, "s4_box_l");
  p = pb::k(pb::nec2(p), 0, idx);  // G => D | box A ->
  p = pb::t2(p, 0);                // G -> D | box A ->
  return pb::merge(p, 1, 0);
}

Proof s4_box_r(Proof p) {
  const Sequent& s = single_plain(p, "s4_box_r");
  if (s.suc.size() != 1) shape("s4_box_r needs exactly one succedent formula");
  for (const auto& f : s.ant)
    if (!f.is_boxed()) shape("s4_box_r needs a boxed antecedent, found " + to_string(f));
  int g = -1;
  p = four_l_all(pb::nec2(p), 0, &g);  // => A | box G ->
  p = pb::nec1(p, 0);                  // -> box A | box G ->
  return g < 0 ? p : pb::merge(p, g, 0);
}

Proof s5_box_r(Proof p, int idx) {
  const Sequent s = single_plain(p, "s5_box_r");
  need_index(s.suc, idx, "s5_box_r");
  for (const auto& f : s.ant)
    if (!f.is_boxed()) shape("s5_box_r needs a boxed antecedent, found " + to_string(f));
  std::vector<Formula> delta;
  for (std::size_t k = 0; k < s.suc.size(); ++k) {
    if (static_cast<int>(k) == idx) continue;
    if (!s.suc[k].is_boxed()) shape("s5_box_r needs boxed side succedents, found " + to_string(s.suc[k]));
    delta.push_back(s.suc[k]);
  }
  int g = -1;
  p = four_l_all(pb::nec2(p), 0, &g);  // => box D, A | box G ->
  // ~:l on every box D, keeping track of A.
  int pos = idx;
  while (seq_of(p, 0).suc.size() > 1) {
    const int k = pos == 0 ? 1 : 0;
    p = pb::neg_l(p, 0, k);
    if (k < pos) --pos;
  }
  // K on every ~box D: => A | box G -> | box ~box D ->
  const int before = static_cast<int>(p->conclusion.size());
  while (!seq_of(p, 0).ant.empty()) p = pb::k(p, 0, 0);
  const int after = static_cast<int>(p->conclusion.size());
  if (after == before) {
    p = pb::nec1(p, 0);
    return g < 0 ? p : pb::merge(p, g, 0);
  }
  int c = -1;
  p = macro::merge_all(p, range(before, after), &c);
  // Cut each box ~box D against -> box D, box ~box D.
  for (const auto& d : delta) {
    const Formula cf = Formula::box(Formula::neg(d));
    std::vector<Sequent> side;
    for (std::size_t x = 0; x < p->conclusion.size(); ++x)
      if (static_cast<int>(x) != c) side.push_back(p->conclusion[x]);
    Proof lemma = macro::append(five_lemma(d.sub()), side);
    p = pb::cut(lemma, p, 0, find_formula(seq_of(lemma, 0), Side::Suc, cf), c,
                find_formula(seq_of(p, c), Side::Ant, cf));
    c = 0;
  }
  // Layout now: -> box D.. | => A | box G ->
  p = pb::nec1(p, 1);
  return macro::merge_all(p, g < 0 ? std::vector<int>{0, 1} : std::vector<int>{2, 0, 1});
}

Proof kd4_rule(Proof p, const std::vector<int>& boxed) {
  const Sequent s = single_plain(p, "kd4");
  if (!s.suc.empty()) shape("kd4 needs an empty succedent");
  std::vector<Formula> gamma;
  std::vector<Formula> delta;
  for (std::size_t k = 0; k < s.ant.size(); ++k) {
    if (std::find(boxed.begin(), boxed.end(), static_cast<int>(k)) != boxed.end()) {
      if (!s.ant[k].is_boxed()) shape("kd4: picked formula " + to_string(s.ant[k]) + " is not boxed");
      delta.push_back(s.ant[k]);
    } else {
      gamma.push_back(s.ant[k]);
    }
  }
  for (int k : boxed) need_index(s.ant, k, "kd4");
  p = pb::nec2(p);
  std::vector<int> parts;
  int n = static_cast<int>(p->conclusion.size());
  for (const auto& f : gamma) p = pb::k(p, 0, find_formula(seq_of(p, 0), Side::Ant, f));
  if (!gamma.empty()) {
    int at = -1;
    p = macro::merge_all(p, range(n, static_cast<int>(p->conclusion.size())), &at);
    parts.push_back(at);
  }
  n = static_cast<int>(p->conclusion.size());
  for (const auto& f : delta) p = pb::four_l(p, 0, find_formula(seq_of(p, 0), Side::Ant, f));
  if (!delta.empty()) {
    int at = -1;
    p = macro::merge_all(p, range(n, static_cast<int>(p->conclusion.size())), &at);
    parts.push_back(at);
  }
  p = pb::d(p, 0);  // box G -> | box D -> | ->
  parts.push_back(0);
  return macro::merge_all(p, parts);
}

Proof std_box_l(Proof p, int seq, int idx) {
  need_all_modal(p, "std_box_l");
  need_seq(p, seq, "std_box_l");
  need_index(seq_of(p, seq).ant, idx, "std_box_l");
  return pb::t1(p, seq, idx);
}

Proof std_box_r(Proof p, int seq) {
  need_all_modal(p, "std_box_r");
  need_seq(p, seq, "std_box_r");
  const Sequent& s = seq_of(p, seq);
  if (s.suc.size() != 1) shape("std_box_r needs exactly one succedent formula");
  for (const auto& f : s.ant)
    if (!f.is_boxed()) shape("std_box_r needs a boxed antecedent, found " + to_string(f));
  int g = -1;
  p = four_l_all(p, seq, &g);  // H | => A | box G ->
  p = pb::nec1(p, seq);        // H | -> box A | box G ->
  int at = seq;
  if (g >= 0) p = macro::merge_all(p, {g, seq}, &at);
  return pb::five2(p, at);
}

Proof std_move(Proof p, int seq, int idx, int seq2) {
  need_all_modal(p, "std_move");
  need_seq(p, seq, "std_move");
  need_seq(p, seq2, "std_move");
  if (seq == seq2) shape("std_move needs two distinct sequents");
  need_index(seq_of(p, seq).ant, idx, "std_move");
  if (!seq_of(p, seq).ant[static_cast<std::size_t>(idx)].is_boxed())
    shape("std_move moves a boxed formula");
  p = pb::four_l(p, seq, idx);  // H | T => P | G => D | box A ->
  const int n = static_cast<int>(p->conclusion.size()) - 1;
  p = pb::five2(p, n);          // ... | box A =>
  return pb::merge(p, seq2, n);
}

}  // namespace derived

Proof expand_derived(DerivedRule r, const DerivedInstance& in) {
  const std::size_t want = (r == DerivedRule::ImpL || r == DerivedRule::OrL || r == DerivedRule::MultCut) ? 2 : 1;
  if (in.premises.size() != want)
    shape(std::string(derived_name(r)) + " takes " + std::to_string(want) + " premise(s)");
  const Proof p = open_leaf(in.premises[0]);
  const Proof q = want == 2 ? open_leaf(in.premises[1]) : nullptr;
  auto need_formula = [&](const Proof& x, int s, Side side, int k) {
    need_seq(x, s, derived_name(r));
    need_index(seq_of(x, s).side(side), k, derived_name(r));
  };
  try {
    switch (r) {
      case DerivedRule::S4BoxL: return derived::s4_box_l(p, in.idx);
      case DerivedRule::S4BoxR: return derived::s4_box_r(p);
      case DerivedRule::S5BoxR: return derived::s5_box_r(p, in.idx);
      case DerivedRule::KD4Rule: return derived::kd4_rule(p, in.pick);
      case DerivedRule::StdBoxL: return derived::std_box_l(p, in.seq, in.idx);
      case DerivedRule::StdBoxR: return derived::std_box_r(p, in.seq);
      case DerivedRule::StdMove: return derived::std_move(p, in.seq, in.idx, in.seq2);
      case DerivedRule::ImpL:
        need_formula(p, in.seq, Side::Suc, in.idx);
        need_formula(q, in.seq2, Side::Ant, in.idx2);
        return macro::imp_l(p, in.seq, in.idx, q, in.seq2, in.idx2);
      case DerivedRule::ImpR:
        need_formula(p, in.seq, Side::Ant, in.idx);
        need_formula(p, in.seq, Side::Suc, in.idx2);
        return macro::imp_r(p, in.seq, in.idx, in.idx2);
      case DerivedRule::OrL:
        need_formula(p, in.seq, Side::Ant, in.idx);
        need_formula(q, in.seq2, Side::Ant, in.idx2);
        return macro::or_l(p, in.seq, in.idx, q, in.seq2, in.idx2);
      case DerivedRule::OrR:
        need_formula(p, in.seq, Side::Suc, in.idx);
        need_formula(p, in.seq, Side::Suc, in.idx2);
        if (in.idx == in.idx2) shape("or_r needs two distinct succedent positions");
        return macro::or_r(p, in.seq, in.idx, in.idx2);
      case DerivedRule::MultCut:
        need_formula(p, in.seq, Side::Suc, in.idx);
        need_formula(q, in.seq2, Side::Ant, in.idx2);
        return macro::mcut(p, in.seq, in.idx, q, in.seq2, in.idx2);
    }
  } catch (const StepFailure& e) {
    throw ShapeError(std::string(derived_name(r)) + ": " + e.what());
  }
  shape("unknown derived rule");
}

}  // namespace hyperseq
