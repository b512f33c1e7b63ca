#include <algorithm>

#include "replay.hpp"

namespace hyperseq {

const char* std_rule_name(StdRule r) {
  switch (r) {
    case StdRule::Ax: return "ax";
    case StdRule::Bot: return "bot";
    case StdRule::AndL1: return "and_l1";
    case StdRule::AndL2: return "and_l2";
    case StdRule::AndR: return "and_r";
    case StdRule::NegL: return "neg_l";
    case StdRule::NegR: return "neg_r";
    case StdRule::IcL: return "ic_l";
    case StdRule::IcR: return "ic_r";
    case StdRule::IwL: return "iw_l";
    case StdRule::IwR: return "iw_r";
    case StdRule::Cut: return "cut";
    case StdRule::Modal: return "box";
    case StdRule::ModalD: return "box_d";
    case StdRule::BoxL: return "box_l";
  }
  return "?";
}

namespace {

using namespace xf;

StandardProof node(StdRule r, Sequent c, std::vector<StandardProof> ps, std::optional<Formula> f = std::nullopt,
                   std::vector<bool> kb = {}) {
  auto n = std::make_shared<StdNode>();
  n->rule = r;
  c.sort = Sort::Plain;
  n->conclusion = std::move(c);
  n->premises = std::move(ps);
  n->formula = std::move(f);
  n->keep_box = std::move(kb);
  return n;
}

Sequent flat(const Hypersequent& h) {
  Sequent s = concat_hyper(h);
  s.sort = Sort::Plain;
  return s;
}

const Formula& formula_at(const Hypersequent& h, int s, Side side, int k) {
  return h[static_cast<std::size_t>(s)].side(side)[static_cast<std::size_t>(k)];
}

class ToStd {
 public:
  explicit ToStd(SystemId sys) : sys_(sys) {}

  StandardProof go(const Proof& n) {
    if (n->open) throw TransformError(Kind::Unsupported, "open leaf");
    const RuleApp& a = n->app;
    const Sequent c = flat(n->conclusion);
    auto prem = [&](int k) { return go(n->premises[static_cast<std::size_t>(k)]); };
    auto ph = [&](int k) -> const Hypersequent& { return n->premises[static_cast<std::size_t>(k)]->conclusion; };
    switch (a.rule) {
      case RuleId::InitAx: return node(StdRule::Ax, c, {}, *a.formula);
      case RuleId::InitBot: return node(StdRule::Bot, c, {});
      case RuleId::AndL1:
        return node(StdRule::AndL1, c, {prem(0)}, Formula::conj(formula_at(ph(0), a.seq, Side::Ant, a.idx), *a.formula));
      case RuleId::AndL2:
        return node(StdRule::AndL2, c, {prem(0)}, Formula::conj(*a.formula, formula_at(ph(0), a.seq, Side::Ant, a.idx)));
      case RuleId::AndR: {
        const int j = a.seq2 < 0 ? a.seq : a.seq2;
        const int k2 = a.idx2 < 0 ? a.idx : a.idx2;
        return node(StdRule::AndR, c, {prem(0), prem(1)},
                    Formula::conj(formula_at(ph(0), a.seq, Side::Suc, a.idx), formula_at(ph(1), j, Side::Suc, k2)));
      }
      case RuleId::NegL:
        return node(StdRule::NegL, c, {prem(0)}, Formula::neg(formula_at(ph(0), a.seq, Side::Suc, a.idx)));
      case RuleId::NegR:
        return node(StdRule::NegR, c, {prem(0)}, Formula::neg(formula_at(ph(0), a.seq, Side::Ant, a.idx)));
      case RuleId::IcL: return node(StdRule::IcL, c, {prem(0)}, formula_at(ph(0), a.seq, Side::Ant, a.idx));
      case RuleId::IcR: return node(StdRule::IcR, c, {prem(0)}, formula_at(ph(0), a.seq, Side::Suc, a.idx));
      case RuleId::IwL: return node(StdRule::IwL, c, {prem(0)}, *a.formula);
      case RuleId::IwR: return node(StdRule::IwR, c, {prem(0)}, *a.formula);
      case RuleId::Ew: {
        StandardProof p = prem(0);
        Sequent cur = p->conclusion;
        for (Side side : {Side::Ant, Side::Suc}) {
          for (const auto& f : a.sequent->side(side)) {
            cur.side(side).push_back(f);
            p = node(side == Side::Ant ? StdRule::IwL : StdRule::IwR, cur, {p}, f);
          }
        }
        return p;
      }
      case RuleId::Merge:
      case RuleId::Split:
      case RuleId::Nec2:
      case RuleId::T2:
        return prem(0);
      case RuleId::Cut: {
        const Formula f = formula_at(ph(0), a.seq, Side::Suc, a.idx);
        const int j = a.seq2 < 0 ? a.seq : a.seq2;
        Sequent s0 = flat(ph(0));
        Sequent s1 = flat(ph(1));
        Sequent cur{Sort::Plain, {}, {}};
        for (Side side : {Side::Ant, Side::Suc}) {
          cur.side(side) = s0.side(side);
          cur.side(side).insert(cur.side(side).end(), s1.side(side).begin(), s1.side(side).end());
        }
        cur.suc.erase(std::find(cur.suc.begin(), cur.suc.end(), f));
        cur.ant.erase(std::find(cur.ant.begin() + static_cast<long>(s0.ant.size()), cur.ant.end(), f));
        StandardProof p = node(StdRule::Cut, cur, {prem(0), prem(1)}, f);
        // The shared side hypersequent occurs twice.
        for (std::size_t s = 0; s < ph(1).size(); ++s) {
          if (static_cast<int>(s) == j) continue;
          for (Side side : {Side::Ant, Side::Suc}) {
            for (const auto& g : ph(1)[s].side(side)) {
              auto& fs = cur.side(side);
              fs.erase(std::find(fs.begin(), fs.end(), g));
              p = node(side == Side::Ant ? StdRule::IcL : StdRule::IcR, cur, {p}, g);
            }
          }
        }
        return p;
      }
      case RuleId::T1: {
        if (!system_has(sys_, RuleId::T1)) break;
        return node(StdRule::BoxL, c, {prem(0)}, Formula::box(formula_at(ph(0), a.seq, Side::Ant, a.idx)));
      }
      case RuleId::Nec1:
      case RuleId::D: {
        Proof q = n->premises[0];
        int i = a.seq;
        std::vector<Formula> ant;
        std::vector<bool> keep;
        while (q->conclusion.size() > 1) {
          if (!rule_is(q, {RuleId::K, RuleId::FourL}) || q->app.seq != i)
            throw TransformError(Kind::NotRegular, std::string(rule_name(a.rule)) + " outside a critical part");
          const Formula& f = formula_at(q->premises[0]->conclusion, i, Side::Ant, q->app.idx);
          const bool four = q->app.rule == RuleId::FourL;
          ant.push_back(four ? f : Formula::box(f));
          keep.push_back(four);
          q = q->premises[0];
        }
        if (q->conclusion[0].sort != Sort::Modal)
          throw TransformError(Kind::NotRegular, "critical part does not start from a '=>' sequent");
        std::reverse(ant.begin(), ant.end());
        std::reverse(keep.begin(), keep.end());
        const Sequent& top = q->conclusion[0];
        Sequent cc{Sort::Plain, ant, {}};
        if (a.rule == RuleId::Nec1) cc.suc.push_back(Formula::box(top.suc.at(0)));
        return node(a.rule == RuleId::Nec1 ? StdRule::Modal : StdRule::ModalD, cc, {go(q)}, std::nullopt, keep);
      }
      case RuleId::K:
      case RuleId::FourL:
      case RuleId::FourR:
        throw TransformError(Kind::NotRegular, std::string(rule_name(a.rule)) + " outside a critical part");
      default:
        break;
    }
    throw TransformError(Kind::WrongGroup, std::string(rule_name(a.rule)) + " has no standard counterpart");
  }

 private:
  SystemId sys_;
};

std::optional<std::vector<Formula>> minus(std::vector<Formula> fs, const Formula& f) {
  auto it = std::find(fs.begin(), fs.end(), f);
  if (it == fs.end()) return std::nullopt;
  fs.erase(it);
  return fs;
}

std::vector<Formula> plus(std::vector<Formula> fs, const Formula& f) {
  fs.push_back(f);
  return fs;
}

bool same(const Sequent& a, const Sequent& b) {
  return multiset_equal(a.ant, b.ant) && multiset_equal(a.suc, b.suc);
}

// Expected relation between premises and conclusion of one standard node.
std::optional<std::string> check_node(const StdNode& n, SystemId sys) {
  const Sequent& c = n.conclusion;
  auto arity = [&](std::size_t k) -> std::optional<std::string> {
    if (n.premises.size() != k) return std::string("wrong number of premises");
    if (k > 0 && !n.formula && n.rule != StdRule::Modal && n.rule != StdRule::ModalD)
      return std::string("missing principal formula");
    return std::nullopt;
  };
  auto bad = [&](const std::string& m) { return std::optional<std::string>(std::string(std_rule_name(n.rule)) + ": " + m); };
  auto p = [&](std::size_t k) -> const Sequent& { return n.premises[k]->conclusion; };
  switch (n.rule) {
    case StdRule::Ax:
      if (!n.formula || !same(c, Sequent{Sort::Plain, {*n.formula}, {*n.formula}})) return bad("not A -> A");
      return std::nullopt;
    case StdRule::Bot:
      if (!same(c, Sequent{Sort::Plain, {Formula::bot()}, {}})) return bad("not bot ->");
      return std::nullopt;
    case StdRule::AndL1:
    case StdRule::AndL2: {
      if (auto e = arity(1)) return bad(*e);
      const Formula& f = *n.formula;
      if (f.op() != Op::And) return bad("principal is not a conjunction");
      auto rest = minus(p(0).ant, n.rule == StdRule::AndL1 ? f.left() : f.right());
      if (!rest || !same(c, Sequent{Sort::Plain, plus(*rest, f), p(0).suc})) return bad("schema mismatch");
      return std::nullopt;
    }
    case StdRule::AndR: {
      if (auto e = arity(2)) return bad(*e);
      const Formula& f = *n.formula;
      if (f.op() != Op::And) return bad("principal is not a conjunction");
      auto r0 = minus(p(0).suc, f.left());
      auto r1 = minus(p(1).suc, f.right());
      auto rc = minus(c.suc, f);
      if (!r0 || !r1 || !rc || !multiset_equal(*r0, *rc) || !multiset_equal(*r1, *rc) ||
          !multiset_equal(p(0).ant, c.ant) || !multiset_equal(p(1).ant, c.ant))
        return bad("schema mismatch");
      return std::nullopt;
    }
    case StdRule::NegL: {
      if (auto e = arity(1)) return bad(*e);
      if (n.formula->op() != Op::Neg) return bad("principal is not a negation");
      auto r = minus(p(0).suc, n.formula->sub());
      if (!r || !same(c, Sequent{Sort::Plain, plus(p(0).ant, *n.formula), *r})) return bad("schema mismatch");
      return std::nullopt;
    }
    case StdRule::NegR: {
      if (auto e = arity(1)) return bad(*e);
      if (n.formula->op() != Op::Neg) return bad("principal is not a negation");
      auto r = minus(p(0).ant, n.formula->sub());
      if (!r || !same(c, Sequent{Sort::Plain, *r, plus(p(0).suc, *n.formula)})) return bad("schema mismatch");
      return std::nullopt;
    }
    case StdRule::IcL:
    case StdRule::IcR: {
      if (auto e = arity(1)) return bad(*e);
      const Side side = n.rule == StdRule::IcL ? Side::Ant : Side::Suc;
      Sequent want = p(0);
      auto r = minus(want.side(side), *n.formula);
      if (!r || std::find(r->begin(), r->end(), *n.formula) == r->end()) return bad("no duplicate to contract");
      want.side(side) = *r;
      if (!same(c, want)) return bad("schema mismatch");
      return std::nullopt;
    }
    case StdRule::IwL:
    case StdRule::IwR: {
      if (auto e = arity(1)) return bad(*e);
      Sequent want = p(0);
      want.side(n.rule == StdRule::IwL ? Side::Ant : Side::Suc).push_back(*n.formula);
      if (!same(c, want)) return bad("schema mismatch");
      return std::nullopt;
    }
    case StdRule::Cut: {
      if (auto e = arity(2)) return bad(*e);
      auto r0 = minus(p(0).suc, *n.formula);
      auto r1 = minus(p(1).ant, *n.formula);
      if (!r0 || !r1) return bad("cut formula missing");
      Sequent want{Sort::Plain, p(0).ant, *r0};
      want.ant.insert(want.ant.end(), r1->begin(), r1->end());
      want.suc.insert(want.suc.end(), p(1).suc.begin(), p(1).suc.end());
      if (!same(c, want)) return bad("schema mismatch");
      return std::nullopt;
    }
    case StdRule::Modal:
    case StdRule::ModalD: {
      if (auto e = arity(1)) return bad(*e);
      const bool d = n.rule == StdRule::ModalD;
      if (d && !system_has(sys, RuleId::D)) return bad("needs the D rule");
      if (n.keep_box.size() != c.ant.size()) return bad("keep_box does not cover the antecedent");
      std::vector<Formula> want;
      for (std::size_t k = 0; k < c.ant.size(); ++k) {
        if (!c.ant[k].is_boxed()) return bad("antecedent formula " + to_string(c.ant[k]) + " is not boxed");
        if (n.keep_box[k] && !system_has(sys, RuleId::FourL)) return bad("keeping a box needs the 4 rules");
        want.push_back(n.keep_box[k] ? c.ant[k] : c.ant[k].sub());
      }
      if (!multiset_equal(p(0).ant, want)) return bad("premise antecedent mismatch");
      if (d) {
        if (!c.suc.empty() || !p(0).suc.empty()) return bad("succedents must be empty");
      } else if (c.suc.size() != 1 || !c.suc[0].is_boxed() || p(0).suc.size() != 1 || p(0).suc[0] != c.suc[0].sub()) {
        return bad("succedent must be box E over E");
      }
      return std::nullopt;
    }
    case StdRule::BoxL: {
      if (auto e = arity(1)) return bad(*e);
      if (!system_has(sys, RuleId::T1)) return bad("needs the T rules");
      if (!n.formula->is_boxed()) return bad("principal is not boxed");
      auto r = minus(p(0).ant, n.formula->sub());
      if (!r || !same(c, Sequent{Sort::Plain, plus(*r, *n.formula), p(0).suc})) return bad("schema mismatch");
      return std::nullopt;
    }
  }
  return bad("unknown rule");
}

std::optional<std::string> check_rec(const StandardProof& p, SystemId sys, const std::string& path) {
  if (auto e = check_node(*p, sys)) return path + ": " + *e;
  for (std::size_t k = 0; k < p->premises.size(); ++k)
    if (auto e = check_rec(p->premises[k], sys, path + "/" + std::to_string(k))) return e;
  return std::nullopt;
}

int at(const Proof& p, Side side, const Formula& f, int skip = -1) {
  const int k = find_formula(seq_of(p, 0), side, f, skip);
  if (k < 0) throw std::invalid_argument("embed_standard: missing " + to_string(f));
  return k;
}

Proof embed(const StandardProof& s) {
  std::vector<Proof> ps;
  for (const auto& q : s->premises) ps.push_back(embed(q));
  const Formula f = s->formula.value_or(Formula::bot());
  Proof p;
  switch (s->rule) {
    case StdRule::Ax: p = pb::ax(f); break;
    case StdRule::Bot: p = pb::bot(); break;
    case StdRule::AndL1: p = pb::and_l1(ps[0], 0, at(ps[0], Side::Ant, f.left()), f.right()); break;
    case StdRule::AndL2: p = pb::and_l2(ps[0], 0, at(ps[0], Side::Ant, f.right()), f.left()); break;
    case StdRule::AndR:
      p = pb::and_r(ps[0], ps[1], 0, at(ps[0], Side::Suc, f.left()), 0, at(ps[1], Side::Suc, f.right()));
      break;
    case StdRule::NegL: p = pb::neg_l(ps[0], 0, at(ps[0], Side::Suc, f.sub())); break;
    case StdRule::NegR: p = pb::neg_r(ps[0], 0, at(ps[0], Side::Ant, f.sub())); break;
    case StdRule::IcL: {
      const int a = at(ps[0], Side::Ant, f);
      p = pb::ic_l(ps[0], 0, a, at(ps[0], Side::Ant, f, a));
      break;
    }
    case StdRule::IcR: {
      const int a = at(ps[0], Side::Suc, f);
      p = pb::ic_r(ps[0], 0, a, at(ps[0], Side::Suc, f, a));
      break;
    }
    case StdRule::IwL: p = pb::iw_l(ps[0], 0, f); break;
    case StdRule::IwR: p = pb::iw_r(ps[0], 0, f); break;
    case StdRule::Cut: p = pb::cut(ps[0], ps[1], 0, at(ps[0], Side::Suc, f), 0, at(ps[1], Side::Ant, f)); break;
    case StdRule::BoxL: p = pb::t1(ps[0], 0, at(ps[0], Side::Ant, f.sub())); break;
    case StdRule::Modal:
    case StdRule::ModalD: {
      const bool all_kept = std::all_of(s->keep_box.begin(), s->keep_box.end(), [](bool b) { return b; });
      if (s->rule == StdRule::Modal && all_kept) {
        p = derived::s4_box_r(ps[0]);
        break;
      }
      p = pb::nec2(ps[0]);
      for (std::size_t k = 0; k < s->conclusion.ant.size(); ++k) {
        const Formula& b = s->conclusion.ant[k];
        p = s->keep_box[k] ? pb::four_l(p, 0, at(p, Side::Ant, b)) : pb::k(p, 0, at(p, Side::Ant, b.sub()));
      }
      p = s->rule == StdRule::Modal ? pb::nec1(p, 0) : pb::d(p, 0);
      std::vector<int> all;
      for (std::size_t k = 0; k < p->conclusion.size(); ++k) all.push_back(static_cast<int>(k));
      if (all.size() > 1) p = macro::merge_all(p, all);
      break;
    }
  }
  return macro::fit(p, Hypersequent({s->conclusion}));
}

}  // namespace

StandardProof to_standard(const Proof& p, SystemId sys) {
  if (group_of(sys) != Group::Alpha) wrong_group("standard extraction", sys);
  for (const auto& s : p->conclusion.seqs)
    if (s.sort != Sort::Plain) throw TransformError(Kind::EndNotPlain, "end hypersequent has a '=>' sequent");
  if (count_rule(p, RuleId::FourR) > 0) throw TransformError(Kind::NotRegular, "proof contains 4r");
  return ToStd(sys).go(p);
}

std::optional<std::string> check_standard(const StandardProof& p, SystemId sys) {
  return check_rec(p, sys, "root");
}

std::size_t std_node_count(const StandardProof& p) {
  std::size_t n = 1;
  for (const auto& q : p->premises) n += std_node_count(q);
  return n;
}

std::size_t std_count_rule(const StandardProof& p, StdRule r) {
  std::size_t n = p->rule == r ? 1 : 0;
  for (const auto& q : p->premises) n += std_count_rule(q, r);
  return n;
}

Proof embed_standard(const StandardProof& p) { return embed(p); }

}  // namespace hyperseq
