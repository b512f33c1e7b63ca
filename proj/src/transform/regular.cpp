#include <algorithm>
#include <set>

#include "replay.hpp"

namespace hyperseq {

namespace {

using namespace xf;

// True when sequent `i` of `q` (a '=>' sequent) heads a pure k/4l column
// that starts from a single '=>' sequent.
bool column_ok(Proof q, int i) {
  while (q->conclusion.size() > 1) {
    if (!rule_is(q, {RuleId::K, RuleId::FourL}) || q->app.seq != i) return false;
    q = q->premises[0];
  }
  return q->conclusion[0].sort == Sort::Modal;
}

void collect_irregular(const Proof& p, const std::string& path, std::vector<std::string>& out) {
  if (rule_is(p, {RuleId::FourR})) out.push_back(path);
  if (rule_is(p, {RuleId::Nec1, RuleId::D}) && !column_ok(p->premises[0], p->app.seq)) out.push_back(path);
  for (std::size_t k = 0; k < p->premises.size(); ++k)
    collect_irregular(p->premises[k], path + "/" + std::to_string(k), out);
}

struct Reserve {
  Formula f;   // antecedent formula of the column top
  bool four;   // 4l (f is boxed and kept) rather than k
  Formula boxed() const { return four ? f : Formula::box(f); }
};

struct Right {
  Proof top;  // single '=>' sequent: the merged marked sequents plus the reserves
  std::vector<Reserve> res;
};

struct Extracted {
  Proof left;                  // conclusion without the marked sequents
  std::optional<Right> right;  // set when the left part is not available
};

Edit drop_edit(const Hypersequent& h, const Marks& t) {
  Edit e(h);
  for (std::size_t i = 0; i < h.size(); ++i) e.drop_seq[i] = t.seq[i];
  return e;
}

Hypersequent dropped(const Hypersequent& h, const Marks& t) { return apply_edit(h, drop_edit(h, t)).h; }

// The single sequent of a Right part at node `n`: marked sequents merged plus reserves.
Sequent merged(const Hypersequent& h, const Marks& t, const std::vector<Reserve>& res) {
  Sequent s{Sort::Modal, {}, {}};
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!t.seq[i]) continue;
    s.ant.insert(s.ant.end(), h[i].ant.begin(), h[i].ant.end());
    s.suc.insert(s.suc.end(), h[i].suc.begin(), h[i].suc.end());
  }
  for (const auto& r : res) s.ant.push_back(r.f);
  return s;
}

Proof on_top(const Proof& top, const Sequent& want) { return fit_to(top, Hypersequent({want})); }

int find_or_throw(const Proof& p, Side side, const Formula& f) {
  const int k = find_formula(seq_of(p, 0), side, f);
  if (k < 0) throw std::logic_error("regularize: lost " + to_string(f));
  return k;
}

// Claim-style split of the region above a nec1/d/4r step: either the
// conclusion without the marked sequents or a single-sequent top.
Extracted extract(const Proof& n, const Marks& t, Run& run) {
  run.spend();
  const RuleId r = n->app.rule;
  const Hypersequent& c = n->conclusion;
  if (n->open) unsupported("open leaf inside a regularized region");
  if (rule_is(n, {RuleId::Nec2, RuleId::InitAx, RuleId::InitBot})) return {nullptr, Right{n, {}}};
  const StepResult sr = step_of(n);
  const auto prem_h = premise_conclusions(n);
  const std::vector<Marks> pm = lift(sr, prem_h, t, true);
  const int i = n->app.seq;
  const int last = static_cast<int>(c.size()) - 1;
  auto left_of = [&](const Proof& l) { return Extracted{fit_to(l, dropped(c, t)), std::nullopt}; };

  if (r == RuleId::Ew && t.seq[static_cast<std::size_t>(last)]) {
    if (!pm[0].any_seq()) return left_of(n->premises[0]);
    Extracted e = extract(n->premises[0], pm[0], run);
    if (!e.right) return left_of(e.left);
    return {nullptr, Right{on_top(e.right->top, merged(c, t, e.right->res)), e.right->res}};
  }
  const bool principal_marked = r != RuleId::Ew && pm[0].seq[static_cast<std::size_t>(i)];
  if (!principal_marked) {
    std::vector<Extracted> es;
    for (std::size_t k = 0; k < n->premises.size(); ++k) {
      es.push_back(extract(n->premises[k], pm[k], run));
      if (es.back().right) return es.back();
    }
    std::vector<Proof> ls;
    std::vector<Edit> edits;
    for (std::size_t k = 0; k < es.size(); ++k) {
      ls.push_back(es[k].left);
      edits.push_back(drop_edit(prem_h[k], pm[k]));
    }
    return {replay(n, std::move(ls), edits, drop_edit(c, t)), std::nullopt};
  }
  if (r == RuleId::AndR || r == RuleId::Cut) {
    Extracted e0 = extract(n->premises[0], pm[0], run);
    if (!e0.right) return left_of(e0.left);
    Extracted e1 = extract(n->premises[1], pm[1], run);
    if (!e1.right) return left_of(e1.left);
    std::vector<Reserve> res = e0.right->res;
    res.insert(res.end(), e1.right->res.begin(), e1.right->res.end());
    Sequent w0 = merged(prem_h[0], pm[0], res);
    Sequent w1 = merged(prem_h[1], pm[1], res);
    Proof a = on_top(e0.right->top, w0);
    Proof b = on_top(e1.right->top, w1);
    const Formula f0 = prem_h[0][static_cast<std::size_t>(i)].suc[static_cast<std::size_t>(n->app.idx)];
    Proof q;
    if (r == RuleId::AndR) {
      const int j = n->app.seq2 < 0 ? i : n->app.seq2;
      const int k2 = n->app.idx2 < 0 ? n->app.idx : n->app.idx2;
      const Formula f1 = prem_h[1][static_cast<std::size_t>(j)].suc[static_cast<std::size_t>(k2)];
      q = pb::and_r(a, b, 0, find_or_throw(a, Side::Suc, f0), 0, find_or_throw(b, Side::Suc, f1));
    } else {
      q = pb::cut(a, b, 0, find_or_throw(a, Side::Suc, f0), 0, find_or_throw(b, Side::Ant, f0));
    }
    const Sequent want = merged(c, t, res);
    return {nullptr, Right{fit_to(q, Hypersequent({want})), res}};
  }
  Extracted e = extract(n->premises[0], pm[0], run);
  if (r == RuleId::K || r == RuleId::FourL) {
    if (!e.right) return left_of(e.left);
    const Formula f = prem_h[0][static_cast<std::size_t>(i)].ant[static_cast<std::size_t>(n->app.idx)];
    std::vector<Reserve> res = e.right->res;
    res.push_back({f, r == RuleId::FourL});
    return {nullptr, Right{e.right->top, res}};
  }
  if (!e.right) return left_of(e.left);
  Proof s = e.right->top;
  const Sequent& ps = prem_h[0][static_cast<std::size_t>(i)];
  auto at = [&](Side side, int k) { return ps.side(side)[static_cast<std::size_t>(k)]; };
  switch (r) {
    case RuleId::AndL1: s = pb::and_l1(s, 0, find_or_throw(s, Side::Ant, at(Side::Ant, n->app.idx)), *n->app.formula); break;
    case RuleId::AndL2: s = pb::and_l2(s, 0, find_or_throw(s, Side::Ant, at(Side::Ant, n->app.idx)), *n->app.formula); break;
    case RuleId::NegL: s = pb::neg_l(s, 0, find_or_throw(s, Side::Suc, at(Side::Suc, n->app.idx))); break;
    case RuleId::NegR: s = pb::neg_r(s, 0, find_or_throw(s, Side::Ant, at(Side::Ant, n->app.idx))); break;
    case RuleId::T1: s = pb::t1(s, 0, find_or_throw(s, Side::Ant, at(Side::Ant, n->app.idx))); break;
    case RuleId::IcL:
    case RuleId::IcR:
    case RuleId::IwL:
    case RuleId::IwR:
    case RuleId::Merge:
      break;
    default:
      unsupported(std::string("regularize: ") + rule_name(r) + " on a marked sequent");
  }
  return {nullptr, Right{on_top(s, merged(c, t, e.right->res)), e.right->res}};
}

// Shape of the lower part being rebuilt under a regular column.
struct Lower {
  RuleId rule;   // nec1, d or 4r
  Formula e;     // succedent of the marked sequent (unused for d)

  std::vector<Sequent> extras(const std::vector<Formula>& fs) const {
    Sequent plain{Sort::Plain, fs, {}};
    if (rule == RuleId::Nec1) plain.suc.push_back(Formula::box(e));
    std::vector<Sequent> out;
    if (rule != RuleId::FourR || !fs.empty()) out.push_back(plain);
    if (rule == RuleId::FourR) out.push_back(Sequent{Sort::Modal, {}, {Formula::box(e)}});
    return out;
  }
};

std::vector<Formula> as_set(std::vector<Formula> fs) {
  std::vector<Formula> out;
  for (auto& f : fs)
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  return out;
}

class Rebuild {
 public:
  Rebuild(Proof r0, Lower low, Run& run) : r0_(std::move(r0)), low_(std::move(low)), run_(run) {}

  // Multisets of boxed formulas split off below each top of the region.
  void tops(const Proof& n, const Marks& t, std::vector<Formula> fs, std::vector<std::vector<Formula>>& out) {
    if (rule_is(n, {RuleId::Nec2, RuleId::InitAx, RuleId::InitBot})) {
      out.push_back(fs);
      return;
    }
    walk(n, t, fs, [&](const Proof& q, const Marks& m, std::vector<Formula> g) { tops(q, m, std::move(g), out); });
  }

  Proof build(const Proof& n, const Marks& t, const std::vector<Formula>& fs) {
    run_.spend();
    const Hypersequent& c = n->conclusion;
    Edit out = drop_edit(c, t);
    out.extra = low_.extras(fs);
    const Hypersequent target = apply_edit(c, out).h;
    if (rule_is(n, {RuleId::Nec2, RuleId::InitAx, RuleId::InitBot})) return fit_to(r0_, target);
    const StepResult sr = step_of(n);
    const auto prem_h = premise_conclusions(n);
    const std::vector<Marks> pm = lift(sr, prem_h, t, true);
    const RuleId r = n->app.rule;
    const int i = n->app.seq;
    const int last = static_cast<int>(c.size()) - 1;
    if (r == RuleId::Ew && t.seq[static_cast<std::size_t>(last)]) {
      if (!pm[0].any_seq()) return fit_to(n->premises[0], target);
      return fit_to(build(n->premises[0], pm[0], fs), target);
    }
    const bool principal_marked = r != RuleId::Ew && pm[0].seq[static_cast<std::size_t>(i)];
    if (principal_marked) {
      std::vector<Formula> g = fs;
      if (r == RuleId::K || r == RuleId::FourL) {
        const Formula f = prem_h[0][static_cast<std::size_t>(i)].ant[static_cast<std::size_t>(n->app.idx)];
        g.push_back(r == RuleId::K ? Formula::box(f) : f);
      }
      return fit_to(build(n->premises[0], pm[0], g), target);
    }
    std::vector<Proof> qs;
    std::vector<Edit> edits;
    for (std::size_t k = 0; k < n->premises.size(); ++k) {
      qs.push_back(build(n->premises[k], pm[k], fs));
      Edit e = drop_edit(prem_h[k], pm[k]);
      e.extra = low_.extras(fs);
      edits.push_back(std::move(e));
    }
    return replay(n, std::move(qs), edits, out);
  }

 private:
  template <class F>
  void walk(const Proof& n, const Marks& t, const std::vector<Formula>& fs, F&& go) {
    const StepResult sr = step_of(n);
    const auto prem_h = premise_conclusions(n);
    const std::vector<Marks> pm = lift(sr, prem_h, t, true);
    const RuleId r = n->app.rule;
    const int i = n->app.seq;
    const int last = static_cast<int>(n->conclusion.size()) - 1;
    if (r == RuleId::Ew && t.seq[static_cast<std::size_t>(last)]) {
      if (pm[0].any_seq()) go(n->premises[0], pm[0], fs);
      return;
    }
    const bool principal_marked = r != RuleId::Ew && pm[0].seq[static_cast<std::size_t>(i)];
    if (principal_marked) {
      std::vector<Formula> g = fs;
      if (r == RuleId::K || r == RuleId::FourL) {
        const Formula f = prem_h[0][static_cast<std::size_t>(i)].ant[static_cast<std::size_t>(n->app.idx)];
        g.push_back(r == RuleId::K ? Formula::box(f) : f);
      }
      go(n->premises[0], pm[0], g);
      return;
    }
    for (std::size_t k = 0; k < n->premises.size(); ++k) go(n->premises[k], pm[k], fs);
  }

  Proof r0_;
  Lower low_;
  Run& run_;
};

// Column over the single-sequent top, then nec1/d (4r: nec1, nec2 and 4l).
Proof column(const Right& r, RuleId rule) {
  Proof p = r.top;
  for (const auto& x : r.res) {
    const int k = find_or_throw(p, Side::Ant, x.f);
    p = x.four ? pb::four_l(p, 0, k) : pb::k(p, 0, k);
  }
  p = rule == RuleId::D ? pb::d(p, 0) : pb::nec1(p, 0);
  std::vector<int> all;
  for (std::size_t s = 0; s < p->conclusion.size(); ++s) all.push_back(static_cast<int>(s));
  if (all.size() > 1) p = macro::merge_all(p, all);
  if (rule != RuleId::FourR) return p;
  p = pb::nec2(p);
  const std::size_t n = seq_of(p, 0).ant.size();
  for (std::size_t k = 0; k < n; ++k) p = pb::four_l(p, 0, 0);
  std::vector<int> plain;
  for (std::size_t s = 1; s < p->conclusion.size(); ++s) plain.push_back(static_cast<int>(s));
  if (plain.size() > 1) p = macro::merge_all(p, plain);
  return p;
}

Proof regularize_step(const Proof& n, const Proof& prem, Run& run) {
  const int s = locate_seq(n->premises[0]->conclusion, prem->conclusion, n->app.seq);
  Marks t(prem->conclusion);
  t.seq[static_cast<std::size_t>(s)] = 1;
  Extracted e = extract(prem, t, run);
  if (!e.right) return fit_to(e.left, n->conclusion);
  const Sequent& top = seq_of(e.right->top, 0);
  std::vector<Formula> reserved;
  for (const auto& x : e.right->res) reserved.push_back(x.f);
  if (!multiset_equal(top.ant, reserved)) throw std::logic_error("regularize: column top does not match its reserves");
  const RuleId rule = n->app.rule;
  const Proof r0 = column(*e.right, rule);
  const Sequent& marked = seq_of(prem, s);
  Lower low{rule, marked.suc.empty() ? Formula::bot() : marked.suc[0]};
  Rebuild rb(r0, low, run);
  std::vector<std::vector<Formula>> tops;
  rb.tops(prem, t, {}, tops);
  std::vector<Formula> f0;
  for (const auto& x : e.right->res) {
    const Formula b = x.boxed();
    for (const auto& local : tops)
      if (std::find(local.begin(), local.end(), b) == local.end()) {
        f0.push_back(b);
        break;
      }
  }
  f0 = as_set(f0);
  return fit_to(rb.build(prem, t, f0), n->conclusion);
}

}  // namespace

RegularityReport is_regular(const Proof& p, SystemId sys) {
  if (group_of(sys) != Group::Alpha) wrong_group("regularity", sys);
  RegularityReport rep;
  collect_irregular(p, "root", rep.offending_nodes);
  rep.regular = rep.offending_nodes.empty();
  return rep;
}

Proof regularize(const Proof& p, SystemId sys, const TransformOptions& opts) {
  if (group_of(sys) != Group::Alpha) wrong_group("regularization", sys);
  Run run(opts, sys);
  Rebuilder rb([&](const Proof& n, std::vector<Proof> prems) -> Proof {
    if (!rule_is(n, {RuleId::Nec1, RuleId::D, RuleId::FourR})) return replay_exact(n, std::move(prems));
    const Proof& q = prems[0];
    if (n->app.rule != RuleId::FourR &&
        column_ok(q, locate_seq(n->premises[0]->conclusion, q->conclusion, n->app.seq)))
      return replay_exact(n, std::move(prems));
    Proof out = regularize_step(n, q, run);
    run.tick(rule_name(n->app.rule), n, out);
    return out;
  });
  return rb(canonicalize(p));
}

}  // namespace hyperseq
