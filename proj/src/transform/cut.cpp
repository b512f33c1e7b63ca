#include <algorithm>
#include <functional>
#include <optional>
#include <unordered_map>

#include "replay.hpp"

namespace hyperseq {

namespace {

using namespace xf;

// Replacement for every marked occurrence: formulas added to its sequent and
// sequents added to every rewritten hypersequent.
struct Sub {
  std::vector<Formula> ant, suc;
  std::vector<Sequent> extra;
};

struct Located {
  Proof proof;
  Alignment map;  // original premise positions to `proof`
};

Marks mark_one(const Hypersequent& h, int s, Side side, int k) {
  Marks m(h);
  m.set(s, side, k);
  return m;
}

Edit subst_edit(const Hypersequent& h, const Marks& m, const Sub& sub) {
  Edit e(h);
  for (std::size_t i = 0; i < h.size(); ++i)
    for (int sd : {0, 1})
      for (std::size_t k = 0; k < m.f[i][sd].size(); ++k) {
        if (!m.f[i][sd][k]) continue;
        e.drop[i][sd][k] = 1;
        for (const auto& f : sub.ant) e.add[i][0].push_back(f);
        for (const auto& f : sub.suc) e.add[i][1].push_back(f);
      }
  e.extra = sub.extra;
  return e;
}

std::string marks_key(const Marks& m) {
  std::string k;
  for (const auto& s : m.f) {
    for (int sd : {0, 1}) {
      for (char c : s[sd]) k.push_back(c ? '1' : '0');
      k.push_back('/');
    }
    k.push_back('|');
  }
  return k;
}

// True when the occurrence is marked and has no ancestor in the premises.
bool fresh(const StepResult& sr, const Marks& m, int s, Side side, int k) {
  if (s < 0 || s >= static_cast<int>(m.f.size())) return false;
  const auto& v = m.f[static_cast<std::size_t>(s)][static_cast<int>(side)];
  if (k < 0 || k >= static_cast<int>(v.size()) || !v[static_cast<std::size_t>(k)]) return false;
  return sr.trace[static_cast<std::size_t>(s)].formulas[static_cast<int>(side)][static_cast<std::size_t>(k)].empty();
}

bool marked(const Marks& m, int s, Side side, int k) {
  const auto& v = m.f[static_cast<std::size_t>(s)][static_cast<int>(side)];
  return k >= 0 && k < static_cast<int>(v.size()) && v[static_cast<std::size_t>(k)];
}

int find_in(const Sequent& s, Side side, const Formula& f) {
  const auto& fs = s.side(side);
  for (std::size_t k = 0; k < fs.size(); ++k)
    if (fs[k] == f) return static_cast<int>(k);
  return -1;
}

std::vector<Formula> without(const std::vector<Formula>& fs, int k) {
  std::vector<Formula> out = fs;
  out.erase(out.begin() + k);
  return out;
}

std::vector<Sequent> others(const Hypersequent& h, int s) {
  std::vector<Sequent> out;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (static_cast<int>(i) != s) out.push_back(h[i]);
  return out;
}

bool only_unsupported(const TransformError& e) { return e.kind() == Kind::Unsupported; }

// Rewrites a proof along marked formula occurrences: each marked occurrence is
// removed and replaced as described by a Sub. The handler takes over at nodes
// where a marked occurrence is introduced or changes turnstile.
class Subst {
 public:
  using Handler = std::function<std::optional<Proof>(const Proof&, const Marks&, const StepResult&, Subst&)>;

  Subst(Run& run, Sub sub, Handler h) : run_(run), sub_(std::move(sub)), handler_(std::move(h)) {}

  Hypersequent target(const Hypersequent& h, const Marks& m) const {
    return apply_edit(h, subst_edit(h, m, sub_)).h;
  }

  Proof operator()(const Proof& n, const Marks& m) {
    if (!m.any_formula()) return sub_.extra.empty() ? n : fit_to(n, target(n->conclusion, m));
    const std::string key = marks_key(m);
    auto& slot = memo_[n.get()];
    if (auto it = slot.find(key); it != slot.end()) return it->second;
    run_.spend();
    if (n->open) unsupported("open leaf on the path of a cut formula");
    const Hypersequent t = target(n->conclusion, m);
    const StepResult sr = step_of(n);
    Proof out;
    if (auto h = handler_ ? handler_(n, m, sr, *this) : std::nullopt) out = fit_to(*h, t);
    else out = generic(n, m, sr, t);
    memo_[n.get()].emplace(key, out);
    return out;
  }

  Located premise(const Proof& n, std::size_t k, const Marks& pm) {
    const Hypersequent& h = n->premises[k]->conclusion;
    const Edited e = apply_edit(h, subst_edit(h, pm, sub_));
    Proof q = fit_to((*this)(n->premises[k], pm), e.h);
    return {q, compose(e.map, align_or_throw(e.h, q->conclusion))};
  }

  // Index in `p`, a proof of the rewritten hypersequent, of sequent `s` of `h`.
  int seq_of(const Hypersequent& h, const Marks& m, int s, const Proof& p) const {
    const Edited e = apply_edit(h, subst_edit(h, m, sub_));
    return align_or_throw(e.h, p->conclusion).seq[static_cast<std::size_t>(e.map.seq[static_cast<std::size_t>(s)])];
  }

  std::vector<Marks> lifted(const Proof& n, const Marks& m, const StepResult& sr) const {
    return lift(sr, premise_conclusions(n), m, false);
  }

  Run& run() { return run_; }

 private:
  Proof generic(const Proof& n, const Marks& m, const StepResult& sr, const Hypersequent& t) {
    std::vector<Marks> pm = lifted(n, m, sr);
    if (n->app.rule == RuleId::Nec2 && !sub_.extra.empty()) {
      // With added '=>' sequents a nec2 step becomes a 52 step.
      const bool modal = std::all_of(sub_.extra.begin(), sub_.extra.end(),
                                     [](const Sequent& s) { return s.sort == Sort::Modal; });
      if (!modal || !system_has(run_.system(), RuleId::Five2))
        unsupported(std::string("nec2 cannot take side sequents in ") + system_name(run_.system()));
      Located l = premise(n, 0, pm[0]);
      return fit_to(pb::five2(l.proof, l.map.seq[0]), t);
    }
    std::vector<Proof> prems;
    std::vector<Edit> edits;
    for (std::size_t k = 0; k < n->premises.size(); ++k) {
      prems.push_back((*this)(n->premises[k], pm[k]));
      edits.push_back(subst_edit(n->premises[k]->conclusion, pm[k], sub_));
    }
    return replay(n, std::move(prems), edits, subst_edit(n->conclusion, m, sub_));
  }

  Run& run_;
  Sub sub_;
  Handler handler_;
  std::unordered_map<const ProofNode*, std::unordered_map<std::string, Proof>> memo_;
};

// One cut step: q proves H | G >> D, A with A at (i, suc, a) and r proves
// H | A, P >> T with A at (j, ant, b).
struct Site {
  Proof q, r;
  int i, a, j, b;
  Hypersequent concl;

  const Formula& formula() const { return q->conclusion[static_cast<std::size_t>(i)].suc[static_cast<std::size_t>(a)]; }
  Sort sort() const { return q->conclusion[static_cast<std::size_t>(i)].sort; }
  // Replacement of the left cut formula: the right premise's material.
  Sub left_sub() const {
    const Sequent& s = r->conclusion[static_cast<std::size_t>(j)];
    return {without(s.ant, b), s.suc, others(r->conclusion, j)};
  }
  // Replacement of the right cut formula: the left premise's material.
  Sub right_sub() const {
    const Sequent& s = q->conclusion[static_cast<std::size_t>(i)];
    return {s.ant, without(s.suc, a), others(q->conclusion, i)};
  }
  Marks left_marks() const { return mark_one(q->conclusion, i, Side::Suc, a); }
  Marks right_marks() const { return mark_one(r->conclusion, j, Side::Ant, b); }
};

// Premise of a nec1 or 4r step introducing the left cut formula box B,
// ending in `=> B` at sequent s.
struct Lemma {
  Proof p;
  int s = 0;
  std::vector<Formula> wa, ws;  // contents of the other '->' sequents
  std::vector<Sequent> modal_rest;
  std::optional<Proof> top;  // single-sequent top of a pure k/4l column
  std::vector<Formula> k_reserves;
};

Lemma lemma_of(const Proof& p, int s) {
  Lemma l{p, s, {}, {}, {}, std::nullopt, {}};
  for (std::size_t x = 0; x < p->conclusion.size(); ++x) {
    if (static_cast<int>(x) == s) continue;
    const Sequent& q = p->conclusion[x];
    if (q.sort != Sort::Plain) {
      l.modal_rest.push_back(q);
      continue;
    }
    l.wa.insert(l.wa.end(), q.ant.begin(), q.ant.end());
    l.ws.insert(l.ws.end(), q.suc.begin(), q.suc.end());
  }
  Proof cur = p;
  for (;;) {
    if (cur->conclusion.size() == 1) {
      l.top = cur;
      break;
    }
    if (!rule_is(cur, {RuleId::K, RuleId::FourL}) || cur->app.seq != s) break;
    if (cur->app.rule == RuleId::K)
      l.k_reserves.push_back(cur->premises[0]->conclusion[static_cast<std::size_t>(s)].ant[static_cast<std::size_t>(cur->app.idx)]);
    cur = cur->premises[0];
  }
  return l;
}

class Elim {
 public:
  Elim(Run& run, SystemId sys, const TransformOptions& opts) : run_(run), sys_(sys), opts_(opts) {}

  // Removes every cut, uppermost first.
  Proof all(const Proof& p) {
    Rebuilder rb([&](const Proof& n, std::vector<Proof> prems) -> Proof {
      if (!rule_is(n, {RuleId::Cut})) return replay_exact(n, std::move(prems));
      std::vector<Alignment> maps;
      for (std::size_t k = 0; k < 2; ++k)
        maps.push_back(align_or_throw(n->premises[k]->conclusion, prems[k]->conclusion));
      const RuleApp app = remap_app(n->app, maps);
      Site s{prems[0], prems[1], app.seq, app.idx, app.seq2 < 0 ? app.seq : app.seq2,
             app.idx2 < 0 ? 0 : app.idx2, n->conclusion};
      Proof out = fit_to(eliminate(s), n->conclusion);
      run_.tick("cut-elim", n, out);
      return out;
    });
    return rb(p);
  }

  // A proof with the compound cut formula of `s` replaced by cuts on its
  // immediate subformulas.
  Proof reduce(const Site& s) {
    const Formula& f = s.formula();
    if (f.op() == Op::And) {
      const Formula b = f.left(), c = f.right();
      auto half = [&](int which, const Formula& x) {
        Subst sub(run_, Sub{{}, {x}, {}}, [which](const Proof& n, const Marks& m, const StepResult& sr, Subst& self) -> std::optional<Proof> {
          if (n->app.rule != RuleId::AndR || !fresh(sr, m, n->app.seq, Side::Suc, n->app.idx)) return std::nullopt;
          return self.premise(n, static_cast<std::size_t>(which), self.lifted(n, m, sr)[static_cast<std::size_t>(which)]).proof;
        });
        Proof out = sub(s.q, s.left_marks());
        return std::pair{out, sub.seq_of(s.q->conclusion, s.left_marks(), s.i, out)};
      };
      auto [qb, ib] = half(0, b);
      auto [qc, ic] = half(1, c);
      Subst right(run_, Sub{{b, c}, {}, {}}, [](const Proof& n, const Marks& m, const StepResult& sr, Subst& self) -> std::optional<Proof> {
        if (!rule_is(n, {RuleId::AndL1, RuleId::AndL2}) || !fresh(sr, m, n->app.seq, Side::Ant, n->app.idx))
          return std::nullopt;
        return self.premise(n, 0, self.lifted(n, m, sr)[0]).proof;
      });
      Proof rp = right(s.r, s.right_marks());
      const int jr = right.seq_of(s.r->conclusion, s.right_marks(), s.j, rp);
      Proof c1 = pb::cut(qb, rp, ib, find_in(qb->conclusion[static_cast<std::size_t>(ib)], Side::Suc, b), jr,
                         find_in(rp->conclusion[static_cast<std::size_t>(jr)], Side::Ant, b));
      Proof c2 = pb::cut(qc, c1, ic, find_in(qc->conclusion[static_cast<std::size_t>(ic)], Side::Suc, c), ib,
                         find_in(c1->conclusion[static_cast<std::size_t>(ib)], Side::Ant, c));
      return fit_to(c2, s.concl);
    }
    if (f.op() == Op::Neg) {
      const Formula b = f.sub();
      Subst left(run_, Sub{{b}, {}, {}}, [](const Proof& n, const Marks& m, const StepResult& sr, Subst& self) -> std::optional<Proof> {
        if (n->app.rule != RuleId::NegR) return std::nullopt;
        const int k = static_cast<int>(n->conclusion[static_cast<std::size_t>(n->app.seq)].suc.size()) - 1;
        if (!fresh(sr, m, n->app.seq, Side::Suc, k)) return std::nullopt;
        return self.premise(n, 0, self.lifted(n, m, sr)[0]).proof;
      });
      Subst right(run_, Sub{{}, {b}, {}}, [](const Proof& n, const Marks& m, const StepResult& sr, Subst& self) -> std::optional<Proof> {
        if (n->app.rule != RuleId::NegL) return std::nullopt;
        const int k = static_cast<int>(n->conclusion[static_cast<std::size_t>(n->app.seq)].ant.size()) - 1;
        if (!fresh(sr, m, n->app.seq, Side::Ant, k)) return std::nullopt;
        return self.premise(n, 0, self.lifted(n, m, sr)[0]).proof;
      });
      Proof qp = left(s.q, s.left_marks());
      Proof rp = right(s.r, s.right_marks());
      const int jr = right.seq_of(s.r->conclusion, s.right_marks(), s.j, rp);
      const int iq = left.seq_of(s.q->conclusion, s.left_marks(), s.i, qp);
      Proof c = pb::cut(rp, qp, jr, find_in(rp->conclusion[static_cast<std::size_t>(jr)], Side::Suc, b), iq,
                        find_in(qp->conclusion[static_cast<std::size_t>(iq)], Side::Ant, b));
      return fit_to(c, s.concl);
    }
    return pb::cut(s.q, s.r, s.i, s.a, s.j, s.b);
  }

 private:
  Proof normalize(const Proof& p) {
    TransformOptions o = opts_;
    o.trace = nullptr;
    Proof x = atomize_initials(p, o);
    if (group_of(sys_) == Group::Alpha) {
      try {
        x = eliminate_T2(x, sys_, o);
        x = regularize(x, sys_, o);
      } catch (const TransformError& e) {
        if (!only_unsupported(e)) throw;
      }
    }
    if (sys_ == SystemId::K45 || sys_ == SystemId::KD45 || sys_ == SystemId::S5) {
      try {
        x = restrict_52(x, sys_, o);
      } catch (const TransformError& e) {
        if (!only_unsupported(e)) throw;
      }
    }
    return fit_to(x, p->conclusion);
  }

  Site normalized(const Site& s) {
    Proof q = normalize(s.q), r = normalize(s.r);
    const Alignment aq = align_or_throw(s.q->conclusion, q->conclusion);
    const Alignment ar = align_or_throw(s.r->conclusion, r->conclusion);
    const int i = aq.seq[static_cast<std::size_t>(s.i)], j = ar.seq[static_cast<std::size_t>(s.j)];
    return {q, r, i, aq.formula[static_cast<std::size_t>(s.i)][1][static_cast<std::size_t>(s.a)], j,
            ar.formula[static_cast<std::size_t>(s.j)][0][static_cast<std::size_t>(s.b)], s.concl};
  }

  Proof eliminate(const Site& s0) {
    const Site s = normalized(s0);
    const Formula& f = s.formula();
    if (f.op() == Op::And || f.op() == Op::Neg) return all(reduce(s));
    if (auto d = degenerate(s)) return *d;
    using Strategy = std::function<Proof()>;
    std::vector<std::pair<const char*, Strategy>> tries;
    if (f.op() == Op::Box) {
      tries.push_back({"left", [&] { return modal_left(s); }});
    } else if (s.sort() == Sort::Plain) {
      tries.push_back({"right", [&] { return atomic_right(s); }});
      tries.push_back({"left", [&] { return atomic_left(s); }});
    } else {
      tries.push_back({"left", [&] { return atomic_left(s); }});
      tries.push_back({"right", [&] { return atomic_right(s); }});
    }
    std::string why;
    for (auto& [name, fn] : tries) {
      try {
        return fit_to(fn(), s.concl);
      } catch (const TransformError& e) {
        if (!only_unsupported(e)) throw;
        why += std::string(why.empty() ? "" : "; ") + name + ": " + e.what();
      }
    }
    unsupported("cut on " + to_string(f) + " in " + system_name(sys_) + " (" + why + ")");
  }

  // A side whose cut formula comes only from weakenings proves the conclusion
  // with the formula erased.
  std::optional<Proof> degenerate(const Site& s) {
    for (int side : {0, 1}) {
      try {
        Subst sub(run_, Sub{}, nullptr);
        Proof x = side == 0 ? sub(s.q, s.left_marks()) : sub(s.r, s.right_marks());
        return fit_to(x, s.concl);
      } catch (const TransformError& e) {
        if (!only_unsupported(e)) throw;
      }
    }
    return std::nullopt;
  }

  // Proof of the left premise's principal sequent as a '->' sequent.
  Proof plain_version(const Proof& p, int seq) {
    if (p->conclusion[static_cast<std::size_t>(seq)].sort == Sort::Plain) return p;
    if (!system_has(sys_, RuleId::T2)) unsupported(std::string("no t2 in ") + system_name(sys_));
    return pb::t2(p, seq);
  }

  // Atomic cut: the left premise replaces the initial sequents of the right one.
  Proof atomic_right(const Site& s) {
    Subst sub(run_, s.right_sub(), [&](const Proof& n, const Marks&, const StepResult&, Subst&) -> std::optional<Proof> {
      if (!n->premises.empty()) return std::nullopt;
      if (n->app.rule != RuleId::InitAx) unsupported("cut formula from a bot initial sequent");
      return plain_version(s.q, s.i);
    });
    return sub(s.r, s.right_marks());
  }

  // Atomic cut driven by the left premise; nec2 and 52 steps on the path are
  // replaced by a rewrite of the right premise.
  Proof atomic_left(const Site& s) {
    Subst sub(run_, s.left_sub(), [&](const Proof& n, const Marks& m, const StepResult& sr, Subst& self) -> std::optional<Proof> {
      if (n->premises.empty()) {
        if (n->app.rule != RuleId::InitAx) unsupported("cut formula from a bot initial sequent");
        return plain_version(s.r, s.j);
      }
      if (rule_is(n, {RuleId::Nec2, RuleId::Five2})) return crossing(s, n, m, sr, self);
      return std::nullopt;
    });
    return sub(s.q, s.left_marks());
  }

  std::optional<Proof> crossing(const Site& s, const Proof& n, const Marks& m, const StepResult& sr, Subst& self) {
    const int c = n->app.rule == RuleId::Nec2 ? 0 : n->app.seq;
    if (!m.seq_has_formula(c)) return std::nullopt;
    for (std::size_t x = 0; x < m.f.size(); ++x)
      if (static_cast<int>(x) != c && m.seq_has_formula(static_cast<int>(x)))
        unsupported("cut formula in the context of a turnstile change");
    const Marks pm = self.lifted(n, m, sr)[0];
    Proof x = n->premises[0];
    std::vector<int> ks;
    const auto& flags = pm.f[static_cast<std::size_t>(c)][1];
    for (std::size_t k = 0; k < flags.size(); ++k)
      if (flags[k]) ks.push_back(static_cast<int>(k));
    while (ks.size() > 1) {
      x = pb::ic_r(x, c, ks.front(), ks.back());
      ks.pop_back();
    }
    const Sequent& xs = x->conclusion[static_cast<std::size_t>(c)];
    Subst inner(run_, Sub{xs.ant, without(xs.suc, ks.front()), others(x->conclusion, c)},
                [&x](const Proof& leaf, const Marks&, const StepResult&, Subst&) -> std::optional<Proof> {
                  if (!leaf->premises.empty()) return std::nullopt;
                  if (leaf->app.rule != RuleId::InitAx) unsupported("cut formula from a bot initial sequent");
                  return x;
                });
    return inner(s.r, s.right_marks());
  }

  // Rewrite of the right premise where the cut formula box B is replaced as
  // described by `sub`, using the nec1/4r premise of the lemma.
  Proof right_with_lemma(const Site& s, const Lemma& l, bool wmode) {
    Sub sub = wmode ? Sub{l.wa, l.ws, l.modal_rest} : Sub{{}, {}, others(l.p->conclusion, l.s)};
    Subst rs(run_, sub, [&](const Proof& n, const Marks& m, const StepResult& sr, Subst& self) -> std::optional<Proof> {
      const RuleId r = n->app.rule;
      const int last = static_cast<int>(n->conclusion.size()) - 1;
      if (n->premises.empty()) unsupported("non-atomic initial sequent on the path of a cut formula");
      if (r == RuleId::K && fresh(sr, m, last, Side::Ant, 0)) {
        Located p = self.premise(n, 0, self.lifted(n, m, sr)[0]);
        const int si = p.map.seq[static_cast<std::size_t>(n->app.seq)];
        const int ki = p.map.formula[static_cast<std::size_t>(n->app.seq)][0][static_cast<std::size_t>(n->app.idx)];
        return all(macro::mcut(l.p, l.s, 0, p.proof, si, ki));
      }
      if (r == RuleId::T1 && fresh(sr, m, n->app.seq, Side::Ant, n->app.idx)) {
        Located p = self.premise(n, 0, self.lifted(n, m, sr)[0]);
        const int si = p.map.seq[static_cast<std::size_t>(n->app.seq)];
        const int ki = p.map.formula[static_cast<std::size_t>(n->app.seq)][0][static_cast<std::size_t>(n->app.idx)];
        const Sequent& at = p.proof->conclusion[static_cast<std::size_t>(si)];
        if (!wmode || at.sort == Sort::Plain) {
          // The side sequents of the lemma land beside the sequent, or merge into it.
          const Proof lp = at.sort == Sort::Plain ? plain_version(l.p, l.s) : l.p;
          return all(macro::mcut(lp, l.s, 0, p.proof, si, ki));
        }
        if (!l.top) unsupported("t1 against a nec1 premise that is not a k/4l column");
        Proof top = at.sort == Sort::Plain ? plain_version(*l.top, 0) : *l.top;
        Sequent want{at.sort, without(at.ant, ki), at.suc};
        for (const auto& f : top->conclusion[0].ant) want.ant.push_back(f);
        Proof c = all(macro::mcut(top, 0, 0, p.proof, si, ki));
        int w = -1;
        for (std::size_t x = 0; x < c->conclusion.size() && w < 0; ++x)
          if (c->conclusion[x].equiv(want)) w = static_cast<int>(x);
        if (w < 0) throw std::logic_error("t1 rewrite lost its sequent");
        for (const auto& d : l.k_reserves) c = pb::t1(c, w, find_in(c->conclusion[static_cast<std::size_t>(w)], Side::Ant, d));
        return c;
      }
      if ((r == RuleId::FourL || r == RuleId::Five1) && marked(m, last, Side::Ant, 0)) {
        Located p = self.premise(n, 0, self.lifted(n, m, sr)[0]);
        if (!wmode) return p.proof;
        if (!l.ws.empty()) unsupported("column formulas on the right cannot be moved");
        const int si = p.map.seq[static_cast<std::size_t>(n->app.seq)];
        Proof q = p.proof;
        for (const auto& w : l.wa) {
          if (!w.is_boxed()) unsupported("moving an unboxed column formula");
          const int k = find_in(q->conclusion[static_cast<std::size_t>(si)], Side::Ant, w);
          q = r == RuleId::FourL ? pb::four_l(q, si, k) : pb::five1(q, si, k);
        }
        return q;
      }
      if (r == RuleId::B1 && fresh(sr, m, last, Side::Ant, 0)) unsupported("b1 introducing a modal cut formula");
      return std::nullopt;
    });
    return rs(s.r, s.right_marks());
  }

  // Modal cut driven by the left premise; nec1/4r introductions are replaced
  // by a rewrite of the right premise.
  Proof modal_left(const Site& s) {
    Subst sub(run_, s.left_sub(), [&](const Proof& n, const Marks& m, const StepResult& sr, Subst&) -> std::optional<Proof> {
      if (n->premises.empty()) unsupported("non-atomic initial sequent on the path of a cut formula");
      const RuleId r = n->app.rule;
      if ((r == RuleId::Nec1 || r == RuleId::FourR) && fresh(sr, m, n->app.seq, Side::Suc, 0)) {
        const Lemma l = lemma_of(n->premises[0], n->app.seq);
        std::vector<bool> modes;
        if (r == RuleId::Nec1) modes.push_back(true);
        modes.push_back(false);
        if (r == RuleId::FourR && l.wa.empty() && l.ws.empty()) modes.push_back(true);
        std::string why;
        const Hypersequent t = Subst(run_, s.left_sub(), nullptr).target(n->conclusion, m);
        for (bool w : modes) {
          try {
            return fit_to(right_with_lemma(s, l, w), t);
          } catch (const TransformError& e) {
            if (!only_unsupported(e)) throw;
            why += std::string(why.empty() ? "" : "; ") + e.what();
          }
        }
        unsupported(why);
      }
      if (r == RuleId::Nec2 && m.any_formula()) {
        const Marks pm = lift(sr, premise_conclusions(n), m, false)[0];
        return absorb(s, n->premises[0], pm);
      }
      if (r == RuleId::Five2 && m.seq_has_formula(n->app.seq)) {
        for (std::size_t x = 0; x < m.f.size(); ++x)
          if (static_cast<int>(x) != n->app.seq && m.seq_has_formula(static_cast<int>(x)))
            unsupported("modal cut formula in the context of a 52 step");
        const Marks pm = lift(sr, premise_conclusions(n), m, false)[0];
        return absorb(s, n->premises[0], pm);
      }
      return std::nullopt;
    });
    return sub(s.q, s.left_marks());
  }

  // Turns the '->' sequents of `q` into one '=>' sequent.
  Proof to_modal(Proof q) {
    std::vector<int> plain;
    for (std::size_t x = 0; x < q->conclusion.size(); ++x)
      if (q->conclusion[x].sort == Sort::Plain) plain.push_back(static_cast<int>(x));
    if (plain.empty()) return q;
    int at = plain[0];
    if (plain.size() > 1) q = macro::merge_all(q, plain, &at);
    try {
      if (q->conclusion.size() == 1) return pb::nec2(q);
      if (system_has(sys_, RuleId::Five2)) return pb::five2(q, at);
    } catch (const StepFailure& e) {
      unsupported(std::string("cannot turn '->' sequents into '=>': ") + e.what());
    }
    unsupported(std::string("'->' sequent with side sequents cannot become '=>' in ") + system_name(sys_));
  }

  // Proof of the hypersequent where the '->' sequents of a proof whose marked
  // box B occurrences all reach one nec2 or 52 premise are read as one '=>'
  // sequent, with the right premise's material in place of box B.
  Proof absorb(const Site& s, const Proof& n, const Marks& m) {
    const Sub sub = s.left_sub();
    auto target = [&](const Hypersequent& h, const Marks& mm) {
      Hypersequent out;
      Sequent one{Sort::Modal, {}, {}};
      for (std::size_t x = 0; x < h.size(); ++x) {
        if (h[x].sort == Sort::Modal) {
          if (mm.seq_has_formula(static_cast<int>(x))) unsupported("modal cut formula inside a '=>' sequent before the turnstile change");
          out.seqs.push_back(h[x]);
          continue;
        }
        for (int sd : {0, 1}) {
          const auto& fs = h[x].side(static_cast<Side>(sd));
          for (std::size_t k = 0; k < fs.size(); ++k) {
            if (mm.f[x][sd][k]) {
              one.ant.insert(one.ant.end(), sub.ant.begin(), sub.ant.end());
              one.suc.insert(one.suc.end(), sub.suc.begin(), sub.suc.end());
            } else {
              one.side(static_cast<Side>(sd)).push_back(fs[k]);
            }
          }
        }
      }
      out.seqs.push_back(one);
      for (const auto& e : sub.extra) out.seqs.push_back(e);
      return out;
    };
    auto merged_map = [](const Hypersequent& h, const Marks& mm) {
      Alignment a;
      a.seq.assign(h.size(), 0);
      a.formula.resize(h.size());
      int modal = 0;
      for (std::size_t x = 0; x < h.size(); ++x)
        if (h[x].sort == Sort::Modal) ++modal;
      int next = 0;
      int at[2] = {0, 0};
      for (std::size_t x = 0; x < h.size(); ++x)
        for (int sd : {0, 1}) {
          const auto& fs = h[x].side(static_cast<Side>(sd));
          a.formula[x][sd].assign(fs.size(), -1);
          if (h[x].sort == Sort::Modal) {
            a.seq[x] = next;
            for (std::size_t k = 0; k < fs.size(); ++k) a.formula[x][sd][k] = static_cast<int>(k);
            if (sd == 1) ++next;
            continue;
          }
          a.seq[x] = modal;
          for (std::size_t k = 0; k < fs.size(); ++k)
            if (!mm.f[x][sd][k]) a.formula[x][sd][k] = at[sd]++;
        }
      return a;
    };
    std::function<Proof(const Proof&, const Marks&)> go = [&](const Proof& p, const Marks& mm) -> Proof {
      run_.spend();
      const Hypersequent t = target(p->conclusion, mm);
      if (p->open) unsupported("open leaf on the path of a cut formula");
      if (!mm.any_formula()) return fit_to(to_modal(p), t);
      const StepResult sr = step_of(p);
      const RuleId r = p->app.rule;
      if (p->premises.empty()) unsupported("non-atomic initial sequent on the path of a cut formula");
      if (r == RuleId::Nec1 && fresh(sr, mm, p->app.seq, Side::Suc, 0))
        return fit_to(right_with_lemma(s, lemma_of(p->premises[0], p->app.seq), true), t);
      std::vector<Marks> pm = lift(sr, premise_conclusions(p), mm, false);
      std::vector<Proof> qs;
      std::vector<Alignment> maps;
      for (std::size_t k = 0; k < p->premises.size(); ++k) {
        const Hypersequent& h = p->premises[k]->conclusion;
        const Hypersequent tk = target(h, pm[k]);
        Proof q = fit_to(go(p->premises[k], pm[k]), tk);
        maps.push_back(compose(merged_map(h, pm[k]), align_or_throw(tk, q->conclusion)));
        qs.push_back(q);
      }
      if (r == RuleId::IwL || r == RuleId::IwR || r == RuleId::Ew || r == RuleId::Merge || r == RuleId::Split)
        return fit_to(qs[0], t);
      RuleApp app = remap_app(p->app, maps);
      const bool lost = app.seq < 0 || (uses_formula(r) && app.idx < 0) ||
                        ((r == RuleId::IcL || r == RuleId::IcR) && app.idx2 < 0) || (r == RuleId::AndR && app.idx2 < 0);
      if (lost) {
        if (r == RuleId::IcL || r == RuleId::IcR) return fit_to(qs[0], t);
        unsupported(std::string("principal position of ") + rule_name(r) + " was removed");
      }
      if (r == RuleId::Five1 && p->conclusion[static_cast<std::size_t>(p->app.seq)].sort == Sort::Plain) {
        if (!system_has(sys_, RuleId::FourL)) unsupported("51 on a merged sequent needs 4l");
        app.rule = RuleId::FourL;
      }
      Proof out;
      try {
        out = to_modal(mk(app, std::move(qs)));
      } catch (const StepFailure& e) {
        unsupported(std::string(rule_name(r)) + " does not apply to the merged sequent: " + e.what());
      }
      return fit_to(out, t);
    };
    return go(n, m);
  }

  static bool uses_formula(RuleId r) {
    switch (r) {
      case RuleId::AndL1: case RuleId::AndL2: case RuleId::AndR: case RuleId::NegL: case RuleId::NegR:
      case RuleId::IcL: case RuleId::IcR: case RuleId::K: case RuleId::T1: case RuleId::FourL:
      case RuleId::B1: case RuleId::Five1:
        return true;
      default:
        return false;
    }
  }

  Run& run_;
  SystemId sys_;
  const TransformOptions& opts_;
};

void collect_degrees(const Proof& p, std::vector<int>& out) {
  if (!p->open && p->app.rule == RuleId::Cut) {
    const Sequent& s = p->premises[0]->conclusion[static_cast<std::size_t>(p->app.seq)];
    out.push_back(s.suc[static_cast<std::size_t>(p->app.idx)].degree());
  }
  for (const auto& q : p->premises) collect_degrees(q, out);
}

}  // namespace

std::vector<int> cut_degrees(const Proof& p) {
  std::vector<int> out;
  collect_degrees(p, out);
  std::sort(out.rbegin(), out.rend());
  return out;
}

Proof reduce_cut_formula(const Proof& p, const TransformOptions& opts) {
  Run run(opts, SystemId::K);
  Elim el(run, SystemId::K, opts);
  std::function<Proof(const Proof&)> go = [&](const Proof& x) -> Proof {
    Rebuilder rb([&](const Proof& n, std::vector<Proof> prems) -> Proof {
      if (!rule_is(n, {RuleId::Cut})) return replay_exact(n, std::move(prems));
      std::vector<Alignment> maps;
      for (std::size_t k = 0; k < 2; ++k)
        maps.push_back(align_or_throw(n->premises[k]->conclusion, prems[k]->conclusion));
      const RuleApp app = remap_app(n->app, maps);
      Site s{prems[0], prems[1], app.seq, app.idx, app.seq2 < 0 ? app.seq : app.seq2, app.idx2 < 0 ? 0 : app.idx2,
             n->conclusion};
      const Formula f = s.formula();
      if (f.op() != Op::And && f.op() != Op::Neg) return replay_exact(n, std::move(prems));
      Proof r = el.reduce(s);
      for (int d : cut_degrees(r))
        if (d >= f.degree()) throw std::logic_error("cut-formula reduction did not lower the cut degree");
      run.tick("reduce-cut", n, r);
      return go(r);
    });
    return rb(x);
  };
  return go(atomize_initials(canonicalize(p), opts));
}

Proof eliminate_cut(const Proof& p, SystemId sys, const TransformOptions& opts) {
  if (group_of(sys) == Group::Gamma) {
    throw TransformError(Kind::WrongGroup, std::string("cut-elimination unavailable for group \u03b3 (") +
                                               system_name(sys) + ")");
  }
  Run run(opts, sys);
  Elim el(run, sys, opts);
  Proof out = el.all(canonicalize(p));
  if (count_rule(out, RuleId::Cut) != 0) throw std::logic_error("cut elimination left a cut");
  return out;
}

}  // namespace hyperseq
