#include <algorithm>
#include <functional>
#include <map>

#include "hyperseq/derived.hpp"
#include "hyperseq/search.hpp"

namespace hyperseq {

const char* status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::ExhaustedBound: return "no proof within bound";
    case SearchStatus::BudgetExceeded: return "node budget exceeded";
  }
  return "?";
}

std::set<RuleId> propositional_rules() {
  using R = RuleId;
  return {R::InitAx, R::InitBot, R::AndL1, R::AndL2, R::AndR, R::NegL, R::NegR, R::IcL,
          R::IcR,    R::IwL,     R::IwR,   R::Ew,    R::Merge, R::Split};
}

namespace {

using Fs = std::vector<Formula>;

void sort_unique(Fs& fs) {
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
}

bool contains(const Fs& fs, const Formula& f) { return std::binary_search(fs.begin(), fs.end(), f); }

bool subset(const Sequent& a, const Sequent& b) {
  return std::includes(b.ant.begin(), b.ant.end(), a.ant.begin(), a.ant.end()) &&
         std::includes(b.suc.begin(), b.suc.end(), a.suc.begin(), a.suc.end());
}

Sequent as_set(Sequent s) {
  sort_unique(s.ant);
  sort_unique(s.suc);
  return s;
}

Sequent retyped(Sequent s, Sort sort) {
  s.sort = sort;
  return s;
}

Sequent plus(Sequent s, Side side, const Formula& f) {
  s.side(side).push_back(f);
  return s;
}

}  // namespace

Hypersequent saturation_normal_form(const Hypersequent& h) {
  Hypersequent out;
  bool has_plain = false;
  Sequent plain{Sort::Plain, {}, {}};
  std::vector<Sequent> modal;
  for (const auto& s : h.seqs) {
    if (s.sort == Sort::Plain) {
      has_plain = true;
      plain.ant.insert(plain.ant.end(), s.ant.begin(), s.ant.end());
      plain.suc.insert(plain.suc.end(), s.suc.begin(), s.suc.end());
    } else {
      modal.push_back(as_set(s));
    }
  }
  if (has_plain) out.seqs.push_back(as_set(plain));
  std::sort(modal.begin(), modal.end(), [](const Sequent& a, const Sequent& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.compare(b) < 0;
  });
  std::vector<Sequent> kept;
  for (const auto& s : modal)
    if (std::none_of(kept.begin(), kept.end(), [&](const Sequent& k) { return subset(s, k); }))
      kept.push_back(s);
  std::sort(kept.begin(), kept.end(), [](const Sequent& a, const Sequent& b) { return a.compare(b) < 0; });
  out.seqs.insert(out.seqs.end(), kept.begin(), kept.end());
  return out;
}

namespace {

// A backward step: the premises as exact layouts (the goal plus additions) and
// the forward rule applications turning fitted premise proofs back into a
// proof that embeds into the goal.
struct Step {
  std::vector<Hypersequent> premises;
  std::function<Proof(const std::vector<Proof>&, const std::vector<Alignment>&)> build;
};

int seq_at(const Alignment& a, int x) { return a.seq.at(static_cast<std::size_t>(x)); }
int idx_at(const Alignment& a, int x, Side side, int k) {
  return a.formula.at(static_cast<std::size_t>(x))[static_cast<int>(side)].at(static_cast<std::size_t>(k));
}
int last(const Proof& p) { return static_cast<int>(p->conclusion.size()) - 1; }

class Prover {
 public:
  Prover(SystemId sys, const SearchConfig& cfg) : cfg_(cfg) {
    allowed_ = cfg.allow_rules ? *cfg.allow_rules : system_rules(sys);
    allowed_.erase(RuleId::Cut);
    for (RuleId r : std::set<RuleId>(allowed_))
      if (!system_has(sys, r)) allowed_.erase(r);
  }

  SearchResult run(const Hypersequent& goal) {
    SearchResult out;
    const Hypersequent g = saturation_normal_form(goal);
    Proof p;
    try {
      p = search(g, cfg_.max_depth);
    } catch (const Budget&) {
      out.status = SearchStatus::BudgetExceeded;
      out.nodes = nodes_;
      return out;
    }
    out.nodes = nodes_;
    if (!p) {
      out.status = SearchStatus::ExhaustedBound;
      return out;
    }
    out.proof = macro::fit(p, goal);
    out.status = SearchStatus::Found;
    return out;
  }

 private:
  struct Budget {};

  bool allow(std::initializer_list<RuleId> rs) const {
    return std::all_of(rs.begin(), rs.end(), [&](RuleId r) { return allowed_.contains(r); });
  }

  static int plain_index(const Hypersequent& g) {
    return !g.seqs.empty() && g[0].sort == Sort::Plain ? 0 : -1;
  }

  // A step is only worth taking when it changes the normal form.
  static bool grows(const Hypersequent& g, const Hypersequent& x) {
    return !(saturation_normal_form(x) == g);
  }

  Proof close(const Hypersequent& g) const {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Sequent& s = g[i];
      if (contains(s.ant, Formula::bot()) && allow({RuleId::InitBot}))
        return macro::fit(pb::bot(s.sort), g);
      for (const auto& f : s.ant)
        if (contains(s.suc, f) && allow({RuleId::InitAx})) return macro::fit(pb::ax(f, s.sort), g);
    }
    return nullptr;
  }

  // Non-branching invertible steps, in a fixed order.
  std::optional<Step> invertible(const Hypersequent& g) const {
    const int pi = plain_index(g);
    const int n = static_cast<int>(g.size());
    auto with = [&](int i, Sequent s) {
      Hypersequent x = g;
      x[static_cast<std::size_t>(i)] = std::move(s);
      return x;
    };
    auto extra = [&](Sequent s) {
      Hypersequent x = g;
      x.seqs.push_back(std::move(s));
      return x;
    };
    for (int i = 0; i < n; ++i) {
      const Sequent& s = g[static_cast<std::size_t>(i)];
      const int na = static_cast<int>(s.ant.size());
      const int ns = static_cast<int>(s.suc.size());
      for (const auto& f : s.ant) {
        if (f.is(Op::And) && allow({RuleId::AndL1, RuleId::AndL2}) &&
            !(contains(s.ant, f.left()) && contains(s.ant, f.right()))) {
          Sequent t = plus(plus(s, Side::Ant, f.left()), Side::Ant, f.right());
          return Step{{with(i, t)}, [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                        const int si = seq_at(a[0], i);
                        Proof p = pb::and_l1(q[0], si, idx_at(a[0], i, Side::Ant, na), f.right());
                        return pb::and_l2(p, si, idx_at(a[0], i, Side::Ant, na + 1), f.left());
                      }};
        }
        if (f.is(Op::Neg) && allow({RuleId::NegL}) && !contains(s.suc, f.sub())) {
          return Step{{with(i, plus(s, Side::Suc, f.sub()))},
                      [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                        return pb::neg_l(q[0], seq_at(a[0], i), idx_at(a[0], i, Side::Suc, ns));
                      }};
        }
      }
      for (const auto& f : s.suc) {
        if (f.is(Op::Neg) && allow({RuleId::NegR}) && !contains(s.ant, f.sub())) {
          return Step{{with(i, plus(s, Side::Ant, f.sub()))},
                      [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                        return pb::neg_r(q[0], seq_at(a[0], i), idx_at(a[0], i, Side::Ant, na));
                      }};
        }
      }
      if (allow({RuleId::T1})) {
        for (const auto& f : s.ant) {
          if (f.is_boxed() && !contains(s.ant, f.sub())) {
            return Step{{with(i, plus(s, Side::Ant, f.sub()))},
                        [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                          return pb::t1(q[0], seq_at(a[0], i), idx_at(a[0], i, Side::Ant, na));
                        }};
          }
        }
      }
    }
    if (pi >= 0) {
      const Sequent& ps = g[0];
      // nec1: box A on the right of the plain sequent gives a new '=> A'.
      if (allow({RuleId::Nec1})) {
        for (const auto& f : ps.suc) {
          if (!f.is_boxed()) continue;
          Hypersequent x = extra(Sequent{Sort::Modal, {}, {f.sub()}});
          if (!grows(g, x)) continue;
          return Step{{x}, [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                        Proof p = pb::nec1(q[0], seq_at(a[0], n));
                        return pb::merge(p, seq_at(a[0], 0), seq_at(a[0], n));
                      }};
        }
      }
      // k / 4l: box A on the left of the plain sequent enters a modal sequent.
      for (int i = 1; i < n; ++i) {
        const Sequent& m = g[static_cast<std::size_t>(i)];
        const int na = static_cast<int>(m.ant.size());
        for (const auto& f : ps.ant) {
          if (!f.is_boxed()) continue;
          if (allow({RuleId::K}) && !contains(m.ant, f.sub())) {
            return Step{{with(i, plus(m, Side::Ant, f.sub()))},
                        [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                          Proof p = pb::k(q[0], seq_at(a[0], i), idx_at(a[0], i, Side::Ant, na));
                          return pb::merge(p, seq_at(a[0], 0), last(p));
                        }};
          }
          if (allow({RuleId::FourL}) && !contains(m.ant, f)) {
            return Step{{with(i, plus(m, Side::Ant, f))},
                        [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                          Proof p = pb::four_l(q[0], seq_at(a[0], i), idx_at(a[0], i, Side::Ant, na));
                          return pb::merge(p, seq_at(a[0], 0), last(p));
                        }};
          }
        }
      }
    }
    // 4r: box A on the right of a modal sequent gives a new '=> A'.
    if (allow({RuleId::FourR})) {
      for (int i = pi + 1; i < n; ++i) {
        for (const auto& f : g[static_cast<std::size_t>(i)].suc) {
          if (!f.is_boxed()) continue;
          Hypersequent x = extra(Sequent{Sort::Modal, {}, {f.sub()}});
          if (!grows(g, x)) continue;
          return Step{{x}, [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                        Proof p = pb::four_r(q[0], seq_at(a[0], n));
                        return pb::merge(p, seq_at(a[0], i), seq_at(a[0], n));
                      }};
        }
      }
    }
    if (pi >= 0) {
      const Sequent& ps = g[0];
      const int na = static_cast<int>(ps.ant.size());
      if (allow({RuleId::D}) && n == 1) {
        return Step{{extra(Sequent{Sort::Modal, {}, {}})},
                    [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                      Proof p = pb::d(q[0], seq_at(a[0], n));
                      return pb::merge(p, seq_at(a[0], 0), seq_at(a[0], n));
                    }};
      }
      // b1 / 51: box A on the left of a modal sequent enters the plain one.
      for (int i = 1; i < n; ++i) {
        for (const auto& f : g[static_cast<std::size_t>(i)].ant) {
          if (!f.is_boxed()) continue;
          if (allow({RuleId::B1}) && !contains(ps.ant, f.sub())) {
            return Step{{with(0, plus(ps, Side::Ant, f.sub()))},
                        [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                          Proof p = pb::b1(q[0], seq_at(a[0], 0), idx_at(a[0], 0, Side::Ant, na));
                          return pb::merge(p, seq_at(a[0], i), last(p));
                        }};
          }
          if (allow({RuleId::Five1}) && !contains(ps.ant, f)) {
            return Step{{with(0, plus(ps, Side::Ant, f))},
                        [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                          Proof p = pb::five1(q[0], seq_at(a[0], 0), idx_at(a[0], 0, Side::Ant, na));
                          return pb::merge(p, seq_at(a[0], i), last(p));
                        }};
          }
        }
      }
      if (allow({RuleId::T2})) {
        Hypersequent x = extra(retyped(ps, Sort::Modal));
        if (grows(g, x)) {
          return Step{{x}, [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                        Proof p = pb::t2(q[0], seq_at(a[0], n));
                        return pb::merge(p, seq_at(a[0], 0), seq_at(a[0], n));
                      }};
        }
      }
    }
    return std::nullopt;
  }

  std::optional<Step> branching(const Hypersequent& g) const {
    if (!allow({RuleId::AndR})) return std::nullopt;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Sequent& s = g[i];
      const int ns = static_cast<int>(s.suc.size());
      const int si = static_cast<int>(i);
      for (const auto& f : s.suc) {
        if (!f.is(Op::And) || contains(s.suc, f.left()) || contains(s.suc, f.right())) continue;
        Hypersequent x1 = g;
        Hypersequent x2 = g;
        x1[i] = plus(s, Side::Suc, f.left());
        x2[i] = plus(s, Side::Suc, f.right());
        return Step{{x1, x2}, [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                      return pb::and_r(q[0], q[1], seq_at(a[0], si), idx_at(a[0], si, Side::Suc, ns),
                                       seq_at(a[1], si), idx_at(a[1], si, Side::Suc, ns));
                    }};
      }
    }
    return std::nullopt;
  }

  std::vector<Step> jumps(const Hypersequent& g) const {
    std::vector<Step> out;
    const int pi = plain_index(g);
    const int n = static_cast<int>(g.size());
    for (int i = pi + 1; i < n; ++i) {
      const Sequent& m = g[static_cast<std::size_t>(i)];
      if (allow({RuleId::Nec2})) {
        out.push_back(Step{{Hypersequent({retyped(m, Sort::Plain)})},
                           [](const std::vector<Proof>& q, const std::vector<Alignment>&) {
                             return pb::nec2(q[0]);
                           }});
      }
      std::vector<Sequent> others;
      for (int j = pi + 1; j < n; ++j)
        if (j != i) others.push_back(g[static_cast<std::size_t>(j)]);
      if (allow({RuleId::B2})) {
        Hypersequent x;
        if (pi >= 0) x.seqs.push_back(retyped(g[0], Sort::Modal));
        x.seqs.push_back(retyped(m, Sort::Plain));
        const int at = static_cast<int>(x.size()) - 1;
        out.push_back(Step{{x}, [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                             return pb::b2(q[0], seq_at(a[0], at));
                           }});
      }
      if (allow({RuleId::Five2})) {
        Hypersequent x(others);
        x.seqs.push_back(m);
        x.seqs.push_back(retyped(m, Sort::Plain));
        const int at = static_cast<int>(x.size()) - 1;
        out.push_back(Step{{x}, [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                             return pb::five2(q[0], seq_at(a[0], at));
                           }});
      }
      if (allow({RuleId::B25}) && (pi >= 0 || !allow({RuleId::Five2}))) {
        Hypersequent x(others);
        x.seqs.push_back(m);
        int flip = -1;
        if (pi >= 0) {
          flip = static_cast<int>(x.size());
          x.seqs.push_back(retyped(g[0], Sort::Modal));
        }
        x.seqs.push_back(retyped(m, Sort::Plain));
        const int at = static_cast<int>(x.size()) - 1;
        out.push_back(Step{{x}, [=](const std::vector<Proof>& q, const std::vector<Alignment>& a) {
                             std::vector<int> fl;
                             if (flip >= 0) fl.push_back(seq_at(a[0], flip));
                             return pb::b25(q[0], seq_at(a[0], at), fl);
                           }});
      }
    }
    return out;
  }

  // Turns proofs of the normalized premises into a proof of `g`.
  static Proof rebuild(const Step& st, const std::vector<Proof>& proofs, const Hypersequent& g) {
    std::vector<Proof> fitted;
    std::vector<Alignment> maps;
    for (std::size_t k = 0; k < st.premises.size(); ++k) {
      Proof q = macro::fit(proofs[k], st.premises[k]);
      auto al = align_hyper(st.premises[k], q->conclusion);
      if (!al) throw std::logic_error("prover: fitted premise does not match its layout");
      fitted.push_back(q);
      maps.push_back(*al);
    }
    return macro::fit(st.build(fitted, maps), g);
  }

  void tick() {
    if (++nodes_ > cfg_.node_budget) throw Budget{};
  }

  Proof search(const Hypersequent& start, int depth) {
    tick();
    // Saturate with the non-branching invertible steps.
    std::vector<std::pair<Step, Hypersequent>> chain;  // step and the goal it was applied to
    Hypersequent g = start;
    while (auto st = invertible(g)) {
      Hypersequent next = saturation_normal_form(st->premises[0]);
      chain.emplace_back(std::move(*st), g);
      g = std::move(next);
    }
    Proof p = close(g);
    if (!p) p = after_saturation(g, depth);
    if (!p) return nullptr;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) p = rebuild(it->first, {p}, it->second);
    return p;
  }

  Proof after_saturation(const Hypersequent& g, int depth) {
    if (auto st = branching(g)) {
      std::vector<Proof> ps;
      for (const auto& x : st->premises) {
        Proof q = search(saturation_normal_form(x), depth);
        if (!q) return nullptr;
        ps.push_back(q);
      }
      return rebuild(*st, ps, g);
    }
    if (depth <= 0) return nullptr;
    if (cfg_.loop_check) {
      if (std::find(branch_.begin(), branch_.end(), g) != branch_.end()) return nullptr;
    }
    branch_.push_back(g);
    Proof found;
    for (const Step& st : jumps(g)) {
      const Hypersequent x = saturation_normal_form(st.premises[0]);
      if (Proof q = search(x, depth - 1)) {
        found = rebuild(st, {q}, g);
        break;
      }
    }
    branch_.pop_back();
    return found;
  }

  SearchConfig cfg_;
  std::set<RuleId> allowed_;
  std::size_t nodes_ = 0;
  std::vector<Hypersequent> branch_;
};

}  // namespace

SearchResult prove(const Hypersequent& goal, SystemId sys, const SearchConfig& cfg) {
  if (cfg.max_depth < 0) throw std::invalid_argument("search depth must be non-negative");
  Prover prover(sys, cfg);
  SearchResult r = prover.run(goal);
  if (r.proof) {
    const CheckReport rep = check_proof(r.proof, sys);
    if (!rep.ok || !r.proof->conclusion.equiv(goal))
      throw std::logic_error("prover produced a proof that does not check: " +
                             (rep.failures.empty() ? std::string("wrong conclusion")
                                                   : rep.failures[0].path + " " + rep.failures[0].error.message));
  }
  return r;
}

}  // namespace hyperseq
