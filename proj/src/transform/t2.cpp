#include "replay.hpp"

namespace hyperseq {

namespace {

using namespace xf;

Marks seq_marks(const Hypersequent& h, const std::vector<int>& seqs) {
  Marks m(h);
  for (int s : seqs) m.seq[static_cast<std::size_t>(s)] = 1;
  return m;
}

Edit retype_edit(const Hypersequent& h, const Marks& tags, Sort to) {
  Edit e(h);
  for (std::size_t i = 0; i < h.size(); ++i)
    if (tags.seq[i]) e.retype[i] = to;
  return e;
}

// The tagged '=>' sequents of the conclusion of `n` turned into '->' sequents.
Proof retype_region(const Proof& n, const Marks& tags, Run& run);

// Rebuilds premise `k` with its tagged sequents retyped and returns it with
// the alignment from the edited premise conclusion.
struct Lifted {
  Proof proof;
  Alignment map;  // original premise positions to `proof`
};

Lifted lifted(const Proof& n, std::size_t k, const Marks& m, Run& run) {
  const Hypersequent& h = n->premises[k]->conclusion;
  const Edited e = apply_edit(h, retype_edit(h, m, Sort::Plain));
  Proof q = fit_to(retype_region(n->premises[k], m, run), e.h);
  return {q, compose(e.map, align_or_throw(e.h, q->conclusion))};
}

Proof retype_region(const Proof& n, const Marks& tags, Run& run) {
  if (!tags.any_seq()) return n;
  run.spend();
  const RuleId r = n->app.rule;
  const Edit out = retype_edit(n->conclusion, tags, Sort::Plain);
  const Hypersequent target = apply_edit(n->conclusion, out).h;
  if (r == RuleId::InitAx) return pb::ax(*n->app.formula, Sort::Plain);
  if (r == RuleId::InitBot) return pb::bot(Sort::Plain);
  const StepResult sr = step_of(n);
  std::vector<Marks> pm = lift(sr, premise_conclusions(n), tags, true);
  const std::size_t np = n->premises.size();
  const int i = n->app.seq;
  const Hypersequent& h0 = np > 0 ? n->premises[0]->conclusion : n->conclusion;
  const int last = static_cast<int>(n->conclusion.size()) - 1;

  switch (r) {
    case RuleId::Nec2:
      return n->premises[0];
    case RuleId::B2:
    case RuleId::Five2:
    case RuleId::B25: {
      const int c = sr.principal.empty() ? -1 : sr.principal[0];
      if (c < 0 || !tags.seq[static_cast<std::size_t>(c)]) {
        if (r == RuleId::B2) break;
        unsupported(std::string("t2 below the context of ") + rule_name(r));
      }
      Marks m = pm[0];
      if (r == RuleId::B2)
        for (std::size_t s = 0; s < h0.size(); ++s) m.seq[s] = static_cast<int>(s) != i ? 1 : 0;
      return fit_to(retype_region(n->premises[0], m, run), target);
    }
    case RuleId::B1:
    case RuleId::Five1: {
      if (!tags.seq[static_cast<std::size_t>(last)]) break;
      const Formula f = h0[static_cast<std::size_t>(i)].ant[static_cast<std::size_t>(n->app.idx)];
      Lifted l = lifted(n, 0, pm[0], run);
      const int s = l.map.seq[static_cast<std::size_t>(i)];
      int k = l.map.formula[static_cast<std::size_t>(i)][0][static_cast<std::size_t>(n->app.idx)];
      Proof q = l.proof;
      if (r == RuleId::B1) q = pb::t1(q, s, k);  // box B stays at position k
      q = pb::split(q, s, {k}, {});
      return fit_to(q, target);
    }
    case RuleId::K:
    case RuleId::FourL: {
      if (!tags.seq[static_cast<std::size_t>(i)]) break;
      Lifted l = lifted(n, 0, pm[0], run);
      const int s = l.map.seq[static_cast<std::size_t>(i)];
      const int k = l.map.formula[static_cast<std::size_t>(i)][0][static_cast<std::size_t>(n->app.idx)];
      Proof q = l.proof;
      if (r == RuleId::K) {
        if (!system_has(run.system(), RuleId::T1)) unsupported("t2 over k needs t1");
        q = pb::t1(q, s, k);
      }
      q = pb::split(q, s, {k}, {});
      return fit_to(q, target);
    }
    case RuleId::FourR: {
      if (!tags.seq[static_cast<std::size_t>(i)]) break;
      pm[0].seq[static_cast<std::size_t>(i)] = 0;
      Lifted l = lifted(n, 0, pm[0], run);
      return fit_to(pb::nec1(l.proof, l.map.seq[static_cast<std::size_t>(i)]), target);
    }
    default:
      break;
  }
  std::vector<Proof> prems;
  std::vector<Edit> edits;
  for (std::size_t k = 0; k < np; ++k) {
    prems.push_back(retype_region(n->premises[k], pm[k], run));
    edits.push_back(retype_edit(n->premises[k]->conclusion, pm[k], Sort::Plain));
  }
  return replay(n, std::move(prems), edits, out);
}

}  // namespace

Proof eliminate_T2(const Proof& p, SystemId sys, const TransformOptions& opts) {
  if (group_of(sys) == Group::Beta) wrong_group("t2 elimination", sys);
  Run run(opts, sys);
  Rebuilder rb([&](const Proof& n, std::vector<Proof> prems) -> Proof {
    if (n->open || n->app.rule != RuleId::T2) return replay_exact(n, std::move(prems));
    const Proof& q = prems[0];
    const int s = locate_seq(n->premises[0]->conclusion, q->conclusion, n->app.seq);
    Proof out = fit_to(retype_region(q, seq_marks(q->conclusion, {s}), run), n->conclusion);
    run.tick("t2-elim", n, out);
    return out;
  });
  return rb(canonicalize(p));
}

}  // namespace hyperseq
