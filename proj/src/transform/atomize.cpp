#include "replay.hpp"

namespace hyperseq {

Proof atomize_initials(const Proof& p, const TransformOptions& opts) {
  xf::Run run(opts, SystemId::K);
  xf::Rebuilder rb([&](const Proof& n, std::vector<Proof> prems) -> Proof {
    if (n->open) return n;
    if (n->app.rule == RuleId::InitBot) {
      if (n->app.sort == Sort::Plain) return n;
      Proof out = pb::nec2(pb::bot());
      run.tick("atomize", n, out);
      return out;
    }
    if (n->app.rule == RuleId::InitAx) {
      const Formula& a = *n->app.formula;
      if (a.op() == Op::Atom && n->app.sort == Sort::Plain) return n;
      Proof out = macro::eta_initial(a, n->app.sort);
      run.tick("atomize", n, out);
      return out;
    }
    return xf::replay_exact(n, std::move(prems));
  });
  return rb(p);
}

}  // namespace hyperseq
