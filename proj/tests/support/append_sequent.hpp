#pragma once

#include <random>
#include <vector>

#include "hyperseq/rules.hpp"
#include "random_proofs.hpp"

namespace hyperseq::testing {

// The rule applications of a proof within `depth` steps of its root.
struct Fragment {
  SystemId system;
  std::vector<Proof> steps;
};

inline void collect_steps(const Proof& n, int depth, std::vector<Proof>& out) {
  if (depth == 0 || n->open || n->premises.empty()) return;
  out.push_back(n);
  for (const auto& q : n->premises) collect_steps(q, depth - 1, out);
}

inline bool uses_context_restricted_rule(const Fragment& f) {
  for (const auto& n : f.steps) {
    const RuleId r = n->app.rule;
    if (r == RuleId::Five2 || r == RuleId::B25 || r == RuleId::Nec2) return true;
  }
  return false;
}

inline Hypersequent appended(Hypersequent h, const Sequent& t) {
  h.seqs.push_back(t);
  return h;
}

// Whether every step of the fragment still checks once `t` is added to each
// hypersequent. A nec2 step that gains a '=>' sequent is read as a 52 step.
inline bool steps_survive_append(const Fragment& f, const Sequent& t) {
  for (const auto& n : f.steps) {
    RuleApp app = n->app;
    if (app.rule == RuleId::Nec2 && t.sort == Sort::Modal) {
      if (!system_has(f.system, RuleId::Five2)) return false;
      app.rule = RuleId::Five2;
    }
    std::vector<Hypersequent> prems;
    for (const auto& q : n->premises) prems.push_back(appended(q->conclusion, t));
    if (check_step(app, prems, appended(n->conclusion, t))) return false;
  }
  return true;
}

// Fragments cut from random proofs of `sys` at random nodes and depths 1 to 3.
inline std::vector<Fragment> harvest_fragments(SystemId sys, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  RandomProofs gen(rng, sys, 60);
  gen.exclude(RuleId::Cut);
  std::vector<Fragment> out;
  for (int round = 0; round < 200 && static_cast<int>(out.size()) < count; ++round) {
    const Proof p = gen.generate(60);
    std::vector<Proof> nodes;
    collect_steps(p, 1000, nodes);
    if (nodes.empty()) continue;
    for (int t = 0; t < 3 && static_cast<int>(out.size()) < count; ++t) {
      const Proof& root = nodes[rng() % nodes.size()];
      Fragment f{sys, {}};
      collect_steps(root, 1 + static_cast<int>(rng() % 3), f.steps);
      out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace hyperseq::testing
