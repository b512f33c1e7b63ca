#include <unordered_map>

#include "replay.hpp"

namespace hyperseq {

namespace {

using namespace xf;

// A rebuilt proof whose conclusion carries `residues` extra empty '->' sequents.
struct Part {
  Proof proof;
  int residues = 0;
};

const Sequent kEmpty{Sort::Plain, {}, {}};

bool initial_shaped(const Hypersequent& h) {
  if (h.size() != 1 || h[0].sort != Sort::Plain) return false;
  const Sequent& s = h[0];
  if (s.ant.size() == 1 && s.suc.empty()) return s.ant[0] == Formula::bot();
  return s.ant.size() == 1 && s.suc.size() == 1 && s.ant[0] == s.suc[0];
}

bool has_plain(const Hypersequent& h) {
  for (const auto& s : h.seqs)
    if (s.sort == Sort::Plain) return true;
  return false;
}

Hypersequent padded(Hypersequent h, int r) {
  for (int k = 0; k < r; ++k) h.seqs.push_back(kEmpty);
  return h;
}

// Fits to the target; residues disappear into a '->' sequent when there is one.
Part finish(const Proof& q, const Hypersequent& target, int r) {
  if (r == 0 || has_plain(target)) return {fit_to(q, target), 0};
  return {fit_to(q, padded(target, r)), r};
}

Edit retype_edit(const Hypersequent& h, const Marks& tags, int residues) {
  Edit e(h);
  for (std::size_t i = 0; i < h.size(); ++i)
    if (tags.seq[i]) e.retype[i] = Sort::Modal;
  e.extra.assign(static_cast<std::size_t>(residues), kEmpty);
  return e;
}

// Generic step over premises that carry residues.
Part replay_with(const Proof& n, std::vector<Part> parts, const std::vector<Marks>& pm, const Marks& tags) {
  int r = 0;
  for (const auto& x : parts) r = std::max(r, x.residues);
  std::vector<Proof> qs;
  std::vector<Edit> edits;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    Proof q = parts[k].proof;
    for (int e = parts[k].residues; e < r; ++e) q = pb::ew(q, kEmpty);
    qs.push_back(q);
    edits.push_back(retype_edit(n->premises[k]->conclusion, pm[k], r));
  }
  const Edit out = retype_edit(n->conclusion, tags, r);
  Proof q = replay(n, std::move(qs), edits, out);
  return finish(q, apply_edit(n->conclusion, retype_edit(n->conclusion, tags, 0)).h, r);
}

// Located premise: the rebuilt premise fitted to its edited conclusion and the
// alignment from the original premise positions.
struct Located {
  Proof proof;
  Alignment map;
  int residues;
};

class Restrict {
 public:
  explicit Restrict(Run& run) : run_(run) {}

  Part restrict(const Proof& n) {
    if (auto it = memo_.find(n.get()); it != memo_.end()) return it->second;
    std::vector<Part> parts;
    for (const auto& q : n->premises) parts.push_back(restrict(q));
    Part out = step(n, std::move(parts));
    memo_.emplace(n.get(), out);
    return out;
  }

 private:
  Part step(const Proof& n, std::vector<Part> parts) {
    if (n->open) return {n, 0};
    bool untouched = true;
    for (std::size_t k = 0; k < parts.size(); ++k)
      untouched = untouched && parts[k].proof == n->premises[k] && parts[k].residues == 0;
    if (rule_is(n, {RuleId::Five2}) && !initial_shaped(n->premises[0]->conclusion)) {
      const Proof q = fit_to(parts[0].proof, n->premises[0]->conclusion);
      Marks tags(q->conclusion);
      tags.seq[static_cast<std::size_t>(locate_seq(n->premises[0]->conclusion, q->conclusion, n->app.seq))] = 1;
      Part c = convert(q, tags);
      Part out = finish(c.proof, n->conclusion, c.residues);
      run_.tick("52-restrict", n, out.proof);
      return out;
    }
    if (untouched) return {n, 0};
    std::vector<Marks> none;
    for (const auto& q : n->premises) none.emplace_back(q->conclusion);
    return replay_with(n, std::move(parts), none, Marks(n->conclusion));
  }

  Located located(const Proof& n, std::size_t k, const Marks& m) {
    Part x = convert(n->premises[k], m);
    const Hypersequent& h = n->premises[k]->conclusion;
    const Edited e = apply_edit(h, retype_edit(h, m, x.residues));
    Proof q = fit_to(x.proof, e.h);
    return {q, compose(e.map, align_or_throw(e.h, q->conclusion)), x.residues};
  }

  // The tagged '->' sequents of the conclusion of `n` turned into '=>' sequents.
  Part convert(const Proof& n, const Marks& tags) {
    if (!tags.any_seq()) return {n, 0};
    run_.spend();
    const RuleId r = n->app.rule;
    const Hypersequent target = apply_edit(n->conclusion, retype_edit(n->conclusion, tags, 0)).h;
    if (r == RuleId::InitAx || r == RuleId::InitBot) return {pb::five2(n, 0), 0};
    const StepResult sr = step_of(n);
    std::vector<Marks> pm = lift(sr, premise_conclusions(n), tags, true);
    const int i = n->app.seq;
    const int last = static_cast<int>(n->conclusion.size()) - 1;
    auto tagged = [&](int s) { return tags.seq[static_cast<std::size_t>(s)] != 0; };
    switch (r) {
      case RuleId::Ew:
        if (!tagged(last)) break;
        {
          Part x = convert(n->premises[0], pm[0]);
          return finish(x.proof, target, x.residues);
        }
      case RuleId::Nec1:
        if (!tagged(i)) break;
        {
          Located l = located(n, 0, pm[0]);
          return finish(pb::four_r(l.proof, l.map.seq[static_cast<std::size_t>(i)]), target, l.residues);
        }
      case RuleId::T2:
      case RuleId::D:
        if (!tagged(i)) break;
        {
          Part x = convert(n->premises[0], pm[0]);
          return finish(x.proof, target, x.residues);
        }
      case RuleId::K:
      case RuleId::FourL:
        if (!tagged(last)) break;
        {
          Located l = located(n, 0, pm[0]);
          const int s = l.map.seq[static_cast<std::size_t>(i)];
          const int k = l.map.formula[static_cast<std::size_t>(i)][0][static_cast<std::size_t>(n->app.idx)];
          Proof q = r == RuleId::K ? pb::k(l.proof, s, k) : pb::four_l(l.proof, s, k);
          q = pb::five1(q, static_cast<int>(q->conclusion.size()) - 1, 0);
          return finish(q, target, l.residues + 1);
        }
      case RuleId::Five1:
        if (!tagged(i)) break;
        {
          Located l = located(n, 0, pm[0]);
          const int s = l.map.seq[static_cast<std::size_t>(i)];
          const int k = l.map.formula[static_cast<std::size_t>(i)][0][static_cast<std::size_t>(n->app.idx)];
          Proof q = pb::four_l(l.proof, s, k);
          q = pb::five1(q, static_cast<int>(q->conclusion.size()) - 1, 0);
          return finish(q, target, l.residues + 1);
        }
      case RuleId::Split:
      case RuleId::B1:
      case RuleId::B2:
      case RuleId::B25:
        unsupported(std::string("52 restriction through ") + rule_name(r));
      default:
        break;
    }
    std::vector<Part> parts;
    for (std::size_t k = 0; k < n->premises.size(); ++k) parts.push_back(convert(n->premises[k], pm[k]));
    return replay_with(n, std::move(parts), pm, tags);
  }

  Run& run_;
  std::unordered_map<const ProofNode*, Part> memo_;
};

}  // namespace

Proof restrict_52(const Proof& p, SystemId sys, const TransformOptions& opts) {
  if (sys != SystemId::K45 && sys != SystemId::KD45 && sys != SystemId::S5)
    throw TransformError(TransformError::Kind::WrongSystem,
                         std::string("52 restriction needs the 4 and 5 rules; ") + system_name(sys) + " lacks them");
  Run run(opts, sys);
  Restrict rs(run);
  Part out = rs.restrict(canonicalize(p));
  if (out.residues > 0)
    unsupported("end hypersequent '" + to_string(p->conclusion) +
                "' has no '->' sequent to absorb the empty sequents left by 51");
  return out.proof;
}

}  // namespace hyperseq
