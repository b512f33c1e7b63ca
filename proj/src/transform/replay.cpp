#include "replay.hpp"

#include <algorithm>
#include <sstream>

namespace hyperseq {

const char* transform_error_name(TransformError::Kind k) {
  switch (k) {
    case TransformError::Kind::WrongGroup: return "WrongGroup";
    case TransformError::Kind::WrongSystem: return "WrongSystem";
    case TransformError::Kind::FuelExhausted: return "FuelExhausted";
    case TransformError::Kind::NotRegular: return "NotRegular";
    case TransformError::Kind::EndNotPlain: return "EndNotPlain";
    case TransformError::Kind::Unsupported: return "Unsupported";
  }
  return "?";
}

std::string trace_to_string(const TransformTrace& t) {
  std::ostringstream out;
  for (const auto& s : t.steps) out << s.name << ' ' << s.before << " -> " << s.after << '\n';
  out << "fuel_used " << t.fuel_used << '\n';
  return out.str();
}

namespace xf {

void unsupported(const std::string& msg) { throw TransformError(Kind::Unsupported, msg); }

void wrong_group(const char* op, SystemId sys) {
  throw TransformError(Kind::WrongGroup, std::string(op) + " unavailable for group " +
                                             group_name(group_of(sys)) + " (" + system_name(sys) + ")");
}

void Run::spend(std::size_t n) {
  used_ += n;
  if (opts_.trace) opts_.trace->fuel_used = used_;
  if (used_ > opts_.fuel)
    throw TransformError(Kind::FuelExhausted, "rewrite budget of " + std::to_string(opts_.fuel) + " exhausted");
}

void Run::tick(const char* name, const Proof& before, const Proof& after) {
  spend();
  if (opts_.trace) opts_.trace->steps.push_back({name, node_count(before), node_count(after)});
  verify(after, name);
}

void Run::verify(const Proof& p, const char* name) const {
  if (!opts_.assert_each_step) return;
  const CheckReport rep = check_proof(p, sys_, {.allow_open = true});
  if (!rep.ok)
    throw std::logic_error(std::string(name) + " produced a step that does not check at " +
                           rep.failures.front().path + ": " + rep.failures.front().error.message);
}

Marks::Marks(const Hypersequent& h) : seq(h.size(), 0), f(h.size()) {
  for (std::size_t i = 0; i < h.size(); ++i)
    for (Side s : {Side::Ant, Side::Suc}) f[i][static_cast<int>(s)].assign(h[i].side(s).size(), 0);
}

bool Marks::any_seq() const { return std::find(seq.begin(), seq.end(), 1) != seq.end(); }

bool Marks::any_formula() const {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (seq_has_formula(static_cast<int>(i))) return true;
  return false;
}

bool Marks::seq_has_formula(int s) const {
  for (const auto& side : f[static_cast<std::size_t>(s)])
    if (std::find(side.begin(), side.end(), 1) != side.end()) return true;
  return false;
}

std::vector<Hypersequent> premise_conclusions(const Proof& n) {
  std::vector<Hypersequent> hs;
  for (const auto& q : n->premises) hs.push_back(q->conclusion);
  return hs;
}

StepResult step_of(const Proof& n) { return apply_rule(n->app, premise_conclusions(n)); }

std::vector<Marks> lift(const StepResult& sr, const std::vector<Hypersequent>& prems, const Marks& m,
                        bool same_turnstile_only) {
  std::vector<Marks> out;
  for (const auto& h : prems) out.emplace_back(h);
  for (std::size_t c = 0; c < sr.trace.size(); ++c) {
    const SequentTrace& t = sr.trace[c];
    if (m.seq[c])
      for (const auto& o : t.from)
        if (!same_turnstile_only || o.same_turnstile) out[static_cast<std::size_t>(o.prem)].seq[static_cast<std::size_t>(o.seq)] = 1;
    for (Side side : {Side::Ant, Side::Suc}) {
      const auto& refs = t.formulas[static_cast<int>(side)];
      for (std::size_t k = 0; k < refs.size(); ++k) {
        if (!m.at(static_cast<int>(c), side, static_cast<int>(k))) continue;
        for (const auto& r : refs[k]) out[static_cast<std::size_t>(r.prem)].set(r.seq, r.side, r.idx);
      }
    }
  }
  return out;
}

Edit::Edit(const Hypersequent& h) : drop_seq(h.size(), 0), retype(h.size()), drop(h.size()), add(h.size()) {
  for (std::size_t i = 0; i < h.size(); ++i)
    for (Side s : {Side::Ant, Side::Suc}) drop[i][static_cast<int>(s)].assign(h[i].side(s).size(), 0);
}

Edited apply_edit(const Hypersequent& h, const Edit& e) {
  Edited out;
  out.map.seq.assign(h.size(), -1);
  out.map.formula.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (Side side : {Side::Ant, Side::Suc})
      out.map.formula[i][static_cast<int>(side)].assign(h[i].side(side).size(), -1);
    if (e.drop_seq[i]) continue;
    Sequent s{e.retype[i].value_or(h[i].sort), {}, {}};
    for (Side side : {Side::Ant, Side::Suc}) {
      const int sd = static_cast<int>(side);
      const auto& fs = h[i].side(side);
      for (std::size_t k = 0; k < fs.size(); ++k) {
        if (e.drop[i][sd][k]) continue;
        out.map.formula[i][sd][k] = static_cast<int>(s.side(side).size());
        s.side(side).push_back(fs[k]);
      }
      for (const auto& f : e.add[i][sd]) s.side(side).push_back(f);
    }
    out.map.seq[i] = static_cast<int>(out.h.size());
    out.h.seqs.push_back(std::move(s));
  }
  for (const auto& s : e.extra) out.h.seqs.push_back(s);
  return out;
}

Alignment compose(const Alignment& a, const Alignment& b) {
  Alignment out;
  out.seq.resize(a.seq.size());
  out.formula.resize(a.formula.size());
  for (std::size_t i = 0; i < a.seq.size(); ++i) {
    const int m = a.seq[i];
    out.seq[i] = m < 0 ? -1 : b.seq[static_cast<std::size_t>(m)];
    for (int sd : {0, 1}) {
      const auto& v = a.formula[i][sd];
      auto& w = out.formula[i][sd];
      w.resize(v.size());
      for (std::size_t k = 0; k < v.size(); ++k)
        w[k] = (m < 0 || v[k] < 0) ? -1 : b.formula[static_cast<std::size_t>(m)][sd][static_cast<std::size_t>(v[k])];
    }
  }
  return out;
}

Alignment align_or_throw(const Hypersequent& a, const Hypersequent& b) {
  auto al = align_hyper(a, b);
  if (!al) throw std::logic_error("no alignment between '" + to_string(a) + "' and '" + to_string(b) + "'");
  return *al;
}

Proof fit_to(const Proof& p, const Hypersequent& target) {
  if (p->conclusion.equiv(target)) return p;
  if (!macro::embeds(p->conclusion, target))
    unsupported("'" + to_string(p->conclusion) + "' does not embed into '" + to_string(target) + "'");
  try {
    return macro::fit(p, target);
  } catch (const StepFailure& e) {
    unsupported(std::string("structural repair failed: ") + e.what());
  }
}

namespace {

bool binary(RuleId r) { return r == RuleId::AndR || r == RuleId::Cut; }

bool has_principal_formula(RuleId r) {
  switch (r) {
    case RuleId::AndL1: case RuleId::AndL2: case RuleId::AndR: case RuleId::NegL:
    case RuleId::NegR: case RuleId::IcL: case RuleId::IcR: case RuleId::Cut:
    case RuleId::K: case RuleId::T1: case RuleId::FourL: case RuleId::B1: case RuleId::Five1:
      return true;
    default:
      return false;
  }
}

}  // namespace

Proof replay(const Proof& n, std::vector<Proof> prems, const std::vector<Edit>& edits, const Edit& out) {
  std::vector<Alignment> maps;
  for (std::size_t k = 0; k < prems.size(); ++k) {
    const Edited e = apply_edit(n->premises[k]->conclusion, edits[k]);
    prems[k] = fit_to(prems[k], e.h);
    maps.push_back(compose(e.map, align_or_throw(e.h, prems[k]->conclusion)));
  }
  const Edited target = apply_edit(n->conclusion, out);
  const RuleId r = n->app.rule;
  if (r == RuleId::IwL || r == RuleId::IwR || r == RuleId::Ew) return fit_to(prems[0], target.h);
  RuleApp app = remap_app(n->app, maps);
  std::erase_if(app.pick_ant, [](int k) { return k < 0; });
  std::erase_if(app.pick_suc, [](int k) { return k < 0; });
  std::erase_if(app.flip, [](int k) { return k < 0; });
  bool lost = app.seq < 0 || (has_principal_formula(r) && app.idx < 0) ||
              ((r == RuleId::IcL || r == RuleId::IcR) && app.idx2 < 0) || (r == RuleId::Merge && app.seq2 < 0) ||
              (binary(r) && (app.seq2 < 0 || app.idx2 < 0));
  if (lost) {
    if (r == RuleId::IcL || r == RuleId::IcR || r == RuleId::Merge || r == RuleId::Split)
      return fit_to(prems[0], target.h);
    unsupported(std::string("principal position of ") + rule_name(r) + " was removed");
  }
  Proof q;
  try {
    q = mk(app, std::move(prems));
  } catch (const StepFailure& e) {
    unsupported(std::string(rule_name(r)) + " does not apply after the rewrite: " + e.what());
  }
  return fit_to(q, target.h);
}

Proof replay_exact(const Proof& n, std::vector<Proof> prems) {
  bool same = true;
  for (std::size_t k = 0; k < prems.size(); ++k) same = same && prems[k] == n->premises[k];
  if (same) return n;
  std::vector<Alignment> maps;
  for (std::size_t k = 0; k < prems.size(); ++k)
    maps.push_back(align_or_throw(n->premises[k]->conclusion, prems[k]->conclusion));
  return mk(remap_app(n->app, maps), std::move(prems));
}

int locate_seq(const Hypersequent& orig, const Hypersequent& now, int s) {
  return align_or_throw(orig, now).seq[static_cast<std::size_t>(s)];
}

Proof Rebuilder::operator()(const Proof& p) {
  if (auto it = memo_.find(p.get()); it != memo_.end()) return it->second;
  std::vector<Proof> prems;
  for (const auto& q : p->premises) prems.push_back((*this)(q));
  Proof out = fn_(p, std::move(prems));
  memo_.emplace(p.get(), out);
  return out;
}

bool rule_is(const Proof& n, std::initializer_list<RuleId> rs) {
  return !n->open && std::find(rs.begin(), rs.end(), n->app.rule) != rs.end();
}

}  // namespace xf
}  // namespace hyperseq
