#include "hyperseq/rules.hpp"

#include <algorithm>
#include <utility>

namespace hyperseq {

const char* kind_name(StepError::Kind k) {
  switch (k) {
    case StepError::Kind::WrongArity: return "WrongArity";
    case StepError::Kind::BadAddressing: return "BadAddressing";
    case StepError::Kind::SchemaMismatch: return "SchemaMismatch";
    case StepError::Kind::SortViolation: return "SortViolation";
    case StepError::Kind::ContextMismatch: return "ContextMismatch";
    case StepError::Kind::RuleUnavailable: return "RuleUnavailable";
  }
  return "?";
}

StepFailure::StepFailure(StepError e)
    : std::runtime_error(std::string(kind_name(e.kind)) + ": " + e.message), err_(std::move(e)) {}

namespace {

using Kind = StepError::Kind;

constexpr int kA = static_cast<int>(Side::Ant);
constexpr int kS = static_cast<int>(Side::Suc);

[[noreturn]] void fail(Kind k, std::string msg) { throw StepFailure({k, std::move(msg)}); }

const char* side_name(Side s) { return s == Side::Ant ? "ant" : "suc"; }

std::string at(int prem, int seq) {
  return "premise " + std::to_string(prem) + " sequent " + std::to_string(seq);
}

std::string at(int prem, int seq, Side side, int idx) {
  return at(prem, seq) + " " + side_name(side) + "[" + std::to_string(idx) + "]";
}

const Sequent& need_seq(const Hypersequent& h, int prem, int i) {
  if (i < 0 || static_cast<std::size_t>(i) >= h.size())
    fail(Kind::BadAddressing, at(prem, i) + " out of range");
  return h[static_cast<std::size_t>(i)];
}

const Formula& need_formula(const Hypersequent& h, int prem, int i, Side side, int k) {
  const Sequent& s = need_seq(h, prem, i);
  const auto& fs = s.side(side);
  if (k < 0 || static_cast<std::size_t>(k) >= fs.size())
    fail(Kind::BadAddressing, at(prem, i, side, k) + " out of range");
  return fs[static_cast<std::size_t>(k)];
}

void need_sort(const Sequent& s, Sort want, const std::string& where) {
  if (s.sort != want)
    fail(Kind::SortViolation, where + " must be a '" + arrow(want) + "' sequent");
}

const Formula& need_arg(const RuleApp& app) {
  if (!app.formula) fail(Kind::BadAddressing, std::string(rule_name(app.rule)) + " needs a formula");
  return *app.formula;
}

// Conclusion under construction, with per-position provenance.
struct Draft {
  Hypersequent h;
  std::vector<SequentTrace> tr;
  std::vector<int> principal;

  void copy(const Hypersequent& p, int prem) {
    h = p;
    tr.assign(p.size(), {});
    for (std::size_t i = 0; i < p.size(); ++i) {
      const int si = static_cast<int>(i);
      tr[i].from.push_back({prem, si, true});
      for (int side : {kA, kS}) {
        const auto& fs = p[i].side(static_cast<Side>(side));
        for (std::size_t k = 0; k < fs.size(); ++k)
          tr[i].formulas[side].push_back({{prem, si, static_cast<Side>(side), static_cast<int>(k)}});
      }
    }
  }

  void set(int s, Side side, int k, Formula f) {
    h[static_cast<std::size_t>(s)].side(side)[static_cast<std::size_t>(k)] = std::move(f);
    tr[static_cast<std::size_t>(s)].formulas[static_cast<int>(side)][static_cast<std::size_t>(k)].clear();
  }

  void erase(int s, Side side, int k) {
    auto& fs = h[static_cast<std::size_t>(s)].side(side);
    fs.erase(fs.begin() + k);
    auto& ts = tr[static_cast<std::size_t>(s)].formulas[static_cast<int>(side)];
    ts.erase(ts.begin() + k);
  }

  void push(int s, Side side, Formula f, std::vector<FormulaRef> from) {
    h[static_cast<std::size_t>(s)].side(side).push_back(std::move(f));
    tr[static_cast<std::size_t>(s)].formulas[static_cast<int>(side)].push_back(std::move(from));
  }

  int push_sequent(Sort sort, std::vector<SeqOrigin> from) {
    h.seqs.push_back(Sequent{sort, {}, {}});
    tr.push_back({});
    tr.back().from = std::move(from);
    return static_cast<int>(h.size()) - 1;
  }

  void erase_sequent(int s) {
    h.seqs.erase(h.seqs.begin() + s);
    tr.erase(tr.begin() + s);
    std::erase(principal, s);
    for (int& p : principal)
      if (p > s) --p;
  }

  void retype(int s, Sort sort) {
    auto i = static_cast<std::size_t>(s);
    if (h[i].sort == sort) return;
    h[i].sort = sort;
    for (auto& o : tr[i].from) o.same_turnstile = false;
  }

  StepResult done() && { return {std::move(h), std::move(principal), std::move(tr)}; }
};

struct SeqAlign {
  std::array<std::vector<int>, 2> map;
};

std::optional<SeqAlign> align_seq(const Sequent& a, const Sequent& b) {
  if (a.sort != b.sort) return std::nullopt;
  SeqAlign out;
  for (int side : {kA, kS}) {
    const auto& fa = a.side(static_cast<Side>(side));
    const auto& fb = b.side(static_cast<Side>(side));
    if (fa.size() != fb.size()) return std::nullopt;
    std::vector<bool> used(fb.size(), false);
    for (const auto& f : fa) {
      int found = -1;
      for (std::size_t j = 0; j < fb.size(); ++j) {
        if (!used[j] && fb[j] == f) {
          found = static_cast<int>(j);
          break;
        }
      }
      if (found < 0) return std::nullopt;
      used[static_cast<std::size_t>(found)] = true;
      out.map[side].push_back(found);
    }
  }
  return out;
}

// Copy of `s` without one formula, plus the index map back into `s`.
std::pair<Sequent, std::array<std::vector<int>, 2>> without_formula(const Sequent& s, Side side,
                                                                    int k) {
  Sequent out{s.sort, {}, {}};
  std::array<std::vector<int>, 2> back;
  for (int sd : {kA, kS}) {
    const auto& fs = s.side(static_cast<Side>(sd));
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (sd == static_cast<int>(side) && static_cast<int>(i) == k) continue;
      out.side(static_cast<Side>(sd)).push_back(fs[i]);
      back[sd].push_back(static_cast<int>(i));
    }
  }
  return {std::move(out), std::move(back)};
}

std::pair<Hypersequent, std::vector<int>> without_sequent(const Hypersequent& h, int s) {
  Hypersequent out;
  std::vector<int> back;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (static_cast<int>(i) == s) continue;
    out.seqs.push_back(h[i]);
    back.push_back(static_cast<int>(i));
  }
  return {std::move(out), std::move(back)};
}

// Links the side context of a binary rule's second premise into the draft.
// The draft's sequent `di` was produced from first-premise sequent `i`; the
// second premise's principal sequent is `j`. `p0_side/p0_k` and `p1_side/p1_k`
// are the excluded principal formulas. Formulas of the draft sequent `di` that
// came from premise 0 are linked to their second-premise counterparts.
void link_second(Draft& d, const Hypersequent& p0, int i, Side p0_side, int p0_k,
                 const Hypersequent& p1, int j, Side p1_side, int p1_k, bool link_principal_ctx) {
  auto [h0, back0] = without_sequent(p0, i);
  auto [h1, back1] = without_sequent(p1, j);
  auto al = align_hyper(h0, h1);
  if (!al) fail(Kind::ContextMismatch, "side hypersequents of the two premises differ");
  for (std::size_t a = 0; a < h0.size(); ++a) {
    const int s0 = back0[a];
    const int s1 = back1[static_cast<std::size_t>(al->seq[a])];
    // Sequents other than i keep their positions relative to premise 0 except
    // for erasures, which binary rules never perform.
    auto& t = d.tr[static_cast<std::size_t>(s0)];
    t.from.push_back({1, s1, true});
    for (int sd : {kA, kS}) {
      auto& refs = t.formulas[sd];
      for (std::size_t k = 0; k < refs.size(); ++k)
        refs[k].push_back({1, s1, static_cast<Side>(sd), al->formula[a][sd][k]});
    }
  }
  if (!link_principal_ctx) return;
  auto [c0, cb0] = without_formula(p0[static_cast<std::size_t>(i)], p0_side, p0_k);
  auto [c1, cb1] = without_formula(p1[static_cast<std::size_t>(j)], p1_side, p1_k);
  auto sa = align_seq(c0, c1);
  if (!sa) fail(Kind::ContextMismatch, "principal sequent contexts of the two premises differ");
  auto& t = d.tr[static_cast<std::size_t>(i)];
  t.from.push_back({1, j, true});
  for (int sd : {kA, kS}) {
    for (std::size_t k = 0; k < cb0[sd].size(); ++k) {
      const int k0 = cb0[sd][k];
      const int k1 = cb1[sd][static_cast<std::size_t>(sa->map[sd][k])];
      t.formulas[sd][static_cast<std::size_t>(k0)].push_back({1, j, static_cast<Side>(sd), k1});
    }
  }
}

StepResult initial(const RuleApp& app) {
  Draft d;
  Sequent s{app.sort, {}, {}};
  if (app.rule == RuleId::InitAx) {
    const Formula& a = need_arg(app);
    s.ant.push_back(a);
    s.suc.push_back(a);
  } else {
    s.ant.push_back(Formula::bot());
  }
  d.h.seqs.push_back(s);
  d.tr.push_back({});
  d.tr[0].formulas[kA].push_back({});
  if (app.rule == RuleId::InitAx) d.tr[0].formulas[kS].push_back({});
  d.principal = {0};
  return std::move(d).done();
}

StepResult and_r(const RuleApp& app, const Hypersequent& p0, const Hypersequent& p1) {
  const int i = app.seq;
  const int j = app.seq2 < 0 ? i : app.seq2;
  const int k2 = app.idx2 < 0 ? app.idx : app.idx2;
  const Formula& a = need_formula(p0, 0, i, Side::Suc, app.idx);
  const Formula& b = need_formula(p1, 1, j, Side::Suc, k2);
  if (p0[static_cast<std::size_t>(i)].sort != p1[static_cast<std::size_t>(j)].sort)
    fail(Kind::SortViolation, "principal sequents of and_r differ in sort");
  Draft d;
  d.copy(p0, 0);
  link_second(d, p0, i, Side::Suc, app.idx, p1, j, Side::Suc, k2, true);
  d.set(i, Side::Suc, app.idx, Formula::conj(a, b));
  d.principal = {i};
  return std::move(d).done();
}

StepResult cut(const RuleApp& app, const Hypersequent& p0, const Hypersequent& p1) {
  const int i = app.seq;
  const int j = app.seq2 < 0 ? i : app.seq2;
  const int k2 = app.idx2 < 0 ? 0 : app.idx2;
  const Formula& a = need_formula(p0, 0, i, Side::Suc, app.idx);
  const Formula& a2 = need_formula(p1, 1, j, Side::Ant, k2);
  if (a != a2) fail(Kind::SchemaMismatch, "cut formulas of the two premises differ");
  if (app.formula && *app.formula != a)
    fail(Kind::SchemaMismatch, "declared cut formula does not match the premises");
  const Sequent& s1 = p1[static_cast<std::size_t>(j)];
  if (p0[static_cast<std::size_t>(i)].sort != s1.sort)
    fail(Kind::SortViolation, "principal sequents of cut differ in sort");
  Draft d;
  d.copy(p0, 0);
  link_second(d, p0, i, Side::Suc, app.idx, p1, j, Side::Ant, k2, false);
  d.erase(i, Side::Suc, app.idx);
  for (std::size_t k = 0; k < s1.ant.size(); ++k)
    if (static_cast<int>(k) != k2)
      d.push(i, Side::Ant, s1.ant[k], {{1, j, Side::Ant, static_cast<int>(k)}});
  for (std::size_t k = 0; k < s1.suc.size(); ++k)
    d.push(i, Side::Suc, s1.suc[k], {{1, j, Side::Suc, static_cast<int>(k)}});
  d.tr[static_cast<std::size_t>(i)].from.push_back({1, j, true});
  d.principal = {i};
  return std::move(d).done();
}

StepResult split(const RuleApp& app, const Hypersequent& p) {
  const int i = app.seq;
  const Sequent& s = need_seq(p, 0, i);
  need_sort(s, Sort::Plain, at(0, i));
  Draft d;
  d.copy(p, 0);
  const int n = d.push_sequent(Sort::Plain, {{0, i, true}});
  for (int sd : {kA, kS}) {
    const auto& picks = sd == kA ? app.pick_ant : app.pick_suc;
    std::vector<int> sorted = picks;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(Kind::BadAddressing, "split picks a formula twice");
    for (int k : picks) {
      const Formula& f = need_formula(p, 0, i, static_cast<Side>(sd), k);
      d.push(n, static_cast<Side>(sd), f, {{0, i, static_cast<Side>(sd), k}});
    }
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) d.erase(i, static_cast<Side>(sd), *it);
  }
  d.principal = {i, n};
  return std::move(d).done();
}

// Context sort pattern shared by b2, 52 and b25: every sequent but `i` is modal.
void need_modal_context(const Hypersequent& p, int i) {
  for (std::size_t k = 0; k < p.size(); ++k)
    if (static_cast<int>(k) != i && p[k].sort != Sort::Modal)
      fail(Kind::SortViolation, at(0, static_cast<int>(k)) + " must be a '=>' sequent");
}

StepResult unary(const RuleApp& app, const Hypersequent& p) {
  const int i = app.seq;
  const int k = app.idx;
  Draft d;
  switch (app.rule) {
    case RuleId::AndL1:
    case RuleId::AndL2: {
      const Formula& a = need_formula(p, 0, i, Side::Ant, k);
      const Formula& other = need_arg(app);
      d.copy(p, 0);
      d.set(i, Side::Ant, k,
            app.rule == RuleId::AndL1 ? Formula::conj(a, other) : Formula::conj(other, a));
      d.principal = {i};
      break;
    }
    case RuleId::NegL:
    case RuleId::NegR: {
      const Side from = app.rule == RuleId::NegL ? Side::Suc : Side::Ant;
      const Side to = app.rule == RuleId::NegL ? Side::Ant : Side::Suc;
      const Formula a = need_formula(p, 0, i, from, k);
      d.copy(p, 0);
      d.erase(i, from, k);
      d.push(i, to, Formula::neg(a), {});
      d.principal = {i};
      break;
    }
    case RuleId::IcL:
    case RuleId::IcR: {
      const Side side = app.rule == RuleId::IcL ? Side::Ant : Side::Suc;
      const Formula& a = need_formula(p, 0, i, side, k);
      const Formula& b = need_formula(p, 0, i, side, app.idx2);
      if (k == app.idx2) fail(Kind::BadAddressing, "contraction needs two distinct positions");
      if (a != b) fail(Kind::SchemaMismatch, "contracted formulas differ");
      d.copy(p, 0);
      d.tr[static_cast<std::size_t>(i)].formulas[static_cast<int>(side)][static_cast<std::size_t>(k)]
          .push_back({0, i, side, app.idx2});
      d.erase(i, side, app.idx2);
      d.principal = {i};
      break;
    }
    case RuleId::IwL:
    case RuleId::IwR: {
      need_seq(p, 0, i);
      const Formula& a = need_arg(app);
      d.copy(p, 0);
      d.push(i, app.rule == RuleId::IwL ? Side::Ant : Side::Suc, a, {});
      d.principal = {i};
      break;
    }
    case RuleId::Ew: {
      if (!app.sequent) fail(Kind::BadAddressing, "ew needs a sequent");
      d.copy(p, 0);
      const int n = d.push_sequent(app.sequent->sort, {});
      for (const auto& f : app.sequent->ant) d.push(n, Side::Ant, f, {});
      for (const auto& f : app.sequent->suc) d.push(n, Side::Suc, f, {});
      d.principal = {n};
      break;
    }
    case RuleId::Merge: {
      const int j = app.seq2;
      const Sequent& a = need_seq(p, 0, i);
      const Sequent& b = need_seq(p, 0, j);
      if (i == j) fail(Kind::BadAddressing, "merge needs two distinct sequents");
      if (a.sort != b.sort) fail(Kind::SortViolation, "merged sequents differ in sort");
      d.copy(p, 0);
      for (int sd : {kA, kS}) {
        const auto& fs = b.side(static_cast<Side>(sd));
        for (std::size_t x = 0; x < fs.size(); ++x)
          d.push(i, static_cast<Side>(sd), fs[x], {{0, j, static_cast<Side>(sd), static_cast<int>(x)}});
      }
      d.tr[static_cast<std::size_t>(i)].from.push_back({0, j, true});
      d.principal = {i};
      d.erase_sequent(j);
      break;
    }
    case RuleId::Nec1:
    case RuleId::FourR: {
      const Sequent& s = need_seq(p, 0, i);
      need_sort(s, Sort::Modal, at(0, i));
      if (!s.ant.empty() || s.suc.size() != 1)
        fail(Kind::SchemaMismatch, at(0, i) + " must have the shape '=> A'");
      d.copy(p, 0);
      d.set(i, Side::Suc, 0, Formula::box(s.suc[0]));
      if (app.rule == RuleId::Nec1) d.retype(i, Sort::Plain);
      d.principal = {i};
      break;
    }
    case RuleId::Nec2: {
      if (p.size() != 1) fail(Kind::ContextMismatch, "nec2 admits no side hypersequent");
      need_sort(p[0], Sort::Plain, at(0, 0));
      d.copy(p, 0);
      d.retype(0, Sort::Modal);
      d.principal = {0};
      break;
    }
    case RuleId::K:
    case RuleId::FourL: {
      const Sequent& s = need_seq(p, 0, i);
      need_sort(s, Sort::Modal, at(0, i));
      const Formula a = need_formula(p, 0, i, Side::Ant, k);
      if (app.rule == RuleId::FourL && !a.is_boxed())
        fail(Kind::SchemaMismatch, at(0, i, Side::Ant, k) + " must be a boxed formula");
      d.copy(p, 0);
      d.erase(i, Side::Ant, k);
      const int n = d.push_sequent(Sort::Plain, {});
      if (app.rule == RuleId::K) d.push(n, Side::Ant, Formula::box(a), {});
      else d.push(n, Side::Ant, a, {{0, i, Side::Ant, k}});
      d.principal = {i, n};
      break;
    }
    case RuleId::B1:
    case RuleId::Five1: {
      const Sequent& s = need_seq(p, 0, i);
      need_sort(s, Sort::Plain, at(0, i));
      const Formula a = need_formula(p, 0, i, Side::Ant, k);
      if (app.rule == RuleId::Five1 && !a.is_boxed())
        fail(Kind::SchemaMismatch, at(0, i, Side::Ant, k) + " must be a boxed formula");
      d.copy(p, 0);
      d.erase(i, Side::Ant, k);
      const int n = d.push_sequent(Sort::Modal, {});
      if (app.rule == RuleId::B1) d.push(n, Side::Ant, Formula::box(a), {});
      else d.push(n, Side::Ant, a, {{0, i, Side::Ant, k}});
      d.principal = {i, n};
      break;
    }
    case RuleId::D: {
      const Sequent& s = need_seq(p, 0, i);
      need_sort(s, Sort::Modal, at(0, i));
      if (!s.empty()) fail(Kind::SchemaMismatch, at(0, i) + " must be the empty '=>' sequent");
      d.copy(p, 0);
      d.retype(i, Sort::Plain);
      d.principal = {i};
      break;
    }
    case RuleId::T1: {
      const Formula a = need_formula(p, 0, i, Side::Ant, k);
      d.copy(p, 0);
      d.set(i, Side::Ant, k, Formula::box(a));
      d.principal = {i};
      break;
    }
    case RuleId::T2: {
      need_sort(need_seq(p, 0, i), Sort::Modal, at(0, i));
      d.copy(p, 0);
      d.retype(i, Sort::Plain);
      d.principal = {i};
      break;
    }
    case RuleId::B2:
    case RuleId::Five2:
    case RuleId::B25: {
      need_sort(need_seq(p, 0, i), Sort::Plain, at(0, i));
      need_modal_context(p, i);
      d.copy(p, 0);
      d.retype(i, Sort::Modal);
      d.principal = {i};
      if (app.rule == RuleId::B2) {
        for (std::size_t x = 0; x < p.size(); ++x) {
          if (static_cast<int>(x) == i) continue;
          d.retype(static_cast<int>(x), Sort::Plain);
          d.principal.push_back(static_cast<int>(x));
        }
      } else if (app.rule == RuleId::B25) {
        std::vector<int> seen;
        for (int x : app.flip) {
          need_seq(p, 0, x);
          if (x == i) fail(Kind::BadAddressing, "b25 cannot flip its principal sequent");
          if (std::find(seen.begin(), seen.end(), x) != seen.end())
            fail(Kind::BadAddressing, "b25 flips a sequent twice");
          seen.push_back(x);
          d.retype(x, Sort::Plain);
          d.principal.push_back(x);
        }
      }
      break;
    }
    default:
      fail(Kind::WrongArity, "unexpected rule");
  }
  return std::move(d).done();
}

}  // namespace

StepResult apply_rule(const RuleApp& app, const std::vector<Hypersequent>& premises) {
  const int arity = rule_arity(app.rule);
  if (static_cast<int>(premises.size()) != arity)
    fail(Kind::WrongArity, std::string(rule_name(app.rule)) + " takes " + std::to_string(arity) +
                               " premise(s), got " + std::to_string(premises.size()));
  switch (app.rule) {
    case RuleId::InitAx:
    case RuleId::InitBot: return initial(app);
    case RuleId::AndR: return and_r(app, premises[0], premises[1]);
    case RuleId::Cut: return cut(app, premises[0], premises[1]);
    case RuleId::Split: return split(app, premises[0]);
    default: return unary(app, premises[0]);
  }
}

std::optional<StepError> check_step(const RuleApp& app, const std::vector<Hypersequent>& premises,
                                    const Hypersequent& conclusion) {
  StepResult r;
  try {
    r = apply_rule(app, premises);
  } catch (const StepFailure& e) {
    return e.error();
  }
  if (r.conclusion.equiv(conclusion)) return std::nullopt;
  // Remove the rule's own sequents from the declared conclusion; if they are all
  // present the discrepancy lies in the side context.
  std::vector<bool> used(conclusion.size(), false);
  bool principal_found = true;
  for (int p : r.principal) {
    const Sequent& want = r.conclusion[static_cast<std::size_t>(p)];
    bool hit = false;
    for (std::size_t k = 0; k < conclusion.size(); ++k) {
      if (!used[k] && conclusion[k].equiv(want)) {
        used[k] = true;
        hit = true;
        break;
      }
    }
    if (!hit) {
      principal_found = false;
      Sequent flipped = want;
      flipped.sort = want.sort == Sort::Modal ? Sort::Plain : Sort::Modal;
      for (std::size_t k = 0; k < conclusion.size(); ++k)
        if (!used[k] && conclusion[k].equiv(flipped))
          return StepError{Kind::SortViolation, "principal sequent '" + to_string(conclusion[k]) +
                                                    "' has the wrong sort; expected '" + to_string(want) + "'"};
      break;
    }
  }
  const std::string expected = "expected '" + to_string(r.conclusion) + "'";
  if (principal_found) return StepError{Kind::ContextMismatch, "side context differs; " + expected};
  return StepError{Kind::SchemaMismatch, "principal sequent differs; " + expected};
}

std::optional<Alignment> align_hyper(const Hypersequent& a, const Hypersequent& b) {
  if (a.size() != b.size()) return std::nullopt;
  Alignment out;
  std::vector<bool> used(b.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool hit = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      auto sa = align_seq(a[i], b[j]);
      if (!sa) continue;
      used[j] = true;
      out.seq.push_back(static_cast<int>(j));
      out.formula.push_back(sa->map);
      hit = true;
      break;
    }
    if (!hit) return std::nullopt;
  }
  return out;
}

}  // namespace hyperseq
