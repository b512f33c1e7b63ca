#include "hyperseq/proof.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace hyperseq {

using json = nlohmann::json;

Proof mk(const RuleApp& app, std::vector<Proof> premises) {
  std::vector<Hypersequent> hs;
  hs.reserve(premises.size());
  for (const auto& p : premises) hs.push_back(p->conclusion);
  StepResult r = apply_rule(app, hs);
  auto n = std::make_shared<ProofNode>();
  n->conclusion = std::move(r.conclusion);
  n->app = app;
  n->app.side = principal_side(app.rule);
  n->premises = std::move(premises);
  return n;
}

Proof mk_declared(const RuleApp& app, std::vector<Proof> premises, Hypersequent conclusion) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = std::move(conclusion);
  n->app = app;
  n->premises = std::move(premises);
  return n;
}

Proof open_leaf(Hypersequent h) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = std::move(h);
  n->open = true;
  return n;
}

Side principal_side(RuleId r) {
  switch (r) {
    case RuleId::AndR:
    case RuleId::NegL:
    case RuleId::IcR:
    case RuleId::IwR:
    case RuleId::Cut:
    case RuleId::Nec1:
    case RuleId::FourR: return Side::Suc;
    default: return Side::Ant;
  }
}

namespace {

void check_rec(const Proof& p, SystemId sys, const CheckOptions& opts, const std::string& path,
               CheckReport& rep) {
  ++rep.node_count;
  if (p->open) {
    if (!opts.allow_open)
      rep.failures.push_back({path, {StepError::Kind::BadAddressing, "open leaf"}});
    return;
  }
  ++rep.rules_used[p->app.rule];
  std::vector<Hypersequent> hs;
  for (const auto& q : p->premises) hs.push_back(q->conclusion);
  if (!system_has(sys, p->app.rule)) {
    rep.failures.push_back({path,
                            {StepError::Kind::RuleUnavailable,
                             std::string("rule ") + rule_name(p->app.rule) + " is not in " +
                                 system_name(sys)}});
  } else if (auto err = check_step(p->app, hs, p->conclusion)) {
    rep.failures.push_back({path, *err});
  }
  for (std::size_t i = 0; i < p->premises.size(); ++i)
    check_rec(p->premises[i], sys, opts, path + "/" + std::to_string(i), rep);
}

}  // namespace

CheckReport check_proof(const Proof& p, SystemId sys, CheckOptions opts) {
  CheckReport rep;
  rep.system = sys;
  check_rec(p, sys, opts, "root", rep);
  rep.ok = rep.failures.empty();
  return rep;
}

void for_each_node(const Proof& p, const std::function<void(const Proof&)>& fn) {
  std::vector<const Proof*> stack{&p};
  while (!stack.empty()) {
    const Proof* cur = stack.back();
    stack.pop_back();
    fn(*cur);
    const auto& ps = (*cur)->premises;
    for (auto it = ps.rbegin(); it != ps.rend(); ++it) stack.push_back(&*it);
  }
}

std::size_t node_count(const Proof& p) {
  std::size_t n = 0;
  for_each_node(p, [&](const Proof&) { ++n; });
  return n;
}

std::size_t count_rule(const Proof& p, RuleId r) {
  std::size_t n = 0;
  for_each_node(p, [&](const Proof& q) {
    if (!q->open && q->app.rule == r) ++n;
  });
  return n;
}

std::vector<Proof> open_leaves(const Proof& p) {
  std::vector<Proof> out;
  for_each_node(p, [&](const Proof& q) {
    if (q->open) out.push_back(q);
  });
  return out;
}

namespace {

int map_formula(const Alignment& m, int seq, Side side, int idx) {
  const auto& v = m.formula.at(static_cast<std::size_t>(seq))[static_cast<int>(side)];
  return v.at(static_cast<std::size_t>(idx));
}

int map_seq(const Alignment& m, int seq) { return m.seq.at(static_cast<std::size_t>(seq)); }

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

Alignment identity(const Hypersequent& h) {
  Alignment a;
  for (std::size_t i = 0; i < h.size(); ++i) {
    a.seq.push_back(static_cast<int>(i));
    std::array<std::vector<int>, 2> f;
    for (int sd = 0; sd < 2; ++sd)
      for (std::size_t k = 0; k < h[i].side(static_cast<Side>(sd)).size(); ++k)
        f[sd].push_back(static_cast<int>(k));
    a.formula.push_back(std::move(f));
  }
  return a;
}

using LeafFn = std::function<Proof(const Proof&)>;

std::pair<Proof, Alignment> rebuild(const Proof& n, const LeafFn& leaf) {
  if (n->open) {
    Proof fill = leaf(n);
    if (!fill) return {n, identity(n->conclusion)};
    auto al = align_hyper(n->conclusion, fill->conclusion);
    if (!al)
      throw StepFailure({StepError::Kind::ContextMismatch,
                         "plugged proof of '" + to_string(fill->conclusion) +
                             "' does not match open leaf '" + to_string(n->conclusion) + "'"});
    return {fill, *al};
  }
  std::vector<Proof> prems;
  std::vector<Alignment> maps;
  for (const auto& q : n->premises) {
    auto [np, m] = rebuild(q, leaf);
    prems.push_back(std::move(np));
    maps.push_back(std::move(m));
  }
  RuleApp app;
  try {
    app = remap_app(n->app, maps);
  } catch (const std::out_of_range&) {
    throw StepFailure({StepError::Kind::BadAddressing,
                       std::string(rule_name(n->app.rule)) + " addresses a missing position"});
  }
  Proof out = mk(app, std::move(prems));
  auto al = align_hyper(n->conclusion, out->conclusion);
  if (!al) {
    std::vector<Hypersequent> hs;
    for (const auto& q : n->premises) hs.push_back(q->conclusion);
    auto err = check_step(n->app, hs, n->conclusion);
    throw StepFailure(err ? *err
                          : StepError{StepError::Kind::SchemaMismatch,
                                      "declared conclusion '" + to_string(n->conclusion) +
                                          "' does not match"});
  }
  return {out, *al};
}

}  // namespace

RuleApp remap_app(const RuleApp& app, const std::vector<Alignment>& maps) {
  RuleApp out = app;
  const RuleId r = app.rule;
  if (maps.empty()) return out;
  const Alignment& m0 = maps[0];
  const Side side = principal_side(r);
  if (r == RuleId::AndR || r == RuleId::Cut) {
    const int seq2 = app.seq2 < 0 ? app.seq : app.seq2;
    const int idx2 = app.idx2 < 0 ? (r == RuleId::Cut ? 0 : app.idx) : app.idx2;
    const Side side2 = r == RuleId::Cut ? Side::Ant : Side::Suc;
    out.seq2 = map_seq(maps[1], seq2);
    out.idx2 = map_formula(maps[1], seq2, side2, idx2);
  } else if (r == RuleId::IcL || r == RuleId::IcR) {
    out.idx2 = map_formula(m0, app.seq, side, app.idx2);
  } else if (r == RuleId::Merge) {
    out.seq2 = map_seq(m0, app.seq2);
  }
  if (has_principal_formula(r)) out.idx = map_formula(m0, app.seq, side, app.idx);
  if (r == RuleId::Split) {
    for (int& k : out.pick_ant) k = map_formula(m0, app.seq, Side::Ant, k);
    for (int& k : out.pick_suc) k = map_formula(m0, app.seq, Side::Suc, k);
  }
  for (int& x : out.flip) x = map_seq(m0, x);
  if (r != RuleId::Ew) out.seq = map_seq(m0, app.seq);
  return out;
}

Proof canonicalize(const Proof& p) {
  return rebuild(p, [](const Proof&) { return Proof{}; }).first;
}

Proof plug(const Proof& fragment, const std::vector<Proof>& fills) {
  std::size_t next = 0;
  Proof out = rebuild(fragment, [&](const Proof&) -> Proof {
    if (next >= fills.size()) throw std::invalid_argument("plug: too few proofs for open leaves");
    return fills[next++];
  }).first;
  if (next != fills.size()) throw std::invalid_argument("plug: too many proofs for open leaves");
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

const char* side_tag(Side s) { return s == Side::Ant ? "l" : "r"; }

json app_args(const ProofNode& n) {
  const RuleApp& a = n.app;
  json args = json::object();
  auto addr = [&] {
    args["seq"] = a.seq;
    args["side"] = side_tag(principal_side(a.rule));
    args["idx"] = a.idx;
  };
  switch (a.rule) {
    case RuleId::InitAx:
      args["formula"] = to_string(*a.formula);
      args["sort"] = arrow(a.sort);
      break;
    case RuleId::InitBot:
      args["sort"] = arrow(a.sort);
      break;
    case RuleId::AndL1:
    case RuleId::AndL2:
      addr();
      args["formula"] = to_string(*a.formula);
      break;
    case RuleId::AndR:
    case RuleId::Cut:
      addr();
      args["seq2"] = a.seq2 < 0 ? a.seq : a.seq2;
      args["idx2"] = a.idx2 < 0 ? (a.rule == RuleId::Cut ? 0 : a.idx) : a.idx2;
      if (a.rule == RuleId::Cut) {
        const auto& s = n.premises[0]->conclusion[static_cast<std::size_t>(a.seq)];
        args["formula"] = to_string(s.suc[static_cast<std::size_t>(a.idx)]);
      }
      break;
    case RuleId::IcL:
    case RuleId::IcR:
      addr();
      args["idx2"] = a.idx2;
      break;
    case RuleId::IwL:
    case RuleId::IwR:
      args["seq"] = a.seq;
      args["side"] = side_tag(principal_side(a.rule));
      args["formula"] = to_string(*a.formula);
      break;
    case RuleId::Ew:
      args["sequent"] = to_string(*a.sequent);
      break;
    case RuleId::Merge:
      args["seq"] = a.seq;
      args["seq2"] = a.seq2;
      break;
    case RuleId::Split:
      args["seq"] = a.seq;
      args["pick_l"] = a.pick_ant;
      args["pick_r"] = a.pick_suc;
      break;
    case RuleId::B25:
      args["seq"] = a.seq;
      args["flip"] = a.flip;
      break;
    case RuleId::NegL:
    case RuleId::NegR:
    case RuleId::K:
    case RuleId::T1:
    case RuleId::FourL:
    case RuleId::B1:
    case RuleId::Five1:
      addr();
      break;
    default:
      args["seq"] = a.seq;
      break;
  }
  return args;
}

json node_to_json(const Proof& p) {
  json j;
  j["goal"] = to_string(p->conclusion);
  if (p->open) {
    j["rule"] = "open";
    j["premises"] = json::array();
    return j;
  }
  j["rule"] = rule_name(p->app.rule);
  j["args"] = app_args(*p);
  json prems = json::array();
  for (const auto& q : p->premises) prems.push_back(node_to_json(q));
  j["premises"] = std::move(prems);
  return j;
}

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw ProofFormatError(path + ": " + msg);
}

int get_int(const json& args, const char* key, int dflt, const std::string& path) {
  if (!args.contains(key)) return dflt;
  if (!args[key].is_number_integer()) bad(path, std::string("'") + key + "' must be an integer");
  return args[key].get<int>();
}

std::vector<int> get_ints(const json& args, const char* key, const std::string& path) {
  std::vector<int> out;
  if (!args.contains(key)) return out;
  if (!args[key].is_array()) bad(path, std::string("'") + key + "' must be an array");
  for (const auto& v : args[key]) {
    if (!v.is_number_integer()) bad(path, std::string("'") + key + "' must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

Sort get_sort(const json& args, const Hypersequent& goal) {
  if (args.contains("sort") && args["sort"].is_string()) {
    const std::string s = args["sort"].get<std::string>();
    if (s == "=>" || s == "\xE2\x87\x92") return Sort::Modal;
    return Sort::Plain;
  }
  return goal.size() == 1 ? goal[0].sort : Sort::Plain;
}

Proof node_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "node must be an object");
  if (!j.contains("goal") || !j["goal"].is_string()) bad(path, "missing 'goal'");
  if (!j.contains("rule") || !j["rule"].is_string()) bad(path, "missing 'rule'");
  Hypersequent goal = parse_hypersequent(j["goal"].get<std::string>());
  const std::string rule = j["rule"].get<std::string>();
  if (rule == "open") return open_leaf(std::move(goal));
  auto rid = parse_rule(rule);
  if (!rid) bad(path, "unknown rule '" + rule + "'");
  const json args = j.contains("args") ? j["args"] : json::object();
  if (!args.is_object()) bad(path, "'args' must be an object");
  RuleApp app;
  app.rule = *rid;
  app.seq = get_int(args, "seq", 0, path);
  app.idx = get_int(args, "idx", 0, path);
  app.seq2 = get_int(args, "seq2", -1, path);
  app.idx2 = get_int(args, "idx2", -1, path);
  app.side = principal_side(*rid);
  app.pick_ant = get_ints(args, "pick_l", path);
  app.pick_suc = get_ints(args, "pick_r", path);
  app.flip = get_ints(args, "flip", path);
  if (args.contains("formula")) {
    if (!args["formula"].is_string()) bad(path, "'formula' must be a string");
    app.formula = parse_formula(args["formula"].get<std::string>());
  }
  if (args.contains("sequent")) {
    if (!args["sequent"].is_string()) bad(path, "'sequent' must be a string");
    app.sequent = parse_sequent(args["sequent"].get<std::string>());
  }
  app.sort = get_sort(args, goal);
  if (*rid == RuleId::InitAx && !app.formula && goal.size() == 1 && goal[0].ant.size() == 1)
    app.formula = goal[0].ant[0];
  if (*rid == RuleId::Cut) app.formula.reset();
  std::vector<Proof> prems;
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) bad(path, "'premises' must be an array");
    for (std::size_t i = 0; i < j["premises"].size(); ++i)
      prems.push_back(node_from_json(j["premises"][i], path + "/" + std::to_string(i)));
  }
  return mk_declared(app, std::move(prems), std::move(goal));
}

}  // namespace

std::string proof_to_json(const Proof& p, const std::string& system) {
  json j = node_to_json(p);
  if (!system.empty()) j["system"] = system;
  return j.dump(1) + "\n";
}

Proof proof_from_json(std::string_view text, std::string* system) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProofFormatError(std::string("invalid JSON: ") + e.what());
  }
  if (system && j.is_object() && j.contains("system") && j["system"].is_string())
    *system = j["system"].get<std::string>();
  return node_from_json(j, "root");
}

Proof load_proof(const std::string& path, std::string* system) {
  std::ifstream in(path);
  if (!in) throw ProofFormatError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return proof_from_json(ss.str(), system);
}

void save_proof(const std::string& path, const Proof& p, const std::string& system) {
  std::ofstream out(path);
  if (!out) throw ProofFormatError("cannot write " + path);
  out << proof_to_json(p, system);
}

// ---------------------------------------------------------------------------

int find_formula(const Sequent& s, Side side, const Formula& f, int skip) {
  const auto& fs = s.side(side);
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (static_cast<int>(i) != skip && fs[i] == f) return static_cast<int>(i);
  throw std::out_of_range("formula " + to_string(f) + " not found in " + to_string(s));
}

int find_sequent(const Hypersequent& h, const Sequent& s) {
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i].equiv(s)) return static_cast<int>(i);
  throw std::out_of_range("sequent " + to_string(s) + " not found in " + to_string(h));
}

const Sequent& seq_of(const Proof& p, int i) { return p->conclusion.seqs.at(static_cast<std::size_t>(i)); }

namespace pb {

namespace {

RuleApp app_of(RuleId r, int seq = 0, int idx = 0) {
  RuleApp a;
  a.rule = r;
  a.seq = seq;
  a.idx = idx;
  a.side = principal_side(r);
  return a;
}

}  // namespace

Proof ax(const Formula& a, Sort s) {
  RuleApp app = app_of(RuleId::InitAx);
  app.formula = a;
  app.sort = s;
  return mk(app, {});
}

Proof bot(Sort s) {
  RuleApp app = app_of(RuleId::InitBot);
  app.sort = s;
  return mk(app, {});
}

Proof and_l1(Proof p, int seq, int idx, const Formula& other) {
  RuleApp app = app_of(RuleId::AndL1, seq, idx);
  app.formula = other;
  return mk(app, {std::move(p)});
}

Proof and_l2(Proof p, int seq, int idx, const Formula& other) {
  RuleApp app = app_of(RuleId::AndL2, seq, idx);
  app.formula = other;
  return mk(app, {std::move(p)});
}

Proof and_r(Proof p, Proof q, int seq, int idx, int seq2, int idx2) {
  RuleApp app = app_of(RuleId::AndR, seq, idx);
  app.seq2 = seq2;
  app.idx2 = idx2;
  return mk(app, {std::move(p), std::move(q)});
}

Proof neg_l(Proof p, int seq, int idx) { return mk(app_of(RuleId::NegL, seq, idx), {std::move(p)}); }
Proof neg_r(Proof p, int seq, int idx) { return mk(app_of(RuleId::NegR, seq, idx), {std::move(p)}); }

Proof ic_l(Proof p, int seq, int keep, int drop) {
  RuleApp app = app_of(RuleId::IcL, seq, keep);
  app.idx2 = drop;
  return mk(app, {std::move(p)});
}

Proof ic_r(Proof p, int seq, int keep, int drop) {
  RuleApp app = app_of(RuleId::IcR, seq, keep);
  app.idx2 = drop;
  return mk(app, {std::move(p)});
}

Proof iw_l(Proof p, int seq, const Formula& a) {
  RuleApp app = app_of(RuleId::IwL, seq);
  app.formula = a;
  return mk(app, {std::move(p)});
}

Proof iw_r(Proof p, int seq, const Formula& a) {
  RuleApp app = app_of(RuleId::IwR, seq);
  app.formula = a;
  return mk(app, {std::move(p)});
}

Proof cut(Proof p, Proof q, int seq, int idx, int seq2, int idx2) {
  RuleApp app = app_of(RuleId::Cut, seq, idx);
  app.seq2 = seq2;
  app.idx2 = idx2;
  return mk(app, {std::move(p), std::move(q)});
}

Proof ew(Proof p, const Sequent& s) {
  RuleApp app = app_of(RuleId::Ew);
  app.sequent = s;
  return mk(app, {std::move(p)});
}

Proof merge(Proof p, int seq, int seq2) {
  RuleApp app = app_of(RuleId::Merge, seq);
  app.seq2 = seq2;
  return mk(app, {std::move(p)});
}

Proof split(Proof p, int seq, std::vector<int> pick_ant, std::vector<int> pick_suc) {
  RuleApp app = app_of(RuleId::Split, seq);
  app.pick_ant = std::move(pick_ant);
  app.pick_suc = std::move(pick_suc);
  return mk(app, {std::move(p)});
}

Proof nec1(Proof p, int seq) { return mk(app_of(RuleId::Nec1, seq), {std::move(p)}); }
Proof nec2(Proof p) { return mk(app_of(RuleId::Nec2), {std::move(p)}); }
Proof k(Proof p, int seq, int idx) { return mk(app_of(RuleId::K, seq, idx), {std::move(p)}); }
Proof d(Proof p, int seq) { return mk(app_of(RuleId::D, seq), {std::move(p)}); }
Proof t1(Proof p, int seq, int idx) { return mk(app_of(RuleId::T1, seq, idx), {std::move(p)}); }
Proof t2(Proof p, int seq) { return mk(app_of(RuleId::T2, seq), {std::move(p)}); }
Proof four_r(Proof p, int seq) { return mk(app_of(RuleId::FourR, seq), {std::move(p)}); }
Proof four_l(Proof p, int seq, int idx) { return mk(app_of(RuleId::FourL, seq, idx), {std::move(p)}); }
Proof b1(Proof p, int seq, int idx) { return mk(app_of(RuleId::B1, seq, idx), {std::move(p)}); }
Proof b2(Proof p, int seq) { return mk(app_of(RuleId::B2, seq), {std::move(p)}); }
Proof five1(Proof p, int seq, int idx) { return mk(app_of(RuleId::Five1, seq, idx), {std::move(p)}); }
Proof five2(Proof p, int seq) { return mk(app_of(RuleId::Five2, seq), {std::move(p)}); }

Proof b25(Proof p, int seq, std::vector<int> flip) {
  RuleApp app = app_of(RuleId::B25, seq);
  app.flip = std::move(flip);
  return mk(app, {std::move(p)});
}

Proof apply(RuleId r, std::vector<Proof> prems, int seq, int idx) {
  return mk(app_of(r, seq, idx), std::move(prems));
}

}  // namespace pb

}  // namespace hyperseq
