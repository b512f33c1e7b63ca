#include "hyperseq/hilbert.hpp"

#include "hyperseq/search.hpp"
#include "json.hpp"

namespace hyperseq {

namespace {

using json = nlohmann::json;
using Kind = BridgeError::Kind;

[[noreturn]] void malformed(const std::string& msg) { throw BridgeError(Kind::MalformedProof, msg); }

int size_of(const Formula& f) {
  switch (f.op()) {
    case Op::Bot:
    case Op::Atom: return 1;
    case Op::Neg:
    case Op::Box: return 1 + size_of(f.sub());
    case Op::And: return 1 + size_of(f.left()) + size_of(f.right());
  }
  return 1;
}

int earlier(int k, std::size_t here, const char* what) {
  if (k < 0 || static_cast<std::size_t>(k) >= here)
    malformed("step " + std::to_string(here) + ": " + what + " refers to step " + std::to_string(k) +
              ", which is not an earlier step");
  return k;
}

// B when f is A > B, that is ~(A & ~B).
std::optional<Formula> consequent(const Formula& f, const Formula& a) {
  if (f.op() != Op::Neg || f.sub().op() != Op::And) return std::nullopt;
  const Formula& c = f.sub();
  if (c.left() != a || c.right().op() != Op::Neg) return std::nullopt;
  return c.right().sub();
}

Proof discharge(const Formula& f, SystemId sys) {
  SearchConfig cfg;
  cfg.allow_rules = propositional_rules();
  cfg.max_depth = 2 * size_of(f);
  const SearchResult r = prove(Hypersequent({Sequent{Sort::Plain, {}, {f}}}), sys, cfg);
  if (r.status != SearchStatus::Found)
    throw BridgeError(Kind::TautologyDischargeFailed,
                      "no propositional proof of " + to_string(f) + " (" + status_name(r.status) + ")");
  return r.proof;
}

Proof axiom_proof(const AxiomInstance& ax, SystemId sys) {
  const std::optional<Formula> b = ax.axiom == AxiomName::K ? std::optional<Formula>(ax.b) : std::nullopt;
  Proof p = axiom_template(ax.axiom, ax.a, b);
  if (!check_proof(p, sys).ok)
    throw BridgeError(Kind::UnavailableAxiom,
                      std::string("axiom ") + axiom_name(ax.axiom) + " is not available in " + system_name(sys));
  const Sequent& s = seq_of(p, 0);
  if (s.ant.size() == 1 && s.suc.size() == 1) p = macro::imp_r(p, 0, 0, 0);
  return p;
}

}  // namespace

const char* bridge_error_name(BridgeError::Kind k) {
  switch (k) {
    case Kind::UnavailableAxiom: return "UnavailableAxiom";
    case Kind::TautologyDischargeFailed: return "TautologyDischargeFailed";
    case Kind::MalformedProof: return "MalformedProof";
  }
  return "?";
}

std::vector<Formula> hilbert_formulas(const HilbertProof& hp) {
  std::vector<Formula> out;
  for (std::size_t n = 0; n < hp.steps.size(); ++n) {
    const HilbertStep& st = hp.steps[n];
    if (const auto* ax = std::get_if<AxiomInstance>(&st)) {
      out.push_back(ax->tautology ? ax->a : axiom_formula(ax->axiom, ax->a, ax->b));
    } else if (const auto* mp = std::get_if<ModusPonens>(&st)) {
      const Formula& a = out[static_cast<std::size_t>(earlier(mp->i, n, "modus ponens"))];
      const Formula& f = out[static_cast<std::size_t>(earlier(mp->j, n, "modus ponens"))];
      auto b = consequent(f, a);
      if (!b) malformed("step " + std::to_string(n) + ": " + to_string(f) + " is not an implication from " + to_string(a));
      out.push_back(*b);
    } else {
      const auto& nec = std::get<Necessitation>(st);
      out.push_back(Formula::box(out[static_cast<std::size_t>(earlier(nec.i, n, "necessitation"))]));
    }
  }
  return out;
}

Proof hilbert_to_hyperseq(const HilbertProof& hp, SystemId sys) {
  if (hp.steps.empty()) malformed("empty Hilbert proof");
  const std::vector<Formula> fs = hilbert_formulas(hp);
  std::vector<Proof> ps;
  for (std::size_t n = 0; n < hp.steps.size(); ++n) {
    const HilbertStep& st = hp.steps[n];
    if (const auto* ax = std::get_if<AxiomInstance>(&st)) {
      ps.push_back(ax->tautology ? discharge(ax->a, sys) : axiom_proof(*ax, sys));
    } else if (const auto* mp = std::get_if<ModusPonens>(&st)) {
      const Formula& a = fs[static_cast<std::size_t>(mp->i)];
      const Formula& b = fs[n];
      const Formula ab = Formula::imp(a, b);
      Proof lemma = macro::imp_l(pb::ax(a), 0, 0, pb::ax(b), 0, 0);  // A > B, A -> B
      Proof q = macro::mcut(ps[static_cast<std::size_t>(mp->j)], 0, 0, lemma, 0,
                            find_formula(seq_of(lemma, 0), Side::Ant, ab));
      q = macro::mcut(ps[static_cast<std::size_t>(mp->i)], 0, 0, q, 0, find_formula(seq_of(q, 0), Side::Ant, a));
      ps.push_back(q);
    } else {
      ps.push_back(necessitate(ps[static_cast<std::size_t>(std::get<Necessitation>(st).i)]));
    }
  }
  return ps.back();
}

HilbertProof hilbert_from_json(std::string_view text, std::string* system) {
  HilbertProof hp;
  try {
    const json doc = json::parse(text);
    if (system && doc.contains("system")) *system = doc.at("system").get<std::string>();
    for (const auto& s : doc.at("steps")) {
      if (s.contains("axiom")) {
        AxiomInstance ax;
        const std::string name = s.at("axiom").get<std::string>();
        ax.a = parse_formula(s.at("a").get<std::string>());
        if (name == "PC") {
          ax.tautology = true;
        } else {
          auto a = parse_axiom(name);
          if (!a) throw ProofFormatError("unknown axiom '" + name + "'");
          ax.axiom = *a;
          if (*a == AxiomName::K) ax.b = parse_formula(s.at("b").get<std::string>());
        }
        hp.steps.emplace_back(ax);
      } else if (s.contains("mp")) {
        hp.steps.emplace_back(ModusPonens{s.at("mp").at(0).get<int>(), s.at("mp").at(1).get<int>()});
      } else if (s.contains("nec")) {
        hp.steps.emplace_back(Necessitation{s.at("nec").get<int>()});
      } else {
        throw ProofFormatError("step without 'axiom', 'mp' or 'nec'");
      }
    }
  } catch (const json::exception& e) {
    throw ProofFormatError(std::string("Hilbert proof: ") + e.what());
  } catch (const ParseError& e) {
    throw ProofFormatError(std::string("Hilbert proof: ") + e.what());
  }
  return hp;
}

std::string hilbert_to_json(const HilbertProof& hp, const std::string& system) {
  json steps = json::array();
  for (const auto& st : hp.steps) {
    if (const auto* ax = std::get_if<AxiomInstance>(&st)) {
      json j{{"axiom", ax->tautology ? "PC" : axiom_name(ax->axiom)}, {"a", to_string(ax->a)}};
      if (!ax->tautology && ax->axiom == AxiomName::K) j["b"] = to_string(ax->b);
      steps.push_back(j);
    } else if (const auto* mp = std::get_if<ModusPonens>(&st)) {
      steps.push_back(json{{"mp", {mp->i, mp->j}}});
    } else {
      steps.push_back(json{{"nec", std::get<Necessitation>(st).i}});
    }
  }
  json doc{{"steps", steps}};
  if (!system.empty()) doc["system"] = system;
  return doc.dump(2) + "\n";
}

}  // namespace hyperseq
