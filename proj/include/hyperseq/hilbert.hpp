#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyperseq/derived.hpp"

namespace hyperseq {

// Axiom step of a Hilbert proof. PC steps carry the tautology in `a`; the
// modal axioms are instantiated at `a` (and `b` for K).
struct AxiomInstance {
  bool tautology = false;
  AxiomName axiom = AxiomName::K;
  Formula a = Formula::bot();
  Formula b = Formula::bot();
};

// From step i proving A and step j proving A > B, conclude B.
struct ModusPonens {
  int i = 0;
  int j = 0;
};

struct Necessitation {
  int i = 0;
};

using HilbertStep = std::variant<AxiomInstance, ModusPonens, Necessitation>;

struct HilbertProof {
  std::vector<HilbertStep> steps;
};

class BridgeError : public std::runtime_error {
 public:
  enum class Kind : std::uint8_t { UnavailableAxiom, TautologyDischargeFailed, MalformedProof };
  BridgeError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* bridge_error_name(BridgeError::Kind k);

// Formula proved by every step; throws BridgeError(MalformedProof) on bad
// references or a modus ponens whose second premise is not A > B.
std::vector<Formula> hilbert_formulas(const HilbertProof& hp);

// Proof of `-> F` in `sys`, where F is the last formula of `hp`. Modal axioms
// come from their templates, tautologies from the propositional prover,
// modus ponens from two multiplicative cuts and necessitation from nec2 then nec1.
Proof hilbert_to_hyperseq(const HilbertProof& hp, SystemId sys);

// JSON form: {"steps": [{"axiom": "K", "a": "p", "b": "q"}, {"axiom": "PC", "a": "p > p"},
// {"mp": [0, 1]}, {"nec": 0}]}. Throws ProofFormatError.
// An optional "system" member is returned through `system`.
HilbertProof hilbert_from_json(std::string_view text, std::string* system = nullptr);
std::string hilbert_to_json(const HilbertProof& hp, const std::string& system = "");

}  // namespace hyperseq
