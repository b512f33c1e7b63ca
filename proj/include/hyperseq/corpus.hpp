#pragma once

#include <string>
#include <vector>

#include "hyperseq/hilbert.hpp"

namespace hyperseq {

struct CorpusEntry {
  std::string name;    // file stem under proofs/
  SystemId system;
  Proof proof;
  std::string figure;  // what the derivation shows
};

// Every displayed derivation encoded as a closed proof.
std::vector<CorpusEntry> golden_corpus();

// With-cut proof of `=> box ~box box box p | => p` (checks in KB, KDB and KTB).
Proof gamma_counterexample();

struct HilbertExample {
  std::string name;
  SystemId system;
  HilbertProof proof;
};

std::vector<HilbertExample> hilbert_examples();

}  // namespace hyperseq
