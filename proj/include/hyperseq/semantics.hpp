#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperseq/formula.hpp"
#include "hyperseq/rules.hpp"

namespace hyperseq {

// Worlds are 0..n-1 (n <= 5); succ[w] is the successor bitmask of w and
// val[atom] the set of worlds where the atom holds.
struct KripkeModel {
  int n = 1;
  std::vector<std::uint32_t> succ;
  std::map<std::string, std::uint32_t> val;

  bool related(int a, int b) const { return ((succ[static_cast<std::size_t>(a)] >> b) & 1U) != 0; }
};

enum FrameCondition : std::uint8_t {
  kSerial = 1, kReflexive = 2, kTransitive = 4, kSymmetric = 8, kEuclidean = 16
};

struct FrameClass {
  std::uint8_t conditions = 0;
  bool has(FrameCondition c) const { return (conditions & c) != 0; }
};

FrameClass frame_class(SystemId s);
std::string to_string(FrameClass fc);
bool satisfies(const KripkeModel& m, FrameClass fc);

// Set of worlds where f holds (bit w set iff true at w).
std::uint32_t truth_set(const Formula& f, const KripkeModel& m);
bool eval(const Formula& f, const KripkeModel& m, int w);
// Independent recursive evaluator used to cross-check truth_set.
bool eval_naive(const Formula& f, const KripkeModel& m, int w);

struct Countermodel {
  KripkeModel model;
  int world = 0;
};

struct Validity {
  bool valid = true;
  int bound = 0;
  std::optional<Countermodel> counter;
};

Validity bounded_valid(const Formula& f, FrameClass fc, int max_worlds = 3,
                       std::optional<std::vector<std::string>> atoms = std::nullopt);

std::string describe(const Validity& v);

}  // namespace hyperseq
