#pragma once

#include <cstddef>
#include <optional>
#include <set>

#include "hyperseq/proof.hpp"

namespace hyperseq {

struct SearchConfig {
  // Bound on the backward steps that discard part of the goal (nec2, b2, 52
  // and b25). Steps that only add formulas or sequents are invertible and are
  // applied to saturation without consuming depth.
  int max_depth = 12;
  // Rules the prover may use; unset means the system's rules without cut.
  std::optional<std::set<RuleId>> allow_rules;
  bool loop_check = true;
  std::size_t node_budget = 100000;
};

enum class SearchStatus : std::uint8_t { Found, ExhaustedBound, BudgetExceeded };

const char* status_name(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::ExhaustedBound;
  Proof proof;  // set when Found; it always passes check_proof
  std::size_t nodes = 0;
};

// Rules of the classical propositional fragment (initial sequents,
// connectives and the structural rules).
std::set<RuleId> propositional_rules();

// Backward cut-free proof search. A found proof has exactly the goal (up to
// permutation) as its conclusion.
SearchResult prove(const Hypersequent& goal, SystemId sys, const SearchConfig& cfg = {});

// Set normal form used by the prover: one plain sequent holding every plain
// formula (if there is any plain sequent), sides as sorted sets, and modal
// sequents contained in another one removed.
Hypersequent saturation_normal_form(const Hypersequent& h);

}  // namespace hyperseq
