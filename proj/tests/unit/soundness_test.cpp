#include <random>
#include <set>

#include <gtest/gtest.h>

#include "../support/random_proofs.hpp"
#include "hyperseq/semantics.hpp"

namespace hyperseq {
namespace {

class RuleSoundness : public ::testing::TestWithParam<SystemId> {};

// Every checked step of every system preserves validity on the system's frames.
TEST_P(RuleSoundness, RandomProofsHaveValidImages) {
  const SystemId sys = GetParam();
  std::mt19937_64 rng(1000 + static_cast<int>(sys));
  testing::RandomProofs gen(rng, sys);
  std::set<RuleId> seen;
  for (int round = 0; round < 8; ++round) {
    gen.generate(80);
    for (const Proof& p : gen.pool()) {
      ASSERT_TRUE(check_proof(p, sys).ok);
      seen.insert(p->app.rule);
      const Validity v = bounded_valid(hyper_image(p->conclusion), frame_class(sys), 3,
                                       std::vector<std::string>{"p", "q"});
      ASSERT_TRUE(v.valid) << system_name(sys) << ": " << rule_name(p->app.rule) << " gives "
                           << to_string(p->conclusion) << "\n" << describe(v);
    }
  }
  for (RuleId r : system_rules(sys))
    EXPECT_TRUE(seen.contains(r)) << system_name(sys) << " never exercised " << rule_name(r);
}

INSTANTIATE_TEST_SUITE_P(AllSystems, RuleSoundness, ::testing::ValuesIn(all_systems()),
                         [](const auto& info) { return std::string(system_name(info.param)); });

TEST(CheckStep, Deterministic) {
  std::mt19937_64 rng(3);
  testing::RandomProofs gen(rng, SystemId::S5);
  gen.generate(60);
  for (const Proof& p : gen.pool()) {
    std::vector<Hypersequent> hs;
    for (const auto& q : p->premises) hs.push_back(q->conclusion);
    const auto a = check_step(p->app, hs, p->conclusion);
    const auto b = check_step(p->app, hs, p->conclusion);
    EXPECT_EQ(a.has_value(), b.has_value());
  }
}

}  // namespace
}  // namespace hyperseq
