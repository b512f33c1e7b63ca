#include <random>

#include <gtest/gtest.h>

#include "../support/generators.hpp"
#include "hyperseq/semantics.hpp"

namespace hyperseq {
namespace {

Formula F(const char* s) { return parse_formula(s); }

KripkeModel model(int n, std::vector<std::uint32_t> succ, std::map<std::string, std::uint32_t> val) {
  KripkeModel m;
  m.n = n;
  m.succ = std::move(succ);
  m.val = std::move(val);
  return m;
}

TEST(Eval, Basics) {
  const KripkeModel dead = model(1, {0}, {{"p", 0}});
  EXPECT_FALSE(eval(F("bot"), dead, 0));
  EXPECT_TRUE(eval(F("box p"), dead, 0));
  const KripkeModel refl = model(1, {1}, {{"p", 1}});
  EXPECT_TRUE(eval(F("box p > p"), refl, 0));
}

TEST(Eval, AgreesWithNaiveEvaluator) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = testing::random_formula(rng, 5, 2);
    KripkeModel m;
    m.n = std::uniform_int_distribution<int>(1, 4)(rng);
    const std::uint32_t all = (1U << m.n) - 1;
    std::uniform_int_distribution<std::uint32_t> bits(0, all);
    for (int w = 0; w < m.n; ++w) m.succ.push_back(bits(rng));
    m.val["p"] = bits(rng);
    m.val["q"] = bits(rng);
    const int w = std::uniform_int_distribution<int>(0, m.n - 1)(rng);
    ASSERT_EQ(eval(f, m, w), eval_naive(f, m, w)) << to_string(f);
  }
}

TEST(BoundedValid, AxiomTOnReflexiveFrames) {
  EXPECT_TRUE(bounded_valid(F("box p > p"), {kReflexive}, 3).valid);
}

TEST(BoundedValid, SmallestCountermodelForTInK) {
  const Validity v = bounded_valid(F("box p > p"), {0}, 2);
  ASSERT_FALSE(v.valid);
  EXPECT_EQ(v.counter->model.n, 1);
  EXPECT_EQ(v.counter->model.succ[0], 0u);
  EXPECT_EQ(v.counter->model.val.at("p"), 0u);
  EXPECT_EQ(v.counter->world, 0);
}

TEST(BoundedValid, EmptyModalSequentFailsOnReflexiveFrames) {
  const Formula img = formula_image(parse_sequent("=>"));
  const Validity v = bounded_valid(img, {kReflexive}, 3);
  ASSERT_FALSE(v.valid);
  for (int n = 1; n <= 3; ++n) {
    KripkeModel m = model(n, std::vector<std::uint32_t>(static_cast<std::size_t>(n), 0), {});
    for (int w = 0; w < n; ++w) m.succ[static_cast<std::size_t>(w)] = 1U << w;
    for (int w = 0; w < n; ++w) EXPECT_FALSE(eval(img, m, w));
  }
}

TEST(BoundedValid, CorrespondenceAxioms) {
  EXPECT_TRUE(bounded_valid(F("box p > box box p"), {kTransitive}, 3).valid);
  EXPECT_FALSE(bounded_valid(F("box p > box box p"), {0}, 3).valid);
  EXPECT_TRUE(bounded_valid(F("p > box dia p"), {kSymmetric}, 3).valid);
  EXPECT_TRUE(bounded_valid(F("dia p > box dia p"), {kEuclidean}, 3).valid);
  EXPECT_TRUE(bounded_valid(F("~box bot"), {kSerial}, 3).valid);
  EXPECT_FALSE(bounded_valid(F("~box bot"), {0}, 3).valid);
}

TEST(BoundedValid, FrameClassesOfSystems) {
  EXPECT_EQ(to_string(frame_class(SystemId::S4)), "reflexive,transitive");
  EXPECT_EQ(to_string(frame_class(SystemId::S5)), "reflexive,euclidean");
  EXPECT_EQ(to_string(frame_class(SystemId::KB5)), "symmetric,euclidean");
  EXPECT_EQ(to_string(frame_class(SystemId::K)), "all");
}

TEST(BoundedValid, MonotoneInTheBound) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    const Formula f = testing::random_formula(rng, 4, 2);
    const FrameClass fc{static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, 31)(rng))};
    if (bounded_valid(f, fc, 3).valid) EXPECT_TRUE(bounded_valid(f, fc, 2).valid) << to_string(f);
  }
}

TEST(BoundedValid, ImagesOfInitialSequentsAreValid) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 40; ++i) {
    const Formula a = testing::random_formula(rng, 3, 2);
    for (Sort s : {Sort::Plain, Sort::Modal}) {
      EXPECT_TRUE(bounded_valid(formula_image(Sequent{s, {a}, {a}}), {0}, 3, {{"p", "q"}}).valid);
      EXPECT_TRUE(bounded_valid(formula_image(Sequent{s, {Formula::bot()}, {}}), {0}, 3).valid);
    }
  }
}

TEST(BoundedValid, HyperImageIsPermutationInvariant) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 40; ++i) {
    Hypersequent h = testing::random_hypersequent(rng, 2, 3);
    Hypersequent g = h;
    std::shuffle(g.seqs.begin(), g.seqs.end(), rng);
    const Formula iff = Formula::conj(Formula::imp(hyper_image(h), hyper_image(g)),
                                      Formula::imp(hyper_image(g), hyper_image(h)));
    EXPECT_TRUE(bounded_valid(iff, {0}, 3, {{"p", "q"}}).valid);
  }
}

TEST(BoundedValid, CountermodelDescription) {
  const std::string text = describe(bounded_valid(F("box p > p"), {0}, 2));
  EXPECT_EQ(text,
            "COUNTERMODEL (bound=2)\nworlds: 0\nrelation: none\nvaluation:\n  p: 0\n"
            "falsified at world 0\n");
  EXPECT_EQ(describe(bounded_valid(F("p > p"), {0}, 3)), "VALID (bound=3)");
}

}  // namespace
}  // namespace hyperseq
