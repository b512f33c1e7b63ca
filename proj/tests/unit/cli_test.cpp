#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "hyperseq/cli.hpp"
#include "hyperseq/corpus.hpp"
#include "hyperseq/transform.hpp"

namespace hyperseq {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("hyperseq_cli_" + std::to_string(counter_++))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& text) const {
    const fs::path f = path_ / name;
    std::ofstream(f) << text;
    return f.string();
  }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string corpus_file(const std::string& name) {
  for (const auto& e : golden_corpus())
    if (e.name == name) return proof_to_json(e.proof, system_name(e.system));
  ADD_FAILURE() << "no corpus entry " << name;
  return {};
}

TEST(Cli, CheckAcceptsAndReports) {
  TempDir d;
  const std::string f = d.file("t.proof", corpus_file("axiom_t"));
  Outcome r = run({"check", f});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "OK T (2 nodes)\n");
  r = run({"--format", "json", "check", f});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"ok\": true"), std::string::npos);
}

TEST(Cli, CheckInAWeakerSystemFails) {
  TempDir d;
  const std::string f = d.file("t.proof", corpus_file("axiom_t"));
  const Outcome r = run({"check", f, "--system", "K"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("RuleUnavailable"), std::string::npos);
}

TEST(Cli, MalformedProofFileIsAUsageError) {
  TempDir d;
  EXPECT_EQ(run({"check", d.file("bad.proof", "{\"conclusion\": 3")}).code, 2);
  EXPECT_EQ(run({"check", d / "missing.proof"}).code, 2);
}

TEST(Cli, Image) {
  const Outcome r = run({"image", "--", "-> p || box p =>"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(bot | p) | box(box p > bot)\n");
}

TEST(Cli, ProveAndValidate) {
  Outcome r = run({"prove", "box p -> p", "-s", "T"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("FOUND", 0), 0u);
  r = run({"prove", "box p -> box box p", "-s", "K"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("no proof within bound", 0), 0u);
  r = run({"validate", "box p > p", "-s", "T"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "VALID (bound=3)\n");
  r = run({"validate", "box p > p", "-s", "K"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("COUNTERMODEL", 0), 0u);
}

TEST(Cli, ProveEmitsACheckableProof) {
  TempDir d;
  const std::string f = d / "found.proof";
  ASSERT_EQ(run({"prove", "box(p & q) -> box p", "-s", "K", "--emit", f}).code, 0);
  EXPECT_EQ(run({"check", f}).code, 0);
}

TEST(Cli, TransformCutElimination) {
  TempDir d;
  const std::string in = d.file("cut.proof", corpus_file("mult_cut"));
  const std::string out = d / "free.proof";
  const Outcome r = run({"transform", "cut-elim", in, "-s", "K", "-o", out});
  EXPECT_EQ(r.code, 0) << r.err;
  std::string text;
  {
    std::ifstream s(out);
    text.assign(std::istreambuf_iterator<char>(s), {});
  }
  std::string sys;
  const Proof p = proof_from_json(text, &sys);
  EXPECT_EQ(count_rule(p, RuleId::Cut), 0u);
  EXPECT_EQ(run({"check", out}).code, 0);
}

TEST(Cli, TransformRefusesGamma) {
  TempDir d;
  const std::string in = d.file("g.proof", corpus_file("gamma_kb"));
  const Outcome r = run({"transform", "cut-elim", in, "-s", "KB"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("WrongGroup"), std::string::npos);
}

TEST(Cli, TransformTrace) {
  TempDir d;
  const std::string in = d.file("four.proof", corpus_file("axiom_4"));
  const Outcome r = run({"transform", "regularize", in, "--trace", d / "trace.txt", "-o", d / "reg.proof"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(d / "trace.txt"));
  EXPECT_GT(fs::file_size(d / "trace.txt"), 0u);
}

TEST(Cli, FuelFromEnvironmentAndFlag) {
  TempDir d;
  const std::string in = d.file("cut.proof", corpus_file("mult_cut"));
  const Outcome r = run({"transform", "cut-elim", in, "-s", "K", "--fuel", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("FuelExhausted"), std::string::npos);
}

TEST(Cli, ConfigFileSetsSystem) {
  TempDir d;
  const std::string cfg = d.file("hs.conf", "system = T\n");
  EXPECT_EQ(run({"--config", cfg, "prove", "box p -> p"}).code, 0);
  EXPECT_EQ(run({"--config", cfg, "prove", "box p -> p", "-s", "K"}).code, 1);
}

TEST(Cli, Expand) {
  const Outcome r = run({"expand", "s4_box_l", "--premise", "p -> p"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"goal\""), std::string::npos);
  EXPECT_EQ(run({"expand", "no_such_rule", "--premise", "p -> p"}).code, 2);
}

TEST(Cli, Bridge) {
  TempDir d;
  const std::string f = d.file("t.json", hilbert_to_json(hilbert_examples()[0].proof, "T"));
  const Outcome r = run({"bridge", f});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, CorpusRun) {
  const Outcome r = run({"corpus", "run", HYPERSEQ_PROOFS_DIR});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("28/28 passed"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"prove", "p &", "-s", "K"}).code, 2);
}

}  // namespace
}  // namespace hyperseq
