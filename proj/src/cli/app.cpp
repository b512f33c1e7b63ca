#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "hyperseq/cli.hpp"
#include "hyperseq/corpus.hpp"
#include "hyperseq/search.hpp"
#include "hyperseq/semantics.hpp"
#include "hyperseq/transform.hpp"
#include "json.hpp"

namespace hyperseq {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

// Thrown for bad input; reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string system = "K";
  std::size_t fuel = 1000000;
  int depth = 12;
};

// key = value lines; '#' starts a comment.
Settings read_config(const std::string& path) {
  Settings s;
  if (path.empty()) return s;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto eq = line.find('=');
    auto trim = [](std::string x) {
      const auto b = x.find_first_not_of(" \t\r");
      const auto e = x.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(n) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "system") s.system = value;
      else if (key == "fuel") s.fuel = std::stoull(value);
      else if (key == "depth") s.depth = std::stoi(value);
      else throw UsageError(path + ":" + std::to_string(n) + ": unknown key '" + key + "'");
    } catch (const std::logic_error&) {
      throw UsageError(path + ":" + std::to_string(n) + ": bad value '" + value + "'");
    }
  }
  return s;
}

SystemId system_arg(const std::string& name) {
  auto s = parse_system(name);
  if (!s) throw UsageError("unknown system '" + name + "'");
  return *s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

// Loads a proof file; the system comes from the flag or else from the file.
Proof load(const std::string& path, const std::string& flag_system, const Settings& cfg, SystemId* sys) {
  std::string file_system;
  Proof p = proof_from_json(read_file(path), &file_system);
  *sys = system_arg(!flag_system.empty() ? flag_system : !file_system.empty() ? file_system : cfg.system);
  return p;
}

json report_json(const CheckReport& r) {
  json j{{"ok", r.ok}, {"system", system_name(r.system)}, {"node_count", r.node_count}};
  json used = json::object();
  for (const auto& [rule, n] : r.rules_used) used[rule_name(rule)] = n;
  j["rules_used"] = used;
  json fails = json::array();
  for (const auto& f : r.failures)
    fails.push_back(json{{"path", f.path}, {"kind", kind_name(f.error.kind)}, {"message", f.error.message}});
  j["failures"] = fails;
  return j;
}

void print_report(const CheckReport& r, bool as_json, std::ostream& out) {
  if (as_json) {
    out << report_json(r).dump(2) << "\n";
    return;
  }
  if (r.ok) {
    out << "OK " << system_name(r.system) << " (" << r.node_count << " nodes)\n";
    return;
  }
  out << "FAILED " << system_name(r.system) << " (" << r.failures.size() << " failing steps)\n";
  for (const auto& f : r.failures)
    out << "  " << f.path << ": " << kind_name(f.error.kind) << ": " << f.error.message << "\n";
}

json std_json(const StandardProof& p) {
  json j{{"rule", std_rule_name(p->rule)}, {"goal", to_string(p->conclusion)}};
  if (p->formula) j["formula"] = to_string(*p->formula);
  if (!p->keep_box.empty()) j["keep_box"] = p->keep_box;
  json ps = json::array();
  for (const auto& q : p->premises) ps.push_back(std_json(q));
  j["premises"] = ps;
  return j;
}

// Formula or, when the text has a turnstile, the image of a hypersequent.
Formula formula_arg(const std::string& text) {
  if (text.find("->") != std::string::npos || text.find("=>") != std::string::npos)
    return hyper_image(parse_hypersequent(text));
  return parse_formula(text);
}

struct App {
  std::ostream& out;
  std::ostream& err;
  CLI::App app{"Two-sorted hypersequent proof kernel, checker and transformer", "hyperseq"};

  std::string config_path;
  std::string format = "text";
  Settings cfg;

  // check
  std::string check_file, check_system;
  bool allow_open = false;
  // image
  std::string image_text;
  // expand
  std::string expand_rule;
  std::vector<std::string> expand_premises;
  int ex_seq = 0, ex_idx = 0, ex_seq2 = 0, ex_idx2 = 0;
  std::vector<int> ex_pick;
  std::string expand_out;
  // bridge
  std::string bridge_file, bridge_system, bridge_out;
  // transform
  std::string tr_kind, tr_file, tr_system, tr_out, tr_trace;
  bool tr_assert = false;
  std::optional<std::size_t> tr_fuel;
  // prove
  std::string pr_goal, pr_system, pr_emit;
  std::optional<int> pr_depth;
  bool pr_no_loop = false;
  std::vector<std::string> pr_allow;
  std::size_t pr_budget = 100000;
  // validate
  std::string va_text, va_system;
  int va_bound = 3;
  // corpus
  std::string corpus_dir = "proofs";

  App(std::ostream& o, std::ostream& e) : out(o), err(e) {
    app.require_subcommand(1);
    app.add_option("--config", config_path, "key = value file with defaults for system, fuel and depth");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));

    auto* check = app.add_subcommand("check", "check a proof file");
    check->add_option("file", check_file)->required();
    check->add_option("--system,-s", check_system, "system (default: the file's, then the config's)");
    check->add_flag("--allow-open", allow_open, "accept open leaves");
    handlers.emplace_back(check, [this] { return do_check(); });

    auto* image = app.add_subcommand("image", "print the formula image of a hypersequent");
    image->add_option("hypersequent", image_text)->required();
    handlers.emplace_back(image, [this] { return do_image(); });

    auto* expand = app.add_subcommand("expand", "expand a derived rule into a fragment with open leaves");
    expand->add_option("rule", expand_rule)->required();
    expand->add_option("--premise", expand_premises, "premise hypersequent (repeatable)")->required();
    expand->add_option("--seq", ex_seq);
    expand->add_option("--idx", ex_idx);
    expand->add_option("--seq2", ex_seq2);
    expand->add_option("--idx2", ex_idx2);
    expand->add_option("--pick", ex_pick);
    expand->add_option("--output,-o", expand_out);
    handlers.emplace_back(expand, [this] { return do_expand(); });

    auto* bridge = app.add_subcommand("bridge", "translate a Hilbert proof into a hypersequent proof");
    bridge->add_option("file", bridge_file)->required();
    bridge->add_option("--system,-s", bridge_system);
    bridge->add_option("--output,-o", bridge_out);
    handlers.emplace_back(bridge, [this] { return do_bridge(); });

    auto* transform = app.add_subcommand("transform", "rewrite a proof");
    transform->add_option("kind", tr_kind)
        ->required()
        ->check(CLI::IsMember({"atomize", "t2-elim", "regularize", "to-std", "restrict-52", "reduce-cut", "cut-elim"}));
    transform->add_option("file", tr_file)->required();
    transform->add_option("--system,-s", tr_system);
    transform->add_option("--output,-o", tr_out);
    transform->add_option("--trace", tr_trace, "write the rewrite trace to this file");
    transform->add_flag("--assert-each-step", tr_assert, "re-check every rewritten subproof");
    transform->add_option("--fuel", tr_fuel);
    handlers.emplace_back(transform, [this] { return do_transform(); });

    auto* prove_cmd = app.add_subcommand("prove", "bounded cut-free proof search");
    prove_cmd->add_option("goal", pr_goal)->required();
    prove_cmd->add_option("--system,-s", pr_system);
    prove_cmd->add_option("--depth", pr_depth);
    prove_cmd->add_flag("--no-loop-check", pr_no_loop);
    prove_cmd->add_option("--allow", pr_allow, "extra rules to allow (e.g. cut)");
    prove_cmd->add_option("--budget", pr_budget);
    prove_cmd->add_option("--emit", pr_emit, "write the proof found to this file");
    handlers.emplace_back(prove_cmd, [this] { return do_prove(); });

    auto* validate = app.add_subcommand("validate", "bounded Kripke validity of a formula or hypersequent image");
    validate->add_option("formula", va_text)->required();
    validate->add_option("--system,-s", va_system);
    validate->add_option("--bound", va_bound)->check(CLI::Range(1, 4));
    handlers.emplace_back(validate, [this] { return do_validate(); });

    auto* corpus = app.add_subcommand("corpus", "golden corpus");
    corpus->require_subcommand(1);
    auto* run = corpus->add_subcommand("run", "check every proof file of a directory");
    run->add_option("dir", corpus_dir);
    handlers.emplace_back(run, [this] { return do_corpus_run(); });
    auto* emit = corpus->add_subcommand("emit", "write the golden corpus files to a directory");
    emit->add_option("dir", corpus_dir);
    handlers.emplace_back(emit, [this] { return do_corpus_emit(); });
  }

  std::vector<std::pair<CLI::App*, std::function<int()>>> handlers;

  int dispatch() {
    load_settings();
    for (auto& [cmd, fn] : handlers)
      if (cmd->parsed()) return fn();
    throw UsageError("no command given");
  }

  void load_settings() {
    cfg = read_config(config_path);
    if (const char* f = std::getenv("HYPERSEQ_FUEL")) {
      try {
        cfg.fuel = std::stoull(f);
      } catch (const std::logic_error&) {
        throw UsageError(std::string("bad HYPERSEQ_FUEL '") + f + "'");
      }
    }
  }

  bool json_out() const { return format == "json"; }

  int do_check() {
    SystemId sys;
    Proof p = load(check_file, check_system, cfg, &sys);
    CheckOptions opts;
    opts.allow_open = allow_open;
    const CheckReport r = check_proof(p, sys, opts);
    print_report(r, json_out(), out);
    return r.ok ? kOk : kFailure;
  }

  int do_image() {
    out << to_string(hyper_image(parse_hypersequent(image_text))) << "\n";
    return kOk;
  }

  int do_expand() {
    auto r = parse_derived(expand_rule);
    if (!r) throw UsageError("unknown derived rule '" + expand_rule + "'");
    DerivedInstance in;
    for (const auto& h : expand_premises) in.premises.push_back(parse_hypersequent(h));
    in.seq = ex_seq;
    in.idx = ex_idx;
    in.seq2 = ex_seq2;
    in.idx2 = ex_idx2;
    in.pick = ex_pick;
    Proof frag;
    try {
      frag = expand_derived(*r, in);
    } catch (const ShapeError& e) {
      err << "ShapeError: " << e.what() << "\n";
      return kFailure;
    }
    const SystemId sys = derived_system(*r);
    CheckOptions opts;
    opts.allow_open = true;
    const CheckReport rep = check_proof(frag, sys, opts);
    const std::string text = proof_to_json(frag, system_name(sys));
    if (expand_out.empty()) out << text;
    else write_file(expand_out, text);
    if (!rep.ok) {
      print_report(rep, json_out(), err);
      return kFailure;
    }
    return kOk;
  }

  int do_bridge() {
    std::string file_system;
    const HilbertProof hp = hilbert_from_json(read_file(bridge_file), &file_system);
    const SystemId sys = system_arg(!bridge_system.empty() ? bridge_system : !file_system.empty() ? file_system : cfg.system);
    Proof p;
    try {
      p = hilbert_to_hyperseq(hp, sys);
    } catch (const BridgeError& e) {
      err << bridge_error_name(e.kind()) << ": " << e.what() << "\n";
      return kFailure;
    }
    const CheckReport r = check_proof(p, sys);
    if (!bridge_out.empty()) write_file(bridge_out, proof_to_json(p, system_name(sys)));
    if (json_out()) {
      json j = report_json(r);
      j["conclusion"] = to_string(p->conclusion);
      j["hilbert"] = to_string(hilbert_formulas(hp).back());
      out << j.dump(2) << "\n";
    } else {
      out << to_string(p->conclusion) << "\n";
      print_report(r, false, out);
    }
    return r.ok ? kOk : kFailure;
  }

  int do_transform() {
    SystemId sys;
    Proof p = load(tr_file, tr_system, cfg, &sys);
    const CheckReport in = check_proof(p, sys);
    if (!in.ok) {
      err << "input proof does not check in " << system_name(sys) << "\n";
      print_report(in, false, err);
      return kFailure;
    }
    TransformTrace trace;
    TransformOptions opts;
    opts.fuel = tr_fuel.value_or(cfg.fuel);
    opts.assert_each_step = tr_assert;
    opts.trace = &trace;
    std::string text;
    try {
      if (tr_kind == "to-std") {
        const StandardProof s = to_standard(p, sys);
        if (auto bad = check_standard(s, sys)) {
          err << "standard proof rejected: " << *bad << "\n";
          return kFailure;
        }
        text = std_json(s).dump(1) + "\n";
      } else {
        Proof q;
        if (tr_kind == "atomize") q = atomize_initials(p, opts);
        else if (tr_kind == "t2-elim") q = eliminate_T2(p, sys, opts);
        else if (tr_kind == "regularize") q = regularize(p, sys, opts);
        else if (tr_kind == "restrict-52") q = restrict_52(p, sys, opts);
        else if (tr_kind == "reduce-cut") q = reduce_cut_formula(p, opts);
        else q = eliminate_cut(p, sys, opts);
        const CheckReport r = check_proof(q, sys);
        if (!r.ok) {
          err << "transformed proof does not check\n";
          print_report(r, false, err);
          return kFailure;
        }
        text = proof_to_json(q, system_name(sys));
      }
    } catch (const TransformError& e) {
      err << transform_error_name(e.kind()) << ": " << e.what() << "\n";
      if (!tr_trace.empty()) write_file(tr_trace, trace_to_string(trace));
      return kFailure;
    }
    if (!tr_trace.empty()) write_file(tr_trace, trace_to_string(trace));
    if (tr_out.empty()) out << text;
    else write_file(tr_out, text);
    return kOk;
  }

  int do_prove() {
    const SystemId sys = system_arg(!pr_system.empty() ? pr_system : cfg.system);
    SearchConfig sc;
    sc.max_depth = pr_depth.value_or(cfg.depth);
    sc.loop_check = !pr_no_loop;
    sc.node_budget = pr_budget;
    if (!pr_allow.empty()) {
      std::set<RuleId> rules;
      for (RuleId r : system_rules(sys))
        if (r != RuleId::Cut) rules.insert(r);
      for (const auto& name : pr_allow) {
        auto r = parse_rule(name);
        if (!r) throw UsageError("unknown rule '" + name + "'");
        if (!system_has(sys, *r)) throw UsageError(name + " is not a rule of " + system_name(sys));
        rules.insert(*r);
      }
      sc.allow_rules = rules;
    }
    const SearchResult r = prove(parse_hypersequent(pr_goal), sys, sc);
    if (json_out()) {
      out << json{{"status", status_name(r.status)}, {"nodes", r.nodes}}.dump(2) << "\n";
    } else if (r.status == SearchStatus::Found) {
      out << "FOUND (" << node_count(r.proof) << " nodes, " << r.nodes << " search nodes)\n";
    } else if (r.status == SearchStatus::ExhaustedBound) {
      out << "no proof within bound (depth " << sc.max_depth << ", " << r.nodes << " search nodes)\n";
    } else {
      out << "search budget exceeded (" << r.nodes << " search nodes)\n";
    }
    if (r.status == SearchStatus::Found && !pr_emit.empty()) write_file(pr_emit, proof_to_json(r.proof, system_name(sys)));
    return r.status == SearchStatus::Found ? kOk : kFailure;
  }

  int do_validate() {
    const SystemId sys = system_arg(!va_system.empty() ? va_system : cfg.system);
    const Validity v = bounded_valid(formula_arg(va_text), frame_class(sys), va_bound);
    std::string text = describe(v);
    if (text.empty() || text.back() != '\n') text += "\n";
    out << text;
    return v.valid ? kOk : kFailure;
  }

  int do_corpus_emit() {
    fs::create_directories(fs::path(corpus_dir) / "hilbert");
    for (const auto& e : golden_corpus())
      write_file((fs::path(corpus_dir) / (e.name + ".proof")).string(), proof_to_json(e.proof, system_name(e.system)));
    for (const auto& e : hilbert_examples())
      write_file((fs::path(corpus_dir) / "hilbert" / (e.name + ".json")).string(),
                 hilbert_to_json(e.proof, system_name(e.system)));
    out << "wrote corpus to " << corpus_dir << "\n";
    return kOk;
  }

  int do_corpus_run() {
    std::vector<fs::path> files;
    if (!fs::is_directory(corpus_dir)) throw UsageError("no corpus directory " + corpus_dir);
    for (const auto& e : fs::directory_iterator(corpus_dir))
      if (e.path().extension() == ".proof") files.push_back(e.path());
    const fs::path hil = fs::path(corpus_dir) / "hilbert";
    if (fs::is_directory(hil))
      for (const auto& e : fs::directory_iterator(hil))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    int failed = 0;
    json rows = json::array();
    for (const auto& f : files) {
      const auto t0 = std::chrono::steady_clock::now();
      std::string name = f.stem().string();
      std::string sysname, status, note;
      bool ok = false;
      try {
        SystemId sys;
        Proof p;
        if (f.extension() == ".json") {
          name = "hilbert/" + name;
          std::string file_system;
          const HilbertProof hp = hilbert_from_json(read_file(f.string()), &file_system);
          sys = system_arg(file_system.empty() ? cfg.system : file_system);
          p = hilbert_to_hyperseq(hp, sys);
        } else {
          p = load(f.string(), "", cfg, &sys);
        }
        sysname = system_name(sys);
        const CheckReport r = check_proof(p, sys);
        const Validity v = bounded_valid(hyper_image(p->conclusion), frame_class(sys), 3);
        ok = r.ok && v.valid;
        note = !r.ok ? r.failures[0].path + ": " + r.failures[0].error.message
                     : !v.valid ? "image not valid on the frame class" : to_string(p->conclusion);
      } catch (const std::exception& e) {
        note = e.what();
      }
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      status = ok ? "pass" : "FAIL";
      if (!ok) ++failed;
      if (json_out()) {
        rows.push_back(json{{"name", name}, {"system", sysname}, {"ok", ok}, {"detail", note}});
      } else {
        out << std::left << std::setw(28) << name << std::setw(6) << sysname << std::setw(6) << status
            << std::right << std::setw(8) << std::fixed << std::setprecision(2) << ms << " ms  " << note << "\n";
      }
    }
    if (json_out()) out << rows.dump(2) << "\n";
    else out << (files.size() - static_cast<std::size_t>(failed)) << "/" << files.size() << " passed\n";
    return failed == 0 && !files.empty() ? kOk : kFailure;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  App a(out, err);
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    a.app.parse(rev);
    return a.dispatch();
  } catch (const CLI::CallForHelp&) {
    out << a.app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ProofFormatError& e) {
    err << "proof file error: " << e.what() << "\n";
    return kUsage;
  } catch (const StepFailure& e) {
    err << "proof file error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace hyperseq
