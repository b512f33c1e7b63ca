#include <algorithm>
#include <stdexcept>

#include "hyperseq/semantics.hpp"

namespace hyperseq {

FrameClass frame_class(SystemId s) {
  switch (s) {
    case SystemId::K: return {0};
    case SystemId::D: return {kSerial};
    case SystemId::T: return {kReflexive};
    case SystemId::K4: return {kTransitive};
    case SystemId::KB: return {kSymmetric};
    case SystemId::K5: return {kEuclidean};
    case SystemId::B: return {kReflexive | kSymmetric};
    case SystemId::K45: return {kTransitive | kEuclidean};
    case SystemId::KD4: return {kSerial | kTransitive};
    case SystemId::KD5: return {kSerial | kEuclidean};
    case SystemId::KDB: return {kSerial | kSymmetric};
    case SystemId::KB5: return {kSymmetric | kEuclidean};
    case SystemId::KD45: return {kSerial | kTransitive | kEuclidean};
    case SystemId::S4: return {kReflexive | kTransitive};
    case SystemId::S5: return {kReflexive | kEuclidean};
  }
  return {0};
}

std::string to_string(FrameClass fc) {
  static const std::pair<FrameCondition, const char*> names[] = {
      {kSerial, "serial"}, {kReflexive, "reflexive"}, {kTransitive, "transitive"},
      {kSymmetric, "symmetric"}, {kEuclidean, "euclidean"}};
  std::string out;
  for (const auto& [c, name] : names) {
    if (!fc.has(c)) continue;
    if (!out.empty()) out += ",";
    out += name;
  }
  return out.empty() ? "all" : out;
}

bool satisfies(const KripkeModel& m, FrameClass fc) {
  const int n = m.n;
  for (int x = 0; x < n; ++x) {
    if (fc.has(kSerial) && m.succ[static_cast<std::size_t>(x)] == 0) return false;
    if (fc.has(kReflexive) && !m.related(x, x)) return false;
    for (int y = 0; y < n; ++y) {
      if (!m.related(x, y)) continue;
      if (fc.has(kSymmetric) && !m.related(y, x)) return false;
      for (int z = 0; z < n; ++z) {
        if (fc.has(kTransitive) && m.related(y, z) && !m.related(x, z)) return false;
        if (fc.has(kEuclidean) && m.related(x, z) && !m.related(y, z)) return false;
      }
    }
  }
  return true;
}

namespace {

std::uint32_t eval_set(const Formula& f, const KripkeModel& m, std::uint32_t all) {
  switch (f.op()) {
    case Op::Bot: return 0;
    case Op::Atom: {
      auto it = m.val.find(f.name());
      return it == m.val.end() ? 0 : it->second & all;
    }
    case Op::Neg: return ~eval_set(f.sub(), m, all) & all;
    case Op::And: return eval_set(f.left(), m, all) & eval_set(f.right(), m, all);
    case Op::Box: {
      const std::uint32_t s = eval_set(f.sub(), m, all);
      std::uint32_t out = 0;
      for (int w = 0; w < m.n; ++w)
        if ((m.succ[static_cast<std::size_t>(w)] & ~s) == 0) out |= 1U << w;
      return out;
    }
  }
  return 0;
}

// Postfix program over atom indices, used by the enumeration loop.
struct Program {
  struct Ins {
    Op op;
    int atom;
  };
  std::vector<Ins> code;

  void compile(const Formula& f, const std::vector<std::string>& names) {
    switch (f.op()) {
      case Op::Neg:
      case Op::Box: compile(f.sub(), names); break;
      case Op::And:
        compile(f.left(), names);
        compile(f.right(), names);
        break;
      default: break;
    }
    int atom = -1;
    if (f.is(Op::Atom)) {
      auto it = std::find(names.begin(), names.end(), f.name());
      atom = it == names.end() ? -1 : static_cast<int>(it - names.begin());
    }
    code.push_back({f.op(), atom});
  }

  std::uint32_t run(const std::vector<std::uint32_t>& succ, int n, const std::uint32_t* atoms,
                    std::uint32_t all, std::vector<std::uint32_t>& stack) const {
    stack.clear();
    for (const Ins& ins : code) {
      switch (ins.op) {
        case Op::Bot: stack.push_back(0); break;
        case Op::Atom: stack.push_back(ins.atom < 0 ? 0 : atoms[ins.atom]); break;
        case Op::Neg: stack.back() = ~stack.back() & all; break;
        case Op::And: {
          const std::uint32_t b = stack.back();
          stack.pop_back();
          stack.back() &= b;
          break;
        }
        case Op::Box: {
          const std::uint32_t t = stack.back();
          std::uint32_t out = 0;
          for (int w = 0; w < n; ++w)
            if ((succ[static_cast<std::size_t>(w)] & ~t) == 0) out |= 1U << w;
          stack.back() = out;
          break;
        }
      }
    }
    return stack.back();
  }
};

}  // namespace

std::uint32_t truth_set(const Formula& f, const KripkeModel& m) {
  return eval_set(f, m, m.n >= 32 ? ~0U : (1U << m.n) - 1);
}

bool eval(const Formula& f, const KripkeModel& m, int w) { return ((truth_set(f, m) >> w) & 1U) != 0; }

bool eval_naive(const Formula& f, const KripkeModel& m, int w) {
  switch (f.op()) {
    case Op::Bot: return false;
    case Op::Atom: {
      auto it = m.val.find(f.name());
      return it != m.val.end() && ((it->second >> w) & 1U) != 0;
    }
    case Op::Neg: return !eval_naive(f.sub(), m, w);
    case Op::And: return eval_naive(f.left(), m, w) && eval_naive(f.right(), m, w);
    case Op::Box:
      for (int v = 0; v < m.n; ++v)
        if (m.related(w, v) && !eval_naive(f.sub(), m, v)) return false;
      return true;
  }
  return false;
}

Validity bounded_valid(const Formula& f, FrameClass fc, int max_worlds,
                       std::optional<std::vector<std::string>> atoms) {
  if (max_worlds < 1 || max_worlds > 4) throw std::invalid_argument("world bound must be 1..4");
  std::vector<std::string> names;
  if (atoms) {
    names = *atoms;
  } else {
    std::set<std::string> found;
    f.collect_atoms(found);
    names.assign(found.begin(), found.end());
  }
  if (names.size() > 6) throw std::invalid_argument("too many atoms for enumeration");
  Program prog;
  prog.compile(f, names);
  std::vector<std::uint32_t> stack;
  std::vector<std::uint32_t> masks(names.size() + 1, 0);
  Validity out;
  out.bound = max_worlds;
  for (int n = 1; n <= max_worlds; ++n) {
    const std::uint32_t all = (1U << n) - 1;
    const std::uint64_t relations = 1ULL << (n * n);
    const std::uint64_t valuations = 1ULL << (n * static_cast<int>(names.size()));
    KripkeModel m;
    m.n = n;
    m.succ.assign(static_cast<std::size_t>(n), 0);
    for (std::uint64_t r = 0; r < relations; ++r) {
      for (int w = 0; w < n; ++w)
        m.succ[static_cast<std::size_t>(w)] = static_cast<std::uint32_t>((r >> (w * n)) & all);
      if (!satisfies(m, fc)) continue;
      for (std::uint64_t v = 0; v < valuations; ++v) {
        for (std::size_t a = 0; a < names.size(); ++a)
          masks[a] = static_cast<std::uint32_t>((v >> (a * static_cast<std::size_t>(n))) & all);
        const std::uint32_t t = prog.run(m.succ, n, masks.data(), all, stack);
        if (t == all) continue;
        for (std::size_t a = 0; a < names.size(); ++a) m.val[names[a]] = masks[a];
        int w = 0;
        while (((t >> w) & 1U) != 0) ++w;
        out.valid = false;
        out.counter = Countermodel{m, w};
        return out;
      }
    }
  }
  return out;
}

std::string describe(const Validity& v) {
  if (v.valid) return "VALID (bound=" + std::to_string(v.bound) + ")";
  const KripkeModel& m = v.counter->model;
  std::string out = "COUNTERMODEL (bound=" + std::to_string(v.bound) + ")\n";
  out += "worlds:";
  for (int w = 0; w < m.n; ++w) out += " " + std::to_string(w);
  out += "\nrelation:";
  bool any = false;
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < m.n; ++b)
      if (m.related(a, b)) {
        out += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
        any = true;
      }
  if (!any) out += " none";
  out += "\nvaluation:\n";
  for (const auto& [name, bits] : m.val) {
    out += "  " + name + ":";
    for (int w = 0; w < m.n; ++w) out += ((bits >> w) & 1U) != 0 ? " 1" : " 0";
    out += "\n";
  }
  out += "falsified at world " + std::to_string(v.counter->world) + "\n";
  return out;
}

}  // namespace hyperseq
