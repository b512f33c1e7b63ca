#include <string>

#include "hyperseq/rules.hpp"

namespace hyperseq {

namespace {

constexpr std::array<const char*, kRuleCount> kRuleNames{
    "ax", "bot", "and_l1", "and_l2", "and_r", "neg_l", "neg_r", "ic_l", "ic_r", "iw_l",
    "iw_r", "cut", "ew", "merge", "split", "nec1", "nec2", "k", "d", "t1",
    "t2", "4r", "4l", "b1", "b2", "51", "52", "b25"};

constexpr std::array<const char*, kSystemCount> kSystemNames{
    "K", "D", "T", "K4", "KB", "K5", "B", "K45", "KD4", "KD5", "KDB", "KB5", "KD45", "S4", "S5"};

std::set<RuleId> base_rules() {
  using R = RuleId;
  return {R::InitAx, R::InitBot, R::AndL1, R::AndL2, R::AndR, R::NegL, R::NegR, R::IcL, R::IcR,
          R::IwL,    R::IwR,     R::Cut,   R::Ew,    R::Merge, R::Split, R::Nec1, R::Nec2, R::K};
}

std::set<RuleId> build(SystemId s) {
  using R = RuleId;
  std::set<RuleId> out = base_rules();
  auto add = [&](std::initializer_list<RuleId> rs) { out.insert(rs.begin(), rs.end()); };
  if (s == SystemId::KB5) {
    add({R::Five1, R::Five2, R::B1, R::B25});
    return out;
  }
  if (s == SystemId::S5) {
    add({R::T1, R::T2, R::Five1, R::Five2, R::FourR, R::FourL});
    return out;
  }
  const std::string name = system_name(s);
  // Axiom letters after the leading K; the bare names D, T and B stand for KD, KT and KTB.
  std::string letters = name == "D" ? "D" : name == "T" ? "T" : name == "B" ? "TB"
                      : name == "S4" ? "T4" : name.substr(1);
  for (char c : letters) {
    switch (c) {
      case 'D': add({R::D}); break;
      case 'T': add({R::T1, R::T2}); break;
      case '4': add({R::FourR, R::FourL}); break;
      case 'B': add({R::B1, R::B2}); break;
      case '5': add({R::Five1, R::Five2}); break;
      default: break;
    }
  }
  return out;
}

}  // namespace

const char* rule_name(RuleId r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<RuleId> parse_rule(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i)
    if (name == kRuleNames[i]) return static_cast<RuleId>(i);
  return std::nullopt;
}

int rule_arity(RuleId r) {
  switch (r) {
    case RuleId::InitAx:
    case RuleId::InitBot: return 0;
    case RuleId::AndR:
    case RuleId::Cut: return 2;
    default: return 1;
  }
}

const std::array<RuleId, kRuleCount>& all_rules() {
  static const auto rules = [] {
    std::array<RuleId, kRuleCount> out{};
    for (int i = 0; i < kRuleCount; ++i) out[static_cast<std::size_t>(i)] = static_cast<RuleId>(i);
    return out;
  }();
  return rules;
}

const char* system_name(SystemId s) { return kSystemNames[static_cast<std::size_t>(s)]; }

std::optional<SystemId> parse_system(std::string_view name) {
  for (std::size_t i = 0; i < kSystemNames.size(); ++i)
    if (name == kSystemNames[i]) return static_cast<SystemId>(i);
  if (name == "KD") return SystemId::D;
  if (name == "KT") return SystemId::T;
  if (name == "KTB") return SystemId::B;
  if (name == "KT4") return SystemId::S4;
  if (name == "KT5") return SystemId::S5;
  return std::nullopt;
}

const std::array<SystemId, kSystemCount>& all_systems() {
  static const auto systems = [] {
    std::array<SystemId, kSystemCount> out{};
    for (int i = 0; i < kSystemCount; ++i)
      out[static_cast<std::size_t>(i)] = static_cast<SystemId>(i);
    return out;
  }();
  return systems;
}

const std::set<RuleId>& system_rules(SystemId s) {
  static const auto table = [] {
    std::array<std::set<RuleId>, kSystemCount> out;
    for (SystemId sys : all_systems()) out[static_cast<std::size_t>(sys)] = build(sys);
    return out;
  }();
  return table[static_cast<std::size_t>(s)];
}

bool system_has(SystemId s, RuleId r) { return system_rules(s).contains(r); }

Group group_of(SystemId s) {
  switch (s) {
    case SystemId::K:
    case SystemId::D:
    case SystemId::T:
    case SystemId::K4:
    case SystemId::KD4:
    case SystemId::S4: return Group::Alpha;
    case SystemId::KB:
    case SystemId::KDB:
    case SystemId::B: return Group::Gamma;
    default: return Group::Beta;
  }
}

const char* group_name(Group g) {
  switch (g) {
    case Group::Alpha: return "alpha";
    case Group::Beta: return "beta";
    case Group::Gamma: return "gamma";
  }
  return "?";
}

}  // namespace hyperseq
