#include <algorithm>

#include "hyperseq/derived.hpp"

namespace hyperseq::macro {

namespace {

std::vector<Sequent> side_of(const Proof& p, int seq) {
  std::vector<Sequent> out;
  for (std::size_t i = 0; i < p->conclusion.size(); ++i)
    if (static_cast<int>(i) != seq) out.push_back(p->conclusion[i]);
  return out;
}

std::vector<Formula> without(const std::vector<Formula>& fs, int k) {
  std::vector<Formula> out;
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (static_cast<int>(i) != k) out.push_back(fs[i]);
  return out;
}

Proof weaken_with(Proof p, int seq, const std::vector<Formula>& ant, const std::vector<Formula>& suc) {
  for (const auto& f : ant) p = pb::iw_l(p, seq, f);
  for (const auto& f : suc) p = pb::iw_r(p, seq, f);
  return p;
}

}  // namespace

Proof append(Proof p, const std::vector<Sequent>& side) {
  for (const auto& s : side) p = pb::ew(p, s);
  return p;
}

Proof weaken_to(Proof p, int seq, const Sequent& target) {
  for (Side side : {Side::Ant, Side::Suc}) {
    std::vector<Formula> have = seq_of(p, seq).side(side);
    for (const auto& f : target.side(side)) {
      auto it = std::find(have.begin(), have.end(), f);
      if (it != have.end()) {
        have.erase(it);
        continue;
      }
      p = side == Side::Ant ? pb::iw_l(p, seq, f) : pb::iw_r(p, seq, f);
    }
  }
  return p;
}

Proof merge_all(Proof p, std::vector<int> seqs, int* at) {
  if (seqs.empty()) throw std::invalid_argument("merge_all needs at least one sequent");
  int target = seqs[0];
  for (std::size_t k = 1; k < seqs.size(); ++k) {
    const int j = seqs[k];
    p = pb::merge(p, target, j);
    if (j < target) --target;
    for (std::size_t r = k + 1; r < seqs.size(); ++r)
      if (seqs[r] > j) --seqs[r];
  }
  if (at) *at = target;
  return p;
}

Proof imp_l(Proof p, int seq, int idx, Proof q, int seq2, int idx2) {
  const Sequent s = seq_of(p, seq);
  const Sequent t = seq_of(q, seq2);
  const Formula b = t.ant.at(static_cast<std::size_t>(idx2));
  const auto hp = side_of(p, seq);
  const auto hq = side_of(q, seq2);
  p = weaken_with(append(p, hq), seq, without(t.ant, idx2), t.suc);
  q = weaken_with(append(q, hp), seq2, s.ant, without(s.suc, idx));
  q = pb::neg_r(q, seq2, idx2);
  const int nb = find_formula(seq_of(q, seq2), Side::Suc, Formula::neg(b));
  p = pb::and_r(p, q, seq, idx, seq2, nb);
  return pb::neg_l(p, seq, idx);
}

Proof imp_r(Proof p, int seq, int ant_idx, int suc_idx) {
  const Formula a = seq_of(p, seq).ant.at(static_cast<std::size_t>(ant_idx));
  const Formula b = seq_of(p, seq).suc.at(static_cast<std::size_t>(suc_idx));
  p = pb::neg_l(p, seq, suc_idx);
  const int nb = static_cast<int>(seq_of(p, seq).ant.size()) - 1;
  p = pb::and_l1(p, seq, ant_idx, Formula::neg(b));
  p = pb::and_l2(p, seq, nb, a);
  p = pb::ic_l(p, seq, ant_idx, nb);
  return pb::neg_r(p, seq, ant_idx);
}

Proof or_l(Proof p, int seq, int idx, Proof q, int seq2, int idx2) {
  const Sequent s = seq_of(p, seq);
  const Sequent t = seq_of(q, seq2);
  const auto hp = side_of(p, seq);
  const auto hq = side_of(q, seq2);
  p = weaken_with(append(p, hq), seq, without(t.ant, idx2), t.suc);
  q = weaken_with(append(q, hp), seq2, without(s.ant, idx), s.suc);
  p = pb::neg_r(p, seq, idx);
  q = pb::neg_r(q, seq2, idx2);
  p = pb::and_r(p, q, seq, static_cast<int>(seq_of(p, seq).suc.size()) - 1, seq2,
                static_cast<int>(seq_of(q, seq2).suc.size()) - 1);
  return pb::neg_l(p, seq, static_cast<int>(seq_of(p, seq).suc.size()) - 1);
}

Proof or_r(Proof p, int seq, int idx_a, int idx_b) {
  if (idx_a == idx_b) throw std::invalid_argument("or_r needs two distinct positions");
  const Formula a = seq_of(p, seq).suc.at(static_cast<std::size_t>(idx_a));
  const Formula b = seq_of(p, seq).suc.at(static_cast<std::size_t>(idx_b));
  p = pb::neg_l(p, seq, std::max(idx_a, idx_b));
  p = pb::neg_l(p, seq, std::min(idx_a, idx_b));
  const int n = static_cast<int>(seq_of(p, seq).ant.size());
  // The later position was moved first, so it sits at n - 2.
  const int na = idx_a > idx_b ? n - 2 : n - 1;
  const int nb = idx_a > idx_b ? n - 1 : n - 2;
  p = pb::and_l1(p, seq, na, Formula::neg(b));
  p = pb::and_l2(p, seq, nb, Formula::neg(a));
  p = pb::ic_l(p, seq, n - 2, n - 1);
  return pb::neg_r(p, seq, n - 2);
}

Proof mcut(Proof p, int seq, int idx, Proof q, int seq2, int idx2) {
  const auto hp = side_of(p, seq);
  const auto hq = side_of(q, seq2);
  return pb::cut(append(p, hq), append(q, hp), seq, idx, seq2, idx2);
}

Proof eta_initial(const Formula& a, Sort s) {
  if (s == Sort::Modal) return pb::nec2(eta_initial(a, Sort::Plain));
  switch (a.op()) {
    case Op::Atom: return pb::ax(a);
    case Op::Bot: return pb::iw_r(pb::bot(), 0, a);
    case Op::Neg: {
      Proof p = pb::neg_l(eta_initial(a.sub(), Sort::Plain), 0, 0);
      return pb::neg_r(p, 0, 0);
    }
    case Op::And: {
      Proof l = pb::and_l1(eta_initial(a.left(), Sort::Plain), 0, 0, a.right());
      Proof r = pb::and_l2(eta_initial(a.right(), Sort::Plain), 0, 0, a.left());
      return pb::and_r(l, r, 0, 0, 0, 0);
    }
    case Op::Box: {
      Proof p = pb::k(pb::nec2(eta_initial(a.sub(), Sort::Plain)), 0, 0);
      p = pb::nec1(p, 0);
      return pb::merge(p, 1, 0);
    }
  }
  return pb::ax(a);
}

namespace {

bool subset(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  return std::all_of(a.begin(), a.end(),
                     [&](const Formula& f) { return std::find(b.begin(), b.end(), f) != b.end(); });
}

bool seq_subset(const Sequent& a, const Sequent& b) {
  return a.sort == b.sort && subset(a.ant, b.ant) && subset(a.suc, b.suc);
}

int modal_target(const Sequent& s, const Hypersequent& y) {
  for (std::size_t t = 0; t < y.size(); ++t)
    if (seq_subset(s, y[t])) return static_cast<int>(t);
  return -1;
}

int plain_target(const Formula& f, Side side, const Hypersequent& y) {
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (y[t].sort != Sort::Plain) continue;
    const auto& fs = y[t].side(side);
    if (std::find(fs.begin(), fs.end(), f) != fs.end()) return static_cast<int>(t);
  }
  return -1;
}

std::vector<int> of_sort(const Hypersequent& h, Sort s) {
  std::vector<int> out;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i].sort == s) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace

Proof adjust(Proof p, int seq, const Sequent& target) {
  for (Side side : {Side::Ant, Side::Suc}) {
    bool again = true;
    while (again) {
      again = false;
      const auto& fs = seq_of(p, seq).side(side);
      const auto& want = target.side(side);
      for (std::size_t a = 0; !again && a < fs.size(); ++a) {
        const auto have = std::count(fs.begin(), fs.end(), fs[a]);
        const auto need = std::count(want.begin(), want.end(), fs[a]);
        if (need == 0) throw std::invalid_argument("adjust: " + to_string(fs[a]) + " is not in the target");
        if (have <= need) continue;
        const auto b = std::find(fs.begin() + static_cast<long>(a) + 1, fs.end(), fs[a]) - fs.begin();
        p = side == Side::Ant ? pb::ic_l(p, seq, static_cast<int>(a), static_cast<int>(b))
                              : pb::ic_r(p, seq, static_cast<int>(a), static_cast<int>(b));
        again = true;
      }
    }
  }
  return weaken_to(p, seq, target);
}

bool embeds(const Hypersequent& x, const Hypersequent& y) {
  bool has_plain = false;
  for (const auto& s : x.seqs) {
    if (s.sort == Sort::Modal) {
      if (modal_target(s, y) < 0) return false;
      continue;
    }
    has_plain = true;
    for (Side side : {Side::Ant, Side::Suc})
      for (const auto& f : s.side(side))
        if (plain_target(f, side, y) < 0) return false;
  }
  return !has_plain || !of_sort(y, Sort::Plain).empty();
}

Proof fit(Proof p, const Hypersequent& y) {
  if (!embeds(p->conclusion, y))
    throw std::invalid_argument("fit: " + to_string(p->conclusion) + " does not embed into " + to_string(y));
  // Modal sequents sharing a target are merged pairwise.
  for (bool again = true; again;) {
    again = false;
    std::vector<int> first(y.size(), -1);
    for (int i : of_sort(p->conclusion, Sort::Modal)) {
      const int t = modal_target(seq_of(p, i), y);
      if (first[static_cast<std::size_t>(t)] < 0) {
        first[static_cast<std::size_t>(t)] = i;
      } else {
        p = pb::merge(p, first[static_cast<std::size_t>(t)], i);
        again = true;
        break;
      }
    }
  }
  std::vector<bool> hit(y.size(), false);
  for (int i : of_sort(p->conclusion, Sort::Modal)) {
    const int t = modal_target(seq_of(p, i), y);
    hit[static_cast<std::size_t>(t)] = true;
    p = adjust(p, i, y[static_cast<std::size_t>(t)]);
  }
  // Plain sequents: merge into one, reduce to a set, split along the targets.
  std::vector<int> plain = of_sort(p->conclusion, Sort::Plain);
  if (!plain.empty()) {
    int q = plain[0];
    if (plain.size() > 1) p = merge_all(p, plain, &q);
    Sequent set{Sort::Plain, {}, {}};
    for (Side side : {Side::Ant, Side::Suc})
      for (const auto& f : seq_of(p, q).side(side))
        if (std::find(set.side(side).begin(), set.side(side).end(), f) == set.side(side).end())
          set.side(side).push_back(f);
    const std::vector<int> targets = of_sort(y, Sort::Plain);
    p = adjust(p, q, set);
    std::vector<std::pair<int, int>> pieces{{q, targets[0]}};
    for (std::size_t t = 1; t < targets.size(); ++t) {
      std::vector<int> pa;
      std::vector<int> ps;
      for (Side side : {Side::Ant, Side::Suc}) {
        const auto& fs = seq_of(p, q).side(side);
        for (std::size_t k = 0; k < fs.size(); ++k)
          if (plain_target(fs[k], side, y) == targets[t])
            (side == Side::Ant ? pa : ps).push_back(static_cast<int>(k));
      }
      p = pb::split(p, q, pa, ps);
      pieces.push_back({static_cast<int>(p->conclusion.size()) - 1, targets[t]});
    }
    for (const auto& [i, t] : pieces) {
      hit[static_cast<std::size_t>(t)] = true;
      p = adjust(p, i, y[static_cast<std::size_t>(t)]);
    }
  }
  for (std::size_t t = 0; t < y.size(); ++t)
    if (!hit[t]) p = pb::ew(p, y[t]);
  return p;
}

}  // namespace hyperseq::macro
