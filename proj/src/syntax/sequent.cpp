#include "hyperseq/sequent.hpp"

#include <algorithm>

#include "lexer.hpp"

namespace hyperseq {

const char* arrow(Sort s) { return s == Sort::Modal ? "=>" : "->"; }

namespace {

int compare_lists(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = a[i].compare(b[i]);
    if (c != 0) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

void append_list(std::string& out, const std::vector<Formula>& fs) {
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(fs[i]);
  }
}

}  // namespace

bool multiset_equal(std::vector<Formula> a, std::vector<Formula> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

bool Sequent::equiv(const Sequent& o) const {
  return sort == o.sort && multiset_equal(ant, o.ant) && multiset_equal(suc, o.suc);
}

Sequent Sequent::normalized() const {
  Sequent s = *this;
  std::sort(s.ant.begin(), s.ant.end());
  std::sort(s.suc.begin(), s.suc.end());
  return s;
}

int Sequent::compare(const Sequent& o) const {
  if (sort != o.sort) return sort < o.sort ? -1 : 1;
  const Sequent a = normalized();
  const Sequent b = o.normalized();
  const int c = compare_lists(a.ant, b.ant);
  return c != 0 ? c : compare_lists(a.suc, b.suc);
}

Hypersequent Hypersequent::normalized() const {
  Hypersequent h;
  h.seqs.reserve(seqs.size());
  for (const auto& s : seqs) h.seqs.push_back(s.normalized());
  std::sort(h.seqs.begin(), h.seqs.end(),
            [](const Sequent& a, const Sequent& b) { return a.compare(b) < 0; });
  return h;
}

bool Hypersequent::equiv(const Hypersequent& o) const {
  if (seqs.size() != o.seqs.size()) return false;
  return normalized() == o.normalized();
}

Sequent parse_sequent(std::string_view text) {
  detail::Parser p(text);
  Sequent s = p.sequent();
  p.expect_end();
  return s;
}

Hypersequent parse_hypersequent(std::string_view text) {
  detail::Parser p(text);
  Hypersequent h = p.hypersequent();
  p.expect_end();
  return h;
}

std::string to_string(const Sequent& s) {
  std::string out;
  append_list(out, s.ant);
  if (!s.ant.empty()) out += ' ';
  out += arrow(s.sort);
  if (!s.suc.empty()) out += ' ';
  append_list(out, s.suc);
  return out;
}

std::string to_string(const Hypersequent& h) {
  std::string out;
  for (std::size_t i = 0; i < h.seqs.size(); ++i) {
    if (i > 0) out += " || ";
    out += to_string(h.seqs[i]);
  }
  return out;
}

Formula big_and(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(acc, fs[i]);
  return acc;
}

Formula big_or(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bot();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::disj(acc, fs[i]);
  return acc;
}

Formula formula_image(const Sequent& s) {
  Formula body = Formula::imp(big_and(s.ant), big_or(s.suc));
  return s.sort == Sort::Modal ? Formula::box(body) : body;
}

Formula hyper_image(const Hypersequent& h) {
  std::vector<Formula> images;
  images.reserve(h.seqs.size());
  for (const auto& s : h.seqs) images.push_back(formula_image(s));
  return big_or(images);
}

Sequent concat_sequents(const Sequent& a, const Sequent& b) {
  if (a.sort != b.sort)
    throw SortMismatch("cannot concatenate '" + to_string(a) + "' and '" + to_string(b) + "'");
  Sequent out = a;
  out.ant.insert(out.ant.end(), b.ant.begin(), b.ant.end());
  out.suc.insert(out.suc.end(), b.suc.begin(), b.suc.end());
  return out;
}

Sequent concat_hyper(const Hypersequent& h) {
  if (h.seqs.empty()) throw SortMismatch("cannot concatenate an empty hypersequent");
  Sequent acc = h.seqs.front();
  for (std::size_t i = 1; i < h.seqs.size(); ++i) acc = concat_sequents(acc, h.seqs[i]);
  return acc;
}

}  // namespace hyperseq
