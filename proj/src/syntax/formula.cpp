#include "hyperseq/formula.hpp"

#include <functional>
#include <utility>

#include "lexer.hpp"

namespace hyperseq {

struct Formula::Node {
  Op op;
  std::string name;
  Formula a{std::shared_ptr<const Node>()};
  Formula b{std::shared_ptr<const Node>()};
  std::size_t hash = 0;
  int degree = 0;
  std::size_t size = 1;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula::Formula() : Formula(bot()) {}

Formula::Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

Formula Formula::bot() {
  static const Formula shared = [] {
    auto n = std::make_shared<Node>();
    n->op = Op::Bot;
    n->hash = mix(0, 1);
    return Formula(std::shared_ptr<const Node>(std::move(n)));
  }();
  return shared;
}

Formula Formula::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Atom;
  n->hash = mix(2, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::neg(const Formula& a) {
  auto n = std::make_shared<Node>();
  n->op = Op::Neg;
  n->a = a;
  n->hash = mix(3, a.hash());
  n->degree = a.degree() + 1;
  n->size = a.size() + 1;
  return Formula(std::move(n));
}

Formula Formula::conj(const Formula& a, const Formula& b) {
  auto n = std::make_shared<Node>();
  n->op = Op::And;
  n->a = a;
  n->b = b;
  n->hash = mix(mix(4, a.hash()), b.hash());
  n->degree = a.degree() + b.degree() + 1;
  n->size = a.size() + b.size() + 1;
  return Formula(std::move(n));
}

Formula Formula::box(const Formula& a) {
  auto n = std::make_shared<Node>();
  n->op = Op::Box;
  n->a = a;
  n->hash = mix(5, a.hash());
  n->degree = a.degree() + 1;
  n->size = a.size() + 1;
  return Formula(std::move(n));
}

Formula Formula::top() { return neg(bot()); }
Formula Formula::disj(const Formula& a, const Formula& b) { return neg(conj(neg(a), neg(b))); }
Formula Formula::imp(const Formula& a, const Formula& b) { return neg(conj(a, neg(b))); }
Formula Formula::dia(const Formula& a) { return neg(box(neg(a))); }

Op Formula::op() const { return n_->op; }
const std::string& Formula::name() const { return n_->name; }
const Formula& Formula::sub() const { return n_->a; }
const Formula& Formula::left() const { return n_->a; }
const Formula& Formula::right() const { return n_->b; }
int Formula::degree() const { return n_->degree; }
std::size_t Formula::size() const { return n_->size; }
std::size_t Formula::hash() const { return n_->hash; }

int Formula::compare(const Formula& o) const {
  if (n_ == o.n_) return 0;
  if (op() != o.op()) return op() < o.op() ? -1 : 1;
  switch (op()) {
    case Op::Bot:
      return 0;
    case Op::Atom:
      return name().compare(o.name()) < 0 ? -1 : (name() == o.name() ? 0 : 1);
    case Op::Neg:
    case Op::Box:
      return sub().compare(o.sub());
    case Op::And: {
      const int c = left().compare(o.left());
      return c != 0 ? c : right().compare(o.right());
    }
  }
  return 0;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return true;
  if (a.hash() != b.hash()) return false;
  return a.compare(b) == 0;
}

void Formula::collect_atoms(std::set<std::string>& out) const {
  switch (op()) {
    case Op::Bot: return;
    case Op::Atom: out.insert(name()); return;
    case Op::Neg:
    case Op::Box: sub().collect_atoms(out); return;
    case Op::And:
      left().collect_atoms(out);
      right().collect_atoms(out);
      return;
  }
}

void Formula::collect_subformulas(std::set<Formula>& out) const {
  if (!out.insert(*this).second) return;
  switch (op()) {
    case Op::Neg:
    case Op::Box: sub().collect_subformulas(out); return;
    case Op::And:
      left().collect_subformulas(out);
      right().collect_subformulas(out);
      return;
    default: return;
  }
}

ParseError::ParseError(std::size_t pos, const std::string& msg)
    : std::runtime_error("parse error at " + std::to_string(pos) + ": " + msg), pos_(pos) {}

Formula parse_formula(std::string_view text) {
  detail::Parser p(text);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

namespace {

enum class Shape { Leaf, Unary, Binary };

struct View {
  Shape shape;
  const char* symbol;
  Formula a;
  Formula b;
};

// Re-sugaring view of a node: disjunction first, then implication, then diamond.
View view(const Formula& f) {
  switch (f.op()) {
    case Op::Bot:
    case Op::Atom:
      return {Shape::Leaf, "", {}, {}};
    case Op::Box:
      return {Shape::Unary, "box", f.sub(), {}};
    case Op::And:
      return {Shape::Binary, "&", f.left(), f.right()};
    case Op::Neg: {
      const Formula& s = f.sub();
      if (s.is(Op::And)) {
        if (s.left().is(Op::Neg) && s.right().is(Op::Neg))
          return {Shape::Binary, "|", s.left().sub(), s.right().sub()};
        if (s.right().is(Op::Neg)) return {Shape::Binary, ">", s.left(), s.right().sub()};
      }
      if (s.is(Op::Box) && s.sub().is(Op::Neg)) return {Shape::Unary, "dia", s.sub().sub(), {}};
      return {Shape::Unary, "~", s, {}};
    }
  }
  return {Shape::Leaf, "", {}, {}};
}

void render(const Formula& f, std::string& out, bool sugar);

void render_operand(const Formula& f, std::string& out, bool sugar) {
  const bool binary = sugar ? view(f).shape == Shape::Binary : f.is(Op::And);
  if (binary) out += '(';
  render(f, out, sugar);
  if (binary) out += ')';
}

void render(const Formula& f, std::string& out, bool sugar) {
  if (f.is(Op::Bot)) {
    out += "bot";
    return;
  }
  if (f.is(Op::Atom)) {
    out += f.name();
    return;
  }
  View v = sugar ? view(f) : View{};
  if (!sugar) {
    if (f.is(Op::And)) v = {Shape::Binary, "&", f.left(), f.right()};
    else v = {Shape::Unary, f.is(Op::Box) ? "box" : "~", f.sub(), {}};
  }
  if (v.shape == Shape::Binary) {
    render_operand(v.a, out, sugar);
    out += ' ';
    out += v.symbol;
    out += ' ';
    render_operand(v.b, out, sugar);
    return;
  }
  out += v.symbol;
  const bool binary = sugar ? view(v.a).shape == Shape::Binary : v.a.is(Op::And);
  if (binary) {
    out += '(';
    render(v.a, out, sugar);
    out += ')';
  } else {
    if (v.symbol[0] != '~') out += ' ';
    render(v.a, out, sugar);
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  render(f, out, true);
  return out;
}

std::string to_primitive_string(const Formula& f) {
  std::string out;
  render(f, out, false);
  return out;
}

}  // namespace hyperseq
