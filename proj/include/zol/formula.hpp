#pragma once

// First-order formulas with equality over a purely relational vocabulary.
//
// A Formula is an immutable tree shared by reference; copying is cheap.
// print() emits the text grammar accepted by parse_formula() (parser.hpp):
//
//   formula := quant | iff
//   quant   := ("forall" | "exists") ident "." formula
//   iff     := imp {"<->" imp}
//   imp     := or ["->" imp]
//   or      := and {"|" and}
//   and     := unary {"&" unary}
//   unary   := "~" unary | quant | atom
//   atom    := "true" | "false" | ident "(" ident {"," ident} ")"
//            | ident "=" ident | "(" formula ")"
//
// A quantifier's scope extends as far right as possible.

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zol/errors.hpp"
#include "zol/structure.hpp"

namespace zol {

enum class FormulaKind { Atom, Equal, True, False, Not, And, Or, Implies, Iff, Exists, Forall };

class Formula {
 public:
  static Formula atom(std::string symbol, std::vector<std::string> variables) {
    auto n = std::make_shared<Node>(FormulaKind::Atom);
    n->name = std::move(symbol);
    n->variables = std::move(variables);
    return Formula(std::move(n));
  }
  static Formula equal(std::string x, std::string y) {
    auto n = std::make_shared<Node>(FormulaKind::Equal);
    n->variables = {std::move(x), std::move(y)};
    return Formula(std::move(n));
  }
  static Formula truth() { return Formula(std::make_shared<Node>(FormulaKind::True)); }
  static Formula falsity() { return Formula(std::make_shared<Node>(FormulaKind::False)); }
  static Formula negation(Formula f) { return unary(FormulaKind::Not, std::move(f)); }
  static Formula conjunction(Formula a, Formula b) { return binary(FormulaKind::And, std::move(a), std::move(b)); }
  static Formula disjunction(Formula a, Formula b) { return binary(FormulaKind::Or, std::move(a), std::move(b)); }
  static Formula implication(Formula a, Formula b) { return binary(FormulaKind::Implies, std::move(a), std::move(b)); }
  static Formula biconditional(Formula a, Formula b) { return binary(FormulaKind::Iff, std::move(a), std::move(b)); }
  static Formula exists(std::string var, Formula body) { return quantifier(FormulaKind::Exists, std::move(var), std::move(body)); }
  static Formula forall(std::string var, Formula body) { return quantifier(FormulaKind::Forall, std::move(var), std::move(body)); }

  FormulaKind kind() const noexcept { return node_->kind; }

  // Atom: the relation symbol. Exists/Forall: the bound variable.
  const std::string& name() const noexcept { return node_->name; }
  // Atom: argument variables. Equal: the two sides.
  const std::vector<std::string>& variables() const noexcept { return node_->variables; }

  // Not, Exists, Forall: the only child. Binary connectives: left child.
  const Formula& lhs() const { return node_->children.at(0); }
  const Formula& rhs() const { return node_->children.at(1); }
  const Formula& body() const { return node_->children.at(0); }

  bool operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    const Node& a = *node_;
    const Node& b = *other.node_;
    return a.kind == b.kind && a.name == b.name && a.variables == b.variables && a.children == b.children;
  }

  bool is_quantifier() const noexcept { return kind() == FormulaKind::Exists || kind() == FormulaKind::Forall; }

 private:
  struct Node {
    explicit Node(FormulaKind k) : kind(k) {}
    FormulaKind kind;
    std::string name;
    std::vector<std::string> variables;
    std::vector<Formula> children;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Formula unary(FormulaKind k, Formula f) {
    auto n = std::make_shared<Node>(k);
    n->children.push_back(std::move(f));
    return Formula(std::move(n));
  }
  static Formula binary(FormulaKind k, Formula a, Formula b) {
    auto n = std::make_shared<Node>(k);
    n->children.push_back(std::move(a));
    n->children.push_back(std::move(b));
    return Formula(std::move(n));
  }
  static Formula quantifier(FormulaKind k, std::string var, Formula body) {
    if (!is_identifier(var)) throw ArgumentError("bound variable '" + var + "' is not an identifier");
    auto n = std::make_shared<Node>(k);
    n->name = std::move(var);
    n->children.push_back(std::move(body));
    return Formula(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

inline std::size_t quantifier_rank(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Equal:
    case FormulaKind::True:
    case FormulaKind::False:
      return 0;
    case FormulaKind::Not:
      return quantifier_rank(f.body());
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      return 1 + quantifier_rank(f.body());
    default:
      return std::max(quantifier_rank(f.lhs()), quantifier_rank(f.rhs()));
  }
}

namespace detail {

inline void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  auto note = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
  };
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Equal:
      for (const auto& v : f.variables()) note(v);
      return;
    case FormulaKind::True:
    case FormulaKind::False:
      return;
    case FormulaKind::Not:
      collect_free(f.body(), bound, out);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      bound.push_back(f.name());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      return;
    default:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
  }
}

}  // namespace detail

inline std::set<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  detail::collect_free(f, bound, out);
  return out;
}

inline bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

// Throws EvalError if some atom names an unknown symbol or has the wrong
// number of arguments.
inline void validate(const Formula& f, const Vocabulary& vocabulary) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      auto idx = vocabulary.find(f.name());
      if (!idx) throw EvalError("unknown relation symbol '" + f.name() + "'");
      if (vocabulary[*idx].arity != f.variables().size()) {
        throw EvalError("symbol '" + f.name() + "' has arity " + std::to_string(vocabulary[*idx].arity) + " but is applied to " +
                        std::to_string(f.variables().size()) + " variables");
      }
      return;
    }
    case FormulaKind::Equal:
    case FormulaKind::True:
    case FormulaKind::False:
      return;
    case FormulaKind::Not:
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      validate(f.body(), vocabulary);
      return;
    default:
      validate(f.lhs(), vocabulary);
      validate(f.rhs(), vocabulary);
  }
}

namespace detail {

// Binding strength, loosest first; matches the grammar levels.
enum class Level { Formula = 0, Iff, Implies, Or, And, Unary };

inline Level level_of(FormulaKind k) {
  switch (k) {
    case FormulaKind::Iff: return Level::Iff;
    case FormulaKind::Implies: return Level::Implies;
    case FormulaKind::Or: return Level::Or;
    case FormulaKind::And: return Level::And;
    case FormulaKind::Exists:
    case FormulaKind::Forall: return Level::Formula;
    default: return Level::Unary;
  }
}

inline void print_to(const Formula& f, Level context, std::string& out);

inline void print_operand(const Formula& f, Level context, std::string& out) {
  // Quantifiers are parenthesised whenever they are an operand so their
  // scope never swallows a following connective.
  if (f.is_quantifier() || level_of(f.kind()) < context) {
    out += '(';
    print_to(f, Level::Formula, out);
    out += ')';
  } else {
    print_to(f, context, out);
  }
}

inline void print_to(const Formula& f, Level context, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      out += f.name();
      out += '(';
      for (std::size_t i = 0; i < f.variables().size(); ++i) {
        if (i) out += ',';
        out += f.variables()[i];
      }
      out += ')';
      return;
    }
    case FormulaKind::Equal:
      out += f.variables()[0] + " = " + f.variables()[1];
      return;
    case FormulaKind::True:
      out += "true";
      return;
    case FormulaKind::False:
      out += "false";
      return;
    case FormulaKind::Not:
      out += '~';
      print_operand(f.body(), Level::Unary, out);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out += f.kind() == FormulaKind::Exists ? "exists " : "forall ";
      out += f.name();
      out += ". ";
      print_to(f.body(), Level::Formula, out);
      return;
    case FormulaKind::Implies:
      // Right associative: a -> b -> c is a -> (b -> c).
      print_operand(f.lhs(), Level::Or, out);
      out += " -> ";
      print_operand(f.rhs(), Level::Implies, out);
      return;
    default: {
      // Left associative binary connectives.
      const Level lv = level_of(f.kind());
      const char* op = f.kind() == FormulaKind::Iff ? " <-> " : f.kind() == FormulaKind::Or ? " | " : " & ";
      const Level right = static_cast<Level>(static_cast<int>(lv) + 1);
      print_operand(f.lhs(), lv, out);
      out += op;
      print_operand(f.rhs(), right, out);
      return;
    }
  }
  (void)context;
}

}  // namespace detail

inline std::string print(const Formula& f) {
  std::string out;
  detail::print_to(f, detail::Level::Formula, out);
  return out;
}

}  // namespace zol
