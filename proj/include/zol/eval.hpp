#pragma once

// Tarskian evaluation by direct recursion over assignments.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zol/errors.hpp"
#include "zol/formula.hpp"
#include "zol/structure.hpp"

namespace zol {

using Assignment = std::map<std::string, Element, std::less<>>;

namespace detail {

class Evaluator {
 public:
  // Quantifiers range over `universe`, a subset of the structure's elements.
  // Relativising to a subset gives the same truth value as evaluating on the
  // induced substructure, without building it.
  Evaluator(const Structure& s, std::span<const Element> universe, const Assignment& outer)
      : s_(s), universe_(universe), outer_(outer) {}

  bool eval(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::True: return true;
      case FormulaKind::False: return false;
      case FormulaKind::Atom: {
        auto sym = s_.vocabulary().find(f.name());
        if (!sym) throw EvalError("unknown relation symbol '" + f.name() + "'");
        if (s_.vocabulary()[*sym].arity != f.variables().size()) {
          throw EvalError("symbol '" + f.name() + "' applied to the wrong number of variables");
        }
        Element args[16];
        std::vector<Element> big;
        std::span<Element> out;
        if (f.variables().size() <= 16) {
          out = std::span<Element>(args, f.variables().size());
        } else {
          big.resize(f.variables().size());
          out = big;
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = lookup(f.variables()[i]);
        return s_.holds(*sym, out);
      }
      case FormulaKind::Equal: return lookup(f.variables()[0]) == lookup(f.variables()[1]);
      case FormulaKind::Not: return !eval(f.body());
      case FormulaKind::And: return eval(f.lhs()) && eval(f.rhs());
      case FormulaKind::Or: return eval(f.lhs()) || eval(f.rhs());
      case FormulaKind::Implies: return !eval(f.lhs()) || eval(f.rhs());
      case FormulaKind::Iff: return eval(f.lhs()) == eval(f.rhs());
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        const bool want = f.kind() == FormulaKind::Exists;
        stack_.emplace_back(f.name(), 0);
        bool result = !want;
        for (Element e : universe_) {
          stack_.back().second = e;
          if (eval(f.body()) == want) {
            result = want;
            break;
          }
        }
        stack_.pop_back();
        return result;
      }
    }
    return false;
  }

 private:
  Element lookup(const std::string& var) const {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
      if (it->first == var) return it->second;
    }
    auto it = outer_.find(var);
    if (it == outer_.end()) throw EvalError("unbound variable '" + var + "'");
    if (it->second >= s_.size()) throw EvalError("variable '" + var + "' assigned outside the universe");
    return it->second;
  }

  const Structure& s_;
  std::span<const Element> universe_;
  const Assignment& outer_;
  std::vector<std::pair<std::string_view, Element>> stack_;
};

inline std::vector<Element> iota_universe(std::size_t n) {
  std::vector<Element> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = static_cast<Element>(i);
  return u;
}

}  // namespace detail

inline bool eval(const Structure& s, const Formula& f, const Assignment& a = {}) {
  const auto universe = detail::iota_universe(s.size());
  return detail::Evaluator(s, universe, a).eval(f);
}

// Truth of the sentence `f` in induced(s, members) without materialising the
// substructure. `members` must be distinct elements of s.
inline bool eval_on_subset(const Structure& s, std::span<const Element> members, const Formula& f) {
  static const Assignment kEmpty;
  return detail::Evaluator(s, members, kEmpty).eval(f);
}

}  // namespace zol
