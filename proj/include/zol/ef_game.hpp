#pragma once

// Exhaustive Ehrenfeucht-Fraisse game solver.
//
// A position is the set of pebble pairs placed so far. The duplicator wins
// with 0 rounds left iff the pairs form a partial isomorphism; with r+1 rounds
// left iff every spoiler pick on either side has a response that wins with r.
// Positions are memoised on (sorted pairs, rounds left).

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "zol/morphisms.hpp"
#include "zol/structure.hpp"

namespace zol {

class EfSolver {
 public:
  EfSolver(const Structure& a, const Structure& b) : a_(a), b_(b) {
    if (!(a.vocabulary() == b.vocabulary())) throw ArgumentError("EF game between different vocabularies");
    incident_a_ = incidence(a);
    incident_b_ = incidence(b);
  }

  bool duplicator_wins(const PartialMap& position, std::size_t rounds) {
    if (!is_partial_isomorphism(a_, b_, position)) return false;
    return wins(position, rounds);
  }

  std::size_t memo_size() const noexcept { return memo_.size(); }

 private:
  using Incidence = std::vector<std::vector<std::pair<std::size_t, std::size_t>>>;

  static Incidence incidence(const Structure& s) {
    Incidence out(s.size());
    for (std::size_t r = 0; r < s.vocabulary().size(); ++r) {
      const auto tuples = s.tuples(r);
      for (std::size_t t = 0; t < tuples.size(); ++t) {
        Tuple distinct = tuples[t];
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (Element e : distinct) out[e].emplace_back(r, t);
      }
    }
    return out;
  }

  // Whether adding (x, y) to a partial isomorphism keeps it one: only tuples
  // through x (resp. y) can change status.
  bool extends(const PartialMap& m, Element x, Element y) const {
    const PartialMap inv = m.inverse();
    auto img = [&](Element e) -> std::optional<Element> { return e == x ? std::optional<Element>(y) : m.image_of(e); };
    auto pre = [&](Element e) -> std::optional<Element> { return e == y ? std::optional<Element>(x) : inv.image_of(e); };
    Tuple buf;
    for (const auto& [r, t] : incident_a_[x]) {
      buf.clear();
      bool inside = true;
      for (Element e : a_.tuples(r)[t]) {
        auto v = img(e);
        if (!v) {
          inside = false;
          break;
        }
        buf.push_back(*v);
      }
      if (inside && !b_.holds(r, buf)) return false;
    }
    for (const auto& [r, t] : incident_b_[y]) {
      buf.clear();
      bool inside = true;
      for (Element e : b_.tuples(r)[t]) {
        auto v = pre(e);
        if (!v) {
          inside = false;
          break;
        }
        buf.push_back(*v);
      }
      if (inside && !a_.holds(r, buf)) return false;
    }
    return true;
  }

  struct KeyHash {
    std::size_t operator()(const std::vector<Element>& k) const noexcept {
      std::uint64_t h = 1469598103934665603ull;
      for (Element e : k) {
        h ^= e;
        h *= 1099511628211ull;
      }
      return static_cast<std::size_t>(h);
    }
  };

  bool wins(const PartialMap& m, std::size_t rounds) {
    if (rounds == 0) return true;
    std::vector<Element> key;
    key.reserve(2 * m.size() + 1);
    for (const auto& [s, t] : m.pairs()) {
      key.push_back(s);
      key.push_back(t);
    }
    key.push_back(static_cast<Element>(rounds));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // Re-picking a pebbled element leaves the position unchanged with fewer
    // rounds, which is never better for the spoiler; only fresh picks count.
    bool result = spoiler_side_fails(m, rounds, /*spoiler_in_a=*/true) &&
                  spoiler_side_fails(m, rounds, /*spoiler_in_a=*/false);
    memo_.emplace(std::move(key), result);
    return result;
  }

  // True iff every fresh spoiler pick on the given side has a winning reply.
  bool spoiler_side_fails(const PartialMap& m, std::size_t rounds, bool spoiler_in_a) {
    const Structure& picked = spoiler_in_a ? a_ : b_;
    const Structure& other = spoiler_in_a ? b_ : a_;
    for (Element pick = 0; pick < picked.size(); ++pick) {
      const bool used = spoiler_in_a ? m.image_of(pick).has_value() : m.preimage_of(pick).has_value();
      if (used) continue;
      bool answered = false;
      for (Element reply = 0; reply < other.size() && !answered; ++reply) {
        const bool taken = spoiler_in_a ? m.preimage_of(reply).has_value() : m.image_of(reply).has_value();
        if (taken) continue;
        const Element x = spoiler_in_a ? pick : reply;
        const Element y = spoiler_in_a ? reply : pick;
        if (!extends(m, x, y)) continue;
        PartialMap next = m;
        next.insert(x, y);
        answered = wins(next, rounds - 1);
      }
      if (!answered) return false;
    }
    return true;
  }

  const Structure& a_;
  const Structure& b_;
  Incidence incident_a_, incident_b_;
  std::unordered_map<std::vector<Element>, bool, KeyHash> memo_;
};

// Whether the duplicator wins the n-round game on (a, b) from the empty
// position, i.e. a and b agree on all sentences of quantifier rank <= n.
inline bool ef_equivalent(const Structure& a, const Structure& b, std::size_t rounds) {
  EfSolver solver(a, b);
  return solver.duplicator_wins(PartialMap{}, rounds);
}

}  // namespace zol
