#pragma once

// The ball-isomorphism strategy for the duplicator on two ambient structures
// with the disjoint ball extension property, and concrete checks of the
// distance properties of ball isomorphisms.
//
// Before round i+1 of an n-round game the state is an isomorphism alpha from
// B_r(F) onto B_r(F'), r = 5^(n-i), where F and F' are the elements picked so
// far in X and X2. A pick x (by symmetry in X) is answered by restriction when
// B_r'(x) lies in B_(r-1)(F), r' = 5^(n-i-1); otherwise B_r'(x) is far from F
// and an isomorphic ball is located in X2 away from alpha(B_r'(F)).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zol/ambient.hpp"
#include "zol/errors.hpp"
#include "zol/morphisms.hpp"
#include "zol/structure.hpp"
#include "zol/structure_io.hpp"

namespace zol {

enum class Side { A, B };

inline std::size_t pow5(std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= 5;
  return r;
}

struct StrategyState {
  std::size_t n = 0;
  std::size_t i = 0;
  std::vector<std::pair<VertexId, VertexId>> picks;  // (element of X, element of X2)
  std::map<VertexId, VertexId> alpha;

  std::size_t radius() const { return pow5(n - i); }
};

enum class Branch { Restriction, DisjointBall };

inline const char* to_string(Branch b) { return b == Branch::Restriction ? "restriction" : "disjoint-ball"; }

struct StrategyMove {
  VertexId response;
  StrategyState state;
  Branch branch;
};

inline std::size_t default_radius_cap(std::size_t n) { return 4 * pow5(n); }

namespace detail {

inline std::vector<VertexId> ball_ids(const AmbientGenerator& g, const std::vector<VertexId>& centers, std::size_t r) {
  if (centers.empty()) return {};
  return ball_of(g, centers, r).vertices;
}

// Answers a pick in `x` against `x2`, with picks and alpha oriented from x to x2.
inline StrategyMove respond(const AmbientGenerator& x, const AmbientGenerator& x2, const StrategyState& state,
                            const VertexId& pick, std::size_t radius_cap) {
  const std::size_t r = state.radius();
  const std::size_t r1 = r / 5;
  std::vector<VertexId> f;
  for (const auto& pr : state.picks) f.push_back(pr.first);

  StrategyMove move;
  move.state.n = state.n;
  move.state.i = state.i + 1;
  move.state.picks = state.picks;

  const auto pick_ball = ball_ids(x, {pick}, r1);
  if (!f.empty()) {
    const auto inner = ball_ids(x, f, r - 1);
    const std::set<VertexId> inner_set(inner.begin(), inner.end());
    const bool inside =
        std::all_of(pick_ball.begin(), pick_ball.end(), [&](const VertexId& v) { return inner_set.count(v) > 0; });
    if (inside) {
      move.branch = Branch::Restriction;
      move.response = state.alpha.at(pick);
      move.state.picks.emplace_back(pick, move.response);
      std::vector<VertexId> f1 = f;
      f1.push_back(pick);
      for (const auto& v : ball_ids(x, f1, r1)) move.state.alpha.emplace(v, state.alpha.at(v));
      return move;
    }
  }

  // Keep alpha on B_r'(F) and block its image together with all neighbours.
  std::set<VertexId> blocked;
  for (const auto& v : ball_ids(x, f, r1)) {
    const VertexId& w = state.alpha.at(v);
    move.state.alpha.emplace(v, w);
    blocked.insert(w);
    for (const auto& u : x2.neighbors(w)) blocked.insert(u);
  }
  const BallPatch target = ball_of(x, pick, r1);
  // Rings around the base point, expanded one layer at a time since the
  // generator may grow exponentially.
  std::set<VertexId> seen{x2.base_point()};
  std::vector<VertexId> ring{x2.base_point()};
  for (std::size_t d = 0; d <= radius_cap && !ring.empty(); ++d) {
    std::sort(ring.begin(), ring.end(), [&](const VertexId& a, const VertexId& b) { return x2.precedes(a, b); });
    for (const auto& c : ring) {
      if (blocked.count(c)) continue;
      const BallPatch cand = ball_of(x2, c, r1);
      if (cand.structure.size() != target.structure.size()) continue;
      if (std::any_of(cand.vertices.begin(), cand.vertices.end(), [&](const VertexId& v) { return blocked.count(v) > 0; })) {
        continue;
      }
      const auto beta = detail::centered_isomorphism(target, cand);
      if (!beta) continue;
      for (std::size_t j = 0; j < target.vertices.size(); ++j) {
        move.state.alpha.emplace(target.vertices[j], cand.vertices[(*beta)[j]]);
      }
      move.branch = Branch::DisjointBall;
      move.response = c;
      move.state.picks.emplace_back(pick, c);
      return move;
    }
    std::vector<VertexId> next;
    for (const auto& u : ring) {
      for (const auto& v : x2.neighbors(u)) {
        if (seen.insert(v).second) next.push_back(v);
      }
    }
    ring = std::move(next);
  }
  throw BudgetError("no disjoint isomorphic ball of radius " + std::to_string(r1) + " within distance " +
                    std::to_string(radius_cap) + " of the base point");
}

inline StrategyState flipped(const StrategyState& s) {
  StrategyState out;
  out.n = s.n;
  out.i = s.i;
  for (const auto& [a, b] : s.picks) out.picks.emplace_back(b, a);
  for (const auto& [a, b] : s.alpha) out.alpha.emplace(b, a);
  return out;
}

}  // namespace detail

// One duplicator move. Throws ArgumentError on an exhausted game or an
// invalid pick, BudgetError when no suitable ball lies within `radius_cap`
// of the base point of the responding structure.
inline StrategyMove duplicator_strategy_move(const AmbientGenerator& x, const AmbientGenerator& x2,
                                             const StrategyState& state, Side side, const VertexId& pick,
                                             std::optional<std::size_t> radius_cap = std::nullopt) {
  if (!(x.vocabulary() == x2.vocabulary())) throw ArgumentError("strategy between different vocabularies");
  if (state.i >= state.n) throw ArgumentError("the game is over: all " + std::to_string(state.n) + " rounds played");
  if (state.n > 4) throw GuardError("strategy radii 5^n are limited to n <= 4");
  const std::size_t cap = radius_cap.value_or(default_radius_cap(state.n));
  if (side == Side::A) {
    x.validate(pick);
    return detail::respond(x, x2, state, pick, cap);
  }
  x2.validate(pick);
  StrategyMove move = detail::respond(x2, x, detail::flipped(state), pick, cap);
  move.state = detail::flipped(move.state);
  return move;
}

struct StateCheck {
  bool ok = true;
  std::string detail;
};

// Re-derives both balls from the generators and checks that alpha is an
// isomorphism from B_r(F) onto B_r(F') carrying each pick to its answer.
inline StateCheck verify_strategy_state(const AmbientGenerator& x, const AmbientGenerator& x2,
                                        const StrategyState& state) {
  if (state.picks.size() != state.i) return {false, "number of picks differs from the round counter"};
  if (state.i == 0) return {state.alpha.empty(), state.alpha.empty() ? "" : "nonempty map before the first round"};
  std::vector<VertexId> f, f2;
  for (const auto& [a, b] : state.picks) {
    f.push_back(a);
    f2.push_back(b);
    auto it = state.alpha.find(a);
    if (it == state.alpha.end() || it->second != b) return {false, "pick " + a + " is not mapped to its answer " + b};
  }
  const std::size_t r = state.radius();
  const BallPatch dom = ball_of(x, f, r);
  const BallPatch cod = ball_of(x2, f2, r);
  if (dom.vertices.size() != state.alpha.size()) return {false, "domain differs from B_" + std::to_string(r) + "(F)"};
  if (cod.vertices.size() != dom.vertices.size()) return {false, "balls of different sizes"};
  PartialMap m;
  for (const auto& [a, b] : state.alpha) {
    auto ia = dom.local_index(a);
    auto ib = cod.local_index(b);
    if (!ia) return {false, a + " lies outside B_" + std::to_string(r) + "(F)"};
    if (!ib) return {false, b + " lies outside B_" + std::to_string(r) + "(F')"};
    if (!m.insert(*ia, *ib)) return {false, "map is not injective at " + b};
  }
  if (!is_partial_isomorphism(dom.structure, cod.structure, m)) return {false, "map does not preserve relations"};
  return {};
}

struct ClaimReport {
  int claim;
  std::optional<bool> pass;  // empty when the claim's hypothesis fails
  Json witness;
};

inline Json to_json(const ClaimReport& c) {
  Json j;
  j["claim"] = c.claim;
  j["pass"] = c.pass ? Json(*c.pass) : Json(nullptr);
  j["witness"] = c.witness;
  return j;
}

// For an isomorphism alpha from induced(B_n(Y)) into x2, checks:
//   1. an edge from B_(n-1)(Y) to B_n(Y) maps to an edge;
//   2. d(v, Y) >= d(alpha(v), alpha(Y)) on B_n(Y);
//   3. alpha(B_n(Y)) lies in B_n(alpha(Y));
//   4. when alpha is onto B_n(alpha(Y)), distances to Y are preserved.
inline std::vector<ClaimReport> check_ball_iso_props(const Structure& x, const SubsetMask& y, std::size_t n,
                                                     const PartialMap& alpha, const Structure& x2) {
  if (y.parent_size() != x.size()) throw ArgumentError("Y does not match the structure");
  if (y.empty()) throw ArgumentError("Y must be nonempty");
  const GaifmanGraph g = gaifman(x);
  const GaifmanGraph g2 = gaifman(x2);
  const auto ys = y.members();
  const auto dist = distances_from(g, ys);
  std::vector<Element> dom;
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (dist[v] && *dist[v] <= n) dom.push_back(static_cast<Element>(v));
  }
  if (alpha.domain() != dom) throw ArgumentError("alpha is not defined exactly on B_n(Y)");
  for (Element v : alpha.range()) detail::check_element(x2.size(), v);
  if (!is_partial_isomorphism(x, x2, alpha)) throw ArgumentError("alpha is not an isomorphism onto its image");

  std::vector<Element> ay;
  for (Element v : ys) ay.push_back(*alpha.image_of(v));
  const auto dist2 = distances_from(g2, ay);
  auto d2 = [&](Element v) { return dist2[*alpha.image_of(v)]; };
  auto far = [](const std::optional<std::size_t>& d) { return d ? Json(*d) : Json("inf"); };

  std::vector<ClaimReport> out;
  ClaimReport c1{1, true, nullptr};
  for (Element u : dom) {
    if (n == 0 || *dist[u] > n - 1) continue;
    for (Element v : g.neighbors(u)) {
      if (!dist[v] || *dist[v] > n) continue;
      if (!g2.adjacent(*alpha.image_of(u), *alpha.image_of(v))) {
        c1.pass = false;
        c1.witness = {{"x1", u}, {"x2", v}};
        break;
      }
    }
    if (!*c1.pass) break;
  }
  out.push_back(std::move(c1));

  ClaimReport c2{2, true, nullptr};
  ClaimReport c3{3, true, nullptr};
  for (Element v : dom) {
    const auto dv = d2(v);
    if (c2.pass.value() && (!dv || *dv > *dist[v])) {
      c2.pass = false;
      c2.witness = {{"x", v}, {"d", *dist[v]}, {"d_image", far(dv)}};
    }
    if (c3.pass.value() && (!dv || *dv > n)) {
      c3.pass = false;
      c3.witness = {{"x", v}, {"d_image", far(dv)}};
    }
  }
  out.push_back(std::move(c2));
  out.push_back(std::move(c3));

  std::vector<Element> target;
  for (std::size_t v = 0; v < x2.size(); ++v) {
    if (dist2[v] && *dist2[v] <= n) target.push_back(static_cast<Element>(v));
  }
  ClaimReport c4{4, std::nullopt, nullptr};
  if (alpha.range() != target) {
    c4.witness = {{"reason", "alpha is not onto B_n(alpha(Y))"}};
  } else {
    c4.pass = true;
    for (Element v : dom) {
      if (d2(v) != dist[v]) {
        c4.pass = false;
        c4.witness = {{"x", v}, {"d", *dist[v]}, {"d_image", far(d2(v))}};
        break;
      }
    }
  }
  out.push_back(std::move(c4));
  return out;
}

}  // namespace zol
