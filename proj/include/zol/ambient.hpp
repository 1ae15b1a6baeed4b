#pragma once

// Locally computable infinite structures.
//
// An AmbientGenerator describes a fixed infinite, connected, bounded-degree
// structure with the duplicate substructure property by answering local
// queries: which tuples pass through a vertex. From that, exact finite balls
// are produced on demand. Vertex ids are strings in a per-generator scheme.
//
// Built-ins (selector in parentheses):
//   z_line (z)           ids "…,-1,0,1,…"; S(i, i+1).
//   grid_z2 (grid2)      ids "i,j"; X((i,j),(i+1,j)), Y((i,j),(i,j+1)).
//   kary_tree (tree:k)   ids words over 1..k, root ""; C(w, wd).
//   free_monoid (monoid:k) ids words over 1..k, identity ""; Gd(w, wd).
//   universal_unary_tree (uutree) ids 0,1,2,…; L0/L1(i, i+1) labelled by the
//                        concatenation of all binary words in shortlex order.

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zol/errors.hpp"
#include "zol/morphisms.hpp"
#include "zol/structure.hpp"
#include "zol/structure_io.hpp"

namespace zol {

using VertexId = std::string;

struct Fact {
  std::size_t relation;
  std::vector<VertexId> args;
};

class AmbientGenerator {
 public:
  virtual ~AmbientGenerator() = default;

  // CLI selector string.
  virtual std::string name() const = 0;
  virtual const Vocabulary& vocabulary() const = 0;
  virtual std::size_t degree_bound() const = 0;
  virtual VertexId base_point() const = 0;

  // Throws ArgumentError unless `v` is a vertex id in canonical form.
  virtual void validate(const VertexId& v) const = 0;

  // Every tuple of the infinite structure that contains `v`.
  virtual std::vector<Fact> facts_at(const VertexId& v) const = 0;

  // Centers whose radius-n balls realise every isomorphism class of
  // radius-n balls (with the center distinguished).
  virtual std::vector<VertexId> canonical_centers(std::size_t radius) const = 0;

  // Strict total order on ids used for local indexing and tie-breaking.
  virtual bool precedes(const VertexId& a, const VertexId& b) const = 0;

  std::vector<VertexId> neighbors(const VertexId& v) const {
    std::set<VertexId> seen;
    for (const Fact& f : facts_at(v)) {
      for (const VertexId& u : f.args) {
        if (u != v) seen.insert(u);
      }
    }
    std::vector<VertexId> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [this](const VertexId& a, const VertexId& b) { return precedes(a, b); });
    return out;
  }
};

namespace detail {

inline std::optional<long long> parse_canonical_int(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (std::to_string(v) != s) return std::nullopt;
  return v;
}

inline bool shortlex_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace detail

// The integers with the successor relation. Vertex-transitive, so the base
// point alone realises every ball class.
class ZLine final : public AmbientGenerator {
 public:
  ZLine() : vocab_({{"S", 2}}) {}

  std::string name() const override { return "z"; }
  const Vocabulary& vocabulary() const override { return vocab_; }
  std::size_t degree_bound() const override { return 2; }
  VertexId base_point() const override { return "0"; }

  void validate(const VertexId& v) const override { (void)coord(v); }

  std::vector<Fact> facts_at(const VertexId& v) const override {
    const long long i = coord(v);
    return {{0, {std::to_string(i - 1), v}}, {0, {v, std::to_string(i + 1)}}};
  }

  std::vector<VertexId> canonical_centers(std::size_t) const override { return {base_point()}; }

  bool precedes(const VertexId& a, const VertexId& b) const override { return coord(a) < coord(b); }

  static long long coord(const VertexId& v) {
    auto c = detail::parse_canonical_int(v);
    if (!c) throw ArgumentError("malformed z vertex id '" + v + "' (expected a decimal integer)");
    return *c;
  }

 private:
  Vocabulary vocab_;
};

// Cayley diagram of Z^2 with one relation per generator. Vertex-transitive.
class GridZ2 final : public AmbientGenerator {
 public:
  GridZ2() : vocab_({{"X", 2}, {"Y", 2}}) {}

  std::string name() const override { return "grid2"; }
  const Vocabulary& vocabulary() const override { return vocab_; }
  std::size_t degree_bound() const override { return 4; }
  VertexId base_point() const override { return "0,0"; }

  void validate(const VertexId& v) const override { (void)coord(v); }

  std::vector<Fact> facts_at(const VertexId& v) const override {
    const auto [i, j] = coord(v);
    return {{0, {id(i - 1, j), v}}, {0, {v, id(i + 1, j)}}, {1, {id(i, j - 1), v}}, {1, {v, id(i, j + 1)}}};
  }

  std::vector<VertexId> canonical_centers(std::size_t) const override { return {base_point()}; }

  bool precedes(const VertexId& a, const VertexId& b) const override { return coord(a) < coord(b); }

  static std::pair<long long, long long> coord(const VertexId& v) {
    const auto comma = v.find(',');
    std::optional<long long> i, j;
    if (comma != std::string::npos) {
      i = detail::parse_canonical_int(std::string_view(v).substr(0, comma));
      j = detail::parse_canonical_int(std::string_view(v).substr(comma + 1));
    }
    if (!i || !j) throw ArgumentError("malformed grid2 vertex id '" + v + "' (expected \"i,j\")");
    return {*i, *j};
  }

  static VertexId id(long long i, long long j) { return std::to_string(i) + "," + std::to_string(j); }

 private:
  Vocabulary vocab_;
};

namespace detail {

// Words over the digits 1..k; "" is the root.
inline void validate_word(const VertexId& v, std::size_t k, const char* what) {
  for (char c : v) {
    if (c < '1' || static_cast<std::size_t>(c - '0') > k) {
      throw ArgumentError(std::string("malformed ") + what + " vertex id '" + v + "' (expected a word over 1.." +
                          std::to_string(k) + ")");
    }
  }
}

}  // namespace detail

// The full k-ary tree: the root has k children and degree k, every other
// vertex degree k+1. One binary child relation C(parent, child).
//
// Coverage: the radius-n ball around a vertex at depth d depends only on
// min(d, n), so the centers 1^d for d = 0..n realise every class.
class KaryTree final : public AmbientGenerator {
 public:
  explicit KaryTree(std::size_t k) : k_(k), vocab_({{"C", 2}}) {
    if (k < 1 || k > 9) throw ArgumentError("tree arity must be between 1 and 9");
  }

  std::string name() const override { return "tree:" + std::to_string(k_); }
  const Vocabulary& vocabulary() const override { return vocab_; }
  std::size_t degree_bound() const override { return k_ + 1; }
  VertexId base_point() const override { return ""; }
  std::size_t arity() const noexcept { return k_; }

  void validate(const VertexId& v) const override { detail::validate_word(v, k_, "tree"); }

  std::vector<Fact> facts_at(const VertexId& v) const override {
    validate(v);
    std::vector<Fact> out;
    if (!v.empty()) out.push_back({0, {v.substr(0, v.size() - 1), v}});
    for (std::size_t d = 1; d <= k_; ++d) out.push_back({0, {v, v + static_cast<char>('0' + d)}});
    return out;
  }

  std::vector<VertexId> canonical_centers(std::size_t radius) const override {
    std::vector<VertexId> out;
    for (std::size_t d = 0; d <= radius; ++d) out.push_back(std::string(d, '1'));
    return out;
  }

  bool precedes(const VertexId& a, const VertexId& b) const override { return detail::shortlex_less(a, b); }

 private:
  std::size_t k_;
  Vocabulary vocab_;
};

// Cayley diagram of the free monoid on k generators: Gd(w, wd).
//
// Coverage: the radius-n ball around w is determined by the last min(|w|, n)
// letters of w (the labels on the way up), so all words of length <= n are
// used as centers.
class FreeMonoid final : public AmbientGenerator {
 public:
  explicit FreeMonoid(std::size_t k) : k_(k) {
    if (k < 1 || k > 9) throw ArgumentError("monoid rank must be between 1 and 9");
    std::vector<Symbol> syms;
    for (std::size_t d = 1; d <= k; ++d) syms.push_back({"G" + std::to_string(d), 2});
    vocab_ = Vocabulary(std::move(syms));
  }

  std::string name() const override { return "monoid:" + std::to_string(k_); }
  const Vocabulary& vocabulary() const override { return vocab_; }
  std::size_t degree_bound() const override { return k_ + 1; }
  VertexId base_point() const override { return ""; }

  void validate(const VertexId& v) const override { detail::validate_word(v, k_, "monoid"); }

  std::vector<Fact> facts_at(const VertexId& v) const override {
    validate(v);
    std::vector<Fact> out;
    if (!v.empty()) out.push_back({static_cast<std::size_t>(v.back() - '1'), {v.substr(0, v.size() - 1), v}});
    for (std::size_t d = 1; d <= k_; ++d) out.push_back({d - 1, {v, v + static_cast<char>('0' + d)}});
    return out;
  }

  std::vector<VertexId> canonical_centers(std::size_t radius) const override {
    std::vector<VertexId> out{""};
    std::vector<VertexId> layer{""};
    for (std::size_t len = 1; len <= radius; ++len) {
      std::vector<VertexId> next;
      for (const auto& w : layer) {
        for (std::size_t d = 1; d <= k_; ++d) next.push_back(w + static_cast<char>('0' + d));
      }
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  bool precedes(const VertexId& a, const VertexId& b) const override { return detail::shortlex_less(a, b); }

 private:
  std::size_t k_;
  Vocabulary vocab_;
};

// A one-way infinite directed path 0 -> 1 -> 2 -> ... whose edge i -> i+1
// carries label s[i], where s = 0 1 00 01 10 11 000 ... lists every binary
// word in shortlex order. Every finite label word occurs infinitely often, so
// each finite substructure has disjoint copies.
//
// Coverage: the radius-n ball around i is the path on max(0, i-n)..i+n with
// labels s[max(0,i-n)..i+n-1]; positions up to the end of the block of words
// of length 2n+1 realise every such window.
class UniversalUnaryTree final : public AmbientGenerator {
 public:
  UniversalUnaryTree() : vocab_({{"L0", 2}, {"L1", 2}}) {}

  std::string name() const override { return "uutree"; }
  const Vocabulary& vocabulary() const override { return vocab_; }
  std::size_t degree_bound() const override { return 2; }
  VertexId base_point() const override { return "0"; }

  void validate(const VertexId& v) const override { (void)coord(v); }

  std::vector<Fact> facts_at(const VertexId& v) const override {
    const long long i = coord(v);
    std::vector<Fact> out;
    if (i > 0) out.push_back({label(static_cast<std::uint64_t>(i - 1)), {std::to_string(i - 1), v}});
    out.push_back({label(static_cast<std::uint64_t>(i)), {v, std::to_string(i + 1)}});
    return out;
  }

  std::vector<VertexId> canonical_centers(std::size_t radius) const override {
    const std::uint64_t end = block_end(2 * radius + 1);
    std::vector<VertexId> out;
    for (std::uint64_t i = 0; i <= end; ++i) out.push_back(std::to_string(i));
    return out;
  }

  bool precedes(const VertexId& a, const VertexId& b) const override { return coord(a) < coord(b); }

  // Label of edge i -> i+1.
  static std::size_t label(std::uint64_t i) {
    std::uint64_t len = 1;
    while (true) {
      const std::uint64_t block = len << len;  // 2^len words of length len
      if (i < block) break;
      i -= block;
      ++len;
    }
    const std::uint64_t word = i / len;
    const std::uint64_t pos = i % len;
    return static_cast<std::size_t>((word >> (len - 1 - pos)) & 1u);
  }

  // Index just past the block of all words of length `len`.
  static std::uint64_t block_end(std::uint64_t len) {
    std::uint64_t total = 0;
    for (std::uint64_t l = 1; l <= len; ++l) total += l << l;
    return total;
  }

  static long long coord(const VertexId& v) {
    auto c = detail::parse_canonical_int(v);
    if (!c || *c < 0) throw ArgumentError("malformed uutree vertex id '" + v + "' (expected a nonnegative integer)");
    return *c;
  }

 private:
  Vocabulary vocab_;
};

// Parses "z", "grid2", "tree:k", "monoid:k", "uutree".
inline std::unique_ptr<AmbientGenerator> make_generator(std::string_view selector) {
  auto rank = [&](std::string_view prefix) -> std::size_t {
    auto v = detail::parse_canonical_int(selector.substr(prefix.size()));
    if (!v || *v < 1 || *v > 9) throw ArgumentError("generator rank in '" + std::string(selector) + "' must be 1..9");
    return static_cast<std::size_t>(*v);
  };
  if (selector == "z") return std::make_unique<ZLine>();
  if (selector == "grid2") return std::make_unique<GridZ2>();
  if (selector == "uutree") return std::make_unique<UniversalUnaryTree>();
  if (selector.starts_with("tree:")) return std::make_unique<KaryTree>(rank("tree:"));
  if (selector.starts_with("monoid:")) return std::make_unique<FreeMonoid>(rank("monoid:"));
  throw ArgumentError("unknown generator '" + std::string(selector) + "' (expected z, grid2, tree:k, monoid:k, uutree)");
}

// An exact finite ball of a generator.
struct BallPatch {
  Structure structure;
  std::vector<VertexId> vertices;  // local index -> vertex id, in generator order
  std::vector<VertexId> centers;
  std::size_t radius = 0;

  std::optional<Element> local_index(const VertexId& v) const {
    auto it = index.find(v);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  Element center_index(std::size_t i = 0) const { return index.at(centers.at(i)); }

  std::map<VertexId, Element> index;
};

inline constexpr std::size_t kBallVertexLimit = std::size_t{1} << 21;

// Vertices grouped by distance from `centers`, layer d at position d. Throws
// BudgetError past kBallVertexLimit vertices.
inline std::vector<std::vector<VertexId>> rings(const AmbientGenerator& g, const std::vector<VertexId>& centers,
                                                std::size_t radius) {
  std::set<VertexId> seen;
  std::vector<std::vector<VertexId>> out(1);
  for (const auto& c : centers) {
    g.validate(c);
    if (seen.insert(c).second) out[0].push_back(c);
  }
  for (std::size_t d = 0; d < radius; ++d) {
    std::vector<VertexId> next;
    for (const auto& u : out[d]) {
      for (const auto& v : g.neighbors(u)) {
        if (seen.insert(v).second) next.push_back(v);
      }
    }
    if (seen.size() > kBallVertexLimit) {
      throw BudgetError("ball of radius " + std::to_string(radius) + " in " + g.name() + " exceeds " +
                        std::to_string(kBallVertexLimit) + " vertices");
    }
    if (next.empty()) break;
    out.push_back(std::move(next));
  }
  for (auto& layer : out) {
    std::sort(layer.begin(), layer.end(), [&](const VertexId& a, const VertexId& b) { return g.precedes(a, b); });
  }
  return out;
}

inline BallPatch ball_of(const AmbientGenerator& g, const std::vector<VertexId>& centers, std::size_t n) {
  if (centers.empty()) throw ArgumentError("ball around an empty set of centers");
  BallPatch patch;
  patch.radius = n;
  for (const auto& c : centers) {
    if (std::find(patch.centers.begin(), patch.centers.end(), c) == patch.centers.end()) patch.centers.push_back(c);
  }
  for (auto& layer : rings(g, centers, n)) {
    for (auto& v : layer) patch.vertices.push_back(std::move(v));
  }
  std::sort(patch.vertices.begin(), patch.vertices.end(),
            [&](const VertexId& a, const VertexId& b) { return g.precedes(a, b); });
  for (std::size_t i = 0; i < patch.vertices.size(); ++i) patch.index.emplace(patch.vertices[i], static_cast<Element>(i));
  std::vector<std::vector<Tuple>> rels(g.vocabulary().size());
  for (const auto& v : patch.vertices) {
    for (const Fact& f : g.facts_at(v)) {
      Tuple t;
      bool inside = true;
      for (const auto& u : f.args) {
        auto it = patch.index.find(u);
        if (it == patch.index.end()) {
          inside = false;
          break;
        }
        t.push_back(it->second);
      }
      if (inside) rels[f.relation].push_back(std::move(t));
    }
  }
  patch.structure = Structure(g.vocabulary(), patch.vertices.size(), std::move(rels));
  return patch;
}

inline BallPatch ball_of(const AmbientGenerator& g, const VertexId& center, std::size_t n) {
  return ball_of(g, std::vector<VertexId>{center}, n);
}

namespace detail {

// Isomorphism invariant: sorted per-element occurrence counts by
// (relation, position), plus the center's own row when centered.
inline std::vector<std::size_t> structure_signature(const Structure& s, std::optional<Element> center = std::nullopt) {
  std::size_t width = 0;
  for (const Symbol& sym : s.vocabulary().symbols()) width += sym.arity;
  std::vector<std::vector<std::size_t>> rows(s.size(), std::vector<std::size_t>(width, 0));
  std::size_t offset = 0;
  for (std::size_t r = 0; r < s.vocabulary().size(); ++r) {
    for (const Tuple& t : s.tuples(r)) {
      for (std::size_t i = 0; i < t.size(); ++i) ++rows[t[i]][offset + i];
    }
    offset += s.vocabulary()[r].arity;
  }
  std::vector<std::size_t> sig{s.size()};
  for (std::size_t r = 0; r < s.vocabulary().size(); ++r) sig.push_back(s.tuples(r).size());
  if (center) sig.insert(sig.end(), rows[*center].begin(), rows[*center].end());
  std::sort(rows.begin(), rows.end());
  for (const auto& row : rows) sig.insert(sig.end(), row.begin(), row.end());
  return sig;
}

// Sorted (distance from center, occurrence counts) rows; equal for
// isomorphic balls whose centers correspond.
inline std::vector<std::size_t> centered_signature(const BallPatch& p) {
  const Structure& s = p.structure;
  const Element c = p.center_index();
  const Element sources[] = {c};
  const auto dist = distances_from(gaifman(s), sources);
  std::size_t width = 1;
  for (const Symbol& sym : s.vocabulary().symbols()) width += sym.arity;
  std::vector<std::vector<std::size_t>> rows(s.size(), std::vector<std::size_t>(width, 0));
  for (std::size_t v = 0; v < s.size(); ++v) rows[v][0] = dist[v] ? *dist[v] : s.size();
  std::size_t offset = 1;
  for (std::size_t r = 0; r < s.vocabulary().size(); ++r) {
    for (const Tuple& t : s.tuples(r)) {
      for (std::size_t i = 0; i < t.size(); ++i) ++rows[t[i]][offset + i];
    }
    offset += s.vocabulary()[r].arity;
  }
  std::vector<std::size_t> sig{s.size()};
  sig.insert(sig.end(), rows[c].begin(), rows[c].end());
  std::sort(rows.begin(), rows.end());
  for (const auto& row : rows) sig.insert(sig.end(), row.begin(), row.end());
  return sig;
}

// An isomorphism from a onto b sending the first center to the first center,
// as a map from local indices of a to local indices of b. The search places
// elements of a in breadth-first order from the center so that every
// placement after the first is constrained by a placed neighbour.
inline std::optional<std::vector<Element>> centered_isomorphism(const BallPatch& a, const BallPatch& b) {
  if (a.structure.size() != b.structure.size()) return std::nullopt;
  if (centered_signature(a) != centered_signature(b)) return std::nullopt;
  const Element sources[] = {a.center_index()};
  const auto dist = distances_from(gaifman(a.structure), sources);
  std::vector<Element> order(a.structure.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Element u, Element v) {
    return dist[u].value_or(order.size()) < dist[v].value_or(order.size());
  });
  EmbeddingOptions opts;
  opts.fixed = {{0, b.center_index()}};
  const auto e = first_embedding(pullback(a.structure, order), b.structure, opts);
  if (!e) return std::nullopt;
  std::vector<Element> out(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = e->image[i];
  return out;
}

inline bool centered_isomorphic(const BallPatch& a, const BallPatch& b) { return centered_isomorphism(a, b).has_value(); }

}  // namespace detail

// One patch per isomorphism class of radius-n balls (center distinguished),
// in order of first appearance among the generator's canonical centers.
inline std::vector<BallPatch> ball_representatives(const AmbientGenerator& g, std::size_t n) {
  std::vector<BallPatch> reps;
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets;
  for (const auto& c : g.canonical_centers(n)) {
    BallPatch patch = ball_of(g, c, n);
    auto& bucket = buckets[detail::centered_signature(patch)];
    bool fresh = true;
    for (std::size_t idx : bucket) {
      if (detail::centered_isomorphic(reps[idx], patch)) {
        fresh = false;
        break;
      }
    }
    if (fresh) {
      bucket.push_back(reps.size());
      reps.push_back(std::move(patch));
    }
  }
  return reps;
}

// Whether `f` is isomorphic to a finite substructure of the generator's
// structure. Each component C (an s-element connected structure) lies within
// distance s-1 of its least element, so C embeds iff it embeds into some
// representative radius-(s-1) ball with that element on the center. Embedded
// components can then be spread out by the duplicate substructure property.
inline bool embeds_in_ambient(const AmbientGenerator& g, const Structure& f) {
  if (!(f.vocabulary() == g.vocabulary())) throw ArgumentError("structure and generator have different vocabularies");
  std::map<std::size_t, std::vector<BallPatch>> reps_by_radius;
  for (const SubsetMask& comp : components(f)) {
    const Structure c = induced(f, comp).structure;
    const std::size_t radius = c.size() - 1;
    auto it = reps_by_radius.find(radius);
    if (it == reps_by_radius.end()) it = reps_by_radius.emplace(radius, ball_representatives(g, radius)).first;
    bool found = false;
    for (const BallPatch& rep : it->second) {
      EmbeddingOptions opts;
      opts.fixed = {{0, rep.center_index()}};
      if (first_embedding(c, rep.structure, opts)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

enum class Polarity { InClass, Excluded };

inline const char* to_string(Polarity p) { return p == Polarity::InClass ? "in-class" : "excluded"; }

struct SigmaAxiom {
  Structure pattern;
  Polarity polarity;
};

// Every structure over `vocabulary` with `size` elements, one per
// isomorphism class, in order of first appearance in the bitmask
// enumeration. Throws GuardError beyond 2^22 candidates.
inline std::vector<Structure> enumerate_iso_classes(const Vocabulary& vocabulary, std::size_t size) {
  std::vector<std::pair<std::size_t, Tuple>> slots;
  for (std::size_t r = 0; r < vocabulary.size(); ++r) {
    const std::size_t arity = vocabulary[r].arity;
    Tuple t(arity, 0);
    if (size == 0) continue;
    while (true) {
      slots.emplace_back(r, t);
      std::size_t i = 0;
      while (i < arity && ++t[i] == size) t[i++] = 0;
      if (i == arity) break;
    }
  }
  if (slots.size() > 22) {
    throw GuardError("enumerating structures of size " + std::to_string(size) + " needs 2^" +
                     std::to_string(slots.size()) + " candidates (limit 2^22)");
  }
  std::vector<Structure> classes;
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << slots.size()); ++bits) {
    std::vector<std::vector<Tuple>> rels(vocabulary.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if ((bits >> i) & 1u) rels[slots[i].first].push_back(slots[i].second);
    }
    Structure s(vocabulary, size, std::move(rels));
    auto& bucket = buckets[detail::structure_signature(s)];
    bool fresh = true;
    for (std::size_t idx : bucket) {
      if (isomorphic(classes[idx], s)) {
        fresh = false;
        break;
      }
    }
    if (fresh) {
      bucket.push_back(classes.size());
      classes.push_back(std::move(s));
    }
  }
  return classes;
}

// Axioms of the almost-sure theory for patterns of 1..max_size elements: an
// in-class F asserts a closed copy of F; an excluded F asserts no copy at all.
inline std::vector<SigmaAxiom> sigma_axioms(const AmbientGenerator& g, std::size_t max_size) {
  std::vector<SigmaAxiom> out;
  for (std::size_t size = 1; size <= max_size; ++size) {
    for (Structure& s : enumerate_iso_classes(g.vocabulary(), size)) {
      const Polarity pol = embeds_in_ambient(g, s) ? Polarity::InClass : Polarity::Excluded;
      out.push_back({std::move(s), pol});
    }
  }
  return out;
}

// Structure JSON plus "vertices" (local index -> id), "centers" (id -> local
// index) and "radius".
inline Json to_json(const BallPatch& patch) {
  Json j = to_json(patch.structure);
  j["vertices"] = patch.vertices;
  Json centers = Json::object();
  for (const auto& c : patch.centers) centers[c] = patch.index.at(c);
  j["centers"] = std::move(centers);
  j["radius"] = patch.radius;
  return j;
}

inline BallPatch patch_from_json(const Json& j) {
  detail::reject_unknown_keys(j, {"vocabulary", "size", "relations", "vertices", "centers", "radius"}, "ball patch");
  BallPatch patch;
  patch.structure = detail::structure_body_from_json(j);
  patch.radius = detail::as_count(detail::require(j, "radius", "ball patch"), "radius");
  const Json& vertices = detail::require(j, "vertices", "ball patch");
  if (!vertices.is_array() || vertices.size() != patch.structure.size()) {
    throw FormatError("vertices must be an array with one id per element");
  }
  for (const Json& v : vertices) {
    if (!v.is_string()) throw FormatError("vertex ids must be strings");
    const auto id = v.get<std::string>();
    if (!patch.index.emplace(id, static_cast<Element>(patch.vertices.size())).second) {
      throw FormatError("duplicate vertex id '" + id + "'");
    }
    patch.vertices.push_back(id);
  }
  const Json& centers = detail::require(j, "centers", "ball patch");
  if (!centers.is_object() || centers.empty()) throw FormatError("centers must be a nonempty object");
  for (const auto& [id, local] : centers.items()) {
    auto it = patch.index.find(id);
    if (it == patch.index.end() || detail::as_count(local, "center index") != it->second) {
      throw FormatError("center '" + id + "' does not match the vertex list");
    }
    patch.centers.push_back(id);
  }
  return patch;
}

inline BallPatch load_patch(const std::string& path) {
  return patch_from_json(parse_json_text(read_text_file(path), path));
}

}  // namespace zol
