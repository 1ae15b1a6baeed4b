#pragma once

// Finite relational structures and the geometry of their Gaifman graphs.
//
// A Structure has universe {0, ..., size-1} and one tuple set per symbol of
// its Vocabulary. Values are immutable once built; every free function here
// is pure.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zol/errors.hpp"

namespace zol {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  bool operator==(const Symbol&) const = default;
};

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c); });
}

class Vocabulary {
 public:
  Vocabulary() = default;

  explicit Vocabulary(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      const Symbol& s = symbols_[i];
      if (!is_identifier(s.name)) throw ArgumentError("symbol name '" + s.name + "' is not an identifier");
      if (s.arity == 0) throw ArgumentError("symbol '" + s.name + "' has arity 0");
      for (std::size_t j = 0; j < i; ++j) {
        if (symbols_[j].name == s.name) throw ArgumentError("duplicate symbol '" + s.name + "'");
      }
    }
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_.at(i); }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }

  std::optional<std::size_t> find(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].name == name) return i;
    }
    return std::nullopt;
  }

  bool operator==(const Vocabulary&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

// A subset of the universe of some parent structure.
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(std::size_t parent_size) : bits_(parent_size, false) {}

  static SubsetMask full(std::size_t parent_size) {
    SubsetMask m(parent_size);
    std::fill(m.bits_.begin(), m.bits_.end(), true);
    return m;
  }

  static SubsetMask of(std::size_t parent_size, std::initializer_list<Element> members) {
    return of(parent_size, std::span<const Element>(members.begin(), members.size()));
  }

  static SubsetMask of(std::size_t parent_size, std::span<const Element> members) {
    SubsetMask m(parent_size);
    for (Element e : members) m.insert(e);
    return m;
  }

  // Bit i of `bits` selects element i; parent_size must be at most 64.
  static SubsetMask from_bits(std::size_t parent_size, std::uint64_t bits) {
    SubsetMask m(parent_size);
    for (std::size_t i = 0; i < parent_size; ++i) m.bits_[i] = (bits >> i) & 1u;
    return m;
  }

  std::size_t parent_size() const noexcept { return bits_.size(); }

  bool contains(Element e) const noexcept { return e < bits_.size() && bits_[e]; }

  void insert(Element e) {
    if (e >= bits_.size()) {
      throw ArgumentError("element " + std::to_string(e) + " outside universe of size " +
                          std::to_string(bits_.size()));
    }
    bits_[e] = true;
  }

  void erase(Element e) {
    if (e < bits_.size()) bits_[e] = false;
  }

  std::size_t count() const noexcept { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }
  bool empty() const noexcept { return count() == 0; }

  std::vector<Element> members() const {
    std::vector<Element> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i]) out.push_back(static_cast<Element>(i));
    }
    return out;
  }

  SubsetMask complement() const {
    SubsetMask m(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i) m.bits_[i] = !bits_[i];
    return m;
  }

  bool is_subset_of(const SubsetMask& other) const noexcept {
    if (other.parent_size() != parent_size()) return false;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] && !other.bits_[i]) return false;
    }
    return true;
  }

  bool intersects(const SubsetMask& other) const noexcept {
    const std::size_t n = std::min(bits_.size(), other.bits_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (bits_[i] && other.bits_[i]) return true;
    }
    return false;
  }

  bool operator==(const SubsetMask&) const = default;

 private:
  std::vector<bool> bits_;
};

class Structure {
 public:
  Structure() = default;

  Structure(Vocabulary vocabulary, std::size_t size)
      : Structure(std::move(vocabulary), size, std::vector<std::vector<Tuple>>{}) {}

  // `relations[i]` holds the tuples of symbol i; missing trailing entries are
  // empty. Tuples are validated, sorted and deduplicated.
  Structure(Vocabulary vocabulary, std::size_t size, std::vector<std::vector<Tuple>> relations)
      : vocabulary_(std::move(vocabulary)), size_(size), relations_(std::move(relations)) {
    if (relations_.size() > vocabulary_.size()) throw ArgumentError("more relations than vocabulary symbols");
    relations_.resize(vocabulary_.size());
    for (std::size_t r = 0; r < relations_.size(); ++r) {
      const Symbol& sym = vocabulary_[r];
      for (const Tuple& t : relations_[r]) {
        if (t.size() != sym.arity) {
          throw ArgumentError("tuple of length " + std::to_string(t.size()) + " under symbol '" + sym.name +
                              "' of arity " + std::to_string(sym.arity));
        }
        for (Element e : t) {
          if (e >= size_) {
            throw ArgumentError("tuple entry " + std::to_string(e) + " under symbol '" + sym.name +
                                "' outside universe of size " + std::to_string(size_));
          }
        }
      }
      std::sort(relations_[r].begin(), relations_[r].end());
      relations_[r].erase(std::unique(relations_[r].begin(), relations_[r].end()), relations_[r].end());
    }
    build_index();
  }

  const Vocabulary& vocabulary() const noexcept { return vocabulary_; }
  std::size_t size() const noexcept { return size_; }

  std::span<const Tuple> tuples(std::size_t symbol) const { return relations_.at(symbol); }

  std::span<const Tuple> tuples(std::string_view name) const {
    auto idx = vocabulary_.find(name);
    if (!idx) throw ArgumentError("unknown symbol '" + std::string(name) + "'");
    return relations_[*idx];
  }

  const std::vector<std::vector<Tuple>>& relations() const noexcept { return relations_; }

  std::size_t tuple_count() const noexcept {
    std::size_t n = 0;
    for (const auto& r : relations_) n += r.size();
    return n;
  }

  bool holds(std::size_t symbol, std::span<const Element> args) const {
    const auto& dense = dense_[symbol];
    if (!dense.empty()) {
      std::size_t idx = 0;
      for (std::size_t i = args.size(); i-- > 0;) idx = idx * size_ + args[i];
      return (dense[idx >> 6] >> (idx & 63u)) & 1u;
    }
    const auto& rel = relations_[symbol];
    return std::binary_search(rel.begin(), rel.end(), args, [](const auto& a, const auto& b) {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
  }

  bool operator==(const Structure& other) const {
    return vocabulary_ == other.vocabulary_ && size_ == other.size_ && relations_ == other.relations_;
  }

 private:
  static constexpr std::size_t kDenseLimit = std::size_t{1} << 20;

  void build_index() {
    dense_.assign(relations_.size(), {});
    for (std::size_t r = 0; r < relations_.size(); ++r) {
      std::size_t cells = 1;
      bool fits = true;
      for (std::size_t i = 0; i < vocabulary_[r].arity && fits; ++i) {
        if (size_ != 0 && cells > kDenseLimit / size_) fits = false;
        cells *= size_;
      }
      if (!fits || cells == 0) continue;
      auto& bits = dense_[r];
      bits.assign((cells + 63) / 64, 0);
      for (const Tuple& t : relations_[r]) {
        std::size_t idx = 0;
        for (std::size_t i = t.size(); i-- > 0;) idx = idx * size_ + t[i];
        bits[idx >> 6] |= std::uint64_t{1} << (idx & 63u);
      }
    }
  }

  Vocabulary vocabulary_;
  std::size_t size_ = 0;
  std::vector<std::vector<Tuple>> relations_;
  std::vector<std::vector<std::uint64_t>> dense_;
};

// Incremental construction by symbol name, for tests and loaders.
class StructureBuilder {
 public:
  StructureBuilder(Vocabulary vocabulary, std::size_t size)
      : vocabulary_(std::move(vocabulary)), size_(size), relations_(vocabulary_.size()) {}

  StructureBuilder& add(std::string_view symbol, Tuple tuple) {
    auto idx = vocabulary_.find(symbol);
    if (!idx) throw ArgumentError("unknown symbol '" + std::string(symbol) + "'");
    relations_[*idx].push_back(std::move(tuple));
    return *this;
  }

  Structure build() const { return Structure(vocabulary_, size_, relations_); }

 private:
  Vocabulary vocabulary_;
  std::size_t size_;
  std::vector<std::vector<Tuple>> relations_;
};

// Gaifman graph: u ~ v iff u != v and both occur in one tuple.
class GaifmanGraph {
 public:
  GaifmanGraph() = default;
  explicit GaifmanGraph(std::vector<std::vector<Element>> adjacency) : adjacency_(std::move(adjacency)) {
    for (auto& row : adjacency_) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
  }

  std::size_t size() const noexcept { return adjacency_.size(); }
  std::span<const Element> neighbors(Element v) const { return adjacency_.at(v); }
  std::size_t degree(Element v) const { return adjacency_.at(v).size(); }

  bool adjacent(Element u, Element v) const {
    const auto& row = adjacency_.at(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  std::size_t edge_count() const noexcept {
    std::size_t n = 0;
    for (const auto& row : adjacency_) n += row.size();
    return n / 2;
  }

  // Each undirected edge once, as (smaller, larger), sorted.
  std::vector<std::pair<Element, Element>> edges() const {
    std::vector<std::pair<Element, Element>> out;
    for (std::size_t u = 0; u < adjacency_.size(); ++u) {
      for (Element v : adjacency_[u]) {
        if (u < v) out.emplace_back(static_cast<Element>(u), v);
      }
    }
    return out;
  }

 private:
  std::vector<std::vector<Element>> adjacency_;
};

inline GaifmanGraph gaifman(const Structure& s) {
  std::vector<std::vector<Element>> adj(s.size());
  for (const auto& rel : s.relations()) {
    for (const Tuple& t : rel) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = 0; j < t.size(); ++j) {
          if (t[i] != t[j]) adj[t[i]].push_back(t[j]);
        }
      }
    }
  }
  return GaifmanGraph(std::move(adj));
}

// Path length in the Gaifman graph, or infinite between components.
class Distance {
 public:
  static Distance finite(std::size_t d) { return Distance(d); }
  static Distance infinite() { return Distance(); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  std::size_t value() const {
    if (!value_) throw ArgumentError("distance is infinite");
    return *value_;
  }

  bool operator==(const Distance&) const = default;
  std::strong_ordering operator<=>(const Distance& other) const noexcept {
    if (is_infinite() || other.is_infinite()) {
      return static_cast<int>(is_infinite()) <=> static_cast<int>(other.is_infinite());
    }
    return *value_ <=> *other.value_;
  }

  std::string to_string() const { return value_ ? std::to_string(*value_) : std::string("inf"); }

 private:
  Distance() = default;
  explicit Distance(std::size_t d) : value_(d) {}
  std::optional<std::size_t> value_;
};

namespace detail {

inline void check_element(std::size_t size, Element x) {
  if (x >= size) {
    throw ArgumentError("element " + std::to_string(x) + " outside universe of size " + std::to_string(size));
  }
}

}  // namespace detail

// Multi-source breadth-first search; entry v is d(v, sources), or nullopt when
// unreachable or farther than `limit`.
inline std::vector<std::optional<std::size_t>> distances_from(
    const GaifmanGraph& g, std::span<const Element> sources,
    std::size_t limit = static_cast<std::size_t>(-1)) {
  std::vector<std::optional<std::size_t>> dist(g.size());
  std::deque<Element> queue;
  for (Element s : sources) {
    detail::check_element(g.size(), s);
    if (!dist[s]) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    Element u = queue.front();
    queue.pop_front();
    if (*dist[u] >= limit) continue;
    for (Element v : g.neighbors(u)) {
      if (!dist[v]) {
        dist[v] = *dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

inline Distance distance(const GaifmanGraph& g, Element x, Element y) {
  detail::check_element(g.size(), x);
  detail::check_element(g.size(), y);
  const Element src[] = {x};
  auto d = distances_from(g, src)[y];
  return d ? Distance::finite(*d) : Distance::infinite();
}

// d(x, Y) = min over y in Y of d(x, y); infinite when Y is empty.
inline Distance distance_to_set(const GaifmanGraph& g, Element x, const SubsetMask& set) {
  detail::check_element(g.size(), x);
  auto members = set.members();
  if (members.empty()) return Distance::infinite();
  auto d = distances_from(g, members)[x];
  return d ? Distance::finite(*d) : Distance::infinite();
}

inline SubsetMask ball(const GaifmanGraph& g, const SubsetMask& centers, std::size_t n) {
  auto members = centers.members();
  if (members.empty()) throw ArgumentError("ball around an empty set of centers");
  if (centers.parent_size() != g.size()) throw ArgumentError("center mask does not match the structure");
  auto dist = distances_from(g, members, n);
  SubsetMask out(g.size());
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] && *dist[v] <= n) out.insert(static_cast<Element>(v));
  }
  return out;
}

inline SubsetMask ball(const Structure& s, const SubsetMask& centers, std::size_t n) {
  return ball(gaifman(s), centers, n);
}

// Disjoint in the geometric sense: no common element and no Gaifman edge
// between the two sets (distance at least 2).
inline bool are_disjoint(const GaifmanGraph& g, const SubsetMask& a, const SubsetMask& b) {
  if (a.intersects(b)) return false;
  for (Element u : a.members()) {
    for (Element v : g.neighbors(u)) {
      if (b.contains(v)) return false;
    }
  }
  return true;
}

struct InducedStructure {
  Structure structure;
  std::vector<Element> to_parent;  // local index -> parent element
};

inline InducedStructure induced(const Structure& s, const SubsetMask& m) {
  if (m.parent_size() != s.size()) throw ArgumentError("mask does not match the structure");
  InducedStructure out;
  out.to_parent = m.members();
  constexpr Element kAbsent = static_cast<Element>(-1);
  std::vector<Element> local(s.size(), kAbsent);
  for (std::size_t i = 0; i < out.to_parent.size(); ++i) local[out.to_parent[i]] = static_cast<Element>(i);
  std::vector<std::vector<Tuple>> rels(s.vocabulary().size());
  for (std::size_t r = 0; r < rels.size(); ++r) {
    for (const Tuple& t : s.tuples(r)) {
      Tuple mapped(t.size());
      bool keep = true;
      for (std::size_t i = 0; i < t.size() && keep; ++i) {
        mapped[i] = local[t[i]];
        keep = mapped[i] != kAbsent;
      }
      if (keep) rels[r].push_back(std::move(mapped));
    }
  }
  out.structure = Structure(s.vocabulary(), out.to_parent.size(), std::move(rels));
  return out;
}

// Induced substructure on `image`, with local element i standing for image[i]
// (the order given, not sorted). Entries must be distinct.
inline Structure pullback(const Structure& s, std::span<const Element> image) {
  constexpr Element kAbsent = static_cast<Element>(-1);
  std::vector<Element> local(s.size(), kAbsent);
  for (std::size_t i = 0; i < image.size(); ++i) {
    detail::check_element(s.size(), image[i]);
    if (local[image[i]] != kAbsent) throw ArgumentError("pullback image has repeated elements");
    local[image[i]] = static_cast<Element>(i);
  }
  std::vector<std::vector<Tuple>> rels(s.vocabulary().size());
  for (std::size_t r = 0; r < rels.size(); ++r) {
    for (const Tuple& t : s.tuples(r)) {
      Tuple mapped(t.size());
      bool keep = true;
      for (std::size_t i = 0; i < t.size() && keep; ++i) {
        mapped[i] = local[t[i]];
        keep = mapped[i] != kAbsent;
      }
      if (keep) rels[r].push_back(std::move(mapped));
    }
  }
  return Structure(s.vocabulary(), image.size(), std::move(rels));
}

// Connected components ordered by least element.
inline std::vector<SubsetMask> components(const GaifmanGraph& g) {
  std::vector<SubsetMask> out;
  std::vector<bool> seen(g.size(), false);
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (seen[v]) continue;
    SubsetMask comp(g.size());
    std::vector<Element> stack{static_cast<Element>(v)};
    seen[v] = true;
    while (!stack.empty()) {
      Element u = stack.back();
      stack.pop_back();
      comp.insert(u);
      for (Element w : g.neighbors(u)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

inline std::vector<SubsetMask> components(const Structure& s) { return components(gaifman(s)); }

inline Structure disjoint_union(const Structure& a, const Structure& b) {
  if (!(a.vocabulary() == b.vocabulary())) throw ArgumentError("disjoint union of structures over different vocabularies");
  const auto shift = static_cast<Element>(a.size());
  std::vector<std::vector<Tuple>> rels = a.relations();
  for (std::size_t r = 0; r < rels.size(); ++r) {
    for (Tuple t : b.tuples(r)) {
      for (Element& e : t) e += shift;
      rels[r].push_back(std::move(t));
    }
  }
  return Structure(a.vocabulary(), a.size() + b.size(), std::move(rels));
}

inline std::size_t max_degree(const GaifmanGraph& g) {
  std::size_t d = 0;
  for (std::size_t v = 0; v < g.size(); ++v) d = std::max(d, g.degree(static_cast<Element>(v)));
  return d;
}

inline std::size_t max_degree(const Structure& s) { return max_degree(gaifman(s)); }

// Relabels element i as perm[i]; perm must be a permutation of the universe.
inline Structure permute(const Structure& s, std::span<const Element> perm) {
  if (perm.size() != s.size()) throw ArgumentError("permutation size does not match the structure");
  std::vector<bool> hit(s.size(), false);
  for (Element e : perm) {
    detail::check_element(s.size(), e);
    if (hit[e]) throw ArgumentError("not a permutation");
    hit[e] = true;
  }
  std::vector<std::vector<Tuple>> rels(s.vocabulary().size());
  for (std::size_t r = 0; r < rels.size(); ++r) {
    for (Tuple t : s.tuples(r)) {
      for (Element& e : t) e = perm[e];
      rels[r].push_back(std::move(t));
    }
  }
  return Structure(s.vocabulary(), s.size(), std::move(rels));
}

}  // namespace zol
