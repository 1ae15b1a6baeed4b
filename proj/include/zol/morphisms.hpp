#pragma once

// Partial isomorphisms and induced embeddings.

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "zol/errors.hpp"
#include "zol/structure.hpp"

namespace zol {

// A finite injective function between two universes, kept sorted by source.
class PartialMap {
 public:
  using Pair = std::pair<Element, Element>;

  PartialMap() = default;

  explicit PartialMap(std::vector<Pair> pairs) {
    for (const auto& [s, t] : pairs) {
      if (!insert(s, t)) throw ArgumentError("pairs do not form an injective function");
    }
  }

  // False (and no change) if the pair contradicts functionality or
  // injectivity. Re-inserting an existing pair is a no-op returning true.
  bool insert(Element source, Element target) {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), Pair{source, 0},
                               [](const Pair& a, const Pair& b) { return a.first < b.first; });
    if (it != pairs_.end() && it->first == source) return it->second == target;
    if (preimage_of(target)) return false;
    pairs_.insert(it, {source, target});
    return true;
  }

  std::optional<Element> image_of(Element source) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), Pair{source, 0},
                               [](const Pair& a, const Pair& b) { return a.first < b.first; });
    if (it != pairs_.end() && it->first == source) return it->second;
    return std::nullopt;
  }

  std::optional<Element> preimage_of(Element target) const {
    for (const auto& [s, t] : pairs_) {
      if (t == target) return s;
    }
    return std::nullopt;
  }

  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  const std::vector<Pair>& pairs() const noexcept { return pairs_; }

  std::vector<Element> domain() const {
    std::vector<Element> out;
    for (const auto& p : pairs_) out.push_back(p.first);
    return out;
  }

  std::vector<Element> range() const {
    std::vector<Element> out;
    for (const auto& p : pairs_) out.push_back(p.second);
    std::sort(out.begin(), out.end());
    return out;
  }

  PartialMap inverse() const {
    PartialMap out;
    for (const auto& [s, t] : pairs_) out.insert(t, s);
    return out;
  }

  bool operator==(const PartialMap&) const = default;

 private:
  std::vector<Pair> pairs_;
};

// R holds on a tuple over the domain iff R holds on its image, for every R;
// checked in both directions over the tuples that lie inside domain/range.
inline bool is_partial_isomorphism(const Structure& a, const Structure& b, const PartialMap& m) {
  if (!(a.vocabulary() == b.vocabulary())) throw ArgumentError("structures over different vocabularies");
  for (const auto& [s, t] : m.pairs()) {
    if (s >= a.size() || t >= b.size()) return false;
  }
  const PartialMap inv = m.inverse();
  for (std::size_t r = 0; r < a.vocabulary().size(); ++r) {
    Tuple mapped;
    for (const Tuple& tup : a.tuples(r)) {
      mapped.clear();
      bool inside = true;
      for (Element e : tup) {
        auto img = m.image_of(e);
        if (!img) {
          inside = false;
          break;
        }
        mapped.push_back(*img);
      }
      if (inside && !b.holds(r, mapped)) return false;
    }
    for (const Tuple& tup : b.tuples(r)) {
      mapped.clear();
      bool inside = true;
      for (Element e : tup) {
        auto pre = inv.image_of(e);
        if (!pre) {
          inside = false;
          break;
        }
        mapped.push_back(*pre);
      }
      if (inside && !a.holds(r, mapped)) return false;
    }
  }
  return true;
}

// An induced embedding of a pattern into a host: pattern element i goes to
// image[i].
struct Embedding {
  std::vector<Element> image;

  SubsetMask image_mask(std::size_t host_size) const { return SubsetMask::of(host_size, image); }

  PartialMap as_partial_map() const {
    PartialMap m;
    for (std::size_t i = 0; i < image.size(); ++i) m.insert(static_cast<Element>(i), image[i]);
    return m;
  }

  bool operator==(const Embedding&) const = default;
  auto operator<=>(const Embedding&) const = default;
};

struct EmbeddingOptions {
  std::optional<std::size_t> limit;
  // Pattern element -> required host element.
  std::vector<std::pair<Element, Element>> fixed;
  // Host elements the image may use; all when absent.
  std::optional<SubsetMask> allowed;
  // Only images that are unions of host components.
  bool closed_image = false;
};

namespace detail {

class EmbeddingSearch {
 public:
  EmbeddingSearch(const Structure& pattern, const Structure& host, const EmbeddingOptions& opts)
      : pattern_(pattern), host_(host), opts_(opts), pg_(gaifman(pattern)), hg_(gaifman(host)) {
    if (!(pattern.vocabulary() == host.vocabulary())) throw ArgumentError("pattern and host have different vocabularies");
    if (opts.allowed && opts.allowed->parent_size() != host.size()) throw ArgumentError("allowed mask does not match host");
    fixed_.assign(pattern.size(), kUnset);
    for (const auto& [p, h] : opts.fixed) {
      detail::check_element(pattern.size(), p);
      detail::check_element(host.size(), h);
      fixed_[p] = h;
    }
    // Pattern tuples bucketed by their largest entry: checkable as soon as
    // that element is placed.
    by_max_.assign(pattern.size(), {});
    for (std::size_t r = 0; r < pattern.vocabulary().size(); ++r) {
      const auto tuples = pattern.tuples(r);
      for (std::size_t t = 0; t < tuples.size(); ++t) {
        by_max_[*std::max_element(tuples[t].begin(), tuples[t].end())].emplace_back(r, t);
      }
    }
    host_incident_.assign(host.size(), {});
    for (std::size_t r = 0; r < host.vocabulary().size(); ++r) {
      const auto tuples = host.tuples(r);
      for (std::size_t t = 0; t < tuples.size(); ++t) {
        Tuple distinct = tuples[t];
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (Element e : distinct) host_incident_[e].emplace_back(r, t);
      }
    }
    image_.assign(pattern.size(), kUnset);
    preimage_.assign(host.size(), kUnset);
  }

  void run(const std::function<bool(const Embedding&)>& visit) {
    visit_ = &visit;
    found_ = 0;
    stop_ = false;
    if (pattern_.size() > host_.size()) return;
    extend(0);
  }

 private:
  static constexpr Element kUnset = static_cast<Element>(-1);

  bool candidate_ok(Element i, Element h) {
    if (preimage_[h] != kUnset) return false;
    if (fixed_[i] != kUnset && fixed_[i] != h) return false;
    if (opts_.allowed && !opts_.allowed->contains(h)) return false;
    const std::size_t pd = pg_.degree(i), hd = hg_.degree(h);
    if (pd > hd) return false;
    if (opts_.closed_image && pd != hd) return false;
    for (Element j = 0; j < i; ++j) {
      if (pg_.adjacent(i, j) != hg_.adjacent(h, image_[j])) return false;
    }
    return true;
  }

  bool tuples_ok(Element i, Element h) {
    Tuple buf;
    for (const auto& [r, t] : by_max_[i]) {
      const Tuple& tup = pattern_.tuples(r)[t];
      buf.clear();
      for (Element e : tup) buf.push_back(image_[e]);
      if (!host_.holds(r, buf)) return false;
    }
    for (const auto& [r, t] : host_incident_[h]) {
      const Tuple& tup = host_.tuples(r)[t];
      buf.clear();
      bool inside = true;
      for (Element e : tup) {
        if (preimage_[e] == kUnset) {
          inside = false;
          break;
        }
        buf.push_back(preimage_[e]);
      }
      if (inside && !pattern_.holds(r, buf)) return false;
    }
    return true;
  }

  void extend(Element i) {
    if (stop_) return;
    if (i == pattern_.size()) {
      Embedding e{image_};
      ++found_;
      if (!(*visit_)(e) || (opts_.limit && found_ >= *opts_.limit)) stop_ = true;
      return;
    }
    // Candidates adjacent to an already placed neighbour, else everything.
    std::span<const Element> pool;
    std::vector<Element> all;
    bool have_pool = false;
    for (Element j : pg_.neighbors(i)) {
      if (j < i) {
        pool = hg_.neighbors(image_[j]);
        have_pool = true;
        break;
      }
    }
    if (!have_pool) {
      if (fixed_[i] != kUnset) {
        all.push_back(fixed_[i]);
      } else {
        all.resize(host_.size());
        for (std::size_t h = 0; h < host_.size(); ++h) all[h] = static_cast<Element>(h);
      }
      pool = all;
    }
    for (Element h : pool) {
      if (!candidate_ok(i, h)) continue;
      image_[i] = h;
      preimage_[h] = i;
      if (tuples_ok(i, h)) extend(i + 1);
      preimage_[h] = kUnset;
      image_[i] = kUnset;
      if (stop_) return;
    }
  }

  const Structure& pattern_;
  const Structure& host_;
  const EmbeddingOptions& opts_;
  GaifmanGraph pg_, hg_;
  std::vector<Element> fixed_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_max_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> host_incident_;
  std::vector<Element> image_, preimage_;
  const std::function<bool(const Embedding&)>* visit_ = nullptr;
  std::size_t found_ = 0;
  bool stop_ = false;
};

}  // namespace detail

// Calls `visit` on each induced embedding in lexicographic order of the image
// vector until it returns false or the limit is reached.
inline void for_each_embedding(const Structure& pattern, const Structure& host, const EmbeddingOptions& opts,
                               const std::function<bool(const Embedding&)>& visit) {
  detail::EmbeddingSearch(pattern, host, opts).run(visit);
}

inline std::vector<Embedding> find_embeddings(const Structure& pattern, const Structure& host,
                                              std::optional<std::size_t> limit = std::nullopt) {
  std::vector<Embedding> out;
  EmbeddingOptions opts;
  opts.limit = limit;
  if (limit && *limit == 0) return out;
  for_each_embedding(pattern, host, opts, [&](const Embedding& e) {
    out.push_back(e);
    return true;
  });
  return out;
}

inline std::optional<Embedding> first_embedding(const Structure& pattern, const Structure& host,
                                                EmbeddingOptions opts = {}) {
  std::optional<Embedding> out;
  opts.limit = 1;
  for_each_embedding(pattern, host, opts, [&](const Embedding& e) {
    out = e;
    return false;
  });
  return out;
}

inline std::optional<Embedding> find_isomorphism(const Structure& a, const Structure& b) {
  if (a.size() != b.size() || !(a.vocabulary() == b.vocabulary())) return std::nullopt;
  for (std::size_t r = 0; r < a.vocabulary().size(); ++r) {
    if (a.tuples(r).size() != b.tuples(r).size()) return std::nullopt;
  }
  return first_embedding(a, b);
}

inline bool isomorphic(const Structure& a, const Structure& b) { return find_isomorphism(a, b).has_value(); }

// True iff m is a union of Gaifman components of host.
inline bool is_closed(const GaifmanGraph& g, const SubsetMask& m) {
  if (m.parent_size() != g.size()) throw ArgumentError("mask does not match the structure");
  for (Element u : m.members()) {
    for (Element v : g.neighbors(u)) {
      if (!m.contains(v)) return false;
    }
  }
  return true;
}

inline bool is_closed(const Structure& host, const SubsetMask& m) { return is_closed(gaifman(host), m); }

// Lexicographically least embedding of `pattern` whose image is closed in
// `host`.
inline std::optional<Embedding> has_closed_copy(const Structure& host, const Structure& pattern) {
  const GaifmanGraph g = gaifman(host);
  EmbeddingOptions opts;
  opts.closed_image = true;
  std::optional<Embedding> out;
  for_each_embedding(pattern, host, opts, [&](const Embedding& e) {
    if (!is_closed(g, e.image_mask(host.size()))) return true;
    out = e;
    return false;
  });
  return out;
}

// Lexicographically least embedding of the substructure e.image (in e's
// element order) whose image is disjoint from e's image in the Gaifman sense.
inline std::optional<Embedding> find_disjoint_copy(const Structure& host, const Embedding& e) {
  const Structure pattern = pullback(host, e.image);
  const GaifmanGraph g = gaifman(host);
  const SubsetMask original = e.image_mask(host.size());
  EmbeddingOptions opts;
  if (e.image.empty()) return Embedding{};
  opts.allowed = ball(g, original, 1).complement();
  auto copy = first_embedding(pattern, host, opts);
  if (copy && !are_disjoint(g, original, copy->image_mask(host.size()))) {
    throw std::logic_error("disjoint copy search returned an adjacent image");
  }
  return copy;
}

}  // namespace zol
