#pragma once

// Substructure fractions of balls (exact and sampled), cone measures of
// independent element retention, closed-copy probabilities in finite windows
// and the density bound for disjoint neighbourhoods of copies.
//
// The uniform distribution on subsets is retention with p = 1/2, so one
// sampler serves both. All randomness is keyed by (seed, sample, element).

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "zol/ambient.hpp"
#include "zol/errors.hpp"
#include "zol/eval.hpp"
#include "zol/formula.hpp"
#include "zol/morphisms.hpp"
#include "zol/parallel.hpp"
#include "zol/rng.hpp"
#include "zol/structure.hpp"

namespace zol {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "a/b" or a plain decimal such as "0.75"; the value must lie in
// [0, 1].
inline Rational parse_probability(std::string_view text) {
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw ArgumentError("malformed probability '" + std::string(text) + "'");
    const BigInt d{std::string(den)};
    if (d == 0) throw ArgumentError("probability '" + std::string(text) + "' has a zero denominator");
    value = Rational(BigInt{std::string(num)}, d);
  } else {
    const auto dot = text.find('.');
    const auto whole = text.substr(0, dot);
    const auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if ((!whole.empty() && !digits(whole)) || (!frac.empty() && !digits(frac)) || (whole.empty() && frac.empty()) ||
        (dot != std::string_view::npos && frac.empty())) {
      throw ArgumentError("malformed probability '" + std::string(text) + "'");
    }
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Rational(BigInt(std::string(whole.empty() ? "0" : whole)) * scale + BigInt(std::string(frac.empty() ? "0" : frac)),
                     scale);
  }
  if (value < 0 || value > 1) throw ArgumentError("probability '" + std::string(text) + "' is outside [0, 1]");
  return value;
}

// Half-width of the two-sided 99% Hoeffding interval for a mean of n
// samples in [0, 1].
inline double hoeffding_halfwidth(std::uint64_t n, double confidence = 0.99) {
  if (n == 0) return 1.0;
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(n)));
}

struct Probability {
  Rational exact;
  double value() const { return to_double(exact); }
};

struct ConeSpec {
  SubsetMask include;
  SubsetMask exclude;
  Rational p;
};

// Probability that independent retention with probability p keeps all of
// `include` and none of `exclude`: p^|S| (1-p)^|T|.
inline Probability cone_measure(const ConeSpec& c) {
  if (c.include.intersects(c.exclude)) throw ArgumentError("cone include and exclude sets overlap");
  if (c.p <= 0 || c.p >= 1) throw ArgumentError("cone probability must lie strictly between 0 and 1");
  const Rational q = 1 - c.p;
  Rational out = 1;
  for (std::size_t i = 0, n = c.include.count(); i < n; ++i) out *= c.p;
  for (std::size_t i = 0, n = c.exclude.count(); i < n; ++i) out *= q;
  return {out};
}

inline bool sample_keeps(std::uint64_t seed, std::uint64_t sample, std::uint64_t element, double p) {
  return bernoulli(hash_key({seed, sample, element}), p);
}

// Each element kept independently with probability p; a pure function of
// (seed, sample_index, element).
inline SubsetMask sample_substructure(const Structure& ball, double p, std::uint64_t seed,
                                      std::uint64_t sample_index = 0) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("retention probability must lie in [0, 1]");
  SubsetMask m(ball.size());
  for (std::size_t e = 0; e < ball.size(); ++e) {
    if (sample_keeps(seed, sample_index, e, p)) m.insert(static_cast<Element>(e));
  }
  return m;
}

enum class FractionMode { Exact, MonteCarlo };

inline const char* to_string(FractionMode m) { return m == FractionMode::Exact ? "exact" : "mc"; }

struct FractionResult {
  BigInt satisfied;
  BigInt total;
  Rational fraction;
  FractionMode mode = FractionMode::Exact;
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  double halfwidth = 0.0;

  double value() const { return to_double(fraction); }
};

inline constexpr std::size_t kExactFractionLimit = 25;

namespace detail {

inline void require_sentence(const Formula& phi, const Vocabulary& v) {
  validate(phi, v);
  if (!is_sentence(phi)) throw EvalError("formula has free variables; fractions need a sentence");
}

}  // namespace detail

// Counts the subsets of the universe (empty set included) whose induced
// substructure satisfies phi.
inline FractionResult fraction_exact(const Structure& ball, const Formula& phi, unsigned workers = 0) {
  detail::require_sentence(phi, ball.vocabulary());
  if (ball.size() > kExactFractionLimit) {
    throw GuardError("ball has " + std::to_string(ball.size()) + " elements; exact enumeration is limited to " +
                     std::to_string(kExactFractionLimit) + ", use Monte Carlo mode");
  }
  const std::uint64_t total = std::uint64_t{1} << ball.size();
  const std::uint64_t hits = parallel_reduce<std::uint64_t>(
      total, 0,
      [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t count = 0;
        std::vector<Element> members;
        for (std::uint64_t mask = begin; mask < end; ++mask) {
          members.clear();
          for (std::size_t e = 0; e < ball.size(); ++e) {
            if ((mask >> e) & 1u) members.push_back(static_cast<Element>(e));
          }
          if (eval_on_subset(ball, members, phi)) ++count;
        }
        return count;
      },
      [](std::uint64_t a, std::uint64_t b) { return a + b; }, workers);
  FractionResult r;
  r.satisfied = hits;
  r.total = total;
  r.fraction = Rational(r.satisfied, r.total);
  return r;
}

// Uniformly random subsets (retention 1/2) with a 99% Hoeffding half-width.
inline FractionResult fraction_mc(const Structure& ball, const Formula& phi, std::uint64_t samples, std::uint64_t seed,
                                  unsigned workers = 0) {
  detail::require_sentence(phi, ball.vocabulary());
  if (samples == 0) throw ArgumentError("sample count must be positive");
  const std::uint64_t hits = parallel_reduce<std::uint64_t>(
      samples, 0,
      [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t count = 0;
        std::vector<Element> members;
        for (std::uint64_t s = begin; s < end; ++s) {
          members.clear();
          for (std::size_t e = 0; e < ball.size(); ++e) {
            if (sample_keeps(seed, s, e, 0.5)) members.push_back(static_cast<Element>(e));
          }
          if (eval_on_subset(ball, members, phi)) ++count;
        }
        return count;
      },
      [](std::uint64_t a, std::uint64_t b) { return a + b; }, workers, 1 << 10);
  FractionResult r;
  r.satisfied = hits;
  r.total = samples;
  r.fraction = Rational(r.satisfied, r.total);
  r.mode = FractionMode::MonteCarlo;
  r.samples = samples;
  r.seed = seed;
  r.halfwidth = hoeffding_halfwidth(samples);
  return r;
}

enum class Verdict { TowardOne, TowardZero, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::TowardOne: return "toward-1";
    case Verdict::TowardZero: return "toward-0";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct TrajectoryConfig {
  FractionMode mode = FractionMode::Exact;
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
};

struct TrajectoryRow {
  std::size_t n;
  FractionResult result;
};

struct Trajectory {
  VertexId center;
  std::vector<TrajectoryRow> rows;
  Verdict verdict = Verdict::Inconclusive;
};

inline Verdict trend_verdict(double last) {
  if (last >= 0.9) return Verdict::TowardOne;
  if (last <= 0.1) return Verdict::TowardZero;
  return Verdict::Inconclusive;
}

// Fractions on B_n(center) for n = 1..n_max. In Monte Carlo mode the seed for
// radius n is derived from (seed, n).
inline Trajectory trajectory(const AmbientGenerator& g, const VertexId& center, const Formula& phi, std::size_t n_max,
                             const TrajectoryConfig& cfg) {
  if (n_max == 0) throw ArgumentError("n_max must be at least 1");
  if (cfg.mode == FractionMode::MonteCarlo && !cfg.seed) throw ArgumentError("Monte Carlo mode needs a seed");
  if (cfg.mode == FractionMode::Exact) {
    const std::size_t largest = ball_of(g, center, n_max).structure.size();
    if (largest > kExactFractionLimit) {
      throw GuardError("B_" + std::to_string(n_max) + " has " + std::to_string(largest) +
                       " elements; exact enumeration is limited to " + std::to_string(kExactFractionLimit) +
                       ", use Monte Carlo mode");
    }
  }
  Trajectory t;
  t.center = center;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const Structure ball = ball_of(g, center, n).structure;
    FractionResult r = cfg.mode == FractionMode::Exact
                           ? fraction_exact(ball, phi, cfg.workers)
                           : fraction_mc(ball, phi, cfg.samples, hash_key({*cfg.seed, n}), cfg.workers);
    if (r.seed) r.seed = cfg.seed;
    t.rows.push_back({n, std::move(r)});
  }
  t.verdict = trend_verdict(t.rows.back().result.value());
  return t;
}

struct CopyEstimate {
  std::size_t window_radius = 0;
  std::size_t window_size = 0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double estimate = 0.0;
  double halfwidth = 0.0;
};

namespace detail {

inline void require_in_class(const AmbientGenerator& g, const Structure& pattern) {
  if (!(pattern.vocabulary() == g.vocabulary())) throw ArgumentError("pattern and generator have different vocabularies");
  if (pattern.size() == 0) throw ArgumentError("pattern must be nonempty");
  if (!embeds_in_ambient(g, pattern)) throw ArgumentError("pattern does not embed in the generator's structure");
}

}  // namespace detail

// Probability that the p-random substructure of the window B_R(base) has a
// closed substructure isomorphic to `pattern`; closedness is judged inside
// the sampled substructure of the window.
inline CopyEstimate closed_copy_prob(const AmbientGenerator& g, const Structure& pattern, std::size_t window_radius,
                                     double p, std::uint64_t samples, std::uint64_t seed, unsigned workers = 0) {
  detail::require_in_class(g, pattern);
  if (samples == 0) throw ArgumentError("sample count must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("retention probability must lie in [0, 1]");
  const Structure window = ball_of(g, g.base_point(), window_radius).structure;
  const std::uint64_t hits = parallel_reduce<std::uint64_t>(
      samples, 0,
      [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t count = 0;
        for (std::uint64_t s = begin; s < end; ++s) {
          const Structure sub = induced(window, sample_substructure(window, p, seed, s)).structure;
          if (has_closed_copy(sub, pattern)) ++count;
        }
        return count;
      },
      [](std::uint64_t a, std::uint64_t b) { return a + b; }, workers, 1 << 10);
  CopyEstimate out;
  out.window_radius = window_radius;
  out.window_size = window.size();
  out.samples = samples;
  out.hits = hits;
  out.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  out.halfwidth = hoeffding_halfwidth(samples);
  return out;
}

inline constexpr std::size_t kExactWindowLimit = 20;

// The same probability by summing cone measures over every subset of the
// window.
inline Rational closed_copy_prob_exact(const AmbientGenerator& g, const Structure& pattern, std::size_t window_radius,
                                       const Rational& p) {
  detail::require_in_class(g, pattern);
  const Structure window = ball_of(g, g.base_point(), window_radius).structure;
  if (window.size() > kExactWindowLimit) {
    throw GuardError("window has " + std::to_string(window.size()) + " elements; exact summation is limited to " +
                     std::to_string(kExactWindowLimit));
  }
  const std::size_t n = window.size();
  std::vector<Rational> weight(n + 1);
  for (std::size_t kept = 0; kept <= n; ++kept) {
    weight[kept] = cone_measure({SubsetMask::from_bits(n, (std::uint64_t{1} << kept) - 1),
                                 SubsetMask::from_bits(n, ((std::uint64_t{1} << n) - 1) ^ ((std::uint64_t{1} << kept) - 1)),
                                 p})
                       .exact;
  }
  std::vector<std::uint64_t> by_count(n + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const SubsetMask m = SubsetMask::from_bits(n, mask);
    if (has_closed_copy(induced(window, m).structure, pattern)) ++by_count[m.count()];
  }
  Rational out = 0;
  for (std::size_t kept = 0; kept <= n; ++kept) out += weight[kept] * by_count[kept];
  return out;
}

struct DensityReport {
  std::size_t k = 0;  // |B_1(F_1)|
  std::size_t m = 0;
  std::vector<VertexId> f1;
  std::vector<std::vector<VertexId>> windows;  // G_1..G_m, pairwise disjoint
  std::vector<std::uint64_t> closing_subsets;  // per window: subsets of G_i closing a copy inside G_i
  Rational fraction;
  Rational bound;
  bool ok = false;
};

namespace detail {

inline std::set<VertexId> ambient_b1(const AmbientGenerator& g, const std::vector<VertexId>& ids) {
  std::set<VertexId> out(ids.begin(), ids.end());
  for (const auto& v : ids) {
    for (const auto& u : g.neighbors(v)) out.insert(u);
  }
  return out;
}

inline std::vector<std::size_t> distances_to_center(const BallPatch& w) {
  const Element src[] = {w.center_index()};
  const auto d = distances_from(gaifman(w.structure), src);
  std::vector<std::size_t> out;
  for (const auto& x : d) out.push_back(*x);
  return out;
}

}  // namespace detail

inline constexpr std::size_t kDensityWindowLimit = 24;
inline constexpr std::size_t kDensityRadiusCap = 256;

// Picks a copy F_1 of `pattern` near the base point with |B_1(F_1)| = k
// largest, finds pairwise disjoint windows G_1..G_m, each equal to B_1 of a
// copy F_i with (G_i, F_i) isomorphic to (G_1, F_1), and computes exactly the
// fraction of subsets S of G_1 u ... u G_m such that, for some i, a copy of
// the pattern inside G_i is closed in S with its whole neighbourhood in G_i.
// That fraction is at least the fraction for S n G_i = F_i alone, which is
// 1 - (1 - 2^-k)^m.
inline DensityReport generic_density_check(const AmbientGenerator& g, const Structure& pattern, std::size_t m) {
  detail::require_in_class(g, pattern);
  if (m == 0) throw ArgumentError("m must be at least 1");
  const std::size_t s = pattern.size();
  const std::size_t r0 = 2 * s + 1;

  DensityReport rep;
  rep.m = m;
  {
    const BallPatch w = ball_of(g, g.base_point(), r0);
    const auto dist = detail::distances_to_center(w);
    EmbeddingOptions opts;
    opts.limit = 200000;
    for_each_embedding(pattern, w.structure, opts, [&](const Embedding& e) {
      std::vector<VertexId> ids;
      for (Element v : e.image) {
        if (dist[v] + 1 > r0) return true;
        ids.push_back(w.vertices[v]);
      }
      const std::size_t size = detail::ambient_b1(g, ids).size();
      if (size > rep.k) {
        rep.k = size;
        rep.f1 = ids;
      }
      return true;
    });
  }
  if (rep.f1.empty()) throw BudgetError("no copy of the pattern within distance " + std::to_string(r0 - 1) + " of the base point");
  if (rep.k > kDensityWindowLimit) {
    throw GuardError("neighbourhood of " + std::to_string(rep.k) + " elements exceeds the exact counting limit of " +
                     std::to_string(kDensityWindowLimit));
  }

  const BallPatch h = ball_of(g, rep.f1, 1);
  std::vector<Element> fpos;
  for (const auto& v : rep.f1) fpos.push_back(*h.local_index(v));
  rep.windows.push_back(h.vertices);
  std::set<VertexId> blocked = detail::ambient_b1(g, h.vertices);

  for (std::size_t radius = r0; rep.windows.size() < m; radius *= 2) {
    if (radius > kDensityRadiusCap) {
      throw BudgetError("found only " + std::to_string(rep.windows.size()) + " disjoint windows within distance " +
                        std::to_string(kDensityRadiusCap) + " of the base point");
    }
    const BallPatch w = ball_of(g, g.base_point(), radius);
    const auto dist = detail::distances_to_center(w);
    while (rep.windows.size() < m) {
      EmbeddingOptions opts;
      opts.allowed = SubsetMask(w.structure.size());
      for (std::size_t v = 0; v < w.vertices.size(); ++v) {
        if (dist[v] < radius && !blocked.count(w.vertices[v])) opts.allowed->insert(static_cast<Element>(v));
      }
      opts.limit = 1000000;
      std::optional<std::vector<VertexId>> found;
      for_each_embedding(h.structure, w.structure, opts, [&](const Embedding& e) {
        std::vector<VertexId> fi, gi;
        for (Element p : fpos) fi.push_back(w.vertices[e.image[p]]);
        for (Element v : e.image) gi.push_back(w.vertices[v]);
        if (detail::ambient_b1(g, fi) != std::set<VertexId>(gi.begin(), gi.end())) return true;
        found = std::move(gi);
        return false;
      });
      if (!found) break;
      for (const auto& v : detail::ambient_b1(g, *found)) blocked.insert(v);
      rep.windows.push_back(std::move(*found));
    }
  }

  const BigInt full = BigInt(1) << rep.k;
  Rational miss = 1;
  for (const auto& window : rep.windows) {
    const BallPatch gi = ball_of(g, window, 0);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> copies;  // (image bits, neighbourhood bits)
    for_each_embedding(pattern, gi.structure, {}, [&](const Embedding& e) {
      std::vector<VertexId> ids;
      std::uint64_t img = 0;
      for (Element v : e.image) {
        ids.push_back(gi.vertices[v]);
        img |= std::uint64_t{1} << v;
      }
      std::uint64_t nb = 0;
      for (const auto& v : detail::ambient_b1(g, ids)) {
        auto idx = gi.local_index(v);
        if (!idx) return true;
        nb |= std::uint64_t{1} << *idx;
      }
      copies.emplace_back(img, nb);
      return true;
    });
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rep.k); ++mask) {
      for (const auto& [img, nb] : copies) {
        if ((mask & nb) == img) {
          ++count;
          break;
        }
      }
    }
    rep.closing_subsets.push_back(count);
    miss *= 1 - Rational(BigInt(count), full);
  }
  rep.fraction = 1 - miss;
  Rational one_miss = 1 - Rational(BigInt(1), full);
  Rational pow = 1;
  for (std::size_t i = 0; i < m; ++i) pow *= one_miss;
  rep.bound = 1 - pow;
  rep.ok = rep.fraction >= rep.bound;
  return rep;
}

}  // namespace zol
