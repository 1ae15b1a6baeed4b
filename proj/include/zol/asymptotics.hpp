#pragma once

// Site percolation below a vertex of the full k-ary tree, and counts of
// unary forests with 0/1 edge labels.
//
// p_n is the probability that no descending path with n edges starting at the
// root survives: p_0 = q and p_(n+1) = q + p p_n^k with q = 1 - p. The limit is
// the least fixed point of f(x) = q + p x^k on [0, 1].

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "zol/errors.hpp"
#include "zol/parallel.hpp"
#include "zol/rng.hpp"
#include "zol/stochastics.hpp"

namespace zol {

struct FixpointParams {
  std::size_t k;
  double p;
  double q;

  FixpointParams(std::size_t k_, double p_) : k(k_), p(p_), q(1.0 - p_) {
    if (k < 1) throw ArgumentError("k must be at least 1");
    if (!(p > 0.0 && p < 1.0)) throw ArgumentError("p must lie strictly between 0 and 1");
  }

  double f(double x) const { return q + p * std::pow(x, static_cast<double>(k)); }
  double df(double x) const { return static_cast<double>(k) * p * std::pow(x, static_cast<double>(k) - 1.0); }

  // f(x) - x = (1 - x)(1 - kp + p sum_{j<k} (1 - x^j)), free of the
  // cancellation near a double root at 1.
  double excess(double x) const {
    const double y = 1.0 - x;
    double tail = 0.0, power = 1.0, partial = 0.0;  // partial = (1 - x^j) / y
    for (std::size_t j = 1; j < k; ++j) {
      partial += power;
      power *= x;
      tail += y * partial;
    }
    return y * ((1.0 - static_cast<double>(k) * p) + p * tail);
  }

  // 1 - f'(x) = 1 - kp + kp (1 - x^(k-1)).
  double slope_gap(double x) const {
    const double y = 1.0 - x;
    double partial = 0.0, power = 1.0;
    for (std::size_t j = 1; j < k; ++j) {
      partial += power;
      power *= x;
    }
    const double kp = static_cast<double>(k) * p;
    return (1.0 - kp) + kp * y * partial;
  }
};

inline double iterate_pn(const FixpointParams& params, std::size_t n) {
  double x = params.q;
  for (std::size_t i = 0; i < n; ++i) x = params.f(x);
  return x;
}

inline constexpr std::uint64_t kFixpointIterationCap = 10'000'000;

struct FixpointResult {
  double lfp;
  std::uint64_t iterations;  // applications of f starting from 0
  std::uint64_t newton_steps;
};

// Iterates f from 0, which increases monotonically to the least fixed point,
// until the Newton step (f(x) - x) / (1 - f'(x)) is small, then finishes with
// Newton steps. On [0, least fixed point] the function f(x) - x is convex and
// decreasing, so Newton from below never passes the least fixed point.
inline FixpointResult least_fixed_point(const FixpointParams& params, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  const double handoff = std::max(tol, 1e-4);
  auto newton_step = [&](double x) {
    const double slope = params.slope_gap(x);
    const double gap = params.excess(x);
    if (gap <= 0.0) return 0.0;
    if (slope <= 0.0) return 1.0 - x;
    return std::min(gap / slope, 1.0 - x);
  };
  FixpointResult r{0.0, 0, 0};
  double x = 0.0;
  while (newton_step(x) > handoff) {
    if (r.iterations == kFixpointIterationCap) {
      throw CapError("fixed-point iteration did not settle within " + std::to_string(kFixpointIterationCap) + " steps");
    }
    x = params.f(x);
    ++r.iterations;
  }
  for (double step = newton_step(x); step > tol / 10.0; step = newton_step(x)) {
    if (r.newton_steps == 10'000) throw CapError("Newton refinement did not settle within 10000 steps");
    x += step;
    ++r.newton_steps;
  }
  r.lfp = std::min(x, 1.0);
  return r;
}

inline double infinite_path_prob(const FixpointParams& params, double tol) {
  return 1.0 - least_fixed_point(params, tol).lfp;
}

struct PathEstimate {
  std::uint64_t samples;
  std::uint64_t hits;
  double estimate;
  double halfwidth;
};

namespace detail {

// Depth-first search for a surviving descending path with `remaining` more
// edges below a present node; node presence is keyed by its path hash.
inline bool survives_below(const FixpointParams& params, std::uint64_t node, std::size_t remaining) {
  if (remaining == 0) return true;
  for (std::size_t c = 0; c < params.k; ++c) {
    const std::uint64_t child = mix64(node ^ mix64(c + 1));
    if (bernoulli(child, params.p) && survives_below(params, child, remaining - 1)) return true;
  }
  return false;
}

}  // namespace detail

// Monte Carlo estimate of 1 - p_depth: the root and each descendant are
// present independently with probability p, and a sample counts when some
// descending path of `depth` edges from the root is fully present. Only
// present nodes are expanded and the search stops at the first full path.
inline PathEstimate descending_path_mc(const FixpointParams& params, std::size_t depth, std::uint64_t samples,
                                       std::uint64_t seed, unsigned workers = 0) {
  if (samples == 0) throw ArgumentError("sample count must be positive");
  const std::uint64_t hits = parallel_reduce<std::uint64_t>(
      samples, 0,
      [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t count = 0;
        for (std::uint64_t s = begin; s < end; ++s) {
          const std::uint64_t root = hash_key({seed, s});
          if (bernoulli(root, params.p) && detail::survives_below(params, root, depth)) ++count;
        }
        return count;
      },
      [](std::uint64_t a, std::uint64_t b) { return a + b; }, workers, 1 << 10);
  return {samples, hits, static_cast<double>(hits) / static_cast<double>(samples), hoeffding_halfwidth(samples)};
}

struct ForestCount {
  std::size_t n;
  BigInt a;  // on the universe {1..n}
  BigInt b;  // up to isomorphism
};

// b_n via the Euler transform of c_v = 2^(v-1) (labelled directed paths on v
// vertices): n b_n = sum_{j=1..n} s_j b_(n-j), s_j = sum_{d | j} d c_d.
inline std::vector<BigInt> unlabeled_forest_counts(std::size_t n_max) {
  std::vector<BigInt> s(n_max + 1, 0), b(n_max + 1, 0);
  for (std::size_t j = 1; j <= n_max; ++j) {
    for (std::size_t d = 1; d <= j; ++d) {
      if (j % d == 0) s[j] += BigInt(d) * (BigInt(1) << (d - 1));
    }
  }
  b[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    BigInt acc = 0;
    for (std::size_t j = 1; j <= n; ++j) acc += s[j] * b[n - j];
    b[n] = acc / n;
  }
  return b;
}

// a_n by the path through element 1: it has v vertices, chosen in
// C(n-1, v-1) ways, ordered in v! ways and labelled in 2^(v-1) ways.
inline std::vector<BigInt> labeled_forest_counts(std::size_t n_max) {
  std::vector<BigInt> a(n_max + 1, 0), fact(n_max + 1, 1);
  for (std::size_t i = 1; i <= n_max; ++i) fact[i] = fact[i - 1] * i;
  auto choose = [&](std::size_t n, std::size_t r) { return fact[n] / (fact[r] * fact[n - r]); };
  a[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    BigInt acc = 0;
    for (std::size_t v = 1; v <= n; ++v) acc += choose(n - 1, v - 1) * fact[v] * (BigInt(1) << (v - 1)) * a[n - v];
    a[n] = acc;
  }
  return a;
}

inline std::vector<ForestCount> count_forests(std::size_t n_max) {
  if (n_max < 1) throw ArgumentError("n_max must be at least 1");
  const auto a = labeled_forest_counts(n_max);
  const auto b = unlabeled_forest_counts(n_max);
  std::vector<ForestCount> out;
  for (std::size_t n = 1; n <= n_max; ++n) out.push_back({n, a[n], b[n]});
  return out;
}

inline std::vector<ForestCount> count_unlabeled_forests(std::size_t n_max) {
  auto out = count_forests(n_max);
  for (auto& c : out) c.a = 0;
  return out;
}

inline std::vector<ForestCount> count_labeled_forests(std::size_t n_max) {
  auto out = count_forests(n_max);
  for (auto& c : out) c.b = 0;
  return out;
}

struct ForestBounds {
  BigInt lower_b, upper_b, lower_a, upper_a;
  bool b_ok, a_ok;
};

// 2^(n-1) <= b_n <= 3^(n-1) and 2^(n-1) n! <= a_n <= 3^(n-1) n!.
inline ForestBounds forest_bounds(const ForestCount& c) {
  BigInt two = 1, three = 1, fact = 1;
  for (std::size_t i = 1; i < c.n; ++i) {
    two *= 2;
    three *= 3;
  }
  for (std::size_t i = 2; i <= c.n; ++i) fact *= i;
  ForestBounds fb{two, three, two * fact, three * fact, false, false};
  fb.b_ok = fb.lower_b <= c.b && c.b <= fb.upper_b;
  fb.a_ok = fb.lower_a <= c.a && c.a <= fb.upper_a;
  return fb;
}

struct RadiusProbe {
  std::vector<double> b_ratios;  // b_(n+1)/b_n for n = 10..n_max-1
  std::vector<double> a_ratios;  // (a_(n+1)/(n+1)!)/(a_n/n!) likewise
  bool b_in_range = true;
  bool a_in_range = true;
};

inline RadiusProbe radius_probe(std::size_t n_max) {
  if (n_max < 10) throw ArgumentError("n_max must be at least 10");
  const auto counts = count_forests(n_max);
  RadiusProbe rp;
  for (std::size_t n = 10; n < n_max; ++n) {
    const ForestCount& c = counts[n - 1];
    const ForestCount& d = counts[n];
    const double rb = to_double(Rational(d.b, c.b));
    const double ra = to_double(Rational(d.a, c.a * (n + 1)));
    rp.b_ratios.push_back(rb);
    rp.a_ratios.push_back(ra);
    rp.b_in_range = rp.b_in_range && rb >= 2.0 && rb <= 3.0;
    rp.a_in_range = rp.a_in_range && ra >= 2.0 && ra <= 3.0;
  }
  return rp;
}

}  // namespace zol
