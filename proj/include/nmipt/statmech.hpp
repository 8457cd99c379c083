// Copyright 2026 The nmipt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nmipt/replica.hpp"

namespace nmipt {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InconsistentPatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which bonds join row 0 to row 1; rows then alternate.
enum class Attachment { kVertical, kZigzag };

/// Sites (row, col) -> row * width + col. Vertical rows pair (r,c)-(r+1,c);
/// zigzag rows pair (r,c) with (r+1,c) and (r+1,c+1). Edges are stored as
/// (lower site, upper site).
struct HoneycombPatch {
  std::size_t width = 0;
  std::size_t depth = 0;
  Attachment attachment = Attachment::kVertical;
  std::vector<std::pair<std::size_t, std::size_t>> vertical_edges;
  std::vector<std::pair<std::size_t, std::size_t>> zigzag_edges;
  std::vector<std::size_t> bottom_boundary;
  std::vector<std::size_t> top_boundary;
  std::vector<std::size_t> region_a;

  /// Region A is the last `region_size` sites of the top row.
  static HoneycombPatch make(std::size_t width, std::size_t depth, std::size_t region_size,
                             Attachment attachment = Attachment::kVertical);

  std::size_t num_sites() const { return width * depth; }
  bool zigzag_between(std::size_t row) const;  // bonds from row to row + 1
  /// Throws InconsistentPatch.
  void validate() const;
};

/// Coefficient of the projective branch in W_KM: p^Q d, or p^Q d^Q.
enum class ProjectionNorm { kLinear, kPower };

mpq_class rational_from_decimal(double value);

namespace detail {

template <class S>
S from_rational(const mpq_class& v);
template <>
inline mpq_class from_rational<mpq_class>(const mpq_class& v) {
  return v;
}
template <>
inline double from_rational<double>(const mpq_class& v) {
  return v.get_d();
}

template <class S>
S power(const S& base, int exponent) {
  S out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

inline double to_double(const mpq_class& v) { return v.get_d(); }
inline double to_double(double v) { return v; }

inline bool scalar_equal(const mpq_class& a, const mpq_class& b) { return a == b; }
inline bool scalar_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace detail

/// d^{|c|} for the relative permutation c = g g'^{-1} h_{r1}^{t1}..., summed
/// over dephasing subsets. Insertions are applied in ascending r, each t
/// judged against the partial product.
template <class S>
S k_matrix_element(const Permutation& g, const Permutation& g_prime, const S& q, long d) {
  if (g.order() != g_prime.order()) throw std::invalid_argument("k_matrix_element: permutation orders differ");
  const int order = g.order();
  const S d_s = S(d);
  const Permutation base = compose(g, inverse(g_prime));
  std::vector<Permutation> h;
  for (int r = 0; r < order; ++r) h.push_back(pair_transposition(g, r));
  S total = 0;
  for (unsigned mask = 0; mask < (1U << order); ++mask) {
    Permutation rel = base;
    int l = 0;
    for (int r = 0; r < order; ++r) {
      if (!((mask >> r) & 1U)) continue;
      ++l;
      if (join_exponent(rel, h[static_cast<std::size_t>(r)]) == 1) rel = compose(rel, h[static_cast<std::size_t>(r)]);
    }
    total += detail::power(q, l) * detail::power(S(1 - q), order - l) * detail::power(d_s, cycle_count(rel));
  }
  return total;
}

template <class S>
S w_km(const Permutation& g, const Permutation& g_prime, const S& p, const S& q, long d,
       ProjectionNorm norm = ProjectionNorm::kLinear) {
  const int order = g.order();
  const S projective = norm == ProjectionNorm::kLinear ? S(d) : detail::power(S(d), order);
  return detail::power(S(1 - p), order) * k_matrix_element(g, g_prime, q, d) + detail::power(p, order) * projective;
}

/// Leading large-d form d^Q((1-p)^Q [(1-q) + q|g'|_1] delta_{g,g'} + p^Q).
template <class S>
S large_d_weight(const Permutation& g, const Permutation& g_prime, const S& p, const S& q, long d) {
  const int order = g.order();
  S diag = 0;
  if (g == g_prime) diag = S(1 - q) + q * S(fixed_points(g_prime));
  return detail::power(S(d), order) * (detail::power(S(1 - p), order) * diag + detail::power(p, order));
}

/// large_d_weight plus the next order, (1-p)^Q d^{Q-1} ([1 + q max(|g|_1,
/// |g'^{-1}|_1)] delta_{|gg'^{-1}|,Q-1} + q Q delta_{g,g'} delta_{|g|_1,0}).
template <class S>
S large_d_weight_corrected(const Permutation& g, const Permutation& g_prime, const S& p, const S& q, long d) {
  const int order = g.order();
  S sub = 0;
  if (cycle_count(compose(g, inverse(g_prime))) == order - 1) {
    sub += 1 + q * S(std::max(fixed_points(g), fixed_points(inverse(g_prime))));
  }
  if (g == g_prime && fixed_points(g) == 0) sub += q * S(order);
  return large_d_weight(g, g_prime, p, q, d) +
         detail::power(S(1 - p), order) * detail::power(S(d), order - 1) * sub;
}

/// Tables over S_Q indexed like all_permutations(Q).
template <class S>
struct BondWeights {
  int order = 0;
  long dimension = 0;
  S p = 0;
  S q = 0;
  ProjectionNorm norm = ProjectionNorm::kLinear;
  std::vector<Permutation> perms;
  std::vector<S> vertical;  // W(g_i g_j^{-1}), row-major over (i, j)
  std::vector<S> zigzag;    // W_KM(g_i, g_j)

  std::size_t size() const { return perms.size(); }
  const S& vertical_at(std::size_t i, std::size_t j) const { return vertical[i * perms.size() + j]; }
  const S& zigzag_at(std::size_t i, std::size_t j) const { return zigzag[i * perms.size() + j]; }
};

template <class S>
BondWeights<S> make_bond_weights(int order, long d, const S& p, const S& q, ProjectionNorm norm = ProjectionNorm::kLinear) {
  BondWeights<S> w;
  w.order = order;
  w.dimension = d;
  w.p = p;
  w.q = q;
  w.norm = norm;
  w.perms = all_permutations(order);
  const auto wg = weingarten_table(order, d);
  const std::size_t n = w.perms.size();
  w.vertical.resize(n * n);
  w.zigzag.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      w.vertical[i * n + j] = detail::from_rational<S>(wg.at(compose(w.perms[i], inverse(w.perms[j]))));
      w.zigzag[i * n + j] = w_km(w.perms[i], w.perms[j], p, q, d, norm);
    }
  }
  return w;
}

enum class Engine { kBruteForce, kTransferMatrix };

struct EngineLimits {
  double brute_force_budget = 1e8;      // configurations
  double transfer_matrix_limit = 1e6;   // row-state dimension
};

namespace detail {

template <class S>
struct SiteFactors {
  std::vector<std::vector<S>> per_site;  // [site][perm index]
};

template <class S>
SiteFactors<S> site_factors(const HoneycombPatch& patch, const BondWeights<S>& w,
                            const std::optional<Permutation>& region_boundary) {
  const std::size_t n = w.size();
  SiteFactors<S> f;
  f.per_site.assign(patch.num_sites(), std::vector<S>(n, S(1)));
  const S d_s = S(w.dimension);
  const S d_q = power(d_s, w.order);
  for (std::size_t site : patch.bottom_boundary) {
    for (std::size_t i = 0; i < n; ++i) f.per_site[site][i] *= power(d_s, cycle_count(w.perms[i])) / d_q;
  }
  std::vector<bool> in_a(patch.num_sites(), false);
  if (region_boundary) {
    if (region_boundary->order() != w.order) throw std::invalid_argument("region permutation has the wrong order");
    for (std::size_t site : patch.region_a) in_a[site] = true;
  }
  for (std::size_t site : patch.top_boundary) {
    for (std::size_t i = 0; i < n; ++i) {
      const int cycles = in_a[site] ? cycle_count(compose(inverse(*region_boundary), w.perms[i]))
                                    : cycle_count(w.perms[i]);
      f.per_site[site][i] *= power(d_s, cycles);
    }
  }
  return f;
}

template <class S>
S brute_force(const HoneycombPatch& patch, const BondWeights<S>& w, const SiteFactors<S>& f, const EngineLimits& lim) {
  const std::size_t n = w.size();
  const std::size_t sites = patch.num_sites();
  if (static_cast<double>(sites) * std::log(static_cast<double>(n)) > std::log(lim.brute_force_budget)) {
    throw BudgetExceeded("brute force needs " + std::to_string(n) + "^" + std::to_string(sites) +
                         " configurations, over the budget");
  }
  std::vector<std::size_t> config(sites, 0);
  S total = 0;
  for (;;) {
    S term = 1;
    for (std::size_t s = 0; s < sites; ++s) term *= f.per_site[s][config[s]];
    for (const auto& [a, b] : patch.vertical_edges) term *= w.vertical_at(config[a], config[b]);
    for (const auto& [a, b] : patch.zigzag_edges) term *= w.zigzag_at(config[a], config[b]);
    total += term;
    std::size_t pos = 0;
    while (pos < sites && ++config[pos] == n) config[pos++] = 0;
    if (pos == sites) break;
  }
  return total;
}

template <class S>
S transfer_matrix(const HoneycombPatch& patch, const BondWeights<S>& w, const SiteFactors<S>& f,
                  const EngineLimits& lim) {
  const std::size_t n = w.size();
  const std::size_t width = patch.width;
  if (static_cast<double>(width) * std::log(static_cast<double>(n)) > std::log(lim.transfer_matrix_limit)) {
    throw BudgetExceeded("transfer matrix dimension " + std::to_string(n) + "^" + std::to_string(width) +
                         " is over the limit");
  }
  std::size_t dim = 1;
  std::vector<std::size_t> stride(width);
  for (std::size_t c = 0; c < width; ++c) {
    stride[c] = dim;
    dim *= n;
  }
  auto digit = [&](std::size_t idx, std::size_t c) { return (idx / stride[c]) % n; };

  std::vector<S> v(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    S val = 1;
    for (std::size_t c = 0; c < width; ++c) val *= f.per_site[c][digit(idx, c)];
    v[idx] = val;
  }
  std::vector<S> next(dim);
  // Swap the row-r value at column c for a row-(r+1) value, summing out the old one.
  auto replace = [&](std::size_t c, auto&& factor) {
    for (std::size_t idx = 0; idx < dim; ++idx) {
      const std::size_t u = digit(idx, c);
      const std::size_t base = idx - u * stride[c];
      S acc = 0;
      for (std::size_t o = 0; o < n; ++o) acc += v[base + o * stride[c]] * factor(o, u, idx);
      next[idx] = acc;
    }
    std::swap(v, next);
  };
  for (std::size_t r = 0; r + 1 < patch.depth; ++r) {
    if (patch.zigzag_between(r)) {
      for (std::size_t c = width; c-- > 0;) {
        replace(c, [&](std::size_t o, std::size_t u, std::size_t idx) {
          S val = w.zigzag_at(o, u);
          if (c > 0) val *= w.zigzag_at(digit(idx, c - 1), u);
          return val;
        });
      }
    } else {
      for (std::size_t c = 0; c < width; ++c) {
        replace(c, [&](std::size_t o, std::size_t u, std::size_t) { return w.vertical_at(o, u); });
      }
    }
    const std::size_t row_start = (r + 1) * width;
    for (std::size_t idx = 0; idx < dim; ++idx) {
      for (std::size_t c = 0; c < width; ++c) v[idx] *= f.per_site[row_start + c][digit(idx, c)];
    }
  }
  S total = 0;
  for (const auto& x : v) total += x;
  return total;
}

}  // namespace detail

/// Z_A with g(n,k,1) pinned on region A when `region_boundary` is set, Z_empty
/// otherwise.
template <class S>
S partition_function(const HoneycombPatch& patch, const BondWeights<S>& weights,
                     const std::optional<Permutation>& region_boundary, Engine engine,
                     const EngineLimits& limits = {}) {
  patch.validate();
  const auto f = detail::site_factors(patch, weights, region_boundary);
  return engine == Engine::kBruteForce ? detail::brute_force(patch, weights, f, limits)
                                       : detail::transfer_matrix(patch, weights, f, limits);
}

/// n/(1-n) (Z_A - Z_empty)/(Q - 1) with Q = nk + 1.
template <class S>
S renyi_from_partition(const S& z_a, const S& z_empty, int n, int k) {
  if (n < 2) throw std::invalid_argument("renyi_from_partition needs n >= 2");
  if (k < 1) throw std::invalid_argument("renyi_from_partition needs k >= 1");
  const int order = n * k + 1;
  return S(n) / S(1 - n) * (z_a - z_empty) / S(order - 1);
}

struct SymmetryWitness {
  Permutation h_left, h_right, g, g_prime;
  double lhs = 0.0;  // W_KM(h_L g h_R^-1, h_L g' h_R^-1)
  double rhs = 0.0;  // W_KM(g, g')
};

struct SymmetryReport {
  int order = 0;
  std::size_t pairs_tested = 0;
  std::vector<std::pair<Permutation, Permutation>> passing;  // (h_L, h_R)
  std::size_t diagonal_passing = 0;
  std::size_t off_diagonal_passing = 0;
  bool swap_holds = false;  // W_KM(g, g') = W_KM(g^-1, g'^-1) for all pairs
  std::optional<SymmetryWitness> witness;

  bool full_group() const { return passing.size() == pairs_tested; }
  bool only_diagonal() const {
    return off_diagonal_passing == 0 && diagonal_passing * diagonal_passing == pairs_tested;
  }
};

template <class S>
SymmetryReport symmetry_audit(const BondWeights<S>& w) {
  const std::size_t n = w.size();
  SymmetryReport rep;
  rep.order = w.order;
  std::vector<std::size_t> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = permutation_index(inverse(w.perms[i]));
  for (std::size_t hl = 0; hl < n; ++hl) {
    for (std::size_t hr = 0; hr < n; ++hr) {
      ++rep.pairs_tested;
      // image[i] = index of h_L g_i h_R^-1
      std::vector<std::size_t> image(n);
      for (std::size_t i = 0; i < n; ++i) {
        image[i] = permutation_index(compose(compose(w.perms[hl], w.perms[i]), w.perms[inv[hr]]));
      }
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        for (std::size_t j = 0; j < n && ok; ++j) {
          if (!detail::scalar_equal(w.zigzag_at(image[i], image[j]), w.zigzag_at(i, j))) {
            ok = false;
            if (!rep.witness && hl != hr) {
              rep.witness = SymmetryWitness{w.perms[hl], w.perms[hr], w.perms[i], w.perms[j],
                                            detail::to_double(w.zigzag_at(image[i], image[j])),
                                            detail::to_double(w.zigzag_at(i, j))};
            }
          }
        }
      }
      if (ok) {
        rep.passing.emplace_back(w.perms[hl], w.perms[hr]);
        (hl == hr ? rep.diagonal_passing : rep.off_diagonal_passing) += 1;
      }
    }
  }
  rep.swap_holds = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rep.swap_holds = rep.swap_holds && detail::scalar_equal(w.zigzag_at(inv[i], inv[j]), w.zigzag_at(i, j));
    }
  }
  return rep;
}

}  // namespace nmipt
