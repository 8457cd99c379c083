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

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nmipt {

/// Bijection on {0..Q-1} stored as its image array. Products read right to
/// left: compose(a, b)(i) = a(b(i)).
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless `image` is a bijection.
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int order);
  static Permutation transposition(int order, int a, int b);

  int order() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& image() const { return image_; }
  bool is_identity() const;

  /// Cycle notation including fixed points, e.g. "(0 1)(2)".
  std::string str() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> image_;
};

Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);
/// |g|: number of cycles, fixed points included.
int cycle_count(const Permutation& g);
/// |g|_1: number of fixed points.
int fixed_points(const Permutation& g);
/// Cycle lengths in decreasing order.
std::vector<int> cycle_type(const Permutation& g);

/// All Q! permutations in lexicographic order of their image arrays.
std::vector<Permutation> all_permutations(int order);
/// Position of g in all_permutations(g.order()).
std::size_t permutation_index(const Permutation& g);
std::size_t factorial(int n);

/// k disjoint n-cycles on consecutive blocks plus the fixed point nk, on Q = nk + 1.
Permutation boundary_permutation(int n, int k);

/// h_r = (g^{-1}(r) r); the identity when r is a fixed point of g.
Permutation pair_transposition(const Permutation& g, int r);
/// 1 iff g_rel * h has fewer cycles than g_rel.
int join_exponent(const Permutation& g_rel, const Permutation& h);

class SingularGram : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Weingarten function of S_Q at dimension d as exact rationals, indexed like
/// all_permutations(Q).
class WeingartenTable {
 public:
  int order() const { return order_; }
  long dimension() const { return dimension_; }
  const mpq_class& at(const Permutation& g) const { return values_.at(permutation_index(g)); }
  const std::vector<mpq_class>& values() const { return values_; }

 private:
  friend WeingartenTable weingarten_table(int order, long dimension);
  int order_ = 0;
  long dimension_ = 0;
  std::vector<mpq_class> values_;
};

/// Solves G w = e_identity with G[g][h] = d^{|g h^{-1}|}. Throws SingularGram
/// for d < Q.
WeingartenTable weingarten_table(int order, long dimension);

/// Exact d^{e}.
mpz_class integer_power(long base, int exponent);

}  // namespace nmipt
