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

#include "nmipt/replica.hpp"

#include <algorithm>
#include <numeric>

namespace nmipt {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || static_cast<std::size_t>(v) >= image_.size() || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("permutation image is not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int order) {
  if (order < 1) throw std::invalid_argument("permutation order must be positive");
  std::vector<int> image(static_cast<std::size_t>(order));
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image));
}

Permutation Permutation::transposition(int order, int a, int b) {
  auto p = identity(order);
  if (a < 0 || b < 0 || a >= order || b >= order) throw std::out_of_range("transposition index out of range");
  std::swap(p.image_[static_cast<std::size_t>(a)], p.image_[static_cast<std::size_t>(b)]);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

std::string Permutation::str() const {
  std::string out;
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t start = 0; start < image_.size(); ++start) {
    if (seen[start]) continue;
    out += '(';
    std::size_t i = start;
    bool first = true;
    while (!seen[i]) {
      seen[i] = true;
      if (!first) out += ' ';
      out += std::to_string(i);
      first = false;
      i = static_cast<std::size_t>(image_[i]);
    }
    out += ')';
  }
  return out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.order() != b.order()) {
    throw std::invalid_argument("cannot compose permutations of orders " + std::to_string(a.order()) + " and " +
                                std::to_string(b.order()));
  }
  std::vector<int> image(static_cast<std::size_t>(a.order()));
  for (int i = 0; i < a.order(); ++i) image[static_cast<std::size_t>(i)] = a(b(i));
  return Permutation(std::move(image));
}

Permutation inverse(const Permutation& a) {
  std::vector<int> image(static_cast<std::size_t>(a.order()));
  for (int i = 0; i < a.order(); ++i) image[static_cast<std::size_t>(a(i))] = i;
  return Permutation(std::move(image));
}

std::vector<int> cycle_type(const Permutation& g) {
  std::vector<int> lengths;
  std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
  for (int start = 0; start < g.order(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    int len = 0;
    for (int i = start; !seen[static_cast<std::size_t>(i)]; i = g(i)) {
      seen[static_cast<std::size_t>(i)] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

int cycle_count(const Permutation& g) { return static_cast<int>(cycle_type(g).size()); }

int fixed_points(const Permutation& g) {
  int n = 0;
  for (int i = 0; i < g.order(); ++i) n += g(i) == i ? 1 : 0;
  return n;
}

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

std::vector<Permutation> all_permutations(int order) {
  std::vector<int> image(static_cast<std::size_t>(order));
  std::iota(image.begin(), image.end(), 0);
  std::vector<Permutation> out;
  out.reserve(factorial(order));
  do {
    out.emplace_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

std::size_t permutation_index(const Permutation& g) {
  // Lehmer code.
  const int n = g.order();
  std::size_t index = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += g(j) < g(i) ? 1 : 0;
    index += static_cast<std::size_t>(smaller) * factorial(n - 1 - i);
  }
  return index;
}

Permutation boundary_permutation(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("boundary_permutation needs n >= 1 and k >= 1");
  const int order = n * k + 1;
  std::vector<int> image(static_cast<std::size_t>(order));
  for (int block = 0; block < k; ++block) {
    for (int j = 0; j < n; ++j) image[static_cast<std::size_t>(block * n + j)] = block * n + (j + 1) % n;
  }
  image.back() = order - 1;
  return Permutation(std::move(image));
}

Permutation pair_transposition(const Permutation& g, int r) {
  if (r < 0 || r >= g.order()) throw std::out_of_range("replica index out of range");
  const Permutation inv = inverse(g);
  return Permutation::transposition(g.order(), inv(r), r);
}

int join_exponent(const Permutation& g_rel, const Permutation& h) {
  return cycle_count(compose(g_rel, h)) < cycle_count(g_rel) ? 1 : 0;
}

mpz_class integer_power(long base, int exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exponent));
  return out;
}

WeingartenTable weingarten_table(int order, long dimension) {
  if (order < 1) throw std::invalid_argument("Weingarten table needs Q >= 1");
  if (dimension < order) {
    throw SingularGram("Gram matrix is singular for d = " + std::to_string(dimension) + " < Q = " +
                       std::to_string(order));
  }
  const auto perms = all_permutations(order);
  const std::size_t n = perms.size();
  std::vector<mpz_class> powers(static_cast<std::size_t>(order) + 1);
  for (int e = 0; e <= order; ++e) powers[static_cast<std::size_t>(e)] = integer_power(dimension, e);

  // Augmented system [G | e_identity], exact Gauss-Jordan.
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = powers[static_cast<std::size_t>(cycle_count(compose(perms[i], inverse(perms[j]))))];
    }
    a[i][n] = perms[i].is_identity() ? 1 : 0;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw SingularGram("Gram matrix is singular");
    std::swap(a[pivot], a[col]);
    const mpq_class inv = 1 / a[col][col];
    for (std::size_t j = col; j <= n; ++j) a[col][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const mpq_class f = a[i][col];
      for (std::size_t j = col; j <= n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  WeingartenTable table;
  table.order_ = order;
  table.dimension_ = dimension;
  table.values_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) table.values_.push_back(a[i][n]);
  return table;
}

}  // namespace nmipt
