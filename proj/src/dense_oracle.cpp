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

#include "nmipt/dense_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace nmipt::dense {

namespace {

constexpr double kPsdTolerance = 1e-12;

void check_sites(std::size_t num_sites) {
  if (num_sites == 0 || num_sites > DenseState::kMaxSites) {
    throw DimensionMismatch("dense oracle supports 1.." + std::to_string(DenseState::kMaxSites) +
                            " sites, got " + std::to_string(num_sites));
  }
}

void check_site(const DenseState& s, std::size_t site) {
  if (site >= s.num_sites) throw std::out_of_range("site outside dense state");
}

Matrix single_site(char letter) {
  Matrix m(2, 2);
  using C = std::complex<double>;
  switch (letter) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

}  // namespace

DenseState DenseState::product_zero(std::size_t num_sites) {
  check_sites(num_sites);
  const std::size_t dim = std::size_t{1} << num_sites;
  DenseState s{num_sites, Matrix::Zero(dim, dim)};
  s.rho(0, 0) = 1.0;
  return s;
}

DenseState DenseState::maximally_mixed(std::size_t num_sites) {
  check_sites(num_sites);
  const std::size_t dim = std::size_t{1} << num_sites;
  return DenseState{num_sites, Matrix::Identity(dim, dim) / static_cast<double>(dim)};
}

DenseState DenseState::from_stabilizer(const StabilizerState& state) {
  check_sites(state.num_sites());
  const std::size_t dim = std::size_t{1} << state.num_sites();
  Matrix rho = Matrix::Identity(dim, dim);
  const Matrix id = Matrix::Identity(dim, dim);
  for (const auto& g : state.generators()) rho = rho * (id + pauli_matrix(g)) * 0.5;
  return DenseState{state.num_sites(), rho / static_cast<double>(dim >> state.rank())};
}

Matrix pauli_matrix(const PauliOperator& p) {
  // Site 0 is the least significant bit, so it is the rightmost Kronecker factor.
  Matrix m = Matrix::Identity(1, 1);
  for (std::size_t j = 0; j < p.num_sites(); ++j) {
    const Matrix s = single_site(p.letter(j));
    Matrix next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index a = 0; a < 2; ++a) {
      for (Eigen::Index b = 0; b < 2; ++b) next.block(a * m.rows(), b * m.cols(), m.rows(), m.cols()) = s(a, b) * m;
    }
    m = std::move(next);
  }
  static const std::complex<double> kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPhases[p.phase & 3U] * m;
}

Matrix unitary_from_gate(const CliffordGate& gate) {
  const auto& img = gate.images();
  const Matrix x0 = pauli_matrix(img[CliffordGate::kX0].to_operator());
  const Matrix z0 = pauli_matrix(img[CliffordGate::kZ0].to_operator());
  const Matrix x1 = pauli_matrix(img[CliffordGate::kX1].to_operator());
  const Matrix z1 = pauli_matrix(img[CliffordGate::kZ1].to_operator());
  const Matrix id = Matrix::Identity(4, 4);
  // U|00> spans the joint +1 eigenspace of the Z images; the other columns
  // follow from U|ab> = X0'^a X1'^b U|00>.
  const Matrix proj = (id + z0) * (id + z1) * 0.25;
  Eigen::Index best = 0;
  proj.colwise().norm().maxCoeff(&best);
  Eigen::VectorXcd v00 = proj.col(best);
  v00.normalize();
  Matrix u(4, 4);
  u.col(0) = v00;
  u.col(1) = x0 * v00;
  u.col(2) = x1 * v00;
  u.col(3) = x0 * x1 * v00;
  return u;
}

void apply_gate_dense(DenseState& state, const Matrix& unitary, std::size_t i, std::size_t j) {
  if (unitary.rows() != 4 || unitary.cols() != 4) throw DimensionMismatch("two-site unitary must be 4x4");
  check_site(state, i);
  check_site(state, j);
  if (i == j) throw std::invalid_argument("gate sites must differ");
  const std::size_t dim = std::size_t{1} << state.num_sites;
  Matrix full = Matrix::Zero(dim, dim);
  const std::size_t mask = (std::size_t{1} << i) | (std::size_t{1} << j);
  for (std::size_t in = 0; in < dim; ++in) {
    const std::size_t local_in = ((in >> i) & 1U) | (((in >> j) & 1U) << 1);
    for (std::size_t local_out = 0; local_out < 4; ++local_out) {
      const std::size_t out = (in & ~mask) | ((local_out & 1U) << i) | (((local_out >> 1) & 1U) << j);
      full(out, in) = unitary(local_out, local_in);
    }
  }
  state.rho = full * state.rho * full.adjoint();
}

double project_dense(DenseState& state, std::size_t site, int outcome) {
  check_site(state, site);
  const std::size_t dim = std::size_t{1} << state.num_sites;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const int br = static_cast<int>((r >> site) & 1U);
      const int bc = static_cast<int>((c >> site) & 1U);
      if (br != outcome || bc != outcome) state.rho(r, c) = 0.0;
    }
  }
  const double prob = state.rho.trace().real();
  if (prob > kPsdTolerance) state.rho /= prob;
  return prob;
}

int channel_monitored_dense(DenseState& state, std::size_t site, std::mt19937_64& rng) {
  check_site(state, site);
  const std::size_t dim = std::size_t{1} << state.num_sites;
  double p0 = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    if (((r >> site) & 1U) == 0) p0 += state.rho(r, r).real();
  }
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const int outcome = u < p0 ? 0 : 1;
  const double prob = project_dense(state, site, outcome);
  if (prob <= kPsdTolerance) throw std::runtime_error("sampled a zero-probability measurement branch");
  return outcome;
}

void channel_unmonitored_dense(DenseState& state, std::size_t site) {
  check_site(state, site);
  const std::size_t dim = std::size_t{1} << state.num_sites;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (((r ^ c) >> site) & 1U) state.rho(r, c) = 0.0;
    }
  }
}

Matrix partial_trace_to(const DenseState& state, const Region& region) {
  if (region.num_sites() != state.num_sites) throw DimensionMismatch("region and state differ in length");
  std::vector<std::size_t> kept;
  std::size_t kept_mask = 0;
  for (std::size_t j = 0; j < state.num_sites; ++j) {
    if (region.contains(j)) {
      kept.push_back(j);
      kept_mask |= std::size_t{1} << j;
    }
  }
  auto compress = [&kept](std::size_t index) {
    std::size_t out = 0;
    for (std::size_t b = 0; b < kept.size(); ++b) out |= ((index >> kept[b]) & 1U) << b;
    return out;
  };
  const std::size_t dim = std::size_t{1} << state.num_sites;
  const std::size_t sub = std::size_t{1} << kept.size();
  Matrix reduced = Matrix::Zero(sub, sub);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~kept_mask) != (c & ~kept_mask)) continue;
      reduced(compress(r), compress(c)) += state.rho(r, c);
    }
  }
  return reduced;
}

double von_neumann_entropy(const DenseState& state, const Region& region) {
  const Matrix reduced = partial_trace_to(state, region);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(reduced, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double lambda = solver.eigenvalues()(k);
    if (lambda < -kPsdTolerance) throw std::domain_error("reduced state is not positive semidefinite");
    if (lambda > kPsdTolerance) s -= lambda * std::log2(lambda);
  }
  return s;
}

std::complex<double> expectation(const DenseState& state, const PauliOperator& p) {
  if (p.num_sites() != state.num_sites) throw DimensionMismatch("operator and state differ in length");
  return (state.rho * pauli_matrix(p)).trace();
}

}  // namespace nmipt::dense
