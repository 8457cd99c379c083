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

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <random>

#include "nmipt/clifford.hpp"
#include "nmipt/entanglement.hpp"
#include "nmipt/pauli.hpp"
#include "nmipt/stabilizer_state.hpp"

namespace nmipt::dense {

using Matrix = Eigen::MatrixXcd;

/// Reference density matrix on at most kMaxSites qubits. Basis index bit j is
/// the Z eigenvalue bit of site j.
struct DenseState {
  static constexpr std::size_t kMaxSites = 6;

  std::size_t num_sites = 0;
  Matrix rho;

  static DenseState product_zero(std::size_t num_sites);
  static DenseState maximally_mixed(std::size_t num_sites);
  /// rho = 2^-L prod (1 + g_i), built from dense Pauli matrices.
  static DenseState from_stabilizer(const StabilizerState& state);
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense matrix of a Pauli operator including its phase.
Matrix pauli_matrix(const PauliOperator& p);

/// A 4x4 unitary whose conjugation action matches the gate's image table, up
/// to global phase. Local index = bit(site 0) + 2 * bit(site 1).
Matrix unitary_from_gate(const CliffordGate& gate);

void apply_gate_dense(DenseState& state, const Matrix& unitary, std::size_t i, std::size_t j);

/// Born-sampled Z measurement; returns the outcome bit. Throws if the sampled
/// branch has vanishing probability.
int channel_monitored_dense(DenseState& state, std::size_t site, std::mt19937_64& rng);
/// Projects onto a given outcome and renormalises. Returns the branch
/// probability before renormalisation.
double project_dense(DenseState& state, std::size_t site, int outcome);

void channel_unmonitored_dense(DenseState& state, std::size_t site);

/// Reduced density matrix on the sites of `region`.
Matrix partial_trace_to(const DenseState& state, const Region& region);

/// -sum lambda log2 lambda over the spectrum of the reduced state.
double von_neumann_entropy(const DenseState& state, const Region& region);

std::complex<double> expectation(const DenseState& state, const PauliOperator& p);

}  // namespace nmipt::dense
