// Copyright 2026 The lindblad-ep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lindblad_ep/superop.hpp"

namespace lindblad_ep {

Superoperator build_lindblad(const ModelParams& params) {
  const double delta = params.delta;
  const double half_d = 0.5 * params.d;
  const double g = params.gamma;
  Superoperator l;
  // clang-format off
  l << Complex(delta, -0.5 * g), 0.0,                        -half_d,       half_d,
       0.0,                       Complex(-delta, -0.5 * g), half_d,        -half_d,
       -half_d,                   half_d,                    Complex(0, -g), 0.0,
       half_d,                    -half_d,                   Complex(0, g),  0.0;
  // clang-format on
  return l;
}

ComplexMatrix2 lindblad_rhs(const ComplexMatrix2& hamiltonian, double gamma,
                            const DensityMatrix& rho) {
  const auto [c, c_dag] = jump_operators();
  const ComplexMatrix2& r = rho.matrix();
  const ComplexMatrix2 n = c_dag * c;
  const ComplexMatrix2 commutator = hamiltonian * r - r * hamiltonian;
  const ComplexMatrix2 dissipator = c * r * c_dag - 0.5 * (n * r + r * n);
  return -kI * commutator + gamma * dissipator;
}

NullEigenvectors null_eigenvectors(const ModelParams& params) {
  const double delta = params.delta;
  const double d = params.d;
  const double g = params.gamma;
  const double norm = 4.0 * delta * delta + 2.0 * d * d + g * g;
  if (norm == 0.0) {
    throw DomainError("delta = d = gamma = 0: the stationary state is not unique");
  }
  NullEigenvectors out;
  out.left << 0.0, 0.0, 1.0, 1.0;
  out.right << -d * Complex(2.0 * delta, g), -d * Complex(2.0 * delta, -g), d * d,
      4.0 * delta * delta + d * d + g * g;
  out.right /= norm;
  return out;
}

DensityMatrix equilibrium_state(const ModelParams& params) {
  return devectorize(null_eigenvectors(params).right).rho;
}

}  // namespace lindblad_ep
