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

#pragma once

#include "lindblad_ep/model.hpp"
#include "lindblad_ep/types.hpp"

namespace lindblad_ep {

/// The 4x4 Lindblad super-operator on (rho_eg, rho_ge, rho_ee, rho_gg):
///
///   [ delta - i G/2   0              -d/2   d/2 ]
///   [ 0              -delta - i G/2   d/2  -d/2 ]
///   [ -d/2            d/2            -i G   0   ]
///   [  d/2           -d/2             i G   0   ]
///
/// Convention: i dPsi/dt = L Psi. The factor -i is applied by callers that
/// integrate; it is never folded into L.
Superoperator build_lindblad(const ModelParams& params);

/// dRho/dt = -i[H, rho] + Gamma (c rho c^+ - {c^+ c, rho}/2).
ComplexMatrix2 lindblad_rhs(const ComplexMatrix2& hamiltonian, double gamma,
                            const DensityMatrix& rho);

struct NullEigenvectors {
  HSRow left;      // (0, 0, 1, 1): the trace functional
  HSVector right;  // normalized so that left * right = 1
};

/// Left and right eigenvectors of the null eigenvalue z0 = 0.
/// Throws DomainError when 4 delta^2 + 2 d^2 + Gamma^2 = 0.
NullEigenvectors null_eigenvectors(const ModelParams& params);

/// The unique stationary state, devectorize(null_eigenvectors().right).
DensityMatrix equilibrium_state(const ModelParams& params);

}  // namespace lindblad_ep
