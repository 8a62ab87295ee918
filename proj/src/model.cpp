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

#include "lindblad_ep/model.hpp"

#include <cmath>
#include <string>

namespace lindblad_ep {

namespace {

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

void require_dissipative(double gamma) {
  if (gamma < 0.0) {
    throw DomainError("gamma must be >= 0, got " + std::to_string(gamma));
  }
}

}  // namespace

ModelParams::ModelParams(double delta_, double d_, double gamma_)
    : delta(delta_), d(d_), gamma(gamma_) {
  require_finite(delta, "delta");
  require_finite(d, "d");
  require_finite(gamma, "gamma");
  require_dissipative(gamma);
}

double ModelParams::d_tilde() const {
  if (delta == 0.0) {
    throw DomainError("delta = 0: scaled coordinates d/delta, Gamma/delta are undefined");
  }
  return d / delta;
}

double ModelParams::gamma_tilde() const {
  if (delta == 0.0) {
    throw DomainError("delta = 0: scaled coordinates d/delta, Gamma/delta are undefined");
  }
  return gamma / delta;
}

LabParams::LabParams(double Delta_, double omega_, double d_, double gamma_)
    : Delta(Delta_), omega(omega_), d(d_), gamma(gamma_) {
  require_finite(Delta, "Delta");
  require_finite(omega, "omega");
  require_finite(d, "d");
  require_finite(gamma, "gamma");
  require_dissipative(gamma);
}

double DensityMatrix::min_eigenvalue() const {
  const ComplexMatrix2 herm = 0.5 * (m_ + m_.adjoint());
  // Closed form for a 2x2 Hermitian matrix avoids an iterative solver.
  const double a = herm(0, 0).real();
  const double b = herm(1, 1).real();
  const double off = std::abs(herm(0, 1));
  return 0.5 * (a + b) - std::hypot(0.5 * (a - b), off);
}

bool DensityMatrix::is_physical(double tol) const {
  return hermiticity_deviation() <= tol && trace_deviation() <= tol &&
         min_eigenvalue() >= -tol;
}

double distance(const DensityMatrix& a, const DensityMatrix& b) {
  return max_abs(a.matrix() - b.matrix());
}

ComplexMatrix2 hamiltonian_rwa(const LabParams& params, double t) {
  const Complex phase = std::polar(1.0, -params.omega * t);
  ComplexMatrix2 h;
  h << params.Delta, 0.5 * params.d * phase,
      0.5 * params.d * std::conj(phase), 0.0;
  return h;
}

ComplexMatrix2 hamiltonian_rotating(const ModelParams& params) {
  ComplexMatrix2 h;
  h << params.delta, 0.5 * params.d, 0.5 * params.d, 0.0;
  return h;
}

std::pair<ComplexMatrix2, ComplexMatrix2> jump_operators() {
  ComplexMatrix2 c;
  c << 0.0, 0.0, 1.0, 0.0;
  return {c, c.adjoint()};
}

ComplexMatrix2 frame_unitary(double omega, double t) {
  ComplexMatrix2 u = ComplexMatrix2::Identity();
  u(0, 0) = std::polar(1.0, -omega * t);
  return u;
}

DensityMatrix rotate_to_lab(const DensityMatrix& rho_tilde, double omega, double t) {
  // Only the coherences pick up a phase; the diagonal is copied verbatim.
  const Complex phase = std::polar(1.0, -omega * t);
  return {rho_tilde.ee(), phase * rho_tilde.eg(), std::conj(phase) * rho_tilde.ge(),
          rho_tilde.gg()};
}

HSVector vectorize(const DensityMatrix& rho) {
  return HSVector(rho.eg(), rho.ge(), rho.ee(), rho.gg());
}

Devectorized devectorize(const HSVector& psi, double tol) {
  Devectorized out{DensityMatrix(psi[2], psi[0], psi[1], psi[3]), false};
  out.hermiticity_violation = std::abs(psi[0] - std::conj(psi[1])) > tol ||
                              std::abs(psi[2].imag()) > tol ||
                              std::abs(psi[3].imag()) > tol;
  return out;
}

}  // namespace lindblad_ep
