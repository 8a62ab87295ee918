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

#include <utility>

#include "lindblad_ep/types.hpp"

namespace lindblad_ep {

/// Rotating-frame parameters (delta, d, Gamma) in units with hbar = 1.
///
/// delta is the detuning, d the (real) effective drive amplitude and Gamma
/// the environment coupling. Gamma must be non-negative and all fields
/// finite; the constructor throws DomainError otherwise.
struct ModelParams {
  double delta = 0.0;
  double d = 0.0;
  double gamma = 0.0;

  ModelParams(double delta_, double d_, double gamma_);

  /// d / delta. Throws DomainError for delta == 0.
  double d_tilde() const;
  /// Gamma / delta. Throws DomainError for delta == 0.
  double gamma_tilde() const;
  /// delta^2 + d^2 + Gamma^2, the natural energy^2 scale of the model.
  double energy_scale_sq() const { return delta * delta + d * d + gamma * gamma; }
};

/// Lab-frame parameters: level splitting Delta, drive frequency omega.
struct LabParams {
  double Delta = 0.0;
  double omega = 0.0;
  double d = 0.0;
  double gamma = 0.0;

  LabParams(double Delta_, double omega_, double d_, double gamma_);

  double detuning() const { return Delta - omega; }
  ModelParams rotating() const { return {detuning(), d, gamma}; }
};

/// 2x2 density matrix [[rho_ee, rho_eg], [rho_ge, rho_gg]].
///
/// Construction does not enforce the physical-state invariants; use
/// hermiticity_deviation(), trace_deviation() and min_eigenvalue() to
/// check them.
class DensityMatrix {
 public:
  DensityMatrix() : m_(ComplexMatrix2::Zero()) {}
  explicit DensityMatrix(const ComplexMatrix2& m) : m_(m) {}
  DensityMatrix(Complex ee, Complex eg, Complex ge, Complex gg) {
    m_ << ee, eg, ge, gg;
  }

  Complex ee() const { return m_(0, 0); }
  Complex eg() const { return m_(0, 1); }
  Complex ge() const { return m_(1, 0); }
  Complex gg() const { return m_(1, 1); }
  const ComplexMatrix2& matrix() const { return m_; }

  Complex trace() const { return m_.trace(); }
  double trace_deviation() const { return std::abs(m_.trace() - 1.0); }
  double hermiticity_deviation() const { return max_abs(m_ - m_.adjoint()); }
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;
  bool is_physical(double tol = 1e-12) const;

  static DensityMatrix excited() { return {1.0, 0.0, 0.0, 0.0}; }
  static DensityMatrix ground() { return {0.0, 0.0, 0.0, 1.0}; }
  static DensityMatrix mixed() { return {0.5, 0.0, 0.0, 0.5}; }
  static DensityMatrix coherent() { return {0.5, 0.5, 0.5, 0.5}; }

  friend bool operator==(const DensityMatrix& a, const DensityMatrix& b) {
    return a.m_ == b.m_;
  }

 private:
  ComplexMatrix2 m_;
};

/// Max-norm distance between two density matrices.
double distance(const DensityMatrix& a, const DensityMatrix& b);

/// RWA Hamiltonian [[Delta, (d/2)e^{-i omega t}], [(d/2)e^{i omega t}, 0]].
ComplexMatrix2 hamiltonian_rwa(const LabParams& params, double t);

/// Time-independent rotating-frame Hamiltonian [[delta, d/2], [d/2, 0]].
ComplexMatrix2 hamiltonian_rotating(const ModelParams& params);

/// (c, c^dagger): c = |g><e| relaxes the excited level.
std::pair<ComplexMatrix2, ComplexMatrix2> jump_operators();

/// U(t) = diag(e^{-i omega t}, 1).
ComplexMatrix2 frame_unitary(double omega, double t);

/// U(t) rho U(t)^dagger.
DensityMatrix rotate_to_lab(const DensityMatrix& rho_tilde, double omega, double t);

HSVector vectorize(const DensityMatrix& rho);

struct Devectorized {
  DensityMatrix rho;
  // Set when psi[0] and conj(psi[1]) differ, or rho_ee/rho_gg carry an
  // imaginary part, by more than the tolerance.
  bool hermiticity_violation = false;
};

Devectorized devectorize(const HSVector& psi, double tol = 1e-12);

}  // namespace lindblad_ep
