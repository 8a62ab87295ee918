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

#include <array>
#include <optional>
#include <span>

#include "lindblad_ep/model.hpp"
#include "lindblad_ep/types.hpp"

namespace lindblad_ep {

/// Parameters of the depressed cubic y^3 + 3p y - 2q = 0 whose roots give
/// the three decaying eigenvalues through z = -i(2 Gamma / 3 + y).
///
/// u is the principal cube root of q + sqrt(disc) (the real cube root when
/// disc >= 0, sqrt(disc) = i sqrt(|disc|) when disc < 0) and v = -p / u, so
/// that u v = -p and u^3 + v^3 = 2q.
struct CardanoParams {
  double p = 0.0;
  double q = 0.0;
  double disc = 0.0;  // p^3 + q^2
  Complex u;
  Complex v;
};

CardanoParams cardano_params(const ModelParams& params);

using Eigenvalues = std::array<Complex, 4>;

/// (z0, z1, z2, z3) with z0 = 0 and z1..z3 from the Cardano expressions.
/// Labels follow the formulas; the result is not sorted. Inside the
/// triple-root guard (max(|p|, |q|) < 1e-12 max(1, delta^2 + d^2 + Gamma^2))
/// all three are returned as -2i Gamma / 3.
Eigenvalues eigenvalues_closed_form(const ModelParams& params);

struct EigenPair {
  HSRow left;
  HSVector right;  // scaled so that left * right = 1
};

/// Closed-form left/right eigenvectors for z_nu, nu in {1, 2, 3}.
///
/// Throws NearDegenerate when z lies within the coalescence threshold
/// |z_a - z_b| < 1e-6 max(1, |z_a|, |z_b|) of another eigenvalue, or when the
/// unnormalized product left * right vanishes relative to the vector norms
/// (this also happens for simple eigenvalues at d = 0, where the formulas
/// degenerate).
EigenPair eigenvectors_closed_form(const ModelParams& params, int nu, Complex z);

/// Pair gap threshold used by eigenvectors_closed_form.
bool nearly_coalesced(Complex a, Complex b);

/// All four eigenvalues of L from a dense eigensolver (no Cardano
/// formulas involved). Throws NonConvergence if the solver fails or a root
/// misses |det(L - zI)| <= 1e-9 ||L||_max^4.
Eigenvalues eigenvalues_numeric(const Superoperator& l);

/// |det(L - zI)|.
double characteristic_residual(const Superoperator& l, Complex z);

/// d/dz det(L - zI).
Complex characteristic_derivative(const Superoperator& l, Complex z);

/// min over permutations pi of max_i |a_i - b_pi(i)|.
double matched_distance(std::span<const Complex> a, std::span<const Complex> b);

/// Full spectral data: eigenvalues plus whatever eigenvectors the closed
/// forms yield. Pairs are indexed (0,1) (0,2) (0,3) (1,2) (1,3) (2,3).
struct Spectrum {
  Eigenvalues z{};
  std::array<std::optional<EigenPair>, 4> vectors;
  std::array<double, 4> char_residual{};
  // max(||L r - z r|| / ||r||, ||l L - z l|| / ||l||) (max-norms) per
  // available eigenpair, else NaN.
  std::array<double, 4> vector_residual{};
  std::array<bool, 6> degenerate{};
};

inline constexpr std::array<std::pair<int, int>, 6> kEigenPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

Spectrum compute_spectrum(const ModelParams& params);

/// [left_mu . right_nu]; empty unless every eigenpair is available.
std::optional<Eigen::Matrix4cd> biorthogonality(const Spectrum& s);

}  // namespace lindblad_ep
