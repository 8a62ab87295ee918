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

#include <numbers>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lindblad_ep/model.hpp"
#include "lindblad_ep/spectrum.hpp"

namespace lindblad_ep {

inline const double kEp3DTilde = 2.0 * std::numbers::sqrt2;
inline const double kEp3GammaTilde = 6.0 * std::numbers::sqrt3;

/// Phase-plane regions of the (d/delta, Gamma/delta) plane.
///   SplitPair     disc > 0: z2, z3 mirror images across the imaginary axis
///   AllImaginary  disc < 0: z1, z2, z3 on the imaginary axis
///   EP2Minus/Plus on the lower / upper EP2 curve
///   EP3           the merge point of the two curves
enum class Region { SplitPair, AllImaginary, EP2Minus, EP2Plus, EP3 };

std::string_view to_string(Region r);
bool is_exceptional(Region r);

enum class Branch { Minus, Plus };

struct PhasePoint {
  double d_tilde = 0.0;
  double gamma_tilde = 0.0;
  double disc = 0.0;
  Region region = Region::SplitPair;
  // sign(Im z1 - Im z2) for SplitPair points, 0 otherwise.
  int ordering = 0;
};

/// p^3 + q^2.
double discriminant(const ModelParams& params);

/// disc / max(1, (delta^2 + d^2 + Gamma^2)^3); disc scales as energy^6.
double scaled_discriminant(const ModelParams& params);

/// Half-width of the EP band on the raw discriminant:
/// 1e-10 max(1, (delta^2 + d^2 + Gamma^2)^3).
double ep_band(const ModelParams& params);

/// Gamma/delta on the two EP2 curves at d_tilde, (minus, plus).
/// Throws DomainError below d_tilde = 2 sqrt 2.
std::pair<double, double> ep2_gamma(double d_tilde);

/// Coalesced eigenvalue z2 = z3 on the given EP2 curve, in units of delta.
/// Throws DomainError below d_tilde = 2 sqrt 2 or if the inner radical is
/// negative beyond rounding.
Complex ep2_eigenvalue(double d_tilde, Branch branch);

struct EP3Point {
  double d_tilde = 0.0;
  double gamma_tilde = 0.0;
  Complex z;  // in units of delta
};

/// (2 sqrt 2, 6 sqrt 3, -4 sqrt 3 i).
EP3Point ep3_point();

/// Locates the EP3 point by bisection in d_tilde on the sign of the
/// discriminant along the q = 0 locus Gamma^2 = 36 (d^2/2 - 1), where the
/// discriminant reduces to p^3. Independent of the constants in ep3_point.
EP3Point ep3_locate_numeric();

/// Region of a parameter point. Throws DomainError for delta = 0.
///
/// |disc| <= ep_band marks an EP; EP3 when additionally |p|^3 and q^2 each
/// lie inside the band, otherwise the nearer EP2 curve in Gamma/delta.
PhasePoint classify(const ModelParams& params);

/// Both EP2 curve values at d_tilde from the discriminant alone: the
/// quadratic in Gamma^2 is sampled through cardano_params, its vertex
/// splits the two roots and each root is refined by bisection on the sign
/// of disc. Throws NoRoot when the discriminant stays positive.
std::pair<double, double> ep2_locate_numeric(double d_tilde);

struct EPCurvePoint {
  double d_tilde = 0.0;
  double gamma_minus = 0.0;
  double gamma_plus = 0.0;
  Complex z_minus;
  Complex z_plus;
  // scaled_discriminant at each curve point (verification residuals)
  double disc_minus = 0.0;
  double disc_plus = 0.0;
};

EPCurvePoint ep_curve_point(double d_tilde);

/// Least-squares slope of log(gap) against log(eps) for perturbations
/// base + eps * direction in the (d_tilde, Gamma_tilde) plane at delta = 1.
/// The gap is the smallest pairwise distance among z1..z3 at an EP2 and the
/// largest at the EP3. Expected slopes are 1/2 and 1/3.
///
/// Throws DomainError unless base is an EP, and DegenerateFit when an eps
/// is not positive and finite, the eps values span fewer than two decades,
/// or fewer than two gaps exceed 1e-12.
double splitting_exponent(const PhasePoint& base, std::pair<double, double> direction,
                          std::span<const double> epsilons);

/// Evenly spaced values, inclusive of both ends (count 1 gives {min}).
std::vector<double> linspace(double min, double max, int count);

/// classify() over the grid d_values x gamma_values at the given delta,
/// row-major with d_tilde outer. Rows are split across `workers` threads;
/// the result order does not depend on the worker count.
std::vector<PhasePoint> classify_grid(std::span<const double> d_tilde_values,
                                      std::span<const double> gamma_tilde_values,
                                      double delta, int workers);

}  // namespace lindblad_ep
