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

#include "lindblad_ep/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "lindblad_ep/superop.hpp"

namespace lindblad_ep {

namespace {

constexpr double kTinyRoot = 1e-100;
constexpr double kCoalescence = 1e-6;
constexpr double kTripleGuard = 1e-12;
constexpr double kVanishingFloor = 1e-8;
constexpr double kNormalizationFloor = 1e-10;

const Complex kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

Complex principal_cbrt(Complex x) {
  if (x == Complex(0.0)) return 0.0;
  return std::polar(std::cbrt(std::abs(x)), std::arg(x) / 3.0);
}

// Cube root of x, real when x is real.
Complex cube_root(Complex x, bool real_branch) {
  if (real_branch) return std::cbrt(x.real());
  return principal_cbrt(x);
}

}  // namespace

CardanoParams cardano_params(const ModelParams& params) {
  const double delta2 = params.delta * params.delta;
  const double d2 = params.d * params.d;
  const double g = params.gamma;
  CardanoParams c;
  c.p = (delta2 + d2 - g * g / 12.0) / 3.0;
  c.q = g / 6.0 * (delta2 - d2 / 2.0 + g * g / 36.0);
  c.disc = c.p * c.p * c.p + c.q * c.q;

  const bool real_branch = c.disc >= 0.0;
  const Complex root =
      real_branch ? Complex(std::sqrt(c.disc)) : Complex(0.0, std::sqrt(-c.disc));
  const Complex plus = c.q + root;
  const Complex minus = c.q - root;

  // Take the cube root of the larger radicand first and recover the other
  // from u v = -p. For real radicands this is the same u as the principal
  // rule; for complex ones both radicands have equal modulus and u comes
  // first, so v = -p / u = conj(u).
  if (std::abs(plus) >= std::abs(minus)) {
    c.u = cube_root(plus, real_branch);
    c.v = std::abs(c.u) > kTinyRoot ? -c.p / c.u : cube_root(minus, real_branch);
  } else {
    c.v = cube_root(minus, real_branch);
    c.u = std::abs(c.v) > kTinyRoot ? -c.p / c.v : cube_root(plus, real_branch);
  }
  return c;
}

Eigenvalues eigenvalues_closed_form(const ModelParams& params) {
  const CardanoParams c = cardano_params(params);
  const Complex shift = 2.0 * params.gamma / 3.0;
  Eigenvalues z;
  z[0] = 0.0;
  const double scale = std::max(1.0, params.energy_scale_sq());
  if (std::max(std::abs(c.p), std::abs(c.q)) < kTripleGuard * scale) {
    z[1] = z[2] = z[3] = -kI * shift;
    return z;
  }
  const Complex omega_bar = std::conj(kOmega);
  z[1] = -kI * (shift + c.u + c.v);
  z[2] = -kI * (shift + kOmega * c.u + omega_bar * c.v);
  z[3] = -kI * (shift + omega_bar * c.u + kOmega * c.v);
  if (c.disc >= 0.0) {
    // u, v real: z1 is exactly imaginary.
    z[1] = Complex(0.0, z[1].imag());
  }
  return z;
}

bool nearly_coalesced(Complex a, Complex b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) < kCoalescence * scale;
}

EigenPair eigenvectors_closed_form(const ModelParams& params, int nu, Complex z) {
  if (nu < 1 || nu > 3) {
    throw DomainError("eigenvector index must be 1, 2 or 3, got " + std::to_string(nu));
  }
  const Eigenvalues all = eigenvalues_closed_form(params);
  for (int k = 0; k < 4; ++k) {
    if (k != nu && nearly_coalesced(z, all[k])) {
      throw NearDegenerate("z_" + std::to_string(nu) + " coalesces with z_" +
                           std::to_string(k) + "; eigenvectors are not defined");
    }
  }

  const double delta = params.delta;
  const double d = params.d;
  const Complex ig = kI * params.gamma;
  const Complex a = ig + 2.0 * delta + 2.0 * z;
  const Complex bracket = (ig + z) * a - d * d;

  EigenPair out;
  out.left << 2.0 * z * bracket, -2.0 * d * d * z, -d * (-ig + z) * a, d * (ig + z) * a;
  out.right << 2.0 * bracket, -2.0 * d * d, -d * a, d * a;

  // The entries are products of terms of this size; when they all cancel
  // the direction is rounding noise (d = 0 at z = -delta - i Gamma/2).
  const double term_scale =
      (std::abs(params.gamma) + std::abs(z)) *
          (std::abs(params.gamma) + 2.0 * std::abs(delta) + 2.0 * std::abs(z)) +
      d * d;
  if (max_abs(out.right) <= kVanishingFloor * term_scale) {
    throw NearDegenerate("closed-form eigenvector vanishes for z_" + std::to_string(nu));
  }

  const Complex norm = (out.left * out.right)(0, 0);
  const double size = out.left.norm() * out.right.norm();
  if (!(size > 0.0) || std::abs(norm) <= kNormalizationFloor * size) {
    throw NearDegenerate("left/right eigenvector product vanishes for z_" +
                         std::to_string(nu));
  }
  out.right /= norm;
  return out;
}

double characteristic_residual(const Superoperator& l, Complex z) {
  return std::abs((l - z * Superoperator::Identity()).determinant());
}

Complex characteristic_derivative(const Superoperator& l, Complex z) {
  const Superoperator m = l - z * Superoperator::Identity();
  // d/dz det(L - zI) = -sum of the principal 3x3 minors.
  Complex sum = 0.0;
  for (int skip = 0; skip < 4; ++skip) {
    Eigen::Matrix3cd minor;
    for (int i = 0, mi = 0; i < 4; ++i) {
      if (i == skip) continue;
      for (int j = 0, mj = 0; j < 4; ++j) {
        if (j == skip) continue;
        minor(mi, mj++) = m(i, j);
      }
      ++mi;
    }
    sum += minor.determinant();
  }
  return -sum;
}

Eigenvalues eigenvalues_numeric(const Superoperator& l) {
  Eigen::ComplexEigenSolver<Superoperator> solver(l, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NonConvergence("complex eigensolver did not converge");
  }
  Eigenvalues z;
  const double norm = max_abs(l);
  const double tol = 1e-9 * norm * norm * norm * norm;
  for (int i = 0; i < 4; ++i) {
    z[i] = solver.eigenvalues()[i];
    if (!(characteristic_residual(l, z[i]) <= tol)) {
      throw NonConvergence("eigenvalue " + std::to_string(i) +
                           " fails the characteristic-polynomial residual check");
    }
  }
  return z;
}

double matched_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw DomainError("matched_distance: size mismatch");
  }
  std::vector<std::size_t> perm(a.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size() && worst < best; ++i) {
      worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Spectrum compute_spectrum(const ModelParams& params) {
  Spectrum s;
  s.z = eigenvalues_closed_form(params);
  const Superoperator l = build_lindblad(params);
  for (std::size_t k = 0; k < kEigenPairs.size(); ++k) {
    const auto [a, b] = kEigenPairs[k];
    s.degenerate[k] = nearly_coalesced(s.z[a], s.z[b]);
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int nu = 0; nu < 4; ++nu) {
    s.char_residual[nu] = characteristic_residual(l, s.z[nu]);
    s.vector_residual[nu] = nan;
    try {
      if (nu == 0) {
        if (s.degenerate[0] || s.degenerate[1] || s.degenerate[2]) continue;
        const auto null = null_eigenvectors(params);
        s.vectors[0] = EigenPair{null.left, null.right};
      } else {
        s.vectors[nu] = eigenvectors_closed_form(params, nu, s.z[nu]);
      }
    } catch (const NearDegenerate&) {
      continue;
    } catch (const DomainError&) {
      continue;
    }
    const EigenPair& v = *s.vectors[nu];
    const double right_res = max_abs(l * v.right - s.z[nu] * v.right) / max_abs(v.right);
    const double left_res = max_abs(v.left * l - s.z[nu] * v.left) / max_abs(v.left);
    s.vector_residual[nu] = std::max(right_res, left_res);
  }
  return s;
}

std::optional<Eigen::Matrix4cd> biorthogonality(const Spectrum& s) {
  Eigen::Matrix4cd m;
  for (int mu = 0; mu < 4; ++mu) {
    if (!s.vectors[mu]) return std::nullopt;
  }
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      m(mu, nu) = (s.vectors[mu]->left * s.vectors[nu]->right)(0, 0);
    }
  }
  return m;
}

}  // namespace lindblad_ep
