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

#include "lindblad_ep/exceptional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <exception>
#include <thread>
#include <tuple>

namespace lindblad_ep {

namespace {

constexpr double kEpBand = 1e-10;
constexpr double kFitGapFloor = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double cube(double x) { return x * x * x; }

void require_ep2_domain(double d_tilde) {
  if (!(d_tilde >= kEp3DTilde)) {
    throw DomainError("d_tilde = " + std::to_string(d_tilde) +
                      " is below 2*sqrt(2): the EP2 curves leave the real parameter space");
  }
}

// (d^2 - 8)^{3/2} * d / 2, clamped at the threshold.
double curve_split(double d_tilde) {
  const double x = std::max(0.0, d_tilde * d_tilde - 8.0);
  return 0.5 * d_tilde * x * std::sqrt(x);
}

// Bisection on the sign of f between lo and hi, where f(lo) and f(hi) have
// opposite signs. Stops when the midpoint no longer moves.
template <typename F>
double bisect_sign(F&& f, double lo, double hi) {
  const bool lo_positive = f(lo) > 0.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
    if ((f(mid) > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(Region r) {
  switch (r) {
    case Region::SplitPair:
      return "SplitPair";
    case Region::AllImaginary:
      return "AllImaginary";
    case Region::EP2Minus:
      return "EP2Minus";
    case Region::EP2Plus:
      return "EP2Plus";
    case Region::EP3:
      return "EP3";
  }
  return "?";
}

bool is_exceptional(Region r) {
  return r == Region::EP2Minus || r == Region::EP2Plus || r == Region::EP3;
}

double discriminant(const ModelParams& params) { return cardano_params(params).disc; }

double scaled_discriminant(const ModelParams& params) {
  return discriminant(params) / std::max(1.0, cube(params.energy_scale_sq()));
}

double ep_band(const ModelParams& params) {
  return kEpBand * std::max(1.0, cube(params.energy_scale_sq()));
}

std::pair<double, double> ep2_gamma(double d_tilde) {
  require_ep2_domain(d_tilde);
  const double d2 = d_tilde * d_tilde;
  const double base = 0.5 * d2 * d2 + 10.0 * d2 - 4.0;
  const double split = curve_split(d_tilde);
  return {std::sqrt(base - split), std::sqrt(base + split)};
}

Complex ep2_eigenvalue(double d_tilde, Branch branch) {
  const auto [gamma_minus, gamma_plus] = ep2_gamma(d_tilde);
  const double sign = branch == Branch::Plus ? 1.0 : -1.0;
  const double d2 = d_tilde * d_tilde;
  double inner = 0.5 * d2 * d2 - 2.0 * d2 - 16.0 + sign * curve_split(d_tilde);
  if (inner < 0.0) {
    // Exactly zero at d_tilde = 2 sqrt 2; anything beyond rounding is a
    // violation of the assumed realness.
    if (inner < -64.0 * kEps * (0.5 * d2 * d2 + 2.0 * d2 + 16.0)) {
      throw DomainError("EP2 eigenvalue radical is negative at d_tilde = " +
                        std::to_string(d_tilde));
    }
    inner = 0.0;
  }
  // The radical enters with the sign of q: positive on the plus curve,
  // negative on the minus curve.
  const double gamma = branch == Branch::Plus ? gamma_plus : gamma_minus;
  return Complex(0.0, -2.0 / 3.0 * (gamma - sign * 0.25 * std::sqrt(inner)));
}

EP3Point ep3_point() {
  return {kEp3DTilde, kEp3GammaTilde, Complex(0.0, -4.0 * std::numbers::sqrt3)};
}

EP3Point ep3_locate_numeric() {
  // On q = 0 the Cardano discriminant is p^3, positive below the merge
  // point and negative above it. The locus needs d_tilde > sqrt 2.
  const auto gamma_on_q0 = [](double d_tilde) {
    return std::sqrt(36.0 * (0.5 * d_tilde * d_tilde - 1.0));
  };
  const auto disc_on_q0 = [&](double d_tilde) {
    return discriminant(ModelParams(1.0, d_tilde, gamma_on_q0(d_tilde)));
  };
  double lo = 2.0;
  double hi = 4.0;
  if (!(disc_on_q0(lo) > 0.0 && disc_on_q0(hi) < 0.0)) {
    throw NoRoot("EP3 search bracket does not straddle a sign change");
  }
  const double d_tilde = bisect_sign(disc_on_q0, lo, hi);
  const double gamma_tilde = gamma_on_q0(d_tilde);
  const Eigenvalues z = eigenvalues_closed_form(ModelParams(1.0, d_tilde, gamma_tilde));
  return {d_tilde, gamma_tilde, z[1]};
}

PhasePoint classify(const ModelParams& params) {
  PhasePoint pt;
  pt.d_tilde = params.d_tilde();
  pt.gamma_tilde = params.gamma_tilde();
  pt.disc = discriminant(params);
  // Regions are decided in units of |delta| so that the band does not
  // depend on the overall energy scale.
  const double unit = std::abs(params.delta);
  const ModelParams reduced(params.delta / unit, params.d / unit, params.gamma / unit);
  const CardanoParams c = cardano_params(reduced);
  const double band = ep_band(reduced);
  if (c.disc > band) {
    pt.region = Region::SplitPair;
    const Eigenvalues z = eigenvalues_closed_form(reduced);
    const double diff = z[1].imag() - z[2].imag();
    // Equal imaginary parts (Gamma = 0) leave the sub-label undecided.
    const double noise = 1e-12 * std::max({1.0, std::abs(z[1]), std::abs(z[2])});
    if (std::abs(diff) > noise) pt.ordering = diff > 0.0 ? 1 : -1;
  } else if (c.disc < -band) {
    pt.region = Region::AllImaginary;
  } else if (std::abs(cube(c.p)) <= band && c.q * c.q <= band) {
    pt.region = Region::EP3;
  } else {
    const double d_abs = std::abs(pt.d_tilde);
    const double g_abs = std::abs(pt.gamma_tilde);
    double mid = kEp3GammaTilde;
    if (d_abs >= kEp3DTilde) {
      const auto [lo, hi] = ep2_gamma(d_abs);
      mid = 0.5 * (lo + hi);
    }
    pt.region = g_abs > mid ? Region::EP2Plus : Region::EP2Minus;
  }
  return pt;
}

std::pair<double, double> ep2_locate_numeric(double d_tilde) {
  if (!std::isfinite(d_tilde)) throw DomainError("d_tilde must be finite");
  const double d2 = d_tilde * d_tilde;
  const auto disc_at_g = [&](double g) {
    return discriminant(ModelParams(1.0, d_tilde, std::sqrt(std::max(0.0, g))));
  };

  // disc(g) is a quadratic in g = Gamma^2; recover it from three samples.
  const double step = 12.0 * (1.0 + d2);
  const double f0 = disc_at_g(0.0);
  const double f1 = disc_at_g(step);
  const double f2 = disc_at_g(2.0 * step);
  const double curvature = (f2 - 2.0 * f1 + f0) / (2.0 * step * step);
  const double slope = (f1 - f0) / step - curvature * step;
  if (!(curvature > 0.0)) {
    throw NoRoot("discriminant is not convex in Gamma^2 at d_tilde = " +
                 std::to_string(d_tilde));
  }
  const double g_vertex = -slope / (2.0 * curvature);
  if (!(g_vertex > 0.0)) {
    throw NoRoot("discriminant has no minimum at Gamma > 0 for d_tilde = " +
                 std::to_string(d_tilde));
  }

  // Rounding estimate for disc = p^3 + q^2 from the magnitudes of the
  // terms that build p and q.
  const double gamma_vertex = std::sqrt(g_vertex);
  const CardanoParams c = cardano_params(ModelParams(1.0, d_tilde, gamma_vertex));
  const double p_scale = (1.0 + d2 + g_vertex / 12.0) / 3.0;
  const double q_scale = gamma_vertex / 6.0 * (1.0 + d2 / 2.0 + g_vertex / 36.0);
  const double noise = 8.0 * kEps *
                       (3.0 * c.p * c.p * p_scale + 2.0 * std::abs(c.q) * q_scale +
                        std::abs(cube(c.p)) + c.q * c.q);
  if (c.disc > noise) {
    throw NoRoot("discriminant stays positive at d_tilde = " + std::to_string(d_tilde));
  }
  if (c.disc >= -noise) {
    return {gamma_vertex, gamma_vertex};
  }

  const auto disc_at_gamma = [&](double gamma) {
    return discriminant(ModelParams(1.0, d_tilde, gamma));
  };
  double hi = 2.0 * gamma_vertex;
  for (int it = 0; disc_at_gamma(hi) <= 0.0; ++it) {
    if (it > 200) throw NoRoot("could not bracket the upper EP2 root");
    hi *= 2.0;
  }
  const double lower = bisect_sign(disc_at_gamma, 0.0, gamma_vertex);
  const double upper = bisect_sign(disc_at_gamma, gamma_vertex, hi);
  return {lower, upper};
}

EPCurvePoint ep_curve_point(double d_tilde) {
  EPCurvePoint pt;
  pt.d_tilde = d_tilde;
  std::tie(pt.gamma_minus, pt.gamma_plus) = ep2_gamma(d_tilde);
  pt.z_minus = ep2_eigenvalue(d_tilde, Branch::Minus);
  pt.z_plus = ep2_eigenvalue(d_tilde, Branch::Plus);
  pt.disc_minus = scaled_discriminant(ModelParams(1.0, d_tilde, pt.gamma_minus));
  pt.disc_plus = scaled_discriminant(ModelParams(1.0, d_tilde, pt.gamma_plus));
  return pt;
}

double splitting_exponent(const PhasePoint& base, std::pair<double, double> direction,
                          std::span<const double> epsilons) {
  if (!is_exceptional(base.region)) {
    throw DomainError("splitting_exponent needs an EP2 or EP3 base point, got " +
                      std::string(to_string(base.region)));
  }
  double eps_min = std::numeric_limits<double>::infinity();
  double eps_max = 0.0;
  for (double eps : epsilons) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      throw DegenerateFit("perturbation sizes must be positive and finite");
    }
    eps_min = std::min(eps_min, eps);
    eps_max = std::max(eps_max, eps);
  }
  if (epsilons.size() < 2 || eps_max < 100.0 * eps_min) {
    throw DegenerateFit("perturbation sizes must span at least two decades");
  }

  const bool triple = base.region == Region::EP3;
  std::vector<double> xs;
  std::vector<double> ys;
  for (double eps : epsilons) {
    const ModelParams params(1.0, base.d_tilde + eps * direction.first,
                             base.gamma_tilde + eps * direction.second);
    const Eigenvalues z = eigenvalues_closed_form(params);
    double gap = triple ? 0.0 : std::numeric_limits<double>::infinity();
    for (int a = 1; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        const double dist = std::abs(z[a] - z[b]);
        gap = triple ? std::max(gap, dist) : std::min(gap, dist);
      }
    }
    if (gap > kFitGapFloor) {
      xs.push_back(std::log(eps));
      ys.push_back(std::log(gap));
    }
  }
  if (xs.size() < 2) {
    throw DegenerateFit("eigenvalue gaps underflow the 1e-12 fit floor");
  }

  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

std::vector<double> linspace(double min, double max, int count) {
  if (count < 1) throw DomainError("grid count must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = min;
    return out;
  }
  const double step = (max - min) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = min + i * step;
  out.back() = max;
  return out;
}

std::vector<PhasePoint> classify_grid(std::span<const double> d_tilde_values,
                                      std::span<const double> gamma_tilde_values,
                                      double delta, int workers) {
  if (!(delta > 0.0)) {
    throw DomainError("phase-diagram sweeps need delta > 0");
  }
  const std::size_t rows = d_tilde_values.size();
  const std::size_t cols = gamma_tilde_values.size();
  std::vector<PhasePoint> out(rows * cols);

  const auto fill_rows = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        out[i * cols + j] = classify(ModelParams(delta, d_tilde_values[i] * delta,
                                                 gamma_tilde_values[j] * delta));
      }
    }
  };

  const std::size_t n_workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, std::max<std::size_t>(rows, 1));
  if (n_workers == 1) {
    fill_rows(0, rows);
    return out;
  }
  // Each worker owns a disjoint block of rows; exceptions are rethrown
  // after the join.
  std::vector<std::exception_ptr> errors(n_workers);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (rows + n_workers - 1) / n_workers;
    for (std::size_t w = 0; w < n_workers; ++w) {
      const std::size_t begin = std::min(rows, w * chunk);
      const std::size_t end = std::min(rows, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          fill_rows(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace lindblad_ep
