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

#include "lindblad_ep/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "lindblad_ep/dynamics.hpp"
#include "lindblad_ep/exceptional.hpp"
#include "lindblad_ep/io.hpp"
#include "lindblad_ep/spectrum.hpp"
#include "lindblad_ep/superop.hpp"

namespace lindblad_ep {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double x, int precision = 3) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

std::array<Complex, 4> negate_conj(const Eigenvalues& z) {
  std::array<Complex, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = -std::conj(z[i]);
  return out;
}

// Each check reports pass/fail against limits multiplied by `scale`.
CheckResult check_ep3(double scale) {
  CheckResult r{"ep3", "EP3 merge point by bisection", false, 0, 0, 0, 1.0, ""};
  const EP3Point located = ep3_locate_numeric();
  const EP3Point exact = ep3_point();
  const double d_err = std::abs(located.d_tilde - exact.d_tilde);
  const double g_err = std::abs(located.gamma_tilde - exact.gamma_tilde);
  const double z_err = std::abs(located.z - exact.z);
  r.worst = std::max(d_err, g_err);
  r.limit = 1e-6 * scale;
  r.passed = d_err < 1e-6 * scale && g_err < 1e-6 * scale && z_err < 1e-8 * scale;
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(8);
  os << "d_tilde=" << located.d_tilde << " gamma_tilde=" << located.gamma_tilde
     << " z=" << located.z.imag() << "i (delta=1)";
  os.unsetf(std::ios::fixed);
  os.precision(3);
  os << "; |dd|=" << d_err << " |dG|=" << g_err << " |dz|=" << z_err << " (z limit "
     << 1e-8 * scale << ")";
  r.detail = os.str();
  return r;
}

CheckResult check_ep2_curve(double scale) {
  CheckResult r{"ep2-curve", "EP2 curves on the discriminant zero set", false, 0, 0, 0, 5.0,
                ""};
  double worst_disc = 0.0;
  double worst_rel = 0.0;
  for (double d_tilde : linspace(kEp3DTilde, 10.0, 200)) {
    const EPCurvePoint pt = ep_curve_point(d_tilde);
    worst_disc = std::max({worst_disc, std::abs(pt.disc_minus), std::abs(pt.disc_plus)});
    const auto [lo, hi] = ep2_locate_numeric(d_tilde);
    worst_rel = std::max({worst_rel, std::abs(lo - pt.gamma_minus) / pt.gamma_minus,
                          std::abs(hi - pt.gamma_plus) / pt.gamma_plus});
  }
  r.worst = worst_rel;
  r.limit = 1e-8 * scale;
  r.passed = worst_disc < 1e-10 * scale && worst_rel < 1e-8 * scale;
  r.detail = "200 points d_tilde in [2sqrt2, 10]: max scaled |disc| = " + fmt(worst_disc) +
             " (limit " + fmt(1e-10 * scale) + "), max relative gap to bisection = " +
             fmt(worst_rel);
  return r;
}

struct SpectraStats {
  double oracle = 0.0;
  double symmetry = 0.0;
  double sum_rule = 0.0;
  void add(const ModelParams& params) {
    const Superoperator l = build_lindblad(params);
    const double scale = std::max(1.0, max_abs(l));
    const Eigenvalues closed = eigenvalues_closed_form(params);
    const Eigenvalues numeric = eigenvalues_numeric(l);
    oracle = std::max(oracle, matched_distance(closed, numeric) / scale);
    symmetry = std::max(symmetry, matched_distance(closed, negate_conj(closed)) / scale);
    symmetry = std::max(symmetry, matched_distance(numeric, negate_conj(numeric)) / scale);
    const Complex sum = closed[1] + closed[2] + closed[3];
    sum_rule = std::max(sum_rule, std::abs(sum + 2.0 * kI * params.gamma) /
                                      std::max(1.0, params.gamma));
  }
};

CheckResult check_spectra(std::uint64_t seed, double scale) {
  CheckResult r{"spectra", "closed-form vs numeric spectra", false, 0, 0, 0, 10.0, ""};
  SpectraStats stats;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.2, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution flip(0.5);
  for (int i = 0; i < 1000; ++i) {
    const double delta = (flip(rng) ? -1.0 : 1.0) * mag(rng);
    const double d = (flip(rng) ? -1.0 : 1.0) * 8.0 * unit(rng) * std::abs(delta);
    const double gamma = 16.0 * unit(rng) * std::abs(delta);
    stats.add(ModelParams(delta, d, gamma));
  }
  for (double d_tilde : linspace(0.0, 8.0, 50)) {
    for (double gamma_tilde : linspace(0.0, 16.0, 50)) {
      stats.add(ModelParams(1.0, d_tilde, gamma_tilde));
    }
  }
  const double limit = 1e-10 * scale;
  r.worst = std::max({stats.oracle, stats.symmetry, stats.sum_rule});
  r.limit = limit;
  r.passed = r.worst < limit;
  r.detail = "1000 random draws + 50x50 grid: oracle " + fmt(stats.oracle) + ", symmetry " +
             fmt(stats.symmetry) + ", sum rule " + fmt(stats.sum_rule);
  return r;
}

CheckResult check_gamma0(std::uint64_t seed, double scale) {
  CheckResult r{"gamma0", "Gamma = 0 spectrum {0, 0, +-sqrt(delta^2 + d^2)}", false, 0, 0, 0,
                1.0, ""};
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double delta = dist(rng);
    const double d = dist(rng);
    const double w = std::sqrt(delta * delta + d * d);
    const std::array<Complex, 4> expected{0.0, 0.0, w, -w};
    worst = std::max(worst, matched_distance(eigenvalues_closed_form(ModelParams(delta, d, 0.0)),
                                             expected));
  }
  r.worst = worst;
  r.limit = 1e-12 * scale;
  r.passed = worst < r.limit;
  r.detail = "100 random (delta, d): max distance " + fmt(worst);
  return r;
}

const std::array<std::pair<const char*, DensityMatrix>, 4>& presets() {
  static const std::array<std::pair<const char*, DensityMatrix>, 4> p{{
      {"excited", DensityMatrix::excited()},
      {"ground", DensityMatrix::ground()},
      {"mixed", DensityMatrix::mixed()},
      {"coherent", DensityMatrix::coherent()},
  }};
  return p;
}

CheckResult check_equilibrium(double scale) {
  CheckResult r{"equilibrium", "stationary state and relaxation", false, 0, 0, 0, 10.0, ""};
  const ModelParams params(1.0, 2.0, 1.0);
  const double null_res = max_abs(build_lindblad(params) * null_eigenvectors(params).right);
  double worst_dist = 0.0;
  for (const auto& [name, rho0] : presets()) {
    const Trajectory traj = evolve_rotating(params, rho0, 40.0 / params.gamma, 1e-3);
    worst_dist = std::max(worst_dist, traj.dist_eq.back());
  }
  r.worst = worst_dist;
  r.limit = 1e-6 * scale;
  r.passed = null_res < 1e-12 * scale && worst_dist < 1e-6 * scale;
  r.detail = "(delta, d, Gamma) = (1, 2, 1): |L Psi_eq| = " + fmt(null_res) +
             ", max final dist_eq over 4 presets at t = 40 = " + fmt(worst_dist);
  return r;
}

CheckResult check_frame(double scale) {
  CheckResult r{"frame", "lab vs rotating frame", false, 0, 0, 0, 10.0, ""};
  const LabParams params(2.0, 1.0, 1.0, 0.3);
  const DensityMatrix rho0 = DensityMatrix::coherent();
  const double deviation = verify_frame_equivalence(params, rho0, 10.0, 1e-3);
  const std::array<double, 3> dts{0.1, 0.05, 0.025};
  const OrderEstimate est = frame_equivalence_order(params, rho0, 10.0, dts);
  r.worst = deviation;
  r.limit = 1e-8 * scale;
  r.passed = deviation < 1e-8 * scale && std::abs(est.order - 4.0) <= 0.3 * scale;
  r.detail = "(Delta, omega, d, Gamma) = (2, 1, 1, 0.3), t_max = 10: max deviation " +
             fmt(deviation) + " at dt = 1e-3; RK4 order " + fmt(est.order, 4) +
             " from dt = 0.1, 0.05, 0.025 (need 4 +- " + fmt(0.3 * scale) + ")";
  return r;
}

CheckResult check_conservation(std::uint64_t seed, double scale) {
  CheckResult r{"conservation", "trace and Hermiticity along trajectories", false, 0, 0, 0,
                20.0, ""};
  double trace = 0.0;
  double herm = 0.0;
  const auto absorb = [&](const Trajectory& t) {
    trace = std::max(trace, t.max_trace_dev());
    herm = std::max(herm, t.max_herm_dev());
  };
  const ModelParams eq_params(1.0, 2.0, 1.0);
  for (const auto& [name, rho0] : presets()) {
    absorb(evolve_rotating(eq_params, rho0, 40.0, 1e-3));
  }
  const LabParams lab(2.0, 1.0, 1.0, 0.3);
  absorb(evolve_lab(lab, DensityMatrix::coherent(), 10.0, 1e-3));
  absorb(evolve_rotating(lab.rotating(), DensityMatrix::coherent(), 10.0, 1e-3));

  std::mt19937_64 rng(seed + 2);
  std::uniform_real_distribution<double> dist(0.1, 4.0);
  for (int i = 0; i < 8; ++i) {
    const ModelParams params(dist(rng), dist(rng), dist(rng));
    const auto& rho0 = presets()[static_cast<std::size_t>(i) % presets().size()].second;
    absorb(evolve_rotating(params, rho0, 5.0, recommended_dt(params)));
  }
  r.worst = std::max(trace, herm);
  r.limit = 1e-10 * scale;
  r.passed = trace < r.limit && herm < r.limit;
  r.detail = "14 trajectories: max |Tr rho - 1| = " + fmt(trace) +
             ", max Hermiticity deviation = " + fmt(herm);
  return r;
}

CheckResult check_splitting(double scale) {
  CheckResult r{"splitting", "EP splitting exponents", false, 0, 0, 0, 5.0, ""};
  std::vector<double> eps;
  for (int k = 0; k <= 12; ++k) eps.push_back(std::pow(10.0, -6.0 + 0.25 * k));

  const double g_plus = ep2_gamma(3.0).second;
  const PhasePoint ep2 = classify(ModelParams(1.0, 3.0, g_plus));
  const double slope2 = splitting_exponent(ep2, {0.0, 1.0}, eps);

  const EP3Point p3 = ep3_point();
  const PhasePoint ep3 = classify(ModelParams(1.0, p3.d_tilde, p3.gamma_tilde));
  const double diag = 1.0 / std::sqrt(2.0);
  const double slope3 = splitting_exponent(ep3, {diag, diag}, eps);

  const double tol = 0.05 * scale;
  r.worst = std::max(std::abs(slope2 - 0.5), std::abs(slope3 - 1.0 / 3.0));
  r.limit = tol;
  r.passed = ep2.region == Region::EP2Plus && ep3.region == Region::EP3 &&
             std::abs(slope2 - 0.5) <= tol && std::abs(slope3 - 1.0 / 3.0) <= tol;
  r.detail = "EP2 (d_tilde = 3, plus, +Gamma) slope " + fmt(slope2, 4) + " [" +
             std::string(to_string(ep2.region)) + "], EP3 (diagonal) slope " + fmt(slope3, 4) +
             " [" + std::string(to_string(ep3.region)) + "]";
  return r;
}

CheckResult check_phase_diagram(int workers) {
  CheckResult r{"phase-diagram", "AllImaginary region lies between the EP2 curves", false, 0,
                0, 0, 30.0, ""};
  const auto ds = linspace(0.0, 6.0, 300);
  const auto gs = linspace(0.0, 16.0, 300);
  const double cell = gs[1] - gs[0];
  const auto grid = classify_grid(ds, gs, 1.0, workers);
  std::size_t inside = 0;
  std::size_t misplaced = 0;
  double worst_excess = 0.0;
  for (const PhasePoint& pt : grid) {
    if (pt.region != Region::AllImaginary) continue;
    ++inside;
    if (!(pt.d_tilde > kEp3DTilde) || !(pt.disc < 0.0)) {
      ++misplaced;
      continue;
    }
    const auto [lo, hi] = ep2_gamma(pt.d_tilde);
    const double excess = std::max(lo - pt.gamma_tilde, pt.gamma_tilde - hi);
    worst_excess = std::max(worst_excess, excess);
    if (excess > cell) ++misplaced;
  }
  r.worst = worst_excess;
  r.limit = cell;
  r.passed = inside > 0 && misplaced == 0;
  r.detail = "300x300 grid: " + std::to_string(inside) + " AllImaginary cells, " +
             std::to_string(misplaced) + " outside the EP2 band (cell = " + fmt(cell) + ")";
  return r;
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{"ep3",         "ep2-curve", "spectra",
                                            "gamma0",      "equilibrium", "frame",
                                            "conservation", "splitting", "phase-diagram"};
  return ids;
}

std::vector<CheckResult> run_checks(const VerifyOptions& options) {
  if (!(options.tol_scale > 0.0) || !(options.tol_scale <= 1.0)) {
    throw DomainError("tolerance scale must lie in (0, 1], got " +
                      io::format_double(options.tol_scale));
  }
  for (const auto& id : options.checks) {
    if (std::find(check_ids().begin(), check_ids().end(), id) == check_ids().end()) {
      throw DomainError("unknown check '" + id + "'");
    }
  }
  const double s = options.tol_scale;
  const std::uint64_t seed = options.seed;
  const std::vector<std::pair<std::string, std::function<CheckResult()>>> table{
      {"ep3", [&] { return check_ep3(s); }},
      {"ep2-curve", [&] { return check_ep2_curve(s); }},
      {"spectra", [&] { return check_spectra(seed, s); }},
      {"gamma0", [&] { return check_gamma0(seed, s); }},
      {"equilibrium", [&] { return check_equilibrium(s); }},
      {"frame", [&] { return check_frame(s); }},
      {"conservation", [&] { return check_conservation(seed, s); }},
      {"splitting", [&] { return check_splitting(s); }},
      {"phase-diagram", [&] { return check_phase_diagram(options.workers); }},
  };
  std::vector<CheckResult> out;
  for (const auto& [id, run] : table) {
    if (!options.checks.empty() &&
        std::find(options.checks.begin(), options.checks.end(), id) == options.checks.end()) {
      continue;
    }
    const auto start = Clock::now();
    CheckResult r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r.id = id;
      r.title = "raised";
      r.passed = false;
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (r.time_budget > 0.0 && r.seconds > r.time_budget) {
      r.passed = false;
      r.detail += "; over the " + fmt(r.time_budget) + " s budget";
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_check_line(const CheckResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << ": " << r.detail;
  os.precision(3);
  os << " (worst=" << r.worst << ", limit=" << r.limit << ", " << r.seconds << " s)";
  return os.str();
}

}  // namespace lindblad_ep
