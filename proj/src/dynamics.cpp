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

#include "lindblad_ep/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "lindblad_ep/exceptional.hpp"
#include "lindblad_ep/spectrum.hpp"
#include "lindblad_ep/superop.hpp"

namespace lindblad_ep {

namespace {

constexpr double kTraceDriftLimit = 1e-8;
constexpr double kInitialStateTol = 1e-10;

struct StepPlan {
  long long steps = 0;
  long long stride = 1;
  double h = 0.0;
};

StepPlan plan_steps(const DensityMatrix& rho0, double t_max, double dt) {
  if (!(dt > 0.0) || !(dt <= t_max) || !std::isfinite(t_max)) {
    throw DomainError("need 0 < dt <= t_max, got dt = " + std::to_string(dt) +
                      ", t_max = " + std::to_string(t_max));
  }
  if (!rho0.is_physical(kInitialStateTol)) {
    throw DomainError("initial state is not a physical density matrix");
  }
  StepPlan plan;
  plan.steps = static_cast<long long>(std::ceil(t_max / dt * (1.0 - 1e-12)));
  plan.steps = std::max(plan.steps, 1LL);
  plan.h = t_max / static_cast<double>(plan.steps);
  plan.stride = (plan.steps + 999) / 1000;
  return plan;
}

std::optional<DensityMatrix> try_equilibrium(const ModelParams& params) {
  try {
    return equilibrium_state(params);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

void record(Trajectory& traj, double t, const DensityMatrix& rho,
            const std::optional<DensityMatrix>& eq) {
  traj.times.push_back(t);
  traj.states.push_back(rho);
  traj.trace_dev.push_back(rho.trace_deviation());
  traj.herm_dev.push_back(rho.hermiticity_deviation());
  traj.dist_eq.push_back(eq ? distance(rho, *eq) : std::numeric_limits<double>::quiet_NaN());
}

void check_drift(const DensityMatrix& rho, double t, double dt, double suggested) {
  const double drift = rho.trace_deviation();
  if (!(drift <= kTraceDriftLimit) || !rho.matrix().allFinite()) {
    throw StepSizeError("trace drift " + std::to_string(drift) + " at t = " +
                            std::to_string(t) + " with dt = " + std::to_string(dt) +
                            "; the step is too large",
                        std::min(0.5 * dt, suggested));
  }
}

// Fixed-step driver shared by both frames. `advance` maps (t, state) to the
// state one step later, `to_rho` turns a state into a DensityMatrix and
// `eq_at` gives the reference equilibrium at time t.
template <typename State, typename Advance, typename ToRho, typename EqAt>
Trajectory integrate(const StepPlan& plan, State state, double suggested, Advance&& advance,
                     ToRho&& to_rho, EqAt&& eq_at) {
  Trajectory traj;
  traj.times.reserve(1001);
  record(traj, 0.0, to_rho(state), eq_at(0.0));
  for (long long i = 1; i <= plan.steps; ++i) {
    const double t_prev = static_cast<double>(i - 1) * plan.h;
    state = advance(t_prev, state);
    const double t = static_cast<double>(i) * plan.h;
    const DensityMatrix rho = to_rho(state);
    check_drift(rho, t, plan.h, suggested);
    if (i % plan.stride == 0 || i == plan.steps) {
      record(traj, t, rho, eq_at(t));
    }
  }
  return traj;
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

double Trajectory::max_trace_dev() const {
  return trace_dev.empty() ? 0.0 : *std::max_element(trace_dev.begin(), trace_dev.end());
}

double Trajectory::max_herm_dev() const {
  return herm_dev.empty() ? 0.0 : *std::max_element(herm_dev.begin(), herm_dev.end());
}

double recommended_dt(const ModelParams& params) {
  const double norm = max_abs(build_lindblad(params));
  return 1e-3 * std::min(1.0, norm > 0.0 ? 1.0 / norm : 1.0);
}

Trajectory evolve_rotating(const ModelParams& params, const DensityMatrix& rho0,
                           double t_max, double dt) {
  const StepPlan plan = plan_steps(rho0, t_max, dt);
  const Superoperator generator = -kI * build_lindblad(params);
  const auto rhs = [&](double, const HSVector& psi) -> HSVector { return generator * psi; };
  const auto eq = try_equilibrium(params);
  return integrate(
      plan, vectorize(rho0), recommended_dt(params),
      [&](double t, const HSVector& psi) { return step_rk4(rhs, t, psi, plan.h); },
      [](const HSVector& psi) { return devectorize(psi).rho; },
      [&](double) { return eq; });
}

Trajectory evolve_lab(const LabParams& params, const DensityMatrix& rho0, double t_max,
                      double dt) {
  const StepPlan plan = plan_steps(rho0, t_max, dt);
  const auto rhs = [&](double t, const ComplexMatrix2& rho) -> ComplexMatrix2 {
    return lindblad_rhs(hamiltonian_rwa(params, t), params.gamma, DensityMatrix(rho));
  };
  const ModelParams rotating = params.rotating();
  const auto eq = try_equilibrium(rotating);
  return integrate(
      plan, ComplexMatrix2(rho0.matrix()), recommended_dt(rotating),
      [&](double t, const ComplexMatrix2& rho) { return step_rk4(rhs, t, rho, plan.h); },
      [](const ComplexMatrix2& rho) { return DensityMatrix(rho); },
      [&](double t) -> std::optional<DensityMatrix> {
        if (!eq) return std::nullopt;
        return rotate_to_lab(*eq, params.omega, t);
      });
}

double verify_frame_equivalence(const LabParams& params, const DensityMatrix& rho0,
                                double t_max, double dt) {
  const Trajectory lab = evolve_lab(params, rho0, t_max, dt);
  const Trajectory rot = evolve_rotating(params.rotating(), rho0, t_max, dt);
  double worst = 0.0;
  for (std::size_t k = 0; k < lab.size(); ++k) {
    const DensityMatrix mapped = rotate_to_lab(rot.states[k], params.omega, rot.times[k]);
    worst = std::max(worst, distance(lab.states[k], mapped));
  }
  return worst;
}

OrderEstimate frame_equivalence_order(const LabParams& params, const DensityMatrix& rho0,
                                      double t_max, std::span<const double> dts) {
  if (dts.size() < 2) throw DomainError("order estimate needs at least two step sizes");
  OrderEstimate est;
  std::vector<double> log_dt;
  std::vector<double> log_err;
  for (double dt : dts) {
    const double err = verify_frame_equivalence(params, rho0, t_max, dt);
    est.dts.push_back(dt);
    est.errors.push_back(err);
    log_dt.push_back(std::log(dt));
    log_err.push_back(std::log(err));
  }
  est.order = fit_slope(log_dt, log_err);
  return est;
}

DensityMatrix spectral_evolve(const ModelParams& params, const DensityMatrix& rho0, double t) {
  if (params.delta != 0.0) {
    const PhasePoint pt = classify(params);
    if (is_exceptional(pt.region)) {
      throw NearDegenerate("spectral propagation refused at an exceptional point (" +
                           std::string(to_string(pt.region)) + ")");
    }
  }
  const Eigenvalues z = eigenvalues_closed_form(params);
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      if (nearly_coalesced(z[a], z[b])) {
        throw NearDegenerate("eigenvalues z_" + std::to_string(a) + " and z_" +
                             std::to_string(b) + " coalesce");
      }
    }
  }
  const HSVector psi0 = vectorize(rho0);
  const NullEigenvectors null = null_eigenvectors(params);
  HSVector psi = (null.left * psi0)(0, 0) * null.right;
  for (int nu = 1; nu < 4; ++nu) {
    const EigenPair pair = eigenvectors_closed_form(params, nu, z[nu]);
    psi += std::exp(-kI * z[nu] * t) * (pair.left * psi0)(0, 0) * pair.right;
  }
  return devectorize(psi).rho;
}

}  // namespace lindblad_ep
