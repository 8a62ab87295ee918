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

#include <span>
#include <vector>

#include "lindblad_ep/model.hpp"
#include "lindblad_ep/types.hpp"

namespace lindblad_ep {

/// One classical fourth-order Runge-Kutta step of dy/dt = f(t, y).
/// State must support addition and scaling by double; dt must be positive.
template <typename State, typename F>
State step_rk4(F&& f, double t, const State& y, double dt) {
  if (!(dt > 0.0)) throw DomainError("RK4 step size must be positive");
  const double half = 0.5 * dt;
  const State k1 = f(t, y);
  const State y2 = y + half * k1;
  const State k2 = f(t + half, y2);
  const State y3 = y + half * k2;
  const State k3 = f(t + half, y3);
  const State y4 = y + dt * k3;
  const State k4 = f(t + dt, y4);
  const State out = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return out;
}

/// Saved snapshots of an integration with per-snapshot diagnostics.
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<double> trace_dev;  // |Tr rho - 1|
  std::vector<double> herm_dev;   // ||rho - rho^+||_max
  std::vector<double> dist_eq;    // ||rho - rho_eq||_max, NaN if undefined

  std::size_t size() const { return times.size(); }
  double max_trace_dev() const;
  double max_herm_dev() const;
};

/// Integrates dPsi/dt = -i L Psi with fixed-step RK4 from t = 0 to t_max.
///
/// The step is t_max / ceil(t_max / dt), so dt is an upper bound. Snapshots
/// are taken every ceil(steps / 1000) steps plus the final time (at most
/// 1001 states). Throws StepSizeError when the trace drifts by more than
/// 1e-8 or the state stops being finite, DomainError for an invalid rho0
/// or dt outside (0, t_max].
Trajectory evolve_rotating(const ModelParams& params, const DensityMatrix& rho0,
                           double t_max, double dt);

/// Integrates the lab-frame Lindblad equation with the time-dependent RWA
/// Hamiltonian, evaluated at each RK4 stage time. dist_eq is measured
/// against the co-rotating equilibrium U(t) rho_eq U(t)^+.
Trajectory evolve_lab(const LabParams& params, const DensityMatrix& rho0, double t_max,
                      double dt);

/// max_t ||rho_lab(t) - U(t) rho_rot(t) U(t)^+||_max over the saved times,
/// where rho_rot evolves at detuning Delta - omega.
double verify_frame_equivalence(const LabParams& params, const DensityMatrix& rho0,
                                double t_max, double dt);

struct OrderEstimate {
  std::vector<double> dts;
  std::vector<double> errors;
  double order = 0.0;  // least-squares slope of log(error) vs log(dt)
};

/// Frame-equivalence error for each dt and the fitted convergence order.
OrderEstimate frame_equivalence_order(const LabParams& params, const DensityMatrix& rho0,
                                      double t_max, std::span<const double> dts);

/// Psi(t) = sum_nu exp(-i z_nu t) (left_nu . Psi(0)) right_nu using the
/// closed-form eigenpairs. Refused with NearDegenerate at an EP (and
/// wherever the closed-form eigenvectors are unavailable).
DensityMatrix spectral_evolve(const ModelParams& params, const DensityMatrix& rho0, double t);

/// Recommended RK4 step for this super-operator: 1e-3 min(1, 1/||L||_max).
double recommended_dt(const ModelParams& params);

}  // namespace lindblad_ep
