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

#include <cstdint>
#include <string>
#include <vector>

namespace lindblad_ep {

/// Outcome of one acceptance check. `worst` is the largest observed metric
/// in the check's own units and `limit` the bound it was held to.
struct CheckResult {
  std::string id;
  std::string title;
  bool passed = false;
  double worst = 0.0;
  double limit = 0.0;
  double seconds = 0.0;
  double time_budget = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::vector<std::string> checks;  // empty: all
  std::uint64_t seed = 20231108;
  // Multiplies every numeric tolerance; must lie in (0, 1].
  double tol_scale = 1.0;
  int workers = 1;
};

/// Check ids in execution order: ep3, ep2-curve, spectra, gamma0,
/// equilibrium, frame, conservation, splitting, phase-diagram.
const std::vector<std::string>& check_ids();

/// Runs the selected checks. Throws DomainError for unknown ids or a
/// tolerance scale outside (0, 1].
std::vector<CheckResult> run_checks(const VerifyOptions& options);

/// "PASS [id] title: detail (worst=..., limit=..., 0.12 s)".
std::string format_check_line(const CheckResult& r);

}  // namespace lindblad_ep
