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
#include <iosfwd>
#include <string>
#include <vector>

namespace lindblad_ep::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kIntegratorFailure = 3,
};

/// Flags shared by the subcommands. Defaults differ per subcommand (see
/// run()); delta defaults to 1 so d and gamma read directly as d/delta and
/// Gamma/delta.
struct RunConfig {
  double delta = 1.0;
  double d = 0.0;
  double gamma = 0.0;
  double Delta = 2.0;
  double omega = 1.0;
  double d_min = 0.0;
  double d_max = 6.0;
  int nd = 300;
  double gamma_min = 0.0;
  double gamma_max = 16.0;
  int ngamma = 300;
  double dt = 1e-3;
  double t_max = 10.0;
  std::string rho0 = "excited";
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 20231108;
  int workers = 1;
  std::vector<std::string> checks;
  double tol_scale = 1.0;

  /// Throws DomainError when counts < 1, max < min or dt, t_max <= 0.
  void validate() const;
};

/// Runs one CLI invocation; args exclude the program name. Machine output
/// goes to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lindblad_ep::cli
