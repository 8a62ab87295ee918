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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lindblad_ep {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

using ComplexMatrix2 = Eigen::Matrix2cd;

// Hilbert-Schmidt vector, ordered (rho_eg, rho_ge, rho_ee, rho_gg).
using HSVector = Eigen::Vector4cd;
using HSRow = Eigen::RowVector4cd;

// 4x4 Lindblad super-operator acting on HSVector; i dPsi/dt = L Psi.
using Superoperator = Eigen::Matrix4cd;

// Error hierarchy. Every failure the library reports derives from Error so
// the CLI can map categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the domain of an operation (delta = 0 in scaled
// coordinates, d_tilde below the EP2 threshold, negative Gamma, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NearDegenerate : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class NoRoot : public Error {
 public:
  using Error::Error;
};

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

class StepSizeError : public Error {
 public:
  StepSizeError(const std::string& what, double suggested_dt)
      : Error(what), suggested_dt_(suggested_dt) {}
  double suggested_dt() const noexcept { return suggested_dt_; }

 private:
  double suggested_dt_;
};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace lindblad_ep
