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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lindblad_ep/model.hpp"
#include "oracles.hpp"

using namespace lindblad_ep;

TEST_SUITE("model") {

TEST_CASE("hamiltonian_rwa at t = 0 and at omega t = pi") {
  const ComplexMatrix2 h0 = hamiltonian_rwa(LabParams(1.0, 0.0, 2.0, 0.0), 0.0);
  ComplexMatrix2 expected0;
  expected0 << 1.0, 1.0, 1.0, 0.0;
  CHECK(max_abs(h0 - expected0) == 0.0);

  const ComplexMatrix2 h1 = hamiltonian_rwa(LabParams(1.0, std::numbers::pi, 2.0, 0.0), 1.0);
  ComplexMatrix2 expected1;
  expected1 << 1.0, -1.0, -1.0, 0.0;
  CHECK(max_abs(h1 - expected1) < 1e-15);
}

TEST_CASE("hamiltonian_rwa is Hermitian for random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const ComplexMatrix2 h = hamiltonian_rwa(LabParams(u(rng), u(rng), u(rng), 0.0), u(rng));
    CHECK(max_abs(h - h.adjoint()) == 0.0);
  }
}

TEST_CASE("hamiltonian_rotating") {
  ComplexMatrix2 diag;
  diag << 1.0, 0.0, 0.0, 0.0;
  CHECK(max_abs(hamiltonian_rotating(ModelParams(1.0, 0.0, 3.0)) - diag) == 0.0);

  ComplexMatrix2 expected;
  expected << 1.0, 0.5, 0.5, 0.0;
  CHECK(max_abs(hamiltonian_rotating(ModelParams(1.0, 1.0, 0.0)) - expected) == 0.0);
}

TEST_CASE("rotating Hamiltonian is the RWA Hamiltonian at t = 0 minus diag(omega, 0)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double delta = u(rng), omega = u(rng), d = u(rng);
    ComplexMatrix2 shift = ComplexMatrix2::Zero();
    shift(0, 0) = omega;
    const ComplexMatrix2 lab = hamiltonian_rwa(LabParams(delta + omega, omega, d, 0.0), 0.0);
    const ComplexMatrix2 rot = hamiltonian_rotating(ModelParams(delta, d, 0.0));
    CHECK(max_abs(lab - shift - rot) < 1e-14);
  }
}

TEST_CASE("jump operators") {
  const auto [c, c_dag] = jump_operators();
  const Eigen::Vector2cd excited(1.0, 0.0);
  CHECK(max_abs(c * excited - Eigen::Vector2cd(0.0, 1.0)) == 0.0);
  ComplexMatrix2 n;
  n << 1.0, 0.0, 0.0, 0.0;
  CHECK(max_abs(c_dag * c - n) == 0.0);
  CHECK(max_abs(ComplexMatrix2(c_dag.adjoint()) - c) == 0.0);
}

TEST_CASE("frame_unitary") {
  CHECK(max_abs(frame_unitary(3.0, 0.0) - ComplexMatrix2::Identity()) == 0.0);
  ComplexMatrix2 flip = ComplexMatrix2::Identity();
  flip(0, 0) = -1.0;
  CHECK(max_abs(frame_unitary(std::numbers::pi, 1.0) - flip) < 1e-15);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int i = 0; i < 100; ++i) {
    const ComplexMatrix2 m = frame_unitary(u(rng), u(rng));
    CHECK(max_abs(m * m.adjoint() - ComplexMatrix2::Identity()) < 1e-14);
  }
}

TEST_CASE("rotate_to_lab") {
  const DensityMatrix diag(0.3, 0.0, 0.0, 0.7);
  CHECK(rotate_to_lab(diag, 1.7, 2.3) == diag);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho(oracle::random_hermitian_state(rng));
    CHECK(rotate_to_lab(rho, u(rng), 0.0) == rho);

    const double omega = u(rng), t = u(rng);
    const DensityMatrix lab = rotate_to_lab(rho, omega, t);
    const ComplexMatrix2 u_t = frame_unitary(omega, t);
    CHECK(max_abs(lab.matrix() - u_t * rho.matrix() * u_t.adjoint()) < 1e-14);
    CHECK(std::abs(std::abs(lab.eg()) - std::abs(rho.eg())) < 1e-15);
    CHECK(std::abs(lab.trace() - rho.trace()) < 1e-13);
    CHECK(lab.hermiticity_deviation() < 1e-13);
    CHECK(std::abs(lab.min_eigenvalue() - rho.min_eigenvalue()) < 1e-13);
  }
}

TEST_CASE("vectorize ordering and round trip") {
  const HSVector diag = vectorize(DensityMatrix(0.3, 0.0, 0.0, 0.7));
  CHECK(diag == HSVector(0.0, 0.0, 0.3, 0.7));

  const Complex eg(0.1, 0.2);
  const HSVector psi = vectorize(DensityMatrix(0.4, eg, std::conj(eg), 0.6));
  CHECK(psi[0] == eg);
  CHECK(psi[1] == Complex(0.1, -0.2));

  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho(oracle::random_hermitian_state(rng));
    const Devectorized back = devectorize(vectorize(rho));
    CHECK(back.rho == rho);
    CHECK_FALSE(back.hermiticity_violation);
  }
}

TEST_CASE("devectorize flags broken Hermiticity pairing") {
  CHECK(devectorize(HSVector(Complex(0.1, 0.2), Complex(0.1, 0.2), 0.5, 0.5))
            .hermiticity_violation);
  CHECK(devectorize(HSVector(0.0, 0.0, Complex(0.5, 0.1), 0.5)).hermiticity_violation);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, -0.1), DomainError);
  CHECK_THROWS_AS(ModelParams(NAN, 1.0, 0.1), DomainError);
  CHECK_THROWS_AS(LabParams(1.0, 1.0, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(ModelParams(0.0, 1.0, 1.0).d_tilde(), DomainError);
  CHECK(ModelParams(2.0, 1.0, 4.0).gamma_tilde() == 2.0);
  CHECK(LabParams(2.5, 1.0, 0.0, 0.0).detuning() == 1.5);
}

TEST_CASE("density matrix physicality") {
  CHECK(DensityMatrix::coherent().is_physical());
  CHECK(DensityMatrix::mixed().is_physical());
  CHECK(std::abs(DensityMatrix::coherent().min_eigenvalue()) < 1e-16);
  CHECK_FALSE(DensityMatrix(1.2, 0.0, 0.0, -0.2).is_physical());
  CHECK_FALSE(DensityMatrix(0.5, 0.6, 0.6, 0.5).is_physical());
}

}
