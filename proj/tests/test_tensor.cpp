// Copyright 2026 The qrc developers
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

#include "doctest.h"
#include "qrc/hermitian_op.hpp"
#include "qrc/random.hpp"

using namespace qrc;

namespace {
double maxdiff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("tensor product identities") {
  HermitianOp i2 = identity_op({{"A", 2}});
  HermitianOp i2b = identity_op({{"B", 2}});
  HermitianOp t = tensor_product(i2, i2b);
  CHECK(maxdiff(t.mat(), Mat::Identity(4, 4)) == doctest::Approx(0.0));

  Mat d1(2, 2), d2(2, 2);
  d1 << 1, 0, 0, 2;
  d2 << 3, 0, 0, 4;
  HermitianOp a({{"A", 2}}, d1), b({{"B", 2}}, d2);
  Mat expect(4, 4);
  expect.setZero();
  expect(0, 0) = 3;
  expect(1, 1) = 4;
  expect(2, 2) = 6;
  expect(3, 3) = 8;
  CHECK(maxdiff(tensor_product(a, b).mat(), expect) == doctest::Approx(0.0));
}

TEST_CASE("tensor product matches quadruple-loop oracle on random Hermitian pairs") {
  Rng rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    Mat a = random_hermitian(2, rng), b = random_hermitian(2, rng);
    Mat t = tensor_product(HermitianOp({{"A", 2}}, a), HermitianOp({{"B", 2}}, b)).mat();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            CHECK(std::abs(t(i * 2 + k, j * 2 + l) - a(i, j) * b(k, l)) < 1e-14);
  }
}

TEST_CASE("partial trace") {
  // Tr_{B~0}[phi_+] = 1 for d = 2.
  HermitianOp phi = max_entangled_op(2, "B0", "B0t");
  HermitianOp red = partial_trace(phi, {"B0"});
  CHECK(maxdiff(red.mat(), Mat::Identity(2, 2)) < 1e-14);

  // Tr_B[rho (x) sigma] = rho when Tr sigma = 1.
  Rng rng(3);
  HermitianOp rho = random_state({{"A", 2}}, rng);
  HermitianOp sigma = random_state({{"B", 3}}, rng);
  HermitianOp prod = tensor_product(rho, sigma);
  CHECK(maxdiff(partial_trace(prod, {"A"}).mat(), rho.mat()) < 1e-12);

  // Trace preserved, and agreement with a brute-force double-sum oracle on 2x3.
  HermitianOp x = random_state({{"A", 2}, {"B", 3}}, rng);
  HermitianOp pt = partial_trace(x, {"A"});
  CHECK(pt.trace() == doctest::Approx(x.trace()).epsilon(1e-12));
  Mat oracle = Mat::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int b = 0; b < 3; ++b) oracle(i, j) += x.mat()(i * 3 + b, j * 3 + b);
  CHECK(maxdiff(partial_trace(x, {"A"}).mat(), oracle) < 1e-13);

  CHECK_THROWS_AS(partial_trace(x, {"nope"}), std::invalid_argument);
}

TEST_CASE("partial transpose") {
  Rng rng(11);
  HermitianOp x = random_state({{"A", 2}, {"B", 2}}, rng);
  // Involution.
  CHECK(maxdiff(partial_transpose(partial_transpose(x, "B"), "B").mat(), x.mat()) < 1e-14);
  // Product case: rho (x) sigma^T.
  HermitianOp rho = random_state({{"A", 2}}, rng), sigma = random_state({{"B", 2}}, rng);
  HermitianOp prod = tensor_product(rho, sigma);
  Mat sigmaT = sigma.mat().transpose();
  CHECK(maxdiff(partial_transpose(prod, "B").mat(),
                tensor_product(rho, HermitianOp({{"B", 2}}, sigmaT)).mat()) < 1e-13);
  // Bell state eigenvalues {1/2, 1/2, 1/2, -1/2} after partial transpose.
  HermitianOp bell = max_entangled_op(2, "A", "B");
  Mat bellN = bell.mat() / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(partial_transpose(HermitianOp({{"A", 2}, {"B", 2}}, bellN), "B").mat());
  Eigen::VectorXd ev = es.eigenvalues();
  CHECK(ev(0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(ev(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ev(3) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("max entangled operator") {
  CHECK(max_entangled_op(1).mat()(0, 0).real() == doctest::Approx(1.0));
  HermitianOp phi = max_entangled_op(2);
  for (long i = 0; i < 4; ++i)
    for (long j = 0; j < 4; ++j) {
      double expect = ((i == 0 || i == 3) && (j == 0 || j == 3)) ? 1.0 : 0.0;
      CHECK(phi.mat()(i, j).real() == doctest::Approx(expect));
    }
  // Tr[phi^2] = d^2 for d = 3 (rank-1 with trace d).
  HermitianOp phi3 = max_entangled_op(3);
  CHECK((phi3.mat() * phi3.mat()).trace().real() == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("reorder round trip and link vs composition") {
  Rng rng(5);
  HermitianOp x = random_state({{"A", 2}, {"B", 3}, {"C", 2}}, rng);
  HermitianOp y = reorder(reorder(x, {"C", "A", "B"}), {"A", "B", "C"});
  CHECK(maxdiff(x.mat(), y.mat()) < 1e-14);
}

TEST_CASE("hermitian symmetrization warns above 1e-9") {
  int warned = 0;
  set_warning_handler([&](const std::string&) { ++warned; });
  Mat bad(2, 2);
  bad << 1.0, Cplx(0, 1e-6), 0.0, 1.0;
  HermitianOp h({{"A", 2}}, bad);
  CHECK(warned == 1);
  CHECK(hermiticity_defect(h.mat()) < 1e-15);
  set_warning_handler([](const std::string&) {});
}
