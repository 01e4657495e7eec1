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
#include "qrc/conic/solver.hpp"
#include "qrc/random.hpp"

using namespace qrc;
using namespace qrc::conic;

namespace {
SpMat sparse_from(const Eigen::MatrixXd& d) {
  SpMat s = d.sparseView();
  return s;
}
}  // namespace

TEST_CASE("svec/smat isometry") {
  Rng rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    Mat a = random_hermitian(4, rng), b = random_hermitian(4, rng);
    Vec va = svec(a), vb = svec(b);
    CHECK(va.dot(vb) == doctest::Approx((a * b).trace().real()).epsilon(1e-12));
    CHECK((smat(va, 4) - a).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("tiny LP") {
  // min x subject to x >= 1.
  Vec c(1);
  c << 1;
  SpMat A(0, 1);
  Vec b(0);
  Eigen::MatrixXd Gd(1, 1);
  Gd << -1;
  Vec h(1);
  h << -1;
  ConeDims K;
  K.lp = 1;
  auto r = solve_conelp(c, A, b, sparse_from(Gd), h, K);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("largest eigenvalue as an SDP") {
  Rng rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    int d = 3;
    Mat M = random_hermitian(d, rng);
    // min t s.t. t I - M >= 0, variable t.
    Vec c(1);
    c << 1;
    SpMat A(0, 1);
    Vec b(0);
    Eigen::MatrixXd Gd(svec_len(d), 1);
    Gd.col(0) = -svec(Mat::Identity(d, d));
    Vec h = svec(Mat(-M));  // s = h - Gx = svec(tI - M)
    ConeDims K;
    K.herm = {d};
    auto r = solve_conelp(c, A, b, sparse_from(Gd), h, K);
    REQUIRE(r.status == SolveStatus::Optimal);
    Eigen::SelfAdjointEigenSolver<Mat> es(M, Eigen::EigenvaluesOnly);
    CHECK(r.x(0) == doctest::Approx(es.eigenvalues().maxCoeff()).epsilon(1e-7));
    // Dual feasibility and complementarity at the reported accuracy.
    CHECK(r.gap < 1e-6);
  }
}

TEST_CASE("infeasible toy: X >= 0 with Tr X = -1") {
  int d = 2;
  int n = d * d;  // coordinates of a Hermitian variable
  // A x = b encodes Tr X = -1 (diagonal coordinates first).
  Eigen::MatrixXd Ad = Eigen::MatrixXd::Zero(1, n);
  Ad(0, 0) = 1;
  Ad(0, 1) = 1;
  Vec b(1);
  b << -1;
  // G encodes X in svec order from the coordinate layout (diag, then re/im).
  Eigen::MatrixXd Gd = Eigen::MatrixXd::Zero(svec_len(d), n);
  Gd(0, 0) = -1;
  Gd(1, 1) = -1;
  Gd(2, 2) = -std::sqrt(2.0);
  Gd(3, 3) = -std::sqrt(2.0);
  Vec h = Vec::Zero(svec_len(d));
  Vec c = Vec::Zero(n);
  ConeDims K;
  K.herm = {d};
  auto r = solve_conelp(c, sparse_from(Ad), b, sparse_from(Gd), h, K);
  CHECK(r.status == SolveStatus::PrimalInfeasible);
}

TEST_CASE("unbounded problem produces a dual-infeasibility certificate") {
  // min -x subject to x >= 0.
  Vec c(1);
  c << -1;
  SpMat A(0, 1);
  Vec b(0);
  Eigen::MatrixXd Gd(1, 1);
  Gd << -1;
  Vec h = Vec::Zero(1);
  ConeDims K;
  K.lp = 1;
  auto r = solve_conelp(c, A, b, sparse_from(Gd), h, K);
  CHECK(r.status == SolveStatus::DualInfeasible);
}

TEST_CASE("random feasible SDP with equalities solves to high accuracy") {
  // min <C, X> s.t. Tr X = 1, X >= 0  --> smallest eigenvalue of C.
  Rng rng(42);
  for (int rep = 0; rep < 5; ++rep) {
    int d = 4, n = d * d;
    Mat C = random_hermitian(d, rng);
    // Coordinate basis matrices in the same layout as Program::var.
    std::vector<Mat> basis;
    for (int i = 0; i < d; ++i) basis.push_back(unit_matrix(d, i, i));
    for (int j = 1; j < d; ++j)
      for (int i = 0; i < j; ++i) {
        basis.push_back(unit_matrix(d, i, j) + unit_matrix(d, j, i));
        basis.push_back(Cplx(0, 1) * unit_matrix(d, i, j) - Cplx(0, 1) * unit_matrix(d, j, i));
      }
    Vec c(n);
    Eigen::MatrixXd Ad(1, n), Gd(svec_len(d), n);
    for (int t = 0; t < n; ++t) {
      c(t) = (C * basis[t]).trace().real();
      Ad(0, t) = basis[t].trace().real();
      Gd.col(t) = -svec(basis[t]);
    }
    Vec b(1);
    b << 1;
    Vec h = Vec::Zero(svec_len(d));
    ConeDims K;
    K.herm = {d};
    auto r = solve_conelp(c, sparse_from(Ad), b, sparse_from(Gd), h, K);
    REQUIRE(r.status == SolveStatus::Optimal);
    Eigen::SelfAdjointEigenSolver<Mat> es(C, Eigen::EigenvaluesOnly);
    CHECK(r.pobj == doctest::Approx(es.eigenvalues().minCoeff()).epsilon(1e-7));
  }
}

TEST_CASE("realification soundness on 500 random Hermitian matrices") {
  Rng rng(77);
  for (int rep = 0; rep < 500; ++rep) {
    int d = 2 + (rep % 3);
    Mat H = random_hermitian(d, rng);
    Eigen::SelfAdjointEigenSolver<Mat> eh(H, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Mat> er(realify_embed(H), Eigen::EigenvaluesOnly);
    bool psdH = eh.eigenvalues().minCoeff() >= 0;
    bool psdR = er.eigenvalues().minCoeff() >= 0;
    CHECK(psdH == psdR);
    // The embedding doubles traces and preserves the spectrum (twice over).
    CHECK(realify_embed(H).trace().real() == doctest::Approx(2 * H.trace().real()));
    CHECK((unrealify_project(realify_embed(H)) - H).cwiseAbs().maxCoeff() < 1e-14);
  }
}
