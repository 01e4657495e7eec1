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

#include <sstream>

#include "doctest.h"
#include "qrc/conic/program.hpp"
#include "qrc/random.hpp"

using namespace qrc;
using namespace qrc::conic;

TEST_CASE("eigenvalue program: min lambda with lambda 1 >= diag(0.7, 0.3)") {
  Program prog;
  auto lam = prog.add_scalar("lambda");
  Mat rho(2, 2);
  rho << 0.7, 0, 0, 0.3;
  Systems sys{{"B1", 2}};
  Expr e = scale_matrix(prog.svar(lam), identity_on(sys)) - Expr::constant(LabeledMat(sys, rho));
  prog.add_psd(e);
  prog.set_objective(Sense::Minimize, prog.svar(lam));
  auto sol = prog.solve();
  REQUIRE(sol.status == Status::Optimal);
  CHECK(sol.value == doctest::Approx(0.7).epsilon(1e-7));
  CHECK(sol.scalar.at("lambda") == doctest::Approx(0.7).epsilon(1e-7));
}

TEST_CASE("infeasible toy via the program layer") {
  Program prog;
  Systems sys{{"X", 2}};
  auto X = prog.add_hermitian("X", sys);
  prog.add_psd(prog.var(X));
  prog.add_equality(trace(prog.var(X)), -1.0);
  prog.set_objective(Sense::Minimize, ScalarExpr(0.0));
  auto sol = prog.solve();
  CHECK(sol.status == Status::Infeasible);
}

TEST_CASE("trace norm against the eigendecomposition oracle") {
  Rng rng(4);
  for (bool realify : {false, true}) {
    Mat M = random_hermitian(3, rng);
    Program prog;
    Systems sys{{"X", 3}};
    auto W = prog.add_hermitian("W", sys);
    Expr we = prog.var(W);
    LabeledMat eye = identity_on(sys);
    prog.add_psd(Expr::constant(eye) - we);
    prog.add_psd(Expr::constant(eye) + we);
    prog.set_objective(Sense::Maximize, inner(LabeledMat(sys, M), we));
    ProgramSettings st;
    st.realify = realify;
    auto sol = prog.solve(st);
    REQUIRE(sol.status == Status::Optimal);
    Eigen::SelfAdjointEigenSolver<Mat> es(M, Eigen::EigenvaluesOnly);
    double tn = es.eigenvalues().cwiseAbs().sum();
    CHECK(sol.value == doctest::Approx(tn).epsilon(1e-7));
  }
}

TEST_CASE("equalities with redundant rows presolve cleanly") {
  // gamma (x) 1 >= rho with an intentionally duplicated trace constraint.
  Rng rng(10);
  HermitianOp rho = random_state({{"A", 2}, {"B", 2}}, rng);
  Program prog;
  auto g = prog.add_hermitian("g", {{"A", 2}});
  Expr ge = prog.var(g);
  Expr lifted = tensor(ge, identity_on({{"B", 2}}));
  prog.add_psd(lifted - Expr::constant(rho.labeled()));
  prog.add_equality(trace(ge) - trace(ge), 0.0);  // trivially zero row
  prog.set_objective(Sense::Minimize, trace(ge));
  auto sol = prog.solve();
  REQUIRE(sol.status == Status::Optimal);
  CHECK(sol.value >= 1.0 - 1e-8);  // Tr gamma >= Tr rho by the PSD constraint
  CHECK(sol.eq_residual < 1e-9);
  CHECK(sol.cone_residual < 1e-7);
}

TEST_CASE("native and realified lowerings agree") {
  Rng rng(12);
  Mat C = random_hermitian(3, rng);
  auto build = [&](bool realify) {
    Program prog;
    Systems sys{{"X", 3}};
    auto X = prog.add_hermitian("X", sys);
    prog.add_psd(prog.var(X));
    prog.add_equality(trace(prog.var(X)), 1.0);
    prog.set_objective(Sense::Minimize, inner(LabeledMat(sys, C), prog.var(X)));
    ProgramSettings st;
    st.realify = realify;
    return prog.solve(st);
  };
  auto a = build(false), b = build(true);
  REQUIRE(a.status == Status::Optimal);
  REQUIRE(b.status == Status::Optimal);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-6));
  Eigen::SelfAdjointEigenSolver<Mat> es(C, Eigen::EigenvaluesOnly);
  CHECK(a.value == doctest::Approx(es.eigenvalues().minCoeff()).epsilon(1e-7));
}

TEST_CASE("psd dual certificates are returned") {
  // min Tr X s.t. X >= R  (R PSD): optimum Tr R, dual Z = I.
  Rng rng(3);
  Mat g = ginibre(2, 2, rng);
  Mat R = g * g.adjoint();
  Program prog;
  Systems sys{{"X", 2}};
  auto X = prog.add_hermitian("X", sys);
  int mi = prog.add_psd(prog.var(X) - Expr::constant(LabeledMat(sys, R)));
  prog.set_objective(Sense::Minimize, trace(prog.var(X)));
  auto sol = prog.solve();
  REQUIRE(sol.status == Status::Optimal);
  CHECK(sol.value == doctest::Approx(R.trace().real()).epsilon(1e-7));
  Mat Z = sol.dual_of(mi);
  CHECK((Z - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("standard form dump runs") {
  Program prog;
  auto x = prog.add_scalar("x", true);
  prog.add_nonneg(prog.svar(x) * 1.0 - ScalarExpr(1.0));
  prog.set_objective(Sense::Minimize, prog.svar(x));
  std::ostringstream os;
  prog.dump_standard_form(os);
  CHECK(os.str().find("conelp standard form") != std::string::npos);
}
