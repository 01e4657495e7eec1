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
//
// Test-only oracles, kept independent of the production solve path.

#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qrc::oracle {

// Alternating-direction augmented Lagrangian method for real standard-form
// SDPs:  min <C, X>  s.t.  A(X) = b,  X in a product of real symmetric PSD
// blocks.  A first-order method, fully independent of the interior-point
// production path; accuracy around 1e-6 on desk-size problems.
struct AdmmProblem {
  std::vector<int> blocks;              // symmetric block dimensions
  std::vector<Eigen::MatrixXd> C;       // one per block
  // Each constraint row: sum_k <A[r][k], X_k> = b[r].
  std::vector<std::vector<Eigen::MatrixXd>> A;
  Eigen::VectorXd b;
};

struct AdmmResult {
  double value = 0;
  std::vector<Eigen::MatrixXd> X;
  int iters = 0;
  double primal_residual = 0;
};

inline Eigen::MatrixXd psd_project(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

// Boundary-point / two-block ADMM on the dual:  max b'y  s.t.
// C - A'(y) = S >= 0, with X the multiplier (Wen-Goldfarb-Yin scheme).
inline AdmmResult admm_sdp(const AdmmProblem& p, int max_iter = 40000, double rho = 1.0,
                           double tol = 1e-9) {
  int m = static_cast<int>(p.b.size());
  int nb = static_cast<int>(p.blocks.size());
  auto Aop = [&](const std::vector<Eigen::MatrixXd>& X) {
    Eigen::VectorXd r(m);
    for (int i = 0; i < m; ++i) {
      double acc = 0;
      for (int k = 0; k < nb; ++k) acc += (p.A[i][k].transpose() * X[k]).trace();
      r(i) = acc;
    }
    return r;
  };
  auto Atop = [&](const Eigen::VectorXd& y) {
    std::vector<Eigen::MatrixXd> r;
    for (int k = 0; k < nb; ++k) {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p.blocks[k], p.blocks[k]);
      for (int i = 0; i < m; ++i) acc += y(i) * p.A[i][k];
      r.push_back(acc);
    }
    return r;
  };
  // Gram matrix of the constraint rows.
  Eigen::MatrixXd AAt(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double acc = 0;
      for (int k = 0; k < nb; ++k) acc += (p.A[i][k].transpose() * p.A[j][k]).trace();
      AAt(i, j) = acc;
    }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(AAt);

  std::vector<Eigen::MatrixXd> X, S;
  for (int k = 0; k < nb; ++k) {
    X.push_back(Eigen::MatrixXd::Identity(p.blocks[k], p.blocks[k]));
    S.push_back(Eigen::MatrixXd::Identity(p.blocks[k], p.blocks[k]));
  }
  AdmmResult res;
  for (int it = 0; it < max_iter; ++it) {
    // y-update (closed form), then S-update (PSD projection), then X.
    Eigen::VectorXd rhs = -Aop(X) * rho + p.b * rho;
    std::vector<Eigen::MatrixXd> CS;
    for (int k = 0; k < nb; ++k) CS.push_back(p.C[k] - S[k]);
    rhs += Aop(CS);
    Eigen::VectorXd y = ldlt.solve(rhs);
    auto Aty = Atop(y);
    double snorm = 0;
    for (int k = 0; k < nb; ++k) {
      Eigen::MatrixXd V = p.C[k] - Aty[k] - rho * X[k];
      Eigen::MatrixXd Snew = psd_project(V);
      snorm = std::max(snorm, (Snew - S[k]).cwiseAbs().maxCoeff());
      S[k] = Snew;
      X[k] = (S[k] - V) / rho;  // = X + (Aty + S - C)/rho
    }
    Eigen::VectorXd pres = Aop(X) - p.b;
    res.iters = it + 1;
    res.primal_residual = pres.cwiseAbs().maxCoeff();
    if (res.primal_residual < tol && snorm < tol) break;
  }
  res.X = X;
  res.value = 0;
  for (int k = 0; k < nb; ++k) res.value += (p.C[k].transpose() * X[k]).trace();
  return res;
}

}  // namespace qrc::oracle
