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

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <vector>

namespace qrc::conic {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;

// Standard form handled by the backend:
//
//   minimize    c'x
//   subject to  A x = b
//               G x + s = h,   s in K
//
// with K = R^lp_+  x  Herm_+(d_1) x ... x Herm_+(d_k).  Hermitian blocks are
// stored in an isometric real vectorization ("svec"): the d diagonal entries
// followed by (sqrt2*Re, sqrt2*Im) of the strict upper triangle, column-major;
// inner products of Hermitian matrices equal dot products of their svecs.
//
// The algorithm is a Nesterov-Todd scaled primal-dual predictor-corrector on
// the self-dual embedding, so infeasible and unbounded problems surface as
// certificates rather than divergence.

struct ConeDims {
  int lp = 0;
  std::vector<int> herm;  // complex Hermitian block dimensions
  int svec_len() const {
    int n = lp;
    for (int d : herm) n += d * d;
    return n;
  }
  int degree() const {
    int nu = lp;
    for (int d : herm) nu += d;
    return nu;
  }
};

struct SolverSettings {
  double tol_feas = 1e-8;
  double tol_rel_gap = 1e-8;
  double tol_abs_gap = 1e-10;
  int max_iter = 120;
  double step_frac = 0.98;
  double static_reg = 1e-12;
  int refine = 1;
  bool verbose = false;
  /// Rerun in extended precision when the double pass stalls above target.
  bool escalate = true;
};

enum class SolveStatus { Optimal, PrimalInfeasible, DualInfeasible, Inaccurate, IterLimit };

struct SolveResult {
  SolveStatus status = SolveStatus::Inaccurate;
  Vec x, y, z, s;  // solution when Optimal; certificate rays otherwise
  double pobj = 0, dobj = 0, gap = 0, rel_gap = 0, pres = 0, dres = 0;
  int iters = 0;
  std::string message;
};

int svec_len(int d);
Vec svec(const CMat& m);
CMat smat(const Vec& v, int d);

/// Real embedding of a complex matrix H = A + iB as [[A, -B], [B, A]];
/// PSD-ness is preserved in both directions.
CMat realify_embed(const CMat& c);
/// Inverse of the embedding, preceded by projection onto the embedded
/// subspace (averaging with the symplectic conjugate, which preserves PSD).
CMat unrealify_project(const CMat& z);

SolveResult solve_conelp(const Vec& c, const SpMat& A, const Vec& b, const SpMat& G, const Vec& h,
                         const ConeDims& K, const SolverSettings& st = {});

}  // namespace qrc::conic
