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

#include "qrc/conic/program.hpp"

#include <Eigen/QR>

namespace qrc::conic {

VarHandle Program::add_hermitian(const std::string& name, Systems sys) {
  for (const auto& v : herm_vars_)
    if (v.name == name) throw std::invalid_argument("duplicate variable name '" + name + "'");
  HermVar v;
  v.name = name;
  v.sys = std::move(sys);
  v.dim = static_cast<int>(total_dim(v.sys));
  v.offset = ncoords_;
  ncoords_ += v.dim * v.dim;
  herm_vars_.push_back(std::move(v));
  return VarHandle{static_cast<int>(herm_vars_.size()) - 1};
}

ScalarHandle Program::add_scalar(const std::string& name, bool nonneg) {
  ScalarVar v;
  v.name = name;
  v.offset = ncoords_;
  v.nonneg = nonneg;
  ncoords_ += 1;
  scalar_vars_.push_back(v);
  return ScalarHandle{static_cast<int>(scalar_vars_.size()) - 1};
}

Expr Program::var(VarHandle h) const {
  const HermVar& v = herm_vars_.at(h.id);
  int d = v.dim;
  Expr e(v.sys, Mat::Zero(d, d));
  int t = v.offset;
  for (int i = 0; i < d; ++i) e.add_term(t++, unit_matrix(d, i, i));
  for (int j = 1; j < d; ++j)
    for (int i = 0; i < j; ++i) {
      e.add_term(t++, unit_matrix(d, i, j) + unit_matrix(d, j, i));
      e.add_term(t++, Cplx(0, 1) * unit_matrix(d, i, j) - Cplx(0, 1) * unit_matrix(d, j, i));
    }
  return e;
}

ScalarExpr Program::svar(ScalarHandle h) const {
  ScalarExpr e;
  e.lin[scalar_vars_.at(h.id).offset] = 1.0;
  return e;
}

void Program::add_equality(const Expr& lhs, const Expr& rhs) { eqs_.push_back({lhs - rhs, 0}); }
void Program::add_equality_zero(const Expr& e) { eqs_.push_back({e, 0}); }
void Program::add_equality(const ScalarExpr& e, double rhs) {
  scalar_eqs_.push_back(e - ScalarExpr(rhs));
}
int Program::add_psd(const Expr& e) {
  psd_.push_back(e);
  return static_cast<int>(psd_.size()) - 1;
}
void Program::add_nonneg(const ScalarExpr& e) { nonneg_.push_back(e); }
void Program::set_objective(Sense sense, const ScalarExpr& obj) {
  sense_ = sense;
  objective_ = obj;
  has_objective_ = true;
}


struct Program::Lowered {
  Vec c;
  SpMat A;
  Vec b;
  SpMat G;
  Vec h;
  ConeDims K;
  double obj_offset = 0;
  double obj_sign = 1;  // +1 minimize, -1 the data was negated for maximize
  std::vector<int> psd_block_offsets;
  std::vector<int> psd_block_dims;  // lowered block dims (2d when realified)
  bool trivially_infeasible = false;
  // all original equality rows for residual reporting
  std::vector<std::map<int, double>> all_rows;
  std::vector<double> all_rhs;
};

Program::Lowered Program::lower(const ProgramSettings& settings) const {
  Lowered L;

  // --- equality rows ---
  std::vector<Eigen::Triplet<double>> atrip;
  std::vector<double> bvals;
  auto push_row = [&](const std::map<int, double>& row, double rhs) {
    double maxc = 0;
    for (const auto& [t, v] : row) maxc = std::max(maxc, std::abs(v));
    L.all_rows.push_back(row);
    L.all_rhs.push_back(rhs);
    if (maxc < 1e-13) {
      if (std::abs(rhs) > 1e-9) L.trivially_infeasible = true;
      L.all_rows.pop_back();
      L.all_rhs.pop_back();
      return;
    }
    int r = static_cast<int>(bvals.size());
    for (const auto& [t, v] : row)
      if (std::abs(v) > 1e-15) atrip.emplace_back(r, t, v);
    bvals.push_back(rhs);
  };

  for (const auto& se : scalar_eqs_) {
    std::map<int, double> row(se.lin.begin(), se.lin.end());
    push_row(row, -se.cst);
  }
  for (const auto& [e, tag] : eqs_) {
    (void)tag;
    long d = e.dim();
    // Hermitian-valued expression equals zero: independent real equations are
    // the real upper triangle and the imaginary strict upper triangle.
    for (long i = 0; i < d; ++i)
      for (long j = i; j < d; ++j) {
        std::map<int, double> row_re, row_im;
        for (const auto& [t, coeff] : e.coeffs()) {
          Cplx v = 0.5 * (coeff(i, j) + std::conj(coeff(j, i)));
          if (std::abs(v.real()) > 1e-15) row_re[t] = v.real();
          if (i != j && std::abs(v.imag()) > 1e-15) row_im[t] = v.imag();
        }
        Cplx rhs = -0.5 * (e.cst()(i, j) + std::conj(e.cst()(j, i)));
        push_row(row_re, rhs.real());
        if (i != j) push_row(row_im, rhs.imag());
      }
  }

  // --- rank-reduce the equality rows (QR presolve) ---
  int m0 = static_cast<int>(bvals.size());
  SpMat A0(m0, ncoords_);
  A0.setFromTriplets(atrip.begin(), atrip.end());
  std::vector<int> keep;
  if (m0 > 0) {
    Eigen::MatrixXd At = Eigen::MatrixXd(A0).transpose();  // n x m
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(At);
    qr.setThreshold(1e-11);
    int rank = static_cast<int>(qr.rank());
    const auto& perm = qr.colsPermutation().indices();
    keep.assign(perm.data(), perm.data() + rank);
    std::sort(keep.begin(), keep.end());
    if (rank < m0) {
      // Verify dropped rows are consistent with the kept ones.
      Eigen::MatrixXd Ak(ncoords_, rank);
      Vec bk(rank);
      for (int i = 0; i < rank; ++i) {
        Ak.col(i) = At.col(keep[i]);
        bk(i) = bvals[keep[i]];
      }
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qrk(Ak);
      std::vector<bool> kept(m0, false);
      for (int i : keep) kept[i] = true;
      for (int r = 0; r < m0; ++r) {
        if (kept[r]) continue;
        Vec w = qrk.solve(At.col(r));
        double brec = bk.dot(w);
        if (std::abs(brec - bvals[r]) > 1e-8 * (1.0 + std::abs(bvals[r])))
          L.trivially_infeasible = true;
      }
    }
  }
  int m = static_cast<int>(keep.size());
  L.A = SpMat(m, ncoords_);
  {
    std::vector<Eigen::Triplet<double>> t2;
    Eigen::VectorXd bfin(m);
    std::vector<int> rowmap(m0, -1);
    for (int i = 0; i < m; ++i) rowmap[keep[i]] = i;
    for (int k = 0; k < A0.outerSize(); ++k)
      for (SpMat::InnerIterator it(A0, k); it; ++it)
        if (rowmap[it.row()] >= 0) t2.emplace_back(rowmap[it.row()], it.col(), it.value());
    L.A.setFromTriplets(t2.begin(), t2.end());
    for (int i = 0; i < m; ++i) bfin(i) = bvals[keep[i]];
    L.b = bfin;
  }

  // --- cone section ---
  L.K.lp = 0;
  std::vector<Eigen::Triplet<double>> gtrip;
  std::vector<double> hvals;
  auto push_lp = [&](const std::map<int, double>& lin, double cst) {
    int r = static_cast<int>(hvals.size());
    for (const auto& [t, v] : lin)
      if (std::abs(v) > 1e-15) gtrip.emplace_back(r, t, -v);
    hvals.push_back(cst);
    L.K.lp++;
  };
  for (const auto& sv : scalar_vars_)
    if (sv.nonneg) push_lp({{sv.offset, 1.0}}, 0.0);
  for (const auto& ne : nonneg_) {
    std::map<int, double> lin(ne.lin.begin(), ne.lin.end());
    push_lp(lin, ne.cst);
  }
  for (const auto& e : psd_) {
    int d = static_cast<int>(e.dim());
    int bd = settings.realify ? 2 * d : d;
    int base = static_cast<int>(hvals.size());
    L.psd_block_offsets.push_back(base);
    L.psd_block_dims.push_back(bd);
    L.K.herm.push_back(bd);
    auto lower_mat = [&](const Mat& c) {
      Mat cs = 0.5 * (c + c.adjoint().eval());
      return settings.realify ? svec(realify_embed(cs)) : svec(cs);
    };
    Vec hb = lower_mat(e.cst());
    for (const auto& [t, coeff] : e.coeffs()) {
      Vec col = lower_mat(coeff);
      for (int r = 0; r < col.size(); ++r)
        if (std::abs(col(r)) > 1e-15) gtrip.emplace_back(base + r, t, -col(r));
    }
    for (int r = 0; r < hb.size(); ++r) hvals.push_back(hb(r));
  }
  L.G = SpMat(static_cast<int>(hvals.size()), ncoords_);
  L.G.setFromTriplets(gtrip.begin(), gtrip.end());
  L.h = Eigen::Map<Vec>(hvals.data(), static_cast<long>(hvals.size()));

  // --- objective ---
  L.c = Vec::Zero(ncoords_);
  ScalarExpr obj = has_objective_ ? objective_ : ScalarExpr(0.0);
  L.obj_sign = (sense_ == Sense::Maximize) ? -1.0 : 1.0;
  for (const auto& [t, v] : obj.lin) L.c(t) = L.obj_sign * v;
  L.obj_offset = obj.cst;
  return L;
}

Solution Program::solve(const ProgramSettings& settings) const {
  Solution sol;
  if (psd_.empty() && nonneg_.empty()) {
    bool any_nonneg_scalar = false;
    for (const auto& sv : scalar_vars_) any_nonneg_scalar |= sv.nonneg;
    if (!any_nonneg_scalar)
      throw std::invalid_argument("Program::solve: no cone constraints (ill-posed program)");
  }
  Lowered L = lower(settings);
  if (L.trivially_infeasible) {
    sol.status = Status::Infeasible;
    sol.message = "inconsistent affine constraints detected in presolve";
    return sol;
  }

  // Null-space presolve: eliminate the equality rows by solving on the
  // affine slice x = x0 + N z, which shrinks the Newton systems and removes
  // the Schur complement solve entirely.
  SolveResult r;
  Eigen::MatrixXd Nbasis;
  Eigen::VectorXd x0;
  const int m = static_cast<int>(L.A.rows());
  if (m > 0) {
    Eigen::MatrixXd At = Eigen::MatrixXd(L.A).transpose();  // n x m
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(At);
    qr.setThreshold(1e-11);
    int rank = static_cast<int>(qr.rank());
    Eigen::MatrixXd Q = qr.householderQ();
    Nbasis = Q.rightCols(ncoords_ - rank);
    // Particular solution of A x = b through the same factorization.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qrA(Eigen::MatrixXd(L.A));
    qrA.setThreshold(1e-11);
    x0 = qrA.solve(L.b);
    if ((L.A * x0 - L.b).cwiseAbs().maxCoeff() > 1e-8) {
      sol.status = Status::Infeasible;
      sol.message = "equality constraints are inconsistent";
      return sol;
    }
    Vec cz = Nbasis.transpose() * L.c;
    Eigen::MatrixXd Gz = Eigen::MatrixXd(L.G) * Nbasis;
    Vec hz = L.h - L.G * x0;
    SpMat Az(0, Nbasis.cols());
    r = solve_conelp(cz, Az, Vec(), Gz.sparseView(), hz, L.K, settings.solver);
    if (r.x.size() > 0) {
      // Unbounded rays live in the null space; points get the offset back.
      r.x = (r.status == SolveStatus::DualInfeasible) ? Vec(Nbasis * r.x)
                                                      : Vec(x0 + Nbasis * r.x);
    }
    double cx0 = L.c.dot(x0);
    r.pobj += cx0;
    r.dobj += cx0;
  } else {
    r = solve_conelp(L.c, L.A, L.b, L.G, L.h, L.K, settings.solver);
  }
  sol.iters = r.iters;
  sol.solver_gap = r.gap;
  sol.message = r.message;

  auto extract_point = [&](const Vec& x) {
    for (const auto& v : herm_vars_) {
      Mat matv(v.dim, v.dim);
      int t = v.offset;
      for (int i = 0; i < v.dim; ++i) matv(i, i) = x(t++);
      for (int j = 1; j < v.dim; ++j)
        for (int i = 0; i < j; ++i) {
          double re = x(t++), im = x(t++);
          matv(i, j) = Cplx(re, im);
          matv(j, i) = Cplx(re, -im);
        }
      sol.herm[v.name] = std::move(matv);
    }
    for (const auto& v : scalar_vars_) sol.scalar[v.name] = x(v.offset);
    // Residuals on the original (pre-presolve) rows.
    double eqres = 0;
    for (size_t i = 0; i < L.all_rows.size(); ++i) {
      double lhs = 0;
      for (const auto& [t, v] : L.all_rows[i]) lhs += v * x(t);
      eqres = std::max(eqres, std::abs(lhs - L.all_rhs[i]));
    }
    sol.eq_residual = eqres;
    double cres = 0;
    for (const auto& e : psd_) {
      Mat val = e.eval(x);
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (val + val.adjoint().eval()),
                                            Eigen::EigenvaluesOnly);
      cres = std::max(cres, std::max(0.0, -es.eigenvalues().minCoeff()));
    }
    for (const auto& ne : nonneg_) cres = std::max(cres, std::max(0.0, -ne.eval(x)));
    sol.cone_residual = cres;
  };

  auto extract_duals = [&](const Vec& z, double scale) {
    for (size_t k = 0; k < psd_.size(); ++k) {
      int off = L.psd_block_offsets[k], bd = L.psd_block_dims[k];
      Mat zb = smat(z.segment(off, svec_len(bd)), bd);
      if (settings.realify) zb = 2.0 * unrealify_project(zb);
      sol.psd_duals.push_back(scale * zb);
    }
  };

  switch (r.status) {
    case SolveStatus::Optimal: {
      sol.status = Status::Optimal;
      extract_point(r.x);
      double raw = L.c.dot(r.x);
      sol.value = L.obj_sign * raw + L.obj_offset;
      extract_duals(r.z, 1.0);
      sol.eq_dual = r.y;
      break;
    }
    case SolveStatus::PrimalInfeasible:
      sol.status = Status::Infeasible;
      extract_duals(r.z, 1.0);
      sol.eq_dual = r.y;
      break;
    case SolveStatus::DualInfeasible:
      sol.status = Status::Unbounded;
      extract_point(r.x);
      break;
    default:
      sol.status = Status::Inaccurate;
      if (r.x.size() > 0) {
        extract_point(r.x);
        double raw = L.c.dot(r.x);
        sol.value = L.obj_sign * raw + L.obj_offset;
      }
      break;
  }
  return sol;
}

void Program::dump_standard_form(std::ostream& os, const ProgramSettings& settings) const {
  Lowered L = lower(settings);
  os << "conelp standard form: n=" << ncoords_ << " m=" << L.A.rows() << " lp=" << L.K.lp
     << " herm=[";
  for (size_t i = 0; i < L.K.herm.size(); ++i) os << (i ? "," : "") << L.K.herm[i];
  os << "]\n";
  os << "c = " << L.c.transpose() << "\n";
  os << "b = " << (L.b.size() ? L.b.transpose() : Vec().transpose()) << "\n";
  os << "A (" << L.A.rows() << "x" << L.A.cols() << ", nnz " << L.A.nonZeros() << ")\n";
  os << "G (" << L.G.rows() << "x" << L.G.cols() << ", nnz " << L.G.nonZeros() << ")\n";
  os << "h = " << L.h.transpose() << "\n";
}

}  // namespace qrc::conic
