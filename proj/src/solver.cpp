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

#include "qrc/conic/solver.hpp"

#include <cmath>
#include <iostream>
#include <limits>

namespace qrc::conic {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

int svec_len(int d) { return d * d; }

Vec svec(const CMat& m) {
  int d = static_cast<int>(m.rows());
  Vec v(svec_len(d));
  for (int i = 0; i < d; ++i) v(i) = m(i, i).real();
  int k = d;
  for (int j = 1; j < d; ++j)
    for (int i = 0; i < j; ++i) {
      v(k++) = kSqrt2 * m(i, j).real();
      v(k++) = kSqrt2 * m(i, j).imag();
    }
  return v;
}

CMat smat(const Vec& v, int d) {
  CMat m(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = v(i);
  int k = d;
  for (int j = 1; j < d; ++j)
    for (int i = 0; i < j; ++i) {
      std::complex<double> val(v(k) / kSqrt2, v(k + 1) / kSqrt2);
      k += 2;
      m(i, j) = val;
      m(j, i) = std::conj(val);
    }
  return m;
}

CMat realify_embed(const CMat& c) {
  long d = c.rows();
  CMat r = CMat::Zero(2 * d, 2 * d);
  Eigen::MatrixXd re = c.real(), im = c.imag();
  r.topLeftCorner(d, d) = re.cast<std::complex<double>>();
  r.bottomRightCorner(d, d) = re.cast<std::complex<double>>();
  r.topRightCorner(d, d) = (-im).cast<std::complex<double>>();
  r.bottomLeftCorner(d, d) = im.cast<std::complex<double>>();
  return r;
}

CMat unrealify_project(const CMat& z) {
  long d = z.rows() / 2;
  CMat a = 0.5 * (z.topLeftCorner(d, d) + z.bottomRightCorner(d, d));
  CMat b = 0.5 * (z.bottomLeftCorner(d, d) - z.topRightCorner(d, d));
  return a + std::complex<double>(0, 1) * b;
}

namespace {

template <typename Real>
struct Types {
  using RVec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  using RMat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using CMatR = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
  using RSp = Eigen::SparseMatrix<Real>;
};

template <typename Real>
typename Types<Real>::RVec svec_t(const typename Types<Real>::CMatR& m) {
  const Real sqrt2 = std::sqrt(Real(2));
  int d = static_cast<int>(m.rows());
  typename Types<Real>::RVec v(d * d);
  for (int i = 0; i < d; ++i) v(i) = m(i, i).real();
  int k = d;
  for (int j = 1; j < d; ++j)
    for (int i = 0; i < j; ++i) {
      v(k++) = sqrt2 * m(i, j).real();
      v(k++) = sqrt2 * m(i, j).imag();
    }
  return v;
}

template <typename Real>
typename Types<Real>::CMatR smat_t(const typename Types<Real>::RVec& v, int d) {
  const Real sqrt2 = std::sqrt(Real(2));
  typename Types<Real>::CMatR m(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = v(i);
  int k = d;
  for (int j = 1; j < d; ++j)
    for (int i = 0; i < j; ++i) {
      std::complex<Real> val(v(k) / sqrt2, v(k + 1) / sqrt2);
      k += 2;
      m(i, j) = val;
      m(j, i) = std::conj(val);
    }
  return m;
}

struct Blocks {
  int lp = 0;
  std::vector<int> dims;
  std::vector<int> offsets;
  int total = 0;

  explicit Blocks(const ConeDims& K) {
    lp = K.lp;
    int off = lp;
    for (int d : K.herm) {
      dims.push_back(d);
      offsets.push_back(off);
      off += d * d;
    }
    total = off;
  }
};

template <typename Real>
struct Scaling {
  using RVec = typename Types<Real>::RVec;
  using CMatR = typename Types<Real>::CMatR;

  const Blocks* B = nullptr;
  RVec w;
  std::vector<CMatR> R, Rinv;
  RVec lambda;
  std::vector<RVec> lam_diag;

  void identity(const Blocks& blocks) {
    B = &blocks;
    w = RVec::Ones(blocks.lp);
    R.clear();
    Rinv.clear();
    lam_diag.clear();
    for (int d : blocks.dims) {
      R.push_back(CMatR::Identity(d, d));
      Rinv.push_back(CMatR::Identity(d, d));
      lam_diag.push_back(RVec::Ones(d));
    }
    lambda = RVec::Ones(blocks.total);
  }

  bool compute(const Blocks& blocks, const RVec& s, const RVec& z) {
    B = &blocks;
    w.resize(blocks.lp);
    lambda.resize(blocks.total);
    for (int i = 0; i < blocks.lp; ++i) {
      if (s(i) <= 0 || z(i) <= 0) return false;
      w(i) = std::sqrt(s(i) / z(i));
      lambda(i) = std::sqrt(s(i) * z(i));
    }
    R.assign(blocks.dims.size(), CMatR());
    Rinv.assign(blocks.dims.size(), CMatR());
    lam_diag.assign(blocks.dims.size(), RVec());
    for (size_t k = 0; k < blocks.dims.size(); ++k) {
      int d = blocks.dims[k];
      CMatR S = smat_t<Real>(s.segment(blocks.offsets[k], d * d), d);
      CMatR Z = smat_t<Real>(z.segment(blocks.offsets[k], d * d), d);
      Eigen::LLT<CMatR> ls(S), lz(Z);
      if (ls.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
      CMatR Ls = ls.matrixL(), Lz = lz.matrixL();
      Eigen::JacobiSVD<CMatR> svd(Lz.adjoint() * Ls, Eigen::ComputeFullU | Eigen::ComputeFullV);
      RVec sig = svd.singularValues();
      if (sig.minCoeff() <= 0) return false;
      RVec si = sig.cwiseSqrt().cwiseInverse();
      R[k] = Ls * svd.matrixV() * si.asDiagonal();
      Rinv[k] = si.asDiagonal() * svd.matrixU().adjoint() * Lz.adjoint();
      lam_diag[k] = sig;
      RVec lv = RVec::Zero(d * d);
      lv.head(d) = sig;
      lambda.segment(blocks.offsets[k], d * d) = lv;
    }
    return true;
  }

  RVec scale_z(const RVec& z) const {
    RVec r(B->total);
    r.head(B->lp) = w.cwiseProduct(z.head(B->lp));
    for (size_t k = 0; k < B->dims.size(); ++k) {
      int d = B->dims[k];
      CMatR Z = smat_t<Real>(z.segment(B->offsets[k], d * d), d);
      r.segment(B->offsets[k], d * d) = svec_t<Real>(R[k].adjoint() * Z * R[k]);
    }
    return r;
  }

  RVec scale_s(const RVec& s) const {
    RVec r(B->total);
    r.head(B->lp) = s.head(B->lp).cwiseQuotient(w);
    for (size_t k = 0; k < B->dims.size(); ++k) {
      int d = B->dims[k];
      CMatR S = smat_t<Real>(s.segment(B->offsets[k], d * d), d);
      r.segment(B->offsets[k], d * d) = svec_t<Real>(Rinv[k] * S * Rinv[k].adjoint());
    }
    return r;
  }

  RVec apply_Wt(const RVec& v) const {
    RVec r(B->total);
    r.head(B->lp) = w.cwiseProduct(v.head(B->lp));
    for (size_t k = 0; k < B->dims.size(); ++k) {
      int d = B->dims[k];
      CMatR V = smat_t<Real>(v.segment(B->offsets[k], d * d), d);
      r.segment(B->offsets[k], d * d) = svec_t<Real>(R[k] * V * R[k].adjoint());
    }
    return r;
  }

  RVec apply_WtW(const RVec& v) const {
    RVec r(B->total);
    r.head(B->lp) = w.cwiseAbs2().cwiseProduct(v.head(B->lp));
    for (size_t k = 0; k < B->dims.size(); ++k) {
      int d = B->dims[k];
      CMatR Q = R[k] * R[k].adjoint();
      CMatR V = smat_t<Real>(v.segment(B->offsets[k], d * d), d);
      r.segment(B->offsets[k], d * d) = svec_t<Real>(Q * V * Q);
    }
    return r;
  }

  RVec apply_WtWinv(const RVec& v) const {
    RVec r(B->total);
    r.head(B->lp) = v.head(B->lp).cwiseQuotient(w.cwiseAbs2());
    for (size_t k = 0; k < B->dims.size(); ++k) {
      int d = B->dims[k];
      CMatR Qi = Rinv[k].adjoint() * Rinv[k];
      CMatR V = smat_t<Real>(v.segment(B->offsets[k], d * d), d);
      r.segment(B->offsets[k], d * d) = svec_t<Real>(Qi * V * Qi);
    }
    return r;
  }

  Real alpha_bound(const RVec& u) const {
    Real bound = std::numeric_limits<Real>::infinity();
    for (int i = 0; i < B->lp; ++i)
      if (u(i) < 0) bound = std::min(bound, -lambda(i) / u(i));
    for (size_t k = 0; k < B->dims.size(); ++k) {
      int d = B->dims[k];
      CMatR U = smat_t<Real>(u.segment(B->offsets[k], d * d), d);
      RVec li = lam_diag[k].cwiseSqrt().cwiseInverse();
      CMatR Un = li.asDiagonal() * U * li.asDiagonal();
      Eigen::SelfAdjointEigenSolver<CMatR> es(Un, Eigen::EigenvaluesOnly);
      Real m = es.eigenvalues().minCoeff();
      if (m < 0) bound = std::min(bound, Real(-1) / m);
    }
    return bound;
  }

  RVec jordan(const RVec& u, const RVec& v) const {
    RVec r(B->total);
    r.head(B->lp) = u.head(B->lp).cwiseProduct(v.head(B->lp));
    for (size_t k = 0; k < B->dims.size(); ++k) {
      int d = B->dims[k];
      CMatR U = smat_t<Real>(u.segment(B->offsets[k], d * d), d);
      CMatR V = smat_t<Real>(v.segment(B->offsets[k], d * d), d);
      r.segment(B->offsets[k], d * d) = svec_t<Real>(Real(0.5) * (U * V + V * U));
    }
    return r;
  }

  RVec jordan_div_lambda(const RVec& v) const {
    RVec r(B->total);
    r.head(B->lp) = v.head(B->lp).cwiseQuotient(lambda.head(B->lp));
    for (size_t k = 0; k < B->dims.size(); ++k) {
      int d = B->dims[k];
      CMatR V = smat_t<Real>(v.segment(B->offsets[k], d * d), d);
      CMatR U(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) U(i, j) = Real(2) * V(i, j) / (lam_diag[k](i) + lam_diag[k](j));
      r.segment(B->offsets[k], d * d) = svec_t<Real>(U);
    }
    return r;
  }

  RVec identity_element() const {
    RVec e = RVec::Zero(B->total);
    e.head(B->lp).setOnes();
    for (size_t k = 0; k < B->dims.size(); ++k) e.segment(B->offsets[k], B->dims[k]).setOnes();
    return e;
  }
};

template <typename Real>
Real cone_min_eig(const Blocks& B, const typename Types<Real>::RVec& v) {
  Real m = std::numeric_limits<Real>::infinity();
  if (B.lp > 0) m = std::min(m, v.head(B.lp).minCoeff());
  for (size_t k = 0; k < B.dims.size(); ++k) {
    int d = B.dims[k];
    Eigen::SelfAdjointEigenSolver<typename Types<Real>::CMatR> es(
        smat_t<Real>(v.segment(B.offsets[k], d * d), d), Eigen::EigenvaluesOnly);
    m = std::min(m, es.eigenvalues().minCoeff());
  }
  return m;
}

template <typename Real>
struct KktSolver {
  using RVec = typename Types<Real>::RVec;
  using RMat = typename Types<Real>::RMat;
  using RSp = typename Types<Real>::RSp;
  using CMatR = typename Types<Real>::CMatR;

  const RSp *A, *G;
  const Blocks* B;
  const Scaling<Real>* W;
  Real reg;
  int n, m;
  RMat Gs;
  Eigen::LLT<RMat> lltM;
  Eigen::LLT<RMat> lltS;

  RVec phi(const RVec& v) const {
    RVec r(B->total);
    r.head(B->lp) = v.head(B->lp).cwiseQuotient(W->w);
    for (size_t k = 0; k < B->dims.size(); ++k) {
      int d = B->dims[k];
      CMatR V = smat_t<Real>(v.segment(B->offsets[k], d * d), d);
      r.segment(B->offsets[k], d * d) = svec_t<Real>(W->Rinv[k] * V * W->Rinv[k].adjoint());
    }
    return r;
  }

  bool factor(const RSp& Am, const RSp& Gm, const Blocks& blocks, const Scaling<Real>& sc,
              Real regularization) {
    A = &Am;
    G = &Gm;
    B = &blocks;
    W = &sc;
    reg = regularization;
    n = static_cast<int>(Gm.cols());
    m = static_cast<int>(Am.rows());

    RMat Gd(Gm);
    Gs.resize(Gm.rows(), n);
    for (int j = 0; j < n; ++j) Gs.col(j) = phi(Gd.col(j));

    RMat M = RMat::Zero(n, n);
    M.template selfadjointView<Eigen::Lower>().rankUpdate(Gs.transpose());
    M = M.template selfadjointView<Eigen::Lower>();
    M.diagonal().array() += reg;
    lltM.compute(M);
    if (lltM.info() != Eigen::Success) {
      M.diagonal().array() += Real(1e-8);
      lltM.compute(M);
      if (lltM.info() != Eigen::Success) return false;
    }
    if (m > 0) {
      RMat At(*A);
      RMat X = lltM.solve(At.transpose());
      RMat S = At * X;
      S.diagonal().array() += reg;
      lltS.compute(S);
      if (lltS.info() != Eigen::Success) {
        S.diagonal().array() += Real(1e-8);
        lltS.compute(S);
        if (lltS.info() != Eigen::Success) return false;
      }
    }
    return true;
  }

  void base_solve(const RVec& r1, const RVec& r2, const RVec& r3, RVec& dx, RVec& dy,
                  RVec& dz) const {
    RVec q = r1 + Gs.transpose() * phi(r3);
    RVec t = lltM.solve(q);
    if (m > 0) {
      dy = lltS.solve((*A) * t - r2);
      dx = lltM.solve(q - A->transpose() * dy);
    } else {
      dy.resize(0);
      dx = t;
    }
    dz = W->apply_WtWinv((*G) * dx - r3);
  }

  Real residual_norm(const RVec& r1, const RVec& r2, const RVec& r3, const RVec& dx,
                     const RVec& dy, const RVec& dz) const {
    RVec e1 = r1 - (A->transpose() * dy + G->transpose() * dz);
    Real nsq = e1.squaredNorm();
    if (m > 0) nsq += (r2 - (*A) * dx).squaredNorm();
    nsq += (r3 - ((*G) * dx - W->apply_WtW(dz))).squaredNorm();
    return std::sqrt(nsq);
  }

  void solve(const RVec& r1, const RVec& r2, const RVec& r3, RVec& dx, RVec& dy, RVec& dz) const {
    base_solve(r1, r2, r3, dx, dy, dz);
    Real rn = residual_norm(r1, r2, r3, dx, dy, dz);
    // Safeguarded refinement: keep a correction only while it helps.
    for (int it = 0; it < 4; ++it) {
      RVec e1 = r1 - (A->transpose() * dy + G->transpose() * dz);
      RVec e2 = (m > 0) ? RVec(r2 - (*A) * dx) : RVec();
      RVec e3 = r3 - ((*G) * dx - W->apply_WtW(dz));
      RVec cx, cy, cz;
      base_solve(e1, m > 0 ? e2 : RVec::Zero(0), e3, cx, cy, cz);
      RVec nx = dx + cx, ny = dy, nz = dz + cz;
      if (m > 0) ny = dy + cy;
      Real rn2 = residual_norm(r1, r2, r3, nx, ny, nz);
      if (!(rn2 < Real(0.9) * rn)) break;
      dx = nx;
      dy = ny;
      dz = nz;
      rn = rn2;
    }
  }
};

template <typename Real>
SolveResult solve_impl(const Vec& c_in, const SpMat& A_in, const Vec& b_in, const SpMat& G_in,
                       const Vec& h_in, const ConeDims& K, const SolverSettings& st) {
  using RVec = typename Types<Real>::RVec;
  using RSp = typename Types<Real>::RSp;
  const Real kInfR = std::numeric_limits<Real>::infinity();

  SolveResult res;
  Blocks B(K);
  const int n = static_cast<int>(c_in.size());
  const int m = static_cast<int>(A_in.rows());

  RVec c = c_in.cast<Real>();
  RVec b = b_in.cast<Real>();
  RVec h = h_in.cast<Real>();
  RSp A = A_in.cast<Real>();
  RSp G = G_in.cast<Real>();

  const Real nrm_b = std::max<Real>(1, m > 0 ? b.norm() : Real(0));
  const Real nrm_h = std::max<Real>(1, h.norm());
  const Real nrm_c = std::max<Real>(1, c.norm());

  Scaling<Real> W;
  W.identity(B);
  KktSolver<Real> kkt;
  if (!kkt.factor(A, G, B, W, Real(st.static_reg))) {
    res.message = "initial KKT factorization failed";
    return res;
  }

  RVec x, y, s, z;
  {
    RVec dx, dy, dz;
    kkt.solve(RVec::Zero(n), m > 0 ? b : RVec::Zero(0), h, dx, dy, dz);
    x = dx;
    s = h - G * x;
    Real me = cone_min_eig<Real>(B, s);
    if (me < Real(1e-8)) s += (Real(1) - me) * W.identity_element();
  }
  {
    RVec dx, dy, dz;
    kkt.solve(-c, m > 0 ? RVec(RVec::Zero(m)) : RVec::Zero(0), RVec::Zero(B.total), dx, dy, dz);
    y = dy;
    z = dz;
    Real me = cone_min_eig<Real>(B, z);
    if (me < Real(1e-8)) z += (Real(1) - me) * W.identity_element();
  }
  Real tau = 1, kappa = 1;
  const Real nu = Real(K.degree() + 1);

  auto phi_of = [&](const RVec& ux, const RVec& uy, const RVec& uz) {
    Real r = c.dot(ux) + h.dot(uz);
    if (m > 0) r += b.dot(uy);
    return r;
  };

  struct Best {
    Real merit;
    RVec x, y, z, s;
    Real tau = 1;
    double pobj = 0, dobj = 0, gap = 0, rel_gap = 0, pres = 0, dres = 0;
    int iter = 0;
  } best;
  best.merit = kInfR;

  auto record = [&](SolveResult& out, const Best& bb) {
    out.pobj = bb.pobj;
    out.dobj = bb.dobj;
    out.gap = bb.gap;
    out.rel_gap = bb.rel_gap;
    out.pres = bb.pres;
    out.dres = bb.dres;
    out.iters = bb.iter;
    out.x = (bb.x / bb.tau).template cast<double>();
    out.y = (m > 0) ? Vec((bb.y / bb.tau).template cast<double>()) : Vec();
    out.z = (bb.z / bb.tau).template cast<double>();
    out.s = (bb.s / bb.tau).template cast<double>();
  };

  for (int iter = 0; iter < st.max_iter; ++iter) {
    RVec rx = G.transpose() * z + c * tau;
    if (m > 0) rx += A.transpose() * y;
    RVec ry = (m > 0) ? RVec(A * x - b * tau) : RVec();
    RVec rz = G * x + s - h * tau;
    Real rtau = c.dot(x) + h.dot(z) + kappa + (m > 0 ? b.dot(y) : Real(0));
    Real mu = (s.dot(z) + tau * kappa) / nu;

    Real pcost = c.dot(x) / tau;
    Real dcost = -(h.dot(z) + (m > 0 ? b.dot(y) : Real(0))) / tau;
    Real gap_hs = s.dot(z) / (tau * tau);
    Real relgap = gap_hs / std::max<Real>(1, std::abs(pcost));
    Real pres = rz.norm() / (tau * nrm_h);
    if (m > 0) pres = std::max(pres, ry.norm() / (tau * nrm_b));
    Real dres = rx.norm() / (tau * nrm_c);

    if (st.verbose)
      std::cerr << "iter " << iter << " pcost " << (double)pcost << " dcost " << (double)dcost
                << " gap " << (double)gap_hs << " pres " << (double)pres << " dres "
                << (double)dres << " tau " << (double)tau << " kappa " << (double)kappa << "\n";

    Real merit = std::max({pres, dres, std::min(relgap, gap_hs)});
    if (merit < best.merit) {
      best.merit = merit;
      best.x = x;
      best.y = y;
      best.z = z;
      best.s = s;
      best.tau = tau;
      best.pobj = (double)pcost;
      best.dobj = (double)dcost;
      best.gap = (double)gap_hs;
      best.rel_gap = (double)relgap;
      best.pres = (double)pres;
      best.dres = (double)dres;
      best.iter = iter;
    }

    if (pres <= Real(st.tol_feas) && dres <= Real(st.tol_feas) &&
        (relgap <= Real(st.tol_rel_gap) || gap_hs <= Real(st.tol_abs_gap))) {
      res.status = SolveStatus::Optimal;
      record(res, best);
      return res;
    }

    Real hzby = h.dot(z) + (m > 0 ? b.dot(y) : Real(0));
    if (hzby < 0) {
      RVec atgz = G.transpose() * z;
      if (m > 0) atgz += A.transpose() * y;
      if (atgz.norm() / (-hzby) <= Real(st.tol_feas) * nrm_c) {
        res.status = SolveStatus::PrimalInfeasible;
        res.y = (m > 0) ? Vec((y / (-hzby)).template cast<double>()) : Vec();
        res.z = (z / (-hzby)).template cast<double>();
        res.iters = iter;
        res.message = "primal infeasibility certificate found";
        return res;
      }
    }
    Real cx = c.dot(x);
    if (cx < 0) {
      Real r1 = (G * x + s).norm() / nrm_h;
      Real r2 = (m > 0) ? Real((A * x).norm() / nrm_b) : Real(0);
      if (std::max(r1, r2) / (-cx) <= Real(st.tol_feas)) {
        res.status = SolveStatus::DualInfeasible;
        res.x = (x / (-cx)).template cast<double>();
        res.s = (s / (-cx)).template cast<double>();
        res.iters = iter;
        res.message = "dual infeasibility certificate found";
        return res;
      }
    }

    if (!W.compute(B, s, z)) {
      res.message = "scaling breakdown (iterate left the cone)";
      break;
    }
    if (!kkt.factor(A, G, B, W, Real(st.static_reg))) {
      res.message = "KKT factorization failed";
      break;
    }

    RVec u1x, u1y, u1z;
    kkt.solve(-c, m > 0 ? b : RVec::Zero(0), h, u1x, u1y, u1z);
    Real phi1 = phi_of(u1x, u1y, u1z);

    // Solve the full embedding Newton system
    //   A'dy + G'dz + c dtau = q1;  A dx - b dtau = q2;  G dx + ds - h dtau = q3
    //   c'dx + b'dy + h'dz + dkappa = q4;  W^{-T}ds + W dz = q5;  tau dkappa + kappa dtau = q6.
    auto solve_once = [&](const RVec& q1, const RVec& q2, const RVec& q3, Real q4, const RVec& q5,
                          Real q6, RVec& dx, RVec& dy, RVec& dz, RVec& ds, Real& dtau,
                          Real& dkappa) {
      RVec r3 = q3 - W.apply_Wt(q5);
      RVec u2x, u2y, u2z;
      kkt.solve(q1, m > 0 ? q2 : RVec::Zero(0), r3, u2x, u2y, u2z);
      Real phi2 = phi_of(u2x, u2y, u2z);
      Real denom = kappa - tau * phi1;
      if (std::abs(denom) < Real(1e-16)) denom = (denom < 0 ? Real(-1e-16) : Real(1e-16));
      dtau = (q6 - tau * (q4 - phi2)) / denom;
      dx = u2x + dtau * u1x;
      if (m > 0) dy = u2y + dtau * u1y;
      dz = u2z + dtau * u1z;
      ds = W.apply_Wt(q5 - W.scale_z(dz));
      dkappa = (q6 - kappa * dtau) / tau;
    };

    // Residuals of the full system at a candidate direction; the assembly of
    // u2 + dtau*u1 cancels catastrophically near the solution (components of
    // u1 grow like 1/mu), so the direction itself is refined against these.
    auto newton = [&](Real eta, const RVec& ds_rhs, Real dk_rhs, RVec& dx, RVec& dy, RVec& dz,
                      RVec& ds, Real& dtau, Real& dkappa) {
      RVec q1 = -eta * rx;
      RVec q2 = m > 0 ? RVec(-eta * ry) : RVec::Zero(0);
      RVec q3 = -eta * rz;
      Real q4 = -eta * rtau;
      RVec q5 = -W.jordan_div_lambda(ds_rhs);
      Real q6 = -dk_rhs;
      solve_once(q1, q2, q3, q4, q5, q6, dx, dy, dz, ds, dtau, dkappa);
      auto resid = [&](const RVec& ex, const RVec& ey, const RVec& ez, const RVec& es, Real et,
                       Real ek, RVec& p1, RVec& p2, RVec& p3, Real& p4, RVec& p5, Real& p6) {
        p1 = q1 - (G.transpose() * ez + c * et);
        if (m > 0) p1 -= A.transpose() * ey;
        p2 = (m > 0) ? RVec(q2 - (A * ex - b * et)) : RVec::Zero(0);
        p3 = q3 - (G * ex + es - h * et);
        p4 = q4 - (c.dot(ex) + h.dot(ez) + ek + (m > 0 ? b.dot(ey) : Real(0)));
        p5 = q5 - (W.scale_s(es) + W.scale_z(ez));
        p6 = q6 - (tau * ek + kappa * et);
      };
      RVec p1, p2, p3, p5;
      Real p4, p6;
      resid(dx, dy, dz, ds, dtau, dkappa, p1, p2, p3, p4, p5, p6);
      Real rn = std::sqrt(p1.squaredNorm() + p2.squaredNorm() + p3.squaredNorm() + p4 * p4 +
                          p5.squaredNorm() + p6 * p6);
      for (int pass = 0; pass < 3; ++pass) {
        RVec cx, cy, cz, cs;
        Real ct, ck;
        solve_once(p1, p2, p3, p4, p5, p6, cx, cy, cz, cs, ct, ck);
        RVec nx = dx + cx, ny = dy, nz = dz + cz, ns = ds + cs;
        if (m > 0) ny = dy + cy;
        Real nt = dtau + ct, nk = dkappa + ck;
        RVec w1, w2, w3, w5;
        Real w4, w6;
        resid(nx, ny, nz, ns, nt, nk, w1, w2, w3, w4, w5, w6);
        Real rn2 = std::sqrt(w1.squaredNorm() + w2.squaredNorm() + w3.squaredNorm() + w4 * w4 +
                             w5.squaredNorm() + w6 * w6);
        if (!(rn2 < Real(0.5) * rn)) break;
        dx = nx;
        dy = ny;
        dz = nz;
        ds = ns;
        dtau = nt;
        dkappa = nk;
        p1 = w1;
        p2 = w2;
        p3 = w3;
        p4 = w4;
        p5 = w5;
        p6 = w6;
        rn = rn2;
      }
    };

    RVec ds_aff_rhs = W.jordan(W.lambda, W.lambda);
    RVec dxa, dya, dza, dsa;
    Real dta, dka;
    newton(Real(1), ds_aff_rhs, tau * kappa, dxa, dya, dza, dsa, dta, dka);

    RVec dsbar_a = W.scale_s(dsa), dzbar_a = W.scale_z(dza);
    Real alpha_a =
        std::min({Real(1), W.alpha_bound(dsbar_a), W.alpha_bound(dzbar_a),
                  dta < 0 ? -tau / dta : kInfR, dka < 0 ? -kappa / dka : kInfR});
    Real sigma = alpha_a >= 1 ? Real(0) : Real(std::pow((double)(1 - alpha_a), 3.0));
    sigma = std::min<Real>(1, std::max<Real>(0, sigma));

    RVec e = W.identity_element();
    RVec ds_rhs = ds_aff_rhs + W.jordan(dsbar_a, dzbar_a) - sigma * mu * e;
    Real dk_rhs = tau * kappa + dta * dka - sigma * mu;
    RVec dx, dy, dz, ds;
    Real dt, dk;
    newton(Real(1) - sigma, ds_rhs, dk_rhs, dx, dy, dz, ds, dt, dk);

    if (st.verbose) {
      RVec e3 = G * dx + ds - h * dt + (Real(1) - sigma) * rz;
      RVec e1 = G.transpose() * dz + c * dt + (Real(1) - sigma) * rx;
      if (m > 0) e1 += A.transpose() * dy;
      std::cerr << "   newton rows: |r1| " << (double)e1.norm() << " |r3| " << (double)e3.norm()
                << " dt " << (double)dt << " dk " << (double)dk << " sigma " << (double)sigma
                << "\n";
    }

    RVec dsbar = W.scale_s(ds), dzbar = W.scale_z(dz);
    Real amax = std::min({W.alpha_bound(dsbar), W.alpha_bound(dzbar),
                          dt < 0 ? -tau / dt : kInfR, dk < 0 ? -kappa / dk : kInfR});
    Real alpha = std::min<Real>(1, Real(st.step_frac) * amax);
    if (!std::isfinite((double)alpha) || alpha <= Real(1e-16)) {
      res.message = "step length collapsed";
      break;
    }

    x += alpha * dx;
    if (m > 0) y += alpha * dy;
    z += alpha * dz;
    s += alpha * ds;
    tau += alpha * dt;
    kappa += alpha * dk;
    if (tau <= 0 || kappa < 0) {
      res.message = "embedding variables left the positive orthant";
      break;
    }
  }

  if (res.message.empty()) res.message = "iteration limit reached";
  res.status = SolveStatus::IterLimit;
  if (best.merit < kInfR) record(res, best);
  return res;
}

bool meets(const SolveResult& r, const SolverSettings& st, double relax) {
  return r.pres <= relax * st.tol_feas && r.dres <= relax * st.tol_feas &&
         (r.rel_gap <= relax * st.tol_rel_gap || r.gap <= relax * st.tol_abs_gap);
}

}  // namespace

namespace {
SolveResult solve_conelp_double(const Vec& c, const SpMat& A, const Vec& b, const SpMat& G,
                                const Vec& h, const ConeDims& K, const SolverSettings& st) {
  return solve_impl<double>(c, A, b, G, h, K, st);
}
}  // namespace

SolveResult solve_conelp(const Vec& c, const SpMat& A, const Vec& b, const SpMat& G, const Vec& h,
                         const ConeDims& K, const SolverSettings& st) {
  Blocks B(K);
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(A.rows());
  if (G.rows() != B.total || G.cols() != n || (m > 0 && A.cols() != n) || h.size() != B.total ||
      b.size() != m)
    throw std::invalid_argument("solve_conelp: inconsistent problem dimensions");
  if (B.total == 0) throw std::invalid_argument("solve_conelp: empty cone");

  SolveResult r = solve_conelp_double(c, A, b, G, h, K, st);
  if (r.status == SolveStatus::Optimal || r.status == SolveStatus::PrimalInfeasible ||
      r.status == SolveStatus::DualInfeasible)
    return r;
  if (!st.escalate) {
    if (meets(r, st, 50.0)) {
      r.status = SolveStatus::Optimal;
      r.message += " (accepted at reduced accuracy)";
    }
    return r;
  }

  // The double-precision endgame stalled short of the target: rerun with
  // extended precision, whose unit roundoff tolerates the 1/mu^2 Newton
  // conditioning a couple of orders longer.
  SolveResult r2 = solve_impl<long double>(c, A, b, G, h, K, st);
  if (r2.status == SolveStatus::Optimal || r2.status == SolveStatus::PrimalInfeasible ||
      r2.status == SolveStatus::DualInfeasible) {
    r2.message += " (extended precision)";
    return r2;
  }
  SolveResult& bestr = (r2.pres + r2.dres + r2.rel_gap < r.pres + r.dres + r.rel_gap) ? r2 : r;
  if (meets(bestr, st, 50.0)) {
    bestr.status = SolveStatus::Optimal;
    bestr.message += " (accepted at reduced accuracy)";
  } else {
    bestr.status = SolveStatus::Inaccurate;
  }
  return bestr;
}

}  // namespace qrc::conic
