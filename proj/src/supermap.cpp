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

#include "qrc/supermap.hpp"

namespace qrc {

SuperChoi::SuperChoi(SystemLabel a0, SystemLabel a1, SystemLabel b0, SystemLabel b1, HermitianOp J)
    : a0_(std::move(a0)), a1_(std::move(a1)), b0_(std::move(b0)), b1_(std::move(b1)), J_(std::move(J)) {
  Systems expect{a0_, a1_, b0_, b1_};
  if (J_.systems().size() != 4)
    throw std::invalid_argument("SuperChoi: J must live on four systems (A0, A1, B0, B1)");
  for (size_t k = 0; k < 4; ++k)
    if (!(J_.systems()[k] == expect[k]))
      throw std::invalid_argument("SuperChoi: J system order must be (A0, A1, B0, B1)");
}

SuperChoi super_choi_from_realization(const SuperRealization& r) {
  if (r.pre.in().size() != 1 || r.pre.out().size() != 2)
    throw std::invalid_argument("realization: pre must map B0 -> (A0, E)");
  if (r.post.in().size() != 2 || r.post.out().size() != 1)
    throw std::invalid_argument("realization: post must map (A1, E) -> B1");
  SystemLabel b0 = r.pre.in()[0], a0 = r.pre.out()[0], epre = r.pre.out()[1];
  SystemLabel a1 = r.post.in()[0], epost = r.post.in()[1], b1 = r.post.out()[0];
  if (epre.dim != r.memoryDim || epost.dim != r.memoryDim)
    throw std::invalid_argument("realization: memory dimension mismatch across E");

  LabeledMat jpre = rename_system(r.pre.J().labeled(), epre.name, "__E0");
  LabeledMat jpost = r.post.J().labeled();
  jpost = rename_system(jpost, epost.name, "__E1");
  LabeledMat phiE = max_entangled_unnormalized(r.memoryDim, "__E0", "__E1");

  int dA0 = a0.dim, dA1 = a1.dim;
  long dB = static_cast<long>(b0.dim) * b1.dim;
  long dA = static_cast<long>(dA0) * dA1;
  Mat J = Mat::Zero(dA * dB, dA * dB);
  for (int i = 0; i < dA0; ++i)
    for (int j = 0; j < dA0; ++j)
      for (int k = 0; k < dA1; ++k)
        for (int l = 0; l < dA1; ++l) {
          // J_{eps_ijkl} = |i><j|^{A0} (x) |k><l|^{A1}
          LabeledMat jeps = tensor(LabeledMat({{a0.name, dA0}}, unit_matrix(dA0, i, j)),
                                   LabeledMat({{a1.name, dA1}}, unit_matrix(dA1, k, l)));
          // Choi of eps (x) id_E over input (A0, __E0), output (A1, __E1).
          LabeledMat mid = tensor(jeps, phiE);
          mid = reorder(mid, {a0.name, "__E0", a1.name, "__E1"});
          LabeledMat theta_eps = link(link(jpre, mid), jpost);  // over (B0, B1)
          theta_eps = reorder(theta_eps, {b0.name, b1.name});
          long row = static_cast<long>(i) * dA1 + k, col = static_cast<long>(j) * dA1 + l;
          J.block(row * dB, col * dB, dB, dB) += theta_eps.m;
        }
  return SuperChoi(a0, a1, b0, b1, HermitianOp({a0, a1, b0, b1}, std::move(J)));
}

SuperReport validate_superchannel(const SuperChoi& s, double tol) {
  SuperReport r;
  double mineig = s.J().min_eigenvalue();
  r.psdResidual = std::max(0.0, -mineig);
  r.psd = mineig >= -tol;

  LabeledMat m1 = partial_trace(s.J().labeled(), {s.a1().name, s.b0().name});
  r.marginal1Residual = (m1.m - Mat::Identity(m1.dim(), m1.dim())).cwiseAbs().maxCoeff();
  r.marginal1 = r.marginal1Residual <= tol;

  LabeledMat m2 = partial_trace(s.J().labeled(), {s.a0().name, s.a1().name, s.b0().name});
  LabeledMat mA0B0 = partial_trace(s.J().labeled(), {s.a0().name, s.b0().name});
  LabeledMat expect = tensor(mA0B0, LabeledMat({s.a1()}, Mat::Identity(s.a1().dim, s.a1().dim) /
                                                              static_cast<double>(s.a1().dim)));
  expect = reorder(expect, {s.a0().name, s.a1().name, s.b0().name});
  r.marginal2Residual = (m2.m - expect.m).cwiseAbs().maxCoeff();
  r.marginal2 = r.marginal2Residual <= tol;
  return r;
}

ChannelChoi apply_super(const SuperChoi& s, const ChannelChoi& lam) {
  if (lam.in().size() != 1 || lam.out().size() != 1)
    throw std::invalid_argument("apply_super: single-system channel expected");
  if (lam.din() != s.a0().dim || lam.dout() != s.a1().dim)
    throw std::invalid_argument("apply_super: channel dims do not match supermap input slot");
  LabeledMat jl = lam.J().labeled();
  if (jl.systems[0].name != s.a0().name) jl = rename_system(jl, jl.systems[0].name, s.a0().name);
  if (jl.systems[1].name != s.a1().name) jl = rename_system(jl, jl.systems[1].name, s.a1().name);
  LabeledMat res = link(jl, s.J().labeled());  // Tr_A[(J_lam^T (x) 1) J_Theta]
  res = reorder(res, {s.b0().name, s.b1().name});
  return ChannelChoi({s.b0()}, {s.b1()}, HermitianOp(std::move(res)));
}

BipartiteChoi apply_super_left(const SuperChoi& s, const BipartiteChoi& lamAB) {
  if (lamAB.a0().dim != s.a0().dim || lamAB.a1().dim != s.a1().dim)
    throw std::invalid_argument("apply_super_left: A-side dims do not match");
  LabeledMat jl = lamAB.J().labeled();
  if (jl.systems[0].name != s.a0().name) jl = rename_system(jl, jl.systems[0].name, s.a0().name);
  if (jl.systems[1].name != s.a1().name) jl = rename_system(jl, jl.systems[1].name, s.a1().name);
  // Guard against label capture between the B side and the supermap output.
  for (const auto& n : {s.b0().name, s.b1().name})
    if (find_system(jl.systems, n) >= 0)
      throw std::invalid_argument("apply_super_left: system name collision on '" + n + "'");
  LabeledMat res = link(jl, s.J().labeled());  // over (B-part of lam, C0, C1)
  res = reorder(res, {s.b0().name, s.b1().name, lamAB.b0().name, lamAB.b1().name});
  // Result is a bipartite channel with transformed A side (now s.b0 -> s.b1).
  return BipartiteChoi(s.b0(), s.b1(), lamAB.b0(), lamAB.b1(), HermitianOp(std::move(res)));
}

SuperChoi adjoint_supermap(const SuperChoi& s) {
  LabeledMat jt = s.J().labeled();
  jt.m = jt.m.transpose().eval();
  // Transposition keeps labels; swap the roles of the dynamic systems.
  LabeledMat swapped = reorder(jt, {s.b0().name, s.b1().name, s.a0().name, s.a1().name});
  return SuperChoi(s.b0(), s.b1(), s.a0(), s.a1(), HermitianOp(std::move(swapped)));
}

SuperChoi compose_supermaps(const SuperChoi& second, const SuperChoi& first) {
  if (first.b0().dim != second.a0().dim || first.b1().dim != second.a1().dim)
    throw std::invalid_argument("compose_supermaps: middle dynamic system mismatch");
  LabeledMat j1 = first.J().labeled();
  LabeledMat j2 = second.J().labeled();
  // Align middle systems by name: first's (B0,B1) with second's (A0,A1).
  j1 = rename_system(j1, first.b0().name, "__M0");
  j1 = rename_system(j1, first.b1().name, "__M1");
  j2 = rename_system(j2, second.a0().name, "__M0");
  j2 = rename_system(j2, second.a1().name, "__M1");
  LabeledMat res = link(j1, j2);
  res = reorder(res, {first.a0().name, first.a1().name, second.b0().name, second.b1().name});
  return SuperChoi(first.a0(), first.a1(), second.b0(), second.b1(), HermitianOp(std::move(res)));
}

SuperChoi identity_supermap(const SystemLabel& a0, const SystemLabel& a1, const SystemLabel& b0,
                            const SystemLabel& b1) {
  if (a0.dim != b0.dim || a1.dim != b1.dim)
    throw std::invalid_argument("identity_supermap: dims must match across slots");
  LabeledMat phi0 = max_entangled_unnormalized(a0.dim, a0.name, b0.name);
  LabeledMat phi1 = max_entangled_unnormalized(a1.dim, a1.name, b1.name);
  LabeledMat J = reorder(tensor(phi0, phi1), {a0.name, a1.name, b0.name, b1.name});
  return SuperChoi(a0, a1, b0, b1, HermitianOp(std::move(J)));
}

SuperChoi replacement_supermap(const SystemLabel& a0, const SystemLabel& a1,
                               const HermitianOp& tauA0, const ChannelChoi& psi) {
  if (tauA0.dim() != a0.dim)
    throw std::invalid_argument("replacement_supermap: tau must live on A0");
  if (psi.in().size() != 1 || psi.out().size() != 1)
    throw std::invalid_argument("replacement_supermap: single-system target channel expected");
  // Theta{Lam} = psi for every channel Lam; J = tau^T (x) 1^{A1} (x) J_psi.
  LabeledMat tauT({{a0.name, a0.dim}}, tauA0.mat().transpose());
  LabeledMat J = tensor(tensor(tauT, identity_on({{a1.name, a1.dim}})), psi.J().labeled());
  return SuperChoi(a0, a1, psi.in()[0], psi.out()[0], HermitianOp(std::move(J)));
}

}  // namespace qrc
