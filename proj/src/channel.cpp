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

#include "qrc/channel.hpp"

namespace qrc {

ChannelChoi::ChannelChoi(Systems in, Systems out, HermitianOp J)
    : in_(std::move(in)), out_(std::move(out)), J_(std::move(J)) {
  Systems expect = concat(in_, out_);
  if (J_.systems().size() != expect.size())
    throw std::invalid_argument("ChannelChoi: J systems must be input-then-output");
  for (size_t k = 0; k < expect.size(); ++k)
    if (!(J_.systems()[k] == expect[k]))
      throw std::invalid_argument("ChannelChoi: J system order must be input-then-output");
}

std::vector<std::string> ChannelChoi::in_names() const {
  std::vector<std::string> r;
  for (const auto& s : in_) r.push_back(s.name);
  return r;
}
std::vector<std::string> ChannelChoi::out_names() const {
  std::vector<std::string> r;
  for (const auto& s : out_) r.push_back(s.name);
  return r;
}

ChannelChoi choi_from_kraus(const KrausSet& k, const SystemLabel& in, const SystemLabel& out) {
  if (k.operators.empty()) throw std::invalid_argument("choi_from_kraus: empty Kraus set");
  for (const auto& op : k.operators)
    if (op.rows() != out.dim || op.cols() != in.dim)
      throw std::invalid_argument("choi_from_kraus: Kraus shape mismatch");
  long di = in.dim, dout = out.dim;
  Mat J = Mat::Zero(di * dout, di * dout);
  for (int i = 0; i < di; ++i)
    for (int j = 0; j < di; ++j) {
      Mat block = Mat::Zero(dout, dout);
      for (const auto& op : k.operators) block += op.col(i) * op.col(j).adjoint();
      J.block(static_cast<long>(i) * dout, static_cast<long>(j) * dout, dout, dout) = block;
    }
  return ChannelChoi({in}, {out}, HermitianOp({in, out}, std::move(J)));
}

HermitianOp apply_choi(const ChannelChoi& j, const HermitianOp& rho) {
  if (rho.dim() != j.din()) throw std::invalid_argument("apply_choi: input dimension mismatch");
  LabeledMat in(j.in(), rho.mat());
  // link contracts over the shared input systems: result = Tr_in[(rho^T (x) 1) J].
  return HermitianOp(link(in, j.J().labeled()));
}

double map_inner_product(const ChannelChoi& a, const ChannelChoi& b) {
  if (a.din() != b.din() || a.dout() != b.dout())
    throw std::invalid_argument("map_inner_product: dimension mismatch");
  return (a.J().mat() * b.J().mat()).trace().real();
}

ChannelReport validate_channel(const ChannelChoi& j, double tol) {
  ChannelReport r;
  double mineig = j.J().min_eigenvalue();
  r.cpResidual = std::max(0.0, -mineig);
  r.isCP = mineig >= -tol;

  const auto inNameList = j.in_names();
  std::set<std::string> innames(inNameList.begin(), inNameList.end());
  Mat trOut = partial_trace(j.J().labeled(), innames).m;
  r.tpResidual = (trOut - Mat::Identity(j.din(), j.din())).cwiseAbs().maxCoeff();
  r.isTP = r.tpResidual <= tol;

  const auto outNameList = j.out_names();
  std::set<std::string> outnames(outNameList.begin(), outNameList.end());
  Mat trIn = partial_trace(j.J().labeled(), outnames).m;
  r.dsResidual = (trIn - Mat::Identity(j.dout(), j.dout())).cwiseAbs().maxCoeff();
  r.isDoublyStochastic = r.isTP && r.dsResidual <= tol;
  return r;
}

ChannelChoi compose_channels(const ChannelChoi& second, const ChannelChoi& first) {
  if (first.dout() != second.din())
    throw std::invalid_argument("compose_channels: middle dimension mismatch");
  // Align the shared middle systems by name.
  LabeledMat j1 = first.J().labeled();
  LabeledMat j2 = second.J().labeled();
  Systems mid = second.in();
  std::vector<std::string> target;
  for (const auto& s : first.in()) target.push_back(s.name);
  if (first.out().size() != mid.size())
    throw std::invalid_argument("compose_channels: middle system structure mismatch");
  for (size_t k = 0; k < mid.size(); ++k) {
    if (first.out()[k].dim != mid[k].dim)
      throw std::invalid_argument("compose_channels: middle dimension mismatch");
    if (first.out()[k].name != mid[k].name)
      j1 = rename_system(j1, first.out()[k].name, mid[k].name);
  }
  LabeledMat res = link(j1, j2);
  return ChannelChoi(first.in(), second.out(), HermitianOp(std::move(res)));
}

ChannelChoi tensor_channels(const ChannelChoi& a, const ChannelChoi& b) {
  Systems in = concat(a.in(), b.in());
  Systems out = concat(a.out(), b.out());
  LabeledMat J = tensor(a.J().labeled(), b.J().labeled());
  std::vector<std::string> order;
  for (const auto& s : in) order.push_back(s.name);
  for (const auto& s : out) order.push_back(s.name);
  return ChannelChoi(in, out, HermitianOp(reorder(J, order)));
}

ChannelChoi identity_channel(const SystemLabel& in, const SystemLabel& out) {
  if (in.dim != out.dim) throw std::invalid_argument("identity_channel: dims must match");
  LabeledMat phi = max_entangled_unnormalized(in.dim, in.name, out.name);
  return ChannelChoi({in}, {out}, HermitianOp(std::move(phi)));
}

ChannelChoi uniform_channel(const SystemLabel& in, const SystemLabel& out) {
  Systems sys{in, out};
  Mat J = Mat::Identity(total_dim(sys), total_dim(sys)) / static_cast<double>(out.dim);
  return ChannelChoi({in}, {out}, HermitianOp(sys, std::move(J)));
}

ChannelChoi replacement_channel(const Systems& in, const HermitianOp& state) {
  LabeledMat J = tensor(identity_on(in), state.labeled());
  return ChannelChoi(in, state.systems(), HermitianOp(std::move(J)));
}

ChannelChoi conjugate_channel(const ChannelChoi& c) {
  return ChannelChoi(c.in(), c.out(), HermitianOp(c.J().systems(), c.J().mat().conjugate()));
}

double inner_product_phi_form(const ChannelChoi& a, const ChannelChoi& b) {
  if (a.din() != b.din() || a.dout() != b.dout())
    throw std::invalid_argument("inner_product_phi_form: dimension mismatch");
  int d0 = static_cast<int>(a.din()), d1 = static_cast<int>(a.dout());
  // Tilde copy runs through the conjugate of a; b acts on the untilded side.
  ChannelChoi ac = conjugate_channel(a);
  LabeledMat ja = ac.J().labeled();
  ja = rename_system(ja, a.in()[0].name, "~in");
  ja = rename_system(ja, a.out()[0].name, "~out");
  for (size_t k = 1; k < a.in().size(); ++k)
    throw std::invalid_argument("inner_product_phi_form: single-system maps only");
  LabeledMat jb = b.J().labeled();
  jb = rename_system(jb, b.in()[0].name, "in");
  jb = rename_system(jb, b.out()[0].name, "out");
  LabeledMat prod = tensor(ja, jb);  // (~in, ~out, in, out)

  LabeledMat phi_in = max_entangled_unnormalized(d0, "~in", "in");
  LabeledMat applied = link(phi_in, prod);  // over (~out, out)
  LabeledMat phi_out = max_entangled_unnormalized(d1, "~out", "out");
  return (phi_out.m * applied.m).trace().real();
}

BipartiteChoi::BipartiteChoi(SystemLabel a0, SystemLabel a1, SystemLabel b0, SystemLabel b1,
                             HermitianOp J)
    : a0_(std::move(a0)), a1_(std::move(a1)), b0_(std::move(b0)), b1_(std::move(b1)), J_(std::move(J)) {
  Systems expect{a0_, a1_, b0_, b1_};
  for (size_t k = 0; k < 4; ++k)
    if (!(J_.systems()[k] == expect[k]))
      throw std::invalid_argument("BipartiteChoi: J system order must be (A0, A1, B0, B1)");
}

BipartiteChoi BipartiteChoi::from_channel(const ChannelChoi& c) {
  if (c.in().size() != 2 || c.out().size() != 2)
    throw std::invalid_argument("BipartiteChoi: need two input and two output systems");
  SystemLabel a0 = c.in()[0], b0 = c.in()[1], a1 = c.out()[0], b1 = c.out()[1];
  HermitianOp J = reorder(c.J(), {a0.name, a1.name, b0.name, b1.name});
  return BipartiteChoi(a0, a1, b0, b1, std::move(J));
}

BipartiteChoi BipartiteChoi::product(const ChannelChoi& a, const ChannelChoi& b) {
  if (a.in().size() != 1 || a.out().size() != 1 || b.in().size() != 1 || b.out().size() != 1)
    throw std::invalid_argument("BipartiteChoi::product: single-system factors required");
  HermitianOp J = tensor_product(a.J(), b.J());
  return BipartiteChoi(a.in()[0], a.out()[0], b.in()[0], b.out()[0], std::move(J));
}

ChannelChoi BipartiteChoi::as_channel() const {
  HermitianOp J = reorder(J_, {a0_.name, b0_.name, a1_.name, b1_.name});
  return ChannelChoi({a0_, b0_}, {a1_, b1_}, std::move(J));
}

ChannelChoi marginal_channel(const BipartiteChoi& lamAB) {
  LabeledMat J = partial_trace(lamAB.J().labeled(), {lamAB.b0().name, lamAB.b1().name});
  J.m /= static_cast<double>(lamAB.a0().dim);
  return ChannelChoi({lamAB.b0()}, {lamAB.b1()}, HermitianOp(std::move(J)));
}

}  // namespace qrc
