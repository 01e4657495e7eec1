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

#include "qrc/channel.hpp"

namespace qrc {

/// Choi operator of a supermap taking maps A0->A1 to maps B0->B1, with
/// subsystem order (A0, A1, B0, B1):
///   J_Theta = sum_{ijkl} J_{eps_ijkl} (x) J_{Theta{eps_ijkl}},
/// where eps_ijkl[X] = <i|X|j> |k><l| are the computational basis maps.
class SuperChoi {
 public:
  SuperChoi() = default;
  SuperChoi(SystemLabel a0, SystemLabel a1, SystemLabel b0, SystemLabel b1, HermitianOp J);

  const SystemLabel& a0() const { return a0_; }
  const SystemLabel& a1() const { return a1_; }
  const SystemLabel& b0() const { return b0_; }
  const SystemLabel& b1() const { return b1_; }
  const HermitianOp& J() const { return J_; }

 private:
  SystemLabel a0_, a1_, b0_, b1_;
  HermitianOp J_;
};

/// Pre/post realization of a superchannel: pre maps B0 -> (A0, E), post maps
/// (A1, E) -> B1, with a memory system E shared between them.
struct SuperRealization {
  ChannelChoi pre;   // in = {B0}, out = {A0, E}
  ChannelChoi post;  // in = {A1, E}, out = {B1}
  int memoryDim = 1;
};

struct SuperReport {
  bool psd = false, marginal1 = false, marginal2 = false;
  double psdResidual = 0.0;
  double marginal1Residual = 0.0;  // || J^{A1 B0} - 1 ||_inf
  double marginal2Residual = 0.0;  // || J^{A0 A1 B0} - J^{A0 B0} (x) 1/d_{A1} ||_inf
  bool ok() const { return psd && marginal1 && marginal2; }
};

/// Assemble the supermap Choi operator by pushing each basis map through
/// post o (. (x) id_E) o pre.
SuperChoi super_choi_from_realization(const SuperRealization& r);

SuperReport validate_superchannel(const SuperChoi& s, double tol = 1e-9);

/// Choi-level action:  J_{Theta{Lam}} = Tr_{A0 A1}[(J_Lam^T (x) 1) J_Theta].
ChannelChoi apply_super(const SuperChoi& s, const ChannelChoi& lam);

/// Same action on a bipartite channel, transforming only the A side.
BipartiteChoi apply_super_left(const SuperChoi& s, const BipartiteChoi& lamAB);

/// Adjoint supermap (transpose-swap at the Choi level); satisfies
///   <Lam, Adj{Psi}> = <Theta{Lam}, Psi>.
SuperChoi adjoint_supermap(const SuperChoi& s);

/// Composition: second takes B->C, first takes A->B; result takes A->C.
SuperChoi compose_supermaps(const SuperChoi& second, const SuperChoi& first);

SuperChoi identity_supermap(const SystemLabel& a0, const SystemLabel& a1,
                            const SystemLabel& b0, const SystemLabel& b1);

/// Replacement superchannel: discard the plugged channel's action and output
/// the fixed channel psi.  Free whenever tau / psi are free objects.
SuperChoi replacement_supermap(const SystemLabel& a0, const SystemLabel& a1,
                               const HermitianOp& tauA0, const ChannelChoi& psi);

}  // namespace qrc
