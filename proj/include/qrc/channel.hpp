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

#include "qrc/hermitian_op.hpp"

namespace qrc {

/// Choi operator of a linear map from the `in` systems to the `out` systems.
/// Subsystem order is input-then-output:  J = (id (x) Map)[phi_+].
class ChannelChoi {
 public:
  ChannelChoi() = default;
  ChannelChoi(Systems in, Systems out, HermitianOp J);

  const Systems& in() const { return in_; }
  const Systems& out() const { return out_; }
  long din() const { return total_dim(in_); }
  long dout() const { return total_dim(out_); }
  const HermitianOp& J() const { return J_; }

  std::vector<std::string> in_names() const;
  std::vector<std::string> out_names() const;

 private:
  Systems in_, out_;
  HermitianOp J_;  // over in ++ out
};

struct KrausSet {
  std::vector<Mat> operators;  // each d_out x d_in
};

struct ChannelReport {
  bool isCP = false, isTP = false, isDoublyStochastic = false;
  double cpResidual = 0.0;  // -min eigenvalue, clipped at 0
  double tpResidual = 0.0;  // || Tr_out J - 1_in ||_inf
  double dsResidual = 0.0;  // || Tr_in J - 1_out ||_inf
};

/// J = sum_{ij} |i><j| (x) Map[|i><j|] assembled from Kraus operators.
ChannelChoi choi_from_kraus(const KrausSet& k, const SystemLabel& in, const SystemLabel& out);

/// Map action recovered from the Choi operator:
///   Map[rho] = Tr_in[(rho^T (x) 1_out) J].
HermitianOp apply_choi(const ChannelChoi& j, const HermitianOp& rho);

/// Tr[J_a J_b]; equals the phi_+ sandwich form of the map inner product.
double map_inner_product(const ChannelChoi& a, const ChannelChoi& b);

ChannelReport validate_channel(const ChannelChoi& j, double tol = 1e-9);

/// second `in` first: result = second o first.
ChannelChoi compose_channels(const ChannelChoi& second, const ChannelChoi& first);

ChannelChoi tensor_channels(const ChannelChoi& a, const ChannelChoi& b);

ChannelChoi identity_channel(const SystemLabel& in, const SystemLabel& out);
ChannelChoi uniform_channel(const SystemLabel& in, const SystemLabel& out);
/// Discard the input and prepare `state` on `out` (replacement channel).
ChannelChoi replacement_channel(const Systems& in, const HermitianOp& state);

/// Conjugate map (Choi operator entrywise conjugated).
ChannelChoi conjugate_channel(const ChannelChoi& c);

/// Evaluate Tr[phi_+^{out~,out}( (A*) (x) B )[phi_+^{in~,in}]] by explicit
/// conjugate-map construction; equals map_inner_product for matching maps.
double inner_product_phi_form(const ChannelChoi& a, const ChannelChoi& b);

/// A bipartite channel on dynamic systems A = A0->A1 and B = B0->B1, stored
/// with Choi subsystem order (A0, A1, B0, B1).
class BipartiteChoi {
 public:
  BipartiteChoi() = default;
  BipartiteChoi(SystemLabel a0, SystemLabel a1, SystemLabel b0, SystemLabel b1, HermitianOp J);

  /// From a plain channel Choi over in = (A0,B0), out = (A1,B1).
  static BipartiteChoi from_channel(const ChannelChoi& c);
  /// Product of two single-system channels.
  static BipartiteChoi product(const ChannelChoi& a, const ChannelChoi& b);

  const SystemLabel& a0() const { return a0_; }
  const SystemLabel& a1() const { return a1_; }
  const SystemLabel& b0() const { return b0_; }
  const SystemLabel& b1() const { return b1_; }
  const HermitianOp& J() const { return J_; }

  /// Reinterpret as a plain channel (A0,B0) -> (A1,B1).
  ChannelChoi as_channel() const;

 private:
  SystemLabel a0_, a1_, b0_, b1_;
  HermitianOp J_;  // order (A0, A1, B0, B1)
};

/// Marginal channel B0 -> B1 of a bipartite channel: feed the uniform state
/// into A0 and trace out A1.
ChannelChoi marginal_channel(const BipartiteChoi& lamAB);

}  // namespace qrc
