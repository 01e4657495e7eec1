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

#include "qrc/entropies.hpp"

namespace qrc::analytics {

struct RobustnessResult {
  double R = 0;
  HermitianOp gammaStar;            // primal optimizer
  HermitianOp alphaStar, betaStar;  // dual optimizers
  double gap = 0;                   // primal R minus dual R
  bool ok = true;
  std::string notes;
};

/// Generalized robustness of a channel against a channel-level cone:
///   R = (1/d0) min { Tr gamma : gamma in cone, gamma >= J, gamma^{in} =
///       (Tr gamma / d0) 1 } - 1,
/// solved together with its explicit dual program.
RobustnessResult robustness(const ChannelChoi& lam, const cones::ConeSpec& lCone,
                            const entropies::EntropyOptions& opt = {});

/// States are handled as channels with a trivial (one-dimensional) input.
RobustnessResult robustness(const HermitianOp& rho, const cones::ConeSpec& fCone,
                            const entropies::EntropyOptions& opt = {});

struct MutualInfoResult {
  double bits = 0;
  double h_free_bits = 0;  // H of the marginal under the lower-level cone
  double h_cond_bits = 0;  // conditional H of the joint object
  bool ok = true;
};

/// One-sided free one-shot mutual information of a product of channels,
/// conditioning on the first factor; the supermap-level cone is reduced to
/// the channel level for the marginal term.
MutualInfoResult mutual_info(const ChannelChoi& obj, const ChannelChoi& partner,
                             const cones::ConeSpec& sCone,
                             const entropies::EntropyOptions& opt = {});

/// Static version on a product of states with an operation-level cone.
MutualInfoResult mutual_info(const HermitianOp& obj, const HermitianOp& partner,
                             const cones::ConeSpec& oCone,
                             const entropies::EntropyOptions& opt = {});

struct Theorem1Report {
  double R = 0;
  double log1pR_bits = 0;
  double I_at_alpha_bits = 0;  // mutual information at the dual optimizer
  double equality_residual = 0;
  bool equality_ok = false;
  int samples = 0, inequality_passed = 0;
  double worst_excess = 0;  // max over samples of I - log(1+R)
  bool d1_holds = false;    // identity supermap free at the needed tuple
  bool ok = true;
  std::string notes;
};

/// Robustness / mutual-information equality check: log(1+R) equals the
/// maximal information gain, attained at the robustness dual optimizer.  The
/// attainment argument requires the identity supermap to be free; when (D1)
/// fails for the supplied family, the report carries both values rather than
/// asserting.
Theorem1Report theorem1_check(const ChannelChoi& lam, const cones::ConeSpec& lCone, int nSamples,
                              Rng& rng, const entropies::EntropyOptions& opt = {},
                              bool sample_tp_only = false, double eq_tol = 2e-5,
                              double ineq_tol = 1e-6);

}  // namespace qrc::analytics
