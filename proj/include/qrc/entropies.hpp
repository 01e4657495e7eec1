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

#include "qrc/cones.hpp"

namespace qrc::entropies {

// All entropies are reported in bits (log base 2).  Every operation solves
// both its primal program and the Lagrangian-derived dual with the free set
// as the feasible region; the gap between the two is part of the result.

struct EntropyOptions {
  double tol = 1e-9;     // input validation tolerance
  bool validate = true;  // verify state/channel preconditions
  conic::ProgramSettings prog;  // standard solver accuracy (1e-8 targets)

  /// Tighter targets for the small programs whose values feed 1e-8-level
  /// agreement checks (h_min against the eigenvalue formula).
  static conic::ProgramSettings tight_defaults() {
    conic::ProgramSettings s;
    s.solver.tol_feas = 1e-9;
    s.solver.tol_rel_gap = 1e-9;
    s.solver.tol_abs_gap = 1e-11;
    return s;
  }
};

struct EntropyResult {
  double primal_bits = 0;
  double dual_bits = 0;
  double gap = 0;  // primal_bits - dual_bits
  // Raw optimal values of the underlying conic programs (linear scale).
  double primal_linear = 0;
  double dual_linear = 0;
  std::map<std::string, Mat> optimizer;  // "gamma" and/or the free object's Choi
  bool ok = true;                        // both solves reported optimal
  std::string notes;
  // Secondary dual form (phi_+ sandwich) evaluated at the dual optimizer,
  // with and without the complex-conjugation step.
  double dual2_conj = 0, dual2_plain = 0;
  bool has_dual2 = false;
};

/// Standard min-entropy of a state (free version with the all-PSD cone).
EntropyResult h_min(const HermitianOp& rho, const EntropyOptions& opt = {});

/// Standard conditional min-entropy of a bipartite state.
EntropyResult h_min_cond(const HermitianOp& rhoAB, const std::string& conditioning,
                         const EntropyOptions& opt = {});

/// Free min-entropy: the operator inequality is relaxed to dual-cone
/// membership; the dual is a best overlap with free states.
EntropyResult fme(const HermitianOp& rho, const cones::ConeSpec& fCone,
                  const EntropyOptions& opt = {});

/// Free conditional min-entropy over an operation-level cone.
EntropyResult fcme(const HermitianOp& rhoAB, const std::string& conditioning,
                   const cones::ConeSpec& oCone, const EntropyOptions& opt = {});

/// Extended free min-entropy of a channel over a channel-level cone.
EntropyResult efme(const ChannelChoi& lam, const cones::ConeSpec& lCone,
                   const EntropyOptions& opt = {});

/// Extended free conditional min-entropy of a bipartite channel over a
/// supermap-level cone.
EntropyResult efcme(const BipartiteChoi& lamAB, const cones::ConeSpec& sCone,
                    const EntropyOptions& opt = {});

}  // namespace qrc::entropies
