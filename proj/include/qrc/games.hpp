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

#include <optional>

#include "qrc/analytics.hpp"

namespace qrc::games {

/// Index preservation game: a referee draws index k with probability
/// Tr[tau_k], sends the normalized state, the player processes it through
/// their channel under a free superchannel, and the referee measures with
/// {N_k}; the player wins on index agreement (the abstain outcome loses).
struct GameSpec {
  SystemLabel b0, b1;
  std::vector<Mat> ensemble;  // subnormalized states tau_k on B0, sum of traces 1
  std::vector<Mat> povm;      // N_k on B1 indexed by K then the abstain element
  int abstain_index = -1;     // position of the abstain element in povm, or -1

  int num_indices() const {
    return static_cast<int>(ensemble.size());
  }
};

/// Validation per the game definition; throws on structural violations.
void validate_game(const GameSpec& g, double tol = 1e-9);

struct ICPovm {
  int dim = 0;
  std::vector<Mat> elements;  // d^2 elements summing to the identity
  int spanRank = 0;
};

/// Deterministic informationally complete POVM from d^2 rank-one projectors
/// (computational basis plus +/i superpositions), symmetrized through
/// S^{-1/2} P_k S^{-1/2}.  Cached per dimension.
const ICPovm& ic_povm(int d);

/// Dual basis D_k with Tr[D_k M_l] = delta_{kl}.
std::vector<Mat> ic_dual_basis(const ICPovm& m);

/// tau_k = M_k^T / d; spans the full Hermitian space and sums to 1/d.
std::vector<Mat> canonical_ensemble(const ICPovm& m);

/// Game built from the canonical ensemble and prepared states sigma_k:
/// N_k = sigma_k^T / d0^2 plus the abstain element.
GameSpec game_from_states(const SystemLabel& b0, const SystemLabel& b1,
                          const std::vector<Mat>& sigma);

struct GameValueResult {
  double value = 0;
  SuperChoi optimal;
  bool ok = true;
  std::string notes;
};

/// Expected winning probability under the optimal free strategy (an SDP over
/// the free superchannel set).
GameValueResult game_value(const ChannelChoi& lam, const GameSpec& g,
                           const cones::ConeSpec& sCone,
                           const entropies::EntropyOptions& opt = {});

enum class Convertibility { Feasible, Infeasible, Undetermined };

struct ConvertResult {
  Convertibility status = Convertibility::Undetermined;
  std::optional<SuperChoi> theta;      // certified when Feasible
  double residual = 0;                 // || Theta{Lam} - Psi ||_inf at the certificate
  std::optional<HermitianOp> hyperplane;  // separating W when Infeasible
  double separation_bound = 0;         // value of the separation program
  std::string notes;
};

/// Decide whether psi is reachable from lam by a free superchannel.  The
/// yes-branch returns a certified superchannel; the no-branch certifies with
/// the explicit separation program max <J_psi, W> - support(reachable set).
/// Solver statuses alone are never converted into an answer.
ConvertResult convert_feasible(const ChannelChoi& lam, const ChannelChoi& psi,
                               const cones::ConeSpec& sCone,
                               const entropies::EntropyOptions& opt = {});

enum class MonotoneFamily { C2Sampled, C3MeasurePrepare };

struct MonotoneReport {
  int total = 0, passed = 0;
  double worstViolation = 0;  // max over samples of H-left minus H-right
  bool ok = true;
};

/// Check the conditional-min-entropy monotone family on sampled channels
/// Omega: H(Bt|A)_{Lam x Omega} <= H(Bt|B)_{Psi x Omega} + tol.
MonotoneReport monotone_check(const ChannelChoi& lam, const ChannelChoi& psi,
                              const cones::ConeSpec& sConeForPairs, MonotoneFamily family,
                              int nSamples, Rng& rng, const entropies::EntropyOptions& opt = {},
                              double tol = 1e-6);

struct WitnessReport {
  HermitianOp hyperplane;  // W with Tr_{B1} W = lambda 1
  double lambda = 0;
  double mu = 0;           // PSD-restoring shift applied to the xi components
  ChannelChoi omegaMP;     // measure-and-prepare witness channel
  GameSpec game;
  double pLam = 0, pPsi = 0;
  double separation = 0;  // pPsi - pLam, certified by two game solves
  bool conclusive = false;
  std::string notes;
};

/// Turn an infeasibility certificate into an operational witness: a
/// hyperplane, a measure-and-prepare channel and a playable game on which
/// psi strictly beats anything reachable from lam.
WitnessReport witness_extract(const ChannelChoi& lam, const ChannelChoi& psi,
                              const cones::ConeSpec& sCone, const ConvertResult& cv,
                              const entropies::EntropyOptions& opt = {});

}  // namespace qrc::games
