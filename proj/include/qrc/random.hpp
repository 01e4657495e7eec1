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

#include <random>

#include "qrc/supermap.hpp"

namespace qrc {

using Rng = std::mt19937_64;

Mat ginibre(int rows, int cols, Rng& rng);
Mat random_hermitian(int d, Rng& rng);

/// Haar-distributed unitary via QR of a Ginibre matrix.
Mat haar_unitary(int d, Rng& rng);

/// Haar isometry from dim `din` into dim `dout` (dout >= din).
Mat haar_isometry(int dout, int din, Rng& rng);

/// Full-rank random density matrix (Wishart-normalized).
HermitianOp random_state(const Systems& sys, Rng& rng);

/// Random channel from a Haar isometry with environment dimension env
/// (default din*dout; full-measure coverage of the channel set).
ChannelChoi random_channel(const SystemLabel& in, const SystemLabel& out, Rng& rng, int env = 0);
ChannelChoi random_channel_multi(const Systems& in, const Systems& out, Rng& rng, int env = 0);

KrausSet random_kraus(int din, int dout, int n, Rng& rng);

/// Random CP map: Wishart Choi operator, scaled to trace din*dout on average.
ChannelChoi random_cp_map(const SystemLabel& in, const SystemLabel& out, Rng& rng);

/// Random superchannel from a random pre/post realization with memory dim e.
SuperChoi random_superchannel(const SystemLabel& a0, const SystemLabel& a1, const SystemLabel& b0,
                              const SystemLabel& b1, Rng& rng, int e = 2);

/// Random classical (diagonal-Choi) channel: column-stochastic Kraus set.
ChannelChoi random_classical_channel(const SystemLabel& in, const SystemLabel& out, Rng& rng);

/// Random superchannel with classical pre/post processing (diagonal Choi).
SuperChoi random_classical_superchannel(const SystemLabel& a0, const SystemLabel& a1,
                                        const SystemLabel& b0, const SystemLabel& b1, Rng& rng);

/// Doubly stochastic superchannel from unitary pre/post conjugations
/// (requires d_{B0} = d_{A0} and d_{A1} = d_{B1}).
SuperChoi random_unitary_superchannel(const SystemLabel& a0, const SystemLabel& a1,
                                      const SystemLabel& b0, const SystemLabel& b1, Rng& rng);

}  // namespace qrc
