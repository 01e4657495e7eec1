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

#include <functional>

#include "qrc/tensor_ops.hpp"

namespace qrc {

/// Warning sink for non-fatal numerical notices (defaults to stderr).
void set_warning_handler(std::function<void(const std::string&)> h);
void warn(const std::string& msg);

/// A labeled Hermitian matrix.  Construction symmetrizes (X + X^dag)/2 and
/// warns when the defect exceeds 1e-9; solver outputs are only approximately
/// Hermitian.
class HermitianOp {
 public:
  static constexpr double kWarnDefect = 1e-9;

  HermitianOp() = default;
  HermitianOp(Systems sys, Mat m);
  explicit HermitianOp(LabeledMat lm) : HermitianOp(std::move(lm.systems), std::move(lm.m)) {}

  const Systems& systems() const { return lm_.systems; }
  const Mat& mat() const { return lm_.m; }
  const LabeledMat& labeled() const { return lm_; }
  long dim() const { return lm_.dim(); }

  double trace() const { return lm_.m.trace().real(); }
  double min_eigenvalue() const;

  bool is_psd(double tol) const { return min_eigenvalue() >= -tol; }

 private:
  LabeledMat lm_;
};

HermitianOp tensor_product(const HermitianOp& a, const HermitianOp& b);
HermitianOp partial_trace(const HermitianOp& x, const std::set<std::string>& keep);
HermitianOp partial_transpose(const HermitianOp& x, const std::string& target);
HermitianOp reorder(const HermitianOp& x, const std::vector<std::string>& names);
HermitianOp identity_op(const Systems& sys);

/// phi_+ over two copies of a d-dimensional system: rank one, trace d.
HermitianOp max_entangled_op(int d, const std::string& nameA = "S0",
                             const std::string& nameB = "S1");

/// Real Hilbert-Schmidt pairing Tr[a b] of Hermitian operators.
double hs_inner(const HermitianOp& a, const HermitianOp& b);

/// Clip negative eigenvalues to zero (used when a solver output serves as a
/// Choi operator downstream).
Mat clip_psd(const Mat& m);

}  // namespace qrc
