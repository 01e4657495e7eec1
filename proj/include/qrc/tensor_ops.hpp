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

#include <Eigen/Dense>
#include <complex>
#include <set>
#include <string>
#include <vector>

#include "qrc/system.hpp"

namespace qrc {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

// Composite index convention: the first listed system is the slowest varying
// index, i.e. index = (..(i1*d2 + i2)*d3 + i3)..  All operations below assume it.

/// A complex matrix over labeled tensor factors.  No Hermiticity contract;
/// this is the working representation for Choi calculus internals.
struct LabeledMat {
  Systems systems;
  Mat m;

  LabeledMat() = default;
  LabeledMat(Systems sys, Mat mat) : systems(std::move(sys)), m(std::move(mat)) {
    check_unique_names(systems);
    if (m.rows() != m.cols() || m.rows() != total_dim(systems))
      throw std::invalid_argument("matrix size inconsistent with system dims");
  }
  long dim() const { return m.rows(); }
};

LabeledMat identity_on(const Systems& sys);

LabeledMat tensor(const LabeledMat& a, const LabeledMat& b);

/// Trace out every system not listed in `keep`; survivors keep their order.
LabeledMat partial_trace(const LabeledMat& x, const std::set<std::string>& keep);

LabeledMat partial_transpose(const LabeledMat& x, const std::set<std::string>& targets);
LabeledMat partial_transpose(const LabeledMat& x, const std::string& target);

/// Permute tensor factors into the order given by `names` (all names required).
LabeledMat reorder(const LabeledMat& x, const std::vector<std::string>& names);

LabeledMat rename_system(const LabeledMat& x, const std::string& from, const std::string& to);

/// phi_+ = sum_{ij} |ii><jj| over two d-dimensional systems.
LabeledMat max_entangled_unnormalized(int d, const std::string& nameA = "S0",
                                      const std::string& nameB = "S1");

/// Link product, contracting over the systems the two operands share by name:
///   result = Tr_shared[ (X^{T_shared} (x) 1)  (1 (x) Y) ]
/// over systems (X-only ++ Y-only).  This one primitive expresses Choi-level
/// map application and channel/supermap composition.
LabeledMat link(const LabeledMat& x, const LabeledMat& y);

/// Unnormalized projector basis index helpers.
inline Mat unit_matrix(int d, int i, int j) {
  Mat e = Mat::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

double hermiticity_defect(const Mat& m);

}  // namespace qrc
