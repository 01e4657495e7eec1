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

#include "qrc/hermitian_op.hpp"

#include <iostream>
#include <mutex>

namespace qrc {

namespace {
std::function<void(const std::string&)>& handler() {
  static std::function<void(const std::string&)> h = [](const std::string& msg) {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    std::cerr << "[qrc] warning: " << msg << "\n";
  };
  return h;
}
}  // namespace

void set_warning_handler(std::function<void(const std::string&)> h) { handler() = std::move(h); }
void warn(const std::string& msg) { handler()(msg); }

HermitianOp::HermitianOp(Systems sys, Mat m) {
  double defect = hermiticity_defect(m);
  if (defect > kWarnDefect)
    warn("Hermiticity defect " + std::to_string(defect) + " above 1e-9; symmetrizing");
  Mat sym = 0.5 * (m + m.adjoint().eval());
  lm_ = LabeledMat(std::move(sys), std::move(sym));
}

double HermitianOp::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(lm_.m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

HermitianOp tensor_product(const HermitianOp& a, const HermitianOp& b) {
  return HermitianOp(tensor(a.labeled(), b.labeled()));
}

HermitianOp partial_trace(const HermitianOp& x, const std::set<std::string>& keep) {
  return HermitianOp(partial_trace(x.labeled(), keep));
}

HermitianOp partial_transpose(const HermitianOp& x, const std::string& target) {
  return HermitianOp(partial_transpose(x.labeled(), target));
}

HermitianOp reorder(const HermitianOp& x, const std::vector<std::string>& names) {
  return HermitianOp(reorder(x.labeled(), names));
}

HermitianOp identity_op(const Systems& sys) { return HermitianOp(identity_on(sys)); }

HermitianOp max_entangled_op(int d, const std::string& nameA, const std::string& nameB) {
  return HermitianOp(max_entangled_unnormalized(d, nameA, nameB));
}

double hs_inner(const HermitianOp& a, const HermitianOp& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("hs_inner: dimension mismatch");
  return (a.mat() * b.mat()).trace().real();
}

Mat clip_psd(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint().eval()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qrc
