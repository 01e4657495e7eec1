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

#include <map>

#include "qrc/hermitian_op.hpp"

namespace qrc::conic {

/// Matrix-valued affine expression over the real coordinates of a Program:
/// expr(x) = cst + sum_t x_t * coeff[t].  Carries system labels so tensor
/// bookkeeping stays name-driven.
class Expr {
 public:
  Expr() = default;
  Expr(Systems sys, Mat cst) : systems_(std::move(sys)), cst_(std::move(cst)) {
    if (cst_.rows() != cst_.cols() || cst_.rows() != total_dim(systems_))
      throw std::invalid_argument("Expr: constant size inconsistent with systems");
  }

  static Expr constant(const LabeledMat& m) { return Expr(m.systems, m.m); }
  static Expr constant(const HermitianOp& m) { return Expr(m.systems(), m.mat()); }

  const Systems& systems() const { return systems_; }
  long dim() const { return cst_.rows(); }
  const Mat& cst() const { return cst_; }
  const std::map<int, Mat>& coeffs() const { return lin_; }

  void add_term(int coord, const Mat& coeff);

  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator*(double a) const;

  /// Evaluate at a coordinate vector (testing and residual reporting).
  Mat eval(const Eigen::VectorXd& x) const;

  friend Expr tensor(const Expr& a, const LabeledMat& b);
  friend Expr tensor(const LabeledMat& a, const Expr& b);
  friend Expr partial_trace(const Expr& e, const std::set<std::string>& keep);
  friend Expr partial_transpose(const Expr& e, const std::set<std::string>& targets);
  friend Expr reorder(const Expr& e, const std::vector<std::string>& names);
  friend Expr conj(const Expr& e);
  /// Contract against a constant through the link product (shared names).
  friend Expr link_const(const LabeledMat& k, const Expr& e);

 private:
  template <typename F>
  Expr apply(F&& f) const {
    Expr r;
    LabeledMat c = f(LabeledMat(systems_, cst_));
    r.systems_ = c.systems;
    r.cst_ = c.m;
    for (const auto& [t, coeff] : lin_) r.lin_[t] = f(LabeledMat(systems_, coeff)).m;
    return r;
  }

  Systems systems_;
  std::map<int, Mat> lin_;
  Mat cst_;
};

Expr tensor(const Expr& a, const LabeledMat& b);
Expr tensor(const LabeledMat& a, const Expr& b);
Expr partial_trace(const Expr& e, const std::set<std::string>& keep);
Expr partial_transpose(const Expr& e, const std::set<std::string>& targets);
Expr reorder(const Expr& e, const std::vector<std::string>& names);
Expr conj(const Expr& e);
Expr link_const(const LabeledMat& k, const Expr& e);

/// Real-valued affine expression.
struct ScalarExpr {
  std::map<int, double> lin;
  double cst = 0.0;

  ScalarExpr() = default;
  explicit ScalarExpr(double c) : cst(c) {}

  ScalarExpr operator+(const ScalarExpr& o) const;
  ScalarExpr operator-(const ScalarExpr& o) const;
  ScalarExpr operator*(double a) const;
  double eval(const Eigen::VectorXd& x) const;
};

/// Tr[expr], which must be real up to roundoff for Hermitian-valued exprs.
ScalarExpr trace(const Expr& e);
/// Tr[k * expr] with Hermitian constant k.
ScalarExpr inner(const LabeledMat& k, const Expr& e);
/// Re / Im of a single matrix entry as scalar expressions.
ScalarExpr entry_re(const Expr& e, long i, long j);
ScalarExpr entry_im(const Expr& e, long i, long j);
/// Matrix-valued expression  scalar * g  from a scalar expression.
Expr scale_matrix(const ScalarExpr& s, const LabeledMat& g);

}  // namespace qrc::conic
