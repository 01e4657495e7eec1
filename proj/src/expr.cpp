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

#include "qrc/conic/expr.hpp"

namespace qrc::conic {

void Expr::add_term(int coord, const Mat& coeff) {
  if (coeff.rows() != dim() || coeff.cols() != dim())
    throw std::invalid_argument("Expr::add_term: coefficient size mismatch");
  auto it = lin_.find(coord);
  if (it == lin_.end())
    lin_[coord] = coeff;
  else
    it->second += coeff;
}

namespace {
void check_same_space(const Expr& a, const Expr& b) {
  if (a.systems().size() != b.systems().size() || a.dim() != b.dim())
    throw std::invalid_argument("Expr: operand spaces differ");
  for (size_t k = 0; k < a.systems().size(); ++k)
    if (!(a.systems()[k] == b.systems()[k]))
      throw std::invalid_argument("Expr: operand system labels differ");
}
}  // namespace

Expr Expr::operator+(const Expr& o) const {
  check_same_space(*this, o);
  Expr r = *this;
  r.cst_ += o.cst_;
  for (const auto& [t, coeff] : o.lin_) r.add_term(t, coeff);
  return r;
}

Expr Expr::operator-(const Expr& o) const { return *this + o * (-1.0); }

Expr Expr::operator*(double a) const {
  Expr r = *this;
  r.cst_ *= a;
  for (auto& [t, coeff] : r.lin_) coeff *= a;
  return r;
}

Mat Expr::eval(const Eigen::VectorXd& x) const {
  Mat r = cst_;
  for (const auto& [t, coeff] : lin_) r += x(t) * coeff;
  return r;
}

Expr tensor(const Expr& a, const LabeledMat& b) {
  return a.apply([&](const LabeledMat& m) { return tensor(m, b); });
}
Expr tensor(const LabeledMat& a, const Expr& b) {
  return b.apply([&](const LabeledMat& m) { return tensor(a, m); });
}
Expr partial_trace(const Expr& e, const std::set<std::string>& keep) {
  return e.apply([&](const LabeledMat& m) { return partial_trace(m, keep); });
}
Expr partial_transpose(const Expr& e, const std::set<std::string>& targets) {
  return e.apply([&](const LabeledMat& m) { return partial_transpose(m, targets); });
}
Expr reorder(const Expr& e, const std::vector<std::string>& names) {
  return e.apply([&](const LabeledMat& m) { return reorder(m, names); });
}
Expr conj(const Expr& e) {
  return e.apply([&](const LabeledMat& m) { return LabeledMat(m.systems, m.m.conjugate()); });
}
Expr link_const(const LabeledMat& k, const Expr& e) {
  return e.apply([&](const LabeledMat& m) { return link(k, m); });
}

ScalarExpr ScalarExpr::operator+(const ScalarExpr& o) const {
  ScalarExpr r = *this;
  r.cst += o.cst;
  for (const auto& [t, v] : o.lin) r.lin[t] += v;
  return r;
}
ScalarExpr ScalarExpr::operator-(const ScalarExpr& o) const { return *this + o * (-1.0); }
ScalarExpr ScalarExpr::operator*(double a) const {
  ScalarExpr r = *this;
  r.cst *= a;
  for (auto& [t, v] : r.lin) v *= a;
  return r;
}
double ScalarExpr::eval(const Eigen::VectorXd& x) const {
  double r = cst;
  for (const auto& [t, v] : lin) r += x(t) * v;
  return r;
}

ScalarExpr trace(const Expr& e) {
  ScalarExpr r;
  r.cst = e.cst().trace().real();
  for (const auto& [t, coeff] : e.coeffs()) {
    double v = coeff.trace().real();
    if (std::abs(v) > 1e-15) r.lin[t] = v;
  }
  return r;
}

ScalarExpr inner(const LabeledMat& k, const Expr& e) {
  if (k.dim() != e.dim()) throw std::invalid_argument("inner: dimension mismatch");
  ScalarExpr r;
  r.cst = (k.m * e.cst()).trace().real();
  for (const auto& [t, coeff] : e.coeffs()) {
    double v = (k.m * coeff).trace().real();
    if (std::abs(v) > 1e-15) r.lin[t] = v;
  }
  return r;
}

ScalarExpr entry_re(const Expr& e, long i, long j) {
  ScalarExpr r;
  r.cst = e.cst()(i, j).real();
  for (const auto& [t, coeff] : e.coeffs()) {
    double v = coeff(i, j).real();
    if (std::abs(v) > 1e-15) r.lin[t] = v;
  }
  return r;
}

ScalarExpr entry_im(const Expr& e, long i, long j) {
  ScalarExpr r;
  r.cst = e.cst()(i, j).imag();
  for (const auto& [t, coeff] : e.coeffs()) {
    double v = coeff(i, j).imag();
    if (std::abs(v) > 1e-15) r.lin[t] = v;
  }
  return r;
}

Expr scale_matrix(const ScalarExpr& s, const LabeledMat& g) {
  Expr r(g.systems, s.cst * g.m);
  for (const auto& [t, v] : s.lin) r.add_term(t, v * g.m);
  return r;
}

}  // namespace qrc::conic
