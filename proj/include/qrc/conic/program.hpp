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
#include <ostream>

#include "qrc/conic/expr.hpp"
#include "qrc/conic/solver.hpp"

namespace qrc::conic {

struct VarHandle {
  int id = -1;
};
struct ScalarHandle {
  int id = -1;
};

enum class Sense { Minimize, Maximize };
enum class Status { Optimal, Infeasible, Unbounded, Inaccurate };

struct Solution {
  Status status = Status::Inaccurate;
  double value = 0.0;  // objective in the declared sense
  std::map<std::string, Mat> herm;
  std::map<std::string, double> scalar;
  double eq_residual = 0.0;    // worst equality violation at the reported point
  double cone_residual = 0.0;  // worst cone violation (negative eigenvalue etc.)
  double solver_gap = 0.0;
  int iters = 0;
  std::string message;
  /// Complex-valued dual matrices for PSD memberships, in declaration order,
  /// present when the backend produced them (optimal or infeasibility ray).
  std::vector<Mat> psd_duals;
  Eigen::VectorXd eq_dual;
  Mat dual_of(int membership_index) const { return psd_duals.at(membership_index); }
};

struct ProgramSettings {
  SolverSettings solver;
  /// Lower complex Hermitian blocks via the real [[A, -B], [B, A]] embedding
  /// instead of native complex-Hermitian cone blocks.  Both lowerings are
  /// mathematically equivalent; the native path is the faster default.
  bool realify = false;
};

/// Declarative conic program over named Hermitian blocks and real scalars.
class Program {
 public:
  VarHandle add_hermitian(const std::string& name, Systems sys);
  ScalarHandle add_scalar(const std::string& name, bool nonneg = false);

  Expr var(VarHandle h) const;
  ScalarExpr svar(ScalarHandle h) const;
  const std::string& name_of(VarHandle h) const { return herm_vars_[h.id].name; }

  void add_equality(const Expr& lhs, const Expr& rhs);
  void add_equality_zero(const Expr& e);
  void add_equality(const ScalarExpr& e, double rhs);
  /// expr >= 0 in the PSD order; returns the membership index (for duals).
  int add_psd(const Expr& e);
  void add_nonneg(const ScalarExpr& e);
  void set_objective(Sense sense, const ScalarExpr& obj);

  int coord_count() const { return ncoords_; }
  int psd_count() const { return static_cast<int>(psd_.size()); }

  Solution solve(const ProgramSettings& settings = {}) const;

  /// Standard-form text dump for debugging.
  void dump_standard_form(std::ostream& os, const ProgramSettings& settings = {}) const;

 private:
  struct HermVar {
    std::string name;
    Systems sys;
    int dim;
    int offset;  // first coordinate
  };
  struct ScalarVar {
    std::string name;
    int offset;
    bool nonneg;
  };
  struct Lowered;
  Lowered lower(const ProgramSettings&) const;

  std::vector<HermVar> herm_vars_;
  std::vector<ScalarVar> scalar_vars_;
  int ncoords_ = 0;
  std::vector<std::pair<Expr, int>> eqs_;    // expr == 0 over `int` unused
  std::vector<ScalarExpr> scalar_eqs_;       // == 0
  std::vector<Expr> psd_;                    // >= 0
  std::vector<ScalarExpr> nonneg_;           // >= 0
  Sense sense_ = Sense::Minimize;
  ScalarExpr objective_;
  bool has_objective_ = false;
};

}  // namespace qrc::conic
