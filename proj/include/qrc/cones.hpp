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

#include "qrc/conic/program.hpp"
#include "qrc/random.hpp"
#include "qrc/supermap.hpp"

namespace qrc::cones {

enum class Kind { AllPsd, DiagonalPsd, PptPsd, Generated, PsdOnSubspace };
enum class Level { Superchannel, Channel, Operation, State };
enum class Role { A0 = 0, A1 = 1, B0 = 2, B1 = 3 };
enum class Hier { H1, H2, H3, H4, H5, H6 };

/// Machine-checkable description of a closed convex cone of positive
/// operators over an ambient tensor space, able to emit both membership
/// constraints and dual-cone membership constraints for the solver.
class ConeSpec {
 public:
  ConeSpec() = default;

  Kind kind() const { return kind_; }
  const Systems& ambient() const { return ambient_; }
  const std::vector<Role>& roles() const { return roles_; }
  long dim() const { return total_dim(ambient_); }
  const std::set<std::string>& ppt_split() const { return ppt_split_; }
  const std::vector<Mat>& generators() const { return generators_; }
  const std::vector<Mat>& subspace_basis() const { return subspace_basis_; }
  const std::vector<Mat>& subspace_perp_basis() const { return perp_basis_; }

  Systems systems_with_role(Role r) const;
  std::vector<std::string> names_with_role(Role r) const;

  /// Preset family tag ("all", "diagonal", "ppt", "classical") or "custom".
  const std::string& family() const { return family_; }
  void set_family(std::string f) { family_ = std::move(f); }

  friend ConeSpec make_all_psd(Systems ambient, std::vector<Role> roles);
  friend ConeSpec make_diagonal_psd(Systems ambient, std::vector<Role> roles);
  friend ConeSpec make_ppt_psd(Systems ambient, std::vector<Role> roles,
                               std::set<std::string> split);
  friend ConeSpec make_generated(Systems ambient, std::vector<Role> roles,
                                 std::vector<Mat> generators);
  friend ConeSpec make_psd_on_subspace(Systems ambient, std::vector<Role> roles,
                                       std::vector<Mat> basis);

 private:
  Kind kind_ = Kind::AllPsd;
  Systems ambient_;
  std::vector<Role> roles_;
  std::set<std::string> ppt_split_;
  std::vector<Mat> generators_;
  std::vector<Mat> subspace_basis_;  // orthonormal basis of L
  std::vector<Mat> perp_basis_;      // orthonormal basis of L-perp
  std::string family_ = "custom";
};

ConeSpec make_all_psd(Systems ambient, std::vector<Role> roles);
ConeSpec make_diagonal_psd(Systems ambient, std::vector<Role> roles);
ConeSpec make_ppt_psd(Systems ambient, std::vector<Role> roles, std::set<std::string> split);
ConeSpec make_generated(Systems ambient, std::vector<Role> roles, std::vector<Mat> generators);
ConeSpec make_psd_on_subspace(Systems ambient, std::vector<Role> roles, std::vector<Mat> basis);

/// Emit "expr lies in the cone" into the program.
void emit_membership(const ConeSpec& c, const conic::Expr& e, conic::Program& prog);
/// Emit "expr lies in the dual cone" into the program.
void emit_dual_membership(const ConeSpec& c, const conic::Expr& e, conic::Program& prog);

/// Numeric membership violation of a concrete operator (no solve except for
/// the Generated kind, which requires a small feasibility program).
double membership_residual(const ConeSpec& c, const LabeledMat& x,
                           const conic::ProgramSettings& settings = {});

/// Cone membership plus the unit-marginal slice for the given level; `J`
/// must match the cone's ambient systems.
void free_set_constraints(Level level, const ConeSpec& c, const conic::Expr& J,
                          conic::Program& prog);

double free_set_residual(Level level, const ConeSpec& c, const LabeledMat& J,
                         const conic::ProgramSettings& settings = {});

/// Level implied by the cone's role structure (nontrivial roles present).
Level level_of(const ConeSpec& c);

struct Reduced {
  ConeSpec cone;
  Level level;
  bool is_set = false;  // H4-H6 carry the marginal slice with them
};

/// Def.-2-style reduction: the designated systems must already be trivial
/// (dim 1); they are dropped and the payload is restricted to the survivors.
Reduced hierarchy_reduce(const ConeSpec& c, Hier target);

/// Rebuild a structural preset cone (AllPsd/DiagonalPsd/PptPsd) at new
/// ambient systems, applying the family's split rule to the survivors.
/// Throws for Generated/PsdOnSubspace, whose family rule is not derivable.
ConeSpec family_at(const ConeSpec& c, const Systems& ambient, const std::vector<Role>& roles);

// Preset factories.  Available presets:
//   "all"       - the PSD cone at every level (everything is free);
//   "diagonal"  - diagonal operators at every level (classical objects; the
//                 identity supermap is NOT free in this family);
//   "ppt"       - PSD operators with a positive partial transpose over the
//                 last listed system;
//   "classical" - the maximal family over classical channels: superchannels
//                 and operations whose Choi action preserves diagonality
//                 (a PsdOnSubspace instance), reducing to "diagonal" at the
//                 channel and state levels.  The identity supermap is free.
ConeSpec preset_state_cone(const std::string& name, const Systems& b1);
ConeSpec preset_operation_cone(const std::string& name, const SystemLabel& a1,
                               const SystemLabel& b1);
ConeSpec preset_channel_cone(const std::string& name, const SystemLabel& b0,
                             const SystemLabel& b1);
ConeSpec preset_superchannel_cone(const std::string& name, const SystemLabel& a0,
                                  const SystemLabel& a1, const SystemLabel& b0,
                                  const SystemLabel& b1);

/// Sample a free superchannel by maximizing a random linear functional over
/// the free set (throws if the free set is empty/infeasible).
SuperChoi sample_free_superchannel(const ConeSpec& c, Rng& rng,
                                   const conic::ProgramSettings& settings = {});
/// Sample a free channel/operation/state the same way.
ChannelChoi sample_free_channel(const ConeSpec& c, Rng& rng,
                                const conic::ProgramSettings& settings = {});
HermitianOp sample_free_state(const ConeSpec& c, Rng& rng,
                              const conic::ProgramSettings& settings = {});

struct QrtReport {
  bool d1 = false;
  double d1Residual = 0.0;
  int d2Tried = 0, d2Passed = 0;
  double d2WorstResidual = 0.0;
  bool d0ApplicableKind = false;
  bool d0Consistent = false;
  double d0WorstMismatch = 0.0;
  std::string notes;
};

/// Axiom probe for a supermap-level cone: (D1) identity membership, (D2)
/// sampled composition closure, (D0') reduction consistency for structural
/// kinds.  Reports, never asserts.
QrtReport validate_qrt(const ConeSpec& c, int samples, Rng& rng,
                       const conic::ProgramSettings& settings = {});

}  // namespace qrc::cones
