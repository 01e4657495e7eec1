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

#include "qrc/cones.hpp"

#include <sstream>

namespace qrc::cones {

using conic::Expr;
using conic::Program;
using conic::ScalarExpr;

Systems ConeSpec::systems_with_role(Role r) const {
  Systems out;
  for (size_t k = 0; k < ambient_.size(); ++k)
    if (roles_[k] == r) out.push_back(ambient_[k]);
  return out;
}

std::vector<std::string> ConeSpec::names_with_role(Role r) const {
  std::vector<std::string> out;
  for (size_t k = 0; k < ambient_.size(); ++k)
    if (roles_[k] == r) out.push_back(ambient_[k].name);
  return out;
}

namespace {
void check_roles(const Systems& ambient, const std::vector<Role>& roles) {
  if (ambient.size() != roles.size())
    throw std::invalid_argument("ConeSpec: one role per ambient system required");
  check_unique_names(ambient);
}

double min_eig(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint().eval()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Orthonormal Hermitian basis of the full space (dim d^2).
std::vector<Mat> full_hermitian_basis(int d) {
  std::vector<Mat> basis;
  for (int i = 0; i < d; ++i) basis.push_back(unit_matrix(d, i, i));
  for (int j = 1; j < d; ++j)
    for (int i = 0; i < j; ++i) {
      basis.push_back((unit_matrix(d, i, j) + unit_matrix(d, j, i)) / std::sqrt(2.0));
      basis.push_back((Cplx(0, 1) * unit_matrix(d, i, j) - Cplx(0, 1) * unit_matrix(d, j, i)) /
                      std::sqrt(2.0));
    }
  return basis;
}
}  // namespace

ConeSpec make_all_psd(Systems ambient, std::vector<Role> roles) {
  check_roles(ambient, roles);
  ConeSpec c;
  c.kind_ = Kind::AllPsd;
  c.ambient_ = std::move(ambient);
  c.roles_ = std::move(roles);
  return c;
}

ConeSpec make_diagonal_psd(Systems ambient, std::vector<Role> roles) {
  check_roles(ambient, roles);
  ConeSpec c;
  c.kind_ = Kind::DiagonalPsd;
  c.ambient_ = std::move(ambient);
  c.roles_ = std::move(roles);
  return c;
}

ConeSpec make_ppt_psd(Systems ambient, std::vector<Role> roles, std::set<std::string> split) {
  check_roles(ambient, roles);
  for (const auto& n : split) require_system(ambient, n);
  ConeSpec c;
  c.kind_ = Kind::PptPsd;
  c.ambient_ = std::move(ambient);
  c.roles_ = std::move(roles);
  c.ppt_split_ = std::move(split);
  return c;
}

ConeSpec make_generated(Systems ambient, std::vector<Role> roles, std::vector<Mat> generators) {
  check_roles(ambient, roles);
  if (generators.empty()) throw std::invalid_argument("Generated cone: empty generator list");
  long d = total_dim(ambient);
  for (auto& g : generators) {
    if (g.rows() != d || g.cols() != d)
      throw std::invalid_argument("Generated cone: generator size mismatch");
    if (hermiticity_defect(g) > 1e-9)
      throw std::invalid_argument("Generated cone: non-Hermitian generator");
    if (min_eig(g) < -1e-10) throw std::invalid_argument("Generated cone: non-PSD generator");
    double tr = g.trace().real();
    if (tr < 1e-12) throw std::invalid_argument("Generated cone: zero generator");
    g /= tr;  // normalize to unit trace
  }
  for (size_t i = 0; i < generators.size(); ++i)
    for (size_t j = i; j < generators.size(); ++j)
      if ((generators[i] * generators[j]).trace().real() < -1e-10)
        throw std::invalid_argument(
            "Generated cone: generators must satisfy <g_i, g_j> >= 0 (self-dual sandwich)");
  ConeSpec c;
  c.kind_ = Kind::Generated;
  c.ambient_ = std::move(ambient);
  c.roles_ = std::move(roles);
  c.generators_ = std::move(generators);
  return c;
}

ConeSpec make_psd_on_subspace(Systems ambient, std::vector<Role> roles, std::vector<Mat> basis) {
  check_roles(ambient, roles);
  long d = total_dim(ambient);
  if (basis.empty()) throw std::invalid_argument("PsdOnSubspace: empty basis");
  // Gram-Schmidt under the trace inner product; inputs must be Hermitian.
  std::vector<Mat> ortho;
  for (auto& bmat : basis) {
    if (bmat.rows() != d || bmat.cols() != d)
      throw std::invalid_argument("PsdOnSubspace: basis size mismatch");
    if (hermiticity_defect(bmat) > 1e-9)
      throw std::invalid_argument("PsdOnSubspace: non-Hermitian basis element");
    Mat v = 0.5 * (bmat + bmat.adjoint().eval());
    for (const auto& u : ortho) v -= (u.adjoint() * v).trace().real() * u;
    double nrm = std::sqrt(std::abs((v.adjoint() * v).trace().real()));
    if (nrm > 1e-10) ortho.push_back(v / nrm);
  }
  // Complete to a basis of the Hermitian space; the tail spans L-perp.
  std::vector<Mat> perp;
  for (const auto& cand : full_hermitian_basis(static_cast<int>(d))) {
    Mat v = cand;
    for (const auto& u : ortho) v -= (u.adjoint() * v).trace().real() * u;
    for (const auto& u : perp) v -= (u.adjoint() * v).trace().real() * u;
    double nrm = std::sqrt(std::abs((v.adjoint() * v).trace().real()));
    if (nrm > 1e-8) perp.push_back(v / nrm);
  }
  ConeSpec c;
  c.kind_ = Kind::PsdOnSubspace;
  c.ambient_ = std::move(ambient);
  c.roles_ = std::move(roles);
  c.subspace_basis_ = std::move(ortho);
  c.perp_basis_ = std::move(perp);
  return c;
}

void emit_membership(const ConeSpec& c, const Expr& e, Program& prog) {
  if (e.dim() != c.dim()) throw std::invalid_argument("emit_membership: dimension mismatch");
  static int counter = 0;
  switch (c.kind()) {
    case Kind::AllPsd:
      prog.add_psd(e);
      break;
    case Kind::DiagonalPsd: {
      long d = e.dim();
      for (long i = 0; i < d; ++i) {
        prog.add_nonneg(conic::entry_re(e, i, i));
        for (long j = i + 1; j < d; ++j) {
          prog.add_equality(conic::entry_re(e, i, j), 0.0);
          prog.add_equality(conic::entry_im(e, i, j), 0.0);
        }
      }
      break;
    }
    case Kind::PptPsd:
      prog.add_psd(e);
      if (!c.ppt_split().empty()) prog.add_psd(partial_transpose(e, c.ppt_split()));
      break;
    case Kind::Generated: {
      Expr combo(e.systems(), Mat::Zero(e.dim(), e.dim()));
      for (size_t i = 0; i < c.generators().size(); ++i) {
        auto lam = prog.add_scalar("__gen" + std::to_string(counter++) + "_" + std::to_string(i),
                                   /*nonneg=*/true);
        combo = combo + conic::scale_matrix(prog.svar(lam), LabeledMat(e.systems(), c.generators()[i]));
      }
      prog.add_equality(e, combo);
      break;
    }
    case Kind::PsdOnSubspace: {
      prog.add_psd(e);
      for (const auto& bperp : c.subspace_perp_basis())
        prog.add_equality(conic::inner(LabeledMat(e.systems(), bperp), e), 0.0);
      break;
    }
  }
}

void emit_dual_membership(const ConeSpec& c, const Expr& e, Program& prog) {
  if (e.dim() != c.dim()) throw std::invalid_argument("emit_dual_membership: dimension mismatch");
  static int counter = 0;
  switch (c.kind()) {
    case Kind::AllPsd:
      prog.add_psd(e);  // the PSD cone is self-dual
      break;
    case Kind::DiagonalPsd: {
      // Dual constrains only the diagonal; off-diagonal entries are free.
      for (long i = 0; i < e.dim(); ++i) prog.add_nonneg(conic::entry_re(e, i, i));
      break;
    }
    case Kind::PptPsd: {
      if (c.ppt_split().empty()) {
        prog.add_psd(e);
        break;
      }
      // e = P + Q^Gamma with P, Q >= 0  <=>  exists Q >= 0 with e - Q^Gamma >= 0.
      auto q = prog.add_hermitian("__pptdual" + std::to_string(counter++), c.ambient());
      Expr qe = prog.var(q);
      prog.add_psd(qe);
      prog.add_psd(e - partial_transpose(qe, c.ppt_split()));
      break;
    }
    case Kind::Generated:
      for (const auto& g : c.generators())
        prog.add_nonneg(conic::inner(LabeledMat(e.systems(), g), e));
      break;
    case Kind::PsdOnSubspace: {
      // e = P + Z with P >= 0 and Z in L-perp.
      Expr shifted = e;
      for (size_t k = 0; k < c.subspace_perp_basis().size(); ++k) {
        auto zk = prog.add_scalar("__subdual" + std::to_string(counter++), /*nonneg=*/false);
        shifted = shifted - conic::scale_matrix(prog.svar(zk),
                                                LabeledMat(e.systems(), c.subspace_perp_basis()[k]));
      }
      prog.add_psd(shifted);
      break;
    }
  }
}

double membership_residual(const ConeSpec& c, const LabeledMat& x,
                           const conic::ProgramSettings& settings) {
  if (x.dim() != c.dim()) throw std::invalid_argument("membership_residual: dimension mismatch");
  switch (c.kind()) {
    case Kind::AllPsd:
      return std::max(0.0, -min_eig(x.m));
    case Kind::DiagonalPsd: {
      double r = 0;
      for (long i = 0; i < x.dim(); ++i) {
        r = std::max(r, -std::min(0.0, x.m(i, i).real()));
        for (long j = 0; j < x.dim(); ++j)
          if (i != j) r = std::max(r, std::abs(x.m(i, j)));
      }
      return r;
    }
    case Kind::PptPsd: {
      double r = std::max(0.0, -min_eig(x.m));
      if (!c.ppt_split().empty())
        r = std::max(r, std::max(0.0, -min_eig(partial_transpose(x, c.ppt_split()).m)));
      return r;
    }
    case Kind::PsdOnSubspace: {
      double r = std::max(0.0, -min_eig(x.m));
      for (const auto& bperp : c.subspace_perp_basis())
        r = std::max(r, std::abs((bperp.adjoint() * x.m).trace().real()));
      return r;
    }
    case Kind::Generated: {
      // Distance in the sup norm to the generated cone, via a small program.
      Program prog;
      auto t = prog.add_scalar("t", true);
      Expr combo(x.systems, Mat::Zero(x.dim(), x.dim()));
      for (size_t i = 0; i < c.generators().size(); ++i) {
        auto lam = prog.add_scalar("l" + std::to_string(i), true);
        combo = combo + conic::scale_matrix(prog.svar(lam), LabeledMat(x.systems, c.generators()[i]));
      }
      Expr diff = Expr::constant(x) - combo;
      LabeledMat eye = identity_on(x.systems);
      prog.add_psd(conic::scale_matrix(prog.svar(t), eye) - diff);
      prog.add_psd(conic::scale_matrix(prog.svar(t), eye) + diff);
      prog.set_objective(conic::Sense::Minimize, prog.svar(t));
      auto sol = prog.solve(settings);
      if (sol.status != conic::Status::Optimal)
        throw std::runtime_error("membership_residual: feasibility solve failed");
      return std::max(0.0, sol.value);
    }
  }
  return 0.0;
}

Level level_of(const ConeSpec& c) {
  bool hasA0 = false, hasA1 = false, hasB0 = false;
  for (auto r : c.roles()) {
    hasA0 |= r == Role::A0;
    hasA1 |= r == Role::A1;
    hasB0 |= r == Role::B0;
  }
  if (hasA0 || (hasA1 && hasB0)) return Level::Superchannel;
  if (hasA1) return Level::Operation;
  if (hasB0) return Level::Channel;
  return Level::State;
}

void free_set_constraints(Level level, const ConeSpec& c, const Expr& J, Program& prog) {
  emit_membership(c, J, prog);
  auto names_all = [&](Role r) {
    auto v = c.names_with_role(r);
    return std::set<std::string>(v.begin(), v.end());
  };
  switch (level) {
    case Level::State: {
      prog.add_equality(conic::trace(J), 1.0);
      break;
    }
    case Level::Channel: {
      Systems b0 = c.systems_with_role(Role::B0);
      if (b0.empty()) throw std::invalid_argument("channel level requires a B0 system");
      prog.add_equality(partial_trace(J, names_all(Role::B0)), Expr::constant(identity_on(b0)));
      break;
    }
    case Level::Operation: {
      Systems a1 = c.systems_with_role(Role::A1);
      if (a1.empty()) throw std::invalid_argument("operation level requires an A1 system");
      prog.add_equality(partial_trace(J, names_all(Role::A1)), Expr::constant(identity_on(a1)));
      break;
    }
    case Level::Superchannel: {
      Systems a0 = c.systems_with_role(Role::A0), a1 = c.systems_with_role(Role::A1),
              b0 = c.systems_with_role(Role::B0);
      if (a0.empty() || a1.empty() || b0.empty())
        throw std::invalid_argument("superchannel level requires A0, A1 and B0 systems");
      std::set<std::string> keep1 = names_all(Role::A1);
      for (const auto& n : names_all(Role::B0)) keep1.insert(n);
      prog.add_equality(partial_trace(J, keep1), Expr::constant(identity_on(concat(a1, b0))));

      std::set<std::string> keepA0A1B0 = keep1;
      for (const auto& n : names_all(Role::A0)) keepA0A1B0.insert(n);
      std::set<std::string> keepA0B0 = names_all(Role::A0);
      for (const auto& n : names_all(Role::B0)) keepA0B0.insert(n);
      Expr lhs = partial_trace(J, keepA0A1B0);  // over (A0, A1, B0) in ambient order
      double dA1 = total_dim(a1);
      LabeledMat eyeA1 = identity_on(a1);
      eyeA1.m /= dA1;
      Expr rhs = tensor(partial_trace(J, keepA0B0), eyeA1);  // (A0, B0, A1)
      std::vector<std::string> order;
      for (const auto& s : lhs.systems()) order.push_back(s.name);
      prog.add_equality(lhs, reorder(rhs, order));
      break;
    }
  }
}

double free_set_residual(Level level, const ConeSpec& c, const LabeledMat& J,
                         const conic::ProgramSettings& settings) {
  double r = membership_residual(c, J, settings);
  auto names_all = [&](Role role) {
    auto v = c.names_with_role(role);
    return std::set<std::string>(v.begin(), v.end());
  };
  switch (level) {
    case Level::State:
      r = std::max(r, std::abs(J.m.trace().real() - 1.0));
      break;
    case Level::Channel: {
      LabeledMat t = partial_trace(J, names_all(Role::B0));
      r = std::max(r, (t.m - Mat::Identity(t.dim(), t.dim())).cwiseAbs().maxCoeff());
      break;
    }
    case Level::Operation: {
      LabeledMat t = partial_trace(J, names_all(Role::A1));
      r = std::max(r, (t.m - Mat::Identity(t.dim(), t.dim())).cwiseAbs().maxCoeff());
      break;
    }
    case Level::Superchannel: {
      std::set<std::string> keep1 = names_all(Role::A1);
      for (const auto& n : names_all(Role::B0)) keep1.insert(n);
      LabeledMat m1 = partial_trace(J, keep1);
      r = std::max(r, (m1.m - Mat::Identity(m1.dim(), m1.dim())).cwiseAbs().maxCoeff());
      std::set<std::string> keepA0A1B0 = keep1, keepA0B0 = names_all(Role::A0);
      for (const auto& n : names_all(Role::A0)) keepA0A1B0.insert(n);
      for (const auto& n : names_all(Role::B0)) keepA0B0.insert(n);
      Systems a1 = c.systems_with_role(Role::A1);
      LabeledMat eyeA1 = identity_on(a1);
      eyeA1.m /= static_cast<double>(total_dim(a1));
      LabeledMat lhs = partial_trace(J, keepA0A1B0);
      LabeledMat rhs = tensor(partial_trace(J, keepA0B0), eyeA1);
      std::vector<std::string> order;
      for (const auto& s : lhs.systems) order.push_back(s.name);
      rhs = reorder(rhs, order);
      r = std::max(r, (lhs.m - rhs.m).cwiseAbs().maxCoeff());
      break;
    }
  }
  return r;
}

namespace {
ConeSpec preset_at(const std::string& name, Systems ambient, std::vector<Role> roles);
}

Reduced hierarchy_reduce(const ConeSpec& c, Hier target) {
  if (level_of(c) != Level::Superchannel)
    throw std::invalid_argument("hierarchy_reduce: a supermap-level cone is required");
  std::set<Role> drop;
  Level level;
  bool is_set = false;
  switch (target) {
    case Hier::H1: drop = {Role::A0, Role::A1}; level = Level::Channel; break;
    case Hier::H2: drop = {Role::A0, Role::B0}; level = Level::Operation; break;
    case Hier::H3: drop = {Role::A0, Role::A1, Role::B0}; level = Level::State; break;
    case Hier::H4: drop = {Role::A0, Role::A1}; level = Level::Channel; is_set = true; break;
    case Hier::H5: drop = {Role::A0, Role::B0}; level = Level::Operation; is_set = true; break;
    case Hier::H6: drop = {Role::A0, Role::A1, Role::B0}; level = Level::State; is_set = true; break;
    default: throw std::invalid_argument("hierarchy_reduce: unknown target");
  }
  Systems surv;
  std::vector<Role> survRoles;
  for (size_t k = 0; k < c.ambient().size(); ++k) {
    if (drop.count(c.roles()[k])) {
      if (c.ambient()[k].dim != 1)
        throw std::invalid_argument("hierarchy_reduce: designated system '" +
                                    c.ambient()[k].name + "' must be trivial (dim 1)");
    } else {
      surv.push_back(c.ambient()[k]);
      survRoles.push_back(c.roles()[k]);
    }
  }
  // Dropping trivial factors leaves matrices untouched, so payloads carry over.
  ConeSpec red;
  switch (c.kind()) {
    case Kind::AllPsd: red = make_all_psd(surv, survRoles); break;
    case Kind::DiagonalPsd: red = make_diagonal_psd(surv, survRoles); break;
    case Kind::PptPsd: {
      std::set<std::string> split;
      for (const auto& n : c.ppt_split())
        if (find_system(surv, n) >= 0) split.insert(n);
      red = make_ppt_psd(surv, survRoles, split);
      break;
    }
    case Kind::Generated: red = make_generated(surv, survRoles, c.generators()); break;
    case Kind::PsdOnSubspace: {
      red = make_psd_on_subspace(surv, survRoles, c.subspace_basis());
      break;
    }
  }
  red.set_family(c.family());
  return Reduced{std::move(red), level, is_set};
}

ConeSpec family_at(const ConeSpec& c, const Systems& ambient, const std::vector<Role>& roles) {
  if (c.family() == "all" || c.family() == "diagonal" || c.family() == "classical")
    return preset_at(c.family(), ambient, roles);
  if (c.family() == "ppt") {
    // The family rule transposes the final system of whichever tuple it is
    // instantiated at.
    return preset_at("ppt", ambient, roles);
  }
  switch (c.kind()) {
    case Kind::AllPsd: return make_all_psd(ambient, roles);
    case Kind::DiagonalPsd: return make_diagonal_psd(ambient, roles);
    case Kind::PptPsd: {
      std::set<std::string> split;
      for (const auto& n : c.ppt_split())
        if (find_system(ambient, n) >= 0) split.insert(n);
      return make_ppt_psd(ambient, roles, split);
    }
    default:
      throw std::invalid_argument("family_at: only structural cone kinds define a family rule");
  }
}

namespace {

// Subspace of Hermitian operators whose Choi action preserves diagonality:
// for every diagonal index a of the input-side group, the corresponding
// output-side block must be diagonal.  Spanned by the orthonormal Hermitian
// basis elements E_{(a,b),(a',b')} except those with a = a' and b != b'.
std::vector<Mat> classical_preserving_basis(const Systems& ambient,
                                            const std::vector<Role>& roles) {
  long dA = 1, dB = 1;
  bool seenB = false;
  for (size_t k = 0; k < ambient.size(); ++k) {
    bool isA = roles[k] == Role::A0 || roles[k] == Role::A1;
    if (isA && seenB)
      throw std::invalid_argument("classical preset: input-side systems must come first");
    if (isA)
      dA *= ambient[k].dim;
    else {
      seenB = true;
      dB *= ambient[k].dim;
    }
  }
  long d = dA * dB;
  std::vector<Mat> basis;
  const double is2 = 1.0 / std::sqrt(2.0);
  for (long i = 0; i < d; ++i) {
    long a = i / dB, b = i % dB;
    basis.push_back(unit_matrix(static_cast<int>(d), static_cast<int>(i), static_cast<int>(i)));
    for (long j = i + 1; j < d; ++j) {
      long ap = j / dB, bp = j % dB;
      if (a == ap && b != bp) continue;
      Mat eij = unit_matrix(static_cast<int>(d), static_cast<int>(i), static_cast<int>(j));
      Mat eji = unit_matrix(static_cast<int>(d), static_cast<int>(j), static_cast<int>(i));
      basis.push_back(is2 * (eij + eji));
      basis.push_back(is2 * (Cplx(0, 1) * eij - Cplx(0, 1) * eji));
    }
  }
  return basis;
}

ConeSpec preset_at(const std::string& name, Systems ambient, std::vector<Role> roles) {
  ConeSpec c;
  if (name == "all") {
    c = make_all_psd(std::move(ambient), std::move(roles));
  } else if (name == "diagonal") {
    c = make_diagonal_psd(std::move(ambient), std::move(roles));
  } else if (name == "ppt") {
    if (ambient.empty()) throw std::invalid_argument("ppt preset: empty ambient");
    std::set<std::string> split{ambient.back().name};
    c = make_ppt_psd(std::move(ambient), std::move(roles), std::move(split));
  } else if (name == "classical") {
    bool hasInputSide = false;
    for (auto r : roles) hasInputSide |= (r == Role::A0 || r == Role::A1 || r == Role::B0);
    bool isOperationOrSuper = false;
    for (auto r : roles) isOperationOrSuper |= (r == Role::A0 || r == Role::A1);
    if (isOperationOrSuper) {
      auto basis = classical_preserving_basis(ambient, roles);
      c = make_psd_on_subspace(std::move(ambient), std::move(roles), basis);
    } else {
      // Channel and state levels of the classical family are plain diagonal.
      (void)hasInputSide;
      c = make_diagonal_psd(std::move(ambient), std::move(roles));
    }
  } else {
    throw std::invalid_argument("unknown cone preset '" + name + "'");
  }
  c.set_family(name);
  return c;
}
}  // namespace

ConeSpec preset_state_cone(const std::string& name, const Systems& b1) {
  return preset_at(name, b1, std::vector<Role>(b1.size(), Role::B1));
}
ConeSpec preset_operation_cone(const std::string& name, const SystemLabel& a1,
                               const SystemLabel& b1) {
  return preset_at(name, {a1, b1}, {Role::A1, Role::B1});
}
ConeSpec preset_channel_cone(const std::string& name, const SystemLabel& b0,
                             const SystemLabel& b1) {
  return preset_at(name, {b0, b1}, {Role::B0, Role::B1});
}
ConeSpec preset_superchannel_cone(const std::string& name, const SystemLabel& a0,
                                  const SystemLabel& a1, const SystemLabel& b0,
                                  const SystemLabel& b1) {
  return preset_at(name, {a0, a1, b0, b1}, {Role::A0, Role::A1, Role::B0, Role::B1});
}

namespace {
conic::Solution maximize_random_over_free_set(Level level, const ConeSpec& c, Rng& rng,
                                              const conic::ProgramSettings& settings,
                                              std::string varname) {
  Program prog;
  auto J = prog.add_hermitian(varname, c.ambient());
  Expr Je = prog.var(J);
  free_set_constraints(level, c, Je, prog);
  Mat R = random_hermitian(static_cast<int>(c.dim()), rng);
  prog.set_objective(conic::Sense::Maximize, conic::inner(LabeledMat(c.ambient(), R), Je));
  auto sol = prog.solve(settings);
  if (sol.status != conic::Status::Optimal)
    throw std::runtime_error("free-set sampling failed (empty or ill-posed free set?)");
  return sol;
}
}  // namespace

SuperChoi sample_free_superchannel(const ConeSpec& c, Rng& rng,
                                   const conic::ProgramSettings& settings) {
  if (level_of(c) != Level::Superchannel)
    throw std::invalid_argument("sample_free_superchannel: supermap-level cone required");
  auto sol = maximize_random_over_free_set(Level::Superchannel, c, rng, settings, "J");
  Systems a0 = c.systems_with_role(Role::A0), a1 = c.systems_with_role(Role::A1),
          b0 = c.systems_with_role(Role::B0), b1 = c.systems_with_role(Role::B1);
  if (a0.size() != 1 || a1.size() != 1 || b0.size() != 1 || b1.size() != 1)
    throw std::invalid_argument("sample_free_superchannel: one system per role required");
  return SuperChoi(a0[0], a1[0], b0[0], b1[0], HermitianOp(c.ambient(), sol.herm.at("J")));
}

ChannelChoi sample_free_channel(const ConeSpec& c, Rng& rng,
                                const conic::ProgramSettings& settings) {
  Level lv = level_of(c);
  if (lv != Level::Channel && lv != Level::Operation)
    throw std::invalid_argument("sample_free_channel: channel- or operation-level cone required");
  auto sol = maximize_random_over_free_set(lv, c, rng, settings, "J");
  Systems in = c.systems_with_role(lv == Level::Channel ? Role::B0 : Role::A1);
  Systems out = c.systems_with_role(Role::B1);
  return ChannelChoi(in, out, HermitianOp(c.ambient(), sol.herm.at("J")));
}

HermitianOp sample_free_state(const ConeSpec& c, Rng& rng, const conic::ProgramSettings& settings) {
  if (level_of(c) != Level::State)
    throw std::invalid_argument("sample_free_state: state-level cone required");
  auto sol = maximize_random_over_free_set(Level::State, c, rng, settings, "rho");
  return HermitianOp(c.ambient(), sol.herm.at("rho"));
}

QrtReport validate_qrt(const ConeSpec& c, int samples, Rng& rng,
                       const conic::ProgramSettings& settings) {
  QrtReport rep;
  if (level_of(c) != Level::Superchannel)
    throw std::invalid_argument("validate_qrt: supermap-level cone required");
  Systems a0 = c.systems_with_role(Role::A0), a1 = c.systems_with_role(Role::A1),
          b0 = c.systems_with_role(Role::B0), b1 = c.systems_with_role(Role::B1);
  if (a0.size() != 1 || a1.size() != 1 || b0.size() != 1 || b1.size() != 1)
    throw std::invalid_argument("validate_qrt: one system per role required");

  // (D1): the identity supermap requires matching slot dimensions.
  if (a0[0].dim == b0[0].dim && a1[0].dim == b1[0].dim) {
    SuperChoi id = identity_supermap(a0[0], a1[0], b0[0], b1[0]);
    rep.d1Residual = membership_residual(c, id.J().labeled(), settings);
    rep.d1 = rep.d1Residual <= 1e-8;
  } else {
    rep.notes += "(D1) skipped: slot dimensions differ; ";
  }

  // (D2): sampled composition closure (needs square dynamic types).
  if (a0[0].dim == b0[0].dim && a1[0].dim == b1[0].dim) {
    for (int i = 0; i < samples; ++i) {
      SuperChoi t1 = sample_free_superchannel(c, rng, settings);
      SuperChoi t2 = sample_free_superchannel(c, rng, settings);
      SuperChoi comp = compose_supermaps(t2, t1);
      double res = free_set_residual(Level::Superchannel, c, comp.J().labeled(), settings);
      rep.d2Tried++;
      rep.d2WorstResidual = std::max(rep.d2WorstResidual, res);
      if (res <= 1e-6) rep.d2Passed++;
    }
  } else {
    rep.notes += "(D2) skipped: slot dimensions differ; ";
  }

  // (D0'): F = O with trivial input, checked through the family rule.
  if (c.kind() == Kind::AllPsd || c.kind() == Kind::DiagonalPsd || c.kind() == Kind::PptPsd) {
    rep.d0ApplicableKind = true;
    ConeSpec stateCone = family_at(c, b1, {Role::B1});
    SystemLabel trivialA1{"A1trivial", 1};
    ConeSpec opCone = family_at(c, {trivialA1, b1[0]}, {Role::A1, Role::B1});
    double worst = 0;
    for (int i = 0; i < std::max(1, samples); ++i) {
      Mat g = ginibre(b1[0].dim, b1[0].dim, rng);
      Mat w = g * g.adjoint();
      w /= w.trace().real();
      double r1 = free_set_residual(Level::State, stateCone, LabeledMat(b1, w), settings);
      double r2 = free_set_residual(Level::Operation, opCone,
                                    LabeledMat({trivialA1, b1[0]}, w), settings);
      worst = std::max(worst, std::abs(r1 - r2));
    }
    rep.d0WorstMismatch = worst;
    rep.d0Consistent = worst <= 1e-8;
  } else {
    rep.notes += "(D0') not applicable to non-structural cone kinds; ";
  }
  return rep;
}

}  // namespace qrc::cones
