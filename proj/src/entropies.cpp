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

#include "qrc/entropies.hpp"

#include <cmath>

namespace qrc::entropies {

using conic::Expr;
using conic::Program;
using conic::Sense;
using conic::Status;
using cones::ConeSpec;
using cones::Level;

namespace {

double log2_safe(double v) {
  if (v <= 0) throw std::runtime_error("entropy value is nonpositive; cannot take log");
  return std::log2(v);
}

void check_state(const HermitianOp& rho, double tol) {
  if (rho.min_eigenvalue() < -tol)
    throw std::invalid_argument("input is not a state (not PSD within tolerance)");
  if (std::abs(rho.trace() - 1.0) > std::max(tol, 1e-8))
    throw std::invalid_argument("input is not a state (trace differs from one)");
}

void check_ambient_match(const ConeSpec& cone, const Systems& sys, const char* what) {
  if (cone.ambient().size() != sys.size())
    throw std::invalid_argument(std::string(what) + ": cone ambient does not match input systems");
  for (size_t k = 0; k < sys.size(); ++k)
    if (!(cone.ambient()[k] == sys[k]))
      throw std::invalid_argument(std::string(what) + ": cone ambient system '" +
                                  cone.ambient()[k].name + "' does not match input system '" +
                                  sys[k].name + "'");
}

// Evaluate the phi_+ sandwich dual form Tr[phi_+^{B~1 B1} (Psi (x) id)[rho]]
// for an operation-level optimizer Psi: A1 -> B~1 acting on the first factor.
double phi_sandwich(const Mat& jpsi, const HermitianOp& rhoAB, const SystemLabel& a1,
                    const SystemLabel& b1) {
  SystemLabel bt{"__Bt", b1.dim};
  LabeledMat J({a1, bt}, jpsi);
  LabeledMat rho = rhoAB.labeled();
  LabeledMat moved = link(rho, J);  // contracts over a1 -> (B1-part, __Bt)
  // moved systems: (B1-other-part..., __Bt); reorder to (__Bt, B1)
  std::vector<std::string> order{"__Bt"};
  for (const auto& s : rhoAB.systems())
    if (s.name != a1.name) order.push_back(s.name);
  moved = reorder(moved, order);
  LabeledMat phi = max_entangled_unnormalized(b1.dim, "__Bt", moved.systems[1].name);
  return (phi.m * moved.m).trace().real();
}

}  // namespace

EntropyResult fme(const HermitianOp& rho, const ConeSpec& fCone, const EntropyOptions& opt) {
  if (opt.validate) check_state(rho, opt.tol);
  check_ambient_match(fCone, rho.systems(), "fme");
  if (cones::level_of(fCone) != Level::State)
    throw std::invalid_argument("fme: a state-level cone is required");

  EntropyResult res;
  {
    Program prog;
    auto lam = prog.add_scalar("lambda");
    Expr e = conic::scale_matrix(prog.svar(lam), identity_on(rho.systems())) -
             Expr::constant(rho.labeled());
    cones::emit_dual_membership(fCone, e, prog);
    prog.set_objective(Sense::Minimize, prog.svar(lam));
    auto sol = prog.solve(opt.prog);
    if (sol.status != Status::Optimal) {
      res.ok = false;
      res.notes += "primal: " + sol.message + "; ";
    }
    res.primal_linear = sol.value;
    res.optimizer["lambda"] = Mat::Constant(1, 1, sol.value);
  }
  {
    Program prog;
    auto sig = prog.add_hermitian("sigma", rho.systems());
    cones::free_set_constraints(Level::State, fCone, prog.var(sig), prog);
    prog.set_objective(Sense::Maximize, conic::inner(rho.labeled(), prog.var(sig)));
    auto sol = prog.solve(opt.prog);
    if (sol.status == Status::Infeasible)
      throw std::runtime_error("fme: the free state set is empty (dual infeasible)");
    if (sol.status != Status::Optimal) {
      res.ok = false;
      res.notes += "dual: " + sol.message + "; ";
    }
    res.dual_linear = sol.value;
    res.optimizer["sigma"] = sol.herm.at("sigma");
  }
  res.primal_bits = -log2_safe(res.primal_linear);
  res.dual_bits = -log2_safe(res.dual_linear);
  res.gap = res.primal_bits - res.dual_bits;
  return res;
}

EntropyResult h_min(const HermitianOp& rho, const EntropyOptions& opt) {
  ConeSpec all = cones::make_all_psd(rho.systems(),
                                     std::vector<cones::Role>(rho.systems().size(),
                                                              cones::Role::B1));
  EntropyOptions tight = opt;
  tight.prog = EntropyOptions::tight_defaults();
  tight.prog.realify = opt.prog.realify;
  EntropyResult r = fme(rho, all, tight);
  // Cross-check against the eigenvalue formula.
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.mat(), Eigen::EigenvaluesOnly);
  double analytic = -std::log2(es.eigenvalues().maxCoeff());
  r.notes += "lambda_max cross-check residual " +
             std::to_string(std::abs(analytic - r.primal_bits));
  return r;
}

EntropyResult fcme(const HermitianOp& rhoAB, const std::string& conditioning,
                   const ConeSpec& oCone, const EntropyOptions& opt) {
  if (opt.validate) check_state(rhoAB, opt.tol);
  int ci = require_system(rhoAB.systems(), conditioning);
  if (rhoAB.systems().size() != 2)
    throw std::invalid_argument("fcme: a bipartite state is required");
  // Reorder so the conditioning system comes first.
  HermitianOp rho = rhoAB;
  if (ci != 0)
    rho = reorder(rhoAB, {rhoAB.systems()[1].name, rhoAB.systems()[0].name});
  SystemLabel a1 = rho.systems()[0], b1 = rho.systems()[1];
  check_ambient_match(oCone, rho.systems(), "fcme");

  EntropyResult res;
  {
    Program prog;
    auto g = prog.add_hermitian("gamma", {a1});
    Expr lifted = tensor(prog.var(g), identity_on({b1}));
    cones::emit_dual_membership(oCone, lifted - Expr::constant(rho.labeled()), prog);
    prog.set_objective(Sense::Minimize, conic::trace(prog.var(g)));
    auto sol = prog.solve(opt.prog);
    if (sol.status != Status::Optimal) {
      res.ok = false;
      res.notes += "primal: " + sol.message + "; ";
    }
    res.primal_linear = sol.value;
    res.optimizer["gamma"] = sol.herm.at("gamma");
  }
  {
    Program prog;
    auto J = prog.add_hermitian("J_psi", {a1, b1});
    cones::free_set_constraints(Level::Operation, oCone, prog.var(J), prog);
    prog.set_objective(Sense::Maximize, conic::inner(rho.labeled(), prog.var(J)));
    auto sol = prog.solve(opt.prog);
    if (sol.status == Status::Infeasible)
      throw std::runtime_error("fcme: the free operation set is empty (dual infeasible)");
    if (sol.status != Status::Optimal) {
      res.ok = false;
      res.notes += "dual: " + sol.message + "; ";
    }
    res.dual_linear = sol.value;
    res.optimizer["J_psi"] = sol.herm.at("J_psi");
    // Consistency check of the phi_+ dual form, with and without the
    // complex-conjugation step of the derivation.
    res.dual2_conj = phi_sandwich(sol.herm.at("J_psi").conjugate(), rho, a1, b1);
    res.dual2_plain = phi_sandwich(sol.herm.at("J_psi"), rho, a1, b1);
    res.has_dual2 = true;
  }
  res.primal_bits = -log2_safe(res.primal_linear);
  res.dual_bits = -log2_safe(res.dual_linear);
  res.gap = res.primal_bits - res.dual_bits;
  return res;
}

EntropyResult h_min_cond(const HermitianOp& rhoAB, const std::string& conditioning,
                         const EntropyOptions& opt) {
  int ci = require_system(rhoAB.systems(), conditioning);
  SystemLabel a1 = rhoAB.systems()[ci], b1 = rhoAB.systems()[1 - ci];
  ConeSpec all = cones::make_all_psd({a1, b1}, {cones::Role::A1, cones::Role::B1});
  return fcme(rhoAB, conditioning, all, opt);
}

EntropyResult efme(const ChannelChoi& lam, const ConeSpec& lCone, const EntropyOptions& opt) {
  if (lam.in().size() != 1 || lam.out().size() != 1)
    throw std::invalid_argument("efme: a single-system channel is required");
  if (opt.validate) {
    auto rep = validate_channel(lam, std::max(opt.tol, 1e-8));
    if (!rep.isCP || !rep.isTP)
      throw std::invalid_argument("efme: input is not a channel (CP/TP check failed)");
  }
  SystemLabel b0 = lam.in()[0], b1 = lam.out()[0];
  check_ambient_match(lCone, {b0, b1}, "efme");
  double d0 = b0.dim;

  EntropyResult res;
  HermitianOp scaled({b0, b1}, lam.J().mat() / d0);
  {
    Program prog;
    auto g = prog.add_hermitian("gamma", {b0});
    Expr lifted = tensor(prog.var(g), identity_on({b1}));
    cones::emit_dual_membership(lCone, lifted - Expr::constant(scaled.labeled()), prog);
    prog.set_objective(Sense::Minimize, conic::trace(prog.var(g)));
    auto sol = prog.solve(opt.prog);
    if (sol.status != Status::Optimal) {
      res.ok = false;
      res.notes += "primal: " + sol.message + "; ";
    }
    res.primal_linear = sol.value;
    res.optimizer["gamma"] = sol.herm.at("gamma");
  }
  {
    Program prog;
    auto J = prog.add_hermitian("J_psi", {b0, b1});
    cones::free_set_constraints(Level::Channel, lCone, prog.var(J), prog);
    prog.set_objective(Sense::Maximize, conic::inner(scaled.labeled(), prog.var(J)));
    auto sol = prog.solve(opt.prog);
    if (sol.status == Status::Infeasible)
      throw std::runtime_error("efme: the free channel set is empty (dual infeasible)");
    if (sol.status != Status::Optimal) {
      res.ok = false;
      res.notes += "dual: " + sol.message + "; ";
    }
    res.dual_linear = sol.value;
    res.optimizer["J_psi"] = sol.herm.at("J_psi");
  }
  res.primal_bits = -log2_safe(res.primal_linear);
  res.dual_bits = -log2_safe(res.dual_linear);
  res.gap = res.primal_bits - res.dual_bits;
  return res;
}

EntropyResult efcme(const BipartiteChoi& lamAB, const ConeSpec& sCone, const EntropyOptions& opt) {
  SystemLabel a0 = lamAB.a0(), a1 = lamAB.a1(), b0 = lamAB.b0(), b1 = lamAB.b1();
  check_ambient_match(sCone, {a0, a1, b0, b1}, "efcme");
  if (opt.validate) {
    auto rep = validate_channel(lamAB.as_channel(), std::max(opt.tol, 1e-8));
    if (!rep.isCP || !rep.isTP)
      throw std::invalid_argument("efcme: input is not a bipartite channel (CP/TP check failed)");
  }
  double dA0 = a0.dim, dB0 = b0.dim;

  EntropyResult res;
  {
    Program prog;
    auto g = prog.add_hermitian("gamma", {a0, a1, b0});
    Expr ge = prog.var(g);
    Expr lifted = tensor(ge, identity_on({b1}));
    cones::emit_dual_membership(sCone, lifted - Expr::constant(lamAB.J().labeled()), prog);
    // gamma^{A0 B0} = (1/d_{A0}) 1^{A0} (x) gamma^{B0}
    Expr lhs = partial_trace(ge, {a0.name, b0.name});
    LabeledMat eyeA0 = identity_on({a0});
    eyeA0.m /= dA0;
    Expr rhs = tensor(eyeA0, partial_trace(ge, {b0.name}));
    prog.add_equality(lhs, reorder(rhs, {a0.name, b0.name}));
    prog.set_objective(Sense::Minimize, conic::trace(ge));
    auto sol = prog.solve(opt.prog);
    if (sol.status == Status::Infeasible) {
      res.ok = false;
      res.notes += "primal infeasible (marginal factorization could not be met); ";
    } else if (sol.status != Status::Optimal) {
      res.ok = false;
      res.notes += "primal: " + sol.message + "; ";
    }
    res.primal_linear = sol.value;
    if (sol.herm.count("gamma")) res.optimizer["gamma"] = sol.herm.at("gamma");
  }
  {
    Program prog;
    auto J = prog.add_hermitian("J_theta", {a0, a1, b0, b1});
    cones::free_set_constraints(Level::Superchannel, sCone, prog.var(J), prog);
    prog.set_objective(Sense::Maximize, conic::inner(lamAB.J().labeled(), prog.var(J)));
    auto sol = prog.solve(opt.prog);
    if (sol.status == Status::Infeasible)
      throw std::runtime_error("efcme: the free superchannel set is empty (dual infeasible)");
    if (sol.status != Status::Optimal) {
      res.ok = false;
      res.notes += "dual: " + sol.message + "; ";
    }
    res.dual_linear = sol.value;
    res.optimizer["J_theta"] = sol.herm.at("J_theta");
  }
  res.primal_bits = std::log2(dA0 * dB0) - log2_safe(res.primal_linear);
  res.dual_bits = std::log2(dB0) - log2_safe(res.dual_linear);
  res.gap = res.primal_bits - res.dual_bits;
  return res;
}

}  // namespace qrc::entropies
