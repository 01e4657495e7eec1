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

#include "qrc/analytics.hpp"

#include <cmath>

namespace qrc::analytics {

using conic::Expr;
using conic::Program;
using conic::Sense;
using conic::Status;
using cones::ConeSpec;
using cones::Level;
using cones::Role;
using entropies::EntropyOptions;

RobustnessResult robustness(const ChannelChoi& lam, const ConeSpec& lCone,
                            const EntropyOptions& opt) {
  if (lam.in().size() != 1 || lam.out().size() != 1)
    throw std::invalid_argument("robustness: a single-system channel is required");
  if (opt.validate) {
    auto rep = validate_channel(lam, std::max(opt.tol, 1e-8));
    if (!rep.isCP || !rep.isTP)
      throw std::invalid_argument("robustness: input is not a channel");
  }
  SystemLabel a0 = lam.in()[0], a1 = lam.out()[0];
  if (cones::level_of(lCone) != Level::Channel)
    throw std::invalid_argument("robustness: channel-level cone required");
  double d0 = a0.dim;

  RobustnessResult res;
  {
    Program prog;
    auto g = prog.add_hermitian("gamma", {a0, a1});
    Expr ge = prog.var(g);
    cones::emit_membership(lCone, ge, prog);
    prog.add_psd(ge - Expr::constant(lam.J().labeled()));
    // gamma^{A0} = (Tr gamma / d0) 1^{A0}
    LabeledMat eyeA0 = identity_on({a0});
    Expr lhs = partial_trace(ge, {a0.name});
    Expr rhs = conic::scale_matrix(conic::trace(ge) * (1.0 / d0), eyeA0);
    prog.add_equality(lhs, rhs);
    prog.set_objective(Sense::Minimize, conic::trace(ge));
    auto sol = prog.solve(opt.prog);
    if (sol.status == Status::Infeasible)
      throw std::runtime_error("robustness: the free channel set is empty");
    if (sol.status != Status::Optimal) {
      res.ok = false;
      res.notes += "primal: " + sol.message + "; ";
    }
    res.R = sol.value / d0 - 1.0;
    res.gammaStar = HermitianOp({a0, a1}, sol.herm.at("gamma"));
  }
  {
    Program prog;
    auto al = prog.add_hermitian("alpha", {a0, a1});
    auto be = prog.add_hermitian("beta", {a0});
    prog.add_psd(prog.var(al));
    prog.add_equality(conic::trace(prog.var(be)), d0);
    cones::emit_dual_membership(lCone, tensor(prog.var(be), identity_on({a1})) - prog.var(al),
                                prog);
    prog.set_objective(Sense::Maximize, conic::inner(lam.J().labeled(), prog.var(al)));
    auto sol = prog.solve(opt.prog);
    if (sol.status != Status::Optimal) {
      res.ok = false;
      res.notes += "dual: " + sol.message + "; ";
    }
    double Rd = sol.value / d0 - 1.0;
    res.gap = res.R - Rd;
    res.alphaStar = HermitianOp({a0, a1}, sol.herm.at("alpha"));
    res.betaStar = HermitianOp({a0}, sol.herm.at("beta"));
  }
  return res;
}

RobustnessResult robustness(const HermitianOp& rho, const ConeSpec& fCone,
                            const EntropyOptions& opt) {
  if (opt.validate) {
    if (rho.min_eigenvalue() < -opt.tol || std::abs(rho.trace() - 1.0) > 1e-8)
      throw std::invalid_argument("robustness: input is not a state");
  }
  if (cones::level_of(fCone) != Level::State)
    throw std::invalid_argument("robustness(state): state-level cone required");

  RobustnessResult res;
  {
    Program prog;
    auto g = prog.add_hermitian("gamma", rho.systems());
    Expr ge = prog.var(g);
    cones::emit_membership(fCone, ge, prog);
    prog.add_psd(ge - Expr::constant(rho.labeled()));
    prog.set_objective(Sense::Minimize, conic::trace(ge));
    auto sol = prog.solve(opt.prog);
    if (sol.status == Status::Infeasible)
      throw std::runtime_error("robustness: the free state set is empty");
    if (sol.status != Status::Optimal) {
      res.ok = false;
      res.notes += "primal: " + sol.message + "; ";
    }
    res.R = sol.value - 1.0;
    res.gammaStar = HermitianOp(rho.systems(), sol.herm.at("gamma"));
  }
  {
    // Trivial-input specialization of the channel dual: beta is the scalar 1.
    Program prog;
    auto al = prog.add_hermitian("alpha", rho.systems());
    prog.add_psd(prog.var(al));
    cones::emit_dual_membership(
        fCone, Expr::constant(identity_on(rho.systems())) - prog.var(al), prog);
    prog.set_objective(Sense::Maximize, conic::inner(rho.labeled(), prog.var(al)));
    auto sol = prog.solve(opt.prog);
    if (sol.status != Status::Optimal) {
      res.ok = false;
      res.notes += "dual: " + sol.message + "; ";
    }
    res.gap = res.R - (sol.value - 1.0);
    res.alphaStar = HermitianOp(rho.systems(), sol.herm.at("alpha"));
    res.betaStar = HermitianOp(Systems{}, Mat::Identity(1, 1));
  }
  return res;
}

MutualInfoResult mutual_info(const ChannelChoi& obj, const ChannelChoi& partner,
                             const ConeSpec& sCone, const EntropyOptions& opt) {
  if (cones::level_of(sCone) != Level::Superchannel)
    throw std::invalid_argument("mutual_info: supermap-level cone required");
  BipartiteChoi prod = BipartiteChoi::product(obj, partner);
  ChannelChoi marg = marginal_channel(prod);
  ConeSpec lCone = cones::family_at(sCone, {prod.b0(), prod.b1()}, {Role::B0, Role::B1});

  MutualInfoResult res;
  auto hfree = entropies::efme(marg, lCone, opt);
  auto hcond = entropies::efcme(prod, sCone, opt);
  res.h_free_bits = hfree.dual_bits;
  res.h_cond_bits = hcond.dual_bits;
  res.bits = res.h_free_bits - res.h_cond_bits;
  res.ok = hfree.ok && hcond.ok;
  return res;
}

MutualInfoResult mutual_info(const HermitianOp& obj, const HermitianOp& partner,
                             const ConeSpec& oCone, const EntropyOptions& opt) {
  if (cones::level_of(oCone) != Level::Operation)
    throw std::invalid_argument("mutual_info(static): operation-level cone required");
  HermitianOp prod = tensor_product(obj, partner);
  Systems b1 = {partner.systems()[0]};
  ConeSpec fCone = cones::family_at(oCone, b1, {Role::B1});

  MutualInfoResult res;
  auto hfree = entropies::fme(partner, fCone, opt);
  auto hcond = entropies::fcme(prod, obj.systems()[0].name, oCone, opt);
  res.h_free_bits = hfree.dual_bits;
  res.h_cond_bits = hcond.dual_bits;
  res.bits = res.h_free_bits - res.h_cond_bits;
  res.ok = hfree.ok && hcond.ok;
  return res;
}

Theorem1Report theorem1_check(const ChannelChoi& lam, const ConeSpec& lCone, int nSamples,
                              Rng& rng, const EntropyOptions& opt, bool sample_tp_only,
                              double eq_tol, double ineq_tol) {
  Theorem1Report rep;
  SystemLabel a0 = lam.in()[0], a1 = lam.out()[0];
  SystemLabel t0{a0.name + "t", a0.dim}, t1{a1.name + "t", a1.dim};
  ConeSpec sCone = cones::family_at(lCone, {a0, a1, t0, t1},
                                    {Role::A0, Role::A1, Role::B0, Role::B1});

  auto rob = robustness(lam, lCone, opt);
  rep.R = rob.R;
  rep.ok = rob.ok;
  rep.log1pR_bits = std::log2(1.0 + std::max(0.0, rob.R));

  // (D1) at the tuple used by the mutual-information maximization.
  SuperChoi id = identity_supermap(a0, a1, t0, t1);
  rep.d1_holds = cones::membership_residual(sCone, id.J().labeled()) <= 1e-8;

  EntropyOptions inner = opt;
  inner.validate = false;  // the maximizer is CP but not trace preserving

  // The appendix argument identifies the maximizer as the robustness dual
  // optimizer; project it to the PSD cone before use as a Choi operator.
  Mat alphaClipped = clip_psd(rob.alphaStar.mat());
  ChannelChoi omegaStar({t0}, {t1}, HermitianOp({t0, t1}, alphaClipped));
  auto mi = mutual_info(lam, omegaStar, sCone, inner);
  rep.I_at_alpha_bits = mi.bits;
  rep.equality_residual = std::abs(mi.bits - rep.log1pR_bits);
  rep.equality_ok = rep.equality_residual <= eq_tol;
  if (!rep.d1_holds)
    rep.notes +=
        "identity supermap is not free under this family; the attainment "
        "argument does not apply and the equality is reported, not asserted; ";

  rep.samples = nSamples;
  for (int k = 0; k < nSamples; ++k) {
    ChannelChoi omega = sample_tp_only ? random_channel(t0, t1, rng)
                                       : random_cp_map(t0, t1, rng);
    auto m = mutual_info(lam, omega, sCone, inner);
    double excess = m.bits - rep.log1pR_bits;
    rep.worst_excess = std::max(rep.worst_excess, excess);
    if (excess <= ineq_tol) rep.inequality_passed++;
  }
  return rep;
}

}  // namespace qrc::analytics
