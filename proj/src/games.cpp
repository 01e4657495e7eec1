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

#include "qrc/games.hpp"

#include <mutex>

namespace qrc::games {

using conic::Expr;
using conic::Program;
using conic::Sense;
using conic::Status;
using cones::ConeSpec;
using cones::Level;
using cones::Role;
using entropies::EntropyOptions;

void validate_game(const GameSpec& g, double tol) {
  if (g.ensemble.empty()) throw std::invalid_argument("game: empty ensemble");
  double ptotal = 0;
  for (const auto& t : g.ensemble) {
    if (t.rows() != g.b0.dim) throw std::invalid_argument("game: ensemble dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Mat> es(t, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol)
      throw std::invalid_argument("game: ensemble element is not PSD");
    double p = t.trace().real();
    if (p <= 0 || p > 1 + tol)
      throw std::invalid_argument("game: ensemble element weight outside (0, 1]");
    ptotal += p;
  }
  if (std::abs(ptotal - 1.0) > 1e-8)
    throw std::invalid_argument("game: ensemble weights must sum to one");
  if (g.povm.size() < g.ensemble.size())
    throw std::invalid_argument("game: POVM must cover every index");
  Mat sum = Mat::Zero(g.b1.dim, g.b1.dim);
  for (const auto& n : g.povm) {
    if (n.rows() != g.b1.dim) throw std::invalid_argument("game: POVM dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Mat> es(n, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol)
      throw std::invalid_argument("game: POVM element is not PSD");
    sum += n;
  }
  if ((sum - Mat::Identity(g.b1.dim, g.b1.dim)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("game: POVM does not sum to the identity");
}

const ICPovm& ic_povm(int d) {
  static std::mutex mu;
  static std::map<int, ICPovm> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  if (d < 1) throw std::invalid_argument("ic_povm: dimension must be positive");

  std::vector<Mat> projectors;
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    v(i) = 1.0;
    projectors.push_back(v * v.adjoint());
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Eigen::VectorXcd vp = Eigen::VectorXcd::Zero(d), vi = Eigen::VectorXcd::Zero(d);
      vp(i) = vp(j) = 1.0 / std::sqrt(2.0);
      vi(i) = 1.0 / std::sqrt(2.0);
      vi(j) = Cplx(0, 1.0 / std::sqrt(2.0));
      projectors.push_back(vp * vp.adjoint());
      projectors.push_back(vi * vi.adjoint());
    }

  Mat S = Mat::Zero(d, d);
  for (const auto& p : projectors) S += p;
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  Mat sInvHalf = es.eigenvectors() *
                 es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal().toDenseMatrix().cast<Cplx>() *
                 es.eigenvectors().adjoint();

  ICPovm m;
  m.dim = d;
  for (const auto& p : projectors) m.elements.push_back(sInvHalf * p * sInvHalf);
  // Span rank through the Gram matrix of the elements.
  int n = static_cast<int>(m.elements.size());
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram(i, j) = (m.elements[i] * m.elements[j]).trace().real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eg(gram, Eigen::EigenvaluesOnly);
  m.spanRank = (eg.eigenvalues().array() > 1e-10).count();
  return cache.emplace(d, std::move(m)).first->second;
}

std::vector<Mat> ic_dual_basis(const ICPovm& m) {
  int n = static_cast<int>(m.elements.size());
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram(i, j) = (m.elements[i] * m.elements[j]).trace().real();
  Eigen::MatrixXd ginv = gram.inverse();
  std::vector<Mat> dual;
  for (int k = 0; k < n; ++k) {
    Mat dk = Mat::Zero(m.dim, m.dim);
    for (int l = 0; l < n; ++l) dk += ginv(k, l) * m.elements[l];
    dual.push_back(std::move(dk));
  }
  return dual;
}

std::vector<Mat> canonical_ensemble(const ICPovm& m) {
  std::vector<Mat> tau;
  for (const auto& mk : m.elements) tau.push_back(mk.transpose() / static_cast<double>(m.dim));
  return tau;
}

GameSpec game_from_states(const SystemLabel& b0, const SystemLabel& b1,
                          const std::vector<Mat>& sigma) {
  const ICPovm& m = ic_povm(b0.dim);
  if (sigma.size() != m.elements.size())
    throw std::invalid_argument("game_from_states: one prepared state per POVM element required");
  GameSpec g;
  g.b0 = b0;
  g.b1 = b1;
  g.ensemble = canonical_ensemble(m);
  double d0sq = static_cast<double>(b0.dim) * b0.dim;
  Mat abstain = Mat::Identity(b1.dim, b1.dim);
  for (const auto& s : sigma) {
    g.povm.push_back(s.transpose() / d0sq);
    abstain -= g.povm.back();
  }
  g.povm.push_back(std::move(abstain));
  g.abstain_index = static_cast<int>(g.povm.size()) - 1;
  return g;
}

namespace {

// The winning probability is linear in the superchannel Choi operator:
//   sum_k Tr[N_k Theta{Lam}[tau_k]] = Tr[(J_Lam^T (x) sum_k tau_k^T (x) N_k) J_Theta].
LabeledMat game_objective(const ChannelChoi& lam, const GameSpec& g, const ConeSpec& sCone) {
  Systems a0 = sCone.systems_with_role(Role::A0), a1 = sCone.systems_with_role(Role::A1),
          b0 = sCone.systems_with_role(Role::B0), b1 = sCone.systems_with_role(Role::B1);
  if (a0.size() != 1 || a1.size() != 1 || b0.size() != 1 || b1.size() != 1)
    throw std::invalid_argument("game_value: one system per role required in the cone");
  if (lam.din() != a0[0].dim || lam.dout() != a1[0].dim)
    throw std::invalid_argument("game_value: channel dims do not match the cone's input slot");
  if (g.b0.dim != b0[0].dim || g.b1.dim != b1[0].dim)
    throw std::invalid_argument("game_value: game dims do not match the cone's output slot");

  Mat gB = Mat::Zero(static_cast<long>(g.b0.dim) * g.b1.dim, static_cast<long>(g.b0.dim) * g.b1.dim);
  for (int k = 0; k < g.num_indices(); ++k) {
    LabeledMat tk({b0[0]}, g.ensemble[k].transpose());
    LabeledMat nk({b1[0]}, g.povm[k]);
    gB += tensor(tk, nk).m;
  }
  LabeledMat jlamT({a0[0], a1[0]}, lam.J().mat().transpose());
  LabeledMat obj = tensor(jlamT, LabeledMat({b0[0], b1[0]}, gB));
  std::vector<std::string> order;
  for (const auto& s : sCone.ambient()) order.push_back(s.name);
  return reorder(obj, order);
}

}  // namespace

GameValueResult game_value(const ChannelChoi& lam, const GameSpec& g, const ConeSpec& sCone,
                           const EntropyOptions& opt) {
  validate_game(g, std::max(opt.tol, 1e-9));
  LabeledMat obj = game_objective(lam, g, sCone);

  Program prog;
  auto J = prog.add_hermitian("J_theta", sCone.ambient());
  cones::free_set_constraints(Level::Superchannel, sCone, prog.var(J), prog);
  prog.set_objective(Sense::Maximize, conic::inner(obj, prog.var(J)));
  auto sol = prog.solve(opt.prog);
  GameValueResult res;
  if (sol.status == Status::Infeasible)
    throw std::runtime_error("game_value: the free superchannel set is empty");
  if (sol.status != Status::Optimal) {
    res.ok = false;
    res.notes = sol.message;
  }
  res.value = sol.value;
  Systems a0 = sCone.systems_with_role(Role::A0), a1 = sCone.systems_with_role(Role::A1),
          b0 = sCone.systems_with_role(Role::B0), b1 = sCone.systems_with_role(Role::B1);
  res.optimal = SuperChoi(a0[0], a1[0], b0[0], b1[0],
                          HermitianOp(sCone.ambient(), sol.herm.at("J_theta")));
  return res;
}

namespace {

// Conditional min-entropy (in bits) of a bipartite channel from the dual
// program only; used in bulk monotone checks where the duality gap is
// certified elsewhere.
double efcme_dual_bits(const BipartiteChoi& lamAB, const ConeSpec& sCone,
                       const EntropyOptions& opt) {
  Program prog;
  auto J = prog.add_hermitian("J_theta", sCone.ambient());
  cones::free_set_constraints(Level::Superchannel, sCone, prog.var(J), prog);
  prog.set_objective(Sense::Maximize, conic::inner(lamAB.J().labeled(), prog.var(J)));
  auto sol = prog.solve(opt.prog);
  if (sol.status == Status::Infeasible)
    throw std::runtime_error("efcme: the free superchannel set is empty");
  return std::log2(static_cast<double>(lamAB.b0().dim)) - std::log2(sol.value);
}

ChannelChoi measure_prepare_channel(const SystemLabel& b0, const SystemLabel& b1,
                                    const std::vector<Mat>& states) {
  const ICPovm& m = ic_povm(b0.dim);
  Mat J = Mat::Zero(static_cast<long>(b0.dim) * b1.dim, static_cast<long>(b0.dim) * b1.dim);
  for (size_t k = 0; k < states.size(); ++k) {
    LabeledMat mt({b0}, m.elements[k].transpose());
    LabeledMat sk({b1}, states[k]);
    J += tensor(mt, sk).m;
  }
  return ChannelChoi({b0}, {b1}, HermitianOp({b0, b1}, std::move(J)));
}

}  // namespace

ConvertResult convert_feasible(const ChannelChoi& lam, const ChannelChoi& psi,
                               const ConeSpec& sCone, const EntropyOptions& opt) {
  ConvertResult res;
  Systems a0s = sCone.systems_with_role(Role::A0), a1s = sCone.systems_with_role(Role::A1),
          b0s = sCone.systems_with_role(Role::B0), b1s = sCone.systems_with_role(Role::B1);
  if (a0s.size() != 1 || a1s.size() != 1 || b0s.size() != 1 || b1s.size() != 1)
    throw std::invalid_argument("convert_feasible: one system per role required");
  SystemLabel a0 = a0s[0], a1 = a1s[0], b0 = b0s[0], b1 = b1s[0];
  if (lam.din() != a0.dim || lam.dout() != a1.dim || psi.din() != b0.dim || psi.dout() != b1.dim)
    throw std::invalid_argument("convert_feasible: channel dims do not match the cone tuple");
  if (opt.validate) {
    auto r1 = validate_channel(lam, 1e-8), r2 = validate_channel(psi, 1e-8);
    if (!r1.isCP || !r1.isTP || !r2.isCP || !r2.isTP)
      throw std::invalid_argument("convert_feasible: inputs must be channels");
  }

  LabeledMat jlam = lam.J().labeled();
  if (jlam.systems[0].name != a0.name) jlam = rename_system(jlam, jlam.systems[0].name, a0.name);
  if (jlam.systems[1].name != a1.name) jlam = rename_system(jlam, jlam.systems[1].name, a1.name);
  LabeledMat jpsi = psi.J().labeled();
  if (jpsi.systems[0].name != b0.name) jpsi = rename_system(jpsi, jpsi.systems[0].name, b0.name);
  if (jpsi.systems[1].name != b1.name) jpsi = rename_system(jpsi, jpsi.systems[1].name, b1.name);

  const double feas_tol = 1e-7;

  // Phase 1: nearest-reachable program  min_t || Theta{Lam} - Psi ||_inf.
  {
    Program prog;
    auto J = prog.add_hermitian("J_theta", sCone.ambient());
    auto t = prog.add_scalar("t", true);
    cones::free_set_constraints(Level::Superchannel, sCone, prog.var(J), prog);
    Expr reach = conic::link_const(jlam, prog.var(J));  // over (B0, B1)
    Expr diff = reach - Expr::constant(jpsi);
    LabeledMat eyeB = identity_on({b0, b1});
    prog.add_psd(conic::scale_matrix(prog.svar(t), eyeB) - diff);
    prog.add_psd(conic::scale_matrix(prog.svar(t), eyeB) + diff);
    prog.set_objective(Sense::Minimize, prog.svar(t));
    auto sol = prog.solve(opt.prog);
    if (sol.status == Status::Infeasible) {
      res.status = Convertibility::Undetermined;
      res.notes = "free superchannel set is empty";
      return res;
    }
    if (sol.status == Status::Optimal && sol.value <= feas_tol) {
      SuperChoi theta(a0, a1, b0, b1, HermitianOp(sCone.ambient(), sol.herm.at("J_theta")));
      ChannelChoi mapped = apply_super(theta, lam);
      double resid = (mapped.J().mat() - jpsi.m).cwiseAbs().maxCoeff();
      double fres = cones::free_set_residual(Level::Superchannel, sCone,
                                             theta.J().labeled(), opt.prog);
      if (resid <= feas_tol && fres <= 1e-6) {
        res.status = Convertibility::Feasible;
        res.theta = std::move(theta);
        res.residual = resid;
        return res;
      }
      res.notes = "distance solve passed but the certificate failed re-validation; ";
    }
    if (sol.status != Status::Optimal)
      res.notes += "distance solve: " + sol.message + "; ";
  }

  // Phase 2: explicit separation program over the span-of-channels space,
  //   max <J_psi, W> - <y1, 1>   s.t.  Ldag(y) - J_lam^T (x) W  in  cone*,
  //   Tr_{B1} W = lambda 1,  -1 <= W <= 1.
  {
    Program prog;
    auto Wv = prog.add_hermitian("W", {b0, b1});
    auto lamscale = prog.add_scalar("lambda");
    auto y1 = prog.add_hermitian("y1", {a1, b0});
    auto y2 = prog.add_hermitian("y2", {a0, a1, b0});
    Expr We = prog.var(Wv);

    // C^B membership: Tr_{B1} W = lambda 1.
    prog.add_equality(partial_trace(We, {b0.name}),
                      conic::scale_matrix(prog.svar(lamscale), identity_on({b0})));
    // Normalization ball.
    LabeledMat eyeB = identity_on({b0, b1});
    prog.add_psd(Expr::constant(eyeB) - We);
    prog.add_psd(Expr::constant(eyeB) + We);

    // Ldag(y1, y2) over (A0, A1, B0, B1).
    Expr ins1 = tensor(identity_on({a0}), tensor(prog.var(y1), identity_on({b1})));
    ins1 = reorder(ins1, {a0.name, a1.name, b0.name, b1.name});
    Expr term2 = tensor(prog.var(y2), identity_on({b1}));
    Expr tr_y2 = partial_trace(prog.var(y2), {a0.name, b0.name});
    Expr ins3 = tensor(identity_on({a1}), tensor(tr_y2, identity_on({b1})));
    ins3 = reorder(ins3, {a0.name, a1.name, b0.name, b1.name}) * (1.0 / a1.dim);
    Expr ldag = ins1 + term2 - ins3;

    LabeledMat jlamT = jlam;
    jlamT.m = jlamT.m.transpose().eval();
    Expr kw = tensor(jlamT, We);
    cones::emit_dual_membership(sCone, ldag - kw, prog);
    prog.set_objective(Sense::Maximize,
                       conic::inner(jpsi, We) - conic::trace(prog.var(y1)));
    auto sol = prog.solve(opt.prog);
    if (sol.status != Status::Optimal) {
      res.status = Convertibility::Undetermined;
      res.notes += "separation solve: " + sol.message;
      return res;
    }
    res.separation_bound = sol.value;
    if (sol.value > feas_tol) {
      res.status = Convertibility::Infeasible;
      res.hyperplane = HermitianOp({b0, b1}, sol.herm.at("W"));
      return res;
    }
    res.status = Convertibility::Undetermined;
    res.notes += "neither an exact conversion nor a strict separation was certified";
  }
  return res;
}

MonotoneReport monotone_check(const ChannelChoi& lam, const ChannelChoi& psi,
                              const ConeSpec& sConeForPairs, MonotoneFamily family, int nSamples,
                              Rng& rng, const EntropyOptions& opt, double tol) {
  MonotoneReport rep;
  SystemLabel a0 = lam.in()[0], a1 = lam.out()[0];
  SystemLabel b0 = psi.in()[0], b1 = psi.out()[0];
  SystemLabel t0{b0.name + "t", b0.dim}, t1{b1.name + "t", b1.dim};

  ConeSpec coneLam = cones::family_at(sConeForPairs, {a0, a1, t0, t1},
                                      {Role::A0, Role::A1, Role::B0, Role::B1});
  ConeSpec conePsi = cones::family_at(sConeForPairs, {b0, b1, t0, t1},
                                      {Role::A0, Role::A1, Role::B0, Role::B1});

  for (int k = 0; k < nSamples; ++k) {
    ChannelChoi omega = [&] {
      if (family == MonotoneFamily::C2Sampled) return random_channel(t0, t1, rng);
      const ICPovm& m = ic_povm(t0.dim);
      std::vector<Mat> sigma;
      for (size_t i = 0; i < m.elements.size(); ++i)
        sigma.push_back(random_state({{"s", t1.dim}}, rng).mat());
      return measure_prepare_channel(t0, t1, sigma);
    }();
    double hLam = efcme_dual_bits(BipartiteChoi::product(lam, omega), coneLam, opt);
    double hPsi = efcme_dual_bits(BipartiteChoi::product(psi, omega), conePsi, opt);
    double violation = hLam - hPsi;
    rep.total++;
    rep.worstViolation = std::max(rep.worstViolation, violation);
    if (violation <= tol) rep.passed++;
  }
  rep.ok = rep.passed == rep.total;
  return rep;
}

WitnessReport witness_extract(const ChannelChoi& lam, const ChannelChoi& psi,
                              const ConeSpec& sCone, const ConvertResult& cv,
                              const EntropyOptions& opt) {
  if (cv.status != Convertibility::Infeasible || !cv.hyperplane)
    throw std::invalid_argument(
        "witness_extract: requires an infeasibility certificate from convert_feasible");
  SystemLabel b0 = psi.in()[0], b1 = psi.out()[0];
  double d0 = b0.dim, d1 = b1.dim;

  WitnessReport rep;
  // Re-project the hyperplane onto the span-of-channels subspace exactly.
  HermitianOp W = *cv.hyperplane;
  double lambda = W.trace() / (d0 * d1);
  {
    LabeledMat trB1 = partial_trace(W.labeled(), {b0.name});
    Mat defect = trB1.m - lambda * Mat::Identity(b0.dim, b0.dim);
    LabeledMat corr = tensor(LabeledMat({b0}, defect / d1), identity_on({b1}));
    W = HermitianOp(W.systems(), W.mat() - corr.m);
  }
  rep.hyperplane = W;
  rep.lambda = lambda;

  // Channel-ize the conjugate map by mixing with the uniform channel.
  Mat V = W.mat().transpose();
  Eigen::SelfAdjointEigenSolver<Mat> ev(V, Eigen::EigenvaluesOnly);
  double mu1 = std::max(0.0, -ev.eigenvalues().minCoeff()) + 1e-9;
  if (mu1 * d1 + lambda < 1e-9) mu1 += (1e-9 - (mu1 * d1 + lambda)) / d1 + 1e-12;
  double s1 = mu1 * d1 + lambda;
  Mat jOmega = (mu1 * Mat::Identity(V.rows(), V.cols()) + V) / s1;
  ChannelChoi omega({b0}, {b1}, HermitianOp({b0, b1}, jOmega));

  // Expand in the informationally complete POVM and shift to proper states.
  const ICPovm& m = ic_povm(b0.dim);
  auto dual = ic_dual_basis(m);
  std::vector<Mat> xi;
  double worstNeg = 0;
  for (const auto& dk : dual) {
    HermitianOp dkOp({b0}, dk);
    Mat x = apply_choi(omega, dkOp).mat();
    Eigen::SelfAdjointEigenSolver<Mat> ex(x, Eigen::EigenvaluesOnly);
    worstNeg = std::max(worstNeg, -ex.eigenvalues().minCoeff());
    xi.push_back(std::move(x));
  }
  rep.mu = std::max(0.0, worstNeg) + 1e-9;
  std::vector<Mat> sigma;
  for (const auto& x : xi)
    sigma.push_back((rep.mu * Mat::Identity(b1.dim, b1.dim) + x) / (rep.mu * d1 + 1.0));

  rep.omegaMP = measure_prepare_channel(b0, b1, sigma);
  rep.game = game_from_states(b0, b1, sigma);

  // Certify by two independent game solves.
  ConeSpec coneLam = sCone;
  SystemLabel p0{b0.name + "p", b0.dim}, p1{b1.name + "p", b1.dim};
  ConeSpec conePsi = cones::family_at(sCone, {p0, p1, b0, b1},
                                      {Role::A0, Role::A1, Role::B0, Role::B1});
  rep.pLam = game_value(lam, rep.game, coneLam, opt).value;
  rep.pPsi = game_value(psi, rep.game, conePsi, opt).value;
  rep.separation = rep.pPsi - rep.pLam;
  rep.conclusive = rep.separation > 1e-7;
  if (!rep.conclusive)
    rep.notes =
        "separation not certified by the game pair; for families without a "
        "free identity supermap the index-preservation game may be unable to "
        "witness the hyperplane separation";
  return rep;
}

}  // namespace qrc::games
