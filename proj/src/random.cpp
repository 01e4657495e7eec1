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

#include "qrc/random.hpp"

namespace qrc {

Mat ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Cplx(n(rng), n(rng));
  return g;
}

Mat random_hermitian(int d, Rng& rng) {
  Mat g = ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint().eval());
}

Mat haar_unitary(int d, Rng& rng) {
  Mat g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  Eigen::VectorXcd ph(d);
  for (int i = 0; i < d; ++i) ph(i) = r(i, i) / std::abs(r(i, i));
  return q * ph.asDiagonal();
}

Mat haar_isometry(int dout, int din, Rng& rng) {
  if (dout < din) throw std::invalid_argument("haar_isometry: dout must be >= din");
  return haar_unitary(dout, rng).leftCols(din);
}

HermitianOp random_state(const Systems& sys, Rng& rng) {
  long d = total_dim(sys);
  Mat g = ginibre(static_cast<int>(d), static_cast<int>(d), rng);
  Mat w = g * g.adjoint();
  w /= w.trace().real();
  return HermitianOp(sys, std::move(w));
}

ChannelChoi random_channel_multi(const Systems& in, const Systems& out, Rng& rng, int env) {
  long din = total_dim(in), dout = total_dim(out);
  if (env <= 0) env = static_cast<int>(din * dout);
  Mat v = haar_isometry(static_cast<int>(dout * env), static_cast<int>(din), rng);
  // Kraus operators K_e = (1 (x) <e|) V.
  KrausSet ks;
  for (int e = 0; e < env; ++e) {
    Mat k(dout, din);
    for (long r = 0; r < dout; ++r) k.row(r) = v.row(r * env + e);
    ks.operators.push_back(std::move(k));
  }
  // Assemble the Choi over possibly-composite systems.
  Mat J = Mat::Zero(din * dout, din * dout);
  for (long i = 0; i < din; ++i)
    for (long j = 0; j < din; ++j) {
      Mat block = Mat::Zero(dout, dout);
      for (const auto& op : ks.operators) block += op.col(i) * op.col(j).adjoint();
      J.block(i * dout, j * dout, dout, dout) = block;
    }
  return ChannelChoi(in, out, HermitianOp(concat(in, out), std::move(J)));
}

ChannelChoi random_channel(const SystemLabel& in, const SystemLabel& out, Rng& rng, int env) {
  return random_channel_multi({in}, {out}, rng, env);
}

KrausSet random_kraus(int din, int dout, int n, Rng& rng) {
  Mat v = haar_isometry(dout * n, din, rng);
  KrausSet ks;
  for (int e = 0; e < n; ++e) {
    Mat k(dout, din);
    for (int r = 0; r < dout; ++r) k.row(r) = v.row(r * n + e);
    ks.operators.push_back(std::move(k));
  }
  return ks;
}

ChannelChoi random_cp_map(const SystemLabel& in, const SystemLabel& out, Rng& rng) {
  long d = static_cast<long>(in.dim) * out.dim;
  Mat g = ginibre(static_cast<int>(d), static_cast<int>(d), rng);
  Mat w = g * g.adjoint();
  w *= static_cast<double>(d) / w.trace().real();
  return ChannelChoi({in}, {out}, HermitianOp({in, out}, std::move(w)));
}

SuperChoi random_superchannel(const SystemLabel& a0, const SystemLabel& a1, const SystemLabel& b0,
                              const SystemLabel& b1, Rng& rng, int e) {
  SystemLabel env{"E", e};
  ChannelChoi pre = random_channel_multi({b0}, {a0, env}, rng);
  ChannelChoi post = random_channel_multi({a1, env}, {b1}, rng);
  return super_choi_from_realization({pre, post, e});
}

ChannelChoi random_classical_channel(const SystemLabel& in, const SystemLabel& out, Rng& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Eigen::MatrixXd p(out.dim, in.dim);
  for (int j = 0; j < in.dim; ++j) {
    double s = 0;
    for (int i = 0; i < out.dim; ++i) {
      p(i, j) = u(rng);
      s += p(i, j);
    }
    p.col(j) /= s;
  }
  KrausSet ks;
  for (int i = 0; i < out.dim; ++i)
    for (int j = 0; j < in.dim; ++j) {
      Mat k = Mat::Zero(out.dim, in.dim);
      k(i, j) = std::sqrt(p(i, j));
      ks.operators.push_back(std::move(k));
    }
  return choi_from_kraus(ks, in, out);
}

SuperChoi random_classical_superchannel(const SystemLabel& a0, const SystemLabel& a1,
                                        const SystemLabel& b0, const SystemLabel& b1, Rng& rng) {
  // Classical pre with classical memory of dimension d_{B0}: copy the input
  // index through E so the post-processing may depend on it.
  int e = b0.dim;
  SystemLabel env{"E", e};
  std::uniform_real_distribution<double> u(0.05, 1.0);

  // pre: B0 -> (A0, E): stochastic map p(a0 | b0), memory keeps b0.
  Eigen::MatrixXd p(a0.dim, b0.dim);
  for (int j = 0; j < b0.dim; ++j) {
    double s = 0;
    for (int i = 0; i < a0.dim; ++i) { p(i, j) = u(rng); s += p(i, j); }
    p.col(j) /= s;
  }
  KrausSet kpre;
  long dpre_out = static_cast<long>(a0.dim) * e;
  for (int i = 0; i < a0.dim; ++i)
    for (int j = 0; j < b0.dim; ++j) {
      Mat k = Mat::Zero(dpre_out, b0.dim);
      k(static_cast<long>(i) * e + j, j) = std::sqrt(p(i, j));
      kpre.operators.push_back(std::move(k));
    }
  Mat Jpre = Mat::Zero(b0.dim * dpre_out, b0.dim * dpre_out);
  for (int i = 0; i < b0.dim; ++i)
    for (int j = 0; j < b0.dim; ++j) {
      Mat block = Mat::Zero(dpre_out, dpre_out);
      for (const auto& op : kpre.operators) block += op.col(i) * op.col(j).adjoint();
      Jpre.block(static_cast<long>(i) * dpre_out, static_cast<long>(j) * dpre_out, dpre_out,
                 dpre_out) = block;
    }
  ChannelChoi pre({b0}, {a0, env}, HermitianOp({b0, a0, env}, std::move(Jpre)));

  // post: (A1, E) -> B1: stochastic q(b1 | a1, e).
  long dpost_in = static_cast<long>(a1.dim) * e;
  Eigen::MatrixXd q(b1.dim, dpost_in);
  for (long j = 0; j < dpost_in; ++j) {
    double s = 0;
    for (int i = 0; i < b1.dim; ++i) { q(i, j) = u(rng); s += q(i, j); }
    q.col(j) /= s;
  }
  KrausSet kpost;
  for (int i = 0; i < b1.dim; ++i)
    for (long j = 0; j < dpost_in; ++j) {
      Mat k = Mat::Zero(b1.dim, dpost_in);
      k(i, j) = std::sqrt(q(i, j));
      kpost.operators.push_back(std::move(k));
    }
  Mat Jpost = Mat::Zero(dpost_in * b1.dim, dpost_in * b1.dim);
  for (long i = 0; i < dpost_in; ++i)
    for (long j = 0; j < dpost_in; ++j) {
      Mat block = Mat::Zero(b1.dim, b1.dim);
      for (const auto& op : kpost.operators) block += op.col(i) * op.col(j).adjoint();
      Jpost.block(i * b1.dim, j * b1.dim, b1.dim, b1.dim) = block;
    }
  ChannelChoi post({a1, env}, {b1}, HermitianOp({a1, env, b1}, std::move(Jpost)));

  return super_choi_from_realization({pre, post, e});
}

SuperChoi random_unitary_superchannel(const SystemLabel& a0, const SystemLabel& a1,
                                      const SystemLabel& b0, const SystemLabel& b1, Rng& rng) {
  if (b0.dim != a0.dim || a1.dim != b1.dim)
    throw std::invalid_argument("random_unitary_superchannel: dims must match slotwise");
  SystemLabel env{"E", 1};
  Mat u = haar_unitary(a0.dim, rng), v = haar_unitary(b1.dim, rng);
  KrausSet kpre, kpost;
  kpre.operators.push_back(u);
  kpost.operators.push_back(v);
  ChannelChoi pre0 = choi_from_kraus(kpre, b0, a0);
  ChannelChoi post0 = choi_from_kraus(kpost, a1, b1);
  // Reshape to the realization signature with a trivial memory system.
  HermitianOp jpre(concat({b0}, {a0, env}), pre0.J().mat());
  HermitianOp jpost(concat({a1, env}, {b1}), post0.J().mat());
  ChannelChoi pre({b0}, {a0, env}, std::move(jpre));
  ChannelChoi post({a1, env}, {b1}, std::move(jpost));
  return super_choi_from_realization({pre, post, 1});
}

}  // namespace qrc
