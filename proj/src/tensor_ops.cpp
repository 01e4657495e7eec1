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

#include "qrc/tensor_ops.hpp"

#include <algorithm>
#include <numeric>

namespace qrc {

namespace {

// Decode a composite row index into per-system indices (first system slowest).
void decode(long idx, const Systems& sys, std::vector<int>& out) {
  out.resize(sys.size());
  for (int k = static_cast<int>(sys.size()) - 1; k >= 0; --k) {
    out[k] = static_cast<int>(idx % sys[k].dim);
    idx /= sys[k].dim;
  }
}

long encode(const std::vector<int>& idx, const Systems& sys) {
  long r = 0;
  for (size_t k = 0; k < sys.size(); ++k) r = r * sys[k].dim + idx[k];
  return r;
}

}  // namespace

LabeledMat identity_on(const Systems& sys) {
  long d = total_dim(sys);
  return LabeledMat(sys, Mat::Identity(d, d));
}

LabeledMat tensor(const LabeledMat& a, const LabeledMat& b) {
  Systems sys = concat(a.systems, b.systems);
  long da = a.dim(), db = b.dim();
  Mat r(da * db, da * db);
  for (long i = 0; i < da; ++i)
    for (long j = 0; j < da; ++j) r.block(i * db, j * db, db, db) = a.m(i, j) * b.m;
  return LabeledMat(std::move(sys), std::move(r));
}

LabeledMat partial_trace(const LabeledMat& x, const std::set<std::string>& keep) {
  for (const auto& n : keep) require_system(x.systems, n);
  Systems kept, traced;
  std::vector<bool> is_kept(x.systems.size());
  for (size_t k = 0; k < x.systems.size(); ++k) {
    is_kept[k] = keep.count(x.systems[k].name) > 0;
    (is_kept[k] ? kept : traced).push_back(x.systems[k]);
  }
  long dk = total_dim(kept), dt = total_dim(traced);
  Mat r = Mat::Zero(dk, dk);
  std::vector<int> idx;
  // Row index of x decomposed, with traced systems forced equal on both sides.
  std::vector<int> row(x.systems.size()), col(x.systems.size());
  std::vector<int> ki, ti;
  for (size_t k = 0; k < x.systems.size(); ++k) (is_kept[k] ? ki : ti).push_back(static_cast<int>(k));
  std::vector<int> kidx, kjdx, tidx;
  for (long i = 0; i < dk; ++i) {
    decode(i, kept, kidx);
    for (long j = 0; j < dk; ++j) {
      decode(j, kept, kjdx);
      Cplx acc = 0.0;
      for (long t = 0; t < dt; ++t) {
        decode(t, traced, tidx);
        for (size_t k = 0; k < ki.size(); ++k) { row[ki[k]] = kidx[k]; col[ki[k]] = kjdx[k]; }
        for (size_t k = 0; k < ti.size(); ++k) { row[ti[k]] = tidx[k]; col[ti[k]] = tidx[k]; }
        acc += x.m(encode(row, x.systems), encode(col, x.systems));
      }
      r(i, j) = acc;
    }
  }
  return LabeledMat(std::move(kept), std::move(r));
}

LabeledMat partial_transpose(const LabeledMat& x, const std::set<std::string>& targets) {
  for (const auto& n : targets) require_system(x.systems, n);
  std::vector<bool> flip(x.systems.size());
  for (size_t k = 0; k < x.systems.size(); ++k) flip[k] = targets.count(x.systems[k].name) > 0;
  long d = x.dim();
  Mat r(d, d);
  std::vector<int> row, col;
  std::vector<int> nrow(x.systems.size()), ncol(x.systems.size());
  for (long i = 0; i < d; ++i) {
    decode(i, x.systems, row);
    for (long j = 0; j < d; ++j) {
      decode(j, x.systems, col);
      for (size_t k = 0; k < x.systems.size(); ++k) {
        nrow[k] = flip[k] ? col[k] : row[k];
        ncol[k] = flip[k] ? row[k] : col[k];
      }
      r(encode(nrow, x.systems), encode(ncol, x.systems)) = x.m(i, j);
    }
  }
  return LabeledMat(x.systems, std::move(r));
}

LabeledMat partial_transpose(const LabeledMat& x, const std::string& target) {
  return partial_transpose(x, std::set<std::string>{target});
}

LabeledMat reorder(const LabeledMat& x, const std::vector<std::string>& names) {
  if (names.size() != x.systems.size())
    throw std::invalid_argument("reorder: name list must cover all systems");
  std::vector<int> perm;
  Systems sys;
  for (const auto& n : names) {
    int k = require_system(x.systems, n);
    perm.push_back(k);
    sys.push_back(x.systems[k]);
  }
  check_unique_names(sys);
  long d = x.dim();
  Mat r(d, d);
  std::vector<int> row, col, nrow(perm.size()), ncol(perm.size());
  for (long i = 0; i < d; ++i) {
    decode(i, x.systems, row);
    for (long j = 0; j < d; ++j) {
      decode(j, x.systems, col);
      for (size_t k = 0; k < perm.size(); ++k) { nrow[k] = row[perm[k]]; ncol[k] = col[perm[k]]; }
      r(encode(nrow, sys), encode(ncol, sys)) = x.m(i, j);
    }
  }
  return LabeledMat(std::move(sys), std::move(r));
}

LabeledMat rename_system(const LabeledMat& x, const std::string& from, const std::string& to) {
  int k = require_system(x.systems, from);
  Systems sys = x.systems;
  sys[k].name = to;
  check_unique_names(sys);
  return LabeledMat(std::move(sys), x.m);
}

LabeledMat max_entangled_unnormalized(int d, const std::string& nameA, const std::string& nameB) {
  if (d < 1) throw std::invalid_argument("max_entangled_unnormalized: d must be >= 1");
  Mat r = Mat::Zero(static_cast<long>(d) * d, static_cast<long>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) r(static_cast<long>(i) * d + i, static_cast<long>(j) * d + j) = 1.0;
  return LabeledMat({{nameA, d}, {nameB, d}}, std::move(r));
}

LabeledMat link(const LabeledMat& x, const LabeledMat& y) {
  // Shared systems by name, with dimension agreement.
  std::vector<std::string> shared;
  for (const auto& s : x.systems) {
    int k = find_system(y.systems, s.name);
    if (k >= 0) {
      if (y.systems[k].dim != s.dim)
        throw std::invalid_argument("link: dimension mismatch on system '" + s.name + "'");
      shared.push_back(s.name);
    }
  }
  Systems xo, yo, sh;
  for (const auto& s : x.systems)
    if (std::find(shared.begin(), shared.end(), s.name) == shared.end()) xo.push_back(s);
  for (const auto& s : y.systems)
    if (std::find(shared.begin(), shared.end(), s.name) == shared.end()) yo.push_back(s);
  for (const auto& n : shared) sh.push_back(x.systems[require_system(x.systems, n)]);

  // Reorder operands to (xo, sh) and (sh, yo).
  std::vector<std::string> xorder, yorder;
  for (const auto& s : xo) xorder.push_back(s.name);
  for (const auto& s : sh) xorder.push_back(s.name);
  for (const auto& s : sh) yorder.push_back(s.name);
  for (const auto& s : yo) yorder.push_back(s.name);
  LabeledMat X = reorder(x, xorder), Y = reorder(y, yorder);

  long dxo = total_dim(xo), dyo = total_dim(yo), ds = total_dim(sh);
  Mat r = Mat::Zero(dxo * dyo, dxo * dyo);
  // result[(a,b),(a',b')] = sum_{s,s'} X[(a,s),(a',s')] Y[(s,b),(s',b')]
  for (long a = 0; a < dxo; ++a)
    for (long ap = 0; ap < dxo; ++ap)
      for (long b = 0; b < dyo; ++b)
        for (long bp = 0; bp < dyo; ++bp) {
          Cplx acc = 0.0;
          for (long s = 0; s < ds; ++s)
            for (long sp = 0; sp < ds; ++sp)
              acc += X.m(a * ds + s, ap * ds + sp) * Y.m(s * dyo + b, sp * dyo + bp);
          r(a * dyo + b, ap * dyo + bp) = acc;
        }
  return LabeledMat(concat(xo, yo), std::move(r));
}

double hermiticity_defect(const Mat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace qrc
