// SPDX-License-Identifier: Apache-2.0
#include "qsm/linalg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace qsm {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

PureState tensor(const PureState& a, const PureState& b) {
  const Index db = b.dim();
  Vec amp(a.dim() * db);
  for (Index i = 0; i < a.dim(); ++i)
    amp.segment(i * db, db) = a.amp[i] * b.amp;
  return PureState(std::move(amp), a.layout.concat(b.layout),
                   a.subnormalized || b.subnormalized);
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(kron(a.mat, b.mat), a.layout.concat(b.layout),
                         a.subnormalized || b.subnormalized);
}

PureState tensor_power_grouped(const PureState& psi, int n) {
  if (n < 1) throw invalid_input("tensor power needs n >= 1");
  const auto& parts = psi.layout.parts();
  const std::size_t m = parts.size();

  std::vector<Subsystem> grouped(m);
  for (std::size_t s = 0; s < m; ++s) {
    Index dn = 1;
    for (int i = 0; i < n; ++i) dn *= parts[s].dim;
    grouped[s] = {parts[s].label, dn};
  }
  SubsystemLayout out_layout{std::vector<Subsystem>(grouped)};

  const std::vector<Index> in_strides = psi.layout.strides();
  const Index total = out_layout.total_dim();
  Vec amp(total);
  std::vector<Index> gdigit(m);
  // copy_digit[s][i]: digit of copy i within grouped subsystem s.
  std::vector<std::vector<Index>> copy_digit(m, std::vector<Index>(n));
  for (Index flat = 0; flat < total; ++flat) {
    out_layout.unravel(flat, gdigit);
    for (std::size_t s = 0; s < m; ++s) {
      Index g = gdigit[s];
      for (int i = n; i-- > 0;) {
        copy_digit[s][i] = g % parts[s].dim;
        g /= parts[s].dim;
      }
    }
    cxd v = 1.0;
    for (int i = 0; i < n; ++i) {
      Index single = 0;
      for (std::size_t s = 0; s < m; ++s) single += copy_digit[s][i] * in_strides[s];
      v *= psi.amp[single];
    }
    amp[flat] = v;
  }
  return PureState(std::move(amp), std::move(out_layout), psi.subnormalized);
}

namespace {

// Map from old flat index to new flat index for a label reordering.
std::vector<Index> permutation_map(const SubsystemLayout& from,
                                   const std::vector<std::string>& order) {
  if (order.size() != from.size())
    throw invalid_input("permutation must list every label exactly once");
  SubsystemLayout to = from.select(order);
  const auto to_strides = to.strides();
  // new stride attached to each old position
  std::vector<Index> stride_of_old(from.size());
  for (std::size_t k = 0; k < order.size(); ++k)
    stride_of_old[from.position(order[k])] = to_strides[k];

  const Index total = from.total_dim();
  std::vector<Index> map(static_cast<std::size_t>(total));
  std::vector<Index> digits;
  for (Index flat = 0; flat < total; ++flat) {
    from.unravel(flat, digits);
    Index nf = 0;
    for (std::size_t s = 0; s < digits.size(); ++s) nf += digits[s] * stride_of_old[s];
    map[static_cast<std::size_t>(flat)] = nf;
  }
  return map;
}

}  // namespace

PureState permute_subsystems(const PureState& psi, const std::vector<std::string>& order) {
  const auto map = permutation_map(psi.layout, order);
  Vec amp(psi.dim());
  for (Index i = 0; i < psi.dim(); ++i) amp[map[static_cast<std::size_t>(i)]] = psi.amp[i];
  return PureState(std::move(amp), psi.layout.select(order), psi.subnormalized);
}

DensityOperator permute_subsystems(const DensityOperator& rho,
                                   const std::vector<std::string>& order) {
  const auto map = permutation_map(rho.layout, order);
  Mat m(rho.dim(), rho.dim());
  for (Index i = 0; i < rho.dim(); ++i) {
    const Index pi = map[static_cast<std::size_t>(i)];
    for (Index j = 0; j < rho.dim(); ++j)
      m(pi, map[static_cast<std::size_t>(j)]) = rho.mat(i, j);
  }
  return DensityOperator(std::move(m), rho.layout.select(order), rho.subnormalized);
}

Mat reshape_group_first(const PureState& psi, const std::vector<std::string>& group) {
  std::vector<std::string> order = group;
  const auto rest = psi.layout.labels_except(group);
  order.insert(order.end(), rest.begin(), rest.end());
  PureState p = permute_subsystems(psi, order);
  const Index rows = psi.layout.dim_of(group);
  const Index cols = p.dim() / rows;
  Mat m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = p.amp[r * cols + c];
  return m;
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& keep) {
  std::vector<std::string> order = keep;
  const auto rest = rho.layout.labels_except(keep);
  order.insert(order.end(), rest.begin(), rest.end());
  DensityOperator p = permute_subsystems(rho, order);
  const Index dk = rho.layout.dim_of(keep);
  const Index dr = p.dim() / dk;
  Mat out = Mat::Zero(dk, dk);
  for (Index i = 0; i < dk; ++i)
    for (Index j = 0; j < dk; ++j) {
      cxd s = 0;
      for (Index k = 0; k < dr; ++k) s += p.mat(i * dr + k, j * dr + k);
      out(i, j) = s;
    }
  return DensityOperator(std::move(out), rho.layout.select(keep), rho.subnormalized);
}

DensityOperator reduced_density(const PureState& psi,
                                const std::vector<std::string>& keep) {
  Mat m = reshape_group_first(psi, keep);
  Mat gram = m * m.adjoint();
  // Clean Hermiticity drift from the product before the constructor checks it.
  gram = 0.5 * (gram + gram.adjoint().eval());
  return DensityOperator(std::move(gram), psi.layout.select(keep), psi.subnormalized);
}

RVec schmidt_spectrum(const PureState& psi, const std::vector<std::string>& keep) {
  const Index dk = psi.layout.dim_of(keep);
  const Index dr = psi.dim() / dk;
  Mat gram;
  if (dk <= dr) {
    Mat m = reshape_group_first(psi, keep);
    gram = m * m.adjoint();
  } else {
    Mat m = reshape_group_first(psi, psi.layout.labels_except(keep));
    gram = m * m.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
  RVec ev = es.eigenvalues().reverse();  // descending
  return ev;
}

PureState purify(const DensityOperator& rho, const std::string& purifier_label) {
  const Index d = rho.dim();
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.mat);
  RVec lam = es.eigenvalues();
  Vec amp = Vec::Zero(d * d);
  for (Index i = 0; i < d; ++i) {
    const double l = std::max(lam[i], 0.0);
    if (l == 0.0) continue;
    const double s = std::sqrt(l);
    for (Index x = 0; x < d; ++x) amp[x * d + i] = s * es.eigenvectors()(x, i);
  }
  SubsystemLayout lay = rho.layout.concat(SubsystemLayout{{purifier_label, d}});
  if (!rho.subnormalized) amp /= amp.norm();  // remove clip drift
  return PureState(std::move(amp), std::move(lay), rho.subnormalized);
}

Mat haar_unitary(Index d, RandomStream& rng) {
  if (d < 1) throw invalid_input("haar_unitary needs d >= 1");
  Mat z(d, d);
  for (Index j = 0; j < d; ++j)  // fixed fill order for reproducibility
    for (Index i = 0; i < d; ++i) z(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  const Mat& r = qr.matrixQR();
  for (Index j = 0; j < d; ++j) {
    const cxd rd = r(j, j);
    const double ab = std::abs(rd);
    q.col(j) *= (ab > 0) ? rd / ab : cxd(1, 0);
  }
  return q;
}

PureState haar_state(const SubsystemLayout& layout, RandomStream& rng) {
  Vec v(layout.total_dim());
  for (Index i = 0; i < v.size(); ++i) v[i] = rng.complex_gaussian();
  v /= v.norm();
  return PureState(std::move(v), layout);
}

DensityOperator random_density(const SubsystemLayout& layout, Index rank,
                               RandomStream& rng) {
  const Index d = layout.total_dim();
  if (rank < 1 || rank > d) throw invalid_input("random_density rank out of range");
  Mat g(d, rank);
  for (Index j = 0; j < rank; ++j)
    for (Index i = 0; i < d; ++i) g(i, j) = rng.complex_gaussian();
  Mat rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint().eval());
  rho /= rho.trace().real();
  return DensityOperator(std::move(rho), layout);
}

double trace_norm(const Mat& x) {
  Eigen::BDCSVD<Mat> svd(x);
  return svd.singularValues().sum();
}

double hs_norm(const Mat& x) { return x.norm(); }

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) throw invalid_input("trace_distance: dimension mismatch");
  return trace_norm(a.mat - b.mat);
}

NormDimCheck norm_dim_check(const Mat& x) {
  Eigen::BDCSVD<Mat> svd(x);
  const auto& sv = svd.singularValues();
  NormDimCheck out;
  const double smax = sv.size() ? sv[0] : 0.0;
  double t1 = 0, t2 = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    t1 += sv[i];
    t2 += sv[i] * sv[i];
    if (sv[i] >= 1e-12 * smax && sv[i] > 0) ++out.support_dim;
  }
  out.trace_norm_sq = t1 * t1;
  out.bound = static_cast<double>(out.support_dim) * t2;
  out.ok = out.trace_norm_sq <= out.bound * (1 + 1e-12) + tol::inequality;
  return out;
}

namespace {

Mat psd_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  RVec lam = es.eigenvalues();
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam[i] < -tol::density)
      throw invalid_input("matrix has negative eigenvalue beyond tolerance");
    lam[i] = std::sqrt(std::max(lam[i], 0.0));
  }
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw invalid_input("fidelity: dimension mismatch");
  Mat s = psd_sqrt(rho.mat);
  Mat m = s * sigma.mat * s;
  m = 0.5 * (m + m.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  double sum = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()[i];
    if (l < -tol::density)
      throw invalid_input("fidelity: negative eigenvalue beyond tolerance");
    sum += std::sqrt(std::max(l, 0.0));
  }
  return std::min(sum * sum, 1.0);
}

FvdGCheck fuchs_van_de_graaf_check(const DensityOperator& rho,
                                   const DensityOperator& sigma) {
  FvdGCheck c;
  c.fid = fidelity(rho, sigma);
  c.half_tdist = 0.5 * trace_distance(rho, sigma);
  c.lower = 1.0 - std::sqrt(c.fid);
  c.upper = std::sqrt(std::max(1.0 - c.fid, 0.0));
  c.ok = (c.lower <= c.half_tdist + tol::inequality) &&
         (c.half_tdist <= c.upper + tol::inequality);
  return c;
}

SwapOperators swap_and_projectors(Index d) {
  if (d < 1) throw invalid_input("swap_and_projectors needs d >= 1");
  SwapOperators ops;
  ops.swap = Mat::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) ops.swap(j * d + i, i * d + j) = 1.0;
  const Mat id = Mat::Identity(d * d, d * d);
  ops.sym = 0.5 * (id + ops.swap);
  ops.anti = 0.5 * (id - ops.swap);
  return ops;
}

PureState apply_isometry(const PureState& psi, const Isometry& v) {
  const auto in_labels = v.input.labels();
  for (const auto& l : in_labels)
    if (psi.layout.dim_of(l) != v.input.dim_of(l))
      throw invalid_input("apply_isometry: dim mismatch on '" + l + "'");
  const auto rest = psi.layout.labels_except(in_labels);
  Mat m = reshape_group_first(psi, rest);  // rest x d_in
  if (m.cols() != v.mat.cols())
    throw invalid_input("apply_isometry: input labels do not cover the right space");
  Mat out = m * v.mat.transpose();  // rest x d_out
  SubsystemLayout lay =
      rest.empty() ? v.output : psi.layout.select(rest).concat(v.output);
  Vec amp(out.rows() * out.cols());
  for (Index r = 0; r < out.rows(); ++r)
    for (Index c = 0; c < out.cols(); ++c) amp[r * out.cols() + c] = out(r, c);
  return PureState(std::move(amp), std::move(lay), psi.subnormalized);
}

Isometry stinespring(const KrausChannel& chan, const std::string& env_label) {
  const Index din = chan.input.total_dim();
  const Index dout = chan.output.total_dim();
  const Index ne = static_cast<Index>(chan.kraus.size());
  Mat v(dout * ne, din);
  for (Index k = 0; k < ne; ++k)
    for (Index o = 0; o < dout; ++o)
      v.row(o * ne + k) = chan.kraus[static_cast<std::size_t>(k)].row(o);
  SubsystemLayout out = chan.output.concat(SubsystemLayout{{env_label, ne}});
  return Isometry(std::move(v), chan.input, std::move(out));
}

}  // namespace qsm
