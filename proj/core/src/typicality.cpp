// SPDX-License-Identifier: Apache-2.0
#include "qsm/typicality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "qsm/entropy.hpp"
#include "qsm/linalg.hpp"

namespace qsm {

bool TypicalProjector::contains(std::uint64_t flat_index) const {
  return std::binary_search(members.begin(), members.end(), flat_index);
}

TypicalProjector typical_projector(const RVec& p, int n, double delta) {
  if (p.size() < 1) throw invalid_input("typical_projector: empty spectrum");
  if (n < 1) throw invalid_input("typical_projector: n must be >= 1");
  if (delta < 0) throw invalid_input("typical_projector: delta must be >= 0");
  double sum = 0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] < -tol::completeness)
      throw invalid_input("typical_projector: negative probability");
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > tol::completeness)
    throw invalid_input("typical_projector: probabilities do not sum to 1");
  const double bits = n * std::log2(static_cast<double>(p.size()));
  if (bits > 24.0 + 1e-9)
    throw cap_exceeded("typical_projector: n*log2(|p|) exceeds the 2^24 enumeration cap");

  TypicalProjector tp;
  tp.p = p;
  tp.n = n;
  tp.delta = delta;
  tp.entropy = entropy_of_spectrum(p);

  const Index len = p.size();
  std::vector<double> log2p(static_cast<std::size_t>(len));
  for (Index i = 0; i < len; ++i)
    log2p[static_cast<std::size_t>(i)] = (p[i] > 0) ? std::log2(p[i]) : 1.0;  // 1.0 = sentinel

  const double target = n * tp.entropy;
  const double window = n * delta + 1e-9;  // boundary sequences are members
  double wsum = 0;
  double lo = 0, hi = 0;
  bool have = false;

  // Depth-first over all sequences, accumulating log-probability; sequences
  // containing a zero-probability symbol are skipped outright.
  std::function<void(int, std::uint64_t, double)> walk = [&](int depth,
                                                             std::uint64_t flat,
                                                             double logq) {
    if (depth == n) {
      if (std::abs(-logq - target) <= window) {
        tp.members.push_back(flat);
        wsum += std::exp2(logq);
        if (!have || logq < lo) lo = logq;
        if (!have || logq > hi) hi = logq;
        have = true;
      }
      return;
    }
    for (Index i = 0; i < len; ++i) {
      if (p[i] <= 0) continue;
      walk(depth + 1, flat * static_cast<std::uint64_t>(len) + static_cast<std::uint64_t>(i),
           logq + log2p[static_cast<std::size_t>(i)]);
    }
  };
  walk(0, 0, 0.0);

  tp.weight = wsum;
  tp.log2_pmin = have ? lo : 0.0;
  tp.log2_pmax = have ? hi : 0.0;
  return tp;
}

TypicalityCertificate certify_typicality(const TypicalProjector& tp) {
  TypicalityCertificate c;
  c.weight = tp.weight;
  // The projector and the i.i.d. state commute (both diagonal in the product
  // eigenbasis), so the operator comparison reduces to the diagonals:
  // member entries coincide and cut entries drop to zero, which only needs
  // every probability to be nonnegative.
  c.c2_operator_order = tp.p.minCoeff() >= -tol::completeness;
  const double n = static_cast<double>(tp.n);
  const bool empty = tp.members.empty();
  c.c3_upper_eigen = empty || (tp.log2_pmax <= -n * (tp.entropy - tp.delta) + 1e-9);
  c.c4_lower_eigen = empty || (tp.log2_pmin >= -n * (tp.entropy + tp.delta) - 1e-9);
  c.c5_rank_upper =
      empty || (std::log2(static_cast<double>(tp.rank())) <= n * (tp.entropy + tp.delta) + 1e-9);
  c.c6_rank_lower = static_cast<double>(tp.rank()) >=
                    tp.weight * std::exp2(n * (tp.entropy - tp.delta)) * (1 - 1e-6);
  return c;
}

bool weight_trend_holds(const RVec& p, double delta, int n_small, int n_large) {
  if (n_small >= n_large)
    throw invalid_input("weight_trend_holds: needs n_small < n_large");
  const double ws = typical_projector(p, n_small, delta).weight;
  const double wl = typical_projector(p, n_large, delta).weight;
  return wl > ws - 1e-9;
}

TruncatedState truncate(const PureState& psi, int n, double delta, Index cap) {
  if (psi.subnormalized) throw invalid_input("truncate: state must be normalized");
  double total_bits = n * std::log2(static_cast<double>(psi.dim()));
  if (total_bits > std::log2(static_cast<double>(cap)) + 1e-9)
    throw cap_exceeded("truncate: n-copy dimension exceeds the dense cap");

  // Rotate each subsystem into its marginal eigenbasis (single copy).
  TruncatedState ts;
  PureState rotated = psi;
  for (const auto& part : psi.layout.parts()) {
    DensityOperator red = reduced_density(psi, {part.label});
    Eigen::SelfAdjointEigenSolver<Mat> es(red.mat);
    // eigenvalues ascending; flip to descending
    const Index d = part.dim;
    RVec spec(d);
    Mat basis(d, d);
    for (Index i = 0; i < d; ++i) {
      spec[i] = std::max(es.eigenvalues()[d - 1 - i], 0.0);
      basis.col(i) = es.eigenvectors().col(d - 1 - i);
    }
    spec /= spec.sum();
    ts.labels.push_back(part.label);
    ts.spectra.push_back(spec);
    SubsystemLayout single{{part.label, d}};
    rotated = apply_isometry(rotated, Isometry(basis.adjoint(), single, single));
  }
  rotated = permute_subsystems(rotated, psi.layout.labels());

  PureState big = tensor_power_grouped(rotated, n);

  // Per-label typical membership over the grouped digit (same encoding as the
  // enumerated flat index: copy 0 most significant).
  std::vector<std::vector<char>> keep;
  for (std::size_t s = 0; s < ts.labels.size(); ++s) {
    TypicalProjector tp = typical_projector(ts.spectra[s], n, delta);
    ts.kept_rank.push_back(tp.rank());
    ts.kept_weight.push_back(tp.weight);
    std::vector<char> k(static_cast<std::size_t>(big.layout[static_cast<Index>(s)].dim), 0);
    for (auto m : tp.members) k[static_cast<std::size_t>(m)] = 1;
    keep.push_back(std::move(k));
  }

  Vec amp = big.amp;
  std::vector<Index> digits;
  for (Index flat = 0; flat < big.dim(); ++flat) {
    big.layout.unravel(flat, digits);
    for (std::size_t s = 0; s < keep.size(); ++s)
      if (!keep[s][static_cast<std::size_t>(digits[s])]) {
        amp[flat] = 0;
        break;
      }
  }

  ts.overlap = amp.squaredNorm();
  ts.omega = PureState(amp, big.layout, /*subnormalized=*/true);
  if (ts.overlap < 0.5)
    throw property_violation(
        "truncate: typical projection kept less than half the weight");
  ts.psi = PureState(amp / std::sqrt(ts.overlap), big.layout);
  return ts;
}

MergeParameters merge_parameters(const TruncatedState& ts, const std::string& a,
                                 const std::string& b, const std::string& r,
                                 int n, double delta) {
  auto pos = [&](const std::string& l) -> std::size_t {
    auto it = std::find(ts.labels.begin(), ts.labels.end(), l);
    if (it == ts.labels.end())
      throw invalid_input("merge_parameters: unknown label '" + l + "'");
    return static_cast<std::size_t>(it - ts.labels.begin());
  };
  const std::size_t ia = pos(a), ib = pos(b), ir = pos(r);

  MergeParameters mp;
  mp.d_a_eff = ts.kept_rank[ia];
  mp.d_r_eff = ts.kept_rank[ir];
  DensityOperator rho_b = reduced_density(ts.psi, {b});
  mp.d_eff = 1.0 / (rho_b.mat * rho_b.mat).trace().real();

  const double sa = entropy_of_spectrum(ts.spectra[ia]);
  const double sb = entropy_of_spectrum(ts.spectra[ib]);
  const double sr = entropy_of_spectrum(ts.spectra[ir]);
  mp.d_a_lower = ts.kept_weight[ia] * std::exp2(n * (sa - delta));
  mp.d_r_upper = std::exp2(n * (sr + delta));
  mp.d_lower = ts.overlap * std::exp2(n * (sb - delta));
  return mp;
}

std::string typicality_csv_row(const TypicalProjector& tp) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d,%.12g,%lld,%.12g", tp.n, tp.delta,
                static_cast<long long>(tp.rank()), tp.weight);
  return buf;
}

}  // namespace qsm
