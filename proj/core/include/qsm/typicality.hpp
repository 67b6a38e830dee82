// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsm/common.hpp"
#include "qsm/states.hpp"

namespace qsm {

// Entropy-typical set of an i.i.d. spectrum: indices i^n with
// |-log2 p_{i^n} - n S| <= n delta (inclusive, with a 1e-9 absolute slack so
// sequences exactly on the window boundary are kept deterministically).
struct TypicalProjector {
  RVec p;          // single-copy spectrum
  int n = 0;
  double delta = 0;
  double entropy = 0;               // S(p) in bits
  std::vector<std::uint64_t> members;  // flat indices, most-significant digit first
  double weight = 0;                // sum of member probabilities
  double log2_pmin = 0, log2_pmax = 0;  // over members; 0/0 if empty

  Index rank() const { return static_cast<Index>(members.size()); }
  bool contains(std::uint64_t flat_index) const;  // binary search
};

// Explicit enumeration; requires n*log2(len p) <= 24.
TypicalProjector typical_projector(const RVec& p, int n, double delta);

struct TypicalityCertificate {
  bool c2_operator_order = false;  // Pi rho^n Pi <= rho^n (diagonal comparison)
  bool c3_upper_eigen = false;     // max member p <= 2^{-n(S-delta)}
  bool c4_lower_eigen = false;     // min member p >= 2^{-n(S+delta)}
  bool c5_rank_upper = false;      // rank <= 2^{n(S+delta)}
  bool c6_rank_lower = false;      // rank >= weight * 2^{n(S-delta)}
  double weight = 0;
  bool all() const {
    return c2_operator_order && c3_upper_eigen && c4_lower_eigen && c5_rank_upper && c6_rank_lower;
  }
};
// The tail-weight property is certified as a trend (weight grows with n),
// not via the abstract exp(-c delta^2 n) constant; see weight_trend_holds.
TypicalityCertificate certify_typicality(const TypicalProjector& tp);

// weight(n_large) >= weight(n_small) - 1e-9 for the same spectrum and delta
// (equality happens for uniform spectra, where the weight is 1 at every n).
bool weight_trend_holds(const RVec& p, double delta, int n_small, int n_large);

// ---- truncated i.i.d. states ------------------------------------------------

struct TruncatedState {
  PureState omega;   // subnormalized: (Pi_A (x) Pi_B (x) ... ) psi^{(x) n}
  PureState psi;     // omega / ||omega||
  double overlap = 0;  // <omega|omega>
  // Per-subsystem survival data, in the layout order of the input state.
  std::vector<std::string> labels;
  std::vector<Index> kept_rank;      // rank of each marginal typical projector
  std::vector<double> kept_weight;   // marginal typical weight
  std::vector<RVec> spectra;         // single-copy marginal spectra (descending)
};

// Project psi^{(x) n} onto the tensor product of its marginals' typical
// subspaces. Marginals are diagonalized per single copy and tensored; the
// returned states live in the rotated (product eigenbasis) frame, one grouped
// subsystem per input label. Throws if overlap < 0.5 (typicality failed at
// this n, delta) or the n-copy dimension exceeds `cap`.
TruncatedState truncate(const PureState& psi, int n, double delta, Index cap = Index{1} << 16);

struct MergeParameters {
  // Exact values measured from the truncated state.
  Index d_a_eff = 0;   // rank of Alice's typical projector
  Index d_r_eff = 0;   // rank of the reference's typical projector
  double d_eff = 0;    // 1 / tr(psi_B^2), Bob-side inverse purity
  // Certified analytic bounds (paper-form); the exact values above must
  // bracket within these.
  double d_a_lower = 0;  // weight_A * 2^{n(S_A - delta)}
  double d_r_upper = 0;  // 2^{n(S_R + delta)}
  double d_lower = 0;    // overlap * 2^{n(S_B - delta)}
};
// `a`, `b`, `r` are the labels of Alice, Bob and the reference in the
// original single-copy state.
MergeParameters merge_parameters(const TruncatedState& ts, const std::string& a,
                                 const std::string& b, const std::string& r,
                                 int n, double delta);

// One CSV row "n,delta,rank,weight" (no trailing newline).
std::string typicality_csv_row(const TypicalProjector& tp);

}  // namespace qsm
