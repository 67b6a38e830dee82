// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "qsm/common.hpp"
#include "qsm/entropy.hpp"
#include "qsm/random.hpp"
#include "qsm/states.hpp"

namespace qsm {

// Linear rate region over named party rates. Negative rates are first-class
// (entanglement gained / invested); consumers must not clamp at zero.
struct RateRegion {
  struct Inequality {
    std::vector<double> coeff;  // one per party
    double bound = 0;
    bool lower = true;  // true: coeff . R >= bound ; false: coeff . R <= bound
  };
  struct Corner {
    std::vector<double> rates;
    std::vector<std::string> ordering;  // encoder ordering achieving it
  };
  std::vector<std::string> parties;
  std::vector<Inequality> inequalities;
  std::vector<Corner> corners;

  // Max violation of any inequality by any corner (for the invariant check).
  double corner_violation() const;
};

// Multiparty compression region: R_T >= S(T | T-bar) for every nonempty
// subset T, with one corner per encoder ordering (party k merges at
// S(k | predecessors)). Every corner's rate-sum equals S(all parties).
RateRegion distributed_compression_region(const DensityOperator& rho,
                                          const std::vector<std::string>& parties);
RateRegion distributed_compression_region(const PureState& psi,
                                          const std::vector<std::string>& parties);

// ---- merging with side information -------------------------------------------

struct SideInfoRates {
  double r_a = 0;  // S(A|U)
  double r_b = 0;  // S(U) + S(W|AU)
};
// psi has labels (A, B, R); T splits B into U,V; lambda degrades V to W with
// Stinespring environment Bp. Rates are evaluated on the dilated pure state.
SideInfoRates side_info_rates(const PureState& psi, const Isometry& t,
                              const KrausChannel& lambda);

struct SideInfoSearchResult {
  SideInfoRates best;      // smallest r_a + r_b found
  SideInfoRates baseline;  // T = identity, trivial V
  bool heuristic = true;   // always: a search upper bound, no optimality claim
  int evaluations = 0;
};
// Random-restart local search over (T, Lambda) at the given U dimension.
// d_b must be divisible by d_u (V carries the complement); d_w = d_v. The
// identity baseline (U = B, V trivial) is always included as a candidate.
SideInfoSearchResult side_info_search(const PureState& psi, Index d_u, int restarts,
                                      RandomStream& rng);

// ---- entanglement of assistance -----------------------------------------------

struct MinCutResult {
  double value = 0;
  std::vector<std::string> cut;  // helper subset T attaining min S(A T)
  // Other helper subsets within 1e-6 of the minimum; ties are reported
  // rather than perturbed away.
  std::vector<std::vector<std::string>> near_ties;
};
// min over helper subsets T of min{ S(A T), S(B T-bar) } for a pure global
// state; ties broken toward the lexicographically smallest bitmask.
MinCutResult min_cut_assistance(const PureState& psi, const std::string& a,
                                const std::string& b);

struct CoveringStats {
  double mc_mean = 0;
  double mc_stderr = 0;
  double bound = 0;   // 2 sqrt(d_R / D) + 2 / d_A  (n-copy dims)
  double big_d = 0;   // 1 / tr(rho_B^2)
  bool holds = false;
  bool meaningful_regime = true;  // S(R) < S(B); warn-only
};
// Rank-1 random-basis measurement on Alice's n-copy space; mean over trials
// of sum_j p_j ||rho^j_R - rho_R||_1 against the covering bound.
CoveringStats covering_experiment(const PureState& psi, int n, int trials,
                                  RandomStream& rng, Index cap = Index{1} << 16);

struct AssistanceStats {
  double mean_entropy = 0;       // outcome-averaged final S(A), total (not per copy)
  double stderr_entropy = 0;
  double per_copy = 0;           // mean_entropy / n
  double min_cut = 0;            // single-copy min-cut value
  int trials = 0;
};
// Helpers sequentially measure their (grouped) n-copy systems in random
// rank-1 bases; decoding is deferred (final states are what the measurements
// leave). helper_order empty selects all non-(a,b) labels in descending
// single-copy marginal entropy order.
AssistanceStats assistance_protocol(const PureState& psi, const std::string& a,
                                    const std::string& b,
                                    std::vector<std::string> helper_order, int n,
                                    int trials, RandomStream& rng,
                                    Index cap = Index{1} << 16);

struct SimultaneousAssistanceRecord {
  AssistanceStats stats;
  double gap_to_min_cut_per_copy = 0;  // min_cut - per_copy (exploratory; no contract)
};
// All helpers measure at once (same distribution as the sequential protocol
// for complete product measurements; kept separate to mirror the two setups).
SimultaneousAssistanceRecord simultaneous_assistance_experiment(
    const PureState& psi, const std::string& a, const std::string& b, int n,
    int trials, RandomStream& rng, Index cap = Index{1} << 16);

// ---- multiple-access channel ----------------------------------------------------

// Region for two senders sharing entangled inputs through lambda: A'B' -> C.
// Inequalities: R_A <= I(A>BC), R_B <= I(B>AC), R_A + R_B <= I(AB>C);
// corners (I(A>BC), I(B>C)) and (I(A>C), I(B>AC)). Corner sums equal
// I(AB>C) identically (chain rule).
RateRegion mac_rates(const KrausChannel& lambda, const PureState& psi_a,
                     const PureState& psi_b);

}  // namespace qsm
