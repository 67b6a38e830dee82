// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsm/common.hpp"
#include "qsm/instrument.hpp"
#include "qsm/random.hpp"
#include "qsm/states.hpp"

namespace qsm {

// Expected quantum error of the random rank-L instrument:
//   2 sqrt(L d_R / D) + 2 L / d_A,   D = 1 / tr(rho_B^2).
double qe_bound(Index L, Index d_a, Index d_r, double big_d);

// Q_e = sum_j p_j || rho^j_{A1 R} - tau_{A1} (x) rho_R ||_1 over all outcomes
// including the remainder (whose A1 support is rank L'); outcomes dropped at
// the probability floor contribute their mass at the maximal distance 2.
double quantum_error(const PostMeasurement& pm, const DensityOperator& rho_r,
                     const std::vector<std::string>& ref);

// ---- Monte Carlo checks on the averaging bounds ------------------------------

struct AveragingStats {
  double mc_mean = 0;
  double mc_stderr = 0;
  double bound = 0;       // L^2 / (d^2 D)
  double exact_mean = 0;  // closed form of <|| omega - <omega> ||_2^2>, cross-check
  bool ok = false;        // mc_mean <= bound + 3 stderr
};
// rho_ar must carry exactly two labels (Alice first). D is computed from the
// complementary marginal: for a purification of rho_AR, tr(rho_B^2) =
// tr(rho_AR^2). omega = (P (x) I) rho (P (x) I)^dag with P the first L rows
// of a Haar unitary; the deviation is measured from (L/d) tau (x) rho_R.
AveragingStats averaging_bound_check(const DensityOperator& rho_ar, Index L,
                                 int samples, RandomStream& rng);

Mat twirl_analytic(Index d, Index L);
Mat twirl_monte_carlo(Index d, Index L, int samples, RandomStream& rng);

struct TwirlComparison {
  Index d = 0, L = 0;
  double max_abs_gap = 0;
  double trace_analytic = 0;  // = L
  double trace_mc = 0;
};
TwirlComparison compare_twirl(Index d, Index L, int samples, RandomStream& rng);

// ---- decoding -----------------------------------------------------------------

// Merging target: Phi_L on (A1, B1) tensor psi_n with Alice's label renamed
// to Bob's copy "Bp". psi_n must carry labels {a, b, r}; the target layout is
// [A1, B1, Bp, b..., r...].
PureState make_merge_target(const PureState& psi_n, Index L, const std::string& a,
                            const std::string& b, const std::string& r);

struct DecodeResult {
  std::vector<double> fidelity;  // per listed outcome
  double mean_fidelity = 0;      // probability-weighted; dropped mass scores 0
};
// Uhlmann-decode every outcome toward `target`, moving Bob's systems
// (everything but A1 and `ref`) into the target's Bob-side systems. When
// Bob's actual space is larger than the target's (extra entanglement register
// B0), the target is padded with a |0> junk register so an isometry exists;
// reported fidelity is the overlap with target (x) |0>_junk, which attains
// the Uhlmann optimum F(rho^j_{A1 R}, target marginal).
DecodeResult decode_outcomes(const PostMeasurement& pm, const PureState& target,
                             const std::vector<std::string>& ref);

// ---- end-to-end protocol -------------------------------------------------------

struct MergeOptions {
  Index cap = Index{1} << 16;  // dense-dimension cap, overridable
  bool decode = true;          // set false to skip the (costly) decoder pass
};

struct MergeReport {
  // Protocol shape.
  int n = 1;
  Index L = 1, K = 1;
  Index N = 0, Lp = 0;
  Index d_alice = 0, d_bob = 0, d_ref = 0;  // n-copy dims incl. entanglement registers
  double cbits = 0;            // log2(N+1)
  double ebits_consumed = 0;   // log2 K
  double ebits_produced = 0;   // log2 L
  // Measured quantities (means over trials, with standard errors).
  double q_e = 0, q_e_stderr = 0;
  double q_e_bound = 0;
  double mean_fidelity = 0, fidelity_stderr = 0;
  double input_entanglement = 0;   // n S(B) + log2 K, across Bob vs (Alice,R)
  double output_entanglement = 0;  // mean sum_j p_j S(rho^j_{A1 R})
  double output_entanglement_stderr = 0;
  int trials = 0;
  std::uint64_t seed = 0;
};

// The full protocol on n copies of psi (labels a, b, r = first/second/third
// layout entries): tensor copies (grouped), attach Phi_K on (A0, B0) when
// K > 1, build a fresh rank-L instrument per trial on Alice's joint space
// (A (x) A0), measure, compute Q_e, decode toward the merging target, and
// ledger entanglement in/out. Throws cap_exceeded when
// (d_a d_b d_r)^n K^2 > options.cap, invalid_input when L > d_A^n K.
MergeReport run_merging(const PureState& psi, int n, Index L, Index K, int trials,
                        RandomStream& rng, const MergeOptions& options = {});

struct LedgerCheck {
  double e_in = 0;       // n S(B) + log2 K
  double e_out = 0;      // measured output entanglement
  double slack = 0;      // 0.05 n
  bool ok = false;
};
// LOCC cannot grow entanglement across the Bob cut: e_out <= e_in + 0.05 n.
LedgerCheck entanglement_ledger_check(const MergeReport& report);

struct ClassicalCostCheck {
  double cbits_per_copy = 0;
  double mutual_information_ar = 0;  // I(A:R) of the single-copy state
  double gap = 0;                    // cbits/n - I(A:R); reported, not asserted
};
// Measured classical rate vs the asymptotic benchmark I(A:R). The protocol's
// finite-n rate may exceed or undershoot it; optimality is asymptotic only.
ClassicalCostCheck classical_cost_check(const MergeReport& report, const PureState& psi);

}  // namespace qsm
