// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "qsm/common.hpp"
#include "qsm/states.hpp"

namespace qsm {

// All entropies in bits (log2). Eigenvalues below tol::entropy_clip are
// treated as exact zeros.

double entropy_of_spectrum(const RVec& eigenvalues);
double binary_entropy(double p);
double von_neumann_entropy(const DensityOperator& rho);

// S of the reduced state on `keep` for a globally pure state, computed from
// the Schmidt spectrum of the (keep : rest) split — never materializes large
// reduced matrices.
double marginal_entropy(const PureState& psi, const std::vector<std::string>& keep);
double marginal_entropy(const DensityOperator& rho, const std::vector<std::string>& keep);

// S(A|B) = S(AB) - S(B); may be negative.
double conditional_entropy(const DensityOperator& rho,
                           const std::vector<std::string>& a,
                           const std::vector<std::string>& b);
double conditional_entropy(const PureState& psi,
                           const std::vector<std::string>& a,
                           const std::vector<std::string>& b);

// I(A:B) = S(A) + S(B) - S(AB).
double mutual_information(const DensityOperator& rho,
                          const std::vector<std::string>& a,
                          const std::vector<std::string>& b);
double mutual_information(const PureState& psi,
                          const std::vector<std::string>& a,
                          const std::vector<std::string>& b);

// I(A>B) = S(B) - S(AB) = -S(A|B), computed through conditional_entropy so
// the identity holds bit-for-bit.
double coherent_information(const DensityOperator& rho,
                            const std::vector<std::string>& a,
                            const std::vector<std::string>& b);
double coherent_information(const PureState& psi,
                            const std::vector<std::string>& a,
                            const std::vector<std::string>& b);

// Entropy of every nonempty subset of `parties`, plus derived quantities on
// demand. Subsets are encoded as bitmasks over the parties vector.
struct EntropyReport {
  std::vector<std::string> parties;
  std::vector<double> subset_entropy;  // index = bitmask (entry 0 unused, = 0)

  double entropy(unsigned mask) const { return subset_entropy[mask]; }
  double entropy(const std::vector<std::string>& subset) const;
  unsigned mask_of(const std::vector<std::string>& subset) const;
  double conditional(unsigned a_mask, unsigned b_mask) const;  // S(A|B)
};
EntropyReport entropy_report(const DensityOperator& rho, const std::vector<std::string>& parties);
EntropyReport entropy_report(const PureState& psi, const std::vector<std::string>& parties);

// ---- inequality checkers (each returns the numbers it compared) ------------

struct FannesCheck {
  double entropy_gap = 0;  // |S(rho) - S(sigma)|
  double tdist = 0;        // ||rho - sigma||_1
  double bound = 0;        // eta(tdist) * log2(d)
  bool ok = false;
};
// |S(rho)-S(sigma)| <= eta(||rho-sigma||_1) log2 d,
// eta(x) = x - x log2 x for x <= 1/e, x + log2(e)/e otherwise.
FannesCheck fannes_check(const DensityOperator& rho, const DensityOperator& sigma);

struct GentleCheck {
  double disturbance = 0;  // ||sqrt(X) rho sqrt(X) - rho||_1
  double bound = 0;        // 2 sqrt(1 - tr(rho X))
  bool ok = false;
};
// Requires 0 <= X <= I (validated within tol::density).
GentleCheck gentle_measurement_check(const DensityOperator& rho, const Mat& x);

struct SSACheck {
  double lhs = 0;  // S(A|BC)
  double rhs = 0;  // S(A|B)
  bool ok = false;
};
// Strong subadditivity in conditional form: S(A|BC) <= S(A|B).
SSACheck strong_subadditivity_check(const DensityOperator& rho,
                                    const std::vector<std::string>& a,
                                    const std::vector<std::string>& b,
                                    const std::vector<std::string>& c);

struct ChainRuleCheck {
  double lhs = 0;  // I(A1A2 > B)
  double rhs = 0;  // I(A2 > B) + I(A1 > B A2)
  bool ok = false;
};
// Coherent-information chain rule, an exact identity of entropy sums.
ChainRuleCheck chain_rule_check(const DensityOperator& rho,
                                const std::vector<std::string>& a1,
                                const std::vector<std::string>& a2,
                                const std::vector<std::string>& b);

}  // namespace qsm
