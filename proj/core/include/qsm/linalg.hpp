// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "qsm/common.hpp"
#include "qsm/random.hpp"
#include "qsm/states.hpp"

namespace qsm {

// ---- tensor products -------------------------------------------------------

Mat kron(const Mat& a, const Mat& b);
PureState tensor(const PureState& a, const PureState& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

// n copies of `psi` with same-label factors grouped: the result has one
// subsystem per input label, of dimension dim^n, ordered as in `psi`.
// Copy i of label X occupies digit i (most significant first) of the grouped
// X index. Grouping keeps instrument construction on "all of Alice" a single
// reshape instead of a permutation over 3n factors.
PureState tensor_power_grouped(const PureState& psi, int n);

// ---- rearrangement ---------------------------------------------------------

// Reorder subsystems to `order` (a permutation of the labels).
PureState permute_subsystems(const PureState& psi, const std::vector<std::string>& order);
DensityOperator permute_subsystems(const DensityOperator& rho, const std::vector<std::string>& order);

// View `psi` as a (group x rest) matrix: rows indexed by `group` labels in
// the order given, columns by the remaining labels in layout order.
Mat reshape_group_first(const PureState& psi, const std::vector<std::string>& group);

// ---- reductions ------------------------------------------------------------

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::string>& keep);
// Reduced density operator of a pure state (Gram matrix of the reshape; never
// forms the full |psi><psi|).
DensityOperator reduced_density(const PureState& psi, const std::vector<std::string>& keep);
// Schmidt spectrum across (keep : rest): eigenvalues of the reduced state on
// the smaller side, descending, padded with zeros to the `keep` dimension
// only when keep is the smaller side (callers use the nonzero part).
RVec schmidt_spectrum(const PureState& psi, const std::vector<std::string>& keep);

// Purification with purifier dimension = dim(rho) (full dimension for shape
// stability, not numerical rank).
PureState purify(const DensityOperator& rho, const std::string& purifier_label);

// ---- random objects --------------------------------------------------------

// Haar-distributed unitary: complex Ginibre, then QR with the R diagonal
// phase-normalized.
Mat haar_unitary(Index d, RandomStream& rng);
PureState haar_state(const SubsystemLayout& layout, RandomStream& rng);
// rho = G G^dag / tr with G a d x rank Ginibre matrix.
DensityOperator random_density(const SubsystemLayout& layout, Index rank, RandomStream& rng);

// ---- norms, distances, fidelity --------------------------------------------

double trace_norm(const Mat& x);   // sum of singular values
double hs_norm(const Mat& x);      // Frobenius
double trace_distance(const DensityOperator& a, const DensityOperator& b);  // ||a-b||_1

struct NormDimCheck {
  double trace_norm_sq = 0;
  double bound = 0;       // support_dim * ||X||_2^2
  Index support_dim = 0;  // singular values >= 1e-12 * sigma_max
  bool ok = false;
};
// ||X||_1^2 <= d ||X||_2^2 with d the support dimension.
NormDimCheck norm_dim_check(const Mat& x);

// Uhlmann fidelity, squared convention: F = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

struct FvdGCheck {
  double fid = 0;
  double half_tdist = 0;
  double lower = 0;  // 1 - sqrt(F)
  double upper = 0;  // sqrt(1 - F)
  bool ok = false;
};
// 1 - sqrt(F) <= (1/2)||rho-sigma||_1 <= sqrt(1-F), with slack tol::inequality.
FvdGCheck fuchs_van_de_graaf_check(const DensityOperator& rho, const DensityOperator& sigma);

// ---- swap / symmetric subspace ---------------------------------------------

struct SwapOperators {
  Mat swap;       // F|ij> = |ji> on d^2
  Mat sym;        // (I+F)/2
  Mat anti;       // (I-F)/2
};
SwapOperators swap_and_projectors(Index d);

// ---- isometry application --------------------------------------------------

// Apply `v` to the subsystems named by v.input (which must appear in psi with
// matching dims); those labels are replaced by v.output's labels. Output
// layout: remaining labels in original order, then v.output labels.
PureState apply_isometry(const PureState& psi, const Isometry& v);

// Stinespring dilation: isometry input -> output x env implementing the
// channel when env is traced out. env dim = number of Kraus terms.
Isometry stinespring(const KrausChannel& chan, const std::string& env_label);

}  // namespace qsm
