// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "qsm/common.hpp"
#include "qsm/random.hpp"
#include "qsm/states.hpp"

namespace qsm {

// Complete measurement made of N rank-L partial isometries plus one rank-L'
// remainder (L' = d - N*L), all slices of a single Haar unitary:
//   P_j = Q_j U,  j = 1..N,  and  P_0 = Q_0 U with rank L'.
// elements[0..N-1] are the rank-L blocks (L x d), elements[N] is the
// remainder (L' x d; possibly 0 x d). sum_j P_j^dag P_j = I.
struct Instrument {
  std::vector<Mat> elements;
  Index d = 0;   // input dimension
  Index L = 0;   // block rank
  Index N = 0;   // number of full blocks, floor(d/L)
  Index Lp = 0;  // remainder rank, d - N*L

  // Outcome count includes the remainder slot even when L' = 0, so the
  // classical cost log2(N+1) is independent of divisibility.
  Index outcome_count() const { return N + 1; }
  double cbits() const;  // log2(N+1)
  // max_j ||sum_j P^dag P - I||_inf, for the completeness invariant.
  double completeness_defect() const;
};

Instrument build_instrument(Index d, Index L, RandomStream& rng);

struct MergeOutcome {
  Index index = 0;       // 1..N for full blocks, 0 for the remainder
  double prob = 0;
  PureState state;       // on [A1, ...rest]; A1 dim = L (remainder zero-padded into A1)
  bool is_remainder = false;
};

struct PostMeasurement {
  std::vector<MergeOutcome> outcomes;
  double dropped_mass = 0;  // total probability of outcomes below tol::outcome_floor
  Index L = 0;
};

// Measure the `alice` subsystems (taken jointly, in the order given) with the
// instrument; remaining labels ride along. Outcome states carry label "A1".
// The remainder outcome keeps its A1 dimension padded to L (its support is
// the first L' basis states), so downstream shapes are uniform.
PostMeasurement post_measurement(const PureState& psi, const Instrument& inst,
                                 const std::vector<std::string>& alice);

}  // namespace qsm
