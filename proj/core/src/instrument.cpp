// SPDX-License-Identifier: Apache-2.0
#include "qsm/instrument.hpp"

#include <cmath>

#include "qsm/linalg.hpp"

namespace qsm {

double Instrument::cbits() const {
  return std::log2(static_cast<double>(N + 1));
}

double Instrument::completeness_defect() const {
  Mat sum = Mat::Zero(d, d);
  for (const auto& p : elements) sum += p.adjoint() * p;
  return (sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
}

Instrument build_instrument(Index d, Index L, RandomStream& rng) {
  if (d < 1 || L < 1 || L > d)
    throw invalid_input("build_instrument: need 1 <= L <= d");
  Instrument inst;
  inst.d = d;
  inst.L = L;
  inst.N = d / L;
  inst.Lp = d - inst.N * L;
  Mat u = haar_unitary(d, rng);
  for (Index j = 0; j < inst.N; ++j) inst.elements.push_back(u.block(j * L, 0, L, d));
  inst.elements.push_back(u.block(inst.N * L, 0, inst.Lp, d));  // possibly 0 x d
  return inst;
}

PostMeasurement post_measurement(const PureState& psi, const Instrument& inst,
                                 const std::vector<std::string>& alice) {
  if (psi.layout.dim_of(alice) != inst.d)
    throw invalid_input("post_measurement: instrument dimension mismatch");
  const auto rest = psi.layout.labels_except(alice);
  Mat m = reshape_group_first(psi, alice);  // d x rest
  const Index cols = m.cols();

  PostMeasurement pm;
  pm.L = inst.L;
  for (std::size_t k = 0; k < inst.elements.size(); ++k) {
    const Mat& p = inst.elements[k];
    const bool remainder = (k + 1 == inst.elements.size());
    Mat out = p * m;  // rank x rest
    const double prob = out.squaredNorm();
    if (prob <= tol::outcome_floor) {
      pm.dropped_mass += prob;
      continue;
    }
    // Zero-pad the remainder's support up to L so every outcome shares shape.
    Vec amp = Vec::Zero(inst.L * cols);
    const double scale = 1.0 / std::sqrt(prob);
    for (Index r = 0; r < out.rows(); ++r)
      for (Index c = 0; c < cols; ++c) amp[r * cols + c] = out(r, c) * scale;
    SubsystemLayout lay{{"A1", inst.L}};
    if (!rest.empty()) lay = lay.concat(psi.layout.select(rest));

    MergeOutcome o;
    o.index = remainder ? 0 : static_cast<Index>(k) + 1;
    o.prob = prob;
    o.is_remainder = remainder;
    o.state = PureState(std::move(amp), std::move(lay));
    pm.outcomes.push_back(std::move(o));
  }
  return pm;
}

}  // namespace qsm
