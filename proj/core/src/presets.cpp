// SPDX-License-Identifier: Apache-2.0
#include "qsm/presets.hpp"

#include <cmath>

#include "qsm/linalg.hpp"

namespace qsm {

PureState maximally_entangled(Index k, const std::string& label_a,
                              const std::string& label_b) {
  if (k < 1) throw invalid_input("maximally_entangled: rank must be >= 1");
  Vec amp = Vec::Zero(k * k);
  const double c = 1.0 / std::sqrt(static_cast<double>(k));
  for (Index i = 0; i < k; ++i) amp[i * k + i] = c;
  return PureState(std::move(amp), SubsystemLayout{{label_a, k}, {label_b, k}});
}

namespace {

PureState ghz(const std::vector<std::string>& labels, Index d) {
  Index total = 1;
  for (std::size_t i = 0; i < labels.size(); ++i) total *= d;
  Vec amp = Vec::Zero(total);
  const double c = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < d; ++i) {
    Index flat = 0;
    for (std::size_t s = 0; s < labels.size(); ++s) flat = flat * d + i;
    amp[flat] = c;
  }
  std::vector<Subsystem> parts;
  for (const auto& l : labels) parts.push_back({l, d});
  return PureState(std::move(amp), SubsystemLayout(std::move(parts)));
}

PureState basis_zero(Index d_a, Index d_b, Index d_r) {
  Vec amp = Vec::Zero(d_a * d_b * d_r);
  amp[0] = 1.0;
  return PureState(std::move(amp),
                   SubsystemLayout{{"A", d_a}, {"B", d_b}, {"R", d_r}});
}

}  // namespace

PureState make_preset(const std::string& name, Index d_a, Index d_b, Index d_r,
                      RandomStream* rng) {
  if (d_a < 1 || d_b < 1 || d_r < 1)
    throw invalid_input("make_preset: dimensions must be >= 1");
  if (name == "epr") {
    // Rank-d_a pair between A and B; trivial reference.
    PureState p = maximally_entangled(d_a, "A", "B");
    Vec amp = p.amp;
    return PureState(std::move(amp),
                     p.layout.concat(SubsystemLayout{{"R", 1}}));
  }
  if (name == "epr-ar") {
    // A entangled with the reference; Bob starts empty.
    PureState p = maximally_entangled(d_a, "A", "R");
    Vec amp = p.amp;
    SubsystemLayout lay{{"A", d_a}, {"B", 1}, {"R", d_a}};
    return PureState(std::move(amp), std::move(lay));
  }
  if (name == "ghz3") return ghz({"A", "B", "R"}, d_a);
  if (name == "ghz4") return ghz({"A", "B", "C", "D"}, d_a);
  if (name == "product") return basis_zero(d_a, d_b, d_r);
  if (name == "pure-ab") {
    // sqrt(1/4)|00> + sqrt(3/4)|11> between A and B; trivial reference.
    Vec amp = Vec::Zero(4);
    amp[0] = std::sqrt(0.25);
    amp[3] = std::sqrt(0.75);
    return PureState(std::move(amp),
                     SubsystemLayout{{"A", 2}, {"B", 2}, {"R", 1}});
  }
  if (name == "random") {
    if (!rng) throw invalid_input("make_preset: 'random' needs a random stream");
    return haar_state(SubsystemLayout{{"A", d_a}, {"B", d_b}, {"R", d_r}}, *rng);
  }
  throw invalid_input("make_preset: unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"epr", "epr-ar", "ghz3", "ghz4", "product", "pure-ab", "random"};
}

}  // namespace qsm
