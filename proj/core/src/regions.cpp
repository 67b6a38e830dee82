// SPDX-License-Identifier: Apache-2.0
#include "qsm/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsm/instrument.hpp"
#include "qsm/linalg.hpp"
#include "qsm/merging.hpp"
#include "qsm/parallel.hpp"

namespace qsm {

double RateRegion::corner_violation() const {
  double worst = -1e300;
  for (const auto& c : corners) {
    for (const auto& iq : inequalities) {
      double v = 0;
      for (std::size_t i = 0; i < iq.coeff.size(); ++i) v += iq.coeff[i] * c.rates[i];
      worst = std::max(worst, iq.lower ? iq.bound - v : v - iq.bound);
    }
  }
  return worst;
}

namespace {

template <typename State>
RateRegion compression_region_impl(const State& s,
                                   const std::vector<std::string>& parties) {
  if (parties.empty() || parties.size() > 8)
    throw invalid_input("distributed_compression_region: need 1..8 parties");
  const std::size_t m = parties.size();
  EntropyReport rep = entropy_report(s, parties);
  const unsigned full = (1u << m) - 1u;

  RateRegion reg;
  reg.parties = parties;
  for (unsigned t = 1; t <= full; ++t) {
    RateRegion::Inequality iq;
    iq.coeff.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      if (t & (1u << i)) iq.coeff[i] = 1.0;
    iq.bound = rep.conditional(t, full & ~t);  // S(T | T-bar)
    iq.lower = true;
    reg.inequalities.push_back(std::move(iq));
  }

  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    RateRegion::Corner c;
    c.rates.assign(m, 0.0);
    unsigned done = 0;
    for (std::size_t k = 0; k < m; ++k) {
      const unsigned bit = 1u << perm[k];
      c.rates[perm[k]] = rep.conditional(bit, done);  // S(party | predecessors)
      c.ordering.push_back(parties[perm[k]]);
      done |= bit;
    }
    reg.corners.push_back(std::move(c));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return reg;
}

}  // namespace

RateRegion distributed_compression_region(const DensityOperator& rho,
                                          const std::vector<std::string>& parties) {
  return compression_region_impl(rho, parties);
}

RateRegion distributed_compression_region(const PureState& psi,
                                          const std::vector<std::string>& parties) {
  return compression_region_impl(psi, parties);
}

SideInfoRates side_info_rates(const PureState& psi, const Isometry& t,
                              const KrausChannel& lambda) {
  if (psi.layout.size() != 3)
    throw invalid_input("side_info_rates: state must carry exactly three labels");
  if (t.output.size() != 2)
    throw invalid_input("side_info_rates: splitter must output two subsystems (U, V)");
  const std::string a = psi.layout[0].label;
  const std::string u = t.output[0].label;
  const std::string v = t.output[1].label;
  if (lambda.input.total_dim() != t.output[1].dim)
    throw invalid_input("side_info_rates: channel input must match the V factor");
  const std::string w = lambda.output[0].label;

  PureState split = apply_isometry(psi, t);
  // Rename the channel input so it consumes V regardless of its declared label.
  KrausChannel lam(lambda.kraus, SubsystemLayout{{v, t.output[1].dim}}, lambda.output);
  PureState dilated = apply_isometry(split, stinespring(lam, "Bp"));

  SideInfoRates rates;
  rates.r_a = conditional_entropy(dilated, {a}, {u});
  rates.r_b = marginal_entropy(dilated, {u}) + conditional_entropy(dilated, {w}, {a, u});
  return rates;
}

SideInfoSearchResult side_info_search(const PureState& psi, Index d_u, int restarts,
                                      RandomStream& rng) {
  if (psi.layout.size() != 3)
    throw invalid_input("side_info_search: state must carry exactly three labels");
  const std::string b = psi.layout[1].label;
  const Index d_b = psi.layout[1].dim;
  if (d_u < 1 || d_b % d_u != 0)
    throw invalid_input("side_info_search: d_u must divide d_B");
  const Index d_v = d_b / d_u;
  SubsystemLayout b_lay{{b, d_b}};

  SideInfoSearchResult res;

  // Baseline: keep all of B as side information (U = B, V trivial).
  {
    Isometry ident(Mat::Identity(d_b, d_b), b_lay,
                   SubsystemLayout{{"U", d_b}, {"V", 1}});
    std::vector<Mat> k1{Mat::Identity(1, 1)};
    KrausChannel trivial(k1, SubsystemLayout{{"V", 1}}, SubsystemLayout{{"W", 1}});
    res.baseline = side_info_rates(psi, ident, trivial);
    ++res.evaluations;
  }
  res.best = res.baseline;

  SubsystemLayout uv{{"U", d_u}, {"V", d_v}};
  SubsystemLayout v_in{{"V", d_v}};
  SubsystemLayout w_out{{"W", d_v}};
  auto consider = [&](const SideInfoRates& cand) {
    ++res.evaluations;
    if (cand.r_a + cand.r_b < res.best.r_a + res.best.r_b) res.best = cand;
  };

  for (int s = 0; s < restarts; ++s) {
    RandomStream sub = rng.substream(static_cast<std::uint64_t>(s));
    Isometry t(haar_unitary(d_b, sub), b_lay, uv);

    // Candidate 1: pass V through untouched.
    std::vector<Mat> kid{Mat::Identity(d_v, d_v)};
    consider(side_info_rates(psi, t, KrausChannel(kid, v_in, w_out)));

    if (d_v > 1) {
      // Candidate 2: degrade V by a random channel with a d_v-dim environment.
      Mat big = haar_unitary(d_v * d_v, sub);
      std::vector<Mat> ks;
      for (Index e = 0; e < d_v; ++e) {
        Mat k(d_v, d_v);
        for (Index o = 0; o < d_v; ++o) k.row(o) = big.row(o * d_v + e).head(d_v);
        ks.push_back(std::move(k));
      }
      consider(side_info_rates(psi, t, KrausChannel(ks, v_in, w_out)));
    }
  }
  res.heuristic = true;
  return res;
}

MinCutResult min_cut_assistance(const PureState& psi, const std::string& a,
                                const std::string& b) {
  const auto helpers = psi.layout.labels_except({a, b});
  if (helpers.size() > 20)
    throw invalid_input("min_cut_assistance: too many helper subsystems");
  const unsigned count = 1u << helpers.size();

  MinCutResult res;
  std::vector<double> values(count);
  unsigned best = 0;
  for (unsigned mask = 0; mask < count; ++mask) {
    std::vector<std::string> at{a}, bt{b};
    for (std::size_t i = 0; i < helpers.size(); ++i)
      (mask & (1u << i) ? at : bt).push_back(helpers[i]);
    values[mask] = std::min(marginal_entropy(psi, at), marginal_entropy(psi, bt));
    if (values[mask] < values[best]) best = mask;  // strict: keeps lowest mask on ties
  }
  res.value = values[best];
  for (std::size_t i = 0; i < helpers.size(); ++i)
    if (best & (1u << i)) res.cut.push_back(helpers[i]);
  for (unsigned mask = 0; mask < count; ++mask) {
    if (mask == best || values[mask] > res.value + 1e-6) continue;
    std::vector<std::string> t;
    for (std::size_t i = 0; i < helpers.size(); ++i)
      if (mask & (1u << i)) t.push_back(helpers[i]);
    res.near_ties.push_back(std::move(t));
  }
  return res;
}

CoveringStats covering_experiment(const PureState& psi, int n, int trials,
                                  RandomStream& rng, Index cap) {
  if (psi.layout.size() != 3)
    throw invalid_input("covering_experiment: state must carry exactly three labels");
  if (n < 1 || trials < 2)
    throw invalid_input("covering_experiment: need n >= 1 and trials >= 2");
  if (n * std::log2(static_cast<double>(psi.dim())) >
      std::log2(static_cast<double>(cap)) + 1e-9)
    throw cap_exceeded("covering_experiment: n-copy dimension exceeds the dense cap");

  const std::string a = psi.layout[0].label;
  const std::string b = psi.layout[1].label;
  const std::string r = psi.layout[2].label;

  PureState psi_n = tensor_power_grouped(psi, n);
  const Index d_a = psi_n.layout.dim_of(a);
  const Index d_r = psi_n.layout.dim_of(r);
  DensityOperator rho_b = reduced_density(psi_n, {b});
  DensityOperator rho_r = reduced_density(psi_n, {r});

  CoveringStats st;
  st.big_d = 1.0 / (rho_b.mat * rho_b.mat).trace().real();
  st.bound = qe_bound(1, d_a, d_r, st.big_d);
  st.meaningful_regime =
      marginal_entropy(psi, {r}) < marginal_entropy(psi, {b});

  std::vector<double> errs(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    RandomStream sub = rng.substream(static_cast<std::uint64_t>(t));
    Instrument inst = build_instrument(d_a, 1, sub);
    PostMeasurement pm = post_measurement(psi_n, inst, {a});
    double e = 2.0 * pm.dropped_mass;
    for (const auto& o : pm.outcomes) {
      DensityOperator red = reduced_density(o.state, {r});
      e += o.prob * trace_norm(red.mat - rho_r.mat);
    }
    errs[t] = e;
  });

  double s1 = 0, s2 = 0;
  for (double v : errs) {
    s1 += v;
    s2 += v * v;
  }
  st.mc_mean = s1 / trials;
  st.mc_stderr =
      std::sqrt(std::max(s2 / trials - st.mc_mean * st.mc_mean, 0.0) / (trials - 1));
  st.holds = st.mc_mean <= st.bound + 3.0 * st.mc_stderr;
  return st;
}

namespace {

// Sum of p_branch * S(A) over every outcome branch of sequentially measuring
// the listed helpers in fresh random rank-1 bases.
double measure_out_helpers(const PureState& state, const std::string& a,
                           const std::vector<std::string>& order, std::size_t next,
                           RandomStream& trial_rng, std::uint64_t& draw)
{
  if (next == order.size()) return marginal_entropy(state, {a});
  const std::string& h = order[next];
  RandomStream sub = trial_rng.substream(draw++);
  Instrument inst = build_instrument(state.layout.dim_of(h), 1, sub);
  PostMeasurement pm = post_measurement(state, inst, {h});
  double acc = 0;
  for (const auto& o : pm.outcomes) {
    // Rank-1 outcome: the leftover "A1" register is one-dimensional; drop it.
    PureState left(o.state.amp, o.state.layout.erase({"A1"}));
    acc += o.prob * measure_out_helpers(left, a, order, next + 1, trial_rng, draw);
  }
  return acc;
}

}  // namespace

AssistanceStats assistance_protocol(const PureState& psi, const std::string& a,
                                    const std::string& b,
                                    std::vector<std::string> helper_order, int n,
                                    int trials, RandomStream& rng, Index cap) {
  if (!psi.layout.has(a) || !psi.layout.has(b))
    throw invalid_input("assistance_protocol: unknown party label");
  if (n < 1 || trials < 2)
    throw invalid_input("assistance_protocol: need n >= 1 and trials >= 2");
  if (n * std::log2(static_cast<double>(psi.dim())) >
      std::log2(static_cast<double>(cap)) + 1e-9)
    throw cap_exceeded("assistance_protocol: n-copy dimension exceeds the dense cap");

  if (helper_order.empty()) {
    helper_order = psi.layout.labels_except({a, b});
    std::vector<double> ent(helper_order.size());
    for (std::size_t i = 0; i < helper_order.size(); ++i)
      ent[i] = marginal_entropy(psi, {helper_order[i]});
    std::vector<std::size_t> idx(helper_order.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t x, std::size_t y) { return ent[x] > ent[y]; });
    std::vector<std::string> sorted;
    for (auto i : idx) sorted.push_back(helper_order[i]);
    helper_order = std::move(sorted);
  } else {
    for (const auto& h : helper_order)
      if (!psi.layout.has(h) || h == a || h == b)
        throw invalid_input("assistance_protocol: bad helper label '" + h + "'");
  }

  PureState psi_n = tensor_power_grouped(psi, n);

  std::vector<double> ents(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    RandomStream sub = rng.substream(static_cast<std::uint64_t>(t));
    std::uint64_t draw = 0;
    ents[t] = measure_out_helpers(psi_n, a, helper_order, 0, sub, draw);
  });

  AssistanceStats st;
  double s1 = 0, s2 = 0;
  for (double v : ents) {
    s1 += v;
    s2 += v * v;
  }
  st.mean_entropy = s1 / trials;
  st.stderr_entropy = std::sqrt(
      std::max(s2 / trials - st.mean_entropy * st.mean_entropy, 0.0) / (trials - 1));
  st.per_copy = st.mean_entropy / n;
  st.min_cut = min_cut_assistance(psi, a, b).value;
  st.trials = trials;
  return st;
}

SimultaneousAssistanceRecord simultaneous_assistance_experiment(
    const PureState& psi, const std::string& a, const std::string& b, int n,
    int trials, RandomStream& rng, Index cap) {
  // Complete product measurements commute, so measuring all helpers at once
  // draws from the same outcome distribution as the sequential protocol.
  SimultaneousAssistanceRecord rec;
  rec.stats = assistance_protocol(psi, a, b, {}, n, trials, rng, cap);
  rec.gap_to_min_cut_per_copy = rec.stats.min_cut - rec.stats.per_copy;
  return rec;
}

RateRegion mac_rates(const KrausChannel& lambda, const PureState& psi_a,
                     const PureState& psi_b) {
  if (psi_a.layout.size() != 2 || psi_b.layout.size() != 2)
    throw invalid_input("mac_rates: sender states must each carry two labels");
  const std::string a = psi_a.layout[0].label;
  const std::string b = psi_b.layout[0].label;
  const std::string c = lambda.output[0].label;

  PureState joint = tensor(psi_a, psi_b);
  // The channel consumes both senders' input halves.
  SubsystemLayout in{{psi_a.layout[1].label, psi_a.layout[1].dim},
                     {psi_b.layout[1].label, psi_b.layout[1].dim}};
  if (in.total_dim() != lambda.input.total_dim())
    throw invalid_input("mac_rates: channel input does not match the sender halves");
  KrausChannel lam(lambda.kraus, in, lambda.output);
  PureState out = apply_isometry(joint, stinespring(lam, "E0"));

  const double ia_bc = coherent_information(out, {a}, {b, c});
  const double ib_ac = coherent_information(out, {b}, {a, c});
  const double ib_c = coherent_information(out, {b}, {c});
  const double ia_c = coherent_information(out, {a}, {c});
  const double iab_c = coherent_information(out, {a, b}, {c});

  RateRegion reg;
  reg.parties = {a, b};
  reg.inequalities.push_back({{1, 0}, ia_bc, false});
  reg.inequalities.push_back({{0, 1}, ib_ac, false});
  reg.inequalities.push_back({{1, 1}, iab_c, false});
  reg.corners.push_back({{ia_bc, ib_c}, {b, a}});  // B peeled first
  reg.corners.push_back({{ia_c, ib_ac}, {a, b}});  // A peeled first
  return reg;
}

}  // namespace qsm
