// SPDX-License-Identifier: Apache-2.0
#include "qsm/merging.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qsm/entropy.hpp"
#include "qsm/linalg.hpp"
#include "qsm/parallel.hpp"
#include "qsm/presets.hpp"
#include "qsm/uhlmann.hpp"

namespace qsm {

double qe_bound(Index L, Index d_a, Index d_r, double big_d) {
  if (L < 1 || d_a < 1 || d_r < 1 || big_d <= 0)
    throw invalid_input("qe_bound: arguments must be positive");
  const double l = static_cast<double>(L);
  return 2.0 * std::sqrt(l * static_cast<double>(d_r) / big_d) +
         2.0 * l / static_cast<double>(d_a);
}

double quantum_error(const PostMeasurement& pm, const DensityOperator& rho_r,
                     const std::vector<std::string>& ref) {
  const Index l = pm.L;
  Mat ideal = kron(Mat::Identity(l, l) / static_cast<double>(l), rho_r.mat);
  double qe = 2.0 * pm.dropped_mass;  // floored outcomes at maximal distance
  for (const auto& o : pm.outcomes) {
    std::vector<std::string> keep{"A1"};
    keep.insert(keep.end(), ref.begin(), ref.end());
    DensityOperator red = reduced_density(o.state, keep);
    qe += o.prob * trace_norm(red.mat - ideal);
  }
  return qe;
}

AveragingStats averaging_bound_check(const DensityOperator& rho_ar, Index L,
                                 int samples, RandomStream& rng) {
  if (rho_ar.layout.size() != 2)
    throw invalid_input("averaging_bound_check: state must carry exactly two labels");
  if (samples < 2) throw invalid_input("averaging_bound_check: needs samples >= 2");
  const Index d = rho_ar.layout[0].dim;
  const Index dr = rho_ar.layout[1].dim;
  if (L < 1 || L > d) throw invalid_input("averaging_bound_check: need 1 <= L <= d_A");

  const std::string a = rho_ar.layout[0].label;
  const std::string r = rho_ar.layout[1].label;
  Mat rho_r = partial_trace(rho_ar, {r}).mat;
  const double pur_r = (rho_r * rho_r).trace().real();
  const double pur_ar = (rho_ar.mat * rho_ar.mat).trace().real();

  const double ld = static_cast<double>(L), dd = static_cast<double>(d);
  Mat mean_op = kron(Mat::Identity(L, L), rho_r) / dd;  // (L/d) tau_L (x) rho_R

  std::vector<double> dev2(static_cast<std::size_t>(samples));
  parallel_for(static_cast<std::size_t>(samples), [&](std::size_t i) {
    RandomStream sub = rng.substream(static_cast<std::uint64_t>(i));
    Mat u = haar_unitary(d, sub);
    Mat p = u.topRows(L);
    Mat pi = kron(p, Mat::Identity(dr, dr));
    Mat omega = pi * rho_ar.mat * pi.adjoint();
    const double h = hs_norm(omega - mean_op);
    dev2[i] = h * h;
  });

  AveragingStats st;
  double s1 = 0, s2 = 0;
  for (double v : dev2) {
    s1 += v;
    s2 += v * v;
  }
  const double m = s1 / samples;
  st.mc_mean = m;
  st.mc_stderr = std::sqrt(std::max(s2 / samples - m * m, 0.0) / (samples - 1));
  st.bound = ld * ld * pur_ar / (dd * dd);  // L^2/(d^2 D), D = 1/tr(rho_AR^2)
  // Exact Haar average of tr(omega^2), minus tr(<omega>^2).
  const double mean_tr2 =
      (ld / dd) * ((dd - ld) / (dd * dd - 1.0)) * pur_r +
      (ld / dd) * ((ld * dd - 1.0) / (dd * dd - 1.0)) * pur_ar;
  st.exact_mean = mean_tr2 - (ld / (dd * dd)) * pur_r;
  st.ok = st.mc_mean <= st.bound + 3.0 * st.mc_stderr;
  return st;
}

namespace {

Mat swap_matrix(Index d) {
  Mat f = Mat::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) f(j * d + i, i * d + j) = 1.0;
  return f;
}

}  // namespace

Mat twirl_analytic(Index d, Index L) {
  if (d < 2 || L < 1 || L > d) throw invalid_input("twirl_analytic: need 2 <= d, 1 <= L <= d");
  const double dd = static_cast<double>(d), ld = static_cast<double>(L);
  const double ci = (ld / dd) * (dd - ld) / (dd * dd - 1.0);
  const double cf = (ld / dd) * (ld * dd - 1.0) / (dd * dd - 1.0);
  return ci * Mat::Identity(d * d, d * d) + cf * swap_matrix(d);
}

Mat twirl_monte_carlo(Index d, Index L, int samples, RandomStream& rng) {
  if (d < 2 || L < 1 || L > d)
    throw invalid_input("twirl_monte_carlo: need 2 <= d, 1 <= L <= d");
  if (samples < 1) throw invalid_input("twirl_monte_carlo: needs samples >= 1");
  Mat f = swap_matrix(d);
  Mat acc = Mat::Zero(d * d, d * d);
  for (int s = 0; s < samples; ++s) {
    RandomStream sub = rng.substream(static_cast<std::uint64_t>(s));
    Mat u = haar_unitary(d, sub);
    Mat p = u.topRows(L);
    Mat proj = p.adjoint() * p;  // U^dag Pi U, rank L
    acc += kron(proj, proj) * f;
  }
  return acc / static_cast<double>(samples);
}

TwirlComparison compare_twirl(Index d, Index L, int samples, RandomStream& rng) {
  TwirlComparison tc;
  tc.d = d;
  tc.L = L;
  Mat an = twirl_analytic(d, L);
  Mat mc = twirl_monte_carlo(d, L, samples, rng);
  tc.max_abs_gap = (an - mc).cwiseAbs().maxCoeff();
  tc.trace_analytic = an.trace().real();
  tc.trace_mc = mc.trace().real();
  return tc;
}

PureState make_merge_target(const PureState& psi_n, Index L, const std::string& a,
                            const std::string& b, const std::string& r) {
  for (const auto& l : {a, b, r})
    if (!psi_n.layout.has(l))
      throw invalid_input("make_merge_target: state lacks label '" + l + "'");
  PureState phi = maximally_entangled(L, "A1", "B1");
  PureState copy(psi_n.amp, psi_n.layout.renamed(a, "Bp"), psi_n.subnormalized);
  PureState target = tensor(phi, copy);
  // Canonical order [A1, B1, Bp, b, r].
  return permute_subsystems(target, {"A1", "B1", "Bp", b, r});
}

DecodeResult decode_outcomes(const PostMeasurement& pm, const PureState& target,
                             const std::vector<std::string>& ref) {
  DecodeResult res;
  if (pm.outcomes.empty()) return res;

  std::vector<std::string> fixed{"A1"};
  fixed.insert(fixed.end(), ref.begin(), ref.end());

  // Pad the target with a |0> junk register when Bob's actual side is larger
  // than the target's Bob side (extra entanglement register to dispose of).
  const Index ma = pm.outcomes.front().state.layout.dim_of(
      pm.outcomes.front().state.layout.labels_except(fixed));
  const Index mt = target.layout.dim_of(target.layout.labels_except(fixed));
  PureState padded = target;
  if (mt < ma) {
    const Index jd = (ma + mt - 1) / mt;
    Vec j0 = Vec::Zero(jd);
    j0[0] = 1.0;
    padded = tensor(target, PureState(std::move(j0), SubsystemLayout{{"J0", jd}}));
  }

  // Decoder value via the Gram form: with A, T the (fixed x movable) reshapes
  // of outcome and target, the optimal decoder attains (sum_i sigma_i(T^dag A))^2,
  // and the sigma^2 are the eigenvalues of A^dag (T T^dag) A — a problem sized
  // by Bob's actual side, independent of the target's much larger movable
  // dimension. uhlmann_decoder builds the attaining isometry explicitly; unit
  // tests pin the two paths against each other.
  const Mat tm = reshape_group_first(padded, fixed);
  const Mat gram = tm * tm.adjoint();

  double mean = 0;
  res.fidelity.resize(pm.outcomes.size());
  for (std::size_t i = 0; i < pm.outcomes.size(); ++i) {
    const Mat am = reshape_group_first(pm.outcomes[i].state, fixed);
    const Mat b = am.adjoint() * (gram * am);
    Eigen::SelfAdjointEigenSolver<Mat> es(b, Eigen::EigenvaluesOnly);
    double s = 0;
    for (Index k = 0; k < es.eigenvalues().size(); ++k)
      s += std::sqrt(std::max(es.eigenvalues()[k], 0.0));
    const double fid = std::min(s * s, 1.0);
    res.fidelity[i] = fid;
    mean += pm.outcomes[i].prob * fid;
  }
  res.mean_fidelity = mean;  // dropped mass scores zero
  return res;
}

MergeReport run_merging(const PureState& psi, int n, Index L, Index K, int trials,
                        RandomStream& rng, const MergeOptions& options) {
  if (psi.layout.size() != 3)
    throw invalid_input("run_merging: state must carry exactly three labels (A, B, R)");
  if (n < 1 || L < 1 || K < 1 || trials < 1)
    throw invalid_input("run_merging: n, L, K, trials must all be >= 1");

  const std::string a = psi.layout[0].label;
  const std::string b = psi.layout[1].label;
  const std::string r = psi.layout[2].label;

  const double total_bits =
      n * std::log2(static_cast<double>(psi.dim())) + 2.0 * std::log2(static_cast<double>(K));
  if (total_bits > std::log2(static_cast<double>(options.cap)) + 1e-9)
    throw cap_exceeded("run_merging: (d_A d_B d_R)^n K^2 exceeds the dense cap");

  double da_n = std::pow(static_cast<double>(psi.layout[0].dim), n);
  if (static_cast<double>(L) > da_n * static_cast<double>(K))
    throw invalid_input("run_merging: L exceeds Alice's total dimension");

  PureState psi_n = tensor_power_grouped(psi, n);
  PureState full = psi_n;
  std::vector<std::string> alice{a};
  if (K > 1) {
    full = tensor(psi_n, maximally_entangled(K, "A0", "B0"));
    alice.push_back("A0");
  }
  const Index d_alice = full.layout.dim_of(alice);

  MergeReport rep;
  rep.n = n;
  rep.L = L;
  rep.K = K;
  rep.d_alice = d_alice;
  rep.d_bob = full.layout.dim_of(b) * (K > 1 ? K : 1);
  rep.d_ref = full.layout.dim_of(r);
  rep.ebits_consumed = std::log2(static_cast<double>(K));
  rep.ebits_produced = std::log2(static_cast<double>(L));
  rep.trials = trials;
  rep.seed = rng.seed();
  rep.input_entanglement =
      n * marginal_entropy(psi, {b}) + std::log2(static_cast<double>(K));

  DensityOperator rho_r = reduced_density(full, {r});
  // D comes from Bob's side (entanglement register included): the purity of
  // what Alice holds jointly with R, not of the reference alone.
  std::vector<std::string> bob{b};
  if (K > 1) bob.push_back("B0");
  DensityOperator rho_b = reduced_density(full, bob);
  const double big_d = 1.0 / (rho_b.mat * rho_b.mat).trace().real();
  rep.q_e_bound = qe_bound(L, d_alice, rep.d_ref, big_d);

  PureState target = make_merge_target(psi_n, L, a, b, r);

  std::vector<double> qes(static_cast<std::size_t>(trials));
  std::vector<double> fids(static_cast<std::size_t>(trials));
  std::vector<double> eouts(static_cast<std::size_t>(trials));
  Index shape_n = 0, shape_lp = 0;
  {
    Instrument probe = build_instrument(d_alice, L, rng);
    shape_n = probe.N;
    shape_lp = probe.Lp;
  }

  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    RandomStream sub = rng.substream(static_cast<std::uint64_t>(t));
    Instrument inst = build_instrument(d_alice, L, sub);
    PostMeasurement pm = post_measurement(full, inst, alice);
    qes[t] = quantum_error(pm, rho_r, {r});
    double eout = 0;
    for (const auto& o : pm.outcomes)
      eout += o.prob * marginal_entropy(o.state, {"A1", r});
    eouts[t] = eout;
    fids[t] = options.decode ? decode_outcomes(pm, target, {r}).mean_fidelity : 0.0;
  });

  rep.N = shape_n;
  rep.Lp = shape_lp;
  rep.cbits = std::log2(static_cast<double>(shape_n + 1));

  auto mean_stderr = [trials](const std::vector<double>& v, double& m, double& se) {
    double s1 = 0, s2 = 0;
    for (double x : v) {
      s1 += x;
      s2 += x * x;
    }
    m = s1 / trials;
    se = (trials > 1)
             ? std::sqrt(std::max(s2 / trials - m * m, 0.0) / (trials - 1))
             : 0.0;
  };
  mean_stderr(qes, rep.q_e, rep.q_e_stderr);
  mean_stderr(eouts, rep.output_entanglement, rep.output_entanglement_stderr);
  if (options.decode) mean_stderr(fids, rep.mean_fidelity, rep.fidelity_stderr);
  return rep;
}

LedgerCheck entanglement_ledger_check(const MergeReport& report) {
  LedgerCheck c;
  c.e_in = report.input_entanglement;
  c.e_out = report.output_entanglement;
  c.slack = 0.05 * report.n;
  c.ok = c.e_out <= c.e_in + c.slack;
  return c;
}

ClassicalCostCheck classical_cost_check(const MergeReport& report,
                                        const PureState& psi) {
  if (psi.layout.size() != 3)
    throw invalid_input("classical_cost_check: state must carry three labels");
  ClassicalCostCheck c;
  c.cbits_per_copy = report.cbits / report.n;
  c.mutual_information_ar = mutual_information(psi, {psi.layout[0].label},
                                               {psi.layout[2].label});
  c.gap = c.cbits_per_copy - c.mutual_information_ar;
  return c;
}

}  // namespace qsm
