// SPDX-License-Identifier: Apache-2.0
//
// qsm: seeded experiment harness. Every operation of the library is exposed
// as a subcommand that emits machine-readable results (JSON or CSV).
// Exit codes: 0 pass, 2 property violation, 3 resource limit, 4 bad input.

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qsm/qsm.hpp"
#include "qsm/serialize.hpp"

namespace {

using qsm::Index;
using qsm::json;
using qsm::PureState;
using qsm::RandomStream;

constexpr std::uint64_t kDefaultSeed = 12345;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QSM_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return kDefaultSeed;
}

struct RunConfig {
  std::string subcommand;
  std::uint64_t seed = kDefaultSeed;
  int trials = 10;
  int n = 1;
  std::string l_spec = "1";  // integer or "max"
  Index l_resolved = 1;
  Index k = 1;
  double delta = 0.1;
  Index d_a = 2, d_b = 2, d_r = 2;
  std::string state = "epr";
  std::string out;  // empty = stdout
  std::string format = "json";
  Index cap = Index{1} << 16;
  bool decode = true;
  // subcommand-specific extras
  int samples = 2000;
  std::vector<Index> d_list;
  std::string p_spec = "0.5,0.5";
  std::string parties_spec;
  std::string a_label = "A", b_label = "B";
  std::string helpers_spec;
  Index rank_a = 2, rank_b = 2;
  std::string channel = "identity";
};

json config_json(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["n"] = c.n;
  j["L"] = c.l_resolved;
  j["K"] = c.k;
  j["delta"] = c.delta;
  j["dims"] = {{"dA", c.d_a}, {"dB", c.d_b}, {"dR", c.d_r}};
  j["state"] = c.state;
  j["out"] = c.out.empty() ? "-" : c.out;
  j["format"] = c.format;
  return j;
}

void emit(const RunConfig& c, const std::string& payload) {
  if (c.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw qsm::invalid_input("cannot open output file '" + c.out + "'");
  f << payload;
}

void emit_json(const RunConfig& c, const json& j) { emit(c, j.dump(2) + "\n"); }

PureState load_state(const RunConfig& c, RandomStream& rng) {
  const auto names = qsm::preset_names();
  for (const auto& n : names)
    if (n == c.state) return qsm::make_preset(c.state, c.d_a, c.d_b, c.d_r, &rng);

  std::ifstream f(c.state);
  if (!f)
    throw qsm::invalid_input("state '" + c.state +
                             "' is neither a preset nor a readable file");
  nlohmann::json j;
  f >> j;
  std::vector<qsm::Subsystem> parts;
  for (const auto& p : j.at("layout"))
    parts.push_back({p.at("label").get<std::string>(), p.at("dim").get<Index>()});
  const auto re = j.at("amp_re").get<std::vector<double>>();
  const auto im = j.at("amp_im").get<std::vector<double>>();
  if (re.size() != im.size())
    throw qsm::invalid_input("amplitude file: amp_re/amp_im length mismatch");
  qsm::Vec amp(static_cast<Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i)
    amp[static_cast<Index>(i)] = qsm::cxd(re[i], im[i]);
  return PureState(std::move(amp), qsm::SubsystemLayout(std::move(parts)));
}

Index resolve_l(const RunConfig& c, const PureState& psi) {
  if (c.l_spec != "max") {
    char* end = nullptr;
    long long v = std::strtoll(c.l_spec.c_str(), &end, 10);
    if (!end || *end != '\0' || v < 1)
      throw qsm::invalid_input("--L must be a positive integer or 'max'");
    return static_cast<Index>(v);
  }
  // Largest useful block rank: 2^max(0, floor(-n S(A|B))).
  const std::string a = psi.layout[0].label, b = psi.layout[1].label;
  const double s_ab = qsm::conditional_entropy(psi, {a}, {b});
  const double bits = std::floor(-static_cast<double>(c.n) * s_ab + 1e-9);
  if (bits <= 0) return 1;
  return Index{1} << static_cast<int>(bits);
}

std::vector<std::string> split_labels(const std::string& spec) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : spec) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

qsm::RVec parse_spectrum(const std::string& spec) {
  const auto items = split_labels(spec);
  if (items.empty()) throw qsm::invalid_input("--p: empty spectrum");
  qsm::RVec p(static_cast<Index>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i) {
    char* end = nullptr;
    p[static_cast<Index>(i)] = std::strtod(items[i].c_str(), &end);
    if (!end || *end != '\0')
      throw qsm::invalid_input("--p: cannot parse '" + items[i] + "'");
  }
  return p;
}

// ---- merge ------------------------------------------------------------------

int cmd_merge(RunConfig c) {
  RandomStream rng(c.seed);
  PureState psi = load_state(c, rng);
  c.l_resolved = resolve_l(c, psi);

  qsm::MergeOptions opts;
  opts.cap = c.cap;
  opts.decode = c.decode;
  qsm::MergeReport rep = qsm::run_merging(psi, c.n, c.l_resolved, c.k, c.trials,
                                          rng, opts);
  qsm::LedgerCheck ledger = qsm::entanglement_ledger_check(rep);
  qsm::ClassicalCostCheck cc = qsm::classical_cost_check(rep, psi);

  const bool chain_ok =
      !c.decode || rep.mean_fidelity + qsm::tol::inequality >=
                       1.0 - 2.0 * std::sqrt(std::max(rep.q_e, 0.0));
  const bool qe_ok = rep.q_e <= rep.q_e_bound + 3.0 * rep.q_e_stderr +
                                    qsm::tol::inequality;
  const bool all_ok = chain_ok && qe_ok && ledger.ok;

  if (c.format == "csv") {
    std::string payload =
        "q_e,q_e_bound,mean_fidelity,ebits_in,ebits_out,cbits,trials,seed\n";
    payload += qsm::format_double(rep.q_e) + "," +
               qsm::format_double(rep.q_e_bound) + "," +
               qsm::format_double(rep.mean_fidelity) + "," +
               qsm::format_double(rep.ebits_consumed) + "," +
               qsm::format_double(rep.ebits_produced) + "," +
               qsm::format_double(rep.cbits) + "," + std::to_string(rep.trials) +
               "," + std::to_string(rep.seed) + "\n";
    emit(c, payload);
  } else {
    json j;
    j["config"] = config_json(c);
    j["report"] = qsm::to_json(rep);
    json checks;
    checks["fidelity_chain_ok"] = chain_ok;
    checks["qe_within_bound"] = qe_ok;
    checks["ledger_ok"] = ledger.ok;
    checks["ledger_e_in"] = ledger.e_in;
    checks["ledger_e_out"] = ledger.e_out;
    checks["cbits_per_copy"] = cc.cbits_per_copy;
    checks["mutual_information_ar"] = cc.mutual_information_ar;
    checks["classical_gap"] = cc.gap;
    checks["all_ok"] = all_ok;
    j["checks"] = std::move(checks);
    emit_json(c, j);
  }
  return all_ok ? 0 : 2;
}

// ---- twirl ------------------------------------------------------------------

int cmd_twirl(RunConfig c) {
  RandomStream rng(c.seed);
  std::vector<Index> dims = c.d_list;
  if (dims.empty()) dims = {2, 3, 4};

  std::vector<qsm::TwirlComparison> rows;
  std::uint64_t sub = 0;
  for (Index d : dims) {
    std::vector<Index> ls;
    if (c.l_spec == "max") {
      ls.push_back(d);
    } else if (c.l_spec == "all" || c.l_spec == "1") {
      // default: sweep every block rank for this dimension
      for (Index l = 1; l <= d; ++l) ls.push_back(l);
    } else {
      char* end = nullptr;
      long long v = std::strtoll(c.l_spec.c_str(), &end, 10);
      if (!end || *end != '\0' || v < 1)
        throw qsm::invalid_input("--L must be a positive integer, 'all', or 'max'");
      ls.push_back(static_cast<Index>(v));
    }
    for (Index l : ls) {
      if (l > d) continue;
      RandomStream r = rng.substream(sub++);
      rows.push_back(qsm::compare_twirl(d, l, c.samples, r));
    }
  }

  double max_gap = 0;
  for (const auto& r : rows) max_gap = std::max(max_gap, r.max_abs_gap);
  // 0.02 is the certified band at 2000 samples; scale as 1/sqrt(samples).
  const double threshold = 0.02 * std::sqrt(2000.0 / std::max(c.samples, 1));
  const bool ok = max_gap <= threshold;

  if (c.format == "csv") {
    std::string payload = qsm::twirl_csv_header() + "\n";
    for (const auto& r : rows) {
      payload += std::to_string(static_cast<long long>(r.d)) + "," +
                 std::to_string(static_cast<long long>(r.L)) + "," +
                 qsm::format_double(r.max_abs_gap) + "," +
                 qsm::format_double(r.trace_analytic) + "," +
                 qsm::format_double(r.trace_mc) + "\n";
    }
    emit(c, payload);
  } else {
    json j;
    j["config"] = config_json(c);
    j["samples"] = c.samples;
    json arr = json::array();
    for (const auto& r : rows) {
      json e;
      e["d"] = r.d;
      e["L"] = r.L;
      e["max_abs_gap"] = r.max_abs_gap;
      e["trace_analytic"] = r.trace_analytic;
      e["trace_mc"] = r.trace_mc;
      arr.push_back(std::move(e));
    }
    j["rows"] = std::move(arr);
    j["max_gap"] = max_gap;
    j["threshold"] = threshold;
    j["ok"] = ok;
    emit_json(c, j);
  }
  return ok ? 0 : 2;
}

// ---- region -----------------------------------------------------------------

int cmd_region(RunConfig c) {
  RandomStream rng(c.seed);
  PureState psi = load_state(c, rng);
  std::vector<std::string> parties = split_labels(c.parties_spec);
  if (parties.empty()) parties = psi.layout.labels();

  qsm::RateRegion reg = qsm::distributed_compression_region(psi, parties);
  const double total = qsm::marginal_entropy(psi, parties);
  double worst_sum_gap = 0;
  for (const auto& corner : reg.corners) {
    double s = 0;
    for (double rr : corner.rates) s += rr;
    worst_sum_gap = std::max(worst_sum_gap, std::abs(s - total));
  }
  const bool ok = reg.corner_violation() <= qsm::tol::inequality &&
                  worst_sum_gap <= qsm::tol::inequality;

  if (c.format == "csv") {
    emit(c, qsm::to_csv(reg));
  } else {
    json j;
    j["config"] = config_json(c);
    j["region"] = qsm::to_json(reg);
    j["joint_entropy"] = total;
    j["max_corner_sum_gap"] = worst_sum_gap;
    j["ok"] = ok;
    emit_json(c, j);
  }
  return ok ? 0 : 2;
}

// ---- assist -----------------------------------------------------------------

int cmd_assist(RunConfig c) {
  RandomStream rng(c.seed);
  PureState psi = load_state(c, rng);
  std::vector<std::string> helpers = split_labels(c.helpers_spec);

  qsm::AssistanceStats st = qsm::assistance_protocol(
      psi, c.a_label, c.b_label, helpers, c.n, c.trials, rng, c.cap);
  qsm::MinCutResult mc = qsm::min_cut_assistance(psi, c.a_label, c.b_label);

  // LOCC cannot beat the min cut; allow the 3-sigma statistical band.
  const double band = 3.0 * st.stderr_entropy / c.n + qsm::tol::inequality;
  const bool ok = st.per_copy <= st.min_cut + band;

  if (c.format == "csv") {
    std::string payload = "mean_entropy,stderr_entropy,per_copy,min_cut,trials\n";
    payload += qsm::format_double(st.mean_entropy) + "," +
               qsm::format_double(st.stderr_entropy) + "," +
               qsm::format_double(st.per_copy) + "," +
               qsm::format_double(st.min_cut) + "," + std::to_string(st.trials) +
               "\n";
    emit(c, payload);
  } else {
    json j;
    j["config"] = config_json(c);
    json s;
    s["mean_entropy"] = st.mean_entropy;
    s["stderr_entropy"] = st.stderr_entropy;
    s["per_copy"] = st.per_copy;
    s["trials"] = st.trials;
    j["assistance"] = std::move(s);
    json m;
    m["value"] = mc.value;
    m["cut"] = mc.cut;
    m["near_ties"] = mc.near_ties;
    j["min_cut"] = std::move(m);
    j["gap_to_min_cut_per_copy"] = st.min_cut - st.per_copy;
    j["ok"] = ok;
    emit_json(c, j);
  }
  return ok ? 0 : 2;
}

// ---- mac --------------------------------------------------------------------

int cmd_mac(RunConfig c) {
  RandomStream rng(c.seed);
  PureState in_a = qsm::maximally_entangled(c.rank_a, "A", "Ain");
  PureState in_b = qsm::maximally_entangled(c.rank_b, "B", "Bin");
  const Index m = c.rank_a * c.rank_b;

  std::vector<qsm::Mat> kraus;
  if (c.channel == "identity") {
    kraus.push_back(qsm::Mat::Identity(m, m));
  } else if (c.channel == "random") {
    // Random channel with a qubit environment: isometry C^m -> C^m (x) C^2.
    qsm::Mat big = qsm::haar_unitary(2 * m, rng);
    for (Index e = 0; e < 2; ++e) {
      qsm::Mat k(m, m);
      for (Index o = 0; o < m; ++o) k.row(o) = big.row(o * 2 + e).head(m);
      kraus.push_back(std::move(k));
    }
  } else {
    throw qsm::invalid_input("--channel must be 'identity' or 'random'");
  }
  qsm::KrausChannel lambda(kraus, qsm::SubsystemLayout{{"X", m}},
                           qsm::SubsystemLayout{{"C", m}});

  qsm::RateRegion reg = qsm::mac_rates(lambda, in_a, in_b);
  const double iab_c = reg.inequalities[2].bound;
  double worst_sum_gap = 0;
  for (const auto& corner : reg.corners)
    worst_sum_gap =
        std::max(worst_sum_gap, std::abs(corner.rates[0] + corner.rates[1] - iab_c));
  const bool ok = reg.corner_violation() <= qsm::tol::inequality &&
                  worst_sum_gap <= qsm::tol::inequality;

  if (c.format == "csv") {
    emit(c, qsm::to_csv(reg));
  } else {
    json j;
    j["config"] = config_json(c);
    j["channel"] = c.channel;
    j["region"] = qsm::to_json(reg);
    j["i_ab_c"] = iab_c;
    j["max_corner_sum_gap"] = worst_sum_gap;
    j["ok"] = ok;
    emit_json(c, j);
  }
  return ok ? 0 : 2;
}

// ---- typ --------------------------------------------------------------------

int cmd_typ(RunConfig c) {
  qsm::RVec p = parse_spectrum(c.p_spec);
  qsm::TypicalProjector tp = qsm::typical_projector(p, c.n, c.delta);
  qsm::TypicalityCertificate cert = qsm::certify_typicality(tp);
  const int n_small = std::max(1, c.n / 2);
  const bool trend =
      (n_small >= c.n) || qsm::weight_trend_holds(p, c.delta, n_small, c.n);
  const bool ok = cert.all() && trend;

  if (c.format == "csv") {
    emit(c, "n,delta,rank,weight\n" + qsm::typicality_csv_row(tp) + "\n");
  } else {
    json j;
    j["config"] = config_json(c);
    j["p"] = std::vector<double>(p.data(), p.data() + p.size());
    j["typicality"] = qsm::to_json(tp, cert);
    j["c1_weight_trend"] = trend;
    j["ok"] = ok;
    emit_json(c, j);
  }
  return ok ? 0 : 2;
}

// ---- selftest ---------------------------------------------------------------

struct SuiteResult {
  std::string name;
  int passed = 0;
  int total = 0;
};

int cmd_selftest(RunConfig c) {
  using qsm::DensityOperator;
  using qsm::Mat;
  using qsm::SubsystemLayout;
  using qsm::Vec;
  RandomStream root(c.seed);
  const int t = c.trials;
  std::vector<SuiteResult> suites;

  auto run = [&](const std::string& name, int total, auto&& fn) {
    SuiteResult s;
    s.name = name;
    s.total = total;
    RandomStream rng = root.substream(suites.size());
    for (int i = 0; i < total; ++i) {
      RandomStream case_rng = rng.substream(static_cast<std::uint64_t>(i));
      if (fn(i, case_rng)) ++s.passed;
    }
    suites.push_back(std::move(s));
  };

  auto rand_layout = [](RandomStream& rng) {
    const int parts = 1 + static_cast<int>(rng.uniform() * 3);
    std::vector<qsm::Subsystem> v;
    const char* names[4] = {"A", "B", "C", "D"};
    for (int i = 0; i < parts; ++i)
      v.push_back({names[i], 2 + static_cast<Index>(rng.uniform() * 3)});
    return SubsystemLayout(std::move(v));
  };

  run("layout-roundtrip", t, [&](int, RandomStream& rng) {
    SubsystemLayout lay = rand_layout(rng);
    std::vector<Index> digits;
    const Index flat = static_cast<Index>(rng.uniform() * lay.total_dim());
    lay.unravel(flat, digits);
    if (lay.ravel(digits) != flat) return false;
    PureState psi = qsm::haar_state(lay, rng);
    auto order = lay.labels();
    std::reverse(order.begin(), order.end());
    PureState back =
        qsm::permute_subsystems(qsm::permute_subsystems(psi, order), lay.labels());
    return (back.amp - psi.amp).norm() < 1e-12;
  });

  run("state-invariants", t, [&](int, RandomStream& rng) {
    SubsystemLayout lay = rand_layout(rng);
    PureState psi = qsm::haar_state(lay, rng);
    if (std::abs(psi.norm2() - 1.0) > qsm::tol::state_norm) return false;
    DensityOperator rho = qsm::random_density(lay, 1 + (lay.total_dim() / 2), rng);
    return std::abs(rho.trace() - 1.0) <= qsm::tol::density;
  });

  run("haar-moments", 3, [&](int i, RandomStream& rng) {
    const Index d = 2 + i;
    const int samples = std::max(200, t);
    double s1 = 0, s2 = 0;
    for (int k = 0; k < samples; ++k) {
      const double v = std::norm(qsm::haar_unitary(d, rng)(0, 0));
      s1 += v;
      s2 += v * v;
    }
    const double mean = s1 / samples;
    const double se =
        std::sqrt(std::max(s2 / samples - mean * mean, 0.0) / (samples - 1));
    return std::abs(mean - 1.0 / d) <= 3.0 * se + 1e-6;
  });

  run("purify-roundtrip", std::max(10, t / 10), [&](int, RandomStream& rng) {
    const Index d = 2 + static_cast<Index>(rng.uniform() * 4);
    DensityOperator rho =
        qsm::random_density(SubsystemLayout{{"X", d}}, 1 + d / 2, rng);
    PureState psi = qsm::purify(rho, "P");
    if (psi.layout.dim_of("P") != d) return false;
    DensityOperator back = qsm::reduced_density(psi, {"X"});
    return (back.mat - rho.mat).cwiseAbs().maxCoeff() < 1e-9;
  });

  run("schmidt-balance", t, [&](int, RandomStream& rng) {
    PureState psi =
        qsm::haar_state(SubsystemLayout{{"A", 3}, {"B", 2}, {"C", 4}}, rng);
    const double sa = qsm::marginal_entropy(psi, {"A"});
    const double sbc = qsm::marginal_entropy(psi, {"B", "C"});
    return std::abs(sa - sbc) <= qsm::tol::inequality;
  });

  auto rand_density3 = [](RandomStream& rng) {
    return qsm::random_density(SubsystemLayout{{"A", 2}, {"B", 2}, {"C", 2}},
                               1 + static_cast<Index>(rng.uniform() * 8), rng);
  };

  run("strong-subadditivity", t, [&](int, RandomStream& rng) {
    return qsm::strong_subadditivity_check(rand_density3(rng), {"A"}, {"B"}, {"C"})
        .ok;
  });

  run("fuchs-van-de-graaf", t, [&](int, RandomStream& rng) {
    SubsystemLayout lay{{"X", 4}};
    DensityOperator a = qsm::random_density(lay, 3, rng);
    DensityOperator b = qsm::random_density(lay, 3, rng);
    return qsm::fuchs_van_de_graaf_check(a, b).ok;
  });

  run("fannes", t, [&](int, RandomStream& rng) {
    SubsystemLayout lay{{"X", 4}};
    DensityOperator a = qsm::random_density(lay, 4, rng);
    DensityOperator b = qsm::random_density(lay, 4, rng);
    return qsm::fannes_check(a, b).ok;
  });

  run("gentle-measurement", t, [&](int, RandomStream& rng) {
    SubsystemLayout lay{{"X", 4}};
    DensityOperator rho = qsm::random_density(lay, 3, rng);
    Mat u = qsm::haar_unitary(4, rng);
    qsm::RVec ev(4);
    for (Index i = 0; i < 4; ++i) ev[i] = rng.uniform();
    Mat x = u * ev.asDiagonal() * u.adjoint();
    return qsm::gentle_measurement_check(rho, x).ok;
  });

  run("norm-dimension", t, [&](int, RandomStream& rng) {
    const Index d = 3 + static_cast<Index>(rng.uniform() * 4);
    Mat x(d, d);
    for (Index j = 0; j < d; ++j)
      for (Index i = 0; i < d; ++i) x(i, j) = rng.complex_gaussian();
    return qsm::norm_dim_check(x).ok;
  });

  run("chain-rule", t, [&](int, RandomStream& rng) {
    return qsm::chain_rule_check(rand_density3(rng), {"A"}, {"B"}, {"C"}).ok;
  });

  run("uhlmann-agreement", std::max(20, t / 5), [&](int, RandomStream& rng) {
    SubsystemLayout lay{{"F", 3}, {"M", 3}};
    PureState s1 = qsm::haar_state(lay, rng);
    PureState s2 = qsm::haar_state(lay, rng);
    qsm::DecoderResult dr = qsm::uhlmann_decoder(s1, s2, {"F"});
    const double f = qsm::fidelity(qsm::reduced_density(s1, {"F"}),
                                   qsm::reduced_density(s2, {"F"}));
    return std::abs(dr.achieved_fidelity - f) <= qsm::tol::uhlmann;
  });

  run("instrument-complete", std::max(20, t / 5), [&](int, RandomStream& rng) {
    const Index d = 2 + static_cast<Index>(rng.uniform() * 10);
    const Index l = 1 + static_cast<Index>(rng.uniform() * d);
    qsm::Instrument inst = qsm::build_instrument(d, std::min(l, d), rng);
    if (inst.completeness_defect() > qsm::tol::completeness) return false;
    PureState psi = qsm::haar_state(SubsystemLayout{{"A", d}, {"R", 2}}, rng);
    qsm::PostMeasurement pm = qsm::post_measurement(psi, inst, {"A"});
    double total = pm.dropped_mass;
    for (const auto& o : pm.outcomes) total += o.prob;
    return std::abs(total - 1.0) <= qsm::tol::completeness;
  });

  run("twirl-gap", 9, [&](int i, RandomStream& rng) {
    static const Index cases[9][2] = {{2, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 3},
                                      {4, 1}, {4, 2}, {4, 3}, {4, 4}};
    const int samples = 500;
    qsm::TwirlComparison tc =
        qsm::compare_twirl(cases[i][0], cases[i][1], samples, rng);
    return tc.max_abs_gap <= 0.02 * std::sqrt(2000.0 / samples);
  });

  run("averaging-bound", 5, [&](int i, RandomStream& rng) {
    PureState psi =
        qsm::haar_state(SubsystemLayout{{"A", 4}, {"R", 2}, {"E", 3}}, rng);
    DensityOperator rho = qsm::reduced_density(psi, {"A", "R"});
    return qsm::averaging_bound_check(rho, (i % 2) ? 2 : 1, 200, rng).ok;
  });

  run("merge-exact", 2, [&](int i, RandomStream& rng) {
    if (i == 0) {
      PureState epr = qsm::make_preset("epr", 2, 2, 1, nullptr);
      qsm::MergeReport rep = qsm::run_merging(epr, 1, 2, 1, 3, rng);
      return rep.q_e <= 1e-9 && rep.mean_fidelity >= 1.0 - 1e-9;
    }
    PureState prod = qsm::make_preset("product", 2, 2, 2, nullptr);
    qsm::MergeReport rep = qsm::run_merging(prod, 2, 1, 1, 3, rng);
    return rep.mean_fidelity >= 1.0 - 1e-9;
  });

  run("merge-ledger", 3, [&](int i, RandomStream& rng) {
    PureState psi = (i == 0)   ? qsm::make_preset("epr", 2, 2, 1, nullptr)
                    : (i == 1) ? qsm::make_preset("pure-ab", 2, 2, 1, nullptr)
                               : qsm::make_preset("epr-ar", 2, 1, 2, nullptr);
    qsm::MergeOptions opts;
    opts.decode = false;
    qsm::MergeReport rep =
        qsm::run_merging(psi, 1, 1, (i == 2) ? 2 : 1, 5, rng, opts);
    return qsm::entanglement_ledger_check(rep).ok;
  });

  run("typicality-oracles", 4, [&](int i, RandomStream&) {
    if (i == 0) {
      qsm::RVec p(2);
      p << 0.5, 0.5;
      qsm::TypicalProjector tp = qsm::typical_projector(p, 10, 0.1);
      return tp.rank() == 1024 && std::abs(tp.weight - 1.0) <= 1e-12;
    }
    qsm::RVec p(2);
    p << 0.2, 0.8;
    if (i == 1) {
      qsm::TypicalProjector tp = qsm::typical_projector(p, 10, 0.1);
      return tp.rank() == 45 && std::abs(tp.weight - 0.301989888) <= 1e-9;
    }
    if (i == 2) return qsm::certify_typicality(qsm::typical_projector(p, 20, 0.1)).all();
    return qsm::weight_trend_holds(p, 0.1, 10, 20);
  });

  run("compression-corners", 2, [&](int i, RandomStream& rng) {
    if (i == 0) {
      PureState pab = qsm::make_preset("pure-ab", 2, 2, 1, nullptr);
      qsm::RateRegion reg = qsm::distributed_compression_region(pab, {"A", "B"});
      const double sa = qsm::marginal_entropy(pab, {"A"});
      for (const auto& corner : reg.corners) {
        const double hi = std::max(corner.rates[0], corner.rates[1]);
        const double lo = std::min(corner.rates[0], corner.rates[1]);
        if (std::abs(hi - sa) > 1e-9 || std::abs(lo + sa) > 1e-9) return false;
      }
      return reg.corner_violation() <= qsm::tol::inequality;
    }
    PureState psi =
        qsm::haar_state(SubsystemLayout{{"A", 2}, {"B", 2}, {"C", 2}}, rng);
    return qsm::distributed_compression_region(psi, {"A", "B", "C"})
               .corner_violation() <= qsm::tol::inequality;
  });

  run("min-cut", 2, [&](int i, RandomStream&) {
    if (i == 0) {
      PureState g3 = qsm::make_preset("ghz3", 2, 2, 2, nullptr);
      return std::abs(qsm::min_cut_assistance(g3, "A", "B").value - 1.0) <= 1e-12;
    }
    PureState two = qsm::tensor(qsm::maximally_entangled(2, "A", "B"),
                                qsm::maximally_entangled(2, "C", "D"));
    return std::abs(qsm::min_cut_assistance(two, "A", "B").value - 1.0) <= 1e-12;
  });

  run("covering-bound", 1, [&](int, RandomStream& rng) {
    PureState psi = qsm::make_preset("random", 2, 2, 2, &rng);
    return qsm::covering_experiment(psi, 2, 20, rng).holds;
  });

  run("mac-identity", 2, [&](int i, RandomStream& rng) {
    PureState a = qsm::maximally_entangled(2, "A", "Ain");
    PureState b = qsm::maximally_entangled(2, "B", "Bin");
    std::vector<Mat> kraus;
    if (i == 0) {
      kraus.push_back(Mat::Identity(4, 4));
    } else {
      Mat big = qsm::haar_unitary(8, rng);
      for (Index e = 0; e < 2; ++e) {
        Mat k(4, 4);
        for (Index o = 0; o < 4; ++o) k.row(o) = big.row(o * 2 + e).head(4);
        kraus.push_back(std::move(k));
      }
    }
    qsm::KrausChannel lam(kraus, SubsystemLayout{{"X", 4}},
                          SubsystemLayout{{"C", 4}});
    qsm::RateRegion reg = qsm::mac_rates(lam, a, b);
    const double iab_c = reg.inequalities[2].bound;
    for (const auto& corner : reg.corners)
      if (std::abs(corner.rates[0] + corner.rates[1] - iab_c) > 1e-9) return false;
    if (i == 0) {
      return std::abs(reg.corners[0].rates[0] - 1.0) <= 1e-9 &&
             std::abs(reg.corners[0].rates[1] - 1.0) <= 1e-9;
    }
    return reg.corner_violation() <= qsm::tol::inequality;
  });

  run("assistance", 1, [&](int, RandomStream& rng) {
    PureState g3 = qsm::make_preset("ghz3", 2, 2, 2, nullptr);
    qsm::AssistanceStats st = qsm::assistance_protocol(g3, "A", "B", {}, 2, 10, rng);
    return st.per_copy <= st.min_cut + 3.0 * st.stderr_entropy / 2 + 1e-9;
  });

  bool all_pass = true;
  for (const auto& s : suites) all_pass = all_pass && (s.passed == s.total);

  if (c.format == "csv") {
    std::string payload = "suite,passed,total\n";
    for (const auto& s : suites)
      payload +=
          s.name + "," + std::to_string(s.passed) + "," + std::to_string(s.total) + "\n";
    emit(c, payload);
  } else {
    json j;
    j["config"] = config_json(c);
    json arr = json::array();
    for (const auto& s : suites) {
      json e;
      e["name"] = s.name;
      e["passed"] = s.passed;
      e["total"] = s.total;
      arr.push_back(std::move(e));
    }
    j["suites"] = std::move(arr);
    j["all_pass"] = all_pass;
    emit_json(c, j);
  }
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum state-merging laboratory"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.seed = default_seed();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed (env QSM_SEED sets the default)");
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_state = [&](CLI::App* sub) {
    sub->add_option("--state", cfg.state,
                    "preset (epr, epr-ar, ghz3, ghz4, product, pure-ab, random) "
                    "or amplitude file");
    sub->add_option("--dA", cfg.d_a, "Alice dimension for presets");
    sub->add_option("--dB", cfg.d_b, "Bob dimension for presets");
    sub->add_option("--dR", cfg.d_r, "reference dimension for presets");
  };

  CLI::App* merge = app.add_subcommand("merge", "run the merging protocol");
  add_common(merge);
  add_state(merge);
  merge->add_option("--n", cfg.n, "number of copies");
  merge->add_option("--L", cfg.l_spec, "block rank (integer or 'max')");
  merge->add_option("--K", cfg.k, "rank of the entangled resource consumed");
  merge->add_option("--trials", cfg.trials, "instrument samples");
  merge->add_option("--cap", cfg.cap, "dense-dimension cap");
  merge->add_flag("--decode,!--no-decode", cfg.decode,
                  "run (or skip) the decoder pass");

  CLI::App* twirl = app.add_subcommand("twirl", "compare Monte Carlo and analytic twirl");
  add_common(twirl);
  twirl->add_option("--d", cfg.d_list, "dimensions to sweep (default 2 3 4)");
  twirl->add_option("--L", cfg.l_spec, "block rank: integer, 'all' (default), or 'max'");
  twirl->add_option("--samples", cfg.samples, "Haar samples per (d, L)");

  CLI::App* region = app.add_subcommand("region", "distributed compression rate region");
  add_common(region);
  add_state(region);
  region->add_option("--parties", cfg.parties_spec,
                     "comma-separated party labels (default: all)");

  CLI::App* assist = app.add_subcommand("assist", "entanglement-of-assistance experiment");
  add_common(assist);
  add_state(assist);
  assist->add_option("--a", cfg.a_label, "first party label");
  assist->add_option("--b", cfg.b_label, "second party label");
  assist->add_option("--helpers", cfg.helpers_spec,
                     "helper measurement order (default: descending entropy)");
  assist->add_option("--n", cfg.n, "copies");
  assist->add_option("--trials", cfg.trials, "random-basis trials");
  assist->add_option("--cap", cfg.cap, "dense-dimension cap");

  CLI::App* mac = app.add_subcommand("mac", "multiple-access channel rate region");
  add_common(mac);
  mac->add_option("--rankA", cfg.rank_a, "Schmidt rank of sender A's input");
  mac->add_option("--rankB", cfg.rank_b, "Schmidt rank of sender B's input");
  mac->add_option("--channel", cfg.channel, "channel: identity or random");

  CLI::App* typ = app.add_subcommand("typ", "typical projector and certificates");
  add_common(typ);
  typ->add_option("--p", cfg.p_spec, "single-copy spectrum, comma separated");
  typ->add_option("--n", cfg.n, "copies");
  typ->add_option("--delta", cfg.delta, "typicality window width");

  CLI::App* selftest = app.add_subcommand("selftest", "run every invariant suite");
  add_common(selftest);
  selftest->add_option("--trials", cfg.trials, "cases per randomized suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  try {
    if (*merge) {
      cfg.subcommand = "merge";
      return cmd_merge(cfg);
    }
    if (*twirl) {
      cfg.subcommand = "twirl";
      if (twirl->count("--L") == 0) cfg.l_spec = "all";
      return cmd_twirl(cfg);
    }
    if (*region) {
      cfg.subcommand = "region";
      return cmd_region(cfg);
    }
    if (*assist) {
      cfg.subcommand = "assist";
      if (assist->count("--trials") == 0) cfg.trials = 25;
      if (assist->count("--n") == 0) cfg.n = 2;
      return cmd_assist(cfg);
    }
    if (*mac) {
      cfg.subcommand = "mac";
      return cmd_mac(cfg);
    }
    if (*typ) {
      cfg.subcommand = "typ";
      if (typ->count("--n") == 0) cfg.n = 10;
      return cmd_typ(cfg);
    }
    if (*selftest) {
      cfg.subcommand = "selftest";
      if (selftest->count("--trials") == 0) cfg.trials = 200;
      return cmd_selftest(cfg);
    }
  } catch (const qsm::cap_exceeded& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const qsm::property_violation& e) {
    std::cerr << "property violation: " << e.what() << "\n";
    return 2;
  } catch (const qsm::invalid_input& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 4;
}
