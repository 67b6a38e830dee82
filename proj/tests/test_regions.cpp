// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsm/qsm.hpp"

using namespace qsm;

TEST_CASE("two-party pure compression corners: (S(A), -S(A)) and (-S(B), S(B))") {
  PureState psi = make_preset("pure-ab", 2, 2, 1, nullptr);
  RateRegion reg = distributed_compression_region(psi, {"A", "B"});
  REQUIRE(reg.corners.size() == 2);
  const double sa = binary_entropy(0.25);
  for (const auto& c : reg.corners) {
    REQUIRE(c.rates.size() == 2);
    const double hi = std::max(c.rates[0], c.rates[1]);
    const double lo = std::min(c.rates[0], c.rates[1]);
    CHECK(hi == doctest::Approx(sa).epsilon(1e-12));
    CHECK(lo == doctest::Approx(-sa).epsilon(1e-12));
    // Negative rates are the point: one party gains entanglement.
    CHECK(lo < 0.0);
  }
  CHECK(reg.corner_violation() <= tol::inequality);
}

TEST_CASE("every corner's rate-sum equals the joint entropy") {
  RandomStream rng(131);
  SubsystemLayout lay{{"A", 2}, {"B", 2}, {"C", 2}, {"R", 2}};
  for (int t = 0; t < 5; ++t) {
    PureState psi = haar_state(lay, rng);
    RateRegion reg = distributed_compression_region(psi, {"A", "B", "C"});
    CHECK(reg.corners.size() == 6);  // 3! encoder orderings
    const double total = marginal_entropy(psi, {"A", "B", "C"});
    for (const auto& c : reg.corners) {
      double sum = 0;
      for (double r : c.rates) sum += r;
      CHECK(sum == doctest::Approx(total).epsilon(1e-9));
    }
    CHECK(reg.corner_violation() <= tol::inequality);
    // 2^3 - 1 nonempty subsets, one inequality each.
    CHECK(reg.inequalities.size() == 7);
  }
}

TEST_CASE("mixed-state compression region via the density overload") {
  // Classical joint distribution: rho = sum_xy p(x,y)|xy><xy|.
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = 0.5;   // 00
  m(3, 3) = 0.25;  // 11
  m(1, 1) = 0.25;  // 01
  DensityOperator rho(m, SubsystemLayout{{"A", 2}, {"B", 2}});
  RateRegion reg = distributed_compression_region(rho, {"A", "B"});
  const double total = von_neumann_entropy(rho);
  for (const auto& c : reg.corners)
    CHECK(c.rates[0] + c.rates[1] == doctest::Approx(total).epsilon(1e-9));
  CHECK(reg.corner_violation() <= tol::inequality);
}

TEST_CASE("region rejects unknown parties and tiny inputs") {
  PureState psi = make_preset("ghz3", 2, 2, 2, nullptr);
  CHECK_THROWS_AS(distributed_compression_region(psi, {"A", "Z"}), invalid_input);
  CHECK_THROWS_AS(distributed_compression_region(psi, {}), invalid_input);
}

TEST_CASE("side information: identity baseline reproduces the merging rates") {
  PureState epr = make_preset("epr", 2, 2, 1, nullptr);
  RandomStream rng(137);
  SideInfoSearchResult res = side_info_search(epr, 2, 4, rng);
  // Baseline keeps all of B as side information: r_a = S(A|B) = -1,
  // r_b = S(B) = 1.
  CHECK(res.baseline.r_a == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(res.baseline.r_b == doctest::Approx(1.0).epsilon(1e-9));
  // The search may only improve on (or tie) the baseline sum.
  CHECK(res.best.r_a + res.best.r_b <=
        res.baseline.r_a + res.baseline.r_b + 1e-9);
  CHECK(res.heuristic);
  CHECK(res.evaluations > 0);
}

TEST_CASE("min-cut assistance: GHZ3 is exactly one ebit") {
  PureState ghz = make_preset("ghz3", 2, 2, 2, nullptr);
  MinCutResult mc = min_cut_assistance(ghz, "A", "B");
  CHECK(mc.value == 1.0);  // exact: every cut entropy is exactly 1 bit
  CHECK(!mc.near_ties.empty());  // both helper assignments tie for GHZ
}

TEST_CASE("min-cut assistance: parallel pairs and validation") {
  PureState two = tensor(maximally_entangled(2, "A", "B"),
                         maximally_entangled(2, "C", "D"));
  MinCutResult mc = min_cut_assistance(two, "A", "B");
  CHECK(mc.value == doctest::Approx(1.0).epsilon(1e-12));

  // Moving a helper across the cut raises one side; the min picks the other.
  PureState ghz4 = make_preset("ghz4", 2, 2, 2, nullptr);
  MinCutResult m4 = min_cut_assistance(ghz4, "A", "B");
  CHECK(m4.value == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(min_cut_assistance(two, "A", "Z"), invalid_input);
}

TEST_CASE("covering experiment: bound holds in the meaningful regime") {
  RandomStream rng(139);
  PureState psi = make_preset("random", 4, 4, 2, &rng);
  CoveringStats st = covering_experiment(psi, 1, 30, rng);
  CHECK(st.holds);
  CHECK(st.mc_mean <= st.bound + 3 * st.mc_stderr);
  CHECK(st.big_d > 1.0);
  CHECK_THROWS_AS(covering_experiment(psi, 1, 1, rng), invalid_input);
}

TEST_CASE("assistance protocol approaches (never beats) the min cut") {
  RandomStream rng(149);
  PureState ghz = make_preset("ghz3", 2, 2, 2, nullptr);
  AssistanceStats st = assistance_protocol(ghz, "A", "B", {}, 3, 12, rng);
  CHECK(st.min_cut == 1.0);
  CHECK(st.trials == 12);
  CHECK(st.per_copy <= st.min_cut + 3 * st.stderr_entropy / 3 + tol::inequality);
  CHECK(st.per_copy > 0.5);  // random bases do recover most of the ebit
  CHECK(st.mean_entropy == doctest::Approx(3 * st.per_copy).epsilon(1e-12));
}

TEST_CASE("explicit helper order matches the default descending-entropy order") {
  PureState ghz = make_preset("ghz3", 2, 2, 2, nullptr);
  RandomStream r1(151), r2(151);
  AssistanceStats a = assistance_protocol(ghz, "A", "B", {}, 2, 6, r1);
  AssistanceStats b = assistance_protocol(ghz, "A", "B", {"R"}, 2, 6, r2);
  CHECK(a.mean_entropy == b.mean_entropy);  // same order, same streams
}

TEST_CASE("simultaneous assistance mirrors the sequential protocol") {
  PureState ghz = make_preset("ghz3", 2, 2, 2, nullptr);
  RandomStream rng(157);
  SimultaneousAssistanceRecord rec =
      simultaneous_assistance_experiment(ghz, "A", "B", 2, 8, rng);
  CHECK(rec.stats.trials == 8);
  CHECK(rec.gap_to_min_cut_per_copy ==
        doctest::Approx(rec.stats.min_cut - rec.stats.per_copy).epsilon(1e-12));
}

TEST_CASE("MAC region: identity channel gives the (1,1) corner pair") {
  PureState a = maximally_entangled(2, "A", "Ain");
  PureState b = maximally_entangled(2, "B", "Bin");
  KrausChannel identity({Mat::Identity(4, 4)}, SubsystemLayout{{"X", 4}},
                        SubsystemLayout{{"C", 4}});
  RateRegion reg = mac_rates(identity, a, b);
  REQUIRE(reg.corners.size() == 2);
  REQUIRE(reg.inequalities.size() == 3);
  for (const auto& c : reg.corners) {
    CHECK(c.rates[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c.rates[1] == doctest::Approx(1.0).epsilon(1e-9));
  }
  // Sum rate = I(AB>C) = 2 for the identity on two ebits (up to eigensolver
  // rounding in the entropies), and the corner sums hit the computed value
  // exactly — both are the same sum of the same entropy terms.
  const double iabc = reg.inequalities[2].bound;
  CHECK(iabc == doctest::Approx(2.0).epsilon(1e-12));
  for (const auto& c : reg.corners) CHECK(c.rates[0] + c.rates[1] == iabc);
  // Rate constraints are upper bounds in this region.
  for (const auto& iq : reg.inequalities) CHECK(!iq.lower);
  CHECK(reg.corner_violation() <= tol::inequality);
}

TEST_CASE("MAC region: random channel keeps the chain-rule corner identity") {
  RandomStream rng(163);
  PureState a = maximally_entangled(2, "A", "Ain");
  PureState b = maximally_entangled(2, "B", "Bin");
  Mat big = haar_unitary(8, rng);
  std::vector<Mat> kraus;
  for (Index e = 0; e < 2; ++e) {
    Mat k(4, 4);
    for (Index o = 0; o < 4; ++o) k.row(o) = big.row(o * 2 + e).head(4);
    kraus.push_back(std::move(k));
  }
  KrausChannel chan(kraus, SubsystemLayout{{"X", 4}}, SubsystemLayout{{"C", 4}});
  RateRegion reg = mac_rates(chan, a, b);
  const double iabc = reg.inequalities[2].bound;
  for (const auto& c : reg.corners)
    CHECK(c.rates[0] + c.rates[1] == doctest::Approx(iabc).epsilon(1e-9));
  CHECK(reg.corner_violation() <= tol::inequality);
}

TEST_CASE("presets: shapes and required properties") {
  CHECK(make_preset("epr", 4, 4, 1, nullptr).layout.to_string() == "A:4,B:4,R:1");
  PureState ear = make_preset("epr-ar", 2, 1, 2, nullptr);
  CHECK(ear.layout.to_string() == "A:2,B:1,R:2");
  CHECK(marginal_entropy(ear, {"A"}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(conditional_entropy(ear, {"A"}, {"B"}) ==
        doctest::Approx(1.0).epsilon(1e-12));  // positive partial information
  PureState g4 = make_preset("ghz4", 2, 2, 2, nullptr);
  CHECK(g4.layout.size() == 4);
  RandomStream rng(167);
  PureState r = make_preset("random", 3, 2, 2, &rng);
  CHECK(r.layout.to_string() == "A:3,B:2,R:2");
  CHECK_THROWS_AS(make_preset("random", 2, 2, 2, nullptr), invalid_input);
  CHECK_THROWS_AS(make_preset("nosuch", 2, 2, 2, nullptr), invalid_input);
  CHECK(preset_names().size() >= 7);
}

TEST_CASE("serialization: stable key order and locale-free numbers") {
  CHECK(format_double(0.625) == "0.625");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-0.811278124459133) == "-0.811278124459");

  RandomStream rng(173);
  PureState epr = make_preset("epr", 2, 2, 1, nullptr);
  MergeReport rep = run_merging(epr, 1, 2, 1, 2, rng);
  json j = to_json(rep);
  auto it = j.begin();
  CHECK(it.key() == "q_e");
  ++it;
  CHECK(it.key() == "q_e_bound");
  ++it;
  CHECK(it.key() == "mean_fidelity");
  ++it;
  CHECK(it.key() == "ebits_in");
  ++it;
  CHECK(it.key() == "ebits_out");
  ++it;
  CHECK(it.key() == "cbits");
  ++it;
  CHECK(it.key() == "trials");
  ++it;
  CHECK(it.key() == "seed");
  CHECK(j.dump() == to_json(rep).dump());  // deterministic serialization

  RateRegion reg = distributed_compression_region(epr, {"A", "B"});
  const std::string csv = to_csv(reg);
  CHECK(csv.substr(0, 4) == "A,B\n");
  CHECK(csv.find("1,-1") != std::string::npos);

  // Multiparty regions export one corner per row under a party-label header.
  PureState ghz = make_preset("ghz3", 2, 2, 2, nullptr);
  RateRegion reg3 = distributed_compression_region(ghz, {"A", "B", "R"});
  const std::string csv3 = to_csv(reg3);
  CHECK(csv3.substr(0, 6) == "A,B,R\n");
  // Ordering (A, B, R): S(A|BR) = -1, S(B|R) = 0, S(R) = 1.
  CHECK(csv3.find("-1,0,1") != std::string::npos);

  CHECK(twirl_csv_header() == "d,L,max_abs_gap,trace_analytic,trace_mc");
}
