// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "qsm/qsm.hpp"

using namespace qsm;

namespace {
PureState two_qubit(double a00, double a11) {
  Vec v = Vec::Zero(4);
  v[0] = a00;
  v[3] = a11;
  return PureState(std::move(v), SubsystemLayout{{"A", 2}, {"B", 2}});
}
}  // namespace

TEST_CASE("layout strides, ravel and unravel") {
  SubsystemLayout lay{{"A", 2}, {"B", 3}, {"C", 4}};
  CHECK(lay.total_dim() == 24);
  const auto s = lay.strides();
  REQUIRE(s.size() == 3);
  CHECK(s[0] == 12);
  CHECK(s[1] == 4);
  CHECK(s[2] == 1);

  std::vector<Index> digits;
  lay.unravel(17, digits);  // 17 = 1*12 + 1*4 + 1
  REQUIRE(digits.size() == 3);
  CHECK(digits[0] == 1);
  CHECK(digits[1] == 1);
  CHECK(digits[2] == 1);
  CHECK(lay.ravel(digits) == 17);

  for (Index f = 0; f < lay.total_dim(); ++f) {
    lay.unravel(f, digits);
    CHECK(lay.ravel(digits) == f);
  }
}

TEST_CASE("layout label bookkeeping") {
  SubsystemLayout lay{{"A", 2}, {"B", 3}, {"C", 4}};
  CHECK(lay.position("B") == 1);
  CHECK(lay.dim_of("C") == 4);
  CHECK(lay.dim_of(std::vector<std::string>{"A", "C"}) == 8);
  CHECK(lay.to_string() == "A:2,B:3,C:4");
  CHECK(lay.labels_except({"B"}) == std::vector<std::string>{"A", "C"});
  CHECK(lay.select({"C", "A"}).to_string() == "C:4,A:2");
  CHECK(lay.erase({"A"}).to_string() == "B:3,C:4");
  CHECK(lay.renamed("B", "Bp").to_string() == "A:2,Bp:3,C:4");
  CHECK_THROWS_AS(lay.position("Z"), invalid_input);
  CHECK_THROWS_AS(lay.concat(SubsystemLayout{{"A", 5}}), invalid_input);
  CHECK_THROWS_AS((SubsystemLayout{{"A", 2}, {"A", 3}}), invalid_input);
  CHECK_THROWS_AS((SubsystemLayout{{"A", 0}}), invalid_input);
  CHECK(lay == SubsystemLayout(lay.parts()));
}

TEST_CASE("kron matches the hand-written 2x2 block rule") {
  Mat a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  Mat k = kron(a, b);
  REQUIRE(k.rows() == 4);
  CHECK(k(0, 1) == cxd(1, 0));   // a00 * b01
  CHECK(k(1, 0) == cxd(1, 0));   // a00 * b10
  CHECK(k(0, 3) == cxd(2, 0));   // a01 * b01
  CHECK(k(3, 2) == cxd(4, 0));   // a11 * b10
  CHECK(k(0, 0) == cxd(0, 0));
}

TEST_CASE("tensor of pure states concatenates layouts and multiplies amplitudes") {
  PureState epr = two_qubit(std::sqrt(0.5), std::sqrt(0.5));
  Vec zero = Vec::Zero(3);
  zero[0] = 1;
  PureState anc(std::move(zero), SubsystemLayout{{"R", 3}});
  PureState joint = tensor(epr, anc);
  CHECK(joint.layout.to_string() == "A:2,B:2,R:3");
  CHECK(joint.amp[0].real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(joint.amp[3 * 3].real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(std::abs(joint.amp[1]) == 0.0);
  CHECK_THROWS_AS(tensor(epr, epr), invalid_input);
}

TEST_CASE("tensor_power_grouped equals explicit kron plus regrouping at n=2") {
  RandomStream rng(42);
  PureState psi = haar_state(SubsystemLayout{{"A", 2}, {"B", 3}}, rng);
  PureState grouped = tensor_power_grouped(psi, 2);
  REQUIRE(grouped.layout.to_string() == "A:4,B:9");

  // Independent oracle: amplitude at (a0 a1, b0 b1) is psi(a0,b0) psi(a1,b1).
  for (Index a0 = 0; a0 < 2; ++a0)
    for (Index a1 = 0; a1 < 2; ++a1)
      for (Index b0 = 0; b0 < 3; ++b0)
        for (Index b1 = 0; b1 < 3; ++b1) {
          const cxd want = psi.amp[a0 * 3 + b0] * psi.amp[a1 * 3 + b1];
          const Index flat = (a0 * 2 + a1) * 9 + (b0 * 3 + b1);
          CHECK(std::abs(grouped.amp[flat] - want) < 1e-12);
        }
  CHECK_THROWS_AS(tensor_power_grouped(psi, 0), invalid_input);
}

TEST_CASE("permute_subsystems reorders amplitudes correctly") {
  // |psi> = |0>_A |1>_B |2>_C  ->  permuted to (C,A,B) must be |2>|0>|1>.
  SubsystemLayout lay{{"A", 2}, {"B", 2}, {"C", 3}};
  Vec v = Vec::Zero(12);
  v[0 * 6 + 1 * 3 + 2] = 1.0;
  PureState psi(std::move(v), lay);
  PureState p = permute_subsystems(psi, {"C", "A", "B"});
  CHECK(p.layout.to_string() == "C:3,A:2,B:2");
  CHECK(p.amp[2 * 4 + 0 * 2 + 1].real() == doctest::Approx(1.0));
  CHECK(p.amp.cwiseAbs().sum() == doctest::Approx(1.0));

  RandomStream rng(7);
  PureState h = haar_state(lay, rng);
  PureState back = permute_subsystems(permute_subsystems(h, {"B", "C", "A"}),
                                      {"A", "B", "C"});
  CHECK((back.amp - h.amp).norm() < 1e-13);
  CHECK_THROWS_AS(permute_subsystems(h, {"A", "B"}), invalid_input);
}

TEST_CASE("reshape_group_first lays the group on rows") {
  RandomStream rng(3);
  PureState psi = haar_state(SubsystemLayout{{"A", 2}, {"B", 3}, {"C", 2}}, rng);
  Mat m = reshape_group_first(psi, {"C", "A"});
  REQUIRE(m.rows() == 4);
  REQUIRE(m.cols() == 3);
  PureState p = permute_subsystems(psi, {"C", "A", "B"});
  for (Index r = 0; r < 4; ++r)
    for (Index c = 0; c < 3; ++c) CHECK(std::abs(m(r, c) - p.amp[r * 3 + c]) < 1e-14);
}

TEST_CASE("partial trace of GHZ3 over one party is the frozen diagonal") {
  PureState ghz = make_preset("ghz3", 2, 2, 2, nullptr);
  DensityOperator rho = reduced_density(ghz, {"A", "B"});
  CHECK(std::abs(rho.mat(0, 0) - cxd(0.5, 0)) < 1e-12);
  CHECK(std::abs(rho.mat(3, 3) - cxd(0.5, 0)) < 1e-12);
  CHECK(std::abs(rho.mat(0, 3)) < 1e-12);  // coherence dies with the traced leg
  CHECK(std::abs(rho.mat(1, 1)) < 1e-12);
  CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("partial_trace agrees with reduced_density and preserves trace") {
  RandomStream rng(11);
  SubsystemLayout lay{{"A", 2}, {"B", 3}, {"C", 2}};
  for (int t = 0; t < 20; ++t) {
    PureState psi = haar_state(lay, rng);
    DensityOperator full = density_from_pure(psi);
    DensityOperator a = partial_trace(full, {"B"});
    DensityOperator b = reduced_density(psi, {"B"});
    CHECK((a.mat - b.mat).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(a.trace() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("schmidt spectrum of the unbalanced pair is (3/4, 1/4)") {
  PureState psi = two_qubit(std::sqrt(0.25), std::sqrt(0.75));
  RVec s = schmidt_spectrum(psi, {"A"});
  REQUIRE(s.size() >= 2);
  CHECK(s[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(s[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("purify reproduces the density operator") {
  RandomStream rng(5);
  for (int t = 0; t < 10; ++t) {
    DensityOperator rho = random_density(SubsystemLayout{{"X", 4}}, 2, rng);
    PureState psi = purify(rho, "P");
    CHECK(psi.layout.dim_of("P") == 4);
    DensityOperator back = reduced_density(psi, {"X"});
    CHECK((back.mat - rho.mat).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("haar_unitary is unitary and seed-deterministic") {
  RandomStream r1(9), r2(9);
  Mat u = haar_unitary(5, r1);
  Mat v = haar_unitary(5, r2);
  CHECK((u - v).cwiseAbs().maxCoeff() == 0.0);  // same stream, same bytes
  CHECK((u.adjoint() * u - Mat::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
  Mat w = haar_unitary(5, r1);  // stream advanced: different sample
  CHECK((u - w).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("haar first moment: |U_00|^2 concentrates near 1/d") {
  RandomStream rng(13);
  const Index d = 4;
  const int samples = 600;
  double s1 = 0, s2 = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = std::norm(haar_unitary(d, rng)(0, 0));
    s1 += x;
    s2 += x * x;
  }
  const double mean = s1 / samples;
  const double se = std::sqrt(std::max(s2 / samples - mean * mean, 0.0) / (samples - 1));
  CHECK(std::abs(mean - 0.25) <= 3 * se + 1e-6);
}

TEST_CASE("random states and densities satisfy their type invariants") {
  RandomStream rng(17);
  PureState psi = haar_state(SubsystemLayout{{"A", 3}, {"B", 3}}, rng);
  CHECK(std::abs(psi.norm2() - 1.0) < tol::state_norm);
  DensityOperator rho = random_density(SubsystemLayout{{"X", 6}}, 3, rng);
  CHECK(std::abs(rho.trace() - 1.0) < tol::density);
  CHECK((rho.mat - rho.mat.adjoint()).cwiseAbs().maxCoeff() < tol::density);
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.mat, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > -tol::density);

  Vec bad = Vec::Ones(4);  // norm 2, not a state
  CHECK_THROWS_AS(PureState(bad, SubsystemLayout{{"A", 4}}), invalid_input);
}

TEST_CASE("norms: frozen values and the dimension inequality") {
  Mat x = Mat::Zero(2, 2);
  x(0, 0) = 3;
  x(1, 1) = -4;
  CHECK(trace_norm(x) == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(hs_norm(x) == doctest::Approx(5.0).epsilon(1e-12));

  // Orthogonal pure states sit at trace distance 2.
  SubsystemLayout lay{{"X", 2}};
  Vec v0 = Vec::Zero(2), v1 = Vec::Zero(2);
  v0[0] = 1;
  v1[1] = 1;
  DensityOperator p0 = density_from_pure(PureState(v0, lay));
  DensityOperator p1 = density_from_pure(PureState(v1, lay));
  CHECK(trace_distance(p0, p1) == doctest::Approx(2.0).epsilon(1e-12));

  // Rank-1 matrices attain the norm-dimension inequality with equality.
  RandomStream rng(19);
  Vec a(3), b(3);
  for (Index i = 0; i < 3; ++i) {
    a[i] = rng.complex_gaussian();
    b[i] = rng.complex_gaussian();
  }
  Mat r1 = a * b.adjoint();
  NormDimCheck nd = norm_dim_check(r1);
  CHECK(nd.ok);
  CHECK(nd.support_dim == 1);
  CHECK(nd.trace_norm_sq == doctest::Approx(nd.bound).epsilon(1e-9));
}

TEST_CASE("fidelity: overlap oracle, symmetry, self-fidelity") {
  SubsystemLayout lay{{"X", 2}};
  Vec z = Vec::Zero(2), plus(2);
  z[0] = 1;
  plus << std::sqrt(0.5), std::sqrt(0.5);
  DensityOperator rz = density_from_pure(PureState(z, lay));
  DensityOperator rp = density_from_pure(PureState(plus, lay));
  CHECK(fidelity(rz, rp) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(fidelity(rz, rz) == doctest::Approx(1.0).epsilon(1e-10));

  RandomStream rng(23);
  DensityOperator a = random_density(lay, 2, rng);
  DensityOperator b = random_density(lay, 2, rng);
  CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)).epsilon(1e-9));
  FvdGCheck f = fuchs_van_de_graaf_check(a, b);
  CHECK(f.ok);
}

TEST_CASE("swap operator and symmetric projector") {
  for (Index d : {2, 3}) {
    SwapOperators sw = swap_and_projectors(d);
    CHECK((sw.swap * sw.swap - Mat::Identity(d * d, d * d)).cwiseAbs().maxCoeff() <
          1e-14);
    // tr(sym) = d(d+1)/2 counts the symmetric subspace.
    CHECK(sw.sym.trace().real() ==
          doctest::Approx(d * (d + 1) / 2.0).epsilon(1e-12));
    CHECK((sw.sym + sw.anti - Mat::Identity(d * d, d * d)).cwiseAbs().maxCoeff() <
          1e-14);
  }
}

TEST_CASE("apply_isometry relabels and transforms the right subsystem") {
  // X gate viewed as an isometry A -> A2.
  Mat x(2, 2);
  x << 0, 1, 1, 0;
  Isometry v(x, SubsystemLayout{{"A", 2}}, SubsystemLayout{{"A2", 2}});
  Vec z = Vec::Zero(4);
  z[0] = 1.0;  // |0>_A |0>_B
  PureState psi(z, SubsystemLayout{{"A", 2}, {"B", 2}});
  PureState out = apply_isometry(psi, v);
  CHECK(out.layout.to_string() == "B:2,A2:2");
  CHECK(std::abs(out.amp[0 * 2 + 1] - cxd(1, 0)) < 1e-14);  // |0>_B |1>_A2

  Mat bad = Mat::Ones(2, 2);
  CHECK_THROWS_AS(Isometry(bad, SubsystemLayout{{"A", 2}}, SubsystemLayout{{"A2", 2}}),
                  invalid_input);
}

TEST_CASE("stinespring dilation implements the channel") {
  // Phase-flip channel with probability 1/4.
  Mat k0 = std::sqrt(0.75) * Mat::Identity(2, 2);
  Mat k1 = Mat::Zero(2, 2);
  k1(0, 0) = std::sqrt(0.25);
  k1(1, 1) = -std::sqrt(0.25);
  KrausChannel chan({k0, k1}, SubsystemLayout{{"X", 2}}, SubsystemLayout{{"Y", 2}});
  Isometry v = stinespring(chan, "E");
  CHECK(v.output.to_string() == "Y:2,E:2");

  Vec plus(2);
  plus << std::sqrt(0.5), std::sqrt(0.5);
  PureState psi(plus, SubsystemLayout{{"X", 2}});
  PureState dilated = apply_isometry(psi, v);
  DensityOperator out = reduced_density(dilated, {"Y"});
  // Off-diagonal shrinks by 1 - 2p = 1/2.
  CHECK(std::abs(out.mat(0, 1) - cxd(0.25, 0)) < 1e-12);
  CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-12));

  Mat junk = Mat::Identity(2, 2);
  CHECK_THROWS_AS(
      KrausChannel({junk, junk}, SubsystemLayout{{"X", 2}}, SubsystemLayout{{"Y", 2}}),
      invalid_input);
}

TEST_CASE("RandomStream: reproducibility, ranges, substream stability") {
  RandomStream a(100), b(100);
  for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());

  RandomStream r(101);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }

  // substream(i) depends on the seed only, not on how much of the parent
  // stream was consumed — callers rely on this for reproducible trials.
  RandomStream p1(7), p2(7);
  p2.bits();
  p2.gaussian();
  RandomStream c1 = p1.substream(3);
  RandomStream c2 = p2.substream(3);
  CHECK(c1.bits() == c2.bits());
  CHECK(p1.substream(1).bits() != p1.substream(2).bits());

  // Gaussian moments, loose bounds.
  RandomStream g(102);
  double s1 = 0, s2 = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = g.gaussian();
    s1 += x;
    s2 += x * x;
  }
  CHECK(std::abs(s1 / n) < 0.05);
  CHECK(std::abs(s2 / n - 1.0) < 0.05);
}

TEST_CASE("parallel_for result does not depend on the thread count") {
  std::vector<double> serial(64), threaded(64);
  setenv("QSM_THREADS", "1", 1);
  parallel_for(64, [&](std::size_t i) { serial[i] = std::sin(0.1 * i); });
  setenv("QSM_THREADS", "4", 1);
  parallel_for(64, [&](std::size_t i) { threaded[i] = std::sin(0.1 * i); });
  unsetenv("QSM_THREADS");
  CHECK(serial == threaded);

  setenv("QSM_THREADS", "4", 1);
  CHECK_THROWS_AS(
      parallel_for(8, [](std::size_t i) { if (i == 3) throw invalid_input("boom"); }),
      invalid_input);
  unsetenv("QSM_THREADS");
}
