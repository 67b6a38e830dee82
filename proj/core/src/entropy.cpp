// SPDX-License-Identifier: Apache-2.0
#include "qsm/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "qsm/linalg.hpp"

namespace qsm {

double entropy_of_spectrum(const RVec& eigenvalues) {
  double s = 0;
  for (Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = eigenvalues[i];
    if (l > tol::entropy_clip) s -= l * std::log2(l);
  }
  return s;
}

double binary_entropy(double p) {
  if (p < 0 || p > 1) throw invalid_input("binary_entropy: p outside [0,1]");
  double s = 0;
  if (p > tol::entropy_clip) s -= p * std::log2(p);
  if (1 - p > tol::entropy_clip) s -= (1 - p) * std::log2(1 - p);
  return s;
}

double von_neumann_entropy(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.mat, Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(es.eigenvalues());
}

double marginal_entropy(const PureState& psi, const std::vector<std::string>& keep) {
  return entropy_of_spectrum(schmidt_spectrum(psi, keep));
}

double marginal_entropy(const DensityOperator& rho,
                        const std::vector<std::string>& keep) {
  return von_neumann_entropy(partial_trace(rho, keep));
}

namespace {

std::vector<std::string> joined(const std::vector<std::string>& a,
                                const std::vector<std::string>& b) {
  std::vector<std::string> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  return ab;
}

}  // namespace

double conditional_entropy(const DensityOperator& rho,
                           const std::vector<std::string>& a,
                           const std::vector<std::string>& b) {
  return marginal_entropy(rho, joined(a, b)) - marginal_entropy(rho, b);
}

double conditional_entropy(const PureState& psi, const std::vector<std::string>& a,
                           const std::vector<std::string>& b) {
  return marginal_entropy(psi, joined(a, b)) - marginal_entropy(psi, b);
}

double mutual_information(const DensityOperator& rho,
                          const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  return marginal_entropy(rho, a) + marginal_entropy(rho, b) -
         marginal_entropy(rho, joined(a, b));
}

double mutual_information(const PureState& psi, const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  return marginal_entropy(psi, a) + marginal_entropy(psi, b) -
         marginal_entropy(psi, joined(a, b));
}

double coherent_information(const DensityOperator& rho,
                            const std::vector<std::string>& a,
                            const std::vector<std::string>& b) {
  return -conditional_entropy(rho, a, b);
}

double coherent_information(const PureState& psi, const std::vector<std::string>& a,
                            const std::vector<std::string>& b) {
  return -conditional_entropy(psi, a, b);
}

double EntropyReport::entropy(const std::vector<std::string>& subset) const {
  return subset_entropy[mask_of(subset)];
}

unsigned EntropyReport::mask_of(const std::vector<std::string>& subset) const {
  unsigned mask = 0;
  for (const auto& l : subset) {
    auto it = std::find(parties.begin(), parties.end(), l);
    if (it == parties.end())
      throw invalid_input("EntropyReport: unknown party '" + l + "'");
    mask |= 1u << static_cast<unsigned>(it - parties.begin());
  }
  return mask;
}

double EntropyReport::conditional(unsigned a_mask, unsigned b_mask) const {
  if ((a_mask & b_mask) != 0)
    throw invalid_input("EntropyReport: conditional with overlapping subsets");
  return subset_entropy[a_mask | b_mask] - subset_entropy[b_mask];
}

namespace {

template <typename State>
EntropyReport report_impl(const State& s, const std::vector<std::string>& parties) {
  if (parties.empty() || parties.size() > 16)
    throw invalid_input("entropy_report: need between 1 and 16 parties");
  EntropyReport rep;
  rep.parties = parties;
  rep.subset_entropy.assign(1u << parties.size(), 0.0);
  for (unsigned mask = 1; mask < rep.subset_entropy.size(); ++mask) {
    std::vector<std::string> subset;
    for (std::size_t i = 0; i < parties.size(); ++i)
      if (mask & (1u << i)) subset.push_back(parties[i]);
    rep.subset_entropy[mask] = marginal_entropy(s, subset);
  }
  return rep;
}

}  // namespace

EntropyReport entropy_report(const DensityOperator& rho,
                             const std::vector<std::string>& parties) {
  return report_impl(rho, parties);
}

EntropyReport entropy_report(const PureState& psi,
                             const std::vector<std::string>& parties) {
  return report_impl(psi, parties);
}

namespace {

// Concave continuity modulus used by the entropy-vs-distance bound.
double eta(double x) {
  constexpr double inv_e = 0.36787944117144233;
  if (x <= 0) return 0;
  if (x <= inv_e) return x - x * std::log2(x);
  return x + std::log2(std::exp(1.0)) * inv_e;
}

}  // namespace

FannesCheck fannes_check(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw invalid_input("fannes_check: dim mismatch");
  if (rho.dim() < 2) throw invalid_input("fannes_check: needs dim >= 2");
  FannesCheck c;
  c.entropy_gap = std::abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma));
  c.tdist = trace_distance(rho, sigma);
  c.bound = eta(c.tdist) * std::log2(static_cast<double>(rho.dim()));
  c.ok = c.entropy_gap <= c.bound + tol::inequality;
  return c;
}

GentleCheck gentle_measurement_check(const DensityOperator& rho, const Mat& x) {
  if (x.rows() != rho.dim() || x.cols() != rho.dim())
    throw invalid_input("gentle_measurement_check: operator shape mismatch");
  Mat xh = 0.5 * (x + x.adjoint().eval());
  if ((x - xh).cwiseAbs().maxCoeff() > tol::density)
    throw invalid_input("gentle_measurement_check: operator not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(xh);
  RVec lam = es.eigenvalues();
  if (lam.minCoeff() < -tol::density || lam.maxCoeff() > 1 + tol::density)
    throw invalid_input("gentle_measurement_check: operator not between 0 and I");
  for (Index i = 0; i < lam.size(); ++i)
    lam[i] = std::sqrt(std::min(std::max(lam[i], 0.0), 1.0));
  Mat sx = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();

  GentleCheck c;
  c.disturbance = trace_norm(sx * rho.mat * sx - rho.mat);
  const double pass = std::min((xh * rho.mat).trace().real(), 1.0);
  c.bound = 2.0 * std::sqrt(std::max(1.0 - pass, 0.0));
  c.ok = c.disturbance <= c.bound + tol::inequality;
  return c;
}

SSACheck strong_subadditivity_check(const DensityOperator& rho,
                                    const std::vector<std::string>& a,
                                    const std::vector<std::string>& b,
                                    const std::vector<std::string>& c) {
  SSACheck s;
  s.lhs = conditional_entropy(rho, a, joined(b, c));
  s.rhs = conditional_entropy(rho, a, b);
  s.ok = s.lhs <= s.rhs + tol::inequality;
  return s;
}

ChainRuleCheck chain_rule_check(const DensityOperator& rho,
                                const std::vector<std::string>& a1,
                                const std::vector<std::string>& a2,
                                const std::vector<std::string>& b) {
  ChainRuleCheck c;
  c.lhs = coherent_information(rho, joined(a1, a2), b);
  c.rhs = coherent_information(rho, a2, b) +
          coherent_information(rho, a1, joined(b, a2));
  c.ok = std::abs(c.lhs - c.rhs) <= tol::inequality;
  return c;
}

}  // namespace qsm
