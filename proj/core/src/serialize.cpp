// SPDX-License-Identifier: Apache-2.0
#include "qsm/serialize.hpp"

#include <cstdio>

namespace qsm {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json to_json(const MergeReport& r) {
  json j;
  j["q_e"] = r.q_e;
  j["q_e_bound"] = r.q_e_bound;
  j["mean_fidelity"] = r.mean_fidelity;
  j["ebits_in"] = r.ebits_consumed;
  j["ebits_out"] = r.ebits_produced;
  j["cbits"] = r.cbits;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["L"] = r.L;
  j["K"] = r.K;
  j["blocks"] = r.N;
  j["remainder_rank"] = r.Lp;
  j["d_alice"] = r.d_alice;
  j["d_bob"] = r.d_bob;
  j["d_ref"] = r.d_ref;
  j["q_e_stderr"] = r.q_e_stderr;
  j["fidelity_stderr"] = r.fidelity_stderr;
  j["input_entanglement"] = r.input_entanglement;
  j["output_entanglement"] = r.output_entanglement;
  j["output_entanglement_stderr"] = r.output_entanglement_stderr;
  return j;
}

json to_json(const RateRegion& r) {
  json j;
  j["parties"] = r.parties;
  json iqs = json::array();
  for (const auto& iq : r.inequalities) {
    json e;
    e["coeff"] = iq.coeff;
    e["bound"] = iq.bound;
    e["sense"] = iq.lower ? ">=" : "<=";
    iqs.push_back(std::move(e));
  }
  j["inequalities"] = std::move(iqs);
  json cs = json::array();
  for (const auto& c : r.corners) {
    json e;
    e["rates"] = c.rates;
    e["ordering"] = c.ordering;
    cs.push_back(std::move(e));
  }
  j["corners"] = std::move(cs);
  j["corner_violation"] = r.corner_violation();
  return j;
}

json to_json(const TypicalProjector& tp, const TypicalityCertificate& cert) {
  json j;
  j["n"] = tp.n;
  j["delta"] = tp.delta;
  j["entropy"] = tp.entropy;
  j["rank"] = tp.rank();
  j["weight"] = tp.weight;
  j["log2_pmin"] = tp.log2_pmin;
  j["log2_pmax"] = tp.log2_pmax;
  json c;
  c["operator_order"] = cert.c2_operator_order;
  c["eigen_upper"] = cert.c3_upper_eigen;
  c["eigen_lower"] = cert.c4_lower_eigen;
  c["rank_upper"] = cert.c5_rank_upper;
  c["rank_lower"] = cert.c6_rank_lower;
  c["all"] = cert.all();
  j["certificate"] = std::move(c);
  return j;
}

json to_json(const EntropyReport& r) {
  json j;
  j["parties"] = r.parties;
  json subsets = json::array();
  for (unsigned mask = 1; mask < r.subset_entropy.size(); ++mask) {
    json e;
    std::string name;
    for (std::size_t i = 0; i < r.parties.size(); ++i)
      if (mask & (1u << i)) {
        if (!name.empty()) name += ",";
        name += r.parties[i];
      }
    e["subset"] = name;
    e["entropy"] = r.subset_entropy[mask];
    subsets.push_back(std::move(e));
  }
  j["subsets"] = std::move(subsets);
  return j;
}

std::string to_csv(const RateRegion& r) {
  if (r.parties.empty()) throw invalid_input("to_csv(RateRegion): no parties");
  std::string out;
  for (std::size_t i = 0; i < r.parties.size(); ++i)
    out += (i ? "," : "") + r.parties[i];
  out += "\n";
  for (const auto& c : r.corners) {
    for (std::size_t i = 0; i < c.rates.size(); ++i)
      out += (i ? "," : "") + format_double(c.rates[i]);
    out += "\n";
  }
  return out;
}

std::string twirl_csv_header() { return "d,L,max_abs_gap,trace_analytic,trace_mc"; }

std::string to_csv(const TwirlComparison& t) {
  std::string out = twirl_csv_header() + "\n";
  out += std::to_string(static_cast<long long>(t.d)) + "," +
         std::to_string(static_cast<long long>(t.L)) + "," +
         format_double(t.max_abs_gap) + "," + format_double(t.trace_analytic) +
         "," + format_double(t.trace_mc) + "\n";
  return out;
}

}  // namespace qsm
