// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "qsm/entropy.hpp"
#include "qsm/merging.hpp"
#include "qsm/regions.hpp"
#include "qsm/typicality.hpp"

namespace qsm {

// ordered_json keeps insertion order, so serialized field order is stable
// run-to-run (byte-identical output for identical inputs).
using json = nlohmann::ordered_json;

// Deterministic float formatting for CSV ("%.12g", locale-free).
std::string format_double(double v);

json to_json(const MergeReport& r);        // fixed field names first:
                                           // q_e, q_e_bound, mean_fidelity,
                                           // ebits_in, ebits_out, cbits, trials, seed
json to_json(const RateRegion& r);
json to_json(const TypicalProjector& tp, const TypicalityCertificate& cert);
json to_json(const EntropyReport& r);

std::string to_csv(const RateRegion& r);       // corner rows under a party header
std::string to_csv(const TwirlComparison& t);  // header + one row
std::string twirl_csv_header();

}  // namespace qsm
