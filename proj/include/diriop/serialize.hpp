#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diriop/commutator.hpp"

namespace diriop::io {

// Ordered JSON keeps key order stable so artifacts are byte-reproducible.
using json = nlohmann::ordered_json;

json to_json(std::complex<double> z);
json to_json(const MobiusMapd& m);
json to_json(const AutomorphismFormd& f);
json to_json(const FixedPointSetd& s);
json to_json(const RatioSampled& s);
json to_json(const CaseReportd& r);
json to_json(const BoundaryScanReportd& r, bool include_cells = true);

/// Verdict artifact; pass a non-empty evidence_ref when the evidence scan was
/// written to its own file.
json to_json(const CompactnessVerdictd& v, const std::string& evidence_ref = "");

/// Full payload of the classify command.
json classify_report(const MobiusMapd& m);

/// RFC 4180 CSV (CRLF line endings), one row per scan cell:
/// zeta_index,delta,q,factor_phi,factor_psi,gap,ratio
std::string scan_csv(const BoundaryScanReportd& r);

/// CSV of a norm trace along a ladder; absent rungs have an empty value field.
std::string trace_csv(const std::vector<double>& deltas,
                      const std::vector<std::optional<double>>& values);

}  // namespace diriop::io
