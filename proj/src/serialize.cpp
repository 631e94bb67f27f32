#include "diriop/serialize.hpp"

#include <cstdio>

#include "diriop/mapspec.hpp"

namespace diriop::io {
namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

json to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json to_json(const MobiusMapd& m) {
  return {{"a", to_json(m.a())}, {"b", to_json(m.b())}, {"c", to_json(m.c())},
          {"d", to_json(m.d())}};
}

json to_json(const AutomorphismFormd& f) {
  return {{"a", to_json(f.a)}, {"theta", f.theta}};
}

json to_json(const FixedPointSetd& s) {
  json points = json::array();
  for (const auto& p : s.points) {
    points.push_back({{"z", to_json(p.z)},
                      {"location", to_string(p.location)},
                      {"double_root", p.double_root}});
  }
  return {{"points", points}, {"point_at_infinity", s.at_infinity}};
}

json to_json(const RatioSampled& s) {
  return {{"delta", s.delta},
          {"zeta", to_json(s.zeta)},
          {"ratio", s.ratio},
          {"log_norm_phi", s.log_norm_phi},
          {"log_norm_psi", s.log_norm_psi},
          {"log_cross", s.log_cross},
          {"base_log", s.base_log},
          {"clamped", s.clamped}};
}

json to_json(const CaseReportd& r) {
  json out = {{"case_tag", to_string(r.tag)},
              {"phi_limit", to_json(r.phi_limit)},
              {"psi_limit", to_json(r.psi_limit)},
              {"phi_factor_limit", r.phi_factor_limit},
              {"psi_factor_limit", r.psi_factor_limit},
              {"predicted_ratio_limit", to_string(r.predicted)},
              {"remainder_name", r.remainder_name},
              {"remainder_max", r.remainder_max},
              {"deltas", r.deltas},
              {"remainder_trace", r.remainder_trace}};
  if (!r.reason.empty()) out["reason"] = r.reason;
  return out;
}

json to_json(const BoundaryScanReportd& r, bool include_cells) {
  json witness;
  if (r.witness) {
    witness = {{"direction_index", r.witness->direction_index},
               {"zeta", to_json(r.witness->zeta)},
               {"q_deepest", r.witness->q_deepest}};
  }
  json out = {{"config",
               {{"directions", r.config.directions},
                {"k_min", r.config.ladder.k_min},
                {"k_max", r.config.ladder.k_max},
                {"q_threshold", r.config.q_threshold}}},
              {"verdict", to_string(r.verdict)},
              {"max_q_deepest", r.max_q_deepest},
              {"witness", witness},
              {"schwarz_pick_violations", r.schwarz_pick_violations},
              {"factor_identity_violations", r.factor_identity_violations},
              {"factor_lower_violations", r.factor_lower_violations},
              {"deltas", r.deltas}};
  json dirs = json::array();
  for (auto z : r.directions) dirs.push_back(to_json(z));
  out["directions"] = dirs;
  if (include_cells) {
    json cells = json::array();
    const std::size_t n_rungs = r.deltas.size();
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
      const auto& c = r.cells[i];
      cells.push_back({{"zeta_index", static_cast<int>(i / n_rungs)},
                       {"delta", c.delta},
                       {"q", c.q},
                       {"factor_phi", c.factor_phi},
                       {"factor_psi", c.factor_psi},
                       {"gap", c.gap},
                       {"ratio", c.ratio}});
    }
    out["cells"] = cells;
  }
  return out;
}

json to_json(const CompactnessVerdictd& v, const std::string& evidence_ref) {
  json classifications;
  if (v.class_phi) classifications["phi"] = to_string(*v.class_phi);
  if (v.class_psi) classifications["psi"] = to_string(*v.class_psi);
  json out = {{"schema_version", "1"},
              {"decision", to_string(v.decision)},
              {"clause", to_string(v.clause)},
              {"fixed_points_phi", v.fixed_points_phi ? to_json(*v.fixed_points_phi) : json()},
              {"fixed_points_psi_star",
               v.fixed_points_psi_star ? to_json(*v.fixed_points_psi_star) : json()},
              {"classifications", classifications},
              {"evidence_ref", evidence_ref.empty() ? json() : json(evidence_ref)}};
  if (v.evidence && evidence_ref.empty()) {
    out["evidence_summary"] = {{"verdict", to_string(v.evidence->verdict)},
                               {"max_q_deepest", v.evidence->max_q_deepest}};
  }
  return out;
}

json classify_report(const MobiusMapd& m) {
  AutomorphismFormd form = to_automorphism_form(m);
  MapClass cls = classify(m);
  json fixed;
  if (cls != MapClass::Identity) fixed = to_json(fixed_points(m));
  return {{"schema_version", "1"},
          {"map", to_json(m)},
          {"map_spec", format_map_spec(m)},
          {"automorphism_form", to_json(form)},
          {"classification", to_string(cls)},
          {"fixed_points", fixed},
          {"krein_adjoint", to_json(krein_adjoint(m))},
          {"sup_norm", sup_norm(m)}};
}

std::string scan_csv(const BoundaryScanReportd& r) {
  std::string out = "zeta_index,delta,q,factor_phi,factor_psi,gap,ratio\r\n";
  const std::size_t n_rungs = r.deltas.size();
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    const auto& c = r.cells[i];
    out += std::to_string(i / n_rungs);
    out += ',';
    out += fmt(c.delta);
    out += ',';
    out += fmt(c.q);
    out += ',';
    out += fmt(c.factor_phi);
    out += ',';
    out += fmt(c.factor_psi);
    out += ',';
    out += fmt(c.gap);
    out += ',';
    out += fmt(c.ratio);
    out += "\r\n";
  }
  return out;
}

std::string trace_csv(const std::vector<double>& deltas,
                      const std::vector<std::optional<double>>& values) {
  std::string out = "delta,norm\r\n";
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    out += fmt(deltas[i]);
    out += ',';
    if (i < values.size() && values[i]) out += fmt(*values[i]);
    out += "\r\n";
  }
  return out;
}

}  // namespace diriop::io
