#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "diriop/kernel.hpp"

namespace diriop {

/// One evaluation of the necessary-condition quantity
///   q(w) = { (1-|w|^2)/(1-|phi(w)|^2) + (1-|w|^2)/(1-|psi(w)|^2) } |phi(w) - psi(w)|
/// at w = (1 - delta) zeta. A nonzero limit of q along |w| -> 1 rules out
/// compactness of the difference of the two composition operators.
template <typename Scalar = double>
struct NecessaryConditionSample {
  Scalar delta;
  std::complex<Scalar> zeta;
  Scalar q_value;
  Scalar factor_phi;
  Scalar factor_psi;
  Scalar gap;
};

template <typename Scalar>
NecessaryConditionSample<Scalar> necessary_condition_value(const MobiusMap<Scalar>& phi,
                                                           const MobiusMap<Scalar>& psi,
                                                           Scalar delta,
                                                           std::complex<Scalar> zeta) {
  if (!is_self_map(phi) || !is_self_map(psi))
    throw NotSelfMap("necessary_condition_value: both symbols must be self-maps");
  RadialPoint<Scalar> p(delta, zeta);  // validates delta and zeta
  detail::MarginForm<Scalar> pf(phi), qf(psi);
  auto e = detail::eval_rung(pf, qf, delta, zeta);
  return {delta, zeta, e.q, e.factor_phi, e.factor_psi, e.gap};
}

template <typename Scalar = double>
struct SchwarzPickBound {
  Scalar lhs;  // (1 - |phi(w)|) / (1 - |w|)
  Scalar rhs;  // (1 - |phi(0)|) / (1 + |phi(0)|)
};

/// Contraction bound for analytic self-maps: lhs >= rhs on the whole disk.
template <typename Scalar>
SchwarzPickBound<Scalar> schwarz_pick_bound(const MobiusMap<Scalar>& phi,
                                            std::complex<Scalar> w) {
  if (!is_self_map(phi)) throw NotSelfMap("schwarz_pick_bound: symbol is not a self-map");
  if (!(std::abs(w) < Scalar(1))) throw DomainError("schwarz_pick_bound: |w| must be < 1");
  Scalar margin = disk_margin(phi, w);  // 1 - |phi(w)|^2
  Scalar abs_phi_w = std::abs(phi(w));
  Scalar lhs = margin / (Scalar(1) + abs_phi_w) / (Scalar(1) - std::abs(w));
  std::complex<Scalar> phi0 = phi.b() / phi.d();
  Scalar rhs = (Scalar(1) - std::abs(phi0)) / (Scalar(1) + std::abs(phi0));
  return {lhs, rhs};
}

template <typename Scalar = double>
struct FactorBound {
  Scalar value;  // |1 - conj(a) w|^2 / (1 - |a|^2)
  Scalar lower;  // (1 - |a|) / (1 + |a|)
};

/// Closed form of the factor (1-|w|^2)/(1-|phi(w)|^2) for an automorphism with
/// parameter a; valid on the closed disk and bounded below by `lower`.
template <typename Scalar>
FactorBound<Scalar> automorphism_factor_bound(const MobiusMap<Scalar>& phi,
                                              std::complex<Scalar> w) {
  AutomorphismForm<Scalar> f = to_automorphism_form(phi);  // throws if not an automorphism
  if (std::abs(w) > Scalar(1) + Scalar(1e-12))
    throw DomainError("automorphism_factor_bound: |w| must be <= 1");
  Scalar abs_a = std::abs(f.a);
  Scalar value = std::norm(std::complex<Scalar>(1) - std::conj(f.a) * w) /
                 ((Scalar(1) - abs_a) * (Scalar(1) + abs_a));
  Scalar lower = (Scalar(1) - abs_a) / (Scalar(1) + abs_a);
  return {value, lower};
}

// ---------------------------------------------------------------------------
// Boundary scan

/// Dyadic radius ladder delta_k = 2^-k, k = k_min .. k_max. Geometric depths
/// are evenly spaced in ln(1/delta), matching the logarithmic convergence of
/// every limit probed here. Depths past k = 48 are rejected: there the
/// boundary margin of an automorphism stored in doubles falls below its own
/// coefficient-rounding residue.
struct RadiusLadder {
  int k_min = 4;
  int k_max = 40;

  template <typename Scalar = double>
  std::vector<Scalar> deltas() const {
    if (k_min < 1 || k_max < k_min || k_max > 48)
      throw DomainError("RadiusLadder: need 1 <= k_min <= k_max <= 48");
    std::vector<Scalar> out;
    out.reserve(static_cast<std::size_t>(k_max - k_min + 1));
    for (int k = k_min; k <= k_max; ++k) out.push_back(std::ldexp(Scalar(1), -k));
    return out;
  }
};

template <typename Scalar = double>
struct ScanConfig {
  int directions = 256;
  RadiusLadder ladder{};
  Scalar q_threshold = Scalar(1e-3);
};

enum class ScanVerdict { condition_fails, condition_holds_numerically, inconclusive };

inline const char* to_string(ScanVerdict v) {
  switch (v) {
    case ScanVerdict::condition_fails: return "condition_fails";
    case ScanVerdict::condition_holds_numerically: return "condition_holds_numerically";
    case ScanVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

template <typename Scalar = double>
struct ScanCell {
  Scalar delta;
  Scalar q;
  Scalar factor_phi;
  Scalar factor_psi;
  Scalar gap;
  Scalar ratio;  // normalized kernel difference ratio at the same point
};

template <typename Scalar = double>
struct ScanWitness {
  int direction_index;
  std::complex<Scalar> zeta;
  Scalar q_deepest;
};

template <typename Scalar = double>
struct BoundaryScanReport {
  ScanConfig<Scalar> config;
  std::vector<std::complex<Scalar>> directions;
  std::vector<Scalar> deltas;
  std::vector<ScanCell<Scalar>> cells;  // direction-major: cells[d * n_rungs + r]
  ScanVerdict verdict = ScanVerdict::inconclusive;
  std::optional<ScanWitness<Scalar>> witness;
  Scalar max_q_deepest = Scalar(0);
  // Inline contract checks, accumulated over every cell of the scan.
  long schwarz_pick_violations = 0;
  long factor_identity_violations = 0;
  long factor_lower_violations = 0;

  const ScanCell<Scalar>& cell(int dir, int rung) const {
    return cells[static_cast<std::size_t>(dir) * deltas.size() + static_cast<std::size_t>(rung)];
  }
};

using BoundaryScanReportd = BoundaryScanReport<double>;

namespace detail {

template <typename Scalar>
struct VerdictResult {
  ScanVerdict verdict;
  std::optional<int> witness_dir;
  Scalar max_q_deepest;
};

/// Verdict rule: a direction is a persistent witness when q stays above the
/// threshold at the three deepest rungs; the scan fails the condition iff a
/// persistent direction exists, and holds numerically iff the deepest-rung
/// maximum over all directions is below the threshold.
template <typename Scalar>
VerdictResult<Scalar> scan_verdict(const std::vector<std::vector<Scalar>>& q_by_dir,
                                   Scalar threshold) {
  VerdictResult<Scalar> res{ScanVerdict::inconclusive, std::nullopt, Scalar(0)};
  Scalar best_q = -Scalar(1);
  for (std::size_t d = 0; d < q_by_dir.size(); ++d) {
    const auto& qs = q_by_dir[d];
    if (qs.empty()) continue;
    Scalar deepest = qs.back();
    res.max_q_deepest = std::max(res.max_q_deepest, deepest);
    std::size_t persist = std::min<std::size_t>(3, qs.size());
    bool persistent = true;
    for (std::size_t i = qs.size() - persist; i < qs.size(); ++i)
      persistent = persistent && qs[i] > threshold;
    if (persistent && deepest > best_q) {
      best_q = deepest;
      res.witness_dir = static_cast<int>(d);
    }
  }
  if (res.witness_dir) {
    res.verdict = ScanVerdict::condition_fails;
  } else if (res.max_q_deepest < threshold) {
    res.verdict = ScanVerdict::condition_holds_numerically;
  } else {
    res.verdict = ScanVerdict::inconclusive;
  }
  return res;
}

}  // namespace detail

/// Samples the necessary-condition quantity on a (direction x radius) grid and
/// judges whether the condition can still hold along |w| -> 1.
///
/// The verdict vocabulary is deliberately one-sided: the condition is only
/// necessary for compactness, so the scan never claims an operator difference
/// is compact. `condition_holds_numerically` is not a compactness certificate.
///
/// Every cell is also checked against the contraction bound and, for
/// automorphism symbols, against the closed factor identity. The identity
/// comparisons allow a rounding floor that grows like eps/delta: the stored
/// coefficients define a map within a few ulps of an exact automorphism, and
/// that model error is magnified by 1/delta in the boundary factors.
template <typename Scalar>
BoundaryScanReport<Scalar> boundary_scan(const MobiusMap<Scalar>& phi,
                                         const MobiusMap<Scalar>& psi,
                                         const ScanConfig<Scalar>& cfg = {}) {
  if (!is_self_map(phi) || !is_self_map(psi))
    throw NotSelfMap("boundary_scan: both symbols must be self-maps");
  if (cfg.directions < 1 || cfg.directions > (1 << 20))
    throw DomainError("boundary_scan: direction count out of range");
  if (!(cfg.q_threshold > Scalar(0))) throw DomainError("boundary_scan: q_threshold must be > 0");

  constexpr Scalar two_pi = Scalar(6.283185307179586476925287L);
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();

  BoundaryScanReport<Scalar> rep;
  rep.config = cfg;
  rep.deltas = cfg.ladder.template deltas<Scalar>();
  rep.directions.reserve(static_cast<std::size_t>(cfg.directions));
  for (int j = 0; j < cfg.directions; ++j)
    rep.directions.push_back(std::polar(Scalar(1), two_pi * Scalar(j) / Scalar(cfg.directions)));

  detail::MarginForm<Scalar> pf(phi), qf(psi);
  const Scalar coeff_scale =
      phi.coefficients().squaredNorm() + psi.coefficients().squaredNorm();

  std::optional<std::complex<Scalar>> a_phi, a_psi;
  if (is_automorphism(phi)) a_phi = to_automorphism_form(phi).a;
  if (is_automorphism(psi)) a_psi = to_automorphism_form(psi).a;
  const std::complex<Scalar> phi0 = phi.b() / phi.d();
  const std::complex<Scalar> psi0 = psi.b() / psi.d();
  const Scalar sp_rhs_phi = (Scalar(1) - std::abs(phi0)) / (Scalar(1) + std::abs(phi0));
  const Scalar sp_rhs_psi = (Scalar(1) - std::abs(psi0)) / (Scalar(1) + std::abs(psi0));

  const std::size_t n_rungs = rep.deltas.size();
  rep.cells.reserve(rep.directions.size() * n_rungs);
  std::vector<std::vector<Scalar>> q_by_dir(rep.directions.size());

  auto check_cell = [&](const detail::RungEval<Scalar>& e, Scalar delta,
                        std::complex<Scalar> w) {
    const Scalar slack = Scalar(1e-12) + 32 * eps * coeff_scale / delta;
    auto sp = [&](Scalar margin, std::complex<Scalar> img, Scalar rhs) {
      Scalar lhs = margin / (Scalar(1) + std::abs(img)) / delta;
      if (lhs < rhs - slack) ++rep.schwarz_pick_violations;
    };
    sp(e.margin_phi, e.phi_w, sp_rhs_phi);
    sp(e.margin_psi, e.psi_w, sp_rhs_psi);

    const Scalar rel_tol = std::max(Scalar(1e-10), 32 * eps * coeff_scale / delta);
    auto factor_check = [&](std::complex<Scalar> a, Scalar factor) {
      Scalar abs_a = std::abs(a);
      Scalar value = std::norm(std::complex<Scalar>(1) - std::conj(a) * w) /
                     ((Scalar(1) - abs_a) * (Scalar(1) + abs_a));
      Scalar lower = (Scalar(1) - abs_a) / (Scalar(1) + abs_a);
      if (std::abs(value - factor) > rel_tol * std::max(value, factor))
        ++rep.factor_identity_violations;
      if (value < lower - Scalar(1e-12)) ++rep.factor_lower_violations;
    };
    if (a_phi) factor_check(*a_phi, e.factor_phi);
    if (a_psi) factor_check(*a_psi, e.factor_psi);
  };

  for (std::size_t d = 0; d < rep.directions.size(); ++d) {
    const std::complex<Scalar> zeta = rep.directions[d];
    q_by_dir[d].reserve(n_rungs);
    for (Scalar delta : rep.deltas) {
      auto e = detail::eval_rung(pf, qf, delta, zeta);
      rep.cells.push_back({delta, e.q, e.factor_phi, e.factor_psi, e.gap, e.ratio});
      q_by_dir[d].push_back(e.q);
      check_cell(e, delta, (Scalar(1) - delta) * zeta);
    }
  }

  auto vr = detail::scan_verdict(q_by_dir, cfg.q_threshold);
  rep.verdict = vr.verdict;
  rep.max_q_deepest = vr.max_q_deepest;
  if (vr.witness_dir) {
    int d = *vr.witness_dir;
    rep.witness = ScanWitness<Scalar>{d, rep.directions[static_cast<std::size_t>(d)],
                                      q_by_dir[static_cast<std::size_t>(d)].back()};
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Radial case classifier

enum class CaseTag { case_i, case_ii, case_iii_a, case_iii_b, case_iii_c, not_applicable };

inline const char* to_string(CaseTag t) {
  switch (t) {
    case CaseTag::case_i: return "I";
    case CaseTag::case_ii: return "II";
    case CaseTag::case_iii_a: return "III-a";
    case CaseTag::case_iii_b: return "III-b";
    case CaseTag::case_iii_c: return "III-c";
    case CaseTag::not_applicable: return "not-applicable";
  }
  return "?";
}

enum class RatioLimit { one, at_least_one, two, none };

inline const char* to_string(RatioLimit r) {
  switch (r) {
    case RatioLimit::one: return "1";
    case RatioLimit::at_least_one: return ">=1";
    case RatioLimit::two: return "2";
    case RatioLimit::none: return "none";
  }
  return "?";
}

/// Radial-limit diagnosis of a symbol pair along one direction: which case of
/// the limit analysis applies, the estimated limits, and the bounded-remainder
/// trace for that case.
template <typename Scalar = double>
struct CaseReport {
  CaseTag tag = CaseTag::not_applicable;
  std::complex<Scalar> phi_limit{}, psi_limit{};
  Scalar phi_factor_limit{}, psi_factor_limit{};
  RatioLimit predicted = RatioLimit::none;
  std::string remainder_name;
  std::vector<Scalar> deltas;
  std::vector<Scalar> remainder_trace;
  Scalar remainder_max = Scalar(0);
  std::string reason;  // set when tag == not_applicable
};

using CaseReportd = CaseReport<double>;

namespace detail {

/// Pure case assignment from the limit flags; split out so the branching can
/// be tested without manufacturing symbols for every branch.
inline std::pair<CaseTag, RatioLimit> assign_case(bool phi_boundary, bool psi_boundary,
                                                  bool phi_factor_zero, bool psi_factor_zero) {
  if (phi_boundary && !psi_boundary) return {CaseTag::case_i, RatioLimit::one};
  if (!phi_boundary && psi_boundary) return {CaseTag::case_ii, RatioLimit::one};
  if (phi_boundary && psi_boundary) {
    if (phi_factor_zero && psi_factor_zero) return {CaseTag::not_applicable, RatioLimit::none};
    if (phi_factor_zero) return {CaseTag::case_iii_a, RatioLimit::at_least_one};
    if (psi_factor_zero) return {CaseTag::case_iii_b, RatioLimit::at_least_one};
    return {CaseTag::case_iii_c, RatioLimit::two};
  }
  return {CaseTag::not_applicable, RatioLimit::none};
}

template <typename Scalar>
bool settled(Scalar d2, Scalar d1) {
  // Differences along a geometric ladder should shrink; allow an absolute
  // floor for sequences already at rounding level.
  return d2 <= Scalar(0.75) * d1 + Scalar(1e-9);
}

}  // namespace detail

/// Classifies the boundary behaviour of (phi, psi) along the direction zeta.
///
/// Limits are taken from the deepest rung after a consistency check across the
/// three deepest rungs. The classifier refuses (`not_applicable`) instead of
/// guessing whenever the hypotheses behind the case analysis fail on this
/// direction: vanishing necessary-condition quantity, coinciding radial
/// limits, or unsettled rung values. A full analysis extracts subsequences in
/// those situations, which a fixed radial ladder cannot do.
template <typename Scalar>
CaseReport<Scalar> classify_case(const MobiusMap<Scalar>& phi, const MobiusMap<Scalar>& psi,
                                 std::complex<Scalar> zeta, const RadiusLadder& ladder = {},
                                 Scalar q_threshold = Scalar(1e-3)) {
  if (!is_self_map(phi) || !is_self_map(psi))
    throw NotSelfMap("classify_case: both symbols must be self-maps");

  CaseReport<Scalar> rep;
  rep.deltas = ladder.template deltas<Scalar>();
  const std::size_t n = rep.deltas.size();
  if (n < 3) throw DomainError("classify_case: ladder needs at least 3 rungs");

  detail::MarginForm<Scalar> pf(phi), qf(psi);
  std::vector<detail::RungEval<Scalar>> rungs;
  rungs.reserve(n);
  for (Scalar delta : rep.deltas) rungs.push_back(detail::eval_rung(pf, qf, delta, zeta));

  const auto& deep = rungs[n - 1];
  rep.phi_limit = deep.phi_w;
  rep.psi_limit = deep.psi_w;
  rep.phi_factor_limit = deep.factor_phi;
  rep.psi_factor_limit = deep.factor_psi;

  auto refuse = [&](const char* why) {
    rep.tag = CaseTag::not_applicable;
    rep.predicted = RatioLimit::none;
    rep.reason = why;
    return rep;
  };

  // Hypothesis: the quantity q does not vanish along this direction.
  bool q_alive = true;
  for (std::size_t i = n - 3; i < n; ++i) q_alive = q_alive && rungs[i].q > q_threshold;
  if (!q_alive) return refuse("necessary-condition quantity vanishes along this direction");

  if (std::abs(deep.phi_w - deep.psi_w) <= Scalar(1e-6))
    return refuse("radial limits of the two symbols coincide");

  // Consistency: the limits must have settled. Image values are checked on
  // the deepest rungs. The factors carry a coefficient-rounding term that
  // grows like eps/delta, so their rung-to-rung differences are only
  // meaningful while delta is moderate; check them at the deepest rung with
  // delta >= 1e-6 instead.
  auto d_img = [&](std::size_t i, std::size_t j) {
    return std::max(std::abs(rungs[i].phi_w - rungs[j].phi_w),
                    std::abs(rungs[i].psi_w - rungs[j].psi_w));
  };
  auto d_fac = [&](std::size_t i, std::size_t j) {
    return std::max(std::abs(rungs[i].factor_phi - rungs[j].factor_phi),
                    std::abs(rungs[i].factor_psi - rungs[j].factor_psi));
  };
  if (!detail::settled(d_img(n - 1, n - 2), d_img(n - 2, n - 3)))
    return refuse("radial limits did not stabilize over the deepest rungs");
  std::size_t fi = n - 1;
  while (fi > 2 && rep.deltas[fi] < Scalar(1e-6)) --fi;
  if (rep.deltas[fi] >= Scalar(1e-6) &&
      !detail::settled(d_fac(fi, fi - 1), d_fac(fi - 1, fi - 2)))
    return refuse("radial limits did not stabilize over the deepest rungs");

  const Scalar mod_tol = Scalar(1e-6);
  bool phi_boundary = Scalar(1) - std::abs(deep.phi_w) < mod_tol;
  bool psi_boundary = Scalar(1) - std::abs(deep.psi_w) < mod_tol;
  const Scalar factor_zero_tol = Scalar(1e-6);
  auto [tag, predicted] = detail::assign_case(phi_boundary, psi_boundary,
                                              deep.factor_phi < factor_zero_tol,
                                              deep.factor_psi < factor_zero_tol);
  rep.tag = tag;
  rep.predicted = predicted;
  if (tag == CaseTag::not_applicable)
    return refuse("no case of the limit analysis applies on this direction");

  switch (tag) {
    case CaseTag::case_i: rep.remainder_name = "kappa"; break;
    case CaseTag::case_ii: rep.remainder_name = "kappa"; break;
    case CaseTag::case_iii_a: rep.remainder_name = "lambda"; break;
    case CaseTag::case_iii_b: rep.remainder_name = "lambda_tilde"; break;
    case CaseTag::case_iii_c: rep.remainder_name = "lambda_hat"; break;
    default: break;
  }
  rep.remainder_trace.reserve(n);
  for (const auto& e : rungs) {
    Scalar rem;
    switch (tag) {
      case CaseTag::case_i:
        rem = e.t_psi - 2 * e.t_cross + std::log(e.factor_phi);
        break;
      case CaseTag::case_ii:
        rem = e.t_phi - 2 * e.t_cross + std::log(e.factor_psi);
        break;
      case CaseTag::case_iii_a:
        rem = -2 * e.t_cross + std::log(e.factor_psi);
        break;
      case CaseTag::case_iii_b:
        rem = -2 * e.t_cross + std::log(e.factor_phi);
        break;
      default:  // III-c
        rem = -2 * e.t_cross + std::log(e.factor_phi) + std::log(e.factor_psi);
        break;
    }
    rep.remainder_trace.push_back(rem);
    rep.remainder_max = std::max(rep.remainder_max, std::abs(rem));
  }
  return rep;
}

template <typename Scalar = double>
struct RatioLadderResult {
  std::vector<Scalar> estimates;  // diff ratio per rung
  std::vector<RatioSample<Scalar>> samples;
  CaseReport<Scalar> report;
};

/// Ratio ladder plus case diagnosis along one direction. When the case is I or
/// II the estimates drift toward 1; for III-c toward 2; for III-a/III-b they
/// are eventually bounded below by ~1. Convergence is logarithmic in delta.
template <typename Scalar>
RatioLadderResult<Scalar> ratio_limit_check(const MobiusMap<Scalar>& phi,
                                            const MobiusMap<Scalar>& psi,
                                            std::complex<Scalar> zeta,
                                            const RadiusLadder& ladder = {},
                                            Scalar q_threshold = Scalar(1e-3)) {
  RatioLadderResult<Scalar> out;
  out.report = classify_case(phi, psi, zeta, ladder, q_threshold);
  detail::MarginForm<Scalar> pf(phi), qf(psi);
  for (Scalar delta : ladder.template deltas<Scalar>()) {
    auto e = detail::eval_rung(pf, qf, delta, zeta);
    out.estimates.push_back(e.ratio);
    out.samples.push_back(detail::to_ratio_sample(e, delta, zeta));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verdicts

enum class Decision { compact_nontrivially, compact_trivially_zero, not_compact, out_of_scope };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::compact_nontrivially: return "compact_nontrivially";
    case Decision::compact_trivially_zero: return "compact_trivially_zero";
    case Decision::not_compact: return "not_compact";
    case Decision::out_of_scope: return "out_of_scope";
  }
  return "?";
}

enum class Clause {
  same_fixed_points,
  both_elliptic,
  commute_exactly,
  difference_witness,
  identity_exclusion,
  zero_operator,
};

inline const char* to_string(Clause c) {
  switch (c) {
    case Clause::same_fixed_points: return "same-fixed-points";
    case Clause::both_elliptic: return "both-elliptic";
    case Clause::commute_exactly: return "commute-exactly";
    case Clause::difference_witness: return "difference-witness";
    case Clause::identity_exclusion: return "identity-exclusion";
    case Clause::zero_operator: return "zero-operator";
  }
  return "?";
}

/// Decision plus justification for a compactness question, with the evidence
/// that produced it.
template <typename Scalar = double>
struct CompactnessVerdict {
  Decision decision;
  Clause clause;
  std::optional<FixedPointSet<Scalar>> fixed_points_phi;
  std::optional<FixedPointSet<Scalar>> fixed_points_psi_star;
  std::optional<MapClass> class_phi;
  std::optional<MapClass> class_psi;
  std::optional<BoundaryScanReport<Scalar>> evidence;
};

using CompactnessVerdictd = CompactnessVerdict<double>;

/// Difference of two automorphism-induced composition operators: compact only
/// when the symbols coincide (zero operator); any other automorphism pair gets
/// a failing boundary scan attached as the witness.
template <typename Scalar>
CompactnessVerdict<Scalar> automorphism_difference_decision(const MobiusMap<Scalar>& phi,
                                                            const MobiusMap<Scalar>& psi,
                                                            const ScanConfig<Scalar>& cfg = {}) {
  if (!is_automorphism(phi) || !is_automorphism(psi))
    throw NotAutomorphism("automorphism_difference_decision: both symbols must be automorphisms");
  CompactnessVerdict<Scalar> v;
  if (maps_equal(phi, psi)) {
    v.decision = Decision::compact_trivially_zero;
    v.clause = Clause::zero_operator;
    return v;
  }
  v.decision = Decision::not_compact;
  v.clause = Clause::difference_witness;
  v.evidence = boundary_scan(phi, psi, cfg);
  return v;
}

// ---------------------------------------------------------------------------
// Log-ratio lemma

/// For positive sequences a_n, b_n in (0,1) with b_n/a_n eventually below 1,
/// returns the smallest index N such that 0 < ln(a_n)/ln(b_n) < 1 for every
/// supplied index n > N (0-based; N = 0 when the inequality holds from the
/// start). Throws when the prefix never satisfies b_n < a_n beyond some index.
template <typename Scalar>
std::size_t log_ratio_lemma_check(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) throw DomainError("log_ratio_lemma_check: length mismatch");
  if (a.size() < 2) throw DomainError("log_ratio_lemma_check: need at least two entries");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > Scalar(0)) || !(a[i] < Scalar(1)) || !(b[i] > Scalar(0)) || !(b[i] < Scalar(1)))
      throw DomainError("log_ratio_lemma_check: entries must lie in (0, 1)");
  }
  long last_bad = -1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    // 0 < ln a / ln b < 1 for a, b in (0,1) is exactly b < a.
    if (!(b[i] < a[i])) last_bad = static_cast<long>(i);
  }
  if (last_bad == static_cast<long>(a.size()) - 1)
    throw DomainError("log_ratio_lemma_check: prefix too short, b/a is not below 1 at its end");
  return last_bad < 0 ? 0 : static_cast<std::size_t>(last_bad);
}

}  // namespace diriop
