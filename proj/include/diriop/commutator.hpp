#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "diriop/compactness.hpp"
#include "diriop/oracle.hpp"

namespace diriop {

template <typename Scalar = double>
struct OracleConfig {
  Scalar rho = Scalar(0.9);
  int order = 512;
};

/// Pieces of the adjoint formula for a linear-fractional self-map in
/// determinant-normalized form:
///   C*_psi f = f(0) K_{psi(0)} - s f(psi*(0)) + s f(psi* .)
/// with s = ad - bc. The formula is scale-sensitive while psi* is not, so the
/// library always applies it on the canonical representative, where s = 1.
template <typename Scalar = double>
struct AdjointDecomposition {
  std::complex<Scalar> s;        // determinant of the canonical representative
  MobiusMap<Scalar> krein;       // psi*
  std::complex<Scalar> psi_zero;    // psi(0), anchor of the rank-one kernel term
  std::complex<Scalar> krein_zero;  // psi*(0)
};

using AdjointDecompositiond = AdjointDecomposition<double>;

template <typename Scalar>
AdjointDecomposition<Scalar> adjoint_decomposition(const MobiusMap<Scalar>& psi) {
  if (!is_self_map(psi)) throw NotSelfMap("adjoint_decomposition: symbol is not a self-map");
  AdjointDecomposition<Scalar> d{psi.det(), krein_adjoint(psi), psi.b() / psi.d(),
                                 std::complex<Scalar>(0)};
  d.krein_zero = d.krein.b() / d.krein.d();
  return d;
}

/// (C*_psi f)(w) for an evaluable f, via the closed adjoint formula with s = 1.
template <typename Scalar, typename F>
std::complex<Scalar> adjoint_apply(const MobiusMap<Scalar>& psi, F&& f, std::complex<Scalar> w) {
  using Complex = std::complex<Scalar>;
  if (!is_self_map(psi)) throw NotSelfMap("adjoint_apply: symbol is not a self-map");
  if (!(std::abs(w) < Scalar(1))) throw DomainError("adjoint_apply: |w| must be < 1");
  MobiusMap<Scalar> krein = krein_adjoint(psi);
  Complex krein_zero = krein.b() / krein.d();
  Complex krein_w = krein(w);
  if (!(std::abs(krein_zero) < Scalar(1)) || !(std::abs(krein_w) < Scalar(1)))
    throw DomainError("adjoint_apply: Krein adjoint leaves the unit disk at the evaluation point");
  Complex psi_zero = psi.b() / psi.d();
  Complex k_term = f(Complex(0)) * kernel_eval(KernelPoint<Scalar>(psi_zero), w);
  return k_term - f(krein_zero) + f(krein_w);
}

/// ([C*_psi, C_phi] f)(w) straight from the definition C*_psi C_phi - C_phi C*_psi.
template <typename Scalar, typename F>
std::complex<Scalar> commutator_apply(const MobiusMap<Scalar>& psi, const MobiusMap<Scalar>& phi,
                                      F&& f, std::complex<Scalar> w) {
  if (!is_self_map(phi)) throw NotSelfMap("commutator_apply: phi is not a self-map");
  auto f_after_phi = [&](std::complex<Scalar> z) { return f(phi(z)); };
  return adjoint_apply(psi, f_after_phi, w) - adjoint_apply(psi, f, phi(w));
}

/// The pair (psi* o phi, phi o psi*) whose composition-operator difference
/// carries the non-compact part of the commutator.
template <typename Scalar>
std::pair<MobiusMap<Scalar>, MobiusMap<Scalar>> difference_pair(const MobiusMap<Scalar>& psi,
                                                                const MobiusMap<Scalar>& phi) {
  if (!is_self_map(psi) || !is_self_map(phi))
    throw NotSelfMap("difference_pair: both symbols must be self-maps");
  MobiusMap<Scalar> krein = krein_adjoint(psi);
  MobiusMap<Scalar> first = compose(krein, phi);
  MobiusMap<Scalar> second = compose(phi, krein);
  if (!is_self_map(first) || !is_self_map(second))
    throw NotSelfMap("difference_pair: a composition is not a self-map");
  return {first, second};
}

template <typename Scalar>
bool commute_check(const MobiusMap<Scalar>& psi, const MobiusMap<Scalar>& phi) {
  auto [first, second] = difference_pair(psi, phi);
  return maps_equal(first, second);
}

/// Non-trivial compactness of the commutator [C*_psi, C_phi] for automorphism
/// symbols, neither the identity.
///
/// The decision is equality of the fixed-point sets of phi and psi* (finite
/// points matched to tolerance, point-at-infinity annotations included), which
/// for disk automorphisms is equivalent to phi and psi* commuting. Elliptic
/// pairs sharing their fixed points are reported under the both-elliptic
/// clause; elliptic pairs around different centers do not commute and are
/// rejected, with a failing scan of the difference pair as evidence.
template <typename Scalar>
CompactnessVerdict<Scalar> commutator_compact_decision(const MobiusMap<Scalar>& psi,
                                                       const MobiusMap<Scalar>& phi,
                                                       const ScanConfig<Scalar>& cfg = {}) {
  if (!is_automorphism(psi) || !is_automorphism(phi))
    throw NotAutomorphism("commutator_compact_decision: both symbols must be automorphisms");

  CompactnessVerdict<Scalar> v;
  const MobiusMap<Scalar> id = MobiusMap<Scalar>::identity();
  if (maps_equal(phi, id) || maps_equal(psi, id)) {
    v.decision = Decision::out_of_scope;
    v.clause = Clause::identity_exclusion;
    return v;
  }

  v.class_phi = classify(phi);
  v.class_psi = classify(psi);
  v.fixed_points_phi = fixed_points(phi);
  v.fixed_points_psi_star = fixed_points(krein_adjoint(psi));

  if (same_fixed_points(*v.fixed_points_phi, *v.fixed_points_psi_star)) {
    v.decision = Decision::compact_nontrivially;
    v.clause = (*v.class_phi == MapClass::Elliptic && *v.class_psi == MapClass::Elliptic)
                   ? Clause::both_elliptic
                   : Clause::same_fixed_points;
    return v;
  }
  v.decision = Decision::not_compact;
  v.clause = Clause::difference_witness;
  auto [first, second] = difference_pair(psi, phi);
  v.evidence = boundary_scan(first, second, cfg);
  return v;
}

/// Compactness of the self-commutator [C*_phi, C_phi] for an automorphism phi.
/// Always compact: the identity gives the zero operator, elliptic symbols fall
/// under the both-elliptic clause, and parabolic/hyperbolic symbols share all
/// their (boundary) fixed points with phi*.
template <typename Scalar>
CompactnessVerdict<Scalar> essentially_normal(const MobiusMap<Scalar>& phi) {
  if (!is_automorphism(phi))
    throw NotAutomorphism("essentially_normal: symbol is not an automorphism");
  CompactnessVerdict<Scalar> v;
  v.class_phi = classify(phi);
  v.class_psi = v.class_phi;
  if (*v.class_phi == MapClass::Identity) {
    v.decision = Decision::compact_trivially_zero;
    v.clause = Clause::zero_operator;
    return v;
  }
  v.fixed_points_phi = fixed_points(phi);
  v.fixed_points_psi_star = fixed_points(krein_adjoint(phi));
  v.decision = Decision::compact_nontrivially;
  v.clause = *v.class_phi == MapClass::Elliptic ? Clause::both_elliptic
                                                : Clause::same_fixed_points;
  return v;
}

/// Norm of the commutator applied to normalized kernel functions along a
/// radial ladder, estimated through the series oracle. Corroborative only:
/// rungs whose norm estimate is truncation-limited (tail flag) are reported as
/// absent rather than fabricated, which happens quickly as |w| -> 1.
template <typename Scalar>
std::vector<std::optional<Scalar>> commutator_norm_trace(const MobiusMap<Scalar>& psi,
                                                         const MobiusMap<Scalar>& phi,
                                                         std::complex<Scalar> zeta,
                                                         const RadiusLadder& ladder = {},
                                                         const OracleConfig<Scalar>& oracle = {}) {
  if (!is_automorphism(psi) || !is_automorphism(phi))
    throw NotAutomorphism("commutator_norm_trace: both symbols must be automorphisms");
  std::vector<std::optional<Scalar>> trace;
  for (Scalar delta : ladder.template deltas<Scalar>()) {
    std::complex<Scalar> w = (Scalar(1) - delta) * zeta;
    if (!(std::abs(w) < Scalar(1) - tol::boundary)) {
      trace.push_back(std::nullopt);
      continue;
    }
    KernelPoint<Scalar> kw(w);
    Scalar inv_norm = Scalar(1) / std::sqrt(kernel_norm_sq(kw));
    auto f = [&](std::complex<Scalar> z) { return kernel_eval(kw, z) * inv_norm; };
    auto g = [&](std::complex<Scalar> v) { return commutator_apply(psi, phi, f, v); };
    NormEstimate<Scalar> est = dirichlet_norm_estimate(g, oracle.rho, oracle.order);
    if (est.tail_flag) {
      trace.push_back(std::nullopt);
    } else {
      trace.push_back(std::sqrt(std::max(Scalar(0), est.norm_sq)));
    }
  }
  return trace;
}

}  // namespace diriop
