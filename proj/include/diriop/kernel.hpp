#pragma once

#include <cmath>
#include <complex>

#include "diriop/mobius.hpp"

namespace diriop {

/// Point of the open unit disk at which a reproducing kernel is anchored.
/// Rejects |w| >= 1 - tol::boundary.
template <typename Scalar = double>
class KernelPoint {
 public:
  using Complex = std::complex<Scalar>;

  explicit KernelPoint(Complex w) : w_(w) {
    if (!(std::abs(w) < Scalar(1) - tol::boundary))
      throw DomainError("KernelPoint: |w| must be < 1 - 1e-14");
  }

  Complex value() const { return w_; }
  Scalar abs() const { return std::abs(w_); }

 private:
  Complex w_;
};

using KernelPointd = KernelPoint<double>;

/// K_w(z) = 1 + log(1/(1 - conj(w) z)), principal branch. The argument
/// 1 - conj(w) z lies in the open right half-plane for |w|, |z| < 1, so the
/// branch cut is never approached.
template <typename Scalar>
std::complex<Scalar> kernel_eval(const KernelPoint<Scalar>& w, std::complex<Scalar> z) {
  if (!(std::abs(z) < Scalar(1))) throw DomainError("kernel_eval: |z| must be < 1");
  return std::complex<Scalar>(1) - std::log(std::complex<Scalar>(1) - std::conj(w.value()) * z);
}

/// ||K_w||^2 = 1 + ln(1/(1 - |w|^2)); strictly increasing in |w|, >= 1.
template <typename Scalar>
Scalar kernel_norm_sq(const KernelPoint<Scalar>& w) {
  return Scalar(1) - std::log1p(-std::norm(w.value()));
}

/// Same norm at w = (1 - delta) zeta with 1 - |w|^2 = delta (2 - delta) formed
/// from delta directly.
template <typename Scalar>
Scalar kernel_norm_sq(const RadialPoint<Scalar>& p) {
  return Scalar(1) - std::log(p.delta) - std::log(Scalar(2) - p.delta);
}

/// <K_w1, K_w2> = K_w1(w2).
template <typename Scalar>
std::complex<Scalar> kernel_inner(const KernelPoint<Scalar>& w1, const KernelPoint<Scalar>& w2) {
  return std::complex<Scalar>(1) -
         std::log(std::complex<Scalar>(1) - std::conj(w1.value()) * w2.value());
}

/// The adjoint of a composition operator sends K_w to K_{phi(w)}; this returns
/// the new anchor phi(w).
template <typename Scalar>
KernelPoint<Scalar> adjoint_on_kernel(const MobiusMap<Scalar>& phi, const KernelPoint<Scalar>& w) {
  if (!is_self_map(phi)) throw NotSelfMap("adjoint_on_kernel: symbol is not a self-map");
  std::complex<Scalar> img = phi(w.value());
  if (!(std::abs(img) < Scalar(1) - tol::boundary))
    throw DomainError("adjoint_on_kernel: image reaches the boundary");
  return KernelPoint<Scalar>(img);
}

/// One evaluation of the normalized kernel difference ratio
///   ||(C*_phi - C*_psi) K_w||^2 / ||K_w||^2,
/// with the three log terms of the numerator kept separately.
template <typename Scalar = double>
struct RatioSample {
  Scalar delta;                  // 1 - |w|
  std::complex<Scalar> zeta;     // w / |w|
  Scalar log_norm_phi;           // ln 1/(1 - |phi(w)|^2)
  Scalar log_norm_psi;           // ln 1/(1 - |psi(w)|^2)
  Scalar log_cross;              // ln 1/|1 - conj(phi(w)) psi(w)|
  Scalar base_log;               // ln 1/(1 - |w|^2)
  Scalar ratio;                  // clamped to >= 0
  bool clamped = false;

  std::complex<Scalar> w() const { return (Scalar(1) - delta) * zeta; }
};

using RatioSampled = RatioSample<double>;

namespace detail {

/// Everything the scan and the case classifier need at one (map pair, point):
/// the two image points, the Eq-style factors, the gap, and the ratio terms.
template <typename Scalar>
struct RungEval {
  std::complex<Scalar> phi_w, psi_w;
  Scalar factor_phi, factor_psi;  // (1 - |w|^2)/(1 - |sym(w)|^2)
  Scalar margin_phi, margin_psi;  // 1 - |sym(w)|^2
  Scalar gap;                     // |phi(w) - psi(w)|
  Scalar q;                       // (factor_phi + factor_psi) * gap
  Scalar t_phi, t_psi, t_cross;   // the three numerator logs
  Scalar base_log;                // ln 1/(1 - |w|^2)
  Scalar ratio;
  bool clamped = false;
};

template <typename Scalar>
RungEval<Scalar> eval_rung(const MarginForm<Scalar>& phi_form, const MarginForm<Scalar>& psi_form,
                           Scalar delta, std::complex<Scalar> zeta) {
  RungEval<Scalar> r;
  const Scalar one_minus_w_sq = delta * (Scalar(2) - delta);

  const MobiusMap<Scalar>& phi = phi_form.map();
  const MobiusMap<Scalar>& psi = psi_form.map();
  RadialPoint<Scalar> p(delta, zeta);
  r.phi_w = phi(p);
  r.psi_w = psi(p);

  const Scalar q_phi = phi_form.q_radial(delta, zeta);
  const Scalar q_psi = psi_form.q_radial(delta, zeta);
  const Scalar den_phi = phi_form.denominator_sq_radial(delta, zeta);
  const Scalar den_psi = psi_form.denominator_sq_radial(delta, zeta);
  if (!(q_phi > Scalar(0)) || !(q_psi > Scalar(0)))
    throw DomainError("eval_rung: image reached the unit circle");

  r.margin_phi = q_phi / den_phi;
  r.margin_psi = q_psi / den_psi;
  r.factor_phi = one_minus_w_sq * den_phi / q_phi;
  r.factor_psi = one_minus_w_sq * den_psi / q_psi;
  r.gap = std::abs(r.phi_w - r.psi_w);
  r.q = (r.factor_phi + r.factor_psi) * r.gap;

  r.t_phi = std::log(den_phi) - std::log(q_phi);
  r.t_psi = std::log(den_psi) - std::log(q_psi);
  r.base_log = -std::log(delta) - std::log(Scalar(2) - delta);
  if (phi.coefficients_equal_bitwise(psi)) {
    // Zero operator: force the exact cancellation the algebra promises.
    r.t_cross = (r.t_phi + r.t_psi) / Scalar(2);
    r.ratio = Scalar(0);
    return r;
  }
  r.t_cross = -std::log(std::abs(std::complex<Scalar>(1) - std::conj(r.phi_w) * r.psi_w));
  Scalar raw = (r.t_phi + r.t_psi - 2 * r.t_cross) / (Scalar(1) + r.base_log);
  if (raw < Scalar(0)) {
    r.ratio = Scalar(0);
    r.clamped = true;
  } else {
    r.ratio = raw;
  }
  return r;
}

template <typename Scalar>
RatioSample<Scalar> to_ratio_sample(const RungEval<Scalar>& e, Scalar delta,
                                    std::complex<Scalar> zeta) {
  RatioSample<Scalar> s;
  s.delta = delta;
  s.zeta = zeta;
  s.log_norm_phi = e.t_phi;
  s.log_norm_psi = e.t_psi;
  s.log_cross = e.t_cross;
  s.base_log = e.base_log;
  s.ratio = e.ratio;
  s.clamped = e.clamped;
  return s;
}

}  // namespace detail

/// Normalized difference ratio at w = (1 - delta) zeta (the scan entry point).
template <typename Scalar>
RatioSample<Scalar> diff_ratio(const MobiusMap<Scalar>& phi, const MobiusMap<Scalar>& psi,
                               const RadialPoint<Scalar>& p) {
  if (!is_self_map(phi) || !is_self_map(psi))
    throw NotSelfMap("diff_ratio: both symbols must be self-maps");
  detail::MarginForm<Scalar> pf(phi), qf(psi);
  auto e = detail::eval_rung(pf, qf, p.delta, p.zeta);
  return detail::to_ratio_sample(e, p.delta, p.zeta);
}

/// Normalized difference ratio at an interior kernel point.
template <typename Scalar>
RatioSample<Scalar> diff_ratio(const MobiusMap<Scalar>& phi, const MobiusMap<Scalar>& psi,
                               const KernelPoint<Scalar>& w) {
  if (!is_self_map(phi) || !is_self_map(psi))
    throw NotSelfMap("diff_ratio: both symbols must be self-maps");
  using Complex = std::complex<Scalar>;
  const Complex wv = w.value();
  detail::MarginForm<Scalar> pf(phi), qf(psi);

  RatioSample<Scalar> s;
  Scalar r = std::abs(wv);
  s.delta = Scalar(1) - r;
  s.zeta = r > Scalar(0) ? wv / r : Complex(1);

  const Scalar q_phi = pf.q_at(wv), q_psi = qf.q_at(wv);
  const Scalar den_phi = pf.denominator_sq_at(wv), den_psi = qf.denominator_sq_at(wv);
  if (!(q_phi > Scalar(0)) || !(q_psi > Scalar(0)))
    throw DomainError("diff_ratio: image reached the unit circle");
  s.log_norm_phi = std::log(den_phi) - std::log(q_phi);
  s.log_norm_psi = std::log(den_psi) - std::log(q_psi);
  s.base_log = -std::log1p(-std::norm(wv));

  if (phi.coefficients_equal_bitwise(psi)) {
    s.log_cross = (s.log_norm_phi + s.log_norm_psi) / Scalar(2);
    s.ratio = Scalar(0);
    return s;
  }
  Complex phi_w = phi(wv), psi_w = psi(wv);
  s.log_cross = -std::log(std::abs(Complex(1) - std::conj(phi_w) * psi_w));
  Scalar raw = (s.log_norm_phi + s.log_norm_psi - 2 * s.log_cross) / (Scalar(1) + s.base_log);
  if (raw < Scalar(0)) {
    s.ratio = Scalar(0);
    s.clamped = true;
  } else {
    s.ratio = raw;
  }
  return s;
}

}  // namespace diriop
