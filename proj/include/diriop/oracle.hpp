#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>

#include "diriop/kernel.hpp"

namespace diriop {

/// Truncated power series c_0 + c_1 z + ... + c_N z^N standing in for a
/// Dirichlet-space function. This is the independent model the operator-level
/// claims are checked against: inner products and norms are computed from the
/// coefficients alone, never through the closed kernel forms.
template <typename Scalar = double>
class TaylorSeries {
 public:
  using Complex = std::complex<Scalar>;
  using CoeffVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  explicit TaylorSeries(CoeffVector coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) coeffs_.setZero(1);
  }

  static TaylorSeries constant(Complex c0, int order = 0) {
    CoeffVector v = CoeffVector::Zero(order + 1);
    v(0) = c0;
    return TaylorSeries(std::move(v));
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  Complex coeff(int n) const { return n <= order() ? coeffs_(n) : Complex(0); }
  const CoeffVector& coefficients() const { return coeffs_; }

  Complex evaluate(Complex z) const {
    Complex acc(0);
    for (Eigen::Index n = coeffs_.size() - 1; n >= 0; --n) acc = acc * z + coeffs_(n);
    return acc;
  }

 private:
  CoeffVector coeffs_;
};

using TaylorSeriesd = TaylorSeries<double>;

/// <f, g> = c_0(f) conj(c_0(g)) + sum_{n>=1} n c_n(f) conj(c_n(g)).
/// Shorter series are implicitly zero-padded.
template <typename Scalar>
std::complex<Scalar> dirichlet_inner(const TaylorSeries<Scalar>& f, const TaylorSeries<Scalar>& g) {
  using Complex = std::complex<Scalar>;
  const Eigen::Index n = std::min(f.coefficients().size(), g.coefficients().size());
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights(n);
  weights(0) = Scalar(1);
  for (Eigen::Index k = 1; k < n; ++k) weights(k) = Scalar(k);
  Complex acc =
      (f.coefficients().head(n).array() * g.coefficients().head(n).array().conjugate() *
       weights.array().template cast<Complex>())
          .sum();
  return acc;
}

/// Coefficients of K_w: c_0 = 1, c_n = conj(w)^n / n.
template <typename Scalar>
TaylorSeries<Scalar> kernel_series(const KernelPoint<Scalar>& w, int order) {
  using Complex = std::complex<Scalar>;
  typename TaylorSeries<Scalar>::CoeffVector v(order + 1);
  v(0) = Complex(1);
  Complex pw(1);
  const Complex wc = std::conj(w.value());
  for (int n = 1; n <= order; ++n) {
    pw *= wc;
    v(n) = pw / Scalar(n);
  }
  return TaylorSeries<Scalar>(std::move(v));
}

/// Coefficient extraction by uniform sampling of f on the circle |z| = rho:
/// c_n = (1/M) sum_k f(rho e^{2 pi i k/M}) e^{-2 pi i k n/M} / rho^n.
/// Requires order <= samples/2; samples defaults to 4 * order.
template <typename Scalar, typename F>
TaylorSeries<Scalar> series_from_samples(F&& f, Scalar rho, int order, int samples = 0) {
  using Complex = std::complex<Scalar>;
  if (!(rho > Scalar(0)) || !(rho < Scalar(1)))
    throw DomainError("series_from_samples: rho must lie in (0, 1)");
  if (order < 0) throw DomainError("series_from_samples: order must be >= 0");
  if (samples <= 0) samples = std::max(4 * order, 8);
  if (order > samples / 2)
    throw DomainError("series_from_samples: need samples >= 2 * order");

  constexpr Scalar two_pi = Scalar(6.283185307179586476925287L);
  Eigen::Matrix<Complex, Eigen::Dynamic, 1> values(samples);
  for (int k = 0; k < samples; ++k)
    values(k) = f(std::polar(rho, two_pi * Scalar(k) / Scalar(samples)));

  typename TaylorSeries<Scalar>::CoeffVector coeffs(order + 1);
  Scalar rho_n(1);
  for (int n = 0; n <= order; ++n) {
    Complex acc(0);
    for (int k = 0; k < samples; ++k) {
      // e^{-2 pi i k n / M}, exponent reduced mod M to keep the angle small
      long kn = static_cast<long>(k) * n % samples;
      acc += values(k) * std::polar(Scalar(1), -two_pi * Scalar(kn) / Scalar(samples));
    }
    coeffs(n) = acc / (Scalar(samples) * rho_n);
    rho_n *= rho;
  }
  return TaylorSeries<Scalar>(std::move(coeffs));
}

template <typename Scalar = double>
struct NormEstimate {
  Scalar norm_sq;
  bool tail_flag;  // set when the truncation could not resolve the spectrum
};

/// Dirichlet norm of an evaluable function via coefficient extraction.
///
/// Recovered coefficients whose on-circle magnitude |c_n| rho^n sits below the
/// sampling noise floor carry no information and are dropped; otherwise the
/// 1/rho^n rescaling would amplify rounding noise without bound at high
/// orders. The estimate refuses (tail_flag) rather than silently
/// under-resolving, in either of two situations: the kept coefficients in the
/// top decade of orders still hold more than 1e-6 of the total energy, or the
/// spectrum runs into the noise floor while a single unresolved coefficient
/// could still contribute more than that share. The second test assumes the
/// coefficient sequence decays past the point where it becomes unresolvable,
/// which holds for everything this library feeds in.
template <typename Scalar, typename F>
NormEstimate<Scalar> dirichlet_norm_estimate(F&& f, Scalar rho, int order, int samples = 0) {
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  if (samples <= 0) samples = std::max(4 * order, 8);
  Scalar sample_scale(0);
  {
    constexpr Scalar two_pi = Scalar(6.283185307179586476925287L);
    for (int k = 0; k < 16; ++k)
      sample_scale = std::max(sample_scale,
                              std::abs(f(std::polar(rho, two_pi * Scalar(k) / Scalar(16)))));
  }
  const Scalar floor = 32 * eps * std::max(Scalar(1), sample_scale);

  TaylorSeries<Scalar> s = series_from_samples(std::forward<F>(f), rho, order, samples);

  Scalar total(0), resolved_tail(0);
  int last_kept = -1;
  const int tail_start = static_cast<int>(Scalar(0.9) * order) + 1;
  Scalar rho_n(1);
  for (int n = 0; n <= s.order(); ++n) {
    if (std::abs(s.coeff(n)) * rho_n > floor) {
      Scalar e = std::max<Scalar>(n, 1) * std::norm(s.coeff(n));
      if (n == 0) e = std::norm(s.coeff(0));
      total += e;
      if (n >= tail_start) resolved_tail += e;
      last_kept = n;
    }
    rho_n *= rho;
  }

  // A spectrum that never rose above the floor is zero within the oracle's
  // resolution; report it as such rather than refusing.
  bool flag = false;
  if (total > Scalar(0)) {
    const Scalar share = Scalar(1e-6) * total;
    if (resolved_tail > share) flag = true;
    if (last_kept < s.order()) {
      // Worst-case energy of the first coefficient past the resolved spectrum.
      int nc = last_kept + 1;
      Scalar bound = std::max<Scalar>(nc, 1) * std::pow(floor / std::pow(rho, Scalar(nc)), 2);
      if (bound > share) flag = true;
    }
  }
  return {total, flag};
}

}  // namespace diriop
