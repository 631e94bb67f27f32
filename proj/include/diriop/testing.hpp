#pragma once

#include <cstdint>
#include <random>

#include "diriop/mobius.hpp"

namespace diriop::testing {

/// Deterministic random source for property runs. Doubles are built from the
/// raw 64-bit stream so runs are reproducible independent of the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::complex<double> on_circle() { return std::polar(1.0, uniform(0.0, 6.283185307179586)); }

  /// Area-uniform point with |z| <= rmax.
  std::complex<double> in_disk(double rmax = 1.0) {
    return std::polar(rmax * std::sqrt(uniform()), uniform(0.0, 6.283185307179586));
  }

 private:
  std::mt19937_64 eng_;
};

/// Random disk automorphism with |a| <= 0.9 (keeps tolerances comfortable).
inline MobiusMapd random_automorphism(Rng& rng) {
  return AutomorphismFormd(rng.in_disk(0.9), rng.uniform(-3.141592653589793, 3.141592653589793))
      .to_mobius();
}

/// Random automorphism of a requested class, built with a macroscopic margin
/// from the parabolic boundary (or exactly on it, for parabolic symbols).
inline MobiusMapd random_automorphism(Rng& rng, MapClass cls) {
  constexpr double pi = 3.141592653589793;
  switch (cls) {
    case MapClass::Identity:
      return MobiusMapd::identity();
    case MapClass::Parabolic: {
      // Fixed point zeta0, angle theta kept away from 0 and +-pi so that
      // |a| = cos(theta/2) stays in (0.2, 0.99).
      std::complex<double> zeta0 = rng.on_circle();
      double theta = rng.uniform(0.3, 2.7) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      std::complex<double> a =
          (1.0 + std::polar(1.0, -theta)) * zeta0 / 2.0;
      return AutomorphismFormd(a, theta).to_mobius();
    }
    case MapClass::Elliptic:
    case MapClass::Hyperbolic: {
      for (;;) {
        double theta = rng.uniform(-pi, pi);
        std::complex<double> a = rng.in_disk(0.9);
        double gap = std::abs(a) - std::cos(theta / 2);
        if (cls == MapClass::Elliptic && gap < -1e-3) return AutomorphismFormd(a, theta).to_mobius();
        if (cls == MapClass::Hyperbolic && gap > 1e-3) return AutomorphismFormd(a, theta).to_mobius();
      }
    }
  }
  return MobiusMapd::identity();
}

/// Elliptic automorphism fixing the interior point p: conjugate of a rotation
/// by the involution (p - z)/(1 - conj(p) z).
inline MobiusMapd elliptic_about(std::complex<double> p, double theta) {
  MobiusMapd swap_p(std::complex<double>(-1), p, -std::conj(p), std::complex<double>(1));
  return compose(compose(swap_p, MobiusMapd::rotation(theta)), swap_p);
}

/// Parabolic automorphism with boundary fixed point zeta0.
inline MobiusMapd parabolic_fixing(std::complex<double> zeta0, double theta) {
  std::complex<double> a = (1.0 + std::polar(1.0, -theta)) * zeta0 / 2.0;
  return AutomorphismFormd(a, theta).to_mobius();
}

/// Random linear-fractional self-map: every such map factors as an affine
/// contraction of an automorphism, z -> c0 + r0 * A(z) with |c0| + r0 <= 1.
/// `strict` keeps the image circle away from the boundary (sup norm < 1).
inline MobiusMapd random_self_map(Rng& rng, bool strict = false) {
  if (!strict && rng.uniform() < 0.4) return random_automorphism(rng);
  std::complex<double> c0 = rng.in_disk(0.6);
  double room = 1.0 - std::abs(c0) - (strict ? 0.1 : 0.02);
  double r0 = rng.uniform(0.05, std::max(0.06, room));
  MobiusMapd a = random_automorphism(rng);
  MobiusMapd affine(std::complex<double>(r0), c0, std::complex<double>(0),
                    std::complex<double>(1));
  return compose(affine, a);
}

}  // namespace diriop::testing
