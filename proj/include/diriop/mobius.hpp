#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <type_traits>
#include <vector>

#include "diriop/detail/compensated.hpp"
#include "diriop/errors.hpp"
#include "diriop/tolerances.hpp"

namespace diriop {

template <typename Scalar>
struct RadialPoint;

/// A linear-fractional map z -> (az + b)/(cz + d) of the complex plane,
/// stored as a determinant-normalized 2x2 coefficient matrix.
///
/// Construction scales the coefficients so that ad - bc = 1, choosing the
/// square root of the determinant with argument in (-pi/2, pi/2] (a tie at
/// -pi/2 is broken toward +pi/2). Proportional coefficient tuples therefore
/// collapse to the same representative up to a global sign, and map equality
/// reduces to coefficient comparison against both signs.
template <typename Scalar = double>
class MobiusMap {
  static_assert(std::is_floating_point_v<Scalar>);

 public:
  using Complex = std::complex<Scalar>;
  using CoeffMatrix = Eigen::Matrix<Complex, 2, 2>;

  MobiusMap() : coeff_(CoeffMatrix::Identity()) {}

  MobiusMap(Complex a, Complex b, Complex c, Complex d) {
    CoeffMatrix m;
    m << a, b, c, d;
    coeff_ = canonicalize(m);
  }

  explicit MobiusMap(const CoeffMatrix& m) : coeff_(canonicalize(m)) {}

  static MobiusMap identity() { return MobiusMap(); }

  /// z -> e^{i theta} z.
  static MobiusMap rotation(Scalar theta) {
    return MobiusMap(std::polar(Scalar(1), theta), Complex(0), Complex(0), Complex(1));
  }

  /// z -> (z + t)/(1 + tz) for real t in (-1, 1); fixes -1 and +1 when t != 0.
  static MobiusMap hyperbolic_shift(Scalar t) {
    if (!(std::abs(t) < Scalar(1))) throw DomainError("hyperbolic_shift: |t| must be < 1");
    return MobiusMap(Complex(1), Complex(t), Complex(t), Complex(1));
  }

  /// Trusted constructor for coefficients already in canonical form
  /// (|det - 1| small). Used where an involution must return the original
  /// coefficients bit for bit.
  static MobiusMap from_canonical(Complex a, Complex b, Complex c, Complex d) {
    Complex det = a * d - b * c;
    if (std::abs(det - Complex(1)) > Scalar(1e-6))
      throw DomainError("from_canonical: coefficients are not determinant-normalized");
    MobiusMap m(no_normalize_tag{});
    m.coeff_ << a, b, c, d;
    return m;
  }

  Complex a() const { return coeff_(0, 0); }
  Complex b() const { return coeff_(0, 1); }
  Complex c() const { return coeff_(1, 0); }
  Complex d() const { return coeff_(1, 1); }
  const CoeffMatrix& coefficients() const { return coeff_; }

  Complex operator()(Complex z) const {
    Complex den = c() * z + d();
    if (std::abs(den) < tol::pole)
      throw DomainError("MobiusMap: z is at (or near) the pole of the map");
    return (a() * z + b()) / den;
  }

  /// Evaluation at w = (1 - delta) zeta with the subtraction delta * (a zeta)
  /// kept explicit; avoids forming the rounded w.
  Complex operator()(const RadialPoint<Scalar>& p) const;

  Complex det() const { return a() * d() - b() * c(); }

  /// Point sent to zero, -b/a.
  Complex zero() const {
    if (std::abs(a()) < tol::degenerate) throw DomainError("zero: map sends infinity to 0");
    return -b() / a();
  }

  /// Pole -d/c; nullopt for affine maps (pole at infinity).
  std::optional<Complex> pole() const {
    if (std::abs(c()) < tol::degenerate) return std::nullopt;
    return -d() / c();
  }

  bool coefficients_equal_bitwise(const MobiusMap& o) const {
    return (coeff_.array() == o.coeff_.array()).all() ||
           (coeff_.array() == (-o.coeff_).array()).all();
  }

 private:
  struct no_normalize_tag {};
  explicit MobiusMap(no_normalize_tag) {}

  static CoeffMatrix canonicalize(CoeffMatrix m) {
    Scalar scale = m.cwiseAbs().maxCoeff();
    Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (!(std::abs(det) > tol::degenerate * scale * scale) || !(scale > Scalar(0)))
      throw DomainError("MobiusMap: degenerate coefficients (ad - bc ~ 0)");
    Complex s = std::sqrt(det);
    if (s.real() < Scalar(0) || (s.real() == Scalar(0) && s.imag() < Scalar(0))) s = -s;
    m /= s;
    return m;
  }

  CoeffMatrix coeff_;
};

using MobiusMapd = MobiusMap<double>;

/// Boundary-approach point w = (1 - delta) * zeta with |zeta| = 1, carried in
/// decomposed form so that 1 - |w| stays exact at depths where the rounded
/// complex w could not represent it.
template <typename Scalar = double>
struct RadialPoint {
  Scalar delta;
  std::complex<Scalar> zeta;

  RadialPoint(Scalar d, std::complex<Scalar> z) : delta(d), zeta(z) {
    if (!(delta > Scalar(0)) || !(delta < Scalar(1)))
      throw DomainError("RadialPoint: delta must lie in (0, 1)");
    if (std::abs(std::abs(z) - Scalar(1)) > Scalar(1e-12))
      throw DomainError("RadialPoint: zeta must be unimodular");
  }

  std::complex<Scalar> value() const { return (Scalar(1) - delta) * zeta; }
};

using RadialPointd = RadialPoint<double>;

template <typename Scalar>
std::complex<Scalar> MobiusMap<Scalar>::operator()(const RadialPoint<Scalar>& p) const {
  Complex num = (a() * p.zeta + b()) - p.delta * (a() * p.zeta);
  Complex den = (c() * p.zeta + d()) - p.delta * (c() * p.zeta);
  if (std::abs(den) < tol::pole)
    throw DomainError("MobiusMap: point is at (or near) the pole of the map");
  return num / den;
}

enum class MapClass { Identity, Elliptic, Parabolic, Hyperbolic };

inline const char* to_string(MapClass c) {
  switch (c) {
    case MapClass::Identity: return "identity";
    case MapClass::Elliptic: return "elliptic";
    case MapClass::Parabolic: return "parabolic";
    case MapClass::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

/// Canonical form e^{i theta} (a - z)/(1 - conj(a) z) of a disk automorphism,
/// with |a| < 1 and theta in (-pi, pi].
template <typename Scalar = double>
struct AutomorphismForm {
  std::complex<Scalar> a;
  Scalar theta;

  AutomorphismForm(std::complex<Scalar> a_, Scalar theta_) : a(a_), theta(theta_) {
    if (!(std::abs(a) < Scalar(1))) throw DomainError("AutomorphismForm: |a| must be < 1");
    constexpr Scalar pi = Scalar(3.141592653589793238462643L);
    if (theta <= -pi || theta > pi) {
      theta = std::remainder(theta, 2 * pi);
      if (theta <= -pi) theta += 2 * pi;
    }
  }

  MobiusMap<Scalar> to_mobius() const {
    std::complex<Scalar> phase = std::polar(Scalar(1), theta);
    return MobiusMap<Scalar>(-phase, phase * a, -std::conj(a), std::complex<Scalar>(1));
  }
};

using AutomorphismFormd = AutomorphismForm<double>;

enum class CircleLocation { inside, on_circle, outside };

inline const char* to_string(CircleLocation l) {
  switch (l) {
    case CircleLocation::inside: return "inside";
    case CircleLocation::on_circle: return "on_circle";
    case CircleLocation::outside: return "outside";
  }
  return "?";
}

template <typename Scalar = double>
struct FixedPoint {
  std::complex<Scalar> z;
  CircleLocation location;
  bool double_root = false;
};

/// Finite fixed points (0 to 2) plus a point-at-infinity annotation.
template <typename Scalar = double>
struct FixedPointSet {
  std::vector<FixedPoint<Scalar>> points;
  bool at_infinity = false;
};

using FixedPointSetd = FixedPointSet<double>;

template <typename Scalar>
struct Circle {
  std::complex<Scalar> center;
  Scalar radius;
};

// ---------------------------------------------------------------------------
// Algebra

template <typename Scalar>
MobiusMap<Scalar> compose(const MobiusMap<Scalar>& m1, const MobiusMap<Scalar>& m2) {
  typename MobiusMap<Scalar>::CoeffMatrix prod = m1.coefficients() * m2.coefficients();
  return MobiusMap<Scalar>(prod);
}

template <typename Scalar>
MobiusMap<Scalar> inverse(const MobiusMap<Scalar>& m) {
  // Adjugate; already the exact inverse for a determinant-1 matrix.
  return MobiusMap<Scalar>(m.d(), -m.b(), -m.c(), m.a());
}

/// Image of the unit circle. Requires |c| != |d| (otherwise the image is a line).
template <typename Scalar>
Circle<Scalar> image_circle(const MobiusMap<Scalar>& m) {
  using std::abs;
  Scalar cd_gap = abs(abs(m.c()) - abs(m.d()));
  if (cd_gap < tol::line_image)
    throw DomainError("image_circle: |c| = |d|, the image of the unit circle is a line");
  Scalar D = std::norm(m.d()) - std::norm(m.c());
  std::complex<Scalar> center = (m.b() * std::conj(m.d()) - m.a() * std::conj(m.c())) / D;
  Scalar r_sq = std::norm(center) - (std::norm(m.b()) - std::norm(m.a())) / D;
  return {center, std::sqrt(std::max(Scalar(0), r_sq))};
}

/// sup_{|z| <= 1} |m(z)|; requires the pole of m to lie outside the closed disk.
template <typename Scalar>
Scalar sup_norm(const MobiusMap<Scalar>& m) {
  if (std::abs(m.d()) <= std::abs(m.c()))
    throw DomainError("sup_norm: pole lies in the closed unit disk");
  Circle<Scalar> ic = image_circle(m);
  return std::abs(ic.center) + ic.radius;
}

template <typename Scalar>
bool is_self_map(const MobiusMap<Scalar>& m) {
  if (std::abs(m.d()) <= std::abs(m.c())) return false;
  Scalar cd_gap = std::abs(std::abs(m.c()) - std::abs(m.d()));
  if (cd_gap < tol::line_image) return false;
  Circle<Scalar> ic = image_circle(m);
  return std::abs(ic.center) + ic.radius <= Scalar(1) + tol::sup_slack;
}

namespace detail {

// Decision tolerances are double-precision contract values; consistency
// guards widen with the scalar's epsilon so other instantiations stay usable.
template <typename Scalar>
Scalar scaled_tol(double base) {
  return std::max(Scalar(base), Scalar(100) * std::numeric_limits<Scalar>::epsilon());
}

}  // namespace detail

template <typename Scalar>
bool is_automorphism(const MobiusMap<Scalar>& m) {
  if (std::abs(m.d()) <= std::abs(m.c())) return false;
  Scalar cd_gap = std::abs(std::abs(m.c()) - std::abs(m.d()));
  if (cd_gap < tol::line_image) return false;
  Circle<Scalar> ic = image_circle(m);
  Scalar eps = detail::scaled_tol<Scalar>(tol::automorphism);
  return std::abs(ic.center) <= eps && std::abs(ic.radius - Scalar(1)) <= eps;
}

template <typename Scalar>
AutomorphismForm<Scalar> to_automorphism_form(const MobiusMap<Scalar>& m) {
  if (!is_automorphism(m))
    throw NotAutomorphism("to_automorphism_form: map is not a disk automorphism");
  using Complex = std::complex<Scalar>;
  Complex zr = m.zero();  // the 'a' of the canonical form
  if (!(std::abs(zr) < Scalar(1)))
    throw NotAutomorphism("to_automorphism_form: zero of the map is not inside the disk");
  // Prefactor from the derivative at 0: m'(0) = 1/d^2 in canonical form, and
  // the canonical automorphism has derivative e^{i theta}(|a|^2 - 1) at 0.
  Complex deriv0 = Complex(1) / (m.d() * m.d());
  Complex phase = deriv0 / (std::norm(zr) - Scalar(1));
  if (std::abs(std::abs(phase) - Scalar(1)) > Scalar(1e5) * std::numeric_limits<Scalar>::epsilon())
    throw NotAutomorphism("to_automorphism_form: prefactor is not unimodular");
  return AutomorphismForm<Scalar>(zr, std::arg(phase));
}

template <typename Scalar>
bool maps_equal(const MobiusMap<Scalar>& m1, const MobiusMap<Scalar>& m2,
                Scalar eps = Scalar(tol::map_eq)) {
  Scalar d_minus = (m1.coefficients() - m2.coefficients()).cwiseAbs().maxCoeff();
  Scalar d_plus = (m1.coefficients() + m2.coefficients()).cwiseAbs().maxCoeff();
  return std::min(d_minus, d_plus) < eps;
}

template <typename Scalar>
MapClass classify(const MobiusMap<Scalar>& m) {
  if (!is_automorphism(m)) throw NotAutomorphism("classify: map is not a disk automorphism");
  if (maps_equal(m, MobiusMap<Scalar>::identity())) return MapClass::Identity;
  AutomorphismForm<Scalar> f = to_automorphism_form(m);
  Scalar gap = std::abs(f.a) - std::cos(f.theta / 2);
  if (std::abs(gap) <= tol::classify) return MapClass::Parabolic;
  return gap < Scalar(0) ? MapClass::Elliptic : MapClass::Hyperbolic;
}

template <typename Scalar>
MobiusMap<Scalar> krein_adjoint(const MobiusMap<Scalar>& m) {
  // (a, b, c, d) -> (conj a, -conj c, -conj b, conj d). The determinant is the
  // conjugate of the input's, so the result is already canonical; skipping
  // renormalization makes the involution exact on coefficients.
  return MobiusMap<Scalar>::from_canonical(std::conj(m.a()), -std::conj(m.c()),
                                           -std::conj(m.b()), std::conj(m.d()));
}

namespace detail {

template <typename Scalar>
CircleLocation locate(std::complex<Scalar> z, Scalar eps = Scalar(tol::fixed_point)) {
  Scalar r = std::abs(z);
  if (std::abs(r - Scalar(1)) <= eps) return CircleLocation::on_circle;
  return r < Scalar(1) ? CircleLocation::inside : CircleLocation::outside;
}

}  // namespace detail

/// Fixed points of a non-identity map: roots of c z^2 + (d - a) z - b = 0.
///
/// For automorphisms the double-root branch is taken exactly when classify()
/// reports Parabolic, so multiplicity and the trichotomy agree. For other maps
/// a relative discriminant threshold decides. Simple roots get one Newton step.
template <typename Scalar>
FixedPointSet<Scalar> fixed_points(const MobiusMap<Scalar>& m) {
  using Complex = std::complex<Scalar>;
  if (maps_equal(m, MobiusMap<Scalar>::identity()))
    throw DomainError("fixed_points: identity map, every point is fixed");

  const Complex A = m.c();
  const Complex B = m.d() - m.a();
  const Complex C = -m.b();
  FixedPointSet<Scalar> out;

  if (std::abs(A) < tol::degenerate) {
    out.at_infinity = true;
    if (std::abs(B) >= tol::degenerate) {
      Complex z = -C / B;
      out.points.push_back({z, detail::locate(z), false});
    }
    // else: translation-like map, only fixed point is infinity (double)
    return out;
  }

  const Complex disc = B * B - Scalar(4) * A * C;
  bool double_root;
  if (is_automorphism(m)) {
    double_root = classify(m) == MapClass::Parabolic;
  } else {
    Scalar scale = std::max({std::norm(B), Scalar(4) * std::abs(A) * std::abs(C), Scalar(1e-30)});
    double_root = std::abs(disc) < Scalar(1e-12) * scale;
  }

  if (double_root) {
    Complex z = -B / (Scalar(2) * A);
    out.points.push_back({z, detail::locate(z), true});
    return out;
  }

  Complex sq = std::sqrt(disc);
  if (std::real(std::conj(B) * sq) < Scalar(0)) sq = -sq;  // avoid cancellation in B + sq
  Complex q = -(B + sq) / Scalar(2);
  Complex z1 = q / A;
  Complex z2 = C / q;
  for (Complex z : {z1, z2}) {
    Complex fz = (A * z + B) * z + C;
    Complex dfz = Scalar(2) * A * z + B;
    if (std::abs(dfz) > Scalar(1e-30)) z -= fz / dfz;  // one polish step
    out.points.push_back({z, detail::locate(z), false});
  }
  return out;
}

/// Set equality of fixed points (eps matching on the finite points, infinity
/// annotations must agree; multiplicity flags are ignored).
template <typename Scalar>
bool same_fixed_points(const FixedPointSet<Scalar>& s1, const FixedPointSet<Scalar>& s2,
                       Scalar eps = Scalar(tol::fixed_point)) {
  if (s1.at_infinity != s2.at_infinity) return false;
  if (s1.points.size() != s2.points.size()) return false;
  std::vector<bool> used(s2.points.size(), false);
  for (const auto& p : s1.points) {
    bool matched = false;
    for (std::size_t j = 0; j < s2.points.size(); ++j) {
      if (!used[j] && std::abs(p.z - s2.points[j].z) < eps) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Boundary-stable modulus margins

namespace detail {

/// Quadratic form Q_m(w) = |cw + d|^2 - |aw + b|^2 = alpha |w|^2 + 2 Re(beta w) + gamma,
/// assembled with error-free products. Q equals (1 - |m(w)|^2) |cw + d|^2, so it
/// carries the full cancellation of the boundary margin; evaluating it through
/// the expansion in delta = 1 - |w| keeps that margin accurate at depths where
/// the naive difference of O(1) terms would lose every significant digit.
template <typename Scalar>
class MarginForm {
 public:
  using Complex = std::complex<Scalar>;
  using DW = DoubleWord<Scalar>;

  explicit MarginForm(const MobiusMap<Scalar>& m) : map_(m) {
    const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
    alpha_ = diff_of_norms(c, a);
    gamma_ = diff_of_norms(d, b);
    // beta = c conj(d) - a conj(b)
    beta_re_.add_prod(c.real(), d.real());
    beta_re_.add_prod(c.imag(), d.imag());
    beta_re_.sub_prod(a.real(), b.real());
    beta_re_.sub_prod(a.imag(), b.imag());
    beta_im_.add_prod(c.imag(), d.real());
    beta_im_.sub_prod(c.real(), d.imag());
    beta_im_.sub_prod(a.imag(), b.real());
    beta_im_.add_prod(a.real(), b.imag());
  }

  const MobiusMap<Scalar>& map() const { return map_; }

  /// Q at w = (1 - delta) zeta via Q = E0 + delta E1 + delta^2 E2.
  Scalar q_radial(Scalar delta, Complex zeta) const {
    DW re_beta_zeta;  // Re(beta * zeta)
    add_scaled(re_beta_zeta, beta_re_, zeta.real());
    add_scaled(re_beta_zeta, beta_im_, -zeta.imag());

    DW e0 = alpha_;
    e0.add(gamma_);
    e0.add(re_beta_zeta);
    e0.add(re_beta_zeta);

    DW e1 = alpha_.negated();
    e1.add(re_beta_zeta.negated());
    Scalar e1v = Scalar(2) * e1.value();
    Scalar e2v = alpha_.value();

    DW q = e0;
    q.add_prod(delta, e1v);
    q.add_prod(delta * delta, e2v);
    return q.value();
  }

  /// Q at a plain point w strictly inside the disk.
  Scalar q_at(Complex w) const {
    DW s;  // |w|^2
    s.add_prod(w.real(), w.real());
    s.add_prod(w.imag(), w.imag());
    DW q;
    // alpha * s
    auto p = two_prod(alpha_.hi, s.hi);
    q.add(p.hi);
    q.lo += p.lo + alpha_.hi * s.lo + alpha_.lo * s.hi;
    DW re_beta_w;
    add_scaled(re_beta_w, beta_re_, w.real());
    add_scaled(re_beta_w, beta_im_, -w.imag());
    q.add(re_beta_w);
    q.add(re_beta_w);
    q.add(gamma_);
    return q.value();
  }

  Scalar denominator_sq_radial(Scalar delta, Complex zeta) const {
    Complex den = (map_.c() * zeta + map_.d()) - delta * (map_.c() * zeta);
    return std::norm(den);
  }

  Scalar denominator_sq_at(Complex w) const { return std::norm(map_.c() * w + map_.d()); }

 private:
  static DW diff_of_norms(Complex x, Complex y) {
    DW r;
    r.add_prod(x.real(), x.real());
    r.add_prod(x.imag(), x.imag());
    r.sub_prod(y.real(), y.real());
    r.sub_prod(y.imag(), y.imag());
    return r;
  }
  static void add_scaled(DW& acc, const DW& x, Scalar f) {
    auto p = two_prod(x.hi, f);
    acc.add(p.hi);
    acc.lo += p.lo + x.lo * f;
  }

  MobiusMap<Scalar> map_;
  DW alpha_, gamma_, beta_re_, beta_im_;
};

}  // namespace detail

/// 1 - |m(w)|^2 at w = (1 - delta) zeta, boundary-stable.
template <typename Scalar>
Scalar disk_margin(const MobiusMap<Scalar>& m, const RadialPoint<Scalar>& p) {
  detail::MarginForm<Scalar> form(m);
  Scalar q = form.q_radial(p.delta, p.zeta);
  return q / form.denominator_sq_radial(p.delta, p.zeta);
}

template <typename Scalar>
Scalar disk_margin(const MobiusMap<Scalar>& m, std::complex<Scalar> w) {
  detail::MarginForm<Scalar> form(m);
  return form.q_at(w) / form.denominator_sq_at(w);
}

}  // namespace diriop
