#include "diriop/selftest.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <functional>

#include "diriop/commutator.hpp"
#include "diriop/oracle.hpp"
#include "diriop/testing.hpp"

namespace diriop::selftest {
namespace {

using testing::Rng;
using Complex = std::complex<double>;

constexpr double pi = 3.141592653589793;

struct Ctx {
  const Config& cfg;
  Rng rng;
  PropertyResult& res;

  void check(bool ok) {
    ++res.checks;
    if (!ok) ++res.failures;
  }
  void check_close(double x, double y, double eps) { check(std::abs(x - y) <= eps); }
  void skip() { ++res.skipped; }
};

// Scan configuration used inside properties; smaller direction grid than the
// CLI default to keep the whole suite fast.
ScanConfig<double> property_scan_config() {
  ScanConfig<double> cfg;
  cfg.directions = 96;
  return cfg;
}

// Catalog of (phi, psi, direction) triples whose radial case is known.
struct CatalogEntry {
  MobiusMapd phi, psi;
  Complex zeta;
  CaseTag expected;
};

std::vector<CatalogEntry> case_catalog() {
  MobiusMapd id = MobiusMapd::identity();
  MobiusMapd minus_z = MobiusMapd::rotation(pi);
  MobiusMapd hyp = MobiusMapd::hyperbolic_shift(0.5);
  MobiusMapd half(Complex(1), Complex(1), Complex(0), Complex(2));
  MobiusMapd rot_q = MobiusMapd::rotation(pi / 2);
  MobiusMapd rot_mq = MobiusMapd::rotation(-pi / 2);
  MobiusMapd par = testing::parabolic_fixing(Complex(1), pi / 2);
  return {
      {minus_z, id, Complex(1), CaseTag::case_iii_c},
      {rot_q, rot_mq, Complex(1), CaseTag::case_iii_c},
      {hyp, par, Complex(-1), CaseTag::case_iii_c},
      {hyp, half, Complex(-1), CaseTag::case_i},
      {half, hyp, Complex(-1), CaseTag::case_ii},
  };
}

void prop_krein_involution(Ctx& c) {
  for (int i = 0; i < 200; ++i) {
    MobiusMapd m = testing::random_self_map(c.rng);
    MobiusMapd back = krein_adjoint(krein_adjoint(m));
    c.check(back.coefficients_equal_bitwise(m));
    c.check(maps_equal(back, m));
  }
}

void prop_fixed_point_correspondence(Ctx& c) {
  for (int i = 0; i < 100; ++i) {
    MobiusMapd phi = testing::random_automorphism(c.rng);
    if (maps_equal(phi, MobiusMapd::identity())) continue;
    FixedPointSetd fp = fixed_points(phi);
    FixedPointSetd fp_star = fixed_points(krein_adjoint(phi));
    for (const auto& p : fp.points) {
      if (std::abs(p.z) < 1e-6) continue;  // only w != 0 has a finite mirror
      Complex mirror = 1.0 / std::conj(p.z);
      bool found = false;
      for (const auto& q : fp_star.points) found = found || std::abs(q.z - mirror) < tol::fixed_point;
      c.check(found);
    }
  }
}

void prop_elliptic_closure(Ctx& c) {
  for (int i = 0; i < 100; ++i) {
    MobiusMapd phi = testing::random_automorphism(c.rng, MapClass::Elliptic);
    c.check(classify(krein_adjoint(phi)) == MapClass::Elliptic);
  }
}

void prop_compose_apply_coherence(Ctx& c) {
  for (int i = 0; i < 50; ++i) {
    MobiusMapd m1 = testing::random_self_map(c.rng);
    MobiusMapd m2 = testing::random_self_map(c.rng);
    MobiusMapd m12 = compose(m1, m2);
    for (int j = 0; j < 100; ++j) {
      Complex z = c.rng.in_disk(0.9);
      Complex direct = m1(m2(z));
      Complex composed = m12(z);
      c.check(std::abs(direct - composed) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
  }
}

void prop_class_fixed_point_shape(Ctx& c) {
  auto points_on_circle = [](const FixedPointSetd& s) {
    for (const auto& p : s.points)
      if (p.location != CircleLocation::on_circle) return false;
    return true;
  };
  for (int i = 0; i < 50; ++i) {
    FixedPointSetd par = fixed_points(testing::random_automorphism(c.rng, MapClass::Parabolic));
    c.check(par.points.size() == 1 && !par.at_infinity && points_on_circle(par) &&
            par.points[0].double_root);

    FixedPointSetd hyp = fixed_points(testing::random_automorphism(c.rng, MapClass::Hyperbolic));
    c.check(hyp.points.size() == 2 && !hyp.at_infinity && points_on_circle(hyp));

    FixedPointSetd ell = fixed_points(testing::random_automorphism(c.rng, MapClass::Elliptic));
    int inside = 0, outside = 0;
    for (const auto& p : ell.points) {
      inside += p.location == CircleLocation::inside;
      outside += p.location == CircleLocation::outside;
    }
    c.check(inside == 1 && (outside == static_cast<int>(ell.points.size()) - 1) &&
            (ell.at_infinity || ell.points.size() == 2));
  }
}

void prop_sup_norm_boundary_sampling(Ctx& c) {
  for (int i = 0; i < 50; ++i) {
    MobiusMapd m = testing::random_self_map(c.rng);
    double sup = sup_norm(m);
    // Independent estimate: dense circle sampling plus golden-section
    // refinement of the best arc.
    const int n = 4096;
    double best = -1.0;
    int best_j = 0;
    for (int j = 0; j < n; ++j) {
      double v = std::abs(m(std::polar(1.0, 2 * pi * j / n)));
      if (v > best) {
        best = v;
        best_j = j;
      }
    }
    double lo = 2 * pi * (best_j - 1) / n, hi = 2 * pi * (best_j + 1) / n;
    const double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = std::abs(m(std::polar(1.0, x1)));
    double f2 = std::abs(m(std::polar(1.0, x2)));
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = std::abs(m(std::polar(1.0, x2)));
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = std::abs(m(std::polar(1.0, x1)));
      }
    }
    c.check_close(sup, std::max(f1, f2), 1e-9);
  }
  for (int i = 0; i < 20; ++i)
    c.check_close(sup_norm(testing::random_automorphism(c.rng)), 1.0, 1e-12);
}

void prop_equality_canary(Ctx& c) {
  // maps_equal must reject genuinely different maps at the configured eps;
  // a corrupted tolerance turns these into false positives.
  c.check(!maps_equal(MobiusMapd::rotation(pi), MobiusMapd::identity(), c.cfg.map_eq_eps));
  c.check(!maps_equal(MobiusMapd::hyperbolic_shift(0.5), MobiusMapd::identity(), c.cfg.map_eq_eps));
  c.check(maps_equal(MobiusMapd(Complex(2), Complex(0), Complex(0), Complex(2)),
                     MobiusMapd::identity(), c.cfg.map_eq_eps));
}

void prop_kernel_norm_monotone(Ctx& c) {
  double prev = kernel_norm_sq(KernelPointd(Complex(0)));
  c.check_close(prev, 1.0, 1e-15);
  for (int i = 1; i <= 999; ++i) {
    double cur = kernel_norm_sq(KernelPointd(Complex(i / 1000.0)));
    c.check(cur > prev);
    prev = cur;
  }
}

void prop_cauchy_schwarz(Ctx& c) {
  for (int i = 0; i < 1000; ++i) {
    KernelPointd w1(c.rng.in_disk(0.97)), w2(c.rng.in_disk(0.97));
    double lhs = std::norm(kernel_inner(w1, w2));
    double rhs = kernel_norm_sq(w1) * kernel_norm_sq(w2);
    c.check(lhs <= rhs + 1e-12);
  }
}

void prop_ratio_expansion(Ctx& c) {
  for (int i = 0; i < 1000; ++i) {
    MobiusMapd phi = testing::random_self_map(c.rng);
    MobiusMapd psi = testing::random_self_map(c.rng);
    KernelPointd w(c.rng.in_disk(0.9));
    RatioSampled s = diff_ratio(phi, psi, w);
    // Independent route through the kernel calculus.
    KernelPointd pw(phi(w.value())), qw(psi(w.value()));
    double num = kernel_norm_sq(pw) + kernel_norm_sq(qw) - 2 * kernel_inner(pw, qw).real();
    double expect = std::max(0.0, num / kernel_norm_sq(w));
    c.check(std::abs(s.ratio - expect) <= 1e-12 * std::max(1.0, expect));
  }
}

void prop_log_branch(Ctx& c) {
  for (int i = 0; i < 2000; ++i) {
    Complex w = c.rng.in_disk(0.999999), z = c.rng.in_disk(0.999999);
    c.check((1.0 - std::conj(w) * z).real() > 0.0);
  }
}

void prop_oracle_reproducing(Ctx& c) {
  int order = std::min(300, c.cfg.order);
  for (int i = 0; i < 100; ++i) {
    int deg = 1 + static_cast<int>(c.rng.uniform(0.0, 10.0));
    if (order < deg + 2) {
      c.skip();
      continue;
    }
    TaylorSeriesd::CoeffVector coeffs(deg + 1);
    for (int n = 0; n <= deg; ++n) coeffs(n) = Complex(c.rng.uniform(-1, 1), c.rng.uniform(-1, 1));
    TaylorSeriesd f{std::move(coeffs)};
    KernelPointd w(c.rng.in_disk(0.7));
    Complex lhs = dirichlet_inner(f, kernel_series(w, order));
    c.check(std::abs(lhs - f.evaluate(w.value())) < 1e-10);
  }
}

void prop_oracle_closed_form(Ctx& c) {
  int order = std::min(300, c.cfg.order);
  for (int i = 0; i < 100; ++i) {
    KernelPointd w1(c.rng.in_disk(0.7)), w2(c.rng.in_disk(0.7));
    double prod = w1.abs() * w2.abs();
    double tail = std::pow(prod, order) / (order * (1 - prod));
    if (tail > 1e-10) {
      c.skip();
      continue;
    }
    Complex series = dirichlet_inner(kernel_series(w1, order), kernel_series(w2, order));
    c.check(std::abs(series - kernel_inner(w1, w2)) < 1e-9);
  }
}

void prop_oracle_coefficients(Ctx& c) {
  int order = std::min(16, c.cfg.order);
  for (int i = 0; i < 50; ++i) {
    int deg = static_cast<int>(c.rng.uniform(0.0, 12.0));
    if (order < deg) {
      c.skip();
      continue;
    }
    TaylorSeriesd::CoeffVector coeffs(deg + 1);
    for (int n = 0; n <= deg; ++n) coeffs(n) = Complex(c.rng.uniform(-1, 1), c.rng.uniform(-1, 1));
    TaylorSeriesd f{coeffs};
    // The 1/rho^n rescaling amplifies sampling noise; keep rho large enough
    // that the absolute 1e-12 exactness claim is conditioned.
    double rho = c.rng.uniform(0.6, 0.85);
    TaylorSeriesd rec =
        series_from_samples([&](Complex z) { return f.evaluate(z); }, rho, order, 4 * order);
    for (int n = 0; n <= order; ++n)
      c.check(std::abs(rec.coeff(n) - f.coeff(n)) < 1e-12);
  }
}

void prop_schwarz_pick(Ctx& c) {
  for (int i = 0; i < 50; ++i) {
    MobiusMapd phi = testing::random_self_map(c.rng);
    for (int j = 0; j < 1000; ++j) {
      auto b = schwarz_pick_bound(phi, c.rng.in_disk(0.999));
      c.check(b.lhs >= b.rhs - 1e-12);
    }
  }
}

void prop_factor_identity(Ctx& c) {
  for (int i = 0; i < 30; ++i) {
    MobiusMapd phi = testing::random_automorphism(c.rng);
    detail::MarginForm<double> form(phi);
    for (int j = 0; j < 200; ++j) {
      // Mix of interior points and a deliberate near-boundary ring.
      bool ring = j % 4 == 0;
      double delta = ring ? 1e-4 : 1.0 - std::abs(c.rng.in_disk(1.0 - 1e-3));
      Complex zeta = c.rng.on_circle();
      double q = form.q_radial(delta, zeta);
      double den = form.denominator_sq_radial(delta, zeta);
      double direct = delta * (2 - delta) * den / q;
      auto fb = automorphism_factor_bound(phi, (1 - delta) * zeta);
      c.check(std::abs(fb.value - direct) <= 1e-10 * std::max(1.0, std::max(fb.value, direct)));
      c.check(fb.value >= fb.lower - 1e-12);
    }
    // The bound also holds on the circle itself.
    for (int j = 0; j < 20; ++j) {
      auto fb = automorphism_factor_bound(phi, c.rng.on_circle());
      c.check(fb.value >= fb.lower - 1e-12);
    }
  }
}

void prop_case_ratio_consistency(Ctx& c) {
  for (const auto& entry : case_catalog()) {
    RadiusLadder ladder{4, 40};
    auto res = ratio_limit_check(entry.phi, entry.psi, entry.zeta, ladder);
    c.check(res.report.tag == entry.expected);
    double deepest = res.estimates.back();
    double limit = 0;
    switch (res.report.predicted) {
      case RatioLimit::one:
        c.check(deepest >= 0.85 && deepest <= 1.1);
        limit = 1.0;
        break;
      case RatioLimit::two:
        c.check(deepest >= 1.9 && deepest <= 2.0);
        limit = 2.0;
        break;
      case RatioLimit::at_least_one:
        c.check(deepest >= 0.9);
        limit = deepest;
        break;
      default:
        c.check(false);
    }
    // Monotone trend toward the predicted limit over the 8 deepest rungs.
    std::size_t n = res.estimates.size();
    for (std::size_t k = n - 8; k + 1 < n; ++k)
      c.check(std::abs(res.estimates[k + 1] - limit) <= std::abs(res.estimates[k] - limit) + 1e-9);
  }
}

void prop_remainder_bounded(Ctx& c) {
  for (const auto& entry : case_catalog()) {
    RadiusLadder ladder{4, 40};
    CaseReportd rep = classify_case(entry.phi, entry.psi, entry.zeta, ladder);
    c.check(rep.tag != CaseTag::not_applicable);
    if (rep.tag == CaseTag::not_applicable) continue;
    c.check(std::isfinite(rep.remainder_max));
    std::size_t n = rep.remainder_trace.size();
    double early = 0, late = 0;
    for (std::size_t k = n - 8; k < n - 4; ++k) early = std::max(early, std::abs(rep.remainder_trace[k]));
    for (std::size_t k = n - 4; k < n; ++k) late = std::max(late, std::abs(rep.remainder_trace[k]));
    c.check(late <= early + 0.01);
  }
}

void prop_distinct_automorphisms_fail(Ctx& c) {
  auto cfg = property_scan_config();
  for (int i = 0; i < 20; ++i) {
    MobiusMapd phi = testing::random_automorphism(c.rng);
    MobiusMapd psi = testing::random_automorphism(c.rng);
    if (maps_equal(phi, psi)) continue;
    auto rep = boundary_scan(phi, psi, cfg);
    c.check(rep.verdict == ScanVerdict::condition_fails);
    c.check(rep.schwarz_pick_violations == 0 && rep.factor_identity_violations == 0 &&
            rep.factor_lower_violations == 0);
  }
  for (int i = 0; i < 5; ++i) {
    MobiusMapd phi = testing::random_automorphism(c.rng);
    auto rep = boundary_scan(phi, phi, cfg);
    c.check(rep.verdict == ScanVerdict::condition_holds_numerically);
    c.check(rep.max_q_deepest == 0.0);
  }
}

void prop_q_symmetry(Ctx& c) {
  for (int i = 0; i < 200; ++i) {
    MobiusMapd phi = testing::random_self_map(c.rng);
    MobiusMapd psi = testing::random_self_map(c.rng);
    double delta = std::pow(2.0, -c.rng.uniform(4, 40));
    Complex zeta = c.rng.on_circle();
    auto s1 = necessary_condition_value(phi, psi, delta, zeta);
    auto s2 = necessary_condition_value(psi, phi, delta, zeta);
    c.check(s1.q_value == s2.q_value);
  }
}

void prop_adjoint_identity(Ctx& c) {
  for (int i = 0; i < 20; ++i) {
    MobiusMapd psi = testing::random_self_map(c.rng);
    for (int j = 0; j < 20; ++j) {
      KernelPointd w0(c.rng.in_disk(0.85));
      auto f = [&](Complex z) { return kernel_eval(w0, z); };
      for (int k = 0; k < 20; ++k) {
        Complex v = c.rng.in_disk(0.85);
        Complex lhs = adjoint_apply(psi, f, v);
        Complex rhs = kernel_eval(KernelPointd(psi(w0.value())), v);
        c.check(std::abs(lhs - rhs) < 1e-10);
      }
    }
  }
}

void prop_rank_two_correction(Ctx& c) {
  for (int i = 0; i < 5; ++i) {
    MobiusMapd psi = testing::random_self_map(c.rng);
    MobiusMapd krein = krein_adjoint(psi);
    const int n_w = 8, n_f = 10;
    Eigen::MatrixXcd corr(n_w, n_f);
    std::vector<Complex> ws(n_w);
    for (int a = 0; a < n_w; ++a) ws[a] = c.rng.in_disk(0.8);
    for (int b = 0; b < n_f; ++b) {
      int deg = 1 + b % 5;
      TaylorSeriesd::CoeffVector coeffs(deg + 1);
      for (int n = 0; n <= deg; ++n)
        coeffs(n) = Complex(c.rng.uniform(-1, 1), c.rng.uniform(-1, 1));
      TaylorSeriesd f{coeffs};
      auto fe = [&](Complex z) { return f.evaluate(z); };
      for (int a = 0; a < n_w; ++a)
        corr(a, b) = adjoint_apply(psi, fe, ws[a]) - fe(krein(ws[a]));
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(corr);
    const auto& sv = svd.singularValues();
    c.check(sv.size() < 3 || sv(2) <= 1e-10 * std::max(1.0, sv(0)));
  }
}

std::vector<std::pair<MobiusMapd, MobiusMapd>> commutator_catalog() {
  using testing::elliptic_about;
  using testing::parabolic_fixing;
  MobiusMapd i1 = MobiusMapd::rotation(0.7), i2 = MobiusMapd::rotation(2.1);
  return {
      {i1, i2},
      {MobiusMapd::rotation(pi / 2), MobiusMapd::rotation(-pi / 2)},
      {MobiusMapd::hyperbolic_shift(0.3), MobiusMapd::hyperbolic_shift(0.7)},
      {MobiusMapd::hyperbolic_shift(0.5), MobiusMapd::hyperbolic_shift(-0.2)},
      {parabolic_fixing(Complex(1), 0.9), parabolic_fixing(Complex(1), -1.3)},
      {parabolic_fixing(Complex(1), 0.9), parabolic_fixing(Complex(0, 1), 0.9)},
      {elliptic_about(Complex(0.3), 2.2), MobiusMapd::hyperbolic_shift(0.5)},
      {MobiusMapd::rotation(1.0), MobiusMapd::hyperbolic_shift(0.4)},
      {MobiusMapd::hyperbolic_shift(0.5),
       compose(compose(MobiusMapd::rotation(pi / 2), MobiusMapd::hyperbolic_shift(0.5)),
               MobiusMapd::rotation(-pi / 2))},
      {MobiusMapd::hyperbolic_shift(0.3), MobiusMapd::rotation(pi)},
      {parabolic_fixing(Complex(1), 1.1), MobiusMapd::hyperbolic_shift(0.6)},
      {elliptic_about(Complex(0.3), 2.0), elliptic_about(Complex(0.3), -0.8)},
      {elliptic_about(Complex(0.25), 1.2), elliptic_about(Complex(-0.4), 1.2)},
      {MobiusMapd::rotation(2.1), parabolic_fixing(Complex(1), 0.9)},
  };
}

void prop_decision_iff_commute(Ctx& c) {
  auto scan_cfg = property_scan_config();
  auto pairs = commutator_catalog();
  for (int i = 0; i < 12; ++i) {
    MapClass classes[3] = {MapClass::Elliptic, MapClass::Parabolic, MapClass::Hyperbolic};
    pairs.push_back({testing::random_automorphism(c.rng, classes[i % 3]),
                     testing::random_automorphism(c.rng, classes[(i / 3) % 3])});
  }
  for (const auto& [phi, psi] : pairs) {
    auto v = commutator_compact_decision(psi, phi, scan_cfg);
    bool commute = commute_check(psi, phi);
    c.check((v.decision == Decision::compact_nontrivially) == commute);
    if (v.decision == Decision::not_compact) {
      c.check(v.evidence.has_value() &&
              v.evidence->verdict == ScanVerdict::condition_fails);
    }
  }
}

void prop_witness_on_noncommute(Ctx& c) {
  auto scan_cfg = property_scan_config();
  int tested = 0;
  for (const auto& [phi, psi] : commutator_catalog()) {
    if (commute_check(psi, phi)) continue;
    auto [first, second] = difference_pair(psi, phi);
    auto rep = boundary_scan(first, second, scan_cfg);
    c.check(rep.verdict == ScanVerdict::condition_fails);
    ++tested;
  }
  c.check(tested >= 5);
}

void prop_essential_normality(Ctx& c) {
  MapClass classes[3] = {MapClass::Elliptic, MapClass::Parabolic, MapClass::Hyperbolic};
  for (int i = 0; i < 50; ++i) {
    MobiusMapd phi = testing::random_automorphism(c.rng, classes[i % 3]);
    auto v = essentially_normal(phi);
    c.check(v.decision == Decision::compact_nontrivially);
    if (classes[i % 3] != MapClass::Elliptic) {
      c.check(v.clause == Clause::same_fixed_points);
      for (const auto& p : v.fixed_points_phi->points)
        c.check(std::abs(std::abs(p.z) - 1.0) < 1e-10);
      c.check(same_fixed_points(*v.fixed_points_phi, *v.fixed_points_psi_star));
    }
  }
  auto vid = essentially_normal(MobiusMapd::identity());
  c.check(vid.decision == Decision::compact_trivially_zero);
}

using Prop = std::function<void(Ctx&)>;

const std::vector<std::pair<const char*, Prop>>& registry() {
  static const std::vector<std::pair<const char*, Prop>> props = {
      {"mobius/krein-involution", prop_krein_involution},
      {"mobius/fixed-point-correspondence", prop_fixed_point_correspondence},
      {"mobius/elliptic-closure", prop_elliptic_closure},
      {"mobius/compose-apply-coherence", prop_compose_apply_coherence},
      {"mobius/class-fixed-point-shape", prop_class_fixed_point_shape},
      {"mobius/sup-norm-boundary-sampling", prop_sup_norm_boundary_sampling},
      {"mobius/equality-canary", prop_equality_canary},
      {"kernel/norm-monotone", prop_kernel_norm_monotone},
      {"kernel/cauchy-schwarz", prop_cauchy_schwarz},
      {"kernel/ratio-expansion", prop_ratio_expansion},
      {"kernel/log-branch", prop_log_branch},
      {"oracle/reproducing", prop_oracle_reproducing},
      {"oracle/closed-form-agreement", prop_oracle_closed_form},
      {"oracle/coefficient-extraction", prop_oracle_coefficients},
      {"compactness/schwarz-pick", prop_schwarz_pick},
      {"compactness/factor-identity", prop_factor_identity},
      {"compactness/case-ratio-consistency", prop_case_ratio_consistency},
      {"compactness/remainder-bounded", prop_remainder_bounded},
      {"compactness/distinct-automorphisms-fail", prop_distinct_automorphisms_fail},
      {"compactness/q-symmetry", prop_q_symmetry},
      {"commutator/adjoint-identity", prop_adjoint_identity},
      {"commutator/rank-two-correction", prop_rank_two_correction},
      {"commutator/decision-iff-commute", prop_decision_iff_commute},
      {"commutator/witness-on-noncommute", prop_witness_on_noncommute},
      {"commutator/essential-normality", prop_essential_normality},
  };
  return props;
}

}  // namespace

std::vector<PropertyResult> run_all(const Config& cfg) {
  std::vector<PropertyResult> out;
  std::uint64_t salt = 0;
  for (const auto& [name, fn] : registry()) {
    PropertyResult res;
    res.name = name;
    Ctx ctx{cfg, Rng(cfg.seed + 0x9e3779b97f4a7c15ULL * ++salt), res};
    fn(ctx);
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace diriop::selftest
