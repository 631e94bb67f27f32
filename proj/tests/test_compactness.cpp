#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "diriop/compactness.hpp"
#include "diriop/testing.hpp"

using namespace diriop;
using Complex = std::complex<double>;
using testing::Rng;

namespace {
constexpr double pi = 3.141592653589793;

MobiusMapd half_map() { return MobiusMapd(Complex(1), Complex(1), Complex(0), Complex(2)); }

// Closed form of the difference ratio for (hyp(0.5), (1+z)/2) along zeta = -1
// at w = -(1 - delta), derived by hand from the coefficient algebra:
//   1 - |phi(w)|^2 = 3 delta (2-delta) / (1+delta)^2
//   1 - |psi(w)|^2 = 1 - delta^2/4
//   1 - conj(phi(w)) psi(w) = (2 + 3 delta - 2 delta^2) / (2 (1+delta))
double case_i_ratio(double delta) {
  double num = std::log((1 + delta) * (1 + delta) / (3 * delta * (2 - delta))) -
               std::log1p(-delta * delta / 4) -
               2 * std::log(2 * (1 + delta) / (2 + 3 * delta - 2 * delta * delta));
  return num / (1.0 - std::log(delta * (2 - delta)));
}
}  // namespace

TEST_CASE("necessary_condition_value") {
  Rng rng(1);
  MobiusMapd phi = testing::random_automorphism(rng);
  auto s0 = necessary_condition_value(phi, phi, 1e-6, Complex(1));
  CHECK(s0.q_value == 0.0);
  CHECK(s0.gap == 0.0);

  // (-z, id): both factors are exactly 1, gap = 2(1 - delta).
  MobiusMapd neg = MobiusMapd::rotation(pi);
  for (double delta : {0.5, 1e-3, 1e-9, std::ldexp(1.0, -40)}) {
    auto s = necessary_condition_value(neg, MobiusMapd::identity(), delta, Complex(1));
    CHECK(s.factor_phi == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.factor_psi == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.gap == doctest::Approx(2 * (1 - delta)).epsilon(1e-13));
    CHECK(s.q_value == doctest::Approx(4 * (1 - delta)).epsilon(1e-12));
  }

  // ((1+z)/2, id) along zeta = -1: q -> 1.
  auto s = necessary_condition_value(half_map(), MobiusMapd::identity(), 1e-8, Complex(-1));
  CHECK(s.factor_psi == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(s.factor_phi < 1e-7);
  CHECK(s.q_value == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(necessary_condition_value(MobiusMapd(Complex(1), Complex(0.5), Complex(0),
                                                       Complex(1)),
                                            MobiusMapd::identity(), 1e-3, Complex(1)),
                  NotSelfMap);
}

TEST_CASE("schwarz_pick_bound") {
  auto b1 = schwarz_pick_bound(MobiusMapd::identity(), Complex(0.3, 0.2));
  CHECK(b1.lhs == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(b1.rhs == doctest::Approx(1.0).epsilon(1e-13));

  MobiusMapd contraction(Complex(0.5), Complex(0), Complex(0), Complex(1));
  auto b2 = schwarz_pick_bound(contraction, Complex(0));
  CHECK(b2.lhs == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(b2.rhs == doctest::Approx(1.0).epsilon(1e-13));

  auto b3 = schwarz_pick_bound(half_map(), Complex(0));
  CHECK(b3.lhs == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(b3.rhs == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(b3.lhs >= b3.rhs);

  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    auto b = schwarz_pick_bound(testing::random_self_map(rng), rng.in_disk(0.999));
    CHECK(b.lhs >= b.rhs - 1e-12);
  }
}

TEST_CASE("automorphism_factor_bound") {
  auto rot = automorphism_factor_bound(MobiusMapd::rotation(1.3), Complex(0.4, 0.1));
  CHECK(rot.value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rot.lower == doctest::Approx(1.0).epsilon(1e-13));

  MobiusMapd hyp = MobiusMapd::hyperbolic_shift(0.5);  // form parameter a = -1/2
  auto fb = automorphism_factor_bound(hyp, Complex(1));
  CHECK(fb.value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fb.lower == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // value at w equals the direct factor (1-|w|^2)/(1-|phi(w)|^2).
  {
    double delta = 1e-6;
    auto sample = necessary_condition_value(hyp, MobiusMapd::identity(), delta, Complex(1));
    auto fb2 = automorphism_factor_bound(hyp, (1 - delta) * Complex(1));
    CHECK(std::abs(fb2.value - sample.factor_phi) <= 1e-10 * fb2.value);
  }

  // At w = a the factor collapses to 1 - |a|^2.
  Rng rng(29);
  for (int i = 0; i < 20; ++i) {
    MobiusMapd m = testing::random_automorphism(rng);
    auto form = to_automorphism_form(m);
    auto fb3 = automorphism_factor_bound(m, form.a);
    CHECK(fb3.value == doctest::Approx(1.0 - std::norm(form.a)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(automorphism_factor_bound(half_map(), Complex(0)), NotAutomorphism);
}

TEST_CASE("scan verdict rule") {
  using detail::scan_verdict;
  // Persistent witness on one direction.
  std::vector<std::vector<double>> fails = {{0.5, 0.4, 0.3, 0.2, 0.1}, {1.0, 1.0, 1.0, 1.0, 1.0}};
  auto v1 = scan_verdict(fails, 1e-3);
  CHECK(v1.verdict == ScanVerdict::condition_fails);
  CHECK(*v1.witness_dir == 1);

  // Everything below threshold at the deepest rung.
  std::vector<std::vector<double>> holds = {{0.5, 1e-5, 1e-6}, {0.2, 1e-4, 1e-7}};
  CHECK(scan_verdict(holds, 1e-3).verdict == ScanVerdict::condition_holds_numerically);

  // Deepest value above threshold but no three-rung persistence.
  std::vector<std::vector<double>> mixed = {{0.5, 1e-5, 0.4}};
  CHECK(scan_verdict(mixed, 1e-3).verdict == ScanVerdict::inconclusive);
}

TEST_CASE("boundary_scan") {
  ScanConfig<double> cfg;
  cfg.directions = 64;

  MobiusMapd hyp = MobiusMapd::hyperbolic_shift(0.5);
  auto equal = boundary_scan(hyp, hyp, cfg);
  CHECK(equal.verdict == ScanVerdict::condition_holds_numerically);
  CHECK(equal.max_q_deepest == 0.0);
  CHECK_FALSE(equal.witness.has_value());

  MobiusMapd neg = MobiusMapd::rotation(pi);
  auto fails = boundary_scan(neg, MobiusMapd::identity(), cfg);
  CHECK(fails.verdict == ScanVerdict::condition_fails);
  REQUIRE(fails.witness.has_value());
  CHECK(fails.witness->q_deepest == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(fails.schwarz_pick_violations == 0);
  CHECK(fails.factor_identity_violations == 0);
  CHECK(fails.factor_lower_violations == 0);

  // ((1+z)/2, id): witness sits at the boundary point the maps pull apart,
  // q -> 1 there, while both maps fix 1 and q -> 0 along zeta = 1.
  ScanConfig<double> cfg256;
  auto scan = boundary_scan(half_map(), MobiusMapd::identity(), cfg256);
  CHECK(scan.verdict == ScanVerdict::condition_fails);
  REQUIRE(scan.witness.has_value());
  CHECK(std::abs(scan.witness->zeta - Complex(-1)) < 0.05);
  CHECK(scan.witness->q_deepest == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(scan.cell(0, static_cast<int>(scan.deltas.size()) - 1).q < cfg256.q_threshold);
  CHECK(scan.schwarz_pick_violations == 0);

  // Scan cells carry the ratio column.
  int last = static_cast<int>(fails.deltas.size()) - 1;
  CHECK(fails.cell(0, last).ratio == doctest::Approx(1.978).epsilon(1e-3));
}

TEST_CASE("case assignment branches") {
  using detail::assign_case;
  CHECK(assign_case(true, false, false, true).first == CaseTag::case_i);
  CHECK(assign_case(false, true, true, false).first == CaseTag::case_ii);
  CHECK(assign_case(true, true, true, false).first == CaseTag::case_iii_a);
  CHECK(assign_case(true, true, false, true).first == CaseTag::case_iii_b);
  CHECK(assign_case(true, true, false, false).first == CaseTag::case_iii_c);
  CHECK(assign_case(true, true, true, true).first == CaseTag::not_applicable);
  CHECK(assign_case(false, false, true, true).first == CaseTag::not_applicable);
  CHECK(assign_case(true, true, false, false).second == RatioLimit::two);
  CHECK(assign_case(true, false, false, true).second == RatioLimit::one);
  CHECK(assign_case(true, true, true, false).second == RatioLimit::at_least_one);
}

TEST_CASE("classify_case") {
  RadiusLadder ladder{4, 40};

  // Automorphism against the half map: one boundary limit, one interior.
  auto rep = classify_case(MobiusMapd::hyperbolic_shift(0.5), half_map(), Complex(-1), ladder);
  CHECK(rep.tag == CaseTag::case_i);
  CHECK(rep.predicted == RatioLimit::one);
  CHECK(std::abs(rep.phi_limit - Complex(-1)) < 1e-6);
  CHECK(std::abs(rep.psi_limit) < 1e-6);
  CHECK(rep.phi_factor_limit == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(rep.psi_factor_limit < 1e-6);
  CHECK(rep.remainder_name == "kappa");
  // kappa settles at ln(1/3).
  CHECK(rep.remainder_trace.back() == doctest::Approx(-std::log(3.0)).epsilon(1e-6));
  CHECK(rep.remainder_max < 1.2);

  auto rep_swapped = classify_case(half_map(), MobiusMapd::hyperbolic_shift(0.5), Complex(-1), ladder);
  CHECK(rep_swapped.tag == CaseTag::case_ii);

  auto rep3 = classify_case(MobiusMapd::rotation(pi), MobiusMapd::identity(), Complex(1), ladder);
  CHECK(rep3.tag == CaseTag::case_iii_c);
  CHECK(rep3.predicted == RatioLimit::two);
  CHECK(rep3.phi_factor_limit == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep3.psi_factor_limit == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep3.remainder_name == "lambda_hat");

  // Ladders living entirely below delta = 1e-6 still classify.
  auto deep = classify_case(MobiusMapd::rotation(pi), MobiusMapd::identity(), Complex(1),
                            RadiusLadder{30, 40});
  CHECK(deep.tag == CaseTag::case_iii_c);

  MobiusMapd hyp = MobiusMapd::hyperbolic_shift(0.5);
  auto na = classify_case(hyp, hyp, Complex(1), ladder);
  CHECK(na.tag == CaseTag::not_applicable);
  CHECK(na.predicted == RatioLimit::none);
  CHECK_FALSE(na.reason.empty());

  // Distinct maps that agree at this boundary point: hypothesis fails too.
  auto na2 = classify_case(MobiusMapd::hyperbolic_shift(0.3), MobiusMapd::hyperbolic_shift(0.7),
                           Complex(1), ladder);
  CHECK(na2.tag == CaseTag::not_applicable);
}

TEST_CASE("ratio_limit_check") {
  RadiusLadder to27{4, 27};
  auto res = ratio_limit_check(MobiusMapd::hyperbolic_shift(0.5), half_map(), Complex(-1), to27);
  CHECK(res.report.tag == CaseTag::case_i);
  // Frozen against the hand-derived closed form; convergence to the limit 1
  // is logarithmic, so the value at 2^-27 is still ~0.11 below it.
  CHECK(res.estimates.back() == doctest::Approx(case_i_ratio(std::ldexp(1.0, -27))).epsilon(1e-9));
  CHECK(res.estimates.back() == doctest::Approx(0.8896734630).epsilon(1e-6));

  RadiusLadder to40{4, 40};
  auto res40 = ratio_limit_check(MobiusMapd::hyperbolic_shift(0.5), half_map(), Complex(-1), to40);
  CHECK(res40.estimates.back() == doctest::Approx(0.9251370973).epsilon(1e-6));
  CHECK(res40.estimates.back() >= 0.85);
  CHECK(res40.estimates.back() <= 1.1);

  MobiusMapd neg = MobiusMapd::rotation(pi);
  auto res2 = ratio_limit_check(neg, MobiusMapd::identity(), Complex(1), to40);
  CHECK(res2.report.tag == CaseTag::case_iii_c);
  CHECK(res2.estimates.back() >= 1.9);
  CHECK(res2.estimates.back() <= 2.0);
  for (std::size_t k = res2.estimates.size() - 8; k + 1 < res2.estimates.size(); ++k)
    CHECK(res2.estimates[k + 1] > res2.estimates[k]);

  MobiusMapd hyp = MobiusMapd::hyperbolic_shift(0.5);
  auto res3 = ratio_limit_check(hyp, hyp, Complex(0, 1), to40);
  CHECK(res3.report.tag == CaseTag::not_applicable);
  for (double e : res3.estimates) CHECK(e == 0.0);
}

TEST_CASE("automorphism_difference_decision") {
  ScanConfig<double> cfg;
  cfg.directions = 64;

  MobiusMapd hyp = MobiusMapd::hyperbolic_shift(0.5);
  auto same = automorphism_difference_decision(hyp, hyp, cfg);
  CHECK(same.decision == Decision::compact_trivially_zero);
  CHECK(same.clause == Clause::zero_operator);

  auto diff = automorphism_difference_decision(MobiusMapd::rotation(pi), MobiusMapd::identity(), cfg);
  CHECK(diff.decision == Decision::not_compact);
  CHECK(diff.clause == Clause::difference_witness);
  REQUIRE(diff.evidence.has_value());
  CHECK(diff.evidence->verdict == ScanVerdict::condition_fails);
  CHECK(diff.evidence->witness->q_deepest == doctest::Approx(4.0).epsilon(1e-9));

  auto rots = automorphism_difference_decision(MobiusMapd::rotation(0.4), MobiusMapd::rotation(1.9), cfg);
  CHECK(rots.decision == Decision::not_compact);

  CHECK_THROWS_AS(automorphism_difference_decision(half_map(), hyp, cfg), NotAutomorphism);
}

TEST_CASE("log_ratio_lemma_check") {
  // a_n = 1/(n+1), b_n = a_n^2: the ratio of logs is below 1 from the start.
  std::vector<double> a, b;
  for (int n = 1; n <= 60; ++n) {
    a.push_back(1.0 / (n + 1));
    b.push_back(1.0 / ((n + 1.0) * (n + 1.0)));
  }
  CHECK(log_ratio_lemma_check(a, b) == 0);

  // Constant log ratio 1/2.
  std::vector<double> a2, b2;
  for (int n = 1; n <= 40; ++n) {
    a2.push_back(std::ldexp(1.0, -n));
    b2.push_back(std::ldexp(1.0, -2 * n));
  }
  CHECK(log_ratio_lemma_check(a2, b2) == 0);

  // A noisy head pushes N to the last violating index.
  std::vector<double> a3 = a, b3 = b;
  b3[0] = a3[0];          // violates at index 0
  b3[3] = 0.999 * a3[3];  // still below 1, fine
  b3[5] = a3[5] * 1.0;    // violates at index 5
  CHECK(log_ratio_lemma_check(a3, b3) == 5);

  // Prefix never dips below 1 at its end.
  std::vector<double> bad_a = {0.5, 0.4}, bad_b = {0.6, 0.5};
  CHECK_THROWS_AS(log_ratio_lemma_check(bad_a, bad_b), DomainError);
  std::vector<double> out_of_range = {1.0, 0.5}, ok = {0.1, 0.1};
  CHECK_THROWS_AS(log_ratio_lemma_check(out_of_range, ok), DomainError);

  // Generated pairs with b_n/a_n -> 0: the returned index covers the tail.
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> ga, gb;
    double v = rng.uniform(0.3, 0.9);
    for (int n = 0; n < 80; ++n) {
      v *= rng.uniform(0.5, 0.95);
      ga.push_back(v);
      gb.push_back(v * v * rng.uniform(0.5, 1.0));
    }
    std::size_t N = log_ratio_lemma_check(ga, gb);
    for (std::size_t n = N + 1; n < ga.size(); ++n) {
      double ratio = std::log(ga[n]) / std::log(gb[n]);
      CHECK(ratio > 0.0);
      CHECK(ratio < 1.0);
    }
  }
}

TEST_CASE("q is symmetric in the symbol pair") {
  Rng rng(37);
  for (int i = 0; i < 100; ++i) {
    MobiusMapd phi = testing::random_self_map(rng);
    MobiusMapd psi = testing::random_self_map(rng);
    double delta = std::pow(2.0, -rng.uniform(4, 40));
    Complex zeta = rng.on_circle();
    auto s1 = necessary_condition_value(phi, psi, delta, zeta);
    auto s2 = necessary_condition_value(psi, phi, delta, zeta);
    CHECK(s1.q_value == s2.q_value);
  }
}
