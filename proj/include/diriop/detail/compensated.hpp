#pragma once

#include <cmath>

namespace diriop::detail {

// Error-free transforms and a double-word accumulator.
//
// The boundary-limit quantities in this library cancel catastrophically near
// |w| = 1: expressions such as |cw+d|^2 - |aw+b|^2 shrink like 1 - |w| while
// their individual terms stay O(1). Accumulating the products exactly (fma
// splits) and carrying the rounding residue in a second word keeps those
// differences accurate down to 1 - |w| ~ 1e-14.

template <typename T>
struct Split {
  T hi, lo;
};

template <typename T>
inline Split<T> two_sum(T a, T b) {
  T s = a + b;
  T bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

template <typename T>
inline Split<T> two_prod(T a, T b) {
  T p = a * b;
  return {p, std::fma(a, b, -p)};
}

// Unevaluated sum hi + lo. Not kept normalized; value() folds the words.
template <typename T>
struct DoubleWord {
  T hi{0}, lo{0};

  void add(T x) {
    auto s = two_sum(hi, x);
    hi = s.hi;
    lo += s.lo;
  }
  void add(const DoubleWord& o) {
    add(o.hi);
    lo += o.lo;
  }
  void add_prod(T a, T b) {
    auto p = two_prod(a, b);
    add(p.hi);
    lo += p.lo;
  }
  void sub_prod(T a, T b) { add_prod(a, -b); }

  DoubleWord scaled(T f) const {
    DoubleWord r;
    auto p = two_prod(hi, f);
    r.hi = p.hi;
    r.lo = p.lo + lo * f;
    return r;
  }
  DoubleWord negated() const { return {-hi, -lo}; }
  T value() const { return hi + lo; }
};

}  // namespace diriop::detail
