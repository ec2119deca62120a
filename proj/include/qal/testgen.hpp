#pragma once
// Seeded generation of random exact data for property suites.
//
// All draws go through explicit modular reduction of the raw mt19937_64
// stream, so a given seed yields the same data on every platform and
// standard-library implementation (std::uniform_int_distribution makes no
// such guarantee).

#include <cstdint>
#include <random>
#include <vector>

#include "qal/algebra.hpp"
#include "qal/ecseq.hpp"
#include "qal/elseq.hpp"
#include "qal/scalar.hpp"

namespace qal {

class SeededGen {
 public:
  explicit SeededGen(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform-ish integer in [lo, hi] (modular reduction; deterministic).
  long int_in(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(eng_() % span);
  }

  bool coin() { return (eng_() & 1u) != 0; }

  /// Small exact rational: numerator in [-4, 4], denominator in [1, 4].
  Rat small_rat() {
    long num = int_in(-4, 4);
    long den = int_in(1, 4);
    return Rat(num, den);
  }

  Scalar scalar() { return Scalar(small_rat(), small_rat()); }

  /// Exact root of unity of order 1, 2 or 4.
  UnitPhase phase() {
    long order = 1L << int_in(0, 2);  // 1, 2, 4
    long num = int_in(0, order - 1);
    return UnitPhase::root_of_unity(num, order);
  }

  /// Eventually constant sequence supported (as a window) inside
  /// [support_lo, support_hi], with random tails.
  ECSeq ecseq(long support_lo, long support_hi) {
    long lo = int_in(support_lo, support_hi);
    long hi = int_in(lo, support_hi);
    Scalar left = scalar(), right = scalar();
    std::vector<Scalar> window;
    window.reserve(static_cast<size_t>(hi - lo + 1));
    for (long k = lo; k <= hi; ++k) window.push_back(scalar());
    return ECSeq::from_fn(lo, hi,
                          [&](long k) { return window[static_cast<size_t>(k - lo)]; },
                          left, right);
  }

  /// Algebra element with mode support in [n_lo, n_hi] and coefficient
  /// windows inside [support_lo, support_hi].
  AlgebraElement element(long n_lo, long n_hi, long support_lo, long support_hi) {
    AlgebraElement a;
    for (long n = n_lo; n <= n_hi; ++n) {
      if (coin()) a = a + AlgebraElement::single(n, ecseq(support_lo, support_hi));
    }
    if (a.terms().empty())
      a = AlgebraElement::single(0, ecseq(support_lo, support_hi));
    return a;
  }

  /// Eventually linear sequence with small integer slopes.
  ELSeq elseq(bool nonzero_slopes = false) {
    long sl = int_in(-3, 3), sr = int_in(-3, 3);
    if (nonzero_slopes) {
      if (sl == 0) sl = 1;
      if (sr == 0) sr = 1;
    }
    ELSeq base = ELSeq::linear(Scalar(Rat(sl)), Scalar(Rat(sr)), scalar());
    // sprinkle a compact irregularity through increments
    ELSeq bump(scalar(), ecseq(-2, 2));
    return base + bump;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qal
