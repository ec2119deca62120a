#pragma once

#include "qal/ecseq.hpp"

namespace qal {

/// Eventually linear sequence Z -> C: value at 0 plus eventually constant
/// increments inc(k) = beta(k) - beta(k-1).  Piecewise affine outside the
/// increment window; the tail values of the increments are the slopes.
class ELSeq {
 public:
  ELSeq() : anchor_(0) {}
  ELSeq(Scalar anchor, ECSeq increments)
      : anchor_(std::move(anchor)), inc_(std::move(increments)) {}

  /// beta(k) = k.
  static ELSeq identity() { return ELSeq(Scalar(0), ECSeq::constant(Scalar(1))); }

  /// beta(k) = |k|: increments -1 for k <= 0, +1 for k >= 1.
  static ELSeq abs_k() {
    return ELSeq(Scalar(0), ECSeq::step(Scalar(-1), Scalar(1), 1));
  }

  /// beta(k) = |k| + 1.
  static ELSeq abs_k_plus_1() {
    return ELSeq(Scalar(1), ECSeq::step(Scalar(-1), Scalar(1), 1));
  }

  static ELSeq constant(Scalar c) { return ELSeq(std::move(c), ECSeq()); }

  /// slope_left for k <= 0, slope_right for k >= 1, value anchor at 0.
  static ELSeq linear(Scalar slope_left, Scalar slope_right, Scalar anchor) {
    return ELSeq(std::move(anchor),
                 ECSeq::step(std::move(slope_left), std::move(slope_right), 1));
  }

  const Scalar& anchor() const { return anchor_; }
  const ECSeq& increments() const { return inc_; }

  Scalar eval(long k) const {
    Scalar v = anchor_;
    if (k > 0) {
      long j = 1;
      // constant run below the increment window in one step
      if (inc_.window_lo() > 1) {
        long run = std::min(k, inc_.window_lo() - 1);
        v += Scalar(Rat(run)) * inc_.left_tail();
        j = run + 1;
      }
      for (; j <= k; ++j) {
        if (j > inc_.window_hi()) {
          v += Scalar(Rat(k - j + 1)) * inc_.right_tail();
          break;
        }
        v += inc_.at(j);
      }
    } else if (k < 0) {
      long j = 0;
      if (inc_.window_hi() < 0) {
        long run = std::min(-k, -inc_.window_hi());
        v -= Scalar(Rat(run)) * inc_.right_tail();
        j = -run;
      }
      for (; j > k; --j) {
        if (j < inc_.window_lo()) {
          v -= Scalar(Rat(j - k)) * inc_.left_tail();
          break;
        }
        v -= inc_.at(j);
      }
    }
    return v;
  }

  /// (slope at -inf, slope at +inf) = tail values of the increments.
  std::pair<Scalar, Scalar> tail_slopes() const { return inc_.limits(); }

  bool is_constant() const { return inc_.is_zero(); }

  /// this(k + m) - this(k) as an eventually constant sequence (exact).
  ECSeq shifted_difference(long m) const {
    auto [sl, sr] = tail_slopes();
    long am = std::abs(m);
    long lo = std::min(inc_.window_lo() - am, -1L) - 1;
    long hi = std::max(inc_.window_hi() + am, 1L) + 1;
    return ECSeq::from_fn(
        lo, hi, [&](long k) { return eval(k + m) - eval(k); },
        Scalar(Rat(m)) * sl, Scalar(Rat(m)) * sr);
  }

  friend ELSeq operator+(const ELSeq& a, const ELSeq& b) {
    return ELSeq(a.anchor_ + b.anchor_, a.inc_ + b.inc_);
  }
  friend ELSeq operator-(const ELSeq& a, const ELSeq& b) {
    return ELSeq(a.anchor_ - b.anchor_, a.inc_ - b.inc_);
  }

  friend bool operator==(const ELSeq& a, const ELSeq& b) {
    return a.anchor_ == b.anchor_ && a.inc_ == b.inc_;
  }
  friend bool operator!=(const ELSeq& a, const ELSeq& b) { return !(a == b); }

 private:
  Scalar anchor_;
  ECSeq inc_;
};

}  // namespace qal
