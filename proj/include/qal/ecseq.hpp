#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "qal/scalar.hpp"

namespace qal {

/// Eventually constant sequence Z -> C, stored as two tail values and an
/// explicit window of values.  Canonical form keeps the window minimal:
/// window endpoints always differ from the adjacent tail value, and an
/// empty window sits at window_lo = 0 (pure step sequence).
class ECSeq {
 public:
  ECSeq() : left_(0), right_(0), lo_(0) {}

  /// Constant sequence.
  explicit ECSeq(Scalar c) : left_(c), right_(std::move(c)), lo_(0) {}

  ECSeq(Scalar left_tail, long lo, std::vector<Scalar> window, Scalar right_tail)
      : left_(std::move(left_tail)),
        right_(std::move(right_tail)),
        lo_(lo),
        window_(std::move(window)) {
    canonicalize();
  }

  static ECSeq constant(Scalar c) { return ECSeq(std::move(c)); }

  /// Step sequence: left for k < at, right for k >= at.
  static ECSeq step(Scalar left, Scalar right, long at) {
    return ECSeq(std::move(left), at, {}, std::move(right));
  }

  /// Indicator of the single point k0.
  static ECSeq delta(long k0, Scalar v = Scalar(1)) {
    return ECSeq(Scalar(0), k0, {std::move(v)}, Scalar(0));
  }

  /// Builds from pointwise evaluation on [lo, hi] with the given tails.
  /// The window must already cover every non-tail value.
  static ECSeq from_fn(long lo, long hi, const std::function<Scalar(long)>& f,
                       Scalar left_tail, Scalar right_tail) {
    std::vector<Scalar> vals;
    vals.reserve(hi >= lo ? static_cast<size_t>(hi - lo + 1) : 0);
    for (long k = lo; k <= hi; ++k) vals.push_back(f(k));
    return ECSeq(std::move(left_tail), lo, std::move(vals), std::move(right_tail));
  }

  const Scalar& left_tail() const { return left_; }
  const Scalar& right_tail() const { return right_; }
  long window_lo() const { return lo_; }
  long window_hi() const { return lo_ + static_cast<long>(window_.size()) - 1; }
  const std::vector<Scalar>& window() const { return window_; }

  const Scalar& at(long k) const {
    if (k < lo_) return left_;
    long idx = k - lo_;
    if (idx >= static_cast<long>(window_.size())) return right_;
    return window_[static_cast<size_t>(idx)];
  }

  bool is_zero() const {
    return window_.empty() && left_.is_zero() && right_.is_zero();
  }

  bool is_constant() const { return window_.empty() && left_ == right_; }

  /// The domain constant: smallest k0 with a(k) constant for |k| >= k0.
  long domain_constant() const {
    if (window_.empty()) return left_ == right_ ? 0 : 1;
    return std::max(std::abs(lo_), std::abs(window_hi())) + 1;
  }

  /// result(k) = this(k + m).
  ECSeq shift(long m) const {
    ECSeq r = *this;
    r.lo_ -= m;
    // constant sequences are position-free: keep them canonical at lo = 0
    if (r.window_.empty() && r.left_ == r.right_) r.lo_ = 0;
    return r;
  }

  ECSeq conj() const {
    ECSeq r = *this;
    r.left_ = r.left_.conj();
    r.right_ = r.right_.conj();
    for (auto& v : r.window_) v = v.conj();
    return r;
  }

  ECSeq scaled(const Scalar& c) const {
    ECSeq r;
    r.left_ = left_ * c;
    r.right_ = right_ * c;
    r.lo_ = lo_;
    r.window_.reserve(window_.size());
    for (const auto& v : window_) r.window_.push_back(v * c);
    r.canonicalize();
    return r;
  }

  friend ECSeq combine(const ECSeq& a, const ECSeq& b,
                       const std::function<Scalar(const Scalar&, const Scalar&)>& op) {
    long lo = std::min(a.effective_lo(), b.effective_lo());
    long hi = std::max(a.effective_hi(), b.effective_hi());
    ECSeq r;
    r.left_ = op(a.left_, b.left_);
    r.right_ = op(a.right_, b.right_);
    r.lo_ = lo;
    for (long k = lo; k <= hi; ++k) r.window_.push_back(op(a.at(k), b.at(k)));
    r.canonicalize();
    return r;
  }

  friend ECSeq operator+(const ECSeq& a, const ECSeq& b) {
    return combine(a, b, [](const Scalar& x, const Scalar& y) { return x + y; });
  }
  friend ECSeq operator-(const ECSeq& a, const ECSeq& b) {
    return combine(a, b, [](const Scalar& x, const Scalar& y) { return x - y; });
  }
  friend ECSeq operator*(const ECSeq& a, const ECSeq& b) {
    return combine(a, b, [](const Scalar& x, const Scalar& y) { return x * y; });
  }

  friend bool operator==(const ECSeq& a, const ECSeq& b) {
    return a.left_ == b.left_ && a.right_ == b.right_ && a.lo_ == b.lo_ &&
           a.window_ == b.window_;
  }
  friend bool operator!=(const ECSeq& a, const ECSeq& b) { return !(a == b); }

  /// (lim_{k->-inf}, lim_{k->+inf}).
  std::pair<Scalar, Scalar> limits() const { return {left_, right_}; }

  /// Exact sup_k |value(k)|^2.
  Rat sup_abs_sq() const {
    Rat m = std::max(left_.abs_sq(), right_.abs_sq());
    for (const auto& v : window_) m = std::max(m, v.abs_sq());
    return m;
  }

  double supnorm() const { return std::sqrt(to_double(sup_abs_sq())); }

  /// Exact sup_{|k| > N} |value(k)|^2.
  Rat tail_sup_abs_sq(long N) const {
    Rat m = std::max(left_.abs_sq(), right_.abs_sq());
    for (long k = lo_; k <= window_hi(); ++k)
      if (k < -N || k > N) m = std::max(m, at(k).abs_sq());
    return m;
  }

 private:
  // Window bounds used for alignment; an empty window contributes its step
  // position so that combine never misses the jump.
  long effective_lo() const { return lo_; }
  long effective_hi() const { return window_.empty() ? lo_ - 1 : window_hi(); }

  void canonicalize() {
    while (!window_.empty() && window_.front() == left_) {
      window_.erase(window_.begin());
      ++lo_;
    }
    while (!window_.empty() && window_.back() == right_) window_.pop_back();
    if (window_.empty() && left_ == right_) lo_ = 0;
  }

  Scalar left_;
  Scalar right_;
  long lo_;
  std::vector<Scalar> window_;
};

}  // namespace qal
