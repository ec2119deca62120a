#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qal/elseq.hpp"

namespace qal {

/// Bounded perturbation library for tail models: known summability, so tail
/// verdicts can use analytic tests instead of raw truncation.
enum class PerturbKind { none, constant, decaying, log_damped };

struct Perturbation {
  PerturbKind kind = PerturbKind::none;
  double amplitude = 0.0;

  double at(long k) const {
    switch (kind) {
      case PerturbKind::none: return 0.0;
      case PerturbKind::constant: return amplitude;
      case PerturbKind::decaying: return amplitude / (1.0 + std::abs((double)k));
      case PerturbKind::log_damped:
        return amplitude * std::log(2.0 + std::abs((double)k)) /
               (1.0 + std::abs((double)k));
    }
    return 0.0;
  }

  double sup() const { return std::abs(amplitude); }
};

/// Coefficient sequence for the Fourier-component operators: either an exact
/// eventually linear sequence or a double-only tail model
/// s_pm |k| + offset + perturbation.  A side-dependent multiplier supports
/// the weight-elimination transform without leaving the type.
class SeqModel {
 public:
  SeqModel() : exact_(ELSeq::constant(Scalar(0))) {}

  static SeqModel exact(ELSeq s) {
    SeqModel m;
    m.exact_ = std::move(s);
    m.has_exact_ = true;
    return m;
  }

  static SeqModel tail(double slope_minus, double slope_plus, double offset,
                       Perturbation p = {}) {
    SeqModel m;
    m.has_exact_ = false;
    m.s_minus_ = slope_minus;
    m.s_plus_ = slope_plus;
    m.offset_ = offset;
    m.pert_ = p;
    return m;
  }

  bool is_exact() const { return has_exact_ && (!scaled_ || (rfl_ && rfr_)); }

  std::optional<Scalar> exact_at(long k) const {
    if (!is_exact()) return std::nullopt;
    Scalar v = exact_.eval(k);
    if (scaled_) v = v * Scalar(k < 0 ? *rfl_ : *rfr_);
    if (magnitude_) {
      if (v.im != 0) return std::nullopt;  // |v| irrational in general
      if (v.re < 0) v.re = -v.re;
    }
    return v;
  }

  std::complex<double> at(long k) const {
    std::complex<double> v;
    if (has_exact_) {
      v = exact_.eval(k).to_complex();
    } else {
      double base = k >= 0 ? s_plus_ * (double)k : s_minus_ * (double)(-k);
      v = {base + offset_ + pert_.at(k), 0.0};
    }
    if (scaled_) v *= (k < 0 ? fl_ : fr_);
    if (magnitude_) v = {std::abs(v), 0.0};
    return v;
  }

  /// (slope at -inf, slope at +inf) measured in |k|.
  std::pair<std::complex<double>, std::complex<double>> abs_slopes() const {
    std::complex<double> l, r;
    if (has_exact_) {
      auto [sl, sr] = exact_.tail_slopes();
      l = -sl.to_complex();
      r = sr.to_complex();
    } else {
      l = {s_minus_, 0.0};
      r = {s_plus_, 0.0};
    }
    if (scaled_) { l *= fl_; r *= fr_; }
    if (magnitude_) { l = {std::abs(l), 0.0}; r = {std::abs(r), 0.0}; }
    return {l, r};
  }

  /// Pointwise absolute value of the sequence (exactness is retained only at
  /// points where the value is real).
  SeqModel magnitude() const {
    SeqModel m = *this;
    m.magnitude_ = true;
    return m;
  }

  bool tail_slopes_nonzero() const {
    auto [l, r] = abs_slopes();
    return std::abs(l) > 0 && std::abs(r) > 0;
  }

  double perturbation_sup() const { return has_exact_ ? 0.0 : pert_.sup(); }

  /// Multiply by f_left for k < 0 and f_right for k >= 0.
  SeqModel side_scaled(double f_left, double f_right,
                       std::optional<Rat> exact_left = std::nullopt,
                       std::optional<Rat> exact_right = std::nullopt) const {
    SeqModel m = *this;
    if (!m.scaled_) {
      m.scaled_ = true;
      m.fl_ = f_left;
      m.fr_ = f_right;
      m.rfl_ = exact_left;
      m.rfr_ = exact_right;
    } else {
      m.fl_ *= f_left;
      m.fr_ *= f_right;
      if (m.rfl_ && exact_left) *m.rfl_ *= *exact_left; else m.rfl_.reset();
      if (m.rfr_ && exact_right) *m.rfr_ *= *exact_right; else m.rfr_.reset();
    }
    return m;
  }

 private:
  bool has_exact_ = true;
  ELSeq exact_;
  double s_minus_ = 0, s_plus_ = 0, offset_ = 0;
  Perturbation pert_;
  bool scaled_ = false;
  bool magnitude_ = false;
  double fl_ = 1.0, fr_ = 1.0;
  std::optional<Rat> rfl_, rfr_;
};

}  // namespace qal
