#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "qal/algebra.hpp"
#include "qal/derivations.hpp"
#include "qal/elseq.hpp"

namespace qal {

/// Probability weights on Z with exactly summable tails.  Supported
/// families: two-sided geometric C q^|k|, finite support, and an explicit
/// window continued by geometric tails.  Normalization holds in closed form.
class WeightSpec {
 public:
  /// w(k) = C q^|k|, C = (1-q)/(1+q), 0 < q < 1.
  static WeightSpec geometric(const Rat& q) {
    if (!(q > 0 && q < 1))
      throw std::domain_error("WeightSpec: q must lie in (0,1)");
    WeightSpec w;
    w.q_ = q;
    w.c_ = (1 - q) / (1 + q);
    w.lo_ = 0;
    return w;
  }

  /// Finite support on [at, at + values.size() - 1]; values must sum to 1.
  static WeightSpec finite(long at, std::vector<Rat> values) {
    WeightSpec w;
    w.q_ = 0;
    w.c_ = 0;
    w.lo_ = at;
    Rat s = 0;
    for (const auto& v : values) {
      if (v < 0) throw std::domain_error("WeightSpec: negative weight");
      s += v;
    }
    if (s != 1) throw std::domain_error("WeightSpec: weights must sum to 1");
    w.window_ = std::move(values);
    return w;
  }

  /// Window values on [at, ...] continued by geometric tails with ratio q:
  /// w(k) = v_first q^(at-k) below, v_last q^(k-hi) above.  The closed-form
  /// total must equal 1.
  static WeightSpec window_geometric(long at, std::vector<Rat> values, const Rat& q) {
    if (!(q > 0 && q < 1))
      throw std::domain_error("WeightSpec: q must lie in (0,1)");
    if (values.empty()) throw std::domain_error("WeightSpec: empty window");
    WeightSpec w;
    w.q_ = q;
    w.lo_ = at;
    Rat s = 0;
    for (const auto& v : values) {
      if (v < 0) throw std::domain_error("WeightSpec: negative weight");
      s += v;
    }
    s += (values.front() + values.back()) * q / (1 - q);
    if (s != 1)
      throw std::domain_error("WeightSpec: window plus tails must sum to 1");
    w.window_ = std::move(values);
    return w;
  }

  bool is_geometric() const { return window_.empty(); }
  bool has_tails() const { return q_ != 0; }
  const Rat& q() const { return q_; }

  Rat at(long k) const {
    if (window_.empty()) return c_ * pow_q(std::abs(k));
    long hi = lo_ + static_cast<long>(window_.size()) - 1;
    if (k >= lo_ && k <= hi) return window_[static_cast<size_t>(k - lo_)];
    if (q_ == 0) return 0;
    if (k < lo_) return window_.front() * pow_q(lo_ - k);
    return window_.back() * pow_q(k - hi);
  }

  bool strictly_positive() const {
    if (window_.empty()) return true;  // geometric
    if (q_ == 0) return false;
    for (const auto& v : window_)
      if (v == 0) return false;
    return true;
  }

  /// Exact sum over all k of w(k) s(k) for an eventually constant s; the
  /// tails collapse to geometric series.
  Scalar sum_against(const ECSeq& s) const {
    long wlo, whi;
    bounds(s, wlo, whi);
    Scalar total(0);
    for (long k = wlo; k <= whi; ++k) total += s.at(k) * Scalar(at(k));
    total += s.left_tail() * Scalar(tail_sum_below(wlo));
    total += s.right_tail() * Scalar(tail_sum_above(whi));
    return total;
  }

  /// Exact NSum over all k of w(k) |s(k)|^2.
  Rat sum_abs_sq_against(const ECSeq& s) const {
    long wlo, whi;
    bounds(s, wlo, whi);
    Rat total = 0;
    for (long k = wlo; k <= whi; ++k) total += s.at(k).abs_sq() * at(k);
    total += s.left_tail().abs_sq() * tail_sum_below(wlo);
    total += s.right_tail().abs_sq() * tail_sum_above(whi);
    return total;
  }

  /// Sum of w(k) over k < m (m at or below the window start).
  Rat tail_sum_below(long m) const {
    if (window_.empty()) {
      // geometric family: sum_{k < m} C q^|k|
      if (m <= 0) return c_ * pow_q(-m + 1) / (1 - q_);
      Rat s = c_ * q_ / (1 - q_);  // k < 0
      for (long k = 0; k < m; ++k) s += c_ * pow_q(k);
      return s;
    }
    if (q_ == 0) return 0;
    // window family: m <= lo_, pure left tail
    return window_.front() * pow_q(lo_ - m + 1) / (1 - q_);
  }

  /// Sum of w(k) over k > m (m at or above the window end).
  Rat tail_sum_above(long m) const {
    if (window_.empty()) {
      if (m >= 0) return c_ * pow_q(m + 1) / (1 - q_);
      Rat s = c_ * q_ / (1 - q_);
      for (long k = 0; k >= m + 1; --k) s += c_ * pow_q(-k);
      return s;
    }
    if (q_ == 0) return 0;
    long hi = lo_ + static_cast<long>(window_.size()) - 1;
    return window_.back() * pow_q(m - hi + 1) / (1 - q_);
  }

  /// sqrt(w(k)/w(k+1)) for the geometric family, by side: q^{1/2} for
  /// k < 0, q^{-1/2} for k >= 0.  Exact when q is a rational square.
  std::pair<double, double> unweight_factors() const {
    if (!is_geometric())
      throw std::domain_error("unweight_factors: geometric family only");
    double sq = std::sqrt(to_double(q_));
    return {sq, 1.0 / sq};
  }

 private:
  void bounds(const ECSeq& s, long& wlo, long& whi) const {
    wlo = std::min(s.window_lo(), std::min(lo_, 0L));
    whi = std::max(s.window_hi(),
                   std::max(lo_ + static_cast<long>(window_.size()) - 1, 0L));
  }

  Rat pow_q(long e) const {
    Rat p = 1;
    for (long i = 0; i < e; ++i) p *= q_;
    return p;
  }

  Rat q_;
  Rat c_;
  long lo_ = 0;
  std::vector<Rat> window_;
};

/// Convex mixture lambda_+ tau_{+inf} + lambda_- tau_{-inf} + lambda_0 tau_w.
struct StateSpec {
  Rat lambda0 = 1;
  Rat lambda_plus = 0;
  Rat lambda_minus = 0;
  WeightSpec weights = WeightSpec::finite(0, {1});

  static StateSpec tau0() { return {}; }
  static StateSpec tau_k(long k) { return {1, 0, 0, WeightSpec::finite(k, {1})}; }
  static StateSpec tau_plus_inf() { return {0, 1, 0, WeightSpec::finite(0, {1})}; }
  static StateSpec tau_minus_inf() { return {0, 0, 1, WeightSpec::finite(0, {1})}; }
  static StateSpec tau_w(WeightSpec w) { return {1, 0, 0, std::move(w)}; }

  void validate() const {
    if (lambda0 < 0 || lambda_plus < 0 || lambda_minus < 0 ||
        lambda0 + lambda_plus + lambda_minus != 1)
      throw std::domain_error("StateSpec: lambdas must be nonnegative and sum to 1");
  }
};

/// tau(a) = lambda_+ a_0(+inf) + lambda_- a_0(-inf) + lambda_0 sum w(k) a_0(k).
inline Scalar state_eval(const StateSpec& s, const AlgebraElement& a) {
  s.validate();
  const ECSeq& a0 = a.expectation();
  Scalar v = a0.right_tail() * Scalar(s.lambda_plus) +
             a0.left_tail() * Scalar(s.lambda_minus);
  if (s.lambda0 != 0) v += s.weights.sum_against(a0) * Scalar(s.lambda0);
  return v;
}

/// ||a||^2 in the GNS space of tau_w: sum_n sum_k w(k) |a_n(k)|^2, exact.
inline Rat gns_norm_sq(const AlgebraElement& a, const WeightSpec& w) {
  Rat total = 0;
  for (const auto& [n, an] : a.terms()) total += w.sum_abs_sq_against(an);
  return total;
}

inline double gns_norm(const AlgebraElement& a, const WeightSpec& w) {
  return std::sqrt(to_double(gns_norm_sq(a, w)));
}

enum class ImplementationKind { invariant_w, covariant_w, tau0, tau_pm_inf };

/// Implementation operator data for one GNS model.  For the weighted kinds
/// the operator acts on algebra elements; the exact path needs eta = beta -
/// alpha eventually constant, which also settles the eta-square-summability
/// requirement for the supported weight families.
struct ImplementationSpec {
  ImplementationKind kind = ImplementationKind::invariant_w;
  ELSeq beta;
  ELSeq alpha;
  Scalar c = Scalar(0);
  WeightSpec weights = WeightSpec::geometric(Rat(1, 2));

  void validate() const {
    if (kind == ImplementationKind::invariant_w ||
        kind == ImplementationKind::covariant_w) {
      if (beta.tail_slopes() != alpha.tail_slopes())
        throw std::domain_error(
            "ImplementationSpec: beta and alpha must share tail slopes for the "
            "exact weighted models");
      if (!(w_summable()))
        throw std::domain_error("ImplementationSpec: eta not square-summable");
    }
  }

  /// Closed-form check of sum |beta - alpha|^2 w(k) < inf.  For geometric
  /// tails any eventually constant eta is summable; for finite support any
  /// eta works.
  bool w_summable() const { return true; }

  ECSeq eta() const {
    ELSeq diff = beta - alpha;
    auto [sl, sr] = diff.tail_slopes();
    if (!sl.is_zero() || !sr.is_zero())
      throw std::domain_error("ImplementationSpec: eta must be eventually constant");
    const ECSeq& inc = diff.increments();
    long lo = std::min(inc.window_lo() - 1, -1L);
    long hi = std::max(inc.window_hi() + 1, 1L);
    return ECSeq::from_fn(
        lo, hi, [&](long k) { return diff.eval(k); }, diff.eval(lo), diff.eval(hi));
  }
};

/// Applies the weighted-model implementation operator to f in the algebra.
/// Invariant kind:  D f  = beta(K) f - f alpha(K), componentwise
///                  U^n (beta(k+n) - alpha(k)) f_n(k).
/// Covariant kind:  D~ f = U beta(K) f - f U alpha(K), componentwise
///                  U^{n+1} (beta(k+n) f_n(k) - alpha(k) f_n(k+1)).
inline AlgebraElement implement_apply(const ImplementationSpec& spec,
                                      const AlgebraElement& f) {
  spec.validate();
  const ELSeq& beta = spec.beta;
  const ELSeq& alpha = spec.alpha;
  AlgebraElement r;
  for (const auto& [n, fn] : f.terms()) {
    const ECSeq& binc = beta.increments();
    const ECSeq& ainc = alpha.increments();
    long am = std::abs(n);
    long lo = std::min({fn.window_lo(), binc.window_lo() - am,
                        ainc.window_lo(), -1L}) - am - 2;
    long hi = std::max({fn.window_hi() + 1, binc.window_hi() + am,
                        ainc.window_hi(), 1L}) + am + 2;
    if (spec.kind == ImplementationKind::invariant_w) {
      // tails: beta(k+n) - alpha(k) is constant beyond the combined windows
      ECSeq coeff = ECSeq::from_fn(
          lo, hi,
          [&](long k) { return (beta.eval(k + n) - alpha.eval(k)) * fn.at(k); },
          fn.left_tail() * (beta.eval(lo - 1 + n) - alpha.eval(lo - 1)),
          fn.right_tail() * (beta.eval(hi + 1 + n) - alpha.eval(hi + 1)));
      r.add_term(n, coeff);
    } else if (spec.kind == ImplementationKind::covariant_w) {
      ECSeq coeff = ECSeq::from_fn(
          lo, hi,
          [&](long k) {
            return beta.eval(k + n) * fn.at(k) - alpha.eval(k) * fn.at(k + 1);
          },
          fn.left_tail() * (beta.eval(lo - 1 + n) - alpha.eval(lo - 1)),
          fn.right_tail() * (beta.eval(hi + 1 + n) - alpha.eval(hi + 1)));
      r.add_term(n + 1, coeff);
    } else {
      throw std::domain_error(
          "implement_apply: diagonal models use implement_diag_models");
    }
  }
  return r;
}

/// Eigenvalue/diagonal descriptors of the remaining models.
struct DiagModelDescriptor {
  ImplementationKind kind;
  bool shifted = false;  // covariant tau0: E_n -> lambda(n) E_{n+1}
  std::function<Scalar(long)> lambda;
};

inline DiagModelDescriptor implement_diag_models(const ImplementationSpec& spec,
                                                 bool plus_infinity = true) {
  DiagModelDescriptor d;
  d.kind = spec.kind;
  if (spec.kind == ImplementationKind::tau0) {
    ELSeq beta = spec.beta;
    Scalar c = spec.c;
    d.lambda = [beta, c](long k) { return beta.eval(k) + c; };
  } else if (spec.kind == ImplementationKind::tau_pm_inf) {
    auto [sl, sr] = spec.beta.tail_slopes();
    Scalar slope = plus_infinity ? sr : sl;
    Scalar c = spec.c;
    d.lambda = [slope, c](long n) { return Scalar(Rat(n)) * slope + c; };
  } else if (spec.kind == ImplementationKind::covariant_w) {
    // covariant tau0 model: D~ E_n = beta(n) E_{n+1}
    d.shifted = true;
    ELSeq beta = spec.beta;
    d.lambda = [beta](long n) { return beta.eval(n); };
  } else {
    throw std::domain_error("implement_diag_models: weighted invariant kind has "
                            "no diagonal model");
  }
  return d;
}

}  // namespace qal
