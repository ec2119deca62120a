#pragma once

#include <stdexcept>

#include "qal/algebra.hpp"
#include "qal/elseq.hpp"

namespace qal {

struct NotCovariantImage : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// d(a) = [beta(K), a] with the additive constant fixed by beta(0) = 0.
/// Kills every diagonal element; commutes with the circle action.
class InvariantDerivation {
 public:
  explicit InvariantDerivation(ELSeq beta)
      : beta_(Scalar(0), beta.increments()) {}

  const ELSeq& beta() const { return beta_; }

  AlgebraElement apply(const AlgebraElement& a) const {
    AlgebraElement r;
    for (const auto& [n, an] : a.terms()) {
      if (n == 0) continue;
      r.set_term(n, beta_.shifted_difference(n) * an);
    }
    return r;
  }

 private:
  ELSeq beta_;
};

/// d(a) = [U beta(K), a]; transforms with weight conj(z) under the circle
/// action.  No normalization freedom in beta.
class CovariantDerivation {
 public:
  explicit CovariantDerivation(ELSeq beta) : beta_(std::move(beta)) {}

  const ELSeq& beta() const { return beta_; }

  /// Term rule: U^n a_n(K) -> U^{n+1} (beta(K+n) a_n(K) - beta(K) a_n(K+1)).
  AlgebraElement apply(const AlgebraElement& a) const {
    AlgebraElement r;
    for (const auto& [n, an] : a.terms()) {
      r.add_term(n + 1, weighted_difference(an, n));
    }
    return r;
  }

 private:
  ECSeq weighted_difference(const ECSeq& an, long n) const {
    auto [sl, sr] = beta_.tail_slopes();
    const ECSeq& inc = beta_.increments();
    long am = std::abs(n);
    long lo = std::min({an.window_lo(), inc.window_lo() - am, -1L}) - am - 2;
    long hi = std::max({an.window_hi() + 1, inc.window_hi() + am, 1L}) + am + 2;
    Scalar left = an.left_tail() * Scalar(Rat(n)) * sl;
    Scalar right = an.right_tail() * Scalar(Rat(n)) * sr;
    return ECSeq::from_fn(
        lo, hi,
        [&](long k) {
          return beta_.eval(k + n) * an.at(k) - beta_.eval(k) * an.at(k + 1);
        },
        left, right);
  }

  ELSeq beta_;
};

/// Rebuilds the invariant symbol from d(U) = U c(K): increments(k) = c(k-1),
/// anchor 0.
inline InvariantDerivation recover_invariant(const AlgebraElement& dU) {
  for (const auto& [n, _] : dU.terms())
    if (n != 1)
      throw NotCovariantImage("recover_invariant: d(U) must be of the form U c(K)");
  return InvariantDerivation(ELSeq(Scalar(0), dU.coeff(1).shift(-1)));
}

/// Rebuilds the covariant symbol from d(U*) = alpha(K) and d(P_{>=1}) =
/// -beta(0) U P_0: increments(k) = -alpha(k), anchor from the second datum.
inline CovariantDerivation recover_covariant(const AlgebraElement& dUstar,
                                             const AlgebraElement& dP1) {
  for (const auto& [n, _] : dUstar.terms())
    if (n != 0)
      throw InconsistentData("recover_covariant: d(U*) must be diagonal");
  for (const auto& [n, c] : dP1.terms()) {
    if (n != 1)
      throw InconsistentData("recover_covariant: d(P_{>=1}) must be U g(K)");
    if (!c.left_tail().is_zero() || !c.right_tail().is_zero() ||
        c.window_lo() < 0 || c.window_hi() > 0)
      throw InconsistentData("recover_covariant: g must be supported at k = 0");
  }
  const ECSeq& alpha = dUstar.coeff(0);
  Scalar anchor = -dP1.coeff(1).at(0);
  CovariantDerivation d(ELSeq(anchor, alpha.scaled(Scalar(-1))));
  // cross-check the two inputs against the recovered symbol
  AlgebraElement Us = AlgebraElement::make_Ustar();
  if (d.apply(Us) != dUstar)
    throw InconsistentData("recover_covariant: alpha conflicts with anchor datum");
  return d;
}

/// Computable certificate for approximate innerness: the increments must
/// vanish at both infinities, and freezing beta outside [-N, N] gives inner
/// approximants with exact generator-norm error sup_{|k| > N} |inc(k)|.
struct ApproxInnerReport {
  bool is_c0 = false;
  ECSeq increments;

  /// Cutoff symbol mu_N: beta frozen outside [-N, N].
  ELSeq cutoff(long N) const {
    ECSeq trimmed = ECSeq::from_fn(
        -N, N, [&](long k) { return increments.at(k); }, Scalar(0), Scalar(0));
    return ELSeq(Scalar(0), trimmed);
  }

  Rat error_sq_at(long N) const { return increments.tail_sup_abs_sq(N); }
  double error_at(long N) const { return std::sqrt(to_double(error_sq_at(N))); }
};

inline ApproxInnerReport approx_inner_report(const ELSeq& beta) {
  ApproxInnerReport rep;
  rep.increments = beta.increments();
  auto [sl, sr] = beta.tail_slopes();
  rep.is_c0 = sl.is_zero() && sr.is_zero();
  return rep;
}

}  // namespace qal
