#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qal/seqmodel.hpp"
#include "qal/states.hpp"

namespace qal {

struct ZeroBeta : std::runtime_error { using std::runtime_error::runtime_error; };
struct ZeroAlpha : std::runtime_error { using std::runtime_error::runtime_error; };
struct ZeroWeight : std::runtime_error { using std::runtime_error::runtime_error; };
struct NeitherOption : std::runtime_error { using std::runtime_error::runtime_error; };
struct EigenvalueCollision : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One Fourier component: (D_n f)(k) = beta(k+n) f(k) - alpha(k) f(k+1),
/// upper bidiagonal on l^2(Z).
struct ComponentOp {
  long n = 0;
  SeqModel beta;
  SeqModel alpha;

  std::complex<double> diag(long k) const { return beta.at(k + n); }
  std::complex<double> super(long k) const { return -alpha.at(k); }
};

/// Growth certificate c2 (|k|+1) <= |beta(k)| <= c1 (|k|+1), checked on a
/// window plus nonzero tail slopes.
struct GrowthCertificate {
  bool valid = false;
  double c1 = 0;
  double c2 = 0;
};

inline GrowthCertificate growth_certificate(const SeqModel& beta, long K) {
  GrowthCertificate g;
  if (!beta.tail_slopes_nonzero()) return g;
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (long k = -K; k <= K; ++k) {
    double ratio = std::abs(beta.at(k)) / (std::abs((double)k) + 1.0);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  if (lo <= 0) return g;
  g.valid = true;
  g.c1 = hi;
  g.c2 = lo;
  return g;
}

/// Gauge transform: cumulative-argument phases V(k) with V(k+1)/V(k) =
/// exp(i Arg beta(k)).  Conjugating the component by the shifted diagonals
/// W_m(k) = V(k+m) replaces the diagonal by |beta| and leaves the
/// superdiagonal untouched.
struct GaugeResult {
  std::vector<std::complex<double>> phases;  // V(k) on [lo, lo+size)
  long lo = 0;
  ComponentOp op;  // diagonal replaced by the |beta| magnitude sequence

  std::complex<double> V(long k) const {
    return phases[static_cast<size_t>(k - lo)];
  }
  long hi() const { return lo + static_cast<long>(phases.size()) - 1; }
};

inline GaugeResult gauge_abs_beta(const ComponentOp& op, long K) {
  GaugeResult g;
  long pad = std::abs(op.n) + 1;
  g.lo = -K - pad;
  g.phases.resize(static_cast<size_t>(2 * (K + pad) + 1));
  auto arg_beta = [&](long j) {
    auto b = op.beta.at(j);
    if (std::abs(b) == 0)
      throw ZeroBeta("gauge_abs_beta: beta vanishes at k=" + std::to_string(j));
    return std::arg(b);
  };
  double s = 0;
  for (long j = 0; j > g.lo; --j) s -= arg_beta(j - 1);
  for (long k = g.lo; k <= g.hi(); ++k) {
    g.phases[static_cast<size_t>(k - g.lo)] = std::polar(1.0, s);
    s += arg_beta(k);
  }
  g.op.n = op.n;
  g.op.beta = op.beta.magnitude();
  g.op.alpha = op.alpha;
  return g;
}

/// Residual of the conjugation identity: conj(V(k+n+1)) beta(k+n) V(k+n)
/// must equal |beta(k+n)| on the window; the superdiagonal is invariant by
/// construction.
inline double gauge_conjugation_residual(const ComponentOp& op, const GaugeResult& g,
                                         long K) {
  double worst = 0;
  for (long k = -K; k <= K; ++k) {
    auto b = op.beta.at(k + op.n);
    auto lhs = std::conj(g.V(k + op.n + 1)) * b * g.V(k + op.n);
    worst = std::max(worst, std::abs(lhs - std::abs(b)));
  }
  return worst;
}

/// Weight elimination: alpha~(k) = alpha(k) sqrt(w(k)/w(k+1)); geometric
/// families give the side-constant factors sqrt(q) below 0 and 1/sqrt(q)
/// from 0 on, exact when sqrt(q) is rational.
inline SeqModel unweight_alpha(const SeqModel& alpha, const WeightSpec& w) {
  if (!w.strictly_positive()) throw ZeroWeight("unweight_alpha: w must be positive");
  if (!w.is_geometric()) {
    // non-geometric positive families are not supported for the transform
    throw std::domain_error("unweight_alpha: geometric weight family required");
  }
  auto [f_left, f_right] = w.unweight_factors();
  // exact factors when q is a square of a rational
  std::optional<Rat> el, er;
  Rat q = w.q();
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  auto sn = boost::multiprecision::sqrt(num);
  auto sd = boost::multiprecision::sqrt(den);
  if (sn * sn == num && sd * sd == den) {
    el = Rat(sn, sd);
    er = Rat(sd, sn);
  }
  return alpha.side_scaled(f_left, f_right, el, er);
}

/// mu(k) with mu(0) = 1 and alpha(k) = beta(k) mu(k+1)/mu(k), stored as
/// log-magnitude plus phase to survive rapid growth; exact rational values
/// kept alongside when the inputs are exact.
class MuSeq {
 public:
  MuSeq() = default;

  long lo() const { return lo_; }
  long hi() const { return lo_ + static_cast<long>(logmag_.size()) - 1; }

  double log_abs(long k) const { return logmag_[idx(k)]; }
  double phase(long k) const { return phase_[idx(k)]; }
  std::complex<double> value(long k) const {
    return std::polar(std::exp(log_abs(k)), phase(k));
  }
  /// ratio mu(a)/mu(b) without overflow
  std::complex<double> ratio(long a, long b) const {
    return std::polar(std::exp(log_abs(a) - log_abs(b)), phase(a) - phase(b));
  }

  bool is_exact() const { return !exact_.empty(); }
  const Scalar& exact_at(long k) const { return exact_[idx(k)]; }

  friend MuSeq mu_from(const SeqModel& alpha, const SeqModel& beta, long K);

 private:
  size_t idx(long k) const {
    if (k < lo_ || k > hi()) throw std::out_of_range("MuSeq: index");
    return static_cast<size_t>(k - lo_);
  }

  long lo_ = 0;
  std::vector<double> logmag_;
  std::vector<double> phase_;
  std::vector<Scalar> exact_;
};

inline MuSeq mu_from(const SeqModel& alpha, const SeqModel& beta, long K) {
  MuSeq mu;
  mu.lo_ = -K;
  size_t n = static_cast<size_t>(2 * K + 1);
  mu.logmag_.assign(n, 0.0);
  mu.phase_.assign(n, 0.0);
  auto check = [&](long k) {
    if (std::abs(beta.at(k)) == 0)
      throw ZeroBeta("mu_from: beta vanishes at k=" + std::to_string(k));
    if (std::abs(alpha.at(k)) == 0)
      throw ZeroAlpha("mu_from: alpha vanishes at k=" + std::to_string(k));
  };
  // forward: mu(k+1) = mu(k) alpha(k)/beta(k); backward: mu(k) =
  // mu(k+1) beta(k)/alpha(k)
  double lm = 0, ph = 0;
  for (long k = 0; k < K; ++k) {
    check(k);
    auto r = alpha.at(k) / beta.at(k);
    lm += std::log(std::abs(r));
    ph += std::arg(r);
    mu.logmag_[static_cast<size_t>(k + 1 + K)] = lm;
    mu.phase_[static_cast<size_t>(k + 1 + K)] = ph;
  }
  lm = 0; ph = 0;
  for (long k = -1; k >= -K; --k) {
    check(k);
    auto r = beta.at(k) / alpha.at(k);
    lm += std::log(std::abs(r));
    ph += std::arg(r);
    mu.logmag_[static_cast<size_t>(k + K)] = lm;
    mu.phase_[static_cast<size_t>(k + K)] = ph;
  }
  if (alpha.is_exact() && beta.is_exact()) {
    mu.exact_.assign(n, Scalar(1));
    Scalar acc(1);
    for (long k = 0; k < K; ++k) {
      acc = acc * (*alpha.exact_at(k)) / (*beta.exact_at(k));
      mu.exact_[static_cast<size_t>(k + 1 + K)] = acc;
    }
    acc = Scalar(1);
    for (long k = -1; k >= -K; --k) {
      acc = acc * (*beta.exact_at(k)) / (*alpha.exact_at(k));
      mu.exact_[static_cast<size_t>(k + K)] = acc;
    }
  }
  return mu;
}

enum class TailVerdict { summable, not_summable, undetermined };

/// Formal kernels of D_n and D_n^*: h_n and h~_n evaluated in log scale,
/// exactly when the data is rational, with per-side summability verdicts.
struct KernelVectors {
  long n = 0;
  long lo = 0, hi = 0;
  std::vector<double> h_logmag, h_phase;
  std::vector<double> ht_logmag, ht_phase;
  std::vector<Scalar> h_exact, ht_exact;  // empty unless exact inputs
  TailVerdict h_right = TailVerdict::undetermined;
  TailVerdict h_left = TailVerdict::undetermined;
  TailVerdict ht_right = TailVerdict::undetermined;
  TailVerdict ht_left = TailVerdict::undetermined;

  size_t idx(long k) const { return static_cast<size_t>(k - lo); }
  std::complex<double> h(long k) const {
    return std::polar(std::exp(h_logmag[idx(k)]), h_phase[idx(k)]);
  }
  std::complex<double> ht(long k) const {
    return std::polar(std::exp(ht_logmag[idx(k)]), ht_phase[idx(k)]);
  }
  double h_log_abs(long k) const { return h_logmag[idx(k)]; }
  double ht_log_abs(long k) const { return ht_logmag[idx(k)]; }
  bool is_exact() const { return !h_exact.empty(); }
};

namespace detail {

inline TailVerdict side_verdict(const std::vector<double>& logmag, long lo, long k0,
                                long k1) {
  // geometric trend toward the edge: change of log|.| per step walked from
  // k0 to k1 (k1 is the window edge on either side)
  auto v = [&](long k) { return logmag[static_cast<size_t>(k - lo)]; };
  double step = (v(k1) - v(k0)) / (double)std::labs(k1 - k0);
  if (step < -0.05) return TailVerdict::summable;
  if (step > 0.05) return TailVerdict::not_summable;
  // polynomial regime: exponent estimate log|h| / log(1+|k|)
  double edge = std::abs((double)k1);
  if (edge < 8) return TailVerdict::undetermined;
  double expo = v(k1) / std::log(1.0 + edge);
  if (expo < -0.75) return TailVerdict::summable;
  if (expo > -0.5) return TailVerdict::not_summable;
  return TailVerdict::undetermined;
}

}  // namespace detail

inline KernelVectors formal_kernels(const ComponentOp& op, const MuSeq& mu) {
  long n = op.n;
  long K = std::min(-mu.lo(), mu.hi()) - std::max(std::abs(n) + 1, 1L);
  if (K < 8) throw std::domain_error("formal_kernels: mu window too small");
  KernelVectors kv;
  kv.n = n;
  kv.lo = -K;
  kv.hi = K;
  size_t sz = static_cast<size_t>(2 * K + 1);
  kv.h_logmag.assign(sz, 0); kv.h_phase.assign(sz, 0);
  kv.ht_logmag.assign(sz, 0); kv.ht_phase.assign(sz, 0);

  auto log_beta_prod = [&](long k, long j0, long j1, double& lm, double& ph) {
    lm = 0; ph = 0;
    for (long j = j0; j <= j1; ++j) {
      auto b = op.beta.at(j + k);
      if (std::abs(b) == 0)
        throw ZeroBeta("formal_kernels: beta vanishes at k=" + std::to_string(j + k));
      lm += std::log(std::abs(b));
      ph += std::arg(b);
    }
  };

  for (long k = -K; k <= K; ++k) {
    double lm = 0, ph = 0;
    if (n > 0) log_beta_prod(k, 0, n - 1, lm, ph);
    else if (n < 0) { log_beta_prod(k, n, -1, lm, ph); lm = -lm; ph = -ph; }
    kv.h_logmag[kv.idx(k)] = -mu.log_abs(k) + lm;
    kv.h_phase[kv.idx(k)] = -mu.phase(k) + ph;

    lm = 0; ph = 0;
    if (n >= 0) { log_beta_prod(k, 0, n, lm, ph); lm = -lm; ph = -ph; }
    else log_beta_prod(k, n + 1, -1, lm, ph);
    kv.ht_logmag[kv.idx(k)] = mu.log_abs(k) + lm;
    kv.ht_phase[kv.idx(k)] = -mu.phase(k) + ph;
  }

  if (mu.is_exact() && op.beta.is_exact()) {
    kv.h_exact.assign(sz, Scalar(0));
    kv.ht_exact.assign(sz, Scalar(0));
    for (long k = -K; k <= K; ++k) {
      Scalar prod(1);
      if (n > 0)
        for (long j = 0; j <= n - 1; ++j) prod *= *op.beta.exact_at(j + k);
      else if (n < 0)
        for (long j = n; j <= -1; ++j) prod = prod / (*op.beta.exact_at(j + k));
      kv.h_exact[kv.idx(k)] = prod / mu.exact_at(k);

      Scalar prodt(1);
      if (n >= 0)
        for (long j = 0; j <= n; ++j) prodt = prodt / (*op.beta.exact_at(j + k));
      else
        for (long j = n + 1; j <= -1; ++j) prodt *= *op.beta.exact_at(j + k);
      kv.ht_exact[kv.idx(k)] = prodt * mu.exact_at(k).conj();
    }
  }

  long e0 = K / 2, e1 = K;
  kv.h_right = detail::side_verdict(kv.h_logmag, kv.lo, e0, e1);
  kv.h_left = detail::side_verdict(kv.h_logmag, kv.lo, -e0, -e1);
  kv.ht_right = detail::side_verdict(kv.ht_logmag, kv.lo, e0, e1);
  kv.ht_left = detail::side_verdict(kv.ht_logmag, kv.lo, -e0, -e1);
  return kv;
}

/// Pointwise residuals of (D_n h)(k) and (D_n^* h~)(k) on the interior;
/// exact zeros when the data is rational.
struct KernelResiduals {
  double max_rel_h = 0;
  double max_rel_ht = 0;
  bool exact_zero_h = false;
  bool exact_zero_ht = false;
};

inline KernelResiduals kernel_residuals(const ComponentOp& op, const MuSeq& mu,
                                        const KernelVectors& kv) {
  KernelResiduals r;
  long n = op.n;
  // alpha(k) = beta(k) mu(k+1)/mu(k)
  auto alpha_at = [&](long k) { return op.beta.at(k) * mu.ratio(k + 1, k); };
  for (long k = kv.lo; k < kv.hi; ++k) {
    auto dh = op.beta.at(k + n) * kv.h(k) - alpha_at(k) * kv.h(k + 1);
    double scale = std::abs(op.beta.at(k + n) * kv.h(k)) +
                   std::abs(alpha_at(k) * kv.h(k + 1));
    if (scale > 0) r.max_rel_h = std::max(r.max_rel_h, std::abs(dh) / scale);
  }
  // (D_n^* g)(k) = conj(beta(k+n)) g(k) - conj(alpha(k-1)) g(k-1)
  for (long k = kv.lo + 1; k <= kv.hi; ++k) {
    auto dht = std::conj(op.beta.at(k + n)) * kv.ht(k) -
               std::conj(alpha_at(k - 1)) * kv.ht(k - 1);
    double scale = std::abs(op.beta.at(k + n) * kv.ht(k)) +
                   std::abs(alpha_at(k - 1) * kv.ht(k - 1));
    if (scale > 0) r.max_rel_ht = std::max(r.max_rel_ht, std::abs(dht) / scale);
  }
  if (kv.is_exact() && op.beta.is_exact() && mu.is_exact()) {
    r.exact_zero_h = true;
    r.exact_zero_ht = true;
    auto alpha_ex = [&](long k) {
      return (*op.beta.exact_at(k)) * mu.exact_at(k + 1) / mu.exact_at(k);
    };
    for (long k = kv.lo; k < kv.hi; ++k) {
      Scalar dh = (*op.beta.exact_at(k + n)) * kv.h_exact[kv.idx(k)] -
                  alpha_ex(k) * kv.h_exact[kv.idx(k + 1)];
      if (!dh.is_zero()) r.exact_zero_h = false;
    }
    for (long k = kv.lo + 1; k <= kv.hi; ++k) {
      Scalar dht = op.beta.exact_at(k + n)->conj() * kv.ht_exact[kv.idx(k)] -
                   alpha_ex(k - 1).conj() * kv.ht_exact[kv.idx(k - 1)];
      if (!dht.is_zero()) r.exact_zero_ht = false;
    }
  }
  return r;
}

/// Partial sums of |h_n(k) h~_n(k)| over 0 <= k <= K and -K <= k < 0; both
/// diverge logarithmically, the divergence evidence behind the pairing
/// estimate.
inline std::pair<double, double> pairing_partial_sums(const KernelVectors& kv,
                                                      long K) {
  double right = 0, left = 0;
  for (long k = 0; k <= std::min(K, kv.hi); ++k)
    right += std::exp(kv.h_log_abs(k) + kv.ht_log_abs(k));
  for (long k = std::max(-K, kv.lo); k < 0; ++k)
    left += std::exp(kv.h_log_abs(k) + kv.ht_log_abs(k));
  return {left, right};
}

/// The l^2 column eta_n with (D_n eta_n) = chi_0: zero on the side where
/// the formal kernel blows up, a multiple of h_n on the summable side.
struct ResolventColumn {
  long n = 0;
  long lo = 0, hi = 0;
  std::vector<std::complex<double>> values;
  bool support_right = false;  // support on k >= 1 (else k <= 0)
  std::complex<double> c_plus{0, 0}, c_minus{0, 0};
  double max_residual = 0;

  std::complex<double> at(long k) const {
    return values[static_cast<size_t>(k - lo)];
  }
  std::complex<double> jump() const { return c_plus - c_minus; }
};

inline ResolventColumn resolvent_column(const ComponentOp& op, const MuSeq& mu) {
  KernelVectors kv = formal_kernels(op, mu);
  bool right_ok = kv.h_right == TailVerdict::summable;
  bool left_ok = kv.h_left == TailVerdict::summable;
  if (right_ok == left_ok)
    throw NeitherOption(
        "resolvent_column: formal kernel must be summable on exactly one side");
  ResolventColumn rc;
  rc.n = op.n;
  rc.lo = kv.lo;
  rc.hi = kv.hi;
  rc.values.assign(static_cast<size_t>(rc.hi - rc.lo + 1), {0, 0});
  auto alpha_at = [&](long k) { return op.beta.at(k) * mu.ratio(k + 1, k); };
  long n = op.n;
  if (right_ok) {
    // eta = 0 for k <= 0; equation at k = 0: -alpha(0) eta(1) = 1
    rc.support_right = true;
    auto a0 = alpha_at(0);
    std::complex<double> eta1 = -1.0 / a0;
    rc.values[static_cast<size_t>(1 - rc.lo)] = eta1;
    rc.c_plus = eta1 / kv.h(1);
    rc.c_minus = {0, 0};
    for (long k = 1; k < rc.hi; ++k) {
      // homogeneous upward: eta(k+1) = beta(k+n) eta(k) / alpha(k)
      auto next = op.beta.at(k + n) * rc.at(k) / alpha_at(k);
      rc.values[static_cast<size_t>(k + 1 - rc.lo)] = next;
    }
  } else {
    // eta = 0 for k >= 1; equation at k = 0: beta(n) eta(0) = 1
    rc.support_right = false;
    auto b = op.beta.at(n);
    std::complex<double> eta0 = 1.0 / b;
    rc.values[static_cast<size_t>(0 - rc.lo)] = eta0;
    rc.c_minus = eta0 / kv.h(0);
    rc.c_plus = {0, 0};
    for (long k = -1; k >= rc.lo; --k) {
      // downward: eta(k) = alpha(k) eta(k+1) / beta(k+n)
      auto v = alpha_at(k) * rc.at(k + 1) / op.beta.at(k + n);
      rc.values[static_cast<size_t>(k - rc.lo)] = v;
    }
  }
  // residual of the defining equation on the interior
  for (long k = rc.lo; k < rc.hi; ++k) {
    auto lhs = op.beta.at(k + n) * rc.at(k) - alpha_at(k) * rc.at(k + 1);
    double rhs = (k == 0) ? 1.0 : 0.0;
    rc.max_residual = std::max(rc.max_residual, std::abs(lhs - rhs));
  }
  return rc;
}

/// Sub-diagonal coefficients of D_n^{-1}: Delta(k, k-1) =
/// mu(k-1)/(beta(k-1) mu(k)), independent of n; their sup bounds
/// ||D_n^{-1}|| from below.
struct SubdiagObstruction {
  std::vector<std::pair<long, double>> values;  // (k, |Delta(k,k-1)|)
  double sup_abs = 0;
  long argmax = 0;
  double inverse_norm_lower_bound() const { return sup_abs; }
  double sigma_min_ceiling() const { return sup_abs > 0 ? 1.0 / sup_abs : 0; }
};

inline SubdiagObstruction subdiag_obstruction(const ComponentOp& op, const MuSeq& mu,
                                              long k_lo, long k_hi) {
  SubdiagObstruction s;
  for (long k = k_lo; k <= k_hi; ++k) {
    auto b = op.beta.at(k - 1);
    if (std::abs(b) == 0)
      throw ZeroBeta("subdiag_obstruction: beta vanishes at k=" + std::to_string(k - 1));
    double v = std::exp(mu.log_abs(k - 1) - mu.log_abs(k)) / std::abs(b);
    s.values.emplace_back(k, v);
    if (v > s.sup_abs) { s.sup_abs = v; s.argmax = k; }
  }
  return s;
}

/// The shared-eigenvalue construction at lambda = beta(l): zero above l-n,
/// downward recursion below, with an independently evaluated residual of
/// (D_n - lambda) f on the window.
struct DegenerateEigvec {
  long n = 0, l = 0;
  long lo = 0, hi = 0;
  std::vector<std::complex<double>> values;
  std::complex<double> lambda;
  double max_rel_residual = 0;
  double tail_logmag_slope = 0;  // slope of log|f(k)| in k at the left edge;
                                 // positive means decay toward -infinity (l^2)
  bool trivial = false;
  std::string diagnostic;
};

inline DegenerateEigvec degenerate_eigvec(const ComponentOp& op, const MuSeq& mu,
                                          long l, long lo, long hi) {
  DegenerateEigvec d;
  d.n = op.n;
  d.l = l;
  d.lo = lo;
  d.hi = hi;
  d.lambda = op.beta.at(l);
  long cut = l - op.n;  // f(k) = 0 for k > cut
  if (cut < lo) {
    d.trivial = true;
    d.diagnostic = "support entirely outside window";
    return d;
  }
  // precondition: beta(j) != beta(l) for all j < l (checked on the window)
  for (long j = lo + op.n; j < l; ++j) {
    if (std::abs(op.beta.at(j) - d.lambda) == 0)
      throw EigenvalueCollision("degenerate_eigvec: beta(" + std::to_string(j) +
                                ") equals beta(l)");
  }
  d.values.assign(static_cast<size_t>(hi - lo + 1), {0, 0});
  auto alpha_at = [&](long k) { return op.beta.at(k) * mu.ratio(k + 1, k); };
  auto set = [&](long k, std::complex<double> v) {
    d.values[static_cast<size_t>(k - lo)] = v;
  };
  auto get = [&](long k) { return d.values[static_cast<size_t>(k - lo)]; };
  if (cut <= hi) set(cut, std::exp(-mu.log_abs(cut)));
  // downward: (beta(k+n) - lambda) f(k) = alpha(k) f(k+1)
  for (long k = std::min(cut, hi) - 1; k >= lo; --k) {
    auto denom = op.beta.at(k + op.n) - d.lambda;
    set(k, alpha_at(k) * get(k + 1) / denom);
  }
  // residual of the eigenvalue equation, relative scale per row
  for (long k = lo; k < hi; ++k) {
    auto r = (op.beta.at(k + op.n) - d.lambda) * get(k) - alpha_at(k) * get(k + 1);
    double scale = std::abs((op.beta.at(k + op.n) - d.lambda) * get(k)) +
                   std::abs(alpha_at(k) * get(k + 1)) + std::abs(d.lambda * get(k));
    if (scale > 0)
      d.max_rel_residual = std::max(d.max_rel_residual, std::abs(r) / scale);
  }
  // l^2 certificate: |f(k)| ~ const/|mu(k)| on the left tail
  long e0 = lo + (std::min(cut, hi) - lo) / 4;
  if (e0 > lo) {
    double num = std::log(std::abs(get(e0))) - std::log(std::abs(get(lo)));
    d.tail_logmag_slope = num / (double)(e0 - lo);
  }
  bool all_zero = true;
  for (const auto& v : d.values)
    if (std::abs(v) > 0) { all_zero = false; break; }
  if (all_zero) {
    d.trivial = true;
    d.diagnostic = "vector vanished on window";
  }
  return d;
}

/// Rapid growth/decay dichotomy of mu.  The trend log|mu(k)|/log(1+|k|)
/// must clear every exponent in the list at the window edge; a heuristic
/// stand-in for the for-all-N quantifier, window-limited by construction.
enum class MuClass { option1, option2, neither };

struct MuClassification {
  MuClass verdict = MuClass::neither;
  double trend_right = 0;
  double trend_left = 0;
};

inline MuClassification classify_mu(const MuSeq& mu,
                                    const std::vector<double>& exponents = {4, 8, 16}) {
  long K = std::min(-mu.lo(), mu.hi());
  if (K < 64) throw std::domain_error("classify_mu: window must reach |k| >= 64");
  MuClassification c;
  double denom = std::log(1.0 + (double)K);
  c.trend_right = mu.log_abs(K) / denom;
  c.trend_left = mu.log_abs(-K) / denom;
  double needed = 0;
  for (double e : exponents) needed = std::max(needed, e);
  // monotone trend requirement: the half-window trend must not exceed the
  // edge trend in magnitude direction
  double mid_denom = std::log(1.0 + (double)(K / 2));
  double mid_right = mu.log_abs(K / 2) / mid_denom;
  double mid_left = mu.log_abs(-K / 2) / mid_denom;
  bool grow_r = c.trend_right > needed && c.trend_right >= mid_right;
  bool decay_r = c.trend_right < -needed && c.trend_right <= mid_right;
  bool grow_l = c.trend_left > needed && c.trend_left >= mid_left;
  bool decay_l = c.trend_left < -needed && c.trend_left <= mid_left;
  if (grow_r && decay_l) c.verdict = MuClass::option1;
  else if (decay_r && grow_l) c.verdict = MuClass::option2;
  else c.verdict = MuClass::neither;
  return c;
}

}  // namespace qal
