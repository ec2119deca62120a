#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qal/ecseq.hpp"

namespace qal {

/// Root of unity used as the exact circle-action phase.  Exact mode keeps
/// orders dividing 4, the orders whose values stay Gaussian-rational.
class UnitPhase {
 public:
  /// z = exp(2*pi*i*q/p).
  static UnitPhase root_of_unity(long q, long p) {
    if (p <= 0) throw std::invalid_argument("UnitPhase: order must be positive");
    long r = ((q % p) + p) % p;
    // reduce q/p
    long g = std::gcd(r, p);
    if (g > 0 && r != 0) { r /= g; p /= g; }
    if (r == 0) p = 1;
    if (p != 1 && p != 2 && p != 4)
      throw std::invalid_argument(
          "UnitPhase: exact mode supports orders 1, 2, 4 only");
    return UnitPhase(r, p);
  }

  static UnitPhase one() { return UnitPhase(0, 1); }
  static UnitPhase minus_one() { return UnitPhase(1, 2); }
  static UnitPhase i() { return UnitPhase(1, 4); }

  /// z^n as an exact scalar.
  Scalar power(long n) const {
    long e = (((q_ * (n % p_)) % p_) + p_) % p_;
    // e indexes the 4th roots when p_ == 4, the 2nd roots when p_ == 2
    long quarter = e * (4 / p_);
    switch (quarter) {
      case 0: return Scalar(1);
      case 1: return Scalar(Rat(0), Rat(1));
      case 2: return Scalar(-1);
      default: return Scalar(Rat(0), Rat(-1));
    }
  }

  Scalar value() const { return power(1); }
  Scalar conj_value() const { return power(-1); }

 private:
  UnitPhase(long q, long p) : q_(q), p_(p) {}
  long q_;
  long p_;
};

/// Element of the polynomial algebra: finite sum over n of U^n a_n(K), each
/// coefficient a_n an eventually constant sequence.  Terms that canonicalize
/// to zero are dropped.
class AlgebraElement {
 public:
  AlgebraElement() = default;

  static AlgebraElement zero() { return {}; }

  static AlgebraElement identity() {
    return single(0, ECSeq::constant(Scalar(1)));
  }

  static AlgebraElement single(long n, ECSeq coeff) {
    AlgebraElement e;
    e.set_term(n, std::move(coeff));
    return e;
  }

  /// The bilateral shift U.
  static AlgebraElement make_U() { return single(1, ECSeq::constant(Scalar(1))); }

  static AlgebraElement make_Ustar() {
    return single(-1, ECSeq::constant(Scalar(1)));
  }

  /// Diagonal element a(K).
  static AlgebraElement make_diag(ECSeq a) { return single(0, std::move(a)); }

  /// Weighted bilateral shift U_r = U a(K), a = r below 0 and 1 from 0 on.
  static AlgebraElement make_Ur(const Rat& r) {
    if (!(r > 0 && r < 1))
      throw std::domain_error("make_Ur: r must lie in (0,1)");
    return single(1, ECSeq::step(Scalar(r), Scalar(1), 0));
  }

  const std::map<long, ECSeq>& terms() const { return terms_; }

  const ECSeq& coeff(long n) const {
    static const ECSeq kZero{};
    auto it = terms_.find(n);
    return it == terms_.end() ? kZero : it->second;
  }

  bool is_zero() const { return terms_.empty(); }

  long max_abs_shift() const {
    long m = 0;
    for (const auto& [n, _] : terms_) m = std::max(m, std::abs(n));
    return m;
  }

  void set_term(long n, ECSeq coeff) {
    if (coeff.is_zero())
      terms_.erase(n);
    else
      terms_[n] = std::move(coeff);
  }

  void add_term(long n, const ECSeq& coeff) {
    auto it = terms_.find(n);
    if (it == terms_.end()) {
      set_term(n, coeff);
    } else {
      ECSeq s = it->second + coeff;
      if (s.is_zero())
        terms_.erase(it);
      else
        it->second = std::move(s);
    }
  }

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement r = a;
    for (const auto& [n, c] : b.terms_) r.add_term(n, c);
    return r;
  }

  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement r = a;
    for (const auto& [n, c] : b.terms_) r.add_term(n, c.scaled(Scalar(-1)));
    return r;
  }

  AlgebraElement scaled(const Scalar& c) const {
    AlgebraElement r;
    for (const auto& [n, coeff] : terms_) r.set_term(n, coeff.scaled(c));
    return r;
  }

  /// (U^n a_n(K))(U^m b_m(K)) = U^{n+m} a_n(K+m) b_m(K), extended bilinearly.
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement r;
    for (const auto& [n, an] : a.terms_)
      for (const auto& [m, bm] : b.terms_)
        r.add_term(n + m, an.shift(m) * bm);
    return r;
  }

  /// (U^n a_n(K))* = U^{-n} conj(a_n)(K - n).
  AlgebraElement star() const {
    AlgebraElement r;
    for (const auto& [n, an] : terms_) r.set_term(-n, an.conj().shift(-n));
    return r;
  }

  /// Circle action: term n picks up the factor z^n.
  AlgebraElement rho(const UnitPhase& z) const {
    AlgebraElement r;
    for (const auto& [n, an] : terms_) r.set_term(n, an.scaled(z.power(n)));
    return r;
  }

  /// The natural expectation onto the diagonal: a -> a_0(K).
  const ECSeq& expectation() const { return coeff(0); }

  /// Triangle-inequality upper bound on the operator norm, sum of sup|a_n|;
  /// exact equality for single-term elements.
  double norm_upper_bound() const {
    double s = 0;
    for (const auto& [n, an] : terms_) s += an.supnorm();
    return s;
  }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) {
    return !(a == b);
  }

 private:
  std::map<long, ECSeq> terms_;
};

/// Exact matrix of an element on span{E_k : k in [lo, hi]} in the defining
/// representation.  Columns closer to the boundary than the largest shift
/// see truncated action and are flagged.
struct BasisActionMatrix {
  long lo = 0;
  long hi = -1;
  std::vector<std::vector<Scalar>> entries;  // entries[row - lo][col - lo]
  std::vector<bool> edge_affected;           // per column

  long size() const { return hi - lo + 1; }
  const Scalar& at(long row, long col) const {
    return entries[static_cast<size_t>(row - lo)][static_cast<size_t>(col - lo)];
  }
};

inline BasisActionMatrix basis_action(const AlgebraElement& a, long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("basis_action: empty window");
  BasisActionMatrix m;
  m.lo = lo;
  m.hi = hi;
  long n_rows = hi - lo + 1;
  m.entries.assign(static_cast<size_t>(n_rows),
                   std::vector<Scalar>(static_cast<size_t>(n_rows), Scalar(0)));
  long shift = a.max_abs_shift();
  m.edge_affected.assign(static_cast<size_t>(n_rows), false);
  for (long col = lo; col <= hi; ++col) {
    if (col - lo < shift || hi - col < shift)
      m.edge_affected[static_cast<size_t>(col - lo)] = true;
    // a E_col = sum_n a_n(col) E_{col + n}
    for (const auto& [n, an] : a.terms()) {
      long row = col + n;
      if (row >= lo && row <= hi)
        m.entries[static_cast<size_t>(row - lo)][static_cast<size_t>(col - lo)] =
            an.at(col);
    }
  }
  return m;
}

inline BasisActionMatrix matrix_product(const BasisActionMatrix& a,
                                        const BasisActionMatrix& b) {
  BasisActionMatrix m;
  m.lo = a.lo;
  m.hi = a.hi;
  long n = a.size();
  m.entries.assign(static_cast<size_t>(n),
                   std::vector<Scalar>(static_cast<size_t>(n), Scalar(0)));
  for (long i = 0; i < n; ++i)
    for (long k = 0; k < n; ++k) {
      const Scalar& aik = a.entries[static_cast<size_t>(i)][static_cast<size_t>(k)];
      if (aik.is_zero()) continue;
      for (long j = 0; j < n; ++j) {
        const Scalar& bkj = b.entries[static_cast<size_t>(k)][static_cast<size_t>(j)];
        if (!bkj.is_zero())
          m.entries[static_cast<size_t>(i)][static_cast<size_t>(j)] += aik * bkj;
      }
    }
  return m;
}

/// Exact residuals of the generator identities: U- and U*-decompositions,
/// the commutator formula for P_0, the projection formulas for P_{>=0} and
/// P_{<0}, and P_k = U^k P_0 U^{-k}.  All must come back zero.
struct GeneratorIdentityReport {
  std::vector<std::pair<std::string, AlgebraElement>> residuals;
  bool all_zero() const {
    for (const auto& [_, r] : residuals)
      if (!r.is_zero()) return false;
    return true;
  }
};

inline GeneratorIdentityReport verify_generator_identities(const Rat& r) {
  if (!(r > 0 && r < 1))
    throw std::domain_error("verify_generator_identities: r must lie in (0,1)");
  GeneratorIdentityReport rep;
  const AlgebraElement U = AlgebraElement::make_U();
  const AlgebraElement Us = AlgebraElement::make_Ustar();
  const AlgebraElement I = AlgebraElement::identity();
  const AlgebraElement Ur = AlgebraElement::make_Ur(r);
  const AlgebraElement Urs = Ur.star();

  Scalar c1{Rat(1 + r + r * r) / ((1 + r) * r)};
  Scalar c2{Rat(1) / ((1 + r) * r)};
  rep.residuals.emplace_back(
      "U_decomposition", U - (Ur.scaled(c1) - (Ur * Urs * Ur).scaled(c2)));
  rep.residuals.emplace_back(
      "Ustar_decomposition", Us - (Urs.scaled(c1) - (Urs * Ur * Urs).scaled(c2)));

  Scalar inv{Rat(1) / (1 - r * r)};
  const AlgebraElement P0 = AlgebraElement::make_diag(ECSeq::delta(0));
  rep.residuals.emplace_back("P0_commutator",
                             P0 - (Urs * Ur - Ur * Urs).scaled(inv));

  const AlgebraElement Pge0 =
      AlgebraElement::make_diag(ECSeq::step(Scalar(0), Scalar(1), 0));
  rep.residuals.emplace_back(
      "P_ge0", Pge0 - (Urs * Ur - I.scaled(Scalar(r * r))).scaled(inv));
  const AlgebraElement Plt0 =
      AlgebraElement::make_diag(ECSeq::step(Scalar(1), Scalar(0), 0));
  rep.residuals.emplace_back(
      "P_lt0", Plt0 - (I - (Urs * Ur - I.scaled(Scalar(r * r))).scaled(inv)));

  for (long k : {-2L, -1L, 1L, 2L}) {
    AlgebraElement Uk = AlgebraElement::single(k, ECSeq::constant(Scalar(1)));
    AlgebraElement Umk = Uk.star();
    const AlgebraElement Pk = AlgebraElement::make_diag(ECSeq::delta(k));
    rep.residuals.emplace_back("P_" + std::to_string(k), Pk - Uk * P0 * Umk);
  }
  return rep;
}

}  // namespace qal
