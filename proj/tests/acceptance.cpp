// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qal/algebra.hpp"
#include "qal/component_ops.hpp"
#include "qal/config.hpp"
#include "qal/derivations.hpp"
#include "qal/report.hpp"
#include "qal/spectral_lab.hpp"
#include "qal/states.hpp"
#include "qal/testgen.hpp"

using namespace qal;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name,
               const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" [exception: ") + e.what() + "]";
  }
  std::printf("criterion %2d (%s): %s%s\n", number, name.c_str(),
              ok ? "PASS" : "FAIL", note.c_str());
  if (!ok) ++g_failures;
}

ECSeq compact_bump(SeededGen& gen) {
  return ECSeq::from_fn(
      -2, 2, [&](long) { return gen.scalar(); }, Scalar(0), Scalar(0));
}

// --------------------------------------------------------------- criterion 1
bool exact_identity_suite() {
  for (const Rat& r : {Rat(1, 2), Rat(1, 3), Rat(9, 10)})
    if (!verify_generator_identities(r).all_zero()) return false;
  return true;
}

// --------------------------------------------------------------- criterion 2
bool algebra_oracle() {
  SeededGen gen(20240817);
  const long lo = -12, hi = 12;
  for (int i = 0; i < 200; ++i) {
    AlgebraElement a = gen.element(-3, 3, -3, 3);
    AlgebraElement b = gen.element(-3, 3, -3, 3);
    BasisActionMatrix direct = basis_action(a * b, lo, hi);
    BasisActionMatrix prod =
        matrix_product(basis_action(a, lo, hi), basis_action(b, lo, hi));
    long pad = a.max_abs_shift() + b.max_abs_shift();
    for (long col = lo + pad; col <= hi - pad; ++col)
      for (long row = lo + pad; row <= hi - pad; ++row)
        if (!(direct.at(row, col) == prod.at(row, col))) return false;
  }
  return true;
}

// --------------------------------------------------------------- criterion 3
bool leibniz_and_covariance() {
  SeededGen gen(31337);
  for (int i = 0; i < 200; ++i) {
    ELSeq beta_inv = gen.elseq();
    InvariantDerivation di(ELSeq(Scalar(0), beta_inv.increments()));
    CovariantDerivation dc(gen.elseq());
    AlgebraElement a = gen.element(-2, 2, -3, 3);
    AlgebraElement b = gen.element(-2, 2, -3, 3);
    if (!(di.apply(a * b) == a * di.apply(b) + di.apply(a) * b)) return false;
    if (!(dc.apply(a * b) == a * dc.apply(b) + dc.apply(a) * b)) return false;
    UnitPhase z = gen.phase();
    // equivariance: d(rho_z a) = conj(z) rho_z(d a)
    AlgebraElement lhs = dc.apply(a.rho(z));
    AlgebraElement rhs = dc.apply(a).rho(z).scaled(z.power(-1));
    if (!(lhs == rhs)) return false;
    // the invariant kind commutes with the circle action outright
    if (!(di.apply(a.rho(z)) == di.apply(a).rho(z))) return false;
  }
  return true;
}

// --------------------------------------------------------------- criterion 4
bool implementation_contract() {
  SeededGen gen(4242);
  // weighted kinds: exact commutator identity on the GNS domain
  for (int i = 0; i < 100; ++i) {
    ELSeq beta = gen.elseq();
    ELSeq alpha = beta + ELSeq(gen.scalar(), compact_bump(gen));
    AlgebraElement a = gen.element(-2, 2, -3, 3);
    AlgebraElement f = gen.element(-2, 2, -3, 3);
    {
      ImplementationSpec spec{ImplementationKind::invariant_w, beta, alpha,
                              Scalar(0), WeightSpec::geometric(Rat(1, 2))};
      InvariantDerivation d(beta);
      if (!(implement_apply(spec, a * f) - a * implement_apply(spec, f) ==
            d.apply(a) * f))
        return false;
    }
    {
      ImplementationSpec spec{ImplementationKind::covariant_w, beta, alpha,
                              Scalar(0), WeightSpec::geometric(Rat(1, 2))};
      CovariantDerivation d(beta);
      if (!(implement_apply(spec, a * f) - a * implement_apply(spec, f) ==
            d.apply(a) * f))
        return false;
    }
  }
  // diagonal kinds: eigen-model commutator coefficients against the
  // derivation applied in the algebra
  for (int i = 0; i < 100; ++i) {
    ELSeq beta = gen.elseq();
    AlgebraElement a = gen.element(-2, 2, -3, 3);
    {
      ImplementationSpec spec{ImplementationKind::tau0, beta, beta,
                              gen.scalar(), WeightSpec::finite(0, {Rat(1)})};
      auto model = implement_diag_models(spec);
      InvariantDerivation d(ELSeq(Scalar(0), beta.increments()));
      AlgebraElement da = d.apply(a);
      for (const auto& [m, am] : a.terms())
        for (long n = -6; n <= 6; ++n) {
          Scalar lhs = (model.lambda(n + m) - model.lambda(n)) * am.at(n);
          if (!(lhs == da.coeff(m).at(n))) return false;
        }
    }
    {
      ImplementationSpec spec{ImplementationKind::tau_pm_inf, beta, beta,
                              gen.scalar(), WeightSpec::finite(0, {Rat(1)})};
      auto model = implement_diag_models(spec, /*plus_infinity=*/true);
      auto [sl, sr] = beta.tail_slopes();
      InvariantDerivation d(ELSeq::linear(sr, sr, Scalar(0)));
      AlgebraElement da = d.apply(a);
      for (const auto& [m, am] : a.terms())
        for (long n = -6; n <= 6; ++n) {
          Scalar lhs = (model.lambda(n + m) - model.lambda(n)) * am.at(n);
          if (!(lhs == da.coeff(m).at(n))) return false;
        }
    }
    {
      ImplementationSpec spec{ImplementationKind::covariant_w, beta, beta,
                              Scalar(0), WeightSpec::finite(0, {Rat(1)})};
      auto model = implement_diag_models(spec);
      if (!model.shifted) return false;
      CovariantDerivation d(beta);
      AlgebraElement da = d.apply(a);
      for (const auto& [m, am] : a.terms())
        for (long n = -6; n <= 6; ++n) {
          Scalar lhs =
              model.lambda(n + m) * am.at(n) - model.lambda(n) * am.at(n + 1);
          if (!(lhs == da.coeff(m + 1).at(n))) return false;
        }
    }
  }
  return true;
}

// --------------------------------------------------------------- criterion 5
bool gns_norm_identity() {
  SeededGen gen(90210);
  for (const Rat& q : {Rat(1, 2), Rat(1, 4)}) {
    WeightSpec w = WeightSpec::geometric(q);
    StateSpec tau = StateSpec::tau_w(w);
    for (int i = 0; i < 100; ++i) {
      AlgebraElement a = gen.element(-3, 3, -3, 3);
      Scalar rhs = state_eval(tau, a.star() * a);
      if (!rhs.im.is_zero()) return false;
      if (!(gns_norm_sq(a, w) == rhs.re)) return false;
    }
  }
  return true;
}

// --------------------------------------------------------------- criterion 6
bool kernel_identity() {
  auto b = SeqModel::exact(ELSeq::abs_k_plus_1());
  auto mu = mu_from(b, b, 72);
  for (long n = -5; n <= 5; ++n) {
    ComponentOp op{n, b, b};
    auto kv = formal_kernels(op, mu);
    if (kv.lo > -64 || kv.hi < 64) return false;
    auto res = kernel_residuals(op, mu, kv);
    if (!res.exact_zero_h || !res.exact_zero_ht) return false;
  }
  // pairing divergence: |h_n(k) h~_n(k)| = 1/beta(n+k), harmonic partial
  // sums past 5 by K = 200
  auto mu2 = mu_from(b, b, 240);
  for (long n = -5; n <= 5; ++n) {
    ComponentOp op{n, b, b};
    auto kv = formal_kernels(op, mu2);
    double direct = 0;
    for (long k = 0; k <= 200; ++k) {
      double pointwise = std::exp(kv.h_log_abs(k) + kv.ht_log_abs(k));
      double formula = 1.0 / std::abs(b.at(n + k));
      if (std::abs(pointwise - formula) > 1e-9) return false;
      direct += formula;
    }
    auto [left, right] = pairing_partial_sums(kv, 200);
    if (left + right <= 5.0) return false;
    if (std::abs(right - direct) > 1e-6) return false;
  }
  return true;
}

// --------------------------------------------------------------- criterion 7
bool diagonal_criteria_matrix() {
  auto lin = SeqModel::exact(ELSeq::abs_k_plus_1());
  auto flat = SeqModel::exact(ELSeq::constant(Scalar(3)));
  auto half = SeqModel::exact(ELSeq::linear(Scalar(0), Scalar(1), Scalar(1)));
  auto lin2 = SeqModel::exact(ELSeq::linear(Scalar(-2), Scalar(2), Scalar(1)));
  using V = CriterionVerdict;
  struct Case {
    SeqModel beta, alpha;
    V diag, shifted, combined;
  };
  const Case cases[6] = {
      {lin, lin2, V::CompactLikely, V::CompactLikely, V::CompactLikely},
      {flat, lin, V::CompactRuledOut, V::CompactRuledOut, V::CompactRuledOut},
      {half, lin, V::CompactRuledOut, V::CompactRuledOut, V::CompactRuledOut},
      {lin, flat, V::CompactLikely, V::CompactLikely, V::CompactLikely},
      {lin, lin, V::CompactLikely, V::Inconclusive, V::Inconclusive},
      {flat, flat, V::CompactRuledOut, V::CompactRuledOut, V::CompactRuledOut},
  };
  for (const Case& c : cases) {
    auto r = diagonal_criteria(c.beta, c.alpha);
    if (r.diagonal_verdict != c.diag) return false;
    if (r.shifted_verdict != c.shifted) return false;
    if (r.combined_verdict != c.combined) return false;
  }
  return true;
}

// --------------------------------------------------------------- criterion 8
bool nogo_option1() {
  auto b = SeqModel::exact(ELSeq::abs_k_plus_1());
  auto a = b.side_scaled(2.0, 2.0);  // mu(k) = 2^k
  for (long n = -20; n <= 20; ++n) {
    ComponentOp op{n, b, a};
    if (sigma_min(op, 200) > 2.0 + 1e-8) return false;
  }
  // contrast: diagonal sections of beta alone grow when the window shifts
  // away from the origin
  ComponentOp diag{0, b, SeqModel::exact(ELSeq::constant(Scalar(0)))};
  double near = sigma_min(truncate_window(diag, 0, 100));
  double far = sigma_min(truncate_window(diag, 100, 200));
  return far >= 10.0 * near;
}

// --------------------------------------------------------------- criterion 9
bool nogo_option2() {
  auto b = SeqModel::exact(ELSeq::abs_k_plus_1());
  auto a = b.side_scaled(0.5, 0.5);  // mu(k) = 2^{-k}
  auto mu = mu_from(a, b, 320);
  for (long n = -5; n <= 5; ++n) {
    ComponentOp op{n, b, a};
    auto d = degenerate_eigvec(op, mu, 0, -300, 50);
    if (d.trivial) return false;
    if (d.max_rel_residual >= 1e-8) return false;
  }
  return true;
}

// -------------------------------------------------------------- criterion 10
bool stability_properties() {
  auto b = SeqModel::exact(ELSeq::abs_k_plus_1());
  auto a = b.side_scaled(2.0, 2.0);
  // Weyl: bounded perturbations of both coefficients move sigma_min by at
  // most the sum of their sups
  for (long n : {-4L, 0L, 3L}) {
    ComponentOp op{n, b, a};
    double base = sigma_min(op, 80);
    Perturbation p{PerturbKind::decaying, 0.05};
    auto bp = SeqModel::tail(1.0, 1.0, 1.0, p);
    auto ap = bp.side_scaled(2.0, 2.0);
    ComponentOp opp{n, bp, ap};
    double pert = sigma_min(opp, 80);
    double bound = p.sup() + 2.0 * p.sup();  // alpha carries the factor 2
    if (std::abs(pert - base) > bound + 1e-9) return false;
  }
  // gauge invariance of the singular values
  auto bneg = SeqModel::exact(ELSeq::linear(Scalar(1), Scalar(-1), Scalar(-1)));
  for (long n : {-3L, 0L, 5L}) {
    ComponentOp op{n, bneg, a};
    auto g = gauge_abs_beta(op, 120);
    ComponentOp gop{n, g.op.beta, g.op.alpha};
    for (long N : {30L, 90L})
      if (std::abs(sigma_min(op, N) - sigma_min(gop, N)) > 1e-10) return false;
  }
  // interlacing: sigma_min non-increasing in the window size
  for (long n : {-2L, 0L, 7L}) {
    ComponentOp op{n, b, a};
    double prev = std::numeric_limits<double>::infinity();
    for (long N : {20L, 40L, 80L, 160L}) {
      auto t = truncate(op, N);
      double s = sigma_min(t);
      if (s > prev + sigma_numerical_floor(t)) return false;
      prev = s;
    }
  }
  return true;
}

// -------------------------------------------------------------- criterion 11
bool determinism() {
  auto render = []() {
    auto b = SeqModel::exact(ELSeq::abs_k_plus_1());
    auto a = b.side_scaled(2.0, 2.0);
    ComponentOp base{0, b, a};
    auto rep = nogo_probe(base, 256, -4, 4, {25, 50, 100});
    Json j;
    j["class"] = rep.mu.verdict == MuClass::option1   ? "option1"
                 : rep.mu.verdict == MuClass::option2 ? "option2"
                                                      : "neither";
    j["summary"] = rep.summary;
    j["gauge_residual"] = fmt_double(rep.gauge_residual);
    Json modes = Json::array();
    for (const auto& ev : rep.modes) {
      Json m;
      m["n"] = ev.n;
      if (ev.sigma_ceiling) m["sigma_ceiling"] = fmt_double(*ev.sigma_ceiling);
      Json sig = Json::array();
      for (double s : ev.sigma_values) sig.push_back(fmt_double(s));
      m["sigma"] = std::move(sig);
      modes.push_back(std::move(m));
    }
    j["modes"] = std::move(modes);
    return j.dump(2);
  };
  std::string first = render();
  std::string second = render();
  return !first.empty() && first == second;
}

}  // namespace

int main() {
  criterion(1, "exact identity suite", exact_identity_suite);
  criterion(2, "algebra oracle", algebra_oracle);
  criterion(3, "Leibniz and covariance", leibniz_and_covariance);
  criterion(4, "implementation contract", implementation_contract);
  criterion(5, "GNS norm identity", gns_norm_identity);
  criterion(6, "kernel identity and pairing divergence", kernel_identity);
  criterion(7, "diagonal criteria matrix", diagonal_criteria_matrix);
  criterion(8, "no-go probe, growth option", nogo_option1);
  criterion(9, "no-go probe, decay option", nogo_option2);
  criterion(10, "stability properties", stability_properties);
  criterion(11, "report determinism", determinism);
  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
