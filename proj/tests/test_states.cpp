#include <doctest.h>

#include "qal/states.hpp"
#include "qal/testgen.hpp"

using namespace qal;

TEST_CASE("weight families are exactly normalized") {
  WeightSpec g = WeightSpec::geometric(Rat(1, 2));
  // C = (1-q)/(1+q) = 1/3
  CHECK(g.at(0) == Rat(1, 3));
  CHECK(g.at(2) == Rat(1, 12));
  CHECK(g.at(-2) == Rat(1, 12));
  // total mass: w(0) + 2 sum_{k>0} C q^k = 1
  CHECK(g.at(0) + g.tail_sum_below(0) + g.tail_sum_above(0) == Rat(1));

  CHECK_THROWS(WeightSpec::finite(0, {Rat(1, 2), Rat(1, 3)}));  // sums to 5/6
  WeightSpec f = WeightSpec::finite(-1, {Rat(1, 4), Rat(3, 4)});
  CHECK(f.at(-1) == Rat(1, 4));
  CHECK(f.at(0) == Rat(3, 4));
  CHECK(f.at(1) == Rat(0));
  CHECK_FALSE(f.strictly_positive());
  CHECK(g.strictly_positive());
}

TEST_CASE("state evaluations on the weighted shift") {
  AlgebraElement Ur = AlgebraElement::make_Ur(Rat(1, 2));
  AlgebraElement d = Ur.star() * Ur;  // diagonal 1/4 left, 1 right
  CHECK(state_eval(StateSpec::tau0(), d) == Scalar(1));
  CHECK(state_eval(StateSpec::tau_minus_inf(), d) == Scalar(Rat(1, 4)));
  CHECK(state_eval(StateSpec::tau_plus_inf(), d) == Scalar(1));

  // geometric q=1/2: tau_w(P_{>=0}) = 1/(1+q) = 2/3
  AlgebraElement Pge0 =
      AlgebraElement::make_diag(ECSeq::step(Scalar(0), Scalar(1), 0));
  StateSpec tw = StateSpec::tau_w(WeightSpec::geometric(Rat(1, 2)));
  CHECK(state_eval(tw, Pge0) == Scalar(Rat(2, 3)));
}

TEST_CASE("state axioms on random elements") {
  StateSpec mix{Rat(1, 2), Rat(1, 4), Rat(1, 4),
                WeightSpec::geometric(Rat(1, 3))};
  mix.validate();
  CHECK(state_eval(mix, AlgebraElement::identity()) == Scalar(1));
  SeededGen gen(67);
  for (int i = 0; i < 60; ++i) {
    AlgebraElement a = gen.element(-3, 3, -3, 3);
    Scalar v = state_eval(mix, a.star() * a);
    CHECK(v.im == Rat(0));
    CHECK(v.re >= Rat(0));
    UnitPhase z = gen.phase();
    CHECK(state_eval(mix, a.rho(z)) == state_eval(mix, a));
  }
  CHECK_THROWS(StateSpec{Rat(1, 2), Rat(1, 2), Rat(1, 2),
                         WeightSpec::geometric(Rat(1, 2))}
                   .validate());
}

TEST_CASE("gns norms") {
  WeightSpec w = WeightSpec::geometric(Rat(1, 2));
  CHECK(gns_norm_sq(AlgebraElement::identity(), w) == Rat(1));
  CHECK(gns_norm_sq(AlgebraElement::make_U(), w) == Rat(1));
  AlgebraElement P0 = AlgebraElement::make_diag(ECSeq::delta(0));
  CHECK(gns_norm_sq(P0, w) == Rat(1, 3));  // w(0) = C = 1/3

  // norm identity against the state, and Cauchy-Schwarz
  SeededGen gen(71);
  for (Rat q : {Rat(1, 2), Rat(1, 4)}) {
    WeightSpec wq = WeightSpec::geometric(q);
    StateSpec tw = StateSpec::tau_w(wq);
    for (int i = 0; i < 40; ++i) {
      AlgebraElement a = gen.element(-3, 3, -3, 3);
      AlgebraElement b = gen.element(-3, 3, -3, 3);
      Scalar n2 = state_eval(tw, a.star() * a);
      CHECK(n2 == Scalar(gns_norm_sq(a, wq)));
      Scalar inner = state_eval(tw, b.star() * a);
      CHECK(inner.abs_sq() <=
            gns_norm_sq(a, wq) * gns_norm_sq(b, wq));
    }
  }
}

TEST_CASE("weighted implementations satisfy the commutator contract") {
  SeededGen gen(73);
  for (int i = 0; i < 40; ++i) {
    ELSeq beta = gen.elseq();
    // alpha shares beta's tail slopes: beta plus an eventually constant bump
    // (compactly supported increments keep the difference eventually constant)
    ECSeq bump = ECSeq::from_fn(
        -2, 2, [&](long) { return gen.scalar(); }, Scalar(0), Scalar(0));
    ELSeq alpha = beta + ELSeq(gen.scalar(), bump);
    {
      ImplementationSpec spec{ImplementationKind::invariant_w, beta, alpha,
                              Scalar(0), WeightSpec::geometric(Rat(1, 2))};
      InvariantDerivation d(beta);
      AlgebraElement a = gen.element(-2, 2, -3, 3);
      AlgebraElement f = gen.element(-2, 2, -3, 3);
      CHECK(implement_apply(spec, a * f) - a * implement_apply(spec, f) ==
            d.apply(a) * f);
    }
    {
      ImplementationSpec spec{ImplementationKind::covariant_w, beta, alpha,
                              Scalar(0), WeightSpec::geometric(Rat(1, 2))};
      CovariantDerivation d(beta);
      AlgebraElement a = gen.element(-2, 2, -3, 3);
      AlgebraElement f = gen.element(-2, 2, -3, 3);
      CHECK(implement_apply(spec, a * f) - a * implement_apply(spec, f) ==
            d.apply(a) * f);
    }
  }
}

TEST_CASE("implementation formulas on simple inputs") {
  ELSeq beta = ELSeq::identity();
  ImplementationSpec inv{ImplementationKind::invariant_w, beta, beta, Scalar(0),
                         WeightSpec::geometric(Rat(1, 2))};
  // alpha = beta: diagonals are annihilated, D(U^n) = n U^n
  SeededGen gen(79);
  CHECK(implement_apply(inv, AlgebraElement::make_diag(gen.ecseq(-3, 3)))
            .is_zero());
  AlgebraElement U = AlgebraElement::make_U();
  AlgebraElement Un = U;
  for (long n = 1; n <= 4; ++n) {
    CHECK(implement_apply(inv, Un) == Un.scaled(Scalar(Rat(n))));
    Un = Un * U;
  }
  // covariant on the identity: D~(I) = U (beta - alpha)(K)
  ELSeq alpha = beta + ELSeq::constant(Scalar(Rat(-2)));
  ImplementationSpec cov{ImplementationKind::covariant_w, beta, alpha, Scalar(0),
                         WeightSpec::geometric(Rat(1, 2))};
  CHECK(implement_apply(cov, AlgebraElement::identity()) ==
        AlgebraElement::single(1, ECSeq::constant(Scalar(2))));
  // mismatched slopes rejected
  ImplementationSpec bad{ImplementationKind::invariant_w, ELSeq::identity(),
                         ELSeq::abs_k(), Scalar(0),
                         WeightSpec::geometric(Rat(1, 2))};
  CHECK_THROWS(bad.validate());
}

TEST_CASE("diagonal model descriptors") {
  ImplementationSpec tau0{ImplementationKind::tau0, ELSeq::abs_k(),
                          ELSeq::abs_k(), Scalar(0),
                          WeightSpec::geometric(Rat(1, 2))};
  DiagModelDescriptor d0 = implement_diag_models(tau0);
  for (long k = -5; k <= 5; ++k)
    CHECK(d0.lambda(k) == Scalar(Rat(std::abs(k))));

  ImplementationSpec pm{ImplementationKind::tau_pm_inf,
                        ELSeq::linear(Scalar(2), Scalar(2), Scalar(0)),
                        ELSeq::constant(Scalar(0)), Scalar(1),
                        WeightSpec::geometric(Rat(1, 2))};
  DiagModelDescriptor dp = implement_diag_models(pm, true);
  for (long n = -5; n <= 5; ++n)
    CHECK(dp.lambda(n) == Scalar(Rat(2 * n + 1)));

  ImplementationSpec cov{ImplementationKind::covariant_w, ELSeq::identity(),
                         ELSeq::identity(), Scalar(0),
                         WeightSpec::geometric(Rat(1, 2))};
  DiagModelDescriptor dc = implement_diag_models(cov);
  CHECK(dc.shifted);
  for (long n = -5; n <= 5; ++n) CHECK(dc.lambda(n) == Scalar(Rat(n)));
}
