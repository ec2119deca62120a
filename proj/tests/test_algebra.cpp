#include <doctest.h>

#include "qal/algebra.hpp"
#include "qal/testgen.hpp"

using namespace qal;

TEST_CASE("U is unitary and the commutation rule holds") {
  AlgebraElement U = AlgebraElement::make_U();
  AlgebraElement Us = AlgebraElement::make_Ustar();
  CHECK(U * Us == AlgebraElement::identity());
  CHECK(Us * U == AlgebraElement::identity());

  SeededGen gen(3);
  for (int i = 0; i < 20; ++i) {
    ECSeq a = gen.ecseq(-4, 4);
    // a(K) U = U a(K+1)
    CHECK(AlgebraElement::make_diag(a) * U ==
          U * AlgebraElement::make_diag(a.shift(1)));
  }
}

TEST_CASE("weighted shift products") {
  AlgebraElement Ur = AlgebraElement::make_Ur(Rat(1, 2));
  // U_r* U_r is diagonal: 1/4 for k < 0, 1 for k >= 0
  AlgebraElement d = Ur.star() * Ur;
  CHECK(d == AlgebraElement::make_diag(
                 ECSeq::step(Scalar(Rat(1, 4)), Scalar(1), 0)));
  CHECK(d.expectation() == ECSeq::step(Scalar(Rat(1, 4)), Scalar(1), 0));
  CHECK_THROWS(AlgebraElement::make_Ur(Rat(3, 2)));
  CHECK_THROWS(AlgebraElement::make_Ur(Rat(1)));
}

TEST_CASE("star is an involutive anti-homomorphism") {
  AlgebraElement U = AlgebraElement::make_U();
  CHECK(U.star() == AlgebraElement::single(-1, ECSeq::constant(Scalar(1))));
  ECSeq a = ECSeq::delta(2, Scalar(Rat(0), Rat(1)));
  CHECK(AlgebraElement::make_diag(a).star() ==
        AlgebraElement::make_diag(a.conj()));
  SeededGen gen(5);
  for (int i = 0; i < 50; ++i) {
    AlgebraElement x = gen.element(-3, 3, -4, 4);
    AlgebraElement y = gen.element(-3, 3, -4, 4);
    CHECK(x.star().star() == x);
    CHECK((x * y).star() == y.star() * x.star());
  }
}

TEST_CASE("multiplication is associative") {
  SeededGen gen(17);
  for (int i = 0; i < 50; ++i) {
    AlgebraElement a = gen.element(-3, 3, -4, 4);
    AlgebraElement b = gen.element(-3, 3, -4, 4);
    AlgebraElement c = gen.element(-3, 3, -4, 4);
    CHECK(a * (b * c) == (a * b) * c);
  }
}

TEST_CASE("generator identities have exact-zero residuals") {
  for (Rat r : {Rat(1, 2), Rat(1, 3), Rat(9, 10)}) {
    GeneratorIdentityReport rep = verify_generator_identities(r);
    for (const auto& [name, residual] : rep.residuals) {
      INFO("identity ", name, " at r=", to_string(r));
      CHECK(residual.is_zero());
    }
    CHECK(rep.all_zero());
  }
}

TEST_CASE("circle action") {
  AlgebraElement U = AlgebraElement::make_U();
  UnitPhase minus1 = UnitPhase::minus_one();
  UnitPhase i = UnitPhase::i();
  CHECK(U.rho(minus1) == U.scaled(Scalar(-1)));
  ECSeq a = ECSeq::delta(1, Scalar(Rat(3, 2)));
  CHECK(AlgebraElement::make_diag(a).rho(i) == AlgebraElement::make_diag(a));
  AlgebraElement U2 = U * U;
  CHECK(U2.rho(i) == U2.scaled(Scalar(-1)));  // i^2 = -1
  SeededGen gen(23);
  for (int k = 0; k < 40; ++k) {
    AlgebraElement x = gen.element(-3, 3, -4, 4);
    AlgebraElement y = gen.element(-3, 3, -4, 4);
    UnitPhase z = gen.phase();
    CHECK((x * y).rho(z) == x.rho(z) * y.rho(z));
    CHECK(x.rho(z).expectation() == x.expectation());  // E is rho-invariant
  }
  CHECK_THROWS(UnitPhase::root_of_unity(1, 3));  // only orders 1, 2, 4 exact
}

TEST_CASE("expectation onto the diagonal") {
  SeededGen gen(29);
  ECSeq a = gen.ecseq(-3, 3), b = gen.ecseq(-3, 3);
  AlgebraElement el = AlgebraElement::make_U() * AlgebraElement::make_diag(a) +
                      AlgebraElement::make_diag(b);
  CHECK(el.expectation() == b);
  CHECK(AlgebraElement::make_U().expectation().is_zero());
}

TEST_CASE("basis action of the generators") {
  AlgebraElement U = AlgebraElement::make_U();
  BasisActionMatrix m = basis_action(U, -2, 2);
  for (long col = -2; col <= 1; ++col) CHECK(m.at(col + 1, col) == Scalar(1));
  CHECK(m.at(-2, -2).is_zero());

  AlgebraElement P0 = AlgebraElement::make_diag(ECSeq::delta(0));
  BasisActionMatrix p = basis_action(P0, -2, 2);
  for (long row = -2; row <= 2; ++row)
    for (long col = -2; col <= 2; ++col)
      CHECK(p.at(row, col) == ((row == 0 && col == 0) ? Scalar(1) : Scalar(0)));

  // E_{-1} -> (1/2) E_0, E_0 -> E_1 for U_{1/2}
  BasisActionMatrix ur = basis_action(AlgebraElement::make_Ur(Rat(1, 2)), -2, 2);
  CHECK(ur.at(0, -1) == Scalar(Rat(1, 2)));
  CHECK(ur.at(1, 0) == Scalar(1));
}

TEST_CASE("basis action oracle: products agree on interior columns") {
  SeededGen gen(31);
  const long lo = -12, hi = 12;
  for (int i = 0; i < 50; ++i) {
    AlgebraElement a = gen.element(-3, 3, -3, 3);
    AlgebraElement b = gen.element(-3, 3, -3, 3);
    BasisActionMatrix direct = basis_action(a * b, lo, hi);
    BasisActionMatrix prod =
        matrix_product(basis_action(a, lo, hi), basis_action(b, lo, hi));
    long pad = a.max_abs_shift() + b.max_abs_shift();
    for (long col = lo + pad; col <= hi - pad; ++col) {
      for (long row = lo + pad; row <= hi - pad; ++row) {
        INFO("row=", row, " col=", col);
        CHECK(direct.at(row, col) == prod.at(row, col));
      }
    }
  }
}

TEST_CASE("star matches the matrix adjoint on interior entries") {
  SeededGen gen(37);
  for (int i = 0; i < 20; ++i) {
    AlgebraElement a = gen.element(-3, 3, -3, 3);
    BasisActionMatrix m = basis_action(a, -8, 8);
    BasisActionMatrix ms = basis_action(a.star(), -8, 8);
    long pad = a.max_abs_shift();
    for (long row = -8 + pad; row <= 8 - pad; ++row)
      for (long col = -8 + pad; col <= 8 - pad; ++col)
        CHECK(ms.at(row, col) == m.at(col, row).conj());
  }
}
