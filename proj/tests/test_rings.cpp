#include <doctest.h>

#include "helpers.hpp"
#include "krull/chains.hpp"
#include "krull/linalg.hpp"

using namespace krull;
using namespace krull::testing;

TEST_CASE("ring_make accepts the three families and rejects bad descriptors") {
  CHECK(zz()->add(zz()->from_int(2), zz()->from_int(3)) == zz()->from_int(5));
  auto z4 = zmod(4);
  CHECK(z4->mul(z4->from_int(2), z4->from_int(2)) == z4->zero());

  CHECK_THROWS_AS(Ring::make(RingDescriptor::poly_fp(4, {"X"})), KrullError);  // 4 not prime
  CHECK_THROWS_AS(Ring::make(RingDescriptor::modular(1)), KrullError);
  CHECK_THROWS_AS(Ring::make(RingDescriptor::poly_q({"X", "X"})), KrullError);
  CHECK_THROWS_AS(Ring::make(RingDescriptor::poly_q({})), KrullError);
  CHECK_NOTHROW(Ring::make(RingDescriptor::poly_fp(7919, {"X"})));
}

TEST_CASE("element syntax parses and round-trips") {
  auto R = qpoly({"X", "Y"});
  RingElement e = R->parse("3/2*X^2*Y - 1");
  CHECK(R->to_string(e) == "3/2*X^2*Y - 1");
  CHECK(R->parse(R->to_string(e)) == e);

  CHECK(R->to_string(R->parse("X - X")) == "0");
  CHECK(R->to_string(R->parse("-X + 2*X")) == "X");
  CHECK(R->parse("(X + 1)*(X - 1)") == R->parse("X^2 - 1"));

  auto Z = zz();
  CHECK(Z->parse("-42").zval() == -42);
  CHECK_THROWS_AS(R->parse("Z + 1"), KrullError);
  CHECK_THROWS_AS(R->parse("1/0"), KrullError);
  CHECK_THROWS_AS(R->parse("X +"), KrullError);

  auto F5 = fppoly(5, {"X"});
  CHECK(F5->parse("7*X") == F5->parse("2*X"));
  CHECK(F5->parse("1/2") == F5->parse("3"));  // 2*3 = 1 mod 5

  // residues reduce canonically
  auto z12 = zmod(12);
  CHECK(z12->parse("-1") == z12->from_int(11));
}

TEST_CASE("ring axioms hold on random triples in every family") {
  for (auto& ring : {zz(), zmod(12), qpoly({"X", "Y"}), fppoly(5, {"X"}),
                     Ring::make(RingDescriptor::poly_z({"X"}))}) {
    Sampler s(7);
    for (int i = 0; i < 500; ++i) {
      RingElement a = s.element(ring), b = s.element(ring), c = s.element(ring);
      CHECK(ring->add(a, b) == ring->add(b, a));
      CHECK(ring->mul(ring->mul(a, b), c) == ring->mul(a, ring->mul(b, c)));
      CHECK(ring->mul(a, ring->add(b, c)) == ring->add(ring->mul(a, b), ring->mul(a, c)));
      CHECK(ring->add(a, ring->neg(a)) == ring->zero());
      CHECK(ring->mul(a, ring->one()) == a);
      // canonical-form closure: parse(print(x)) == x
      CHECK(ring->parse(ring->to_string(a)) == a);
    }
  }
}

TEST_CASE("eval_nested matches the worked examples") {
  auto z4 = zmod(4);
  // chain ((0; 2), (2; 1)), u0 = 2^2, u1 = 1, j = 0  ->  0 in Z/4
  IdealisticChain c(z4, {{{z4->zero()}, {z4->from_int(2)}}, {{z4->from_int(2)}, {z4->one()}}});
  CollapseCertificate cert;
  cert.levels = {{{2}, {z4->zero()}}, {{0}, {z4->zero()}}};
  CHECK(z4->is_zero(eval_nested(c, cert)));

  auto Z = zz();
  IdealisticChain cz(Z, {{{Z->zero()}, {Z->from_int(2)}}, {{Z->from_int(2)}, {Z->one()}}});
  CollapseCertificate certz;
  certz.levels = {{{1}, {Z->zero()}}, {{0}, {Z->zero()}}};
  CHECK(eval_nested(cz, certz) == Z->from_int(2));  // no cancellation

  // failing certificate over Q[X]: X*(1 + (-1)*X) + 0 = X - X^2 != 0
  auto QX = qpoly({"X"});
  RingElement x = QX->variable(0);
  IdealisticChain cq(QX, {{{QX->zero()}, {x}}, {{x}, {QX->one()}}});
  CollapseCertificate certq;
  certq.levels = {{{1}, {QX->zero()}}, {{0}, {QX->from_int(-1)}}};
  CHECK(eval_nested(cq, certq) == QX->parse("X - X^2"));

  // shape mismatch is rejected
  CollapseCertificate bad;
  bad.levels = {{{1}, {QX->zero()}}};
  CHECK_THROWS_AS(eval_nested(cq, bad), KrullError);

  // eval_nested is pure: same inputs, structurally equal outputs
  CHECK(eval_nested(cq, certq) == eval_nested(cq, certq));
}

TEST_CASE("characteristic polynomial of multiplication") {
  auto Z = zz();
  // S = Z[Y]/(Y^2-2), x = Y on basis {1, Y}: matrix [[0,2],[1,0]], chi = T^2 - 2
  RMat m{{Z->from_int(0), Z->from_int(2)}, {Z->from_int(1), Z->from_int(0)}};
  UniPoly chi = char_poly(m);
  CHECK(chi.degree() == 2);
  CHECK(chi.coeff(2) == Z->one());
  CHECK(chi.coeff(1) == Z->zero());
  CHECK(chi.coeff(0) == Z->from_int(-2));

  // S = Z[Y]/(Y^2+1), x = 1+Y: matrix [[1,-1],[1,1]], chi = T^2 - 2T + 2
  RMat m2{{Z->from_int(1), Z->from_int(-1)}, {Z->from_int(1), Z->from_int(1)}};
  UniPoly chi2 = char_poly(m2);
  CHECK(chi2.coeff(2) == Z->one());
  CHECK(chi2.coeff(1) == Z->from_int(-2));
  CHECK(chi2.coeff(0) == Z->from_int(2));

  // x = 0 on a basis of size 3: T^3
  RMat z3(3, std::vector<RingElement>(3, Z->zero()));
  UniPoly chi3 = char_poly(z3);
  CHECK(chi3.degree() == 3);
  CHECK(chi3.coeff(0) == Z->zero());
  CHECK(chi3.coeff(1) == Z->zero());
  CHECK(chi3.coeff(2) == Z->zero());

  // Cayley-Hamilton on random d <= 4: chi(A) annihilates every basis vector
  Sampler s(11);
  for (int trial = 0; trial < 20; ++trial) {
    size_t d = size_t(s.integer(1, 4));
    RMat a(d, std::vector<RingElement>(d));
    for (auto& row : a)
      for (auto& e : row) e = Z->from_int(s.integer(-3, 3));
    UniPoly chi_a = char_poly(a);
    auto matmul = [&](const RMat& x, const RMat& y) {
      RMat r(d, std::vector<RingElement>(d, Z->zero()));
      for (size_t i = 0; i < d; ++i)
        for (size_t k = 0; k < d; ++k)
          for (size_t j = 0; j < d; ++j)
            r[i][j] = Z->add(r[i][j], Z->mul(x[i][k], y[k][j]));
      return r;
    };
    RMat acc(d, std::vector<RingElement>(d, Z->zero()));
    RMat power(d, std::vector<RingElement>(d, Z->zero()));
    for (size_t i = 0; i < d; ++i) power[i][i] = Z->one();
    for (size_t t = 0; t < chi_a.c.size(); ++t) {
      for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
          acc[i][j] = Z->add(acc[i][j], Z->mul(chi_a.c[t], power[i][j]));
      power = matmul(power, a);
    }
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) CHECK(Z->is_zero(acc[i][j]));
  }
}

TEST_CASE("exact division") {
  auto Z = zz();
  CHECK(*Z->divide(Z->from_int(12), Z->from_int(4)) == Z->from_int(3));
  CHECK(!Z->divide(Z->from_int(7), Z->from_int(2)));

  auto QXY = qpoly({"X", "Y"});
  auto prod = QXY->parse("(X + Y)*(X - Y)");
  CHECK(*QXY->divide(prod, QXY->parse("X + Y")) == QXY->parse("X - Y"));
  CHECK(!QXY->divide(QXY->parse("X^2 + 1"), QXY->parse("X + Y")));

  auto ZX = Ring::make(RingDescriptor::poly_z({"X"}));
  CHECK(*ZX->divide(ZX->parse("2*X^2 + 2"), ZX->parse("2")) == ZX->parse("X^2 + 1"));
  CHECK(!ZX->divide(ZX->parse("X"), ZX->parse("2")));
}

TEST_CASE("complete_chain records unions and the closed monoid form") {
  auto QX = qpoly({"X"});
  RingElement x = QX->variable(0);
  IdealisticChain c(QX, {{{QX->zero()}, {x}}, {{x}, {QX->one()}}});
  CompletedChain cc = complete_chain(c);
  REQUIRE(cc.ideal_levels.size() == 2);
  CHECK(cc.ideal_levels[0] == std::vector<RingElement>{QX->zero()});
  CHECK(cc.ideal_levels[1] == std::vector<RingElement>({QX->zero(), x}));
  // V_0 = U'_0 U'_1 + U'_0 I_1 + I_0
  REQUIRE(cc.monoid_levels[0].size() == 3);
  CHECK(cc.monoid_levels[0][0].monoid_from == 0);
  CHECK(cc.monoid_levels[0][0].monoid_to == 2);
  CHECK(!cc.monoid_levels[0][0].ideal_index);
  CHECK(cc.monoid_levels[0][1].ideal_index == size_t(0));
  CHECK(cc.monoid_levels[0][2].ideal_index == size_t(1));
  // single prime: V_0 = U'_0 + I_0
  auto Z = zz();
  IdealisticChain single(Z, {{{Z->from_int(3)}, {Z->from_int(2)}}});
  CompletedChain sc = complete_chain(single);
  REQUIRE(sc.monoid_levels[0].size() == 2);
  CHECK(sc.monoid_levels[0][0].monoid_to == 1);
}
