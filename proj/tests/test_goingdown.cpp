#include <doctest.h>

#include "helpers.hpp"
#include "krull/goingdown.hpp"

using namespace krull;
using namespace krull::testing;

namespace {

ExtensionPtr root2() {
  auto Z = zz();
  return ExtensionContext::make(RingDescriptor::integers(),
                                {Z->from_int(-2), Z->zero(), Z->one()});  // Y^2 - 2
}

ExtensionPtr qt_sqrt() {
  auto Qt = qpoly({"t"});
  return ExtensionContext::make(Qt->descriptor(),
                                {Qt->parse("-t"), Qt->zero(), Qt->one()});  // Y^2 - t
}

}  // namespace

TEST_CASE("monic gcd over the fraction field") {
  auto E = root2();
  auto Z = zz();
  Ideal I({Z->from_int(2)});
  SElement sqrt2 = E->y();
  UniPoly M{Z, {Z->from_int(-2), Z->zero(), Z->one()}};            // T^2 - 2
  UniPoly P{Z, {Z->zero(), Z->from_int(-2), Z->zero(), Z->one()}};  // T^3 - 2T

  // P = M gives Q = M
  UniPoly q1 = gd_monic_gcd(*E, I, sqrt2, M, M);
  CHECK(uni_eq(q1, M));

  UniPoly q2 = gd_monic_gcd(*E, I, sqrt2, M, P);
  CHECK(uni_eq(q2, M));  // gcd(T^3 - 2T, T^2 - 2) = T^2 - 2

  // a P coprime to M cannot annihilate x: the guard trips
  UniPoly coprime{Z, {Z->from_int(1), Z->one()}};  // T + 1
  CHECK_THROWS_AS(gd_monic_gcd(*E, I, sqrt2, M, coprime), KrullError);

  // K[t] base: gcd of Y-annihilators over Q(t)
  auto Et = qt_sqrt();
  auto Qt = Et->base();
  Ideal It({Qt->parse("t")});
  SElement yy = Et->y();
  UniPoly Mt{Qt, {Qt->parse("-t"), Qt->zero(), Qt->one()}};  // T^2 - t
  UniPoly Pt = uni_mul(Mt, UniPoly{Qt, {Qt->parse("1"), Qt->one()}});  // (T^2-t)(T+1)
  UniPoly qt = gd_monic_gcd(*Et, It, yy, Mt, Pt);
  CHECK(uni_eq(qt, Mt));
}

TEST_CASE("going down in one step") {
  auto E = root2();
  auto Z = zz();
  IdealisticPrime p0{{Z->from_int(2)}, {Z->from_int(3)}};

  // u0 = 3, v1 = 2 + 2 sqrt2, j0 = 3 v1 = 2 * (3 + 3 sqrt2)
  SElement v1 = E->add(E->from_base(Z->from_int(2)),
                       E->mul(E->from_base(Z->from_int(2)), E->y()));
  SElement w{std::vector<RingElement>{Z->from_int(3), Z->from_int(3)}};
  GDStepResult r = going_down_step(*E, p0, Z->from_int(3), v1, {Z->from_int(2)}, {w});
  CHECK(r.gcd_rounds == 0);  // the characteristic polynomials are proportional
  CHECK(r.degree_trace == std::vector<unsigned>{2});
  for (bool ok : r.b_in_saturation) CHECK(ok);
  // v1^2 = -(b_1 v1 + b_0): re-verify the membership identity
  SElement rhs = E->from_base(Z->zero());
  for (size_t i = 0; i < r.b_coeffs.size(); ++i)
    rhs = E->add(rhs, E->mul(E->from_base(r.b_coeffs[i]), E->pow(v1, unsigned(i))));
  CHECK(E->eq(r.v1_power, E->neg(rhs)));

  // a coarser candidate B drives one gcd round with a degree drop
  UniPoly coarse = uni_mul(E->annihilator(v1), UniPoly{Z, {Z->from_int(7), Z->one()}});
  GDStepResult r2 = going_down_step(*E, p0, Z->from_int(3), v1, {Z->from_int(2)}, {w}, coarse);
  CHECK(r2.gcd_rounds >= 1);
  REQUIRE(r2.degree_trace.size() >= 2);
  CHECK(r2.degree_trace[0] > r2.degree_trace[1]);
  for (bool ok : r2.b_in_saturation) CHECK(ok);

  // degenerate j0 = 0 in a domain: v1 = 0, immediate collapse
  GDStepResult r0 = going_down_step(*E, p0, Z->from_int(3), E->from_base(Z->zero()), {}, {});
  CHECK(E->is_zero(r0.v1_power));

  // the guard: u0 v1 != j0
  CHECK_THROWS_AS(
      going_down_step(*E, p0, Z->from_int(5), v1, {Z->from_int(2)}, {w}), KrullError);
}

TEST_CASE("going down over Q[t] in Q[t][Y]/(Y^2 - t)") {
  auto E = qt_sqrt();
  auto Qt = E->base();
  IdealisticPrime p0{{Qt->parse("t")}, {Qt->parse("t + 1")}};
  // u0 = t+1, v1 = t*Y: j0 = (t+1) t Y = t * ((t+1) Y)
  SElement v1{std::vector<RingElement>{Qt->zero(), Qt->parse("t")}};
  SElement s_part{std::vector<RingElement>{Qt->zero(), Qt->parse("t + 1")}};
  GDStepResult r = going_down_step(*E, p0, Qt->parse("t + 1"), v1, {Qt->parse("t")}, {s_part});
  for (bool ok : r.b_in_saturation) CHECK(ok);
  SElement rhs = E->from_base(Qt->zero());
  for (size_t i = 0; i < r.b_coeffs.size(); ++i)
    rhs = E->add(rhs, E->mul(E->from_base(r.b_coeffs[i]), E->pow(v1, unsigned(i))));
  CHECK(E->eq(r.v1_power, E->neg(rhs)));
}

TEST_CASE("flat going down through coordinates") {
  auto E = root2();
  auto Z = zz();
  IdealisticPrime p0{{Z->from_int(2)}, {Z->from_int(5)}};
  // u0 = 5, v1 = 2 sqrt2, relation 5 v1 + (-2)(5 sqrt2) = 0
  SElement v1{std::vector<RingElement>{Z->zero(), Z->from_int(2)}};
  SElement b1{std::vector<RingElement>{Z->zero(), Z->from_int(5)}};
  FlatGDResult r = going_down_flat(*E, p0, Z->from_int(5), v1, {Z->from_int(-2)}, {b1});
  CHECK(r.m0 == v1.coords);
  for (bool ok : r.m0_in_saturation) CHECK(ok);

  // a relation that does not vanish is rejected
  CHECK_THROWS_AS(going_down_flat(*E, p0, Z->from_int(5), v1, {Z->from_int(2)}, {b1}),
                  KrullError);

  // the free polynomial extension Z <= Z[X]: 2 v1 + 4 X = 0 with v1 = -2X
  auto ZX = Ring::make(RingDescriptor::poly_z({"X"}));
  FlatGDResult rp = going_down_flat_poly(Z, ZX, p0, Z->from_int(2), ZX->parse("-2*X"),
                                         {Z->from_int(4)}, {ZX->parse("X")});
  CHECK(rp.basis_size == 1);
  CHECK(rp.m0.size() == 1);
  CHECK(rp.m0[0] == Z->from_int(-2));
  for (bool ok : rp.m0_in_saturation) CHECK(ok);

  // a coordinate outside the saturation refutes
  IdealisticPrime narrow{{Z->from_int(7)}, {Z->from_int(5)}};
  CHECK_THROWS_AS(
      going_down_flat_poly(Z, ZX, narrow, Z->from_int(2), ZX->parse("-2*X"), {Z->from_int(4)},
                           {ZX->parse("X")}),
      KrullError);
}

TEST_CASE("constructed one-step instances over both bases") {
  auto E = root2();
  auto Z = zz();
  Sampler s(5151);
  for (int trial = 0; trial < 10; ++trial) {
    IdealisticPrime p0{{Z->from_int(2)}, {Z->from_int(2 * s.integer(1, 4) + 1)}};
    RingElement u0 = p0.U[0];
    // v1 = 2 * (random element), j0 = u0 v1 presented over I0 = <2>
    SElement w{std::vector<RingElement>{Z->from_int(s.integer(-3, 3)),
                                        Z->from_int(s.integer(-3, 3))}};
    SElement v1 = E->mul(E->from_base(Z->from_int(2)), w);
    SElement spart = E->mul(E->from_base(u0), w);
    std::optional<UniPoly> candidate;
    if (trial % 2) {
      candidate = uni_mul(E->annihilator(v1),
                          UniPoly{Z, {Z->from_int(s.integer(-4, 4)), Z->one()}});
    }
    GDStepResult r =
        going_down_step(*E, p0, u0, v1, {Z->from_int(2)}, {spart}, candidate);
    for (size_t i = 1; i < r.degree_trace.size(); ++i)
      CHECK(r.degree_trace[i] < r.degree_trace[i - 1]);
    for (bool ok : r.b_in_saturation) CHECK(ok);
  }
}
