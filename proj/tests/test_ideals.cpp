#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "ideals.hpp"

using namespace heckelab;


TEST_CASE("[TRIVIAL] ideal arithmetic over Q(sqrt-5)") {
  auto k = NumberField::quadratic(-5);  // basis (1, sqrt-5)
  FracIdeal O = ideal_ring(k);
  FracIdeal p2 = ideal_from_gens(k, {{Q(2), Q(0)}, {Q(1), Q(1)}});
  CHECK(ideal_norm(p2) == 2);
  CHECK(ideal_is_integral(p2));
  // p2^2 = (2), p2 not principal but its square is
  FracIdeal two = ideal_principal(k, {Q(2), Q(0)});
  CHECK(ideal_eq(ideal_mul(p2, p2), two));
  // a * a^{-1} = O
  CHECK(ideal_eq(ideal_mul(p2, ideal_inv(p2)), O));
  CHECK(ideal_norm(ideal_inv(p2)) == Q(1, 2));
  CHECK(ideal_is_anti_integral(ideal_inv(p2)));
  // gcd(2, 1+sqrt-5) = p2
  FracIdeal g = ideal_add(two, ideal_principal(k, {Q(1), Q(1)}));
  CHECK(ideal_eq(g, p2));
  CHECK(ideal_divides(p2, two));
  CHECK(!ideal_divides(two, p2));
}

TEST_CASE("[DERIVED] different ideals have norm |disc|") {
  auto k5 = NumberField::quadratic(5);
  FracIdeal d5 = different_ideal(k5);
  CHECK(ideal_norm(d5) == 5);
  // (sqrt5) = (2*omega - 1) with omega = (1+sqrt5)/2
  CHECK(ideal_eq(d5, ideal_principal(k5, {Q(-1), Q(2)})));

  auto km5 = NumberField::quadratic(-5);
  CHECK(ideal_norm(different_ideal(km5)) == 20);

  auto ke = heckelab_test::quartic_cm();
  CHECK(ideal_norm(different_ideal(ke)) == 6400);
}

TEST_CASE("[DERIVED] prime splitting in quadratic fields") {
  auto k = NumberField::quadratic(-5);
  PrimeTable pt(k);
  auto above2 = pt.primes_above(2);
  REQUIRE(above2.size() == 1);
  CHECK(above2[0].e == 2);
  CHECK(above2[0].f == 1);
  auto above3 = pt.primes_above(3);
  REQUIRE(above3.size() == 2);
  CHECK(above3[0].f == 1);
  auto above11 = pt.primes_above(11);
  REQUIRE(above11.size() == 1);
  CHECK(above11[0].f == 2);
  auto above29 = pt.primes_above(29);
  CHECK(above29.size() == 2);

  auto k5 = NumberField::quadratic(5);
  PrimeTable pt5(k5);
  CHECK(pt5.primes_above(5)[0].e == 2);
  CHECK(pt5.primes_above(2)[0].f == 2);   // 5 = 5 mod 8: inert
  CHECK(pt5.primes_above(11).size() == 2);
}

TEST_CASE("[DERIVED] prime splitting in the quartic CM field") {
  auto k = heckelab_test::quartic_cm();
  PrimeTable pt(k);
  // 13 splits completely: 10 and -1 are both squares mod 13
  auto above13 = pt.primes_above(13);
  CHECK(above13.size() == 4);
  for (auto& p : above13) CHECK(p.f == 1);
  // 2 and 5 ramify (disc = 2^8 * 5^2)
  for (auto& p : pt.primes_above(2)) CHECK(p.e > 1);
  int ef5 = 0;
  for (auto& p : pt.primes_above(5)) ef5 += p.e * p.f;
  CHECK(ef5 == 4);
  bool ram5 = false;
  for (auto& p : pt.primes_above(5))
    if (p.e > 1) ram5 = true;
  CHECK(ram5);
  // 3: 10 = 1 mod 3 is a square, -1 is not: two primes of degree 2
  auto above3 = pt.primes_above(3);
  CHECK(above3.size() == 2);
  for (auto& p : above3) CHECK(p.f == 2);
}

TEST_CASE("[DERIVED] factor and valuation") {
  auto k = NumberField::quadratic(-5);
  PrimeTable pt(k);
  FracIdeal six = ideal_principal(k, {Q(6), Q(0)});
  auto f = pt.factor(six);
  int total = 0;
  Q n = 1;
  for (auto& [p, e] : f) {
    total += e;
    n *= ideal_norm(ideal_pow(p.id, e));
  }
  CHECK(total == 4);  // p2^2 * p3 * p3'
  CHECK(n == 36);
  CHECK(pt.valuation(six, pt.primes_above(2)[0]) == 2);
}

TEST_CASE("[DERIVED] ideal counts by norm in Q(sqrt-5)") {
  auto k = NumberField::quadratic(-5);
  PrimeTable pt(k);
  IdealList L = enumerate_ideals(pt, 10.0);
  // hand count of integral ideals with norm 1..10: 1,1,2,1,1,2,2,1,3,1
  CHECK(L.items.size() == 15);
  int n9 = 0;
  for (auto& it : L.items)
    if (it.nrm_z == 9) n9++;
  CHECK(n9 == 3);
  for (auto& it : L.items) CHECK(Q(it.nrm_z) == ideal_norm(it.id));
}

TEST_CASE("[DERIVED] principal generators") {
  auto k = NumberField::quadratic(-5);
  auto u = unit_group(k);
  QVec x = {Q(7), Q(2)};  // norm 69
  FracIdeal a = ideal_principal(k, x);
  auto g = principal_generator(a, u);
  REQUIRE(g.has_value());
  CHECK(ideal_eq(ideal_principal(k, *g), a));
  FracIdeal p2 = ideal_from_gens(k, {{Q(2), Q(0)}, {Q(1), Q(1)}});
  CHECK(!principal_generator(p2, u).has_value());

  // real quadratic: generator search must cope with the unit orbit
  auto k10 = NumberField::quadratic(10);
  auto u10 = unit_group(k10);
  QVec y = {Q(7), Q(1)};  // 7 + sqrt10, norm 39
  FracIdeal b = ideal_principal(k10, y);
  auto gb = principal_generator(b, u10);
  REQUIRE(gb.has_value());
  CHECK(ideal_eq(ideal_principal(k10, *gb), b));
}

TEST_CASE("[DERIVED] class groups of quadratic fields") {
  for (int D : {5, 2, -1}) {
    auto k = NumberField::quadratic(D);
    auto u = unit_group(k);
    PrimeTable pt(k);
    ClassGroup cg(pt, u);
    CHECK(cg.h() == 1);
  }
  for (int D : {-5, 10}) {
    auto k = NumberField::quadratic(D);
    auto u = unit_group(k);
    PrimeTable pt(k);
    ClassGroup cg(pt, u);
    REQUIRE(cg.h() == 2);
    int c = cg.class_of(pt.primes_above(2)[0].id);
    CHECK(c == 1);
    CHECK(cg.mul(1, 1) == 0);
    CHECK(cg.inv(1) == 1);
    CHECK(cg.chi(0, 1).real() == doctest::Approx(1.0));
    CHECK(cg.chi(1, 1).real() == doctest::Approx(-1.0));
  }
}

TEST_CASE("[DERIVED] class group of the quartic CM field") {
  auto k = heckelab_test::quartic_cm();
  QVec hint = heckelab_test::quartic_cm_unit_hint();
  auto u = unit_group(k, {hint});
  PrimeTable pt(k);
  ClassGroup cg(pt, u);
  CHECK(cg.h() == 2);
}

TEST_CASE("[TRIVIAL] content ideals") {
  auto k = NumberField::quadratic(-5);
  FracIdeal O = ideal_ring(k);
  std::vector<FracIdeal> comp = {O, O};
  std::vector<QVec> x = {{Q(2), Q(0)}, {Q(1), Q(1)}};
  FracIdeal c = content_ideal(k, x, comp);
  FracIdeal p2 = ideal_from_gens(k, {{Q(2), Q(0)}, {Q(1), Q(1)}});
  CHECK(ideal_eq(c, ideal_inv(p2)));
  CHECK(ideal_is_anti_integral(c));
  // scaling: content(alpha x) = alpha^{-1} content(x)
  QVec alpha = {Q(1), Q(2)};
  std::vector<QVec> ax = {k->mul(alpha, x[0]), k->mul(alpha, x[1])};
  FracIdeal ca = content_ideal(k, ax, comp);
  CHECK(ideal_eq(ca, ideal_mul(c, ideal_principal(k, k->inv(alpha)))));
}
