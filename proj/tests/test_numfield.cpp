#include <cmath>

#include "doctest.h"
#include "numfield.hpp"

using namespace heckelab;

TEST_CASE("Q itself") {
  auto f = NumberField::rationals();
  CHECK(f->d == 1);
  CHECK(f->disc == 1);
  CHECK(f->r1 == 1);
  CHECK(f->r2 == 0);
  CHECK(f->norm({Q(-7)}) == Q(-7));
}

TEST_CASE("real quadratic Q(sqrt 5)") {
  auto f = NumberField::quadratic(5);
  CHECK(f->disc == 5);
  CHECK(f->r1 == 2);
  CHECK(f->r2 == 0);
  // w = (1+sqrt5)/2: N(w) = -1, Tr(w) = 1.
  QVec w = {Q(0), Q(1)};
  CHECK(f->norm(w) == Q(-1));
  CHECK(f->trace(w) == Q(1));
  // embeddings: golden ratio and conjugate
  double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(std::abs(f->embed(1, w).real() - phi) < 1e-12);
  CHECK(std::abs(f->embed(0, w).real() - (1 - phi)) < 1e-12);
  // homomorphism property on random elements
  QVec a = {Q(3), Q(-2)}, b = {Q(-1), Q(7)};
  for (int p = 0; p < 2; p++) {
    cd lhs = f->embed(p, f->mul(a, b));
    cd rhs = f->embed(p, a) * f->embed(p, b);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
  // norm = product of embeddings
  double np = std::abs(f->embed(0, a) * f->embed(1, a));
  CHECK(std::abs(np - std::abs(f->norm(a).get_d())) < 1e-9);
}

TEST_CASE("imaginary quadratic Q(sqrt -5)") {
  auto f = NumberField::quadratic(-5);
  CHECK(f->disc == -20);
  CHECK(f->r1 == 0);
  CHECK(f->r2 == 1);
  QVec w = {Q(0), Q(1)};  // sqrt(-5)
  CHECK(f->norm(w) == Q(5));
  CHECK(f->trace(w) == Q(0));
  CHECK(std::abs(f->embed(0, w) - cd(0, std::sqrt(5.0))) < 1e-12);
}

TEST_CASE("field inverse and minpoly") {
  auto f = NumberField::quadratic(2);
  CHECK(f->disc == 8);
  QVec x = {Q(3), Q(1)};  // 3 + sqrt2
  QVec xi = f->inv(x);
  CHECK(f->mul(x, xi) == f->one);
  QVec mp = f->minpoly(x);  // t^2 - 6t + 7
  CHECK(mp == QVec{Q(7), Q(-6), Q(1)});
}

TEST_CASE("biquadratic field Q(sqrt10, i) from a multiplication table") {
  // Integral basis w = (1, i, sqrt10, (sqrt10 + i*sqrt10)/2); products were
  // derived by hand and are re-validated by the constructor (associativity,
  // commutativity, identity).
  // Shorthand: e0=1, e1=i, e2=sqrt10, e3=(e2+e1*e2)/2.
  auto v = [](long a, long b, long c, long d) {
    return QVec{Q(a), Q(b), Q(c), Q(d)};
  };
  std::vector<std::vector<QVec>> t(4, std::vector<QVec>(4));
  t[0][0] = v(1, 0, 0, 0);
  t[0][1] = v(0, 1, 0, 0);
  t[0][2] = v(0, 0, 1, 0);
  t[0][3] = v(0, 0, 0, 1);
  t[1][1] = v(-1, 0, 0, 0);
  t[1][2] = v(0, 0, -1, 2);        // i*sqrt10 = 2*e3 - e2
  t[1][3] = v(0, 0, -1, 1);        // i*e3 = (i*e2 - e2)/2 = e3 - e2
  t[2][2] = v(10, 0, 0, 0);
  t[2][3] = v(5, 5, 0, 0);         // e2*e3 = (10 + 10i)/2 = 5 + 5i
  t[3][3] = v(0, 5, 0, 0);         // e3^2 = (e2^2)(1+i)^2/4 = 10*2i/4 = 5i
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < i; j++) t[i][j] = t[j][i];
  auto f = NumberField::from_table(t, "Q(sqrt10, i)");
  CHECK(f->d == 4);
  CHECK(f->disc == 6400);
  CHECK(f->r1 == 0);
  CHECK(f->r2 == 2);
  // N(i) = 1, N(sqrt10) = 100, N(3+sqrt10) = (9-10)^2 = 1.
  CHECK(f->norm(v(0, 1, 0, 0)) == Q(1));
  CHECK(f->norm(v(0, 0, 1, 0)) == Q(100));
  CHECK(f->norm(v(3, 0, 1, 0)) == Q(1));
  // codifferent covolume = 1/|d_E|
  CHECK(lat_covol(f->codifferent) == Q(1, 6400));
}
