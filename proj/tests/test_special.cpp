#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "ideals.hpp"
#include "special.hpp"

using namespace heckelab;

namespace {
const double kEuler = 0.5772156649015329;

Extension ext_sqrt5() {
  auto E = NumberField::quadratic(5);
  auto F = NumberField::rationals();
  QMat emb = {{Q(1), Q(0)}};
  std::vector<QVec> w = {{Q(1), Q(0)}, {Q(0), Q(1)}};
  std::vector<FracIdeal> comp = {ideal_ring(F), ideal_ring(F)};
  return make_extension(E, F, emb, w, comp);
}

Extension ext_sqrtm5() {
  auto E = NumberField::quadratic(-5);
  auto F = NumberField::rationals();
  QMat emb = {{Q(1), Q(0)}};
  std::vector<QVec> w = {{Q(1), Q(0)}, {Q(0), Q(1)}};
  std::vector<FracIdeal> comp = {ideal_ring(F), ideal_ring(F)};
  return make_extension(E, F, emb, w, comp);
}
}  // namespace

TEST_CASE("[DERIVED] complex gamma and digamma") {
  CHECK(cgamma(cd(0.5, 0)).real() == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(cgamma(cd(4.7, 0)).real() == doctest::Approx(std::tgamma(4.7)).epsilon(1e-13));
  cd g1i = cgamma(cd(1, 1));
  CHECK(g1i.real() == doctest::Approx(0.49801566811835604).epsilon(1e-12));
  CHECK(g1i.imag() == doctest::Approx(-0.15494982830181069).epsilon(1e-12));
  // reflection region
  CHECK(cgamma(cd(-0.5, 0)).real() == doctest::Approx(-2 * std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(digamma(1.0) == doctest::Approx(-kEuler).epsilon(1e-12));
  CHECK(digamma(0.5) == doctest::Approx(-kEuler - 2 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("[TRIVIAL] gamma_k at unit arguments") {
  CHECK(gamma_k(*NumberField::rationals(), cd(2, 0)).real() == doctest::Approx(1.0));
  CHECK(gamma_k(*NumberField::quadratic(5), cd(2, 0)).real() == doctest::Approx(1.0));
  CHECK(gamma_k(*NumberField::quadratic(-5), cd(1, 0)).real() == doctest::Approx(1.0));
}

TEST_CASE("[DERIVED] relative gamma factor closed forms") {
  Extension e5 = ext_sqrt5();
  // Gamma(s/2)^2 / (4 Gamma(s)); at s = 2 this is 1/4
  CHECK(gamma_rel(e5, cd(2, 0)).real() == doctest::Approx(0.25).epsilon(1e-12));
  double s = 1.7;
  double expect = std::pow(std::tgamma(s / 2), 2) / (4 * std::tgamma(s));
  CHECK(gamma_rel(e5, cd(s, 0)).real() == doctest::Approx(expect).epsilon(1e-12));
  Extension em5 = ext_sqrtm5();
  CHECK(gamma_rel(em5, cd(1.3, 0)).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("[DERIVED] relative gamma factor agrees with the defining integral") {
  Extension e5 = ext_sqrt5();
  for (double s : {1.2, 2.0, 3.5}) {
    double quad = gamma_rel_quadrature(e5, s);
    CHECK(quad == doctest::Approx(gamma_rel(e5, cd(s, 0)).real()).epsilon(1e-8));
  }
  // imaginary quadratic: zero-dimensional torus, integral = 1
  CHECK(gamma_rel_quadrature(ext_sqrtm5(), 1.4) == doctest::Approx(1.0));
}

TEST_CASE("[DERIVED] digamma over k") {
  auto Qf = NumberField::rationals();
  CHECK(digamma_k(*Qf, cd(1, 0)).real() ==
        doctest::Approx(0.5 * (-kEuler - 2 * std::log(2.0))).epsilon(1e-12));
  double diff = digamma_k(*Qf, cd(2, 0)).real() - digamma_k(*Qf, cd(1, 0)).real();
  CHECK(diff == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(digamma_k(*NumberField::quadratic(-5), cd(1, 0)).real() ==
        doctest::Approx(-kEuler).epsilon(1e-12));
}

TEST_CASE("[TRIVIAL] Bessel K closed form, symmetry, decay") {
  double k_half = bessel_K(cd(0.5, 0), 1.0).real();
  CHECK(k_half == doctest::Approx(std::sqrt(M_PI / 2) * std::exp(-1.0)).epsilon(1e-12));
  CHECK(bessel_K(cd(0.7, 0), 2.3).real() ==
        doctest::Approx(bessel_K(cd(-0.7, 0), 2.3).real()).epsilon(1e-12));
  double decay = std::sqrt(50.0) * bessel_K(cd(1, 0), 50.0).real() * std::exp(50.0);
  CHECK(decay == doctest::Approx(std::sqrt(M_PI / 2)).epsilon(0.01));
}

TEST_CASE("[DERIVED] Bessel K satisfies its ODE") {
  for (auto [s, x] : std::vector<std::pair<double, double>>{{1.5, 2.0}, {3.0, 5.0}, {0.5, 1.0}}) {
    double h = 1e-4;
    double km = bessel_K(cd(s, 0), x - h).real();
    double k0 = bessel_K(cd(s, 0), x).real();
    double kp = bessel_K(cd(s, 0), x + h).real();
    double d1 = (kp - km) / (2 * h);
    double d2 = (kp - 2 * k0 + km) / (h * h);
    double resid = x * x * d2 + x * d1 - (x * x + s * s) * k0;
    CHECK(std::abs(resid) < 1e-6 * (x * x + s * s) * std::abs(k0));
  }
}

TEST_CASE("[DERIVED] Bessel K over a field and extreme arguments") {
  auto k = NumberField::quadratic(-5);  // one complex place, n_sigma = 2
  double v = bessel_K_field(*k, cd(1.5, 0), {2.0}).real();
  CHECK(v == doctest::Approx(bessel_K(cd(1.5, 0), 2.0).real()).epsilon(1e-13));
  // large order, tiny argument stays finite and positive in double range
  double big = bessel_K(cd(20, 0), 1e-3).real();
  CHECK(std::isfinite(big));
  // K_nu(x) ~ Gamma(nu)/2 * (2/x)^nu for x -> 0
  double approx = 0.5 * std::tgamma(20.0) * std::pow(2.0 / 1e-3, 20.0);
  CHECK(big == doctest::Approx(approx).epsilon(1e-3));
}

TEST_CASE("[PAPER] dtimes measure identity") {
  auto [l1, r1] = dtimes_identity({1, 1}, cd(1, 0));
  CHECK(std::abs(l1 - r1) < 1e-8);
  CHECK(r1.real() == doctest::Approx(1.0));
  auto [l2, r2] = dtimes_identity({1, 1, 1}, cd(1, 0), 200);
  CHECK(std::abs(l2 - r2) < 1e-6);
  auto [l3, r3] = dtimes_identity({2, 2}, cd(0.5, 0));
  CHECK(r3.real() == doctest::Approx(4.0));
  CHECK(std::abs(l3 - r3) < 1e-8);
  // mixed weights probe both measure conventions at once
  auto [l4, r4] = dtimes_identity({1, 2}, cd(0.8, 0));
  CHECK(std::abs(l4 - r4) < 1e-8 * std::abs(r4));
}

TEST_CASE("[DERIVED] Riemann zeta by Euler-Maclaurin") {
  CHECK(riemann_zeta(cd(2, 0)).real() == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-13));
  CHECK(riemann_zeta(cd(3, 0)).real() == doctest::Approx(1.2020569031595943).epsilon(1e-13));
  CHECK(riemann_zeta(cd(1.5, 0)).real() == doctest::Approx(2.612375348685488).epsilon(1e-13));
  CHECK(riemann_zeta(cd(0.5, 0)).real() == doctest::Approx(-1.4603545088095868).epsilon(1e-12));
  CHECK(riemann_zeta(cd(4, 0)).real() == doctest::Approx(std::pow(M_PI, 4) / 90).epsilon(1e-13));
}

TEST_CASE("[DERIVED] Gauss-Legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(12, x, w);
  double s0 = 0, s2 = 0, s10 = 0;
  for (int i = 0; i < 12; i++) {
    s0 += w[i];
    s2 += w[i] * x[i] * x[i];
    s10 += w[i] * std::pow(x[i], 10);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s2 == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(s10 == doctest::Approx(2.0 / 11).epsilon(1e-13));
}
