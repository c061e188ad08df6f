// Upper half space: Iwasawa coordinates, Det, O_F-lattices, Gamma_L,
// and Heegner objects.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "space.hpp"

using namespace heckelab;
using namespace heckelab_test;

namespace {

CMat rand_matrix(std::mt19937& rng, int n, bool complex_entries) {
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  CMat g(n, std::vector<cd>(n));
  for (auto& r : g)
    for (auto& e : r) e = complex_entries ? cd(U(rng), U(rng)) : cd(U(rng), 0.0);
  return g;
}

// Random element of K_sigma: product of Givens rotations (and phases for
// the unitary case).
CMat rand_k(std::mt19937& rng, int n, bool unitary) {
  std::uniform_real_distribution<double> U(0.0, 6.28318);
  CMat k(n, std::vector<cd>(n, 0.0));
  for (int i = 0; i < n; i++)
    k[i][i] = unitary ? std::polar(1.0, U(rng)) : cd(1.0);
  for (int a = 0; a < n; a++)
    for (int b = a + 1; b < n; b++) {
      double th = U(rng);
      CMat r(n, std::vector<cd>(n, 0.0));
      for (int i = 0; i < n; i++) r[i][i] = 1.0;
      r[a][a] = std::cos(th), r[b][b] = std::cos(th);
      r[a][b] = std::sin(th), r[b][a] = -std::sin(th);
      k = cmat_mul(k, r);
    }
  return k;
}

QVec elem(FieldPtr k, std::initializer_list<long> c) {
  QVec v;
  for (long x : c) v.push_back(Q(x));
  v.resize(k->d, Q(0));
  return v;
}

FMat shear2(FieldPtr k, const QVec& a, bool upper) {
  FMat g = fmat_identity(k, 2);
  if (upper) g[0][1] = a; else g[1][0] = a;
  return g;
}

}  // namespace

TEST_CASE("iwasawa: identity and classical forms") {
  auto F = NumberField::rationals();
  CMat id = {{1.0, 0.0}, {0.0, 1.0}};
  auto z = iwasawa(F, 2, {id});
  CHECK(std::abs(z.x[0][0][1]) < 1e-15);
  CHECK(z.y[0][0] == doctest::Approx(1.0).epsilon(1e-15));

  // g = [[y, x], [0, 1]] is already in Iwasawa form.
  CMat g = {{1.7, 0.3}, {0.0, 1.0}};
  z = iwasawa(F, 2, {g});
  CHECK(std::abs(z.x[0][0][1] - 0.3) < 1e-14);
  CHECK(z.y[0][0] == doctest::Approx(1.7).epsilon(1e-14));

  // z = i is fixed by the inversion [[0, -1], [1, 0]].
  FMat s = fmat_identity(F, 2);
  s[0][0] = F->zero_elem();
  s[1][1] = F->zero_elem();
  s[0][1] = F->neg(F->one);
  s[1][0] = F->one;
  auto zi = iwasawa(F, 2, {id});
  CHECK(point_dist(act(s, zi), zi) < 1e-12);
}

TEST_CASE("iwasawa: round trip and K/scaling invariance") {
  std::mt19937 rng(12345);
  std::vector<FieldPtr> fields = {NumberField::rationals(),
                                  NumberField::quadratic(5),
                                  NumberField::quadratic(-5)};
  for (auto& F : fields) {
    for (int n : {2, 3}) {
      for (int rep = 0; rep < 5; rep++) {
        std::vector<CMat> g;
        for (const auto& pl : F->places) g.push_back(rand_matrix(rng, n, !pl.is_real));
        UHSPoint z;
        try {
          z = iwasawa(F, n, g);
        } catch (const std::exception&) {
          continue;  // near-singular draw
        }
        CHECK(point_dist(iwasawa(F, n, point_matrix(z)), z) < 1e-12);
        // right K-action and scaling do not move the point
        std::vector<CMat> gk = g;
        for (int p = 0; p < (int)g.size(); p++) {
          gk[p] = cmat_mul(g[p], rand_k(rng, n, !F->places[p].is_real));
          double c = 0.7 + 0.1 * p;
          for (auto& r : gk[p])
            for (auto& e : r) e *= c;
        }
        CHECK(point_dist(iwasawa(F, n, gk), z) < 1e-9);
      }
    }
  }
}

TEST_CASE("det_function: classical values and invariance") {
  auto F = NumberField::rationals();
  auto L = of_lattice_std(F, {ideal_ring(F), ideal_ring(F)});
  std::vector<QVec> e = {F->zero_elem(), F->one};
  auto p = make_parabolic(L, ideal_ring(F), e);

  CMat id = {{1.0, 0.0}, {0.0, 1.0}};
  CHECK(det_function(p, {id}) == doctest::Approx(1.0).epsilon(1e-14));

  // z = x + iy has Det = y.
  CMat g = {{2.3, -0.4}, {0.0, 1.0}};
  CHECK(det_function(p, {g}) == doctest::Approx(2.3).epsilon(1e-13));

  // representative independence: scaling and K rotations
  std::mt19937 rng(777);
  auto z = iwasawa(F, 2, {g});
  for (int rep = 0; rep < 5; rep++) {
    CMat gk = cmat_mul(g, rand_k(rng, 2, false));
    for (auto& r : gk)
      for (auto& x : r) x *= 1.9;
    CHECK(det_function(p, {gk}) == doctest::Approx(det_function(p, z)).epsilon(1e-10));
  }

  // left P-invariance: upper shears fix a*e = Z*(0,1)
  for (long b : {1L, -3L, 7L}) {
    auto gamma = shear2(F, elem(F, {b}), true);
    CHECK(det_function(p, act(gamma, z)) ==
          doctest::Approx(det_function(p, z)).epsilon(1e-10));
  }
}

TEST_CASE("gamma_L_member") {
  auto F = NumberField::rationals();
  auto Z2 = of_lattice_std(F, {ideal_ring(F), ideal_ring(F)});
  CHECK(gamma_L_member(Z2, fmat_identity(F, 2)));
  CHECK(gamma_L_member(Z2, shear2(F, elem(F, {1}), true)));
  CHECK(gamma_L_member(Z2, shear2(F, elem(F, {-5}), false)));
  // det != 1 rejected
  FMat twos = fmat_identity(F, 2);
  twos[0][0] = F->from_int(2);
  CHECK(!gamma_L_member(Z2, twos));

  // L = (1/2)Z + Z: the unit shear moves the first component out of Z
  FracIdeal half = ideal_principal(F, {Q(1, 2)});
  auto L = of_lattice_std(F, {half, ideal_ring(F)});
  CHECK(!gamma_L_member(L, shear2(F, elem(F, {1}), true)));
  // but the shear by 2 lands back in Gamma_L: a_1^{-1} a_2 = 2Z
  CHECK(gamma_L_member(L, shear2(F, elem(F, {2}), true)));

  // quadratic base with a nontrivial coefficient ideal b = <1, sqrt10/2>
  auto ext = ext_quartic();
  auto FQ = ext.F;
  auto Lb = of_lattice_std(FQ, ext.comp);
  QVec sqrt10 = {Q(0), Q(1)};
  CHECK(gamma_L_member(Lb, shear2(FQ, sqrt10, true)));        // sqrt10 in b
  QVec quarter = {Q(0), Q(1, 4)};
  CHECK(!gamma_L_member(Lb, shear2(FQ, quarter, true)));      // sqrt10/4 not in b
}

TEST_CASE("of_from_rows recovers pseudo-bases and contents") {
  for (auto make : {ext_sqrt5, ext_sqrtm5, ext_quartic}) {
    auto ext = make();
    auto F = ext.F;
    // A = O_E corresponds to the standard pseudo-basis sum a_i e_i.
    HeegnerObject h = make_heegner(ext, ext.w, ideal_ring(ext.E));
    auto Lstd = of_lattice_std(F, ext.comp);
    CHECK(lat_eq(h.L.zl, Lstd.zl));
    // content of e_i is a_i
    for (int i = 0; i < ext.n; i++) {
      std::vector<QVec> e(ext.n, F->zero_elem());
      e[i] = F->one;
      CHECK(ideal_eq(of_content(h.L, e), ext.comp[i]));
    }
    CHECK(of_norm_covol(h.L) ==
          ideal_norm(ext.comp[0]) * ideal_norm(ext.comp[1]));
  }
  // principal A = (1+i) O_E in the quartic field
  auto ext = ext_quartic();
  QVec onepi = {Q(1), Q(1), Q(0), Q(0)};
  auto A = ideal_principal(ext.E, onepi);
  HeegnerObject h = make_heegner(ext, ext.w, A);
  QMat rows;
  for (const auto& r : A.lat.b) rows.push_back(of_flatten(h.phi_w(r)));
  CHECK(lat_eq(h.L.zl, lat_from_rows(rows, ext.n * ext.F->d)));
}

TEST_CASE("parabolic data validation") {
  auto F = NumberField::rationals();
  auto L = of_lattice_std(F, {ideal_ring(F), ideal_ring(F)});
  std::vector<QVec> e = {F->zero_elem(), F->one};
  CHECK_NOTHROW(make_parabolic(L, ideal_ring(F), e));
  FracIdeal twoZ = ideal_principal(F, {Q(2)});
  CHECK_THROWS(make_parabolic(L, twoZ, e));                   // not anti-integral
  std::vector<QVec> e2 = {F->from_int(2), F->from_int(4)};    // content (1/2)Z
  CHECK_THROWS(make_parabolic(L, ideal_ring(F), e2));
}

TEST_CASE("heegner point: real quadratic geodesic oracle") {
  auto ext = ext_sqrt5();
  auto E = ext.E;
  // w = (omega, 1)
  std::vector<QVec> w = {{Q(0), Q(1)}, {Q(1), Q(0)}};
  auto h = make_heegner(ext, w, ideal_ring(E));
  CHECK(h.rank == 1);
  auto z = heegner_point(h, {1.0, 1.0});
  CHECK(std::abs(z.x[0][0][1] - 0.5) < 1e-12);
  CHECK(z.y[0][0] == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-12));

  // general t against the Moebius form (a t i + abar/t) / (t i + 1/t)
  double a0 = E->embed(0, w[0]).real(), a1 = E->embed(1, w[0]).real();
  for (double t : {0.6, 1.3, 2.4}) {
    auto z2 = heegner_point(h, {t, 1.0 / t});
    cd num = cd(0, a0 * t) + a1 / t;
    cd den = cd(0, t) + 1.0 / t;
    cd zz = num / den;
    CHECK(std::abs(z2.x[0][0][1] - zz.real()) < 1e-11);
    CHECK(z2.y[0][0] == doctest::Approx(std::abs(zz.imag())).epsilon(1e-11));
  }
  CHECK_THROWS(heegner_point(h, {2.0, 1.0}));  // not norm-one
}

TEST_CASE("heegner point: rank zero cases are [W]") {
  auto ext = ext_sqrtm5();
  auto h = make_heegner(ext, ext.w, ideal_ring(ext.E));
  CHECK(h.rank == 0);
  auto z = heegner_point(h, {1.0});
  CHECK(point_dist(z, iwasawa(ext.F, 2, h.W)) == 0.0);

  auto extq = ext_quartic();
  auto hq = make_heegner(extq, extq.w, ideal_ring(extq.E));
  CHECK(hq.rank == 0);
  CHECK_NOTHROW(heegner_point(hq, {1.0, 1.0}));
}

TEST_CASE("delta_w: exact values and the discriminant identity") {
  struct Case {
    Extension ext;
    Q expect;
  };
  std::vector<Case> cases;
  cases.push_back({ext_sqrt5(), Q(5)});
  cases.push_back({ext_sqrtm5(), Q(5)});
  cases.push_back({ext_quartic(), Q(1)});
  for (auto& c : cases) {
    auto h = make_heegner(c.ext, c.ext.w, ideal_ring(c.ext.E));
    CHECK(h.delta_w_abs == c.expect);

    // |Delta_w|^{1/2} = prod_sigma |det W_sigma|^{n_sigma}
    double prod = 1.0;
    for (int s = 0; s < c.ext.F->num_places(); s++)
      prod *= std::pow(std::abs(cmat_det(h.W[s])), c.ext.F->places[s].nsig());
    double lhs = std::sqrt(h.delta_w_abs.get_d());
    CHECK(prod == doctest::Approx(lhs).epsilon(1e-8));

    // |Delta_w|^{1/2} = 2^{n r2(F) - r2(E)} |d_E|^{1/2} N(A) /
    //                   (|d_F|^{n/2} prod N(a_i))
    auto E = c.ext.E;
    auto F = c.ext.F;
    int n = c.ext.n;
    double rhs = std::pow(2.0, n * F->r2 - E->r2) *
                 std::sqrt(std::abs(E->disc.get_d())) /
                 std::pow(std::abs(F->disc.get_d()), 0.5 * n);
    rhs /= of_norm_covol(h.L).get_d();  // = prod N(a_i) for A = O_E
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
  }
}

TEST_CASE("lem psi and periodicity at the matrix level") {
  for (auto make : {ext_sqrt5, ext_sqrtm5, ext_quartic}) {
    auto ext = make();
    std::vector<QVec> hintsE, hintsF;
    if (ext.E->d == 4) hintsE = {quartic_cm_unit_hint()};
    auto uE = unit_group(ext.E, hintsE);
    auto uF = unit_group(ext.F, hintsF);
    auto rel = relative_units(ext, uE, uF);
    auto h = make_heegner(ext, ext.w, ideal_ring(ext.E));

    std::vector<QVec> units = rel.gens;
    units.push_back(rel.zeta);
    for (const auto& u : units) {
      CHECK(lem_psi_residual(h, u) < 1e-8);
      CHECK(gamma_L_member(h.L, rho_w(h, u)));
    }

    if (h.rank == 1 && !rel.gens.empty()) {
      // varpi(reg(u) t) = rho_w(u) varpi(t)
      auto t0 = std::vector<double>{1.4, 1.0 / 1.4};
      auto ru = reg_x(h, rel.gens[0]);
      std::vector<double> t1(t0.size());
      for (size_t i = 0; i < t0.size(); i++) t1[i] = ru[i] * t0[i];
      auto lhs = heegner_point(h, t1);
      auto rhs = act(rho_w(h, rel.gens[0]), heegner_point(h, t0));
      CHECK(point_dist(lhs, rhs) < 1e-10);
    }
  }
}
