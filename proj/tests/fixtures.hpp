// Shared test fixtures.
#pragma once

#include "extension.hpp"
#include "numfield.hpp"

namespace heckelab_test {

// Q(sqrt10, i) with integral basis (1, i, sqrt10, (sqrt10 + i*sqrt10)/2);
// discriminant 6400, two complex places, CM over Q(sqrt10).
inline heckelab::FieldPtr quartic_cm() {
  using namespace heckelab;
  int d = 4;
  std::vector<std::vector<QVec>> t(d, std::vector<QVec>(d, QVec(d, Q(0))));
  auto set = [&](int i, int j, Q a, Q b, Q c, Q e) {
    t[i][j] = {a, b, c, e};
    t[j][i] = t[i][j];
  };
  for (int j = 0; j < d; j++) {
    t[0][j] = QVec(d, Q(0));
    t[0][j][j] = 1;
    t[j][0] = t[0][j];
  }
  set(1, 1, -1, 0, 0, 0);
  set(1, 2, 0, 0, -1, 2);
  set(1, 3, 0, 0, -1, 1);
  set(2, 2, 10, 0, 0, 0);
  set(2, 3, 5, 5, 0, 0);
  set(3, 3, 0, 5, 0, 0);
  return NumberField::from_table(t, "Q(sqrt10,i)");
}

// Hint for the fundamental unit 3 + sqrt10 in the basis above.
inline heckelab::QVec quartic_cm_unit_hint() {
  using heckelab::Q;
  return {Q(3), Q(0), Q(1), Q(0)};
}

inline heckelab::Extension ext_sqrt5() {
  using namespace heckelab;
  auto E = NumberField::quadratic(5);
  auto F = NumberField::rationals();
  QMat emb = {{Q(1), Q(0)}};
  std::vector<QVec> w = {{Q(1), Q(0)}, {Q(0), Q(1)}};  // (1, omega)
  std::vector<FracIdeal> comp = {ideal_ring(F), ideal_ring(F)};
  return make_extension(E, F, emb, w, comp);
}

inline heckelab::Extension ext_sqrtm5() {
  using namespace heckelab;
  auto E = NumberField::quadratic(-5);
  auto F = NumberField::rationals();
  QMat emb = {{Q(1), Q(0)}};
  std::vector<QVec> w = {{Q(1), Q(0)}, {Q(0), Q(1)}};  // (1, sqrt-5)
  std::vector<FracIdeal> comp = {ideal_ring(F), ideal_ring(F)};
  return make_extension(E, F, emb, w, comp);
}

// Q(sqrt10, i) over Q(sqrt10): O_E = O_F * 1 + b * (1+i), b = <1, sqrt10/2>.
inline heckelab::Extension ext_quartic() {
  using namespace heckelab;
  auto E = quartic_cm();
  auto F = NumberField::quadratic(10);
  QMat emb = {{Q(1), Q(0), Q(0), Q(0)}, {Q(0), Q(0), Q(1), Q(0)}};
  std::vector<QVec> w = {{Q(1), Q(0), Q(0), Q(0)}, {Q(1), Q(1), Q(0), Q(0)}};
  FracIdeal b = ideal_from_gens(F, {{Q(1), Q(0)}, {Q(0), Q(1, 2)}});
  std::vector<FracIdeal> comp = {ideal_ring(F), b};
  return make_extension(E, F, emb, w, comp);
}

}  // namespace heckelab_test
