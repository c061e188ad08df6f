// Number fields presented by an integral-basis multiplication table over Q.
// Elements are coordinate row vectors with respect to the integral basis of
// O_k; arithmetic is exact (GMP rationals), embeddings are binary64.
#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "qlinalg.hpp"

namespace heckelab {

using cd = std::complex<double>;

// One archimedean place: a real embedding or a conjugate pair of complex
// embeddings (represented by the one with positive imaginary part).
struct Place {
  bool is_real = true;
  int nsig() const { return is_real ? 1 : 2; }  // local degree n_sigma
  std::vector<cd> emb;  // emb[i] = sigma(w_i) for the integral basis w
};

class NumberField {
 public:
  int d = 1;
  std::string name;
  // table[i][j] = coordinates of w_i * w_j.
  std::vector<std::vector<QVec>> table;
  QVec one;   // coordinates of 1
  Z disc;     // field discriminant = det of the trace form Gram matrix
  QMat trace_gram;
  int r1 = 1, r2 = 0;
  std::vector<Place> places;   // r1 real then r2 complex
  QLat ring;                   // Z^d (identity basis), for uniformity
  QLat codifferent;            // inverse different = trace-dual of O_k

  // --- element arithmetic (coordinate vectors) ---
  QVec zero_elem() const { return QVec(d, Q(0)); }
  QVec from_int(long v) const;
  QVec add(const QVec& x, const QVec& y) const;
  QVec sub(const QVec& x, const QVec& y) const;
  QVec neg(const QVec& x) const;
  QVec mul(const QVec& x, const QVec& y) const;
  QVec mul_scalar(const QVec& x, const Q& c) const;
  QVec inv(const QVec& x) const;  // throws on zero
  QVec pow(QVec x, long e) const; // e may be negative
  QMat rep_matrix(const QVec& x) const;  // y -> coords(x*y) = y * M
  Q trace(const QVec& x) const;
  Q norm(const QVec& x) const;
  bool is_zero(const QVec& x) const;
  bool is_integral(const QVec& x) const { return qvec_is_integral(x); }

  // Minimal polynomial of x, monic, returned as coefficient vector
  // c_0 + c_1 t + ... + t^m (last coefficient 1).
  QVec minpoly(const QVec& x) const;

  cd embed(int place, const QVec& x) const;
  // |sigma(x)| at the given place.
  double abs_embed(int place, const QVec& x) const;
  // log |N(x)| from embeddings (diagnostic) vs exact via norm().
  int num_places() const { return r1 + r2; }

  // --- constructors ---
  static std::shared_ptr<const NumberField> rationals();
  // Quadratic field Q(sqrt(D)), D squarefree and != 0, 1; basis (1, w) with
  // w = (1+sqrt D)/2 when D = 1 mod 4, else sqrt D.
  static std::shared_ptr<const NumberField> quadratic(long D);
  static std::shared_ptr<const NumberField> from_table(
      std::vector<std::vector<QVec>> table, const std::string& name);

 private:
  void finish();  // validate table, compute one/disc/embeddings
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Roots of a monic polynomial with rational coefficients (Durand-Kerner with
// Newton refinement); coeffs as in NumberField::minpoly.
std::vector<cd> poly_roots(const QVec& monic_coeffs);

}  // namespace heckelab
