// The generalized upper half space h^n_F: Iwasawa coordinates, the Det
// function of a parabolic data, O_F-lattices in F^n (pseudo-bases), the
// arithmetic group Gamma_L, and Heegner objects W, I(t), varpi(t).
#pragma once

#include <complex>
#include <vector>

#include "extension.hpp"
#include "ideals.hpp"
#include "numfield.hpp"

namespace heckelab {

using CMat = std::vector<std::vector<cd>>;
// n x n matrix of field elements (coordinate vectors), row major.
using FMat = std::vector<std::vector<QVec>>;

CMat cmat_mul(const CMat& a, const CMat& b);
cd cmat_det(CMat a);
CMat cmat_inverse(CMat a);

// --- exact F-matrix helpers ---
FMat fmat_identity(FieldPtr k, int n);
FMat fmat_mul(FieldPtr k, const FMat& a, const FMat& b);
QVec fmat_det(FieldPtr k, const FMat& m);
FMat fmat_inverse(FieldPtr k, FMat m);  // throws on singular
// Row vector times matrix over F.
std::vector<QVec> fvec_apply(FieldPtr k, const std::vector<QVec>& x,
                             const FMat& m);
// Entrywise embedding at a place of F.
CMat fmat_embed(FieldPtr k, const FMat& m, int place);

// --- O_F-lattices in F^n ---
// L = a_1 v_1 + ... + a_n v_n with fractional ideals a_i and an F-basis v_i
// of F^n; zl is the underlying Z-lattice of rank n*d in flattened coordinates
// (the j-th F-component of a vector occupies coordinates [j*d, (j+1)*d)).
struct OFLattice {
  FieldPtr k;
  int n = 1;
  std::vector<std::vector<QVec>> vecs;
  std::vector<FracIdeal> coef;
  QLat zl;
};

OFLattice of_lattice(FieldPtr k, std::vector<std::vector<QVec>> vecs,
                     std::vector<FracIdeal> coef);
// Standard basis vectors e_i with coefficient ideals coef.
OFLattice of_lattice_std(FieldPtr k, std::vector<FracIdeal> coef);
// Pseudo-basis of the O_F-module spanned by `rows` (a full-rank Z-lattice in
// the flattened coordinates that is stable under O_F); Dedekind pseudo-HNF.
OFLattice of_from_rows(FieldPtr k, int n, const QMat& rows);

QVec of_flatten(const std::vector<QVec>& x);
std::vector<QVec> of_unflatten(FieldPtr k, int n, const QVec& row);

bool of_contains(const OFLattice& L, const std::vector<QVec>& x);
// Content ideal {alpha in F : alpha*x in L}; x must be nonzero.
FracIdeal of_content(const OFLattice& L, const std::vector<QVec>& x);
// Product of N(a_i) times |N_{F/Q}(det(v_i))|: pseudo-basis invariant equal
// to covol(zl) / covol(O_F^n).
Q of_norm_covol(const OFLattice& L);
// L * gamma for gamma in GL_n(F) (right row action).
OFLattice of_transform(const OFLattice& L, const FMat& gamma);

// Gamma_L membership: det gamma = 1 (exact) and L gamma = L.
bool gamma_L_member(const OFLattice& L, const FMat& gamma);

// --- Iwasawa coordinates ---
// z = [g] with representative g = X Y per place: X unit upper triangular with
// entries x[p][i][j] (i < j), Y = diag(y'_1, ..., y'_{n-1}, 1) and
// y'_i = y[p][i] * ... * y[p][n-2] in terms of the stored y_i > 0.
struct UHSPoint {
  FieldPtr k;
  int n = 1;
  std::vector<CMat> x;                  // per place, unit upper triangular
  std::vector<std::vector<double>> y;   // per place, size n-1
  double yprime(int place, int i) const {  // y'_{i+1} in 0-based i, y'_{n-1}=1
    double v = 1.0;
    for (int j = i; j < n - 1; ++j) v *= y[place][j];
    return v;
  }
};

// Iwasawa normal form of an invertible matrix per place (QR by Gram-Schmidt
// on rows from the bottom, positive-real diagonal, last diagonal scaled to 1).
UHSPoint iwasawa(FieldPtr k, int n, const std::vector<CMat>& g);
std::vector<CMat> point_matrix(const UHSPoint& z);
// Left action z -> [gamma g] for exact gamma over F.
UHSPoint act(const FMat& gamma, const UHSPoint& z);
double point_dist(const UHSPoint& a, const UHSPoint& b);  // max coord diff

// --- parabolic data and Det ---
struct ParabolicData {
  OFLattice L;
  FracIdeal a;           // anti-integral
  std::vector<QVec> e;   // image of 1 in L, content(e) = a
};

// Validates e in L, a anti-integral, of_content(L, e) = a.
ParabolicData make_parabolic(OFLattice L, FracIdeal a, std::vector<QVec> e);

// Det([g]) = prod_sigma |det g_sigma|^{n_sigma} / ||e g_sigma||^{n n_sigma}.
double det_function(const ParabolicData& p, const std::vector<CMat>& g);
double det_function(const ParabolicData& p, const UHSPoint& z);

// --- Heegner objects ---
struct HeegnerObject {
  const Extension* ext = nullptr;
  std::vector<QVec> w;       // basis of E over F (E coordinates)
  FMat wchange;              // row i = coordinates of w_i in ext->w basis
  FMat wchange_inv;
  FracIdeal A;               // fractional O_E-ideal
  OFLattice L;               // corresponds to A under w
  std::vector<CMat> W;       // per F-place
  // Per F-place: the E-places above it, in column-block order; block width
  // n_{tau|sigma} = 2 iff sigma real and tau complex, else 1.
  std::vector<std::vector<int>> taus;
  std::vector<std::vector<int>> ntau;
  std::vector<bool> conj_emb;  // per E-place: stored embedding conjugated
  Q delta_w_abs;               // |Delta_w|, exact rational
  int rank = 0;                // dim T_{E/F} = #S_E - #S_F

  // F-coordinates of z in the w basis.
  std::vector<QVec> phi_w(const QVec& zE) const;
};

HeegnerObject make_heegner(const Extension& ext, std::vector<QVec> w,
                           FracIdeal A);

// I(t) per F-place; t is indexed by E-places, all positive.
std::vector<CMat> heegner_I(const HeegnerObject& h,
                            const std::vector<double>& t);
// Relative norm-one check: prod_{tau|sigma} t_tau^{n_{tau|sigma}} = 1.
bool heegner_norm_one(const HeegnerObject& h, const std::vector<double>& t,
                      double tol = 1e-10);
// varpi(t) = [W I(t)]; throws if t is not norm-one.
UHSPoint heegner_point(const HeegnerObject& h, const std::vector<double>& t);

// Regular representation rho_w(u): row i = phi_w(u * w_i).
FMat rho_w(const HeegnerObject& h, const QVec& uE);
// reg^x_{E/F}(u): t_tau = |tau(u)|.
std::vector<double> reg_x(const HeegnerObject& h, const QVec& uE);
// max over places of || R R^H - I ||_max with
// R = W^{-1} rho_w(u) W I(reg(u))^{-1}.
double lem_psi_residual(const HeegnerObject& h, const QVec& uE);

}  // namespace heckelab
