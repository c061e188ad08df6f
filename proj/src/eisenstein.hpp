// Eisenstein series on h^n_F: direct summation over unit orbits of lattice
// vectors, the Fourier-expansion evaluator (Phi_j / Psi_j terms with K-Bessel
// nu-sums), and the residue / Kronecker-limit closed forms at s = 1.
#pragma once

#include <functional>

#include "space.hpp"
#include "zeta.hpp"

namespace heckelab {

// One Eisenstein series E_{(a in L)} / E_{L,[a]} with its evaluation budget.
// The Fourier path requires L in diagonal form a_1 e_1 + ... + a_n e_n.
struct EisensteinSeries {
  FieldPtr F;
  const UnitGroup* uF = nullptr;
  PrimeTable* pt = nullptr;
  const ClassGroup* cg = nullptr;
  LSeries* ls = nullptr;   // shared ideal/L-function cache
  OFLattice L;
  FracIdeal a;             // anti-integral
  double X = 1e4;          // direct-sum bound on (prod_s ||x g_s||^{n_s})^n
  double bessel_radius = 30.0;  // nu-sum cutoff on sum_s 2 pi ||nu g_s||
};

EisensteinSeries make_eisenstein(FieldPtr F, const UnitGroup* uF,
                                 PrimeTable* pt, const ClassGroup* cg,
                                 LSeries* ls, OFLattice L, FracIdeal a);

// Canonical O_F^x-orbit representatives of nonzero x in L with
// nrm(x) = prod_sigma ||x g_sigma||^{n_sigma} <= T, each orbit once.
// An optional exact filter restricts the set (it must be O_F^x-stable).
struct EisOrbits {
  std::vector<std::vector<QVec>> reps;
  std::vector<double> nrm;
  std::vector<int> cls;      // class index of the content ideal
  std::vector<char> exact;   // content ideal == a
  double det = 1;            // Det = prod_sigma |det g_sigma|^{n_sigma}
  double T = 0;
};
EisOrbits eis_orbits(
    const EisensteinSeries& es, const UHSPoint& z, double T,
    const std::function<bool(const std::vector<QVec>&)>& filter = nullptr);

// E_{(a in L)}(z, s): content(x) = a exactly.  Requires Re s > 1.
ZetaVal eisenstein_direct(const EisensteinSeries& es, const UHSPoint& z, cd s);
// E_{L,[a]}(z, s): content class [a].
ZetaVal eisenstein_direct_class(const EisensteinSeries& es, const UHSPoint& z,
                                cd s);

// E_{L,[a]}(z, s) with a smooth cutoff at t = nrm^n ~ es.X and the exact
// lattice-point-density compensation for the removed tail; the remaining
// error is the count fluctuation against a C-infinity window (far below the
// sharp-cutoff tail). Implemented for F = Q, where the density is the
// elementary ball-volume constant.
ZetaVal eisenstein_direct_smoothed(const EisensteinSeries& es,
                                   const UHSPoint& z, cd s);

// Proposition "prop eis ser" (3):
// E_{L,[a]}(z,s) = zeta_F(a^{-1}, ns) N(a)^{-ns} E_{(a in L)}(z,s).
struct ClassRelationReport {
  cd lhs = 0, rhs = 0;
  double dev = 0, tol = 0;
  bool pass = false;
};
ClassRelationReport eisenstein_class_relation_check(const EisensteinSeries& es,
                                                    const UHSPoint& z, cd s);

// zeta_F(A, s) over the ideal class with index cls, through the character
// decomposition (1/h) sum_chi conj(chi(cls)) L(s, chi); tail-controlled.
ZetaVal partial_zeta_chi(const LSeries& ls, int cls, cd s);

// c_j(z, s) prefactor of the Fourier terms; j = n-1 at s = 1 is the
// z-independent constant c_{n-1} of the residue formula.
cd fourier_c(const EisensteinSeries& es, int j, const UHSPoint& z, cd s);

// Phi_j(z,s) = c_j(z,s) Z_{[a a_{n-j}^{-1}]}(ns, ..., ns-j+1; empty).
cd phi_term(const EisensteinSeries& es, int j, const UHSPoint& z, cd s);

// Psi_j(z,s) = d_j(z,s) sum over integral n != 0 of the Z-factor times the
// K-Bessel nu-sum over (Lambda^{(j+1)})_{n^{-1}}, truncated at the series'
// bessel_radius; *tail receives a decay-envelope bound for the remainder.
cd psi_term(const EisensteinSeries& es, int j, const UHSPoint& z, cd s,
            double* tail = nullptr);

// Theorem "fourier exp thm":
// zeta_F(a^{-1}, ns) (sum_{j<=n-2}(Phi_j + Psi_j) + Phi_{n-1}).
// Valid wherever the continued terms are (in particular 1/n < Re s).
ZetaVal eisenstein_fourier(const EisensteinSeries& es, const UHSPoint& z, cd s);

// Theorem "res formula eis": residue of E_{L,[a]}(z, s) at s = 1,
// (N a_1...N a_n)^{-1} (2^{r2} pi^{d/2}/sqrt|d_F|)^n (2^{r1}/Gamma_F(n))
// (R_F/(n w_F)) zeta_F(a^{-1}, n)/zeta_F(n).
double residue_closed_form(const EisensteinSeries& es);

// Theorem "limit formula eis": constant term of E_{L,[a]}(z, s) at s = 1.
struct KroneckerLimit {
  double value = 0;     // E^{(0)}(z, 1)
  double H = 0;         // H_{L,[a]}(z)
  double Hstar = 0;     // H*_{L,[a]}(z) (automorphic part)
  double residue = 0;   // matching closed-form residue
  double err = 0;       // accumulated truncation estimate
};
KroneckerLimit kronecker_limit_closed_form(const EisensteinSeries& es,
                                           const UHSPoint& z);

// Diagnostic: vol(N \ N(R)) = prod_{i<n} sqrt|d_F| N(a_i^{-1} a_n) under the
// dx_F normalization; printed by the self tests to expose any measure
// mismatch in the Fourier prefactors.
double vol_N_quotient(const EisensteinSeries& es);

}  // namespace heckelab
