// The integral formula engine: quadrature of the Eisenstein series along a
// Heegner object T_{E/F}/U_{E/F} and comparison with the zeta-side closed
// form |Delta_w|^{s/2} c_{E/F}(s) N(A)^{-s} zeta_{E/F,[a]}(A^{-1}, s).
//
// Both sides are truncated by the same exact condition |N_{E/Q}(x)| <= X on
// the lattice points / zeta terms; the truncation commutes with the
// unfolding, so the finite-X identity is exact up to quadrature error and
// the unit-translate window cutoff.
#pragma once

#include "eisenstein.hpp"
#include "extension.hpp"
#include "space.hpp"
#include "zeta.hpp"

namespace heckelab {

// Gamma_{k/Q}(s) of Eq. "gamma factor" by the closed form
// prod_tau (n_tau/2) Gamma(n_tau s/2) / ((d/2) Gamma(d s/2)).
cd gamma_over_Q(const NumberField& k, cd s);

// c_{E/F}(s) = R_{E/F} (w_E R_E^{-1} Gamma_{E/Q}(s)) /
//              (w_F R_F^{-1} Gamma_{F/Q}(ns)).
cd c_factor(const Extension& ext, const UnitGroup& uE, const UnitGroup& uF,
            const RelativeUnits& rel, cd s);

// One verification job: the Heegner object (W, A, L), the parabolic class
// [a], and the shared truncation/quadrature budget.
struct HeckeJob {
  const Extension* ext = nullptr;
  const UnitGroup* uE = nullptr;
  const UnitGroup* uF = nullptr;
  const RelativeUnits* rel = nullptr;
  const HeegnerObject* h = nullptr;   // must be built on ext with w = ext.w
  PrimeTable* ptF = nullptr;
  const ClassGroup* cgF = nullptr;
  FracIdeal a;                        // anti-integral; selects [a] in Cl_F
  double X = 1e4;                     // truncation on |N_{E/Q}(x)|
  int nodes = 64;                     // trapezoid nodes per T_{E/F} dimension
};

// Precomputed orbit data shared by the nodes: one representative per
// O_E^x-orbit of nonzero x in A with |N_{E/Q}(x)| <= X, its per-place
// absolute values, norm, and content class; the coset scalings of
// U_E / (U_F U_{E/F}) and the relative-unit translate scalings.
struct HeckeOrbits {
  std::vector<std::vector<double>> emb;  // emb[i][tau] = |tau(x_i)|
  std::vector<double> nrm;               // |N_{E/Q}(x_i)|
  std::vector<int> cls;                  // content class in Cl_F
  std::vector<std::string> cont_key;     // exact content-ideal key
  std::vector<std::vector<double>> cosets;  // cosets[v][tau] = |tau(u_v)|
  std::vector<std::vector<double>> relgen;  // relgen[j][tau] = |tau(rho_j)|
  double det_w = 1;   // prod_sigma |det W_sigma|^{n_sigma}
  double torsion_factor = 1;  // w_E / w_F
};
HeckeOrbits hecke_orbits(const HeckeJob& job);

// E^{<=X}_{L,[a]} at the Heegner point t (length = rank of T_{E/F},
// coordinates in the relative-unit log basis).
cd hecke_node_value(const HeckeJob& job, const HeckeOrbits& orb, cd s,
                    const std::vector<double>& c, double* win_err = nullptr);

// LHS: R_{E/F} times the trapezoid average of hecke_node_value over the
// fundamental cell [0,1)^rank; rank 0 is the point value. *quad_err gets
// the node-halving difference, *win_err the translate-window bound.
cd integral_lhs(const HeckeJob& job, const HeckeOrbits& orb, cd s,
                double* quad_err = nullptr, double* win_err = nullptr);

// RHS: |Delta_w|^{s/2} c_{E/F}(s) N(A)^{-s} zeta_{E/F,[a]}(A^{-1}, s), with
// the relative partial zeta truncated at the same X through the zeta module.
cd integral_rhs(const HeckeJob& job, cd s);

struct HeckeReport {
  cd lhs = 0, rhs = 0;
  double dev = 0, rel_dev = 0, tol = 0;
  double quad_err = 0, win_err = 0;
  double delta_w = 0;       // |Delta_w|
  cd cfac = 0;              // c_{E/F}(s)
  bool pass = false;
};
HeckeReport verify_hecke(const HeckeJob& job, cd s);

// Corollary "cor int formula": sum of the per-class RHS over Cl_F equals
// |Delta_w|^{s/2} c_{E/F}(s) N(A)^{-s} zeta_E^{<=X}(A^{-1}, s) exactly
// (same truncated term multiset); returns (class sum, zeta_E side).
std::pair<cd, cd> class_sum_identity(const HeckeJob& job, cd s);

// Theorem "crude int formula" consistency: the single-a crude sum
// |Delta_w|^{s/2} c(s) sum_{x in A_a, |N|<=X} |N(x)|^{-s} against the
// theorem RHS re-expanded with zeta_F(a^{-1}, ns) from ls; agreement is up
// to the (reported) zeta tails. Returns (crude, re-expanded, tol).
struct CrudeCheck {
  cd crude = 0, expanded = 0;
  double tol = 0;
};
CrudeCheck crude_consistency(const HeckeJob& job, LSeries& lsF, cd s);

// Theorem "rel partial zeta thm" (2): numeric residue of the truncated
// relative partial zeta against kappa_E/h_E * zeta_F(a^{-1}, n)/zeta_F(n)
// with kappa_E/h_E = 2^{r1} (2pi)^{r2} R_E / (w_E sqrt|d_E|).
struct RelResidueCheck {
  double numeric = 0, closed = 0, rel_dev = 0;
};
RelResidueCheck relative_residue_check(const HeckeJob& job, LSeries& lsF,
                                       double X);

}  // namespace heckelab
