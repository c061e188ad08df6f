// Partial zeta functions zeta_k(A, s) in ideal-sum and element-sum modes,
// the relative partial zeta function zeta_{E/F,A}(A^{-1}, s), numeric
// residues/constant terms at simple poles, and the smoothed residue of a
// truncated Dirichlet series.
#pragma once

#include <functional>
#include <utility>

#include "arith.hpp"
#include "extension.hpp"

namespace heckelab {

struct ZetaVal {
  cd value = 0;
  double tail = 0;  // truncation bound (absolute)
};

// Canonical O_k^x-orbit representatives of the nonzero lattice points with
// |N_{k/Q}(x)| <= X, each orbit exactly once. norm_abs[i] = |N(reps[i])|.
struct OrbitReps {
  std::vector<QVec> reps;
  std::vector<Q> norm_abs;
};
OrbitReps norm_orbit_reps(FieldPtr k, const UnitGroup& u, const QLat& lat,
                          double X);

// zeta_k([a], s) = sum over integral b in the class of a, Nb <= X.
ZetaVal partial_zeta_ideal(PrimeTable& pt, const ClassGroup& cg,
                           const FracIdeal& a, cd s, double X);
// Same target through element enumeration: integral b ~ a are b = (x) a
// with x in a^{-1} modulo units, Nb = |N(x)| N(a).
ZetaVal partial_zeta_elements(const UnitGroup& u, const FracIdeal& a, cd s,
                              double X);

// Relative partial zeta data. The O_E-ideal A is given by its pseudo-basis
// A = sum_i Acomp_i w_i over the relative basis w of ext; Acomp = ext.comp
// describes A = O_E.
struct RelZetaContext {
  const Extension* ext = nullptr;
  const UnitGroup* uE = nullptr;       // unit group of E (element-sum mode)
  const ClassGroup* cgF = nullptr;     // content ideal classes live here
  std::vector<FracIdeal> Acomp;        // component ideals of A (F-ideals)
  PrimeTable* ptE = nullptr;           // required for the ideal-sum mode
  const ClassGroup* cgE = nullptr;     // required for the ideal-sum mode
  PrimeTable* ptF = nullptr;           // required for the ideal-sum mode
};

// One term per O_E^x-orbit of x in A with |N_{E/Q}(x)| <= X:
// (|N_{E/Q}(x)|, class index in Cl_F of the content ideal a(x)).
struct RelZetaTerms {
  std::vector<std::pair<double, int>> terms;
  double NA = 1;  // absolute norm of A
  double X = 0;
};
// Element-sum mode: direct enumeration of A modulo O_E^x.
RelZetaTerms relative_zeta_terms_elements(const RelZetaContext& ctx, double X);
// Ideal-sum mode: orbits correspond to integral ideals b in [A^{-1}],
// x = principal_generator(b A); an independent path to the same terms.
RelZetaTerms relative_zeta_terms_ideals(const RelZetaContext& ctx, double X);

// zeta_{E/F,A}(A^{-1}, s) = N(A)^s sum n^{-s} over the terms in class clsF.
ZetaVal relative_partial_zeta(const RelZetaTerms& t, int clsF, cd s);

// Residue at s = 1 of the class-clsF relative partial zeta, from a smooth
// bump average of the term counts (Mellin: the bump kills the oscillating
// remainder of the counting function, leaving O(1/X) relative error).
double relative_zeta_residue(const RelZetaTerms& t, int clsF);

// Residue at s = 1 of zeta_k([a], s) by the same smoothed counting; the
// non-circular counterpart of the class number formula value kappa_k / h.
double partial_zeta_residue(PrimeTable& pt, const ClassGroup& cg,
                            const FracIdeal& a, double X);

// Fit f(s) ~ c_{-1}/(s - s0) + c_0 + c_1 (s - s0) by symmetric samples at
// s0 +- h0 2^{-j} with Richardson extrapolation in h^2.
struct ResidueFit {
  cd residue = 0;
  cd constant = 0;
  double residue_err = 0;
  double constant_err = 0;
};
ResidueFit numeric_residue_and_constant(const std::function<cd(double)>& f,
                                        double s0, double h0 = 1.0 / 16,
                                        int depth = 4);

}  // namespace heckelab
