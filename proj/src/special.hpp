// Special functions: complex gamma/digamma, gamma factors over a field and
// relative gamma factors, K-Bessel functions by quadrature of the integral
// representation, the dtimes measure identity, Gauss-Legendre rules, and
// the Riemann zeta function by Euler-Maclaurin.
#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "extension.hpp"
#include "numfield.hpp"

namespace heckelab {

cd cgamma(cd s);        // Gamma(s), Lanczos; poles -> inf
cd clgamma(cd s);       // principal log Gamma for Re s > 0
double digamma(double x);
cd cdigamma(cd s);

// Gamma_k(s) = prod_sigma Gamma(n_sigma s / 2).
cd gamma_k(const NumberField& k, cd s);
// psi_k(s) = sum_sigma (n_sigma/2) psi(n_sigma s / 2).
cd digamma_k(const NumberField& k, cd s);

// Relative gamma factor by the closed form:
// prod_tau (n_tau/2) Gamma(n_tau s/2) / prod_sigma (n n_sigma/2) Gamma(n n_sigma s/2).
cd gamma_rel(const Extension& ext, cd s);
// The same quantity by quadrature of the defining integral over T_{E/F}
// (fibers over the F-places; only 0- and 1-dimensional fibers supported,
// complex base places are out of scope).
double gamma_rel_quadrature(const Extension& ext, double s, int nodes = 800);

// K_s(x) = int_0^infty e^{-x cosh t} cosh(s t) dt, x > 0.
cd bessel_K(cd s, double x);
// K_k(s, x) = prod_sigma K_{n_sigma s / 2}(x_sigma).
cd bessel_K_field(const NumberField& k, cd s, const std::vector<double>& x);

// Lemma "dtimes": returns (lhs, rhs) of
// n Gamma(ns) int_T (t_1+...+t_r)^{-ns} d^x t  =  prod_i n_i Gamma(n_i s),
// with T = {prod t_i^{n_i} = 1} and the pullback measure prod_{i != r} n_i dt/t.
std::pair<cd, cd> dtimes_identity(const std::vector<int>& n_list, cd s,
                                  int nodes = 400);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Riemann zeta by Euler-Maclaurin, accurate to ~1e-14 for |Im s| modest.
cd riemann_zeta(cd s);

}  // namespace heckelab
