/* heckelab C API: verification of the relative Hecke integral formula,
 * Eisenstein Fourier expansions, residue and Kronecker limit formulas.
 *
 * Conventions:
 *   - Every function returns 0 on success and a nonzero HL_ERR_* code on
 *     failure; a human-readable diagnostic is written to (errbuf, errlen)
 *     when provided.
 *   - Complex values are passed and returned as (re, im) double pairs.
 *   - Workspaces are loaded from text config files (grammar documented in
 *     the repository README and src/config.hpp) and own every derived
 *     object; they are immutable after load and safe to share across
 *     threads for read-only calls.
 *   - Passing 0 (or a negative value) for a truncation / node-count / radius
 *     parameter selects the documented default.
 */
#ifndef HECKELAB_H
#define HECKELAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define HL_OK 0
#define HL_ERR_IO 1        /* config file missing or unreadable */
#define HL_ERR_PARSE 2     /* config grammar or validation error */
#define HL_ERR_DOMAIN 3    /* argument outside the guarded domain */
#define HL_ERR_INTERNAL 4  /* unexpected failure */

typedef struct hl_workspace hl_workspace;

/* Library version string, static storage. */
const char* hl_version(void);

/* Load a field or extension config; *out owns all derived objects. */
int hl_workspace_open(const char* path, hl_workspace** out, char* errbuf,
                      size_t errlen);
void hl_workspace_free(hl_workspace* ws);

/* 1 if the workspace is a relative extension E/F, 0 for a plain field. */
int hl_workspace_is_extension(const hl_workspace* ws);
/* Number of ideal classes of the base field F. */
int hl_class_number(const hl_workspace* ws);
/* Display name from the config ("name = ..."), static within ws. */
const char* hl_workspace_name(const hl_workspace* ws);

/* --- Hecke integral formula (extension workspaces) --- */
typedef struct {
  double lhs_re, lhs_im;   /* torus integral of the Eisenstein series */
  double rhs_re, rhs_im;   /* |Delta_w|^{s/2} c(s) N(A)^{-s} zeta_{E/F} */
  double dev;              /* |lhs - rhs| */
  double rel_dev;          /* dev / |rhs| */
  double tol;              /* a-priori bound from quadrature + windows */
  double quad_err;         /* trapezoid-grid error estimate */
  double win_err;          /* unit-translate window truncation bound */
  int pass;                /* dev <= tol */
} hl_hecke_report;

/* Verify the Hecke integral identity at s (Re s > 1).  X is the shared
 * |N_{E/Q}| truncation (default 1e4), nodes the quadrature grid (default
 * 64, must be even). */
int hl_verify_hecke(const hl_workspace* ws, double s_re, double s_im,
                    double X, int nodes, hl_hecke_report* out, char* errbuf,
                    size_t errlen);

/* --- Eisenstein two-path comparison (field workspaces, F = Q, n = 2) --- */
typedef struct {
  double direct_re, direct_im;   /* truncated orbit sum */
  double fourier_re, fourier_im; /* Phi/Psi Fourier expansion */
  double dev;                    /* |direct - fourier| */
  double direct_tail;            /* reported truncation tail, direct path */
  double fourier_tail;           /* reported truncation tail, Fourier path */
} hl_fourier_report;

/* Compare the direct and Fourier evaluations of zeta_F(a^{-1}, ns)
 * E_{L,[a]}(z, s) at z = x + iy (Re s > 1).  X is the direct-sum bound
 * (default 1e4), radius the K-Bessel cutoff (default 30). */
int hl_fourier_compare(const hl_workspace* ws, double x, double y,
                       double s_re, double s_im, double X, double radius,
                       hl_fourier_report* out, char* errbuf, size_t errlen);

/* --- Residue at s = 1 of the completed class Eisenstein series --- */
typedef struct {
  double closed;   /* closed-form residue (regulator / class data) */
  double numeric;  /* Richardson fit of (s - 1) zeta_F(a^{-1}, ns) E */
  double rel_dev;
} hl_residue_report;

/* Field workspaces: residue of zeta_F(a^{-1}, ns) E_{L,[a]}(z, s) at s = 1
 * for z = x + iy on the diagonal of the places (x = 0, y = 1 defaults). */
int hl_residue(const hl_workspace* ws, double x, double y, double radius,
               hl_residue_report* out, char* errbuf, size_t errlen);

/* Extension workspaces: residue at s = 1 of the relative partial zeta
 * function zeta_{E/F,[a]}(A^{-1}, s) against the closed form
 * kappa_E-style expression; X is the term bound (default 1e5). */
int hl_relative_residue(const hl_workspace* ws, double X,
                        hl_residue_report* out, char* errbuf, size_t errlen);

/* --- Kronecker limit formula (field workspaces) --- */
typedef struct {
  double value_closed;   /* constant term at s = 1, closed form */
  double value_numeric;  /* Richardson fit through the Fourier path */
  double residue;        /* residue used in the subtraction */
  double h_term;         /* H(z) from the limit formula */
  double hstar_term;     /* H*(z) (automorphic part) */
  double rel_dev;
} hl_limit_report;

int hl_limit(const hl_workspace* ws, double x, double y, double radius,
             hl_limit_report* out, char* errbuf, size_t errlen);

/* --- Relative zeta decomposition (extension workspaces) ---
 * Per-class values zeta_{E/F,A}(A^{-1}, s) for each ideal class A of F,
 * their sum, and the independent zeta_E(A^{-1}, s) element sum over the
 * same truncated term set.  cls_out must have room for hl_class_number(ws)
 * complex values (2 doubles each). */
int hl_decompose_zeta(const hl_workspace* ws, double s_re, double s_im,
                      double X, double* cls_out, double* sum_out,
                      double* zeta_e_out, char* errbuf, size_t errlen);

/* --- Built-in identity micro-suites (no workspace needed) ---
 * Runs the arithmetic-function, d-times, regulator, and Bessel-ODE
 * identity suites over Q and Q(sqrt-5).  Returns 0 iff all checks pass;
 * *failures receives the number of failed checks. */
int hl_selftest(int* failures, char* errbuf, size_t errlen);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HECKELAB_H */
