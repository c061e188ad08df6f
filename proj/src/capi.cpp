// C ABI over the heckelab core: opaque workspace handle, error codes,
// exception firewall.  All heavy objects live in the Workspace; the report
// structs are plain doubles so the header stays C.
#include "heckelab.h"

#include <cstring>
#include <stdexcept>
#include <string>

#include "arith.hpp"
#include "config.hpp"
#include "eisenstein.hpp"
#include "hecke.hpp"
#include "special.hpp"
#include "zeta.hpp"

using namespace heckelab;

struct hl_workspace {
  std::unique_ptr<Workspace> ws;
};

namespace {

void put_err(char* errbuf, size_t errlen, const std::string& msg) {
  if (!errbuf || errlen == 0) return;
  size_t n = std::min(errlen - 1, msg.size());
  std::memcpy(errbuf, msg.c_str(), n);
  errbuf[n] = '\0';
}

int classify(const std::string& msg) {
  if (msg.find("cannot open") != std::string::npos) return HL_ERR_IO;
  return HL_ERR_PARSE;
}

template <typename Fn>
int guarded(char* errbuf, size_t errlen, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    put_err(errbuf, errlen, e.what());
    return HL_ERR_DOMAIN;
  } catch (const std::exception& e) {
    put_err(errbuf, errlen, e.what());
    return HL_ERR_INTERNAL;
  } catch (...) {
    put_err(errbuf, errlen, "unknown error");
    return HL_ERR_INTERNAL;
  }
}

// Iwasawa point with the same real (x, y) block at every place of F, n = 2.
UHSPoint diag_point(const Workspace& w, double x, double y) {
  if (w.n != 2)
    throw std::invalid_argument("point construction: only n = 2 supported");
  if (y <= 0) throw std::invalid_argument("point construction: y must be > 0");
  std::vector<CMat> mats(w.F->num_places(),
                         CMat{{cd(y, 0), cd(x, 0)}, {cd(0, 0), cd(1, 0)}});
  return iwasawa(w.F, 2, mats);
}

EisensteinSeries tuned_series(const Workspace& w, double X, double radius) {
  EisensteinSeries es = w.series();
  if (X > 0) es.X = X;
  if (radius > 0) es.bessel_radius = radius;
  return es;
}

}  // namespace

extern "C" {

const char* hl_version(void) { return "heckelab 1.0.0"; }

int hl_workspace_open(const char* path, hl_workspace** out, char* errbuf,
                      size_t errlen) {
  if (!path || !out) {
    put_err(errbuf, errlen, "null argument");
    return HL_ERR_DOMAIN;
  }
  *out = nullptr;
  try {
    auto h = new hl_workspace{load_workspace(path)};
    *out = h;
    return HL_OK;
  } catch (const std::exception& e) {
    put_err(errbuf, errlen, e.what());
    return classify(e.what());
  }
}

void hl_workspace_free(hl_workspace* ws) { delete ws; }

int hl_workspace_is_extension(const hl_workspace* ws) {
  return ws && ws->ws->is_extension ? 1 : 0;
}

int hl_class_number(const hl_workspace* ws) {
  return ws ? ws->ws->cgF->h() : 0;
}

const char* hl_workspace_name(const hl_workspace* ws) {
  return ws ? ws->ws->name.c_str() : "";
}

int hl_verify_hecke(const hl_workspace* ws, double s_re, double s_im,
                    double X, int nodes, hl_hecke_report* out, char* errbuf,
                    size_t errlen) {
  return guarded(errbuf, errlen, [&]() -> int {
    if (!ws || !out) throw std::invalid_argument("null argument");
    if (!ws->ws->is_extension)
      throw std::invalid_argument("verify-hecke needs an extension config");
    if (s_re <= 1.0)
      throw std::invalid_argument(
          "verify-hecke: Re s must be > 1 (direct torus integral)");
    HeckeJob j = ws->ws->job(X > 0 ? X : 1e4, nodes > 0 ? nodes : 64);
    HeckeReport r = verify_hecke(j, cd(s_re, s_im));
    out->lhs_re = r.lhs.real();
    out->lhs_im = r.lhs.imag();
    out->rhs_re = r.rhs.real();
    out->rhs_im = r.rhs.imag();
    out->dev = r.dev;
    out->rel_dev = r.rel_dev;
    out->tol = r.tol;
    out->quad_err = r.quad_err;
    out->win_err = r.win_err;
    out->pass = r.pass ? 1 : 0;
    return HL_OK;
  });
}

int hl_fourier_compare(const hl_workspace* ws, double x, double y,
                       double s_re, double s_im, double X, double radius,
                       hl_fourier_report* out, char* errbuf, size_t errlen) {
  return guarded(errbuf, errlen, [&]() -> int {
    if (!ws || !out) throw std::invalid_argument("null argument");
    if (ws->ws->is_extension)
      throw std::invalid_argument("fourier-compare needs a field config");
    if (s_re <= 1.0)
      throw std::invalid_argument("fourier-compare: Re s must be > 1");
    EisensteinSeries es = tuned_series(*ws->ws, X, radius);
    UHSPoint z = diag_point(*ws->ws, x, y);
    cd s(s_re, s_im);
    ZetaVal direct = es.F->d == 1 ? eisenstein_direct_smoothed(es, z, s)
                                  : eisenstein_direct_class(es, z, s);
    ZetaVal fourier = eisenstein_fourier(es, z, s);
    out->direct_re = direct.value.real();
    out->direct_im = direct.value.imag();
    out->fourier_re = fourier.value.real();
    out->fourier_im = fourier.value.imag();
    out->dev = std::abs(direct.value - fourier.value);
    out->direct_tail = direct.tail;
    out->fourier_tail = fourier.tail;
    return HL_OK;
  });
}

int hl_residue(const hl_workspace* ws, double x, double y, double radius,
               hl_residue_report* out, char* errbuf, size_t errlen) {
  return guarded(errbuf, errlen, [&]() -> int {
    if (!ws || !out) throw std::invalid_argument("null argument");
    if (ws->ws->is_extension)
      throw std::invalid_argument("residue needs a field config");
    EisensteinSeries es = tuned_series(*ws->ws, 0, radius);
    UHSPoint z = diag_point(*ws->ws, x, y);
    out->closed = residue_closed_form(es);
    ResidueFit fit = numeric_residue_and_constant(
        [&](double s) { return eisenstein_fourier(es, z, cd(s, 0)).value; },
        1.0);
    out->numeric = fit.residue.real();
    out->rel_dev = std::abs(out->numeric - out->closed) /
                   std::max(std::abs(out->closed), 1e-300);
    return HL_OK;
  });
}

int hl_relative_residue(const hl_workspace* ws, double X,
                        hl_residue_report* out, char* errbuf, size_t errlen) {
  return guarded(errbuf, errlen, [&]() -> int {
    if (!ws || !out) throw std::invalid_argument("null argument");
    if (!ws->ws->is_extension)
      throw std::invalid_argument("relative residue needs an extension config");
    HeckeJob j = ws->ws->job();
    RelResidueCheck rc =
        relative_residue_check(j, *ws->ws->lsF, X > 0 ? X : 1e5);
    out->closed = rc.closed;
    out->numeric = rc.numeric;
    out->rel_dev = rc.rel_dev;
    return HL_OK;
  });
}

int hl_limit(const hl_workspace* ws, double x, double y, double radius,
             hl_limit_report* out, char* errbuf, size_t errlen) {
  return guarded(errbuf, errlen, [&]() -> int {
    if (!ws || !out) throw std::invalid_argument("null argument");
    if (ws->ws->is_extension)
      throw std::invalid_argument("limit needs a field config");
    EisensteinSeries es = tuned_series(*ws->ws, 0, radius);
    UHSPoint z = diag_point(*ws->ws, x, y);
    KroneckerLimit kl = kronecker_limit_closed_form(es, z);
    ResidueFit fit = numeric_residue_and_constant(
        [&](double s) { return eisenstein_fourier(es, z, cd(s, 0)).value; },
        1.0);
    out->value_closed = kl.value;
    out->value_numeric = fit.constant.real();
    out->residue = kl.residue;
    out->h_term = kl.H;
    out->hstar_term = kl.Hstar;
    out->rel_dev = std::abs(out->value_numeric - out->value_closed) /
                   std::max(std::abs(out->value_closed), 1e-300);
    return HL_OK;
  });
}

int hl_decompose_zeta(const hl_workspace* ws, double s_re, double s_im,
                      double X, double* cls_out, double* sum_out,
                      double* zeta_e_out, char* errbuf, size_t errlen) {
  return guarded(errbuf, errlen, [&]() -> int {
    if (!ws || !cls_out || !sum_out || !zeta_e_out)
      throw std::invalid_argument("null argument");
    if (!ws->ws->is_extension)
      throw std::invalid_argument("decompose-zeta needs an extension config");
    if (s_re <= 1.0)
      throw std::invalid_argument("decompose-zeta: Re s must be > 1");
    HeckeJob j = ws->ws->job(X > 0 ? X : 1e4);
    cd s(s_re, s_im);
    auto [csum, ze] = class_sum_identity(j, s);
    // per-class columns, same prefactor and cutoff as the summed identity
    RelZetaContext ctx;
    ctx.ext = j.ext;
    ctx.uE = j.uE;
    ctx.cgF = j.cgF;
    ctx.Acomp = j.ext->comp;
    RelZetaTerms terms = relative_zeta_terms_elements(ctx, j.X);
    cd pref = std::pow(cd(j.h->delta_w_abs.get_d()), s / 2.0) *
              c_factor(*j.ext, *j.uE, *j.uF, *j.rel, s) *
              std::pow(cd(terms.NA), -s);
    for (int c = 0; c < j.cgF->h(); c++) {
      cd v = pref * relative_partial_zeta(terms, c, s).value;
      cls_out[2 * c] = v.real();
      cls_out[2 * c + 1] = v.imag();
    }
    sum_out[0] = csum.real();
    sum_out[1] = csum.imag();
    zeta_e_out[0] = ze.real();
    zeta_e_out[1] = ze.imag();
    return HL_OK;
  });
}

int hl_selftest(int* failures, char* errbuf, size_t errlen) {
  return guarded(errbuf, errlen, [&]() -> int {
    int fails = 0;
    std::string first;
    auto check = [&](bool ok, const std::string& what) {
      if (!ok) {
        fails++;
        if (first.empty()) first = what;
      }
    };

    // Divisor partition identities: sum of phi over divisors of m equals Nm,
    // and the Ramanujan-sum partition, for all Nm <= 500 over Q and Q(sqrt-5).
    for (long D : {0L, -5L}) {
      FieldPtr k = D ? NumberField::quadratic(D) : NumberField::rationals();
      PrimeTable pt(k);
      FracIdeal codiff{k, k->codifferent};
      FracIdeal bd = ideal_mul(codiff, different_ideal(k));  // = O_k
      IdealList list = enumerate_ideals(pt, 500.0);
      for (const EnumIdeal& m : list.items) {
        // divisors from the stored factorization
        std::vector<FracIdeal> divs = {ideal_ring(k)};
        for (const auto& [pi, e] : m.fact) {
          std::vector<FracIdeal> next;
          for (const auto& d : divs)
            for (int a = 0; a <= e; a++)
              next.push_back(ideal_mul(d, ideal_pow(list.primes[pi].id, a)));
          divs = std::move(next);
        }
        Z phi_total = 0;
        double tau_total = 0;
        for (const auto& d : divs) {
          phi_total += euler_phi(pt, d);
          tau_total += ramanujan_tau_fast(pt, d, codiff);
        }
        check(phi_total == m.nrm_z, "phi partition at Nm=" +
                                        m.nrm_z.get_str());
        double expect = ideal_divides(m.id, bd) ? m.nrm : 0.0;
        check(std::abs(tau_total - expect) < 1e-10,
              "tau partition at Nm=" + m.nrm_z.get_str());
      }
    }

    // dtimes measure identity
    for (auto& [nl, s] :
         std::vector<std::pair<std::vector<int>, cd>>{{{1, 1}, cd(1)},
                                                      {{2, 2}, cd(0.5)},
                                                      {{1, 1, 1}, cd(1)}}) {
      auto [lhs, rhs] = dtimes_identity(nl, s);
      check(std::abs(lhs - rhs) < 1e-6 * std::max(1.0, std::abs(rhs)),
            "dtimes identity");
    }

    // relative regulator lemma: R_{E/F} = [U_E : U_F U_{E/F}] / n^{rF - 1}
    //                                     * R_E / R_F
    for (long D : {5L, -5L}) {
      FieldPtr E = NumberField::quadratic(D);
      FieldPtr F = NumberField::rationals();
      Extension ext = make_extension(
          E, F, {{Q(1), Q(0)}}, {{Q(1), Q(0)}, {Q(0), Q(1)}},
          {ideal_ring(F), ideal_ring(F)});
      UnitGroup uE = unit_group(E), uF = unit_group(F);
      RelativeUnits rel = relative_units(ext, uE, uF);
      int rF = F->num_places();
      double closed = rel.index.get_d() / std::pow(2.0, rF - 1) *
                      uE.regulator / uF.regulator;
      check(std::abs(rel.regulator - closed) <=
                1e-8 * std::max(1.0, std::abs(closed)),
            "relative regulator lemma");
    }

    // Bessel K solves x^2 K'' + x K' - (x^2 + s^2) K = 0
    for (auto [s, x] : std::vector<std::pair<double, double>>{
             {1.5, 2.0}, {3.0, 5.0}, {0.5, 1.0}}) {
      double h = 1e-4;
      double km = bessel_K(cd(s, 0), x - h).real();
      double k0 = bessel_K(cd(s, 0), x).real();
      double kp = bessel_K(cd(s, 0), x + h).real();
      double d1 = (kp - km) / (2 * h);
      double d2 = (kp - 2 * k0 + km) / (h * h);
      double resid = x * x * d2 + x * d1 - (x * x + s * s) * k0;
      check(std::abs(resid) < 1e-6 * (x * x + s * s) * std::abs(k0),
            "Bessel ODE");
    }

    if (failures) *failures = fails;
    if (fails) {
      put_err(errbuf, errlen,
              "selftest: " + std::to_string(fails) + " failure(s), first: " +
                  first);
      return HL_ERR_INTERNAL;
    }
    return HL_OK;
  });
}

}  // extern "C"
