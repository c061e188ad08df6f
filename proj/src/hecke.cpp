#include "hecke.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "special.hpp"

namespace heckelab {

namespace {

const double kPi = 3.14159265358979323846;

std::string ideal_key(const FracIdeal& a) {
  std::ostringstream os;
  for (const auto& row : a.lat.b)
    for (const auto& q : row) os << q_to_string(q) << ";";
  return os.str();
}

// Z-lattice of A = sum_i comp_i w_i inside E (pseudo-basis of the ideal).
QLat pseudo_basis_lattice(const Extension& ex) {
  QMat rows;
  for (size_t i = 0; i < ex.w.size(); i++)
    for (const auto& g : ex.comp[i].lat.b)
      rows.push_back(ex.E->mul(ex.embed(g), ex.w[i]));
  return lat_from_rows(rows, ex.E->d);
}

void check_job(const HeckeJob& job) {
  if (!job.ext || !job.uE || !job.uF || !job.rel || !job.h || !job.cgF)
    throw std::invalid_argument("hecke: incomplete job");
  const Extension& ex = *job.ext;
  // The Acomp = ext.comp convention requires the Heegner basis w = ext.w.
  FieldPtr F = ex.F;
  int n = ex.n;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      QVec want = (i == j) ? F->one : F->zero_elem();
      if (!F->is_zero(F->sub(job.h->wchange[i][j], want)))
        throw std::invalid_argument("hecke: Heegner basis must equal ext.w");
    }
  if (job.rel->rank > 1)
    throw std::invalid_argument("hecke: relative rank > 1 unsupported");
  if (!ideal_contains(job.a, F->one))
    throw std::invalid_argument("hecke: a must be anti-integral");
}

// log-scale ell(scale) = sum_sigma n_sigma log(sum_{tau | sigma} scale_tau^2);
// the Eisenstein term is exp(-(n s / 2) ell).
double ell_of(const HeegnerObject& h, const std::vector<double>& sc) {
  const NumberField& F = *h.ext->F;
  double ell = 0;
  for (int p = 0; p < F.num_places(); p++) {
    double S = 0;
    for (int t : h.taus[p]) S += sc[t] * sc[t];
    ell += F.places[p].nsig() * std::log(S);
  }
  return ell;
}

}  // namespace

cd gamma_over_Q(const NumberField& k, cd s) {
  cd num = 1;
  for (const auto& pl : k.places) {
    double nt = pl.nsig();
    num *= (nt / 2.0) * cgamma(cd(nt) * s / 2.0);
  }
  return num / ((k.d / 2.0) * cgamma(cd((double)k.d) * s / 2.0));
}

cd c_factor(const Extension& ext, const UnitGroup& uE, const UnitGroup& uF,
            const RelativeUnits& rel, cd s) {
  cd ns = cd((double)ext.n) * s;
  cd num = (double)uE.w / uE.regulator * gamma_over_Q(*ext.E, s);
  cd den = (double)uF.w / uF.regulator * gamma_over_Q(*ext.F, ns);
  return rel.regulator * num / den;
}

HeckeOrbits hecke_orbits(const HeckeJob& job) {
  check_job(job);
  const Extension& ex = *job.ext;
  FieldPtr E = ex.E, F = ex.F;
  int npE = E->num_places();
  HeckeOrbits orb;

  QLat latA = pseudo_basis_lattice(ex);
  OrbitReps reps = norm_orbit_reps(E, *job.uE, latA, job.X);
  orb.emb.reserve(reps.reps.size());
  for (size_t i = 0; i < reps.reps.size(); i++) {
    const QVec& z = reps.reps[i];
    std::vector<double> a(npE);
    for (int t = 0; t < npE; t++) a[t] = E->abs_embed(t, z);
    orb.emb.push_back(std::move(a));
    orb.nrm.push_back(reps.norm_abs[i].get_d());
    FracIdeal cont = content_ideal(F, ex.phi(z), ex.comp);
    orb.cls.push_back(job.cgF->class_of(cont));
    orb.cont_key.push_back(ideal_key(cont));
  }

  // Coset representatives of U_E / (U_F U_{E/F}) by HNF digits in the
  // fundamental-unit coordinates of E.
  int rE = job.uE->rank;
  auto coords_of = [&](const QVec& u) {
    std::vector<double> c = job.uE->domain_coords(u);
    ZVec e(rE);
    for (int i = 0; i < rE; i++) {
      long r = std::lround(c[i]);
      if (std::abs(c[i] - (double)r) > 1e-6)
        throw std::runtime_error("hecke: unit coordinates not integral");
      e[i] = r;
    }
    return e;
  };
  std::vector<std::vector<long>> digits;
  if (rE == 0) {
    digits.push_back({});
  } else {
    ZMat rows;
    for (const auto& g : job.uF->gens) rows.push_back(coords_of(ex.embed(g)));
    for (const auto& g : job.rel->gens) rows.push_back(coords_of(g));
    if ((int)rows.size() != rE)
      throw std::runtime_error("hecke: unit rank mismatch");
    ZMat hn = hnf_rows(rows);
    if ((int)hn.size() != rE)
      throw std::runtime_error("hecke: unit subgroup not finite index");
    std::vector<long> a(rE, 0);
    for (;;) {
      digits.push_back(a);
      int i = 0;
      while (i < rE) {
        a[i]++;
        if (Z(a[i]) < hn[i][i]) break;
        a[i] = 0;
        i++;
      }
      if (i == rE) break;
    }
  }
  for (const auto& dg : digits) {
    QVec u = job.uE->apply_power_product(E->one, dg);
    std::vector<double> v(npE);
    for (int t = 0; t < npE; t++) v[t] = E->abs_embed(t, u);
    orb.cosets.push_back(std::move(v));
  }

  for (const auto& g : job.rel->gens) {
    std::vector<double> v(npE);
    for (int t = 0; t < npE; t++) v[t] = E->abs_embed(t, g);
    orb.relgen.push_back(std::move(v));
  }

  orb.det_w = 1;
  for (int p = 0; p < F->num_places(); p++)
    orb.det_w *= std::pow(std::abs(cmat_det(job.h->W[p])),
                          (double)F->places[p].nsig());
  orb.torsion_factor = (double)job.uE->w / (double)job.uF->w;
  return orb;
}

cd hecke_node_value(const HeckeJob& job, const HeckeOrbits& orb, cd s,
                    const std::vector<double>& c, double* win_err) {
  const HeegnerObject& h = *job.h;
  const Extension& ex = *job.ext;
  int npE = ex.E->num_places();
  int rank = job.rel->rank;
  int target = job.cgF->class_of(job.a);
  cd nsh = cd((double)ex.n) * s / 2.0;
  double sig = nsh.real();

  // node coordinates -> t in T_{E/F}
  std::vector<double> t(npE, 1.0);
  for (int j = 0; j < rank; j++)
    for (int tau = 0; tau < npE; tau++)
      t[tau] *= std::pow(orb.relgen[j][tau], c[j]);

  cd sum = 0;
  double werr = 0;
  std::vector<double> base(npE), cur(npE);
  for (size_t i = 0; i < orb.emb.size(); i++) {
    if (orb.cls[i] != target) continue;
    for (const auto& v : orb.cosets) {
      for (int tau = 0; tau < npE; tau++)
        base[tau] = orb.emb[i][tau] * v[tau] * t[tau];
      if (rank == 0) {
        sum += std::exp(-nsh * ell_of(h, base));
        continue;
      }
      // rank 1: walk to the minimum of the convex ell(m), then sweep both
      // ways until the terms fall below the cutoff.
      const std::vector<double>& r = orb.relgen[0];
      auto ell_at = [&](long m) {
        for (int tau = 0; tau < npE; tau++)
          cur[tau] = base[tau] * std::pow(r[tau], (double)m);
        return ell_of(h, cur);
      };
      long m0 = 0;
      double e0 = ell_at(0);
      { // descend
        double ep = ell_at(1), en = ell_at(-1);
        long dir = (ep < e0) ? 1 : ((en < e0) ? -1 : 0);
        if (dir != 0) {
          double prev = e0;
          for (long m = m0 + dir;; m += dir) {
            double e = ell_at(m);
            if (e >= prev) break;
            prev = e;
            m0 = m;
          }
          e0 = prev;
        }
      }
      double peak = std::exp(-sig * e0);
      double cut = 1e-18 * peak;
      for (long dir : {1L, -1L}) {
        double last = peak;
        for (long m = m0 + (dir > 0 ? 0 : -1);; m += dir) {
          double e = ell_at(m);
          double mag = std::exp(-sig * e);
          if (mag < cut) {
            // geometric envelope for the cut tail
            double ratio = (last > 0) ? std::min(0.9, mag / last) : 0.5;
            werr += mag / (1.0 - ratio);
            break;
          }
          sum += std::exp(-nsh * e);
          last = mag;
        }
      }
    }
  }
  if (win_err) *win_err = werr * orb.torsion_factor *
                          std::pow(orb.det_w, nsh.real() * 2.0 / ex.n);
  return std::pow(cd(orb.det_w), s) * orb.torsion_factor * sum;
}

cd integral_lhs(const HeckeJob& job, const HeckeOrbits& orb, cd s,
                double* quad_err, double* win_err) {
  int rank = job.rel->rank;
  double R = job.rel->regulator;
  if (rank == 0) {
    double we = 0;
    cd v = hecke_node_value(job, orb, s, {}, &we);
    if (quad_err) *quad_err = 0;
    if (win_err) *win_err = we;
    return v;
  }
  int K = job.nodes;
  if (K < 4 || K % 2) throw std::invalid_argument("hecke: nodes must be even >= 4");
  cd acc = 0, acc_half = 0;
  double wacc = 0;
  for (int j = 0; j < K; j++) {
    double we = 0;
    cd v = hecke_node_value(job, orb, s, {(double)j / K}, &we);
    acc += v;
    wacc += we;
    if (j % 2 == 0) acc_half += v;
  }
  cd mean = acc / (double)K;
  if (quad_err) *quad_err = R * std::abs(mean - acc_half / (double)(K / 2));
  if (win_err) *win_err = R * wacc / K;
  return R * mean;
}

cd integral_rhs(const HeckeJob& job, cd s) {
  check_job(job);
  RelZetaContext ctx;
  ctx.ext = job.ext;
  ctx.uE = job.uE;
  ctx.cgF = job.cgF;
  ctx.Acomp = job.ext->comp;
  RelZetaTerms terms = relative_zeta_terms_elements(ctx, job.X);
  int target = job.cgF->class_of(job.a);
  ZetaVal zv = relative_partial_zeta(terms, target, s);
  cd pref = std::pow(cd(job.h->delta_w_abs.get_d()), s / 2.0) *
            c_factor(*job.ext, *job.uE, *job.uF, *job.rel, s) *
            std::pow(cd(terms.NA), -s);
  return pref * zv.value;
}

HeckeReport verify_hecke(const HeckeJob& job, cd s) {
  if (s.real() <= 1.0)
    throw std::invalid_argument("hecke: Re s > 1 required");
  HeckeReport rep;
  HeckeOrbits orb = hecke_orbits(job);
  rep.lhs = integral_lhs(job, orb, s, &rep.quad_err, &rep.win_err);
  rep.rhs = integral_rhs(job, s);
  rep.delta_w = job.h->delta_w_abs.get_d();
  rep.cfac = c_factor(*job.ext, *job.uE, *job.uF, *job.rel, s);
  rep.dev = std::abs(rep.lhs - rep.rhs);
  rep.rel_dev = rep.dev / std::abs(rep.rhs);
  rep.tol = 3 * rep.quad_err + 2 * rep.win_err + 1e-11 * std::abs(rep.rhs);
  rep.pass = rep.dev <= rep.tol;
  return rep;
}

std::pair<cd, cd> class_sum_identity(const HeckeJob& job, cd s) {
  check_job(job);
  RelZetaContext ctx;
  ctx.ext = job.ext;
  ctx.uE = job.uE;
  ctx.cgF = job.cgF;
  ctx.Acomp = job.ext->comp;
  RelZetaTerms terms = relative_zeta_terms_elements(ctx, job.X);
  cd pref = std::pow(cd(job.h->delta_w_abs.get_d()), s / 2.0) *
            c_factor(*job.ext, *job.uE, *job.uF, *job.rel, s) *
            std::pow(cd(terms.NA), -s);
  cd csum = 0;
  for (int c = 0; c < job.cgF->h(); c++)
    csum += relative_partial_zeta(terms, c, s).value;
  // zeta_E^{<=X}(A^{-1}, s) by the element path over E, same cutoff
  QLat latA = pseudo_basis_lattice(*job.ext);
  FracIdeal A{job.ext->E, latA};
  ZetaVal ze = partial_zeta_elements(*job.uE, ideal_inv(A), s,
                                     job.X / terms.NA);
  return {pref * csum, pref * std::pow(cd(terms.NA), s) * ze.value};
}

CrudeCheck crude_consistency(const HeckeJob& job, LSeries& lsF, cd s) {
  HeckeOrbits orb = hecke_orbits(job);
  std::string akey = ideal_key(job.a);
  cd pref = std::pow(cd(job.h->delta_w_abs.get_d()), s / 2.0) *
            c_factor(*job.ext, *job.uE, *job.uF, *job.rel, s);
  CrudeCheck ck;
  cd crude_sum = 0;
  long cnt = 0;
  for (size_t i = 0; i < orb.emb.size(); i++)
    if (orb.cont_key[i] == akey) {
      crude_sum += std::exp(-s * std::log(orb.nrm[i]));
      cnt++;
    }
  ck.crude = pref * crude_sum;
  cd ns = cd((double)job.ext->n) * s;
  Q Na = ideal_norm(job.a);
  int ainv_cls = job.cgF->inv(job.cgF->class_of(job.a));
  ZetaVal zf = partial_zeta_chi(lsF, ainv_cls, ns);
  ck.expanded = integral_rhs(job, s) * std::pow(cd(Na.get_d()), ns) / zf.value;
  // the class-sum / single-a conversion only matches in the limit; both
  // Dirichlet tails bound the defect
  double sig = s.real();
  double tailx = (double)(cnt + 1) / job.X * std::pow(job.X, 1 - sig) /
                 (sig - 1);
  ck.tol = std::abs(pref) * tailx * (1.0 + std::pow(Na.get_d(), 2.0 * sig)) *
               job.cgF->h() +
           std::abs(ck.expanded) * zf.tail / std::abs(zf.value);
  return ck;
}

RelResidueCheck relative_residue_check(const HeckeJob& job, LSeries& lsF,
                                       double X) {
  check_job(job);
  RelZetaContext ctx;
  ctx.ext = job.ext;
  ctx.uE = job.uE;
  ctx.cgF = job.cgF;
  ctx.Acomp = job.ext->comp;
  RelZetaTerms terms = relative_zeta_terms_elements(ctx, X);
  int target = job.cgF->class_of(job.a);
  RelResidueCheck rc;
  rc.numeric = relative_zeta_residue(terms, target);
  const NumberField& E = *job.ext->E;
  double kE = std::pow(2.0, E.r1) * std::pow(2 * kPi, E.r2) *
              job.uE->regulator /
              ((double)job.uE->w * std::sqrt(std::abs(E.disc.get_d())));
  double n = job.ext->n;
  int ainv_cls = job.cgF->inv(job.cgF->class_of(job.a));
  cd zfa = partial_zeta_chi(lsF, ainv_cls, cd(n)).value;
  cd zf = lsF.L(cd(n), 0).value;
  rc.closed = kE * (zfa / zf).real();
  rc.rel_dev = std::abs(rc.numeric - rc.closed) / std::abs(rc.closed);
  return rc;
}

}  // namespace heckelab
