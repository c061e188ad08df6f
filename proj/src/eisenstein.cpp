// Eisenstein series: direct unit-orbit summation (sharp and smoothed
// truncation), the Phi_j / Psi_j Fourier-term evaluators, and the s = 1
// residue and Kronecker-limit closed forms.
#include "eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "enumerate.hpp"
#include "special.hpp"

namespace heckelab {

namespace {

const double kPi = 3.14159265358979323846;

std::vector<QVec> comps_scale(FieldPtr F, std::vector<QVec> x, const QVec& u) {
  for (auto& c : x) c = F->mul(c, u);
  return x;
}

// ||x g_sigma|| for each place of F; x has as many components as g has rows.
std::vector<double> place_norms(FieldPtr F, const std::vector<CMat>& g,
                                const std::vector<QVec>& x) {
  int np = F->num_places(), n = (int)x.size();
  std::vector<double> out(np);
  for (int p = 0; p < np; p++) {
    std::vector<cd> e(n);
    for (int i = 0; i < n; i++) e[i] = F->embed(p, x[i]);
    double s = 0;
    for (int j = 0; j < n; j++) {
      cd v = 0;
      for (int i = 0; i < n; i++) v += e[i] * g[p][i][j];
      s += std::norm(v);
    }
    out[p] = std::sqrt(s);
  }
  return out;
}

double nrm_of(FieldPtr F, const std::vector<double>& pn) {
  double t = 1;
  for (int p = 0; p < F->num_places(); p++)
    t *= std::pow(pn[p], F->places[p].nsig());
  return t;
}

// Unit-lattice coordinates of the g-twisted log vector of x.
std::vector<double> twisted_coords(const UnitGroup& u, FieldPtr F,
                                   const std::vector<double>& pn) {
  std::vector<double> c(u.rank, 0.0);
  if (u.rank == 0) return c;
  std::vector<double> l(F->num_places());
  for (int p = 0; p < F->num_places(); p++)
    l[p] = F->places[p].nsig() * std::log(pn[p]);
  for (int i = 0; i < u.rank; i++) {
    double s = 0;
    for (int j = 0; j < u.rank; j++) s += l[j] * u.coord_inv[j][i];
    c[i] = s;
  }
  return c;
}

bool flat_lex_less(const std::vector<QVec>& a, const std::vector<QVec>& b) {
  return qvec_lex_less(of_flatten(a), of_flatten(b));
}

// Canonical O_F^x-orbit representative of x with respect to the g-twisted
// log vector; same reduction scheme as UnitGroup::canonical_rep.
std::vector<QVec> orbit_canonical(const UnitGroup& u, FieldPtr F,
                                  const std::vector<CMat>& g,
                                  std::vector<QVec> x) {
  if (u.rank > 0) {
    std::vector<double> c = twisted_coords(u, F, place_norms(F, g, x));
    QVec fac = F->one;
    for (int i = 0; i < u.rank; i++) {
      long e = -(long)std::floor(c[i]);
      if (e != 0) fac = F->mul(fac, F->pow(u.gens[i], e));
    }
    x = comps_scale(F, x, fac);
  }
  std::vector<QVec> best = x;
  std::vector<long> e(u.rank, -1);
  while (true) {
    QVec fac = F->one;
    for (int i = 0; i < u.rank; i++)
      if (e[i] != 0) fac = F->mul(fac, F->pow(u.gens[i], e[i]));
    std::vector<QVec> t = comps_scale(F, x, fac);
    for (int j = 0; j < u.w; j++) {
      std::vector<double> c = twisted_coords(u, F, place_norms(F, g, t));
      bool in_box = true;
      for (int i = 0; i < u.rank; i++)
        if (c[i] < -1e-9 || c[i] >= 1.0 + 1e-9) in_box = false;
      if (in_box && flat_lex_less(t, best)) best = t;
      t = comps_scale(F, t, u.zeta);
    }
    int i = 0;
    for (; i < u.rank; i++) {
      if (e[i] < 1) { e[i]++; break; }
      e[i] = -1;
    }
    if (i == u.rank) break;
  }
  return best;
}

std::string flat_key(const std::vector<QVec>& x) {
  std::ostringstream os;
  for (const auto& c : x)
    for (const auto& q : c) os << q.get_str() << ';';
  return os.str();
}

std::string ideal_key(const FracIdeal& a) {
  std::ostringstream os;
  for (const auto& r : a.lat.b)
    for (const auto& q : r) os << q.get_str() << ';';
  return os.str();
}

// N_{F/Q}(y_k), k 1-based.
double norm_yk(const UHSPoint& z, int k) {
  double v = 1;
  for (int p = 0; p < (int)z.y.size(); p++)
    v *= std::pow(z.y[p][k - 1], z.k->places[p].nsig());
  return v;
}

// Sharp-cutoff sum over already-enumerated orbits; tail from the linear
// growth of the orbit count in t = nrm^n.
ZetaVal orbit_sum(const EisensteinSeries& es, const EisOrbits& o, cd s,
                  bool class_mode) {
  int n = es.L.n;
  double sig = s.real();
  if (sig <= 1)
    throw std::invalid_argument("eisenstein_direct: Re s <= 1");
  int acls = es.cg ? es.cg->class_of(es.a) : 0;
  std::vector<std::pair<double, size_t>> idx;
  for (size_t i = 0; i < o.reps.size(); i++) {
    bool keep = class_mode ? (o.cls[i] == acls) : (o.exact[i] != 0);
    if (keep) idx.push_back({o.nrm[i], i});
  }
  std::sort(idx.begin(), idx.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  cd sum = 0, comp = 0;  // Kahan
  cd ns = cd(n) * s;
  for (const auto& [nr, i] : idx) {
    cd term = std::pow(cd(nr), -ns) - comp;
    cd t2 = sum + term;
    comp = (t2 - sum) - term;
    sum = t2;
  }
  double X = std::pow(o.T, n);
  double rho = (idx.size() + 1.0) / X;
  double tail = 2.0 * rho * std::pow(X, 1.0 - sig) / (sig - 1.0);
  cd detpow = std::pow(cd(o.det), s);
  ZetaVal r;
  r.value = detpow * sum;
  r.tail = std::abs(detpow) * tail;
  return r;
}

// C-infinity transition: 1 for u <= 1, 0 for u >= 2.
double bump_phi(double u) {
  if (u <= 1.0) return 1.0;
  if (u >= 2.0) return 0.0;
  auto b = [](double v) { return std::exp(-1.0 / v); };
  return b(2.0 - u) / (b(2.0 - u) + b(u - 1.0));
}

double richardson_deriv(const std::function<double(double)>& f, double x0,
                        double h = 1e-3) {
  double d1 = (f(x0 + h) - f(x0 - h)) / (2 * h);
  double d2 = (f(x0 + h / 2) - f(x0 - h / 2)) / h;
  return (4 * d2 - d1) / 3;
}

}  // namespace

EisensteinSeries make_eisenstein(FieldPtr F, const UnitGroup* uF,
                                 PrimeTable* pt, const ClassGroup* cg,
                                 LSeries* ls, OFLattice L, FracIdeal a) {
  if (!ideal_is_anti_integral(a))
    throw std::invalid_argument("make_eisenstein: a is not anti-integral");
  EisensteinSeries es;
  es.F = F;
  es.uF = uF;
  es.pt = pt;
  es.cg = cg;
  es.ls = ls;
  es.L = std::move(L);
  es.a = std::move(a);
  return es;
}

EisOrbits eis_orbits(
    const EisensteinSeries& es, const UHSPoint& z, double T,
    const std::function<bool(const std::vector<QVec>&)>& filter) {
  FieldPtr F = es.F;
  const UnitGroup& u = *es.uF;
  int n = es.L.n, d = F->d, np = F->num_places();
  std::vector<CMat> g = point_matrix(z);
  EisOrbits out;
  out.T = T;
  out.det = 1;
  for (int p = 0; p < np; p++)
    out.det *= std::pow(std::abs(cmat_det(g[p])), F->places[p].nsig());
  if (T <= 0) return out;
  // Fundamental-domain box: every orbit has a point with unit coordinates in
  // [-1/2, 1/2)^rank, hence ||x g_p|| <= T^{1/d} exp(sum_j |logvec_jp|/(2n_p)).
  std::vector<double> B(np);
  for (int p = 0; p < np; p++) {
    double slack = 0.05;
    for (int j = 0; j < u.rank; j++)
      slack += std::abs(u.logvec[j][p]) / (2.0 * F->places[p].nsig());
    B[p] = std::pow(T, 1.0 / d) * std::exp(slack);
  }
  int m = n * d;
  const QMat& rows = es.L.zl.b;
  // Per-place complex embeddings of the Z-basis rows, multiplied by g.
  std::vector<std::vector<std::vector<cd>>> emb(
      m, std::vector<std::vector<cd>>(np, std::vector<cd>(n)));
  for (int r = 0; r < m; r++) {
    std::vector<QVec> comps = of_unflatten(F, n, rows[r]);
    for (int p = 0; p < np; p++) {
      std::vector<cd> e(n);
      for (int i = 0; i < n; i++) e[i] = F->embed(p, comps[i]);
      for (int j = 0; j < n; j++) {
        cd v = 0;
        for (int i = 0; i < n; i++) v += e[i] * g[p][i][j];
        emb[r][p][j] = v;
      }
    }
  }
  std::vector<std::vector<double>> gram(m, std::vector<double>(m, 0.0));
  for (int r = 0; r < m; r++)
    for (int c = r; c < m; c++) {
      double v = 0;
      for (int p = 0; p < np; p++) {
        double ip = 0;
        for (int j = 0; j < n; j++)
          ip += std::real(emb[r][p][j] * std::conj(emb[c][p][j]));
        v += F->places[p].nsig() / (B[p] * B[p]) * ip;
      }
      gram[r][c] = gram[c][r] = v;
    }
  double bound = d * (1 + 1e-9);
  std::set<std::string> seen;
  enumerate_quadform(gram, bound, true, [&](const std::vector<long>& cv) {
    QVec flat(m, Q(0));
    for (int r = 0; r < m; r++) {
      if (cv[r] == 0) continue;
      for (int i = 0; i < m; i++) flat[i] += Q(cv[r]) * rows[r][i];
    }
    std::vector<QVec> comps = of_unflatten(F, n, flat);
    std::vector<double> pn = place_norms(F, g, comps);
    double nr = nrm_of(F, pn);
    if (nr > T * (1 + 1e-12)) return true;
    if (filter && !filter(comps)) return true;
    comps = orbit_canonical(u, F, g, comps);
    if (!seen.insert(flat_key(comps)).second) return true;
    FracIdeal ct = of_content(es.L, comps);
    out.reps.push_back(std::move(comps));
    out.nrm.push_back(nr);
    out.cls.push_back(es.cg ? es.cg->class_of(ct) : 0);
    out.exact.push_back(ideal_eq(ct, es.a) ? 1 : 0);
    return true;
  });
  return out;
}

ZetaVal eisenstein_direct(const EisensteinSeries& es, const UHSPoint& z,
                          cd s) {
  EisOrbits o = eis_orbits(es, z, std::pow(es.X, 1.0 / es.L.n));
  return orbit_sum(es, o, s, false);
}

ZetaVal eisenstein_direct_class(const EisensteinSeries& es, const UHSPoint& z,
                                cd s) {
  EisOrbits o = eis_orbits(es, z, std::pow(es.X, 1.0 / es.L.n));
  return orbit_sum(es, o, s, true);
}

ZetaVal eisenstein_direct_smoothed(const EisensteinSeries& es,
                                   const UHSPoint& z, cd s) {
  FieldPtr F = es.F;
  if (F->d != 1)
    throw std::invalid_argument(
        "eisenstein_direct_smoothed: exact point density implemented for "
        "F = Q only");
  int n = es.L.n;
  double sig = s.real();
  if (sig <= 1)
    throw std::invalid_argument("eisenstein_direct: Re s <= 1");
  double X = es.X;
  EisOrbits o = eis_orbits(es, z, std::pow(2.0 * X, 1.0 / n));
  // All nonzero lattice points carry the (trivial) content class over Q.
  std::vector<double> nr = o.nrm;
  std::sort(nr.begin(), nr.end(), std::greater<double>());
  cd ns = cd(n) * s;
  cd sum = 0, comp = 0;
  for (double v : nr) {
    double t = std::pow(v, n);
    cd term = bump_phi(t / X) * std::pow(cd(t), -s) - comp;
    cd t2 = sum + term;
    comp = (t2 - sum) - term;
    sum = t2;
  }
  (void)ns;
  // Exact density of orbit counts in t = ||x g||^n: half the ball volume
  // over the covolume of the embedded lattice.
  double Vn = std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
  double covol = lat_covol(es.L.zl).get_d() * o.det;
  double rho = Vn / (2.0 * covol);
  // rho * int_X^inf (1 - phi(t/X)) t^{-s} dt.
  std::vector<double> nodes, weights;
  gauss_legendre(64, nodes, weights);
  cd icomp = 0;
  for (size_t i = 0; i < nodes.size(); i++) {
    double uu = 1.5 + 0.5 * nodes[i];
    icomp += 0.5 * weights[i] * (1.0 - bump_phi(uu)) * std::pow(cd(uu), -s);
  }
  icomp += std::pow(cd(2.0), cd(1.0) - s) / (s - cd(1.0));
  cd total = sum + rho * std::pow(cd(X), cd(1.0) - s) * icomp;
  ZetaVal r;
  r.value = std::pow(cd(o.det), s) * total;
  // Remaining error is the lattice-count fluctuation against the smooth
  // cutoff; bounded by the sharp-cutoff circle-problem envelope.
  r.tail = std::pow(o.det, sig) * 3.0 * rho * std::pow(X, 1.0 / 3.0 - sig);
  return r;
}

ClassRelationReport eisenstein_class_relation_check(const EisensteinSeries& es,
                                                    const UHSPoint& z, cd s) {
  int n = es.L.n;
  EisOrbits o = eis_orbits(es, z, std::pow(es.X, 1.0 / n));
  ZetaVal lhs = orbit_sum(es, o, s, true);
  ZetaVal ev = orbit_sum(es, o, s, false);
  int clsAinv = es.cg->inv(es.cg->class_of(es.a));
  ZetaVal zf = partial_zeta_chi(*es.ls, clsAinv, cd(n) * s);
  double na = ideal_norm(es.a).get_d();
  cd naf = std::pow(cd(na), -cd(n) * s);
  ClassRelationReport rep;
  rep.lhs = lhs.value;
  rep.rhs = zf.value * naf * ev.value;
  rep.dev = std::abs(rep.lhs - rep.rhs);
  rep.tol = lhs.tail + std::abs(naf) * (zf.tail * std::abs(ev.value) +
                                        std::abs(zf.value) * ev.tail) +
            1e-12 * std::abs(rep.lhs);
  rep.pass = rep.dev <= rep.tol;
  return rep;
}

ZetaVal partial_zeta_chi(const LSeries& ls, int cls, cd s) {
  const ClassGroup& cg = ls.cg();
  int h = cg.h();
  cd sum = 0;
  double tail = 0;
  for (int j = 0; j < h; j++) {
    LSeries::Val v = ls.L(s, j);
    sum += std::conj(cg.chi(j, cls)) * v.value;
    tail += v.tail;
  }
  return {sum / double(h), tail / h};
}

cd fourier_c(const EisensteinSeries& es, int j, const UHSPoint& z, cd s) {
  FieldPtr F = es.F;
  int n = es.L.n, d = F->d;
  if (j < 0 || j > n - 1) throw std::invalid_argument("fourier_c: j range");
  if (j == 0) {
    cd c = 1;
    for (int k = 1; k <= n - 1; k++)
      c *= std::pow(cd(norm_yk(z, k)), cd(k) * s);
    return c;
  }
  cd ns = cd(n) * s;
  double dF = std::abs(F->disc.get_d());
  double A = std::pow(2.0, F->r2) * std::pow(kPi, d / 2.0) / std::sqrt(dF);
  cd c = std::pow(cd(A), j) * gamma_k(*F, ns - cd(j)) / gamma_k(*F, ns);
  double nanj = ideal_norm(es.L.coef[n - j - 1]).get_d();
  c *= std::pow(cd(nanj), cd(j) - ns);
  double denom = 1;
  for (int i = n - j + 1; i <= n; i++)
    denom *= ideal_norm(es.L.coef[i - 1]).get_d();
  c /= denom;
  for (int k = 1; k <= n - j - 1; k++)
    c *= std::pow(cd(norm_yk(z, k)), cd(k) * s);
  for (int k = n - j; k <= n - 1; k++)
    c *= std::pow(cd(norm_yk(z, k)), cd(n - k) * (cd(1.0) - s));
  return c;
}

cd phi_term(const EisensteinSeries& es, int j, const UHSPoint& z, cd s) {
  int n = es.L.n;
  cd c = fourier_c(es, j, z, s);
  FracIdeal cl = ideal_mul(es.a, ideal_inv(es.L.coef[n - j - 1]));
  int cls = es.cg->class_of(cl);
  if (j == 0) return cls == 0 ? c : cd(0);
  cd ns = cd(n) * s;
  std::vector<cd> svec;
  for (int i = 0; i < j; i++) svec.push_back(ns - cd(i));
  double ztail = 0;
  cd zv = z_sum_characters(*es.ls, cls, svec, {}, {}, &ztail);
  return c * zv;
}

cd psi_term(const EisensteinSeries& es, int j, const UHSPoint& z, cd s,
            double* tail) {
  FieldPtr F = es.F;
  int n = es.L.n, d = F->d, np = F->num_places();
  if (j < 0 || j > n - 2) throw std::invalid_argument("psi_term: j range");
  cd ns = cd(n) * s;
  double dF = std::abs(F->disc.get_d());
  cd dj = std::pow(2.0, d) * std::pow(cd(kPi), cd(d) * s * cd(n - j) / 2.0) /
          (std::sqrt(dF) * gamma_k(*F, ns - cd(j))) * fourier_c(es, j, z, s);
  // Lambda^{(j+1)} = a_1 a_{n-j}^{-1} d_F^{-1} + ... (rank n-j-1 over F).
  int m = n - j - 1;
  FracIdeal dinv = ideal_inv(different_ideal(F));
  FracIdeal anj_inv = ideal_inv(es.L.coef[n - j - 1]);
  std::vector<FracIdeal> lam;
  for (int i = 0; i < m; i++)
    lam.push_back(ideal_mul(ideal_mul(es.L.coef[i], anj_inv), dinv));
  OFLattice Lam = of_lattice_std(F, lam);
  // g^{(j+1)} per place.
  std::vector<CMat> gj(np, CMat(m, std::vector<cd>(m, cd(0))));
  for (int p = 0; p < np; p++)
    for (int k = 0; k < m; k++) {
      double yk = 1;
      for (int t = k; t <= n - j - 2; t++) yk *= z.y[p][t];
      for (int i = 0; i <= k; i++)
        gj[p][i][k] = (i == k ? cd(1) : z.x[p][i][k]) * yk;
    }
  double R = es.bessel_radius;
  double Rp = R / (2 * kPi);
  int md = m * d;
  const QMat& rows = Lam.zl.b;
  std::vector<std::vector<std::vector<cd>>> emb(
      md, std::vector<std::vector<cd>>(np, std::vector<cd>(m)));
  for (int r = 0; r < md; r++) {
    std::vector<QVec> comps = of_unflatten(F, m, rows[r]);
    for (int p = 0; p < np; p++) {
      std::vector<cd> e(m);
      for (int i = 0; i < m; i++) e[i] = F->embed(p, comps[i]);
      for (int c = 0; c < m; c++) {
        cd v = 0;
        for (int i = 0; i < m; i++) v += e[i] * gj[p][i][c];
        emb[r][p][c] = v;
      }
    }
  }
  std::vector<std::vector<double>> gram(md, std::vector<double>(md, 0.0));
  for (int r = 0; r < md; r++)
    for (int c = r; c < md; c++) {
      double v = 0;
      for (int p = 0; p < np; p++)
        for (int q = 0; q < m; q++)
          v += std::real(emb[r][p][q] * std::conj(emb[c][p][q]));
      gram[r][c] = gram[c][r] = v;
    }
  struct Rec {
    double S = 0;       // sum_p 2 pi ||nu g_p||
    double theta = 0;   // 2 pi <nu, x_{n-j}>
    std::vector<double> pn;
    std::string nkey;
    FracIdeal nid;
  };
  std::vector<Rec> recs;
  enumerate_quadform(gram, Rp * Rp * (1 + 1e-9), true,
                     [&](const std::vector<long>& cv) {
    QVec flat(md, Q(0));
    for (int r = 0; r < md; r++) {
      if (cv[r] == 0) continue;
      for (int i = 0; i < md; i++) flat[i] += Q(cv[r]) * rows[r][i];
    }
    std::vector<QVec> comps = of_unflatten(F, m, flat);
    std::vector<double> pn = place_norms(F, gj, comps);
    double S = 0;
    for (int p = 0; p < np; p++) S += 2 * kPi * pn[p];
    if (S > R) return true;
    Rec rec;
    rec.S = S;
    rec.pn = pn;
    double th = 0;
    for (int p = 0; p < np; p++)
      for (int i = 0; i < m; i++) {
        cd t = F->embed(p, comps[i]) * z.x[p][i][n - j - 1];
        th += F->places[p].is_real ? t.real() : 2 * t.real();
      }
    rec.theta = 2 * kPi * th;
    rec.nid = ideal_inv(content_ideal(F, comps, lam));
    rec.nkey = ideal_key(rec.nid);
    recs.push_back(std::move(rec));
    return true;
  });
  // Largest radius (smallest magnitude) first; deterministic order.
  std::sort(recs.begin(), recs.end(), [](const Rec& a, const Rec& b) {
    if (a.S != b.S) return a.S > b.S;
    if (a.theta != b.theta) return a.theta < b.theta;
    return a.nkey < b.nkey;
  });
  std::vector<cd> svec;
  for (int i = 0; i < j; i++) svec.push_back(ns - cd(i));
  std::map<std::string, cd> zcache;
  cd sum = 0, comp = 0;
  double boundary = 0;
  for (const Rec& rec : recs) {
    cd zf;
    auto it = zcache.find(rec.nkey);
    if (it != zcache.end()) {
      zf = it->second;
    } else {
      FracIdeal nd = ideal_mul(rec.nid, dinv);
      int cls = es.cg->class_of(
          ideal_mul(ideal_mul(es.a, anj_inv), nd));
      double zt = 0;
      zf = z_sum_characters(*es.ls, cls, svec, {ns - cd(j)}, {nd}, &zt);
      zf *= std::pow(cd(ideal_norm(nd).get_d()), ns - cd(j) - cd(1));
      zcache.emplace(rec.nkey, zf);
    }
    std::vector<double> xs(np);
    for (int p = 0; p < np; p++) xs[p] = 2 * kPi * rec.pn[p];
    cd kf = bessel_K_field(*F, ns - cd(j) - cd(1), xs);
    cd den = 1;
    for (int p = 0; p < np; p++)
      den *= std::pow(cd(rec.pn[p]),
                      cd(F->places[p].nsig() / 2.0) * (ns - cd(j) - cd(1)));
    cd term = zf * (2.0 * std::cos(rec.theta)) * kf / den;
    if (rec.S > R - 2.0) boundary += std::abs(term);
    cd t0 = term - comp;
    cd t2 = sum + t0;
    comp = (t2 - sum) - t0;
    sum = t2;
  }
  if (tail) {
    // Excluded shells decay at least like e^{-S}; bound by the last shell.
    double env = boundary * std::exp(-1.0) / (1.0 - std::exp(-1.0)) +
                 std::exp(-R);
    *tail = std::abs(dj) * env;
  }
  return dj * sum;
}

ZetaVal eisenstein_fourier(const EisensteinSeries& es, const UHSPoint& z,
                           cd s) {
  int n = es.L.n;
  cd ns = cd(n) * s;
  int clsAinv = es.cg->inv(es.cg->class_of(es.a));
  ZetaVal zf = partial_zeta_chi(*es.ls, clsAinv, ns);
  cd sum = phi_term(es, n - 1, z, s);
  double tails = 0;
  for (int j = 0; j <= n - 2; j++) {
    double t = 0;
    sum += phi_term(es, j, z, s) + psi_term(es, j, z, s, &t);
    tails += t;
  }
  ZetaVal r;
  r.value = zf.value * sum;
  r.tail = std::abs(zf.value) * tails + zf.tail * std::abs(sum);
  return r;
}

double residue_closed_form(const EisensteinSeries& es) {
  FieldPtr F = es.F;
  int n = es.L.n, d = F->d;
  double dF = std::abs(F->disc.get_d());
  double prod_na = 1;
  for (int i = 0; i < n; i++)
    prod_na *= ideal_norm(es.L.coef[i]).get_d();
  double A =
      std::pow(std::pow(2.0, F->r2) * std::pow(kPi, d / 2.0) / std::sqrt(dF),
               n);
  double gf = gamma_k(*F, cd(n)).real();
  int clsAinv = es.cg->inv(es.cg->class_of(es.a));
  ZetaVal zp = partial_zeta_chi(*es.ls, clsAinv, cd(n));
  double zFn = es.ls->L(cd(n), 0).value.real();
  return (1.0 / prod_na) * A * (std::pow(2.0, F->r1) / gf) *
         (es.uF->regulator / (double(n) * es.uF->w)) * zp.value.real() / zFn;
}

KroneckerLimit kronecker_limit_closed_form(const EisensteinSeries& es,
                                           const UHSPoint& z) {
  FieldPtr F = es.F;
  int n = es.L.n, h = es.cg->h();
  KroneckerLimit out;
  int clsAinv = es.cg->inv(es.cg->class_of(es.a));
  ZetaVal zp = partial_zeta_chi(*es.ls, clsAinv, cd(n));
  cd phipsi = 0;
  double ptails = 0;
  for (int j = 0; j <= n - 2; j++) {
    double t = 0;
    phipsi += phi_term(es, j, z, cd(1)) + psi_term(es, j, z, cd(1), &t);
    ptails += t;
  }
  out.H = (zp.value * phipsi).real();
  double cn1 = fourier_c(es, n - 1, z, cd(1)).real();
  double kappa = es.ls->kappa();
  double zFn = es.ls->L(cd(n), 0).value.real();
  // Character block with gamma_F(chi) = L^{(0)}(1, chi).
  int cls_a1ai =
      es.cg->class_of(ideal_mul(es.L.coef[0], ideal_inv(es.a)));
  cd chiterm = 0;
  for (int jc = 0; jc < h; jc++) {
    cd chi = es.cg->chi(jc, cls_a1ai);
    cd ln = es.ls->L(cd(n), jc).value;
    cd gamma_chi;
    if (jc == 0) {
      ResidueFit fit = numeric_residue_and_constant(
          [&](double t) { return es.ls->L(cd(t), 0).value; }, 1.0);
      gamma_chi = fit.constant;
    } else {
      gamma_chi = es.ls->L(cd(1), jc).value;
    }
    chiterm += chi * zp.value / ln * gamma_chi;
  }
  double term_chi = (cn1 / h) * chiterm.real();
  double base = cn1 * kappa / h * zp.value.real() / zFn;
  double logsum = 0;
  for (int k = 1; k <= n - 1; k++)
    logsum += double(n - k) / n * std::log(norm_yk(z, k));
  double na1 = ideal_norm(es.L.coef[0]).get_d();
  double psis = (digamma_k(*F, cd(1)) - digamma_k(*F, cd(n))).real() -
                std::log(na1) - logsum;
  auto zpf = [&](double t) {
    return partial_zeta_chi(*es.ls, clsAinv, cd(t)).value.real();
  };
  auto zff = [&](double t) { return es.ls->L(cd(t), 0).value.real(); };
  double dterm = base * (richardson_deriv(zpf, n) / zp.value.real() -
                         richardson_deriv(zff, n) / zFn);
  out.value = out.H + term_chi + base * psis + dterm;
  out.Hstar = out.H - base * logsum;
  out.residue = residue_closed_form(es);
  out.err = std::abs(zp.value) * ptails + zp.tail * std::abs(phipsi) + 1e-10;
  return out;
}

double vol_N_quotient(const EisensteinSeries& es) {
  FieldPtr F = es.F;
  int n = es.L.n;
  double dF = std::abs(F->disc.get_d());
  double v = 1;
  for (int i = 0; i < n - 1; i++)
    v *= std::sqrt(dF) *
         ideal_norm(ideal_mul(ideal_inv(es.L.coef[i]), es.L.coef[n - 1]))
             .get_d();
  return v;
}

}  // namespace heckelab
