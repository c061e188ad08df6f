#include "zeta.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "enumerate.hpp"
#include "special.hpp"

namespace heckelab {

namespace {

struct QVecLess {
  bool operator()(const QVec& a, const QVec& b) const {
    return qvec_lex_less(a, b);
  }
};

void require_convergent(cd s) {
  if (s.real() <= 1.0)
    throw std::runtime_error("partial zeta: Re s must exceed 1");
}

// integral-comparison truncation bound, density inflated 2x
double tail_bound(double count, double X, double sigma) {
  double C = 2.0 * std::max(count, 1.0) / X;
  return C * std::pow(X, 1.0 - sigma) / (sigma - 1.0);
}

// smooth bump supported on [1/4, 1]
double bump(double t) {
  if (t <= 0.25 || t >= 1.0) return 0;
  return std::exp(-0.05 / ((t - 0.25) * (1.0 - t)));
}

double bump_mass() {
  static double mass = [] {
    std::vector<double> nodes, wts;
    gauss_legendre(96, nodes, wts);  // nodes on (-1, 1)
    double acc = 0;
    for (size_t i = 0; i < nodes.size(); i++) {
      double t = 0.25 + (1.0 - 0.25) * (nodes[i] + 1) / 2;
      acc += wts[i] * bump(t) * (1.0 - 0.25) / 2;
    }
    return acc;
  }();
  return mass;
}

}  // namespace

OrbitReps norm_orbit_reps(FieldPtr k, const UnitGroup& u, const QLat& lat,
                          double X) {
  int d = k->d;
  int np = k->num_places();
  // Every orbit with |N(x)| <= X has a member whose unit-domain coordinates
  // lie in [-1/2, 1/2]^rank; that member satisfies
  // |sigma(x)| <= X^{1/d} exp(sum_j |logvec_j(sigma)| / (2 n_sigma)).  The
  // weighted ellipsoid sum n_sigma (|sigma x| / B_sigma)^2 <= d contains
  // that box, and canonical_rep dedupes whatever member is found.
  std::vector<double> wts(np);
  for (int sp = 0; sp < np; sp++) {
    double spread = 0;
    for (const auto& lv : u.logvec) spread += 0.5 * std::abs(lv[sp]);
    int ns = k->places[sp].nsig();
    double B = std::pow(X, 1.0 / d) * std::exp(spread / ns + 0.05);
    wts[sp] = ns / (B * B);
  }
  auto gram = place_gram(*k, lat.b, wts);
  Q qX(X);
  std::set<QVec, QVecLess> seen;
  OrbitReps out;
  enumerate_quadform(gram, d * (1 + 1e-12) + 1e-9, true,
                     [&](const std::vector<long>& c) {
                       QVec x = k->zero_elem();
                       for (int i = 0; i < d; i++)
                         if (c[i])
                           x = k->add(x, k->mul_scalar(lat.b[i], Q(c[i])));
                       Q nrm = k->norm(x);
                       if (sgn(nrm) < 0) nrm = -nrm;
                       if (nrm > qX) return true;
                       QVec r = u.canonical_rep(x);
                       if (seen.insert(r).second) {
                         out.reps.push_back(r);
                         out.norm_abs.push_back(nrm);
                       }
                       return true;
                     });
  // deterministic order: by norm, then lexicographically
  std::vector<size_t> idx(out.reps.size());
  for (size_t i = 0; i < idx.size(); i++) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    if (out.norm_abs[a] != out.norm_abs[b])
      return out.norm_abs[a] < out.norm_abs[b];
    return qvec_lex_less(out.reps[a], out.reps[b]);
  });
  OrbitReps sorted;
  for (size_t i : idx) {
    sorted.reps.push_back(out.reps[i]);
    sorted.norm_abs.push_back(out.norm_abs[i]);
  }
  return sorted;
}

ZetaVal partial_zeta_ideal(PrimeTable& pt, const ClassGroup& cg,
                           const FracIdeal& a, cd s, double X) {
  require_convergent(s);
  int target = cg.class_of(a);
  IdealList list = enumerate_ideals(pt, X, &cg, /*with_ids=*/false);
  ZetaVal v;
  double count = 0;
  for (const auto& it : list.items) {
    if (it.cls != target) continue;
    count++;
    v.value += std::exp(-s * std::log(it.nrm));
  }
  v.tail = tail_bound(count, X, s.real());
  return v;
}

ZetaVal partial_zeta_elements(const UnitGroup& u, const FracIdeal& a, cd s,
                              double X) {
  require_convergent(s);
  FieldPtr k = a.k;
  Q Na = ideal_norm(a);
  FracIdeal ainv = ideal_inv(a);
  // integral b ~ a are b = (x) a, x in a^{-1}; Nb = |N(x)| N(a) <= X
  OrbitReps reps = norm_orbit_reps(k, u, ainv.lat, X / Na.get_d());
  ZetaVal v;
  for (const auto& n : reps.norm_abs) {
    Q nb = n * Na;
    v.value += std::exp(-s * std::log(nb.get_d()));
  }
  v.tail = tail_bound((double)reps.reps.size(), X, s.real());
  return v;
}

namespace {

// Z-lattice of A = sum_i Acomp_i w_i inside E
QLat pseudo_basis_lattice(const RelZetaContext& ctx) {
  const Extension& ex = *ctx.ext;
  QMat rows;
  for (size_t i = 0; i < ex.w.size(); i++)
    for (const auto& g : ctx.Acomp[i].lat.b)
      rows.push_back(ex.E->mul(ex.embed(g), ex.w[i]));
  return lat_from_rows(rows, ex.E->d);
}

int content_class(const RelZetaContext& ctx, const QVec& x) {
  std::vector<QVec> c = ctx.ext->phi(x);
  FracIdeal cont = content_ideal(ctx.ext->F, c, ctx.Acomp);
  return ctx.cgF->class_of(cont);
}

}  // namespace

RelZetaTerms relative_zeta_terms_elements(const RelZetaContext& ctx, double X) {
  QLat latA = pseudo_basis_lattice(ctx);
  RelZetaTerms out;
  out.X = X;
  out.NA = lat_covol(latA).get_d();
  OrbitReps reps = norm_orbit_reps(ctx.ext->E, *ctx.uE, latA, X);
  for (size_t i = 0; i < reps.reps.size(); i++)
    out.terms.push_back(
        {reps.norm_abs[i].get_d(), content_class(ctx, reps.reps[i])});
  return out;
}

RelZetaTerms relative_zeta_terms_ideals(const RelZetaContext& ctx, double X) {
  if (!ctx.ptE || !ctx.cgE || !ctx.ptF)
    throw std::runtime_error("relative zeta (ideal mode): ideal data missing");
  const Extension& ex = *ctx.ext;
  QLat latA = pseudo_basis_lattice(ctx);
  FracIdeal A{ex.E, latA};
  RelZetaTerms out;
  out.X = X;
  out.NA = ideal_norm(A).get_d();
  // Orbits of x in A are the integral b = (x) A^{-1} in the class [A^{-1}],
  // and the content ideal a(x) = {alpha in F : alpha x in A} depends only
  // on b: a(x) = b^{-1} cap F, so v_p(a(x)^{-1}) = min over P | p of
  // floor(v_P(b) / e(P/p)).  In particular m_p = 0 unless every E-prime
  // above p divides b.
  int target = ctx.cgE->inv(ctx.cgE->class_of(A));
  IdealList list = enumerate_ideals(*ctx.ptE, X / out.NA, ctx.cgE, /*with_ids=*/false);
  // per E-prime: index of the F-prime below, and e(P/p)
  struct Below {
    int fp = -1;  // index into fprimes
    int e = 1;
  };
  std::vector<PrimeIdeal> fprimes;      // discovered F-primes
  std::vector<int> fcls, fcount;        // class index, #E-primes above
  std::vector<Below> below(list.primes.size());
  auto f_in_E = [&](const FracIdeal& p) {
    QMat rows;
    for (const auto& g : p.lat.b)
      for (int j = 0; j < ex.E->d; j++) {
        QVec e_j = ex.E->zero_elem();
        e_j[j] = 1;
        rows.push_back(ex.E->mul(ex.embed(g), e_j));
      }
    return FracIdeal{ex.E, lat_from_rows(rows, ex.E->d)};
  };
  for (size_t j = 0; j < list.primes.size(); j++) {
    const PrimeIdeal& P = list.primes[j];
    // the F-prime below P: its embedded generators lie in P
    PrimeIdeal pbelow;
    bool found = false;
    for (const auto& p : ctx.ptF->primes_above(P.p)) {
      bool inside = true;
      for (const auto& g : p.id.lat.b)
        inside = inside && lat_contains(P.id.lat, ex.embed(g));
      if (inside) {
        pbelow = p;
        found = true;
        break;
      }
    }
    if (!found) throw std::runtime_error("relative zeta: prime below not found");
    int fp = -1;
    for (size_t i = 0; i < fprimes.size(); i++)
      if (fprimes[i].p == pbelow.p && ideal_eq(fprimes[i].id, pbelow.id)) fp = i;
    if (fp < 0) {
      fp = fprimes.size();
      fprimes.push_back(pbelow);
      fcls.push_back(ctx.cgF->class_of(pbelow.id));
      // count all E-primes above pbelow (also the ones beyond the cutoff)
      int cnt = 0;
      for (const auto& PP : ctx.ptE->primes_above(P.p)) {
        bool inside = true;
        for (const auto& g : pbelow.id.lat.b)
          inside = inside && lat_contains(PP.id.lat, ex.embed(g));
        if (inside) cnt++;
      }
      fcount.push_back(cnt);
    }
    below[j].fp = fp;
    below[j].e = ctx.ptE->valuation(f_in_E(pbelow.id), P);
  }
  std::vector<int> minv(fprimes.size()), seen(fprimes.size(), 0);
  for (const auto& it : list.items) {
    if (it.cls != target) continue;
    // group the factorization by the F-prime below
    std::vector<int> touched;
    for (const auto& [j, e] : it.fact) {
      int fp = below[j].fp;
      int q = e / below[j].e;
      if (seen[fp] == 0) {
        minv[fp] = q;
        touched.push_back(fp);
      } else {
        minv[fp] = std::min(minv[fp], q);
      }
      seen[fp]++;
    }
    int cls_ainv = 0;  // class of prod p^{m_p} = a(x)^{-1}
    for (int fp : touched) {
      int m = (seen[fp] == fcount[fp]) ? minv[fp] : 0;
      for (int r = 0; r < m; r++) cls_ainv = ctx.cgF->mul(cls_ainv, fcls[fp]);
      seen[fp] = 0;
    }
    out.terms.push_back({it.nrm * out.NA, ctx.cgF->inv(cls_ainv)});
  }
  return out;
}

ZetaVal relative_partial_zeta(const RelZetaTerms& t, int clsF, cd s) {
  require_convergent(s);
  ZetaVal v;
  double count = 0;
  for (const auto& [n, cls] : t.terms) {
    if (cls != clsF) continue;
    count++;
    v.value += std::exp(-s * std::log(n));
  }
  v.value *= std::exp(s * std::log(t.NA));
  v.tail = std::pow(t.NA, s.real()) * tail_bound(count, t.X, s.real());
  return v;
}

double partial_zeta_residue(PrimeTable& pt, const ClassGroup& cg,
                            const FracIdeal& a, double X) {
  int target = cg.class_of(a);
  IdealList list = enumerate_ideals(pt, X, &cg, /*with_ids=*/false);
  double acc = 0;
  for (const auto& it : list.items)
    if (it.cls == target) acc += bump(it.nrm / X);
  return acc / (X * bump_mass());
}

double relative_zeta_residue(const RelZetaTerms& t, int clsF) {
  double acc = 0;
  for (const auto& [n, cls] : t.terms)
    if (cls == clsF) acc += bump(n / t.X);
  return t.NA * acc / (t.X * bump_mass());
}

ResidueFit numeric_residue_and_constant(const std::function<cd(double)>& f,
                                        double s0, double h0, int depth) {
  if (depth < 1) depth = 1;
  // symmetric samples split the Laurent expansion into the odd part
  // (h/2)(f(s0+h) - f(s0-h)) = c_{-1} + c_1 h^2 + ... and the even part
  // (f(s0+h) + f(s0-h))/2 = c_0 + c_2 h^2 + ...; both are series in h^2.
  std::vector<cd> R(depth + 1), C(depth + 1);
  for (int j = 0; j <= depth; j++) {
    double h = h0 * std::pow(2.0, -j);
    cd fp = f(s0 + h), fm = f(s0 - h);
    R[j] = (fp - fm) * (h / 2);
    C[j] = (fp + fm) / 2.0;
  }
  cd prevR = R[0], prevC = C[0];
  for (int lvl = 1; lvl <= depth; lvl++) {
    double fac = std::pow(4.0, lvl);
    for (int j = 0; j + lvl <= depth; j++) {
      R[j] = (fac * R[j + 1] - R[j]) / (fac - 1);
      C[j] = (fac * C[j + 1] - C[j]) / (fac - 1);
    }
    if (lvl == depth - 1) {
      prevR = R[0];
      prevC = C[0];
    }
  }
  ResidueFit out;
  out.residue = R[0];
  out.constant = C[0];
  out.residue_err = std::abs(R[0] - prevR);
  out.constant_err = std::abs(C[0] - prevC);
  if (!(std::abs(out.residue) >= 0))
    throw std::runtime_error("residue fit did not converge");
  return out;
}

}  // namespace heckelab
