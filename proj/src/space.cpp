#include "space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heckelab {

namespace {

cd cdot(const std::vector<cd>& a, const std::vector<cd>& b) {
  cd s = 0;
  for (size_t k = 0; k < a.size(); k++) s += a[k] * std::conj(b[k]);
  return s;
}

}  // namespace

CMat cmat_mul(const CMat& a, const CMat& b) {
  int m = (int)a.size(), k = (int)b.size(), n = (int)b[0].size();
  CMat c(m, std::vector<cd>(n, 0.0));
  for (int i = 0; i < m; i++)
    for (int l = 0; l < k; l++)
      for (int j = 0; j < n; j++) c[i][j] += a[i][l] * b[l][j];
  return c;
}

cd cmat_det(CMat a) {
  int n = (int)a.size();
  cd det = 1;
  for (int c = 0; c < n; c++) {
    int piv = -1;
    double best = 0;
    for (int r = c; r < n; r++)
      if (std::abs(a[r][c]) > best) best = std::abs(a[r][c]), piv = r;
    if (piv < 0 || best == 0) return 0;
    if (piv != c) std::swap(a[piv], a[c]), det = -det;
    det *= a[c][c];
    for (int r = c + 1; r < n; r++) {
      cd f = a[r][c] / a[c][c];
      for (int j = c; j < n; j++) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

CMat cmat_inverse(CMat a) {
  int n = (int)a.size();
  CMat inv(n, std::vector<cd>(n, 0.0));
  for (int i = 0; i < n; i++) inv[i][i] = 1;
  for (int c = 0; c < n; c++) {
    int piv = -1;
    double best = 0;
    for (int r = c; r < n; r++)
      if (std::abs(a[r][c]) > best) best = std::abs(a[r][c]), piv = r;
    if (piv < 0 || best == 0) throw std::runtime_error("cmat_inverse: singular");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    cd d = a[c][c];
    for (int j = 0; j < n; j++) a[c][j] /= d, inv[c][j] /= d;
    for (int r = 0; r < n; r++) {
      if (r == c) continue;
      cd f = a[r][c];
      if (f == cd(0)) continue;
      for (int j = 0; j < n; j++) a[r][j] -= f * a[c][j], inv[r][j] -= f * inv[c][j];
    }
  }
  return inv;
}

FMat fmat_identity(FieldPtr k, int n) {
  FMat m(n, std::vector<QVec>(n, k->zero_elem()));
  for (int i = 0; i < n; i++) m[i][i] = k->one;
  return m;
}

FMat fmat_mul(FieldPtr k, const FMat& a, const FMat& b) {
  int n = (int)a.size();
  FMat c(n, std::vector<QVec>(n, k->zero_elem()));
  for (int i = 0; i < n; i++)
    for (int l = 0; l < n; l++)
      for (int j = 0; j < n; j++)
        c[i][j] = k->add(c[i][j], k->mul(a[i][l], b[l][j]));
  return c;
}

QVec fmat_det(FieldPtr k, const FMat& m) {
  int n = (int)m.size();
  FMat a = m;
  QVec det = k->one;
  for (int c = 0; c < n; c++) {
    int piv = -1;
    for (int r = c; r < n; r++)
      if (!k->is_zero(a[r][c])) { piv = r; break; }
    if (piv < 0) return k->zero_elem();
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = k->neg(det);
    }
    det = k->mul(det, a[c][c]);
    QVec ic = k->inv(a[c][c]);
    for (int r = c + 1; r < n; r++) {
      if (k->is_zero(a[r][c])) continue;
      QVec f = k->mul(a[r][c], ic);
      for (int j = c; j < n; j++) a[r][j] = k->sub(a[r][j], k->mul(f, a[c][j]));
    }
  }
  return det;
}

FMat fmat_inverse(FieldPtr k, FMat a) {
  int n = (int)a.size();
  FMat inv = fmat_identity(k, n);
  for (int c = 0; c < n; c++) {
    int piv = -1;
    for (int r = c; r < n; r++)
      if (!k->is_zero(a[r][c])) { piv = r; break; }
    if (piv < 0) throw std::runtime_error("fmat_inverse: singular");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    QVec d = k->inv(a[c][c]);
    for (int j = 0; j < n; j++) a[c][j] = k->mul(a[c][j], d), inv[c][j] = k->mul(inv[c][j], d);
    for (int r = 0; r < n; r++) {
      if (r == c || k->is_zero(a[r][c])) continue;
      QVec f = a[r][c];
      for (int j = 0; j < n; j++) {
        a[r][j] = k->sub(a[r][j], k->mul(f, a[c][j]));
        inv[r][j] = k->sub(inv[r][j], k->mul(f, inv[c][j]));
      }
    }
  }
  return inv;
}

std::vector<QVec> fvec_apply(FieldPtr k, const std::vector<QVec>& x,
                             const FMat& m) {
  int n = (int)m.size();
  std::vector<QVec> out(n, k->zero_elem());
  for (int j = 0; j < n; j++)
    for (int i = 0; i < n; i++)
      out[j] = k->add(out[j], k->mul(x[i], m[i][j]));
  return out;
}

CMat fmat_embed(FieldPtr k, const FMat& m, int place) {
  int n = (int)m.size();
  CMat out(n, std::vector<cd>(n, 0.0));
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) out[i][j] = k->embed(place, m[i][j]);
  return out;
}

QVec of_flatten(const std::vector<QVec>& x) {
  QVec row;
  for (const auto& c : x) row.insert(row.end(), c.begin(), c.end());
  return row;
}

std::vector<QVec> of_unflatten(FieldPtr k, int n, const QVec& row) {
  std::vector<QVec> x(n);
  for (int j = 0; j < n; j++)
    x[j] = QVec(row.begin() + j * k->d, row.begin() + (j + 1) * k->d);
  return x;
}

OFLattice of_lattice(FieldPtr k, std::vector<std::vector<QVec>> vecs,
                     std::vector<FracIdeal> coef) {
  OFLattice L;
  L.k = k;
  L.n = (int)vecs.size();
  L.vecs = std::move(vecs);
  L.coef = std::move(coef);
  QMat rows;
  for (int i = 0; i < L.n; i++)
    for (const auto& b : L.coef[i].lat.b) {
      std::vector<QVec> v(L.n);
      for (int c = 0; c < L.n; c++) v[c] = k->mul(b, L.vecs[i][c]);
      rows.push_back(of_flatten(v));
    }
  L.zl = lat_from_rows(rows, L.n * k->d);
  return L;
}

OFLattice of_lattice_std(FieldPtr k, std::vector<FracIdeal> coef) {
  int n = (int)coef.size();
  std::vector<std::vector<QVec>> vecs(n, std::vector<QVec>(n, k->zero_elem()));
  for (int i = 0; i < n; i++) vecs[i][i] = k->one;
  return of_lattice(k, std::move(vecs), std::move(coef));
}

OFLattice of_from_rows(FieldPtr k, int n, const QMat& rows) {
  int d = k->d;
  QLat full = lat_from_rows(rows, n * d);
  std::vector<std::vector<QVec>> vecs(n);
  std::vector<FracIdeal> coef(n);
  QMat cur = full.b;
  for (int j = n; j >= 1; --j) {
    int m = j * d;
    // Ideal a_j = projection onto the last F-component.
    QMat proj;
    for (const auto& r : cur) proj.push_back(QVec(r.begin() + m - d, r.begin() + m));
    FracIdeal aj{k, lat_from_rows(proj, d)};
    FracIdeal ajinv = ideal_inv(aj);
    // Find v in a_j^{-1} M with projection 1: write 1 = sum z_{il} b_l g_i
    // with b_l a Z-basis of a_j^{-1} and g_i the projections, z integral.
    QMat sys;
    for (int i = 0; i < (int)cur.size(); i++)
      for (int l = 0; l < d; l++) sys.push_back(k->mul(ajinv.lat.b[l], proj[i]));
    auto z = zsolve_rows(sys, k->one);
    if (!z) throw std::runtime_error("of_from_rows: module is not O_F-stable");
    std::vector<QVec> v(j, k->zero_elem());
    int idx = 0;
    for (int i = 0; i < (int)cur.size(); i++)
      for (int l = 0; l < d; l++, idx++) {
        if ((*z)[idx] == 0) continue;
        QVec s = k->mul_scalar(ajinv.lat.b[l], Q((*z)[idx]));
        auto blocks = of_unflatten(k, j, cur[i]);
        for (int c = 0; c < j; c++) v[c] = k->add(v[c], k->mul(s, blocks[c]));
      }
    vecs[j - 1] = v;
    vecs[j - 1].resize(n, k->zero_elem());
    coef[j - 1] = aj;
    if (j == 1) break;
    // M' = M \cap ker(projection): rows m_i - pi(m_i) v, truncated.
    QMat next;
    for (const auto& r : cur) {
      auto blocks = of_unflatten(k, j, r);
      QVec alpha = blocks[j - 1];
      QVec rr;
      for (int c = 0; c < j - 1; c++) {
        QVec t = k->sub(blocks[c], k->mul(alpha, v[c]));
        rr.insert(rr.end(), t.begin(), t.end());
      }
      next.push_back(rr);
    }
    cur = lat_from_rows(next, m - d).b;
  }
  OFLattice L = of_lattice(k, std::move(vecs), std::move(coef));
  if (!lat_eq(L.zl, full))
    throw std::runtime_error("of_from_rows: pseudo-basis reconstruction failed");
  return L;
}

bool of_contains(const OFLattice& L, const std::vector<QVec>& x) {
  return lat_contains(L.zl, of_flatten(x));
}

FracIdeal of_content(const OFLattice& L, const std::vector<QVec>& x) {
  FieldPtr k = L.k;
  FMat V(L.n);
  for (int i = 0; i < L.n; i++) V[i] = L.vecs[i];
  std::vector<QVec> c = fvec_apply(k, x, fmat_inverse(k, V));
  return content_ideal(k, c, L.coef);
}

Q of_norm_covol(const OFLattice& L) {
  FieldPtr k = L.k;
  FMat V(L.n);
  for (int i = 0; i < L.n; i++) V[i] = L.vecs[i];
  Q v = abs(k->norm(fmat_det(k, V)));
  for (const auto& a : L.coef) v *= ideal_norm(a);
  return v;
}

OFLattice of_transform(const OFLattice& L, const FMat& gamma) {
  std::vector<std::vector<QVec>> vecs;
  for (const auto& v : L.vecs) vecs.push_back(fvec_apply(L.k, v, gamma));
  return of_lattice(L.k, std::move(vecs), L.coef);
}

bool gamma_L_member(const OFLattice& L, const FMat& gamma) {
  FieldPtr k = L.k;
  if (fmat_det(k, gamma) != k->one) return false;
  QMat rows;
  for (const auto& r : L.zl.b)
    rows.push_back(of_flatten(fvec_apply(k, of_unflatten(k, L.n, r), gamma)));
  return lat_eq(lat_from_rows(rows, L.n * k->d), L.zl);
}

UHSPoint iwasawa(FieldPtr k, int n, const std::vector<CMat>& g) {
  UHSPoint z;
  z.k = k;
  z.n = n;
  int np = k->num_places();
  z.x.assign(np, CMat(n, std::vector<cd>(n, 0.0)));
  z.y.assign(np, std::vector<double>(std::max(0, n - 1), 1.0));
  for (int p = 0; p < np; p++) {
    // Gram-Schmidt on rows from the bottom: g = T q with T upper triangular,
    // positive real diagonal, and q orthonormal rows (in K_sigma).
    CMat q(n), T(n, std::vector<cd>(n, 0.0));
    for (int i = n - 1; i >= 0; --i) {
      std::vector<cd> u = g[p][i];
      for (int j = n - 1; j > i; --j) {
        T[i][j] = cdot(g[p][i], q[j]);
        for (int c = 0; c < n; c++) u[c] -= T[i][j] * q[j][c];
      }
      double nu = std::sqrt(std::abs(cdot(u, u).real()));
      if (!(nu > 0) || !std::isfinite(nu))
        throw std::runtime_error("iwasawa: singular matrix");
      T[i][i] = nu;
      q[i] = u;
      for (int c = 0; c < n; c++) q[i][c] /= nu;
    }
    for (int i = 0; i < n; i++) {
      z.x[p][i][i] = 1.0;
      for (int j = i + 1; j < n; j++) z.x[p][i][j] = T[i][j] / T[j][j];
    }
    for (int i = 0; i < n - 1; i++)
      z.y[p][i] = T[i][i].real() / T[i + 1][i + 1].real();
  }
  return z;
}

std::vector<CMat> point_matrix(const UHSPoint& z) {
  int n = z.n, np = z.k->num_places();
  std::vector<CMat> g(np, CMat(n, std::vector<cd>(n, 0.0)));
  for (int p = 0; p < np; p++)
    for (int j = 0; j < n; j++) {
      double yp = z.yprime(p, j);
      g[p][j][j] = yp;
      for (int i = 0; i < j; i++) g[p][i][j] = z.x[p][i][j] * yp;
    }
  return g;
}

UHSPoint act(const FMat& gamma, const UHSPoint& z) {
  auto g = point_matrix(z);
  std::vector<CMat> h(g.size());
  for (int p = 0; p < (int)g.size(); p++)
    h[p] = cmat_mul(fmat_embed(z.k, gamma, p), g[p]);
  return iwasawa(z.k, z.n, h);
}

double point_dist(const UHSPoint& a, const UHSPoint& b) {
  double m = 0;
  for (int p = 0; p < (int)a.x.size(); p++) {
    for (int i = 0; i < a.n; i++)
      for (int j = i + 1; j < a.n; j++)
        m = std::max(m, std::abs(a.x[p][i][j] - b.x[p][i][j]));
    for (int i = 0; i + 1 < a.n; i++)
      m = std::max(m, std::abs(a.y[p][i] - b.y[p][i]));
  }
  return m;
}

ParabolicData make_parabolic(OFLattice L, FracIdeal a, std::vector<QVec> e) {
  if (!ideal_is_anti_integral(a))
    throw std::runtime_error("make_parabolic: ideal is not anti-integral");
  if (!of_contains(L, e)) throw std::runtime_error("make_parabolic: e not in L");
  if (!ideal_eq(of_content(L, e), a))
    throw std::runtime_error("make_parabolic: content(e) != a");
  return ParabolicData{std::move(L), std::move(a), std::move(e)};
}

double det_function(const ParabolicData& p, const std::vector<CMat>& g) {
  FieldPtr k = p.L.k;
  int n = p.L.n;
  double val = 1.0;
  for (int pl = 0; pl < k->num_places(); pl++) {
    int ns = k->places[pl].nsig();
    double ad = std::abs(cmat_det(g[pl]));
    double nrm2 = 0;
    for (int j = 0; j < n; j++) {
      cd ej = 0;
      for (int i = 0; i < n; i++) ej += k->embed(pl, p.e[i]) * g[pl][i][j];
      nrm2 += std::norm(ej);
    }
    if (!(nrm2 > 0)) throw std::runtime_error("det_function: e g = 0");
    val *= std::pow(ad, ns) / std::pow(nrm2, 0.5 * n * ns);
  }
  return val;
}

double det_function(const ParabolicData& p, const UHSPoint& z) {
  return det_function(p, point_matrix(z));
}

std::vector<QVec> HeegnerObject::phi_w(const QVec& zE) const {
  return fvec_apply(ext->F, ext->phi(zE), wchange_inv);
}

HeegnerObject make_heegner(const Extension& ext, std::vector<QVec> w,
                           FracIdeal A) {
  HeegnerObject h;
  h.ext = &ext;
  h.w = std::move(w);
  h.A = std::move(A);
  FieldPtr E = ext.E, F = ext.F;
  int n = ext.n;
  h.wchange.resize(n);
  for (int i = 0; i < n; i++) h.wchange[i] = ext.phi(h.w[i]);
  h.wchange_inv = fmat_inverse(F, h.wchange);

  // Lattice L = w^{-1}(A).
  QMat rows;
  for (const auto& r : h.A.lat.b) rows.push_back(of_flatten(h.phi_w(r)));
  h.L = of_from_rows(F, n, rows);

  // Embedding bookkeeping: for each E-place over a complex F-place, decide
  // whether the stored embedding extends sigma or its conjugate.
  int npE = E->num_places(), npF = F->num_places();
  h.conj_emb.assign(npE, false);
  h.taus.assign(npF, {});
  h.ntau.assign(npF, {});
  for (int t = 0; t < npE; t++) {
    int s = ext.place_below[t];
    bool two = F->places[s].is_real && !E->places[t].is_real;
    double s0 = 0, s1 = 0;
    for (int b = 0; b < F->d; b++) {
      QVec eb = F->zero_elem();
      eb[b] = 1;
      cd fe = F->embed(s, eb);
      cd ee = E->embed(t, ext.embed(eb));
      s0 = std::max(s0, std::abs(ee - fe));
      s1 = std::max(s1, std::abs(std::conj(ee) - fe));
    }
    h.conj_emb[t] = s1 < s0;
    if (std::min(s0, s1) > 1e-6)
      throw std::runtime_error("make_heegner: place correspondence mismatch");
    h.taus[s].push_back(t);
    h.ntau[s].push_back(two ? 2 : 1);
  }
  h.rank = npE - npF;

  // W_sigma: row i = iota(w_i); a complex tau over a real sigma contributes
  // the two real columns (Im, Re) per the identification x+iy -> (y, x).
  h.W.assign(npF, CMat());
  for (int s = 0; s < npF; s++) {
    h.W[s].assign(n, std::vector<cd>(n, 0.0));
    for (int i = 0; i < n; i++) {
      int col = 0;
      for (size_t b = 0; b < h.taus[s].size(); b++) {
        int t = h.taus[s][b];
        cd v = E->embed(t, h.w[i]);
        if (h.conj_emb[t]) v = std::conj(v);
        if (h.ntau[s][b] == 2) {
          h.W[s][i][col++] = v.imag();
          h.W[s][i][col++] = v.real();
        } else {
          h.W[s][i][col++] = v;
        }
      }
    }
  }

  // |Delta_w| = |N_{F/Q}(d_w)| * 4^{n r2(F) - r2(E)} with
  // d_w = det(Tr_{E/F}(w_i w_j)).
  FMat tr(n, std::vector<QVec>(n, F->zero_elem()));
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++)
      tr[i][j] = ext.rel_trace(E->mul(h.w[i], h.w[j]));
  QVec dw = fmat_det(F, tr);
  if (F->is_zero(dw)) throw std::runtime_error("make_heegner: w is not a basis");
  Q dv = abs(F->norm(dw));
  int expo = n * F->r2 - E->r2;
  for (int i = 0; i < std::abs(expo); i++) {
    if (expo > 0) dv *= 4; else dv /= 4;
  }
  h.delta_w_abs = dv;
  return h;
}

std::vector<CMat> heegner_I(const HeegnerObject& h,
                            const std::vector<double>& t) {
  FieldPtr F = h.ext->F;
  int n = h.ext->n, npF = F->num_places();
  std::vector<CMat> I(npF, CMat(n, std::vector<cd>(n, 0.0)));
  for (int s = 0; s < npF; s++) {
    int col = 0;
    for (size_t b = 0; b < h.taus[s].size(); b++)
      for (int r = 0; r < h.ntau[s][b]; r++, col++)
        I[s][col][col] = t[h.taus[s][b]];
  }
  return I;
}

bool heegner_norm_one(const HeegnerObject& h, const std::vector<double>& t,
                      double tol) {
  for (int s = 0; s < h.ext->F->num_places(); s++) {
    double prod = 1;
    for (size_t b = 0; b < h.taus[s].size(); b++)
      prod *= std::pow(t[h.taus[s][b]], h.ntau[s][b]);
    if (std::abs(prod - 1.0) > tol) return false;
  }
  return true;
}

UHSPoint heegner_point(const HeegnerObject& h, const std::vector<double>& t) {
  if (!heegner_norm_one(h, t))
    throw std::runtime_error("heegner_point: t is not norm-one");
  auto I = heegner_I(h, t);
  std::vector<CMat> g(I.size());
  for (int s = 0; s < (int)I.size(); s++) g[s] = cmat_mul(h.W[s], I[s]);
  return iwasawa(h.ext->F, h.ext->n, g);
}

FMat rho_w(const HeegnerObject& h, const QVec& uE) {
  int n = h.ext->n;
  FMat m(n);
  for (int i = 0; i < n; i++) m[i] = h.phi_w(h.ext->E->mul(uE, h.w[i]));
  return m;
}

std::vector<double> reg_x(const HeegnerObject& h, const QVec& uE) {
  FieldPtr E = h.ext->E;
  std::vector<double> t(E->num_places());
  for (int tau = 0; tau < E->num_places(); tau++)
    t[tau] = E->abs_embed(tau, uE);
  return t;
}

double lem_psi_residual(const HeegnerObject& h, const QVec& uE) {
  FieldPtr F = h.ext->F;
  int n = h.ext->n;
  auto t = reg_x(h, uE);
  auto I = heegner_I(h, t);
  double worst = 0;
  for (int s = 0; s < F->num_places(); s++) {
    CMat R = cmat_mul(cmat_mul(cmat_inverse(h.W[s]), fmat_embed(F, rho_w(h, uE), s)),
                      h.W[s]);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) R[i][j] /= I[s][j][j];
    // R should be in K_sigma: R R^H = 1.
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) {
        cd v = cdot(R[i], R[j]);
        if (i == j) v -= 1.0;
        worst = std::max(worst, std::abs(v));
      }
  }
  return worst;
}

}  // namespace heckelab
