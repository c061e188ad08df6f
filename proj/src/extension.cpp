#include "extension.hpp"

#include <cmath>
#include <stdexcept>

namespace heckelab {

QVec Extension::embed(const QVec& xF) const { return qmat_vecmat(xF, f_embed); }

std::vector<QVec> Extension::phi(const QVec& xE) const {
  QVec c = qmat_vecmat(xE, phi_inv);
  int dF = F->d;
  std::vector<QVec> out(n);
  for (int i = 0; i < n; i++) out[i] = QVec(c.begin() + i * dF, c.begin() + (i + 1) * dF);
  return out;
}

QVec Extension::unphi(const std::vector<QVec>& c) const {
  QVec x = E->zero_elem();
  for (int i = 0; i < n; i++) x = E->add(x, E->mul(embed(c[i]), w[i]));
  return x;
}

namespace {

// Determinant of an n x n matrix with entries in F, by Gaussian elimination.
QVec field_det(FieldPtr F, std::vector<std::vector<QVec>> m) {
  int n = (int)m.size();
  QVec det = F->one;
  for (int c = 0; c < n; c++) {
    int piv = -1;
    for (int r = c; r < n; r++)
      if (!F->is_zero(m[r][c])) { piv = r; break; }
    if (piv < 0) return F->zero_elem();
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = F->neg(det);
    }
    det = F->mul(det, m[c][c]);
    QVec pin = F->inv(m[c][c]);
    for (int r = c + 1; r < n; r++) {
      if (F->is_zero(m[r][c])) continue;
      QVec f = F->mul(m[r][c], pin);
      for (int c2 = c; c2 < n; c2++)
        m[r][c2] = F->sub(m[r][c2], F->mul(f, m[c][c2]));
    }
  }
  return det;
}

}  // namespace

QVec Extension::rel_norm(const QVec& xE) const {
  std::vector<std::vector<QVec>> m(n);
  for (int i = 0; i < n; i++) m[i] = phi(E->mul(xE, w[i]));
  return field_det(F, m);
}

QVec Extension::rel_trace(const QVec& xE) const {
  QVec t = F->zero_elem();
  for (int i = 0; i < n; i++) t = F->add(t, phi(E->mul(xE, w[i]))[i]);
  return t;
}

Extension make_extension(FieldPtr E, FieldPtr F, QMat f_embed,
                         std::vector<QVec> w, std::vector<FracIdeal> comp) {
  Extension ext;
  ext.E = E;
  ext.F = F;
  ext.f_embed = f_embed;
  ext.w = w;
  ext.comp = comp;
  if (E->d % F->d != 0) throw std::runtime_error("extension: degree mismatch");
  ext.n = E->d / F->d;
  if ((int)w.size() != ext.n || comp.size() != w.size())
    throw std::runtime_error("extension: pseudo-basis size mismatch");
  // unital ring homomorphism
  auto emb = [&](const QVec& x) { return qmat_vecmat(x, f_embed); };
  if (emb(F->one) != E->one) throw std::runtime_error("extension: embed(1) != 1");
  for (int i = 0; i < F->d; i++)
    for (int j = 0; j < F->d; j++) {
      QVec bi(F->d, Q(0)), bj(F->d, Q(0));
      bi[i] = 1;
      bj[j] = 1;
      if (E->mul(emb(bi), emb(bj)) != emb(F->mul(bi, bj)))
        throw std::runtime_error("extension: embed is not a ring hom");
    }
  // phi matrix: row (i*dF + j) = coords of embed(b_j) * w_i
  QMat B;
  for (int i = 0; i < ext.n; i++)
    for (int j = 0; j < F->d; j++) {
      QVec bj(F->d, Q(0));
      bj[j] = 1;
      B.push_back(E->mul(emb(bj), w[i]));
    }
  ext.phi_inv = qmat_inverse(B);
  // pseudo-basis spans O_E: lattice generated by a_i-basis times w_i is O_E
  QMat rows;
  for (int i = 0; i < ext.n; i++)
    for (const auto& r : comp[i].lat.b) rows.push_back(E->mul(emb(r), w[i]));
  if (!lat_eq(lat_from_rows(rows, E->d), QLat{qmat_identity(E->d)}))
    throw std::runtime_error("extension: pseudo-basis does not span O_E");
  // place correspondence
  ext.place_below.assign(E->num_places(), -1);
  for (int s = 0; s < E->num_places(); s++) {
    for (int v = 0; v < F->num_places(); v++) {
      bool direct = true, conj = true;
      for (int j = 0; j < F->d; j++) {
        QVec bj(F->d, Q(0));
        bj[j] = 1;
        cd a = E->embed(s, emb(bj));
        cd b = F->embed(v, bj);
        double scale = 1 + std::abs(a) + std::abs(b);
        if (std::abs(a - b) > 1e-8 * scale) direct = false;
        if (std::abs(a - std::conj(b)) > 1e-8 * scale) conj = false;
      }
      if (direct || conj) {
        ext.place_below[s] = v;
        break;
      }
    }
    if (ext.place_below[s] < 0)
      throw std::runtime_error("extension: place correspondence failed");
  }
  return ext;
}

namespace {

// Exact decomposition of an E-unit: u = zeta^t * prod gens^e.
std::pair<long, std::vector<long>> decompose_unit(const UnitGroup& uE, const QVec& u) {
  std::vector<double> c = uE.domain_coords(u);
  std::vector<long> e(uE.rank);
  for (int i = 0; i < uE.rank; i++) {
    e[i] = std::lround(c[i]);
    if (std::abs(c[i] - e[i]) > 1e-6)
      throw std::runtime_error("decompose_unit: non-integral coordinates");
  }
  std::vector<long> me(e);
  for (auto& x : me) x = -x;
  QVec t = uE.apply_power_product(u, me);
  QVec z = uE.k->one;
  for (long j = 0; j < uE.w; j++) {
    if (t == z) return {j, e};
    z = uE.k->mul(z, uE.zeta);
  }
  throw std::runtime_error("decompose_unit: residual is not torsion");
}

}  // namespace

RelativeUnits relative_units(const Extension& ext, const UnitGroup& uE,
                             const UnitGroup& uF) {
  const auto& E = ext.E;
  const auto& F = ext.F;
  RelativeUnits R;

  auto is_torsion_F = [&](const QVec& x) { return F->pow(x, uF.w) == F->one; };
  auto is_one_F = [&](const QVec& x) { return x == F->one; };

  // free kernel of N_{E/F} on the free part of U_E
  std::vector<std::vector<long>> kernel;
  std::vector<bool> tors(uE.rank);
  for (int j = 0; j < uE.rank; j++) tors[j] = is_torsion_F(ext.rel_norm(uE.gens[j]));
  bool all = true;
  for (int j = 0; j < uE.rank; j++) all = all && tors[j];
  if (all) {
    for (int j = 0; j < uE.rank; j++) {
      std::vector<long> e(uE.rank, 0);
      e[j] = 1;
      kernel.push_back(e);
    }
  } else if (uE.rank == 1) {
    // nothing: norm of the fundamental unit is non-torsion
  } else if (uE.rank == 2 && (tors[0] || tors[1])) {
    std::vector<long> e(2, 0);
    e[tors[0] ? 0 : 1] = 1;
    kernel.push_back(e);
  } else {
    throw std::runtime_error("relative_units: unit rank shape unsupported");
  }

  // free generators: adjust each kernel vector by torsion to get exact norm 1
  for (const auto& e0 : kernel) {
    bool found = false;
    for (int dbl = 1; dbl <= 2 && !found; dbl++) {
      std::vector<long> e(e0);
      for (auto& x : e) x *= dbl;
      QVec u0 = uE.apply_power_product(E->one, e);
      QVec z = E->one;
      for (long t = 0; t < uE.w; t++) {
        QVec cand = E->mul(z, u0);
        if (is_one_F(ext.rel_norm(cand))) {
          R.gens.push_back(cand);
          found = true;
          break;
        }
        z = E->mul(z, uE.zeta);
      }
    }
    if (!found) throw std::runtime_error("relative_units: no norm-1 twist found");
  }
  R.rank = (int)R.gens.size();

  // torsion of U_{E/F}: smallest positive power of zeta_E with norm exactly 1
  long t0 = uE.w;
  {
    QVec z = uE.zeta;
    for (long t = 1; t <= uE.w; t++) {
      if (is_one_F(ext.rel_norm(z))) { t0 = t; break; }
      z = E->mul(z, uE.zeta);
    }
  }
  R.zeta = E->pow(uE.zeta, t0);
  R.w = (int)(uE.w / t0);

  // index [U_E : U_F U_{E/F}] via the exact presentation U_E = (Z/w) x Z^r
  {
    ZMat rows;
    auto add_row = [&](long t, const std::vector<long>& e) {
      std::vector<Z> r(1 + uE.rank);
      r[0] = t;
      for (int i = 0; i < uE.rank; i++) r[1 + i] = e[i];
      rows.push_back(r);
    };
    add_row(uE.w, std::vector<long>(uE.rank, 0));
    add_row(t0, std::vector<long>(uE.rank, 0));
    auto zf = decompose_unit(uE, ext.embed(uF.zeta));
    add_row(zf.first, zf.second);
    for (const auto& g : uF.gens) {
      auto d = decompose_unit(uE, ext.embed(g));
      add_row(d.first, d.second);
    }
    for (const auto& g : R.gens) {
      auto d = decompose_unit(uE, g);
      add_row(d.first, d.second);
    }
    ZMat h = hnf_rows(rows);
    if ((int)h.size() < 1 + uE.rank)
      throw std::runtime_error("relative_units: subgroup has infinite index");
    Z det = 1;
    for (size_t i = 0; i < h.size(); i++) det *= h[i][i];
    R.index = det;
  }

  // relative regulator: drop one E-place above each F-place
  std::vector<int> kept;
  std::vector<bool> dropped(F->num_places(), false);
  for (int s = E->num_places() - 1; s >= 0; s--) {
    int v = ext.place_below[s];
    if (!dropped[v]) {
      dropped[v] = true;
      continue;
    }
    kept.push_back(s);
  }
  if ((int)kept.size() != R.rank)
    throw std::runtime_error("relative_units: regulator shape mismatch");
  if (R.rank > 0) {
    std::vector<std::vector<double>> m(R.rank, std::vector<double>(R.rank));
    for (int i = 0; i < R.rank; i++)
      for (int j = 0; j < R.rank; j++) {
        int s = kept[j];
        m[i][j] = E->places[s].nsig() * std::log(E->abs_embed(s, R.gens[i]));
      }
    // small determinant (rank <= 2 in practice)
    double det;
    if (R.rank == 1)
      det = m[0][0];
    else if (R.rank == 2)
      det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    else
      throw std::runtime_error("relative_units: rank > 2 unsupported");
    R.regulator = std::abs(det);
  }
  return R;
}

}  // namespace heckelab
