#include "units.hpp"

#include <cmath>
#include <map>
#include <set>

#include "enumerate.hpp"

namespace heckelab {

bool qvec_lex_less(const QVec& a, const QVec& b) {
  for (size_t i = 0; i < a.size(); i++) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::vector<std::vector<double>> place_gram(const NumberField& k,
                                            const QMat& basis,
                                            const std::vector<double>& weights) {
  int m = (int)basis.size();
  std::vector<std::vector<cd>> emb(m, std::vector<cd>(k.num_places()));
  for (int i = 0; i < m; i++)
    for (int p = 0; p < k.num_places(); p++) emb[i][p] = k.embed(p, basis[i]);
  std::vector<std::vector<double>> g(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; i++)
    for (int j = 0; j < m; j++) {
      double s = 0;
      for (int p = 0; p < k.num_places(); p++)
        s += weights[p] * (emb[i][p].real() * emb[j][p].real() +
                           emb[i][p].imag() * emb[j][p].imag());
      g[i][j] = s;
    }
  return g;
}

std::vector<double> UnitGroup::log_vector(const QVec& x) const {
  std::vector<double> l(k->num_places());
  for (int p = 0; p < k->num_places(); p++)
    l[p] = k->places[p].nsig() * std::log(k->abs_embed(p, x));
  return l;
}

std::vector<double> UnitGroup::domain_coords(const QVec& x) const {
  std::vector<double> c(rank, 0.0);
  if (rank == 0) return c;
  std::vector<double> l = log_vector(x);
  for (int i = 0; i < rank; i++) {
    double s = 0;
    for (int j = 0; j < rank; j++) s += l[j] * coord_inv[j][i];
    c[i] = s;
  }
  return c;
}

QVec UnitGroup::apply_power_product(QVec x, const std::vector<long>& e) const {
  for (int i = 0; i < rank; i++)
    if (e[i] != 0) x = k->mul(x, k->pow(gens[i], e[i]));
  return x;
}

bool UnitGroup::torsion_lexmin(const QVec& x) const {
  QVec y = x;
  for (int j = 1; j < w; j++) {
    y = k->mul(y, zeta);
    if (qvec_lex_less(y, x)) return false;
  }
  return true;
}

QVec UnitGroup::canonical_rep(QVec x) const {
  if (rank > 0) {
    std::vector<double> c = domain_coords(x);
    std::vector<long> e(rank);
    for (int i = 0; i < rank; i++) e[i] = -(long)std::floor(c[i]);
    x = apply_power_product(x, e);
  }
  // Lex-min over torsion times neighbor unit translates (covers rounding
  // ambiguity at the domain boundary).
  QVec best = x;
  std::vector<long> e(rank, -1);
  while (true) {
    QVec y = apply_power_product(x, e);
    QVec t = y;
    for (int j = 0; j < w; j++) {
      std::vector<double> c = domain_coords(t);
      bool in_box = true;
      for (int i = 0; i < rank; i++)
        if (c[i] < -1e-9 || c[i] >= 1.0 + 1e-9) in_box = false;
      if (in_box && qvec_lex_less(t, best)) best = t;
      t = k->mul(t, zeta);
    }
    // advance e through {-1,0,1}^rank
    int i = 0;
    for (; i < rank; i++) {
      if (e[i] < 1) { e[i]++; break; }
      e[i] = -1;
    }
    if (i == rank) break;
    if (rank == 0) break;
  }
  return best;
}

namespace {

// Fundamental unit of a real quadratic field by the continued fraction of
// the basis generator w = (P0 + sqrt(D)) / Q0 (D = non-square > 0).
QVec fundamental_unit_cf(const NumberField& k) {
  // Determine D, P0, Q0 from the minimal polynomial of w: w^2 - t w - n = 0
  // => w = (t + sqrt(t^2 + 4n)) / 2.
  QVec wv = {Q(0), Q(1)};
  QVec mp = k.minpoly(wv);  // c0 + c1 t + t^2
  Q t = -mp[1], n = -mp[0];
  Z P0 = t.get_num(), Q0 = 2 * t.get_den();
  // scale so that D = t^2 + 4n with the same denominator squared
  // w = (t + sqrt(t^2+4n))/2, with t rational; our bases have t integral.
  if (t.get_den() != 1 || n.get_den() != 1)
    throw std::runtime_error("fundamental_unit_cf: unexpected basis");
  Z D = P0 * P0 + 4 * n.get_num();
  Q0 = 2;
  // Continued fraction of (P + sqrt(D)) / Qd, exact integer arithmetic.
  Z sq;
  mpz_sqrt(sq.get_mpz_t(), D.get_mpz_t());
  if (sq * sq == D) throw std::runtime_error("fundamental_unit_cf: D is square");
  Z P = P0, Qd = Q0;
  // Ensure Qd | D - P^2 (holds for P0, Q0 = 2 since D = P0^2 mod 4... D-P0^2 = 4n).
  Z p_prev = 1, p_cur, q_prev = 0, q_cur;
  bool first = true;
  Q tr = t;  // trace of w
  for (int it = 0; it < 10000; it++) {
    // a = floor((P + sqrt(D)) / Qd)
    Z a = (P + sq);
    mpz_fdiv_q(a.get_mpz_t(), a.get_mpz_t(), Qd.get_mpz_t());
    if (first) {
      p_cur = a;
      q_cur = 1;
      first = false;
    } else {
      Z pn = a * p_cur + p_prev, qn = a * q_cur + q_prev;
      p_prev = p_cur; q_prev = q_cur;
      p_cur = pn; q_cur = qn;
    }
    // Candidate unit u = p - q * conj(w) = (p - q*t) + q*w.
    QVec u = {Q(p_cur) - Q(q_cur) * tr, Q(q_cur)};
    Q nu = k.norm(u);
    if (nu == 1 || nu == -1) return u;
    P = a * Qd - P;
    Qd = (D - P * P) / Qd;
  }
  throw std::runtime_error("fundamental_unit_cf: no unit found");
}

}  // namespace

UnitGroup unit_group(FieldPtr k, const std::vector<QVec>& hints) {
  UnitGroup u;
  u.k = k;
  u.rank = k->r1 + k->r2 - 1;
  // --- torsion: all x in O_k with |sigma(x)| = 1 at every place ---
  {
    std::vector<double> wts(k->num_places());
    for (int p = 0; p < k->num_places(); p++) wts[p] = k->places[p].nsig();
    auto gram = place_gram(*k, qmat_identity(k->d), wts);
    std::vector<QVec> tors;
    enumerate_quadform(gram, k->d + 1e-6, false, [&](const std::vector<long>& c) {
      QVec x(k->d);
      for (int i = 0; i < k->d; i++) x[i] = Q(c[i]);
      Q nx = k->norm(x);
      if (nx != 1 && nx != -1) return true;
      for (int p = 0; p < k->num_places(); p++)
        if (std::abs(k->abs_embed(p, x) - 1.0) > 1e-9) return true;
      tors.push_back(x);
      return true;
    });
    u.w = (int)tors.size();
    // generator: element of maximal multiplicative order
    u.zeta = k->neg(k->one);
    int best_ord = 2;
    for (const auto& t : tors) {
      QVec p = t;
      int ord = 1;
      while (p != k->one && ord <= 2 * u.w) { p = k->mul(p, t); ord++; }
      if (p == k->one && ord > best_ord) { best_ord = ord; u.zeta = t; }
    }
    if (best_ord != u.w)
      throw std::runtime_error("unit_group: torsion subgroup not cyclic of expected order");
  }
  // --- free part ---
  if (u.rank > 0) {
    std::vector<QVec> gens = hints;
    if (gens.empty()) {
      if (k->d == 2 && k->r1 == 2)
        gens.push_back(fundamental_unit_cf(*k));
      else
        throw std::runtime_error("unit_group: fundamental unit hints required for " + k->name);
    }
    if ((int)gens.size() != u.rank)
      throw std::runtime_error("unit_group: wrong number of fundamental units");
    for (auto& g : gens) {
      if (!k->is_integral(g)) throw std::runtime_error("unit_group: hint not integral");
      Q n = k->norm(g);
      if (n != 1 && n != -1) throw std::runtime_error("unit_group: hint is not a unit");
      // Normalize: make |sigma_0(g)| > 1 at the first place, and the torsion
      // lex-min representative, so results are deterministic.
      if (k->abs_embed(0, g) < 1.0) g = k->inv(g);
    }
    u.gens = gens;
    u.logvec.resize(u.rank);
    for (int j = 0; j < u.rank; j++) {
      u.logvec[j].resize(k->num_places());
      for (int p = 0; p < k->num_places(); p++)
        u.logvec[j][p] = k->places[p].nsig() * std::log(k->abs_embed(p, u.gens[j]));
    }
    // regulator: |det| of logvec with the last place dropped
    int r = u.rank;
    std::vector<std::vector<double>> m(r, std::vector<double>(r));
    for (int i = 0; i < r; i++)
      for (int j = 0; j < r; j++) m[i][j] = u.logvec[i][j];
    // LU determinant + inverse (small r)
    {
      std::vector<std::vector<double>> a = m,
          inv(r, std::vector<double>(r, 0.0));
      for (int i = 0; i < r; i++) inv[i][i] = 1;
      double det = 1;
      for (int c = 0; c < r; c++) {
        int piv = c;
        for (int rr = c; rr < r; rr++)
          if (std::abs(a[rr][c]) > std::abs(a[piv][c])) piv = rr;
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        if (piv != c) det = -det;
        det *= a[c][c];
        double f0 = a[c][c];
        if (f0 == 0) throw std::runtime_error("unit_group: dependent units");
        for (int j = 0; j < r; j++) { a[c][j] /= f0; inv[c][j] /= f0; }
        for (int rr = 0; rr < r; rr++) {
          if (rr == c) continue;
          double f = a[rr][c];
          if (f == 0) continue;
          for (int j = 0; j < r; j++) { a[rr][j] -= f * a[c][j]; inv[rr][j] -= f * inv[c][j]; }
        }
      }
      u.regulator = std::abs(det);
      // coord_inv maps (l_0..l_{r-1}) -> coords: c = l * M^{-1} with M = logvec
      // restricted; coord_inv[j][i] = (M^{-1})[j][i] in the row-vector sense.
      u.coord_inv = inv;
      // transpose check: c_i = sum_j l_j * inv... we need x M = l solved as
      // x = l M^{-1}; domain_coords uses coord_inv[j][i] with sum over j of
      // l[j] * coord_inv[j][i], i.e. coord_inv = M^{-1} acting on the right.
    }
    if (u.regulator < 1e-12)
      throw std::runtime_error("unit_group: units not multiplicatively independent");
    // --- fundamentality check (rank 1): no unit strictly inside (0, L) ---
    if (u.rank == 1 && hints.size() <= 1) {
      double L = 0;
      for (int p = 0; p < k->num_places(); p++)
        L = std::max(L, std::log(k->abs_embed(p, u.gens[0])));
      double B = std::exp(L / 2) * (1 + 1e-9);
      std::vector<double> wts(k->num_places());
      for (int p = 0; p < k->num_places(); p++)
        wts[p] = k->places[p].nsig() / (B * B);
      auto gram = place_gram(*k, qmat_identity(k->d), wts);
      bool ok = true;
      enumerate_quadform(gram, (double)k->d + 1e-6, true, [&](const std::vector<long>& c) {
        QVec x(k->d);
        for (int i = 0; i < k->d; i++) x[i] = Q(c[i]);
        Q nx = k->norm(x);
        if (nx != 1 && nx != -1) return true;
        double l0 = std::log(k->abs_embed(0, x));
        if (std::abs(l0) > 1e-9 && std::abs(l0) < L - 1e-9) {
          ok = false;
          return false;
        }
        return true;
      });
      if (!ok)
        throw std::runtime_error("unit_group: supplied unit is not fundamental");
    }
  }
  return u;
}

}  // namespace heckelab
