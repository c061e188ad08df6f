#include "numfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace heckelab {

QVec NumberField::from_int(long v) const { return mul_scalar(one, Q(v)); }

QVec NumberField::add(const QVec& x, const QVec& y) const {
  QVec z(d);
  for (int i = 0; i < d; i++) z[i] = x[i] + y[i];
  return z;
}

QVec NumberField::sub(const QVec& x, const QVec& y) const {
  QVec z(d);
  for (int i = 0; i < d; i++) z[i] = x[i] - y[i];
  return z;
}

QVec NumberField::neg(const QVec& x) const {
  QVec z(d);
  for (int i = 0; i < d; i++) z[i] = -x[i];
  return z;
}

QVec NumberField::mul(const QVec& x, const QVec& y) const {
  QVec z(d, Q(0));
  for (int i = 0; i < d; i++) {
    if (x[i] == 0) continue;
    for (int j = 0; j < d; j++) {
      if (y[j] == 0) continue;
      Q c = x[i] * y[j];
      const QVec& t = table[i][j];
      for (int k = 0; k < d; k++) z[k] += c * t[k];
    }
  }
  return z;
}

QVec NumberField::mul_scalar(const QVec& x, const Q& c) const {
  QVec z(d);
  for (int i = 0; i < d; i++) z[i] = x[i] * c;
  return z;
}

QMat NumberField::rep_matrix(const QVec& x) const {
  QMat m(d);
  for (int i = 0; i < d; i++) {
    QVec wi(d, Q(0));
    wi[i] = 1;
    m[i] = mul(x, wi);
  }
  return m;
}

QVec NumberField::inv(const QVec& x) const {
  if (is_zero(x)) throw std::runtime_error("field inverse of zero");
  // Solve y * M(x) = one.
  QMat m = rep_matrix(x);
  return qmat_vecmat(one, qmat_inverse(m));
}

QVec NumberField::pow(QVec x, long e) const {
  if (e < 0) { x = inv(x); e = -e; }
  QVec r = one;
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

Q NumberField::trace(const QVec& x) const {
  QMat m = rep_matrix(x);
  Q t = 0;
  for (int i = 0; i < d; i++) t += m[i][i];
  return t;
}

Q NumberField::norm(const QVec& x) const { return qmat_det(rep_matrix(x)); }

bool NumberField::is_zero(const QVec& x) const {
  for (const auto& v : x)
    if (v != 0) return false;
  return true;
}

QVec NumberField::minpoly(const QVec& x) const {
  // Stack powers of x until a linear dependency appears.
  QMat pows;
  pows.push_back(one);
  QVec p = one;
  for (int m = 1; m <= d; m++) {
    p = mul(p, x);
    pows.push_back(p);
    // Solve c_0 w^0 + ... + c_{m-1} x^{m-1} = x^m exactly (least m wins).
    QMat a = qmat_zero(d, m);
    for (int i = 0; i < m; i++)
      for (int j = 0; j < d; j++) a[j][i] = pows[i][j];
    // Gaussian elimination on [a | x^m].
    QVec rhs = pows[m];
    QMat aug = qmat_zero(d, m + 1);
    for (int j = 0; j < d; j++) {
      for (int i = 0; i < m; i++) aug[j][i] = a[j][i];
      aug[j][m] = rhs[j];
    }
    int rank = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c <= m && rank < d; c++) {
      int pr = -1;
      for (int r = rank; r < d; r++)
        if (aug[r][c] != 0) { pr = r; break; }
      if (pr < 0) continue;
      std::swap(aug[pr], aug[rank]);
      Q piv = aug[rank][c];
      for (int j = c; j <= m; j++) aug[rank][j] /= piv;
      for (int r = 0; r < d; r++) {
        if (r == rank || aug[r][c] == 0) continue;
        Q f = aug[r][c];
        for (int j = c; j <= m; j++) aug[r][j] -= f * aug[rank][j];
      }
      pivot_col.push_back(c);
      rank++;
    }
    bool solvable = true;
    for (int i = 0; i < rank; i++)
      if (pivot_col[i] == m) solvable = false;
    if (!solvable) continue;
    // Read off the solution (columns are the power exponents).
    QVec c(m + 1, Q(0));
    for (int i = 0; i < rank; i++)
      if (pivot_col[i] < m) c[pivot_col[i]] = aug[i][m];
    // minpoly = t^m - sum c_i t^i
    QVec mp(m + 1);
    for (int i = 0; i < m; i++) mp[i] = -c[i];
    mp[m] = 1;
    return mp;
  }
  throw std::runtime_error("minpoly: no dependency found (table inconsistent)");
}

cd NumberField::embed(int place, const QVec& x) const {
  cd s = 0;
  for (int i = 0; i < d; i++) s += places[place].emb[i] * x[i].get_d();
  return s;
}

double NumberField::abs_embed(int place, const QVec& x) const {
  return std::abs(embed(place, x));
}

std::vector<cd> poly_roots(const QVec& mc) {
  int n = (int)mc.size() - 1;
  std::vector<cd> c(n + 1);
  for (int i = 0; i <= n; i++) c[i] = mc[i].get_d();
  auto eval = [&](cd z, cd* deriv) {
    cd v = c[n], dv = 0;
    for (int i = n - 1; i >= 0; i--) {
      dv = dv * z + v;
      v = v * z + c[i];
    }
    if (deriv) *deriv = dv;
    return v;
  };
  // Durand-Kerner from a slightly irrational starting spiral.
  std::vector<cd> r(n);
  double radius = 1.0;
  for (int i = 0; i < n; i++) radius = std::max(radius, 2.0 * std::pow(std::abs(c[i]), 1.0 / (n - i)));
  for (int i = 0; i < n; i++)
    r[i] = radius * std::polar(0.7, 0.9 + 2.1 * i);
  for (int it = 0; it < 400; it++) {
    double delta = 0;
    for (int i = 0; i < n; i++) {
      cd num = eval(r[i], nullptr), den = 1;
      for (int j = 0; j < n; j++)
        if (j != i) den *= (r[i] - r[j]);
      cd step = num / den;
      r[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-14 * radius) break;
  }
  // Newton polish.
  for (int i = 0; i < n; i++)
    for (int it = 0; it < 6; it++) {
      cd dv;
      cd v = eval(r[i], &dv);
      if (std::abs(dv) == 0) break;
      r[i] -= v / dv;
    }
  return r;
}

void NumberField::finish() {
  d = (int)table.size();
  // --- identity element: solve sum_i e_i (w_i w_j) = w_j for all j ---
  {
    QMat a = qmat_zero(d * d, d);
    QVec rhs(d * d, Q(0));
    for (int j = 0; j < d; j++)
      for (int k = 0; k < d; k++) {
        for (int i = 0; i < d; i++) a[j * d + k][i] = table[i][j][k];
        rhs[j * d + k] = (j == k) ? 1 : 0;
      }
    // Least-squares-free exact solve: pick d independent rows.
    QMat sq = qmat_zero(d, d);
    QVec srhs(d);
    int got = 0;
    QMat tried;
    for (int r = 0; r < d * d && got < d; r++) {
      QMat cand = tried;
      cand.push_back(a[r]);
      // rank check
      QMat chk = cand;
      int rank = 0;
      for (int c = 0; c < d && rank < (int)chk.size(); c++) {
        int pr = -1;
        for (size_t rr = rank; rr < chk.size(); rr++)
          if (chk[rr][c] != 0) { pr = (int)rr; break; }
        if (pr < 0) continue;
        std::swap(chk[pr], chk[rank]);
        for (size_t rr = 0; rr < chk.size(); rr++) {
          if ((int)rr == rank || chk[rr][c] == 0) continue;
          Q f = chk[rr][c] / chk[rank][c];
          for (int j = c; j < d; j++) chk[rr][j] -= f * chk[rank][j];
        }
        rank++;
      }
      if (rank == (int)cand.size()) {
        tried = cand;
        sq[got] = a[r];
        srhs[got] = rhs[r];
        got++;
      }
    }
    if (got != d) throw std::runtime_error("field table: cannot determine identity");
    one = qmat_vecmat(srhs, qmat_transpose(qmat_inverse(sq)));
    // Verify 1 * w_j = w_j for all j.
    for (int j = 0; j < d; j++) {
      QVec wj(d, Q(0));
      wj[j] = 1;
      if (mul(one, wj) != wj) throw std::runtime_error("field table: identity check failed");
    }
  }
  // --- associativity / commutativity validation (exact, d^3 triples) ---
  for (int i = 0; i < d; i++)
    for (int j = 0; j < d; j++) {
      if (table[i][j] != table[j][i]) throw std::runtime_error("field table: not commutative");
      for (int k = 0; k < d; k++) {
        QVec wi(d, Q(0)), wj(d, Q(0)), wk(d, Q(0));
        wi[i] = 1; wj[j] = 1; wk[k] = 1;
        if (mul(mul(wi, wj), wk) != mul(wi, mul(wj, wk)))
          throw std::runtime_error("field table: not associative");
      }
    }
  // --- trace form and discriminant ---
  trace_gram = qmat_zero(d, d);
  for (int i = 0; i < d; i++)
    for (int j = 0; j < d; j++) {
      QVec wi(d, Q(0)), wj(d, Q(0));
      wi[i] = 1; wj[j] = 1;
      trace_gram[i][j] = trace(mul(wi, wj));
    }
  Q dq = qmat_det(trace_gram);
  if (dq == 0 || dq.get_den() != 1)
    throw std::runtime_error("field table: trace form not an integral nonsingular form");
  disc = dq.get_num();
  // --- embeddings via a primitive element ---
  QVec theta;
  QVec mp;
  {
    // Try basis vectors, then small sums.
    std::vector<QVec> cands;
    for (int i = 0; i < d; i++) {
      QVec v(d, Q(0));
      v[i] = 1;
      cands.push_back(v);
    }
    for (int i = 0; i < d; i++)
      for (int j = i + 1; j < d; j++)
        for (int ci = 1; ci <= 3; ci++) {
          QVec v(d, Q(0));
          v[i] = 1;
          v[j] = ci;
          cands.push_back(v);
        }
    bool found = false;
    for (const auto& v : cands) {
      QVec m = minpoly(v);
      if ((int)m.size() == d + 1) { theta = v; mp = m; found = true; break; }
    }
    if (!found) throw std::runtime_error("field table: no primitive element found");
  }
  std::vector<cd> roots = poly_roots(mp);
  // Coordinates of powers of theta (exact) and the change of basis.
  QMat powmat(d);
  QVec p = one;
  for (int k = 0; k < d; k++) {
    powmat[k] = p;
    p = mul(p, theta);
  }
  QMat pinv = qmat_inverse(powmat);  // w_j = sum_k pinv[j][k] theta^k
  // Classify roots into places.
  double scale = 0;
  for (auto& r : roots) scale = std::max(scale, std::abs(r));
  std::vector<cd> realroots, cplxroots;
  for (auto& r : roots) {
    if (std::abs(r.imag()) < 1e-8 * (1 + scale)) {
      // Newton-polish on the real axis.
      double x = r.real();
      for (int it = 0; it < 8; it++) {
        double v = mp[d].get_d(), dv = 0;
        for (int i = d - 1; i >= 0; i--) {
          dv = dv * x + v;
          v = v * x + mp[i].get_d();
        }
        if (dv == 0) break;
        x -= v / dv;
      }
      realroots.push_back(cd(x, 0.0));
    } else if (r.imag() > 0) {
      cplxroots.push_back(r);
    }
  }
  r1 = (int)realroots.size();
  r2 = (int)cplxroots.size();
  if (r1 + 2 * r2 != d) throw std::runtime_error("field table: embedding classification failed");
  std::sort(realroots.begin(), realroots.end(),
            [](cd a, cd b) { return a.real() < b.real(); });
  std::sort(cplxroots.begin(), cplxroots.end(), [](cd a, cd b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  places.clear();
  auto add_place = [&](cd rho, bool real) {
    Place pl;
    pl.is_real = real;
    pl.emb.resize(d);
    // sigma(w_j) = sum_k pinv[j][k] rho^k
    std::vector<cd> rp(d);
    rp[0] = 1;
    for (int k = 1; k < d; k++) rp[k] = rp[k - 1] * rho;
    for (int j = 0; j < d; j++) {
      cd s = 0;
      for (int k = 0; k < d; k++) s += pinv[j][k].get_d() * rp[k];
      if (real) s = cd(s.real(), 0.0);
      pl.emb[j] = s;
    }
    places.push_back(pl);
  };
  for (auto& r : realroots) add_place(r, true);
  for (auto& r : cplxroots) add_place(r, false);
  // --- O_k and the codifferent (trace-dual of Z^d under trace_gram) ---
  ring = lat_from_rows(qmat_identity(d), d);
  codifferent = lat_from_rows(qmat_inverse(trace_gram), d);
}

std::shared_ptr<const NumberField> NumberField::rationals() {
  auto f = std::make_shared<NumberField>();
  f->table = {{{Q(1)}}};
  f->name = "Q";
  f->finish();
  return f;
}

std::shared_ptr<const NumberField> NumberField::quadratic(long D) {
  if (D == 0 || D == 1) throw std::runtime_error("quadratic: D must be squarefree, != 0,1");
  auto f = std::make_shared<NumberField>();
  bool one_mod4 = ((D % 4 + 4) % 4) == 1;
  // Basis (1, w): w^2 = D (D != 1 mod 4) or w^2 = w + (D-1)/4 (D = 1 mod 4).
  QVec w2;
  if (one_mod4) {
    Q c(D - 1, 4);
    c.canonicalize();
    w2 = {c, Q(1)};
  } else {
    w2 = {Q(D), Q(0)};
  }
  f->table = {{{Q(1), Q(0)}, {Q(0), Q(1)}}, {{Q(0), Q(1)}, w2}};
  f->name = "Q(sqrt " + std::to_string(D) + ")";
  f->finish();
  return f;
}

std::shared_ptr<const NumberField> NumberField::from_table(
    std::vector<std::vector<QVec>> table, const std::string& name) {
  auto f = std::make_shared<NumberField>();
  f->table = std::move(table);
  f->name = name;
  f->finish();
  return f;
}

}  // namespace heckelab
