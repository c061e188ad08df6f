#include "qlinalg.hpp"

#include <algorithm>

namespace heckelab {

QMat qmat_zero(int m, int n) { return QMat(m, QVec(n, Q(0))); }

QMat qmat_identity(int n) {
  QMat a = qmat_zero(n, n);
  for (int i = 0; i < n; i++) a[i][i] = 1;
  return a;
}

QMat qmat_mul(const QMat& a, const QMat& b) {
  int m = (int)a.size(), k = (int)b.size(), n = (int)b[0].size();
  QMat c = qmat_zero(m, n);
  for (int i = 0; i < m; i++)
    for (int l = 0; l < k; l++) {
      if (a[i][l] == 0) continue;
      for (int j = 0; j < n; j++) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

QVec qmat_vecmat(const QVec& x, const QMat& a) {
  int m = (int)a.size(), n = (int)a[0].size();
  QVec y(n, Q(0));
  for (int i = 0; i < m; i++) {
    if (x[i] == 0) continue;
    for (int j = 0; j < n; j++) y[j] += x[i] * a[i][j];
  }
  return y;
}

QMat qmat_transpose(const QMat& a) {
  int m = (int)a.size(), n = (int)a[0].size();
  QMat t = qmat_zero(n, m);
  for (int i = 0; i < m; i++)
    for (int j = 0; j < n; j++) t[j][i] = a[i][j];
  return t;
}

Q qmat_det(QMat a) {
  int n = (int)a.size();
  Q det = 1;
  for (int c = 0; c < n; c++) {
    int p = -1;
    for (int r = c; r < n; r++)
      if (a[r][c] != 0) { p = r; break; }
    if (p < 0) return Q(0);
    if (p != c) { std::swap(a[p], a[c]); det = -det; }
    det *= a[c][c];
    for (int r = c + 1; r < n; r++) {
      if (a[r][c] == 0) continue;
      Q f = a[r][c] / a[c][c];
      for (int j = c; j < n; j++) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

QMat qmat_inverse(const QMat& a) {
  int n = (int)a.size();
  QMat m = a, inv = qmat_identity(n);
  for (int c = 0; c < n; c++) {
    int p = -1;
    for (int r = c; r < n; r++)
      if (m[r][c] != 0) { p = r; break; }
    if (p < 0) throw std::runtime_error("qmat_inverse: singular matrix");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Q piv = m[c][c];
    for (int j = 0; j < n; j++) { m[c][j] /= piv; inv[c][j] /= piv; }
    for (int r = 0; r < n; r++) {
      if (r == c || m[r][c] == 0) continue;
      Q f = m[r][c];
      for (int j = 0; j < n; j++) { m[r][j] -= f * m[c][j]; inv[r][j] -= f * inv[c][j]; }
    }
  }
  return inv;
}

QMat qmat_scale(const QMat& a, const Q& c) {
  QMat r = a;
  for (auto& row : r)
    for (auto& x : row) x *= c;
  return r;
}

bool qvec_is_integral(const QVec& x) {
  for (const auto& v : x)
    if (v.get_den() != 1) return false;
  return true;
}

ZMat hnf_rows(ZMat rows) {
  int m = (int)rows.size();
  if (m == 0) return rows;
  int n = (int)rows[0].size();
  int row = 0;
  for (int col = 0; col < n && row < m; col++) {
    // Eliminate below `row` in this column by Euclidean steps.
    for (int r = row + 1; r < m; r++) {
      while (rows[r][col] != 0) {
        if (rows[row][col] == 0) { std::swap(rows[row], rows[r]); continue; }
        Z q = rows[r][col] / rows[row][col];  // truncated division is fine here
        for (int j = 0; j < n; j++) rows[r][j] -= q * rows[row][j];
        if (rows[r][col] != 0) std::swap(rows[row], rows[r]);
      }
    }
    if (rows[row][col] == 0) continue;
    if (rows[row][col] < 0)
      for (int j = 0; j < n; j++) rows[row][j] = -rows[row][j];
    // Reduce the entries above the pivot into [0, pivot).
    for (int r = 0; r < row; r++) {
      Z q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[row][col].get_mpz_t());
      if (q != 0)
        for (int j = 0; j < n; j++) rows[r][j] -= q * rows[row][j];
    }
    row++;
  }
  rows.resize(row);
  return rows;
}

QLat lat_from_rows(const QMat& rows, int d) {
  // Clear denominators, HNF, restore scale.
  Z den = 1;
  for (const auto& r : rows)
    for (const auto& x : r) {
      Z g;
      mpz_lcm(g.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
      den = g;
    }
  ZMat zr(rows.size(), ZVec(d));
  for (size_t i = 0; i < rows.size(); i++)
    for (int j = 0; j < d; j++) {
      Q v = rows[i][j] * Q(den);
      zr[i][j] = v.get_num();
    }
  ZMat h = hnf_rows(std::move(zr));
  if ((int)h.size() != d) throw std::runtime_error("lat_from_rows: rank deficient");
  QLat L;
  L.b = qmat_zero(d, d);
  for (int i = 0; i < d; i++)
    for (int j = 0; j < d; j++) {
      L.b[i][j] = Q(h[i][j], den);
      L.b[i][j].canonicalize();
    }
  return L;
}

bool lat_eq(const QLat& a, const QLat& b) { return a.b == b.b; }

QLat lat_sum(const QLat& a, const QLat& b) {
  QMat rows = a.b;
  rows.insert(rows.end(), b.b.begin(), b.b.end());
  return lat_from_rows(rows, a.dim());
}

QLat lat_dual(const QLat& a) {
  QMat inv = qmat_inverse(a.b);
  return lat_from_rows(qmat_transpose(inv), a.dim());
}

QLat lat_intersect(const QLat& a, const QLat& b) {
  return lat_dual(lat_sum(lat_dual(a), lat_dual(b)));
}

Q lat_covol(const QLat& a) {
  Q d = qmat_det(a.b);
  return d < 0 ? Q(-d) : d;
}

QVec lat_coords(const QLat& a, const QVec& x) {
  // Solve c * b = x by forward substitution is not valid for general HNF with
  // denominators; just use the inverse (d <= 4, cheap enough).
  return qmat_vecmat(x, qmat_inverse(a.b));
}

bool lat_contains(const QLat& a, const QVec& x) {
  return qvec_is_integral(lat_coords(a, x));
}

std::optional<ZVec> zsolve_rows(const QMat& rows, const QVec& target) {
  int m = (int)rows.size();
  int d = (int)target.size();
  Z den = 1;
  for (const auto& r : rows)
    for (const auto& e : r) den = lcm(den, e.get_den());
  for (const auto& e : target) den = lcm(den, e.get_den());
  // Augment a transform block: every HNF row [h | s] satisfies h = s * P.
  ZMat aug(m, ZVec(d + m, Z(0)));
  for (int i = 0; i < m; i++) {
    for (int j = 0; j < d; j++) {
      Q v = rows[i][j] * Q(den);
      aug[i][j] = v.get_num();
    }
    aug[i][d + i] = 1;
  }
  ZMat H = hnf_rows(aug);
  ZVec t(d);
  for (int j = 0; j < d; j++) {
    Q v = target[j] * Q(den);
    t[j] = v.get_num();
  }
  ZVec z(m, Z(0));
  for (const auto& r : H) {
    int piv = 0;
    while (piv < d + m && r[piv] == 0) piv++;
    if (piv >= d) break;  // remaining rows have no support in the h block
    if (t[piv] == 0) continue;
    if (t[piv] % r[piv] != 0) return std::nullopt;
    Z q = t[piv] / r[piv];
    for (int j = piv; j < d; j++) t[j] -= q * r[j];
    for (int j = 0; j < m; j++) z[j] += q * r[d + j];
  }
  for (int j = 0; j < d; j++)
    if (t[j] != 0) return std::nullopt;
  return z;
}

std::string q_to_string(const Q& x) {
  std::string s = x.get_num().get_str();
  if (x.get_den() != 1) s += "/" + x.get_den().get_str();
  return s;
}

Q q_parse(const std::string& s) {
  std::string t = s;
  // Allow a decimal point for convenience in configs.
  auto dot = t.find('.');
  if (dot != std::string::npos && t.find('/') == std::string::npos) {
    std::string frac = t.substr(dot + 1);
    std::string whole = t.substr(0, dot);
    std::string den = "1" + std::string(frac.size(), '0');
    bool neg = !whole.empty() && whole[0] == '-';
    if (neg) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    Z num, dden;
    if (mpz_set_str(num.get_mpz_t(), (whole + frac).c_str(), 10) != 0 ||
        mpz_set_str(dden.get_mpz_t(), den.c_str(), 10) != 0)
      throw std::runtime_error("q_parse: bad number '" + s + "'");
    Q v = Q(num, dden);
    v.canonicalize();
    return neg ? Q(-v) : v;
  }
  Q v;
  if (mpq_set_str(v.get_mpq_t(), t.c_str(), 10) != 0)
    throw std::runtime_error("q_parse: bad number '" + s + "'");
  v.canonicalize();
  return v;
}

}  // namespace heckelab
