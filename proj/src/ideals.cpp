#include "ideals.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "enumerate.hpp"

namespace heckelab {

FracIdeal ideal_ring(FieldPtr k) {
  return FracIdeal{k, lat_from_rows(qmat_identity(k->d), k->d)};
}

FracIdeal ideal_from_gens(FieldPtr k, const std::vector<QVec>& gens) {
  QMat rows;
  for (const auto& g : gens) {
    QMat m = k->rep_matrix(g);  // rows: g * w_i
    rows.insert(rows.end(), m.begin(), m.end());
  }
  return FracIdeal{k, lat_from_rows(rows, k->d)};
}

FracIdeal ideal_principal(FieldPtr k, const QVec& x) {
  return ideal_from_gens(k, {x});
}

FracIdeal ideal_mul(const FracIdeal& a, const FracIdeal& b) {
  QMat rows;
  for (const auto& ra : a.lat.b)
    for (const auto& rb : b.lat.b) rows.push_back(a.k->mul(ra, rb));
  return FracIdeal{a.k, lat_from_rows(rows, a.k->d)};
}

FracIdeal ideal_inv(const FracIdeal& a) {
  // {x : x * g in O_k for every basis g of a}.
  const auto& k = a.k;
  bool first = true;
  QLat acc;
  for (const auto& g : a.lat.b) {
    QLat cond = lat_from_rows(qmat_inverse(k->rep_matrix(g)), k->d);
    acc = first ? cond : lat_intersect(acc, cond);
    first = false;
  }
  return FracIdeal{k, acc};
}

FracIdeal ideal_div(const FracIdeal& a, const FracIdeal& b) {
  return ideal_mul(a, ideal_inv(b));
}

FracIdeal ideal_add(const FracIdeal& a, const FracIdeal& b) {
  return FracIdeal{a.k, lat_sum(a.lat, b.lat)};
}

FracIdeal ideal_intersect(const FracIdeal& a, const FracIdeal& b) {
  return FracIdeal{a.k, lat_intersect(a.lat, b.lat)};
}

FracIdeal ideal_pow(const FracIdeal& a, long e) {
  FracIdeal r = ideal_ring(a.k);
  FracIdeal base = e < 0 ? ideal_inv(a) : a;
  long n = e < 0 ? -e : e;
  for (long i = 0; i < n; i++) r = ideal_mul(r, base);
  return r;
}

Q ideal_norm(const FracIdeal& a) { return lat_covol(a.lat); }

bool ideal_eq(const FracIdeal& a, const FracIdeal& b) { return lat_eq(a.lat, b.lat); }

bool ideal_contains(const FracIdeal& a, const QVec& x) { return lat_contains(a.lat, x); }

bool ideal_is_integral(const FracIdeal& a) {
  for (const auto& r : a.lat.b)
    if (!qvec_is_integral(r)) return false;
  return true;
}

bool ideal_is_anti_integral(const FracIdeal& a) { return ideal_contains(a, a.k->one); }

bool ideal_divides(const FracIdeal& a, const FracIdeal& b) {
  // a | b iff b is a subset of a iff every basis row of b lies in a.
  for (const auto& r : b.lat.b)
    if (!lat_contains(a.lat, r)) return false;
  return true;
}

FracIdeal different_ideal(FieldPtr k) {
  FracIdeal codiff{k, k->codifferent};
  return ideal_inv(codiff);
}

FracIdeal content_ideal(FieldPtr k, const std::vector<QVec>& x,
                        const std::vector<FracIdeal>& comp) {
  bool first = true;
  FracIdeal acc;
  for (size_t i = 0; i < x.size(); i++) {
    if (k->is_zero(x[i])) continue;
    FracIdeal c = ideal_mul(comp[i], ideal_principal(k, k->inv(x[i])));
    acc = first ? c : ideal_intersect(acc, c);
    first = false;
  }
  if (first) throw std::runtime_error("content_ideal: zero vector");
  return acc;
}

// ---------------------------------------------------------------------------
// polynomial arithmetic over F_p (degrees <= 8, coefficients ascending)
// ---------------------------------------------------------------------------
namespace {

using Poly = std::vector<long>;  // coefficients in [0, p)

long mulmod(long a, long b, long p) { return (long)((__int128)a * b % p); }

long powmod_l(long a, long e, long p) {
  long r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

long invmod(long a, long p) { return powmod_l(((a % p) + p) % p, p - 2, p); }

void ptrim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int pdeg(const Poly& f) { return (int)f.size() - 1; }

Poly pmul(const Poly& a, const Poly& b, long p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < b.size(); j++)
      c[i + j] = (c[i + j] + (__int128)a[i] * b[j]) % p;
  ptrim(c);
  return c;
}

Poly pmod(Poly a, const Poly& m, long p) {
  ptrim(a);
  long lead_inv = invmod(m.back(), p);
  while ((int)a.size() >= (int)m.size()) {
    long c = mulmod(a.back(), lead_inv, p);
    int shift = (int)a.size() - (int)m.size();
    for (size_t i = 0; i < m.size(); i++) {
      a[shift + i] = (a[shift + i] - (__int128)c * m[i]) % p;
      if (a[shift + i] < 0) a[shift + i] += p;
    }
    ptrim(a);
    if (a.empty()) break;
  }
  return a;
}

Poly pdivexact(Poly a, const Poly& m, long p) {
  ptrim(a);
  Poly q(std::max<int>(0, (int)a.size() - (int)m.size() + 1), 0);
  long lead_inv = invmod(m.back(), p);
  while ((int)a.size() >= (int)m.size() && !a.empty()) {
    long c = mulmod(a.back(), lead_inv, p);
    int shift = (int)a.size() - (int)m.size();
    q[shift] = c;
    for (size_t i = 0; i < m.size(); i++) {
      a[shift + i] = (a[shift + i] - (__int128)c * m[i]) % p;
      if (a[shift + i] < 0) a[shift + i] += p;
    }
    ptrim(a);
  }
  if (!a.empty()) throw std::runtime_error("pdivexact: not divisible");
  ptrim(q);
  return q;
}

Poly pgcd(Poly a, Poly b, long p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    Poly r = pmod(a, b, p);
    a = b;
    b = r;
  }
  if (!a.empty()) {
    long li = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, li, p);
  }
  return a;
}

Poly pderiv(const Poly& f, long p) {
  Poly d;
  for (size_t i = 1; i < f.size(); i++) d.push_back((long)(((__int128)f[i] * i) % p));
  ptrim(d);
  return d;
}

Poly ppowmod(Poly base, long e, const Poly& m, long p) {
  Poly r = {1};
  base = pmod(base, m, p);
  while (e > 0) {
    if (e & 1) r = pmod(pmul(r, base, p), m, p);
    base = pmod(pmul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

// Distinct irreducible factors (monic) of a squarefree monic f over F_p.
void pfactor_squarefree(Poly f, long p, std::vector<Poly>& out) {
  ptrim(f);
  if (pdeg(f) <= 0) return;
  if (pdeg(f) == 1) {
    long li = invmod(f.back(), p);
    Poly g = {mulmod(f[0], li, p), 1};
    out.push_back(g);
    return;
  }
  // Strip linear factors: gcd(x^p - x, f).
  {
    Poly xp = ppowmod({0, 1}, p, f, p);  // x^p mod f
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = (xp[1] - 1 + p) % p;
    Poly lin = pgcd(f, xp, p);
    if (pdeg(lin) >= 1) {
      // split lin into roots
      if (p < 100) {
        for (long r = 0; r < p; r++) {
          // evaluate
          long v = 0;
          for (int i = pdeg(lin); i >= 0; i--) v = (mulmod(v, r, p) + lin[i]) % p;
          if (v == 0) out.push_back({(p - r) % p, 1});
        }
      } else {
        // Cantor-Zassenhaus on the product of linear factors.
        std::function<void(Poly)> split = [&](Poly g) {
          ptrim(g);
          if (pdeg(g) <= 0) return;
          if (pdeg(g) == 1) {
            long li = invmod(g.back(), p);
            out.push_back({mulmod(g[0], li, p), 1});
            return;
          }
          unsigned long long seed = (unsigned long long)p * 2862933555777941757ULL + 3037000493ULL;
          for (int tries = 0; tries < 200; tries++) {
            seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
            long a = (long)(seed % (unsigned long long)p);
            Poly t = ppowmod({a, 1}, (p - 1) / 2, g, p);
            if (t.empty()) continue;
            t[0] = (t[0] - 1 + p) % p;
            Poly h = pgcd(g, t, p);
            if (pdeg(h) >= 1 && pdeg(h) < pdeg(g)) {
              split(h);
              split(pdivexact(g, h, p));
              return;
            }
          }
          throw std::runtime_error("pfactor: CZ failed to split linears");
        };
        split(lin);
      }
      f = pdivexact(f, lin, p);
      ptrim(f);
      if (pdeg(f) <= 0) return;
    }
  }
  if (pdeg(f) <= 0) return;
  if (pdeg(f) == 2 || pdeg(f) == 3) {
    // no linear factors left => irreducible if deg 2 or 3
    long li = invmod(f.back(), p);
    Poly g = f;
    for (auto& c : g) c = mulmod(c, li, p);
    out.push_back(g);
    return;
  }
  // deg 4, no linear factors: either irreducible or two irreducible quadratics
  Poly x_p2 = ppowmod({0, 1}, p, f, p);
  // x^{p^2} = (x^p)^p mod f: substitute-free approach via powmod with exponent p
  // of the polynomial x^p is composition; instead use exponent p*p directly
  // (fits in long for p <= 3e9 is false; p <= ~3e9 would overflow, but our p
  // stay far below 2^31 so p*p fits in a 64-bit long).
  x_p2 = ppowmod({0, 1}, p * p, f, p);
  if (x_p2.size() < 2) x_p2.resize(2, 0);
  x_p2[1] = (x_p2[1] - 1 + p) % p;
  Poly quad = pgcd(f, x_p2, p);
  if (pdeg(quad) <= 0) {
    long li = invmod(f.back(), p);
    Poly g = f;
    for (auto& c : g) c = mulmod(c, li, p);
    out.push_back(g);
    return;
  }
  if (pdeg(quad) == 2) {
    out.push_back(quad);
    Poly rest = pdivexact(f, quad, p);
    long li = invmod(rest.back(), p);
    for (auto& c : rest) c = mulmod(c, li, p);
    out.push_back(rest);
    return;
  }
  // quad == f: product of two irreducible quadratics; split by CZ in degree 2.
  if (p == 2) {
    // Only one irreducible quadratic over F_2: x^2+x+1, so f = (x^2+x+1)^2,
    // but f is squarefree here -- cannot happen.
    throw std::runtime_error("pfactor: unexpected F_2 quartic");
  }
  unsigned long long seed = (unsigned long long)p * 1181783497276652981ULL + 7;
  for (int tries = 0; tries < 200; tries++) {
    seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    long a = (long)(seed % (unsigned long long)p);
    long b = (long)((seed >> 17) % (unsigned long long)p);
    Poly t = ppowmod({a, b, 1}, (p * p - 1) / 2, f, p);
    if (t.empty()) continue;
    t[0] = (t[0] - 1 + p) % p;
    Poly h = pgcd(f, t, p);
    if (pdeg(h) == 2) {
      out.push_back(h);
      Poly rest = pdivexact(f, h, p);
      long li = invmod(rest.back(), p);
      for (auto& c : rest) c = mulmod(c, li, p);
      out.push_back(rest);
      return;
    }
  }
  throw std::runtime_error("pfactor: CZ failed to split quadratics");
}

// Full factorization with multiplicities of monic f over F_p.
std::vector<std::pair<Poly, int>> pfactor(Poly f, long p) {
  ptrim(f);
  std::vector<std::pair<Poly, int>> result;
  int outer_mult = 1;
  while (true) {
    Poly d = pderiv(f, p);
    if (d.empty() && pdeg(f) >= 1) {
      // f(x) = u(x^p) = (v(x))^p over F_p with v having the same coefficients.
      Poly v;
      for (size_t i = 0; i < f.size(); i += p) v.push_back(f[i]);
      f = v;
      outer_mult *= (int)p;
      continue;
    }
    break;
  }
  Poly sf = pdivexact(f, pgcd(f, pderiv(f, p), p), p);
  std::vector<Poly> irr;
  pfactor_squarefree(sf, p, irr);
  for (const auto& g : irr) {
    int m = 0;
    Poly rem = f;
    while (true) {
      Poly q;
      try {
        q = pdivexact(rem, g, p);
      } catch (...) {
        break;
      }
      rem = q;
      m++;
      if (rem.empty() || pdeg(rem) < pdeg(g)) break;
    }
    result.push_back({g, m * outer_mult});
  }
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// PrimeTable
// ---------------------------------------------------------------------------

PrimeTable::PrimeTable(FieldPtr k) : k_(k) {
  // primitive element with integral coordinates
  std::vector<QVec> cands;
  for (int i = 0; i < k->d; i++) {
    QVec v(k->d, Q(0));
    v[i] = 1;
    cands.push_back(v);
  }
  for (int i = 0; i < k->d; i++)
    for (int j = i + 1; j < k->d; j++)
      for (int c = 1; c <= 3; c++) {
        QVec v(k->d, Q(0));
        v[i] = 1;
        v[j] = c;
        cands.push_back(v);
      }
  for (const auto& v : cands) {
    QVec mp = k->minpoly(v);
    if ((int)mp.size() == k->d + 1) {
      theta_ = v;
      theta_mp_ = mp;
      break;
    }
  }
  if (theta_.empty()) throw std::runtime_error("PrimeTable: no primitive element");
  // index^2 = disc(minpoly) / disc(field); disc(minpoly) via Sylvester resultant
  int d = k->d;
  if (d == 1) {
    index_ = 1;
    return;
  }
  QVec f = theta_mp_;  // degree d, monic
  QVec fp(d);  // derivative, degree d-1
  for (int i = 1; i <= d; i++) fp[i - 1] = f[i] * i;
  int n = 2 * d - 1;
  QMat syl = qmat_zero(n, n);
  for (int i = 0; i < d - 1; i++)     // d-1 rows of f
    for (int j = 0; j <= d; j++) syl[i][i + (d - j)] = f[j];
  for (int i = 0; i < d; i++)         // d rows of f'
    for (int j = 0; j <= d - 1; j++) syl[d - 1 + i][i + (d - 1 - j)] = fp[j];
  Q res = qmat_det(syl);
  int sign = ((d * (d - 1)) / 2) % 2 ? -1 : 1;
  Q discf = res * sign;  // monic: disc = (-1)^{d(d-1)/2} Res(f, f')
  Q idx2 = discf / Q(k->disc);
  if (idx2.get_den() != 1) throw std::runtime_error("PrimeTable: bad index computation");
  Z i2 = idx2.get_num();
  Z idx;
  mpz_sqrt(idx.get_mpz_t(), i2.get_mpz_t());
  if (idx * idx != i2) throw std::runtime_error("PrimeTable: index not a perfect square");
  index_ = idx;
}

std::vector<PrimeIdeal> PrimeTable::factor_good(const Z& p) {
  long pl = mpz_get_si(p.get_mpz_t());
  Poly f(k_->d + 1);
  for (int i = 0; i <= k_->d; i++) {
    Z c = theta_mp_[i].get_num();  // minpoly of an integral theta is integral
    Z r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
    f[i] = mpz_get_si(r.get_mpz_t());
  }
  auto fact = pfactor(f, pl);
  std::vector<PrimeIdeal> out;
  for (auto& [g, e] : fact) {
    // g(theta) as field element
    QVec val = k_->zero_elem();
    QVec pw = k_->one;
    for (size_t i = 0; i < g.size(); i++) {
      val = k_->add(val, k_->mul_scalar(pw, Q(g[i])));
      if (i + 1 < g.size()) pw = k_->mul(pw, theta_);
    }
    PrimeIdeal pr;
    pr.p = p;
    pr.f = pdeg(g);
    pr.e = e;
    pr.id = ideal_from_gens(k_, {k_->mul_scalar(k_->one, Q(p)), val});
    Q nrm = ideal_norm(pr.id);
    Z expect;
    mpz_pow_ui(expect.get_mpz_t(), p.get_mpz_t(), pr.f);
    if (nrm != Q(expect)) throw std::runtime_error("factor_good: norm check failed");
    out.push_back(pr);
  }
  return out;
}

std::vector<PrimeIdeal> PrimeTable::factor_bad(const Z& p) {
  long pl = mpz_get_si(p.get_mpz_t());
  int d = k_->d;
  double size = std::pow((double)pl, d);
  if (size > 2e6) throw std::runtime_error("factor_bad: p too large for brute force");
  // multiplication matrices mod p
  std::vector<std::vector<std::vector<long>>> M(d,
      std::vector<std::vector<long>>(d, std::vector<long>(d, 0)));
  for (int i = 0; i < d; i++)
    for (int j = 0; j < d; j++)
      for (int l = 0; l < d; l++) {
        Q c = k_->table[i][j][l];
        if (c.get_den() != 1) throw std::runtime_error("factor_bad: non-integral table");
        Z r;
        mpz_fdiv_r(r.get_mpz_t(), c.get_num().get_mpz_t(), p.get_mpz_t());
        M[i][j][l] = mpz_get_si(r.get_mpz_t());
      }
  auto mulvec = [&](const std::vector<long>& x, int i) {
    std::vector<long> y(d, 0);
    for (int j = 0; j < d; j++) {
      if (x[j] == 0) continue;
      for (int l = 0; l < d; l++) y[l] = (y[l] + x[j] * M[i][j][l]) % pl;
    }
    return y;
  };
  // Enumerate subspaces by echelon bases: choose pivot columns, then free
  // entries; a subspace of dim s has pivots at s columns.
  std::vector<PrimeIdeal> out;
  std::vector<int> cols(d);
  std::iota(cols.begin(), cols.end(), 0);
  auto reduce_against = [&](std::vector<long> v,
                            const std::vector<std::vector<long>>& basis,
                            const std::vector<int>& pivots) {
    for (size_t b = 0; b < basis.size(); b++) {
      long c = v[pivots[b]];
      if (c == 0) continue;
      for (int j = 0; j < d; j++) v[j] = ((v[j] - c * basis[b][j]) % pl + pl) % pl;
    }
    return v;
  };
  for (int s = 0; s < d; s++) {  // subspace dimension (maximal ideal mod p has dim d-f, f=d-s)
    // choose pivot columns: all s-subsets
    std::vector<int> idx(s);
    std::function<void(int, int)> choose = [&](int start, int got) {
      if (got == s) {
        // enumerate free entries: for echelon basis rows, entries at non-pivot
        // columns to the right of the pivot
        std::vector<std::vector<long>> basis(s, std::vector<long>(d, 0));
        std::vector<std::pair<int, int>> freepos;
        for (int r = 0; r < s; r++) {
          basis[r][idx[r]] = 1;
          for (int cth = idx[r] + 1; cth < d; cth++) {
            bool ispiv = false;
            for (int r2 = 0; r2 < s; r2++)
              if (idx[r2] == cth) ispiv = true;
            if (!ispiv) freepos.push_back({r, cth});
          }
        }
        long total = 1;
        for (size_t i = 0; i < freepos.size(); i++) {
          total *= pl;
          if (total > 4000000) throw std::runtime_error("factor_bad: too many subspaces");
        }
        for (long code = 0; code < total; code++) {
          long cc = code;
          for (auto& [r, cth] : freepos) {
            basis[r][cth] = cc % pl;
            cc /= pl;
          }
          // stability under multiplication by every basis element
          bool stable = true;
          for (int r = 0; r < s && stable; r++)
            for (int i = 0; i < d && stable; i++) {
              auto y = reduce_against(mulvec(basis[r], i), basis, idx);
              for (int j = 0; j < d; j++)
                if (y[j] != 0) { stable = false; break; }
            }
          if (!stable) continue;
          // quotient is a field? test invertibility of every nonzero element
          int f = d - s;
          // quotient coordinates: non-pivot columns
          std::vector<int> qcols;
          for (int cth = 0; cth < d; cth++) {
            bool ispiv = false;
            for (int r2 = 0; r2 < s; r2++)
              if (idx[r2] == cth) ispiv = true;
            if (!ispiv) qcols.push_back(cth);
          }
          auto to_quot = [&](const std::vector<long>& v) {
            auto r = reduce_against(v, basis, idx);
            std::vector<long> q(f);
            for (int i = 0; i < f; i++) q[i] = r[qcols[i]];
            return q;
          };
          auto lift = [&](const std::vector<long>& q) {
            std::vector<long> v(d, 0);
            for (int i = 0; i < f; i++) v[qcols[i]] = q[i];
            return v;
          };
          // quotient multiplication table
          // element x (quotient coords) times basis quotient e_i
          bool isfield = true;
          long qn = 1;
          for (int i = 0; i < f; i++) qn *= pl;
          for (long code2 = 1; code2 < qn && isfield; code2++) {
            long cc2 = code2;
            std::vector<long> q(f);
            for (int i = 0; i < f; i++) { q[i] = cc2 % pl; cc2 /= pl; }
            // multiplication matrix of q on the quotient
            std::vector<std::vector<long>> mq(f, std::vector<long>(f));
            auto xv = lift(q);
            for (int i = 0; i < f; i++) {
              // x * (lift of quotient basis e_i): full product then reduce
              auto ei = lift([&] {
                std::vector<long> e(f, 0);
                e[i] = 1;
                return e;
              }());
              // full product in A
              std::vector<long> prod(d, 0);
              for (int a1 = 0; a1 < d; a1++) {
                if (xv[a1] == 0) continue;
                for (int a2 = 0; a2 < d; a2++) {
                  if (ei[a2] == 0) continue;
                  for (int l = 0; l < d; l++)
                    prod[l] = (prod[l] + xv[a1] * ei[a2] % pl * M[a1][a2][l]) % pl;
                }
              }
              auto pq = to_quot(prod);
              for (int j = 0; j < f; j++) mq[j][i] = pq[j];
            }
            // rank of mq
            int rank = 0;
            for (int cpos = 0; cpos < f && rank < f; cpos++) {
              int piv = -1;
              for (int r = rank; r < f; r++)
                if (mq[r][cpos] % pl != 0) { piv = r; break; }
              if (piv < 0) continue;
              std::swap(mq[piv], mq[rank]);
              long inv0 = invmod(mq[rank][cpos], pl);
              for (int j = 0; j < f; j++) mq[rank][j] = mulmod(mq[rank][j], inv0, pl);
              for (int r = 0; r < f; r++) {
                if (r == rank) continue;
                long fc = mq[r][cpos] % pl;
                if (fc == 0) continue;
                for (int j = 0; j < f; j++)
                  mq[r][j] = ((mq[r][j] - fc * mq[rank][j]) % pl + pl) % pl;
              }
              rank++;
            }
            if (rank < f) isfield = false;
          }
          if (!isfield) continue;
          // build the prime ideal: p O_k + lifts of the subspace basis
          QMat rows;
          for (int i = 0; i < d; i++) {
            QVec r(d, Q(0));
            r[i] = Q(p);
            rows.push_back(r);
          }
          for (int r = 0; r < s; r++) {
            QVec v(d);
            for (int j = 0; j < d; j++) v[j] = Q(basis[r][j]);
            rows.push_back(v);
          }
          PrimeIdeal pr;
          pr.p = p;
          pr.f = f;
          pr.id = FracIdeal{k_, lat_from_rows(rows, d)};
          bool dup = false;
          for (auto& e : out)
            if (ideal_eq(e.id, pr.id)) dup = true;
          if (!dup) out.push_back(pr);
        }
        return;
      }
      for (int c2 = start; c2 < d; c2++) {
        idx[got] = c2;
        choose(c2 + 1, got + 1);
      }
    };
    choose(0, 0);
  }
  return out;
}

const std::vector<PrimeIdeal>& PrimeTable::primes_above(const Z& p) {
  auto it = cache_.find(p);
  if (it != cache_.end()) return it->second;
  Z r;
  mpz_fdiv_r(r.get_mpz_t(), index_.get_mpz_t(), p.get_mpz_t());
  std::vector<PrimeIdeal> primes = (r == 0) ? factor_bad(p) : factor_good(p);
  // Ramification indices: at good primes (p coprime to the index) the
  // polynomial multiplicities from Kummer-Dedekind are the exact e_i; bad
  // primes need the valuation of pO.  Completeness: prod N(p_i)^{e_i} = p^d.
  int degsum = 0;
  if (r == 0) {
    FracIdeal pO = ideal_principal(k_, k_->mul_scalar(k_->one, Q(p)));
    for (auto& pr : primes) pr.e = valuation(pO, pr);
  }
  for (auto& pr : primes) degsum += pr.e * pr.f;
  if (degsum != k_->d) throw std::runtime_error("primes_above: incomplete splitting at p=" + p.get_str());
  std::sort(primes.begin(), primes.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
    if (a.f != b.f) return a.f < b.f;
    for (int i = 0; i < a.id.lat.dim(); i++)
      for (int j = 0; j < a.id.lat.dim(); j++) {
        int c = cmp(a.id.lat.b[i][j], b.id.lat.b[i][j]);
        if (c != 0) return c < 0;
      }
    return false;
  });
  return cache_[p] = primes;
}

int PrimeTable::valuation(const FracIdeal& a, const PrimeIdeal& p) const {
  FracIdeal pinv = ideal_inv(p.id);
  FracIdeal b = a;
  int v = 0;
  while (true) {
    FracIdeal c = ideal_mul(b, pinv);
    if (!ideal_is_integral(c)) break;
    b = c;
    v++;
    if (v > 256) throw std::runtime_error("valuation: runaway");
  }
  return v;
}

std::vector<PrimeIdeal> PrimeTable::primes_up_to(double X) {
  std::vector<PrimeIdeal> out;
  long lim = (long)std::floor(X);
  // simple sieve
  std::vector<bool> comp(lim + 1, false);
  for (long p = 2; p <= lim; p++) {
    if (comp[p]) continue;
    for (long q = 2 * p; q <= lim; q += p) comp[q] = true;
    for (const auto& pr : primes_above(Z(p))) {
      double n = std::pow((double)p, pr.f);
      if (n <= X + 0.5) out.push_back(pr);
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
    double na = std::pow(mpz_get_d(a.p.get_mpz_t()), a.f);
    double nb = std::pow(mpz_get_d(b.p.get_mpz_t()), b.f);
    if (na != nb) return na < nb;
    if (a.p != b.p) return a.p < b.p;
    for (int i = 0; i < a.id.lat.dim(); i++)
      for (int j = 0; j < a.id.lat.dim(); j++) {
        int c = cmp(a.id.lat.b[i][j], b.id.lat.b[i][j]);
        if (c != 0) return c < 0;
      }
    return false;
  });
  return out;
}

std::vector<std::pair<PrimeIdeal, int>> PrimeTable::factor(const FracIdeal& a) {
  if (!ideal_is_integral(a)) throw std::runtime_error("factor: ideal not integral");
  Q n = ideal_norm(a);
  Z nn = n.get_num();
  std::vector<std::pair<PrimeIdeal, int>> out;
  Z p = 2;
  while (nn > 1) {
    Z r;
    mpz_fdiv_r(r.get_mpz_t(), nn.get_mpz_t(), p.get_mpz_t());
    if (r == 0) {
      for (const auto& pr : primes_above(p)) {
        int v = valuation(a, pr);
        if (v > 0) out.push_back({pr, v});
      }
      while (true) {
        Z q2, r2;
        mpz_fdiv_qr(q2.get_mpz_t(), r2.get_mpz_t(), nn.get_mpz_t(), p.get_mpz_t());
        if (r2 != 0) break;
        nn = q2;
      }
    }
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
  return out;
}

// ---------------------------------------------------------------------------
// enumeration, principality, class group
// ---------------------------------------------------------------------------

IdealList enumerate_ideals(PrimeTable& pt, double X, const ClassGroup* cg,
                           bool with_ids) {
  IdealList L;
  L.primes = pt.primes_up_to(X);
  if (cg)
    for (const auto& pr : L.primes) L.prime_cls.push_back(cg->class_of(pr.id));
  EnumIdeal unit;
  unit.id = ideal_ring(pt.field());
  unit.nrm = 1;
  unit.nrm_z = 1;
  unit.cls = 0;
  L.items.push_back(unit);
  // pass by value: the recursion appends to L.items, which may reallocate
  std::function<void(size_t, EnumIdeal)> rec = [&](size_t i, EnumIdeal cur) {
    for (size_t j = i; j < L.primes.size(); j++) {
      double pn = std::pow(mpz_get_d(L.primes[j].p.get_mpz_t()), L.primes[j].f);
      // primes are sorted by norm: once one no longer fits, none after it does
      if (cur.nrm * pn > X * (1 + 1e-12)) break;
      EnumIdeal nxt;
      if (with_ids) nxt.id = ideal_mul(cur.id, L.primes[j].id);
      Z pf;
      mpz_pow_ui(pf.get_mpz_t(), L.primes[j].p.get_mpz_t(), L.primes[j].f);
      nxt.nrm_z = cur.nrm_z * pf;
      nxt.nrm = mpz_get_d(nxt.nrm_z.get_mpz_t());
      nxt.fact = cur.fact;
      if (!nxt.fact.empty() && nxt.fact.back().first == (int)j)
        nxt.fact.back().second++;
      else
        nxt.fact.push_back({(int)j, 1});
      nxt.cls = cg ? cg->mul(cur.cls, L.prime_cls[j]) : 0;
      L.items.push_back(nxt);
      rec(j, nxt);
    }
  };
  rec(0, L.items[0]);
  std::sort(L.items.begin(), L.items.end(), [](const EnumIdeal& a, const EnumIdeal& b) {
    if (a.nrm_z != b.nrm_z) return a.nrm_z < b.nrm_z;
    return a.fact < b.fact;
  });
  return L;
}

std::optional<QVec> principal_generator(const FracIdeal& a, const UnitGroup& u) {
  const auto& k = a.k;
  double na = ideal_norm(a).get_d();
  // box: |sigma(x)| <= (N a)^{1/d} * exp(slack + margin); some unit
  // translate of any generator has unit-domain coordinates in
  // [-1/2, 1/2]^rank, so half the domain diameter suffices
  std::vector<double> slack(k->num_places(), 0.0);
  for (int j = 0; j < u.rank; j++)
    for (int p = 0; p < k->num_places(); p++)
      slack[p] += 0.5 * std::abs(u.logvec[j][p]) / k->places[p].nsig();
  std::vector<double> wts(k->num_places());
  for (int p = 0; p < k->num_places(); p++) {
    double B = std::pow(na, 1.0 / k->d) * std::exp(slack[p] + 0.05);
    wts[p] = k->places[p].nsig() / (B * B);
  }
  auto gram = place_gram(*k, a.lat.b, wts);
  Q target = ideal_norm(a);
  std::optional<QVec> found;
  enumerate_quadform(gram, (double)k->d + 1e-6, true, [&](const std::vector<long>& c) {
    QVec x = k->zero_elem();
    for (int i = 0; i < k->d; i++)
      if (c[i] != 0) x = k->add(x, k->mul_scalar(a.lat.b[i], Q(c[i])));
    Q nx = k->norm(x);
    if (nx != target && nx != -target) return true;
    if (lat_eq(ideal_principal(k, x).lat, a.lat)) {
      found = x;
      return false;
    }
    return true;
  });
  return found;
}

ClassGroup::ClassGroup(PrimeTable& pt, const UnitGroup& units)
    : k_(pt.field()), units_(units) {
  int d = k_->d;
  double dd = std::abs(mpz_get_d(k_->disc.get_mpz_t()));
  double dfact = 1;
  for (int i = 2; i <= d; i++) dfact *= i;
  double mink = std::sqrt(dd) * std::pow(4.0 / M_PI, k_->r2) * dfact / std::pow((double)d, d);
  reps_.push_back(ideal_ring(k_));
  if (mink >= 2) {
    IdealList L = enumerate_ideals(pt, mink, nullptr);
    for (const auto& it : L.items) {
      bool matched = false;
      for (const auto& r : reps_) {
        FracIdeal q = ideal_div(it.id, r);
        if (principal_generator(q, units_)) { matched = true; break; }
      }
      if (!matched) reps_.push_back(it.id);
    }
  }
  h_ = (int)reps_.size();
  if (h_ > 4) throw std::runtime_error("class_group: h > 4 unsupported");
  mul_.assign(h_, std::vector<int>(h_, 0));
  inv_.assign(h_, 0);
  for (int a = 0; a < h_; a++)
    for (int b = 0; b < h_; b++) mul_[a][b] = class_of(ideal_mul(reps_[a], reps_[b]));
  for (int a = 0; a < h_; a++)
    for (int b = 0; b < h_; b++)
      if (mul_[a][b] == 0) inv_[a] = b;
  // characters via cyclic decomposition
  chars_.assign(h_, std::vector<cd>(h_, cd(1, 0)));
  auto order_of = [&](int g) {
    int o = 1, c = g;
    while (c != 0) { c = mul_[c][g]; o++; }
    return o;
  };
  int g1 = 0, o1 = 1;
  for (int g = 0; g < h_; g++)
    if (order_of(g) > o1) { o1 = order_of(g); g1 = g; }
  if (o1 == h_) {
    // cyclic: dlog table
    std::vector<int> dlog(h_, 0);
    int c = 0;
    for (int i = 0; i < h_; i++) {
      dlog[c] = i;
      c = mul_[c][g1];
    }
    for (int j = 0; j < h_; j++)
      for (int x = 0; x < h_; x++)
        chars_[j][x] = std::polar(1.0, 2 * M_PI * j * dlog[x] / h_);
  } else if (h_ == 4 && o1 == 2) {
    // Klein four group: pick two generators
    int g2 = 0;
    for (int g = 1; g < h_; g++)
      if (g != g1) { g2 = g; break; }
    // coordinates (i, j) with x = g1^i g2^j
    std::vector<std::pair<int, int>> coord(h_);
    for (int i = 0; i < 2; i++)
      for (int j = 0; j < 2; j++) {
        int x = 0;
        if (i) x = mul_[x][g1];
        if (j) x = mul_[x][g2];
        coord[x] = {i, j};
      }
    int idx = 0;
    for (int a = 0; a < 2; a++)
      for (int b = 0; b < 2; b++) {
        for (int x = 0; x < h_; x++)
          chars_[idx][x] = ((a * coord[x].first + b * coord[x].second) % 2) ? -1.0 : 1.0;
        idx++;
      }
  } else {
    throw std::runtime_error("class_group: unsupported group shape");
  }
}

int ClassGroup::class_of(const FracIdeal& a) const {
  for (int c2 = 0; c2 < (int)reps_.size(); c2++) {
    FracIdeal q = ideal_div(a, reps_[c2]);
    if (principal_generator(q, units_)) return c2;
  }
  throw std::runtime_error("class_of: no matching class");
}

}  // namespace heckelab
