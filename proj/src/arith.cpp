#include "arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heckelab {

namespace {

double prime_norm(const PrimeIdeal& p) {
  return std::pow(mpz_get_d(p.p.get_mpz_t()), p.f);
}

}  // namespace

Z euler_phi(PrimeTable& pt, const FracIdeal& m) {
  if (!ideal_is_integral(m)) throw std::runtime_error("euler_phi: m not integral");
  Z r = 1;
  for (const auto& [p, e] : pt.factor(m)) {
    Z np;
    mpz_pow_ui(np.get_mpz_t(), p.p.get_mpz_t(), p.f);
    Z pe, pe1;
    mpz_pow_ui(pe.get_mpz_t(), np.get_mpz_t(), e);
    mpz_pow_ui(pe1.get_mpz_t(), np.get_mpz_t(), e - 1);
    r *= pe - pe1;
  }
  return r;
}

cd divisor_sum(PrimeTable& pt, const ClassGroup* cg, int chi, const FracIdeal& m,
               cd s) {
  if (!ideal_is_integral(m)) throw std::runtime_error("divisor_sum: m not integral");
  cd total = 1;
  for (const auto& [p, e] : pt.factor(m)) {
    double np = prime_norm(p);
    cd chi_p = 1;
    if (cg && chi != 0) chi_p = cg->chi(chi, cg->class_of(p.id));
    cd fac = 0, term = 1;
    for (int a = 0; a <= e; a++) {
      fac += term * std::exp(s * (double)a * std::log(np));
      term *= chi_p;
    }
    total *= fac;
  }
  return total;
}

cd ramanujan_sum(PrimeTable& pt, const FracIdeal& m, const FracIdeal& b) {
  FieldPtr F = pt.field();
  FracIdeal codiff{F, F->codifferent};
  if (!ideal_divides(codiff, b))
    throw std::runtime_error("ramanujan_sum: b not contained in the codifferent");
  if (ideal_eq(m, ideal_ring(F))) return 1;
  FracIdeal A = ideal_mul(b, ideal_inv(m));
  // coordinates of b's basis in A's basis: integer matrix with |det| = N(m)
  int d = F->d;
  ZMat M(d, std::vector<Z>(d));
  for (int i = 0; i < d; i++) {
    QVec c = lat_coords(A.lat, b.lat.b[i]);
    for (int j = 0; j < d; j++) {
      if (c[j].get_den() != 1) throw std::runtime_error("ramanujan_sum: b not in A");
      M[i][j] = c[j].get_num();
    }
  }
  ZMat H = hnf_rows(M);
  double count = 1;
  for (int i = 0; i < d; i++) count *= mpz_get_d(H[i][i].get_mpz_t());
  if (count > 2e6) throw std::runtime_error("ramanujan_sum: quotient too large");
  // enumerate coset representatives sum c_i * A-basis_i, 0 <= c_i < H[i][i]
  cd total = 0;
  std::vector<long> idx(d, 0), lim(d);
  for (int i = 0; i < d; i++) lim[i] = mpz_get_si(H[i][i].get_mpz_t());
  while (true) {
    bool zero = true;
    for (int i = 0; i < d; i++) zero = zero && idx[i] == 0;
    if (!zero) {
      QVec x = F->zero_elem();
      for (int i = 0; i < d; i++)
        if (idx[i]) x = F->add(x, F->mul_scalar(A.lat.b[i], Q(idx[i])));
      // x generates b m^{-1} / b  iff  (x) + b = b m^{-1}
      if (ideal_eq(ideal_add(ideal_principal(F, x), b), A)) {
        Q tr = F->trace(x);
        double frac = tr.get_d();
        total += std::polar(1.0, 2 * M_PI * frac);
      }
    }
    int c = 0;
    while (c < d && ++idx[c] == lim[c]) idx[c++] = 0;
    if (c == d) break;
  }
  return total;
}

double ramanujan_tau_fast(PrimeTable& pt, const FracIdeal& m, const FracIdeal& b) {
  FieldPtr F = pt.field();
  FracIdeal bd = ideal_mul(b, different_ideal(F));
  if (!ideal_is_integral(bd))
    throw std::runtime_error("ramanujan_tau_fast: b not contained in the codifferent");
  double total = 1;
  for (const auto& [p, e] : pt.factor(m)) {
    double np = prime_norm(p);
    int c = pt.valuation(bd, p);
    double fac;
    if (e <= c)
      fac = std::pow(np, e) - std::pow(np, e - 1);
    else if (e == c + 1)
      fac = -std::pow(np, c);
    else
      fac = 0;
    total *= fac;
  }
  return total;
}

double kappa_F(const ClassGroup& cg) {
  FieldPtr F = cg.field();
  const UnitGroup& u = cg.units();
  double dd = std::abs(mpz_get_d(F->disc.get_mpz_t()));
  return std::pow(2.0, F->r1) * std::pow(2 * M_PI, F->r2) * cg.h() * u.regulator /
         (u.w * std::sqrt(dd));
}

LSeries::LSeries(PrimeTable& pt, const ClassGroup& cg, double X)
    : pt_(pt), cg_(cg), X_(X) {
  list_ = enumerate_ideals(pt_, X_, &cg_, /*with_ids=*/false);
  kappa_ = kappa_F(cg_);
  int h = cg_.h();
  for (const auto& it : list_.items) {
    long n = mpz_get_si(it.nrm_z.get_mpz_t());
    if (norms_.empty() || norms_.back() != n) {
      norms_.push_back(n);
      coef_.push_back(std::vector<cd>(h, cd(0, 0)));
    }
    for (int j = 0; j < h; j++) coef_.back()[j] += cg_.chi(j, it.cls);
  }
  // transpose for per-character access
  std::vector<std::vector<cd>> bychi(h, std::vector<cd>(norms_.size()));
  for (size_t i = 0; i < norms_.size(); i++)
    for (int j = 0; j < h; j++) bychi[j][i] = coef_[i][j];
  coef_ = std::move(bychi);
}

cd LSeries::partial(cd s, int chi, double X) const {
  cd acc = 0;
  for (size_t i = 0; i < norms_.size() && norms_[i] <= X; i++)
    acc += coef_[chi][i] * std::exp(-s * std::log((double)norms_[i]));
  return acc;
}

cd LSeries::cesaro(cd s, int chi, double X) const {
  // average of the cutoff-indexed partial sums over integer cutoffs in
  // (X/2, X]; the averaging damps the oscillating remainder of a
  // non-principal character series in the critical strip
  long lo = (long)std::floor(X / 2), hi = (long)std::floor(X);
  cd acc = 0, run = 0;
  size_t i = 0;
  for (long N = 1; N <= hi; N++) {
    while (i < norms_.size() && norms_[i] == N) {
      run += coef_[chi][i] * std::exp(-s * std::log((double)N));
      i++;
    }
    if (N > lo) acc += run;
  }
  return acc / (double)(hi - lo);
}

LSeries::Val LSeries::L(cd s, int chi) const {
  Val v;
  if (chi == 0) {
    if (std::abs(s - cd(1, 0)) < 1e-12) throw std::runtime_error("LSeries: pole at s = 1");
    // residue-subtracted partial sums, averaged over integer cutoffs N in
    // (X/2, X]; the half-shifted subtraction kappa (N+1/2)^{1-s}/(s-1)
    // cancels the midpoint term of the Euler-Maclaurin remainder and the
    // averaging damps the oscillation of the ideal count
    auto eval = [&](double X) {
      long lo = (long)std::floor(X / 2), hi = (long)std::floor(X);
      cd acc = 0, run = 0;
      size_t i = 0;
      for (long N = 1; N <= hi; N++) {
        while (i < norms_.size() && norms_[i] == N) {
          run += coef_[0][i] * std::exp(-s * std::log((double)N));
          i++;
        }
        if (N > lo)
          acc += run + kappa_ * std::exp((1.0 - s) * std::log(N + 0.5)) / (s - 1.0);
      }
      return acc / (double)(hi - lo);
    };
    v.value = eval(X_);
    v.tail = 2 * std::abs(v.value - eval(X_ / 2)) + 1e-14 * std::abs(v.value);
    return v;
  }
  if (s.real() >= 1.5) {
    v.value = partial(s, chi, X_);
    v.tail = 3 * std::abs(v.value - partial(s, chi, X_ / 2)) + 1e-14 * std::abs(v.value);
    return v;
  }
  v.value = cesaro(s, chi, X_);
  cd half = cesaro(s, chi, X_ / 2);
  v.tail = 3 * std::abs(v.value - half) + 1e-12;
  return v;
}

namespace {

// coefficient of one factor, aggregated as dense (norm, class) arrays
std::vector<std::vector<cd>> factor_coeffs(LSeries& ls, bool is_phi, cd expo,
                                           const FracIdeal* b) {
  const IdealList& list = ls.ideals();
  PrimeTable& pt = ls.pt();
  long X = (long)std::floor(ls.X());
  int h = ls.cg().h();
  std::vector<std::vector<cd>> A(X + 1, std::vector<cd>(h, cd(0, 0)));
  // per-prime data
  std::vector<double> np(list.primes.size());
  std::vector<int> cb(list.primes.size(), 0);
  FracIdeal bd = ideal_ring(pt.field());
  if (!is_phi) bd = ideal_mul(*b, different_ideal(pt.field()));
  for (size_t j = 0; j < list.primes.size(); j++) {
    np[j] = prime_norm(list.primes[j]);
    if (!is_phi) cb[j] = pt.valuation(bd, list.primes[j]);
  }
  for (const auto& it : list.items) {
    double val = 1;
    for (const auto& [j, e] : it.fact) {
      if (is_phi) {
        val *= std::pow(np[j], e) - std::pow(np[j], e - 1);
      } else {
        if (e <= cb[j])
          val *= std::pow(np[j], e) - std::pow(np[j], e - 1);
        else if (e == cb[j] + 1)
          val *= -std::pow(np[j], cb[j]);
        else
          val = 0;
      }
      if (val == 0) break;
    }
    if (val == 0) continue;
    long n = mpz_get_si(it.nrm_z.get_mpz_t());
    A[n][it.cls] += val * std::exp(-expo * std::log((double)n));
  }
  return A;
}

}  // namespace

cd z_sum_direct(LSeries& ls, int cls, const std::vector<cd>& svec,
                const std::vector<cd>& tvec, const std::vector<FracIdeal>& bs,
                double* tail) {
  int h = ls.cg().h();
  if (svec.empty() && tvec.empty()) {
    if (tail) *tail = 0;
    return cls == 0 ? 1 : 0;
  }
  long X = (long)std::floor(ls.X());
  if (X > 2000000) throw std::runtime_error("z_sum_direct: budget exceeded");
  std::vector<std::vector<cd>> D(X + 1, std::vector<cd>(h, cd(0, 0)));
  D[1][0] = 1;
  auto convolve = [&](const std::vector<std::vector<cd>>& A) {
    std::vector<std::vector<cd>> out(X + 1, std::vector<cd>(h, cd(0, 0)));
    for (long n1 = 1; n1 <= X; n1++) {
      bool any = false;
      for (int c = 0; c < h; c++)
        if (D[n1][c] != cd(0, 0)) any = true;
      if (!any) continue;
      for (long n2 = 1; n1 * n2 <= X; n2++)
        for (int c1 = 0; c1 < h; c1++) {
          if (D[n1][c1] == cd(0, 0)) continue;
          for (int c2 = 0; c2 < h; c2++) {
            if (A[n2][c2] == cd(0, 0)) continue;
            out[n1 * n2][ls.cg().mul(c1, c2)] += D[n1][c1] * A[n2][c2];
          }
        }
    }
    D = std::move(out);
  };
  for (const auto& s : svec) convolve(factor_coeffs(ls, true, s, nullptr));
  for (size_t j = 0; j < tvec.size(); j++)
    convolve(factor_coeffs(ls, false, tvec[j], &bs[j]));
  cd total = 0, tail_part = 0;
  for (long n = 1; n <= X; n++) {
    total += D[n][cls];
    if (n > X / 2) tail_part += D[n][cls];
  }
  if (tail) *tail = 3 * std::abs(tail_part);
  return total;
}

cd z_sum_characters(LSeries& ls, int cls, const std::vector<cd>& svec,
                    const std::vector<cd>& tvec, const std::vector<FracIdeal>& bs,
                    double* tail) {
  int h = ls.cg().h();
  if (svec.empty() && tvec.empty()) {
    if (tail) *tail = 0;
    return cls == 0 ? 1 : 0;
  }
  FracIdeal dF = different_ideal(ls.pt().field());
  cd acc = 0;
  double terr = 0;
  for (int chi = 0; chi < h; chi++) {
    cd term = std::conj(ls.cg().chi(chi, cls));
    double rel = 0;
    for (const auto& s : svec) {
      auto num = ls.L(s - 1.0, chi);
      auto den = ls.L(s, chi);
      term *= num.value / den.value;
      rel += num.tail / std::abs(num.value) + den.tail / std::abs(den.value);
    }
    for (size_t j = 0; j < tvec.size(); j++) {
      FracIdeal bd = ideal_mul(bs[j], dF);
      cd sig = divisor_sum(ls.pt(), &ls.cg(), chi, bd, 1.0 - tvec[j]);
      auto den = ls.L(tvec[j], chi);
      term *= sig / den.value;
      rel += den.tail / std::abs(den.value);
    }
    acc += term;
    terr += std::abs(term) * rel;
  }
  if (tail) *tail = terr / h;
  return acc / (double)h;
}

}  // namespace heckelab
