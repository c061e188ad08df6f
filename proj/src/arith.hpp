// Ideal-indexed arithmetic functions (Euler phi, divisor sums, Ramanujan
// sums), Hecke L-functions for class-group characters with controlled
// truncation tails, and the Z_A multiple sums in both the direct-convolution
// and character-decomposition forms.
#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "ideals.hpp"

namespace heckelab {

// #(O_F/m)^x by the multiplicative formula over the factorization of m.
Z euler_phi(PrimeTable& pt, const FracIdeal& m);

// sigma_s(m, chi) = sum_{n | m} chi([n]) N(n)^s; cg may be null for the
// trivial character.
cd divisor_sum(PrimeTable& pt, const ClassGroup* cg, int chi, const FracIdeal& m,
               cd s);

// tau(m, b) = sum over x in (b m^{-1} / b)^x of e^{2 pi i Tr(x)}, by explicit
// coset enumeration. Requires b contained in the codifferent.
cd ramanujan_sum(PrimeTable& pt, const FracIdeal& m, const FracIdeal& b);

// Same quantity through the Moebius identity
// tau(m, b) = sum_{a | gcd(m, b d_F)} mu(m a^{-1}) N(a), prime by prime.
double ramanujan_tau_fast(PrimeTable& pt, const FracIdeal& m, const FracIdeal& b);

// Hecke L-functions over a fixed enumeration of ideals of norm <= X.
class LSeries {
 public:
  struct Val {
    cd value;
    double tail;  // estimated truncation error bound
  };

  LSeries(PrimeTable& pt, const ClassGroup& cg, double X);

  // L(s, chi_j). Tail control: trivial character uses the residue-subtracted
  // partial sum (valid for Re s > 1/2, s != 1); nontrivial characters use
  // Cesaro-averaged partial sums for Re s < 3/2 and the plain sum otherwise.
  Val L(cd s, int chi) const;
  double kappa() const { return kappa_; }  // residue of zeta_F at s = 1
  const ClassGroup& cg() const { return cg_; }
  PrimeTable& pt() const { return pt_; }
  double X() const { return X_; }
  const IdealList& ideals() const { return list_; }

 private:
  PrimeTable& pt_;
  const ClassGroup& cg_;
  double X_;
  IdealList list_;
  std::vector<long> norms_;              // distinct norms, increasing
  std::vector<std::vector<cd>> coef_;    // coef_[chi][norm index]
  double kappa_ = 1;
  cd partial(cd s, int chi, double X) const;
  cd cesaro(cd s, int chi, double X) const;
};

// kappa_F = 2^{r1} (2 pi)^{r2} h R / (w sqrt|d_F|).
double kappa_F(const ClassGroup& cg);

// Z_A(s_1..s_k; t_1..t_l; (b_j)) truncated at product norm <= X, by
// convolution of norm-and-class indexed coefficient arrays.
cd z_sum_direct(LSeries& ls, int cls, const std::vector<cd>& svec,
                const std::vector<cd>& tvec, const std::vector<FracIdeal>& bs,
                double* tail = nullptr);

// The same value by the character decomposition of Corollary "z_a cor":
// (1/h) sum_chi chi(A^{-1}) prod L(s_i - 1, chi)/L(s_i, chi)
//                           prod sigma_{1-t_j}(b_j d_F, chi)/L(t_j, chi).
cd z_sum_characters(LSeries& ls, int cls, const std::vector<cd>& svec,
                    const std::vector<cd>& tvec, const std::vector<FracIdeal>& bs,
                    double* tail = nullptr);

}  // namespace heckelab
