// Fractional ideals of O_k as full-rank lattices in canonical HNF, ideal
// arithmetic, content ideals, prime factorization of rational primes,
// enumeration of integral ideals by norm, and class groups with characters.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "numfield.hpp"
#include "units.hpp"

namespace heckelab {

struct FracIdeal {
  FieldPtr k;
  QLat lat;  // rows = Z-basis in O_k coordinates, canonical HNF
};

FracIdeal ideal_ring(FieldPtr k);
FracIdeal ideal_from_gens(FieldPtr k, const std::vector<QVec>& gens);
FracIdeal ideal_principal(FieldPtr k, const QVec& x);
FracIdeal ideal_mul(const FracIdeal& a, const FracIdeal& b);
FracIdeal ideal_inv(const FracIdeal& a);
FracIdeal ideal_div(const FracIdeal& a, const FracIdeal& b);
FracIdeal ideal_add(const FracIdeal& a, const FracIdeal& b);  // gcd
FracIdeal ideal_intersect(const FracIdeal& a, const FracIdeal& b);
FracIdeal ideal_pow(const FracIdeal& a, long e);
Q ideal_norm(const FracIdeal& a);  // positive rational
bool ideal_eq(const FracIdeal& a, const FracIdeal& b);
bool ideal_contains(const FracIdeal& a, const QVec& x);
bool ideal_is_integral(const FracIdeal& a);
bool ideal_is_anti_integral(const FracIdeal& a);  // contains 1
bool ideal_divides(const FracIdeal& a, const FracIdeal& b);  // a | b (b subset a)
FracIdeal different_ideal(FieldPtr k);  // inverse of the codifferent

// Content ideal of a vector x in F^n relative to L = a_1 w_1 + ... + a_n w_n:
// the fractional ideal {alpha in F : alpha * x in L}. x must be nonzero.
FracIdeal content_ideal(FieldPtr k, const std::vector<QVec>& x,
                        const std::vector<FracIdeal>& comp);

struct PrimeIdeal {
  FracIdeal id;
  Z p;
  int f = 1;  // residue degree
  int e = 1;  // ramification index
};

// Cached prime splitting data for one field.
class PrimeTable {
 public:
  explicit PrimeTable(FieldPtr k);
  const std::vector<PrimeIdeal>& primes_above(const Z& p);
  // All prime ideals of norm <= X, sorted by (norm, HNF).
  std::vector<PrimeIdeal> primes_up_to(double X);
  // Factor an integral ideal: list of (prime, exponent).
  std::vector<std::pair<PrimeIdeal, int>> factor(const FracIdeal& a);
  int valuation(const FracIdeal& a, const PrimeIdeal& p) const;
  FieldPtr field() const { return k_; }

 private:
  FieldPtr k_;
  QVec theta_;
  QVec theta_mp_;
  Z index_;  // [O_k : Z[theta]]
  std::map<Z, std::vector<PrimeIdeal>> cache_;
  std::vector<PrimeIdeal> factor_good(const Z& p);
  std::vector<PrimeIdeal> factor_bad(const Z& p);
};

// One enumerated integral ideal with factorization bookkeeping.
struct EnumIdeal {
  FracIdeal id;
  double nrm = 1;
  Z nrm_z = 1;
  std::vector<std::pair<int, int>> fact;  // (index into prime list, exponent)
  int cls = 0;                            // class index if labeled
};

struct IdealList {
  std::vector<PrimeIdeal> primes;
  std::vector<int> prime_cls;    // class index per prime (if class group given)
  std::vector<EnumIdeal> items;  // sorted by norm, includes O_k itself
};

class ClassGroup;
// Enumerate all integral ideals of norm <= X (including O_k). When cg is
// given, every item carries its ideal class index.
IdealList enumerate_ideals(PrimeTable& pt, double X, const ClassGroup* cg = nullptr,
                           bool with_ids = true);

// Search for a generator: x in a with (x) = a. Requires the unit group for
// the search box. Returns nullopt if a is not principal.
std::optional<QVec> principal_generator(const FracIdeal& a, const UnitGroup& u);

class ClassGroup {
 public:
  ClassGroup(PrimeTable& pt, const UnitGroup& units);
  int h() const { return h_; }
  FieldPtr field() const { return k_; }
  const FracIdeal& rep(int c) const { return reps_[c]; }
  int mul(int a, int b) const { return mul_[a][b]; }
  int inv(int c) const { return inv_[c]; }
  int class_of(const FracIdeal& a) const;
  // chi(j, c) = value of the j-th character at class c; chi(0,.) trivial.
  cd chi(int j, int c) const { return chars_[j][c]; }
  const UnitGroup& units() const { return units_; }

 private:
  FieldPtr k_;
  const UnitGroup& units_;
  int h_ = 1;
  std::vector<FracIdeal> reps_;  // reps_[0] = O_k
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  std::vector<std::vector<cd>> chars_;
};

}  // namespace heckelab
